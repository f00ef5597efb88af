use certzero::Dd;
use std::io::{self, Write};

/// One CSV field.
pub enum Cell {
    Real(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Real(x)
    }
}

impl From<Dd> for Cell {
    fn from(x: Dd) -> Cell {
        Cell::Real(x.to_f64())
    }
}

impl From<u64> for Cell {
    fn from(x: u64) -> Cell {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Cell {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Cell {
        Cell::Text(x.to_string())
    }
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Real(x) => format!("{x:.16e}"),
            Cell::Int(x) => x.to_string(),
            Cell::Bool(x) => x.to_string(),
            Cell::Text(x) => x.clone(),
        }
    }
}

/// Builds a row from heterogeneous values.
#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::csv::Cell::from($x)),*] };
}

pub struct CsvWriter {
    out: Box<dyn Write>,
}

impl CsvWriter {
    pub fn new(out: Box<dyn Write>) -> CsvWriter {
        CsvWriter { out }
    }

    pub fn header(&mut self, names: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", names.join(","))
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        let fields: Vec<String> = cells.iter().map(Cell::render).collect();
        writeln!(self.out, "{}", fields.join(","))
    }

    /// A blank line separating the data block from a trailing summary block.
    pub fn separator(&mut self) -> io::Result<()> {
        writeln!(self.out)
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(Cell::Real(0.1).render(), "1.0000000000000001e-1");
        assert_eq!(Cell::Real(-2.5).render(), "-2.5000000000000000e0");
        assert_eq!(Cell::Int(12).render(), "12");
        assert_eq!(Cell::Bool(true).render(), "true");
    }
}
