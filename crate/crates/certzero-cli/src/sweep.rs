use certzero::Error;
use std::ops::RangeInclusive;

/// A `(ν, m)` grid in row order: ν outer, m inner.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub nu_list: Vec<f64>,
    pub m_range: RangeInclusive<u64>,
}

impl SweepSpec {
    pub fn pairs(&self) -> Vec<(f64, u64)> {
        self.nu_list.iter().flat_map(|&nu| self.m_range.clone().map(move |m| (nu, m))).collect()
    }
}

/// Comma-separated reals, each finite.
pub fn parse_nu_list(s: &str) -> Result<Vec<f64>, String> {
    let out = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(x),
                _ => Err(format!("'{t}' is not a finite number")),
            }
        })
        .collect::<Result<Vec<f64>, String>>()?;
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

/// `a`, `a..b` or `a..=b`, all inclusive, with `1 <= a <= b`.
pub fn parse_m_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("'{t}' is not a non-negative integer"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a == 0 {
        return Err("indices start at 1".into());
    }
    if b < a {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Checks the ν ≥ 1 hypothesis up front so the message names the field.
pub fn check_nu_list(nu_list: &[f64]) -> Result<(), Error> {
    match nu_list.iter().find(|&&nu| nu < 1.0) {
        Some(nu) => Err(Error::Hypothesis(format!("--nu: the error bounds require nu >= 1, got {nu}"))),
        None => Ok(()),
    }
}
