mod csv;
mod sweep;

use certzero::bessel_oracle::{bessel_j, reference_zero_certified, PrecisionPolicy};
use certzero::lemma_lab::constants::{constant_table, CONSTANT_NAMES};
use certzero::lemma_lab::scans::{scan, ScanId};
use certzero::zero_engine::{enclosure, verify_zero};
use clap::{Args, Parser, Subcommand};
use csv::CsvWriter;
use rayon::prelude::*;
use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;
use sweep::{check_nu_list, parse_m_range, parse_nu_list, SweepSpec};

const DEFAULT_NU: &str = "1,1.25,1.5,2,3,5,10,20";
const DEFAULT_M: &str = "1..50";

#[derive(Parser)]
#[command(name = "certzero", version, about = "Certified enclosures for zeros of Bessel functions")]
struct Cli {
    /// Worker threads for sweeps and scans (0 uses every core).
    #[arg(long, global = true, env = "CERTZERO_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Grid {
    /// Comma-separated orders, each >= 1.
    #[arg(long)]
    nu: String,
    /// Zero indices: `a`, `a..b` or `a..=b`, inclusive.
    #[arg(long)]
    m: String,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate enclosures of j_{ν,m}.
    Zeros {
        #[command(flatten)]
        grid: Grid,
        /// Add the oracle zero and whether the enclosure contains it.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "extended")]
        policy: PrecisionPolicy,
        #[command(flatten)]
        output: Output,
    },
    /// Check enclosures and error windows against the oracle.
    Verify {
        #[arg(long, default_value = DEFAULT_NU)]
        nu: String,
        #[arg(long, default_value = DEFAULT_M)]
        m: String,
        #[arg(long, default_value = "extended")]
        policy: PrecisionPolicy,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute constants and compare them with their published values.
    Constants {
        /// Constant names; see `--list`.
        names: Vec<String>,
        #[arg(long, conflicts_with = "names")]
        all: bool,
        /// Print the accepted names and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Sample a scaled function on v ∈ [0, 1).
    Scan {
        /// p2..p16, zeta4, B_minus, B_plus, g1, chi1, calG1 or calG2.
        id: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate J_ν directly or list its zeros.
    Oracle {
        #[arg(long)]
        nu: String,
        /// Comma-separated arguments.
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        x: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long, default_value = "extended")]
        policy: PrecisionPolicy,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] certzero::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use certzero::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::Domain(_) | E::Order(_) | E::Hypothesis(_)) => 2,
            CliError::Core(E::Unsupported(_)) => 3,
            CliError::Core(E::Convergence { .. } | E::BracketNotFound { .. }) => 4,
            CliError::Failed(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

type CliResult = Result<(), CliError>;

fn writer(output: &Output) -> Result<CsvWriter, CliError> {
    Ok(match &output.out {
        Some(path) => CsvWriter::new(Box::new(BufWriter::new(File::create(path)?))),
        None => CsvWriter::new(Box::new(BufWriter::new(io::stdout().lock()))),
    })
}

fn field<T>(name: &str, parsed: Result<T, String>) -> Result<T, CliError> {
    parsed.map_err(|e| CliError::Usage(format!("{name}: {e}")))
}

fn grid_spec(nu: &str, m: &str) -> Result<SweepSpec, CliError> {
    let nu_list = field("--nu", parse_nu_list(nu))?;
    check_nu_list(&nu_list)?;
    Ok(SweepSpec { nu_list, m_range: field("--m", parse_m_range(m))? })
}

fn cmd_zeros(spec: SweepSpec, check: bool, policy: PrecisionPolicy, output: &Output) -> CliResult {
    let rows = spec
        .pairs()
        .par_iter()
        .map(|&(nu, m)| {
            let e = enclosure(nu, m)?;
            let mut r = row![nu, m, e.point, e.lower(), e.upper(), e.width()];
            if check {
                let z = reference_zero_certified(nu, m, policy)?;
                r.extend(row![z.root, e.lower() < z.lower && z.upper < e.upper()]);
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>, certzero::Error>>()?;
    let mut w = writer(output)?;
    let mut header = vec!["nu", "m", "j_point", "j_lower", "j_upper", "width"];
    if check {
        header.extend(["oracle", "inside"]);
    }
    w.header(&header)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()?;
    if check && rows.iter().any(|r| matches!(r.last(), Some(csv::Cell::Bool(false)))) {
        return Err(CliError::Failed("an oracle zero lies outside its enclosure".into()));
    }
    Ok(())
}

fn cmd_verify(spec: SweepSpec, policy: PrecisionPolicy, output: &Output) -> CliResult {
    let results = spec
        .pairs()
        .par_iter()
        .map(|&(nu, m)| verify_zero(nu, m, policy))
        .collect::<Result<Vec<_>, certzero::Error>>()?;
    let mut w = writer(output)?;
    w.header(&[
        "nu",
        "m",
        "oracle",
        "j_lower",
        "j_upper",
        "margin",
        "normalized_error",
        "window_lower",
        "window_upper",
        "zhat_error",
        "contained",
        "in_window",
        "zhat_in_window",
        "pass",
    ])?;
    for v in &results {
        let e = &v.enclosure;
        w.row(&row![
            e.nu,
            e.m,
            v.oracle.root,
            e.lower(),
            e.upper(),
            v.margin,
            v.normalized_error,
            v.window.0,
            v.window.1,
            v.zhat_error,
            v.contained,
            v.in_window,
            v.zhat_in_window,
            v.pass(),
        ])?;
    }
    let failed = results.iter().filter(|v| !v.pass()).count() as u64;
    w.separator()?;
    w.header(&["checked", "passed", "failed"])?;
    w.row(&row![results.len() as u64, results.len() as u64 - failed, failed])?;
    w.finish()?;
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(())
}

fn cmd_constants(names: Vec<String>, all: bool, list: bool, output: &Output) -> CliResult {
    if list {
        let mut w = writer(output)?;
        w.header(&["name"])?;
        for n in CONSTANT_NAMES {
            w.row(&row![n])?;
        }
        return Ok(w.finish()?);
    }
    if names.is_empty() && !all {
        return Err(CliError::Usage("name a constant or pass --all (see --list)".into()));
    }
    if let Some(bad) = names.iter().find(|n| !CONSTANT_NAMES.contains(&n.as_str())) {
        return Err(CliError::Usage(format!("unknown constant '{bad}' (see --list)")));
    }
    let table = constant_table()?;
    let selected: Vec<_> = table.iter().filter(|r| all || names.iter().any(|n| n == r.name)).collect();
    let mut w = writer(output)?;
    w.header(&["name", "computed", "paper", "abs_diff", "tolerance", "pass"])?;
    for r in &selected {
        w.row(&row![r.name, r.computed, r.reference, r.abs_diff(), r.tolerance, r.pass()])?;
    }
    w.finish()?;
    let failed: Vec<&str> = selected.iter().filter(|r| !r.pass()).map(|r| r.name).collect();
    if !failed.is_empty() {
        return Err(CliError::Failed(format!("outside tolerance: {}", failed.join(", "))));
    }
    Ok(())
}

fn cmd_scan(id: &str, samples: usize, output: &Output) -> CliResult {
    let id: ScanId = id.parse()?;
    let r = scan(id, samples)?;
    let mut w = writer(output)?;
    w.header(&["v", "value"])?;
    for (v, x) in r.grid.iter().zip(&r.values) {
        w.row(&row![*v, *x])?;
    }
    w.separator()?;
    w.header(&["min", "max", "argmin", "argmax", "all_positive", "limit", "increasing", "decreasing"])?;
    w.row(&row![r.min, r.max, r.argmin, r.argmax, r.all_positive, r.limit, r.increasing, r.decreasing])?;
    Ok(w.finish()?)
}

fn cmd_oracle(nu: &str, x: Option<String>, m: Option<String>, policy: PrecisionPolicy, output: &Output) -> CliResult {
    let nu = field("--nu", parse_nu_list(nu))?;
    let x = x.map(|x| field("--x", parse_nu_list(&x))).transpose()?;
    let m = m.map(|m| field("--m", parse_m_range(&m))).transpose()?;
    let mut w = writer(output)?;
    if let Some(xs) = x {
        let pairs: Vec<(f64, f64)> = nu.iter().flat_map(|&n| xs.iter().map(move |&x| (n, x))).collect();
        let values = pairs
            .par_iter()
            .map(|&(n, x)| bessel_j(n, x, policy))
            .collect::<Result<Vec<_>, certzero::Error>>()?;
        w.header(&["nu", "x", "j"])?;
        for (&(n, x), j) in pairs.iter().zip(values) {
            w.row(&row![n, x, j])?;
        }
    } else if let Some(m) = m {
        let spec = SweepSpec { nu_list: nu, m_range: m };
        let zeros = spec
            .pairs()
            .par_iter()
            .map(|&(n, m)| reference_zero_certified(n, m, policy).map(|z| (n, z)))
            .collect::<Result<Vec<_>, certzero::Error>>()?;
        w.header(&["nu", "m", "root", "lower", "upper", "residual"])?;
        for (n, z) in zeros {
            w.row(&row![n, z.m, z.root, z.lower, z.upper, z.residual])?;
        }
    }
    Ok(w.finish()?)
}

fn run(cli: Cli) -> CliResult {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Zeros { grid, check, policy, output } => cmd_zeros(grid_spec(&grid.nu, &grid.m)?, check, policy, &output),
        Command::Verify { nu, m, policy, output } => cmd_verify(grid_spec(&nu, &m)?, policy, &output),
        Command::Constants { names, all, list, output } => cmd_constants(names, all, list, &output),
        Command::Scan { id, samples, output } => cmd_scan(&id, samples, &output),
        Command::Oracle { nu, x, m, policy, output } => cmd_oracle(&nu, x, m, policy, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("certzero: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
