//! Command implementations behind the `bohr` binary.
//!
//! Each command writes its report to a caller-supplied writer and returns
//! a [`CliError`] carrying the process exit code on failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::Error;
use crate::lower::{naive_lower, refined_lower};
use crate::series::parse_series;
use crate::upper::{
    self, default_points, search_estimate, search_upper, SearchOutcome, CERTIFIED_MAX_N,
};
use crate::verify::{self, Suite};
use crate::wiener::{mobius_bohr_radius, mobius_series, MobiusParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub const CSV_HEADER: &str =
    "n,lower_naive,lower_refined_lo,lower_refined_hi,upper_search,upper_theory";

// sampling budget for uncertified estimates: points across the free angles
const ESTIMATE_BUDGET: f64 = 4_194_304.0;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::VerifyFailed => EXIT_VERIFY_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::VerifyFailed => write!(f, "verification failed"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn io_at(path: &Path) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

/// One row of the bounds table.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub n: u64,
    pub lower_naive: f64,
    pub lower_refined_lo: f64,
    pub lower_refined_hi: f64,
    pub upper_search: Option<f64>,
    pub upper_theory: Option<f64>,
}

impl BoundsRow {
    /// `naive < refined_lo ≤ refined_hi < every upper`; the first inequality
    /// is only strict for `n ≥ 2`.
    pub fn invariant_holds(&self) -> bool {
        let naive_ok = if self.n >= 2 {
            self.lower_naive < self.lower_refined_lo
        } else {
            self.lower_naive <= self.lower_refined_hi
        };
        naive_ok
            && self.lower_refined_lo <= self.lower_refined_hi
            && [self.upper_search, self.upper_theory]
                .iter()
                .flatten()
                .all(|&u| self.lower_refined_hi < u)
    }

    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map(fmt17).unwrap_or_default();
        format!(
            "{},{},{},{},{},{}",
            self.n,
            fmt17(self.lower_naive),
            fmt17(self.lower_refined_lo),
            fmt17(self.lower_refined_hi),
            cell(self.upper_search),
            cell(self.upper_theory)
        )
    }

    pub fn from_csv(line: &str) -> Result<Self, String> {
        let cells: Vec<&str> = line.trim_end().split(',').collect();
        if cells.len() != 6 {
            return Err(format!("expected 6 cells, got {}", cells.len()));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"));
        let opt = |s: &str| {
            if s.is_empty() {
                Ok(None)
            } else {
                num(s).map(Some)
            }
        };
        Ok(BoundsRow {
            n: cells[0]
                .parse()
                .map_err(|e| format!("{:?}: {e}", cells[0]))?,
            lower_naive: num(cells[1])?,
            lower_refined_lo: num(cells[2])?,
            lower_refined_hi: num(cells[3])?,
            upper_search: opt(cells[4])?,
            upper_theory: opt(cells[5])?,
        })
    }
}

/// 17 significant digits.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Random-sign search settings for the `upper_search` column.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    pub degree: u32,
    pub trials: u64,
    pub seed: u64,
    pub grid_divisor: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsArgs {
    pub n_min: u64,
    pub n_max: u64,
    pub tol: f64,
    pub search: Option<SearchParams>,
    pub optimize_m: bool,
    pub out: PathBuf,
    pub gnuplot: bool,
}

/// Rows for `n_min..=n_max`, ascending. Search bounds are only filled in
/// where they can be certified.
pub fn compute_bounds(
    n_min: u64,
    n_max: u64,
    tol: f64,
    search: Option<SearchParams>,
    optimize_m: bool,
) -> Result<Vec<BoundsRow>, CliError> {
    if n_min < 1 || n_min > n_max {
        return Err(CliError::Usage(format!(
            "need 1 <= n-min <= n-max, got {n_min}..{n_max}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let refined = refined_lower(n, tol)?;
            let upper_search = match search {
                Some(p) if n as usize <= CERTIFIED_MAX_N => Some(
                    search_upper(n as usize, p.degree, p.trials, p.seed, p.grid_divisor)?.bound,
                ),
                _ => None,
            };
            let upper_theory = if n >= upper::THEORY_MIN_N {
                let b = if optimize_m {
                    upper::theoretical_upper_optimized(n)?
                } else {
                    upper::theoretical_upper(n)?
                };
                Some(b.value)
            } else {
                None
            };
            Ok(BoundsRow {
                n,
                lower_naive: naive_lower(n),
                lower_refined_lo: refined.lo(),
                lower_refined_hi: refined.hi(),
                upper_search,
                upper_theory,
            })
        })
        .collect::<Result<Vec<_>, Error>>()
        .map_err(CliError::from)
}

pub fn render_csv(rows: &[BoundsRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<BoundsRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(BoundsRow::from_csv)
        .collect()
}

fn gnuplot_script(csv: &Path) -> String {
    let name = csv
        .file_name()
        .map(|s| s.to_string_lossy())
        .unwrap_or_default();
    format!(
        "set datafile separator ','\n\
         set key top right\n\
         set logscale xy\n\
         set xlabel 'n'\n\
         set ylabel 'bound on K_n'\n\
         plot '{name}' every ::1 using 1:2 with lines title 'lower (1/(3 sqrt n))', \\\n\
         \x20    '' every ::1 using 1:3 with lines title 'lower (refined)', \\\n\
         \x20    '' every ::1 using 1:5 with points title 'upper (sign search)', \\\n\
         \x20    '' every ::1 using 1:6 with lines title 'upper (explicit)'\n"
    )
}

pub fn cmd_bounds(args: &BoundsArgs, report: &mut dyn Write) -> Result<(), CliError> {
    let rows = compute_bounds(
        args.n_min,
        args.n_max,
        args.tol,
        args.search,
        args.optimize_m,
    )?;
    if let Some(bad) = rows.iter().find(|r| !r.invariant_holds()) {
        writeln!(
            report,
            "warning: ordering invariant violated at n = {}",
            bad.n
        )?;
    }
    fs::write(&args.out, render_csv(&rows)).map_err(io_at(&args.out))?;
    writeln!(
        report,
        "wrote {} rows to {}",
        rows.len(),
        args.out.display()
    )?;
    if args.gnuplot {
        let script = args.out.with_extension("gp");
        fs::write(&script, gnuplot_script(&args.out)).map_err(io_at(&script))?;
        writeln!(report, "wrote plot script {}", script.display())?;
    }
    Ok(())
}

/// Runs the named suite (or `all`), optionally followed by checks on a
/// user series. Fails with exit code 1 if anything fails.
pub fn cmd_verify(
    suite: &str,
    series_file: Option<&Path>,
    radius: Option<&[f64]>,
    report: &mut dyn Write,
) -> Result<(), CliError> {
    let suites = Suite::parse(suite).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite {suite:?}; expected combinatorics, wiener, lower, upper or all"
        ))
    })?;
    let series = match series_file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(io_at(path))?;
            Some(parse_series(&text, None)?)
        }
        None => None,
    };
    let mut failed = 0usize;
    let mut total = 0usize;
    for s in suites {
        for check in verify::run(s)? {
            writeln!(report, "{check}")?;
            total += 1;
            failed += usize::from(!check.passed);
        }
    }
    if let Some(series) = series {
        for check in verify::series_checks(&series, radius)? {
            writeln!(report, "{check}")?;
            total += 1;
            failed += usize::from(!check.passed);
        }
    }
    writeln!(report, "{} of {total} checks passed", total - failed)?;
    if failed > 0 {
        return Err(CliError::VerifyFailed);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchArgs {
    pub n: usize,
    pub degree: u32,
    pub trials: u64,
    pub seed: u64,
    pub grid_divisor: u32,
    pub witness: Option<PathBuf>,
}

/// Points per free axis for uncertified sampling at dimension `n`.
pub fn estimate_points(n: usize, degree: u32, grid_divisor: u32) -> usize {
    let free = n.saturating_sub(1).max(1) as f64;
    let affordable = ESTIMATE_BUDGET.powf(1.0 / free).floor() as usize;
    affordable.clamp(4, default_points(degree, grid_divisor).max(4))
}

pub fn cmd_search_upper(args: &SearchArgs, report: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 || args.degree == 0 || args.trials == 0 {
        return Err(CliError::Usage(
            "n, degree and trials must all be >= 1".into(),
        ));
    }
    if args.grid_divisor < 4 {
        return Err(CliError::Usage(format!(
            "grid divisor {} too small: points per axis = divisor*M needs M*h/2 < 1",
            args.grid_divisor
        )));
    }
    let certified = args.n <= CERTIFIED_MAX_N;
    let outcome: SearchOutcome = if certified {
        search_upper(
            args.n,
            args.degree,
            args.trials,
            args.seed,
            args.grid_divisor,
        )?
    } else {
        let points = estimate_points(args.n, args.degree, args.grid_divisor);
        search_estimate(args.n, args.degree, args.trials, args.seed, points)?
    };
    let e = outcome.cert.enclosure();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "n = {}, M = {}, trials = {}, seed = {}, grid divisor = {}",
        args.n, args.degree, args.trials, args.seed, args.grid_divisor
    );
    let _ = writeln!(
        text,
        "grid: {} points per free angle, h = {}",
        outcome.cert.points_per_axis(),
        fmt17(outcome.cert.h())
    );
    if certified {
        let _ = writeln!(text, "status: certified");
        let _ = writeln!(text, "best upper bound on K_n: {}", fmt17(outcome.bound));
    } else {
        let _ = writeln!(
            text,
            "status: uncertified (n > {CERTIFIED_MAX_N}, sampled maximum only)"
        );
        let _ = writeln!(text, "uncertified estimate: {}", fmt17(outcome.bound));
    }
    let _ = writeln!(
        text,
        "witness: trial {} seed {}",
        outcome.trial,
        outcome.poly.seed()
    );
    let _ = writeln!(
        text,
        "sup enclosure: [{}, {}]",
        fmt17(e.lo()),
        fmt17(e.hi())
    );
    report.write_all(text.as_bytes())?;
    if let Some(path) = &args.witness {
        fs::write(path, outcome.poly.to_witness()?).map_err(io_at(path))?;
        writeln!(report, "witness written to {}", path.display())?;
    }
    Ok(())
}

pub fn cmd_extremal(a: f64, cap: u32, report: &mut dyn Write) -> Result<(), CliError> {
    if !(a > 0.0 && a < 1.0) {
        return Err(CliError::Usage(format!("a must lie in (0, 1), got {a}")));
    }
    if cap == 0 {
        return Err(CliError::Usage("cap must be >= 1".into()));
    }
    let radius = mobius_bohr_radius(a)?;
    let series = mobius_series(MobiusParams::new(a)?, cap)?;
    let sum = series.majorant(&[radius])?;
    writeln!(report, "a = {}", fmt17(a))?;
    writeln!(
        report,
        "Bohr radius of (a - z)/(1 - a z): {}",
        fmt17(radius)
    )?;
    writeln!(
        report,
        "truncated Bohr sum at that radius (cap {cap}): {}",
        fmt17(sum)
    )?;
    writeln!(report, "gap to 1/3: {}", fmt17(radius - 1.0 / 3.0))?;
    Ok(())
}
