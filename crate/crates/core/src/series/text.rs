//! Plain-text series format: one term per line, `alpha_1 … alpha_n re im`.
//!
//! Blank lines and lines starting with `#` are ignored. The dimension is the
//! column count minus two and must agree on every line.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::TruncatedSeries;
use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};

/// Parses a series. Without an explicit `cap`, the largest order present
/// becomes the cap.
pub fn parse_series(text: &str, cap: Option<u32>) -> Result<TruncatedSeries> {
    parse_lines(text.lines().enumerate(), cap)
}

pub(crate) fn parse_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    cap: Option<u32>,
) -> Result<TruncatedSeries> {
    let mut dim = None;
    let mut terms = Vec::new();
    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 {
            return Err(err(format!(
                "expected at least one exponent and two reals, got {} fields",
                fields.len()
            )));
        }
        let n = fields.len() - 2;
        match dim {
            None => dim = Some(n),
            Some(d) if d != n => {
                return Err(err(format!("dimension {n} differs from earlier {d}")));
            }
            _ => {}
        }
        let parts = fields[..n]
            .iter()
            .map(|f| {
                f.parse::<u32>()
                    .map_err(|e| err(format!("bad exponent {f:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let re = fields[n]
            .parse::<f64>()
            .map_err(|e| err(format!("bad real part {:?}: {e}", fields[n])))?;
        let im = fields[n + 1]
            .parse::<f64>()
            .map_err(|e| err(format!("bad imaginary part {:?}: {e}", fields[n + 1])))?;
        terms.push((MultiIndex::new(parts)?, Complex64::new(re, im), lineno + 1));
    }
    let n = dim.ok_or(Error::Parse {
        line: 0,
        msg: "no terms found".into(),
    })?;
    let cap = cap.unwrap_or_else(|| terms.iter().map(|(a, _, _)| a.order()).max().unwrap_or(0));
    let mut series = TruncatedSeries::zero(n, cap)?;
    for (alpha, c, line) in terms {
        series.insert(alpha, c).map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
    }
    Ok(series)
}

/// Writes every nonzero term, 17 significant digits per component.
pub fn write_series(series: &TruncatedSeries) -> String {
    let mut out = String::new();
    for (alpha, c) in series.terms() {
        for p in alpha.parts() {
            let _ = write!(out, "{p} ");
        }
        let _ = writeln!(out, "{:.16e} {:.16e}", c.re, c.im);
    }
    out
}
