//! Named verification suites: every inequality the bounds rely on, checked
//! at desk scale with a reported margin.

use std::fmt;

use crate::combinatorics::{self, ExactInt};
use crate::error::Result;
use crate::lower::{self, est_bound, naive_lower, refined_lower};
use crate::series::TruncatedSeries;
use crate::upper::{self, search_upper};
use crate::wiener::{self, mobius_bohr_radius, mobius_product, mobius_series, MobiusParams};

/// Frozen smallest `n` with certified `lo·√n > 1/2`.
pub const SCALED_HALF_THRESHOLD: u64 = 6;

/// Frozen first witness `(n, M)` against the constant `C = 2`.
pub const REFUTATION_WITNESS: (usize, u32) = (16, 14);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Combinatorics,
    Wiener,
    Lower,
    Upper,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Combinatorics,
        Suite::Wiener,
        Suite::Lower,
        Suite::Upper,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Combinatorics => "combinatorics",
            Suite::Wiener => "wiener",
            Suite::Lower => "lower",
            Suite::Upper => "upper",
        }
    }

    /// `"all"` expands to every suite in fixed order.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        match name {
            "all" => Some(Suite::ALL.to_vec()),
            other => Suite::ALL
                .iter()
                .find(|s| s.name() == other)
                .map(|s| vec![*s]),
        }
    }
}

/// One verified inequality. `margin` is the slack by which it held
/// (negative when it failed).
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub claim: String,
    pub margin: f64,
    pub passed: bool,
}

impl Check {
    fn new(suite: Suite, claim: impl Into<String>, margin: f64, passed: bool) -> Self {
        Check {
            suite: suite.name(),
            claim: claim.into(),
            margin: margin + 0.0,
            passed,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<14} {}  (margin {:.6e})",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.claim,
            self.margin
        )
    }
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    match suite {
        Suite::Combinatorics => combinatorics_suite(),
        Suite::Wiener => wiener_suite(),
        Suite::Lower => lower_suite(),
        Suite::Upper => upper_suite(),
    }
}

fn ratio_margin(lhs: &ExactInt, rhs: &ExactInt) -> f64 {
    use num_traits::ToPrimitive;
    let (l, r) = (
        lhs.to_f64().unwrap_or(f64::MAX),
        rhs.to_f64().unwrap_or(f64::MAX),
    );
    if r == 0.0 {
        0.0
    } else {
        (r - l) / r
    }
}

fn combinatorics_suite() -> Result<Vec<Check>> {
    let s = Suite::Combinatorics;
    let mut all_equal = true;
    let mut crude_ok = true;
    let mut crude_margin = f64::INFINITY;
    for n in 1..=6usize {
        for m in 0..=10u32 {
            let power = combinatorics::pow(n as u64, m);
            all_equal &= combinatorics::sum_multinomials(n, m)? == power;
            let sq = combinatorics::sum_multinomials_squared(n, m)?;
            let crude = combinatorics::factorial(u64::from(m)) * &power;
            crude_ok &= sq <= crude;
            crude_margin = crude_margin.min(ratio_margin(&sq, &crude));
        }
    }
    let mut floor_ok = true;
    let mut floor_margin = f64::INFINITY;
    for n in 2..=5usize {
        for m in 1..=8u32 {
            let sq = combinatorics::sum_multinomials_squared(n, m)?;
            let count = combinatorics::binomial(n as u64 + u64::from(m) - 1, u64::from(m))?;
            let lhs = sq * count;
            let rhs = combinatorics::pow(n as u64, 2 * m);
            floor_ok &= lhs >= rhs;
            floor_margin = floor_margin.min(-ratio_margin(&lhs, &rhs));
        }
    }
    let mut lengths_ok = true;
    for n in 1..=5usize {
        for k in 0..=10u32 {
            let len = ExactInt::from(combinatorics::enumerate(n, k)?.len());
            lengths_ok &=
                len == combinatorics::binomial(n as u64 + u64::from(k) - 1, u64::from(k))?;
        }
    }
    Ok(vec![
        Check::new(
            s,
            "sum_{|a|=M} M!/a! = n^M exactly, n<=6, M<=10",
            0.0,
            all_equal,
        ),
        Check::new(
            s,
            "sum (M!/a!)^2 <= M! n^M exactly, n<=6, M<=10",
            crude_margin,
            crude_ok,
        ),
        Check::new(
            s,
            "sum (M!/a!)^2 * C(M+n-1,M) >= n^(2M) exactly, 2<=n<=5, 1<=M<=8",
            floor_margin,
            floor_ok,
        ),
        Check::new(s, "#{|a|=k} = C(n+k-1,k), n<=5, k<=10", 0.0, lengths_ok),
    ])
}

fn wiener_suite() -> Result<Vec<Check>> {
    let s = Suite::Wiener;
    let tol = wiener::DEFAULT_TOL;
    let mut checks = Vec::new();

    let half = mobius_series(MobiusParams::new(0.5)?, 30)?;
    let eq = wiener::wiener_bound_check(&half, 1, tol)?;
    checks.push(Check::new(
        s,
        "Mobius a=0.5, k=1: ||c_k||_2 = 1-|c0|^2 (equality)",
        tol - (eq.lhs - eq.rhs).abs(),
        eq.holds && (eq.lhs - eq.rhs).abs() <= tol,
    ));

    let grid = [0.3, 0.6, 0.9];
    let mut worst = f64::INFINITY;
    let mut ok = true;
    for &a in &grid {
        for &b in &grid {
            let f = mobius_product(a, b, 30)?;
            for k in 1..=6 {
                let r = wiener::wiener_bound_check(&f, k, tol)?;
                ok &= r.holds;
                worst = worst.min(r.margin());
            }
        }
    }
    checks.push(Check::new(
        s,
        "f_a(z1) f_b(z2), a,b in {0.3,0.6,0.9}, k<=6: ||c_k||_2 <= 1-|c0|^2",
        worst,
        ok,
    ));

    let mut lead_ok = true;
    let mut lead_margin = f64::INFINITY;
    let f = mobius_product(0.6, 0.9, 20)?;
    for k in 1..=5 {
        let h = wiener::mobius_normalize(&wiener::symmetrize(&f, k)?)?;
        let l2 = h.homogeneous_l2(k)?;
        lead_ok &= l2 <= 1.0 + tol;
        lead_margin = lead_margin.min(1.0 - l2);
    }
    checks.push(Check::new(
        s,
        "averaged and normalised series: leading block L2 norm <= 1",
        lead_margin,
        lead_ok,
    ));

    let near = mobius_bohr_radius(1.0 - 1e-7)?;
    checks.push(Check::new(
        s,
        "Mobius Bohr radius at a = 1-1e-7 within 1e-6 of 1/3",
        1e-6 - (near - 1.0 / 3.0).abs(),
        (near - 1.0 / 3.0).abs() < 1e-6 && near > 1.0 / 3.0,
    ));

    let mut sum_ok = true;
    let mut sum_margin = f64::INFINITY;
    for a in [0.25, 0.5, 0.9, 0.999] {
        let r = mobius_bohr_radius(a)?;
        let m = mobius_series(MobiusParams::new(a)?, 60)?.majorant(&[r])?;
        let err = (1.0 - m).abs();
        sum_ok &= m <= 1.0 + 1e-12 && err <= 1e-6;
        sum_margin = sum_margin.min(1e-6 - err);
    }
    checks.push(Check::new(
        s,
        "Mobius Bohr sum equals 1 at radius 1/(1+2a), cap 60",
        sum_margin,
        sum_ok,
    ));
    Ok(checks)
}

fn lower_suite() -> Result<Vec<Check>> {
    let s = Suite::Lower;
    let tol = lower::DEFAULT_TOL;
    let mut checks = Vec::new();

    let mut max = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    for i in 0..10_000 {
        let c = i as f64 / 9_999.0;
        let v = est_bound(c, 1.0 / 9.0)?;
        if v > max {
            max = v;
            argmax = c;
        }
    }
    checks.push(Check::new(
        s,
        "max_c |c| + (1-|c|^2)/2 over 10^4 points = 1, at |c| = 1",
        1e-12 - (max - 1.0).abs(),
        (max - 1.0).abs() <= 1e-12 && argmax == 1.0,
    ));

    let one = refined_lower(1, tol)?;
    checks.push(Check::new(
        s,
        "n = 1: root of r/(1-r) = 1/2 enclosed around 1/3",
        tol - one.width(),
        one.contains(1.0 / 3.0) && one.width() <= tol,
    ));

    let mut strict = f64::INFINITY;
    let mut below_third = f64::INFINITY;
    let mut scaled = f64::INFINITY;
    for n in 2..=500u64 {
        let e = refined_lower(n, tol)?;
        strict = strict.min(e.lo() - naive_lower(n));
        below_third = below_third.min(1.0 / 3.0 - e.hi());
        scaled = scaled.min(e.lo() * (n as f64).sqrt() - 0.4);
    }
    checks.push(Check::new(
        s,
        "2<=n<=500: refined lower bound > 1/(3 sqrt n)",
        strict,
        strict > 0.0,
    ));
    checks.push(Check::new(
        s,
        "2<=n<=500: refined lower bound < 1/3",
        below_third,
        below_third > 0.0,
    ));
    checks.push(Check::new(
        s,
        "2<=n<=500: refined lower bound * sqrt n > 2/5",
        scaled,
        scaled > 0.0,
    ));

    let threshold = lower::refined_lower_scaled_threshold(100_000, tol)?;
    let margin = match threshold {
        Some(n) => refined_lower(n, tol)?.lo() * (n as f64).sqrt() - 0.5,
        None => f64::NEG_INFINITY,
    };
    checks.push(Check::new(
        s,
        format!(
            "first n with refined bound * sqrt n > 1/2 is {} (frozen {SCALED_HALF_THRESHOLD})",
            threshold.map_or("none".to_string(), |n| n.to_string())
        ),
        margin,
        threshold == Some(SCALED_HALF_THRESHOLD) && margin > 0.0,
    ));
    Ok(checks)
}

fn upper_suite() -> Result<Vec<Check>> {
    let s = Suite::Upper;
    let mut checks = Vec::new();

    for n in [189u64, 1_000, 10_000, 1_000_000] {
        let b = upper::theoretical_upper(n)?;
        let nf = n as f64;
        let display = 2.0 * nf.ln().sqrt() / nf.sqrt();
        let guards = b.degree >= 6 && b.guard_lhs < f64::from(b.degree * b.degree);
        checks.push(Check::new(
            s,
            format!(
                "n = {n}: explicit chain (M = {}) <= 2 sqrt(log n)/sqrt n",
                b.degree
            ),
            display - b.value,
            b.value <= display && guards,
        ));
    }

    let ratios = [1_000u64, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&n| upper::asymptotic_ratio(n))
        .collect::<Result<Vec<_>>>()?;
    let drop = ratios
        .windows(2)
        .map(|w| w[0] - w[1])
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        s,
        "bound * sqrt(n/log n) decreases over n = 10^3..10^6",
        drop,
        drop > 0.0,
    ));

    let mut floor_ok = true;
    let mut floor_margin = f64::INFINITY;
    for n in 1..=8 {
        for m in 1..=12 {
            let f = upper::symmetric_form_floor(n, m)?;
            floor_ok &= f.holds;
            floor_margin = floor_margin.min((f.l2 - f.floor) / f.floor);
        }
    }
    checks.push(Check::new(
        s,
        "L2 norm of symmetric form >= n^M / C(M+n-1,M)^(1/2), n<=8, M<=12",
        floor_margin,
        floor_ok,
    ));

    let witness = upper::refute_uniform_constant(2.0, 50, 50)?;
    let witness_margin = match witness {
        Some((n, m)) => {
            let f = upper::symmetric_form_floor(n, m)?;
            f.l2.ln() - (f64::from(m) * 2f64.ln() + 0.5 * f64::from(m + 1) * (n as f64).ln())
        }
        None => f64::NEG_INFINITY,
    };
    checks.push(Check::new(
        s,
        format!(
            "C = 2: first (n, M) with L2 norm > C^M n^((M+1)/2) is {} (frozen {:?})",
            witness.map_or_else(|| "none".to_string(), |w| format!("{w:?}")),
            REFUTATION_WITNESS
        ),
        witness_margin,
        witness == Some(REFUTATION_WITNESS) && witness_margin > 0.0,
    ));

    let ratios: Vec<f64> = (10..=20u32)
        .map(|m| {
            upper::symmetric_form_floor(3, m)
                .map(|f| f.l2 * f64::from(m).powf(1.5) / 3f64.powi(m as i32))
        })
        .collect::<Result<_>>()?;
    let growth = ratios
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        s,
        "n = 3: L2 * M^(3/2) / 3^M increases over M = 10..20",
        growth,
        growth > 0.0,
    ));

    let mut sandwich = f64::INFINITY;
    for n in 2..=3usize {
        let lo = refined_lower(n as u64, lower::DEFAULT_TOL)?.lo();
        for m in 2..=3u32 {
            let out = search_upper(n, m, 8, 0, upper::DEFAULT_GRID_DIVISOR)?;
            sandwich = sandwich.min(out.bound - lo);
        }
    }
    checks.push(Check::new(
        s,
        "random-sign search (n<=3, M<=3, 8 trials) stays above the refined lower bound",
        sandwich,
        sandwich > 0.0,
    ));
    Ok(checks)
}

/// Coefficient-bound and majorant report for a user-supplied series the
/// caller asserts is bounded by 1 on the unit polydisc.
pub fn series_checks(series: &TruncatedSeries, radius: Option<&[f64]>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in 1..=series.cap() {
        let r = wiener::wiener_bound_check(series, k, wiener::DEFAULT_TOL)?;
        checks.push(Check {
            suite: "series",
            claim: format!(
                "k = {k}: ||c_k||_2 = {:.6e} <= 1-|c0|^2 = {:.6e}",
                r.lhs, r.rhs
            ),
            margin: r.margin(),
            passed: r.holds,
        });
    }
    if let Some(z) = radius {
        let m = series.majorant(z)?;
        checks.push(Check {
            suite: "series",
            claim: format!("truncated Bohr sum at {z:?} = {m:.6e} < 1"),
            margin: 1.0 - m,
            passed: m < 1.0,
        });
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse("all").unwrap().len(), 4);
        assert_eq!(Suite::parse("lower").unwrap(), vec![Suite::Lower]);
        assert!(Suite::parse("bogus").is_none());
    }

    #[test]
    fn fast_suites_pass() {
        for suite in [Suite::Combinatorics, Suite::Wiener] {
            for check in run(suite).unwrap() {
                assert!(check.passed, "{check}");
            }
        }
    }

    #[test]
    fn series_checks_flag_violations() {
        let good = mobius_series(MobiusParams::new(0.5).unwrap(), 10).unwrap();
        let checks = series_checks(&good, Some(&[0.3])).unwrap();
        assert!(checks.iter().all(|c| c.passed));
        let bad = good.scale(num_complex::Complex64::new(3.0, 0.0));
        assert!(series_checks(&bad, None).unwrap().iter().any(|c| !c.passed));
    }
}
