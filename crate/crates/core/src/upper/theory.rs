//! Explicit upper bounds for large `n`, and the `L²` floor that rules out
//! uniformly bounded symmetric forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::combinatorics::{self, ExactInt};
use crate::error::{Error, Result};

/// Below this dimension the explicit bound exceeds the trivial `1/3`.
pub const THEORY_MIN_N: u64 = 189;

/// One evaluation of the explicit chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryBound {
    pub n: u64,
    pub degree: u32,
    pub value: f64,
    /// `6^{1/n}·2π`, which must stay below `M²`.
    pub guard_lhs: f64,
}

/// Smallest integer strictly above `ln n`.
pub fn explicit_degree(n: u64) -> u32 {
    (n as f64).ln().floor() as u32 + 1
}

/// `(6 (M!·M)^{1/2} n^{(1+M)/2} / n^M)^{1/M}` for a chosen degree `M`.
///
/// Valid whenever `6^{1/n}·2π < M²` (so the random-polynomial estimate is
/// below `6 (M! n^{M+1} M)^{1/2}`) and `ln M < M`.
pub fn theoretical_upper_at(n: u64, degree: u32) -> Result<TheoryBound> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if degree < 2 {
        return Err(Error::GuardViolated(format!(
            "degree {degree} must exceed 1"
        )));
    }
    let nf = n as f64;
    let m = f64::from(degree);
    let guard_lhs = 6f64.powf(1.0 / nf) * std::f64::consts::TAU;
    if guard_lhs >= m * m {
        return Err(Error::GuardViolated(format!(
            "6^(1/n)*2pi = {guard_lhs} is not below M^2 = {}",
            m * m
        )));
    }
    if m.ln() >= m {
        return Err(Error::GuardViolated(format!("log M >= M at M = {degree}")));
    }
    let ln_factorial = ln_exact(&combinatorics::factorial(u64::from(degree)));
    let ln_value = 6f64.ln() + 0.5 * (ln_factorial + m.ln()) + 0.5 * (1.0 - m) * nf.ln();
    Ok(TheoryBound {
        n,
        degree,
        value: (ln_value / m).exp(),
        guard_lhs,
    })
}

/// The explicit chain at `M` = next integer above `ln n`, for `n ≥ 189`.
pub fn theoretical_upper(n: u64) -> Result<TheoryBound> {
    if n < THEORY_MIN_N {
        return Err(Error::BelowTheoryRange(n));
    }
    let degree = explicit_degree(n);
    if degree < 6 {
        return Err(Error::GuardViolated(format!("M = {degree} below 6")));
    }
    theoretical_upper_at(n, degree)
}

/// Minimum of the same chain over every admissible `M ≤ 4·(ln n + 1)`.
pub fn theoretical_upper_optimized(n: u64) -> Result<TheoryBound> {
    if n < THEORY_MIN_N {
        return Err(Error::BelowTheoryRange(n));
    }
    let reference = theoretical_upper(n)?;
    let top = 4 * explicit_degree(n);
    Ok((2..=top)
        .filter_map(|m| theoretical_upper_at(n, m).ok())
        .fold(
            reference,
            |best, b| if b.value < best.value { b } else { best },
        ))
}

/// `theoretical_upper(n) · √(n / ln n)`.
pub fn asymptotic_ratio(n: u64) -> Result<f64> {
    let bound = theoretical_upper(n)?;
    let nf = n as f64;
    Ok(bound.value * (nf / nf.ln()).sqrt())
}

/// `L²` norm on the torus of a symmetric form with unimodular coefficients
/// against its Cauchy–Schwarz floor.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricFloor {
    pub n: usize,
    pub degree: u32,
    /// `Σ_{|α|=M} (M!/α!)²`, exact.
    pub l2_squared: ExactInt,
    pub l2: f64,
    /// `n^M / C(M+n−1, M)^{1/2}`.
    pub floor: f64,
    /// `l2² · C(M+n−1, M) ≥ n^{2M}`, decided exactly.
    pub holds: bool,
}

pub fn symmetric_form_floor(n: usize, degree: u32) -> Result<SymmetricFloor> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    let l2_squared = combinatorics::sum_multinomials_squared(n, degree)?;
    let count = combinatorics::binomial(n as u64 + u64::from(degree) - 1, u64::from(degree))?;
    let power = combinatorics::pow(n as u64, degree);
    let holds = &l2_squared * &count >= &power * &power;
    let l2 = (0.5 * ln_exact(&l2_squared)).exp();
    let floor = (ln_exact(&power) - 0.5 * ln_exact(&count)).exp();
    Ok(SymmetricFloor {
        n,
        degree,
        l2_squared,
        l2,
        floor,
        holds,
    })
}

/// First `(n, M)` in `M`-major order with `l2 > C^M n^{(M+1)/2}`, compared
/// exactly after squaring. `None` means the grid was exhausted.
pub fn refute_uniform_constant(c: f64, n_max: usize, m_max: u32) -> Result<Option<(usize, u32)>> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::OutOfRange {
            value: c,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let c_exact = BigRational::from_float(c).expect("finite");
    for degree in 1..=m_max {
        let c_pow = num_traits::pow(c_exact.clone(), 2 * degree as usize);
        for n in 1..=n_max {
            let lhs =
                BigRational::from_integer(combinatorics::sum_multinomials_squared(n, degree)?);
            let rhs = &c_pow * BigRational::from_integer(combinatorics::pow(n as u64, degree + 1));
            if lhs > rhs {
                return Ok(Some((n, degree)));
            }
        }
    }
    Ok(None)
}

/// Natural log of a positive big integer without overflowing `f64`.
fn ln_exact(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 900;
    let head = (x >> shift).to_f64().expect("fits in f64");
    head.ln() + shift as f64 * std::f64::consts::LN_2
}
