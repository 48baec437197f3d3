//! Coefficient bounds for functions bounded by 1 on the polydisc, and the
//! one-variable Möbius family that makes the radius 1/3 sharp.
//!
//! The pipeline mirrors the classical argument: average `f` over the `k`-th
//! roots of unity (which on coefficients is a filter on the order), then
//! compose with the disc automorphism sending `c_0` to 0. The leading
//! homogeneous block of the result has `L²` norm at most 1 on the torus.

use num_complex::Complex64;

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Absolute tolerance for [`wiener_bound_check`].
pub const DEFAULT_TOL: f64 = 1e-9;

/// Parameter `a ∈ [0, 1)` of `f_a(z) = (a − z)/(1 − a z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusParams(f64);

impl MobiusParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::MobiusParameter(a));
        }
        Ok(MobiusParams(a))
    }

    pub fn a(self) -> f64 {
        self.0
    }
}

/// Taylor coefficients of `f_a` up to `cap`: `c_0 = a`,
/// `c_k = −(1 − a²) a^{k−1}`.
pub fn mobius_series(params: MobiusParams, cap: u32) -> Result<TruncatedSeries> {
    if cap == 0 {
        return Err(Error::ZeroDegree);
    }
    let a = params.a();
    let scale = 1.0 - a * a;
    let mut s = TruncatedSeries::constant(1, cap, Complex64::new(a, 0.0))?;
    let mut power = 1.0;
    for k in 1..=cap {
        s.insert(
            MultiIndex::new(vec![k])?,
            Complex64::new(-scale * power, 0.0),
        )?;
        power *= a;
    }
    Ok(s)
}

/// Radius where the Bohr sum `a + (1−a²) r/(1−ar)` of `f_a` reaches 1,
/// namely `1/(1+2a)`.
pub fn mobius_bohr_radius(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::MobiusParameter(a));
    }
    Ok(1.0 / (1.0 + 2.0 * a))
}

/// Average of `f(ω^j z)` over the `k`-th roots of unity: keeps exactly the
/// terms whose order is a multiple of `k`.
pub fn symmetrize(f: &TruncatedSeries, k: u32) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(f.filter_orders(|order| order % k == 0))
}

/// Formal series of `(g − c)/(1 − c̄ g)` up to the cap of `g`.
///
/// Requires `|c| < 1` and `|g(0)| < 1`. Since `g − g(0)` has no constant
/// term, the geometric expansion of the denominator terminates at the cap
/// and the truncation is exact.
pub fn mobius_map(g: &TruncatedSeries, c: Complex64) -> Result<TruncatedSeries> {
    if c.norm() >= 1.0 {
        return Err(Error::ConstantTermOutsideDisc(c.norm()));
    }
    let g0 = g.constant_term();
    if g0.norm() >= 1.0 {
        return Err(Error::ConstantTermOutsideDisc(g0.norm()));
    }
    let (n, cap) = (g.dim(), g.cap());
    let one = TruncatedSeries::constant(n, cap, Complex64::new(1.0, 0.0))?;
    let shifted = g.filter_orders(|o| o > 0);
    let numerator = g.sub(&TruncatedSeries::constant(n, cap, c)?)?;

    // 1/(1 − c̄ g) = (1/d) Σ_m (c̄ u / d)^m with d = 1 − c̄ g0, u = g − g0
    let d = Complex64::new(1.0, 0.0) - c.conj() * g0;
    let ratio = shifted.scale(c.conj() / d);
    let mut inverse = one.clone();
    let mut power = one;
    for _ in 0..cap {
        power = power.mul(&ratio)?;
        if power.is_zero() {
            break;
        }
        inverse = inverse.add(&power)?;
    }
    numerator.mul(&inverse.scale(d.inv()))
}

/// `h = (g − c_0)/(1 − c̄_0 g)`, which vanishes at the origin.
pub fn mobius_normalize(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    mobius_map(g, g.constant_term())
}

/// Outcome of comparing `(Σ_{|α|=k} |c_α|²)^{1/2}` with `1 − |c_0|²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerReport {
    pub k: u32,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl WienerReport {
    /// `rhs − lhs`; negative means the inequality failed.
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Report-only check of the coefficient bound for a series the caller
/// asserts is bounded by 1 on the unit polydisc. Never fails on a
/// violated inequality; only on `k` above the cap.
pub fn wiener_bound_check(f: &TruncatedSeries, k: u32, tol: f64) -> Result<WienerReport> {
    let lhs = f.homogeneous_l2(k)?;
    let rhs = 1.0 - f.constant_term().norm_sqr();
    Ok(WienerReport {
        k,
        lhs,
        rhs,
        holds: lhs <= rhs + tol,
    })
}

/// `f_a(z_1) · f_b(z_2)` as a two-variable series.
pub fn mobius_product(a: f64, b: f64, cap: u32) -> Result<TruncatedSeries> {
    let fa = mobius_series(MobiusParams::new(a)?, cap)?.lift(2, 0)?;
    let fb = mobius_series(MobiusParams::new(b)?, cap)?.lift(2, 1)?;
    fa.mul(&fb)
}
