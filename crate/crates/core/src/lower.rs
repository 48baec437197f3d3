//! Certified lower bounds on the Bohr radius `K_n` of the unit polydisc.
//!
//! The refined bound is the positive root of
//!
//! ```text
//! F(r) = r + Σ_{k≥2} r^k C(n+k−1, k)^{1/2} − 1/2
//! ```
//!
//! enclosed by bisection on certified enclosures of `F`: a finite sum with a
//! relative rounding slack plus a geometric bound on the tail.

use crate::error::{Error, Result};

/// Bisection tolerance on `r`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Largest summation index before the tail bound must take over.
pub const MAX_TERMS: u32 = 400;

// stop summing once the certified tail is this small relative to the sum
const TAIL_RELATIVE: f64 = 8.673_617_379_884_035e-19; // 2^-60

const UNIT_SLACK: f64 = 8.881_784_197_001_252e-16; // 2^-50

/// A closed interval `[lo, hi]` known to contain some real quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Enclosure { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// `1/(3√n)`: the ball of radius 1/3 contains the polydisc of this radius.
pub fn naive_lower(n: u64) -> f64 {
    1.0 / (3.0 * (n as f64).sqrt())
}

/// Majorant estimate `c + (1 − c²) Σ_{k≥1} s^{k/2}` in closed form, where
/// `c = |c_0|` and `s = Σ |z_j|²`.
pub fn est_bound(c0_mod: f64, s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c0_mod) {
        return Err(Error::OutOfRange {
            value: c0_mod,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if !(0.0..1.0).contains(&s) {
        return Err(Error::SumOfSquaresOutOfRange(s));
    }
    let root = s.sqrt();
    Ok(c0_mod + (1.0 - c0_mod * c0_mod) * root / (1.0 - root))
}

/// Certified enclosure of the root function `F(r)` at dimension `n`.
///
/// Terms follow the ratio `term(k+1)/term(k) = r √((n+k)/(k+1))`, which is
/// non-increasing in `k`, so once it drops below 1 the remaining terms are
/// dominated by a geometric series.
pub fn root_function(n: u64, r: f64) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let nf = n as f64;
    let mut sum = r;
    // virtual k = 1 term r·√n drives the ratio recursion
    let mut term = r * nf.sqrt();
    let mut k = 1u32;
    let tail = loop {
        k += 1;
        term *= r * ((nf + f64::from(k) - 1.0) / f64::from(k)).sqrt();
        sum += term;
        let rho = r * ((nf + f64::from(k)) / (f64::from(k) + 1.0)).sqrt();
        let tail = if rho < 1.0 {
            term * rho / (1.0 - rho)
        } else {
            f64::INFINITY
        };
        if rho < 0.5 && tail <= sum * TAIL_RELATIVE {
            break tail;
        }
        if k >= MAX_TERMS {
            if rho >= 1.0 {
                return Err(Error::TailNotContracting { n, r });
            }
            break tail;
        }
    };
    let slack = f64::from(k) * UNIT_SLACK;
    Enclosure::new(
        sum * (1.0 - slack) - 0.5,
        (sum + tail) * (1.0 + slack) - 0.5,
    )
}

/// Sign of `F` where the enclosure decides it.
fn certified_sign(n: u64, r: f64) -> Result<Option<bool>> {
    let f = root_function(n, r)?;
    Ok(if f.hi() < 0.0 {
        Some(false)
    } else if f.lo() > 0.0 {
        Some(true)
    } else {
        None
    })
}

/// Initial bracket: `F < 0` at `1/(3√n)`, `F > 0` at `1/√n`.
/// At `n = 1` the root is exactly `1/3`, so `[1/4, 0.49]` is used.
pub fn initial_bracket(n: u64) -> (f64, f64) {
    if n == 1 {
        return (0.25, 0.49);
    }
    (naive_lower(n), 1.0 / (n as f64).sqrt())
}

/// Enclosure of width at most `tol` around the positive root of `F`.
pub fn refined_lower(n: u64, tol: f64) -> Result<Enclosure> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let (mut lo, mut hi) = initial_bracket(n);
    if certified_sign(n, lo)? != Some(false) || certified_sign(n, hi)? != Some(true) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Unresolved {
                width: hi - lo,
                tol,
            });
        }
        match certified_sign(n, mid)? {
            Some(false) => lo = mid,
            Some(true) => hi = mid,
            None => {
                // mid sits in the rounding band around the root; step aside
                let (left, right) = (mid - 0.25 * tol, mid + 0.25 * tol);
                if certified_sign(n, left)? == Some(false)
                    && certified_sign(n, right)? == Some(true)
                {
                    lo = lo.max(left);
                    hi = hi.min(right);
                } else {
                    return Err(Error::Unresolved {
                        width: hi - lo,
                        tol,
                    });
                }
            }
        }
        debug_assert!(root_function(n, lo)?.hi() < 0.0 && root_function(n, hi)?.lo() > 0.0);
    }
    Enclosure::new(lo, hi)
}

/// Smallest `n` in `2..=limit` whose certified root satisfies
/// `lo · √n > 1/2`.
pub fn refined_lower_scaled_threshold(limit: u64, tol: f64) -> Result<Option<u64>> {
    for n in 2..=limit {
        if refined_lower(n, tol)?.lo() * (n as f64).sqrt() > 0.5 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
