//! Sup norm of a signed homogeneous polynomial over the unit polydisc.
//!
//! By the maximum principle the sup is attained on the torus. Since `p` is
//! homogeneous, `|p(e^{iφ} z)| = |p(z)|`, so `θ_1` can be pinned to 0 and only
//! the remaining `n − 1` angles are gridded with spacing `h = 2π/N`.
//!
//! Certification: any torus point rotates to one with `θ_1 = 0` whose offset
//! `d` from the nearest grid point has `|d_j| ≤ h/2`. Along `t ↦ θ + t d`
//! the polynomial is an exponential sum with frequencies `α·d ∈ [−Mh/2, Mh/2]`,
//! so Bernstein's inequality for functions of exponential type bounds the
//! change by `(Mh/2)·sup`. Hence `sup ≤ lo / (1 − Mh/2)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{PolyId, SignedHomPoly};
use crate::combinatorics;
use crate::error::{Error, Result};
use crate::lower::Enclosure;

/// Relative allowance for rounding in the grid evaluation.
pub const EVAL_SLACK: f64 = 1e-12;

/// Grid points per axis for a divisor `D`: `D·M`, giving `Mh/2 = π/D`.
pub fn default_points(degree: u32, grid_divisor: u32) -> usize {
    grid_divisor as usize * degree as usize
}

/// Sup-norm enclosure tied to the polynomial it was computed for.
#[derive(Debug, Clone, PartialEq)]
pub struct SupNormCert {
    poly: PolyId,
    points_per_axis: usize,
    h: f64,
    enclosure: Enclosure,
    certified: bool,
}

impl SupNormCert {
    pub fn poly(&self) -> PolyId {
        self.poly
    }

    pub fn points_per_axis(&self) -> usize {
        self.points_per_axis
    }

    /// Grid spacing `2π/N`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// `lo` is the largest sampled modulus; `hi` a certified upper bound.
    pub fn enclosure(&self) -> Enclosure {
        self.enclosure
    }

    /// Whether `hi` comes from the grid correction rather than the
    /// coefficient-sum bound alone.
    pub fn certified(&self) -> bool {
        self.certified
    }
}

/// Certified enclosure of `sup |p|` on the unit polydisc from an
/// `N`-point-per-axis torus grid. Rejects grids with `M·h/2 ≥ 1`.
pub fn sup_norm_certified(p: &SignedHomPoly, points_per_axis: usize) -> Result<SupNormCert> {
    let h = TAU / points_per_axis as f64;
    let contraction = f64::from(p.degree()) * h / 2.0;
    if points_per_axis == 0 || contraction >= 1.0 {
        return Err(Error::GridTooCoarse(contraction));
    }
    let lo = grid_max(p, points_per_axis);
    let corrected = lo * (1.0 + EVAL_SLACK) / (1.0 - contraction);
    Ok(SupNormCert {
        poly: p.id(),
        points_per_axis,
        h,
        enclosure: Enclosure::new(lo, corrected.min(coefficient_bound(p)))?,
        certified: true,
    })
}

/// Sampled maximum only; `hi` falls back to the coefficient sum `n^M`.
pub fn sup_norm_sampled(p: &SignedHomPoly, points_per_axis: usize) -> Result<SupNormCert> {
    if points_per_axis == 0 {
        return Err(Error::GridTooCoarse(f64::INFINITY));
    }
    let lo = grid_max(p, points_per_axis);
    Ok(SupNormCert {
        poly: p.id(),
        points_per_axis,
        h: TAU / points_per_axis as f64,
        enclosure: Enclosure::new(lo, coefficient_bound(p).max(lo))?,
        certified: false,
    })
}

/// `n^M` rounded upward to an `f64`.
fn coefficient_bound(p: &SignedHomPoly) -> f64 {
    let exact = combinatorics::pow(p.dim() as u64, p.degree());
    let approx = exact.to_f64().unwrap_or(f64::INFINITY);
    if approx < 9_007_199_254_740_992.0 {
        approx
    } else {
        approx * (1.0 + f64::EPSILON)
    }
}

/// Dense coefficients over the free variables `z_2..z_n` (with `z_1 = 1`),
/// laid out with `z_n` fastest and `M + 1` slots per variable.
fn dense_free_coefficients(p: &SignedHomPoly) -> Vec<Complex64> {
    let base = p.degree() as usize + 1;
    let free = p.dim() - 1;
    let mut dense = vec![Complex64::new(0.0, 0.0); base.pow(free as u32)];
    for (alpha, c) in p.coefficients() {
        let offset = alpha.parts()[1..]
            .iter()
            .fold(0usize, |acc, &e| acc * base + e as usize);
        dense[offset] += c;
    }
    dense
}

/// `e^{i e θ_t}` for `e ≤ M`, `θ_t = 2π t/N`, indexed `[e·N + t]`.
fn power_table(degree: u32, points: usize) -> Vec<Complex64> {
    let mut table = Vec::with_capacity((degree as usize + 1) * points);
    for e in 0..=degree as usize {
        for t in 0..points {
            let step = (e * t) % points;
            table.push(Complex64::from_polar(
                1.0,
                TAU * step as f64 / points as f64,
            ));
        }
    }
    table
}

fn grid_max(p: &SignedHomPoly, points: usize) -> f64 {
    let dense = dense_free_coefficients(p);
    if p.dim() == 1 {
        return dense[0].norm();
    }
    let base = p.degree() as usize + 1;
    let table = power_table(p.degree(), points);
    let sweep = Sweep {
        base,
        points,
        table: &table,
    };
    let top_stride = dense.len() / base;
    if top_stride == 1 {
        return sweep.innermost(&dense).sqrt();
    }
    // parallel over the first free angle
    (0..points)
        .into_par_iter()
        .map_init(
            || sweep.scratch(dense.len()),
            |scratch, t| {
                let (head, rest) = scratch.split_first_mut().expect("non-empty scratch");
                sweep.collapse(&dense, t, head);
                sweep.descend(head, rest)
            },
        )
        .reduce(|| 0.0, f64::max)
        .sqrt()
}

struct Sweep<'a> {
    base: usize,
    points: usize,
    table: &'a [Complex64],
}

impl Sweep<'_> {
    /// Buffers for each collapsed level below the top.
    fn scratch(&self, mut len: usize) -> Vec<Vec<Complex64>> {
        let mut levels = Vec::new();
        while len > self.base {
            len /= self.base;
            levels.push(vec![Complex64::new(0.0, 0.0); len]);
        }
        levels
    }

    /// Substitutes the leading variable's value at grid index `t`.
    fn collapse(&self, coeffs: &[Complex64], t: usize, out: &mut [Complex64]) {
        let stride = out.len();
        out.iter_mut().for_each(|c| *c = Complex64::new(0.0, 0.0));
        for e in 0..self.base {
            let w = self.table[e * self.points + t];
            let block = &coeffs[e * stride..(e + 1) * stride];
            for (o, c) in out.iter_mut().zip(block) {
                *o += c * w;
            }
        }
    }

    /// Max of `|q|²` over the remaining grid, `coeffs` already collapsed.
    fn descend(&self, coeffs: &[Complex64], scratch: &mut [Vec<Complex64>]) -> f64 {
        if coeffs.len() == self.base {
            return self.innermost(coeffs);
        }
        let (head, rest) = scratch.split_first_mut().expect("scratch matches depth");
        let mut best = 0.0f64;
        for t in 0..self.points {
            self.collapse(coeffs, t, head);
            best = best.max(self.descend(head, rest));
        }
        best
    }

    /// Univariate sweep in the last free variable; returns the max `|q|²`.
    fn innermost(&self, coeffs: &[Complex64]) -> f64 {
        let mut best = 0.0f64;
        for t in 0..self.points {
            let mut acc = coeffs[0];
            for (e, c) in coeffs.iter().enumerate().skip(1) {
                acc += c * self.table[e * self.points + t];
            }
            best = best.max(acc.norm_sqr());
        }
        best
    }
}
