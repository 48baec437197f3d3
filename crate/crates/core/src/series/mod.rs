//! Truncated multivariate power series with complex coefficients.
//!
//! Coefficients live in a sparse map keyed by [`MultiIndex`]; absent keys are
//! zero. Every key has the series dimension and order at most `cap`.

pub(crate) mod text;

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::combinatorics::MultiIndex;
use crate::error::{Error, Result};

pub use text::{parse_series, write_series};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    n: usize,
    cap: u32,
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl TruncatedSeries {
    /// The zero series.
    pub fn zero(n: usize, cap: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(TruncatedSeries {
            n,
            cap,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn constant(n: usize, cap: u32, c: Complex64) -> Result<Self> {
        let mut s = Self::zero(n, cap)?;
        s.insert(MultiIndex::zero(n)?, c)?;
        Ok(s)
    }

    /// Builds a series from terms; repeated indices are summed.
    pub fn from_terms<I>(n: usize, cap: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Complex64)>,
    {
        let mut s = Self::zero(n, cap)?;
        for (alpha, c) in terms {
            s.insert(alpha, c)?;
        }
        Ok(s)
    }

    /// Adds `c` to the coefficient of `alpha`.
    pub fn insert(&mut self, alpha: MultiIndex, c: Complex64) -> Result<()> {
        if alpha.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.dim(),
            });
        }
        if alpha.order() > self.cap {
            return Err(Error::DegreeAboveCap {
                degree: alpha.order(),
                cap: self.cap,
            });
        }
        let entry = self.coeffs.entry(alpha).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeffs
            .iter()
            .next()
            .filter(|(a, _)| a.order() == 0)
            .map(|(_, c)| *c)
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Stored terms in ascending multi-index order (zeros skipped).
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs
            .iter()
            .filter(|(_, c)| **c != Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Embeds a one-variable series as a series in variable `var` of `n`.
    pub fn lift(&self, n: usize, var: usize) -> Result<Self> {
        if self.n != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.n,
            });
        }
        let mut out = Self::zero(n, self.cap)?;
        for (alpha, c) in self.terms() {
            out.insert(MultiIndex::pure(n, var, alpha.order())?, *c)?;
        }
        Ok(out)
    }

    /// Keeps the terms whose order satisfies `keep`.
    pub fn filter_orders(&self, keep: impl Fn(u32) -> bool) -> Self {
        TruncatedSeries {
            n: self.n,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(a, _)| keep(a.order()))
                .map(|(a, c)| (a.clone(), *c))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.cap != other.cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (alpha, c) in &other.coeffs {
            *out.coeffs
                .entry(alpha.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TruncatedSeries {
            n: self.n,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, c)| (a.clone(), c * s))
                .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
                .collect(),
        }
    }

    /// Cauchy product truncated at the common cap.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.cap)?;
        for (a, ca) in self.terms() {
            let room = self.cap - a.order();
            for (b, cb) in other.terms() {
                if b.order() > room {
                    continue;
                }
                let key = a.add(b)?;
                *out.coeffs.entry(key).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        Ok(out)
    }

    /// Truncated Bohr sum `Σ |c_α| · z_mod^α`. No tail correction.
    pub fn majorant(&self, z_mod: &[f64]) -> Result<f64> {
        self.check_point_dim(z_mod.len())?;
        Ok(self
            .terms()
            .map(|(alpha, c)| c.norm() * monomial_modulus(alpha, z_mod))
            .sum())
    }

    /// Truncated evaluation at a complex point.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_point_dim(z.len())?;
        Ok(self
            .terms()
            .map(|(alpha, c)| {
                alpha
                    .parts()
                    .iter()
                    .zip(z)
                    .fold(*c, |acc, (&p, zj)| acc * zj.powu(p))
            })
            .sum())
    }

    /// Coefficients `c_α R^α`: boundedness on the polydisc of polyradius `R`
    /// becomes boundedness on the unit polydisc.
    pub fn rescale(&self, radius: &PolyRadius) -> Result<Self> {
        self.check_point_dim(radius.dim())?;
        Ok(TruncatedSeries {
            n: self.n,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, c)| (a.clone(), c * monomial_modulus(a, radius.radii())))
                .collect(),
        })
    }

    /// `(Σ_{|α|=k} |c_α|²)^{1/2}`.
    pub fn homogeneous_l2(&self, k: u32) -> Result<f64> {
        if k > self.cap {
            return Err(Error::DegreeAboveCap {
                degree: k,
                cap: self.cap,
            });
        }
        Ok(self
            .terms()
            .filter(|(a, _)| a.order() == k)
            .map(|(_, c)| c.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    fn check_point_dim(&self, found: usize) -> Result<()> {
        if found != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found,
            });
        }
        Ok(())
    }
}

fn monomial_modulus(alpha: &MultiIndex, z_mod: &[f64]) -> f64 {
    alpha
        .parts()
        .iter()
        .zip(z_mod)
        .map(|(&p, &r)| r.powi(p as i32))
        .product()
}

/// Radii `(r_1, …, r_n)` of a polydisc centred at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRadius(Vec<f64>);

impl PolyRadius {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(&bad) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::InvalidRadius(bad));
        }
        Ok(PolyRadius(radii))
    }

    pub fn uniform(n: usize, r: f64) -> Result<Self> {
        Self::new(vec![r; n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn radii(&self) -> &[f64] {
        &self.0
    }

    /// Component-wise product.
    pub fn compose(&self, other: &PolyRadius) -> Result<PolyRadius> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        PolyRadius::new(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}
