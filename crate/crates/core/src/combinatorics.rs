//! Exact multi-index combinatorics.
//!
//! Everything here is computed in arbitrary precision; conversion to `f64`
//! happens in the callers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// An n-tuple of nonnegative exponents `(α_1, …, α_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(MultiIndex(parts))
    }

    /// The zero multi-index in dimension `n`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// `e_j` scaled by `degree`: the exponent of the pure power `z_j^degree`.
    pub fn pure(n: usize, var: usize, degree: u32) -> Result<Self> {
        if var >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: var + 1,
            });
        }
        let mut parts = vec![0; n];
        parts[var] = degree;
        Self::new(parts)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|α|`, the sum of the parts.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Component-wise sum; dimensions must agree.
    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices of dimension `n` and order `k`, lexicographically
/// descending (largest `α_1` first).
pub fn enumerate(n: usize, k: u32) -> Result<Vec<MultiIndex>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, k, &mut out);
    Ok(out)
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for first in (0..=remaining).rev() {
        current[pos] = first;
        fill(current, pos + 1, remaining - first, out);
    }
}

/// Exact binomial coefficient `C(a, b)`.
pub fn binomial(a: u64, b: u64) -> Result<ExactInt> {
    if b > a {
        return Err(Error::BinomialOutOfRange { a, b });
    }
    let b = b.min(a - b);
    let mut acc = ExactInt::one();
    for i in 0..b {
        // acc * (a - i) is divisible by (i + 1) at every step.
        acc *= a - i;
        acc /= i + 1;
    }
    Ok(acc)
}

pub fn factorial(m: u64) -> ExactInt {
    (1..=m).fold(ExactInt::one(), |acc, i| acc * i)
}

/// `|α|! / (α_1! ⋯ α_n!)`, as a product of binomials of partial sums.
pub fn multinomial(alpha: &MultiIndex) -> ExactInt {
    let mut acc = ExactInt::one();
    let mut partial = 0u64;
    for &p in alpha.parts() {
        partial += u64::from(p);
        acc *= binomial(partial, u64::from(p)).expect("partial sum dominates part");
    }
    acc
}

/// `Σ_{|α|=M} M!/α!` over dimension `n`, by enumeration. Equals `n^M`.
pub fn sum_multinomials(n: usize, degree: u32) -> Result<ExactInt> {
    Ok(enumerate(n, degree)?
        .iter()
        .map(multinomial)
        .fold(ExactInt::zero(), |acc, c| acc + c))
}

/// `Σ_{|α|=M} (M!/α!)²` over dimension `n`.
///
/// Uses the convolution `T_j(m) = Σ_k C(m,k)² T_{j-1}(m-k)` over the number
/// of variables, which stays polynomial in `n` and `M`.
pub fn sum_multinomials_squared(n: usize, degree: u32) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let m_max = degree as usize;
    let squares: Vec<Vec<ExactInt>> = (0..=m_max as u64)
        .map(|m| {
            (0..=m)
                .map(|k| {
                    let c = binomial(m, k).expect("k <= m");
                    &c * &c
                })
                .collect()
        })
        .collect();

    // zero variables: only the empty index of order 0
    let mut table = vec![ExactInt::zero(); m_max + 1];
    table[0] = ExactInt::one();
    for _ in 0..n {
        table = (0..=m_max)
            .map(|m| {
                (0..=m)
                    .map(|k| &squares[m][k] * &table[m - k])
                    .fold(ExactInt::zero(), |acc, t| acc + t)
            })
            .collect();
    }
    Ok(table.swap_remove(m_max))
}

/// `base^exp` exactly.
pub fn pow(base: u64, exp: u32) -> ExactInt {
    num_traits::pow(ExactInt::from(base), exp as usize)
}
