//! Upper bounds on `K_n`.
//!
//! If `r < K_n` and `p = Σ_{|α|=M} ε_α (M!/α!) z^α`, then
//! `r^M Σ|c_α| = r^M n^M ≤ sup_{polydisc} |p|`. Any certified upper bound on
//! the sup norm of a signed homogeneous polynomial therefore bounds `K_n`
//! from above. This module searches random sign patterns and certifies their
//! sup norms, and also evaluates the explicit constant chain available for
//! `n ≥ 189`.

mod sup_norm;
mod theory;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::{self, MultiIndex};
use crate::error::{Error, Result};
use crate::lower::naive_lower;
use crate::series::{self, TruncatedSeries};

pub use sup_norm::{default_points, sup_norm_certified, sup_norm_sampled, SupNormCert, EVAL_SLACK};
pub use theory::{
    asymptotic_ratio, explicit_degree, refute_uniform_constant, symmetric_form_floor,
    theoretical_upper, theoretical_upper_at, theoretical_upper_optimized, SymmetricFloor,
    TheoryBound, THEORY_MIN_N,
};

/// Grid divisor used when none is given: `points per axis = 64·M`.
pub const DEFAULT_GRID_DIVISOR: u32 = 64;

/// Largest dimension for which the certified torus grid is affordable.
pub const CERTIFIED_MAX_N: usize = 4;

/// Identifies the polynomial a certificate was issued for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyId {
    pub n: usize,
    pub degree: u32,
    pub seed: u64,
    pub fingerprint: u64,
}

/// `Σ_{|α|=M} ε_α (M!/α!) z^α` with `ε_α = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedHomPoly {
    n: usize,
    degree: u32,
    seed: u64,
    indices: Vec<MultiIndex>,
    signs: Vec<i8>,
    magnitudes: Vec<f64>,
}

impl SignedHomPoly {
    /// Signs are given in [`combinatorics::enumerate`] order.
    pub fn from_signs(n: usize, degree: u32, signs: Vec<i8>, seed: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let indices = combinatorics::enumerate(n, degree)?;
        if signs.len() != indices.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                found: signs.len(),
            });
        }
        if let Some(bad) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::OutOfRange {
                value: f64::from(*bad),
                lo: -1.0,
                hi: 1.0,
            });
        }
        let magnitudes = indices
            .iter()
            .map(|a| {
                combinatorics::multinomial(a)
                    .to_f64()
                    .unwrap_or(f64::INFINITY)
            })
            .collect();
        Ok(SignedHomPoly {
            n,
            degree,
            seed,
            indices,
            signs,
            magnitudes,
        })
    }

    pub fn all_plus(n: usize, degree: u32) -> Result<Self> {
        let count = combinatorics::enumerate(n, degree)?.len();
        Self::from_signs(n, degree, vec![1; count], 0)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// `(α, ε_α M!/α!)` in enumeration order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.indices
            .iter()
            .zip(self.signs.iter().zip(&self.magnitudes))
            .map(|(a, (&s, &m))| (a, f64::from(s) * m))
    }

    /// `Σ |c_α|`, exactly; always `n^M`.
    pub fn coefficient_sum(&self) -> combinatorics::ExactInt {
        self.indices.iter().map(combinatorics::multinomial).sum()
    }

    pub fn id(&self) -> PolyId {
        // FNV-1a over the signs
        let fingerprint = self.signs.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &s| {
            (h ^ u64::from(s as u8)).wrapping_mul(0x0100_0000_01b3)
        });
        PolyId {
            n: self.n,
            degree: self.degree,
            seed: self.seed,
            fingerprint,
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        TruncatedSeries::from_terms(
            self.n,
            self.degree,
            self.coefficients()
                .map(|(a, c)| (a.clone(), Complex64::new(c, 0.0))),
        )
    }

    /// Header line `n M seed` followed by the series text format.
    pub fn to_witness(&self) -> Result<String> {
        Ok(format!(
            "{} {} {}\n{}",
            self.n,
            self.degree,
            self.seed,
            series::write_series(&self.to_series()?)
        ))
    }

    /// Reads a witness file, checking every coefficient is `±M!/α!`.
    pub fn from_witness(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_err = |msg: &str| Error::Parse {
            line: header_line + 1,
            msg: msg.to_string(),
        };
        if fields.len() != 3 {
            return Err(parse_err("header must be `n M seed`"));
        }
        let n: usize = fields[0].parse().map_err(|_| parse_err("bad n"))?;
        let degree: u32 = fields[1].parse().map_err(|_| parse_err("bad M"))?;
        let seed: u64 = fields[2].parse().map_err(|_| parse_err("bad seed"))?;
        let body = series::text::parse_lines(lines, Some(degree))?;
        if body.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: body.dim(),
            });
        }
        let reference = Self::all_plus(n, degree)?;
        let signs = reference
            .coefficients()
            .map(|(alpha, magnitude)| {
                let c = body.coeff(alpha);
                if c.im != 0.0 || c.re.abs() != magnitude {
                    Err(Error::Parse {
                        line: 0,
                        msg: format!("coefficient of {alpha} is not ±{magnitude}"),
                    })
                } else {
                    Ok(if c.re > 0.0 { 1 } else { -1 })
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        if body.terms().count() != signs.len() {
            return Err(Error::Parse {
                line: 0,
                msg: "terms outside degree M present".into(),
            });
        }
        Self::from_signs(n, degree, signs, seed)
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Per-trial seed derived from the search seed.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial))
}

/// Signs drawn from ChaCha8 seeded by `seed`, one fair bit per multi-index
/// in enumeration order.
pub fn random_signs(n: usize, degree: u32, seed: u64) -> Result<SignedHomPoly> {
    let count = combinatorics::enumerate(n, degree)?.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs = (0..count)
        .map(|_| if rng.random::<bool>() { 1 } else { -1 })
        .collect();
    SignedHomPoly::from_signs(n, degree, signs, seed)
}

/// `(hi / n^M)^{1/M}` where `hi` is the certified sup-norm upper bound.
pub fn kn_upper_from_poly(p: &SignedHomPoly, cert: &SupNormCert) -> Result<f64> {
    if cert.poly() != p.id() {
        return Err(Error::CertificateMismatch);
    }
    Ok(root_ratio(cert.enclosure().hi(), p))
}

/// Same ratio with the sampled maximum; not a bound.
pub fn kn_estimate_from_sampled(p: &SignedHomPoly, cert: &SupNormCert) -> Result<f64> {
    if cert.poly() != p.id() {
        return Err(Error::CertificateMismatch);
    }
    Ok(root_ratio(cert.enclosure().lo(), p))
}

fn root_ratio(value: f64, p: &SignedHomPoly) -> f64 {
    let m = f64::from(p.degree);
    ((value.ln() - m * (p.n as f64).ln()) / m).exp()
}

/// Best witness found by [`search_upper`] or [`search_estimate`].
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub poly: SignedHomPoly,
    pub cert: SupNormCert,
    pub trial: u64,
    /// Certified upper bound on `K_n`, or the sampled estimate when
    /// `cert.certified()` is false.
    pub bound: f64,
}

/// Minimum of [`kn_upper_from_poly`] over `trials` sign patterns seeded by
/// [`trial_seed`]. Ties go to the earliest trial.
pub fn search_upper(
    n: usize,
    degree: u32,
    trials: u64,
    seed: u64,
    grid_divisor: u32,
) -> Result<SearchOutcome> {
    let points = default_points(degree, grid_divisor);
    run_search(n, degree, trials, seed, |p| {
        let cert = sup_norm_certified(p, points)?;
        let bound = kn_upper_from_poly(p, &cert)?;
        if bound < naive_lower(n as u64) {
            return Err(Error::GuardViolated(format!(
                "upper bound {bound} below 1/(3 sqrt n) at n = {n}"
            )));
        }
        Ok((cert, bound))
    })
}

/// Uncertified variant for dimensions where the full grid is too costly:
/// samples `points_per_axis` points per free coordinate and ranks by the
/// sampled maximum.
pub fn search_estimate(
    n: usize,
    degree: u32,
    trials: u64,
    seed: u64,
    points_per_axis: usize,
) -> Result<SearchOutcome> {
    run_search(n, degree, trials, seed, |p| {
        let cert = sup_norm_sampled(p, points_per_axis)?;
        let estimate = kn_estimate_from_sampled(p, &cert)?;
        Ok((cert, estimate))
    })
}

fn run_search<F>(n: usize, degree: u32, trials: u64, seed: u64, eval: F) -> Result<SearchOutcome>
where
    F: Fn(&SignedHomPoly) -> Result<(SupNormCert, f64)> + Sync,
{
    if trials == 0 {
        return Err(Error::OutOfRange {
            value: 0.0,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let results = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let poly = random_signs(n, degree, trial_seed(seed, trial))?;
            let (cert, bound) = eval(&poly)?;
            Ok(SearchOutcome {
                poly,
                cert,
                trial,
                bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(results
        .into_iter()
        .min_by(|a, b| a.bound.total_cmp(&b.bound).then(a.trial.cmp(&b.trial)))
        .expect("trials >= 1"))
}
