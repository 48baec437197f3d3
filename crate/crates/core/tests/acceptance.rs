//! Acceptance criteria, one line per criterion.
//!
//! Runs under a plain `main` so each criterion reports `PASS`/`FAIL` with its
//! runtime against the stated budget. Any failure makes the target fail.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bohr::combinatorics::{
    enumerate, factorial, multinomial, pow, sum_multinomials, sum_multinomials_squared, ExactInt,
};
use bohr::lower::{est_bound, naive_lower, refined_lower, refined_lower_scaled_threshold};
use bohr::series::{PolyRadius, TruncatedSeries};
use bohr::upper::{
    default_points, kn_upper_from_poly, random_signs, refute_uniform_constant, search_upper,
    sup_norm_certified, symmetric_form_floor, theoretical_upper, trial_seed, DEFAULT_GRID_DIVISOR,
};
use bohr::wiener::{mobius_bohr_radius, mobius_product, mobius_series, MobiusParams};

const TOL: f64 = 1e-12;

/// First `n` whose refined bound times `√n` exceeds 1/2.
const SCALED_HALF_THRESHOLD: u64 = 6;

/// First `(n, M)` refuting `C = 2`.
const C2_WITNESS: (usize, u32) = (16, 14);

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Result<(), String>,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_one_third_is_sharp() -> Result<(), String> {
    let e = refined_lower(1, TOL).map_err(|e| e.to_string())?;
    ensure(e.contains(1.0 / 3.0) && e.width() <= TOL, || {
        format!("refined_lower(1) = [{}, {}]", e.lo(), e.hi())
    })?;
    let r = mobius_bohr_radius(1.0 - 1e-7).map_err(|e| e.to_string())?;
    ensure((r - 1.0 / 3.0).abs() <= 1e-6, || {
        format!("radius at a = 1-1e-7 is {r}")
    })
}

fn c2_lower_bound_strict() -> Result<(), String> {
    for n in 2..=500u64 {
        let e = refined_lower(n, TOL).map_err(|e| e.to_string())?;
        ensure(e.lo() > naive_lower(n), || {
            format!("n = {n}: lo = {} not above 1/(3 sqrt n)", e.lo())
        })?;
        ensure(e.hi() < 1.0 / 3.0, || {
            format!("n = {n}: hi = {} not below 1/3", e.hi())
        })?;
    }
    Ok(())
}

/// `F(r) = r + Σ_{k=2}^{200} r^k C(n+k−1,k)^{1/2} − 1/2` with log-binomials,
/// plus a geometric tail bound from the last term ratio.
fn root_function_oracle(n: u64, r: f64) -> (f64, f64) {
    let nf = n as f64;
    let mut ln_binom = 0.0f64;
    let mut sum = r;
    let mut last = r;
    for k in 1..=200u32 {
        let kf = f64::from(k);
        ln_binom += (nf + kf - 1.0).ln() - kf.ln();
        if k >= 2 {
            last = (kf * r.ln() + 0.5 * ln_binom).exp();
            sum += last;
        }
    }
    let ratio = r * ((nf + 200.0) / 201.0).sqrt();
    assert!(ratio < 1.0);
    (sum - 0.5, sum + last * ratio / (1.0 - ratio) - 0.5)
}

fn c3_scaled_constants() -> Result<(), String> {
    for n in 2..=500u64 {
        let e = refined_lower(n, TOL).map_err(|e| e.to_string())?;
        ensure(e.lo() * (n as f64).sqrt() > 0.4, || {
            format!("n = {n}: lo*sqrt n = {}", e.lo() * (n as f64).sqrt())
        })?;
    }
    let found = refined_lower_scaled_threshold(100_000, TOL).map_err(|e| e.to_string())?;
    ensure(found == Some(SCALED_HALF_THRESHOLD), || {
        format!("threshold {found:?}")
    })?;
    // independent check: F(1/(2√n)) changes sign between n*-1 and n*
    let below = SCALED_HALF_THRESHOLD - 1;
    let (lo_prev, _) = root_function_oracle(below, 0.5 / (below as f64).sqrt());
    let (_, hi_at) = root_function_oracle(
        SCALED_HALF_THRESHOLD,
        0.5 / (SCALED_HALF_THRESHOLD as f64).sqrt(),
    );
    ensure(lo_prev > 1e-9 && hi_at < -1e-9, || {
        format!("oracle signs: F_{below} >= {lo_prev}, F_n* <= {hi_at}")
    })
}

fn c4_estimate_maximum() -> Result<(), String> {
    let points = 10_000;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..points {
        let c = i as f64 / (points - 1) as f64;
        let v = est_bound(c, 1.0 / 9.0).map_err(|e| e.to_string())?;
        if v > best.0 {
            best = (v, c);
        }
    }
    ensure((best.0 - 1.0).abs() <= TOL && best.1 == 1.0, || {
        format!("max {} at c0 = {}", best.0, best.1)
    })
}

fn c5_wiener_suite() -> Result<(), String> {
    let cap = 6;
    for a in [0.3, 0.6, 0.9] {
        for b in [0.3, 0.6, 0.9] {
            let f = mobius_product(a, b, cap).map_err(|e| e.to_string())?;
            let c0 = f.constant_term().norm();
            // independent: coefficients of f_a(z1) f_b(z2) factor as products
            let fa = mobius_series(MobiusParams::new(a).unwrap(), cap).unwrap();
            let fb = mobius_series(MobiusParams::new(b).unwrap(), cap).unwrap();
            let ca = |k: u32| fa.coeff(&bohr::combinatorics::MultiIndex::new(vec![k]).unwrap());
            let cb = |k: u32| fb.coeff(&bohr::combinatorics::MultiIndex::new(vec![k]).unwrap());
            for k in 1..=cap {
                let l2 = f.homogeneous_l2(k).map_err(|e| e.to_string())?;
                let oracle = (0..=k)
                    .map(|j| (ca(j) * cb(k - j)).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                ensure((l2 - oracle).abs() <= 1e-12, || {
                    format!("a={a} b={b} k={k}: l2 {l2} vs product oracle {oracle}")
                })?;
                ensure(l2 <= 1.0 - c0 * c0 + 1e-9, || {
                    format!("a={a} b={b} k={k}: {l2} > {}", 1.0 - c0 * c0)
                })?;
            }
        }
    }
    for a in [0.1, 0.5, 0.9] {
        let f = mobius_series(MobiusParams::new(a).unwrap(), 4).unwrap();
        let c0 = f.constant_term().norm();
        let l2 = f.homogeneous_l2(1).unwrap();
        ensure((l2 - (1.0 - c0 * c0)).abs() <= 1e-9, || {
            format!("a={a}: k=1 equality off by {}", l2 - (1.0 - c0 * c0))
        })?;
    }
    Ok(())
}

fn c6_combinatorial_identities() -> Result<(), String> {
    for n in 1..=6usize {
        for m in 1..=10u32 {
            let power = pow(n as u64, m);
            let sum = sum_multinomials(n, m).map_err(|e| e.to_string())?;
            ensure(sum == power, || format!("n={n} M={m}: sum {sum} != n^M"))?;
            let squared = sum_multinomials_squared(n, m).map_err(|e| e.to_string())?;
            let enumerated: ExactInt = enumerate(n, m)
                .unwrap()
                .iter()
                .map(|a| {
                    let c = multinomial(a);
                    &c * &c
                })
                .sum();
            ensure(squared == enumerated, || {
                format!("n={n} M={m}: DP {squared} != {enumerated}")
            })?;
            let crude = factorial(u64::from(m)) * &power;
            ensure(squared <= crude, || {
                format!("n={n} M={m}: {squared} > M! n^M")
            })?;
        }
    }
    Ok(())
}

fn c7_explicit_upper() -> Result<(), String> {
    for n in [189u64, 1_000, 10_000, 1_000_000] {
        let b = theoretical_upper(n).map_err(|e| e.to_string())?;
        let nf = n as f64;
        let display = 2.0 * nf.ln().sqrt() / nf.sqrt();
        ensure(b.value <= display, || {
            format!("n = {n}: {} > {display}", b.value)
        })?;
        let m = f64::from(b.degree);
        ensure(b.degree >= 6 && b.guard_lhs < m * m, || {
            format!("n = {n}: guard {} vs M^2 = {}", b.guard_lhs, m * m)
        })?;
        let direct = 6f64.powf(1.0 / nf) * std::f64::consts::TAU;
        ensure((direct - b.guard_lhs).abs() <= 1e-12 * direct, || {
            "guard value".into()
        })?;
    }
    Ok(())
}

fn c8_validity_sandwich() -> Result<(), String> {
    let trials = 64u64;
    let seed = 0u64;
    for n in 2..=4usize {
        let lower = refined_lower(n as u64, TOL).map_err(|e| e.to_string())?;
        for m in [2u32, 3] {
            let points = default_points(m, DEFAULT_GRID_DIVISOR);
            let mut best = f64::INFINITY;
            for t in 0..trials {
                let p = random_signs(n, m, trial_seed(seed, t)).map_err(|e| e.to_string())?;
                let cert = sup_norm_certified(&p, points).map_err(|e| e.to_string())?;
                let e = cert.enclosure();
                ensure(
                    cert.certified() && e.lo() <= e.hi() && e.hi() <= 1.06 * e.lo(),
                    || format!("n={n} M={m} trial {t}: enclosure [{}, {}]", e.lo(), e.hi()),
                )?;
                let bound = kn_upper_from_poly(&p, &cert).map_err(|e| e.to_string())?;
                ensure(
                    bound >= lower.lo() && bound >= naive_lower(n as u64),
                    || {
                        format!(
                            "n={n} M={m} trial {t}: bound {bound} below lower {}",
                            lower.lo()
                        )
                    },
                )?;
                best = best.min(bound);
            }
            let out = search_upper(n, m, trials, seed, DEFAULT_GRID_DIVISOR)
                .map_err(|e| e.to_string())?;
            ensure(out.bound == best, || {
                format!("n={n} M={m}: search {} vs {best}", out.bound)
            })?;
        }
    }
    Ok(())
}

fn c9_no_uniform_constant() -> Result<(), String> {
    let w = refute_uniform_constant(2.0, 50, 50).map_err(|e| e.to_string())?;
    ensure(w == Some(C2_WITNESS), || format!("witness {w:?}"))?;
    let (n, m) = C2_WITNESS;
    let s = symmetric_form_floor(n, m).map_err(|e| e.to_string())?;
    // exact: l2² > 4^M n^{M+1}
    let rhs = pow(4, m) * pow(n as u64, m + 1);
    ensure(s.l2_squared > rhs, || {
        "witness fails exact comparison".into()
    })?;
    let ratios: Vec<f64> = (10..=20u32)
        .map(|m| {
            let s = symmetric_form_floor(3, m).unwrap();
            s.l2 * f64::from(m).powf(1.5) / 3f64.powi(m as i32)
        })
        .collect();
    ensure(ratios.windows(2).all(|w| w[1] > w[0]), || {
        format!("{ratios:?}")
    })
}

fn random_series(rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let n = rng.random_range(1..=3usize);
    let cap = rng.random_range(0..=5u32);
    let mut f = TruncatedSeries::zero(n, cap).unwrap();
    for k in 0..=cap {
        for alpha in enumerate(n, k).unwrap() {
            if rng.random::<f64>() < 0.7 {
                let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                f.insert(alpha, c).unwrap();
            }
        }
    }
    f
}

fn c10_rescaling_identity() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let f = random_series(&mut rng);
        let n = f.dim();
        let r: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..2.0)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        let scaled = f.rescale(&PolyRadius::new(r.clone()).unwrap()).unwrap();
        let lhs = scaled.majorant(&w).unwrap();
        let rw: Vec<f64> = r.iter().zip(&w).map(|(a, b)| a * b).collect();
        let rhs = f.majorant(&rw).unwrap();
        ensure((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), || {
            format!("case {case}: {lhs} vs {rhs}")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "radius 1/3 is sharp in one variable",
            budget: Duration::from_secs(1),
            run: c1_one_third_is_sharp,
        },
        Criterion {
            id: 2,
            title: "refined lower bound strictly inside (1/(3 sqrt n), 1/3), 2<=n<=500",
            budget: Duration::from_secs(30),
            run: c2_lower_bound_strict,
        },
        Criterion {
            id: 3,
            title: "lo*sqrt n > 2/5 and threshold for 1/2 is n* = 6",
            budget: Duration::from_secs(300),
            run: c3_scaled_constants,
        },
        Criterion {
            id: 4,
            title: "majorant estimate at s = 1/9 peaks at 1 for |c0| = 1",
            budget: Duration::from_secs(60),
            run: c4_estimate_maximum,
        },
        Criterion {
            id: 5,
            title: "Wiener coefficient bound for Mobius products",
            budget: Duration::from_secs(60),
            run: c5_wiener_suite,
        },
        Criterion {
            id: 6,
            title: "exact multinomial identities, n<=6, M<=10",
            budget: Duration::from_secs(10),
            run: c6_combinatorial_identities,
        },
        Criterion {
            id: 7,
            title: "explicit upper bound below 2 sqrt(log n)/sqrt n",
            budget: Duration::from_secs(60),
            run: c7_explicit_upper,
        },
        Criterion {
            id: 8,
            title: "search bounds sandwich the lower bound, n in 2..4, M in 2..3",
            budget: Duration::from_secs(120),
            run: c8_validity_sandwich,
        },
        Criterion {
            id: 9,
            title: "no bound of the form C^M n^((M+1)/2) for C = 2",
            budget: Duration::from_secs(60),
            run: c9_no_uniform_constant,
        },
        Criterion {
            id: 10,
            title: "rescaling identity for the majorant",
            budget: Duration::from_secs(60),
            run: c10_rescaling_identity,
        },
    ];

    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = match panic::catch_unwind(AssertUnwindSafe(c.run)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("took {elapsed:.2?}, budget {:?}", c.budget)
            })
        });
        match &result {
            Ok(()) => println!("criterion {:>2}: PASS  {}  ({elapsed:.2?})", c.id, c.title),
            Err(msg) => {
                failures += 1;
                println!(
                    "criterion {:>2}: FAIL  {}  ({elapsed:.2?}): {msg}",
                    c.id, c.title
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
