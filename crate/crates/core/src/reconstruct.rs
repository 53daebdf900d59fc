//! Conversion from residues back to integers.
//!
//! Every path computes weights `w_i` with `sum_i w_i * (M / m_i) = 1 (mod M)`
//! and returns `sum_i x_i * w_i * (M / m_i) mod M`. They differ in how the
//! weights are found and in how many extended-gcd calls that costs:
//!
//! * [`classical_coefficients`]: `w_i = (M / m_i)^{-1} mod m_i`, `r` calls.
//! * [`sequential_coefficients`]: a Bezout chain `alpha_j m_j + beta_j (m_1 ... m_{j-1}) = 1`
//!   for `j = 2..r`, `r - 1` calls.
//! * [`probabilistic_reconstruct`]: random linear forms `S`, `T` over the
//!   cofactors until `gcd(S, T) = 1`; one call per attempt.
//! * [`GarnerConverter`]: mixed-radix baseline, `r (r - 1) / 2` calls.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::base::ModuliBase;
use crate::egcd::EgcdCounter;
use crate::error::{CrrError, Result};
use crate::vector::CrrVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientMethod {
    Classical,
    Sequential,
}

impl fmt::Display for CoefficientMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Classical => "classical",
            Self::Sequential => "sequential",
        })
    }
}

/// Reconstruction weights `u_i`, reduced into `[0, m_i)`.
#[derive(Debug, Clone)]
pub struct CrtCoefficients {
    base: Arc<ModuliBase>,
    u: Vec<u64>,
    method: CoefficientMethod,
    egcd_calls: u64,
}

impl CrtCoefficients {
    pub fn base(&self) -> &Arc<ModuliBase> {
        &self.base
    }

    pub fn u(&self) -> &[u64] {
        &self.u
    }

    pub fn method(&self) -> CoefficientMethod {
        self.method
    }

    pub fn egcd_calls(&self) -> u64 {
        self.egcd_calls
    }

    pub fn reconstruct(&self, v: &CrrVector) -> Result<BigUint> {
        reconstruct(v, self)
    }
}

/// The pairs `(alpha_j, beta_j)` for `j = 2..r`, kept exact and signed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BezoutChain {
    pub pairs: Vec<(BigInt, BigInt)>,
}

impl BezoutChain {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(alpha_2 ... alpha_r) M/m_1 + sum_{i>=2} (beta_i alpha_{i+1} ... alpha_r) M/m_i`
    /// with no modular reduction. Equals 1 for a chain built over `base`.
    pub fn telescoping_sum(&self, base: &ModuliBase) -> BigInt {
        let r = base.len();
        assert_eq!(self.pairs.len() + 1, r, "chain does not match base");
        // tail[i] = alpha_{i+1} ... alpha_r in 1-based terms.
        let mut tail = vec![BigInt::one(); r];
        for i in (0..r - 1).rev() {
            tail[i] = &tail[i + 1] * &self.pairs[i].0;
        }
        base.cofactors()
            .iter()
            .enumerate()
            .map(|(i, cofactor)| {
                let lead = if i == 0 {
                    tail[0].clone()
                } else {
                    &self.pairs[i - 1].1 * &tail[i]
                };
                lead * BigInt::from(cofactor.clone())
            })
            .sum()
    }
}

pub fn classical_coefficients(base: &Arc<ModuliBase>) -> CrtCoefficients {
    let mut counter = EgcdCounter::new();
    let u = base
        .cofactors()
        .iter()
        .zip(base.moduli())
        .map(|(c, &m)| {
            counter
                .mod_inverse_big(c, m)
                .expect("cofactor is invertible for a pairwise coprime base")
        })
        .collect();
    assert_eq!(counter.calls(), base.len() as u64);
    CrtCoefficients {
        base: Arc::clone(base),
        u,
        method: CoefficientMethod::Classical,
        egcd_calls: counter.calls(),
    }
}

pub fn sequential_coefficients(base: &Arc<ModuliBase>) -> (CrtCoefficients, BezoutChain) {
    let r = base.len();
    let mut counter = EgcdCounter::new();
    let prefix = base.prefix_products();

    // pairs[j - 2] solves alpha_j m_j + beta_j (m_1 ... m_{j-1}) = 1.
    let pairs: Vec<(BigInt, BigInt)> = (1..r)
        .map(|idx| {
            let m_j = BigInt::from(base.modulus(idx));
            let head = BigInt::from(prefix[idx].clone());
            let b = counter
                .extended_gcd(&m_j, &head)
                .expect("moduli are nonzero");
            assert!(b.gcd.is_one(), "m_{} is not coprime to its prefix", idx + 1);
            (b.u, b.v)
        })
        .collect();
    assert_eq!(counter.calls(), r as u64 - 1);

    // u_1 = alpha_2 ... alpha_r; u_i = beta_i alpha_{i+1} ... alpha_r (mod m_i).
    let u = (0..r)
        .map(|idx| {
            let m = base.modulus(idx);
            let m_big = BigInt::from(m);
            let lead = if idx == 0 {
                BigInt::one()
            } else {
                pairs[idx - 1].1.mod_floor(&m_big)
            };
            pairs[idx..]
                .iter()
                .fold(lead, |acc, (alpha, _)| {
                    (acc * alpha.mod_floor(&m_big)) % &m_big
                })
                .to_u64()
                .expect("below modulus")
        })
        .collect();

    let coeffs = CrtCoefficients {
        base: Arc::clone(base),
        u,
        method: CoefficientMethod::Sequential,
        egcd_calls: counter.calls(),
    };
    (coeffs, BezoutChain { pairs })
}

/// `sum_i x_i u_i (M / m_i) mod M`.
pub fn reconstruct(v: &CrrVector, coeffs: &CrtCoefficients) -> Result<BigUint> {
    let base = v.base();
    if !Arc::ptr_eq(base, &coeffs.base) && **base != *coeffs.base {
        return Err(CrrError::BaseMismatch);
    }
    Ok(weighted_sum(base, v.residues(), &coeffs.u))
}

fn weighted_sum(base: &ModuliBase, residues: &[u64], weights: &[u64]) -> BigUint {
    let sum = residues
        .iter()
        .zip(weights)
        .zip(base.moduli())
        .zip(base.cofactors())
        .filter(|(((&x, _), _), _)| x != 0)
        .fold(BigUint::zero(), |acc, (((&x, &w), &m), cofactor)| {
            let digit = (x as u128 * w as u128 % m as u128) as u64;
            acc + cofactor * digit
        });
    sum % base.product()
}

/// Mixed-radix conversion using all pairwise inverses `m_i^{-1} mod m_j`, `i < j`.
#[derive(Debug, Clone)]
pub struct GarnerConverter {
    base: Arc<ModuliBase>,
    // inverses[j][i] = m_i^{-1} mod m_j for i < j.
    inverses: Vec<Vec<u64>>,
    egcd_calls: u64,
}

impl GarnerConverter {
    pub fn new(base: &Arc<ModuliBase>) -> Self {
        let r = base.len();
        let mut counter = EgcdCounter::new();
        let inverses = (0..r)
            .map(|j| {
                let m_j = base.modulus(j);
                (0..j)
                    .map(|i| {
                        counter
                            .mod_inverse(base.modulus(i), m_j)
                            .expect("pairwise coprime moduli")
                    })
                    .collect()
            })
            .collect();
        let expected = (r * r.saturating_sub(1) / 2) as u64;
        assert_eq!(counter.calls(), expected);
        Self {
            base: Arc::clone(base),
            inverses,
            egcd_calls: counter.calls(),
        }
    }

    pub fn egcd_calls(&self) -> u64 {
        self.egcd_calls
    }

    /// Mixed-radix digits `d_j` with `x = d_1 + d_2 m_1 + d_3 m_1 m_2 + ...`.
    pub fn digits(&self, v: &CrrVector) -> Result<Vec<u64>> {
        if !Arc::ptr_eq(v.base(), &self.base) && **v.base() != *self.base {
            return Err(CrrError::BaseMismatch);
        }
        let x = v.residues();
        let mut digits: Vec<u64> = Vec::with_capacity(x.len());
        for (j, inv_row) in self.inverses.iter().enumerate() {
            let m = self.base.modulus(j) as u128;
            let mut acc = x[j] as u128;
            for (&d, &inv) in digits.iter().zip(inv_row) {
                acc = (acc + m - d as u128 % m) % m * inv as u128 % m;
            }
            digits.push(acc as u64);
        }
        Ok(digits)
    }

    pub fn decode(&self, v: &CrrVector) -> Result<BigUint> {
        let digits = self.digits(v)?;
        let moduli = self.base.moduli();
        let mut x = BigUint::zero();
        for j in (0..digits.len()).rev() {
            x = x * moduli[j] + digits[j];
        }
        Ok(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbConfig {
    /// Upper end of the range `{1..n2_bound}` that `s_i`, `t_i` are drawn from.
    pub n2_bound: u64,
    pub max_attempts: u32,
}

impl ProbConfig {
    pub const DEFAULT_MAX_ATTEMPTS: u32 = 64;

    /// `n2_bound = max(2^16, 64 (r + ceil(ln M)))`.
    pub fn default_n2_bound(base: &ModuliBase) -> u64 {
        let ln_m: f64 = base.moduli().iter().map(|&m| (m as f64).ln()).sum();
        let scaled = 64 * (base.len() as u64 + ln_m.ceil() as u64);
        scaled.max(1 << 16)
    }

    pub fn for_base(base: &ModuliBase) -> Self {
        Self {
            n2_bound: Self::default_n2_bound(base),
            max_attempts: Self::DEFAULT_MAX_ATTEMPTS,
        }
    }
}

/// The successful draw of a probabilistic reconstruction.
#[derive(Debug, Clone)]
pub struct LinearFormSample {
    base: Arc<ModuliBase>,
    pub s: Vec<u64>,
    pub t: Vec<u64>,
    /// `S = sum a_i s_i`.
    pub big_s: BigUint,
    /// `T = sum a_i t_i`.
    pub big_t: BigUint,
    pub bezout_u: BigInt,
    pub bezout_v: BigInt,
    pub attempts: u32,
    pub n2_bound: u64,
}

impl LinearFormSample {
    /// The form coefficients `a_i = M / m_i`.
    pub fn a(&self) -> &[BigUint] {
        self.base.cofactors()
    }

    /// `N_1`: every `a_i` lies in `{1..N_1}`.
    pub fn n1_bound(&self) -> &BigUint {
        self.base.product()
    }

    /// `(u s_i + v t_i) mod m_i`, a valid set of reconstruction weights.
    pub fn weights(&self) -> Vec<u64> {
        self.s
            .iter()
            .zip(&self.t)
            .zip(self.base.moduli())
            .map(|((&s, &t), &m)| {
                let w = &self.bezout_u * s + &self.bezout_v * t;
                w.mod_floor(&BigInt::from(m))
                    .to_u64()
                    .expect("below modulus")
            })
            .collect()
    }
}

/// One random draw of `(s, t)` with the resulting forms `S`, `T`.
pub fn draw_linear_forms<R: Rng + ?Sized>(
    base: &ModuliBase,
    n2_bound: u64,
    rng: &mut R,
) -> (Vec<u64>, Vec<u64>, BigUint, BigUint) {
    let r = base.len();
    let s: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=n2_bound)).collect();
    let t: Vec<u64> = (0..r).map(|_| rng.gen_range(1..=n2_bound)).collect();
    let form = |coeffs: &[u64]| -> BigUint {
        base.cofactors()
            .iter()
            .zip(coeffs)
            .fold(BigUint::zero(), |acc, (a, &c)| acc + a * c)
    };
    let (big_s, big_t) = (form(&s), form(&t));
    (s, t, big_s, big_t)
}

/// Draws fresh `s`, `t` until `gcd(S, T) = 1`, then reconstructs with the
/// weights `(u s_i + v t_i) mod m_i`.
pub fn probabilistic_reconstruct<R: Rng + ?Sized>(
    v: &CrrVector,
    rng: &mut R,
    config: &ProbConfig,
) -> Result<(BigUint, LinearFormSample)> {
    let sample = find_coprime_forms(v.base(), rng, config)?;
    let x = weighted_sum(v.base(), v.residues(), &sample.weights());
    Ok((x, sample))
}

/// The sampling loop of [`probabilistic_reconstruct`], without the final sum.
pub fn find_coprime_forms<R: Rng + ?Sized>(
    base: &Arc<ModuliBase>,
    rng: &mut R,
    config: &ProbConfig,
) -> Result<LinearFormSample> {
    if config.n2_bound < 2 {
        return Err(CrrError::BoundTooSmall(config.n2_bound));
    }
    let mut counter = EgcdCounter::new();
    for attempt in 1..=config.max_attempts {
        let (s, t, big_s, big_t) = draw_linear_forms(base, config.n2_bound, rng);
        let b = counter.extended_gcd(&BigInt::from(big_s.clone()), &BigInt::from(big_t.clone()))?;
        if b.gcd.is_one() {
            return Ok(LinearFormSample {
                base: Arc::clone(base),
                s,
                t,
                big_s,
                big_t,
                bezout_u: b.u,
                bezout_v: b.v,
                attempts: attempt,
                n2_bound: config.n2_bound,
            });
        }
    }
    Err(CrrError::AttemptsExhausted {
        attempts: config.max_attempts,
    })
}

/// Aggregate behaviour of the random linear forms over many independent trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFormStats {
    pub trials: u64,
    /// Single draws with `gcd(S, T) = 1`.
    pub coprime_draws: u64,
    /// Mean attempts until success over the sampling loops that succeeded.
    pub mean_attempts: f64,
    /// Sampling loops that hit `max_attempts`.
    pub exhausted: u64,
}

impl LinearFormStats {
    pub fn coprime_fraction(&self) -> f64 {
        self.coprime_draws as f64 / self.trials as f64
    }
}

/// Every trial `i` uses its own ChaCha stream derived from `(seed, i)`, so the
/// result does not depend on how trials are scheduled across threads.
pub fn linear_form_statistics(
    base: &Arc<ModuliBase>,
    config: &ProbConfig,
    seed: u64,
    trials: u64,
) -> LinearFormStats {
    let (coprime_draws, attempts, exhausted) = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let (_, _, s, t) = draw_linear_forms(base, config.n2_bound, &mut rng);
            let single = u64::from(s.gcd(&t).is_one());
            match find_coprime_forms(base, &mut rng, config) {
                Ok(sample) => (single, u64::from(sample.attempts), 0u64),
                Err(_) => (single, 0, 1),
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let completed = trials - exhausted;
    LinearFormStats {
        trials,
        coprime_draws,
        mean_attempts: if completed == 0 {
            f64::INFINITY
        } else {
            attempts as f64 / completed as f64
        },
        exhausted,
    }
}
