#![allow(dead_code)]

use std::sync::Arc;

use crr::ModuliBase;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Greedy random pairwise-coprime base of length `r` (composites allowed).
pub fn random_coprime_base<R: Rng>(rng: &mut R, r: usize, max_modulus: u64) -> Arc<ModuliBase> {
    let mut moduli: Vec<u64> = Vec::with_capacity(r);
    while moduli.len() < r {
        let m = rng.gen_range(2..=max_modulus);
        if moduli.iter().all(|&x| x.gcd(&m) == 1) {
            moduli.push(m);
        }
    }
    Arc::new(ModuliBase::new(moduli).unwrap())
}

/// The telescoping sum built directly from the chain definition: the i-th
/// term multiplies `beta_i` (or 1 for i = 1) by every later `alpha` and by
/// the product of all moduli other than `m_i`.
pub fn telescoping_oracle(moduli: &[u64], pairs: &[(BigInt, BigInt)]) -> BigInt {
    let r = moduli.len();
    let mut total = BigInt::zero();
    for i in 0..r {
        let mut term = if i == 0 {
            BigInt::one()
        } else {
            pairs[i - 1].1.clone()
        };
        for (alpha, _) in &pairs[i..] {
            term *= alpha;
        }
        for (l, &m) in moduli.iter().enumerate() {
            if l != i {
                term *= m;
            }
        }
        total += term;
    }
    total
}

/// `1 + sum_i prod_{l <= i} t_l / A_l` summed term by term in reduced rationals.
pub fn gamma_oracle(t: &[BigUint], a: &[BigUint]) -> BigRational {
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    for (ti, ai) in t.iter().zip(a) {
        term *= BigRational::new(ti.clone().into(), ai.clone().into());
        sum += &term;
    }
    sum
}

pub fn two_pow_neg(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}
