//! Deterministic prime enumeration.
//!
//! Primes are produced by an odd-only sieve of Eratosthenes sized from the
//! Rosser bound `p_n < n (ln n + ln ln n)` (valid for `n >= 6`).

use crate::error::{CrrError, Result};

/// Largest supported 1-based prime index.
pub const PRIME_INDEX_CEILING: usize = 10_000_000;

/// Returns the `index`-th prime, 1-indexed (`1 -> 2`, `2 -> 3`, `3 -> 5`).
pub fn nth_prime(index: usize) -> Result<u64> {
    if index == 0 {
        // There is no zeroth prime; treat as out of range like the ceiling case.
        return Err(CrrError::PrimeCeiling {
            index,
            ceiling: PRIME_INDEX_CEILING,
        });
    }
    Ok(*first_primes(index)?.last().expect("index >= 1"))
}

/// The first `count` primes in increasing order.
pub fn first_primes(count: usize) -> Result<Vec<u64>> {
    if count > PRIME_INDEX_CEILING {
        return Err(CrrError::PrimeCeiling {
            index: count,
            ceiling: PRIME_INDEX_CEILING,
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut primes = sieve(upper_bound(count));
    debug_assert!(primes.len() >= count);
    primes.truncate(count);
    Ok(primes)
}

/// An upper bound on the `count`-th prime.
fn upper_bound(count: usize) -> u64 {
    if count < 6 {
        return 13;
    }
    let n = count as f64;
    // +3 absorbs floating point rounding in the logarithms.
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 3
}

/// All primes `<= limit`.
fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // Bit i stands for the odd number 2i + 3.
    let slots = ((limit - 1) / 2) as usize;
    let mut composite = vec![0u64; slots / 64 + 1];
    let mut i = 0usize;
    loop {
        let p = 2 * i as u64 + 3;
        if p * p > limit {
            break;
        }
        if composite[i / 64] >> (i % 64) & 1 == 0 {
            let mut j = ((p * p - 3) / 2) as usize;
            while j < slots {
                composite[j / 64] |= 1 << (j % 64);
                j += p as usize;
            }
        }
        i += 1;
    }
    let mut primes = vec![2];
    primes.extend(
        (0..slots)
            .filter(|&i| composite[i / 64] >> (i % 64) & 1 == 0)
            .map(|i| 2 * i as u64 + 3),
    );
    primes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        n >= 2
            && (2..)
                .take_while(|d| d * d <= n)
                .all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn small_indices() {
        assert_eq!(nth_prime(1).unwrap(), 2);
        assert_eq!(nth_prime(2).unwrap(), 3);
        assert_eq!(nth_prime(3).unwrap(), 5);
        assert_eq!(nth_prime(67).unwrap(), 331);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let expected: Vec<u64> = (0..20_000).filter(|&n| is_prime_trial(n)).collect();
        let got = first_primes(expected.len()).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn bound_covers_every_count_up_to_5000() {
        for count in 1..5000 {
            assert!(sieve(upper_bound(count)).len() >= count, "count {count}");
        }
    }

    #[test]
    fn ceiling_and_zero_rejected() {
        assert!(matches!(
            nth_prime(PRIME_INDEX_CEILING + 1),
            Err(CrrError::PrimeCeiling { .. })
        ));
        assert!(nth_prime(0).is_err());
    }
}
