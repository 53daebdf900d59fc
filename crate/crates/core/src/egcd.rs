//! Extended Euclidean algorithm with an invocation counter.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CrrError, Result};

/// `u * a + v * b = gcd`, with `gcd > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bezout {
    pub gcd: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

/// Iterative extended Euclid on signed integers.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> Result<Bezout> {
    if a.is_zero() && b.is_zero() {
        return Err(CrrError::BothZero);
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_negative() {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    Ok(Bezout {
        gcd: r0,
        u: s0,
        v: t0,
    })
}

/// Counts extended-gcd invocations made on behalf of one computation.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EgcdCounter {
    calls: u64,
}

impl EgcdCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn extended_gcd(&mut self, a: &BigInt, b: &BigInt) -> Result<Bezout> {
        self.calls += 1;
        extended_gcd(a, b)
    }

    /// `a^{-1} mod m` in `[0, m)`, or `None` when `gcd(a, m) != 1`. One call.
    pub fn mod_inverse(&mut self, a: u64, m: u64) -> Option<u64> {
        let m_big = BigInt::from(m);
        let b = self.extended_gcd(&BigInt::from(a % m), &m_big).ok()?;
        b.gcd
            .is_one()
            .then(|| b.u.mod_floor(&m_big).to_u64().expect("below modulus"))
    }

    /// Inverse of a big value modulo a word modulus.
    pub fn mod_inverse_big(&mut self, a: &BigUint, m: u64) -> Option<u64> {
        let reduced = (a % m).to_u64().expect("below modulus");
        self.mod_inverse(reduced, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: i64, b: i64) -> Bezout {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let r = extended_gcd(&a, &b).unwrap();
        assert_eq!(&r.u * &a + &r.v * &b, r.gcd);
        r
    }

    #[test]
    fn examples() {
        let r = check(5, 3);
        assert!(r.gcd.is_one());
        assert_eq!((r.u, r.v), (BigInt::from(-1), BigInt::from(2)));
        let r = check(7, 0);
        assert_eq!((r.gcd, r.u, r.v), (7.into(), 1.into(), 0.into()));
        assert_eq!(check(12, 18).gcd, BigInt::from(6));
        assert_eq!(check(-12, 18).gcd, BigInt::from(6));
        assert_eq!(check(0, -9).gcd, BigInt::from(9));
    }

    #[test]
    fn both_zero_is_an_error() {
        assert_eq!(
            extended_gcd(&BigInt::zero(), &BigInt::zero()),
            Err(CrrError::BothZero)
        );
    }

    #[test]
    fn counter_counts_every_call() {
        let mut c = EgcdCounter::new();
        assert_eq!(c.mod_inverse(35, 3), Some(2));
        assert_eq!(c.mod_inverse(6, 9), None);
        c.extended_gcd(&BigInt::zero(), &BigInt::zero())
            .unwrap_err();
        assert_eq!(c.calls(), 3);
    }

    proptest! {
        #[test]
        fn bezout_identity_holds(a in any::<i64>(), b in any::<i64>()) {
            prop_assume!(a != 0 || b != 0);
            let r = check(a, b);
            prop_assert!(r.gcd > BigInt::zero());
            prop_assert_eq!(r.gcd, BigInt::from(a).gcd(&BigInt::from(b)));
        }
    }
}
