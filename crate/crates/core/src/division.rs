//! Integer division through a reciprocal underapproximation.
//!
//! For `x, y < 2^n` the quotient `floor(x / y)` is obtained as follows:
//!
//! 1. Scale: `D = 2^k m_1 ... m_j` with `1/2 <= y / D < 1` (or `D = 2` for `y = 2`).
//! 2. Group the extension moduli `m_{n+1}, m_{n+2}, ...` into `n + 1` disjoint
//!    products `A_i` of `r` consecutive moduli, each exceeding `2^{n+3}`.
//! 3. `t_i = floor((D - y) A_i / D)`, so `t_i / A_i` underapproximates
//!    `beta = 1 - y / D` to `n + 3` bits.
//! 4. `gamma = 1 + t_1/A_1 + t_1 t_2/(A_1 A_2) + ... + prod t_i/A_i`
//!    underapproximates `D / y` to `n` bits.
//! 5. `floor(x gamma / D)` is `q` or `q - 1`; one exact comparison picks `q`.
//!
//! The total moduli count in strict mode is `floor(n^2 / log2 n) + 3n`, with
//! `r = floor(n / log2 n)`. Both floors use the real logarithm and are evaluated
//! exactly: `floor(a / log2 n)` is the largest `q` with `n^q <= 2^a`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::base::ModuliBase;
use crate::error::{CrrError, Result};
use crate::vector::CrrVector;

/// Smallest supported bit size.
pub const MIN_BITS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupMode {
    /// `r = floor(n / log2 n)`; a group not exceeding `2^{n+3}` is an error.
    Strict,
    /// Smallest `r` for which every group exceeds `2^{n+3}`.
    Adaptive,
}

impl fmt::Display for GroupMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Strict => "strict",
            Self::Adaptive => "adaptive",
        })
    }
}

/// `floor(numer / log2 n)` for `n >= 2`: the largest `q` with `n^q <= 2^numer`.
pub fn floor_div_log2(numer: u64, n: u64) -> u64 {
    assert!(n >= 2, "log2 n must be positive");
    let fits = |q: u64| -> bool {
        // n^q <= 2^numer  <=>  bits(n^q) <= numer, or n^q is exactly 2^numer.
        let p = BigUint::from(n).pow(q as u32);
        let bits = p.bits();
        bits <= numer || (bits == numer + 1 && p.count_ones() == 1)
    };
    let mut q = (numer as f64 / (n as f64).log2()).floor() as u64;
    while q > 0 && !fits(q) {
        q -= 1;
    }
    while fits(q + 1) {
        q += 1;
    }
    q
}

/// `floor(log2 n)`.
pub fn ilog2(n: u64) -> u64 {
    u64::from(n.ilog2())
}

/// `floor(n^2 / log2 n) + 3n`.
pub fn strict_moduli_count(n: u32) -> usize {
    let n = u64::from(n);
    (floor_div_log2(n * n, n) + 3 * n) as usize
}

/// The same count with `log2 n` replaced by `floor(log2 n)`.
pub fn integer_log_moduli_count(n: u32) -> usize {
    let n = u64::from(n);
    (n * n / ilog2(n) + 3 * n) as usize
}

/// `r = floor(n / log2 n)`.
pub fn strict_group_size(n: u32) -> usize {
    floor_div_log2(u64::from(n), u64::from(n)) as usize
}

/// The pre-refinement moduli count `2n^2 + 5n`.
pub fn baseline_moduli_count(n: u32) -> usize {
    let n = n as usize;
    2 * n * n + 5 * n
}

fn check_bits(n: u32) -> Result<()> {
    if n < MIN_BITS {
        Err(CrrError::BitSizeTooSmall(n))
    } else {
        Ok(())
    }
}

fn pow2(bits: u32) -> BigUint {
    BigUint::one() << bits
}

/// Whether `m_{n+1}^r > 2^{n+3}` for the strict group size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInequality {
    pub n: u32,
    pub r: usize,
    /// `m_{n+1}`, the first extension modulus.
    pub first_extension: u64,
    pub holds: bool,
}

pub fn check_group_inequality(n: u32) -> Result<GroupInequality> {
    check_bits(n)?;
    let r = strict_group_size(n);
    let first_extension = crate::primes::nth_prime(n as usize + 3)?;
    let holds = BigUint::from(first_extension).pow(r as u32) > pow2(n + 3);
    Ok(GroupInequality {
        n,
        r,
        first_extension,
        holds,
    })
}

/// `D = 2^k m_1 ... m_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaler {
    pub j: usize,
    pub k: u32,
    pub d: BigUint,
}

pub fn build_scaler(y: &BigUint, base: &ModuliBase) -> Result<Scaler> {
    if *y < BigUint::from(2u32) {
        return Err(CrrError::ScalerDivisor(y.clone()));
    }
    if *y == BigUint::from(2u32) {
        return Ok(Scaler {
            j: 0,
            k: 1,
            d: BigUint::from(2u32),
        });
    }
    let prefix = base.prefix_products();
    // Largest j with m_1 ... m_j <= y; the prefix must still exceed y afterwards.
    let j = prefix.partition_point(|p| p <= y) - 1;
    if j + 1 >= prefix.len() {
        return Err(CrrError::InsufficientBase {
            needed: j + 1,
            have: base.len(),
        });
    }
    let head = &prefix[j];
    // Smallest k >= 1 with y < 2^k head.
    let mut k = (y.bits() - head.bits()).max(1) as u32;
    while (head << k) <= *y {
        k += 1;
    }
    while k > 1 && (head << (k - 1)) > *y {
        k -= 1;
    }
    Ok(Scaler { j, k, d: head << k })
}

/// Disjoint products of `r_used` consecutive extension moduli.
#[derive(Debug, Clone)]
pub struct GroupLayout {
    pub r_used: usize,
    pub groups: Vec<BigUint>,
    /// The base the groups were drawn from, extended if adaptive mode needed it.
    pub base: Arc<ModuliBase>,
}

impl GroupLayout {
    /// `n + (n + 1) r_used`.
    pub fn moduli_used(&self) -> usize {
        let n = self.groups.len() - 1;
        n + self.groups.len() * self.r_used
    }

    pub fn min_group_bits(&self) -> u64 {
        self.groups.iter().map(BigUint::bits).min().unwrap_or(0)
    }
}

fn form_groups(n: u32, base: &ModuliBase, r: usize) -> Vec<BigUint> {
    let n = n as usize;
    let moduli = base.moduli();
    (0..=n)
        .map(|i| {
            let start = n + i * r;
            moduli[start..start + r]
                .iter()
                .fold(BigUint::one(), |acc, &m| acc * m)
        })
        .collect()
}

/// Groups `A_1..A_{n+1}` over `base`, which must be a paper base when adaptive
/// mode has to extend it.
pub fn build_groups(n: u32, base: &Arc<ModuliBase>, mode: GroupMode) -> Result<GroupLayout> {
    check_bits(n)?;
    let bound = pow2(n + 3);
    let needed = |r: usize| n as usize + (n as usize + 1) * r;
    match mode {
        GroupMode::Strict => {
            let r = strict_group_size(n);
            if base.len() < needed(r) {
                return Err(CrrError::InsufficientBase {
                    needed: needed(r),
                    have: base.len(),
                });
            }
            let groups = form_groups(n, base, r);
            if let Some((i, g)) = groups.iter().enumerate().find(|(_, g)| **g <= bound) {
                return Err(CrrError::GroupBound {
                    index: i + 1,
                    group: g.clone(),
                    bits: n + 3,
                });
            }
            Ok(GroupLayout {
                r_used: r,
                groups,
                base: Arc::clone(base),
            })
        }
        GroupMode::Adaptive => {
            let mut base = Arc::clone(base);
            for r in 1.. {
                if base.len() < needed(r) {
                    let extended = ModuliBase::paper_base(needed(r))?;
                    if extended.moduli()[..base.len()] != *base.moduli() {
                        return Err(CrrError::InsufficientBase {
                            needed: needed(r),
                            have: base.len(),
                        });
                    }
                    base = Arc::new(extended);
                }
                let groups = form_groups(n, &base, r);
                if groups.iter().all(|g| *g > bound) {
                    return Ok(GroupLayout {
                        r_used: r,
                        groups,
                        base,
                    });
                }
            }
            unreachable!("group size grows without bound")
        }
    }
}

/// A rational `value` claimed to satisfy `0 <= target - value <= 2^{-bits}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderApprox {
    pub value: BigRational,
    pub target: BigRational,
    pub bits: u32,
}

impl UnderApprox {
    pub fn holds(&self) -> bool {
        let gap = &self.target - &self.value;
        let limit = BigRational::new(One::one(), pow2(self.bits).into());
        gap >= BigRational::zero() && gap <= limit
    }
}

/// `t_i = floor((D - y) A_i / D)`. Each `t_i / A_i` is checked to be an
/// `(n + 3)`-bit underapproximation of `(D - y) / D`.
pub fn numerators(y: &BigUint, d: &BigUint, groups: &[BigUint], n: u32) -> Vec<BigUint> {
    assert!(y <= d, "scaler must not be below y");
    let gap = d - y;
    groups
        .iter()
        .map(|a| {
            let (t, rem) = (&gap * a).div_rem(d);
            // beta - t/A = rem / (D A) <= 2^{-(n+3)}
            assert!(
                (rem << (n + 3)) <= d * a,
                "t/A is not an (n+3)-bit underapproximation"
            );
            t
        })
        .collect()
}

/// `gamma = numer / denom` with `denom = A_1 ... A_{n+1}` left unreduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma {
    pub numer: BigUint,
    pub denom: BigUint,
}

impl Gamma {
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numer.clone().into(), self.denom.clone().into())
    }
}

/// `1 + sum_{i=1}^{len} prod_{l<=i} t_l / A_l`, evaluated innermost first as
/// `gamma_i = 1 + (t_i / A_i) gamma_{i+1}`.
pub fn gamma_series(t: &[BigUint], a: &[BigUint]) -> Result<Gamma> {
    if t.len() != a.len() {
        return Err(CrrError::LengthMismatch {
            expected: a.len(),
            got: t.len(),
        });
    }
    let (mut numer, mut denom) = (BigUint::one(), BigUint::one());
    for (ti, ai) in t.iter().zip(a).rev() {
        denom *= ai;
        numer = &denom + ti * numer;
    }
    Ok(Gamma { numer, denom })
}

/// Everything computed for one divisor.
#[derive(Debug, Clone)]
pub struct DivisionPlan {
    pub n: u32,
    pub mode: GroupMode,
    /// Length of `base`: the strict count, or more when adaptive groups need it.
    pub total_moduli: usize,
    pub base: Arc<ModuliBase>,
    pub r_used: usize,
    pub moduli_used: usize,
    pub scaler: Scaler,
    pub groups: Arc<[BigUint]>,
    pub numerators: Vec<BigUint>,
    pub gamma: Gamma,
}

impl DivisionPlan {
    /// `y / D`.
    pub fn alpha(&self, y: &BigUint) -> BigRational {
        BigRational::new(y.clone().into(), self.scaler.d.clone().into())
    }

    pub fn min_group_bits(&self) -> u64 {
        self.groups.iter().map(BigUint::bits).min().unwrap_or(0)
    }
}

#[derive(Debug, Clone)]
pub struct DivisionOutcome {
    pub q: BigUint,
    /// `floor(x gamma / D)` was one short of `q`.
    pub correction_applied: bool,
    /// `None` on the `x = 0` and `y = 1` fast paths.
    pub plan: Option<DivisionPlan>,
    /// `q` over the first `n` moduli.
    pub q_crr: CrrVector,
}

/// Precomputed base and groups for a fixed `(n, mode)`; these do not depend on
/// the operands.
#[derive(Debug, Clone)]
pub struct Divider {
    n: u32,
    mode: GroupMode,
    base: Arc<ModuliBase>,
    output_base: Arc<ModuliBase>,
    r_used: usize,
    groups: Arc<[BigUint]>,
}

impl Divider {
    pub fn new(n: u32, mode: GroupMode) -> Result<Self> {
        check_bits(n)?;
        let base = Arc::new(ModuliBase::paper_base(strict_moduli_count(n))?);
        let layout = build_groups(n, &base, mode)?;
        let output_base = Arc::new(layout.base.truncated(n as usize)?);
        Ok(Self {
            n,
            mode,
            base: layout.base,
            output_base,
            r_used: layout.r_used,
            groups: layout.groups.into(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> GroupMode {
        self.mode
    }

    pub fn base(&self) -> &Arc<ModuliBase> {
        &self.base
    }

    pub fn r_used(&self) -> usize {
        self.r_used
    }

    pub fn groups(&self) -> &[BigUint] {
        &self.groups
    }

    fn check_operand(&self, operand: &'static str, value: &BigUint) -> Result<()> {
        if value.bits() > u64::from(self.n) {
            Err(CrrError::BitBound {
                operand,
                value: value.clone(),
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Builds the plan for divisor `y` (`2 <= y < 2^n`) and checks that gamma
    /// underapproximates `D / y` to `n` bits.
    pub fn plan(&self, y: &BigUint) -> Result<DivisionPlan> {
        self.check_operand("y", y)?;
        let scaler = build_scaler(y, &self.base)?;
        let t = numerators(y, &scaler.d, &self.groups, self.n);
        let gamma = gamma_series(&t, &self.groups)?;

        // 0 <= D/y - G/P <= 2^{-n}  <=>  0 <= D P - y G  and  (D P - y G) 2^n <= y P.
        let dp = &scaler.d * &gamma.denom;
        let yg = y * &gamma.numer;
        assert!(dp >= yg, "gamma overshoots D / y");
        assert!(
            (&dp - &yg) << self.n <= y * &gamma.denom,
            "gamma is not an n-bit underapproximation of D / y"
        );

        Ok(DivisionPlan {
            n: self.n,
            mode: self.mode,
            total_moduli: self.base.len(),
            base: Arc::clone(&self.base),
            r_used: self.r_used,
            moduli_used: self.n as usize + self.groups.len() * self.r_used,
            scaler,
            groups: Arc::clone(&self.groups),
            numerators: t,
            gamma,
        })
    }

    pub fn divide(&self, x: &BigUint, y: &BigUint) -> Result<DivisionOutcome> {
        if y.is_zero() {
            return Err(CrrError::DivisionByZero);
        }
        self.check_operand("x", x)?;
        self.check_operand("y", y)?;
        let fast = |q: BigUint| DivisionOutcome {
            q_crr: CrrVector::encode(&q, &self.output_base),
            q,
            correction_applied: false,
            plan: None,
        };
        if x.is_zero() {
            return Ok(fast(BigUint::zero()));
        }
        if y.is_one() {
            return Ok(fast(x.clone()));
        }

        let plan = self.plan(y)?;
        let candidate = (x * &plan.gamma.numer) / (&plan.scaler.d * &plan.gamma.denom);
        let next = &candidate + 1u32;
        let (q, correction_applied) = if &candidate * y <= *x && *x < &next * y {
            (candidate, false)
        } else {
            assert!(
                &next * y <= *x && *x < (&next + 1u32) * y,
                "candidate is off by more than one"
            );
            (next, true)
        };
        Ok(DivisionOutcome {
            q_crr: CrrVector::encode(&q, &self.output_base),
            q,
            correction_applied,
            plan: Some(plan),
        })
    }
}

/// One-shot `floor(x / y)`; use [`Divider`] to amortize setup across calls.
pub fn divide(x: &BigUint, y: &BigUint, n: u32, mode: GroupMode) -> Result<DivisionOutcome> {
    if y.is_zero() {
        return Err(CrrError::DivisionByZero);
    }
    Divider::new(n, mode)?.divide(x, y)
}

/// Bit length of `v` as `usize`, for reports.
pub fn bit_len(v: &BigUint) -> usize {
    v.bits().to_usize().unwrap_or(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn rat(n: u64, d: u64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn counts() {
        assert_eq!(strict_moduli_count(64), 874);
        assert_eq!(strict_group_size(64), 10);
        assert_eq!(strict_group_size(8), 2);
        assert_eq!(baseline_moduli_count(64), 8512);
        assert_eq!(integer_log_moduli_count(64), 874);
    }

    #[test]
    fn floor_div_log2_matches_float_away_from_integers() {
        for n in 2..600u64 {
            for numer in [n, n * n] {
                let exact = floor_div_log2(numer, n);
                let approx = numer as f64 / (n as f64).log2();
                assert!(exact as f64 <= approx + 1e-9 && approx < exact as f64 + 1.0 + 1e-9);
            }
        }
        // n = 2^p gives exact quotients.
        assert_eq!(floor_div_log2(256, 16), 64);
        assert_eq!(floor_div_log2(255, 16), 63);
    }

    #[test]
    fn group_inequality_examples() {
        let r = check_group_inequality(64).unwrap();
        assert_eq!((r.r, r.first_extension, r.holds), (10, 331, true));
        let r = check_group_inequality(8).unwrap();
        assert_eq!((r.r, r.first_extension, r.holds), (2, 31, false));
        assert!(check_group_inequality(128).unwrap().holds);
        assert!(check_group_inequality(3).is_err());
    }

    #[test]
    fn scaler_examples() {
        let base = ModuliBase::paper_base(8).unwrap();
        assert_eq!(
            build_scaler(&big(100), &base).unwrap(),
            Scaler {
                j: 2,
                k: 2,
                d: big(140)
            }
        );
        assert_eq!(build_scaler(&big(2), &base).unwrap().d, big(2));
        assert_eq!(
            build_scaler(&big(3), &base).unwrap(),
            Scaler {
                j: 0,
                k: 2,
                d: big(4)
            }
        );
        assert!(build_scaler(&big(1), &base).is_err());
    }

    #[test]
    fn scaler_window_holds_for_every_small_y() {
        let base = ModuliBase::paper_base(12).unwrap();
        let prefix = base.prefix_products();
        for y in 3..5000u64 {
            let s = build_scaler(&big(y), &base).unwrap();
            let y = big(y);
            assert!(prefix[s.j] <= y && y < prefix[s.j + 1]);
            assert!(y < s.d && &y * 2u32 >= s.d, "y = {y}, D = {}", s.d);
            assert!(s.k == 1 || (&prefix[s.j] << (s.k - 1)) <= y);
        }
    }

    #[test]
    fn strict_groups_for_n64() {
        let base = Arc::new(ModuliBase::paper_base(strict_moduli_count(64)).unwrap());
        let layout = build_groups(64, &base, GroupMode::Strict).unwrap();
        assert_eq!(layout.r_used, 10);
        assert_eq!(layout.groups.len(), 65);
        let first: BigUint = base.moduli()[64..74].iter().map(|&m| big(m)).product();
        assert_eq!(layout.groups[0], first);
        assert!(layout.groups.iter().all(|g| *g > pow2(67)));
        assert!(layout.moduli_used() <= base.len());
    }

    #[test]
    fn strict_groups_fail_for_n8() {
        let base = Arc::new(ModuliBase::paper_base(strict_moduli_count(8)).unwrap());
        match build_groups(8, &base, GroupMode::Strict) {
            Err(CrrError::GroupBound {
                index: 1,
                group,
                bits: 11,
            }) => assert_eq!(group, big(31 * 37)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn adaptive_groups_for_n8() {
        let base = Arc::new(ModuliBase::paper_base(strict_moduli_count(8)).unwrap());
        let layout = build_groups(8, &base, GroupMode::Adaptive).unwrap();
        assert_eq!(layout.r_used, 3);
        assert_eq!(layout.groups.len(), 9);
        assert_eq!(layout.groups[0], big(31 * 37 * 41));
        assert_eq!(layout.moduli_used(), 35);
    }

    #[test]
    fn adaptive_extends_a_short_paper_base() {
        let base = Arc::new(ModuliBase::paper_base(10).unwrap());
        let layout = build_groups(8, &base, GroupMode::Adaptive).unwrap();
        assert_eq!(layout.r_used, 3);
        assert!(layout.base.len() >= 35);
        let foreign = Arc::new(ModuliBase::new(vec![3, 4]).unwrap());
        assert!(build_groups(8, &foreign, GroupMode::Adaptive).is_err());
    }

    #[test]
    fn numerator_examples() {
        let t = numerators(&big(100), &big(140), &[big(47027)], 8);
        assert_eq!(t, vec![big(13436)]);
        let u = UnderApprox {
            value: rat(13436, 47027),
            target: rat(2, 7),
            bits: 11,
        };
        assert!(u.holds());
        assert_eq!(&u.target - &u.value, rat(2, 329189));
        assert!(
            numerators(&big(140), &big(140), &[big(47027), big(50000)], 8)
                .iter()
                .all(Zero::is_zero)
        );
    }

    #[test]
    fn gamma_examples() {
        let a: Vec<BigUint> = (0..5).map(|i| big(4096 + i)).collect();
        let zeros = vec![BigUint::zero(); 5];
        let g = gamma_series(&zeros, &a).unwrap();
        assert_eq!(g.to_rational(), rat(1, 1));
        assert_eq!(g.denom, a.iter().product());

        // t/A = 1/2 for all n + 1 terms: gamma = 2 - 2^{-(n+1)}.
        let n = 6u32;
        let a = vec![big(1024); n as usize + 1];
        let t = vec![big(512); n as usize + 1];
        let g = gamma_series(&t, &a).unwrap().to_rational();
        assert_eq!(g, rat(2, 1) - rat(1, 1 << (n + 1)));
        assert_eq!(rat(2, 1) - g, rat(1, 1 << (n + 1)));

        assert!(gamma_series(&t[..2], &a).is_err());
    }

    #[test]
    fn divide_examples() {
        let out = divide(&big(100), &big(7), 8, GroupMode::Adaptive).unwrap();
        assert_eq!(out.q, big(14));
        assert_eq!(
            out.q_crr,
            CrrVector::encode(&big(14), &Arc::new(ModuliBase::paper_base(8).unwrap()))
        );
        let plan = out.plan.unwrap();
        assert_eq!(
            (plan.r_used, plan.moduli_used, plan.total_moduli),
            (3, 35, 45)
        );

        let out = divide(&big(0), &big(9), 8, GroupMode::Adaptive).unwrap();
        assert!(out.q.is_zero() && out.plan.is_none());
        let out = divide(&big(200), &big(1), 8, GroupMode::Adaptive).unwrap();
        assert_eq!(out.q, big(200));
        assert!(out.plan.is_none());
    }

    #[test]
    fn divide_by_two_uses_d_equals_two() {
        let out = divide(&big(5), &big(2), 4, GroupMode::Adaptive).unwrap();
        assert_eq!(out.q, big(2));
        assert_eq!(out.plan.unwrap().scaler.d, big(2));

        // The general rule would pick D = 4; it gives the same quotients.
        let divider = Divider::new(8, GroupMode::Adaptive).unwrap();
        let d4 = Scaler {
            j: 0,
            k: 2,
            d: big(4),
        };
        let t = numerators(&big(2), &d4.d, divider.groups(), 8);
        let g = gamma_series(&t, divider.groups()).unwrap();
        for x in 0..256u64 {
            let c = (big(x) * &g.numer) / (&d4.d * &g.denom);
            let q = big(x / 2);
            assert!(c == q || &c + 1u32 == q);
            assert_eq!(divider.divide(&big(x), &big(2)).unwrap().q, q);
        }
    }

    #[test]
    fn divide_errors() {
        assert_eq!(
            divide(&big(1), &big(0), 8, GroupMode::Adaptive).unwrap_err(),
            CrrError::DivisionByZero
        );
        assert!(matches!(
            divide(&big(256), &big(3), 8, GroupMode::Adaptive),
            Err(CrrError::BitBound { operand: "x", .. })
        ));
        assert!(matches!(
            divide(&big(3), &big(256), 8, GroupMode::Adaptive),
            Err(CrrError::BitBound { operand: "y", .. })
        ));
        assert!(matches!(
            divide(&big(3), &big(2), 8, GroupMode::Strict),
            Err(CrrError::GroupBound { .. })
        ));
        assert_eq!(
            divide(&big(3), &big(2), 3, GroupMode::Adaptive).unwrap_err(),
            CrrError::BitSizeTooSmall(3)
        );
    }

    #[test]
    fn exhaustive_n8() {
        let divider = Divider::new(8, GroupMode::Adaptive).unwrap();
        let mut branches = [false; 2];
        for y in 1..256u64 {
            for x in 0..256u64 {
                let out = divider.divide(&big(x), &big(y)).unwrap();
                assert_eq!(out.q, big(x / y), "{x} / {y}");
                branches[out.correction_applied as usize] = true;
            }
        }
        assert_eq!(branches, [true, true]);
    }
}
