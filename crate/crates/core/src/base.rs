//! Moduli bases: ordered, pairwise-coprime moduli with cached products.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{CrrError, Result};
use crate::primes;

/// An immutable ordered set of pairwise-coprime moduli `m_1..m_r`.
///
/// The full product `M` and every prefix product `m_1 ... m_j` are computed at
/// construction. The cofactors `M / m_i` used by reconstruction are computed on
/// first use.
#[derive(Clone)]
pub struct ModuliBase {
    moduli: Vec<u64>,
    product: BigUint,
    prefix: Vec<BigUint>,
    cofactors: OnceLock<Vec<BigUint>>,
}

impl ModuliBase {
    /// Builds a base from arbitrary moduli, rejecting values below 2 and any
    /// pair sharing a factor.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(CrrError::EmptyBase);
        }
        if let Some((index, &value)) = moduli.iter().enumerate().find(|(_, &m)| m < 2) {
            return Err(CrrError::ModulusTooSmall { index, value });
        }
        if let Some((i, j)) = first_common_factor(&moduli) {
            return Err(CrrError::NotPairwiseCoprime { i, j });
        }
        Ok(Self::from_validated(moduli))
    }

    /// The base `m_i = (i+2)`-th prime for `i = 1..count`, i.e. `5, 7, 11, ...`.
    pub fn paper_base(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(CrrError::EmptyBase);
        }
        let mut moduli = primes::first_primes(count + 2)?;
        moduli.drain(..2);
        Ok(Self::from_validated(moduli))
    }

    fn from_validated(moduli: Vec<u64>) -> Self {
        let mut prefix = Vec::with_capacity(moduli.len() + 1);
        prefix.push(BigUint::one());
        for &m in &moduli {
            let next = prefix.last().unwrap() * m;
            prefix.push(next);
        }
        let product = prefix.last().unwrap().clone();
        Self {
            moduli,
            product,
            prefix,
            cofactors: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// `m_{i+1}` in 0-based indexing.
    pub fn modulus(&self, i: usize) -> u64 {
        self.moduli[i]
    }

    /// `M`, the product of all moduli.
    pub fn product(&self) -> &BigUint {
        &self.product
    }

    /// `prefix_products()[j] = m_1 ... m_j`, with `prefix_products()[0] = 1`.
    pub fn prefix_products(&self) -> &[BigUint] {
        &self.prefix
    }

    /// `M / m_i` for every modulus.
    pub fn cofactors(&self) -> &[BigUint] {
        self.cofactors.get_or_init(|| {
            let r = self.moduli.len();
            let mut suffix = vec![BigUint::one(); r + 1];
            for i in (0..r).rev() {
                suffix[i] = &suffix[i + 1] * self.moduli[i];
            }
            (0..r).map(|i| &self.prefix[i] * &suffix[i + 1]).collect()
        })
    }

    /// The base restricted to its first `count` moduli.
    pub fn truncated(&self, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(CrrError::EmptyBase);
        }
        if count > self.len() {
            return Err(CrrError::InsufficientBase {
                needed: count,
                have: self.len(),
            });
        }
        Ok(Self::from_validated(self.moduli[..count].to_vec()))
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        validate_pairwise_coprime(&self.moduli)
    }

    /// The text form `base <r> <m_1> ... <m_r>`, without a line terminator.
    pub fn to_base_line(&self) -> String {
        let mut line = format!("base {}", self.len());
        for m in &self.moduli {
            line.push(' ');
            line.push_str(&m.to_string());
        }
        line
    }

    /// Parses a `base` line. `line_no` is used in error positions only.
    pub fn parse_base_line(line: &str, line_no: usize) -> Result<Self> {
        let tokens = tokenize(line, line_no)?;
        let Some(&(col, keyword)) = tokens.first() else {
            return Err(parse_err(line_no, 1, "expected `base` line"));
        };
        if keyword != "base" {
            return Err(parse_err(
                line_no,
                col,
                format!("expected `base`, found `{keyword}`"),
            ));
        }
        let Some(&(col, count)) = tokens.get(1) else {
            return Err(parse_err(line_no, line.len() + 1, "missing modulus count"));
        };
        let count = parse_decimal(count, line_no, col)?;
        let moduli = tokens[2..]
            .iter()
            .map(|&(col, tok)| parse_decimal(tok, line_no, col))
            .collect::<Result<Vec<u64>>>()?;
        if moduli.len() as u64 != count {
            let col = tokens
                .get(2 + count as usize)
                .map_or(line.len() + 1, |t| t.0);
            return Err(parse_err(
                line_no,
                col,
                format!("declared {count} moduli, found {}", moduli.len()),
            ));
        }
        Self::new(moduli).map_err(|e| {
            let col = match &e {
                CrrError::ModulusTooSmall { index, .. } => tokens[2 + index].0,
                CrrError::NotPairwiseCoprime { j, .. } => tokens[2 + j].0,
                _ => 1,
            };
            parse_err(line_no, col, e.to_string())
        })
    }
}

impl PartialEq for ModuliBase {
    fn eq(&self, other: &Self) -> bool {
        self.moduli == other.moduli
    }
}

impl Eq for ModuliBase {}

impl fmt::Debug for ModuliBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModuliBase")
            .field("moduli", &self.moduli)
            .finish_non_exhaustive()
    }
}

/// True iff every pair of moduli has gcd 1.
pub fn validate_pairwise_coprime(moduli: &[u64]) -> bool {
    first_common_factor(moduli).is_none()
}

fn first_common_factor(moduli: &[u64]) -> Option<(usize, usize)> {
    for j in 1..moduli.len() {
        for i in 0..j {
            if moduli[i].gcd(&moduli[j]) != 1 {
                return Some((i, j));
            }
        }
    }
    None
}

pub(crate) fn parse_err(line: usize, column: usize, message: impl Into<String>) -> CrrError {
    CrrError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits on single spaces, returning `(1-based column, token)` pairs.
pub(crate) fn tokenize(line: &str, line_no: usize) -> Result<Vec<(usize, &str)>> {
    let mut tokens = Vec::new();
    let mut offset = 0;
    if line.is_empty() {
        return Ok(tokens);
    }
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(parse_err(
                line_no,
                offset + 1,
                "expected a single space between fields",
            ));
        }
        tokens.push((offset + 1, tok));
        offset += tok.len() + 1;
    }
    Ok(tokens)
}

/// Strict decimal: ASCII digits only, no sign, no leading zeros.
pub(crate) fn parse_decimal(tok: &str, line: usize, column: usize) -> Result<u64> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(
            line,
            column,
            format!("`{tok}` is not a decimal integer"),
        ));
    }
    if tok.len() > 1 && tok.starts_with('0') {
        return Err(parse_err(
            line,
            column,
            format!("`{tok}` has a leading zero"),
        ));
    }
    tok.parse()
        .map_err(|_| parse_err(line, column, format!("`{tok}` does not fit in 64 bits")))
}
