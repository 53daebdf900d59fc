//! Residue vectors and their ring operations.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::base::{parse_decimal, parse_err, tokenize, ModuliBase};
use crate::error::{CrrError, Result};

/// Header line of the text format.
pub const MAGIC: &str = "CRR1";

/// An integer modulo `M` held as its residues `(x mod m_1, ..., x mod m_r)`.
#[derive(Debug, Clone)]
pub struct CrrVector {
    base: Arc<ModuliBase>,
    residues: Vec<u64>,
}

impl CrrVector {
    /// Wraps residues that are already reduced; each must be below its modulus.
    pub fn from_residues(base: Arc<ModuliBase>, residues: Vec<u64>) -> Result<Self> {
        if residues.len() != base.len() {
            return Err(CrrError::LengthMismatch {
                expected: base.len(),
                got: residues.len(),
            });
        }
        for (index, (&value, &modulus)) in residues.iter().zip(base.moduli()).enumerate() {
            if value >= modulus {
                return Err(CrrError::ResidueOutOfRange {
                    index,
                    value,
                    modulus,
                });
            }
        }
        Ok(Self { base, residues })
    }

    /// Encodes a non-negative integer. Values `>= M` wrap silently.
    pub fn encode(x: &BigUint, base: &Arc<ModuliBase>) -> Self {
        let residues = base
            .moduli()
            .iter()
            .map(|&m| (x % m).to_u64().expect("residue below a u64 modulus"))
            .collect();
        Self {
            base: Arc::clone(base),
            residues,
        }
    }

    /// Encodes any integer using the non-negative remainder, so `-1` maps to `M - 1`.
    pub fn encode_signed(x: &BigInt, base: &Arc<ModuliBase>) -> Self {
        let residues = base
            .moduli()
            .iter()
            .map(|&m| {
                let r = x.mod_floor(&BigInt::from(m));
                debug_assert!(r.sign() != Sign::Minus);
                r.to_u64().expect("residue below a u64 modulus")
            })
            .collect();
        Self {
            base: Arc::clone(base),
            residues,
        }
    }

    pub fn base(&self) -> &Arc<ModuliBase> {
        &self.base
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&x| x == 0)
    }

    /// Ok when both vectors live over the same base. Pointer identity is the
    /// fast path; equal moduli lists are accepted as a fallback.
    pub fn check_same_base(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.base, &other.base) || self.base == other.base {
            Ok(())
        } else {
            Err(CrrError::BaseMismatch)
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u128, u128, u128) -> u128) -> Result<Self> {
        self.check_same_base(other)?;
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.base.moduli())
            .map(|((&a, &b), &m)| op(a as u128, b as u128, m as u128) as u64)
            .collect();
        Ok(Self {
            base: Arc::clone(&self.base),
            residues,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, m| (a + b) % m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, m| (a + m - b) % m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b, m| a * b % m)
    }

    /// The three-line `CRR1` text form, LF terminated.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&self.base.to_base_line());
        out.push_str("\nres");
        for x in &self.residues {
            write!(out, " {x}").unwrap();
        }
        out.push('\n');
        out
    }

    /// Parses the `CRR1` text form. Errors carry 1-based line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let Some(body) = text.strip_suffix('\n') else {
            let line = text.split('\n').count();
            let column = text.rsplit('\n').next().map_or(0, str::len) + 1;
            return Err(parse_err(line, column, "missing trailing newline"));
        };
        let lines: Vec<&str> = body.split('\n').collect();
        if let Some((i, line)) = lines.iter().enumerate().find(|(_, l)| l.contains('\r')) {
            return Err(parse_err(
                i + 1,
                line.find('\r').unwrap() + 1,
                "CR characters are not allowed",
            ));
        }
        if lines[0] != MAGIC {
            return Err(parse_err(1, 1, format!("expected `{MAGIC}` header")));
        }
        let Some(base_line) = lines.get(1) else {
            return Err(parse_err(2, 1, "missing `base` line"));
        };
        let base = Arc::new(ModuliBase::parse_base_line(base_line, 2)?);
        let Some(res_line) = lines.get(2) else {
            return Err(parse_err(3, 1, "missing `res` line"));
        };
        if lines.len() > 3 {
            return Err(parse_err(4, 1, "unexpected content after `res` line"));
        }
        let tokens = tokenize(res_line, 3)?;
        match tokens.first() {
            Some(&(_, "res")) => {}
            Some(&(col, tok)) => {
                return Err(parse_err(3, col, format!("expected `res`, found `{tok}`")))
            }
            None => return Err(parse_err(3, 1, "expected `res` line")),
        }
        let fields = &tokens[1..];
        if fields.len() != base.len() {
            let col = fields.get(base.len()).map_or(res_line.len() + 1, |t| t.0);
            return Err(parse_err(
                3,
                col,
                format!("expected {} residues, found {}", base.len(), fields.len()),
            ));
        }
        let mut residues = Vec::with_capacity(fields.len());
        for (&(col, tok), &m) in fields.iter().zip(base.moduli()) {
            let x = parse_decimal(tok, 3, col)?;
            if x >= m {
                return Err(parse_err(
                    3,
                    col,
                    format!("residue {x} is not below modulus {m}"),
                ));
            }
            residues.push(x);
        }
        Ok(Self { base, residues })
    }
}

impl PartialEq for CrrVector {
    fn eq(&self, other: &Self) -> bool {
        self.residues == other.residues && self.check_same_base(other).is_ok()
    }
}

impl Eq for CrrVector {}
