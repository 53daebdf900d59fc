//! Chinese remaindering representation (residue number system) arithmetic.
//!
//! * [`base`]: pairwise-coprime moduli bases, including the prime base
//!   `5, 7, 11, 13, ...` used for division.
//! * [`vector`]: residue vectors, residue-wise ring operations and the `CRR1`
//!   text format.
//! * [`reconstruct`]: residue-to-integer conversion by classical CRT weights,
//!   a sequential Bezout chain, random linear forms, and a Garner baseline.
//! * [`division`]: floor division through a geometric-series reciprocal with
//!   the `floor(n^2 / log2 n) + 3n` moduli budget.
//! * [`cli`]: the `crr` command line.

pub mod base;
pub mod cli;
pub mod division;
pub mod egcd;
pub mod error;
pub mod primes;
pub mod reconstruct;
pub mod vector;

pub use base::{validate_pairwise_coprime, ModuliBase};
pub use division::{divide, Divider, DivisionOutcome, DivisionPlan, GroupMode};
pub use egcd::{extended_gcd, Bezout, EgcdCounter};
pub use error::{CrrError, Result};
pub use reconstruct::{
    classical_coefficients, probabilistic_reconstruct, reconstruct, sequential_coefficients,
    BezoutChain, CrtCoefficients, GarnerConverter, LinearFormSample, ProbConfig,
};
pub use vector::CrrVector;
