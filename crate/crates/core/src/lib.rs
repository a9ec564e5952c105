//! Exact computational machinery for invariants and matrix-valued covariants of
//! `SO(2n)` acting by conjugation on symmetric matrices.
//!
//! The crate has three layers:
//!
//! * combinatorics: integer partitions, nested-hook shapes and the diagram
//!   enumeration that counts invariants of the exterior algebra of symmetric
//!   matrices ([`partitions`], [`counting`], [`poincare`]);
//! * character theory for the root system `D_n`: weight multisets, exterior
//!   power characters and multiplicity extraction by the Weyl alternating sum
//!   ([`weyl`], [`bruteforce`]);
//! * an exact multilinear evaluation engine for alternating matrix-valued
//!   maps (standard polynomials, Pfaffians, the covariants `T_i`, `Q`, `Ω`,
//!   `dΩ`) together with identity verifiers and freeness certificates
//!   ([`mat`], [`altmap`], [`identities`], [`freeness`]).
//!
//! All arithmetic is exact: rational numbers of arbitrary precision or prime
//! fields with a fixed modulus. No floating point is used anywhere.

pub mod altmap;
pub mod bruteforce;
pub mod counting;
pub mod error;
pub mod exec;
pub mod field;
pub mod freeness;
pub mod identities;
pub mod linalg;
pub mod mat;
pub mod partitions;
pub mod poincare;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rat, PRIME_A, PRIME_B};
