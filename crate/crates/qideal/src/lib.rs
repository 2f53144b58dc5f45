//! Exact computer algebra in the ring of integer Laurent polynomials
//! `Z[q, q^-1]`.
//!
//! The crate provides:
//!
//! - [`poly`]: sparse Laurent polynomials with arbitrary-precision integer
//!   coefficients, a small expression parser, canonical printing, and exact
//!   division.
//! - [`cyclotomic`]: cyclotomic polynomials, the Möbius function,
//!   factorization into cyclotomic parts, and constructive coprimality
//!   (Bezout) witnesses.
//! - [`qcalc`]: q-integers, falling q-factorials, q-factorials, and their
//!   closed-form cyclotomic exponent profiles.
//! - [`ideals`]: the ideals spanned by the products `{l-k}_q! {k}_q!`, their
//!   principal generators, and machine-checkable Bezout certificates for
//!   principality.
//! - [`links`]: principal generators of the value classes attached to
//!   algebraically-split, ribbon/boundary, and Brunnian links, together with
//!   membership queries.
//! - [`verify`]: the invariant sweeps behind the `check` CLI command.

pub mod cyclotomic;
pub mod ideals;
pub mod links;
pub mod poly;
pub mod qcalc;
pub mod verify;

pub use cyclotomic::{CoprimalityWitness, CycFactorization, ExponentVector};
pub use ideals::BezoutCertificate;
pub use links::{ColorSpec, LinkClass};
pub use poly::{LaurentPoly, ParseError, UnitNormalForm};

use thiserror::Error;

/// An argument fell outside an operation's documented domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("argument out of range: {0}")]
pub struct RangeError(pub String);

/// The operation is undefined for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("operation undefined for the zero polynomial")]
pub struct ZeroInput;
