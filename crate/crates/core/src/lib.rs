//! Exact normal forms for matrices over Q and GF(p).
//!
//! * [`field`], [`poly`], [`matrix`]: exact scalars, univariate polynomials and
//!   dense matrices.
//! * [`rnf`]: invariant factors, the rational normal form `R(A)` and a
//!   transform `T` with `T^-1 A T = R(A)`.
//! * [`affine`]: generalized companion matrices and the affine family `A(p)`
//!   of representatives, in bijection with the normal forms of partition `p`.
//! * [`pairs`]: invariants and normal forms of pairs of trace-zero 2x2
//!   matrices under simultaneous conjugation, Hom spaces between pair modules,
//!   and splitting a fixed simple summand off a larger pair.
//! * [`brute`]: exhaustive conjugacy oracles over small prime fields.
//! * [`format`], [`cli`]: the text file format and the command-line front end.

pub mod affine;
pub mod brute;
pub mod cli;
pub mod error;
pub mod field;
pub mod format;
pub mod matrix;
pub mod pairs;
pub mod poly;
pub mod rnf;

pub use error::{Error, Result};
pub use field::{Field, FieldKind, Scalar};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use rnf::{Partition, RationalNormalForm};
