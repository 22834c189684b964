//! Cubic Dirichlet L-functions over Q(ω) at desk scale.
//!
//! The crate builds, from exact Eisenstein-integer arithmetic upward, the full
//! pipeline for studying central values of cubic Dirichlet L-functions:
//!
//! * [`eisenstein`]: the ring Z[ω], primary normalization, residue systems;
//! * [`symbol`]: the cubic residue symbol, by Euler's criterion at primes and
//!   by cubic reciprocity in general;
//! * [`primes`]: a norm-ordered sieve of primary primes, factorization, and
//!   prime/ideal counting;
//! * [`gauss`]: cubic Gauss sums g(r, n), both as literal character sums and
//!   through the multiplicative evaluation that makes large conductors cheap,
//!   plus root numbers;
//! * [`family`]: the family of primitive cubic characters of conductor ≤ X
//!   with cube-free modulus, and its size asymptotics;
//! * [`lfunction`]: central values L(1/2, χ) by approximate functional
//!   equation with certified truncation error;
//! * [`mollifier`]: the piecewise mollifier M(c, κ) with its interval
//!   structure, truncated exponentials, and admissibility checks;
//! * [`moments`]: mollified moment assembly, the arithmetic constants in the
//!   asymptotics, and the nonvanishing bookkeeping.
//!
//! Everything numeric is f64; everything arithmetic is exact i128 with checked
//! operations, so overflow surfaces as an error rather than silent wrap.

pub mod cache;
pub mod eisenstein;
pub mod error;
pub mod family;
pub mod gauss;
pub mod lfunction;
pub mod moments;
pub mod mollifier;
pub mod par;
pub mod primes;
pub mod symbol;

pub use error::{Error, Result};
