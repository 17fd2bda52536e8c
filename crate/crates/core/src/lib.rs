//! Exact certification kernel for truncated q-hypergeometric sums.
//!
//! Everything here is exact: coefficients are arbitrary-precision rationals,
//! polynomials are sparse Laurent polynomials in `q` (and optionally a second
//! indeterminate `a`), and every identity or congruence check reduces to a
//! zero test on an exactly computed polynomial.
//!
//! The crate is `no_std` (it needs `alloc`). The `std` feature, on by default,
//! only enables the process-wide cyclotomic memo table.
//!
//! Modules, bottom-up:
//!
//! - [`arith`]: rationals, Laurent polynomials in one and two variables,
//!   division, gcd, substitution, rational functions with factored
//!   denominators.
//! - [`qkit`]: q-integers, q-shifted factorials, Gaussian binomials,
//!   cyclotomic polynomials and exact `q -> 1` limits of balanced products.
//! - [`series`]: the truncated sums, their closed forms and the auxiliary
//!   polynomials used by the proofs.
//! - [`congruence`]: congruence semantics, verdicts, p-adic valuations and one
//!   entry point per verified statement.
//! - [`dsl`]: a small expression language for user-supplied sums and moduli.

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arith;
pub mod congruence;
pub mod dsl;
mod error;
pub mod qkit;
pub mod series;

pub use error::{Error, Result};
