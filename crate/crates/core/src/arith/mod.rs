//! Exact arithmetic substrate.
//!
//! [`BigRational`] is the coefficient field. [`LaurentPoly`] and
//! [`BiLaurentPoly`] are sparse, canonically ordered Laurent polynomials in
//! `q` and in `(a, q)`. Quotients are carried as [`RationalFunction`] and
//! [`BiRationalFunction`], whose denominators are kept factored into
//! cyclotomic and Pochhammer atoms so that reduction and common denominators
//! never need a dense gcd on the hot path.

mod birf;
mod bivariate;
pub(crate) mod cyclo;
mod dense;
mod factored;
mod laurent;
mod rational;
mod rf;

pub use birf::{AtomDen, BiRationalFunction};
pub use bivariate::BiLaurentPoly;
pub use cyclo::{divisors, mobius};
pub use factored::Factored;
pub use laurent::LaurentPoly;
pub use rational::{rat, rat_checked_div, rat_int, BigInt, BigRational};
pub use rf::{CycloDen, RationalFunction};
