pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::Zero;

use crate::{Error, Result};

/// `n / d` in canonical form. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x / y`, reporting a zero divisor instead of panicking.
pub fn rat_checked_div(x: &BigRational, y: &BigRational) -> Result<BigRational> {
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(x / y)
}
