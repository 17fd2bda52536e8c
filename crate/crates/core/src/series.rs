//! The truncated sums, their closed forms and the auxiliary polynomials.
//!
//! All truncated sums take an inclusive upper index `M`: `sum_s(M)` is
//! `Σ_{k=0}^{M}`, so the sum to `n - 1` is `sum_s(n - 1)` and the
//! half-length sum for odd `n` is `sum_s((n + 1) / 2)`.
//!
//! Summands and closed forms are assembled as [`Factored`] products, so the
//! big q-shifted factorial ratios cancel symbolically before anything is
//! expanded.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{rat_int, BiLaurentPoly, BiRationalFunction, BigRational, Factored, LaurentPoly, RationalFunction};
use crate::qkit::{self, binomial, FactorProduct};
use crate::{Error, Result};

/// A truncated sum: inclusive upper index and which summand family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SumSpec {
    pub upper: u32,
    pub parametric: bool,
}

/// The value of a [`SumSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumValue {
    Univariate(RationalFunction),
    Parametric(BiRationalFunction),
}

impl SumSpec {
    pub fn evaluate(&self) -> SumValue {
        if self.parametric {
            SumValue::Parametric(sum_s_param(self.upper))
        } else {
            SumValue::Univariate(sum_s(self.upper))
        }
    }
}

fn q_pow(e: i64) -> Factored {
    Factored::monomial(BigRational::one(), e).unwrap()
}

fn poch(s: i64, e: i64, k: u32) -> Factored {
    Factored::poch(s, e, k as u64).expect("no vanishing factor")
}

fn qint_f(n: i64, e: i64) -> Factored {
    qkit::qint_factored(n, e).expect("nonzero q-integer")
}

fn odd_above_one(n: u32) -> Result<()> {
    if n > 1 && n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(alloc::format!("n must be odd and > 1, got {n}")))
    }
}

/// `[4k-1]_{q^2} [4k-1]^2 (q^{-2};q^4)_k^4 / (q^4;q^4)_k^4 · q^{4k}` as a
/// factored product.
pub fn summand_factored(k: u32) -> Factored {
    let m = 4 * k as i64 - 1;
    qint_f(m, 2) * qint_f(m, 1).pow(2) * poch(-2, 4, k).pow(4) / poch(4, 4, k).pow(4) * q_pow(4 * k as i64)
}

pub fn summand(k: u32) -> RationalFunction {
    summand_factored(k).to_rf().unwrap()
}

/// `Σ_{k=0}^{M}` of [`summand`], reduced after every addition.
pub fn sum_s(upper: u32) -> RationalFunction {
    partial_sums(upper).pop().unwrap()
}

/// All partial sums `sum_s(0), ..., sum_s(upper)`.
pub fn partial_sums(upper: u32) -> Vec<RationalFunction> {
    let mut out = Vec::with_capacity(upper as usize + 1);
    let mut acc = RationalFunction::zero();
    for k in 0..=upper {
        acc = &acc + &summand(k);
        out.push(acc.clone());
    }
    out
}

/// `(q^2 - 1)^2` divides the bracketed numerator exactly; the quotient is
/// returned as a polynomial.
fn divide_by_q2_minus_1_squared(num: LaurentPoly) -> LaurentPoly {
    let q2m1 = LaurentPoly::from_coeffs(0, &[-1, 0, 1]);
    let (quot, rem) = num.divrem(&q2m1.pow(2)).unwrap();
    assert!(rem.is_zero(), "division by (q^2 - 1)^2 left a remainder");
    quot
}

/// `2 (q^5 + q^{4n+1}(q^{4n-2} - q^2 - 1)) / (q^2 - 1)^2 - q^{4n}`.
pub fn f_poly(n: u32) -> LaurentPoly {
    assert!(n >= 1, "f_n is defined for n >= 1");
    let n = n as i64;
    let one = || rat_int(1);
    let bracket = LaurentPoly::from_terms([(5, one()), (8 * n - 1, one()), (4 * n + 3, -one()), (4 * n + 1, -one())]);
    let quot = divide_by_q2_minus_1_squared(bracket);
    &quot.scale(&rat_int(2)) - &LaurentPoly::monomial(one(), 4 * n)
}

/// The right-hand side
/// `(q^{2n}+1)^4 [n]_{q^2}^4 (q^{-2};q^4)_n^4 / (q^4;q^4)_n^4 · f_n(q)`.
pub fn closed_t(n: u32) -> RationalFunction {
    assert!(n >= 1);
    let m = n as i64;
    let f = Factored::one_plus(2 * m).pow(4) * qint_f(m, 2).pow(4) * poch(-2, 4, n).pow(4) / poch(4, 4, n).pow(4);
    f.to_rf().unwrap().mul_poly(&f_poly(n))
}

/// Left side minus right side of
/// `(1-q^{4n})^4 f_n + (1-q^{2(4n-1)})(1-q^{4n-1})^2(1-q)(1+q)^3 q^{4n} = (1-q^{4n-2})^4 f_{n+1}`.
pub fn induction_residual(n: u32) -> LaurentPoly {
    assert!(n >= 1);
    let m = n as i64;
    let om = LaurentPoly::one_minus_q_pow;
    let one_plus_q = LaurentPoly::from_coeffs(0, &[1, 1]);
    let lhs1 = &om(4 * m).pow(4) * &f_poly(n);
    let lhs2 = (&(&om(2 * (4 * m - 1)) * &om(4 * m - 1).pow(2)) * &(&om(1) * &one_plus_q.pow(3))).shift(4 * m);
    let rhs = &om(4 * m - 2).pow(4) * &f_poly(n + 1);
    &(&lhs1 + &lhs2) - &rhs
}

/// `(-q^e; q^e)_n = ∏_{j=1}^{n} (1 + q^{e j})`.
fn minus_poch(e: i64, n: u32) -> Factored {
    (1..=n as i64).fold(Factored::one(), |acc, j| acc * Factored::one_plus(e * j))
}

/// The q-binomial restatement of [`closed_t`]:
/// `(q^{2n}+1)^4 [n]_{q^2}^4 (q^2-1)^4 / ((q^2-q^{4n})^4 (-q^2;q^2)_n^8) · [2n,n]_{q^2}^4 · f_n(q)`.
pub fn restated_rhs(n: u32) -> RationalFunction {
    assert!(n >= 1);
    let m = n as i64;
    let q2_minus_1 = Factored::one_minus(2).unwrap().scale(&rat_int(-1)).unwrap();
    // q^2 - q^{4n} = q^2 (1 - q^{4n-2})
    let q2_minus_q4n = q_pow(2) * Factored::one_minus(4 * m - 2).unwrap();
    let qb = qkit::qbinom_factored(2 * n, m, 2).unwrap();
    let f = Factored::one_plus(2 * m).pow(4) * qint_f(m, 2).pow(4) * q2_minus_1.pow(4) * qb.pow(4)
        / (q2_minus_q4n.pow(4) * minus_poch(2, n).pow(8));
    f.to_rf().unwrap().mul_poly(&f_poly(n))
}

/// Cleared-denominator residual of
/// `(q^e;q^{2e})_n / (q^{2e};q^{2e})_n = [2n,n]_{q^e} / (-q^e;q^e)_n^2`:
/// `(q^e;q^{2e})_n (-q^e;q^e)_n^2 - [2n,n]_{q^e} (q^{2e};q^{2e})_n`, built from
/// expanded polynomials.
pub fn central_ratio_residual(n: u32, e: u32) -> LaurentPoly {
    let ei = e as i64;
    let minus = (1..=n as i64)
        .fold(LaurentPoly::one(), |acc, j| &acc * &(&LaurentPoly::one() + &LaurentPoly::monomial(rat_int(1), ei * j)));
    let lhs = &qkit::qpoch(ei, 2 * e, n) * &minus.pow(2);
    let rhs = &qkit::qbinom(2 * n, n as i64, e) * &qkit::qpoch(2 * ei, 2 * e, n);
    &lhs - &rhs
}

/// `[n]_{q^2}^4 (q^{-2};q^4)_{(n+1)/2}^4 / (q^4;q^4)_{(n+1)/2}^4 · f_{(n+3)/2}(q)`
/// for odd `n > 1`.
pub fn halfcase_rhs(n: u32) -> Result<RationalFunction> {
    odd_above_one(n)?;
    let h = n.div_ceil(2);
    let f = qint_f(n as i64, 2).pow(4) * poch(-2, 4, h).pow(4) / poch(4, 4, h).pow(4);
    Ok(f.to_rf()?.mul_poly(&f_poly((n + 3) / 2)))
}

/// Summand with the parameter `a`:
/// `[4k-1]_{q^2}[4k-1]^2 (q^{-2};q^4)_k^2 (q^{-2}/a;q^4)_k (aq^{-2};q^4)_k q^{4k}
///  / ((q^4;q^4)_k^2 (q^4/a;q^4)_k (aq^4;q^4)_k)`.
pub fn summand_param_factored(k: u32) -> Factored {
    let m = 4 * k as i64 - 1;
    let k64 = k as u64;
    qint_f(m, 2)
        * qint_f(m, 1).pow(2)
        * poch(-2, 4, k).pow(2)
        * Factored::poch_param(-1, -2, 4, k64)
        * Factored::poch_param(1, -2, 4, k64)
        * q_pow(4 * k as i64)
        / (poch(4, 4, k).pow(2) * Factored::poch_param(-1, 4, 4, k64) * Factored::poch_param(1, 4, 4, k64))
}

pub fn summand_param(k: u32) -> BiRationalFunction {
    summand_param_factored(k).to_birf()
}

/// `Σ_{k=0}^{M}` of [`summand_param`] over the atom lcm of the denominators.
pub fn sum_s_param(upper: u32) -> BiRationalFunction {
    (0..=upper).fold(BiRationalFunction::zero(), |acc, k| &acc + &summand_param(k))
}

/// The bivariate polynomial
/// `2 + 2 Σ_{i=1}^{4n-6} i (q^i + q^{8n-6-i}) - (a^2+1)(q^{8n-5} - 2q^{4n-1} + 2q^{4n-2} - 2q^{4n-3} + q) / (a (q-1)^2)
///  + (8n-10) q^{4n-4}(1+q^2) + (8n-11) q^{4n-5}(1+q^4) + (8n-8) q^{4n-3} + 2 q^{8n-6}`.
pub fn f_param(n: u32) -> BiLaurentPoly {
    assert!(n >= 2, "the parametric polynomial needs n > 1");
    let n = n as i64;
    let c = rat_int;
    let mut q_part: Vec<(i64, BigRational)> = alloc::vec![(0, c(2))];
    for i in 1..=4 * n - 6 {
        q_part.push((i, c(2 * i)));
        q_part.push((8 * n - 6 - i, c(2 * i)));
    }
    q_part.extend([
        (4 * n - 4, c(8 * n - 10)),
        (4 * n - 2, c(8 * n - 10)),
        (4 * n - 5, c(8 * n - 11)),
        (4 * n - 1, c(8 * n - 11)),
        (4 * n - 3, c(8 * n - 8)),
        (8 * n - 6, c(2)),
    ]);
    let bracket = LaurentPoly::from_terms([
        (8 * n - 5, c(1)),
        (4 * n - 1, c(-2)),
        (4 * n - 2, c(2)),
        (4 * n - 3, c(-2)),
        (1, c(1)),
    ]);
    let qm1 = LaurentPoly::from_coeffs(0, &[-1, 1]);
    let (g, rem) = bracket.divrem(&qm1.pow(2)).unwrap();
    assert!(rem.is_zero(), "division by (q - 1)^2 left a remainder");
    // (a^2 + 1)/a = a + 1/a
    BiLaurentPoly::from_a_coeffs([(0, LaurentPoly::from_terms(q_part)), (1, -&g), (-1, -&g)])
}

/// The parametric closed form
/// `q (q^{2n}+1)^2 [n]_{q^2}^2 [2n,n]_{q^2}^2 (1-q^{-2})^2 (q^6/a;q^4)_{n-2} (aq^6;q^4)_{n-2} f_n(a,q)
///  / ((1-q^{4n-2})^2 (-q^2;q^2)_n^4 (aq^4;q^4)_{n-1} (q^4/a;q^4)_{n-1})`.
pub fn closed_param_t(n: u32) -> BiRationalFunction {
    assert!(n >= 2, "the parametric identity needs n > 1");
    let m = n as i64;
    let k2 = (n - 2) as u64;
    let k1 = (n - 1) as u64;
    let f = q_pow(1)
        * Factored::one_plus(2 * m).pow(2)
        * qint_f(m, 2).pow(2)
        * qkit::qbinom_factored(2 * n, m, 2).unwrap().pow(2)
        * Factored::one_minus(-2).unwrap().pow(2)
        * Factored::poch_param(-1, 6, 4, k2)
        * Factored::poch_param(1, 6, 4, k2)
        / (Factored::one_minus(4 * m - 2).unwrap().pow(2)
            * minus_poch(2, n).pow(4)
            * Factored::poch_param(1, 4, 4, k1)
            * Factored::poch_param(-1, 4, 4, k1));
    &f.to_birf() * &BiRationalFunction::from_poly(f_param(n))
}

/// Cleared difference of
/// `[(n+3)/2]_{q^2}^2 [n+3, (n+3)/2]_{q^2}^2 / (1-q^{2n+4})^2
///  = [n]_{q^2}^2 [n-1, (n-1)/2]_{q^2}^2 (1+q^{n+3})^2 (1+q^{n+1})^2 / (1-q^{n+1})^2`
/// for odd `n > 1`. Identically zero when the relation holds.
pub fn halfcase_param_relation(n: u32) -> Result<LaurentPoly> {
    odd_above_one(n)?;
    let m = n as i64;
    let om = LaurentPoly::one_minus_q_pow;
    let op = |e: i64| &LaurentPoly::one() + &LaurentPoly::monomial(rat_int(1), e);
    let h = (n + 3) / 2;
    let lhs_num = &qkit::qint(h as i64, 2)?.pow(2) * &qkit::qbinom(n + 3, h as i64, 2).pow(2);
    let lhs_den = om(2 * m + 4).pow(2);
    let rhs_num = &(&qkit::qint(m, 2)?.pow(2) * &qkit::qbinom(n - 1, ((n - 1) / 2) as i64, 2).pow(2))
        * &(&op(m + 3).pow(2) * &op(m + 1).pow(2));
    let rhs_den = om(m + 1).pow(2);
    Ok(&(&lhs_num * &rhs_den) - &(&rhs_num * &lhs_den))
}

/// `(4k-1)^3 C(2k,k)^4 / (256^k (2k-1)^4)`.
pub fn classical_summand(k: u32) -> BigRational {
    let k64 = k as u64;
    let c = binomial(2 * k64, k64);
    let num = num_traits::pow(BigInt::from(4 * k as i64 - 1), 3) * num_traits::pow(c, 4);
    let den = num_traits::pow(BigInt::from(256), k as usize) * num_traits::pow(BigInt::from(2 * k as i64 - 1), 4);
    BigRational::new(num, den)
}

/// `Σ_{k=0}^{M}` of [`classical_summand`].
pub fn classical_sum(upper: u32) -> BigRational {
    (0..=upper).fold(BigRational::zero(), |acc, k| acc + classical_summand(k))
}

/// `16 n^4 (8n^2 - 12n + 3) C(2n,n)^4 / (256^n (2n-1)^4)`.
pub fn classical_closed(n: u32) -> BigRational {
    assert!(n >= 1);
    let ni = BigInt::from(n);
    let c = binomial(2 * n as u64, n as u64);
    let poly = BigInt::from(8 * (n as i64) * (n as i64) - 12 * n as i64 + 3);
    let num = BigInt::from(16) * num_traits::pow(ni, 4) * poly * num_traits::pow(c, 4);
    let den = num_traits::pow(BigInt::from(256), n as usize) * num_traits::pow(BigInt::from(2 * n as i64 - 1), 4);
    BigRational::new(num, den)
}

/// The factors of [`summand`] as `∏ (1 - q^m)^{mult}`; the remaining
/// monomial `q^{4k}` tends to 1.
pub fn summand_factor_product(k: u32) -> FactorProduct {
    let m = 4 * k as i64 - 1;
    let base = FactorProduct::new([(2 * m, 1), (2, -1), (m, 2), (1, -2)]).unwrap();
    base.mul(&FactorProduct::poch(-2, 4, k, 4).unwrap()).mul(&FactorProduct::poch(4, 4, k, -4).unwrap())
}

/// `lim_{q -> 1}` of [`summand`], through [`qkit::factor_limit_q1`].
pub fn summand_limit_q1(k: u32) -> Result<BigRational> {
    qkit::factor_limit_q1(&summand_factor_product(k))
}
