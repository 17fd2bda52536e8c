use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dense::IntPoly;
use super::rational::BigRational;
use crate::{Error, Result};

/// Spans wider than this are never materialized densely.
const DENSE_LIMIT: i64 = 1 << 22;

/// A sparse Laurent polynomial in `q` with rational coefficients.
///
/// Terms are stored in increasing exponent order with no zero coefficients,
/// so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: alloc::vec![(e, c)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        LaurentPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// `Σ coeffs[i] q^(shift + i)`.
    pub fn from_coeffs(shift: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs.iter().enumerate().map(|(i, &c)| (shift + i as i64, BigRational::from_integer(c.into()))),
        )
    }

    /// `1 - q^m`.
    pub fn one_minus_q_pow(m: i64) -> Self {
        Self::one() - Self::monomial(BigRational::one(), m)
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// `(min exponent, max exponent)`, `None` for zero.
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        Some((self.min_exp()?, self.max_exp()?))
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Writes `self = unit · q^shift · p` with `p` monic and of minimal
    /// exponent 0. Zero yields `(0, 0, 0)`.
    pub fn unit_normal(&self) -> (BigRational, i64, LaurentPoly) {
        let Some((lo, _)) = self.degree_span() else {
            return (BigRational::zero(), 0, Self::zero());
        };
        let lead = self.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        let p = LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e - lo, c * &inv)).collect() };
        (lead, lo, p)
    }

    /// Monic, minimal exponent 0.
    pub fn normalized(&self) -> LaurentPoly {
        self.unit_normal().2
    }

    fn span_ok(&self) -> bool {
        match self.degree_span() {
            Some((lo, hi)) => hi - lo <= DENSE_LIMIT,
            None => true,
        }
    }

    pub(crate) fn to_int(&self) -> (IntPoly, BigInt) {
        let Some((lo, hi)) = self.degree_span() else {
            return (IntPoly::zero(), BigInt::one());
        };
        let den = self.terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let mut coeffs = alloc::vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            coeffs[(e - lo) as usize] = c.numer() * (&den / c.denom());
        }
        (IntPoly::new(lo, coeffs), den)
    }

    pub(crate) fn from_int_poly(p: &IntPoly, den: &BigInt) -> Self {
        LaurentPoly {
            terms: p
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (p.shift + i as i64, BigRational::new(c.clone(), den.clone())))
                .collect(),
        }
    }

    fn map_int(&self, f: impl FnOnce(&IntPoly) -> IntPoly) -> Self {
        let (ip, den) = self.to_int();
        Self::from_int_poly(&f(&ip), &den)
    }

    fn try_map_int(&self, f: impl FnOnce(&IntPoly) -> Option<IntPoly>) -> Option<Self> {
        let (ip, den) = self.to_int();
        f(&ip).map(|r| Self::from_int_poly(&r, &den))
    }

    /// `self · (1 - q^m)`.
    pub fn mul_one_minus(&self, m: i64) -> Self {
        assert!(m != 0, "1 - q^0 is zero");
        if self.span_ok() && m.abs() <= DENSE_LIMIT {
            self.map_int(|p| p.mul_binomial(m))
        } else {
            self - &self.shift(m)
        }
    }

    /// `self / (1 - q^m)` if the division is exact.
    pub fn div_one_minus(&self, m: i64) -> Option<Self> {
        assert!(m != 0, "1 - q^0 is zero");
        if self.span_ok() && m.abs() <= DENSE_LIMIT {
            self.try_map_int(|p| p.div_binomial(m))
        } else {
            self.div_exact(&Self::one_minus_q_pow(m))
        }
    }

    /// `self · Φ_d(q)`.
    pub fn mul_cyclo(&self, d: u64) -> Self {
        self.map_int(|p| p.mul_cyclo(d))
    }

    /// `self / Φ_d(q)` if the division is exact.
    pub fn div_cyclo(&self, d: u64) -> Option<Self> {
        self.try_map_int(|p| p.div_cyclo(d))
    }

    /// Applies `∏ Φ_d^{e_d}`; negative exponents divide. `None` when the
    /// result is not a Laurent polynomial.
    pub fn apply_cyclos<I: IntoIterator<Item = (u64, i64)>>(&self, factors: I) -> Option<Self> {
        self.try_map_int(|p| p.apply_cyclos(factors))
    }

    /// Division with remainder of Laurent polynomials.
    ///
    /// Both operands are shifted to ordinary polynomials, divided, and the
    /// shifts reattached: with `self = q^a p` and `d = q^b r`, the result is
    /// `(q^(a-b) Q, q^a R)` where `p = Q r + R`, `deg R < deg r`.
    pub fn divrem(&self, d: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let a = self.min_exp().unwrap();
        let b = d.min_exp().unwrap();
        if !(self.span_ok() && d.span_ok()) {
            let (q, r) = sparse_divrem(&self.shift(-a), &d.shift(-b));
            return Ok((q.shift(a - b), r.shift(a)));
        }
        let (p_int, p_den) = self.to_int();
        let (d_int, d_den) = d.to_int();
        let (q, r, scale) = p_int.pseudo_divrem(&d_int);
        // scale·P_int = Q·D_int + R with P = P_int/p_den, D = D_int/d_den
        let q_den = &p_den * &scale;
        let quot = Self::from_int_poly(&q, &q_den).scale(&BigRational::from_integer(d_den));
        let rem = Self::from_int_poly(&r, &q_den);
        Ok((quot.shift(a - b), rem.shift(a)))
    }

    /// `self / d` when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Whether `d` divides `self` (monomials are units).
    pub fn divisible_by(&self, d: &LaurentPoly) -> Result<bool> {
        Ok(self.divrem(d)?.1.is_zero())
    }

    /// Monic gcd with minimal exponent 0. Monomial factors are units and
    /// never appear. `gcd(p, 0)` is `p` normalized.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Err(Error::GcdOfZeros),
            (false, true) => return Ok(self.normalized()),
            (true, false) => return Ok(other.normalized()),
            _ => {}
        }
        if !(self.span_ok() && other.span_ok()) {
            return Err(Error::InvalidArgument(format!("gcd operands exceed the dense span limit {DENSE_LIMIT}")));
        }
        let (a, _) = self.to_int();
        let (b, _) = other.to_int();
        let g = IntPoly::gcd_ordinary(&a, &b);
        Ok(Self::from_int_poly(&g, &BigInt::one()).normalized())
    }

    /// Replaces `q` by `q^m`.
    pub fn substitute_qpow(&self, m: i64) -> Result<LaurentPoly> {
        if m == 0 {
            return Err(Error::ZeroSubstitution);
        }
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect();
        if m < 0 {
            terms.reverse();
        }
        Ok(LaurentPoly { terms })
    }

    /// Exact value at `q = x`.
    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        if x.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::Pole("negative power of q evaluated at 0".into()));
            }
            return Ok(self.coeff(0));
        }
        Ok(self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| acc + c * rat_pow(x, *e)))
    }
}

pub(crate) fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = BigRational::one();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn sparse_mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            *map.entry(ea + eb).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    LaurentPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Long division on ordinary polynomials kept sparse.
fn sparse_divrem(p: &LaurentPoly, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let (dtop, dlead) = d.terms.last().cloned().unwrap();
    let mut rem: BTreeMap<i64, BigRational> = p.terms.iter().cloned().collect();
    let mut quot = Vec::new();
    while let Some((&top, c)) = rem.iter().next_back() {
        if top < dtop {
            break;
        }
        let t = c / &dlead;
        let k = top - dtop;
        for (e, dc) in &d.terms {
            let slot = rem.entry(e + k).or_insert_with(BigRational::zero);
            *slot -= &t * dc;
            if slot.is_zero() {
                rem.remove(&(e + k));
            }
        }
        quot.push((k, t));
    }
    (LaurentPoly::from_terms(quot), LaurentPoly { terms: rem.into_iter().collect() })
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            out.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let (e, ca) = &a.terms[i];
            let cb = &b.terms[j].1;
            let s = if negate_b { ca - cb } else { ca + cb };
            if !s.is_zero() {
                out.push((*e, s));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms: out }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let dense_cost = (self.max_exp().unwrap() - self.min_exp().unwrap() + 1)
            .saturating_mul(rhs.max_exp().unwrap() - rhs.min_exp().unwrap() + 1);
        let sparse_cost = (self.len() * rhs.len()) as i64;
        if self.span_ok() && rhs.span_ok() && dense_cost <= sparse_cost.saturating_mul(16) {
            let (a, da) = self.to_int();
            let (b, db) = rhs.to_int();
            LaurentPoly::from_int_poly(&a.mul(&b), &(da * db))
        } else {
            sparse_mul(self, rhs)
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(LaurentPoly, Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

pub(crate) fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigRational,
    var: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result,
    is_unit_monomial: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if is_unit_monomial {
        return write!(f, "{mag}");
    }
    if !mag.is_one() {
        if mag.is_integer() {
            write!(f, "{mag}*")?;
        } else {
            write!(f, "({mag})*")?;
        }
    }
    var(f)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let e = *e;
            let var = move |f: &mut fmt::Formatter<'_>| match e {
                1 => f.write_str("q"),
                _ => write!(f, "q^{e}"),
            };
            fmt_coeff_term(f, i == 0, c, &var, e == 0)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, rat_int};

    fn p(shift: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(shift, c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(0, &[1, 1]) * &p(0, &[1, -1]), p(0, &[1, 0, -1]));
        let a = LaurentPoly::monomial(rat_int(1), -2);
        let b = LaurentPoly::monomial(rat_int(1), 4);
        assert_eq!(&a * &b, LaurentPoly::monomial(rat_int(1), 2));
        assert_eq!(p(0, &[1, -1]).pow(0), LaurentPoly::one());
        assert!((&p(0, &[1, 2]) - &p(0, &[1, 2])).is_zero());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = p(0, &[-1, 0, 1]).divrem(&p(0, &[-1, 1])).unwrap();
        assert_eq!((q, r), (p(0, &[1, 1]), LaurentPoly::zero()));
        let (q, r) = p(0, &[-1, 0, 0, 1]).divrem(&p(0, &[-1, 1])).unwrap();
        assert_eq!((q, r), (p(0, &[1, 1, 1]), LaurentPoly::zero()));
        let (q, r) = p(0, &[1, 0, 1]).divrem(&p(0, &[1, 1])).unwrap();
        assert_eq!((q, r), (p(0, &[-1, 1]), LaurentPoly::from_int(2)));
        assert_eq!(p(0, &[1]).divrem(&LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn divrem_non_monic_divisor() {
        // (q^2 + 1) = (1/2 q - 1/4)(2q + 1) + 5/4
        let (q, r) = p(0, &[1, 0, 1]).divrem(&p(0, &[1, 2])).unwrap();
        assert_eq!(q, LaurentPoly::from_terms([(1, rat(1, 2)), (0, rat(-1, 4))]));
        assert_eq!(r, LaurentPoly::constant(rat(5, 4)));
    }

    #[test]
    fn divrem_laurent_shift() {
        let num = p(-3, &[1, 0, 1]); // q^-3 + q^-1
        let den = p(-1, &[1, 1]); // q^-1 + 1
        let (q, r) = num.divrem(&den).unwrap();
        assert_eq!(&(&q * &den) + &r, num);
        assert_eq!(r, LaurentPoly::monomial(rat_int(2), -3));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(0, &[-1, 0, 1]).gcd(&p(0, &[-1, 0, 0, 1])).unwrap(), p(0, &[-1, 1]));
        // gcd(1 - q^3, 1 + q^5) = 1
        assert!(p(0, &[1, 0, 0, -1]).gcd(&p(0, &[1, 0, 0, 0, 0, 1])).unwrap().is_one());
        let x = p(-2, &[3, 0, -6, 3]);
        assert_eq!(x.gcd(&x).unwrap(), x.normalized());
        assert_eq!(x.gcd(&LaurentPoly::zero()).unwrap(), x.normalized());
        assert_eq!(LaurentPoly::zero().gcd(&LaurentPoly::zero()), Err(Error::GcdOfZeros));
        // monomials are units
        assert!(LaurentPoly::monomial(rat_int(5), 7).gcd(&p(0, &[1, 1])).unwrap().is_one());
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(p(0, &[1, 1]).substitute_qpow(2).unwrap(), p(0, &[1, 0, 1]));
        assert_eq!(p(0, &[1, 1, 1]).substitute_qpow(2).unwrap(), p(0, &[1, 0, 1, 0, 1]));
        assert_eq!(p(-1, &[-1, 1]).substitute_qpow(-1).unwrap(), p(0, &[1, -1]));
        assert_eq!(p(0, &[1]).substitute_qpow(0), Err(Error::ZeroSubstitution));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(p(0, &[1, 1, 1]).evaluate(&rat_int(1)).unwrap(), rat_int(3));
        assert_eq!(p(-2, &[-1, 0, 1]).evaluate(&rat_int(2)).unwrap(), rat(3, 4));
        let phi3_q2 = p(0, &[1, 1, 1]).substitute_qpow(2).unwrap();
        assert_eq!(phi3_q2.evaluate(&rat_int(1)).unwrap(), rat_int(3));
        assert!(matches!(p(-1, &[1]).evaluate(&rat_int(0)), Err(Error::Pole(_))));
        assert_eq!(p(0, &[7, 1]).evaluate(&rat_int(0)).unwrap(), rat_int(7));
    }

    #[test]
    fn wide_sparse_polys_stay_sparse() {
        let big = LaurentPoly::from_terms([(-(1 << 40), rat_int(1)), (1 << 40, rat_int(1))]);
        let sq = &big * &big;
        assert_eq!(sq.len(), 3);
        let (q, r) = sq.divrem(&big).unwrap();
        assert_eq!(q, big.clone());
        assert!(r.is_zero());
        assert_eq!(big.mul_one_minus(1 << 41).div_one_minus(1 << 41), Some(big));
    }

    #[test]
    fn display() {
        assert_eq!(alloc::format!("{}", p(-1, &[2, 0, -1, 1])), "q^2 - q + 2*q^-1");
        assert_eq!(alloc::format!("{}", LaurentPoly::zero()), "0");
    }
}
