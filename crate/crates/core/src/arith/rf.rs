use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::laurent::{forward_owned, LaurentPoly};
use super::rational::BigRational;
use crate::{Error, Result};

/// A monic denominator kept as `∏ Φ_d(q)^{m_d} · rest(q)`.
///
/// `rest` is monic with minimal exponent 0; it is `1` for every denominator
/// built from q-shifted factorials and only becomes nontrivial when a caller
/// divides by an arbitrary polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloDen {
    cyclo: BTreeMap<u64, u32>,
    rest: LaurentPoly,
}

impl CycloDen {
    pub fn one() -> Self {
        CycloDen { cyclo: BTreeMap::new(), rest: LaurentPoly::one() }
    }

    pub(crate) fn from_cyclo(cyclo: BTreeMap<u64, u32>) -> Self {
        CycloDen { cyclo, rest: LaurentPoly::one() }
    }

    pub fn cyclo(&self) -> &BTreeMap<u64, u32> {
        &self.cyclo
    }

    pub fn rest(&self) -> &LaurentPoly {
        &self.rest
    }

    pub fn is_one(&self) -> bool {
        self.cyclo.is_empty() && self.rest.is_one()
    }

    pub fn expand(&self) -> LaurentPoly {
        self.rest.apply_cyclos(self.cyclo_iter()).unwrap()
    }

    fn cyclo_iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.cyclo.iter().map(|(d, m)| (*d, *m as i64))
    }

    /// Degree of the expanded denominator.
    pub fn degree(&self) -> i64 {
        let phi = |d: u64| (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count() as i64;
        self.cyclo.iter().map(|(d, m)| phi(*d) * *m as i64).sum::<i64>() + self.rest.max_exp().unwrap_or(0)
    }
}

/// A univariate rational function in lowest terms.
///
/// The denominator is monic with minimal exponent 0 (monomials and constants
/// live in the numerator) and `gcd(num, den) = 1`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: CycloDen,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: CycloDen::one() }
    }

    /// `num / den` reduced to lowest terms with a normalized denominator.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, shift, rest) = den.unit_normal();
        let num = num.shift(-shift).scale(&unit.recip());
        Ok(Self::reduce(num, CycloDen { cyclo: BTreeMap::new(), rest }))
    }

    pub(crate) fn from_reduced_parts(num: LaurentPoly, den: CycloDen) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        RationalFunction { num, den }
    }

    fn reduce(num: LaurentPoly, mut den: CycloDen) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut ip, scale) = num.to_int();
        let ds: alloc::vec::Vec<u64> = den.cyclo.keys().copied().collect();
        for d in ds {
            let m = den.cyclo.get_mut(&d).unwrap();
            while *m > 0 {
                match ip.div_cyclo(d) {
                    Some(x) => {
                        ip = x;
                        *m -= 1;
                    }
                    None => break,
                }
            }
            if *m == 0 {
                den.cyclo.remove(&d);
            }
        }
        let mut num = LaurentPoly::from_int_poly(&ip, &scale);
        if !den.rest.is_one() {
            let g = num.gcd(&den.rest).expect("operands nonzero");
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den.rest = den.rest.div_exact(&g).expect("gcd divides denominator");
            }
        }
        RationalFunction { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// The expanded (monic, minimal exponent 0) denominator.
    pub fn den(&self) -> LaurentPoly {
        self.den.expand()
    }

    pub fn den_factors(&self) -> &CycloDen {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a Laurent polynomial, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `num · (lcm / den)` as an integer polynomial with its scale.
    fn lift(&self, lcm: &CycloDen) -> LaurentPoly {
        let extra = lcm.cyclo.iter().map(|(d, m)| {
            let have = self.den.cyclo.get(d).copied().unwrap_or(0);
            (*d, *m as i64 - have as i64)
        });
        let mut p = self.num.apply_cyclos(extra).expect("lcm is a multiple");
        if !lcm.rest.is_one() {
            let cof = lcm.rest.div_exact(&self.den.rest).expect("lcm is a multiple");
            p = &p * &cof;
        }
        p
    }

    fn lcm_den(a: &CycloDen, b: &CycloDen) -> CycloDen {
        let mut cyclo = a.cyclo.clone();
        for (d, m) in &b.cyclo {
            let e = cyclo.entry(*d).or_insert(0);
            *e = (*e).max(*m);
        }
        let rest = if a.rest.is_one() {
            b.rest.clone()
        } else if b.rest.is_one() || a.rest == b.rest {
            a.rest.clone()
        } else {
            let g = a.rest.gcd(&b.rest).unwrap();
            (&a.rest * &b.rest).div_exact(&g).unwrap()
        };
        CycloDen { cyclo, rest }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, shift, rest) = self.num.unit_normal();
        let num = self.den.expand().shift(-shift).scale(&unit.recip());
        // coprime already; only the roles swap
        Ok(RationalFunction { num, den: CycloDen { cyclo: BTreeMap::new(), rest } })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }.normalize_zero()
    }

    fn normalize_zero(self) -> Self {
        if self.num.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn evaluate(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den().evaluate(x)?;
        if d.is_zero() {
            return Err(Error::Pole("denominator vanishes".into()));
        }
        Ok(self.num.evaluate(x)? / d)
    }

    /// Replaces `q` by `q^m`.
    pub fn substitute_qpow(&self, m: i64) -> Result<Self> {
        Self::new(self.num.substitute_qpow(m)?, self.den().substitute_qpow(m)?)
    }

    /// `self · den` cleared against another: returns `num_a · den_b` and
    /// `num_b · den_a` built with the factored denominators.
    pub fn cross_numerators(&self, other: &Self) -> (LaurentPoly, LaurentPoly) {
        let lcm = Self::lcm_den(&self.den, &other.den);
        (self.lift(&lcm), other.lift(&lcm))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let (a, b) = self.cross_numerators(other);
        a == b
    }
}

impl Eq for RationalFunction {}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lcm = RationalFunction::lcm_den(&self.den, &rhs.den);
        let num = &self.lift(&lcm) + &rhs.lift(&lcm);
        RationalFunction::reduce(num, lcm)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let mut cyclo = self.den.cyclo.clone();
        for (d, m) in &rhs.den.cyclo {
            *cyclo.entry(*d).or_insert(0) += m;
        }
        let rest = &self.den.rest * &rhs.den.rest;
        RationalFunction::reduce(&self.num * &rhs.num, CycloDen { cyclo, rest })
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

forward_owned!(RationalFunction, Add add, Sub sub, Mul mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den())
        }
    }
}

impl RationalFunction {
    /// Short human-readable size summary: numerator and denominator spans.
    pub fn shape(&self) -> alloc::string::String {
        let span = |p: &LaurentPoly| match p.degree_span() {
            Some((lo, hi)) => alloc::format!("[{lo},{hi}]"),
            None => "zero".into(),
        };
        alloc::format!("num {} / den deg {}", span(&self.num), self.den.degree())
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_int;

    fn p(shift: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(shift, c)
    }

    #[test]
    fn reduce_examples() {
        let r = RationalFunction::new(p(0, &[-1, 0, 1]), p(0, &[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(0, &[1, 1]));
        assert!(r.is_polynomial());
        let z = RationalFunction::new(LaurentPoly::zero(), p(0, &[1, 1])).unwrap();
        assert!(z.is_zero() && z.is_polynomial());
        assert_eq!(RationalFunction::new(p(0, &[1]), LaurentPoly::zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn generic_quartic_ratio_reduces() {
        // (1 - q^-2)^4 / (1 - q^4)^4 with a generic (unfactored) denominator
        let num = p(-2, &[-1, 0, 1]).pow(4);
        let den = p(0, &[1, 0, 0, 0, -1]).pow(4);
        let r = RationalFunction::new(num.clone(), den.clone()).unwrap();
        assert_eq!(r.den(), p(0, &[1, 0, 1]).pow(4));
        assert_eq!(r.num(), &LaurentPoly::monomial(rat_int(1), -8));
        assert_eq!(&(r.num() * &den), &(&num * &r.den()));
        assert!(r.num().gcd(&r.den()).unwrap().is_one());
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p(0, &[1]), p(0, &[-1, 1])).unwrap();
        let b = RationalFunction::new(p(0, &[1]), p(0, &[1, 1])).unwrap();
        // 1/(q-1) + 1/(q+1) = 2q/(q^2-1)
        let s = &a + &b;
        assert_eq!(s, RationalFunction::new(p(1, &[2]), p(0, &[-1, 0, 1])).unwrap());
        assert_eq!(&s - &b, a);
        assert_eq!(&a * &a.inv().unwrap(), RationalFunction::one());
        assert_eq!(a.pow(-2).unwrap(), RationalFunction::from_poly(p(0, &[-1, 1]).pow(2)));
        assert_eq!(a.evaluate(&rat_int(3)).unwrap(), crate::arith::rat(1, 2));
        assert!(a.evaluate(&rat_int(1)).is_err());
    }

    #[test]
    fn factored_and_generic_routes_agree() {
        use crate::arith::Factored;
        let f = (Factored::one_minus(6).unwrap() / Factored::one_minus(2).unwrap().pow(2)).to_rf().unwrap();
        let g = RationalFunction::new(p(0, &[1, 0, 0, 0, 0, 0, -1]), p(0, &[1, 0, -1]).pow(2)).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.num(), g.num());
        assert_eq!(f.den(), g.den());
    }
}
