//! Products of cyclotomic and Pochhammer atoms with signed multiplicities.
//!
//! Every factor that appears in the q-series of this crate is a monomial
//! times a product of `Φ_d(q)`, `(1 - a q^s)` and `(1 - q^s / a)` raised to
//! integer powers. Keeping such products symbolic makes multiplication and
//! division exact bookkeeping; only the final conversion into a
//! [`RationalFunction`] or [`BiRationalFunction`] expands anything.

use alloc::collections::BTreeMap;

use num_traits::{One, Zero};

use super::birf::{AtomDen, BiRationalFunction};
use super::bivariate::BiLaurentPoly;
use super::cyclo::divisors;
use super::laurent::LaurentPoly;
use super::rational::BigRational;
use super::rf::{CycloDen, RationalFunction};
use crate::{Error, Result};

/// `coeff · q^q_shift · a^a_shift · ∏ Φ_d(q)^{e_d} · ∏ (1 - a q^s)^{e_s} · ∏ (1 - q^s/a)^{e_s}`.
///
/// Never zero. Constructors that could produce zero return `Option`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    coeff: BigRational,
    q_shift: i64,
    a_shift: i64,
    cyclo: BTreeMap<u64, i64>,
    aq: BTreeMap<i64, i64>,
    qa: BTreeMap<i64, i64>,
}

fn bump<K: Ord + Copy>(map: &mut BTreeMap<K, i64>, k: K, by: i64) {
    let e = map.entry(k).or_insert(0);
    *e += by;
    if *e == 0 {
        map.remove(&k);
    }
}

fn scaled<K: Ord + Copy>(map: &BTreeMap<K, i64>, by: i64) -> BTreeMap<K, i64> {
    map.iter().map(|(k, v)| (*k, v * by)).collect()
}

impl Factored {
    pub fn one() -> Self {
        Factored {
            coeff: BigRational::one(),
            q_shift: 0,
            a_shift: 0,
            cyclo: BTreeMap::new(),
            aq: BTreeMap::new(),
            qa: BTreeMap::new(),
        }
    }

    /// `c · q^e`; `None` for `c == 0`.
    pub fn monomial(c: BigRational, e: i64) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        Some(Factored { coeff: c, q_shift: e, ..Self::one() })
    }

    pub fn constant(c: BigRational) -> Option<Self> {
        Self::monomial(c, 0)
    }

    /// `a^i`.
    pub fn a_power(i: i64) -> Self {
        Factored { a_shift: i, ..Self::one() }
    }

    /// `Φ_d(q)`.
    pub fn cyclotomic(d: u64) -> Self {
        assert!(d > 0);
        let mut f = Self::one();
        f.cyclo.insert(d, 1);
        f
    }

    /// `1 - q^m`; `None` for `m == 0`.
    pub fn one_minus(m: i64) -> Option<Self> {
        if m == 0 {
            return None;
        }
        let mut f = Self::one();
        // q^n - 1 = ∏_{d|n} Φ_d
        for d in divisors(m.unsigned_abs()) {
            f.cyclo.insert(d, 1);
        }
        if m > 0 {
            f.coeff = -f.coeff;
        } else {
            // 1 - q^{-n} = q^{-n}(q^n - 1)
            f.q_shift = m;
        }
        Some(f)
    }

    /// `1 + q^m`; `None` for `m == 0` is never needed since `1 + 1 = 2`.
    pub fn one_plus(m: i64) -> Self {
        if m == 0 {
            return Self::constant(BigRational::from_integer(2.into())).unwrap();
        }
        Self::one_minus(2 * m).unwrap() / Self::one_minus(m).unwrap()
    }

    /// `(1 - a q^s)`.
    pub fn aq_atom(s: i64) -> Self {
        let mut f = Self::one();
        f.aq.insert(s, 1);
        f
    }

    /// `(1 - q^s / a)`.
    pub fn qa_atom(s: i64) -> Self {
        let mut f = Self::one();
        f.qa.insert(s, 1);
        f
    }

    /// `∏_{j<k} (1 - q^{s + e j})`; `None` when a factor is `1 - q^0`.
    pub fn poch(s: i64, e: i64, k: u64) -> Option<Self> {
        let mut f = Self::one();
        for j in 0..k as i64 {
            f = f * Self::one_minus(s + e * j)?;
        }
        Some(f)
    }

    /// `∏_{j<k} (1 - a^{sign} q^{s + e j})`.
    pub fn poch_param(sign: i8, s: i64, e: i64, k: u64) -> Self {
        let mut f = Self::one();
        for j in 0..k as i64 {
            if sign > 0 {
                bump(&mut f.aq, s + e * j, 1);
            } else {
                bump(&mut f.qa, s + e * j, 1);
            }
        }
        f
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn q_shift(&self) -> i64 {
        self.q_shift
    }

    pub fn cyclo(&self) -> &BTreeMap<u64, i64> {
        &self.cyclo
    }

    pub fn is_univariate(&self) -> bool {
        self.a_shift == 0 && self.aq.is_empty() && self.qa.is_empty()
    }

    pub fn inv(&self) -> Self {
        Factored {
            coeff: self.coeff.recip(),
            q_shift: -self.q_shift,
            a_shift: -self.a_shift,
            cyclo: scaled(&self.cyclo, -1),
            aq: scaled(&self.aq, -1),
            qa: scaled(&self.qa, -1),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let k_abs = k.unsigned_abs() as i64;
        let mut coeff = BigRational::one();
        for _ in 0..k_abs {
            coeff *= &base.coeff;
        }
        if k == 0 {
            return Self::one();
        }
        Factored {
            coeff,
            q_shift: base.q_shift * k_abs,
            a_shift: base.a_shift * k_abs,
            cyclo: scaled(&base.cyclo, k_abs),
            aq: scaled(&base.aq, k_abs),
            qa: scaled(&base.qa, k_abs),
        }
    }

    pub fn scale(mut self, c: &BigRational) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        self.coeff *= c;
        Some(self)
    }

    fn split_univariate(&self) -> (LaurentPoly, CycloDen) {
        let num = LaurentPoly::monomial(self.coeff.clone(), self.q_shift);
        let pos = self.cyclo.iter().filter(|(_, e)| **e > 0).map(|(d, e)| (*d, *e));
        let num = num.apply_cyclos(pos).expect("multiplication is exact");
        let den = self.cyclo.iter().filter(|(_, e)| **e < 0).map(|(d, e)| (*d, (-e) as u32)).collect();
        (num, CycloDen::from_cyclo(den))
    }

    /// Expands into a reduced univariate rational function.
    pub fn to_rf(&self) -> Result<RationalFunction> {
        if !self.is_univariate() {
            return Err(Error::NotUnivariate);
        }
        let (num, den) = self.split_univariate();
        // distinct irreducible factors on each side: already in lowest terms
        Ok(RationalFunction::from_reduced_parts(num, den))
    }

    /// Expands into a bivariate rational function with an atom denominator.
    pub fn to_birf(&self) -> BiRationalFunction {
        let mut num = BiLaurentPoly::monomial(self.coeff.clone(), self.a_shift, self.q_shift);
        let pos = self.cyclo.iter().filter(|(_, e)| **e > 0).map(|(d, e)| (*d, *e));
        num = num.apply_cyclos(pos).expect("multiplication is exact");
        let mut den = AtomDen::one();
        for (&s, &e) in &self.aq {
            if e > 0 {
                for _ in 0..e {
                    num = num.mul_aq(s);
                }
            } else {
                den.aq.insert(s, (-e) as u32);
            }
        }
        for (&s, &e) in &self.qa {
            if e > 0 {
                for _ in 0..e {
                    num = num.mul_qa(s);
                }
            } else {
                den.qa.insert(s, (-e) as u32);
            }
        }
        for (&d, &e) in &self.cyclo {
            if e < 0 {
                den.cyclo.insert(d, (-e) as u32);
            }
        }
        BiRationalFunction::from_parts(num, den)
    }

    /// Substitutes `a = q^e`. A vanishing numerator atom gives zero; a
    /// vanishing denominator atom is a pole.
    pub fn specialize_a(&self, e: i64) -> Result<RationalFunction> {
        let mut out = Factored {
            coeff: self.coeff.clone(),
            q_shift: self.q_shift + e * self.a_shift,
            a_shift: 0,
            cyclo: self.cyclo.clone(),
            aq: BTreeMap::new(),
            qa: BTreeMap::new(),
        };
        let atoms = self.aq.iter().map(|(s, m)| (e + s, *m)).chain(self.qa.iter().map(|(s, m)| (s - e, *m)));
        for (exp, mult) in atoms {
            match Self::one_minus(exp) {
                Some(f) => out = out * f.pow(mult),
                None if mult > 0 => return Ok(RationalFunction::zero()),
                None => return Err(Error::Pole(alloc::format!("atom vanishes at a = q^{e}"))),
            }
        }
        out.to_rf()
    }
}

impl core::ops::Mul for Factored {
    type Output = Factored;
    fn mul(mut self, rhs: Factored) -> Factored {
        self.coeff *= rhs.coeff;
        self.q_shift += rhs.q_shift;
        self.a_shift += rhs.a_shift;
        for (d, e) in rhs.cyclo {
            bump(&mut self.cyclo, d, e);
        }
        for (s, e) in rhs.aq {
            bump(&mut self.aq, s, e);
        }
        for (s, e) in rhs.qa {
            bump(&mut self.qa, s, e);
        }
        self
    }
}

impl core::ops::Div for Factored {
    type Output = Factored;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Factored) -> Factored {
        self * rhs.inv()
    }
}
