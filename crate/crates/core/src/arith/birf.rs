use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::bivariate::BiLaurentPoly;
use super::factored::Factored;
use super::laurent::forward_owned;
use super::rf::RationalFunction;
use crate::Result;

/// Denominator of a bivariate rational function as a multiset of atoms:
/// `Φ_d(q)`, `(1 - a q^s)` and `(1 - q^s / a)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomDen {
    pub cyclo: BTreeMap<u64, u32>,
    pub aq: BTreeMap<i64, u32>,
    pub qa: BTreeMap<i64, u32>,
}

impl AtomDen {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.cyclo.is_empty() && self.aq.is_empty() && self.qa.is_empty()
    }

    fn lcm(&self, other: &Self) -> Self {
        fn max_merge<K: Ord + Copy>(a: &BTreeMap<K, u32>, b: &BTreeMap<K, u32>) -> BTreeMap<K, u32> {
            let mut out = a.clone();
            for (k, m) in b {
                let e = out.entry(*k).or_insert(0);
                *e = (*e).max(*m);
            }
            out
        }
        AtomDen {
            cyclo: max_merge(&self.cyclo, &other.cyclo),
            aq: max_merge(&self.aq, &other.aq),
            qa: max_merge(&self.qa, &other.qa),
        }
    }

    fn product(&self, other: &Self) -> Self {
        fn add_merge<K: Ord + Copy>(a: &BTreeMap<K, u32>, b: &BTreeMap<K, u32>) -> BTreeMap<K, u32> {
            let mut out = a.clone();
            for (k, m) in b {
                *out.entry(*k).or_insert(0) += m;
            }
            out
        }
        AtomDen {
            cyclo: add_merge(&self.cyclo, &other.cyclo),
            aq: add_merge(&self.aq, &other.aq),
            qa: add_merge(&self.qa, &other.qa),
        }
    }

    /// Multiplies `p` by the atoms of `self` not already in `have`.
    fn apply_excess(&self, have: &Self, p: &BiLaurentPoly) -> BiLaurentPoly {
        fn get<K: Ord>(m: &BTreeMap<K, u32>, k: &K) -> u32 {
            m.get(k).copied().unwrap_or(0)
        }
        let extra = self.cyclo.iter().map(|(d, m)| (*d, (*m - get(&have.cyclo, d)) as i64));
        let mut out = p.apply_cyclos(extra).unwrap();
        for (s, m) in &self.aq {
            for _ in 0..m - get(&have.aq, s) {
                out = out.mul_aq(*s);
            }
        }
        for (s, m) in &self.qa {
            for _ in 0..m - get(&have.qa, s) {
                out = out.mul_qa(*s);
            }
        }
        out
    }

    /// The expanded denominator polynomial.
    pub fn expand(&self) -> BiLaurentPoly {
        self.apply_excess(&AtomDen::one(), &BiLaurentPoly::one())
    }

    fn as_factored(&self) -> Factored {
        let mut f = Factored::one();
        for (d, m) in &self.cyclo {
            f = f * Factored::cyclotomic(*d).pow(*m as i64);
        }
        for (s, m) in &self.aq {
            f = f * Factored::aq_atom(*s).pow(*m as i64);
        }
        for (s, m) in &self.qa {
            f = f * Factored::qa_atom(*s).pow(*m as i64);
        }
        f
    }
}

/// A bivariate rational function `num / den` with an atom denominator.
///
/// No bivariate gcd is ever taken. Cancellation happens only atom by atom,
/// on request.
#[derive(Clone, Debug)]
pub struct BiRationalFunction {
    num: BiLaurentPoly,
    den: AtomDen,
}

impl BiRationalFunction {
    pub fn zero() -> Self {
        Self::from_poly(BiLaurentPoly::zero())
    }

    pub fn from_poly(p: BiLaurentPoly) -> Self {
        BiRationalFunction { num: p, den: AtomDen::one() }
    }

    pub fn from_parts(num: BiLaurentPoly, den: AtomDen) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        BiRationalFunction { num, den }
    }

    pub fn from_rf(rf: &RationalFunction) -> Self {
        assert!(rf.den_factors().rest().is_one(), "denominator must be cyclotomic");
        let den = AtomDen { cyclo: rf.den_factors().cyclo().clone(), ..AtomDen::one() };
        Self::from_parts(BiLaurentPoly::from_q(rf.num().clone()), den)
    }

    pub fn num(&self) -> &BiLaurentPoly {
        &self.num
    }

    pub fn den_atoms(&self) -> &AtomDen {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerators of `self` and `other` over the atom lcm of their
    /// denominators, together with that lcm.
    pub fn over_common_den(&self, other: &Self) -> (BiLaurentPoly, BiLaurentPoly, AtomDen) {
        let lcm = self.den.lcm(&other.den);
        (lcm.apply_excess(&self.den, &self.num), lcm.apply_excess(&other.den, &other.num), lcm)
    }

    /// Cancels as many copies of `Φ_d(q)` as divide the numerator.
    /// Returns the number cancelled.
    pub fn cancel_cyclo(&mut self, d: u64) -> u32 {
        let mut n = 0;
        while let Some(m) = self.den.cyclo.get(&d).copied().filter(|m| *m > 0) {
            match self.num.apply_cyclos([(d, -1)]) {
                Some(x) => {
                    self.num = x;
                    n += 1;
                    if m == 1 {
                        self.den.cyclo.remove(&d);
                    } else {
                        self.den.cyclo.insert(d, m - 1);
                    }
                }
                None => break,
            }
        }
        n
    }

    /// Substitutes `a = q^e`.
    pub fn specialize_a(&self, e: i64) -> Result<RationalFunction> {
        let num = RationalFunction::from_poly(self.num.specialize_a(e));
        if num.is_zero() {
            return Ok(num);
        }
        let den = self.den.as_factored().specialize_a(e)?;
        num.checked_div(&den)
    }
}

impl PartialEq for BiRationalFunction {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.over_common_den(other);
        a == b
    }
}

impl Eq for BiRationalFunction {}

impl Add for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn add(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (a, b, den) = self.over_common_den(rhs);
        BiRationalFunction::from_parts(&a + &b, den)
    }
}

impl Sub for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn sub(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn mul(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        BiRationalFunction::from_parts(&self.num * &rhs.num, self.den.product(&rhs.den))
    }
}

impl Neg for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn neg(self) -> BiRationalFunction {
        BiRationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

forward_owned!(BiRationalFunction, Add add, Sub sub, Mul mul);

impl fmt::Display for AtomDen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let r = if first { Ok(()) } else { f.write_str("*") };
            first = false;
            r
        };
        for (d, m) in &self.cyclo {
            sep(f)?;
            write!(f, "Phi{d}(q)^{m}")?;
        }
        for (s, m) in &self.aq {
            sep(f)?;
            write!(f, "(1-a*q^{s})^{m}")?;
        }
        for (s, m) in &self.qa {
            sep(f)?;
            write!(f, "(1-q^{s}/a)^{m}")?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for BiRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
