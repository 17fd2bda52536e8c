use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{forward_owned, LaurentPoly};
use super::rational::BigRational;

/// A sparse Laurent polynomial in `(a, q)`.
///
/// Stored as a polynomial in `a` whose coefficients are [`LaurentPoly`]s in
/// `q`, ordered by the exponent of `a`, with no zero coefficient. Term-wise
/// this is the sparse map `(i, j) -> c` for `c a^i q^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiLaurentPoly {
    by_a: Vec<(i64, LaurentPoly)>,
}

impl BiLaurentPoly {
    pub fn zero() -> Self {
        BiLaurentPoly { by_a: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_q(LaurentPoly::one())
    }

    /// The indeterminate `a`.
    pub fn a() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    /// `c a^i q^j`.
    pub fn monomial(c: BigRational, i: i64, j: i64) -> Self {
        Self::from_a_coeffs([(i, LaurentPoly::monomial(c, j))])
    }

    pub fn from_q(p: LaurentPoly) -> Self {
        Self::from_a_coeffs([(0, p)])
    }

    /// Builds from `(exponent of a, q-coefficient)` pairs, merging duplicates.
    pub fn from_a_coeffs<I: IntoIterator<Item = (i64, LaurentPoly)>>(parts: I) -> Self {
        let mut map: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (i, p) in parts {
            let slot = map.entry(i).or_default();
            *slot = &*slot + &p;
        }
        BiLaurentPoly { by_a: map.into_iter().filter(|(_, p)| !p.is_zero()).collect() }
    }

    /// Builds from `((i, j), c)` terms meaning `c a^i q^j`.
    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), BigRational)>>(terms: I) -> Self {
        let mut map: BTreeMap<i64, Vec<(i64, BigRational)>> = BTreeMap::new();
        for ((i, j), c) in terms {
            map.entry(i).or_default().push((j, c));
        }
        Self::from_a_coeffs(map.into_iter().map(|(i, t)| (i, LaurentPoly::from_terms(t))))
    }

    /// All terms `((i, j), c)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigRational)> + '_ {
        self.by_a.iter().flat_map(|(i, p)| p.terms().iter().map(move |(j, c)| ((*i, *j), c)))
    }

    /// `(exponent of a, q-coefficient)` pairs.
    pub fn a_coeffs(&self) -> &[(i64, LaurentPoly)] {
        &self.by_a
    }

    pub fn coeff_of_a(&self, i: i64) -> LaurentPoly {
        match self.by_a.binary_search_by_key(&i, |(e, _)| *e) {
            Ok(k) => self.by_a[k].1.clone(),
            Err(_) => LaurentPoly::zero(),
        }
    }

    pub fn a_span(&self) -> Option<(i64, i64)> {
        Some((self.by_a.first()?.0, self.by_a.last()?.0))
    }

    pub fn is_zero(&self) -> bool {
        self.by_a.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.by_a.iter().map(|(_, p)| p.len()).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by `a^i q^j`.
    pub fn shift(&self, i: i64, j: i64) -> Self {
        BiLaurentPoly { by_a: self.by_a.iter().map(|(e, p)| (e + i, p.shift(j))).collect() }
    }

    /// Applies `f` to every q-coefficient.
    pub fn map_q(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::from_a_coeffs(self.by_a.iter().map(|(i, p)| (*i, f(p))))
    }

    pub fn mul_q(&self, p: &LaurentPoly) -> Self {
        self.map_q(|c| c * p)
    }

    /// Applies `∏ Φ_d(q)^{e_d}` coefficientwise; `None` if some division is
    /// inexact.
    pub fn apply_cyclos<I: IntoIterator<Item = (u64, i64)>>(&self, factors: I) -> Option<Self> {
        let factors: Vec<_> = factors.into_iter().collect();
        let mut out = Vec::with_capacity(self.by_a.len());
        for (i, p) in &self.by_a {
            out.push((*i, p.apply_cyclos(factors.iter().copied())?));
        }
        Some(BiLaurentPoly { by_a: out })
    }

    /// `self · (1 - a q^s)`.
    pub fn mul_aq(&self, s: i64) -> Self {
        self - &self.shift(1, s)
    }

    /// `self · (1 - q^s / a)`.
    pub fn mul_qa(&self, s: i64) -> Self {
        self - &self.shift(-1, s)
    }

    /// `self / (1 - a q^s)` when exact.
    pub fn div_aq(&self, s: i64) -> Option<Self> {
        // Q_i = N_i + q^s Q_{i-1}, ascending in i; the top of N must equal -q^s Q_top.
        let (lo, hi) = match self.a_span() {
            Some(x) => x,
            None => return Some(Self::zero()),
        };
        let mut q: Vec<(i64, LaurentPoly)> = Vec::new();
        let mut prev = LaurentPoly::zero();
        for i in lo..hi {
            let c = &self.coeff_of_a(i) + &prev.shift(s);
            prev = c.clone();
            q.push((i, c));
        }
        (self.coeff_of_a(hi) == -prev.shift(s)).then(|| Self::from_a_coeffs(q))
    }

    /// `self / (1 - q^s / a)` when exact.
    pub fn div_qa(&self, s: i64) -> Option<Self> {
        // Q_i = N_i + q^s Q_{i+1}, descending in i.
        let (lo, hi) = match self.a_span() {
            Some(x) => x,
            None => return Some(Self::zero()),
        };
        let mut q: Vec<(i64, LaurentPoly)> = Vec::new();
        let mut prev = LaurentPoly::zero();
        for i in (lo + 1..=hi).rev() {
            let c = &self.coeff_of_a(i) + &prev.shift(s);
            prev = c.clone();
            q.push((i, c));
        }
        (self.coeff_of_a(lo) == -prev.shift(s)).then(|| Self::from_a_coeffs(q))
    }

    /// Substitutes `a = q^e`: term `(i, j)` lands on `q^(e·i + j)`.
    pub fn specialize_a(&self, e: i64) -> LaurentPoly {
        let mut terms = Vec::with_capacity(self.num_terms());
        for (i, p) in &self.by_a {
            terms.extend(p.terms().iter().map(|(j, c)| (e * i + j, c.clone())));
        }
        LaurentPoly::from_terms(terms)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_q(|p| p.scale(c))
    }
}

impl From<LaurentPoly> for BiLaurentPoly {
    fn from(p: LaurentPoly) -> Self {
        Self::from_q(p)
    }
}

fn combine(a: &BiLaurentPoly, b: &BiLaurentPoly, negate: bool) -> BiLaurentPoly {
    let mut map: BTreeMap<i64, LaurentPoly> = a.by_a.iter().cloned().collect();
    for (i, p) in &b.by_a {
        let slot = map.entry(*i).or_default();
        *slot = if negate { &*slot - p } else { &*slot + p };
    }
    BiLaurentPoly { by_a: map.into_iter().filter(|(_, p)| !p.is_zero()).collect() }
}

impl Add for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn add(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        combine(self, rhs, false)
    }
}

impl Sub for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn sub(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        combine(self, rhs, true)
    }
}

impl Mul for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn mul(self, rhs: &BiLaurentPoly) -> BiLaurentPoly {
        let mut map: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (i, p) in &self.by_a {
            for (j, r) in &rhs.by_a {
                let slot = map.entry(i + j).or_default();
                *slot = &*slot + &(p * r);
            }
        }
        BiLaurentPoly { by_a: map.into_iter().filter(|(_, p)| !p.is_zero()).collect() }
    }
}

impl Neg for &BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn neg(self) -> BiLaurentPoly {
        BiLaurentPoly { by_a: self.by_a.iter().map(|(i, p)| (*i, -p)).collect() }
    }
}

impl Neg for BiLaurentPoly {
    type Output = BiLaurentPoly;
    fn neg(self) -> BiLaurentPoly {
        -&self
    }
}

forward_owned!(BiLaurentPoly, Add add, Sub sub, Mul mul);

impl fmt::Display for BiLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, p)) in self.by_a.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "({p})")?,
                1 => write!(f, "({p})*a")?,
                _ => write!(f, "({p})*a^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_int;

    fn atom_aq(s: i64) -> BiLaurentPoly {
        BiLaurentPoly::one().mul_aq(s)
    }

    fn atom_qa(s: i64) -> BiLaurentPoly {
        BiLaurentPoly::one().mul_qa(s)
    }

    #[test]
    fn product_of_param_atoms() {
        // (1 - a q^-2)(1 - q^-2/a) = 1 - q^-2 (a + 1/a) + q^-4
        let prod = &atom_aq(-2) * &atom_qa(-2);
        let expect = BiLaurentPoly::from_terms([
            ((0, 0), rat_int(1)),
            ((1, -2), rat_int(-1)),
            ((-1, -2), rat_int(-1)),
            ((0, -4), rat_int(1)),
        ]);
        assert_eq!(prod, expect);
        let sym = &BiLaurentPoly::a() + &BiLaurentPoly::monomial(rat_int(1), -1, 0);
        assert_eq!(sym.pow(0), BiLaurentPoly::one());
    }

    #[test]
    fn specialization_examples() {
        assert!(atom_aq(6).specialize_a(-6).is_zero());
        let sym = &BiLaurentPoly::a() + &BiLaurentPoly::monomial(rat_int(1), -1, 0);
        assert_eq!(sym.specialize_a(0), LaurentPoly::from_int(2));
        let x = &BiLaurentPoly::a() - &BiLaurentPoly::monomial(rat_int(1), 0, 4);
        assert_eq!(x.specialize_a(2), LaurentPoly::from_coeffs(2, &[1, 0, -1]));
    }

    #[test]
    fn atom_division_round_trips() {
        let base = BiLaurentPoly::from_terms([((0, 1), rat_int(3)), ((2, -1), rat_int(-1)), ((-1, 0), rat_int(5))]);
        for s in [-3, 0, 4] {
            assert_eq!(base.mul_aq(s).div_aq(s), Some(base.clone()));
            assert_eq!(base.mul_qa(s).div_qa(s), Some(base.clone()));
        }
        assert_eq!(base.div_aq(2), None);
        assert_eq!(atom_qa(3).div_aq(3), None);
    }
}
