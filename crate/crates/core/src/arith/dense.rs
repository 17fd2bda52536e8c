//! Dense integer coefficient vectors used as the inner kernel of
//! [`LaurentPoly`](super::LaurentPoly) arithmetic.
//!
//! An `IntPoly` is `Σ coeffs[i] q^(shift + i)` with no zero at either end.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cyclo;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub shift: i64,
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { shift: 0, coeffs: Vec::new() }
    }

    pub fn new(shift: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { shift, coeffs };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.shift += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.shift = 0;
        }
    }

    pub fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -core::mem::take(c);
        }
        self
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_scalar_exact(mut self, s: &BigInt) -> Self {
        for c in &mut self.coeffs {
            *c = &*c / s;
        }
        self
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(self.shift + other.shift, out)
    }

    /// `self · (1 - q^m)`, `m > 0`.
    fn mul_binomial_pos(&self, m: usize) -> IntPoly {
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n + m);
        for i in 0..n + m {
            let hi = self.coeffs.get(i);
            let lo = i.checked_sub(m).and_then(|j| self.coeffs.get(j));
            out.push(match (hi, lo) {
                (Some(h), Some(l)) => h - l,
                (Some(h), None) => h.clone(),
                (None, Some(l)) => -l,
                (None, None) => BigInt::zero(),
            });
        }
        IntPoly::new(self.shift, out)
    }

    /// `self / (1 - q^m)` for `m > 0`, or `None` when the division is inexact.
    fn div_binomial_pos(&self, m: usize) -> Option<IntPoly> {
        let n = self.coeffs.len();
        if n <= m {
            return None;
        }
        let qlen = n - m;
        let mut q: Vec<BigInt> = Vec::with_capacity(qlen);
        for i in 0..qlen {
            let mut c = self.coeffs[i].clone();
            if i >= m {
                c += &q[i - m];
            }
            q.push(c);
        }
        // The top m coefficients of q·(1 - q^m) are -q[i - m].
        for i in qlen..n {
            let expect = if i >= m { -&q[i - m] } else { BigInt::zero() };
            if self.coeffs[i] != expect {
                return None;
            }
        }
        Some(IntPoly::new(self.shift, q))
    }

    /// `self · (1 - q^m)`, `m != 0`.
    pub fn mul_binomial(&self, m: i64) -> IntPoly {
        assert!(m != 0);
        if self.is_zero() {
            return IntPoly::zero();
        }
        if m > 0 {
            self.mul_binomial_pos(m as usize)
        } else {
            // 1 - q^m = -q^m (1 - q^{-m})
            let mut r = self.mul_binomial_pos((-m) as usize).neg();
            r.shift += m;
            r
        }
    }

    /// `self / (1 - q^m)` when exact.
    pub fn div_binomial(&self, m: i64) -> Option<IntPoly> {
        assert!(m != 0);
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if m > 0 {
            self.div_binomial_pos(m as usize)
        } else {
            let mut r = self.div_binomial_pos((-m) as usize)?.neg();
            r.shift -= m;
            Some(r)
        }
    }

    /// `self · Φ_d(q)`.
    pub fn mul_cyclo(&self, d: u64) -> IntPoly {
        let (sign, parts) = cyclo::recipe(d);
        let mut p = self.clone();
        for &(m, mu) in &parts {
            if mu > 0 {
                p = p.mul_binomial(m as i64);
            }
        }
        for &(m, mu) in &parts {
            if mu < 0 {
                p = p.div_binomial(m as i64).expect("cyclotomic recipe divides exactly");
            }
        }
        if sign < 0 {
            p = p.neg();
        }
        p
    }

    /// `self / Φ_d(q)` when exact.
    pub fn div_cyclo(&self, d: u64) -> Option<IntPoly> {
        let (sign, parts) = cyclo::recipe(d);
        let mut p = self.clone();
        for &(m, mu) in &parts {
            if mu < 0 {
                p = p.mul_binomial(m as i64);
            }
        }
        for &(m, mu) in &parts {
            if mu > 0 {
                p = p.div_binomial(m as i64)?;
            }
        }
        if sign < 0 {
            p = p.neg();
        }
        Some(p)
    }

    /// Applies `∏ Φ_d^{e_d}` (negative `e_d` divide). `None` when some
    /// division is inexact, i.e. the product does not divide `self`.
    pub fn apply_cyclos<I: IntoIterator<Item = (u64, i64)>>(&self, factors: I) -> Option<IntPoly> {
        let mut binoms: alloc::collections::BTreeMap<u64, i64> = alloc::collections::BTreeMap::new();
        let mut negate = false;
        for (d, e) in factors {
            if e == 0 {
                continue;
            }
            let (sign, parts) = cyclo::recipe(d);
            if sign < 0 && e % 2 != 0 {
                negate = !negate;
            }
            for (m, mu) in parts {
                *binoms.entry(m).or_insert(0) += e * mu as i64;
            }
        }
        let mut p = self.clone();
        for (&m, &e) in &binoms {
            for _ in 0..e.max(0) {
                p = p.mul_binomial(m as i64);
            }
        }
        for (&m, &e) in &binoms {
            for _ in 0..(-e).max(0) {
                p = p.div_binomial(m as i64)?;
            }
        }
        Some(if negate { p.neg() } else { p })
    }

    /// Pseudo-division of the ordinary polynomials underlying `self` and `d`
    /// (shifts ignored). Returns `(quot, rem, scale)` with
    /// `scale · self = quot · d + rem` and `len(rem) < len(d)`.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> (IntPoly, IntPoly, BigInt) {
        assert!(!d.is_zero());
        let dl = d.coeffs.len();
        let lead = d.coeffs.last().unwrap().clone();
        let unit = lead.abs().is_one();
        let mut scale = BigInt::one();
        if self.coeffs.len() < dl {
            return (IntPoly::zero(), IntPoly::new(0, self.coeffs.clone()), scale);
        }
        let mut r = self.coeffs.clone();
        let ql = r.len() - dl + 1;
        let mut q = vec![BigInt::zero(); ql];
        for k in (0..ql).rev() {
            let top = k + dl - 1;
            if r[top].is_zero() {
                if !unit {
                    // keep the scaling uniform so scale = lead^ql
                    for c in r.iter_mut().chain(q.iter_mut()) {
                        *c *= &lead;
                    }
                    scale *= &lead;
                }
                continue;
            }
            let t = if unit {
                &r[top] * &lead
            } else {
                for c in r.iter_mut().chain(q.iter_mut()) {
                    *c *= &lead;
                }
                scale *= &lead;
                &r[top] / &lead
            };
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[k + j] -= &t * dc;
                }
            }
            q[k] = t;
        }
        r.truncate(dl - 1);
        (IntPoly::new(0, q), IntPoly::new(0, r), scale)
    }

    /// Primitive part with a positive leading coefficient, shift reset to 0.
    pub fn primitive_ordinary(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            c = -c;
        }
        IntPoly::new(0, self.coeffs.clone()).div_scalar_exact(&c)
    }

    /// Primitive gcd of the ordinary polynomials (shifts ignored), positive
    /// leading coefficient. Both inputs nonzero or one of them zero.
    pub fn gcd_ordinary(a: &IntPoly, b: &IntPoly) -> IntPoly {
        let mut x = a.primitive_ordinary();
        let mut y = b.primitive_ordinary();
        if x.coeffs.len() < y.coeffs.len() {
            core::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let (_, r, _) = x.pseudo_divrem(&y);
            x = y;
            y = r.primitive_ordinary();
        }
        x
    }
}


#[cfg(test)]
mod apply_tests {
    use super::*;

    #[test]
    fn apply_cyclos_matches_one_at_a_time() {
        let p = IntPoly::new(-2, [4, -1, 0, 3].iter().map(|&x| BigInt::from(x)).collect());
        let one_by_one = p.mul_cyclo(1).mul_cyclo(6).mul_cyclo(6).mul_cyclo(10);
        let batch = p.apply_cyclos([(1, 1), (6, 2), (10, 1)]).unwrap();
        assert_eq!(one_by_one, batch);
        assert_eq!(batch.apply_cyclos([(6, -2), (1, -1), (10, -1)]), Some(p.clone()));
        assert_eq!(p.apply_cyclos([(5, -1)]), None);
    }
}
