//! q-combinatorics: q-integers, q-shifted factorials, Gaussian binomials,
//! cyclotomic polynomials and exact `q -> 1` limits of balanced products.
//!
//! Bases are written as powers of `q`: "base `e`" means the step `q^e`, so
//! `qint(n, 2)` is `[n]_{q^2}` and `qpoch(s, e, k)` is `(q^s; q^e)_k`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{divisors, BiLaurentPoly, BigRational, Factored, LaurentPoly};
use crate::{Error, Result};

/// `[n]_{q^e} = (1 - q^{en}) / (1 - q^e)`, for any integer `n`.
///
/// For `n < 0` this is the Laurent polynomial `-(q^{en} + ... + q^{-e})`;
/// `[0] = 0`.
pub fn qint(n: i64, e: i64) -> Result<LaurentPoly> {
    if e <= 0 {
        return Err(Error::InvalidArgument(alloc::format!("q-integer base must be positive, got {e}")));
    }
    let one = || BigRational::one();
    Ok(if n >= 0 {
        LaurentPoly::from_terms((0..n).map(|i| (e * i, one())))
    } else {
        LaurentPoly::from_terms((n..0).map(|i| (e * i, -one())))
    })
}

/// `[n]_{q^e}` as a factored product; `None` for `n == 0`.
pub fn qint_factored(n: i64, e: i64) -> Option<Factored> {
    assert!(e > 0);
    Some(Factored::one_minus(e * n)? / Factored::one_minus(e).unwrap())
}

/// `(q^s; q^e)_k = ∏_{j<k} (1 - q^{s + e j})`, with `(a; q)_0 = 1`.
pub fn qpoch(s: i64, e: u32, k: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for j in 0..k as i64 {
        let m = s + e as i64 * j;
        if m == 0 {
            return LaurentPoly::zero();
        }
        p = p.mul_one_minus(m);
    }
    p
}

/// `(a^{sign} q^s; q^e)_k`: `sign = +1` builds `(a q^s; q^e)_k`, `sign = -1`
/// builds `(q^s / a; q^e)_k`.
pub fn qpoch_param(sign: i8, s: i64, e: u32, k: u32) -> BiLaurentPoly {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let mut p = BiLaurentPoly::one();
    for j in 0..k as i64 {
        let m = s + e as i64 * j;
        p = if sign > 0 { p.mul_aq(m) } else { p.mul_qa(m) };
    }
    p
}

/// Gaussian binomial `[n, k]` in base `q^e`; zero unless `0 <= k <= n`.
///
/// Computed as a quotient of q-factorials whose exact division is checked.
pub fn qbinom(n: u32, k: i64, e: u32) -> LaurentPoly {
    if k < 0 || k > n as i64 {
        return LaurentPoly::zero();
    }
    let k = k as u32;
    let e = e as i64;
    // (q^e;q^e)_n / (q^e;q^e)_{n-k} over (q^e;q^e)_k
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for i in 1..=k as i64 {
        num = num.mul_one_minus(e * (n as i64 - k as i64 + i));
        den = den.mul_one_minus(e * i);
    }
    let (quot, rem) = num.divrem(&den).expect("nonzero q-factorial");
    assert!(rem.is_zero(), "q-binomial division left a remainder");
    quot
}

/// Gaussian binomial as a factored product; `None` (zero) outside `0..=n`.
pub fn qbinom_factored(n: u32, k: i64, e: u32) -> Option<Factored> {
    if k < 0 || k > n as i64 {
        return None;
    }
    let e = e as i64;
    let mut f = Factored::one();
    for i in 1..=k {
        f = f * Factored::one_minus(e * (n as i64 - k + i)).unwrap() / Factored::one_minus(e * i).unwrap();
    }
    Some(f)
}

#[cfg(feature = "std")]
mod memo {
    use super::*;
    use std::sync::{OnceLock, RwLock};

    static TABLE: OnceLock<RwLock<BTreeMap<u64, LaurentPoly>>> = OnceLock::new();

    pub(super) fn get(n: u64) -> Option<LaurentPoly> {
        let t = TABLE.get_or_init(Default::default);
        t.read().unwrap_or_else(|e| e.into_inner()).get(&n).cloned()
    }

    pub(super) fn put(n: u64, p: &LaurentPoly) {
        let t = TABLE.get_or_init(Default::default);
        t.write().unwrap_or_else(|e| e.into_inner()).entry(n).or_insert_with(|| p.clone());
    }
}

#[cfg(not(feature = "std"))]
mod memo {
    use super::*;

    pub(super) fn get(_: u64) -> Option<LaurentPoly> {
        None
    }

    pub(super) fn put(_: u64, _: &LaurentPoly) {}
}

/// The `n`-th cyclotomic polynomial, `Φ_n(q) = (q^n - 1) / ∏_{d | n, d < n} Φ_d(q)`.
///
/// Exact division only; results are memoized process-wide when `std` is on.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    if let Some(p) = memo::get(n) {
        return p;
    }
    let mut local: BTreeMap<u64, LaurentPoly> = BTreeMap::new();
    let p = cyclotomic_with(n, &mut local);
    memo::put(n, &p);
    p
}

fn cyclotomic_with(n: u64, local: &mut BTreeMap<u64, LaurentPoly>) -> LaurentPoly {
    if let Some(p) = local.get(&n).cloned().or_else(|| memo::get(n)) {
        return p;
    }
    let mut p = LaurentPoly::from_terms([(n as i64, BigRational::one()), (0, -BigRational::one())]);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi = cyclotomic_with(d, local);
        let (quot, rem) = p.divrem(&phi).expect("nonzero divisor");
        assert!(rem.is_zero(), "cyclotomic division left a remainder");
        p = quot;
    }
    local.insert(n, p.clone());
    p
}

/// `Φ_n(q^2)`.
pub fn cyclotomic_q2(n: u64) -> LaurentPoly {
    cyclotomic(n).substitute_qpow(2).unwrap()
}

/// `∏ (1 - q^m)^{mult}` with merged, nonzero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorProduct {
    factors: BTreeMap<i64, i64>,
}

impl FactorProduct {
    pub fn new<I: IntoIterator<Item = (i64, i64)>>(factors: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (m, mult) in factors {
            if m == 0 {
                return Err(Error::InvalidArgument("factor 1 - q^0 vanishes identically".into()));
            }
            *map.entry(m).or_insert(0) += mult;
        }
        map.retain(|_, v| *v != 0);
        Ok(FactorProduct { factors: map })
    }

    /// `(q^s; q^e)_k` raised to `mult`.
    pub fn poch(s: i64, e: i64, k: u32, mult: i64) -> Result<Self> {
        Self::new((0..k as i64).map(|j| (s + e * j, mult)))
    }

    pub fn factors(&self) -> &BTreeMap<i64, i64> {
        &self.factors
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.factors.values().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.factors.iter().chain(&other.factors).map(|(m, e)| (*m, *e))).unwrap()
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.factors.iter().map(|(m, e)| (*m, e * k))).unwrap()
    }

    pub fn to_factored(&self) -> Factored {
        self.factors.iter().fold(Factored::one(), |acc, (m, e)| acc * Factored::one_minus(*m).unwrap().pow(*e))
    }
}

/// `lim_{q -> 1} ∏ (1 - q^m)^{mult}` for a balanced product.
///
/// Near `q = 1`, `1 - q^m ~ -m (q - 1)`; when the multiplicities sum to zero
/// the powers of `q - 1` and the signs cancel and the limit is `∏ m^{mult}`.
pub fn factor_limit_q1(fp: &FactorProduct) -> Result<BigRational> {
    let total = fp.total_multiplicity();
    if total != 0 {
        return Err(Error::Unbalanced(total));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (m, e) in &fp.factors {
        let p = num_traits::pow(BigInt::from(*m), e.unsigned_abs() as usize);
        if *e > 0 {
            num *= p;
        } else {
            den *= p;
        }
    }
    Ok(BigRational::new(num, den))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `-C(2k, k) / (4^k (2k - 1))`.
pub fn central_binom_limit(k: u64) -> BigRational {
    let den = num_traits::pow(BigInt::from(4), k as usize) * BigInt::from(2 * k as i64 - 1);
    BigRational::new(-binomial(2 * k, k), den)
}

/// Polynomial coefficients as plain integers, ascending from exponent 0.
/// Used by tests and tables; panics on non-integral or negative exponents.
pub fn int_coeffs(p: &LaurentPoly) -> Vec<i64> {
    let Some((lo, hi)) = p.degree_span() else {
        return Vec::new();
    };
    assert!(lo >= 0);
    (0..=hi)
        .map(|e| {
            let c = p.coeff(e);
            assert!(c.is_integer());
            i64::try_from(c.to_integer()).expect("small coefficient")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn p(shift: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(shift, c)
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(3, 1).unwrap(), p(0, &[1, 1, 1]));
        assert_eq!(qint(-1, 2).unwrap(), LaurentPoly::monomial(rat_int(-1), -2));
        assert!(qint(0, 4).unwrap().is_zero());
        assert!(qint(3, 0).is_err());
        assert!(qint(3, -1).is_err());
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(-2, 4, 0), LaurentPoly::one());
        assert_eq!(qpoch(-2, 4, 1), LaurentPoly::one_minus_q_pow(-2));
        assert_eq!(qpoch(4, 4, 2), &LaurentPoly::one_minus_q_pow(4) * &LaurentPoly::one_minus_q_pow(8));
        assert!(qpoch(-4, 4, 3).is_zero());
    }

    #[test]
    fn qpoch_param_examples() {
        let plus = qpoch_param(1, -2, 4, 1);
        assert_eq!(plus, BiLaurentPoly::from_terms([((0, 0), rat_int(1)), ((1, -2), rat_int(-1))]));
        let minus = qpoch_param(-1, -2, 4, 1);
        assert_eq!(minus, BiLaurentPoly::from_terms([((0, 0), rat_int(1)), ((-1, -2), rat_int(-1))]));
        for k in 0..5 {
            for sign in [1, -1] {
                assert_eq!(qpoch_param(sign, -2, 4, k).specialize_a(0), qpoch(-2, 4, k));
            }
        }
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(2, 1, 1), p(0, &[1, 1]));
        assert_eq!(qbinom(4, 2, 1), p(0, &[1, 1, 2, 1, 1]));
        assert!(qbinom(3, 5, 1).is_zero());
        assert!(qbinom(3, -1, 1).is_zero());
        assert_eq!(qbinom(5, 0, 2), LaurentPoly::one());
        for (n, k) in [(6u32, 3i64), (9, 4), (2, 1)] {
            let f = qbinom_factored(n, k, 2).unwrap().to_rf().unwrap();
            assert_eq!(f.as_poly(), Some(&qbinom(n, k, 2)));
        }
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p(0, &[-1, 1]));
        assert_eq!(cyclotomic(2), p(0, &[1, 1]));
        assert_eq!(cyclotomic(6), p(0, &[1, -1, 1]));
        assert_eq!(cyclotomic_q2(3), p(0, &[1, 0, 1, 0, 1]));
        assert_eq!(cyclotomic_q2(1), p(0, &[-1, 0, 1]));
        assert_eq!(cyclotomic_q2(2), p(0, &[1, 0, 1]));
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}
        assert!(int_coeffs(&cyclotomic(105)).contains(&-2));
    }

    #[test]
    fn cyclotomic_matches_binomial_recipe() {
        for d in 1..=60u64 {
            let via_recipe = Factored::cyclotomic(d).to_rf().unwrap();
            assert_eq!(via_recipe.as_poly(), Some(&cyclotomic(d)), "d = {d}");
        }
    }

    #[test]
    fn limit_examples() {
        let fp = FactorProduct::new([(2, 1), (4, -1)]).unwrap();
        assert_eq!(factor_limit_q1(&fp).unwrap(), rat(1, 2));
        let fp = FactorProduct::new([(-2, 1), (4, -1)]).unwrap();
        assert_eq!(factor_limit_q1(&fp).unwrap(), rat(-1, 2));
        assert_eq!(factor_limit_q1(&FactorProduct::default()).unwrap(), rat_int(1));
        let bad = FactorProduct::new([(2, 1)]).unwrap();
        assert_eq!(factor_limit_q1(&bad), Err(Error::Unbalanced(1)));
        assert!(FactorProduct::new([(0, 1)]).is_err());
    }

    #[test]
    fn central_binomial_limit_examples() {
        assert_eq!(central_binom_limit(0), rat_int(1));
        assert_eq!(central_binom_limit(1), rat(-1, 2));
        assert_eq!(central_binom_limit(2), rat(-1, 8));
    }

    #[test]
    fn limit_matches_numeric_approach() {
        // (1 - q^-2)/(1 - q^4) at q = 1 + 1/10^6 is close to -1/2.
        let x = BigRational::new(BigInt::from(1_000_001), BigInt::from(1_000_000));
        let v = qpoch(-2, 4, 1).evaluate(&x).unwrap() / qpoch(4, 4, 1).evaluate(&x).unwrap();
        let err = v - rat(-1, 2);
        assert!(num_traits::Signed::abs(&err) < rat(1, 100_000));
    }
}
