//! Congruence verdicts and one verification entry point per statement.
//!
//! Convention: for `A = P_A/Q_A` and `B = P_B/Q_B` in lowest terms,
//! `A ≡ B (mod m)` means `gcd(Q_A Q_B, m) = 1` and `m` divides the cleared
//! difference. When a denominator shares a factor with the modulus the
//! verdict is [`Status::IllPosed`], never a pass.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{rat_int, BiLaurentPoly, BiRationalFunction, BigRational, LaurentPoly, RationalFunction};
use crate::qkit::{cyclotomic_q2, qbinom, qint, qpoch};
use crate::series::{classical_summand, sum_s, sum_s_param};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    IllPosed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::IllPosed => "ill-posed",
        })
    }
}

/// Outcome of a congruence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Exponent span of the nonzero remainder, on failure.
    pub residual_degree_span: Option<(i64, i64)>,
    /// Top exponent of the quotient, on a univariate pass with nonzero difference.
    pub quotient_degree: Option<i64>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(status: Status) -> Self {
        Verdict { status, residual_degree_span: None, quotient_degree: None, notes: Vec::new() }
    }

    fn ill_posed(note: String) -> Self {
        Verdict { notes: vec![note], ..Self::new(Status::IllPosed) }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    /// Folds several sub-verdicts into one; the worst status wins.
    fn combine(parts: Vec<(&str, Verdict)>) -> Verdict {
        let mut out = Verdict::new(Status::Pass);
        for (label, v) in parts {
            if v.status > out.status {
                out.status = v.status;
                out.residual_degree_span = v.residual_degree_span;
            }
            out.quotient_degree = out.quotient_degree.max(v.quotient_degree);
            out.notes.push(format!("{label}: {}", v.status));
            out.notes.extend(v.notes);
        }
        out
    }
}

/// One factor of a bivariate modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiFactor {
    /// A polynomial in `q` alone, to a power.
    QOnly { poly: LaurentPoly, multiplicity: u32 },
    /// A factor linear in `a` vanishing exactly at `a = q^root`.
    LinearInA { poly: BiLaurentPoly, root: i64 },
}

impl BiFactor {
    /// `1 - a q^s`, vanishing at `a = q^{-s}`.
    pub fn one_minus_aq(s: i64) -> Self {
        let poly = BiLaurentPoly::one() - BiLaurentPoly::monomial(rat_int(1), 1, s);
        BiFactor::LinearInA { poly, root: -s }
    }

    /// `a - q^s`, vanishing at `a = q^s`.
    pub fn a_minus_q(s: i64) -> Self {
        let poly = BiLaurentPoly::a() - BiLaurentPoly::monomial(rat_int(1), 0, s);
        BiFactor::LinearInA { poly, root: s }
    }

    pub fn expand(&self) -> BiLaurentPoly {
        match self {
            BiFactor::QOnly { poly, multiplicity } => BiLaurentPoly::from_q(poly.pow(*multiplicity)),
            BiFactor::LinearInA { poly, .. } => poly.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulusKind {
    Univariate(LaurentPoly),
    BivariateFactored(Vec<BiFactor>),
}

/// A modulus together with the formula text it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulus {
    pub kind: ModulusKind,
    pub description: String,
}

impl Modulus {
    pub fn univariate(poly: LaurentPoly, description: impl Into<String>) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::InvalidArgument("zero modulus".into()));
        }
        Ok(Modulus { kind: ModulusKind::Univariate(poly), description: description.into() })
    }

    /// Validates pairwise coprimality: `q`-only factors pairwise by gcd, linear
    /// factors by distinct roots. A `q`-only factor never shares a divisor with
    /// a factor linear in `a` whose coefficients are coprime monomials.
    pub fn bivariate(factors: Vec<BiFactor>, description: impl Into<String>) -> Result<Self> {
        let mut q_polys: Vec<&LaurentPoly> = Vec::new();
        let mut roots: Vec<i64> = Vec::new();
        for f in &factors {
            match f {
                BiFactor::QOnly { poly, .. } => {
                    if poly.is_zero() {
                        return Err(Error::InvalidArgument("zero modulus factor".into()));
                    }
                    for other in &q_polys {
                        if !poly.gcd(other)?.is_one() {
                            return Err(Error::InvalidArgument("modulus factors share a divisor".into()));
                        }
                    }
                    q_polys.push(poly);
                }
                BiFactor::LinearInA { root, .. } => {
                    if roots.contains(root) {
                        return Err(Error::InvalidArgument("repeated linear modulus factor".into()));
                    }
                    roots.push(*root);
                }
            }
        }
        Ok(Modulus { kind: ModulusKind::BivariateFactored(factors), description: description.into() })
    }

    pub fn as_univariate(&self) -> Option<&LaurentPoly> {
        match &self.kind {
            ModulusKind::Univariate(p) => Some(p),
            ModulusKind::BivariateFactored(_) => None,
        }
    }

    /// `[n]_{q^2}^4 Φ_n(q^2)`.
    pub fn refined(n: u32) -> Self {
        let p = &qint(n as i64, 2).unwrap().pow(4) * &cyclotomic_q2(n as u64);
        Self::univariate(p, "[n]_{q^2}^4 Phi_n(q^2)").unwrap()
    }

    /// `[n]_{q^2} Φ_n(q^2)^3`.
    pub fn weak(n: u32) -> Self {
        let p = &qint(n as i64, 2).unwrap() * &cyclotomic_q2(n as u64).pow(3);
        Self::univariate(p, "[n]_{q^2} Phi_n(q^2)^3").unwrap()
    }

    /// `Φ_n(q^2)`.
    pub fn cyclotomic_q2(n: u32) -> Self {
        Self::univariate(cyclotomic_q2(n as u64), "Phi_n(q^2)").unwrap()
    }

    /// `[n]_{q^2}^2 (1 - a q^{2n}) (a - q^{2n})`.
    pub fn param(n: u32) -> Self {
        let e = 2 * n as i64;
        let factors = vec![
            BiFactor::QOnly { poly: qint(n as i64, 2).unwrap(), multiplicity: 2 },
            BiFactor::one_minus_aq(e),
            BiFactor::a_minus_q(e),
        ];
        Self::bivariate(factors, "[n]_{q^2}^2 (1 - a q^{2n}) (a - q^{2n})").unwrap()
    }
}

/// Which truncation of a sum an odd-`n` statement refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Truncation {
    /// `M = (n + 1) / 2`.
    Half,
    /// `M = n - 1`.
    Full,
}

impl Truncation {
    pub fn upper(self, n: u64) -> u64 {
        match self {
            Truncation::Half => n.div_ceil(2),
            Truncation::Full => n - 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Truncation::Half => "half",
            Truncation::Full => "full",
        }
    }
}

fn require_odd(n: u32) -> Result<()> {
    if n > 1 && n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("n must be odd and > 1, got {n}")))
    }
}

/// Univariate congruence `a ≡ b (mod m)` under the clear-denominators
/// convention.
pub fn check_congruence(a: &RationalFunction, b: &RationalFunction, m: &Modulus) -> Result<Verdict> {
    let m = m
        .as_univariate()
        .ok_or_else(|| Error::InvalidArgument("check_congruence needs a univariate modulus".into()))?;
    for rf in [a, b] {
        let den = rf.den_factors();
        // Φ_d is irreducible, so it is coprime to m unless it divides m.
        if let Some(d) = den.cyclo().keys().find(|d| m.div_cyclo(**d).is_some()) {
            return Ok(Verdict::ill_posed(format!("denominator factor Phi_{d} divides the modulus")));
        }
        if !den.rest().is_one() && !den.rest().gcd(m)?.is_one() {
            return Ok(Verdict::ill_posed("denominator shares a factor with the modulus".into()));
        }
    }
    let (pa, pb) = a.cross_numerators(b);
    let diff = &pa - &pb;
    let (quot, rem) = diff.divrem(m)?;
    if !rem.is_zero() {
        let mut v = Verdict::new(Status::Fail);
        v.residual_degree_span = rem.degree_span();
        return Ok(v.note(format!("remainder has {} terms", rem.len())));
    }
    #[cfg(any(test, debug_assertions))]
    assert!(&quot * m == diff, "witness does not reproduce the cleared difference");
    let mut v = Verdict::new(Status::Pass);
    v.quotient_degree = quot.max_exp();
    Ok(v)
}

/// Divisibility of a denominator-cleared bivariate numerator by a factored
/// modulus, one factor at a time: each linear factor by substituting its root
/// for `a`, each `q`-only factor by dividing every `a`-coefficient.
pub fn check_bivariate(num: &BiLaurentPoly, m: &Modulus) -> Result<Verdict> {
    let ModulusKind::BivariateFactored(factors) = &m.kind else {
        return Err(Error::InvalidArgument("check_bivariate needs a factored modulus".into()));
    };
    let mut parts = Vec::new();
    for f in factors {
        match f {
            BiFactor::LinearInA { root, .. } => {
                let r = num.specialize_a(*root);
                let mut v = Verdict::new(if r.is_zero() { Status::Pass } else { Status::Fail });
                v.residual_degree_span = r.degree_span();
                parts.push((format!("a = q^{root}"), v));
            }
            BiFactor::QOnly { poly, multiplicity } => {
                let d = poly.pow(*multiplicity);
                let mut v = Verdict::new(Status::Pass);
                for (i, c) in num.a_coeffs() {
                    let (_, rem) = c.divrem(&d)?;
                    if !rem.is_zero() {
                        v = Verdict::new(Status::Fail);
                        v.residual_degree_span = rem.degree_span();
                        v = v.note(format!("coefficient of a^{i} not divisible"));
                        break;
                    }
                }
                parts.push((format!("q-factor^{multiplicity} coefficientwise"), v));
            }
        }
    }
    Ok(Verdict::combine(parts.iter().map(|(l, v)| (l.as_str(), v.clone())).collect()))
}

const SUBSCRIPT_NOTE: &str = "Phi(q^2) in the modulus is read as Phi_n(q^2)";

/// `Σ_{k=0}^{M} summand(k) ≡ (2q + 2q^{-1} - 1)[n]_{q^2}^4 (mod [n]_{q^2}^4 Φ_n(q^2))`.
pub fn verify_refined(n: u32, t: Truncation) -> Result<Verdict> {
    require_odd(n)?;
    let lhs = sum_s(t.upper(n as u64) as u32);
    let unit = LaurentPoly::from_terms([(1, rat_int(2)), (0, rat_int(-1)), (-1, rat_int(2))]);
    let rhs = RationalFunction::from_poly(&unit * &qint(n as i64, 2)?.pow(4));
    Ok(check_congruence(&lhs, &rhs, &Modulus::refined(n))?.note(SUBSCRIPT_NOTE))
}

/// `Σ_{k=0}^{M} summand(k) ≡ 0 (mod [n]_{q^2} Φ_n(q^2)^3)`.
pub fn verify_weak(n: u32, t: Truncation) -> Result<Verdict> {
    require_odd(n)?;
    let lhs = sum_s(t.upper(n as u64) as u32);
    check_congruence(&lhs, &RationalFunction::zero(), &Modulus::weak(n))
}

/// `(q^{-2};q^4)_h / (q^4;q^4)_h ≡ (-1)^h q^{(n-1)^2/2 - 2} (mod Φ_n(q^2))`
/// with `h = (n + 1)/2`.
pub fn verify_lemma_poch_ratio(n: u32) -> Result<Verdict> {
    require_odd(n)?;
    let h = n.div_ceil(2);
    let ratio = RationalFunction::new(qpoch(-2, 4, h), qpoch(4, 4, h))?;
    let sign = if h.is_multiple_of(2) { 1 } else { -1 };
    let e = ((n as i64 - 1).pow(2)) / 2 - 2;
    let rhs = RationalFunction::from_poly(LaurentPoly::monomial(rat_int(sign), e));
    check_congruence(&ratio, &rhs, &Modulus::cyclotomic_q2(n))
}

/// `[2n, n]_{q^2} = (1 + q^{2n}) [2n-1, n-1]_{q^2}`, exactly, for any `n >= 1`.
pub fn qbinom_central_factorization_holds(n: u32) -> bool {
    let lhs = qbinom(2 * n, n as i64, 2);
    let one_plus = &LaurentPoly::one() + &LaurentPoly::monomial(rat_int(1), 2 * n as i64);
    lhs == &one_plus * &qbinom(2 * n - 1, n as i64 - 1, 2)
}

/// `[2n, n]_{q^2} ≡ 2(-1)^{n-1} q^{n(n-1)} ≡ 2 (mod Φ_n(q^2))`, together with
/// the exact factorization step.
pub fn verify_qbinom_central(n: u32) -> Result<Verdict> {
    require_odd(n)?;
    let m = Modulus::cyclotomic_q2(n);
    let n64 = n as i64;
    let sign = if (n - 1).is_multiple_of(2) { 2 } else { -2 };
    let mid = RationalFunction::from_poly(LaurentPoly::monomial(rat_int(sign), n64 * (n64 - 1)));
    let qb = RationalFunction::from_poly(qbinom(2 * n, n64, 2));
    let two = RationalFunction::from_poly(LaurentPoly::from_int(2));
    let exact = if qbinom_central_factorization_holds(n) { Status::Pass } else { Status::Fail };
    Ok(Verdict::combine(vec![
        ("factorization", Verdict::new(exact)),
        ("binomial vs monomial", check_congruence(&qb, &mid, &m)?),
        ("monomial vs 2", check_congruence(&mid, &two, &m)?),
    ]))
}

/// `(-q^2;q^2)_n ≡ 2 (mod Φ_n(q^2))`.
pub fn verify_minus_poch(n: u32) -> Result<Verdict> {
    require_odd(n)?;
    let prod = (1..=n as i64)
        .fold(LaurentPoly::one(), |acc, j| &acc * &(&LaurentPoly::one() + &LaurentPoly::monomial(rat_int(1), 2 * j)));
    let two = RationalFunction::from_poly(LaurentPoly::from_int(2));
    check_congruence(&RationalFunction::from_poly(prod), &two, &Modulus::cyclotomic_q2(n))
}

/// `Σ_{k=0}^{M} summand_param(k) ≡ 0 (mod [n]_{q^2}^2 (1 - a q^{2n})(a - q^{2n}))`.
pub fn verify_param(n: u32, t: Truncation) -> Result<Verdict> {
    require_odd(n)?;
    let modulus = Modulus::param(n);
    let mut sum: BiRationalFunction = sum_s_param(t.upper(n as u64) as u32);
    let mut notes = Vec::new();

    // Φ_d divides [n]_{q^2} iff d | 2n and d > 2. Such denominator atoms
    // collide with the modulus and must cancel against the numerator.
    let colliding: Vec<u64> =
        sum.den_atoms().cyclo.keys().copied().filter(|d| *d > 2 && (2 * n as u64).is_multiple_of(*d)).collect();
    for d in colliding {
        let had = sum.den_atoms().cyclo[&d];
        let cancelled = sum.cancel_cyclo(d);
        notes.push(format!("cancelled Phi_{d}^{cancelled} of {had} against the numerator"));
        if sum.den_atoms().cyclo.contains_key(&d) {
            let mut v = Verdict::ill_posed(format!("denominator keeps Phi_{d}, a factor of [n]_(q^2)"));
            v.notes.extend(notes);
            return Ok(v);
        }
    }
    let ModulusKind::BivariateFactored(factors) = &modulus.kind else { unreachable!() };
    let roots: Vec<i64> = factors
        .iter()
        .filter_map(|f| match f {
            BiFactor::LinearInA { root, .. } => Some(*root),
            BiFactor::QOnly { .. } => None,
        })
        .collect();
    let den = sum.den_atoms();
    // (1 - a q^s) vanishes at a = q^{-s}; (1 - q^s/a) at a = q^s.
    let atom_roots = den.aq.keys().map(|s| -s).chain(den.qa.keys().copied());
    for r in atom_roots {
        if roots.contains(&r) {
            return Ok(Verdict::ill_posed(format!("denominator atom vanishes at a = q^{r}")));
        }
    }
    let mut v = check_bivariate(sum.num(), &modulus)?;
    v.notes.extend(notes);
    Ok(v)
}

/// For odd `n <= n_max` and `m <= m_max`: `gcd(1 - q^n, 1 + q^m) = 1`, and
/// `gcd([n], [2n-1]) = 1`.
pub fn gcd_facts(n_max: u32, m_max: u32) -> Result<Verdict> {
    if n_max < 1 || m_max < 1 {
        return Err(Error::InvalidArgument("bounds must be >= 1".into()));
    }
    let mut checked = 0usize;
    for n in (1..=n_max as i64).step_by(2) {
        let a = LaurentPoly::one_minus_q_pow(n);
        for m in 1..=m_max as i64 {
            let b = &LaurentPoly::one() + &LaurentPoly::monomial(rat_int(1), m);
            if !a.gcd(&b)?.is_one() {
                return Ok(Verdict::new(Status::Fail).note(format!("gcd(1-q^{n}, 1+q^{m}) != 1")));
            }
            checked += 1;
        }
        if !qint(n, 1)?.gcd(&qint(2 * n - 1, 1)?)?.is_one() {
            return Ok(Verdict::new(Status::Fail).note(format!("gcd([{n}], [{}]) != 1", 2 * n - 1)));
        }
        checked += 1;
    }
    Ok(Verdict::new(Status::Pass).note(format!("{checked} gcds equal 1")))
}

/// A p-adic valuation; zero has valuation [`Valuation::Infinity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Trial-division primality.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn ord_int(x: &BigInt, p: &BigInt) -> i64 {
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

pub fn padic_valuation(x: &BigRational, p: u64) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let p = BigInt::from(p);
    Ok(Valuation::Finite(ord_int(x.numer(), &p) - ord_int(x.denom(), &p)))
}

/// `Σ_{k=0}^{M} (4k-1)^3 C(2k,k)^4 / (256^k (2k-1)^4) ≡ 3p^{4r} (mod p^{4r+1})`
/// with `M = (p^r+1)/2` or `p^r - 1`.
pub fn verify_corollary(p: u64, r: u32, t: Truncation) -> Result<Verdict> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be >= 1".into()));
    }
    let pr = p.checked_pow(r).ok_or_else(|| Error::InvalidArgument("p^r overflows".into()))?;
    let upper = t.upper(pr);
    let upper = u32::try_from(upper).map_err(|_| Error::InvalidArgument("sum too long".into()))?;
    let mut sum = BigRational::zero();
    for k in 0..=upper {
        let term = classical_summand(k);
        if padic_valuation(&term, p)? < Valuation::Finite(0) {
            return Ok(Verdict::ill_posed(format!("term k = {k} is not {p}-integral")));
        }
        sum += term;
    }
    let target = BigRational::from_integer(BigInt::from(3) * num_traits::pow(BigInt::from(p), 4 * r as usize));
    let val = padic_valuation(&(&sum - &target), p)?;
    let need = 4 * r as i64 + 1;
    let status = if val >= Valuation::Finite(need) { Status::Pass } else { Status::Fail };
    Ok(Verdict::new(status).note(format!("M = {upper}, ord_{p}(sum - 3p^{}) = {val}, need >= {need}", 4 * r)))
}

impl Verdict {
    /// One-line summary used by reports.
    pub fn summary(&self) -> String {
        let mut s = self.status.to_string();
        if let Some((lo, hi)) = self.residual_degree_span {
            s.push_str(&format!(", residual degrees {lo}..{hi}"));
        }
        if let Some(d) = self.quotient_degree {
            s.push_str(&format!(", quotient degree {d}"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rf(p: LaurentPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn reflexive_and_simplifying() {
        let m = Modulus::univariate(crate::qkit::cyclotomic(5), "Phi_5").unwrap();
        let x = RationalFunction::new(LaurentPoly::from_coeffs(0, &[-1, 0, 1]), LaurentPoly::from_coeffs(0, &[1, 1]))
            .unwrap();
        let y = rf(LaurentPoly::from_coeffs(0, &[-1, 1]));
        assert!(check_congruence(&x, &y, &m).unwrap().passed());
        assert!(check_congruence(&x, &x, &m).unwrap().passed());
    }

    #[test]
    fn failing_and_ill_posed() {
        let m = Modulus::univariate(crate::qkit::cyclotomic(3), "Phi_3").unwrap();
        let v = check_congruence(&rf(LaurentPoly::one()), &rf(LaurentPoly::zero()), &m).unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.residual_degree_span, Some((0, 0)));
        let bad = RationalFunction::new(LaurentPoly::one(), crate::qkit::cyclotomic(3)).unwrap();
        let v = check_congruence(&bad, &rf(LaurentPoly::zero()), &m).unwrap();
        assert_eq!(v.status, Status::IllPosed);
        // a monomial denominator is always fine
        let unit = RationalFunction::new(crate::qkit::cyclotomic(3), LaurentPoly::q()).unwrap();
        assert!(check_congruence(&unit, &rf(LaurentPoly::zero()), &m).unwrap().passed());
        assert!(Modulus::univariate(LaurentPoly::zero(), "0").is_err());
    }

    #[test]
    fn refined_and_weak_small() {
        for t in [Truncation::Half, Truncation::Full] {
            assert!(verify_refined(3, t).unwrap().passed());
            assert!(verify_weak(3, t).unwrap().passed());
        }
        assert!(verify_weak(5, Truncation::Full).unwrap().passed());
        assert!(verify_weak(7, Truncation::Half).unwrap().passed());
        assert!(verify_refined(9, Truncation::Full).unwrap().passed());
        assert!(verify_refined(4, Truncation::Half).is_err());
        assert!(verify_refined(1, Truncation::Half).is_err());
    }

    #[test]
    fn refined_fails_with_wrong_unit() {
        // perturbing the right-hand side must break the congruence
        let lhs = sum_s(2);
        let rhs = rf(&LaurentPoly::from_int(2) * &qint(3, 2).unwrap().pow(4));
        assert_eq!(check_congruence(&lhs, &rhs, &Modulus::refined(3)).unwrap().status, Status::Fail);
    }

    #[test]
    fn lemmas_small() {
        for n in [3, 5, 7, 9] {
            assert!(verify_lemma_poch_ratio(n).unwrap().passed(), "n = {n}");
            assert!(verify_qbinom_central(n).unwrap().passed(), "n = {n}");
            assert!(verify_minus_poch(n).unwrap().passed(), "n = {n}");
        }
        assert!(verify_minus_poch(15).unwrap().passed());
        assert!(qbinom_central_factorization_holds(4));
    }

    #[test]
    fn gcd_fact_examples() {
        assert!(gcd_facts(3, 3).unwrap().passed());
        let g = LaurentPoly::one_minus_q_pow(2).gcd(&LaurentPoly::from_coeffs(0, &[1, 1])).unwrap();
        assert_eq!(g, LaurentPoly::from_coeffs(0, &[1, 1]));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&rat_int(243), 3).unwrap(), Valuation::Finite(5));
        assert_eq!(padic_valuation(&rat(343, 4096), 3).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_valuation(&classical_summand(2), 3).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_valuation(&rat(1, 5), 5).unwrap(), Valuation::Finite(-1));
        assert_eq!(padic_valuation(&rat_int(0), 5).unwrap(), Valuation::Infinity);
        assert!(padic_valuation(&rat_int(3), 4).is_err());
        assert!(padic_valuation(&rat_int(3), 1).is_err());
    }

    #[test]
    fn corollary_small() {
        assert!(verify_corollary(3, 1, Truncation::Half).unwrap().passed());
        assert!(verify_corollary(5, 1, Truncation::Full).unwrap().passed());
        assert!(verify_corollary(9, 1, Truncation::Full).is_err());
    }

    #[test]
    fn bivariate_examples() {
        let m = Modulus::param(3);
        assert!(check_bivariate(&BiLaurentPoly::zero(), &m).unwrap().passed());
        let BiFactor::LinearInA { poly, root } = BiFactor::one_minus_aq(6) else { unreachable!() };
        let n = &poly * &BiLaurentPoly::from_terms([((2, 1), rat_int(3)), ((-1, 0), rat_int(1))]);
        assert!(n.specialize_a(root).is_zero());
        assert!(verify_param(3, Truncation::Half).unwrap().passed());
        assert!(verify_param(5, Truncation::Full).unwrap().passed());
    }

    #[test]
    fn bivariate_modulus_validation() {
        assert!(Modulus::bivariate(vec![BiFactor::a_minus_q(2), BiFactor::a_minus_q(2)], "x").is_err());
        let q = |p: LaurentPoly| BiFactor::QOnly { poly: p, multiplicity: 1 };
        let shared = vec![q(LaurentPoly::one_minus_q_pow(2)), q(LaurentPoly::from_coeffs(0, &[1, 1]))];
        assert!(Modulus::bivariate(shared, "x").is_err());
    }

    #[test]
    fn status_order() {
        assert!(Status::Pass < Status::Fail && Status::Fail < Status::IllPosed);
    }
}
