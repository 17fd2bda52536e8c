//! Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
//! exact; nothing is compared with a tolerance.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use qcert_core::arith::{divisors, rat, rat_int, BiLaurentPoly, BigInt, BigRational, LaurentPoly, RationalFunction};
use qcert_core::congruence::{self, check_bivariate, Modulus, Truncation};
use qcert_core::dsl::{self, Binding};
use qcert_core::qkit::{self, factor_limit_q1, FactorProduct};
use qcert_core::series;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

const BOTH: [Truncation; 2] = [Truncation::Half, Truncation::Full];

fn odd(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|n| n % 2 == 1)
}

fn passes(v: qcert_core::Result<congruence::Verdict>, what: &str) -> Result<(), String> {
    match v {
        Ok(v) if v.passed() => Ok(()),
        Ok(v) => Err(format!("{what}: {}", v.summary())),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn c1_identity() -> Outcome {
    for n in 1..=20 {
        ensure(series::sum_s(n - 1) == series::closed_t(n), || format!("n = {n}"))?;
    }
    Ok("sum_S(n-1) = closed_T(n) for n = 1..20".into())
}

fn c2_induction() -> Outcome {
    for n in 1..=50 {
        ensure(series::induction_residual(n).is_zero(), || format!("n = {n}"))?;
    }
    Ok("residual 0 for n = 1..50".into())
}

fn c3_refined() -> Outcome {
    for n in odd(3, 15) {
        for t in BOTH {
            passes(congruence::verify_refined(n, t), &format!("n = {n}, M = {}", t.as_str()))?;
        }
    }
    Ok("odd n = 3..15, M half and full".into())
}

fn c4_weak() -> Outcome {
    for n in odd(3, 15) {
        for t in BOTH {
            passes(congruence::verify_weak(n, t), &format!("n = {n}, M = {}", t.as_str()))?;
        }
    }
    Ok("odd n = 3..15, M half and full".into())
}

fn c5_param_identity() -> Outcome {
    for n in 2..=8 {
        let lhs = series::sum_s_param(n - 1);
        let rhs = series::closed_param_t(n);
        // cleared denominators: lhs.num * rhs.den == rhs.num * lhs.den
        let (ln, rn, _) = lhs.over_common_den(&rhs);
        ensure(ln == rn, || format!("n = {n}: cleared numerators differ"))?;
        let at_one = rhs.specialize_a(0).map_err(|e| e.to_string())?;
        ensure(at_one == series::closed_t(n), || format!("n = {n}: a = 1 specialization"))?;
    }
    Ok("n = 2..8, with a = 1 specialization".into())
}

/// Long division in `a` over Q(q) by `[n]_{q^2}^2 (1 - a q^{2n})(a - q^{2n})`.
fn brute_divisible(num: &BiLaurentPoly, n: i64) -> bool {
    if num.is_zero() {
        return true;
    }
    let qn2 = LaurentPoly::from_terms((0..n).map(|i| (2 * i, rat_int(1)))).pow(2);
    let mono = |c: i64, e: i64| LaurentPoly::monomial(rat_int(c), e);
    let m = [&mono(-1, 2 * n) * &qn2, &(&mono(1, 0) + &mono(1, 4 * n)) * &qn2, &mono(-1, 2 * n) * &qn2]
        .map(RationalFunction::from_poly);
    let (lo, hi) = num.a_span().unwrap();
    let mut r: Vec<RationalFunction> = (lo..=hi).map(|i| RationalFunction::from_poly(num.coeff_of_a(i))).collect();
    let mut quotient = Vec::new();
    for top in (2..r.len()).rev() {
        let c = r[top].checked_div(&m[2]).unwrap();
        for (j, mj) in m.iter().enumerate() {
            r[top - 2 + j] = &r[top - 2 + j] - &(&c * mj);
        }
        quotient.push(c);
    }
    r.iter().all(|x| x.is_zero()) && quotient.iter().all(|c| c.is_polynomial())
}

fn c6_param_congruence() -> Outcome {
    for n in odd(3, 11) {
        for t in BOTH {
            passes(congruence::verify_param(n, t), &format!("n = {n}, M = {}", t.as_str()))?;
        }
    }
    let m = Modulus::param(3);
    for t in BOTH {
        let num = series::sum_s_param(t.upper(3) as u32).num().clone();
        let perturbed = &num + &BiLaurentPoly::monomial(rat_int(1), 1, 0);
        for (x, want) in [(num, true), (perturbed, false)] {
            let factored = check_bivariate(&x, &m).map_err(|e| e.to_string())?.passed();
            let brute = brute_divisible(&x, 3);
            ensure(factored == brute && brute == want, || {
                format!("n = 3, M = {}: factored {factored}, brute force {brute}, expected {want}", t.as_str())
            })?;
        }
    }
    Ok("odd n = 3..11, M half and full; n = 3 matches brute-force division".into())
}

fn c7_corollary() -> Outcome {
    for (p, r) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2)] {
        for t in BOTH {
            passes(congruence::verify_corollary(p, r, t), &format!("p = {p}, r = {r}, M = {}", t.as_str()))?;
        }
    }
    Ok("(p, r) in {3,5,7}x{1} and (3,2), M half and full".into())
}

fn c8_lemmas() -> Outcome {
    for n in odd(3, 15) {
        passes(congruence::verify_lemma_poch_ratio(n), &format!("poch ratio n = {n}"))?;
        passes(congruence::verify_qbinom_central(n), &format!("central binomial n = {n}"))?;
        passes(congruence::verify_minus_poch(n), &format!("(-q^2;q^2)_n n = {n}"))?;
    }
    passes(congruence::gcd_facts(25, 25), "gcd facts")?;
    for n in odd(3, 11) {
        let h = series::halfcase_rhs(n).map_err(|e| e.to_string())?;
        ensure(h == series::sum_s(n.div_ceil(2)), || format!("halfcase n = {n}"))?;
        let rel = series::halfcase_param_relation(n).map_err(|e| e.to_string())?;
        ensure(rel.is_zero(), || format!("parametric halfcase n = {n}"))?;
    }
    for n in 1..=12 {
        ensure(series::restated_rhs(n) == series::closed_t(n), || format!("restated n = {n}"))?;
    }
    Ok("congruence lemmas odd n = 3..15, gcd facts to 25, halfcase to 11, restatement to 12".into())
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

fn c9_classical() -> Outcome {
    for n in 1..=30 {
        ensure(series::classical_sum(n - 1) == series::classical_closed(n), || format!("n = {n}"))?;
    }
    for k in 1..=15u32 {
        let ratio = FactorProduct::poch(-2, 4, k, 1)
            .and_then(|a| Ok(a.mul(&FactorProduct::poch(4, 4, k, -1)?)))
            .map_err(|e| e.to_string())?;
        let got = factor_limit_q1(&ratio).map_err(|e| e.to_string())?;
        let want = BigRational::new(-binom(2 * k as u64, k as u64), BigInt::from(4).pow(k) * (2 * k as i64 - 1));
        ensure(got == want, || format!("limit k = {k}: {got} != {want}"))?;
    }
    Ok("classical identity n = 1..30, q -> 1 limits k = 1..15".into())
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=8, small_rat()), 0..=max_terms).prop_map(LaurentPoly::from_terms)
}

fn nonzero(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn c10_kernel() -> Outcome {
    let config = Config { cases: 500, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (laurent(6), nonzero(3), nonzero(3), nonzero(3), nonzero(3));
    runner
        .run(&strategy, |(p, d, c, x, y)| {
            let (quot, rem) = p.divrem(&d).unwrap();
            prop_assert_eq!(&(&quot * &d) + &rem, p.clone());
            if let (Some((lo, hi)), Some((dlo, dhi)), Some(plo)) = (rem.degree_span(), d.degree_span(), p.min_exp()) {
                prop_assert!(lo >= plo && hi - plo < dhi - dlo);
            }
            let (cx, cy) = (&c * &x, &c * &y);
            let g = cx.gcd(&cy).unwrap();
            prop_assert!(cx.divisible_by(&g).unwrap() && cy.divisible_by(&g).unwrap());
            prop_assert!(g.divisible_by(&c).unwrap());
            let plain = RationalFunction::new(x.clone(), y.clone()).unwrap();
            let scaled = RationalFunction::new(cx, cy).unwrap();
            prop_assert_eq!(plain.num(), scaled.num());
            prop_assert_eq!(plain.den(), scaled.den());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for n in 1..=50u64 {
        let prod = divisors(n).into_iter().fold(LaurentPoly::one(), |acc, d| &acc * &qkit::cyclotomic(d));
        let want = &LaurentPoly::monomial(rat_int(1), n as i64) - &LaurentPoly::one();
        ensure(prod == want, || format!("cyclotomic product n = {n}"))?;
    }
    for n in 1..=20u32 {
        for k in 1..n as i64 {
            let lhs = qkit::qbinom(n, k, 1);
            let rhs =
                &qkit::qbinom(n - 1, k - 1, 1) + &(&LaurentPoly::monomial(rat_int(1), k) * &qkit::qbinom(n - 1, k, 1));
            ensure(lhs == rhs, || format!("Pascal n = {n}, k = {k}"))?;
        }
    }
    Ok("500 random divrem/gcd/reduction instances, cyclotomic product n <= 50, Pascal n <= 20".into())
}

const S_TEXT: &str = "sum(k,0,n-1, qint(4*k-1;2)*qint(4*k-1;1)^2 * poch(-2;4;k)^4 / poch(4;4;k)^4 * q^(4*k))";

const BAD_INPUTS: [&str; 16] = [
    "",
    "(",
    "(1",
    "qint(3;",
    "1 + $",
    "foo(1)",
    "qint(1;2;3)",
    "qint(k*k; 2)",
    "q^(1/2)",
    "3/0",
    "sum(1, 0, 2, q)",
    "poch(-2;4)",
    "1 +* 2",
    "q^^2",
    "))",
    "sum(k,0,n-1,",
];

fn c11_dsl_and_cli() -> Outcome {
    let s = dsl::parse(S_TEXT).map_err(|e| e.to_string())?;
    for n in 1..=6 {
        let b = Binding::new().with("n", n).map_err(|e| e.to_string())?;
        let v = dsl::eval(&s, &b).map_err(|e| e.to_string())?;
        ensure(v.as_univariate() == Some(&series::sum_s(n as u32 - 1)), || format!("DSL sum n = {n}"))?;
    }
    for text in BAD_INPUTS {
        let r = catch_unwind(|| dsl::parse(text)).map_err(|_| format!("parser panicked on {text:?}"))?;
        let e = r.err().ok_or_else(|| format!("{text:?} parsed"))?;
        let pos = e.position().ok_or_else(|| format!("{text:?}: no position in {e}"))?;
        ensure((1..=text.len() + 1).contains(&pos), || format!("{text:?}: position {pos}"))?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs: [&[&str]; 3] = [
        &["congruence", "--family", "refined", "--n", "3..11"],
        &["lemmas", "--n", "3..9"],
        &["identity", "--n", "1..12"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut reports = Vec::new();
        for jobs in ["1", "4"] {
            let path = dir.path().join(format!("r{i}-{jobs}.json"));
            let status = Command::new(env!("CARGO_BIN_EXE_qcert"))
                .args(*args)
                .args(["--jobs", jobs, "--no-timing", "--json"])
                .arg(&path)
                .env_remove("QCERT_JOBS")
                .output()
                .map_err(|e| e.to_string())?
                .status;
            ensure(status.success(), || format!("{args:?} --jobs {jobs}: {status}"))?;
            reports.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(reports[0] == reports[1], || format!("{args:?}: reports differ between 1 and 4 jobs"))?;
    }
    Ok("DSL sum n = 1..6, 16 malformed inputs positioned, serial and parallel reports identical".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("truncated sum identity", c1_identity),
        ("induction relation", c2_induction),
        ("refined congruences", c3_refined),
        ("weak congruences", c4_weak),
        ("parametric identity", c5_param_identity),
        ("parametric congruence", c6_param_congruence),
        ("p-adic corollary", c7_corollary),
        ("lemma suite", c8_lemmas),
        ("classical identity", c9_classical),
        ("kernel properties", c10_kernel),
        ("DSL and CLI", c11_dsl_and_cli),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
