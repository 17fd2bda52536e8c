//! Mapping from commands to individual checks, and their execution.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;

use qcert_core::arith::{LaurentPoly, RationalFunction};
use qcert_core::congruence::{self, Truncation, Verdict};
use qcert_core::dsl::{self, Binding, Expr};
use qcert_core::series;

use crate::report::{CheckReport, Status};
use crate::{Command, Family, MChoice, UsageError};

/// Result of running one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub degrees: Vec<i64>,
}

impl Outcome {
    fn pass(summary: impl Into<String>, degrees: Vec<i64>) -> Self {
        Outcome { status: Status::Pass, summary: summary.into(), degrees }
    }

    fn fail(summary: impl Into<String>, degrees: Vec<i64>) -> Self {
        Outcome { status: Status::Fail, summary: summary.into(), degrees }
    }

    fn error(summary: impl Into<String>) -> Self {
        Outcome { status: Status::Error, summary: summary.into(), degrees: Vec::new() }
    }

    fn from_verdict(v: Verdict) -> Self {
        let status = match v.status {
            congruence::Status::Pass => Status::Pass,
            congruence::Status::Fail => Status::Fail,
            congruence::Status::IllPosed => Status::IllPosed,
        };
        let mut degrees = Vec::new();
        if let Some((lo, hi)) = v.residual_degree_span {
            degrees.extend([lo, hi]);
        }
        degrees.extend(v.quotient_degree);
        let mut summary = v.summary();
        for n in &v.notes {
            summary.push_str("; ");
            summary.push_str(n);
        }
        Outcome { status, summary, degrees }
    }

    fn from_result(r: qcert_core::Result<Verdict>) -> Self {
        r.map(Self::from_verdict).unwrap_or_else(|e| Self::error(e.to_string()))
    }
}

type Job = Box<dyn Fn() -> Outcome + Send + Sync>;

/// One unit of work.
pub struct Check {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub job: Job,
}

impl Check {
    fn new(id: String, params: &[(&str, i64)], job: impl Fn() -> Outcome + Send + Sync + 'static) -> Self {
        let params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Check { id, params, job: Box::new(job) }
    }
}

/// Checks for one command, with the text printed above the table.
pub struct Plan {
    pub header: String,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

/// Runs every check on the current rayon pool. Panics become `error`.
pub fn execute(checks: Vec<Check>, timing: bool) -> Vec<CheckReport> {
    checks
        .into_par_iter()
        .map(|c| {
            let start = Instant::now();
            let outcome = catch_unwind(AssertUnwindSafe(|| (c.job)())).unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| p.downcast_ref::<String>().cloned())
                    .unwrap_or_else(|| "panic".into());
                Outcome::error(format!("panicked: {msg}"))
            });
            let elapsed_ms = if timing { start.elapsed().as_millis() as u64 } else { 0 };
            CheckReport {
                check_id: c.id,
                params: c.params,
                status: outcome.status,
                residual_summary: outcome.summary,
                degrees: outcome.degrees,
                elapsed_ms,
            }
        })
        .collect()
}

fn truncations(m: MChoice) -> Vec<Truncation> {
    match m {
        MChoice::Half => vec![Truncation::Half],
        MChoice::Full => vec![Truncation::Full],
        MChoice::Both => vec![Truncation::Half, Truncation::Full],
    }
}

fn min_n(cmd: &str, r: &RangeInclusive<u32>, min: u32) -> Result<(), UsageError> {
    if *r.start() < min {
        return Err(UsageError(format!("{cmd}: --n must start at {min} or more")));
    }
    Ok(())
}

/// Odd values of `r`, plus a note naming the skipped even ones.
fn odd_only(r: &RangeInclusive<u32>, notes: &mut Vec<String>) -> Vec<u32> {
    let (odd, even): (Vec<u32>, Vec<u32>) = r.clone().partition(|n| n % 2 == 1);
    if !even.is_empty() {
        let list: Vec<String> = even.iter().map(u32::to_string).collect();
        notes.push(format!("skipped even n: {}", list.join(", ")));
    }
    odd
}

fn id(parts: &[String]) -> String {
    parts.join("/")
}

fn n_tag(n: u32) -> String {
    format!("n={n:03}")
}

fn poly_degrees(p: &LaurentPoly) -> Vec<i64> {
    p.degree_span().map(|(a, b)| vec![a, b]).unwrap_or_default()
}

fn rf_degrees(r: &RationalFunction) -> Vec<i64> {
    let mut d = poly_degrees(r.num());
    d.push(r.den_factors().degree());
    d
}

fn equal_rf(lhs: &RationalFunction, rhs: &RationalFunction) -> Outcome {
    if lhs == rhs {
        Outcome::pass(format!("equal, {}", lhs.shape()), rf_degrees(lhs))
    } else {
        let diff = lhs - rhs;
        Outcome::fail(format!("difference {}", diff.shape()), rf_degrees(&diff))
    }
}

fn zero_poly(p: qcert_core::Result<LaurentPoly>) -> Outcome {
    match p {
        Ok(p) if p.is_zero() => Outcome::pass("residual 0", Vec::new()),
        Ok(p) => Outcome::fail(format!("residual has {} terms", p.len()), poly_degrees(&p)),
        Err(e) => Outcome::error(e.to_string()),
    }
}

const T_FORMULA: &str =
    "sum_{k=0}^{n-1} q^{4k}(1-q^{2(4k-1)})(1-q^{4k-1})^2 (q^{-2};q^4)_k^4 / ((1-q^2)(1-q)^2 (q^4;q^4)_k^4) \
= (q^{2n}+1)^4 [n]_{q^2}^4 (q^{-2};q^4)_n^4 / (q^4;q^4)_n^4 * f_n(q)";

pub fn plan(cmd: &Command) -> Result<Plan, UsageError> {
    let mut notes = Vec::new();
    let mut checks = Vec::new();
    let header = match cmd {
        Command::Identity { n } => {
            min_n("identity", n, 1)?;
            for n in n.clone() {
                checks.push(Check::new(id(&["identity".into(), n_tag(n)]), &[("n", n as i64)], move || {
                    equal_rf(&series::sum_s(n - 1), &series::closed_t(n))
                }));
            }
            format!("identity: {T_FORMULA}")
        }
        Command::IdentityParam { n } => {
            min_n("identity-param", n, 2)?;
            for n in n.clone() {
                let p = [("n", n as i64)];
                checks.push(Check::new(id(&["identity-param".into(), n_tag(n), "sum".into()]), &p, move || {
                    let lhs = series::sum_s_param(n - 1);
                    let rhs = series::closed_param_t(n);
                    if lhs == rhs {
                        Outcome::pass(format!("equal, {} numerator terms", lhs.num().num_terms()), Vec::new())
                    } else {
                        Outcome::fail("sum and closed form differ", Vec::new())
                    }
                }));
                checks.push(Check::new(id(&["identity-param".into(), n_tag(n), "a=1".into()]), &p, move || {
                    match series::closed_param_t(n).specialize_a(0) {
                        Ok(r) => equal_rf(&r, &series::closed_t(n)),
                        Err(e) => Outcome::error(e.to_string()),
                    }
                }));
            }
            "identity-param: sum_{k=0}^{n-1} of the a-deformed summand = closed form with f_n(a,q); at a = 1 it reduces to the unparametrized closed form".into()
        }
        Command::Induction { n } => {
            min_n("induction", n, 1)?;
            for n in n.clone() {
                checks.push(Check::new(id(&["induction".into(), n_tag(n)]), &[("n", n as i64)], move || {
                    zero_poly(Ok(series::induction_residual(n)))
                }));
            }
            "induction: (1-q^{4n})^4 f_n(q) + (1-q^{2(4n-1)})(1-q^{4n-1})^2 (1-q)(1+q)^3 q^{4n} = (1-q^{4n-2})^4 f_{n+1}(q)".into()
        }
        Command::Congruence { family, n, m } => {
            let default = if *family == Family::Param { 3..=11 } else { 3..=15 };
            let range = n.clone().unwrap_or(default);
            min_n("congruence", &range, 3)?;
            let (name, formula) = match family {
                Family::Refined => {
                    ("refined", "sum_{k=0}^{M} ≡ (2q+2q^{-1}-1)[n]_{q^2}^4 (mod [n]_{q^2}^4 Phi_n(q^2))")
                }
                Family::Weak => ("weak", "sum_{k=0}^{M} ≡ 0 (mod [n]_{q^2} Phi_n(q^2)^3)"),
                Family::Param => ("param", "sum_{k=0}^{M} (a-deformed) ≡ 0 (mod [n]_{q^2}^2 (1-aq^{2n})(a-q^{2n}))"),
            };
            let f = match family {
                Family::Refined => congruence::verify_refined,
                Family::Weak => congruence::verify_weak,
                Family::Param => congruence::verify_param,
            };
            for n in odd_only(&range, &mut notes) {
                for t in truncations(*m) {
                    let upper = t.upper(n as u64) as i64;
                    let cid = id(&["congruence".into(), name.into(), n_tag(n), format!("M={}", t.as_str())]);
                    checks
                        .push(Check::new(cid, &[("n", n as i64), ("M", upper)], move || Outcome::from_result(f(n, t))));
                }
            }
            format!("congruence/{name}: {formula}, M = (n+1)/2 (half) or n-1 (full)")
        }
        Command::Lemmas { n } => {
            min_n("lemmas", n, 3)?;
            let top = *n.end();
            for n in odd_only(n, &mut notes) {
                let p = [("n", n as i64)];
                let lemma = |name: &str| id(&["lemmas".into(), name.into(), n_tag(n)]);
                checks.push(Check::new(lemma("poch-ratio"), &p, move || {
                    Outcome::from_result(congruence::verify_lemma_poch_ratio(n))
                }));
                checks.push(Check::new(lemma("qbinom-central"), &p, move || {
                    Outcome::from_result(congruence::verify_qbinom_central(n))
                }));
                checks.push(Check::new(lemma("minus-poch"), &p, move || {
                    Outcome::from_result(congruence::verify_minus_poch(n))
                }));
                checks.push(Check::new(lemma("halfcase"), &p, move || match series::halfcase_rhs(n) {
                    Ok(r) => equal_rf(&series::sum_s(n.div_ceil(2)), &r),
                    Err(e) => Outcome::error(e.to_string()),
                }));
                checks.push(Check::new(lemma("halfcase-param"), &p, move || {
                    zero_poly(series::halfcase_param_relation(n))
                }));
                checks.push(Check::new(lemma("restated"), &p, move || {
                    equal_rf(&series::restated_rhs(n), &series::closed_t(n))
                }));
                checks.push(Check::new(lemma("central-ratio"), &p, move || {
                    zero_poly(Ok(series::central_ratio_residual(n, 1)))
                }));
            }
            let m_max = 2 * top;
            checks.push(Check::new(
                "lemmas/gcd-facts".into(),
                &[("n_max", top as i64), ("m_max", m_max as i64)],
                move || Outcome::from_result(congruence::gcd_facts(top, m_max)),
            ));
            [
                "lemmas:",
                "  poch-ratio      (q^{-2};q^4)_{(n+1)/2} / (q^4;q^4)_{(n+1)/2} ≡ (-1)^{(n+1)/2} q^{(n-1)^2/2-2} (mod Phi_n(q^2))",
                "  qbinom-central  [2n,n]_{q^2} ≡ 2(-1)^{n-1} q^{n(n-1)} ≡ 2 (mod Phi_n(q^2))",
                "  minus-poch      (-q^2;q^2)_n ≡ 2 (mod Phi_n(q^2))",
                "  halfcase        sum_{k=0}^{(n+1)/2} = [n]_{q^2}^4 (q^{-2};q^4)_{(n+1)/2}^4 / (q^4;q^4)_{(n+1)/2}^4 * f_{(n+3)/2}(q)",
                "  halfcase-param  [(n+3)/2]_{q^2}^2 [n+3,(n+3)/2]_{q^2}^2 / (1-q^{2n+4})^2 = [n]_{q^2}^2 [n-1,(n-1)/2]_{q^2}^2 (1+q^{n+3})^2 (1+q^{n+1})^2 / (1-q^{n+1})^2",
                "  restated        closed form = (q^{2n}+1)^4 [n]_{q^2}^4 (q^2-1)^4 / ((q^2-q^{4n})^4 (-q^2;q^2)_n^8) * [2n,n]_{q^2}^4 * f_n(q)",
                "  central-ratio   (q;q^2)_n / (q^2;q^2)_n = [2n,n]_q / (-q;q)_n^2",
                "  gcd-facts       gcd(1-q^n, 1+q^m) = 1 and gcd([n], [2n-1]) = 1 for odd n",
            ]
            .join("\n")
        }
        Command::Classical { n } => {
            min_n("classical", n, 1)?;
            for n in n.clone() {
                checks.push(Check::new(
                    id(&["classical".into(), "identity".into(), n_tag(n)]),
                    &[("n", n as i64)],
                    move || {
                        let (lhs, rhs) = (series::classical_sum(n - 1), series::classical_closed(n));
                        if lhs == rhs {
                            Outcome::pass(format!("equal, {lhs}"), Vec::new())
                        } else {
                            Outcome::fail(format!("{lhs} != {rhs}"), Vec::new())
                        }
                    },
                ));
                checks.push(Check::new(
                    id(&["classical".into(), "limit".into(), format!("k={n:03}")]),
                    &[("k", n as i64)],
                    move || match series::summand_limit_q1(n) {
                        Ok(l) if l == series::classical_summand(n) => Outcome::pass(format!("limit {l}"), Vec::new()),
                        Ok(l) => Outcome::fail(format!("limit {l} != {}", series::classical_summand(n)), Vec::new()),
                        Err(e) => Outcome::error(e.to_string()),
                    },
                ));
            }
            "classical: sum_{k=0}^{n-1} (4k-1)^3 C(2k,k)^4 / (256^k (2k-1)^4) = 16n^4 (8n^2-12n+3) C(2n,n)^4 / (256^n (2n-1)^4); limit: q -> 1 of the k-th q-summand".into()
        }
        Command::Corollary { p, r, m } => {
            if p.is_empty() || r.is_empty() {
                return Err(UsageError("corollary: --p and --r must be nonempty".into()));
            }
            for &p in p {
                if p < 3 || !congruence::is_prime(p) {
                    return Err(UsageError(format!("corollary: {p} is not an odd prime")));
                }
            }
            if r.contains(&0) {
                return Err(UsageError("corollary: r must be >= 1".into()));
            }
            let mut ps = p.clone();
            ps.sort_unstable();
            ps.dedup();
            let mut rs = r.clone();
            rs.sort_unstable();
            rs.dedup();
            for &p in &ps {
                for &r in &rs {
                    for t in truncations(*m) {
                        let cid = id(&[
                            "corollary".into(),
                            format!("p={p:03}"),
                            format!("r={r:02}"),
                            format!("M={}", t.as_str()),
                        ]);
                        checks.push(Check::new(cid, &[("p", p as i64), ("r", r as i64)], move || {
                            Outcome::from_result(congruence::verify_corollary(p, r, t))
                        }));
                    }
                }
            }
            "corollary: sum_{k=0}^{M} (4k-1)^3 C(2k,k)^4 / (256^k (2k-1)^4) ≡ 3p^{4r} (mod p^{4r+1}), M = (p^r+1)/2 (half) or p^r-1 (full)".into()
        }
        Command::Eval { expr, bind, rhs, modulus, n } => {
            let parse = |label: &str, text: &str| {
                dsl::parse(text).map_err(|e| UsageError(format!("{label}: {}", describe(text, &e))))
            };
            let lhs = parse("--expr", expr)?;
            let binding = Binding::parse(bind).map_err(|e| UsageError(format!("--bind: {e}")))?;
            let relation = match (rhs, modulus) {
                (Some(r), Some(m)) => Some((parse("--rhs", r)?, parse("--modulus", m)?)),
                _ => None,
            };
            let header = match &relation {
                Some((r, m)) => format!("eval: {} ≡ {} (mod {})", dsl::render(&lhs), dsl::render(r), dsl::render(m)),
                None => format!("eval: {}", dsl::render(&lhs)),
            };
            let ns: Vec<Option<u32>> = match n {
                Some(r) => r.clone().map(Some).collect(),
                None => vec![None],
            };
            for n in ns {
                let mut b = binding.clone();
                let (cid, params) = match n {
                    Some(n) => {
                        b.bind("n", n as i64).map_err(|e| UsageError(format!("--n: {e}")))?;
                        (id(&["eval".into(), n_tag(n)]), vec![("n", n as i64)])
                    }
                    None => ("eval".to_string(), Vec::new()),
                };
                let (lhs, relation) = (lhs.clone(), relation.clone());
                checks.push(Check::new(cid, &params, move || eval_job(&lhs, relation.as_ref(), &b)));
            }
            header
        }
    };
    Ok(Plan { header, notes, checks })
}

fn eval_job(lhs: &Expr, relation: Option<&(Expr, Expr)>, b: &Binding) -> Outcome {
    match relation {
        Some((rhs, m)) => match dsl::congruence_eval(lhs, rhs, m, b) {
            Ok(v) => Outcome::from_verdict(v),
            Err(e) => Outcome::error(e.to_string()),
        },
        None => match dsl::eval(lhs, b) {
            Ok(v) => Outcome::pass(v.to_string(), Vec::new()),
            Err(e) => Outcome::error(e.to_string()),
        },
    }
}

/// An error message with a caret under the offending column.
pub fn describe(text: &str, e: &dsl::DslError) -> String {
    match e.position() {
        Some(pos) => format!("{e}\n  {text}\n  {}^", " ".repeat(pos.saturating_sub(1))),
        None => e.to_string(),
    }
}
