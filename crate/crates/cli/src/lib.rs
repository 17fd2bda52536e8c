//! Batch runner behind the `qcert` binary: builds the list of checks for a
//! command, runs them on a bounded worker pool and assembles a
//! deterministic report.

pub mod checks;
pub mod report;

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use report::{CheckReport, Report, Status, Summary};

#[derive(Debug, Parser)]
#[command(name = "qcert", version, about = "Exact checks of q-series identities and congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker threads (defaults to QCERT_JOBS, else the number of CPUs).
    #[arg(long, global = true, env = "QCERT_JOBS")]
    pub jobs: Option<usize>,
    /// Record every elapsed time as 0 so reports are reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MChoice {
    Half,
    Full,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Refined,
    Weak,
    Param,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truncated sum against its closed form.
    Identity {
        #[arg(long, default_value = "1..20", value_parser = parse_range)]
        n: RangeInclusive<u32>,
    },
    /// Parametric sum against its closed form, plus the a = 1 specialization.
    IdentityParam {
        #[arg(long, default_value = "2..8", value_parser = parse_range)]
        n: RangeInclusive<u32>,
    },
    /// The polynomial relation behind the induction step.
    Induction {
        #[arg(long, default_value = "1..50", value_parser = parse_range)]
        n: RangeInclusive<u32>,
    },
    /// Truncated-sum congruences for odd n.
    Congruence {
        #[arg(long, value_enum, default_value = "refined")]
        family: Family,
        /// Defaults to 3..15 (3..11 for the parametric family).
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<u32>>,
        #[arg(long = "M", value_enum, default_value = "both")]
        m: MChoice,
    },
    /// Auxiliary congruences, gcd facts and restatements.
    Lemmas {
        #[arg(long, default_value = "3..15", value_parser = parse_range)]
        n: RangeInclusive<u32>,
    },
    /// The rational identity obtained at q = 1, and the termwise limit.
    Classical {
        #[arg(long, default_value = "1..30", value_parser = parse_range)]
        n: RangeInclusive<u32>,
    },
    /// p-adic congruences for prime powers.
    Corollary {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        r: Vec<u32>,
        #[arg(long = "M", value_enum, default_value = "both")]
        m: MChoice,
    },
    /// Evaluate an expression, or check `expr ≡ rhs (mod modulus)`.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "")]
        bind: String,
        #[arg(long, requires = "modulus")]
        rhs: Option<String>,
        #[arg(long, requires = "rhs")]
        modulus: Option<String>,
        /// Bind n to each value in this range, one check per value.
        #[arg(long, value_parser = parse_range)]
        n: Option<RangeInclusive<u32>>,
    },
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// A configuration problem detected after argument parsing; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Worker count: explicit flag (or QCERT_JOBS), else available parallelism.
pub fn worker_count(jobs: Option<usize>) -> usize {
    jobs.filter(|j| *j > 0).unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// Builds and runs the checks for `cli`, printing the table to `out`.
pub fn run(cli: &Cli, out: &mut dyn std::io::Write) -> Result<Report, UsageError> {
    let plan = checks::plan(&cli.command)?;
    writeln!(out, "{}", plan.header).ok();
    for note in &plan.notes {
        writeln!(out, "note: {note}").ok();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(cli.jobs))
        .build()
        .map_err(|e| UsageError(format!("cannot start worker pool: {e}")))?;
    let mut reports = pool.install(|| checks::execute(plan.checks, !cli.no_timing));
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    report::print_table(&reports, out);
    Ok(Report::new(reports))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..12"), Ok(1..=12));
        assert_eq!(parse_range("1..=12"), Ok(1..=12));
        assert_eq!(parse_range("7"), Ok(7..=7));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn worker_count_defaults() {
        assert_eq!(worker_count(Some(3)), 3);
        assert!(worker_count(Some(0)) >= 1);
        assert!(worker_count(None) >= 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        // exit code is 0 iff nothing failed, was ill-posed or errored
        #[test]
        fn exit_code_matches_summary(statuses in prop::collection::vec(0u8..4, 0..12)) {
            let checks: Vec<CheckReport> = statuses
                .iter()
                .enumerate()
                .map(|(i, s)| CheckReport {
                    check_id: format!("c{i:02}"),
                    params: Default::default(),
                    status: [Status::Pass, Status::Fail, Status::IllPosed, Status::Error][*s as usize],
                    residual_summary: String::new(),
                    degrees: Vec::new(),
                    elapsed_ms: 0,
                })
                .collect();
            let r = Report::new(checks);
            let s = r.summary;
            prop_assert_eq!(r.exit_code() == 0, s.fail == 0 && s.ill_posed == 0 && s.error == 0);
            prop_assert_eq!(s.pass + s.fail + s.ill_posed + s.error, statuses.len());
        }

        // a sequence of identity checks runs identically on any pool size
        #[test]
        fn pool_size_does_not_change_reports(hi in 1u32..6, jobs in 1usize..5) {
            let make = |j: usize| {
                let cli = Cli::try_parse_from(["qcert", "identity", "--n", &format!("1..{hi}"), "--no-timing", "--jobs", &j.to_string()]).unwrap();
                run(&cli, &mut Vec::new()).unwrap().to_json()
            };
            prop_assert_eq!(make(1), make(jobs));
        }
    }
}
