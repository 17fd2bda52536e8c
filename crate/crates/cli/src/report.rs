//! Check reports, the summary table and the JSON document.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    IllPosed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::IllPosed => "ill-posed",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub residual_summary: String,
    pub degrees: Vec<i64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub ill_posed: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl Report {
    /// Sorts `checks` by id and tallies them.
    pub fn new(mut checks: Vec<CheckReport>) -> Self {
        checks.sort_by(|a, b| a.check_id.cmp(&b.check_id));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::IllPosed => summary.ill_posed += 1,
                Status::Error => summary.error += 1,
            }
        }
        Report { tool_version: env!("CARGO_PKG_VERSION").into(), checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        let s = self.summary;
        s.fail == 0 && s.ill_posed == 0 && s.error == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes the JSON document; on failure the partial file is removed.
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let result = std::fs::File::create(path).and_then(|mut f| {
            f.write_all(self.to_json().as_bytes())?;
            f.sync_all()
        });
        if result.is_err() {
            let _ = std::fs::remove_file(path);
        }
        result
    }
}

pub fn print_table(checks: &[CheckReport], out: &mut dyn Write) {
    let w = checks.iter().map(|c| c.check_id.len()).max().unwrap_or(5).max(5);
    writeln!(out, "{:<w$}  {:<9}  {:>8}  summary", "check", "status", "ms").ok();
    for c in checks {
        writeln!(out, "{:<w$}  {:<9}  {:>8}  {}", c.check_id, c.status.as_str(), c.elapsed_ms, c.residual_summary).ok();
    }
    let r = Report::new(checks.to_vec());
    let s = r.summary;
    writeln!(out, "pass {}, fail {}, ill-posed {}, error {}", s.pass, s.fail, s.ill_posed, s.error).ok();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(id: &str, status: Status) -> CheckReport {
        CheckReport {
            check_id: id.into(),
            params: BTreeMap::new(),
            status,
            residual_summary: String::new(),
            degrees: Vec::new(),
            elapsed_ms: 0,
        }
    }

    #[test]
    fn empty_report() {
        let r = Report::new(Vec::new());
        assert!(r.checks.is_empty());
        assert_eq!(r.summary, Summary::default());
        assert_eq!(r.exit_code(), 0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
    }

    #[test]
    fn single_pass() {
        let r = Report::new(vec![check("a", Status::Pass)]);
        assert_eq!(r.summary, Summary { pass: 1, fail: 0, ill_posed: 0, error: 0 });
    }

    #[test]
    fn ordering_and_exit_code() {
        let r = Report::new(vec![check("c", Status::Pass), check("a", Status::IllPosed), check("b", Status::Error)]);
        let ids: Vec<_> = r.checks.iter().map(|c| c.check_id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_json().contains("\"ill-posed\""));
    }
}
