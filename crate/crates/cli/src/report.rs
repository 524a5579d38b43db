use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use torelli_core::reptheory::Partition;
use torelli_core::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    /// The statement this check reproduces, or `"derived"` for regression
    /// values computed by this crate.
    pub anchor: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    /// Seconds, only present when timings were requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    /// `pass` iff every non-skipped check passes.
    pub status: Status,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> VerificationReport {
        let ok = checks.iter().all(|c| c.status != Status::Fail);
        VerificationReport {
            suite: suite.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            checks,
        }
    }

    pub fn passes(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Aligned plain-text table followed by a summary line.
    pub fn to_text(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .checks
            .iter()
            .map(|c| {
                let mut computed = render_value(&c.computed);
                if let Some(t) = &c.wall_time {
                    write!(computed, "  [{t}]").unwrap();
                }
                [
                    c.status.label().to_string(),
                    c.id.clone(),
                    render_value(&c.expected),
                    computed,
                    c.anchor.clone(),
                ]
            })
            .collect();
        let header = ["status", "id", "expected", "computed", "anchor"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for r in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = r
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell}{}", " ".repeat(w - cell.chars().count())))
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        writeln!(
            out,
            "suite {}: {} ({} passed, {} failed, {} skipped)",
            self.suite,
            self.status.label(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        )
        .unwrap();
        out
    }
}

/// Exact `"p/q"`, with the denominator always written.
pub fn rational(x: &Scalar) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

/// `[{"partition": [...], "multiplicity": m}, ...]`.
pub fn decomposition<'a>(entries: impl IntoIterator<Item = (&'a Partition, u64)>) -> Value {
    Value::Array(
        entries
            .into_iter()
            .map(|(p, m)| json!({"partition": partition(p), "multiplicity": m}))
            .collect(),
    )
}

/// Compact single-line rendering used by the text table.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items)
            if items.iter().all(|i| i.get("multiplicity").is_some()) && !items.is_empty() =>
        {
            items
                .iter()
                .map(|i| format!("{}:{}", render_value(&i["partition"]), i["multiplicity"]))
                .collect::<Vec<_>>()
                .join(" ")
        }
        Value::Array(items) if items.iter().all(Value::is_u64) => {
            if items.is_empty() {
                "0".to_string()
            } else {
                items
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use torelli_core::ratio;

    fn check(id: &str, status: Status) -> Check {
        Check {
            id: id.into(),
            anchor: "derived".into(),
            status,
            expected: json!("1"),
            computed: json!("1"),
            wall_time: None,
        }
    }

    #[test]
    fn suite_status_ignores_skips() {
        let r = VerificationReport::new(
            "x",
            vec![check("a", Status::Pass), check("b", Status::Skipped)],
        );
        assert!(r.passes());
        let r = VerificationReport::new(
            "x",
            vec![check("a", Status::Fail), check("b", Status::Pass)],
        );
        assert!(!r.passes());
    }

    #[test]
    fn exact_values() {
        assert_eq!(rational(&ratio(-6, 4)), json!("-3/2"));
        assert_eq!(rational(&ratio(5, 1)), json!("5/1"));
        let p: Partition = "2,2,1,1".parse().unwrap();
        assert_eq!(partition(&p), json!([2, 2, 1, 1]));
        let d = decomposition([(&p, 1), (&Partition::empty(), 2)]);
        assert_eq!(render_value(&d), "2,2,1,1:1 0:2");
    }

    #[test]
    fn json_round_trip_and_wall_time_opt_in() {
        let r = VerificationReport::new("x", vec![check("a", Status::Pass)]);
        let text = r.to_json();
        assert!(!text.contains("wall_time"));
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(r
            .to_text()
            .contains("suite x: PASS (1 passed, 0 failed, 0 skipped)"));
    }
}
