//! Structured reports. JSON is the source of truth; the text form is
//! rendered from the JSON value.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, pass: bool) -> Self {
        Verdict { name: name.to_string(), pass, detail: String::new() }
    }

    pub fn with_detail(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Verdict { name: name.to_string(), pass, detail: detail.into() }
    }

    pub fn from_result<T>(name: &str, r: &nrhw::Result<T>) -> Self {
        match r {
            Ok(_) => Verdict::new(name, true),
            Err(e) => Verdict::with_detail(name, false, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub name: String,
    pub degree: usize,
    pub f: Vec<i64>,
    /// `Ω` as 1-based automorphism indices.
    pub order: Vec<usize>,
}

/// One prime `Q` above `p`. Automorphism indices and positions are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRecord {
    pub p: u64,
    /// Index of `Q` among the primes above `p`.
    pub ideal: usize,
    /// `pS` as a product of prime powers, e.g. `Q1^2` or `Q1 Q2`.
    pub splitting: String,
    pub e: usize,
    pub fdeg: usize,
    pub inertia_order: usize,
    pub inertia: Vec<usize>,
    /// Right cosets `Eσ` of the inertia group.
    pub cosets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verma_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<usize>>>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCounts {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub field: FieldSummary,
    pub primes: Vec<PrimeRecord>,
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteCounts>,
}

impl Report {
    fn all_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().chain(self.primes.iter().flat_map(|p| &p.verdicts))
    }

    pub fn passed(&self) -> bool {
        self.all_verdicts().all(|v| v.pass)
    }

    pub fn counts(&self) -> SuiteCounts {
        let passed = self.all_verdicts().filter(|v| v.pass).count();
        SuiteCounts { passed, failed: self.all_verdicts().count() - passed }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        render(&value, 0, &mut out);
        let c = self.counts();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} ({} passed, {} failed)\n", c.passed, c.failed));
        out
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("pass") => {
            let pass = m["pass"].as_bool() == Some(true);
            let name = m["name"].as_str().unwrap_or_default();
            let detail = m.get("detail").and_then(Value::as_str).map(|d| format!(": {d}")).unwrap_or_default();
            format!("{} {name}{detail}", if pass { "PASS" } else { "FAIL" })
        }
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_flat(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.get("pass").is_some() {
                    out.push_str(&format!("{pad}{}\n", scalar(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        Report {
            command: "split".into(),
            field: FieldSummary { name: "Z[sqrt(2)]".into(), degree: 2, f: vec![-2, 0, 1], order: vec![1, 2] },
            primes: vec![PrimeRecord {
                p: 2,
                ideal: 1,
                splitting: "Q1^2".into(),
                e: 2,
                fdeg: 1,
                inertia_order: 2,
                inertia: vec![1, 2],
                cosets: vec![vec![1, 2]],
                c: Some(vec![vec![2, 1], vec![1, 1]]),
                verdicts: vec![Verdict::new("inertia", true)],
                ..Default::default()
            }],
            verdicts: vec![Verdict::with_detail("field", false, "oops")],
            suite: None,
        }
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = sample();
        let s = r.to_json();
        assert_eq!(Report::from_json(&s).unwrap().to_json(), s);
    }

    #[test]
    fn text_lists_verdicts() {
        let t = sample().to_text();
        assert!(t.contains("FAIL field: oops"));
        assert!(t.contains("PASS inertia"));
        assert!(t.contains("c: [[2,1],[1,1]]"));
        assert!(t.ends_with("FAIL (1 passed, 1 failed)\n"));
    }
}
