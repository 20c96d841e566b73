//! Versioned verification report and its renderers.

use std::fmt::Write;

use fibcheck_core::citations::Cite;
use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Statements no desk-scale computation here attempts.
pub const OUT_OF_SCOPE: [&str; 3] = [
    "moduli of K3 surfaces and their dimension counts",
    "existence of hyperkaehler (Ricci-flat) metrics",
    "holonomy groups computed from a metric",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "DERIVED-PASS")]
    DerivedPass,
    #[serde(rename = "DERIVED-FAIL")]
    DerivedFail,
    #[serde(rename = "DOCUMENTED-RULE")]
    DocumentedRule,
    #[serde(rename = "DISCREPANCY")]
    Discrepancy,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::DerivedPass => "DERIVED-PASS",
            Status::DerivedFail => "DERIVED-FAIL",
            Status::DocumentedRule => "DOCUMENTED-RULE",
            Status::Discrepancy => "DISCREPANCY",
        }
    }

    pub fn derived(ok: bool) -> Status {
        if ok {
            Status::DerivedPass
        } else {
            Status::DerivedFail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub check_id: String,
    pub citation: &'static str,
    pub status: Status,
    pub payload: Value,
}

impl Record {
    /// Documented records are tagged as asserted by the source, not computed.
    pub fn new(check_id: impl Into<String>, cite: Cite, status: Status, payload: Value) -> Self {
        let mut payload = payload;
        if status == Status::DocumentedRule {
            if let Value::Object(m) = &mut payload {
                m.insert("source_asserted".into(), Value::Bool(true));
            } else {
                payload = serde_json::json!({ "value": payload, "source_asserted": true });
            }
        }
        Record {
            check_id: check_id.into(),
            citation: cite.key(),
            status,
            payload,
        }
    }

    /// A disagreement between a printed value and its recomputation.
    pub fn discrepancy(check_id: impl Into<String>, cite: Cite, printed: Value, recomputed: Value, note: &str) -> Self {
        Record::new(
            check_id,
            cite,
            Status::Discrepancy,
            serde_json::json!({ "printed": printed, "recomputed": recomputed, "note": note }),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Invocation {
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub invocation: Invocation,
    pub out_of_scope: Vec<&'static str>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str, args: Vec<String>, seed: Option<u64>) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            invocation: Invocation {
                command: command.to_string(),
                args,
                seed,
            },
            out_of_scope: OUT_OF_SCOPE.to_vec(),
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    pub fn record(&self, check_id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check_id == check_id)
    }

    /// 1 when any derived check failed, else 0.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.count(Status::DerivedFail) > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is plain data")
    }

    /// Line-oriented rendering of the same tree: one `path = value` line per leaf.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let tree = serde_json::to_value(self).expect("report is plain data");
        let summary = format!(
            "{} records: {} pass, {} fail, {} documented, {} discrepancy",
            self.records.len(),
            self.count(Status::DerivedPass),
            self.count(Status::DerivedFail),
            self.count(Status::DocumentedRule),
            self.count(Status::Discrepancy),
        );
        for key in ["schema_version", "invocation", "out_of_scope"] {
            flatten(key, &tree[key], &mut out);
        }
        for (i, r) in self.records.iter().enumerate() {
            let _ = writeln!(out, "\n[{}] {} ({})", r.status.label(), r.check_id, r.citation);
            flatten(&format!("records.{i}.payload"), &tree["records"][i]["payload"], &mut out);
        }
        let _ = writeln!(out, "\n{summary}");
        out
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&format!("{path}.{k}"), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{path}.{i}"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{path} = {v}");
        }
    }
}

/// Every leaf of a JSON tree as `(path, value)`, matching the text renderer.
pub fn leaves(path: &str, v: &Value) -> Vec<(String, String)> {
    let mut s = String::new();
    flatten(path, v, &mut s);
    s.lines()
        .filter_map(|l| l.split_once(" = "))
        .map(|(p, v)| (p.to_string(), v.to_string()))
        .collect()
}
