use std::time::Duration;

use lecount::Error;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "lecount.run/1";

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// Everything a command produced. Rendered as text or JSON by `main`.
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    pub command: String,
    inputs: Vec<u8>,
    pub results: Vec<Entry>,
    pub checks: Vec<Check>,
    /// Verbatim output such as an emitted poset or graph.
    pub output: Option<String>,
    pub timing: Option<Duration>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport {
            command,
            ..Default::default()
        }
    }

    /// Record bytes that went into the digest: file contents or inline arguments.
    pub fn input(&mut self, bytes: &[u8]) {
        self.inputs.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
        self.inputs.extend_from_slice(bytes);
    }

    pub fn result(&mut self, name: impl Into<String>, value: impl ToString) {
        self.results.push(Entry {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn digest(&self) -> String {
        format!("{:x}", Sha256::digest(&self.inputs))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(out) = &self.output {
            s.push_str(out);
        } else if self.results.len() == 1 && self.checks.is_empty() {
            s.push_str(&self.results[0].value);
            s.push('\n');
        } else {
            for e in &self.results {
                s.push_str(&format!("{}: {}\n", e.name, e.value));
            }
            for c in &self.checks {
                s.push_str(&format!("[{}] {}\n", if c.passed { "ok" } else { "FAIL" }, c.name));
            }
        }
        if !self.checks.is_empty() {
            s.push_str(if self.passed() { "pass\n" } else { "fail\n" });
        }
        if let Some(t) = self.timing {
            s.push_str(&format!("time: {:.3} ms\n", t.as_secs_f64() * 1e3));
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Json<'a> {
            schema: &'static str,
            command: &'a str,
            inputs_digest: String,
            status: &'static str,
            results: &'a [Entry],
            checks: &'a [Check],
            #[serde(skip_serializing_if = "Option::is_none")]
            output: Option<&'a str>,
            #[serde(skip_serializing_if = "Option::is_none")]
            timing_ms: Option<f64>,
        }
        let j = Json {
            schema: SCHEMA,
            command: &self.command,
            inputs_digest: self.digest(),
            status: if self.passed() { "ok" } else { "check-failed" },
            results: &self.results,
            checks: &self.checks,
            output: self.output.as_deref(),
            timing_ms: self.timing.map(|t| t.as_secs_f64() * 1e3),
        };
        serde_json::to_string_pretty(&j).expect("report serializes") + "\n"
    }
}

/// 2 for bad input, 3 for exhausted resources.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimit { .. } | Error::StateBudget { .. } | Error::SerializationBudget { .. } => 3,
        _ => 2,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SizeLimit { .. } | Error::StateBudget { .. } | Error::SerializationBudget { .. } => "resource-limit",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
        _ => "precondition",
    }
}

pub fn error_json(command: &str, e: &Error) -> String {
    #[derive(Serialize)]
    struct Failure {
        kind: &'static str,
        message: String,
    }
    #[derive(Serialize)]
    struct Json<'a> {
        schema: &'static str,
        command: &'a str,
        status: &'static str,
        error: Failure,
    }
    let j = Json {
        schema: SCHEMA,
        command,
        status: "error",
        error: Failure {
            kind: error_kind(e),
            message: e.to_string(),
        },
    };
    serde_json::to_string_pretty(&j).expect("error serializes") + "\n"
}
