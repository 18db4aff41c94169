use serde::Serialize;
use serde_json::Value;

use wphyp::families::Check;
use wphyp::Error;

pub const VERSION: &str = concat!("wphyp ", env!("CARGO_PKG_VERSION"));

/// The structured form of every command's output.
#[derive(Serialize, Debug)]
pub struct OutputDocument {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub version: &'static str,
}

impl OutputDocument {
    pub fn new(command: String, inputs: Value, results: Value, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        OutputDocument {
            command,
            inputs,
            results,
            checks,
            passed,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub struct Rendered {
    pub text: String,
    pub passed: bool,
}

#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Budget(_) => 3,
            Error::EmptyResult(_) => 1,
            _ => 2,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

pub fn render_checks(out: &mut String, checks: &[Check]) {
    for c in checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        if c.detail.is_empty() {
            out.push_str(&format!("  [{mark}] {}\n", c.name));
        } else {
            out.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
        }
    }
}
