//! Machine- and human-readable run reports. The JSON form is byte-stable
//! for fixed inputs and seed: field order is fixed and wall-clock timings
//! are confined to the text form.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(name: &str, status: Status, witness: Value) -> Self {
        Self {
            name: name.to_string(),
            status,
            witness,
        }
    }

    pub fn from_bool(name: &str, passed: bool, witness: Value) -> Self {
        Self::new(
            name,
            if passed { Status::Pass } else { Status::Fail },
            witness,
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input_digest: String,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    pub fn new(command: &str, input_digest: String, tol: f64) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            input_digest,
            tol,
            seed: None,
            samples: None,
            checks: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// 0 when no check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, elapsed_ms: f64) -> String {
        let mut out = String::new();
        out.push_str(&format!("folia {} (schema {})\n", self.command, self.schema));
        out.push_str(&format!("input digest: {}\n", self.input_digest));
        out.push_str(&format!("tolerance: {:e}\n", self.tol));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        if let Some(samples) = self.samples {
            out.push_str(&format!("samples: {samples}\n"));
        }
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::NotApplicable => "n/a ",
            };
            out.push_str(&format!(
                "[{tag}] {} -- {}\n",
                c.name,
                serde_json::to_string(&c.witness).expect("witness serializes")
            ));
        }
        if !self.data.is_null() {
            out.push_str("data:\n");
            if let Value::Object(map) = &self.data {
                for (k, v) in map {
                    out.push_str(&format!(
                        "  {k} = {}\n",
                        serde_json::to_string(v).expect("data serializes")
                    ));
                }
            } else {
                out.push_str(&format!(
                    "  {}\n",
                    serde_json::to_string(&self.data).expect("data serializes")
                ));
            }
        }
        out.push_str(&format!(
            "result: {} ({} checks)\n",
            if self.exit_code() == 0 { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out.push_str(&format!("elapsed: {elapsed_ms:.1} ms\n"));
        out
    }
}

/// FNV-1a 64-bit digest, rendered as 16 hex digits.
pub fn digest(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{hash:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest(b""), "cbf29ce484222325");
        assert_eq!(digest(b"folia"), digest(b"folia"));
        assert_ne!(digest(b"a"), digest(b"b"));
    }

    #[test]
    fn exit_code_tracks_failures() {
        let mut r = Report::new("check", digest(b"x"), 1e-9);
        r.push(Check::from_bool("a", true, Value::Null));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("b", Status::NotApplicable, Value::Null));
        assert_eq!(r.exit_code(), 0);
        r.push(Check::from_bool("c", false, Value::Null));
        assert_eq!(r.exit_code(), 1);
    }
}
