use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "atomlab-report/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub experiment: String,
    pub version: String,
    pub seed: u64,
    pub params: Value,
    pub status: Status,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
    /// Outcome of replaying the certificate, when that was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        let mut out = format!("{} [{status}] seed={} version={}\n", self.experiment, self.seed, self.version);
        if let Value::Object(map) = &self.result {
            for (k, v) in map {
                let shown = match v {
                    Value::String(s) if s.contains('\n') => format!("\n    {}", s.trim_end().replace('\n', "\n    ")),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                out.push_str(&format!("  {k}: {shown}\n"));
            }
        } else {
            out.push_str(&format!("  {}\n", self.result));
        }
        if let Some(v) = self.verified {
            out.push_str(&format!("  verified: {v}\n"));
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("  elapsed: {ms} ms\n"));
        }
        out
    }
}
