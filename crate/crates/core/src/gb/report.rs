use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The pair budget ran out; says nothing about the claim.
    Timeout,
}

/// Outcome of one oracle run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub claim: String,
    pub instance: serde_json::Value,
    pub method: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Seconds, as a decimal string.
    pub wall_time: String,
}

pub fn format_seconds(d: std::time::Duration) -> String {
    format!("{}.{:03}", d.as_secs(), d.subsec_millis())
}

impl Report {
    /// Runs `f`, timing it. An exhausted pair budget becomes a timeout
    /// verdict; every other error propagates.
    pub fn run(
        claim: &str,
        instance: serde_json::Value,
        method: &str,
        f: impl FnOnce() -> Result<(Verdict, Option<serde_json::Value>)>,
    ) -> Result<Report> {
        let start = Instant::now();
        let (verdict, witness) = match f() {
            Ok(v) => v,
            Err(Error::OracleTimeout(pairs)) => (Verdict::Timeout, Some(serde_json::json!({ "pairs_reduced": pairs }))),
            Err(e) => return Err(e),
        };
        Ok(Report {
            schema: format!("{}/Report", json::SCHEMA_VERSION),
            claim: claim.to_string(),
            instance,
            method: method.to_string(),
            verdict,
            witness,
            wall_time: format_seconds(start.elapsed()),
        })
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timeout_is_its_own_verdict() {
        let r = Report::run("x", serde_json::Value::Null, "m", || Err(Error::OracleTimeout(7))).unwrap();
        assert_eq!(r.verdict, Verdict::Timeout);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["verdict"], "timeout");
        assert!(Report::run("x", serde_json::Value::Null, "m", || Err(Error::InvalidInput("bad".into()))).is_err());
    }

    #[test]
    fn seconds_are_exact_strings() {
        assert_eq!(format_seconds(std::time::Duration::from_millis(1234)), "1.234");
    }
}
