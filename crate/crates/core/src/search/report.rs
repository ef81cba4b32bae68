use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{invalid, Result};

/// A JSON run report: the command and its full configuration, the result,
/// and a `timestamp` object holding everything that varies between runs.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub task: Value,
    pub status: String,
    pub result: Value,
    pub timestamp: Value,
}

impl Report {
    pub fn new<T: Serialize, R: Serialize>(command: &str, task: &T, status: &str, result: &R, elapsed: Duration) -> Result<Self> {
        let started = SystemTime::now()
            .checked_sub(elapsed)
            .and_then(|t| t.duration_since(UNIX_EPOCH).ok())
            .map_or(0.0, |d| d.as_secs_f64());
        Ok(Report {
            command: command.into(),
            task: to_value(task)?,
            status: status.into(),
            result: to_value(result)?,
            timestamp: json!({
                "started_unix_seconds": started,
                "elapsed_seconds": elapsed.as_secs_f64(),
            }),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON") + "\n"
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| invalid(format!("cannot serialize report: {e}")))
}

/// The report with its `timestamp` field removed, re-rendered; equal for any
/// two runs of the same configuration.
pub fn strip_timestamp(report_json: &str) -> Result<String> {
    let mut v: Value = serde_json::from_str(report_json).map_err(|e| invalid(format!("not a JSON report: {e}")))?;
    match v.as_object_mut() {
        Some(obj) => {
            obj.remove("timestamp");
        }
        None => return Err(invalid("report is not a JSON object")),
    }
    Ok(serde_json::to_string_pretty(&v).expect("parsed JSON re-serializes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timestamp_is_the_only_difference() {
        let a = Report::new("x", &json!({"n": 5}), "pass", &3, Duration::from_millis(5)).unwrap();
        let b = Report::new("x", &json!({"n": 5}), "pass", &3, Duration::from_millis(900)).unwrap();
        assert_ne!(a.to_json(), b.to_json());
        assert_eq!(strip_timestamp(&a.to_json()).unwrap(), strip_timestamp(&b.to_json()).unwrap());
    }
}
