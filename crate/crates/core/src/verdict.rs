use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Outcome of one check with a machine-readable witness.
///
/// `certified` is set when the pass is a complete proof for the instance
/// (exact divisibility, or a grid larger than every degree bound).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub detail: String,
    pub witness: Option<Value>,
    pub certified: bool,
}

impl Verdict {
    pub fn pass(detail: impl Into<String>, witness: Option<Value>, certified: bool) -> Self {
        Verdict {
            status: Status::Pass,
            detail: detail.into(),
            witness,
            certified,
        }
    }

    pub fn fail(detail: impl Into<String>, witness: Value) -> Self {
        Verdict {
            status: Status::Fail,
            detail: detail.into(),
            witness: Some(witness),
            certified: false,
        }
    }

    pub fn error(detail: impl Into<String>) -> Self {
        Verdict {
            status: Status::Error,
            detail: detail.into(),
            witness: None,
            certified: false,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Conjunction of sub-verdicts: the first non-pass wins, otherwise a pass
    /// that is certified only if every part is.
    pub fn all(detail: impl Into<String>, parts: Vec<(String, Verdict)>) -> Self {
        if let Some((name, v)) = parts.iter().find(|(_, v)| !v.is_pass()) {
            let mut out = v.clone();
            out.detail = format!("{}: {}", name, v.detail);
            return out;
        }
        let certified = parts.iter().all(|(_, v)| v.certified);
        let witness: serde_json::Map<String, Value> = parts
            .into_iter()
            .map(|(name, v)| (name, v.witness.unwrap_or(Value::Null)))
            .collect();
        Verdict::pass(detail, Some(Value::Object(witness)), certified)
    }
}
