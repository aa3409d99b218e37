use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// Deterministic record of one invocation. Fields are declared in key
/// order so the report reads back identically as a generic JSON value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub args: Vec<String>,
    pub command: String,
    pub exit_code: u8,
    pub input_digest: String,
    pub result: Value,
    pub status: Status,
}

impl RunReport {
    pub fn new(
        command: &str,
        args: &[String],
        input_digest: String,
        result: Value,
        status: Status,
    ) -> Self {
        Self {
            command: command.to_string(),
            args: args.to_vec(),
            input_digest,
            status,
            exit_code: status.exit_code(),
            result,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    #[allow(dead_code)]
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}
