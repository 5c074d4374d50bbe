use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Output of one invocation. `timing_ms` is the only field that varies
/// between runs on identical inputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: Vec<String>,
    pub assumptions: Vec<String>,
    pub result: Value,
    pub citations: Vec<String>,
    pub timing_ms: f64,
}

/// What a command produced before timing and echo are attached.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub result: Value,
    pub text: Vec<String>,
    pub assumptions: Vec<String>,
    pub citations: Vec<String>,
}

impl Report {
    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
