use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use vertexlie::report::CheckReport;

pub const SCHEMA: &str = "vertexlie-report/1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Result of one command: a payload, the checks that were run and the
/// structure choices that the payload depends on.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub result: Value,
    pub checks: Vec<CheckReport>,
    pub choices: Vec<(String, String)>,
}

impl Outcome {
    pub fn new(text: impl Into<String>, result: Value) -> Self {
        Outcome { text: text.into(), result, ..Default::default() }
    }

    pub fn check(mut self, rep: CheckReport) -> Self {
        self.checks.push(rep);
        self
    }

    pub fn choice(mut self, key: &str, value: impl Into<String>) -> Self {
        self.choices.push((key.to_string(), value.into()));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    pass: bool,
    checked: usize,
    failures: &'a [String],
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    command: &'a [String],
    seed: u64,
    pass: bool,
    checks: Vec<CheckJson<'a>>,
    choices: serde_json::Map<String, Value>,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

pub fn render(out: &Outcome, format: Format, command: &[String], seed: u64, elapsed_ms: Option<u128>) -> String {
    match format {
        Format::Text => {
            let mut s = out.text.clone();
            if !s.is_empty() && !s.ends_with('\n') {
                s.push('\n');
            }
            for c in &out.checks {
                s.push_str(&format!("{c}\n"));
            }
            if !out.checks.is_empty() {
                let verdict = if out.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{verdict}\n"));
            }
            if let Some(ms) = elapsed_ms {
                s.push_str(&format!("elapsed: {ms} ms\n"));
            }
            s
        }
        Format::Json => {
            let env = Envelope {
                schema: SCHEMA,
                command,
                seed,
                pass: out.passed(),
                checks: out
                    .checks
                    .iter()
                    .map(|c| CheckJson { name: &c.name, pass: c.passed(), checked: c.checked, failures: &c.failures })
                    .collect(),
                choices: out.choices.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect(),
                result: &out.result,
                elapsed_ms,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

pub fn render_error(message: &str, code: u8, format: Format, command: &[String]) -> String {
    match format {
        Format::Text => format!("error: {message}\n"),
        Format::Json => {
            let v = serde_json::json!({
                "schema": SCHEMA,
                "command": command,
                "pass": false,
                "error": { "exit_code": code, "message": message },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("report serializes"))
        }
    }
}
