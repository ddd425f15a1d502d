//! Report envelope printed by every subcommand.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Report {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorBody>,
    pub provenance: Provenance,
    pub caveats: Vec<String>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Serialize)]
pub struct Provenance {
    pub module: &'static str,
    pub operation: &'static str,
}

/// A domain error with its machine-readable code.
pub struct DomainError {
    pub code: String,
    pub message: String,
}

impl DomainError {
    pub fn new(code: impl Into<String>, message: impl Into<String>) -> Self {
        DomainError { code: code.into(), message: message.into() }
    }
}

/// Extracts a stable code from an error's Debug form: the variant name up to
/// the first brace or parenthesis.
pub fn code_of<E: std::fmt::Debug + std::fmt::Display>(e: &E) -> DomainError {
    let dbg = format!("{e:?}");
    let code: String = dbg
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect();
    DomainError { code, message: format!("{e}") }
}

pub fn ok(module: &'static str, operation: &'static str, payload: Value, caveats: Vec<String>) -> (Report, i32) {
    (
        Report {
            status: "ok",
            payload: Some(payload),
            error: None,
            provenance: Provenance { module, operation },
            caveats,
        },
        0,
    )
}

pub fn fail(module: &'static str, operation: &'static str, err: DomainError) -> (Report, i32) {
    (
        Report {
            status: "error",
            payload: None,
            error: Some(ErrorBody { code: err.code, message: err.message }),
            provenance: Provenance { module, operation },
            caveats: vec![],
        },
        1,
    )
}

pub fn parse_fail(module: &'static str, operation: &'static str, message: String) -> (Report, i32) {
    (
        Report {
            status: "error",
            payload: None,
            error: Some(ErrorBody { code: "ParseError".into(), message }),
            provenance: Provenance { module, operation },
            caveats: vec![],
        },
        2,
    )
}

pub fn print(report: &Report, compact: bool) {
    let out = if compact {
        serde_json::to_string(report).expect("report serializes")
    } else {
        serde_json::to_string_pretty(report).expect("report serializes")
    };
    println!("{out}");
}
