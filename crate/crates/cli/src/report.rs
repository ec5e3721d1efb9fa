//! Command results and exit codes.

use std::fmt::Write as _;

use gpdcalc::intmat::AbGroupInvariants;
use gpdcalc::Error;
use serde_json::Value;

/// Ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// A bounded step ran out of budget; the answer is not known.
    Unknown,
    /// A checked assertion failed.
    Failed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Unknown => 3,
        }
    }
}

pub const INPUT_ERROR: u8 = 2;

/// Budget exhaustion and size refusals are Unknown; everything else the
/// library raises is a problem with the input.
pub fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::TooLarge(_) | Error::InfiniteBase { .. } | Error::Overflow) => Status::Unknown.code(),
        _ => INPUT_ERROR,
    }
}

/// Human-readable lines for stdout and the canonical JSON for `--out`.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: Status,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report { text: String::new(), json, status: Status::Ok }
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.text, "{}", s.as_ref());
        self
    }

    pub fn fail(&mut self, s: impl AsRef<str>) {
        self.line(format!("FAILED: {}", s.as_ref()));
        self.status = self.status.max(Status::Failed);
    }

    pub fn unknown(&mut self, s: impl AsRef<str>) {
        self.line(format!("unknown: {}", s.as_ref()));
        self.status = self.status.max(Status::Unknown);
    }
}

pub fn inv(a: &AbGroupInvariants) -> String {
    a.to_string()
}
