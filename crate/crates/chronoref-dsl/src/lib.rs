//! Textual specification format (`.chrono`) for multi-level time structures,
//! plus the JSON report schema the checkers emit.
//!
//! A document declares one universe of instants, named levels with their
//! relation generators, named clocks, and claims over them:
//!
//! ```text
//! # Morning routine: up=0, sho=1, off=2, eat=3, sin=4.
//! universe 5;
//!
//! level morning {
//!   coincide 1 4;
//!   precede 0 1;
//!   precede 1 2;
//!   precede 0 3;
//!   precede 3 2;
//! };
//!
//! clock sho @ morning = {1};
//!
//! assert spo morning;
//! ```
//!
//! [`parse`] resolves names and ranges and reports every problem it can
//! find in one pass; [`serialize`] prints the canonical form used for
//! round-trips and fixture comparison. The full grammar lives in the
//! repository's `docs/dsl.md`.

pub mod ast;
pub mod canon;
pub mod diagnostics;
mod lexer;
pub mod parser;
pub mod report;

pub use ast::{Claim, ClockDecl, LevelDecl, SpecDocument};
pub use canon::serialize;
pub use diagnostics::{DiagnosticKind, ParseDiagnostic};
pub use parser::parse;
pub use report::{
    ClaimOutcome, ClaimStatus, EvaluatedClaim, RunSummary, SCHEMA_VERSION, ToReportJson,
    claim_json, run_json,
};
