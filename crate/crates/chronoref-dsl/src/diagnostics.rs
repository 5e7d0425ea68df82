//! Parser and resolution diagnostics.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiagnosticKind {
    /// The text does not match the grammar.
    Syntax,
    /// A name is unknown, duplicated, or used inconsistently.
    Resolution,
    /// An index or size is outside its allowed range.
    Range,
}

impl DiagnosticKind {
    pub fn name(self) -> &'static str {
        match self {
            DiagnosticKind::Syntax => "syntax",
            DiagnosticKind::Resolution => "resolution",
            DiagnosticKind::Range => "range",
        }
    }
}

/// One problem found while parsing or resolving a document. Positions are
/// 1-based and point at the offending token (or at 1:1 for whole-document
/// problems such as a missing universe).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: u32,
    pub column: u32,
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}: {}",
            self.line,
            self.column,
            self.kind.name(),
            self.message
        )
    }
}
