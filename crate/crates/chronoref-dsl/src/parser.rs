//! Recursive-descent parser with statement-level recovery.
//!
//! Parsing never fails hard: on a grammar breach the parser reports a
//! diagnostic and skips to the next `;` (or the enclosing `}`), so one pass
//! collects every reportable problem. Name resolution and range checking
//! run afterwards over whatever parsed, and their diagnostics are merged
//! into the same list, sorted by position.

use std::collections::BTreeSet;
use std::collections::btree_map::Entry;

use chronoref_core::{DEFAULT_UNIVERSE_CAP, InstantId};

use crate::ast::{Claim, ClockDecl, LevelDecl, SpecDocument};
use crate::diagnostics::{DiagnosticKind, ParseDiagnostic};
use crate::lexer::{Token, TokenKind, lex};

/// Parses and resolves a document. On any problem the full diagnostic list
/// is returned instead, ordered by source position.
pub fn parse(source: &str) -> Result<SpecDocument, Vec<ParseDiagnostic>> {
    let (tokens, mut diagnostics) = lex(source);
    let mut parser = Parser {
        tokens,
        pos: 0,
        diagnostics: &mut diagnostics,
    };
    let raw = parser.document();
    let document = resolve(raw, &mut diagnostics);
    if diagnostics.is_empty() {
        Ok(document.expect("no diagnostics implies a resolved document"))
    } else {
        diagnostics.sort_by_key(|d| (d.line, d.column));
        Err(diagnostics)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: u32,
    column: u32,
}

const START: Pos = Pos { line: 1, column: 1 };

#[derive(Debug)]
struct RawDocument {
    universes: Vec<(u32, Pos)>,
    levels: Vec<RawLevel>,
    clocks: Vec<RawClock>,
    claims: Vec<(Claim, Pos)>,
}

#[derive(Debug)]
struct RawLevel {
    name: String,
    pos: Pos,
    coincidence: Vec<(u32, u32, Pos)>,
    precedence: Vec<(u32, u32, Pos)>,
}

#[derive(Debug)]
struct RawClock {
    name: String,
    pos: Pos,
    level: String,
    level_pos: Pos,
    ticks: Vec<(u32, Pos)>,
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    diagnostics: &'a mut Vec<ParseDiagnostic>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn here(&self) -> Pos {
        match self.peek() {
            Some(t) => Pos {
                line: t.line,
                column: t.column,
            },
            None => self
                .tokens
                .last()
                .map(|t| Pos {
                    line: t.line,
                    column: t.column,
                })
                .unwrap_or(START),
        }
    }

    fn error(&mut self, pos: Pos, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            line: pos.line,
            column: pos.column,
            kind: DiagnosticKind::Syntax,
            message: message.into(),
        });
    }

    /// Skips past the next `;`, stopping before `}` so a malformed relation
    /// cannot swallow the end of its level block.
    fn recover(&mut self) {
        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::Semi => {
                    self.next();
                    return;
                }
                TokenKind::RBrace => return,
                _ => {
                    self.next();
                }
            }
        }
    }

    fn expect_semi(&mut self) -> bool {
        match self.peek() {
            Some(tok) if tok.kind == TokenKind::Semi => {
                self.next();
                true
            }
            Some(tok) => {
                let (line, column, found) = (tok.line, tok.column, tok.kind.describe());
                self.error(Pos { line, column }, format!("expected ';', found {found}"));
                self.recover();
                false
            }
            None => {
                let pos = self.here();
                self.error(pos, "expected ';', found end of input");
                false
            }
        }
    }

    fn expect_int(&mut self, what: &str) -> Option<(u32, Pos)> {
        match self.peek() {
            Some(tok) => {
                if let TokenKind::Int(value) = tok.kind {
                    let pos = Pos {
                        line: tok.line,
                        column: tok.column,
                    };
                    self.next();
                    Some((value, pos))
                } else {
                    let (pos, found) = (
                        Pos {
                            line: tok.line,
                            column: tok.column,
                        },
                        tok.kind.describe(),
                    );
                    self.error(pos, format!("expected {what}, found {found}"));
                    None
                }
            }
            None => {
                let pos = self.here();
                self.error(pos, format!("expected {what}, found end of input"));
                None
            }
        }
    }

    fn expect_ident(&mut self, what: &str) -> Option<(String, Pos)> {
        match self.peek() {
            Some(tok) => {
                if let TokenKind::Ident(name) = &tok.kind {
                    let out = (
                        name.clone(),
                        Pos {
                            line: tok.line,
                            column: tok.column,
                        },
                    );
                    self.next();
                    Some(out)
                } else {
                    let (pos, found) = (
                        Pos {
                            line: tok.line,
                            column: tok.column,
                        },
                        tok.kind.describe(),
                    );
                    self.error(pos, format!("expected {what}, found {found}"));
                    None
                }
            }
            None => {
                let pos = self.here();
                self.error(pos, format!("expected {what}, found end of input"));
                None
            }
        }
    }

    fn expect_token(&mut self, kind: TokenKind, what: &str) -> bool {
        match self.peek() {
            Some(tok) if tok.kind == kind => {
                self.next();
                true
            }
            Some(tok) => {
                let (pos, found) = (
                    Pos {
                        line: tok.line,
                        column: tok.column,
                    },
                    tok.kind.describe(),
                );
                self.error(pos, format!("expected {what}, found {found}"));
                false
            }
            None => {
                let pos = self.here();
                self.error(pos, format!("expected {what}, found end of input"));
                false
            }
        }
    }

    fn document(&mut self) -> RawDocument {
        let mut doc = RawDocument {
            universes: Vec::new(),
            levels: Vec::new(),
            clocks: Vec::new(),
            claims: Vec::new(),
        };
        while let Some(tok) = self.peek() {
            let pos = Pos {
                line: tok.line,
                column: tok.column,
            };
            match &tok.kind {
                TokenKind::Ident(word) => match word.as_str() {
                    "universe" => {
                        self.next();
                        if let Some((size, _)) = self.expect_int("a universe size") {
                            if self.expect_semi() {
                                doc.universes.push((size, pos));
                            }
                        } else {
                            self.recover();
                        }
                    }
                    "level" => {
                        self.next();
                        if let Some(level) = self.level(pos) {
                            doc.levels.push(level);
                        }
                    }
                    "clock" => {
                        self.next();
                        if let Some(clock) = self.clock(pos) {
                            doc.clocks.push(clock);
                        }
                    }
                    "assert" => {
                        self.next();
                        if let Some(claim) = self.claim() {
                            if self.expect_semi() {
                                doc.claims.push((claim, pos));
                            }
                        } else {
                            self.recover();
                        }
                    }
                    other => {
                        let message = format!(
                            "expected a statement (universe, level, clock or assert), found identifier {other:?}"
                        );
                        self.error(pos, message);
                        self.next();
                        self.recover();
                    }
                },
                other => {
                    let message = format!(
                        "expected a statement (universe, level, clock or assert), found {}",
                        other.describe()
                    );
                    self.error(pos, message);
                    self.next();
                    self.recover();
                }
            }
        }
        doc
    }

    fn level(&mut self, pos: Pos) -> Option<RawLevel> {
        let (name, _) = self.expect_ident("a level name").or_else(|| {
            self.recover();
            None
        })?;
        if !self.expect_token(TokenKind::LBrace, "'{'") {
            self.recover();
            return None;
        }
        let mut level = RawLevel {
            name,
            pos,
            coincidence: Vec::new(),
            precedence: Vec::new(),
        };
        loop {
            match self.peek() {
                Some(tok) if tok.kind == TokenKind::RBrace => {
                    self.next();
                    break;
                }
                Some(tok) => {
                    let rel_pos = Pos {
                        line: tok.line,
                        column: tok.column,
                    };
                    let Some((keyword, _)) = self.expect_ident("'coincide' or 'precede'") else {
                        self.recover();
                        continue;
                    };
                    if keyword != "coincide" && keyword != "precede" {
                        self.error(
                            rel_pos,
                            format!("expected 'coincide' or 'precede', found {keyword:?}"),
                        );
                        self.recover();
                        continue;
                    }
                    let Some((a, _)) = self.expect_int("an instant index") else {
                        self.recover();
                        continue;
                    };
                    let Some((b, _)) = self.expect_int("an instant index") else {
                        self.recover();
                        continue;
                    };
                    if !self.expect_semi() {
                        continue;
                    }
                    if keyword == "coincide" {
                        level.coincidence.push((a, b, rel_pos));
                    } else {
                        level.precedence.push((a, b, rel_pos));
                    }
                }
                None => {
                    let pos = self.here();
                    self.error(pos, "expected '}' to close the level block");
                    return Some(level);
                }
            }
        }
        self.expect_semi();
        Some(level)
    }

    fn clock(&mut self, pos: Pos) -> Option<RawClock> {
        let Some((name, _)) = self.expect_ident("a clock name") else {
            self.recover();
            return None;
        };
        if !self.expect_token(TokenKind::At, "'@'") {
            self.recover();
            return None;
        }
        let Some((level, level_pos)) = self.expect_ident("a level name") else {
            self.recover();
            return None;
        };
        if !self.expect_token(TokenKind::Equals, "'='")
            || !self.expect_token(TokenKind::LBrace, "'{'")
        {
            self.recover();
            return None;
        }
        let mut ticks = Vec::new();
        if self.peek().is_some_and(|t| t.kind != TokenKind::RBrace) {
            loop {
                let Some(tick) = self.expect_int("a tick instant") else {
                    self.recover();
                    return None;
                };
                ticks.push(tick);
                match self.peek() {
                    Some(tok) if tok.kind == TokenKind::Comma => {
                        self.next();
                    }
                    _ => break,
                }
            }
        }
        if !self.expect_token(TokenKind::RBrace, "'}' or ','") {
            self.recover();
            return None;
        }
        if !self.expect_semi() {
            return None;
        }
        Some(RawClock {
            name,
            pos,
            level,
            level_pos,
            ticks,
        })
    }

    fn claim(&mut self) -> Option<Claim> {
        let (keyword, pos) = self.expect_ident("a claim keyword")?;
        let name = |parser: &mut Self, what| parser.expect_ident(what).map(|(n, _)| n);
        match keyword.as_str() {
            "spo" => Some(Claim::Spo {
                level: name(self, "a level name")?,
            }),
            "refines" => Some(Claim::Refines {
                concrete: name(self, "the concrete level name")?,
                abstract_: name(self, "the abstract level name")?,
            }),
            "subclock" => Some(Claim::Subclock {
                sub: name(self, "the subclock name")?,
                sup: name(self, "the superclock name")?,
            }),
            "union" => Some(Claim::Union {
                union_clock: name(self, "the union clock name")?,
                left: name(self, "the first operand clock name")?,
                right: name(self, "the second operand clock name")?,
            }),
            "clockrefines" => Some(Claim::ClockRefines {
                concrete: name(self, "the concrete clock name")?,
                abstract_: name(self, "the abstract clock name")?,
            }),
            "preserve-subclock" => Some(Claim::PreserveSubclock {
                sub: name(self, "the concrete subclock name")?,
                sup: name(self, "the concrete superclock name")?,
                abstract_sub: name(self, "the abstract subclock name")?,
                abstract_sup: name(self, "the abstract superclock name")?,
            }),
            "preserve-union" => Some(Claim::PreserveUnion {
                union_clock: name(self, "the concrete union clock name")?,
                left: name(self, "the first concrete operand name")?,
                right: name(self, "the second concrete operand name")?,
                abstract_clock: name(self, "the abstract clock name")?,
            }),
            other => {
                self.error(pos, format!("unknown claim keyword {other:?}"));
                None
            }
        }
    }
}

fn push(diagnostics: &mut Vec<ParseDiagnostic>, pos: Pos, kind: DiagnosticKind, message: String) {
    diagnostics.push(ParseDiagnostic {
        line: pos.line,
        column: pos.column,
        kind,
        message,
    });
}

fn resolve(raw: RawDocument, diagnostics: &mut Vec<ParseDiagnostic>) -> Option<SpecDocument> {
    // Exactly one universe declaration.
    let universe_size = match raw.universes.split_first() {
        None => {
            push(
                diagnostics,
                START,
                DiagnosticKind::Resolution,
                "universe missing".into(),
            );
            None
        }
        Some((&(size, pos), rest)) => {
            for &(_, dup) in rest {
                push(
                    diagnostics,
                    dup,
                    DiagnosticKind::Resolution,
                    "universe is already declared".into(),
                );
            }
            if size == 0 {
                push(
                    diagnostics,
                    pos,
                    DiagnosticKind::Range,
                    "universe must be at least 1".into(),
                );
                None
            } else if size > DEFAULT_UNIVERSE_CAP {
                push(
                    diagnostics,
                    pos,
                    DiagnosticKind::Range,
                    format!(
                        "universe exceeds the supported cap of {DEFAULT_UNIVERSE_CAP} instants"
                    ),
                );
                None
            } else {
                Some(size)
            }
        }
    };

    // Range problems are only reportable once the universe is known.
    let in_range = |index: u32| universe_size.is_none_or(|n| index < n);
    let range_message = |index: u32| {
        let n = universe_size.expect("range errors are only reported with a known universe");
        format!("instant {index} is out of range for a universe of {n} instants")
    };

    // Levels, with duplicate detection and range checks.
    let mut levels = std::collections::BTreeMap::new();
    for level in raw.levels {
        let mut decl = LevelDecl::default();
        for (rel, target) in [
            (&level.coincidence, &mut decl.coincidence_gen),
            (&level.precedence, &mut decl.precedence_gen),
        ] {
            for &(a, b, pos) in rel {
                let mut ok = true;
                for index in [a, b] {
                    if !in_range(index) {
                        push(
                            diagnostics,
                            pos,
                            DiagnosticKind::Range,
                            range_message(index),
                        );
                        ok = false;
                    }
                }
                if ok {
                    target.insert(InstantId::new(a), InstantId::new(b));
                }
            }
        }
        match levels.entry(level.name.clone()) {
            Entry::Vacant(slot) => {
                slot.insert(decl);
            }
            Entry::Occupied(_) => push(
                diagnostics,
                level.pos,
                DiagnosticKind::Resolution,
                format!("level {:?} is already declared", level.name),
            ),
        }
    }

    // Clocks: unique names, known level, ticks in range.
    let mut clocks = std::collections::BTreeMap::new();
    for clock in raw.clocks {
        if !levels.contains_key(&clock.level) {
            push(
                diagnostics,
                clock.level_pos,
                DiagnosticKind::Resolution,
                format!("unknown level {:?}", clock.level),
            );
            continue;
        }
        let mut ticks = BTreeSet::new();
        for &(tick, pos) in &clock.ticks {
            if in_range(tick) {
                ticks.insert(InstantId::new(tick));
            } else {
                push(diagnostics, pos, DiagnosticKind::Range, range_message(tick));
            }
        }
        match clocks.entry(clock.name.clone()) {
            Entry::Vacant(slot) => {
                slot.insert(ClockDecl {
                    level: clock.level,
                    ticks,
                });
            }
            Entry::Occupied(_) => push(
                diagnostics,
                clock.pos,
                DiagnosticKind::Resolution,
                format!("clock {:?} is already declared", clock.name),
            ),
        }
    }

    // Claims: every operand resolves, and clock operands that must share a
    // level (the operands of one constraint) actually do.
    let mut claims = Vec::new();
    for (claim, pos) in raw.claims {
        let mut ok = true;
        match &claim {
            Claim::Spo { level } => {
                check_level(diagnostics, &levels, pos, level, &mut ok);
            }
            Claim::Refines {
                concrete,
                abstract_,
            } => {
                check_level(diagnostics, &levels, pos, concrete, &mut ok);
                check_level(diagnostics, &levels, pos, abstract_, &mut ok);
            }
            Claim::Subclock { sub, sup } => {
                check_clock_group(diagnostics, &clocks, pos, &[sub, sup], &mut ok);
            }
            Claim::Union {
                union_clock,
                left,
                right,
            } => {
                check_clock_group(
                    diagnostics,
                    &clocks,
                    pos,
                    &[union_clock, left, right],
                    &mut ok,
                );
            }
            Claim::ClockRefines {
                concrete,
                abstract_,
            } => {
                check_clock_group(diagnostics, &clocks, pos, &[concrete], &mut ok);
                check_clock_group(diagnostics, &clocks, pos, &[abstract_], &mut ok);
            }
            Claim::PreserveSubclock {
                sub,
                sup,
                abstract_sub,
                abstract_sup,
            } => {
                check_clock_group(diagnostics, &clocks, pos, &[sub, sup], &mut ok);
                check_clock_group(
                    diagnostics,
                    &clocks,
                    pos,
                    &[abstract_sub, abstract_sup],
                    &mut ok,
                );
            }
            Claim::PreserveUnion {
                union_clock,
                left,
                right,
                abstract_clock,
            } => {
                check_clock_group(
                    diagnostics,
                    &clocks,
                    pos,
                    &[union_clock, left, right],
                    &mut ok,
                );
                check_clock_group(diagnostics, &clocks, pos, &[abstract_clock], &mut ok);
            }
        }
        if ok {
            claims.push(claim);
        }
    }

    Some(SpecDocument {
        universe_size: universe_size?,
        levels,
        clocks,
        claims,
    })
}

fn check_level(
    diagnostics: &mut Vec<ParseDiagnostic>,
    levels: &std::collections::BTreeMap<String, LevelDecl>,
    pos: Pos,
    name: &str,
    ok: &mut bool,
) {
    if !levels.contains_key(name) {
        push(
            diagnostics,
            pos,
            DiagnosticKind::Resolution,
            format!("unknown level {name:?}"),
        );
        *ok = false;
    }
}

fn check_clock_group(
    diagnostics: &mut Vec<ParseDiagnostic>,
    clocks: &std::collections::BTreeMap<String, ClockDecl>,
    pos: Pos,
    names: &[&str],
    ok: &mut bool,
) {
    let mut level: Option<(String, String)> = None;
    for &name in names {
        match clocks.get(name) {
            None => {
                push(
                    diagnostics,
                    pos,
                    DiagnosticKind::Resolution,
                    format!("unknown clock {name:?}"),
                );
                *ok = false;
            }
            Some(decl) => match &level {
                None => level = Some((name.to_owned(), decl.level.clone())),
                Some((first, expected)) if *expected != decl.level => {
                    push(
                        diagnostics,
                        pos,
                        DiagnosticKind::Resolution,
                        format!("clocks {first:?} and {name:?} must be on the same level"),
                    );
                    *ok = false;
                }
                Some(_) => {}
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::serialize;

    const MORNING: &str = "\
# Morning routine: up=0, sho=1, off=2, eat=3, sin=4.
universe 5;
level morning {
  coincide 1 4;
  precede 0 1;
  precede 1 2;
  precede 0 3;
  precede 3 2;
};
assert spo morning;
";

    fn diags(source: &str) -> Vec<ParseDiagnostic> {
        parse(source).expect_err("expected diagnostics")
    }

    #[test]
    fn parses_the_morning_fixture() {
        let doc = parse(MORNING).unwrap();
        assert_eq!(doc.universe_size, 5);
        assert_eq!(doc.levels.len(), 1);
        let level = &doc.levels["morning"];
        let coincidence: Vec<(u32, u32)> = level
            .coincidence_gen
            .iter()
            .map(|(a, b)| (a.index(), b.index()))
            .collect();
        assert_eq!(coincidence, vec![(1, 4)]);
        assert_eq!(level.precedence_gen.len(), 4);
        assert_eq!(doc.claims.len(), 1);
    }

    #[test]
    fn zero_universe_is_a_range_diagnostic() {
        let diagnostics = diags("universe 0;");
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].kind, DiagnosticKind::Range);
        assert!(diagnostics[0].message.contains("at least 1"));
    }

    #[test]
    fn out_of_range_instant_is_reported_at_its_statement() {
        let source = "universe 15;\nlevel l {\n  precede 3 99;\n};\n";
        let diagnostics = diags(source);
        assert_eq!(diagnostics.len(), 1);
        let d = &diagnostics[0];
        assert_eq!(d.kind, DiagnosticKind::Range);
        assert_eq!(d.line, 3);
        assert!(d.message.contains("99"));
    }

    #[test]
    fn empty_input_reports_universe_missing() {
        let diagnostics = diags("");
        assert_eq!(diagnostics.len(), 1);
        assert_eq!(diagnostics[0].message, "universe missing");
        assert_eq!((diagnostics[0].line, diagnostics[0].column), (1, 1));
    }

    #[test]
    fn duplicate_declarations_are_resolution_diagnostics() {
        let source =
            "universe 2;\nlevel l {};\nlevel l {};\nclock c @ l = {0};\nclock c @ l = {1};\n";
        let diagnostics = diags(source);
        assert_eq!(diagnostics.len(), 2);
        assert!(
            diagnostics
                .iter()
                .all(|d| d.kind == DiagnosticKind::Resolution)
        );
        assert!(diagnostics[0].message.contains("level"));
        assert!(diagnostics[1].message.contains("clock"));
    }

    #[test]
    fn unknown_operands_are_resolution_diagnostics() {
        let source = "universe 2;\nlevel l {};\nassert spo ghost;\nassert subclock a b;\n";
        let diagnostics = diags(source);
        assert_eq!(diagnostics.len(), 3);
        assert!(
            diagnostics
                .iter()
                .all(|d| d.kind == DiagnosticKind::Resolution)
        );
    }

    #[test]
    fn constraint_operands_must_share_a_level() {
        let source = "universe 2;\nlevel a {};\nlevel b {};\nclock x @ a = {0};\nclock y @ b = {1};\nassert subclock x y;\n";
        let diagnostics = diags(source);
        assert_eq!(diagnostics.len(), 1);
        assert!(diagnostics[0].message.contains("same level"));
    }

    #[test]
    fn clockrefines_may_span_levels() {
        let source = "universe 2;\nlevel a {};\nlevel b {};\nclock x @ a = {0};\nclock y @ b = {0};\nassert clockrefines x y;\n";
        assert!(parse(source).is_ok());
    }

    #[test]
    fn recovery_collects_all_statement_errors_in_one_pass() {
        let source = "universe 3;\nprecede 0 1;\nlevel l { coincide 0; };\nassert spo l;\n";
        let diagnostics = diags(source);
        assert_eq!(diagnostics.len(), 2, "{diagnostics:?}");
        assert_eq!(diagnostics[0].line, 2);
        assert_eq!(diagnostics[1].line, 3);
        assert!(diagnostics.iter().all(|d| d.kind == DiagnosticKind::Syntax));
    }

    #[test]
    fn removing_the_offending_statement_removes_exactly_its_diagnostic() {
        let broken = "universe 2;\nlevel l {\n  precede 0 9;\n  coincide 5 0;\n};\n";
        let before = diags(broken);
        assert_eq!(before.len(), 2);

        let repaired = "universe 2;\nlevel l {\n  coincide 5 0;\n};\n";
        let after = diags(repaired);
        assert_eq!(after.len(), 1);
        assert!(after[0].message.contains('5'));
        assert!(before.iter().any(|d| d.message == after[0].message));
        assert!(!after.iter().any(|d| d.message.contains('9')));
    }

    #[test]
    fn empty_tick_sets_parse() {
        let doc = parse("universe 1;\nlevel l {};\nclock c @ l = {};\n").unwrap();
        assert!(doc.clocks["c"].ticks.is_empty());
    }

    #[test]
    fn diagnostics_are_sorted_by_position() {
        let source = "assert spo ghost;\nuniverse 0;\n";
        let diagnostics = diags(source);
        let positions: Vec<(u32, u32)> = diagnostics.iter().map(|d| (d.line, d.column)).collect();
        let mut sorted = positions.clone();
        sorted.sort();
        assert_eq!(positions, sorted);
    }

    #[test]
    fn serialize_then_parse_is_identity_on_the_morning_document() {
        let doc = parse(MORNING).unwrap();
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        // A second canonicalization is byte-stable.
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}
