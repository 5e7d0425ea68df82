//! Canonical text form of a document.
//!
//! The serializer fixes one layout: the universe first, then levels sorted
//! by name (coincidence pairs before precedence pairs, each lexicographic),
//! then clocks sorted by name, then claims in document order. Comments are
//! not part of the document model, so canonicalizing drops them. Parsing a
//! serialized document reproduces it exactly, and serializing is idempotent
//! across a parse round-trip.

use std::fmt::Write;

use crate::ast::SpecDocument;

pub fn serialize(doc: &SpecDocument) -> String {
    let mut out = String::new();
    writeln!(out, "universe {};", doc.universe_size).unwrap();

    for (name, level) in &doc.levels {
        out.push('\n');
        writeln!(out, "level {name} {{").unwrap();
        for (a, b) in level.coincidence_gen.iter() {
            writeln!(out, "  coincide {a} {b};").unwrap();
        }
        for (a, b) in level.precedence_gen.iter() {
            writeln!(out, "  precede {a} {b};").unwrap();
        }
        writeln!(out, "}};").unwrap();
    }

    if !doc.clocks.is_empty() {
        out.push('\n');
        for (name, clock) in &doc.clocks {
            let ticks: Vec<String> = clock.ticks.iter().map(|t| t.to_string()).collect();
            writeln!(
                out,
                "clock {name} @ {} = {{{}}};",
                clock.level,
                ticks.join(", ")
            )
            .unwrap();
        }
    }

    if !doc.claims.is_empty() {
        out.push('\n');
        for claim in &doc.claims {
            writeln!(
                out,
                "assert {} {};",
                claim.keyword(),
                claim.operands().join(" ")
            )
            .unwrap();
        }
    }
    out
}
