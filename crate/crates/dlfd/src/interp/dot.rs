//! Graphviz (DOT) export for finite interpretations.
//!
//! Each domain element becomes a node labelled with its index and the sorted
//! list of concepts it belongs to; each feature contributes one labelled edge
//! per element. Output order is fixed (elements ascending, features sorted),
//! so the export is deterministic.

use std::fmt::Write;

use super::FiniteInterpretation;

/// Renders the interpretation as a DOT digraph. With `hide_selfloops`, edges
/// whose source equals their target are omitted (concept membership labels
/// are unaffected).
pub fn to_dot(i: &FiniteInterpretation, hide_selfloops: bool) -> String {
    let mut out = String::new();
    out.push_str("digraph model {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=box];\n");
    for x in i.domain() {
        let memberships: Vec<&str> = i
            .concepts()
            .filter(|(_, e)| e.contains(&x))
            .map(|(c, _)| c.as_str())
            .collect();
        let label = if memberships.is_empty() {
            format!("{x}")
        } else {
            format!("{x}: {}", memberships.join(", "))
        };
        writeln!(out, "  e{x} [label=\"{label}\"];").expect("writing to a String cannot fail");
    }
    for (f, table) in i.features() {
        for (x, &y) in table.iter().enumerate() {
            if hide_selfloops && x == y {
                continue;
            }
            writeln!(out, "  e{x} -> e{y} [label=\"{f}\"];")
                .expect("writing to a String cannot fail");
        }
    }
    out.push_str("}\n");
    out
}
