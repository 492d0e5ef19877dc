//! Rendering of terminologies back to the concrete syntax.
//!
//! The printer inserts the minimal parentheses needed so that re-parsing the
//! output reconstructs the exact same tree: `|` binds loosest, `&` next, and
//! the unary forms `~`/`all f .` tightest. Right operands of the
//! left-associative binary operators are rendered one level tighter, so
//! right-nested trees come back in explicit parentheses.
//!
//! Every tree the parser can produce round-trips. Hand-built trees that have no
//! concrete syntax (an E-level intersection nested to the right with a PFD
//! inside) still render, but the result is not re-parseable because PFDs are
//! only legal at the top level of an axiom's right-hand side.

use crate::ast::{Axiom, Concept, PathExpr, RhsConcept, Terminology};

const PREC_OR: u8 = 1;
const PREC_AND: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_ATOM: u8 = 4;

fn parenthesize(body: String, node_prec: u8, required: u8) -> String {
    if node_prec < required {
        format!("({body})")
    } else {
        body
    }
}

fn concept_at(c: &Concept, required: u8) -> String {
    let (text, prec) = match c {
        Concept::Primitive(name) => (name.as_str().to_string(), PREC_ATOM),
        Concept::Top => ("Top".to_string(), PREC_ATOM),
        Concept::Bot => ("Bot".to_string(), PREC_ATOM),
        Concept::Not(inner) => (format!("~{}", concept_at(inner, PREC_UNARY)), PREC_UNARY),
        Concept::All(f, body) => (
            format!("all {} . {}", f, concept_at(body, PREC_UNARY)),
            PREC_UNARY,
        ),
        Concept::And(l, r) => (
            format!(
                "{} & {}",
                concept_at(l, PREC_AND),
                concept_at(r, PREC_AND + 1)
            ),
            PREC_AND,
        ),
        Concept::Or(l, r) => (
            format!("{} | {}", concept_at(l, PREC_OR), concept_at(r, PREC_OR + 1)),
            PREC_OR,
        ),
    };
    parenthesize(text, prec, required)
}

fn rhs_at(rhs: &RhsConcept, required: u8) -> String {
    let (text, prec) = match rhs {
        RhsConcept::Plain(c) => return concept_at(c, required),
        RhsConcept::And(l, r) => (
            format!("{} & {}", rhs_at(l, PREC_AND), rhs_at(r, PREC_AND + 1)),
            PREC_AND,
        ),
        RhsConcept::Pfd { over, lhs, rhs } => {
            let paths = lhs
                .iter()
                .map(print_path)
                .collect::<Vec<_>>()
                .join(", ");
            (
                format!("fd({} : {} -> {})", concept_at(over, 0), paths, print_path(rhs)),
                PREC_ATOM,
            )
        }
    };
    parenthesize(text, prec, required)
}

/// Renders a path; the identity path prints as `id`.
pub fn print_path(p: &PathExpr) -> String {
    if p.is_id() {
        "id".to_string()
    } else {
        p.features()
            .iter()
            .map(|f| f.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Renders a concept with minimal parentheses.
pub fn print_concept(c: &Concept) -> String {
    concept_at(c, 0)
}

/// Renders an axiom right-hand side with minimal parentheses.
pub fn print_rhs(rhs: &RhsConcept) -> String {
    rhs_at(rhs, 0)
}

/// Renders one axiom, terminated by `;`.
pub fn print_axiom(a: &Axiom) -> String {
    format!("{} <= {};", print_concept(&a.lhs), print_rhs(&a.rhs))
}

/// Renders a terminology, one axiom per line with a trailing newline.
///
/// The empty terminology renders as the empty string.
pub fn render_terminology(t: &Terminology) -> String {
    let mut out = String::new();
    for axiom in &t.axioms {
        out.push_str(&print_axiom(axiom));
        out.push('\n');
    }
    out
}
