//! Syntactic transformations: sugar elimination, axiom classification, and the
//! strengthening rewrite that replaces asymmetric PFDs with symmetric ones over
//! a fresh union concept.

use std::collections::BTreeSet;
use std::fmt;

use crate::ast::{Axiom, Concept, ConceptName, RhsConcept, Terminology};
use crate::signature::signature_of;

/// Fallback anchor concept used when no primitive name is available.
pub const FALLBACK_ANCHOR: &str = "_c0";

/// The anchor `P0` used to desugar `Top`/`Bot`: the lexicographically least
/// primitive concept name in `sig_source`, or `_c0` if there is none.
fn anchor_for(concepts: &BTreeSet<ConceptName>) -> ConceptName {
    concepts
        .iter()
        .next()
        .cloned()
        .unwrap_or_else(|| ConceptName::new(FALLBACK_ANCHOR).expect("valid fallback name"))
}

/// Eliminates `Or`, `Top`, and `Bot` using the given anchor concept:
/// `a | b` becomes `~(~a & ~b)`, `Top` becomes `~(P0 & ~P0)`, and `Bot`
/// becomes `P0 & ~P0`.
pub fn desugar_concept_with(c: &Concept, anchor: &ConceptName) -> Concept {
    match c {
        Concept::Primitive(_) => c.clone(),
        Concept::And(l, r) => Concept::and(
            desugar_concept_with(l, anchor),
            desugar_concept_with(r, anchor),
        ),
        Concept::Not(inner) => Concept::not(desugar_concept_with(inner, anchor)),
        Concept::All(f, body) => Concept::all(f.clone(), desugar_concept_with(body, anchor)),
        Concept::Or(l, r) => Concept::not(Concept::and(
            Concept::not(desugar_concept_with(l, anchor)),
            Concept::not(desugar_concept_with(r, anchor)),
        )),
        Concept::Top => {
            let p = Concept::Primitive(anchor.clone());
            Concept::not(Concept::and(p.clone(), Concept::not(p)))
        }
        Concept::Bot => {
            let p = Concept::Primitive(anchor.clone());
            Concept::and(p.clone(), Concept::not(p))
        }
    }
}

/// Desugars a standalone concept, anchoring `Top`/`Bot` on the least primitive
/// name occurring in the concept itself (`_c0` if there is none).
///
/// Inside a terminology use [`desugar_terminology`], which anchors on the
/// terminology-wide least name so every axiom agrees.
pub fn desugar_concept(c: &Concept) -> Concept {
    let mut sig = crate::signature::Signature::default();
    sig.collect_concept(c);
    desugar_concept_with(c, &anchor_for(&sig.concepts))
}

/// Desugars a right-hand side; PFD paths are untouched, the `over` concept and
/// any plain conjuncts are desugared.
pub fn desugar_rhs_with(rhs: &RhsConcept, anchor: &ConceptName) -> RhsConcept {
    match rhs {
        RhsConcept::Plain(c) => RhsConcept::Plain(desugar_concept_with(c, anchor)),
        RhsConcept::And(l, r) => RhsConcept::and(
            desugar_rhs_with(l, anchor),
            desugar_rhs_with(r, anchor),
        ),
        RhsConcept::Pfd { over, lhs, rhs } => RhsConcept::Pfd {
            over: desugar_concept_with(over, anchor),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        },
    }
}

/// Desugars every axiom of a terminology with a single shared anchor.
pub fn desugar_terminology(t: &Terminology) -> Terminology {
    let anchor = anchor_for(&signature_of(t).concepts);
    Terminology::new(
        t.axioms
            .iter()
            .map(|a| {
                Axiom::new(
                    desugar_concept_with(&a.lhs, &anchor),
                    desugar_rhs_with(&a.rhs, &anchor),
                )
            })
            .collect(),
    )
}

/// Coarse classification of an axiom by its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomKind {
    /// The right-hand side contains at least one PFD.
    PfdConstraint,
    /// The right-hand side is an ordinary concept.
    SimpleConstraint,
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::PfdConstraint => f.write_str("pfd"),
            AxiomKind::SimpleConstraint => f.write_str("simple"),
        }
    }
}

/// Classifies an axiom: `PfdConstraint` iff any `Pfd` node occurs in its
/// right-hand side.
pub fn classify_axiom(axiom: &Axiom) -> AxiomKind {
    if axiom.rhs.is_pfd_free() {
        AxiomKind::SimpleConstraint
    } else {
        AxiomKind::PfdConstraint
    }
}

/// Name of the fresh union concept for an unordered pair of primitive names.
pub fn union_concept_name(a: &ConceptName, b: &ConceptName) -> ConceptName {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    ConceptName::new(format!("_u_{}_{}", lo.as_str(), hi.as_str()))
        .expect("valid generated union name")
}

/// Replaces each asymmetric PFD axiom `L <= fd(D : paths -> p)` (with `L`, `D`
/// distinct primitive names) by the stronger symmetric form over a fresh union
/// concept `U`:
///
/// ```text
/// L <= U;   D <= U;   U <= fd(U : paths -> p);
/// ```
///
/// One union concept is shared per unordered pair, and the two subsumption
/// axioms are emitted only at the pair's first occurrence, in `L`-then-`D`
/// order. Axioms that are already symmetric (`L = D`), have non-primitive
/// sides, or carry the PFD inside a compound right-hand side are left
/// unchanged (see [`validate_terminology`] for the corresponding warnings).
pub fn desugar_asymmetric_pfds(t: &Terminology) -> Terminology {
    let mut seen: BTreeSet<(ConceptName, ConceptName)> = BTreeSet::new();
    let mut out = Vec::new();
    for axiom in &t.axioms {
        match (&axiom.lhs, &axiom.rhs) {
            (
                Concept::Primitive(l),
                RhsConcept::Pfd {
                    over: Concept::Primitive(d),
                    lhs,
                    rhs,
                },
            ) if l != d => {
                let u = union_concept_name(l, d);
                let key = if l <= d {
                    (l.clone(), d.clone())
                } else {
                    (d.clone(), l.clone())
                };
                if seen.insert(key) {
                    out.push(Axiom::plain(
                        Concept::Primitive(l.clone()),
                        Concept::Primitive(u.clone()),
                    ));
                    out.push(Axiom::plain(
                        Concept::Primitive(d.clone()),
                        Concept::Primitive(u.clone()),
                    ));
                }
                out.push(Axiom::new(
                    Concept::Primitive(u.clone()),
                    RhsConcept::Pfd {
                        over: Concept::Primitive(u),
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                    },
                ));
            }
            _ => out.push(axiom.clone()),
        }
    }
    Terminology::new(out)
}

/// A non-fatal finding about a terminology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Zero-based index of the axiom the finding refers to.
    pub axiom_index: usize,
    pub kind: DiagnosticKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// An asymmetric PFD whose sides are not both primitive names; the
    /// strengthening rewrite does not apply to it.
    NonPrimitiveAsymmetricPfd,
    /// A PFD buried inside a compound right-hand side; the strengthening
    /// rewrite only looks at whole-PFD right-hand sides.
    PfdInCompoundRhs,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DiagnosticKind::NonPrimitiveAsymmetricPfd => write!(
                f,
                "axiom {}: asymmetric PFD with non-primitive sides is not rewritten \
                 by the strengthening transform",
                self.axiom_index + 1
            ),
            DiagnosticKind::PfdInCompoundRhs => write!(
                f,
                "axiom {}: PFD inside a compound right-hand side is not rewritten \
                 by the strengthening transform",
                self.axiom_index + 1
            ),
        }
    }
}

/// Reports axioms the strengthening rewrite will skip.
pub fn validate_terminology(t: &Terminology) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (i, axiom) in t.axioms.iter().enumerate() {
        match (&axiom.lhs, &axiom.rhs) {
            // Symmetric or rewritable; nothing to report.
            (Concept::Primitive(_), RhsConcept::Pfd { over: Concept::Primitive(_), .. }) => {}
            (_, RhsConcept::Pfd { over, .. }) => {
                // Whole-PFD right-hand side, but at least one side is compound.
                let symmetric = *over == axiom.lhs;
                if !symmetric {
                    out.push(Diagnostic {
                        axiom_index: i,
                        kind: DiagnosticKind::NonPrimitiveAsymmetricPfd,
                    });
                }
            }
            (_, rhs) if !rhs.is_pfd_free() => out.push(Diagnostic {
                axiom_index: i,
                kind: DiagnosticKind::PfdInCompoundRhs,
            }),
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Concept as C;
    use crate::parse::{parse_axiom, parse_terminology};
    use crate::print::render_terminology;

    #[test]
    fn desugars_or_by_de_morgan() {
        let c = C::or(C::prim("A"), C::prim("B"));
        assert_eq!(
            desugar_concept(&c),
            C::not(C::and(C::not(C::prim("A")), C::not(C::prim("B")))),
        );
    }

    #[test]
    fn desugars_top_and_bot_against_least_name() {
        let t = parse_terminology("B <= Top; A <= Bot;").unwrap();
        let d = desugar_terminology(&t);
        // Anchor is A, the least name in the whole terminology.
        let anchor = C::prim("A");
        assert_eq!(
            d.axioms[0],
            Axiom::plain(
                C::prim("B"),
                C::not(C::and(anchor.clone(), C::not(anchor.clone()))),
            )
        );
        assert_eq!(
            d.axioms[1],
            Axiom::plain(C::prim("A"), C::and(anchor.clone(), C::not(anchor)))
        );
    }

    #[test]
    fn standalone_desugar_falls_back_to_fresh_anchor() {
        let c = desugar_concept(&C::Top);
        assert_eq!(
            c,
            C::not(C::and(C::prim("_c0"), C::not(C::prim("_c0")))),
        );
    }

    #[test]
    fn desugaring_is_idempotent() {
        let cases = [
            "Top",
            "Bot",
            "A | B",
            "~(A | Top) & all f . Bot",
            "all f . (A | B | C)",
        ];
        for src in cases {
            let c = crate::parse::parse_concept(src).unwrap();
            let once = desugar_concept(&c);
            assert!(once.is_sugar_free(), "{src} not sugar-free after desugar");
            assert_eq!(desugar_concept(&once), once, "desugar not idempotent on {src}");
        }
    }

    #[test]
    fn classification_examples() {
        let pfd = parse_axiom("X <= fd(X : a -> id)").unwrap();
        assert_eq!(classify_axiom(&pfd), AxiomKind::PfdConstraint);
        let simple = parse_axiom("A & B <= Bot").unwrap();
        assert_eq!(classify_axiom(&simple), AxiomKind::SimpleConstraint);
        let mixed = parse_axiom("A <= all f . X & fd(A : f -> id)").unwrap();
        assert_eq!(classify_axiom(&mixed), AxiomKind::PfdConstraint);
    }

    #[test]
    fn rewrites_single_asymmetric_pfd() {
        let t = parse_terminology("A <= fd(B : f -> h);").unwrap();
        let out = desugar_asymmetric_pfds(&t);
        assert_eq!(
            render_terminology(&out),
            "A <= _u_A_B;\nB <= _u_A_B;\n_u_A_B <= fd(_u_A_B : f -> h);\n"
        );
    }

    #[test]
    fn shares_union_concept_per_unordered_pair() {
        let t = parse_terminology("A <= fd(B : f -> h);\nB <= fd(A : h -> f);").unwrap();
        let out = desugar_asymmetric_pfds(&t);
        assert_eq!(
            render_terminology(&out),
            "A <= _u_A_B;\nB <= _u_A_B;\n_u_A_B <= fd(_u_A_B : f -> h);\n\
             _u_A_B <= fd(_u_A_B : h -> f);\n"
        );
    }

    #[test]
    fn leaves_symmetric_and_compound_pfds_alone() {
        let t = parse_terminology(
            "A <= fd(A : f -> id);\nA & B <= fd(C : f -> id);\nA <= X & fd(B : f -> id);",
        )
        .unwrap();
        let out = desugar_asymmetric_pfds(&t);
        assert_eq!(out, t);
        let diagnostics = validate_terminology(&t);
        assert_eq!(diagnostics.len(), 2);
        assert_eq!(
            diagnostics[0].kind,
            DiagnosticKind::NonPrimitiveAsymmetricPfd
        );
        assert_eq!(diagnostics[0].axiom_index, 1);
        assert_eq!(diagnostics[1].kind, DiagnosticKind::PfdInCompoundRhs);
        assert_eq!(diagnostics[1].axiom_index, 2);
    }

    #[test]
    fn order_of_subsumptions_follows_first_occurrence() {
        // First occurrence of the {A, D} pair has L = D-side name first.
        let t = parse_terminology("D <= fd(A : f -> i);").unwrap();
        let out = desugar_asymmetric_pfds(&t);
        assert_eq!(
            render_terminology(&out),
            "D <= _u_A_D;\nA <= _u_A_D;\n_u_A_D <= fd(_u_A_D : f -> i);\n"
        );
    }
}
