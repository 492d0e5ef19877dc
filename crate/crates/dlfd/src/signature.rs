//! Signature extraction: which names a terminology mentions.

use std::collections::BTreeSet;

use crate::ast::{Axiom, Concept, ConceptName, FeatureName, RhsConcept, Terminology};

/// The vocabulary of a terminology: primitive concept names, feature names,
/// and the longest path length occurring in any PFD.
///
/// `Top`/`Bot` are sugar, not names, and contribute nothing. The identity path
/// has length 0, a single feature length 1, and composition adds lengths.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    pub concepts: BTreeSet<ConceptName>,
    pub features: BTreeSet<FeatureName>,
    pub max_path_len: usize,
}

impl Signature {
    /// Adds every name occurring in `c`.
    pub fn collect_concept(&mut self, c: &Concept) {
        match c {
            Concept::Primitive(name) => {
                self.concepts.insert(name.clone());
            }
            Concept::And(l, r) | Concept::Or(l, r) => {
                self.collect_concept(l);
                self.collect_concept(r);
            }
            Concept::Not(inner) => self.collect_concept(inner),
            Concept::All(f, body) => {
                self.features.insert(f.clone());
                self.collect_concept(body);
            }
            Concept::Top | Concept::Bot => {}
        }
    }

    /// Adds every name occurring in `rhs`, tracking path lengths.
    pub fn collect_rhs(&mut self, rhs: &RhsConcept) {
        match rhs {
            RhsConcept::Plain(c) => self.collect_concept(c),
            RhsConcept::And(l, r) => {
                self.collect_rhs(l);
                self.collect_rhs(r);
            }
            RhsConcept::Pfd { over, lhs, rhs } => {
                self.collect_concept(over);
                for path in lhs.iter().chain(std::iter::once(rhs)) {
                    self.max_path_len = self.max_path_len.max(path.len());
                    for f in path.features() {
                        self.features.insert(f.clone());
                    }
                }
            }
        }
    }

    pub fn collect_axiom(&mut self, axiom: &Axiom) {
        self.collect_concept(&axiom.lhs);
        self.collect_rhs(&axiom.rhs);
    }
}

/// Computes the signature of a terminology.
pub fn signature_of(t: &Terminology) -> Signature {
    let mut sig = Signature::default();
    for axiom in &t.axioms {
        sig.collect_axiom(axiom);
    }
    sig
}

/// Signature of a terminology together with a goal concept, as used by the
/// model finder.
pub fn signature_with_goal(t: &Terminology, goal: &Concept) -> Signature {
    let mut sig = signature_of(t);
    sig.collect_concept(goal);
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_terminology;

    #[test]
    fn empty_terminology_has_empty_signature() {
        let sig = signature_of(&Terminology::default());
        assert!(sig.concepts.is_empty());
        assert!(sig.features.is_empty());
        assert_eq!(sig.max_path_len, 0);
    }

    #[test]
    fn composed_path_length_counts_features() {
        let t = parse_terminology("C <= fd(C : f.g -> id);").unwrap();
        let sig = signature_of(&t);
        assert_eq!(
            sig.features
                .iter()
                .map(|f| f.as_str())
                .collect::<Vec<_>>(),
            vec!["f", "g"]
        );
        assert_eq!(sig.max_path_len, 2);
    }

    #[test]
    fn collects_all_features_and_pfd_over_names() {
        let t = parse_terminology("X <= all a . A & fd(Y : b -> c);").unwrap();
        let sig = signature_of(&t);
        let concepts: Vec<_> = sig.concepts.iter().map(|c| c.as_str()).collect();
        let features: Vec<_> = sig.features.iter().map(|f| f.as_str()).collect();
        assert_eq!(concepts, vec!["A", "X", "Y"]);
        assert_eq!(features, vec!["a", "b", "c"]);
        assert_eq!(sig.max_path_len, 1);
    }

    #[test]
    fn sugar_contributes_no_names() {
        let t = parse_terminology("A <= Top; B <= Bot | A;").unwrap();
        let sig = signature_of(&t);
        let concepts: Vec<_> = sig.concepts.iter().map(|c| c.as_str()).collect();
        assert_eq!(concepts, vec!["A", "B"]);
    }
}
