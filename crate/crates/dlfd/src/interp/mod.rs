//! Explicit finite interpretations and exact evaluation of concept semantics.
//!
//! An interpretation fixes a domain `{0, .., n-1}`, a total function table per
//! feature, and an extent per primitive concept. Evaluation follows the
//! standard set semantics directly: intersection for `&`, complement for `~`,
//! feature preimage for `all f . D`, and the pairwise agreement clause for
//! PFDs (`x` is in `fd(D : p1, .., pk -> p)` iff every `y` in `D` that agrees
//! with `x` on all `pi` also agrees on `p`; `y = x` is included and is always
//! vacuous). Sugar (`|`, `Top`, `Bot`) evaluates natively so that desugaring
//! can be cross-checked against it.

mod dot;
mod io;

pub use dot::to_dot;
pub(crate) use io::model_file;
pub use io::{from_json_str, read_model, to_json_string, write_model};

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ast::{Axiom, Concept, ConceptName, FeatureName, PathExpr, RhsConcept, Terminology};

/// Errors raised while assembling or loading an interpretation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the domain must contain at least one element")]
    EmptyDomain,
    #[error("feature {feature} has {got} entries, expected {expected}")]
    TableLength {
        feature: FeatureName,
        expected: usize,
        got: usize,
    },
    #[error("feature {feature}({index}) = {value} lies outside the domain 0..{n}")]
    EntryOutOfRange {
        feature: FeatureName,
        index: usize,
        value: usize,
        n: usize,
    },
    #[error("concept {concept} contains {value}, outside the domain 0..{n}")]
    ConceptEntryOutOfRange {
        concept: ConceptName,
        value: usize,
        n: usize,
    },
    #[error("invalid name in model file: {0}")]
    BadName(#[from] crate::ast::NameError),
    #[error("invalid model JSON: {0}")]
    Json(String),
}

/// Errors raised when evaluation meets a name the interpretation lacks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("interpretation does not define concept {0}")]
    UnknownConcept(ConceptName),
    #[error("interpretation does not define feature {0}")]
    UnknownFeature(FeatureName),
}

/// Evaluation/checking options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckOptions {
    /// Treat concept names absent from the interpretation as empty extents
    /// instead of erroring. Features always have to be present.
    pub default_empty_concepts: bool,
}

/// A finite interpretation over the domain `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterpretation {
    n: usize,
    features: BTreeMap<FeatureName, Vec<usize>>,
    concepts: BTreeMap<ConceptName, BTreeSet<usize>>,
}

impl FiniteInterpretation {
    /// Validates and assembles an interpretation: `n >= 1`, every feature
    /// table has exactly `n` in-range entries, every extent stays in range.
    pub fn new(
        n: usize,
        features: BTreeMap<FeatureName, Vec<usize>>,
        concepts: BTreeMap<ConceptName, BTreeSet<usize>>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::EmptyDomain);
        }
        for (f, table) in &features {
            if table.len() != n {
                return Err(ModelError::TableLength {
                    feature: f.clone(),
                    expected: n,
                    got: table.len(),
                });
            }
            for (index, &value) in table.iter().enumerate() {
                if value >= n {
                    return Err(ModelError::EntryOutOfRange {
                        feature: f.clone(),
                        index,
                        value,
                        n,
                    });
                }
            }
        }
        for (c, extent) in &concepts {
            if let Some(&value) = extent.iter().next_back() {
                if value >= n {
                    return Err(ModelError::ConceptEntryOutOfRange {
                        concept: c.clone(),
                        value,
                        n,
                    });
                }
            }
        }
        Ok(FiniteInterpretation {
            n,
            features,
            concepts,
        })
    }

    /// Domain size.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Iterator over the domain `0..n`.
    pub fn domain(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn feature_table(&self, f: &FeatureName) -> Option<&[usize]> {
        self.features.get(f).map(|v| v.as_slice())
    }

    pub fn concept_extent(&self, c: &ConceptName) -> Option<&BTreeSet<usize>> {
        self.concepts.get(c)
    }

    pub fn features(&self) -> impl Iterator<Item = (&FeatureName, &[usize])> {
        self.features.iter().map(|(f, t)| (f, t.as_slice()))
    }

    pub fn concepts(&self) -> impl Iterator<Item = (&ConceptName, &BTreeSet<usize>)> {
        self.concepts.iter()
    }

    fn table(&self, f: &FeatureName) -> Result<&[usize], EvalError> {
        self.feature_table(f)
            .ok_or_else(|| EvalError::UnknownFeature(f.clone()))
    }

    fn extent(&self, c: &ConceptName, opts: &CheckOptions) -> Result<BTreeSet<usize>, EvalError> {
        match self.concepts.get(c) {
            Some(e) => Ok(e.clone()),
            None if opts.default_empty_concepts => Ok(BTreeSet::new()),
            None => Err(EvalError::UnknownConcept(c.clone())),
        }
    }

    /// Applies a path to one element: the identity path is a no-op, a
    /// composed path applies its features left to right.
    pub fn eval_path(&self, path: &PathExpr, x: usize) -> Result<usize, EvalError> {
        debug_assert!(x < self.n);
        let mut cur = x;
        for f in path.features() {
            cur = self.table(f)?[cur];
        }
        Ok(cur)
    }

    /// Evaluates a concept to its extent.
    pub fn eval_concept(&self, c: &Concept) -> Result<BTreeSet<usize>, EvalError> {
        self.eval_concept_with(c, &CheckOptions::default())
    }

    pub fn eval_concept_with(
        &self,
        c: &Concept,
        opts: &CheckOptions,
    ) -> Result<BTreeSet<usize>, EvalError> {
        Ok(match c {
            Concept::Primitive(name) => self.extent(name, opts)?,
            Concept::And(l, r) => {
                let l = self.eval_concept_with(l, opts)?;
                let r = self.eval_concept_with(r, opts)?;
                l.intersection(&r).copied().collect()
            }
            Concept::Or(l, r) => {
                let l = self.eval_concept_with(l, opts)?;
                let r = self.eval_concept_with(r, opts)?;
                l.union(&r).copied().collect()
            }
            Concept::Not(inner) => {
                let inner = self.eval_concept_with(inner, opts)?;
                self.domain().filter(|x| !inner.contains(x)).collect()
            }
            Concept::All(f, body) => {
                let body = self.eval_concept_with(body, opts)?;
                let table = self.table(f)?;
                self.domain().filter(|&x| body.contains(&table[x])).collect()
            }
            Concept::Top => self.domain().collect(),
            Concept::Bot => BTreeSet::new(),
        })
    }

    /// Evaluates a right-hand-side concept (PFDs included) to its extent.
    pub fn eval_rhs(&self, rhs: &RhsConcept) -> Result<BTreeSet<usize>, EvalError> {
        self.eval_rhs_with(rhs, &CheckOptions::default())
    }

    pub fn eval_rhs_with(
        &self,
        rhs: &RhsConcept,
        opts: &CheckOptions,
    ) -> Result<BTreeSet<usize>, EvalError> {
        Ok(match rhs {
            RhsConcept::Plain(c) => self.eval_concept_with(c, opts)?,
            RhsConcept::And(l, r) => {
                let l = self.eval_rhs_with(l, opts)?;
                let r = self.eval_rhs_with(r, opts)?;
                l.intersection(&r).copied().collect()
            }
            RhsConcept::Pfd { over, lhs, rhs } => {
                let over = self.eval_concept_with(over, opts)?;
                let lhs_vals = self.path_values(lhs)?;
                let rhs_vals = self.path_value_table(rhs)?;
                self.domain()
                    .filter(|&x| {
                        over.iter().all(|&y| {
                            let agrees = lhs_vals.iter().all(|vals| vals[x] == vals[y]);
                            !agrees || rhs_vals[x] == rhs_vals[y]
                        })
                    })
                    .collect()
            }
        })
    }

    fn path_value_table(&self, path: &PathExpr) -> Result<Vec<usize>, EvalError> {
        self.domain().map(|x| self.eval_path(path, x)).collect()
    }

    fn path_values(&self, paths: &[PathExpr]) -> Result<Vec<Vec<usize>>, EvalError> {
        paths.iter().map(|p| self.path_value_table(p)).collect()
    }

    /// Checks one axiom; on violation the witness picks the least offending
    /// element (and, for a PFD conjunct, the least partner) so failures are
    /// deterministic and replayable.
    pub fn check_axiom(
        &self,
        axiom: &Axiom,
        opts: &CheckOptions,
    ) -> Result<AxiomOutcome, EvalError> {
        let lhs = self.eval_concept_with(&axiom.lhs, opts)?;
        let conjuncts = flatten_rhs(&axiom.rhs);
        let extents: Vec<BTreeSet<usize>> = conjuncts
            .iter()
            .map(|c| self.eval_rhs_with(c, opts))
            .collect::<Result<_, _>>()?;
        let x = match lhs
            .iter()
            .find(|x| extents.iter().any(|e| !e.contains(x)))
        {
            Some(&x) => x,
            None => return Ok(AxiomOutcome::Satisfied),
        };
        let (conjunct, rhs_conjunct) = conjuncts
            .iter()
            .enumerate()
            .find(|(ci, _)| !extents[*ci].contains(&x))
            .expect("some conjunct excludes the witness element");
        let violation = match rhs_conjunct {
            RhsConcept::Pfd { over, lhs, rhs } => {
                let over_ext = self.eval_concept_with(over, opts)?;
                let lhs_vals = self.path_values(lhs)?;
                let rhs_vals = self.path_value_table(rhs)?;
                let y = over_ext
                    .iter()
                    .copied()
                    .find(|&y| {
                        lhs_vals.iter().all(|vals| vals[x] == vals[y]) && rhs_vals[x] != rhs_vals[y]
                    })
                    .expect("PFD failure implies a disagreeing partner");
                Violation::Pfd {
                    x,
                    y,
                    conjunct,
                    agreements: lhs
                        .iter()
                        .map(|p| PathAgreement {
                            path: p.clone(),
                            value: self.eval_path(p, x).expect("paths evaluated above"),
                        })
                        .collect(),
                    disagreement: PathDisagreement {
                        path: rhs.clone(),
                        at_x: rhs_vals[x],
                        at_y: rhs_vals[y],
                    },
                }
            }
            _ => Violation::Simple { element: x },
        };
        Ok(AxiomOutcome::Violated(violation))
    }

    /// Checks every axiom in input order and aggregates the verdict.
    pub fn check_terminology(
        &self,
        t: &Terminology,
        opts: &CheckOptions,
    ) -> Result<CheckReport, EvalError> {
        let mut axioms = Vec::with_capacity(t.axioms.len());
        let mut satisfied = true;
        for (index, axiom) in t.axioms.iter().enumerate() {
            let outcome = self.check_axiom(axiom, opts)?;
            if matches!(outcome, AxiomOutcome::Violated(_)) {
                satisfied = false;
            }
            axioms.push(AxiomStatus {
                index,
                axiom: crate::print::print_axiom(axiom),
                outcome,
            });
        }
        Ok(CheckReport { axioms, satisfied })
    }

    /// True iff the interpretation satisfies every axiom of `t` but violates
    /// `a` — i.e. it witnesses that `a` does not follow finitely from `t`.
    pub fn is_finite_countermodel(
        &self,
        t: &Terminology,
        a: &Axiom,
        opts: &CheckOptions,
    ) -> Result<bool, EvalError> {
        if !self.check_terminology(t, opts)?.satisfied {
            return Ok(false);
        }
        Ok(matches!(
            self.check_axiom(a, opts)?,
            AxiomOutcome::Violated(_)
        ))
    }
}

/// Left-to-right list of the E-level conjuncts of a right-hand side.
fn flatten_rhs(rhs: &RhsConcept) -> Vec<&RhsConcept> {
    fn go<'a>(rhs: &'a RhsConcept, out: &mut Vec<&'a RhsConcept>) {
        match rhs {
            RhsConcept::And(l, r) => {
                go(l, out);
                go(r, out);
            }
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    go(rhs, &mut out);
    out
}

/// Result of checking a single axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomOutcome {
    Satisfied,
    Violated(Violation),
}

impl AxiomOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, AxiomOutcome::Satisfied)
    }
}

/// A concrete, replayable reason one axiom fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `element` is in the left-hand side but not the right-hand side, and the
    /// first failing conjunct is an ordinary concept.
    Simple { element: usize },
    /// The first failing conjunct is a PFD: `x` (in the axiom's left-hand
    /// side) and `y` (in the PFD's concept) agree on every agreement path but
    /// disagree on the consequent path. `conjunct` indexes the failing
    /// conjunct in left-to-right order.
    Pfd {
        x: usize,
        y: usize,
        conjunct: usize,
        agreements: Vec<PathAgreement>,
        disagreement: PathDisagreement,
    },
}

/// A path both witness elements agree on, with the shared value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAgreement {
    pub path: PathExpr,
    pub value: usize,
}

/// The consequent path and its two differing values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDisagreement {
    pub path: PathExpr,
    pub at_x: usize,
    pub at_y: usize,
}

impl Violation {
    /// Re-confirms the violation against an interpretation and the axiom it
    /// was produced for. Returns `Ok(true)` when every recorded fact still
    /// holds.
    pub fn replay(
        &self,
        i: &FiniteInterpretation,
        axiom: &Axiom,
        opts: &CheckOptions,
    ) -> Result<bool, EvalError> {
        let lhs = i.eval_concept_with(&axiom.lhs, opts)?;
        match self {
            Violation::Simple { element } => {
                let rhs = i.eval_rhs_with(&axiom.rhs, opts)?;
                Ok(lhs.contains(element) && !rhs.contains(element))
            }
            Violation::Pfd {
                x,
                y,
                conjunct,
                agreements,
                disagreement,
            } => {
                let conjuncts = flatten_rhs(&axiom.rhs);
                let Some(RhsConcept::Pfd { over, lhs: paths, rhs: rhs_path }) =
                    conjuncts.get(*conjunct)
                else {
                    return Ok(false);
                };
                if !lhs.contains(x) {
                    return Ok(false);
                }
                let over_ext = i.eval_concept_with(over, opts)?;
                if !over_ext.contains(y) {
                    return Ok(false);
                }
                if agreements.len() != paths.len() {
                    return Ok(false);
                }
                for (p, rec) in paths.iter().zip(agreements) {
                    if p != &rec.path {
                        return Ok(false);
                    }
                    let vx = i.eval_path(p, *x)?;
                    let vy = i.eval_path(p, *y)?;
                    if vx != rec.value || vy != rec.value {
                        return Ok(false);
                    }
                }
                if rhs_path != &disagreement.path {
                    return Ok(false);
                }
                let vx = i.eval_path(rhs_path, *x)?;
                let vy = i.eval_path(rhs_path, *y)?;
                Ok(vx == disagreement.at_x && vy == disagreement.at_y && vx != vy)
            }
        }
    }
}

/// Aggregated result of checking a whole terminology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// One entry per axiom, in input order.
    pub axioms: Vec<AxiomStatus>,
    /// Conjunction of the per-axiom outcomes.
    pub satisfied: bool,
}

impl CheckReport {
    pub fn violations(&self) -> impl Iterator<Item = &AxiomStatus> {
        self.axioms
            .iter()
            .filter(|s| !s.outcome.is_satisfied())
    }
}

/// Outcome of one axiom inside a [`CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomStatus {
    pub index: usize,
    /// Rendered form of the axiom, for reports.
    pub axiom: String,
    pub outcome: AxiomOutcome,
}

impl Serialize for PathAgreement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PathAgreement", 2)?;
        st.serialize_field("path", &crate::print::print_path(&self.path))?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

impl Serialize for PathDisagreement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PathDisagreement", 3)?;
        st.serialize_field("path", &crate::print::print_path(&self.path))?;
        st.serialize_field("at_x", &self.at_x)?;
        st.serialize_field("at_y", &self.at_y)?;
        st.end()
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Violation::Simple { element } => {
                let mut st = s.serialize_struct("Violation", 2)?;
                st.serialize_field("kind", "simple")?;
                st.serialize_field("element", element)?;
                st.end()
            }
            Violation::Pfd {
                x,
                y,
                conjunct,
                agreements,
                disagreement,
            } => {
                let mut st = s.serialize_struct("Violation", 6)?;
                st.serialize_field("kind", "pfd")?;
                st.serialize_field("x", x)?;
                st.serialize_field("y", y)?;
                st.serialize_field("conjunct", conjunct)?;
                st.serialize_field("agreements", agreements)?;
                st.serialize_field("disagreement", disagreement)?;
                st.end()
            }
        }
    }
}

impl Serialize for AxiomStatus {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AxiomStatus", 4)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("axiom", &self.axiom)?;
        match &self.outcome {
            AxiomOutcome::Satisfied => {
                st.serialize_field("status", "satisfied")?;
                st.serialize_field("witness", &Option::<Violation>::None)?;
            }
            AxiomOutcome::Violated(v) => {
                st.serialize_field("status", "violated")?;
                st.serialize_field("witness", &Some(v.clone()))?;
            }
        }
        st.end()
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckReport", 2)?;
        st.serialize_field("axioms", &self.axioms)?;
        st.serialize_field("satisfied", &self.satisfied)?;
        st.end()
    }
}
