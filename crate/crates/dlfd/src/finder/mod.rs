//! Bounded finite-model search.
//!
//! [`find_model`] looks for a model of a terminology in which a goal concept
//! is non-empty, trying each domain size from `min` to `max` in turn. Each
//! size is compiled to CNF and handed to a small deterministic CDCL solver;
//! any satisfying assignment is decoded back into a [`FiniteInterpretation`]
//! and re-verified against the exact evaluator before being returned.
//! [`refute_bounded`] searches the same way for a finite countermodel of a
//! single subsumption axiom. [`enumerate_all`] is a deliberately independent
//! brute-force enumerator used to cross-check the solver route in tests.
//!
//! A "no model up to the bound" answer is exactly that — bounded evidence.
//! Nothing here proves that larger models do not exist.

mod encode;
mod enumerate;
mod sat;

pub use enumerate::{enumerate_all, CANDIDATE_LIMIT};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ast::{Axiom, Concept, Terminology};
use crate::interp::{CheckOptions, FiniteInterpretation};
use crate::signature::signature_with_goal;

use encode::Encoder;
use sat::SolveResult;

/// Fixed caveat attached to every bounded refutation report.
pub const BOUNDED_NOTE: &str = "bounded search: finding no counterexample up \
to the size bound is evidence, not a proof, that the subsumption holds in \
all finite models";

/// Errors from the search entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error("invalid size bounds: min {min}, max {max} (need 1 <= min <= max)")]
    InvalidBounds { min: usize, max: usize },
    #[error("search space exceeds the enumeration ceiling of {limit} candidates")]
    SearchSpaceTooLarge { limit: u128 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Domain-size range and per-size decision budget for a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub min: usize,
    pub max: usize,
    /// Decision budget per size; `None` means unbounded.
    pub node_limit: Option<u64>,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            min: 1,
            max: 12,
            node_limit: None,
        }
    }
}

impl SearchBounds {
    /// Bounds covering exactly the sizes `min..=max` with no budget.
    pub fn sizes(min: usize, max: usize) -> Self {
        SearchBounds {
            min,
            max,
            node_limit: None,
        }
    }

    fn validate(&self) -> Result<(), FinderError> {
        if self.min == 0 || self.min > self.max {
            return Err(FinderError::InvalidBounds {
                min: self.min,
                max: self.max,
            });
        }
        Ok(())
    }
}

/// Verdict for a single domain size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeVerdict {
    Model,
    NoModel,
    Limit,
}

impl SizeVerdict {
    fn as_str(self) -> &'static str {
        match self {
            SizeVerdict::Model => "model",
            SizeVerdict::NoModel => "none",
            SizeVerdict::Limit => "limit",
        }
    }
}

/// Per-size search statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeStats {
    pub size: usize,
    /// Branching decisions spent on this size.
    pub decisions: u64,
    pub verdict: SizeVerdict,
}

/// Overall outcome of a model search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    ModelFound {
        size: usize,
        model: FiniteInterpretation,
    },
    /// Every size up to and including the bound was exhausted.
    NoModelUpTo(usize),
    /// The decision budget ran out at this size; larger sizes were not tried.
    ResourceLimit { size: usize, decisions: u64 },
}

/// Outcome of a bounded search plus per-size statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub sizes: Vec<SizeStats>,
    /// Wall-clock milliseconds, filled in only when timings were requested.
    pub wall_ms: Option<u64>,
}

/// Overall outcome of a bounded refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationOutcome {
    CounterexampleFound {
        size: usize,
        model: FiniteInterpretation,
    },
    NoCounterexampleUpTo(usize),
    ResourceLimit { size: usize, decisions: u64 },
}

/// Outcome of a bounded refutation plus per-size statistics. `note` always
/// carries [`BOUNDED_NOTE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationReport {
    pub outcome: RefutationOutcome,
    pub sizes: Vec<SizeStats>,
    pub wall_ms: Option<u64>,
    pub note: &'static str,
}

/// Searches sizes `bounds.min..=bounds.max` for a model of `t` in which
/// `goal` is non-empty. Every returned model has been re-verified with the
/// exact evaluator.
pub fn find_model(
    t: &Terminology,
    goal: &Concept,
    bounds: &SearchBounds,
) -> Result<SearchReport, FinderError> {
    bounds.validate()?;
    let sig = signature_with_goal(t, goal);
    let mut sizes = Vec::new();
    for n in bounds.min..=bounds.max {
        let mut enc = Encoder::new(&sig, n);
        for axiom in &t.axioms {
            enc.add_axiom(axiom);
        }
        enc.add_nonempty(goal);
        let result = enc.solve(bounds.node_limit);
        let decisions = enc.decisions();
        match result {
            SolveResult::Sat(assignment) => {
                let model = enc.decode(&assignment);
                verify_model(&model, t, goal)?;
                sizes.push(SizeStats {
                    size: n,
                    decisions,
                    verdict: SizeVerdict::Model,
                });
                return Ok(SearchReport {
                    outcome: SearchOutcome::ModelFound { size: n, model },
                    sizes,
                    wall_ms: None,
                });
            }
            SolveResult::Unsat => {
                sizes.push(SizeStats {
                    size: n,
                    decisions,
                    verdict: SizeVerdict::NoModel,
                });
            }
            SolveResult::LimitReached => {
                sizes.push(SizeStats {
                    size: n,
                    decisions,
                    verdict: SizeVerdict::Limit,
                });
                return Ok(SearchReport {
                    outcome: SearchOutcome::ResourceLimit { size: n, decisions },
                    sizes,
                    wall_ms: None,
                });
            }
        }
    }
    Ok(SearchReport {
        outcome: SearchOutcome::NoModelUpTo(bounds.max),
        sizes,
        wall_ms: None,
    })
}

fn verify_model(
    model: &FiniteInterpretation,
    t: &Terminology,
    goal: &Concept,
) -> Result<(), FinderError> {
    let opts = CheckOptions::default();
    let report = model
        .check_terminology(t, &opts)
        .map_err(|e| FinderError::Internal(format!("verification failed to evaluate: {e}")))?;
    if !report.satisfied {
        return Err(FinderError::Internal(
            "solver produced an interpretation that violates the terminology".into(),
        ));
    }
    let extent = model
        .eval_concept_with(goal, &opts)
        .map_err(|e| FinderError::Internal(format!("verification failed to evaluate: {e}")))?;
    if extent.is_empty() {
        return Err(FinderError::Internal(
            "solver produced an interpretation with an empty goal".into(),
        ));
    }
    Ok(())
}

/// Searches for a finite model of `t` that violates `axiom`. With a PFD-free
/// right-hand side this is a plain model search for `lhs & ~rhs`; otherwise
/// the violation is encoded directly. Countermodels are re-verified with
/// [`FiniteInterpretation::is_finite_countermodel`].
pub fn refute_bounded(
    t: &Terminology,
    axiom: &Axiom,
    bounds: &SearchBounds,
) -> Result<RefutationReport, FinderError> {
    bounds.validate()?;
    if let Some(rhs) = axiom.rhs.as_concept() {
        let goal = Concept::and(axiom.lhs.clone(), Concept::not(rhs));
        let report = find_model(t, &goal, bounds)?;
        let outcome = match report.outcome {
            SearchOutcome::ModelFound { size, model } => {
                confirm_countermodel(&model, t, axiom)?;
                RefutationOutcome::CounterexampleFound { size, model }
            }
            SearchOutcome::NoModelUpTo(max) => RefutationOutcome::NoCounterexampleUpTo(max),
            SearchOutcome::ResourceLimit { size, decisions } => {
                RefutationOutcome::ResourceLimit { size, decisions }
            }
        };
        return Ok(RefutationReport {
            outcome,
            sizes: report.sizes,
            wall_ms: None,
            note: BOUNDED_NOTE,
        });
    }
    // PFD on the right-hand side: assert a violating element directly.
    let mut extended = t.clone();
    extended.axioms.push(axiom.clone());
    let sig = crate::signature::signature_of(&extended);
    let mut sizes = Vec::new();
    for n in bounds.min..=bounds.max {
        let mut enc = Encoder::new(&sig, n);
        for a in &t.axioms {
            enc.add_axiom(a);
        }
        enc.add_violated_somewhere(axiom);
        let result = enc.solve(bounds.node_limit);
        let decisions = enc.decisions();
        match result {
            SolveResult::Sat(assignment) => {
                let model = enc.decode(&assignment);
                confirm_countermodel(&model, t, axiom)?;
                sizes.push(SizeStats {
                    size: n,
                    decisions,
                    verdict: SizeVerdict::Model,
                });
                return Ok(RefutationReport {
                    outcome: RefutationOutcome::CounterexampleFound { size: n, model },
                    sizes,
                    wall_ms: None,
                    note: BOUNDED_NOTE,
                });
            }
            SolveResult::Unsat => sizes.push(SizeStats {
                size: n,
                decisions,
                verdict: SizeVerdict::NoModel,
            }),
            SolveResult::LimitReached => {
                sizes.push(SizeStats {
                    size: n,
                    decisions,
                    verdict: SizeVerdict::Limit,
                });
                return Ok(RefutationReport {
                    outcome: RefutationOutcome::ResourceLimit { size: n, decisions },
                    sizes,
                    wall_ms: None,
                    note: BOUNDED_NOTE,
                });
            }
        }
    }
    Ok(RefutationReport {
        outcome: RefutationOutcome::NoCounterexampleUpTo(bounds.max),
        sizes,
        wall_ms: None,
        note: BOUNDED_NOTE,
    })
}

fn confirm_countermodel(
    model: &FiniteInterpretation,
    t: &Terminology,
    axiom: &Axiom,
) -> Result<(), FinderError> {
    let ok = model
        .is_finite_countermodel(t, axiom, &CheckOptions::default())
        .map_err(|e| FinderError::Internal(format!("verification failed to evaluate: {e}")))?;
    if ok {
        Ok(())
    } else {
        Err(FinderError::Internal(
            "solver produced an interpretation that is not a countermodel".into(),
        ))
    }
}

impl Serialize for SizeStats {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SizeStats", 3)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("decisions", &self.decisions)?;
        st.serialize_field("verdict", self.verdict.as_str())?;
        st.end()
    }
}

impl Serialize for SearchOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SearchOutcome::ModelFound { size, model } => {
                let mut st = s.serialize_struct("SearchOutcome", 3)?;
                st.serialize_field("kind", "model_found")?;
                st.serialize_field("size", size)?;
                st.serialize_field("model", &crate::interp::model_file(model))?;
                st.end()
            }
            SearchOutcome::NoModelUpTo(size) => {
                let mut st = s.serialize_struct("SearchOutcome", 2)?;
                st.serialize_field("kind", "no_model_up_to")?;
                st.serialize_field("size", size)?;
                st.end()
            }
            SearchOutcome::ResourceLimit { size, decisions } => {
                let mut st = s.serialize_struct("SearchOutcome", 3)?;
                st.serialize_field("kind", "resource_limit")?;
                st.serialize_field("size", size)?;
                st.serialize_field("decisions", decisions)?;
                st.end()
            }
        }
    }
}

impl Serialize for SearchReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fields = 2 + usize::from(self.wall_ms.is_some());
        let mut st = s.serialize_struct("SearchReport", fields)?;
        st.serialize_field("outcome", &self.outcome)?;
        st.serialize_field("sizes", &self.sizes)?;
        if let Some(ms) = self.wall_ms {
            st.serialize_field("wall_ms", &ms)?;
        }
        st.end()
    }
}

impl Serialize for RefutationOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RefutationOutcome::CounterexampleFound { size, model } => {
                let mut st = s.serialize_struct("RefutationOutcome", 3)?;
                st.serialize_field("kind", "counterexample")?;
                st.serialize_field("size", size)?;
                st.serialize_field("model", &crate::interp::model_file(model))?;
                st.end()
            }
            RefutationOutcome::NoCounterexampleUpTo(size) => {
                let mut st = s.serialize_struct("RefutationOutcome", 2)?;
                st.serialize_field("kind", "no_counterexample_up_to")?;
                st.serialize_field("size", size)?;
                st.end()
            }
            RefutationOutcome::ResourceLimit { size, decisions } => {
                let mut st = s.serialize_struct("RefutationOutcome", 3)?;
                st.serialize_field("kind", "resource_limit")?;
                st.serialize_field("size", size)?;
                st.serialize_field("decisions", decisions)?;
                st.end()
            }
        }
    }
}

impl Serialize for RefutationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let fields = 3 + usize::from(self.wall_ms.is_some());
        let mut st = s.serialize_struct("RefutationReport", fields)?;
        st.serialize_field("outcome", &self.outcome)?;
        st.serialize_field("sizes", &self.sizes)?;
        st.serialize_field("note", self.note)?;
        if let Some(ms) = self.wall_ms {
            st.serialize_field("wall_ms", &ms)?;
        }
        st.end()
    }
}
