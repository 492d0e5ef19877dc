//! End-to-end verification of a reduction instance.
//!
//! One direction searches for a torus tiling and, if found, builds the
//! witness model and checks it against both reduction modes. The other
//! direction runs a bounded countermodel search against the goal subsumption.
//! Both outcomes are reported factually; neither failed bounded search is a
//! proof on its own.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::ast::{Axiom, Concept};
use crate::finder::{
    refute_bounded, FinderError, RefutationOutcome, RefutationReport, SearchBounds, BOUNDED_NOTE,
};
use crate::interp::CheckOptions;

use super::reduce::{reduce_to_terminology, ReductionMode};
use super::witness::build_torus_witness;
use super::{double_tiling, solve_torus_upto, TileId, TilingError, TilingProblem, TorusTiling};

/// Errors from [`verify_reduction_instance`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Finder(#[from] FinderError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// How the witness built from a found tiling checked out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSummary {
    /// Dimensions of the tiling the witness was built from (doubled when the
    /// found solution had an odd dimension).
    pub width: usize,
    pub height: usize,
    pub elements: usize,
    pub direct_satisfied: bool,
    pub desugared_satisfied: bool,
    pub goal_nonempty: bool,
    /// Whether the witness refutes `goal <= Bot` against the direct
    /// terminology.
    pub countermodel: bool,
}

impl WitnessSummary {
    fn all_good(&self) -> bool {
        self.direct_satisfied && self.desugared_satisfied && self.goal_nonempty && self.countermodel
    }
}

impl Serialize for WitnessSummary {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WitnessSummary", 7)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("height", &self.height)?;
        st.serialize_field("elements", &self.elements)?;
        st.serialize_field("direct_satisfied", &self.direct_satisfied)?;
        st.serialize_field("desugared_satisfied", &self.desugared_satisfied)?;
        st.serialize_field("goal_nonempty", &self.goal_nonempty)?;
        st.serialize_field("countermodel", &self.countermodel)?;
        st.end()
    }
}

/// Factual outcomes of both directions plus a one-line reading.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub t0: TileId,
    /// The tiling the witness was built from, when one was found.
    pub torus: Option<TorusTiling>,
    pub witness: Option<WitnessSummary>,
    /// Bounded countermodel search, run when no tiling was found.
    pub refutation: Option<RefutationReport>,
    pub conclusion: String,
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("VerificationReport", 5)?;
        st.serialize_field("t0", self.t0.as_str())?;
        st.serialize_field("torus", &self.torus)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("refutation", &self.refutation)?;
        st.serialize_field("conclusion", &self.conclusion)?;
        st.end()
    }
}

/// Runs both directions for one instance: torus search up to `max_dim` per
/// axis and, when that finds nothing, a bounded countermodel search for the
/// goal subsumption under `bounds`.
pub fn verify_reduction_instance(
    u: &TilingProblem,
    t0: &TileId,
    max_dim: usize,
    bounds: &SearchBounds,
) -> Result<VerificationReport, VerifyError> {
    if !u.declares(t0) {
        return Err(TilingError::UndeclaredTile(t0.clone()).into());
    }
    let (direct, goal) = reduce_to_terminology(u, t0, ReductionMode::Direct)?;
    let (desugared, _) = reduce_to_terminology(u, t0, ReductionMode::Desugared)?;
    let opts = CheckOptions::default();
    let internal = |e: crate::interp::EvalError| VerifyError::Internal(e.to_string());

    if let Some(found) = solve_torus_upto(u, t0, max_dim)? {
        let tiling = if found.width() % 2 != 0 || found.height() % 2 != 0 {
            double_tiling(&found)
        } else {
            found
        };
        let witness = build_torus_witness(u, &tiling)?;
        let summary = WitnessSummary {
            width: tiling.width(),
            height: tiling.height(),
            elements: witness.n(),
            direct_satisfied: witness
                .check_terminology(&direct, &opts)
                .map_err(internal)?
                .satisfied,
            desugared_satisfied: witness
                .check_terminology(&desugared, &opts)
                .map_err(internal)?
                .satisfied,
            goal_nonempty: !witness
                .eval_concept_with(&goal, &opts)
                .map_err(internal)?
                .is_empty(),
            countermodel: witness
                .is_finite_countermodel(&direct, &Axiom::plain(goal, Concept::Bot), &opts)
                .map_err(internal)?,
        };
        let conclusion = if summary.all_good() {
            format!(
                "a {}x{} torus tiling exists; its witness model ({} elements) \
                 satisfies both reductions and realizes the goal",
                tiling.width(),
                tiling.height(),
                witness.n()
            )
        } else {
            "a torus tiling was found but its witness failed verification; \
             this indicates a bug in the reduction or witness construction"
                .to_owned()
        };
        Ok(VerificationReport {
            t0: t0.clone(),
            torus: Some(tiling),
            witness: Some(summary),
            refutation: None,
            conclusion,
        })
    } else {
        let refutation = refute_bounded(&direct, &Axiom::plain(goal, Concept::Bot), bounds)?;
        let conclusion = match &refutation.outcome {
            RefutationOutcome::CounterexampleFound { size, .. } => format!(
                "no torus tiling up to {max_dim}x{max_dim}, yet a countermodel of size {size} \
                 exists; the tiling search bound was too small"
            ),
            RefutationOutcome::NoCounterexampleUpTo(limit) => format!(
                "no torus tiling up to {max_dim}x{max_dim} and no countermodel up to size \
                 {limit}; {BOUNDED_NOTE}"
            ),
            RefutationOutcome::ResourceLimit { size, .. } => format!(
                "no torus tiling up to {max_dim}x{max_dim}; the countermodel search ran out \
                 of budget at size {size}"
            ),
        };
        Ok(VerificationReport {
            t0: t0.clone(),
            torus: None,
            witness: None,
            refutation: Some(refutation),
            conclusion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{ab_swap, no_horizontal, one_tile};
    use super::*;

    #[test]
    fn solvable_instance_reports_a_verified_witness() {
        let inst = one_tile();
        let report =
            verify_reduction_instance(&inst.problem, &inst.t0, 4, &SearchBounds::sizes(1, 2))
                .unwrap();
        let torus = report.torus.as_ref().expect("tiling found");
        assert_eq!((torus.width(), torus.height()), (2, 2));
        let w = report.witness.as_ref().expect("witness built");
        assert!(w.direct_satisfied && w.desugared_satisfied);
        assert!(w.goal_nonempty && w.countermodel);
        assert_eq!(w.elements, 16);
        assert!(report.refutation.is_none());
        assert!(report.conclusion.contains("torus tiling exists"));
    }

    #[test]
    fn even_solutions_are_not_doubled() {
        let inst = ab_swap();
        let report =
            verify_reduction_instance(&inst.problem, &inst.t0, 4, &SearchBounds::sizes(1, 2))
                .unwrap();
        // The least solution is 2x1; only the odd dimension forces doubling,
        // which doubles both, giving 4x2.
        let torus = report.torus.as_ref().unwrap();
        assert_eq!((torus.width(), torus.height()), (4, 2));
        assert_eq!(report.witness.as_ref().unwrap().elements, 32);
    }

    #[test]
    fn unsolvable_instance_falls_back_to_bounded_refutation() {
        let inst = no_horizontal();
        let report =
            verify_reduction_instance(&inst.problem, &inst.t0, 3, &SearchBounds::sizes(1, 3))
                .unwrap();
        assert!(report.torus.is_none() && report.witness.is_none());
        let refutation = report.refutation.as_ref().expect("refutation ran");
        assert_eq!(
            refutation.outcome,
            RefutationOutcome::NoCounterexampleUpTo(3)
        );
        assert_eq!(refutation.note, BOUNDED_NOTE);
        assert!(report.conclusion.contains("no countermodel up to size 3"));
        assert!(report.conclusion.contains("evidence, not a proof"));
    }

    #[test]
    fn report_serializes_with_fixed_field_order() {
        let inst = one_tile();
        let report =
            verify_reduction_instance(&inst.problem, &inst.t0, 4, &SearchBounds::sizes(1, 2))
                .unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"t0\":\"t\",\"torus\":{\"width\":2,\"height\":2,"));
        assert!(json.contains("\"witness\":{\"width\":2,\"height\":2,\"elements\":16,"));
        assert!(json.contains("\"refutation\":null"));
    }

    #[test]
    fn errors_are_propagated() {
        let inst = one_tile();
        let z = TileId::new("z").unwrap();
        assert!(matches!(
            verify_reduction_instance(&inst.problem, &z, 2, &SearchBounds::default()),
            Err(VerifyError::Tiling(TilingError::UndeclaredTile(_)))
        ));
        let noh = no_horizontal();
        let bad = SearchBounds {
            min: 0,
            max: 2,
            node_limit: None,
        };
        assert!(matches!(
            verify_reduction_instance(&noh.problem, &noh.t0, 2, &bad),
            Err(VerifyError::Finder(FinderError::InvalidBounds { .. }))
        ));
    }
}
