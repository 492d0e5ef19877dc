//! A workbench for finite-model reasoning in a description logic with
//! inverse-functional-style path functional dependencies (PFDs).
//!
//! The crate covers four layers:
//!
//! * [`ast`] / [`parse`] / [`print`] — terminology syntax: concept
//!   constructors `&`, `|`, `~`, `all f . C`, PFDs `fd(D : p1, .., pk -> p)`,
//!   and subsumption axioms `lhs <= rhs;`.
//! * [`interp`] — explicit finite interpretations over `{0, .., n-1}` with
//!   exact evaluation, axiom checking, replayable violation witnesses, JSON
//!   model files, and DOT export.
//! * [`finder`] — bounded finite-model search (a small CDCL SAT core plus an
//!   independent brute-force enumerator used as an oracle), and bounded
//!   refutation of subsumption axioms.
//! * [`tiling`] — periodic (torus) tiling problems, the encoding of a tiling
//!   instance as a terminology whose goal concept is finitely satisfiable iff
//!   the torus can be tiled, explicit witness-model construction for solvable
//!   instances, and an end-to-end verifier.

pub mod ast;
pub mod finder;
pub mod interp;
pub mod parse;
pub mod print;
pub mod signature;
pub mod tiling;
pub mod transform;

pub use ast::{
    Axiom, Concept, ConceptName, FeatureName, NameError, PathExpr, RhsConcept, Terminology,
};
pub use finder::{
    enumerate_all, find_model, refute_bounded, FinderError, RefutationOutcome, RefutationReport,
    SearchBounds, SearchOutcome, SearchReport,
};
pub use interp::{CheckOptions, CheckReport, FiniteInterpretation};
pub use parse::{parse_axiom, parse_concept, parse_terminology, ParseError};
pub use print::{print_axiom, print_concept, print_path, print_rhs, render_terminology};
pub use signature::{signature_of, signature_with_goal, Signature};
pub use tiling::{
    build_torus_witness, check_torus_tiling, double_tiling, reduce_to_terminology, solve_torus,
    solve_torus_upto, verify_reduction_instance, ReductionMode, TileId, TilingError,
    TilingInstance, TilingProblem, TorusTiling, VerificationReport,
};
