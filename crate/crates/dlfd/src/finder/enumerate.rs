//! Exhaustive enumeration of all models of a fixed size.
//!
//! This is the reference route: it walks every candidate interpretation over
//! the terminology's signature in a fixed lexicographic order and keeps the
//! ones that satisfy all axioms (and make the goal non-empty, when one is
//! given). It shares no machinery with the SAT-based finder — candidates are
//! checked by direct evaluation — precisely so the two can be played against
//! each other in tests.

use std::collections::{BTreeMap, BTreeSet};

use crate::ast::{Concept, Terminology};
use crate::interp::{CheckOptions, FiniteInterpretation};
use crate::signature::{signature_of, signature_with_goal};

use super::FinderError;

/// Hard ceiling on the number of candidate interpretations.
pub const CANDIDATE_LIMIT: u128 = 100_000_000;

/// Counts candidates for a signature of `k` concepts and `m` features at
/// domain size `n`: `(2^n)^k * (n^n)^m`.
fn candidate_count(k: usize, m: usize, n: usize) -> Option<u128> {
    let mut total: u128 = 1;
    let extent_choices = 1u128.checked_shl((n) as u32)?;
    for _ in 0..k {
        total = total.checked_mul(extent_choices)?;
    }
    let mut table_choices: u128 = 1;
    for _ in 0..n {
        table_choices = table_choices.checked_mul(n as u128)?;
    }
    for _ in 0..m {
        total = total.checked_mul(table_choices)?;
    }
    Some(total)
}

/// Returns every size-`n` model of `t` (with a non-empty `goal`, if given) in
/// canonical order: concept extents are bit masks counted upward (bit `x` =
/// element `x`), feature tables are base-`n` odometers (element 0 the most
/// significant digit), concepts outrank features, and earlier names outrank
/// later ones.
pub fn enumerate_all(
    t: &Terminology,
    goal: Option<&Concept>,
    n: usize,
) -> Result<Vec<FiniteInterpretation>, FinderError> {
    if n == 0 || n > 63 {
        return Err(FinderError::InvalidBounds { min: n, max: n });
    }
    let sig = match goal {
        Some(g) => signature_with_goal(t, g),
        None => signature_of(t),
    };
    let concepts: Vec<_> = sig.concepts.iter().cloned().collect();
    let features: Vec<_> = sig.features.iter().cloned().collect();
    candidate_count(concepts.len(), features.len(), n)
        .filter(|&c| c <= CANDIDATE_LIMIT)
        .ok_or(FinderError::SearchSpaceTooLarge {
            limit: CANDIDATE_LIMIT,
        })?;

    let mut extents: Vec<u64> = vec![0; concepts.len()];
    let mut tables: Vec<Vec<usize>> = vec![vec![0; n]; features.len()];
    let opts = CheckOptions::default();
    let mut models = Vec::new();
    loop {
        let concept_map: BTreeMap<_, BTreeSet<usize>> = concepts
            .iter()
            .zip(&extents)
            .map(|(c, &mask)| {
                let extent = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
                (c.clone(), extent)
            })
            .collect();
        let feature_map: BTreeMap<_, _> = features
            .iter()
            .zip(&tables)
            .map(|(f, table)| (f.clone(), table.clone()))
            .collect();
        let i = FiniteInterpretation::new(n, feature_map, concept_map)
            .expect("generated candidates are well-formed");
        let mut keep = t.axioms.iter().try_fold(true, |acc, a| {
            if !acc {
                return Ok(false);
            }
            Ok::<_, crate::interp::EvalError>(i.check_axiom(a, &opts)?.is_satisfied())
        });
        if let (Ok(true), Some(g)) = (&keep, goal) {
            keep = i.eval_concept_with(g, &opts).map(|e| !e.is_empty());
        }
        if keep.map_err(|e| FinderError::Internal(e.to_string()))? {
            models.push(i);
        }
        if !advance(&mut extents, &mut tables, n) {
            break;
        }
    }
    Ok(models)
}

/// Steps the odometer; the last feature's last element moves fastest, then
/// earlier digits, then concept masks (last concept fastest). Returns false
/// when the space is exhausted.
fn advance(extents: &mut [u64], tables: &mut [Vec<usize>], n: usize) -> bool {
    for table in tables.iter_mut().rev() {
        for digit in table.iter_mut().rev() {
            *digit += 1;
            if *digit < n {
                return true;
            }
            *digit = 0;
        }
    }
    let roll = 1u64 << n;
    for mask in extents.iter_mut().rev() {
        *mask += 1;
        if *mask < roll {
            return true;
        }
        *mask = 0;
    }
    false
}
