//! Compiling a tiling problem into a terminology.
//!
//! The encoding models a square complex: cells (concepts `X` and `Y` on a
//! checkerboard), the four edge classes `A`..`D` around them, and shared
//! corner points. Cell features `a`..`d` (resp. `a'`..`d'`) lead from cells
//! to their edges, `f`/`g` lead from an edge to its two cells, and `h`/`i`
//! to its two corners. PFDs glue these into rigid squares, extension axioms
//! force the plane to continue, and per-tile adjacency axioms transfer the
//! problem's horizontal/vertical relations. The goal concept `X & T_<t0>` is
//! then finitely satisfiable exactly when the problem tiles some torus.
//!
//! Axiom emission order is fixed, so reduction output is byte-deterministic.

use std::collections::BTreeMap;
use std::fmt;

use crate::ast::{Axiom, Concept, ConceptName, FeatureName, RhsConcept, Terminology};
use crate::transform::desugar_asymmetric_pfds;

use super::{TileId, TilingError, TilingProblem};

/// Whether the sixteen asymmetric square-forming PFDs are emitted directly or
/// rewritten through shared union concepts into symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    Direct,
    Desugared,
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionMode::Direct => "direct",
            ReductionMode::Desugared => "desugared",
        })
    }
}

/// The fixed names used by the reduction, plus the per-tile concepts.
#[derive(Debug, Clone)]
pub struct ReductionVocabulary {
    /// Edge classes `A`, `B`, `C`, `D`.
    pub edges: [ConceptName; 4],
    pub x: ConceptName,
    pub y: ConceptName,
    /// X-cell features `a`, `b`, `c`, `d`.
    pub x_feats: [FeatureName; 4],
    /// Y-cell features `a'`, `b'`, `c'`, `d'`.
    pub y_feats: [FeatureName; 4],
    /// Edge-to-cell features: `f` to the X cell, `g` to the Y cell.
    pub f: FeatureName,
    pub g: FeatureName,
    /// Edge-to-corner features.
    pub h: FeatureName,
    pub i: FeatureName,
    tile_concepts: BTreeMap<TileId, ConceptName>,
}

impl ReductionVocabulary {
    pub fn new(u: &TilingProblem) -> ReductionVocabulary {
        let c = |s: &str| ConceptName::new(s).expect("fixed names are valid");
        let f = |s: &str| FeatureName::new(s).expect("fixed names are valid");
        ReductionVocabulary {
            edges: [c("A"), c("B"), c("C"), c("D")],
            x: c("X"),
            y: c("Y"),
            x_feats: [f("a"), f("b"), f("c"), f("d")],
            y_feats: [f("a'"), f("b'"), f("c'"), f("d'")],
            f: f("f"),
            g: f("g"),
            h: f("h"),
            i: f("i"),
            tile_concepts: u
                .tiles()
                .iter()
                .map(|t| {
                    let name = ConceptName::new(&format!("T_{t}"))
                        .expect("prefixed tile ids are valid concept names");
                    (t.clone(), name)
                })
                .collect(),
        }
    }

    /// The concept `T_<tile>`.
    pub fn tile_concept(&self, t: &TileId) -> &ConceptName {
        &self.tile_concepts[t]
    }
}

/// Compiles the problem into a terminology and the goal concept `X & T_<t0>`.
pub fn reduce_to_terminology(
    u: &TilingProblem,
    t0: &TileId,
    mode: ReductionMode,
) -> Result<(Terminology, Concept), TilingError> {
    if !u.declares(t0) {
        return Err(TilingError::UndeclaredTile(t0.clone()));
    }
    let v = ReductionVocabulary::new(u);
    let prim = |n: &ConceptName| Concept::Primitive(n.clone());
    let mut axioms: Vec<Axiom> = Vec::new();

    // 1. The four edge classes are pairwise disjoint.
    for a in 0..4 {
        for b in (a + 1)..4 {
            axioms.push(Axiom::plain(
                Concept::and(prim(&v.edges[a]), prim(&v.edges[b])),
                Concept::Bot,
            ));
        }
    }

    // 2. Cell typing, edge typing, and sharing constraints: each cell sees
    // one edge of each class, cells are fixed by any one of their edges, and
    // edges are fixed by either of their cells.
    let typing = |feats: &[FeatureName; 4]| {
        Concept::and_all(
            feats
                .iter()
                .zip(&v.edges)
                .map(|(ft, e)| Concept::all(ft.clone(), prim(e)))
                .collect(),
        )
    };
    axioms.push(Axiom::plain(prim(&v.x), typing(&v.x_feats)));
    axioms.push(Axiom::plain(prim(&v.y), typing(&v.y_feats)));
    for ft in &v.x_feats {
        axioms.push(identity_pfd(&v.x, ft));
    }
    for ft in &v.y_feats {
        axioms.push(identity_pfd(&v.y, ft));
    }
    for e in &v.edges {
        axioms.push(Axiom::plain(
            prim(e),
            Concept::and(
                Concept::all(v.f.clone(), prim(&v.x)),
                Concept::all(v.g.clone(), prim(&v.y)),
            ),
        ));
    }
    for ft in [&v.f, &v.g] {
        for e in &v.edges {
            axioms.push(identity_pfd(e, ft));
        }
    }

    // 3. Square formation: edges that share a cell share the matching corner
    // and vice versa. Four rounds over the class cycle A->B->C->D->A.
    let rounds: [[&FeatureName; 2]; 4] = [
        [&v.f, &v.h],
        [&v.h, &v.f],
        [&v.g, &v.i],
        [&v.i, &v.g],
    ];
    for [lhs_ft, rhs_ft] in &rounds {
        for e in 0..4 {
            let this = &v.edges[e];
            let next = &v.edges[(e + 1) % 4];
            // The corner features swap roles on the odd classes.
            let (l, r) = if e % 2 == 0 {
                (*lhs_ft, *rhs_ft)
            } else {
                (swap_hi(&v, lhs_ft), swap_hi(&v, rhs_ft))
            };
            axioms.push(Axiom::new(
                prim(this),
                RhsConcept::pfd(
                    prim(next),
                    vec![crate::ast::PathExpr::feature(l.clone())],
                    crate::ast::PathExpr::feature(r.clone()),
                ),
            ));
        }
    }

    // 4. Extension: every edge also reaches the cell on its far side.
    axioms.push(Axiom::plain(
        prim(&v.edges[0]),
        Concept::all(v.g.clone(), prim(&v.y)),
    ));
    axioms.push(Axiom::plain(
        prim(&v.edges[1]),
        Concept::all(v.g.clone(), prim(&v.y)),
    ));
    axioms.push(Axiom::plain(
        prim(&v.edges[2]),
        Concept::all(v.f.clone(), prim(&v.x)),
    ));
    axioms.push(Axiom::plain(
        prim(&v.edges[3]),
        Concept::all(v.f.clone(), prim(&v.x)),
    ));

    // 5. Adjacency per tile: A and C carry the vertical relation, B and D the
    // horizontal one.
    for t in u.tiles() {
        let tc = prim(v.tile_concept(t));
        let vert = successor_union(&v, &u.vert_successors(t));
        let horiz = successor_union(&v, &u.horiz_successors(t));
        axioms.push(Axiom::plain(
            Concept::and(prim(&v.edges[0]), Concept::all(v.g.clone(), tc.clone())),
            Concept::all(v.f.clone(), vert.clone()),
        ));
        axioms.push(Axiom::plain(
            Concept::and(prim(&v.edges[2]), Concept::all(v.f.clone(), tc.clone())),
            Concept::all(v.g.clone(), vert),
        ));
        axioms.push(Axiom::plain(
            Concept::and(prim(&v.edges[1]), Concept::all(v.f.clone(), tc.clone())),
            Concept::all(v.g.clone(), horiz.clone()),
        ));
        axioms.push(Axiom::plain(
            Concept::and(prim(&v.edges[3]), Concept::all(v.g.clone(), tc)),
            Concept::all(v.f.clone(), horiz),
        ));
    }

    // 6. Distinct tiles exclude each other.
    let tiles = u.tiles();
    for a in 0..tiles.len() {
        for b in (a + 1)..tiles.len() {
            axioms.push(Axiom::plain(
                Concept::and(
                    prim(v.tile_concept(&tiles[a])),
                    prim(v.tile_concept(&tiles[b])),
                ),
                Concept::Bot,
            ));
        }
    }

    let mut t = Terminology { axioms };
    if mode == ReductionMode::Desugared {
        t = desugar_asymmetric_pfds(&t);
    }
    let goal = Concept::and(prim(&v.x), prim(v.tile_concept(t0)));
    Ok((t, goal))
}

/// `Cls <= fd(Cls : ft -> id)`: two members sharing an `ft`-value are equal.
fn identity_pfd(cls: &ConceptName, ft: &FeatureName) -> Axiom {
    Axiom::new(
        Concept::Primitive(cls.clone()),
        RhsConcept::pfd(
            Concept::Primitive(cls.clone()),
            vec![crate::ast::PathExpr::feature(ft.clone())],
            crate::ast::PathExpr::id(),
        ),
    )
}

/// Swaps `h` with `i`; other features pass through.
fn swap_hi<'a>(v: &'a ReductionVocabulary, ft: &'a FeatureName) -> &'a FeatureName {
    if ft == &v.h {
        &v.i
    } else if ft == &v.i {
        &v.h
    } else {
        ft
    }
}

/// Union of the tile concepts, in declaration order, left-associated; empty
/// unions collapse to `Bot` and singletons to the bare concept.
fn successor_union(v: &ReductionVocabulary, succs: &[&TileId]) -> Concept {
    if succs.is_empty() {
        return Concept::Bot;
    }
    Concept::or_all(
        succs
            .iter()
            .map(|t| Concept::Primitive(v.tile_concept(t).clone()))
            .collect(),
    )
}
