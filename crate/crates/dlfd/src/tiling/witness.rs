//! Building explicit finite models from torus tilings.
//!
//! A `w x h` torus tiling induces a square complex with `w * h` cells, as many
//! vertical edges, horizontal edges, and corners. The witness interpretation
//! has one element per part (`4 * w * h` in total): cells alternate between
//! `X` and `Y` like a checkerboard, each edge falls into one of the classes
//! `A`..`D` by its direction and parity, and the features wire every cell to
//! its four edges and every edge to its two cells and two corner endpoints.
//! Both complex dimensions must be even so the alternation closes up around
//! the torus; [`super::double_tiling`] fixes odd solutions.
//!
//! Exactly how the features are laid over the grid — which side of a cell
//! each of `a`..`d` reaches, which endpoint `h` takes per class, and whether
//! the grid is transposed into the complex — is captured by
//! [`WitnessOrientation`]. [`calibrate`] searches the whole configuration
//! space for the first orientation that satisfies the compiled terminologies
//! on a family of solvable fixtures; [`FROZEN_ORIENTATION`] pins its result.

use std::collections::{BTreeMap, BTreeSet};

use crate::ast::{Concept, ConceptName, FeatureName, Terminology};
use crate::interp::{AxiomOutcome, CheckOptions, FiniteInterpretation};
use crate::transform::union_concept_name;

use super::reduce::{reduce_to_terminology, ReductionMode, ReductionVocabulary};
use super::{
    check_torus_tiling, double_tiling, solve_torus_upto, TileId, TilingError, TilingProblem,
    TorusTiling,
};

/// A side of a square cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Top,
    Right,
    Bottom,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Top => Side::Bottom,
            Side::Right => Side::Left,
            Side::Bottom => Side::Top,
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// How the cell/edge/corner complex is laid over a tiling grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessOrientation {
    /// Side of an `X` cell reached by each of `a`, `b`, `c`, `d`. Must cover
    /// all four sides; the primed features take the opposite sides, and the
    /// edge classes `A`..`D` sit on the sides their cell features point to.
    pub x_sides: [Side; 4],
    /// Per edge class `A`..`D`: whether `h` takes the positive endpoint (top
    /// for vertical edges, right for horizontal ones); `i` takes the other.
    pub h_positive: [bool; 4],
    /// Read the grid transposed, so grid columns run along the complex `x`
    /// axis.
    pub transpose: bool,
}

/// The orientation [`calibrate`] finds; all witnesses are built with it.
/// Classes `A`/`C` sit on horizontal edges, `B`/`D` on vertical ones, and
/// grid coordinates map to the complex untransposed.
pub const FROZEN_ORIENTATION: WitnessOrientation = WitnessOrientation {
    x_sides: [Side::Bottom, Side::Right, Side::Top, Side::Left],
    h_positive: [true, false, false, true],
    transpose: false,
};

/// Builds the witness interpretation for a solved instance using the frozen
/// orientation. The tiling must solve the problem and have even dimensions.
pub fn build_torus_witness(
    u: &TilingProblem,
    s: &TorusTiling,
) -> Result<FiniteInterpretation, TilingError> {
    build_torus_witness_with(u, s, &FROZEN_ORIENTATION)
}

/// [`build_torus_witness`] with an explicit orientation.
pub fn build_torus_witness_with(
    u: &TilingProblem,
    s: &TorusTiling,
    orient: &WitnessOrientation,
) -> Result<FiniteInterpretation, TilingError> {
    // side_class[side] = edge-class index whose cell feature points there.
    let mut assignment = [None::<usize>; 4];
    for (k, side) in orient.x_sides.iter().enumerate() {
        assert!(
            assignment[side.index()].replace(k).is_none(),
            "orientation sides must be a bijection"
        );
    }
    let side_class = assignment.map(|k| k.expect("orientation covers all four sides"));

    if !check_torus_tiling(u, s)? {
        return Err(TilingError::InvalidTiling);
    }
    let (w, h) = if orient.transpose {
        (s.height(), s.width())
    } else {
        (s.width(), s.height())
    };
    if w % 2 != 0 || h % 2 != 0 {
        return Err(TilingError::OddDimensions {
            width: s.width(),
            height: s.height(),
        });
    }

    // Element numbering: cells, vertical edges, horizontal edges, corners,
    // each block in row-major order. V(x, y) separates cells (x-1, y) and
    // (x, y); H(x, y) separates (x, y-1) and (x, y); corner (x, y) is the
    // lower-left endpoint of both.
    let area = w * h;
    let n = 4 * area;
    let cell = |x: usize, y: usize| (y % h) * w + (x % w);
    let vedge = |x: usize, y: usize| area + (y % h) * w + (x % w);
    let hedge = |x: usize, y: usize| 2 * area + (y % h) * w + (x % w);
    let corner = |x: usize, y: usize| 3 * area + (y % h) * w + (x % w);

    let vocab = ReductionVocabulary::new(u);
    let mut features: BTreeMap<FeatureName, Vec<usize>> = BTreeMap::new();
    for ft in vocab
        .x_feats
        .iter()
        .chain(vocab.y_feats.iter())
        .chain([&vocab.f, &vocab.g, &vocab.h, &vocab.i])
    {
        // Features are total: everything not wired below stays a self-loop.
        features.insert(ft.clone(), (0..n).collect());
    }
    let mut set = |ft: &FeatureName, at: usize, to: usize| {
        features.get_mut(ft).expect("feature table exists")[at] = to;
    };

    let mut class_ext: [BTreeSet<usize>; 4] = Default::default();
    let mut x_cells = BTreeSet::new();
    let mut y_cells = BTreeSet::new();
    let mut tile_ext: BTreeMap<&TileId, BTreeSet<usize>> =
        u.tiles().iter().map(|t| (t, BTreeSet::new())).collect();

    for y in 0..h {
        for x in 0..w {
            let me = cell(x, y);
            let is_x = (x + y) % 2 == 0;

            // The cell's features reach its four sides.
            for k in 0..4 {
                let side = if is_x {
                    orient.x_sides[k]
                } else {
                    orient.x_sides[k].opposite()
                };
                let target = match side {
                    Side::Left => vedge(x, y),
                    Side::Right => vedge(x + 1, y),
                    Side::Top => hedge(x, y + 1),
                    Side::Bottom => hedge(x, y),
                };
                let name = if is_x {
                    &vocab.x_feats[k]
                } else {
                    &vocab.y_feats[k]
                };
                set(name, me, target);
            }

            // V(x, y): its class is read off the adjacent X cell, for which
            // it is the left side (if that cell is (x, y)) or the right one.
            let e = vedge(x, y);
            let side = if is_x { Side::Left } else { Side::Right };
            let k = side_class[side.index()];
            class_ext[k].insert(e);
            let other = cell(x + w - 1, y);
            let (fc, gc) = if is_x { (me, other) } else { (other, me) };
            set(&vocab.f, e, fc);
            set(&vocab.g, e, gc);
            let (neg, pos) = (corner(x, y), corner(x, y + 1));
            let (hc, ic) = if orient.h_positive[k] { (pos, neg) } else { (neg, pos) };
            set(&vocab.h, e, hc);
            set(&vocab.i, e, ic);

            // H(x, y): bottom side of cell (x, y), top side of (x, y-1).
            let e = hedge(x, y);
            let side = if is_x { Side::Bottom } else { Side::Top };
            let k = side_class[side.index()];
            class_ext[k].insert(e);
            let other = cell(x, y + h - 1);
            let (fc, gc) = if is_x { (me, other) } else { (other, me) };
            set(&vocab.f, e, fc);
            set(&vocab.g, e, gc);
            let (neg, pos) = (corner(x, y), corner(x + 1, y));
            let (hc, ic) = if orient.h_positive[k] { (pos, neg) } else { (neg, pos) };
            set(&vocab.h, e, hc);
            set(&vocab.i, e, ic);

            // Cell classification and tile.
            if is_x {
                x_cells.insert(me);
            } else {
                y_cells.insert(me);
            }
            let t = if orient.transpose {
                s.tile(y, x)
            } else {
                s.tile(x, y)
            };
            tile_ext.get_mut(t).expect("tiling checked above").insert(me);
        }
    }

    let mut concepts: BTreeMap<ConceptName, BTreeSet<usize>> = BTreeMap::new();
    concepts.insert(vocab.x.clone(), x_cells);
    concepts.insert(vocab.y.clone(), y_cells);
    for (k, name) in vocab.edges.iter().enumerate() {
        concepts.insert(name.clone(), class_ext[k].clone());
    }
    // The desugared terminology speaks about class unions; include them with
    // their exact extents so both modes check against the same witness.
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
        concepts.insert(
            union_concept_name(&vocab.edges[a], &vocab.edges[b]),
            class_ext[a].union(&class_ext[b]).copied().collect(),
        );
    }
    for t in u.tiles() {
        concepts.insert(
            vocab.tile_concept(t).clone(),
            tile_ext.remove(t).expect("every declared tile has an extent"),
        );
    }

    Ok(FiniteInterpretation::new(n, features, concepts)
        .expect("witness tables are total and in range"))
}

/// Solvable problems whose tilings pin down every orientation parameter: the
/// directed 3-cycles distinguish each axis direction from its reverse, the
/// alternating pair separates the two axes, and the single tile exercises the
/// degenerate case.
fn calibration_fixtures() -> Vec<(TilingProblem, TileId)> {
    let tid = |s: &str| TileId::new(s).expect("fixed ids are valid");
    let pairs = |ps: &[(&str, &str)]| {
        ps.iter()
            .map(|(l, r)| (tid(l), tid(r)))
            .collect::<BTreeSet<_>>()
    };
    let problem = |tiles: &[&str], h: &[(&str, &str)], v: &[(&str, &str)]| {
        TilingProblem::new(tiles.iter().map(|t| tid(t)).collect(), pairs(h), pairs(v))
            .expect("fixture problems are valid")
    };
    let cycle = [("p", "q"), ("q", "r"), ("r", "p")];
    let selfs = [("p", "p"), ("q", "q"), ("r", "r")];
    vec![
        (problem(&["t"], &[("t", "t")], &[("t", "t")]), tid("t")),
        (
            problem(
                &["a", "b"],
                &[("a", "b"), ("b", "a")],
                &[("a", "a"), ("b", "b")],
            ),
            tid("a"),
        ),
        (problem(&["p", "q", "r"], &cycle, &selfs), tid("p")),
        (problem(&["p", "q", "r"], &selfs, &cycle), tid("p")),
    ]
}

/// Enumerates every orientation — transpose off before on, side assignments
/// in lexicographic order, endpoint bits ascending — and returns the first
/// one whose witnesses satisfy both compiled terminologies, with nonempty
/// goal, on every calibration fixture.
pub fn calibrate() -> Option<WitnessOrientation> {
    struct Fixture {
        problem: TilingProblem,
        tiling: TorusTiling,
        checks: Vec<(Terminology, Concept)>,
    }
    let fixtures: Vec<Fixture> = calibration_fixtures()
        .into_iter()
        .map(|(problem, t0)| {
            let solved = solve_torus_upto(&problem, &t0, 4)
                .expect("fixture search cannot fail")
                .expect("calibration fixtures are solvable");
            let tiling = if solved.width() % 2 != 0 || solved.height() % 2 != 0 {
                double_tiling(&solved)
            } else {
                solved
            };
            let checks = [ReductionMode::Direct, ReductionMode::Desugared]
                .into_iter()
                .map(|mode| {
                    reduce_to_terminology(&problem, &t0, mode)
                        .expect("fixture reduction cannot fail")
                })
                .collect();
            Fixture {
                problem,
                tiling,
                checks,
            }
        })
        .collect();

    let opts = CheckOptions::default();
    let passes = |fx: &Fixture, orient: &WitnessOrientation| -> bool {
        let witness = match build_torus_witness_with(&fx.problem, &fx.tiling, orient) {
            Ok(w) => w,
            Err(_) => return false,
        };
        fx.checks.iter().all(|(t, goal)| {
            t.axioms
                .iter()
                .all(|ax| matches!(witness.check_axiom(ax, &opts), Ok(AxiomOutcome::Satisfied)))
                && witness
                    .eval_concept_with(goal, &opts)
                    .is_ok_and(|e| !e.is_empty())
        })
    };

    const SIDES: [Side; 4] = [Side::Left, Side::Top, Side::Right, Side::Bottom];
    for transpose in [false, true] {
        for perm in side_permutations() {
            let x_sides = perm.map(|k| SIDES[k]);
            for mask in 0..16u32 {
                let orient = WitnessOrientation {
                    x_sides,
                    h_positive: [mask & 1 != 0, mask & 2 != 0, mask & 4 != 0, mask & 8 != 0],
                    transpose,
                };
                if fixtures.iter().all(|fx| passes(fx, &orient)) {
                    return Some(orient);
                }
            }
        }
    }
    None
}

/// All permutations of `[0, 1, 2, 3]` in lexicographic order.
fn side_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut p = [0usize, 1, 2, 3];
    loop {
        out.push(p);
        let Some(i) = (1..4).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..4).rev().find(|&j| p[j] > p[i - 1]).expect("suffix holds a larger entry");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}
