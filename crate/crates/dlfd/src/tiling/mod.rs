//! Periodic (torus) tiling problems and their encoding as terminologies.
//!
//! A tiling problem gives a finite tile set with horizontal and vertical
//! adjacency relations; a solution is an assignment of tiles to a `w x h`
//! torus respecting both relations with wrap-around. [`reduce_to_terminology`]
//! compiles a problem into a terminology whose goal concept is finitely
//! satisfiable exactly when such a torus exists; [`build_torus_witness`] turns
//! a concrete solution into a finite model of that terminology, and
//! [`verify_reduction_instance`] runs the whole loop with bounded searches on
//! both sides.

mod reduce;
mod verify;
mod witness;

pub use reduce::{reduce_to_terminology, ReductionMode};
pub use verify::{verify_reduction_instance, VerificationReport, VerifyError, WitnessSummary};
pub use witness::{
    build_torus_witness, build_torus_witness_with, calibrate, Side, WitnessOrientation,
    FROZEN_ORIENTATION,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// Errors around tiling problems, tilings, and witness construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("invalid tile identifier {0:?}: use letters, digits, '_' or '''")]
    BadTileId(String),
    #[error("a tiling problem needs at least one tile")]
    NoTiles,
    #[error("duplicate tile {0}")]
    DuplicateTile(TileId),
    #[error("adjacency pair ({0}, {1}) references an undeclared tile")]
    UndeclaredPair(TileId, TileId),
    #[error("tile {0} is not declared by the problem")]
    UndeclaredTile(TileId),
    #[error("grid dimensions must be positive")]
    EmptyGrid,
    #[error("grid row {row} has {got} tiles, expected {expected}")]
    RaggedGrid {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("witness construction requires even dimensions, got {width}x{height}")]
    OddDimensions { width: usize, height: usize },
    #[error("the tiling does not solve the problem")]
    InvalidTiling,
    #[error("invalid tiling problem JSON: {0}")]
    Json(String),
}

/// A tile identifier: letters, digits, underscores, primes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileId(String);

impl TileId {
    pub fn new(s: &str) -> Result<TileId, TilingError> {
        let ok = !s.is_empty()
            && s.chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if ok {
            Ok(TileId(s.to_owned()))
        } else {
            Err(TilingError::BadTileId(s.to_owned()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for TileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A tiling problem: an ordered tile list plus horizontal and vertical
/// adjacency relations over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingProblem {
    tiles: Vec<TileId>,
    horiz: BTreeSet<(TileId, TileId)>,
    vert: BTreeSet<(TileId, TileId)>,
}

impl TilingProblem {
    /// Validates that tiles are unique and every adjacency pair references
    /// declared tiles.
    pub fn new(
        tiles: Vec<TileId>,
        horiz: BTreeSet<(TileId, TileId)>,
        vert: BTreeSet<(TileId, TileId)>,
    ) -> Result<TilingProblem, TilingError> {
        if tiles.is_empty() {
            return Err(TilingError::NoTiles);
        }
        let mut seen = BTreeSet::new();
        for t in &tiles {
            if !seen.insert(t.clone()) {
                return Err(TilingError::DuplicateTile(t.clone()));
            }
        }
        for (l, r) in horiz.iter().chain(vert.iter()) {
            if !seen.contains(l) || !seen.contains(r) {
                return Err(TilingError::UndeclaredPair(l.clone(), r.clone()));
            }
        }
        Ok(TilingProblem { tiles, horiz, vert })
    }

    /// Tiles in declaration order.
    pub fn tiles(&self) -> &[TileId] {
        &self.tiles
    }

    pub fn declares(&self, t: &TileId) -> bool {
        self.tiles.contains(t)
    }

    pub fn horiz_ok(&self, left: &TileId, right: &TileId) -> bool {
        self.horiz.contains(&(left.clone(), right.clone()))
    }

    pub fn vert_ok(&self, below: &TileId, above: &TileId) -> bool {
        self.vert.contains(&(below.clone(), above.clone()))
    }

    /// Horizontal successors of `t` in tile declaration order.
    pub fn horiz_successors(&self, t: &TileId) -> Vec<&TileId> {
        self.tiles
            .iter()
            .filter(|s| self.horiz.contains(&(t.clone(), (*s).clone())))
            .collect()
    }

    /// Vertical successors of `t` in tile declaration order.
    pub fn vert_successors(&self, t: &TileId) -> Vec<&TileId> {
        self.tiles
            .iter()
            .filter(|s| self.vert.contains(&(t.clone(), (*s).clone())))
            .collect()
    }
}

/// A tiling problem together with its initial tile, as stored in `.tiles`
/// files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingInstance {
    pub problem: TilingProblem,
    pub t0: TileId,
}

#[derive(Serialize, Deserialize)]
struct TilesFile {
    tiles: Vec<String>,
    #[serde(rename = "H")]
    horiz: Vec<(String, String)>,
    #[serde(rename = "V")]
    vert: Vec<(String, String)>,
    t0: String,
}

impl TilingInstance {
    pub fn from_json_str(s: &str) -> Result<TilingInstance, TilingError> {
        let file: TilesFile =
            serde_json::from_str(s).map_err(|e| TilingError::Json(e.to_string()))?;
        let tiles = file
            .tiles
            .iter()
            .map(|t| TileId::new(t))
            .collect::<Result<Vec<_>, _>>()?;
        let pair_set = |pairs: &[(String, String)]| {
            pairs
                .iter()
                .map(|(l, r)| Ok((TileId::new(l)?, TileId::new(r)?)))
                .collect::<Result<BTreeSet<_>, TilingError>>()
        };
        let problem = TilingProblem::new(tiles, pair_set(&file.horiz)?, pair_set(&file.vert)?)?;
        let t0 = TileId::new(&file.t0)?;
        if !problem.declares(&t0) {
            return Err(TilingError::UndeclaredTile(t0));
        }
        Ok(TilingInstance { problem, t0 })
    }

    /// Pretty JSON with a trailing newline; adjacency pairs sorted.
    pub fn to_json_string(&self) -> String {
        let file = TilesFile {
            tiles: self.problem.tiles.iter().map(|t| t.0.clone()).collect(),
            horiz: self
                .problem
                .horiz
                .iter()
                .map(|(l, r)| (l.0.clone(), r.0.clone()))
                .collect(),
            vert: self
                .problem
                .vert
                .iter()
                .map(|(l, r)| (l.0.clone(), r.0.clone()))
                .collect(),
            t0: self.t0 .0.clone(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("tiles serialization cannot fail");
        s.push('\n');
        s
    }
}

/// An assignment of tiles to the `width x height` torus. `tile(i, j)` is the
/// tile at horizontal position `i` and vertical position `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusTiling {
    width: usize,
    height: usize,
    /// Row-major: `grid[j][i]`.
    grid: Vec<Vec<TileId>>,
}

impl TorusTiling {
    pub fn new(width: usize, height: usize, grid: Vec<Vec<TileId>>) -> Result<TorusTiling, TilingError> {
        if width == 0 || height == 0 || grid.len() != height {
            return Err(TilingError::EmptyGrid);
        }
        for (row, cells) in grid.iter().enumerate() {
            if cells.len() != width {
                return Err(TilingError::RaggedGrid {
                    row,
                    expected: width,
                    got: cells.len(),
                });
            }
        }
        Ok(TorusTiling {
            width,
            height,
            grid,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Tile at `(i mod width, j mod height)`.
    pub fn tile(&self, i: usize, j: usize) -> &TileId {
        &self.grid[j % self.height][i % self.width]
    }

    pub fn rows(&self) -> &[Vec<TileId>] {
        &self.grid
    }
}

impl Serialize for TorusTiling {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TorusTiling", 3)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("height", &self.height)?;
        let rows: Vec<Vec<&str>> = self
            .grid
            .iter()
            .map(|row| row.iter().map(|t| t.as_str()).collect())
            .collect();
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// True iff the tiling solves the problem: every horizontally and vertically
/// adjacent pair (wrap-around included) is permitted.
pub fn check_torus_tiling(u: &TilingProblem, s: &TorusTiling) -> Result<bool, TilingError> {
    for row in &s.grid {
        for t in row {
            if !u.declares(t) {
                return Err(TilingError::UndeclaredTile(t.clone()));
            }
        }
    }
    for j in 0..s.height {
        for i in 0..s.width {
            if !u.horiz_ok(s.tile(i, j), s.tile(i + 1, j)) {
                return Ok(false);
            }
            if !u.vert_ok(s.tile(i, j), s.tile(i, j + 1)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exhaustive search for a valid `w x h` tiling with `t(0,0) = t0`. Cells are
/// filled in row-major order trying tiles in declaration order, so the result
/// (if any) is the lexicographically least solution.
pub fn solve_torus(
    u: &TilingProblem,
    t0: &TileId,
    w: usize,
    h: usize,
) -> Result<Option<TorusTiling>, TilingError> {
    if !u.declares(t0) {
        return Err(TilingError::UndeclaredTile(t0.clone()));
    }
    if w == 0 || h == 0 {
        return Err(TilingError::EmptyGrid);
    }
    let mut grid: Vec<Vec<Option<TileId>>> = vec![vec![None; w]; h];

    fn fits(
        u: &TilingProblem,
        grid: &[Vec<Option<TileId>>],
        w: usize,
        h: usize,
        i: usize,
        j: usize,
        t: &TileId,
    ) -> bool {
        // Left neighbor, and wrap to column 0 when placing the last column.
        // With w = 1 the wrap partner is the tile itself.
        if i > 0 {
            if let Some(left) = &grid[j][i - 1] {
                if !u.horiz_ok(left, t) {
                    return false;
                }
            }
        }
        if i == w - 1 {
            let first = if w == 1 { Some(t) } else { grid[j][0].as_ref() };
            if let Some(first) = first {
                if !u.horiz_ok(t, first) {
                    return false;
                }
            }
        }
        // Below neighbor, and wrap to row 0 when placing the last row.
        if j > 0 {
            if let Some(below) = &grid[j - 1][i] {
                if !u.vert_ok(below, t) {
                    return false;
                }
            }
        }
        if j == h - 1 {
            let first = if h == 1 { Some(t) } else { grid[0][i].as_ref() };
            if let Some(first) = first {
                if !u.vert_ok(t, first) {
                    return false;
                }
            }
        }
        true
    }

    fn place(
        u: &TilingProblem,
        grid: &mut Vec<Vec<Option<TileId>>>,
        w: usize,
        h: usize,
        pos: usize,
        t0: &TileId,
    ) -> bool {
        if pos == w * h {
            return true;
        }
        let (i, j) = (pos % w, pos / w);
        let candidates: Vec<TileId> = if pos == 0 {
            vec![t0.clone()]
        } else {
            u.tiles().to_vec()
        };
        for t in candidates {
            if fits(u, grid, w, h, i, j, &t) {
                grid[j][i] = Some(t);
                if place(u, grid, w, h, pos + 1, t0) {
                    return true;
                }
                grid[j][i] = None;
            }
        }
        false
    }

    if place(u, &mut grid, w, h, 0, t0) {
        let rows = grid
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.expect("filled")).collect())
            .collect();
        Ok(Some(TorusTiling::new(w, h, rows)?))
    } else {
        Ok(None)
    }
}

/// Tries every `(w, h)` with both dimensions at most `max_dim`, ordered by
/// increasing area and then increasing width; returns the first solution.
/// Finding none is bounded evidence only.
pub fn solve_torus_upto(
    u: &TilingProblem,
    t0: &TileId,
    max_dim: usize,
) -> Result<Option<TorusTiling>, TilingError> {
    if !u.declares(t0) {
        return Err(TilingError::UndeclaredTile(t0.clone()));
    }
    let mut dims: Vec<(usize, usize)> = (1..=max_dim)
        .flat_map(|w| (1..=max_dim).map(move |h| (w, h)))
        .collect();
    dims.sort_by_key(|&(w, h)| (w * h, w));
    for (w, h) in dims {
        if let Some(s) = solve_torus(u, t0, w, h)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// The `2w x 2h` periodic extension `t'(i,j) = t(i mod w, j mod h)`. Valid
/// whenever the input is, since adjacency is local and periodic.
pub fn double_tiling(s: &TorusTiling) -> TorusTiling {
    let w = 2 * s.width;
    let h = 2 * s.height;
    let grid = (0..h)
        .map(|j| (0..w).map(|i| s.tile(i, j).clone()).collect())
        .collect();
    TorusTiling::new(w, h, grid).expect("doubled grid is rectangular")
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// One self-adjacent tile `t`.
    pub fn one_tile() -> TilingInstance {
        TilingInstance::from_json_str(
            r#"{"tiles": ["t"], "H": [["t","t"]], "V": [["t","t"]], "t0": "t"}"#,
        )
        .unwrap()
    }

    /// Tiles {a, b}: horizontally alternating, vertically constant.
    pub fn ab_swap() -> TilingInstance {
        TilingInstance::from_json_str(
            r#"{"tiles": ["a","b"], "H": [["a","b"],["b","a"]], "V": [["a","a"],["b","b"]], "t0": "a"}"#,
        )
        .unwrap()
    }

    /// No horizontal adjacency at all: nothing tiles any torus.
    pub fn no_horizontal() -> TilingInstance {
        TilingInstance::from_json_str(
            r#"{"tiles": ["t"], "H": [], "V": [["t","t"]], "t0": "t"}"#,
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{ab_swap, no_horizontal, one_tile};
    use super::*;

    fn tid(s: &str) -> TileId {
        TileId::new(s).unwrap()
    }

    fn tiling(w: usize, h: usize, rows: &[&[&str]]) -> TorusTiling {
        TorusTiling::new(
            w,
            h,
            rows.iter()
                .map(|r| r.iter().map(|t| tid(t)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn tile_ids_are_validated() {
        assert!(TileId::new("t1'").is_ok());
        assert!(matches!(TileId::new(""), Err(TilingError::BadTileId(_))));
        assert!(matches!(TileId::new("a b"), Err(TilingError::BadTileId(_))));
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(
            TilingProblem::new(vec![], BTreeSet::new(), BTreeSet::new()),
            Err(TilingError::NoTiles)
        ));
        assert!(matches!(
            TilingProblem::new(vec![tid("a"), tid("a")], BTreeSet::new(), BTreeSet::new()),
            Err(TilingError::DuplicateTile(_))
        ));
        let pairs: BTreeSet<_> = [(tid("a"), tid("z"))].into_iter().collect();
        assert!(matches!(
            TilingProblem::new(vec![tid("a")], pairs, BTreeSet::new()),
            Err(TilingError::UndeclaredPair(_, _))
        ));
    }

    #[test]
    fn tiles_json_round_trip() {
        let inst = ab_swap();
        let text = inst.to_json_string();
        let back = TilingInstance::from_json_str(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn tiles_json_rejects_undeclared_t0() {
        let err = TilingInstance::from_json_str(
            r#"{"tiles": ["a"], "H": [], "V": [], "t0": "z"}"#,
        );
        assert!(matches!(err, Err(TilingError::UndeclaredTile(_))));
    }

    #[test]
    fn checker_accepts_and_rejects() {
        let one = one_tile();
        assert!(check_torus_tiling(&one.problem, &tiling(1, 1, &[&["t"]])).unwrap());
        let ab = ab_swap();
        // 2x1 [a, b]: horizontal pairs (a,b) and wrap (b,a) are both allowed.
        assert!(check_torus_tiling(&ab.problem, &tiling(2, 1, &[&["a", "b"]])).unwrap());
        // 2x1 [a, a] violates H.
        assert!(!check_torus_tiling(&ab.problem, &tiling(2, 1, &[&["a", "a"]])).unwrap());
        let noh = no_horizontal();
        assert!(!check_torus_tiling(&noh.problem, &tiling(1, 1, &[&["t"]])).unwrap());
        assert!(matches!(
            check_torus_tiling(&one.problem, &tiling(1, 1, &[&["z"]])),
            Err(TilingError::UndeclaredTile(_))
        ));
    }

    #[test]
    fn solver_finds_least_solutions() {
        let one = one_tile();
        let s = solve_torus(&one.problem, &one.t0, 1, 1).unwrap().unwrap();
        assert_eq!(s, tiling(1, 1, &[&["t"]]));
        let ab = ab_swap();
        let s = solve_torus(&ab.problem, &ab.t0, 2, 1).unwrap().unwrap();
        assert_eq!(s, tiling(2, 1, &[&["a", "b"]]));
        // Odd widths cannot alternate around the torus.
        assert_eq!(solve_torus(&ab.problem, &ab.t0, 3, 1).unwrap(), None);
        let noh = no_horizontal();
        assert_eq!(solve_torus(&noh.problem, &noh.t0, 2, 2).unwrap(), None);
    }

    #[test]
    fn solve_upto_orders_by_area_then_width() {
        let one = one_tile();
        let s = solve_torus_upto(&one.problem, &one.t0, 4).unwrap().unwrap();
        assert_eq!((s.width(), s.height()), (1, 1));
        // Starting from b, 1x1 and 1x2 fail, 2x1 = [b, a] succeeds.
        let ab = ab_swap();
        let s = solve_torus_upto(&ab.problem, &tid("b"), 4).unwrap().unwrap();
        assert_eq!(s, tiling(2, 1, &[&["b", "a"]]));
        let noh = no_horizontal();
        assert_eq!(solve_torus_upto(&noh.problem, &noh.t0, 4).unwrap(), None);
    }

    #[test]
    fn doubling_preserves_validity() {
        let ab = ab_swap();
        let s = tiling(2, 1, &[&["a", "b"]]);
        let d = double_tiling(&s);
        assert_eq!((d.width(), d.height()), (4, 2));
        assert_eq!(d.rows()[0], vec![tid("a"), tid("b"), tid("a"), tid("b")]);
        assert_eq!(d.rows()[1], d.rows()[0]);
        assert!(check_torus_tiling(&ab.problem, &d).unwrap());
    }
}
