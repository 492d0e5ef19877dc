//! A small, deterministic CDCL SAT solver.
//!
//! Classic architecture: two watched literals, first-UIP conflict analysis
//! with backjumping, and VSIDS-style branching. Everything is deterministic:
//! ties in the branching order fall back to the lowest variable index, the
//! first decision polarity is always `false`, and there are no restarts and no
//! randomness. The only budget is a decision limit, which is also
//! machine-independent.

/// A propositional variable, indexed from 0.
pub type Var = u32;

/// A literal: variable plus sign, packed as `var << 1 | sign`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(v: Var) -> Lit {
        Lit(v << 1)
    }

    pub fn neg(v: Var) -> Lit {
        Lit(v << 1 | 1)
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_pos(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

/// Result of a [`Solver::solve`] call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// Satisfiable; the vector assigns every variable.
    Sat(Vec<bool>),
    Unsat,
    /// The decision limit was exhausted first.
    LimitReached,
}

#[derive(Debug)]
struct Clause {
    lits: Vec<Lit>,
}

const UNDEF: i8 = 0;
const NO_REASON: i32 = -1;
const ACTIVITY_DECAY: f64 = 0.95;
const ACTIVITY_RESCALE: f64 = 1e100;

/// CDCL solver state.
#[derive(Debug, Default)]
pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<u32>>,
    assign: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<i32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: Vec<Var>,
    heap_pos: Vec<i32>,
    seen: Vec<bool>,
    ok: bool,
    decisions: u64,
    conflicts: u64,
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            var_inc: 1.0,
            ok: true,
            ..Solver::default()
        }
    }

    /// Allocates a fresh variable.
    pub fn new_var(&mut self) -> Var {
        let v = self.assign.len() as Var;
        self.assign.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(0.0);
        self.heap_pos.push(-1);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap_insert(v);
        v
    }

    pub fn num_vars(&self) -> usize {
        self.assign.len()
    }

    /// Decisions made so far (across all solve calls).
    pub fn decisions(&self) -> u64 {
        self.decisions
    }

    #[cfg(test)]
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    fn value(&self, l: Lit) -> i8 {
        let v = self.assign[l.var() as usize];
        if l.is_pos() {
            v
        } else {
            -v
        }
    }

    /// Adds a clause. Duplicate literals are removed, tautologies dropped, and
    /// literals already decided at the top level simplified away. May be
    /// called only before `solve` or between solve calls at decision level 0.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        debug_assert!(self.trail_lim.is_empty());
        if !self.ok {
            return;
        }
        let mut simplified: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            debug_assert!((l.var() as usize) < self.assign.len());
            match self.value(l) {
                1 => return,
                -1 => continue,
                _ => {}
            }
            if simplified.contains(&l.negate()) {
                return;
            }
            if !simplified.contains(&l) {
                simplified.push(l);
            }
        }
        match simplified.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(simplified[0], NO_REASON);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(simplified);
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[lits[0].code()].push(idx);
        self.watches[lits[1].code()].push(idx);
        self.clauses.push(Clause { lits });
        idx
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: i32) {
        debug_assert_eq!(self.value(l), UNDEF);
        let v = l.var() as usize;
        self.assign[v] = if l.is_pos() { 1 } else { -1 };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns the index of a conflicting clause, if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p.negate();
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut keep = 0usize;
            let mut conflict = None;
            let mut i = 0usize;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let c = ci as usize;
                if self.clauses[c].lits[0] == false_lit {
                    self.clauses[c].lits.swap(0, 1);
                }
                debug_assert_eq!(self.clauses[c].lits[1], false_lit);
                let first = self.clauses[c].lits[0];
                if self.value(first) == 1 {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                let replacement = (2..self.clauses[c].lits.len())
                    .find(|&k| self.value(self.clauses[c].lits[k]) != -1);
                if let Some(k) = replacement {
                    self.clauses[c].lits.swap(1, k);
                    let new_watch = self.clauses[c].lits[1];
                    self.watches[new_watch.code()].push(ci);
                    continue;
                }
                // Unit or conflicting; the watch stays.
                ws[keep] = ci;
                keep += 1;
                if self.value(first) == -1 {
                    // Conflict: keep the remaining watchers and stop.
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                    conflict = Some(ci);
                } else {
                    self.enqueue(first, ci as i32);
                }
            }
            ws.truncate(keep);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal
    /// first, a backjump-level literal second) and the backjump level.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![Lit(0)];
        let mut counter = 0usize;
        let mut expanding_reason = false;
        let mut index = self.trail.len();
        let current = self.decision_level();
        loop {
            let start = usize::from(expanding_reason);
            // Borrow the clause literals by value to keep `self` free for bumps.
            for k in start..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v as Var);
                    if self.level[v] as usize == current {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var() as usize] {
                    break;
                }
            }
            let p = self.trail[index];
            self.seen[p.var() as usize] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = p.negate();
                break;
            }
            debug_assert_ne!(self.reason[p.var() as usize], NO_REASON);
            confl = self.reason[p.var() as usize] as u32;
            expanding_reason = true;
        }
        for l in &learnt[1..] {
            self.seen[l.var() as usize] = false;
        }
        let mut backjump = 0usize;
        if learnt.len() > 1 {
            let mut max_at = 1usize;
            for (k, l) in learnt.iter().enumerate().skip(1) {
                if self.level[l.var() as usize] > self.level[learnt[max_at].var() as usize] {
                    max_at = k;
                }
            }
            learnt.swap(1, max_at);
            backjump = self.level[learnt[1].var() as usize] as usize;
        }
        (learnt, backjump)
    }

    fn backtrack(&mut self, target: usize) {
        while self.decision_level() > target {
            let lim = self.trail_lim.pop().expect("levels to unwind");
            while self.trail.len() > lim {
                let l = self.trail.pop().expect("trail entry");
                let v = l.var();
                self.assign[v as usize] = UNDEF;
                self.reason[v as usize] = NO_REASON;
                self.heap_insert(v);
            }
        }
        self.qhead = self.trail.len();
    }

    /// Solves under an optional decision budget.
    pub fn solve(&mut self, decision_limit: Option<u64>) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        let budget = decision_limit.map(|d| self.decisions + d);
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SolveResult::Unsat;
                }
                let (learnt, backjump) = self.analyze(confl);
                self.backtrack(backjump);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(asserting, ci as i32);
                }
                self.var_inc /= ACTIVITY_DECAY;
            } else {
                // Check the budget before popping a branch variable so no
                // variable is lost from the branching heap on early return.
                if let Some(b) = budget {
                    if self.decisions >= b && self.pick_would_branch() {
                        self.backtrack(0);
                        return SolveResult::LimitReached;
                    }
                }
                let next = self.pick_branch_var();
                let Some(v) = next else {
                    let model = self.assign.iter().map(|&a| a == 1).collect();
                    self.backtrack(0);
                    return SolveResult::Sat(model);
                };
                self.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(Lit::neg(v), NO_REASON);
            }
        }
    }

    /// True iff some variable is still unassigned, i.e. a decision is due.
    fn pick_would_branch(&self) -> bool {
        self.trail.len() < self.num_vars()
    }

    fn pick_branch_var(&mut self) -> Option<Var> {
        while let Some(v) = self.heap_pop() {
            if self.assign[v as usize] == UNDEF {
                return Some(v);
            }
        }
        None
    }

    fn bump(&mut self, v: Var) {
        self.activity[v as usize] += self.var_inc;
        if self.activity[v as usize] > ACTIVITY_RESCALE {
            for a in &mut self.activity {
                *a *= 1.0 / ACTIVITY_RESCALE;
            }
            self.var_inc *= 1.0 / ACTIVITY_RESCALE;
        }
        if self.heap_pos[v as usize] >= 0 {
            let pos = self.heap_pos[v as usize] as usize;
            self.sift_up(pos);
        }
    }

    // Max-heap ordered by activity, ties broken toward the lower variable
    // index so branching is reproducible.
    fn precedes(&self, a: Var, b: Var) -> bool {
        let (aa, ab) = (self.activity[a as usize], self.activity[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn heap_insert(&mut self, v: Var) {
        if self.heap_pos[v as usize] >= 0 {
            return;
        }
        self.heap_pos[v as usize] = self.heap.len() as i32;
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1);
    }

    fn heap_pop(&mut self) -> Option<Var> {
        let top = *self.heap.first()?;
        self.heap_pos[top as usize] = -1;
        let last = self.heap.pop().expect("heap entry");
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.heap_pos[last as usize] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut pos: usize) {
        while pos > 0 {
            let parent = (pos - 1) / 2;
            if self.precedes(self.heap[pos], self.heap[parent]) {
                self.heap.swap(pos, parent);
                self.heap_pos[self.heap[pos] as usize] = pos as i32;
                self.heap_pos[self.heap[parent] as usize] = parent as i32;
                pos = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut pos: usize) {
        loop {
            let left = 2 * pos + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let best = if right < self.heap.len() && self.precedes(self.heap[right], self.heap[left])
            {
                right
            } else {
                left
            };
            if self.precedes(self.heap[best], self.heap[pos]) {
                self.heap.swap(pos, best);
                self.heap_pos[self.heap[pos] as usize] = pos as i32;
                self.heap_pos[self.heap[best] as usize] = best as i32;
                pos = best;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(xs: &[i32]) -> Vec<Lit> {
        xs.iter()
            .map(|&x| {
                let v = (x.unsigned_abs() - 1) as Var;
                if x > 0 {
                    Lit::pos(v)
                } else {
                    Lit::neg(v)
                }
            })
            .collect()
    }

    fn solver(nvars: usize, clauses: &[&[i32]]) -> Solver {
        let mut s = Solver::new();
        for _ in 0..nvars {
            s.new_var();
        }
        for c in clauses {
            s.add_clause(&lits(c));
        }
        s
    }

    fn assert_model_satisfies(model: &[bool], clauses: &[&[i32]]) {
        for c in clauses {
            assert!(
                c.iter().any(|&x| {
                    let v = (x.unsigned_abs() - 1) as usize;
                    model[v] == (x > 0)
                }),
                "clause {c:?} unsatisfied by {model:?}"
            );
        }
    }

    #[test]
    fn trivial_sat_and_unsat() {
        let cs: &[&[i32]] = &[&[1]];
        let mut s = solver(1, cs);
        match s.solve(None) {
            SolveResult::Sat(m) => assert_model_satisfies(&m, cs),
            other => panic!("expected sat, got {other:?}"),
        }
        let mut s = solver(1, &[&[1], &[-1]]);
        assert_eq!(s.solve(None), SolveResult::Unsat);
    }

    #[test]
    fn propagation_chain() {
        let cs: &[&[i32]] = &[&[1], &[-1, 2], &[-2, 3], &[-3, -4]];
        let mut s = solver(4, cs);
        match s.solve(None) {
            SolveResult::Sat(m) => {
                assert_model_satisfies(&m, cs);
                assert_eq!(&m[..4], &[true, true, true, false]);
            }
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn unsat_requires_learning() {
        // All eight clauses over three variables: no assignment survives.
        let cs: &[&[i32]] = &[
            &[1, 2, 3],
            &[1, 2, -3],
            &[1, -2, 3],
            &[1, -2, -3],
            &[-1, 2, 3],
            &[-1, 2, -3],
            &[-1, -2, 3],
            &[-1, -2, -3],
        ];
        let mut s = solver(3, cs);
        assert_eq!(s.solve(None), SolveResult::Unsat);
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p_{i,j} = pigeon i sits in hole j; vars 1..=6 as i*2+j.
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        let var = |i: i32, j: i32| i * 2 + j + 1;
        for i in 0..3 {
            clauses.push(vec![var(i, 0), var(i, 1)]);
        }
        for j in 0..2 {
            for a in 0..3 {
                for b in (a + 1)..3 {
                    clauses.push(vec![-var(a, j), -var(b, j)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        let mut s = solver(6, &refs);
        assert_eq!(s.solve(None), SolveResult::Unsat);
    }

    #[test]
    fn random_instances_agree_with_truth_tables() {
        // Deterministic xorshift so the test is reproducible.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for round in 0..300 {
            let nvars = 3 + (next() % 5) as usize;
            let nclauses = 2 + (next() % 14) as usize;
            let mut clauses: Vec<Vec<i32>> = Vec::new();
            for _ in 0..nclauses {
                let len = 1 + (next() % 3) as usize;
                let mut c = Vec::new();
                for _ in 0..len {
                    let v = (next() % nvars as u64) as i32 + 1;
                    let sign = if next() % 2 == 0 { 1 } else { -1 };
                    c.push(sign * v);
                }
                clauses.push(c);
            }
            let brute_sat = (0..1u32 << nvars).any(|bits| {
                clauses.iter().all(|c| {
                    c.iter().any(|&x| {
                        let v = (x.unsigned_abs() - 1) as u32;
                        ((bits >> v) & 1 == 1) == (x > 0)
                    })
                })
            });
            let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
            let mut s = solver(nvars, &refs);
            match s.solve(None) {
                SolveResult::Sat(m) => {
                    assert!(brute_sat, "round {round}: solver sat, brute-force unsat");
                    assert_model_satisfies(&m, &refs);
                }
                SolveResult::Unsat => {
                    assert!(!brute_sat, "round {round}: solver unsat, brute-force sat")
                }
                SolveResult::LimitReached => panic!("no limit was set"),
            }
        }
    }

    #[test]
    fn decision_limit_reports_and_counts() {
        let cs: &[&[i32]] = &[&[1, 2], &[3, 4], &[5, 6]];
        let mut s = solver(6, cs);
        assert_eq!(s.solve(Some(0)), SolveResult::LimitReached);
        assert_eq!(s.decisions(), 0);
        match s.solve(None) {
            SolveResult::Sat(m) => assert_model_satisfies(&m, cs),
            other => panic!("expected sat, got {other:?}"),
        }
    }

    #[test]
    fn deterministic_across_runs() {
        let cs: &[&[i32]] = &[
            &[1, 2, -3],
            &[-1, 3],
            &[-2, -3, 4],
            &[2, -4],
            &[1, 3, 4],
            &[-1, -2, -4],
        ];
        let run = || {
            let mut s = solver(4, cs);
            (s.solve(None), s.decisions(), s.conflicts())
        };
        assert_eq!(run(), run());
    }
}
