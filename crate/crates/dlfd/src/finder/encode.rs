//! CNF encoding of "the terminology has a model of a fixed finite size".
//!
//! For a domain of size `n` the encoder allocates one membership variable per
//! (concept, element) and a one-hot block per (feature, element) giving the
//! feature value. Concept structure is translated by full Tseitin
//! equivalences; `all f . D` and path agreement exploit the one-hot feature
//! rows so every connective costs O(n) ternary clauses per element. PFD
//! axioms become one clause per ordered element pair over shared agreement
//! variables. Variable allocation follows a fixed order (sorted names,
//! ascending elements, then auxiliaries in first-use order), so the encoding
//! — and with it the whole search — is deterministic.

use std::collections::{BTreeMap, BTreeSet};

use crate::ast::{Axiom, Concept, ConceptName, FeatureName, PathExpr, RhsConcept};
use crate::interp::FiniteInterpretation;
use crate::print::{print_concept, print_path};
use crate::signature::Signature;

use super::sat::{Lit, SolveResult, Solver};

pub(crate) struct Encoder {
    n: usize,
    solver: Solver,
    true_lit: Lit,
    concept_vars: BTreeMap<ConceptName, Vec<Lit>>,
    feature_vars: BTreeMap<FeatureName, Vec<Vec<Lit>>>,
    concept_memo: BTreeMap<(String, usize), Lit>,
    path_memo: BTreeMap<(String, usize), Vec<Lit>>,
    agree_memo: BTreeMap<(String, usize, usize), Lit>,
}

impl Encoder {
    /// Sets up membership and feature variables for the signature, including
    /// the one-hot constraints on every feature row.
    pub fn new(sig: &Signature, n: usize) -> Encoder {
        assert!(n >= 1, "domain size must be positive");
        let mut solver = Solver::new();
        let true_lit = Lit::pos(solver.new_var());
        solver.add_clause(&[true_lit]);
        let mut concept_vars = BTreeMap::new();
        for c in &sig.concepts {
            let vars: Vec<Lit> = (0..n).map(|_| Lit::pos(solver.new_var())).collect();
            concept_vars.insert(c.clone(), vars);
        }
        let mut feature_vars = BTreeMap::new();
        for f in &sig.features {
            let mut rows = Vec::with_capacity(n);
            for _ in 0..n {
                let row: Vec<Lit> = (0..n).map(|_| Lit::pos(solver.new_var())).collect();
                rows.push(row);
            }
            for row in &rows {
                solver.add_clause(row);
                for a in 0..n {
                    for b in (a + 1)..n {
                        solver.add_clause(&[row[a].negate(), row[b].negate()]);
                    }
                }
            }
            feature_vars.insert(f.clone(), rows);
        }
        Encoder {
            n,
            solver,
            true_lit,
            concept_vars,
            feature_vars,
            concept_memo: BTreeMap::new(),
            path_memo: BTreeMap::new(),
            agree_memo: BTreeMap::new(),
        }
    }

    fn false_lit(&self) -> Lit {
        self.true_lit.negate()
    }

    fn fresh(&mut self) -> Lit {
        Lit::pos(self.solver.new_var())
    }

    /// Literal equivalent to the conjunction of `lits` (full Tseitin, with
    /// constant folding).
    fn and_lit(&mut self, lits: &[Lit]) -> Lit {
        let mut kept = Vec::with_capacity(lits.len());
        for &l in lits {
            if l == self.false_lit() {
                return self.false_lit();
            }
            if l != self.true_lit {
                kept.push(l);
            }
        }
        match kept.len() {
            0 => self.true_lit,
            1 => kept[0],
            _ => {
                let v = self.fresh();
                for &l in &kept {
                    self.solver.add_clause(&[v.negate(), l]);
                }
                let mut long: Vec<Lit> = kept.iter().map(|l| l.negate()).collect();
                long.push(v);
                self.solver.add_clause(&long);
                v
            }
        }
    }

    /// Literal equivalent to the disjunction of `lits`.
    fn or_lit(&mut self, lits: &[Lit]) -> Lit {
        let negated: Vec<Lit> = lits.iter().map(|l| l.negate()).collect();
        self.and_lit(&negated).negate()
    }

    /// Literal for "element `x` belongs to concept `c`".
    pub fn concept_lit(&mut self, c: &Concept, x: usize) -> Lit {
        if let Concept::Primitive(name) = c {
            return self.concept_vars[name][x];
        }
        match c {
            Concept::Top => return self.true_lit,
            Concept::Bot => return self.false_lit(),
            _ => {}
        }
        let key = (print_concept(c), x);
        if let Some(&l) = self.concept_memo.get(&key) {
            return l;
        }
        let lit = match c {
            Concept::Primitive(_) | Concept::Top | Concept::Bot => unreachable!("handled above"),
            Concept::Not(inner) => self.concept_lit(inner, x).negate(),
            Concept::And(a, b) => {
                let la = self.concept_lit(a, x);
                let lb = self.concept_lit(b, x);
                self.and_lit(&[la, lb])
            }
            Concept::Or(a, b) => {
                let la = self.concept_lit(a, x);
                let lb = self.concept_lit(b, x);
                self.or_lit(&[la, lb])
            }
            Concept::All(f, body) => {
                let row = self.feature_vars[f][x].clone();
                let body_lits: Vec<Lit> =
                    (0..self.n).map(|y| self.concept_lit(body, y)).collect();
                // v <-> body(f(x)): with the row one-hot, two ternary clauses
                // per possible target pin v to the body value at the target.
                let v = self.fresh();
                for y in 0..self.n {
                    self.solver
                        .add_clause(&[v.negate(), row[y].negate(), body_lits[y]]);
                    self.solver
                        .add_clause(&[v, row[y].negate(), body_lits[y].negate()]);
                }
                v
            }
        };
        self.concept_memo.insert(key, lit);
        lit
    }

    /// One-hot vector of literals for "the path value of `p` at `x` is `y`".
    fn path_vec(&mut self, p: &PathExpr, x: usize) -> Vec<Lit> {
        let key = (print_path(p), x);
        if let Some(v) = self.path_memo.get(&key) {
            return v.clone();
        }
        let features = p.features();
        let vec = if features.is_empty() {
            (0..self.n)
                .map(|y| if y == x { self.true_lit } else { self.false_lit() })
                .collect()
        } else if features.len() == 1 {
            self.feature_vars[&features[0]][x].clone()
        } else {
            let prefix = PathExpr::new(features[..features.len() - 1].to_vec());
            let last = features[features.len() - 1].clone();
            let prev = self.path_vec(&prefix, x);
            let out: Vec<Lit> = (0..self.n).map(|_| self.fresh()).collect();
            // out[z] <-> exists w: prev[w] & f(w)=z. The forward clauses force
            // the true target; exactly-one on `out` excludes the rest.
            for w in 0..self.n {
                let frow = self.feature_vars[&last][w].clone();
                for z in 0..self.n {
                    self.solver
                        .add_clause(&[prev[w].negate(), frow[z].negate(), out[z]]);
                }
            }
            self.solver.add_clause(&out);
            for a in 0..self.n {
                for b in (a + 1)..self.n {
                    self.solver.add_clause(&[out[a].negate(), out[b].negate()]);
                }
            }
            out
        };
        self.path_memo.insert(key, vec.clone());
        vec
    }

    /// Literal for "paths agree": `p(x) = p(y)`. Symmetric, so memoized on
    /// the unordered pair.
    fn agree_lit(&mut self, p: &PathExpr, x: usize, y: usize) -> Lit {
        if x == y {
            return self.true_lit;
        }
        let (lo, hi) = (x.min(y), x.max(y));
        let key = (print_path(p), lo, hi);
        if let Some(&l) = self.agree_memo.get(&key) {
            return l;
        }
        let u = self.path_vec(p, lo);
        let v = self.path_vec(p, hi);
        let a = self.fresh();
        for z in 0..self.n {
            // Same value at z forces agreement; agreement plus a value at x
            // forces the same value at y.
            self.solver.add_clause(&[u[z].negate(), v[z].negate(), a]);
            self.solver.add_clause(&[a.negate(), u[z].negate(), v[z]]);
        }
        self.agree_memo.insert(key, a);
        a
    }

    /// Adds the clauses for one axiom holding everywhere.
    pub fn add_axiom(&mut self, axiom: &Axiom) {
        let conjuncts = flatten(&axiom.rhs);
        for conjunct in conjuncts {
            match conjunct {
                RhsConcept::Plain(d) => {
                    for x in 0..self.n {
                        let lhs = self.concept_lit(&axiom.lhs, x);
                        let rhs = self.concept_lit(d, x);
                        self.solver.add_clause(&[lhs.negate(), rhs]);
                    }
                }
                RhsConcept::Pfd { over, lhs, rhs } => {
                    for x in 0..self.n {
                        let lhs_x = self.concept_lit(&axiom.lhs, x);
                        for y in 0..self.n {
                            if y == x {
                                continue;
                            }
                            let over_y = self.concept_lit(over, y);
                            let mut clause = vec![lhs_x.negate(), over_y.negate()];
                            for p in lhs {
                                clause.push(self.agree_lit(p, x, y).negate());
                            }
                            clause.push(self.agree_lit(rhs, x, y));
                            self.solver.add_clause(&clause);
                        }
                    }
                }
                RhsConcept::And(_, _) => unreachable!("flatten removes conjunctions"),
            }
        }
    }

    /// Literal for full membership of `x` in a right-hand side, PFD conjuncts
    /// included (needed when a violation has to be asserted, not just avoided).
    pub fn rhs_member_lit(&mut self, rhs: &RhsConcept, x: usize) -> Lit {
        match rhs {
            RhsConcept::Plain(d) => self.concept_lit(d, x),
            RhsConcept::And(a, b) => {
                let la = self.rhs_member_lit(a, x);
                let lb = self.rhs_member_lit(b, x);
                self.and_lit(&[la, lb])
            }
            RhsConcept::Pfd { over, lhs, rhs } => {
                // x is a member iff no y in `over` agrees on all left paths
                // yet differs on the right one.
                let mut no_violation = Vec::with_capacity(self.n);
                for y in 0..self.n {
                    if y == x {
                        continue;
                    }
                    let over_y = self.concept_lit(over, y);
                    let mut parts = vec![over_y];
                    for p in lhs {
                        parts.push(self.agree_lit(p, x, y));
                    }
                    parts.push(self.agree_lit(rhs, x, y).negate());
                    let viol = self.and_lit(&parts);
                    no_violation.push(viol.negate());
                }
                self.and_lit(&no_violation)
            }
        }
    }

    /// Requires the goal concept to be non-empty.
    pub fn add_nonempty(&mut self, goal: &Concept) {
        let clause: Vec<Lit> = (0..self.n).map(|x| self.concept_lit(goal, x)).collect();
        self.solver.add_clause(&clause);
    }

    /// Requires some element to witness a violation of `axiom` (member of the
    /// left-hand side, non-member of the right-hand side).
    pub fn add_violated_somewhere(&mut self, axiom: &Axiom) {
        let mut witnesses = Vec::with_capacity(self.n);
        for x in 0..self.n {
            let lhs = self.concept_lit(&axiom.lhs, x);
            let rhs = self.rhs_member_lit(&axiom.rhs, x);
            witnesses.push(self.and_lit(&[lhs, rhs.negate()]));
        }
        self.solver.add_clause(&witnesses);
    }

    pub fn solve(&mut self, decision_limit: Option<u64>) -> SolveResult {
        self.solver.solve(decision_limit)
    }

    pub fn decisions(&self) -> u64 {
        self.solver.decisions()
    }

    /// Reads an interpretation back out of a satisfying assignment.
    pub fn decode(&self, model: &[bool]) -> FiniteInterpretation {
        let truth = |l: Lit| model[l.var() as usize] == l.is_pos();
        let concepts: BTreeMap<ConceptName, BTreeSet<usize>> = self
            .concept_vars
            .iter()
            .map(|(c, lits)| {
                let extent = (0..self.n).filter(|&x| truth(lits[x])).collect();
                (c.clone(), extent)
            })
            .collect();
        let features: BTreeMap<FeatureName, Vec<usize>> = self
            .feature_vars
            .iter()
            .map(|(f, rows)| {
                let table = rows
                    .iter()
                    .map(|row| {
                        let targets: Vec<usize> =
                            (0..self.n).filter(|&y| truth(row[y])).collect();
                        debug_assert_eq!(targets.len(), 1, "feature rows are one-hot");
                        targets[0]
                    })
                    .collect();
                (f.clone(), table)
            })
            .collect();
        FiniteInterpretation::new(self.n, features, concepts)
            .expect("decoded assignments are in range by construction")
    }
}

/// Left-to-right conjunct list of a right-hand side.
fn flatten(rhs: &RhsConcept) -> Vec<&RhsConcept> {
    fn go<'a>(rhs: &'a RhsConcept, out: &mut Vec<&'a RhsConcept>) {
        match rhs {
            RhsConcept::And(a, b) => {
                go(a, out);
                go(b, out);
            }
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    go(rhs, &mut out);
    out
}
