//! Abstract syntax for DLFD terminologies.
//!
//! The description grammar (`Concept`) covers primitive concepts, intersection,
//! negation, and value restriction over total features, plus the surface sugar
//! `Or`, `Top`, and `Bot` that is eliminated by [`crate::transform::desugar_concept`]
//! before anything semantic happens. The right-hand-side grammar (`RhsConcept`)
//! additionally admits path functional dependencies (PFDs), which may appear
//! only at the top level of an axiom's right-hand side.

use std::fmt;

use thiserror::Error;

/// Implements `Display` by delegating to a printer function.
macro_rules! fmt_via_print {
    ($func:ident) => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            f.write_str(&crate::print::$func(self))
        }
    };
}

/// Error raised when constructing a feature/concept name that violates the
/// lexical rule `[a-zA-Z_][a-zA-Z0-9_']*` or collides with a reserved word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NameError {
    #[error("empty name")]
    Empty,
    #[error("invalid character {ch:?} in name {name:?}")]
    InvalidChar { name: String, ch: char },
    #[error("{0:?} is reserved and cannot be used as a name")]
    Reserved(String),
}

/// Words that can never be feature or concept names.
pub const RESERVED_WORDS: &[&str] = &["all", "fd", "id", "Top", "Bot"];

fn validate_name(s: &str) -> Result<(), NameError> {
    let mut chars = s.chars();
    match chars.next() {
        None => return Err(NameError::Empty),
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        Some(c) => {
            return Err(NameError::InvalidChar {
                name: s.to_string(),
                ch: c,
            })
        }
    }
    for c in chars {
        if !(c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            return Err(NameError::InvalidChar {
                name: s.to_string(),
                ch: c,
            });
        }
    }
    if RESERVED_WORDS.contains(&s) {
        return Err(NameError::Reserved(s.to_string()));
    }
    Ok(())
}

/// The name of a total feature (unary function symbol).
///
/// Names match `[a-zA-Z_][a-zA-Z0-9_']*`; primes are allowed so that paired
/// vocabularies like `a` / `a'` stay readable. Leading underscores are reserved
/// for generated vocabulary but accepted everywhere so generated files re-parse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeatureName(String);

impl FeatureName {
    pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
        let s = s.into();
        validate_name(&s)?;
        Ok(FeatureName(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The name of a primitive concept; same lexical rule as [`FeatureName`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConceptName(String);

impl ConceptName {
    pub fn new(s: impl Into<String>) -> Result<Self, NameError> {
        let s = s.into();
        validate_name(&s)?;
        Ok(ConceptName(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ConceptName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A composition of features; the empty sequence is the identity path `id`.
///
/// `f.g` applies `f` first and `g` second, so the interpretation of the path is
/// the composition of the interpretations in diagram order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PathExpr(Vec<FeatureName>);

impl PathExpr {
    /// The identity path, written `id`.
    pub fn id() -> Self {
        PathExpr(Vec::new())
    }

    pub fn new(features: Vec<FeatureName>) -> Self {
        PathExpr(features)
    }

    /// Single-feature path.
    pub fn feature(f: FeatureName) -> Self {
        PathExpr(vec![f])
    }

    pub fn is_id(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of features composed; `id` has length 0.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn features(&self) -> &[FeatureName] {
        &self.0
    }
}

impl fmt::Display for PathExpr {
    fmt_via_print!(print_path);
}

/// Concept descriptions (the `D` grammar plus surface sugar).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Concept {
    /// A primitive concept name.
    Primitive(ConceptName),
    /// Intersection `D1 & D2`.
    And(Box<Concept>, Box<Concept>),
    /// Complement `~D`.
    Not(Box<Concept>),
    /// Value restriction `all f . D` over the total feature `f`.
    All(FeatureName, Box<Concept>),
    /// Sugar: union `D1 | D2`; eliminated by desugaring.
    Or(Box<Concept>, Box<Concept>),
    /// Sugar: the universal concept `Top`; eliminated by desugaring.
    Top,
    /// Sugar: the empty concept `Bot`; eliminated by desugaring.
    Bot,
}

impl Concept {
    /// Primitive concept from a name literal; panics on invalid names.
    ///
    /// Intended for tests and generators where names are static.
    pub fn prim(name: &str) -> Self {
        Concept::Primitive(ConceptName::new(name).expect("valid concept name"))
    }

    pub fn and(lhs: Concept, rhs: Concept) -> Self {
        Concept::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Concept, rhs: Concept) -> Self {
        Concept::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn all(f: FeatureName, body: Concept) -> Self {
        Concept::All(f, Box::new(body))
    }

    /// `all f . body` from a feature name literal; panics on invalid names.
    pub fn all_str(f: &str, body: Concept) -> Self {
        Concept::all(FeatureName::new(f).expect("valid feature name"), body)
    }

    /// Left-associated intersection of a non-empty list.
    pub fn and_all(mut parts: Vec<Concept>) -> Self {
        assert!(!parts.is_empty(), "and_all needs at least one conjunct");
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Concept::and(acc, p);
        }
        acc
    }

    /// Left-associated union of a non-empty list.
    pub fn or_all(mut parts: Vec<Concept>) -> Self {
        assert!(!parts.is_empty(), "or_all needs at least one disjunct");
        let mut acc = parts.remove(0);
        for p in parts {
            acc = Concept::or(acc, p);
        }
        acc
    }

    /// True when the concept uses no `Or`/`Top`/`Bot` sugar anywhere.
    pub fn is_sugar_free(&self) -> bool {
        match self {
            Concept::Primitive(_) => true,
            Concept::And(l, r) => l.is_sugar_free() && r.is_sugar_free(),
            Concept::Not(c) => c.is_sugar_free(),
            Concept::All(_, c) => c.is_sugar_free(),
            Concept::Or(..) | Concept::Top | Concept::Bot => false,
        }
    }
}

impl fmt::Display for Concept {
    fmt_via_print!(print_concept);
}

/// Right-hand sides of axioms (the `E` grammar).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RhsConcept {
    /// An ordinary concept description.
    Plain(Concept),
    /// Intersection at the E level; at least one side contains a PFD.
    And(Box<RhsConcept>, Box<RhsConcept>),
    /// Path functional dependency `fd(D : p1, ..., pk -> p)`.
    Pfd {
        /// The concept the quantified element ranges over.
        over: Concept,
        /// Non-empty list of agreement paths.
        lhs: Vec<PathExpr>,
        /// The path forced to agree.
        rhs: PathExpr,
    },
}

impl RhsConcept {
    /// Builds a PFD node; panics if `lhs` is empty (grammar requires k >= 1).
    pub fn pfd(over: Concept, lhs: Vec<PathExpr>, rhs: PathExpr) -> Self {
        assert!(!lhs.is_empty(), "a PFD needs at least one agreement path");
        RhsConcept::Pfd { over, lhs, rhs }
    }

    pub fn and(lhs: RhsConcept, rhs: RhsConcept) -> Self {
        RhsConcept::And(Box::new(lhs), Box::new(rhs))
    }

    /// True when no `Pfd` node occurs anywhere in the tree.
    pub fn is_pfd_free(&self) -> bool {
        match self {
            RhsConcept::Plain(_) => true,
            RhsConcept::And(l, r) => l.is_pfd_free() && r.is_pfd_free(),
            RhsConcept::Pfd { .. } => false,
        }
    }

    /// Converts a PFD-free right-hand side into a plain concept.
    ///
    /// Returns `None` if any PFD occurs. E-level intersections become D-level
    /// intersections.
    pub fn as_concept(&self) -> Option<Concept> {
        match self {
            RhsConcept::Plain(c) => Some(c.clone()),
            RhsConcept::And(l, r) => Some(Concept::and(l.as_concept()?, r.as_concept()?)),
            RhsConcept::Pfd { .. } => None,
        }
    }
}

impl fmt::Display for RhsConcept {
    fmt_via_print!(print_rhs);
}

/// A subsumption axiom `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub lhs: Concept,
    pub rhs: RhsConcept,
}

impl Axiom {
    pub fn new(lhs: Concept, rhs: RhsConcept) -> Self {
        Axiom { lhs, rhs }
    }

    /// Axiom with a plain (PFD-free) right-hand side.
    pub fn plain(lhs: Concept, rhs: Concept) -> Self {
        Axiom::new(lhs, RhsConcept::Plain(rhs))
    }
}

impl fmt::Display for Axiom {
    fmt_via_print!(print_axiom);
}

/// An ordered list of axioms. Order is meaningful for reports and rendering.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Terminology {
    pub axioms: Vec<Axiom>,
}

impl Terminology {
    pub fn new(axioms: Vec<Axiom>) -> Self {
        Terminology { axioms }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
}

impl fmt::Display for Terminology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::render_terminology(self))
    }
}
