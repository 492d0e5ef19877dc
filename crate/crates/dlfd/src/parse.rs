//! Lexer and recursive-descent parser for the concrete terminology syntax.
//!
//! ```text
//! terminology := axiom*
//! axiom       := concept "<=" rhs ";"
//! rhs         := rhs-term ("&" rhs-term)*
//! rhs-term    := pfd | concept          (PFDs only at this level)
//! pfd         := "fd" "(" concept ":" path ("," path)* "->" path ")"
//! concept     := or-expr
//! or-expr     := and-expr ("|" and-expr)*
//! and-expr    := unary ("&" unary)*
//! unary       := "~" unary | "all" FEATURE "." unary | "(" concept ")"
//!              | NAME | "Top" | "Bot"
//! path        := "id" | FEATURE ("." FEATURE)*
//! ```
//!
//! `#` starts a comment running to end of line. `&` binds tighter than `|`;
//! `all f .` and `~` scope over a single unary term. On an axiom's right-hand
//! side a `&` followed by `fd` switches to the E-level conjunction, so
//! `A & fd(...)` works without parentheses; PFD-free conjuncts fold back into
//! ordinary concept intersections, which keeps pure-concept right-hand sides
//! identical to what the left-hand grammar produces.

use std::fmt;

use thiserror::Error;

use crate::ast::{Axiom, Concept, ConceptName, FeatureName, PathExpr, RhsConcept, Terminology};

/// What went wrong, without position information.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// A character the lexer does not know.
    UnexpectedChar(char),
    /// `<` not followed by `=`, or `-` not followed by `>`.
    IncompleteOperator(char),
    /// Found one token while expecting something else.
    UnexpectedToken { found: String, expected: String },
    /// `fd(...)` in a position where only plain concepts are allowed.
    PfdNotAllowedHere,
    /// `fd(D : -> p)` — the agreement path list may not be empty.
    EmptyPathList,
    /// `id` may only stand alone, never inside a composed path.
    IdInComposedPath,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::IncompleteOperator('<') => write!(f, "expected '<=' "),
            ParseErrorKind::IncompleteOperator(_) => write!(f, "expected '->'"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::PfdNotAllowedHere => write!(
                f,
                "fd(...) is only allowed at the top level of an axiom's right-hand side"
            ),
            ParseErrorKind::EmptyPathList => {
                write!(f, "a PFD needs at least one agreement path before '->'")
            }
            ParseErrorKind::IdInComposedPath => {
                write!(f, "'id' cannot appear inside a composed path")
            }
        }
    }
}

/// A parse error with 1-based line and column of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    KwAll,
    KwFd,
    KwId,
    Amp,
    Pipe,
    Tilde,
    LParen,
    RParen,
    Dot,
    Comma,
    Semi,
    Colon,
    SubsumedBy,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name {s:?}"),
            Tok::KwAll => "'all'".into(),
            Tok::KwFd => "'fd'".into(),
            Tok::KwId => "'id'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Comma => "','".into(),
            Tok::Semi => "';'".into(),
            Tok::Colon => "':'".into(),
            Tok::SubsumedBy => "'<='".into(),
            Tok::Arrow => "'->'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();

    macro_rules! push {
        ($tok:expr, $line:expr, $col:expr) => {
            out.push(Spanned {
                tok: $tok,
                line: $line,
                col: $col,
            })
        };
    }

    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '&' => {
                chars.next();
                col += 1;
                push!(Tok::Amp, tline, tcol);
            }
            '|' => {
                chars.next();
                col += 1;
                push!(Tok::Pipe, tline, tcol);
            }
            '~' => {
                chars.next();
                col += 1;
                push!(Tok::Tilde, tline, tcol);
            }
            '(' => {
                chars.next();
                col += 1;
                push!(Tok::LParen, tline, tcol);
            }
            ')' => {
                chars.next();
                col += 1;
                push!(Tok::RParen, tline, tcol);
            }
            '.' => {
                chars.next();
                col += 1;
                push!(Tok::Dot, tline, tcol);
            }
            ',' => {
                chars.next();
                col += 1;
                push!(Tok::Comma, tline, tcol);
            }
            ';' => {
                chars.next();
                col += 1;
                push!(Tok::Semi, tline, tcol);
            }
            ':' => {
                chars.next();
                col += 1;
                push!(Tok::Colon, tline, tcol);
            }
            '<' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    push!(Tok::SubsumedBy, tline, tcol);
                } else {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        kind: ParseErrorKind::IncompleteOperator('<'),
                    });
                }
            }
            '-' => {
                chars.next();
                col += 1;
                if chars.peek() == Some(&'>') {
                    chars.next();
                    col += 1;
                    push!(Tok::Arrow, tline, tcol);
                } else {
                    return Err(ParseError {
                        line: tline,
                        col: tcol,
                        kind: ParseErrorKind::IncompleteOperator('-'),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                let tok = match name.as_str() {
                    "all" => Tok::KwAll,
                    "fd" => Tok::KwFd,
                    "id" => Tok::KwId,
                    _ => Tok::Ident(name),
                };
                push!(tok, tline, tcol);
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    push!(Tok::Eof, line, col);
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(input)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        let i = (self.pos + 1).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let (line, col) = self.here();
        ParseError { line, col, kind }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error(ParseErrorKind::UnexpectedToken {
            found: self.peek().describe(),
            expected: expected.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn feature_name(&mut self) -> Result<FeatureName, ParseError> {
        match self.peek() {
            Tok::Ident(s) => {
                let name = FeatureName::new(s.clone()).map_err(|_| {
                    self.unexpected("a feature name")
                })?;
                self.bump();
                Ok(name)
            }
            _ => Err(self.unexpected("a feature name")),
        }
    }

    /// `rhs_top` is true while parsing a top-level right-hand-side chunk, where
    /// a `&` immediately followed by `fd` belongs to the E-level conjunction.
    fn or_expr(&mut self, rhs_top: bool) -> Result<Concept, ParseError> {
        let mut acc = self.and_expr(rhs_top)?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let rhs = self.and_expr(rhs_top)?;
            acc = Concept::or(acc, rhs);
        }
        Ok(acc)
    }

    fn and_expr(&mut self, rhs_top: bool) -> Result<Concept, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Amp {
            if rhs_top && *self.peek2() == Tok::KwFd {
                break;
            }
            self.bump();
            let rhs = self.unary()?;
            acc = Concept::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Concept, ParseError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Concept::not(self.unary()?))
            }
            Tok::KwAll => {
                self.bump();
                let f = self.feature_name()?;
                self.expect(Tok::Dot, "'.' after the feature of 'all'")?;
                Ok(Concept::all(f, self.unary()?))
            }
            Tok::LParen => {
                self.bump();
                let c = self.or_expr(false)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(c)
            }
            Tok::KwFd => Err(self.error(ParseErrorKind::PfdNotAllowedHere)),
            Tok::Ident(name) => {
                let c = match name.as_str() {
                    "Top" => Concept::Top,
                    "Bot" => Concept::Bot,
                    _ => Concept::Primitive(
                        ConceptName::new(name.clone())
                            .map_err(|_| self.unexpected("a concept name"))?,
                    ),
                };
                self.bump();
                Ok(c)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }

    fn path(&mut self) -> Result<PathExpr, ParseError> {
        if *self.peek() == Tok::KwId {
            self.bump();
            return Ok(PathExpr::id());
        }
        let mut features = vec![self.feature_name_or_path_err()?];
        while *self.peek() == Tok::Dot {
            self.bump();
            if *self.peek() == Tok::KwId {
                return Err(self.error(ParseErrorKind::IdInComposedPath));
            }
            features.push(self.feature_name_or_path_err()?);
        }
        Ok(PathExpr::new(features))
    }

    fn feature_name_or_path_err(&mut self) -> Result<FeatureName, ParseError> {
        match self.peek() {
            Tok::Ident(_) => self.feature_name(),
            _ => Err(self.unexpected("a path ('id' or features joined by '.')")),
        }
    }

    fn pfd(&mut self) -> Result<RhsConcept, ParseError> {
        self.expect(Tok::KwFd, "'fd'")?;
        self.expect(Tok::LParen, "'(' after 'fd'")?;
        let over = self.or_expr(false)?;
        self.expect(Tok::Colon, "':' separating the PFD concept from its paths")?;
        if *self.peek() == Tok::Arrow {
            return Err(self.error(ParseErrorKind::EmptyPathList));
        }
        let mut lhs = vec![self.path()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            lhs.push(self.path()?);
        }
        self.expect(Tok::Arrow, "'->'")?;
        let rhs = self.path()?;
        self.expect(Tok::RParen, "')'")?;
        Ok(RhsConcept::Pfd { over, lhs, rhs })
    }

    fn rhs(&mut self) -> Result<RhsConcept, ParseError> {
        let mut terms = vec![self.rhs_term()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            terms.push(self.rhs_term()?);
        }
        let mut acc = terms.remove(0);
        for term in terms {
            acc = match (acc.as_concept(), term.as_concept()) {
                (Some(l), Some(r)) => RhsConcept::Plain(Concept::and(l, r)),
                _ => RhsConcept::and(acc, term),
            };
        }
        Ok(acc)
    }

    fn rhs_term(&mut self) -> Result<RhsConcept, ParseError> {
        if *self.peek() == Tok::KwFd {
            self.pfd()
        } else {
            Ok(RhsConcept::Plain(self.or_expr(true)?))
        }
    }

    fn axiom(&mut self) -> Result<Axiom, ParseError> {
        let lhs = self.or_expr(false)?;
        self.expect(Tok::SubsumedBy, "'<='")?;
        let rhs = self.rhs()?;
        self.expect(Tok::Semi, "';' ending the axiom")?;
        Ok(Axiom::new(lhs, rhs))
    }

    fn terminology(&mut self) -> Result<Terminology, ParseError> {
        let mut axioms = Vec::new();
        while *self.peek() != Tok::Eof {
            axioms.push(self.axiom()?);
        }
        Ok(Terminology::new(axioms))
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

/// Parses a whole terminology (a sequence of axioms).
pub fn parse_terminology(input: &str) -> Result<Terminology, ParseError> {
    let mut p = Parser::new(input)?;
    p.terminology()
}

/// Parses a single concept; trailing input is an error.
pub fn parse_concept(input: &str) -> Result<Concept, ParseError> {
    let mut p = Parser::new(input)?;
    let c = p.or_expr(false)?;
    p.expect_eof()?;
    Ok(c)
}

/// Parses one axiom; the trailing `;` is optional here for command-line use.
pub fn parse_axiom(input: &str) -> Result<Axiom, ParseError> {
    let mut p = Parser::new(input)?;
    let lhs = p.or_expr(false)?;
    p.expect(Tok::SubsumedBy, "'<='")?;
    let rhs = p.rhs()?;
    if *p.peek() == Tok::Semi {
        p.bump();
    }
    p.expect_eof()?;
    Ok(Axiom::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Concept as C;
    use crate::ast::RhsConcept as R;

    fn fpath(names: &[&str]) -> PathExpr {
        PathExpr::new(
            names
                .iter()
                .map(|n| FeatureName::new(*n).unwrap())
                .collect(),
        )
    }

    #[test]
    fn parses_disjointness_axiom() {
        let t = parse_terminology("A & B <= Bot;").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::plain(C::and(C::prim("A"), C::prim("B")), C::Bot)]
        );
    }

    #[test]
    fn parses_pfd_axiom() {
        let t = parse_terminology("A <= fd(B : f -> h);").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::new(
                C::prim("A"),
                R::pfd(C::prim("B"), vec![fpath(&["f"])], fpath(&["h"])),
            )]
        );
    }

    #[test]
    fn parses_typing_axiom_with_two_restrictions() {
        let t = parse_terminology("X <= all a . A & all b . B;").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::plain(
                C::prim("X"),
                C::and(C::all_str("a", C::prim("A")), C::all_str("b", C::prim("B"))),
            )]
        );
    }

    #[test]
    fn rejects_pfd_on_the_left() {
        let err = parse_terminology("fd(B : f -> h) <= A;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::PfdNotAllowedHere);
        assert_eq!((err.line, err.col), (1, 1));
    }

    #[test]
    fn rejects_pfd_under_all() {
        let err = parse_terminology("A <= all f . fd(X : a -> id);").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::PfdNotAllowedHere);
    }

    #[test]
    fn rejects_empty_path_list() {
        let err = parse_terminology("A <= fd(B : -> f);").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::EmptyPathList);
    }

    #[test]
    fn rejects_id_inside_composed_path() {
        let err = parse_terminology("A <= fd(B : f.id -> g);").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::IdInComposedPath);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let t = parse_terminology("# header\n\nA <= B; # trailing\n# done\n").unwrap();
        assert_eq!(t.axioms.len(), 1);
    }

    #[test]
    fn primes_and_underscores_in_names() {
        let t = parse_terminology("Y <= all a' . A;").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::plain(C::prim("Y"), C::all_str("a'", C::prim("A")))]
        );
        let t = parse_terminology("A <= _u_A_B;").unwrap();
        assert_eq!(t.axioms, vec![Axiom::plain(C::prim("A"), C::prim("_u_A_B"))]);
    }

    #[test]
    fn mixed_rhs_conjunction() {
        let t = parse_terminology("A <= all f . X & fd(A : a -> id);").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::new(
                C::prim("A"),
                R::and(
                    R::Plain(C::all_str("f", C::prim("X"))),
                    R::pfd(C::prim("A"), vec![fpath(&["a"])], PathExpr::id()),
                ),
            )]
        );
    }

    #[test]
    fn pure_concept_rhs_conjunction_stays_at_concept_level() {
        let t = parse_terminology("X <= A & B & C;").unwrap();
        assert_eq!(
            t.axioms,
            vec![Axiom::plain(
                C::prim("X"),
                C::and(C::and(C::prim("A"), C::prim("B")), C::prim("C")),
            )]
        );
    }

    #[test]
    fn or_binds_loosest() {
        let c = parse_concept("A | B & C").unwrap();
        assert_eq!(c, C::or(C::prim("A"), C::and(C::prim("B"), C::prim("C"))));
        let c = parse_concept("(A | B) & C").unwrap();
        assert_eq!(c, C::and(C::or(C::prim("A"), C::prim("B")), C::prim("C")));
    }

    #[test]
    fn all_scopes_over_one_unary_term() {
        let c = parse_concept("all f . A & B").unwrap();
        assert_eq!(c, C::and(C::all_str("f", C::prim("A")), C::prim("B")));
        let c = parse_concept("all f . (A & B)").unwrap();
        assert_eq!(c, C::all_str("f", C::and(C::prim("A"), C::prim("B"))));
        let c = parse_concept("all f . ~A").unwrap();
        assert_eq!(c, C::all_str("f", C::not(C::prim("A"))));
    }

    #[test]
    fn missing_semicolon_is_reported_at_the_right_spot() {
        let err = parse_terminology("A <= B").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedToken { .. }));
        assert_eq!((err.line, err.col), (1, 7));
    }

    #[test]
    fn error_positions_track_lines() {
        let err = parse_terminology("A <= B;\nC <= @;").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('@'));
        assert_eq!((err.line, err.col), (2, 6));
    }

    #[test]
    fn top_and_bot_atoms() {
        let c = parse_concept("Top & ~Bot").unwrap();
        assert_eq!(c, C::and(C::Top, C::not(C::Bot)));
    }

    #[test]
    fn multi_path_pfd() {
        let a = parse_axiom("C <= fd(C : f.g, h -> id)").unwrap();
        assert_eq!(
            a,
            Axiom::new(
                C::prim("C"),
                R::pfd(
                    C::prim("C"),
                    vec![fpath(&["f", "g"]), fpath(&["h"])],
                    PathExpr::id(),
                ),
            )
        );
    }

    #[test]
    fn incomplete_operators() {
        assert!(matches!(
            parse_terminology("A < B;").unwrap_err().kind,
            ParseErrorKind::IncompleteOperator('<')
        ));
        assert!(matches!(
            parse_terminology("A <= fd(B : f - h);").unwrap_err().kind,
            ParseErrorKind::IncompleteOperator('-')
        ));
    }
}
