//! Arborescent expressions: the AST, the text grammar and leaf addressing.
//!
//! Concrete syntax:
//!
//! ```text
//! expr    := term { term } ;
//! term    := atom | "<" [ expr ] ">" ;
//! atom    := "O" | "U" | "E" | "V" | int | "[" int { "," int } "]" | "P(" int { "," int } ")" ;
//! int     := [ "-" ] digit { digit } ;
//! ```
//!
//! Juxtaposition is tangle addition, `<T>` is the mirror rotation of `T`.
//! `V`, `[a1,...,an]` and `P(a1,...,an)` are sugar and are expanded by the
//! parser, so they never appear in an [`Expr`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// A four-ended tangle expression.
///
/// `Concat` is kept flat: its parts are never themselves `Concat` and there
/// are always at least two of them. Use [`Expr::concat`] to build one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// A single positive crossing, written `O`.
    Pos,
    /// A single negative crossing (the mirror of `O`), written `U`.
    Neg,
    /// The horizontal twist `[n]`; `[0]` is the identity tangle `E`.
    Int(i64),
    /// Mirror rotation.
    Cross(Box<Expr>),
    /// Tangle addition, read left to right.
    Concat(Vec<Expr>),
}

impl Expr {
    pub const IDENTITY: Expr = Expr::Int(0);

    pub fn cross(inner: Expr) -> Expr {
        Expr::Cross(Box::new(inner))
    }

    /// Tangle sum of `parts`, flattening nested sums. A single part is
    /// returned unchanged.
    ///
    /// # Panics
    ///
    /// Panics if `parts` is empty.
    pub fn concat<I: IntoIterator<Item = Expr>>(parts: I) -> Expr {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Expr::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty tangle sum");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Concat(flat)
        }
    }

    /// The rational tangle `<<<an> ... a2> a1` with fraction
    /// `a1 + 1/(a2 + 1/(... + 1/an))`.
    ///
    /// # Panics
    ///
    /// Panics if `terms` is empty.
    pub fn continued_fraction(terms: &[i64]) -> Expr {
        let (last, rest) = terms.split_last().expect("empty continued fraction");
        rest.iter()
            .rev()
            .fold(Expr::Int(*last), |acc, &a| Expr::concat([Expr::cross(acc), Expr::Int(a)]))
    }

    /// The generalised pretzel `<a1> <a2> ... <an>`.
    ///
    /// # Panics
    ///
    /// Panics if `terms` is empty.
    pub fn pretzel(terms: &[i64]) -> Expr {
        assert!(!terms.is_empty(), "empty pretzel");
        Expr::concat(terms.iter().map(|&a| Expr::cross(Expr::Int(a))))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Expr::Pos | Expr::Neg | Expr::Int(_))
    }

    /// Leaves in left-to-right source order, numbered from 1.
    pub fn leaves(&self) -> Vec<(LeafPath, Leaf)> {
        let mut out = Vec::new();
        self.visit_leaves(&mut |leaf| {
            let path = LeafPath(out.len() + 1);
            out.push((path, leaf));
        });
        out
    }

    pub fn leaf_count(&self) -> usize {
        let mut n = 0;
        self.visit_leaves(&mut |_| n += 1);
        n
    }

    /// Number of crossings after every `[n]` is spelled out as `|n|` crossings.
    pub fn crossing_count(&self) -> u64 {
        let mut n = 0;
        self.visit_leaves(&mut |leaf| n += leaf.crossings());
        n
    }

    fn visit_leaves(&self, f: &mut impl FnMut(Leaf)) {
        match self {
            Expr::Pos => f(Leaf::Pos),
            Expr::Neg => f(Leaf::Neg),
            Expr::Int(n) => f(Leaf::Int(*n)),
            Expr::Cross(inner) => inner.visit_leaves(f),
            Expr::Concat(parts) => parts.iter().for_each(|p| p.visit_leaves(f)),
        }
    }

    /// Rebuilds the expression with every leaf replaced by `f(path, leaf)`.
    pub fn map_leaves(&self, f: &mut impl FnMut(LeafPath, Leaf) -> Expr) -> Expr {
        let mut next = 0;
        self.map_leaves_inner(&mut next, f)
    }

    fn map_leaves_inner(
        &self,
        next: &mut usize,
        f: &mut impl FnMut(LeafPath, Leaf) -> Expr,
    ) -> Expr {
        match self {
            Expr::Pos | Expr::Neg | Expr::Int(_) => {
                *next += 1;
                f(LeafPath(*next), Leaf::from_expr(self).unwrap())
            }
            Expr::Cross(inner) => Expr::cross(inner.map_leaves_inner(next, f)),
            Expr::Concat(parts) => {
                Expr::concat(parts.iter().map(|p| p.map_leaves_inner(next, f)).collect::<Vec<_>>())
            }
        }
    }

    /// Swaps every `O` with `U` and negates every twist.
    pub fn mirror(&self) -> Expr {
        self.map_leaves(&mut |_, leaf| match leaf {
            Leaf::Pos => Expr::Neg,
            Leaf::Neg => Expr::Pos,
            Leaf::Int(n) => Expr::Int(-n),
        })
    }

    /// Canonical text form. `parse(&e.to_text()) == Ok(e)` for every `e`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Pos => f.write_str("O"),
            Expr::Neg => f.write_str("U"),
            Expr::Int(0) => f.write_str("E"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Cross(inner) => write!(f, "<{inner}>"),
            Expr::Concat(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// 1-based position of a leaf in left-to-right source order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LeafPath(pub usize);

impl LeafPath {
    /// The 1-based position.
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Leaf {
    Pos,
    Neg,
    Int(i64),
}

impl Leaf {
    pub fn from_expr(e: &Expr) -> Option<Leaf> {
        match *e {
            Expr::Pos => Some(Leaf::Pos),
            Expr::Neg => Some(Leaf::Neg),
            Expr::Int(n) => Some(Leaf::Int(n)),
            _ => None,
        }
    }

    pub fn to_expr(self) -> Expr {
        match self {
            Leaf::Pos => Expr::Pos,
            Leaf::Neg => Expr::Neg,
            Leaf::Int(n) => Expr::Int(n),
        }
    }

    pub fn is_odd(self) -> bool {
        match self {
            Leaf::Pos | Leaf::Neg => true,
            Leaf::Int(n) => n % 2 != 0,
        }
    }

    /// Crossings this leaf contributes once twists are spelled out.
    pub fn crossings(self) -> u64 {
        match self {
            Leaf::Pos | Leaf::Neg => 1,
            Leaf::Int(n) => n.unsigned_abs(),
        }
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_expr().fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected {found} at byte {offset}, expected {}", .expected.join(" or "))]
    Unexpected {
        offset: usize,
        found: String,
        expected: Vec<&'static str>,
    },
    #[error("unclosed '<' opened at byte {offset}")]
    Unclosed { offset: usize },
    #[error("unmatched '>' at byte {offset}")]
    UnmatchedClose { offset: usize },
    #[error("integer out of range at byte {offset}")]
    IntOverflow { offset: usize },
}

impl ParseError {
    /// Byte offset of the error, if it has one.
    pub fn offset(&self) -> Option<usize> {
        match *self {
            ParseError::Empty => None,
            ParseError::Unexpected { offset, .. }
            | ParseError::Unclosed { offset }
            | ParseError::UnmatchedClose { offset }
            | ParseError::IntOverflow { offset } => Some(offset),
        }
    }
}

const TERM_START: &[&str] = &["'O'", "'U'", "'E'", "'V'", "integer", "'['", "'P('", "'<'"];

/// Parses an expression, expanding all sugar.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err(ParseError::Empty);
    }
    let e = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(b'>') => Err(ParseError::UnmatchedClose { offset: p.pos }),
        Some(_) => Err(p.unexpected(TERM_START)),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let found = match std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => format!("'{c}'"),
            None if self.pos < self.src.len() => "invalid byte".to_string(),
            None => "end of input".to_string(),
        };
        ParseError::Unexpected { offset: self.pos, found, expected: expected.to_vec() }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(b'O' | b'U' | b'E' | b'V' | b'[' | b'P' | b'<' | b'-' | b'0'..=b'9')
        )
    }

    // expr := term { term }
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = vec![self.term()?];
        loop {
            self.skip_ws();
            if !self.starts_term() {
                break;
            }
            parts.push(self.term()?);
        }
        Ok(Expr::concat(parts))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(b'<') => {
                self.pos += 1;
                self.skip_ws();
                match self.peek() {
                    Some(b'>') => {
                        self.pos += 1;
                        return Ok(Expr::cross(Expr::IDENTITY));
                    }
                    None => return Err(ParseError::Unclosed { offset: start }),
                    _ => {}
                }
                let inner = self.expr()?;
                self.skip_ws();
                match self.peek() {
                    Some(b'>') => {
                        self.pos += 1;
                        Ok(Expr::cross(inner))
                    }
                    None => Err(ParseError::Unclosed { offset: start }),
                    Some(_) => Err(self.unexpected(&["'>'"])),
                }
            }
            Some(b'O') => {
                self.pos += 1;
                Ok(Expr::Pos)
            }
            Some(b'U') => {
                self.pos += 1;
                Ok(Expr::Neg)
            }
            Some(b'E') => {
                self.pos += 1;
                Ok(Expr::IDENTITY)
            }
            Some(b'V') => {
                self.pos += 1;
                Ok(Expr::cross(Expr::IDENTITY))
            }
            Some(b'[') => {
                self.pos += 1;
                let terms = self.int_list(b']')?;
                Ok(Expr::continued_fraction(&terms))
            }
            Some(b'P') => {
                self.pos += 1;
                if self.peek() != Some(b'(') {
                    return Err(self.unexpected(&["'('"]));
                }
                self.pos += 1;
                let terms = self.int_list(b')')?;
                Ok(Expr::pretzel(&terms))
            }
            Some(b'-' | b'0'..=b'9') => Ok(Expr::Int(self.int()?)),
            Some(b'>') => Err(ParseError::UnmatchedClose { offset: start }),
            _ => Err(self.unexpected(TERM_START)),
        }
    }

    fn int_list(&mut self, close: u8) -> Result<Vec<i64>, ParseError> {
        let close_name = if close == b']' { "']'" } else { "')'" };
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            terms.push(self.int()?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(terms);
                }
                _ => return Err(self.unexpected(&["','", close_name])),
            }
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.unexpected(&["digit"]));
        }
        // the slice is ASCII digits with an optional sign
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError::IntOverflow { offset: start })
    }
}
