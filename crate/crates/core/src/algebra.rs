//! The crossing algebra.
//!
//! A flat four-ended tangle has one of three boundary pairings. Tangle sum
//! multiplies them, mirror rotation swaps the horizontal and vertical
//! pairings, and the only way to trap a closed loop is to add two vertical
//! pairings. Keeping a loop counter next to the pairing is enough to count
//! the components of the numerator closure of any arborescent expression.

use std::fmt;

use serde::Serialize;

use crate::expr::{Expr, Leaf, LeafPath};

/// Boundary pairing of the ends NW, NE, SW, SE.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConnClass {
    /// NW-NE and SW-SE: even twists, the identity `E`.
    H,
    /// NW-SW and NE-SE: the rotated identity `<E>`.
    V,
    /// NW-SE and NE-SW: odd twists, `O`.
    X,
}

impl ConnClass {
    pub const ALL: [ConnClass; 3] = [ConnClass::H, ConnClass::V, ConnClass::X];

    pub fn cross(self) -> ConnClass {
        match self {
            ConnClass::H => ConnClass::V,
            ConnClass::V => ConnClass::H,
            ConnClass::X => ConnClass::X,
        }
    }

    /// Trace mark: `u` unmarked (even), `m` marked, `o` odd.
    pub fn mark(self) -> Mark {
        match self {
            ConnClass::H => Mark::U,
            ConnClass::V => Mark::M,
            ConnClass::X => Mark::O,
        }
    }

    /// Number of circles in the numerator closure of a bare tangle of this class.
    pub fn closure_loops(self) -> u32 {
        match self {
            ConnClass::H => 2,
            ConnClass::V | ConnClass::X => 1,
        }
    }
}

impl fmt::Display for ConnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ConnClass::H => "E",
            ConnClass::V => "V",
            ConnClass::X => "O",
        })
    }
}

/// A connectivity class together with the exponent of the loop variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ConnValue {
    pub class: ConnClass,
    pub loops: u32,
}

impl ConnValue {
    pub const IDENTITY: ConnValue = ConnValue::new(ConnClass::H, 0);
    pub const ODD: ConnValue = ConnValue::new(ConnClass::X, 0);
    pub const VERTICAL: ConnValue = ConnValue::new(ConnClass::V, 0);

    pub const fn new(class: ConnClass, loops: u32) -> ConnValue {
        ConnValue { class, loops }
    }

    /// Tangle sum.
    pub fn mul(self, rhs: ConnValue) -> ConnValue {
        use ConnClass::*;
        let (class, extra) = match (self.class, rhs.class) {
            (H, c) | (c, H) => (c, 0),
            (X, X) => (H, 0),
            (V, X) | (X, V) => (V, 0),
            (V, V) => (V, 1),
        };
        ConnValue::new(class, self.loops + rhs.loops + extra)
    }

    /// Mirror rotation. Loops are carried unchanged.
    pub fn cross(self) -> ConnValue {
        ConnValue::new(self.class.cross(), self.loops)
    }

    /// Numerator closure: each remaining pairing contributes its own circles.
    pub fn closure_components(self) -> u32 {
        self.loops + self.class.closure_loops()
    }

    /// The contracted algebra, where loops are not counted.
    pub fn contracted(self) -> ConnClass {
        self.class
    }

    /// Parity value of a twist or crossing.
    pub fn of_leaf(leaf: Leaf) -> ConnValue {
        if leaf.is_odd() {
            ConnValue::ODD
        } else {
            ConnValue::IDENTITY
        }
    }
}

impl std::ops::Mul for ConnValue {
    type Output = ConnValue;

    fn mul(self, rhs: ConnValue) -> ConnValue {
        ConnValue::mul(self, rhs)
    }
}

impl fmt::Display for ConnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.loops {
            0 => write!(f, "{}", self.class),
            1 => write!(f, "{} d", self.class),
            n => write!(f, "{} d^{n}", self.class),
        }
    }
}

/// Evaluates `e` with each leaf valued by `leaf_value`, called in source order.
pub fn eval_with(e: &Expr, leaf_value: &mut impl FnMut(LeafPath, Leaf) -> ConnValue) -> ConnValue {
    let mut next = 0;
    eval_inner(e, &mut next, leaf_value)
}

fn eval_inner(
    e: &Expr,
    next: &mut usize,
    leaf_value: &mut impl FnMut(LeafPath, Leaf) -> ConnValue,
) -> ConnValue {
    match e {
        Expr::Pos => leaf(next, Leaf::Pos, leaf_value),
        Expr::Neg => leaf(next, Leaf::Neg, leaf_value),
        Expr::Int(n) => leaf(next, Leaf::Int(*n), leaf_value),
        Expr::Cross(inner) => eval_inner(inner, next, leaf_value).cross(),
        Expr::Concat(parts) => parts
            .iter()
            .fold(ConnValue::IDENTITY, |acc, p| acc * eval_inner(p, next, leaf_value)),
    }
}

fn leaf(
    next: &mut usize,
    leaf: Leaf,
    leaf_value: &mut impl FnMut(LeafPath, Leaf) -> ConnValue,
) -> ConnValue {
    *next += 1;
    leaf_value(LeafPath(*next), leaf)
}

/// Connectivity of `e`, where only the parity of each twist matters.
pub fn eval_conn(e: &Expr) -> ConnValue {
    eval_with(e, &mut |_, leaf| ConnValue::of_leaf(leaf))
}

/// Number of components of the numerator closure of `e`.
pub fn closure_components(e: &Expr) -> u32 {
    eval_conn(e).closure_components()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mark {
    #[serde(rename = "o")]
    O,
    #[serde(rename = "m")]
    M,
    #[serde(rename = "u")]
    U,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Mark::O => "o",
            Mark::M => "m",
            Mark::U => "u",
        })
    }
}

/// An evaluation with every mirror rotation subscripted by the value it
/// produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalTrace {
    /// One mark per `Cross` node, in the order their closing brackets
    /// appear in the text (inner to outer).
    pub marks: Vec<Mark>,
    pub value: ConnValue,
    /// The expression with marks attached, e.g. `<<O>_o O>_m O |_m`.
    pub annotated: String,
}

impl EvalTrace {
    pub fn final_mark(&self) -> Mark {
        self.value.class.mark()
    }
}

pub fn trace(e: &Expr) -> EvalTrace {
    let mut marks = Vec::new();
    let mut annotated = String::new();
    let value = trace_inner(e, &mut marks, &mut annotated);
    annotated.push_str(&format!(" |_{}", value.class.mark()));
    EvalTrace { marks, value, annotated }
}

fn trace_inner(e: &Expr, marks: &mut Vec<Mark>, out: &mut String) -> ConnValue {
    match e {
        Expr::Pos | Expr::Neg | Expr::Int(_) => {
            out.push_str(&e.to_text());
            ConnValue::of_leaf(Leaf::from_expr(e).unwrap())
        }
        Expr::Cross(inner) => {
            out.push('<');
            let v = trace_inner(inner, marks, out).cross();
            marks.push(v.class.mark());
            out.push_str(&format!(">_{}", v.class.mark()));
            v
        }
        Expr::Concat(parts) => {
            let mut acc = ConnValue::IDENTITY;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                acc = acc * trace_inner(p, marks, out);
            }
            acc
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Opacity {
    Opaque,
    Transparent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafOpacity {
    pub path: LeafPath,
    pub leaf: String,
    pub opacity: Opacity,
    /// Closure component count with this leaf's parity flipped.
    pub toggled_components: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpacityReport {
    pub components: u32,
    pub leaves: Vec<LeafOpacity>,
}

impl OpacityReport {
    pub fn transparent(&self) -> Vec<usize> {
        self.positions(Opacity::Transparent)
    }

    pub fn opaque(&self) -> Vec<usize> {
        self.positions(Opacity::Opaque)
    }

    fn positions(&self, which: Opacity) -> Vec<usize> {
        self.leaves
            .iter()
            .filter(|l| l.opacity == which)
            .map(|l| l.path.index())
            .collect()
    }
}

/// The twist obtained by flipping the parity of `leaf`: a crossing becomes
/// `E`, `[n]` becomes `[n+1]`.
pub fn toggle_parity(leaf: Leaf) -> Leaf {
    match leaf {
        Leaf::Pos | Leaf::Neg => Leaf::Int(0),
        Leaf::Int(n) => Leaf::Int(n + 1),
    }
}

/// Which leaves the closure component count is blind to.
pub fn opacity(e: &Expr) -> OpacityReport {
    let components = closure_components(e);
    let leaves = e
        .leaves()
        .into_iter()
        .map(|(path, leaf)| {
            let flipped = ConnValue::of_leaf(toggle_parity(leaf));
            let toggled = eval_with(e, &mut |p, l| {
                if p == path {
                    flipped
                } else {
                    ConnValue::of_leaf(l)
                }
            })
            .closure_components();
            LeafOpacity {
                path,
                leaf: leaf.to_string(),
                opacity: if toggled == components { Opacity::Opaque } else { Opacity::Transparent },
                toggled_components: toggled,
            }
        })
        .collect();
    OpacityReport { components, leaves }
}
