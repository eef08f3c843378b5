//! Tables of rational knots and links by crossing number.
//!
//! A rational link with `n` crossings is a composition of `n` with no `1`
//! at either end, taken up to reversal.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::closure_components;
use crate::expr::Expr;
use crate::rational::{cf_value, classify_fraction, Fraction, ParityClass};
use crate::Error;

/// An ordered list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// `[a1, ..., an]` as a rational tangle expression.
    pub fn to_expr(&self) -> Expr {
        Expr::continued_fraction(&self.0.iter().map(|&a| i64::from(a)).collect::<Vec<_>>())
    }

    pub fn fraction(&self) -> Fraction {
        cf_value(&self.0.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>()).expect("nonempty composition")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Representative of `c` up to reversal: the lexicographically smaller.
pub fn canonical(c: &Composition) -> Composition {
    c.clone().min(c.reversed())
}

/// All compositions of `n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(n: u32) -> Compositions {
        Compositions { next: (n > 0).then(|| vec![1; n as usize]) }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        if cur.len() > 1 {
            // (..., x, y) -> (..., x + 1, 1, ..., 1) with y - 1 ones
            let mut succ = cur.clone();
            let y = succ.pop().unwrap();
            *succ.last_mut().unwrap() += 1;
            succ.extend(std::iter::repeat(1).take(y as usize - 1));
            self.next = Some(succ);
        }
        Some(Composition(cur))
    }
}

/// Compositions of `n` whose first and last parts are at least 2, in
/// lexicographic order.
pub fn compositions_with_big_ends(n: u32) -> Result<impl Iterator<Item = Composition>, Error> {
    if n < 2 {
        return Err(Error::Invalid(format!("crossing number must be at least 2, got {n}")));
    }
    Ok(Compositions::new(n).filter(|c| c.0[0] >= 2 && *c.0.last().unwrap() >= 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Knot,
    Link,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Kind::Knot => "knot",
            Kind::Link => "link",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub parts: Composition,
    pub fraction: Fraction,
    pub class: Kind,
    pub components: u32,
    #[serde(skip)]
    pub parity: ParityClass,
}

/// One entry per reversal class of compositions of `n` with big ends,
/// sorted by canonical form. Each entry is classified by the fraction
/// parity rule and by the crossing algebra; a disagreement is an error.
pub fn table(n: u32) -> Result<Vec<TableEntry>, Error> {
    let classes: BTreeSet<Composition> = compositions_with_big_ends(n)?.map(|c| canonical(&c)).collect();
    classes.into_iter().collect::<Vec<_>>().into_par_iter().map(classify).collect()
}

fn classify(parts: Composition) -> Result<TableEntry, Error> {
    let fraction = parts.fraction();
    let parity = classify_fraction(&fraction)?;
    let components = closure_components(&parts.to_expr());
    if components != parity.components() {
        return Err(Error::Internal(format!(
            "{parts} = {fraction} is {parity} but its closure has {components} components"
        )));
    }
    let class = if parity.is_link() { Kind::Link } else { Kind::Knot };
    Ok(TableEntry { parts, fraction, class, components, parity })
}

/// Aligned plain-text table.
pub fn render_table(entries: &[TableEntry]) -> String {
    let w = entries.iter().map(|e| e.parts.to_string().len()).max().unwrap_or(0).max(5);
    let f = entries.iter().map(|e| e.fraction.to_string().len()).max().unwrap_or(0).max(8);
    let mut out = format!("{:<w$}  {:<f$}  {:<5}  components\n", "parts", "fraction", "class");
    for e in entries {
        out += &format!("{:<w$}  {:<f$}  {:<5}  {}\n", e.parts.to_string(), e.fraction.to_string(), e.class, e.components);
    }
    out
}
