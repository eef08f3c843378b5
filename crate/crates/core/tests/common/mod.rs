//! Shared test corpus and generators.
#![allow(dead_code)]

use std::collections::HashSet;

use knotalg_core::Expr;
use proptest::prelude::*;

/// Every expression built from `leaves` with at most `size` leaves plus
/// cross operators, deduplicated after flattening.
pub fn exhaustive(leaves: &[Expr], size: usize) -> Vec<Expr> {
    let mut by_size: Vec<Vec<Expr>> = vec![Vec::new(), leaves.to_vec()];
    for s in 2..=size {
        let mut level: Vec<Expr> = by_size[s - 1].iter().cloned().map(Expr::cross).collect();
        for i in 1..s {
            for a in &by_size[i] {
                for b in &by_size[s - i] {
                    level.push(Expr::concat([a.clone(), b.clone()]));
                }
            }
        }
        by_size.push(level);
    }
    let mut seen = HashSet::new();
    by_size.into_iter().flatten().filter(|e| seen.insert(e.clone())).collect()
}

/// All compositions of every total up to `max`.
pub fn positive_sequences(max: u32) -> Vec<Vec<i64>> {
    fn go(rest: u32, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for a in 1..=rest {
            cur.push(i64::from(a));
            go(rest - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max, &mut Vec::new(), &mut out);
    out
}

pub fn borromean() -> Expr {
    knotalg_core::parse("<<2> <-2>> <2> <-2>").unwrap()
}

pub fn whitehead() -> Expr {
    knotalg_core::parse("2 <2> <-2>").unwrap()
}

/// Rational tangles `[a1, ..., an]` with `sum ai <= 8`, the Borromean
/// rings, the Whitehead link and pretzels `P(a, b, c)` with `|a|, |b|, |c| <= 3`.
pub fn named_corpus() -> Vec<Expr> {
    let mut out: Vec<Expr> = positive_sequences(8).iter().map(|s| Expr::continued_fraction(s)).collect();
    out.push(borromean());
    out.push(whitehead());
    let entries = [-3, -2, -1, 1, 2, 3];
    for a in entries {
        for b in entries {
            for c in entries {
                out.push(Expr::pretzel(&[a, b, c]));
            }
        }
    }
    out
}

/// Exhaustive small expressions over `O`, `U`, `E`, at most 5 crossings.
pub fn small_corpus() -> Vec<Expr> {
    exhaustive(&[Expr::Pos, Expr::Neg, Expr::IDENTITY], 5)
}

/// Exhaustive expressions over `O`, `U`, `E`, `[2]`, `[-2]` with at most 8
/// crossings.
pub fn sweep_corpus() -> Vec<Expr> {
    exhaustive(&[Expr::Pos, Expr::Neg, Expr::IDENTITY, Expr::Int(2), Expr::Int(-2)], 6)
        .into_iter()
        .filter(|e| e.crossing_count() <= 8)
        .collect()
}

/// The corpus for state-sum sweeps: small expressions plus the named ones.
pub fn state_corpus() -> Vec<Expr> {
    let mut out = small_corpus();
    out.extend(named_corpus().into_iter().filter(|e| e.crossing_count() <= 8));
    out
}

pub fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![Just(Expr::Pos), Just(Expr::Neg), (-4i64..=4).prop_map(Expr::Int)]
}

/// Random expressions of bounded depth.
pub fn expr(depth: u32) -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(depth, 48, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::cross),
            prop::collection::vec(inner, 2..=4).prop_map(Expr::concat),
        ]
    })
}

/// Random expressions with at most `max` crossings.
pub fn expr_with_crossings(max: u64) -> impl Strategy<Value = Expr> {
    expr(5).prop_filter("too many crossings", move |e| e.crossing_count() <= max)
}
