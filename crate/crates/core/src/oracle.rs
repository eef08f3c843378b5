//! Strand tracing on an explicit port diagram.
//!
//! Nothing here uses the crossing algebra. Every crossing gets four ports,
//! tangle operations only add arcs between ports, and components are the
//! classes of a union-find over ports. Used to check the algebra.

use crate::bracket::{Label, State};
use crate::expr::{Expr, Leaf};
use crate::Error;

const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

/// A flat diagram of a four-ended tangle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    /// Number of ports; ports are `0..ports`.
    pub ports: usize,
    /// Ports `[NW, NE, SW, SE]` of each crossing, with the sign of the
    /// crossing (`true` for `O`).
    pub crossings: Vec<([usize; 4], bool)>,
    pub arcs: Vec<(usize, usize)>,
    /// Outer ends `[NW, NE, SW, SE]`.
    pub boundary: [usize; 4],
}

impl Diagram {
    fn port(&mut self) -> usize {
        self.ports += 1;
        self.ports - 1
    }

    fn identity(&mut self) -> [usize; 4] {
        let b = [self.port(), self.port(), self.port(), self.port()];
        self.arcs.push((b[NW], b[NE]));
        self.arcs.push((b[SW], b[SE]));
        b
    }

    fn crossing(&mut self, positive: bool) -> [usize; 4] {
        let b = [self.port(), self.port(), self.port(), self.port()];
        self.crossings.push((b, positive));
        b
    }

    fn sum(&mut self, t: [usize; 4], s: [usize; 4]) -> [usize; 4] {
        self.arcs.push((t[NE], s[NW]));
        self.arcs.push((t[SE], s[SW]));
        [t[NW], s[NE], t[SW], s[SE]]
    }

    fn build(&mut self, e: &Expr) -> [usize; 4] {
        match e {
            Expr::Pos => self.crossing(true),
            Expr::Neg => self.crossing(false),
            Expr::Int(0) => self.identity(),
            Expr::Int(n) => {
                let mut acc = self.crossing(*n > 0);
                for _ in 1..n.unsigned_abs() {
                    let next = self.crossing(*n > 0);
                    acc = self.sum(acc, next);
                }
                acc
            }
            Expr::Cross(inner) => {
                let b = self.build(inner);
                // NW -> SW, NE -> NW, SW -> SE, SE -> NE
                [b[NE], b[SE], b[NW], b[SW]]
            }
            Expr::Concat(parts) => {
                let mut acc = self.build(&parts[0]);
                for p in &parts[1..] {
                    let next = self.build(p);
                    acc = self.sum(acc, next);
                }
                acc
            }
        }
    }

    /// Components of the numerator closure, with each crossing joining the
    /// ports at `pairing(index, ports)`.
    fn count_closed(&self, mut pairing: impl FnMut(usize, [usize; 4]) -> [(usize, usize); 2]) -> usize {
        let mut uf = UnionFind::new(self.ports);
        for &(a, b) in &self.arcs {
            uf.union(a, b);
        }
        for (i, &(ports, _)) in self.crossings.iter().enumerate() {
            for (a, b) in pairing(i, ports) {
                uf.union(a, b);
            }
        }
        let b = self.boundary;
        uf.union(b[NE], b[NW]);
        uf.union(b[SE], b[SW]);
        uf.classes()
    }
}

pub fn build_diagram(e: &Expr) -> Diagram {
    let mut d = Diagram::default();
    d.boundary = d.build(e);
    d
}

/// Components of the numerator closure of `e`.
pub fn trace_components(e: &Expr) -> usize {
    build_diagram(e).count_closed(|_, p| [(p[NW], p[SE]), (p[NE], p[SW])])
}

/// Loops of the numerator closure after smoothing every crossing as
/// `state` dictates. Crossings are numbered in leaf order with `[n]`
/// spelled out as `|n|` crossings.
pub fn trace_state_loops(e: &Expr, state: &State) -> Result<usize, Error> {
    let d = build_diagram(e);
    if state.len() as usize != d.crossings.len() {
        return Err(Error::Invalid(format!(
            "state has {} labels but the diagram has {} crossings",
            state.len(),
            d.crossings.len()
        )));
    }
    let signs: Vec<bool> = d.crossings.iter().map(|&(_, s)| s).collect();
    Ok(d.count_closed(|i, p| {
        let horizontal = signs[i] == (state.label(i) == Label::A);
        if horizontal {
            [(p[NW], p[NE]), (p[SW], p[SE])]
        } else {
            [(p[NW], p[SW]), (p[NE], p[SE])]
        }
    }))
}

/// Crossing signs in leaf order, `[n]` spelled out.
pub fn crossing_signs(e: &Expr) -> Vec<bool> {
    let mut out = Vec::new();
    for (_, leaf) in e.leaves() {
        match leaf {
            Leaf::Pos => out.push(true),
            Leaf::Neg => out.push(false),
            Leaf::Int(n) => out.extend(std::iter::repeat(n > 0).take(n.unsigned_abs() as usize)),
        }
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn count(s: &str) -> usize {
        trace_components(&parse(s).unwrap())
    }

    #[test]
    fn diagrams() {
        let d = build_diagram(&Expr::Int(1));
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.boundary, [0, 1, 2, 3]);
        assert!(d.arcs.is_empty());

        let d = build_diagram(&parse("O O").unwrap());
        assert_eq!(d.crossings.len(), 2);
        assert_eq!(d.arcs, vec![(1, 4), (3, 6)]);
        assert_eq!(d.boundary, [0, 5, 2, 7]);

        let d = build_diagram(&parse("<E>").unwrap());
        assert!(d.crossings.is_empty());
        // old NW-NE and SW-SE arcs now run NW-SW and NE-SE
        assert_eq!(d.boundary, [1, 3, 0, 2]);
        assert_eq!(d.arcs, vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn components() {
        assert_eq!(count("E"), 2);
        assert_eq!(count("<E>"), 1);
        assert_eq!(count("O"), 1);
        assert_eq!(count("2"), 2);
        assert_eq!(count("3"), 1);
        assert_eq!(count("<E> <E>"), 2);
        assert_eq!(count("<<2> <-2>> <2> <-2>"), 3);
        assert_eq!(count("[3,7,16]"), 1);
        assert_eq!(count("[16,7,3]"), 1);
        assert_eq!(count("2 <2> <-2>"), 2);
        assert_eq!(count("P(2,3,5)"), 1);
    }

    #[test]
    fn states() {
        let hopf = parse("O O").unwrap();
        let loops = |e: &Expr, s: &str| trace_state_loops(e, &s.parse().unwrap()).unwrap();
        assert_eq!(loops(&hopf, "AA"), 2);
        assert_eq!(loops(&hopf, "AB"), 1);
        assert_eq!(loops(&hopf, "BA"), 1);
        assert_eq!(loops(&hopf, "BB"), 2);
        let trefoil = parse("O O O").unwrap();
        assert_eq!(loops(&trefoil, "BBB"), 3);
        assert_eq!(loops(&trefoil, "AAA"), 2);
        assert_eq!(loops(&trefoil, "BAB"), 2);
        assert_eq!(loops(&parse("U").unwrap(), "A"), 1);
        assert_eq!(loops(&parse("U").unwrap(), "B"), 2);
        assert!(trace_state_loops(&hopf, &"A".parse().unwrap()).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(crossing_signs(&parse("2 U <-1> E").unwrap()), vec![true, true, false, false]);
    }
}
