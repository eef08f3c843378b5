//! Series-parallel checkerboard networks and mod-2 Laplacians.
//!
//! Tangle sum is a parallel join and mirror rotation is the planar dual,
//! so the conductance of the network of a rational tangle is its fraction.
//! Closing the network and counting the GF(2) nullity of its Laplacian
//! gives the component count of the closure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::Expr;
use crate::rational::{Fraction, FractionError};

/// A two-terminal series-parallel network between terminals `N` and `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SPTree {
    /// A conductor of conductance `+1` or `-1`.
    Edge(i8),
    /// No connection: conductance 0.
    Open,
    /// Terminals identified: conductance infinity.
    Short,
    Par(Vec<SPTree>),
    Ser(Vec<SPTree>),
}

impl SPTree {
    pub fn edge_count(&self) -> usize {
        match self {
            SPTree::Edge(_) => 1,
            SPTree::Open | SPTree::Short => 0,
            SPTree::Par(c) | SPTree::Ser(c) => c.iter().map(SPTree::edge_count).sum(),
        }
    }

    /// Whether the network connects its terminals without resistance.
    pub fn joins_terminals(&self) -> bool {
        match self {
            SPTree::Short => true,
            SPTree::Edge(_) | SPTree::Open => false,
            SPTree::Par(c) => c.iter().any(SPTree::joins_terminals),
            SPTree::Ser(c) => c.iter().all(SPTree::joins_terminals),
        }
    }
}

impl fmt::Display for SPTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, c: &[SPTree]| {
            write!(f, "{name}(")?;
            for (i, t) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")
        };
        match self {
            SPTree::Edge(1) => f.write_str("Edge"),
            SPTree::Edge(_) => f.write_str("-Edge"),
            SPTree::Open => f.write_str("Open"),
            SPTree::Short => f.write_str("Short"),
            SPTree::Par(c) => list(f, "Par", c),
            SPTree::Ser(c) => list(f, "Ser", c),
        }
    }
}

pub fn sp_network(e: &Expr) -> SPTree {
    match e {
        Expr::Pos => SPTree::Edge(1),
        Expr::Neg => SPTree::Edge(-1),
        Expr::Int(0) => SPTree::Open,
        Expr::Int(n) => {
            let sign = if *n > 0 { 1 } else { -1 };
            if n.unsigned_abs() == 1 {
                SPTree::Edge(sign)
            } else {
                SPTree::Par(vec![SPTree::Edge(sign); n.unsigned_abs() as usize])
            }
        }
        Expr::Cross(inner) => dualize(&sp_network(inner)),
        Expr::Concat(parts) => SPTree::Par(parts.iter().map(sp_network).collect()),
    }
}

/// Planar dual: series and parallel swap, as do open and short.
pub fn dualize(t: &SPTree) -> SPTree {
    match t {
        SPTree::Edge(s) => SPTree::Edge(*s),
        SPTree::Open => SPTree::Short,
        SPTree::Short => SPTree::Open,
        SPTree::Par(c) => SPTree::Ser(c.iter().map(dualize).collect()),
        SPTree::Ser(c) => SPTree::Par(c.iter().map(dualize).collect()),
    }
}

/// Flattens nested joins, drops `Open` from parallel and `Short` from
/// series joins, and unwraps single children.
pub fn normalize(t: &SPTree) -> SPTree {
    fn join(children: &[SPTree], parallel: bool) -> SPTree {
        let (unit, wrap): (SPTree, fn(Vec<SPTree>) -> SPTree) =
            if parallel { (SPTree::Open, SPTree::Par) } else { (SPTree::Short, SPTree::Ser) };
        let mut flat = Vec::new();
        for c in children.iter().map(normalize) {
            match c {
                SPTree::Par(inner) if parallel => flat.extend(inner),
                SPTree::Ser(inner) if !parallel => flat.extend(inner),
                c if c == unit => {}
                c => flat.push(c),
            }
        }
        match flat.len() {
            0 => unit,
            1 => flat.pop().unwrap(),
            _ => wrap(flat),
        }
    }
    match t {
        SPTree::Par(c) => join(c, true),
        SPTree::Ser(c) => join(c, false),
        leaf => leaf.clone(),
    }
}

/// Exact conductance, with `Edge(-1)` counted as `-1`.
pub fn conductance(t: &SPTree) -> Result<Fraction, FractionError> {
    match t {
        SPTree::Edge(s) => Ok(Fraction::integer(*s)),
        SPTree::Open => Ok(Fraction::zero()),
        SPTree::Short => Ok(Fraction::infinity()),
        SPTree::Par(c) => c.iter().try_fold(Fraction::zero(), |acc, t| acc.checked_add(&conductance(t)?)),
        SPTree::Ser(c) => Ok(c
            .iter()
            .try_fold(Fraction::zero(), |acc, t| acc.checked_add(&conductance(t)?.recip()))?
            .recip()),
    }
}

/// An undirected multigraph; self-loops allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraph {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

impl PlaneGraph {
    pub fn new(nodes: usize, edges: Vec<[usize; 2]>) -> Result<PlaneGraph, String> {
        if let Some(e) = edges.iter().find(|e| e[0] >= nodes || e[1] >= nodes) {
            return Err(format!("edge {e:?} leaves the {nodes} nodes"));
        }
        Ok(PlaneGraph { nodes, edges })
    }
}

/// Realizes `t` as a graph whose nodes are shaded regions. Node 0 is `N`,
/// node 1 is `S` unless the network joins them.
///
/// With `closed`, the graph is that of the numerator closure: a parallel
/// join of several terminal-joining parts traps a free loop between each
/// adjacent pair, recorded as an isolated node.
pub fn to_multigraph(t: &SPTree, closed: bool) -> PlaneGraph {
    let mut b = Builder { parent: vec![0, 1], edges: Vec::new(), closed };
    b.realize(t, 0, 1);
    b.finish()
}

struct Builder {
    parent: Vec<usize>,
    edges: Vec<[usize; 2]>,
    closed: bool,
}

impl Builder {
    fn node(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn realize(&mut self, t: &SPTree, n: usize, s: usize) {
        match t {
            SPTree::Edge(_) => self.edges.push([n, s]),
            SPTree::Open => {}
            SPTree::Short => {
                let (a, b) = (self.find(n), self.find(s));
                self.parent[a.max(b)] = a.min(b);
            }
            SPTree::Par(children) => {
                for c in children {
                    self.realize(c, n, s);
                }
                if self.closed {
                    let joining = children.iter().filter(|c| c.joins_terminals()).count();
                    for _ in 1..joining {
                        self.node();
                    }
                }
            }
            SPTree::Ser(children) => {
                let mut from = n;
                for (i, c) in children.iter().enumerate() {
                    let to = if i + 1 == children.len() { s } else { self.node() };
                    self.realize(c, from, to);
                    from = to;
                }
            }
        }
    }

    fn finish(mut self) -> PlaneGraph {
        let mut id = vec![usize::MAX; self.parent.len()];
        let mut nodes = 0;
        for x in 0..self.parent.len() {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = nodes;
                nodes += 1;
            }
            id[x] = id[r];
        }
        let edges = self.edges.iter().map(|&[u, v]| [id[u], id[v]]).collect();
        PlaneGraph { nodes, edges }
    }
}

/// Square matrix over GF(2), rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl GF2Matrix {
    pub fn zeros(n: usize) -> GF2Matrix {
        GF2Matrix { n, rows: vec![vec![0; n.div_ceil(64)]; n] }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> GF2Matrix {
        let mut m = GF2Matrix::zeros(rows.len());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rows.len(), "matrix is not square");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.rows[i][j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i][j / 64] ^= 1 << (j % 64);
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Degrees mod 2 on the diagonal, edge multiplicities mod 2 elsewhere.
/// A self-loop adds 2 to its node's degree.
pub fn mod2_laplacian(g: &PlaneGraph) -> GF2Matrix {
    let mut m = GF2Matrix::zeros(g.nodes);
    for &[u, v] in &g.edges {
        if u != v {
            m.flip(u, u);
            m.flip(v, v);
            m.flip(u, v);
            m.flip(v, u);
        }
    }
    m
}

pub fn nullity_gf2(m: &GF2Matrix) -> usize {
    m.size() - m.rank()
}

/// Component count of the closure of `e` by the nullity of its closed
/// checkerboard network.
pub fn laplacian_components(e: &Expr) -> usize {
    nullity_gf2(&mod2_laplacian(&to_multigraph(&sp_network(e), true)))
}
