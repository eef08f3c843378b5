//! Kronecker-delta tensors for smoothed tangles.
//!
//! Each smoothing contributes two deltas on the four labels of its site.
//! Tangle sum and closure identify labels; a delta whose two ends meet
//! becomes a closed loop. Deltas remember the sequence of site arcs they
//! pass through, so closed loops record which sites they touch.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ConnClass, ConnValue};
use crate::bracket::{expand_crossings, smoothing, Label, RawBracket, State, StateEvaluator};
use crate::expr::{Expr, Leaf};
use crate::{Capacity, Error};

/// An index label. Fresh labels come from a [`LabelGen`].
pub type Index = u32;

const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error("index {0} occurs more than twice")]
    Valence(Index),
    #[error("index {0} is not free")]
    NotFree(Index),
}

#[derive(Debug, Default)]
pub struct LabelGen {
    next: Index,
}

impl LabelGen {
    pub fn new() -> LabelGen {
        LabelGen::default()
    }

    pub fn fresh(&mut self) -> Index {
        self.next += 1;
        self.next
    }

    fn four(&mut self) -> [Index; 4] {
        [self.fresh(), self.fresh(), self.fresh(), self.fresh()]
    }
}

/// Which arc of a smoothing site. With ends `a, b` on top and `c, d` below:
/// `Top` is `ab`, `Bottom` is `cd`, `Left` is `ac`, `Right` is `bd`,
/// `Backslash` is `ad` and `Slash` is `bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
    Backslash,
    Slash,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Incidence {
    /// 1-based crossing number.
    pub site: usize,
    pub side: Side,
}

impl fmt::Display for Incidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.site, self.side)
    }
}

/// An open strand: a delta between two labels, with the arcs it runs
/// through from `ends[0]` to `ends[1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    pub ends: [Index; 2],
    pub path: Vec<Incidence>,
}

impl Delta {
    fn reversed(mut self) -> Delta {
        self.ends.reverse();
        self.path.reverse();
        self
    }
}

/// A closed loop, stored in a canonical rotation and direction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Loop(Vec<Incidence>);

impl Loop {
    pub fn new(cycle: Vec<Incidence>) -> Loop {
        let n = cycle.len();
        let rev: Vec<Incidence> = cycle.iter().rev().copied().collect();
        let best = (0..n)
            .flat_map(|r| [rotate(&cycle, r), rotate(&rev, r)])
            .min()
            .unwrap_or_default();
        Loop(best)
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.0
    }

    pub fn touches(&self, site: usize) -> usize {
        self.0.iter().filter(|i| i.site == site).count()
    }
}

fn rotate(v: &[Incidence], r: usize) -> Vec<Incidence> {
    v[r..].iter().chain(&v[..r]).copied().collect()
}

/// `A^a B^b`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };
    pub const A: Monomial = Monomial { a: 1, b: 0 };
    pub const B: Monomial = Monomial { a: 0, b: 1 };

    pub fn of_label(l: Label) -> Monomial {
        match l {
            Label::A => Monomial::A,
            Label::B => Monomial::B,
        }
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, rhs: Monomial) -> Monomial {
        Monomial { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

/// A monomial times a product of deltas and loop factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub coeff: Monomial,
    pub deltas: Vec<Delta>,
    pub loops: Vec<Loop>,
    /// Free labels. Four-ended tangles list them as `[NW, NE, SW, SE]`.
    pub free: Vec<Index>,
}

/// Two deltas pairing `labels = [a, b, c, d]` as `kind` dictates.
pub fn smoothing_on(kind: ConnClass, labels: [Index; 4], site: Option<usize>) -> DeltaTerm {
    let [a, b, c, d] = labels;
    let (p, q) = match kind {
        ConnClass::H => (([a, b], Side::Top), ([c, d], Side::Bottom)),
        ConnClass::V => (([a, c], Side::Left), ([b, d], Side::Right)),
        ConnClass::X => (([a, d], Side::Backslash), ([b, c], Side::Slash)),
    };
    let delta = |(ends, side): ([Index; 2], Side)| Delta {
        ends,
        path: site.map(|site| Incidence { site, side }).into_iter().collect(),
    };
    DeltaTerm { coeff: Monomial::ONE, deltas: vec![delta(p), delta(q)], loops: Vec::new(), free: labels.to_vec() }
}

/// The pairing tensor of `kind` on fresh labels.
pub fn smoothing_tensor(kind: ConnClass, site: Option<usize>, gen: &mut LabelGen) -> DeltaTerm {
    smoothing_on(kind, gen.four(), site)
}

impl DeltaTerm {
    /// Identifies the free labels in each pair of `wiring`. Strands glued
    /// end to end become one; a strand glued to itself becomes a loop.
    pub fn identify(mut self, wiring: &[(Index, Index)]) -> Result<DeltaTerm, TensorError> {
        let mut count: HashMap<Index, usize> = HashMap::new();
        for d in &self.deltas {
            for &e in &d.ends {
                *count.entry(e).or_default() += 1;
            }
        }
        if let Some((&x, _)) = count.iter().find(|&(_, &c)| c > 2) {
            return Err(TensorError::Valence(x));
        }
        for &(x, y) in wiring {
            for z in [x, y] {
                if count.get(&z) != Some(&1) {
                    return Err(TensorError::NotFree(z));
                }
            }
            for d in &mut self.deltas {
                for e in &mut d.ends {
                    if *e == y {
                        *e = x;
                    }
                }
            }
            count.remove(&y);
            count.insert(x, 2);
            self.free.retain(|&f| f != x && f != y);
        }
        // Labels shared by two deltas are contracted.
        let mut shared: Vec<Index> = count.into_iter().filter(|&(_, c)| c == 2).map(|(x, _)| x).collect();
        shared.sort_unstable();
        for x in shared {
            self.glue(x);
        }
        self.free.retain(|f| self.deltas.iter().any(|d| d.ends.contains(f)));
        Ok(self)
    }

    fn glue(&mut self, x: Index) {
        let hits: Vec<usize> = (0..self.deltas.len()).filter(|&i| self.deltas[i].ends.contains(&x)).collect();
        match hits[..] {
            [i] => {
                let d = self.deltas.swap_remove(i);
                self.loops.push(Loop::new(d.path));
            }
            [i, j] => {
                let second = self.deltas.swap_remove(j);
                let first = self.deltas.swap_remove(i);
                let first = if first.ends[1] == x { first } else { first.reversed() };
                let second = if second.ends[0] == x { second } else { second.reversed() };
                let mut path = first.path;
                path.extend(second.path);
                self.deltas.push(Delta { ends: [first.ends[0], second.ends[1]], path });
            }
            _ => unreachable!("label {x} not shared"),
        }
    }

    /// `t` and `s` side by side, then `wiring` applied. Labels the two
    /// terms share are contracted as well.
    pub fn contract(t: DeltaTerm, s: DeltaTerm, wiring: &[(Index, Index)]) -> Result<DeltaTerm, TensorError> {
        let mut free = t.free;
        for x in s.free {
            if !free.contains(&x) {
                free.push(x);
            }
        }
        let mut loops = t.loops;
        loops.extend(s.loops);
        let mut deltas = t.deltas;
        deltas.extend(s.deltas);
        DeltaTerm { coeff: t.coeff * s.coeff, deltas, loops, free }.identify(wiring)
    }

    /// Tangle sum: NE of `self` meets NW of `rhs`, SE meets SW.
    pub fn sum(self, rhs: DeltaTerm) -> Result<DeltaTerm, TensorError> {
        let (t, s) = (self.corners(), rhs.corners());
        let mut out = DeltaTerm::contract(self, rhs, &[(t[NE], s[NW]), (t[SE], s[SW])])?;
        out.free = vec![t[NW], s[NE], t[SW], s[SE]];
        Ok(out)
    }

    /// Mirror rotation: relabels the corners.
    pub fn cross(mut self) -> DeltaTerm {
        let t = self.corners();
        self.free = vec![t[NE], t[SE], t[NW], t[SW]];
        self
    }

    /// Numerator closure: NE meets NW, SE meets SW.
    pub fn close(self) -> Result<DeltaTerm, TensorError> {
        let t = self.corners();
        let mut out = self.identify(&[(t[NW], t[NE]), (t[SW], t[SE])])?;
        out.free.clear();
        Ok(out)
    }

    fn corners(&self) -> [Index; 4] {
        self.free.as_slice().try_into().expect("four-ended term")
    }

    /// Boundary pairing and loop count of a four-ended term.
    pub fn conn_value(&self) -> Option<ConnValue> {
        let t: [Index; 4] = self.free.as_slice().try_into().ok()?;
        let partner = self.deltas.iter().find_map(|d| match d.ends {
            [x, y] if x == t[NW] => Some(y),
            [y, x] if x == t[NW] => Some(y),
            _ => None,
        })?;
        let class = match partner {
            p if p == t[NE] => ConnClass::H,
            p if p == t[SW] => ConnClass::V,
            p if p == t[SE] => ConnClass::X,
            _ => return None,
        };
        Some(ConnValue::new(class, self.loops.len() as u32))
    }
}

/// A formal sum of delta terms sharing the same free labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSum {
    pub terms: Vec<DeltaTerm>,
}

impl TensorSum {
    /// Distributes the tangle sum over both sums.
    pub fn sum(&self, rhs: &TensorSum) -> Result<TensorSum, TensorError> {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for t in &self.terms {
            for s in &rhs.terms {
                terms.push(t.clone().sum(s.clone())?);
            }
        }
        Ok(TensorSum { terms })
    }

    pub fn cross(self) -> TensorSum {
        TensorSum { terms: self.terms.into_iter().map(DeltaTerm::cross).collect() }
    }

    pub fn close(self) -> Result<TensorSum, TensorError> {
        Ok(TensorSum { terms: self.terms.into_iter().map(DeltaTerm::close).collect::<Result<_, _>>()? })
    }

    /// `sum coeff * d^loops` over closed terms.
    pub fn raw_bracket(&self) -> RawBracket {
        let mut raw = RawBracket::default();
        for t in &self.terms {
            raw.add_state(t.coeff.a, t.coeff.b, t.loops.len() as u32);
        }
        raw
    }
}

/// `A` times the horizontal smoothing plus `B` times the vertical one for a
/// positive crossing; the other way round for a negative one.
pub fn crossing_tensor(positive: bool, site: usize, gen: &mut LabelGen) -> TensorSum {
    let labels = gen.four();
    let term = |label| {
        let mut t = smoothing_on(smoothing(positive, label), labels, Some(site));
        t.coeff = Monomial::of_label(label);
        t
    };
    TensorSum { terms: vec![term(Label::A), term(Label::B)] }
}

/// Full tensor expansion of `e`: one term per state, in no particular order.
pub fn expand_tensor(e: &Expr, cap: Capacity) -> Result<TensorSum, Error> {
    let e = expand_crossings(e);
    cap.check(e.crossing_count())?;
    let mut gen = LabelGen::new();
    let mut site = 0;
    Ok(build(&e, &mut |leaf, gen| match leaf {
        Leaf::Int(_) => TensorSum { terms: vec![smoothing_tensor(ConnClass::H, None, gen)] },
        _ => {
            site += 1;
            crossing_tensor(leaf == Leaf::Pos, site, gen)
        }
    }, &mut gen)?)
}

fn build(e: &Expr, leaf: &mut impl FnMut(Leaf, &mut LabelGen) -> TensorSum, gen: &mut LabelGen) -> Result<TensorSum, TensorError> {
    match e {
        Expr::Cross(inner) => Ok(build(inner, leaf, gen)?.cross()),
        Expr::Concat(parts) => {
            let mut acc = build(&parts[0], leaf, gen)?;
            for p in &parts[1..] {
                acc = acc.sum(&build(p, leaf, gen)?)?;
            }
            Ok(acc)
        }
        _ => Ok(leaf(Leaf::from_expr(e).expect("leaf"), gen)),
    }
}

/// The four-ended term of `e` smoothed by `state`, before closure.
pub fn state_term(e: &Expr, state: State) -> Result<DeltaTerm, Error> {
    let e = expand_crossings(e);
    if e.crossing_count() != u64::from(state.len()) {
        return Err(Error::Invalid(format!(
            "state has {} labels but the expression has {} crossings",
            state.len(),
            e.crossing_count()
        )));
    }
    let mut gen = LabelGen::new();
    let mut site = 0;
    let sum = build(
        &e,
        &mut |leaf, gen| {
            let t = match leaf {
                Leaf::Int(_) => smoothing_tensor(ConnClass::H, None, gen),
                _ => {
                    let label = state.label(site);
                    site += 1;
                    let mut t = smoothing_tensor(smoothing(leaf == Leaf::Pos, label), Some(site), gen);
                    t.coeff = Monomial::of_label(label);
                    t
                }
            };
            TensorSum { terms: vec![t] }
        },
        &mut gen,
    )?;
    Ok(sum.terms.into_iter().next().expect("one term"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteKind {
    /// Both arcs of the site lie on one loop.
    #[serde(rename = "self")]
    SelfLoop,
    /// The arcs lie on two different loops.
    Joining,
}

impl fmt::Display for SiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            SiteKind::SelfLoop => "self",
            SiteKind::Joining => "joining",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopStructure {
    /// Sorted canonical loops.
    pub loops: Vec<Loop>,
    /// Kind of site `i + 1`.
    pub sites: Vec<SiteKind>,
}

impl LoopStructure {
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn site_kind(&self, site: usize) -> SiteKind {
        self.sites[site - 1]
    }
}

pub fn state_structure(e: &Expr, state: State) -> Result<LoopStructure, Error> {
    state_structure_with(e, state, Capacity::DEFAULT)
}

pub fn state_structure_with(e: &Expr, state: State, cap: Capacity) -> Result<LoopStructure, Error> {
    cap.check(u64::from(state.len()))?;
    let closed = state_term(e, state)?.close()?;
    if !closed.deltas.is_empty() {
        return Err(Error::Internal("open strands after closure".into()));
    }
    let mut loops = closed.loops;
    loops.sort();
    let sites = (1..=state.len() as usize)
        .map(|s| {
            let on: Vec<usize> = loops.iter().map(|l| l.touches(s)).collect();
            if on.contains(&2) {
                SiteKind::SelfLoop
            } else {
                SiteKind::Joining
            }
        })
        .collect();
    Ok(LoopStructure { loops, sites })
}

/// Classifies `site` (1-based) by leaving it as a crossing: the component
/// count is unchanged exactly when the site touches a single loop.
pub fn classify_site_by_toggle(e: &Expr, state: State, site: usize) -> Result<SiteKind, Error> {
    let ev = StateEvaluator::new(e, Capacity::new(crate::HARD_MAX_CROSSINGS).unwrap())?;
    if ev.crossings() != state.len() || site == 0 || site > state.len() as usize {
        return Err(Error::Invalid(format!("site {site} or state {state} does not fit {}", ev.expanded())));
    }
    Ok(if ev.loops(state, Some(site - 1)) == ev.loops(state, None) {
        SiteKind::SelfLoop
    } else {
        SiteKind::Joining
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeLabel {
    Merge,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiteInfo {
    pub id: usize,
    pub kind: SiteKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeVertex {
    #[serde(skip)]
    pub state: State,
    /// `0` for `A`, `1` for `B`, in crossing order.
    pub bits: String,
    pub loops: usize,
    pub sites: Vec<SiteInfo>,
    #[serde(skip)]
    pub structure: LoopStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeEdge {
    pub from: String,
    pub to: String,
    pub site: usize,
    pub label: EdgeLabel,
}

/// All smoothing states with single-label flips `A -> B` as edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateCube {
    pub n: u32,
    /// In increasing binary order of [`State::bits`].
    pub vertices: Vec<CubeVertex>,
    pub edges: Vec<CubeEdge>,
}

impl StateCube {
    pub fn vertex(&self, state: State) -> &CubeVertex {
        &self.vertices[state.bits() as usize]
    }

    /// `sum A^a B^b d^loops` over vertices.
    pub fn raw_bracket(&self) -> RawBracket {
        let mut raw = RawBracket::default();
        for v in &self.vertices {
            raw.add_state(self.n - v.state.b_count(), v.state.b_count(), v.loops as u32);
        }
        raw
    }
}

pub fn build_cube(e: &Expr) -> Result<StateCube, Error> {
    build_cube_with(e, Capacity::DEFAULT)
}

pub fn build_cube_with(e: &Expr, cap: Capacity) -> Result<StateCube, Error> {
    let n = cap.check(expand_crossings(e).crossing_count())?;
    let vertices = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let state = State::new(bits, n);
            let structure = state_structure_with(e, state, cap)?;
            let sites = structure
                .sites
                .iter()
                .enumerate()
                .map(|(i, &kind)| SiteInfo { id: i + 1, kind })
                .collect();
            Ok(CubeVertex { state, bits: state.bit_string(), loops: structure.loop_count(), sites, structure })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut edges = Vec::new();
    for v in &vertices {
        for i in 0..n as usize {
            if v.state.label(i) == Label::B {
                continue;
            }
            let w = &vertices[v.state.flip(i).bits() as usize];
            let label = match w.loops as i64 - v.loops as i64 {
                -1 => EdgeLabel::Merge,
                1 => EdgeLabel::Split,
                d => {
                    return Err(Error::Internal(format!(
                        "flipping site {} of {} changes the loop count by {d}",
                        i + 1,
                        v.state
                    )))
                }
            };
            edges.push(CubeEdge { from: v.bits.clone(), to: w.bits.clone(), site: i + 1, label });
        }
    }
    Ok(StateCube { n, vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    fn glued(x: ConnClass, y: ConnClass) -> Option<ConnValue> {
        let mut gen = LabelGen::new();
        let t = smoothing_tensor(x, Some(1), &mut gen);
        let s = smoothing_tensor(y, Some(2), &mut gen);
        t.sum(s).unwrap().conn_value()
    }

    #[test]
    fn smoothing_pairings() {
        let t = smoothing_on(ConnClass::H, [1, 2, 3, 4], None);
        assert_eq!(t.deltas.iter().map(|d| d.ends).collect::<Vec<_>>(), vec![[1, 2], [3, 4]]);
        let t = smoothing_on(ConnClass::V, [1, 2, 3, 4], None);
        assert_eq!(t.deltas.iter().map(|d| d.ends).collect::<Vec<_>>(), vec![[1, 3], [2, 4]]);
        let t = smoothing_on(ConnClass::X, [1, 2, 3, 4], Some(7));
        assert_eq!(t.deltas.iter().map(|d| d.ends).collect::<Vec<_>>(), vec![[1, 4], [2, 3]]);
        assert_eq!(t.deltas[1].path, vec![Incidence { site: 7, side: Side::Slash }]);
        for c in ConnClass::ALL {
            assert_eq!(smoothing_on(c, [1, 2, 3, 4], None).conn_value(), Some(ConnValue::new(c, 0)));
        }
    }

    #[test]
    fn products_match_the_algebra() {
        for x in ConnClass::ALL {
            for y in ConnClass::ALL {
                assert_eq!(glued(x, y), Some(ConnValue::new(x, 0) * ConnValue::new(y, 0)), "{x} {y}");
            }
        }
        assert_eq!(glued(ConnClass::V, ConnClass::V), Some(ConnValue::new(ConnClass::V, 1)));
        assert_eq!(glued(ConnClass::X, ConnClass::X), Some(ConnValue::IDENTITY));
    }

    #[test]
    fn rotation() {
        let mut gen = LabelGen::new();
        for c in ConnClass::ALL {
            let t = smoothing_tensor(c, None, &mut gen).cross();
            assert_eq!(t.conn_value(), Some(ConnValue::new(c.cross(), 0)));
        }
    }

    #[test]
    fn valence() {
        let t = smoothing_on(ConnClass::H, [1, 2, 3, 4], None);
        let s = smoothing_on(ConnClass::H, [1, 5, 6, 7], None);
        let mut ts = DeltaTerm::contract(t.clone(), s, &[]).unwrap();
        assert_eq!(ts.deltas.len(), 3);
        assert_eq!(ts.free, vec![2, 3, 4, 5, 6, 7]);
        ts.deltas.push(Delta { ends: [2, 8], path: vec![] });
        ts.deltas.push(Delta { ends: [2, 9], path: vec![] });
        assert_eq!(ts.identify(&[]), Err(TensorError::Valence(2)));
        let v = smoothing_on(ConnClass::H, [11, 12, 13, 14], None);
        assert_eq!(DeltaTerm::contract(t, v, &[(2, 99)]), Err(TensorError::NotFree(99)));
    }

    #[test]
    fn loop_canonical_form() {
        let i = |site, side| Incidence { site, side };
        let a = Loop::new(vec![i(2, Side::Top), i(1, Side::Left), i(3, Side::Right)]);
        let b = Loop::new(vec![i(3, Side::Right), i(1, Side::Left), i(2, Side::Top)]);
        let c = Loop::new(vec![i(1, Side::Left), i(3, Side::Right), i(2, Side::Top)]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.incidences()[0], i(1, Side::Left));
    }

    #[test]
    fn crossing_expansion() {
        let mut gen = LabelGen::new();
        let x = crossing_tensor(true, 1, &mut gen);
        let y = crossing_tensor(true, 2, &mut gen);
        let xy = x.sum(&y).unwrap();
        assert_eq!(xy.terms.len(), 4);
        assert_eq!(xy.close().unwrap().raw_bracket().to_string(), "A^2d^2 + 2ABd + B^2d^2");
        let neg = crossing_tensor(false, 1, &mut gen);
        assert_eq!(neg.terms[0].coeff, Monomial::A);
        assert_eq!(neg.terms[0].conn_value().unwrap().class, ConnClass::V);
    }

    #[test]
    fn hopf_states() {
        let hopf = parse("O O").unwrap();
        let aa = state_structure(&hopf, st("AA")).unwrap();
        assert_eq!(aa.loop_count(), 2);
        assert_eq!(aa.sites, vec![SiteKind::Joining; 2]);
        let ab = state_structure(&hopf, st("AB")).unwrap();
        assert_eq!(ab.loop_count(), 1);
        assert_eq!(ab.sites, vec![SiteKind::SelfLoop; 2]);
        assert_eq!(classify_site_by_toggle(&hopf, st("AA"), 1).unwrap(), SiteKind::Joining);
        assert_eq!(classify_site_by_toggle(&hopf, st("AB"), 1).unwrap(), SiteKind::SelfLoop);
        assert!(classify_site_by_toggle(&hopf, st("AB"), 3).is_err());
    }

    #[test]
    fn trefoil_state() {
        let trefoil = parse("O O O").unwrap();
        let s = state_structure(&trefoil, st("BAB")).unwrap();
        assert_eq!(s.loop_count(), 2);
        let total: usize = s.loops.iter().map(|l| l.incidences().len()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn cubes() {
        let hopf = build_cube(&parse("O O").unwrap()).unwrap();
        let loops: Vec<usize> = ["AA", "AB", "BA", "BB"].iter().map(|s| hopf.vertex(st(s)).loops).collect();
        assert_eq!(loops, [2, 1, 1, 2]);
        assert_eq!(hopf.edges.len(), 4);
        assert_eq!(hopf.edges[0], CubeEdge { from: "00".into(), to: "10".into(), site: 1, label: EdgeLabel::Merge });

        let trefoil = build_cube(&parse("O O O").unwrap()).unwrap();
        assert_eq!(trefoil.edges.len(), 12);
        assert_eq!(trefoil.raw_bracket(), crate::bracket::raw_bracket(&parse("O O O").unwrap()).unwrap());
    }

    #[test]
    fn cube_json() {
        let cube = build_cube(&parse("O").unwrap()).unwrap();
        let j = serde_json::to_value(&cube).unwrap();
        assert_eq!(
            j,
            serde_json::json!({
                "n": 1,
                "vertices": [
                    {"bits": "0", "loops": 2, "sites": [{"id": 1, "kind": "joining"}]},
                    {"bits": "1", "loops": 1, "sites": [{"id": 1, "kind": "self"}]}
                ],
                "edges": [{"from": "0", "to": "1", "site": 1, "label": "merge"}]
            })
        );
    }
}
