//! Bracket state sums.
//!
//! A state picks an `A` or `B` smoothing at every crossing. Substituting
//! the smoothings into the expression leaves a crossing-free tangle whose
//! closure loop count comes straight from the crossing algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{eval_with, ConnClass, ConnValue};
use crate::expr::{Expr, Leaf};
use crate::{Capacity, Error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    A,
    B,
}

/// Pairing left behind by smoothing a crossing of the given sign.
pub fn smoothing(positive: bool, label: Label) -> ConnClass {
    match (positive, label) {
        (true, Label::A) | (false, Label::B) => ConnClass::H,
        (true, Label::B) | (false, Label::A) => ConnClass::V,
    }
}

/// A choice of label per crossing. Bit `i` is crossing `i + 1`, set for `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    bits: u64,
    len: u32,
}

impl State {
    /// # Panics
    ///
    /// Panics if `len > 64` or `bits` has a bit set at or above `len`.
    pub fn new(bits: u64, len: u32) -> State {
        assert!(len <= 64, "state longer than 64 crossings");
        assert!(len == 64 || bits >> len == 0, "state bits out of range");
        State { bits, len }
    }

    pub fn all_a(len: u32) -> State {
        State::new(0, len)
    }

    /// Every state on `len` crossings in increasing binary order.
    pub fn all(len: u32) -> impl Iterator<Item = State> {
        assert!(len < 64);
        (0..1u64 << len).map(move |bits| State::new(bits, len))
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> u32 {
        self.len
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn label(self, i: usize) -> Label {
        if self.bits >> i & 1 == 1 {
            Label::B
        } else {
            Label::A
        }
    }

    pub fn labels(self) -> impl Iterator<Item = Label> {
        (0..self.len as usize).map(move |i| self.label(i))
    }

    pub fn flip(self, i: usize) -> State {
        State::new(self.bits ^ (1 << i), self.len)
    }

    pub fn b_count(self) -> u32 {
        self.bits.count_ones()
    }

    /// `0` for `A`, `1` for `B`, in crossing order.
    pub fn bit_string(self) -> String {
        self.labels().map(|l| if l == Label::A { '0' } else { '1' }).collect()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.labels().try_for_each(|l| write!(f, "{l:?}"))
    }
}

impl FromStr for State {
    type Err = Error;

    /// Accepts `A`/`B` or `0`/`1` strings in crossing order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > 64 {
            return Err(Error::Invalid(format!("state {s:?} is longer than 64 labels")));
        }
        let mut bits = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                'A' | 'a' | '0' => {}
                'B' | 'b' | '1' => bits |= 1 << i,
                _ => return Err(Error::Invalid(format!("bad state label {c:?} in {s:?}"))),
            }
        }
        Ok(State::new(bits, s.chars().count() as u32))
    }
}

/// Replaces every `[n]` by `|n|` explicit crossings. `[0]` stays.
pub fn expand_crossings(e: &Expr) -> Expr {
    e.map_leaves(&mut |_, leaf| match leaf {
        Leaf::Int(n) if n != 0 => {
            let c = if n > 0 { Expr::Pos } else { Expr::Neg };
            Expr::concat(std::iter::repeat(c).take(n.unsigned_abs() as usize))
        }
        other => other.to_expr(),
    })
}

/// Crossing-free expression left by smoothing `e` according to `state`.
/// `[0]` leaves stay, a horizontal smoothing becomes `E` and a vertical
/// one `<E>`.
pub fn smoothed(e: &Expr, state: State) -> Result<Expr, Error> {
    let e = expand_crossings(e);
    check_len(&e, state)?;
    let mut i = 0;
    Ok(e.map_leaves(&mut |_, leaf| match leaf {
        Leaf::Pos | Leaf::Neg => {
            let class = smoothing(leaf == Leaf::Pos, state.label(i));
            i += 1;
            class_expr(class)
        }
        other => other.to_expr(),
    }))
}

pub(crate) fn class_expr(c: ConnClass) -> Expr {
    match c {
        ConnClass::H => Expr::IDENTITY,
        ConnClass::V => Expr::cross(Expr::IDENTITY),
        ConnClass::X => Expr::Pos,
    }
}

fn check_len(expanded: &Expr, state: State) -> Result<(), Error> {
    let n = expanded.crossing_count();
    if u64::from(state.len()) != n {
        return Err(Error::Invalid(format!("state has {} labels but the expression has {n} crossings", state.len())));
    }
    Ok(())
}

/// Evaluates closure loop counts of smoothed states of a fixed expression.
pub(crate) struct StateEvaluator {
    expanded: Expr,
    /// Per leaf: crossing index and sign, or `None` for `[0]`.
    sites: Vec<Option<(usize, bool)>>,
    crossings: u32,
}

impl StateEvaluator {
    pub(crate) fn new(e: &Expr, cap: Capacity) -> Result<StateEvaluator, Error> {
        let expanded = expand_crossings(e);
        let crossings = cap.check(expanded.crossing_count())?;
        let mut next = 0;
        let sites = expanded
            .leaves()
            .into_iter()
            .map(|(_, leaf)| match leaf {
                Leaf::Pos | Leaf::Neg => {
                    next += 1;
                    Some((next - 1, leaf == Leaf::Pos))
                }
                Leaf::Int(_) => None,
            })
            .collect();
        Ok(StateEvaluator { expanded, sites, crossings })
    }

    pub(crate) fn crossings(&self) -> u32 {
        self.crossings
    }

    pub(crate) fn expanded(&self) -> &Expr {
        &self.expanded
    }

    /// Closure loops with crossing `toggled`, if any, left as a crossing.
    pub(crate) fn loops(&self, state: State, toggled: Option<usize>) -> u32 {
        eval_with(&self.expanded, &mut |path, leaf| match self.sites[path.0 - 1] {
            Some((i, _)) if Some(i) == toggled => ConnValue::ODD,
            Some((i, positive)) => ConnValue::new(smoothing(positive, state.label(i)), 0),
            None => ConnValue::of_leaf(leaf),
        })
        .closure_components()
    }
}

/// `sum m * A^i B^j d^k` over states.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawBracket {
    terms: BTreeMap<(u32, u32, u32), u64>,
}

impl RawBracket {
    pub fn add_state(&mut self, a: u32, b: u32, loops: u32) {
        *self.terms.entry((a, b, loops)).or_insert(0) += 1;
    }

    /// Multiplicity of `A^i B^j d^k`.
    pub fn get(&self, i: u32, j: u32, k: u32) -> u64 {
        self.terms.get(&(i, j, k)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32, u32), u64)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn state_count(&self) -> u64 {
        self.terms.values().sum()
    }

    fn merge(mut self, other: RawBracket) -> RawBracket {
        for (k, v) in other.terms {
            *self.terms.entry(k).or_insert(0) += v;
        }
        self
    }

    /// `B = A^-1`, `d = -A^2 - A^-2`, before dividing by `d`.
    pub fn specialize(&self) -> LaurentPoly {
        let d = LaurentPoly::loop_value();
        self.terms.iter().fold(LaurentPoly::zero(), |acc, (&(i, j, k), &m)| {
            let term = LaurentPoly::monomial(i64::from(i) - i64::from(j), m) * d.pow(k);
            acc + term
        })
    }
}

impl fmt::Display for RawBracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let power = |f: &mut fmt::Formatter<'_>, v: &str, e: u32| match e {
            0 => Ok(()),
            1 => f.write_str(v),
            _ => write!(f, "{v}^{e}"),
        };
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(x, _), (y, _)| y.0.cmp(&x.0).then(y.2.cmp(&x.2)));
        for (n, (&(i, j, k), &m)) in keys.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if m != 1 || i + j + k == 0 {
                write!(f, "{m}")?;
            }
            power(f, "A", i)?;
            power(f, "B", j)?;
            power(f, "d", k)?;
        }
        Ok(())
    }
}

pub fn raw_bracket(e: &Expr) -> Result<RawBracket, Error> {
    raw_bracket_with(e, Capacity::DEFAULT)
}

pub fn raw_bracket_with(e: &Expr, cap: Capacity) -> Result<RawBracket, Error> {
    let ev = StateEvaluator::new(e, cap)?;
    let n = ev.crossings();
    Ok((0..1u64 << n)
        .into_par_iter()
        .fold(RawBracket::default, |mut acc, bits| {
            let s = State::new(bits, n);
            acc.add_state(n - s.b_count(), s.b_count(), ev.loops(s, None));
            acc
        })
        .reduce(RawBracket::default, RawBracket::merge))
}

pub fn bracket(e: &Expr) -> Result<LaurentPoly, Error> {
    bracket_with(e, Capacity::DEFAULT)
}

/// The specialized bracket, divided by `d` so that one loop counts `1`.
pub fn bracket_with(e: &Expr, cap: Capacity) -> Result<LaurentPoly, Error> {
    let raw = raw_bracket_with(e, cap)?;
    raw.specialize()
        .div_exact(&LaurentPoly::loop_value())
        .ok_or_else(|| Error::Internal(format!("state sum {raw} is not divisible by d")))
}

/// Laurent polynomial in `A` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> LaurentPoly {
        LaurentPoly::from_terms([(exp, coeff.into())])
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `d = -A^2 - A^-2`.
    pub fn loop_value() -> LaurentPoly {
        LaurentPoly::from_terms([(2, -1), (-2, -1)])
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        let slot = self.coeffs.entry(exp).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms by ascending exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| acc * self.clone())
    }

    /// `A -> A^-1`.
    pub fn mirror(&self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Quotient `self / rhs` when it is again a Laurent polynomial with
    /// integer coefficients.
    pub fn div_exact(&self, rhs: &LaurentPoly) -> Option<LaurentPoly> {
        let (rmin, rmax) = (rhs.min_exp()?, rhs.max_exp()?);
        let lead = rhs.coeff(rmax);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some(top) = rem.max_exp() {
            if top - rmax < rem.min_exp()? - rmin {
                return None;
            }
            let (q, r) = rem.coeff(top).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let step = LaurentPoly::monomial(top - rmax, q);
            rem = rem + -(step.clone() * rhs.clone());
            quot = quot + step;
        }
        Some(quot)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents: `-A^4 - A^-4`, `A^8 - A^4 + 1 - A^-4 + A^-8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                f.write_str("A")?;
            } else {
                write!(f, "A^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    /// `[[exponent, coefficient], ...]` by descending exponent; coefficients
    /// outside `i64` are written as decimal strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Coeff {
            Small(i64),
            Big(String),
        }
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (&e, c) in self.coeffs.iter().rev() {
            let c = c.to_i64().map_or_else(|| Coeff::Big(c.to_string()), Coeff::Small);
            seq.serialize_element(&(e, c))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn expansion() {
        assert_eq!(expand_crossings(&Expr::Int(2)), Expr::Concat(vec![Expr::Pos, Expr::Pos]));
        assert_eq!(expand_crossings(&Expr::Int(-2)), Expr::Concat(vec![Expr::Neg, Expr::Neg]));
        assert_eq!(expand_crossings(&Expr::Int(0)), Expr::Int(0));
        assert_eq!(expand_crossings(&p("<3> 1")), p("<O O O> O"));
    }

    #[test]
    fn states() {
        let s: State = "ABB".parse().unwrap();
        assert_eq!(s.bits(), 0b110);
        assert_eq!(s.to_string(), "ABB");
        assert_eq!(s.bit_string(), "011");
        assert_eq!("011".parse::<State>().unwrap(), s);
        assert_eq!(s.flip(0).to_string(), "BBB");
        assert!("AXB".parse::<State>().is_err());
        let all: Vec<String> = State::all(2).map(|s| s.to_string()).collect();
        assert_eq!(all, ["AA", "BA", "AB", "BB"]);
    }

    #[test]
    fn raw_values() {
        let hopf = raw_bracket(&p("O O")).unwrap();
        assert_eq!(hopf.to_string(), "A^2d^2 + 2ABd + B^2d^2");
        assert_eq!(hopf.get(1, 1, 1), 2);
        assert_eq!(raw_bracket(&p("O")).unwrap().to_string(), "Ad^2 + Bd");
        assert_eq!(raw_bracket(&p("E")).unwrap().to_string(), "d^2");
        let trefoil = raw_bracket(&p("O O O")).unwrap();
        assert_eq!(trefoil.to_string(), "A^3d^2 + 3A^2Bd + 3AB^2d^2 + B^3d^3");
        assert_eq!(trefoil.state_count(), 8);
    }

    #[test]
    fn specialized_values() {
        assert_eq!(bracket(&p("O O")).unwrap(), poly(&[(4, -1), (-4, -1)]));
        assert_eq!(bracket(&p("O O")).unwrap().to_string(), "-A^4 - A^-4");
        assert_eq!(bracket(&p("O")).unwrap().to_string(), "-A^3");
        assert_eq!(bracket(&p("U")).unwrap().to_string(), "-A^-3");
        assert_eq!(bracket(&p("<E>")).unwrap(), LaurentPoly::one());
        assert_eq!(bracket(&p("E")).unwrap(), poly(&[(2, -1), (-2, -1)]));
        assert_eq!(bracket(&p("O O O")).unwrap().to_string(), "-A^5 - A^-3 + A^-7");
    }

    #[test]
    fn capacity() {
        let cap = Capacity::new(3).unwrap();
        assert!(raw_bracket_with(&p("O O O"), cap).is_ok());
        assert!(matches!(raw_bracket_with(&p("4"), cap), Err(Error::Capacity { crossings: 4, limit: 3 })));
    }

    #[test]
    fn polynomial_arithmetic() {
        let d = LaurentPoly::loop_value();
        assert_eq!(d.to_string(), "-A^2 - A^-2");
        assert_eq!(d.pow(2), poly(&[(4, 1), (0, 2), (-4, 1)]));
        assert_eq!((d.pow(3) + poly(&[(1, 5)])).div_exact(&d), None);
        assert_eq!(d.pow(3).div_exact(&d), Some(d.pow(2)));
        assert_eq!(poly(&[(3, 2), (-1, 2)]).div_exact(&poly(&[(0, 2)])), Some(poly(&[(3, 1), (-1, 1)])));
        assert_eq!(poly(&[(0, 3)]).div_exact(&poly(&[(0, 2)])), None);
        assert_eq!(LaurentPoly::zero().div_exact(&d), Some(LaurentPoly::zero()));
        assert_eq!(poly(&[(1, 1), (0, 1)]).to_string(), "A + 1");
        assert_eq!(poly(&[(5, -3), (-7, 12)]).mirror().to_string(), "12A^7 - 3A^-5");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn polynomial_json() {
        let j = serde_json::to_string(&poly(&[(4, -1), (-4, -1)])).unwrap();
        assert_eq!(j, "[[4,-1],[-4,-1]]");
    }
}
