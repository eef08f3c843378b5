//! Continued fractions with a formal infinity, the parity classification of
//! rational knots and links, and Schubert equivalence.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::ConnClass;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FractionError {
    #[error("{0}: undefined with the formal infinity")]
    Indeterminate(&'static str),
    #[error("expected a reduced fraction P/Q with P > Q > 0, got {0}")]
    NotProper(Fraction),
    #[error("expected a finite fraction with positive numerator, got {0}")]
    NotPositive(Fraction),
    #[error("cannot parse fraction {0:?}")]
    Syntax(String),
    #[error("empty continued fraction")]
    Empty,
}

/// An exact reduced fraction `P/Q`, `Q >= 0`, with `1/0` standing for the
/// formal infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    numer: BigInt,
    denom: BigInt,
}

impl Fraction {
    /// Reduces `p/q`, moving the sign to the numerator. `p/0` for any
    /// nonzero `p` is infinity.
    ///
    /// # Panics
    ///
    /// Panics on `0/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Fraction {
        let (mut p, mut q) = (p.into(), q.into());
        assert!(!(p.is_zero() && q.is_zero()), "0/0 is not a fraction");
        if q.is_zero() {
            return Fraction::infinity();
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        let g = p.gcd(&q);
        Fraction { numer: p / &g, denom: q / g }
    }

    pub fn integer(n: impl Into<BigInt>) -> Fraction {
        Fraction { numer: n.into(), denom: BigInt::one() }
    }

    pub fn infinity() -> Fraction {
        Fraction { numer: BigInt::one(), denom: BigInt::zero() }
    }

    pub fn zero() -> Fraction {
        Fraction::integer(0)
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_infinite(&self) -> bool {
        self.denom.is_zero()
    }

    pub fn recip(&self) -> Fraction {
        if self.is_infinite() {
            Fraction::zero()
        } else if self.numer.is_zero() {
            Fraction::infinity()
        } else {
            Fraction::new(self.denom.clone(), self.numer.clone())
        }
    }

    /// Sum, with `x + inf = inf` for finite `x`. `inf + inf` is rejected.
    pub fn checked_add(&self, rhs: &Fraction) -> Result<Fraction, FractionError> {
        match (self.is_infinite(), rhs.is_infinite()) {
            (true, true) => Err(FractionError::Indeterminate("inf + inf")),
            (true, false) | (false, true) => Ok(Fraction::infinity()),
            (false, false) => Ok(Fraction::new(
                &self.numer * &rhs.denom + &rhs.numer * &self.denom,
                &self.denom * &rhs.denom,
            )),
        }
    }

    pub fn add_integer(&self, n: &BigInt) -> Fraction {
        if self.is_infinite() {
            return Fraction::infinity();
        }
        Fraction { numer: &self.numer + n * &self.denom, denom: self.denom.clone() }
    }

    /// `P > Q > 0`.
    pub fn is_proper_positive(&self) -> bool {
        self.denom.is_positive() && self.numer > self.denom
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("∞")
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Fraction {
    type Err = FractionError;

    /// Accepts `P/Q`, a bare integer, `∞`, `inf` or `1/0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FractionError::Syntax(s.to_string());
        if s == "inf" || s == "∞" {
            return Ok(Fraction::infinity());
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if p.is_zero() && q.is_zero() {
            return Err(bad());
        }
        Ok(Fraction::new(p, q))
    }
}

/// Value of `a1 + 1/(a2 + 1/(... + 1/an))`, evaluated right to left with
/// `1/0 = inf`, `1/inf = 0` and `n + inf = inf`.
pub fn cf_value<T: Into<BigInt> + Clone>(terms: &[T]) -> Result<Fraction, FractionError> {
    let (last, rest) = terms.split_last().ok_or(FractionError::Empty)?;
    Ok(rest
        .iter()
        .rev()
        .fold(Fraction::integer(last.clone()), |acc, a| acc.recip().add_integer(&a.clone().into())))
}

/// Positive continued fraction of `P/Q` with `P > Q > 0`; the last term is
/// greater than one and the first may be one.
pub fn cf_of_fraction(f: &Fraction) -> Result<Vec<BigInt>, FractionError> {
    if !f.is_proper_positive() {
        return Err(FractionError::NotProper(f.clone()));
    }
    let (mut p, mut q) = (f.numer.clone(), f.denom.clone());
    let mut terms = Vec::new();
    while !q.is_zero() {
        let (a, r) = p.div_rem(&q);
        terms.push(a);
        p = q;
        q = r;
    }
    // [..., a, 1] = [..., a + 1]; Euclid never ends on 1 here but keep the
    // normal form explicit.
    if terms.len() > 1 && terms.last().is_some_and(|t| t.is_one()) {
        terms.pop();
        *terms.last_mut().unwrap() += 1;
    }
    Ok(terms)
}

/// Parity class of a rational knot or link, matching the value of its
/// continued-fraction expression in the crossing algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ParityClass {
    /// `P` even: a two-component link, algebra value `E`.
    Elink,
    /// `P` odd, `Q` odd: a knot, algebra value `O`.
    Oknot,
    /// `P` odd, `Q` even: a knot, algebra value `<E>`.
    Vknot,
}

impl ParityClass {
    pub fn conn_class(self) -> ConnClass {
        match self {
            ParityClass::Elink => ConnClass::H,
            ParityClass::Oknot => ConnClass::X,
            ParityClass::Vknot => ConnClass::V,
        }
    }

    pub fn is_link(self) -> bool {
        self == ParityClass::Elink
    }

    pub fn components(self) -> u32 {
        if self.is_link() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ParityClass::Elink => "link (E)",
            ParityClass::Oknot => "knot (O)",
            ParityClass::Vknot => "knot (V)",
        })
    }
}

pub fn classify_fraction(f: &Fraction) -> Result<ParityClass, FractionError> {
    if f.is_infinite() || !f.numer.is_positive() {
        return Err(FractionError::NotPositive(f.clone()));
    }
    Ok(if f.numer.is_even() {
        ParityClass::Elink
    } else if f.denom.is_odd() {
        ParityClass::Oknot
    } else {
        ParityClass::Vknot
    })
}

/// Whether `P/Q` and `P'/Q'` present the same rational link:
/// `P = P'` and either `QQ' = +-1 (mod P)` or `Q = Q' (mod P)`.
pub fn schubert_equivalent(f: &Fraction, g: &Fraction) -> Result<bool, FractionError> {
    for x in [f, g] {
        if !x.is_proper_positive() {
            return Err(FractionError::NotProper(x.clone()));
        }
    }
    let p = &f.numer;
    if p != &g.numer {
        return Ok(false);
    }
    let prod = (&f.denom * &g.denom).mod_floor(p);
    let inverse = prod.is_one() || prod == p - 1u32;
    let same = f.denom.mod_floor(p) == g.denom.mod_floor(p);
    Ok(inverse || same)
}
