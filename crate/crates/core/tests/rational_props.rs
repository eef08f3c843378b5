mod common;

use knotalg_core::algebra::{closure_components, eval_conn, ConnClass, ConnValue};
use knotalg_core::expr::Expr;
use knotalg_core::oracle::trace_components;
use knotalg_core::rational::{cf_of_fraction, cf_value, classify_fraction, schubert_equivalent, Fraction, ParityClass};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn parity_expr(terms: &[BigInt]) -> Expr {
    let e: Vec<i64> = terms.iter().map(|t| if t.is_odd() { 1 } else { 0 }).collect();
    Expr::continued_fraction(&e)
}

#[test]
fn fraction_theorem_sweep() {
    for p in 2..=200i64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let f = Fraction::new(p, q);
            let terms = cf_of_fraction(&f).unwrap();
            let class = classify_fraction(&f).unwrap();
            assert_eq!(eval_conn(&parity_expr(&terms)).class, class.conn_class(), "{f}");
            let small: Vec<i64> = terms.iter().map(|t| t.to_i64().unwrap()).collect();
            let e = Expr::continued_fraction(&small);
            let k = closure_components(&e);
            assert_eq!(k == 2, p % 2 == 0, "{f}");
            assert_eq!(trace_components(&e), k as usize, "{f}");
        }
    }
}

/// `a + 1/f` classified by parity, and `<C> e` in the algebra where `C` is
/// the class of `f` and `e` the parity of `a`.
fn step(f: Fraction, a: i64) -> (ParityClass, ConnClass) {
    let g = Fraction::new(BigInt::from(a) * f.numer() + f.denom(), f.numer().clone());
    let prev = ConnValue::new(classify_fraction(&f).unwrap().conn_class(), 0);
    let leaf = if a % 2 == 0 { ConnValue::IDENTITY } else { ConnValue::ODD };
    (classify_fraction(&g).unwrap(), (prev.cross() * leaf).class)
}

fn check_step(f: (i64, i64), a: i64, expected: ParityClass) {
    let (parity, algebra) = step(Fraction::new(f.0, f.1), a);
    assert_eq!(parity, expected);
    assert_eq!(algebra, expected.conn_class());
}

#[test]
fn base_cases() {
    let two = Expr::continued_fraction(&[0]);
    assert_eq!(eval_conn(&two).class, ConnClass::H);
    assert_eq!(classify_fraction(&Fraction::new(2, 1)).unwrap(), ParityClass::Elink);
    assert_eq!(eval_conn(&Expr::Pos).class, ConnClass::X);
    assert_eq!(classify_fraction(&Fraction::new(1, 1)).unwrap(), ParityClass::Oknot);
    // 1/2 = 0 + 1/2: <E> O
    assert_eq!(eval_conn(&Expr::continued_fraction(&[0, 2])).class, ConnClass::V);
    assert_eq!(eval_conn(&knotalg_core::parse("<E> O").unwrap()).class, ConnClass::V);
    assert_eq!(classify_fraction(&Fraction::new(1, 2)).unwrap(), ParityClass::Vknot);
}

#[test]
fn even_plus_inverse_of_even_over_odd() {
    check_step((2, 1), 2, ParityClass::Vknot);
    check_step((4, 3), 6, ParityClass::Vknot);
}

#[test]
fn odd_plus_inverse_of_even_over_odd() {
    check_step((2, 1), 1, ParityClass::Vknot);
    check_step((8, 5), 3, ParityClass::Vknot);
}

#[test]
fn even_plus_inverse_of_odd_over_odd() {
    check_step((1, 1), 2, ParityClass::Oknot);
    check_step((7, 3), 4, ParityClass::Oknot);
}

#[test]
fn odd_plus_inverse_of_odd_over_odd() {
    check_step((1, 1), 1, ParityClass::Elink);
    check_step((9, 5), 3, ParityClass::Elink);
}

#[test]
fn even_plus_inverse_of_odd_over_even() {
    check_step((1, 2), 2, ParityClass::Elink);
    check_step((5, 4), 2, ParityClass::Elink);
}

#[test]
fn odd_plus_inverse_of_odd_over_even() {
    check_step((1, 2), 1, ParityClass::Oknot);
    check_step((7, 2), 5, ParityClass::Oknot);
}

#[test]
fn schubert_example() {
    let f = cf_value(&[3, 7, 16]).unwrap();
    let g = cf_value(&[16, 7, 3]).unwrap();
    assert_eq!(f, Fraction::new(355, 113));
    assert_eq!(g, Fraction::new(355, 22));
    assert_eq!((113 * 22) % 355, 1);
    assert!(schubert_equivalent(&f, &g).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reversal_denominator_law(terms in prop::collection::vec(1i64..=12, 1..10)) {
        let f = cf_value(&terms).unwrap();
        let rev: Vec<i64> = terms.iter().rev().copied().collect();
        let g = cf_value(&rev).unwrap();
        prop_assert_eq!(f.numer(), g.numer());
        let p = f.numer();
        let sign = BigInt::from(if terms.len() % 2 == 1 { 1 } else { -1 });
        prop_assert_eq!((f.denom() * g.denom() - sign).mod_floor(p), BigInt::from(0));
    }

    #[test]
    fn expansion_round_trip((p, q) in (2u64..1_000_000_000).prop_flat_map(|p| (Just(p), 1..p))) {
        let f = Fraction::new(p, q);
        let terms = cf_of_fraction(&f).unwrap();
        prop_assert!(terms.iter().all(|t| t.is_positive()));
        prop_assert_eq!(cf_value(&terms).unwrap(), f);
    }
}

#[test]
fn fibonacci_fractions_are_exact() {
    let ones = vec![1i64; 200];
    let f = cf_value(&ones).unwrap();
    // F(201)/F(200)
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
    for _ in 2..=200 {
        let c = &a + &b;
        a = b;
        b = c;
    }
    assert_eq!(f, Fraction::new(b, a));
}
