use std::collections::BTreeSet;

use knotalg_core::algebra::closure_components;
use knotalg_core::enumerate::{canonical, compositions_with_big_ends, table, Composition, Kind};
use knotalg_core::oracle::trace_components;
use knotalg_core::rational::schubert_equivalent;

fn comp(v: &[u32]) -> Composition {
    Composition(v.to_vec())
}

/// Grows every composition of `n` from `(1)` by appending a `1` or adding
/// one to the last part, then keeps those with big ends.
fn grown(n: u32) -> BTreeSet<Composition> {
    let mut level = vec![vec![1u32]];
    for _ in 1..n {
        level = level
            .into_iter()
            .flat_map(|c| {
                let mut append = c.clone();
                append.push(1);
                let mut bump = c;
                *bump.last_mut().unwrap() += 1;
                [append, bump]
            })
            .collect();
    }
    level
        .into_iter()
        .filter(|c| c[0] >= 2 && *c.last().unwrap() >= 2)
        .map(|c| canonical(&Composition(c)))
        .collect()
}

#[test]
fn seven_crossing_table() {
    let t = table(7).unwrap();
    let of = |k| t.iter().filter(|e| e.class == k).map(|e| e.parts.clone()).collect::<BTreeSet<_>>();
    let knots: BTreeSet<_> =
        [&[7][..], &[2, 5], &[3, 4], &[2, 2, 3], &[3, 1, 3], &[2, 1, 2, 2], &[2, 1, 1, 1, 2]].map(comp).into();
    let links: BTreeSet<_> = [&[2, 3, 2][..], &[2, 1, 4], &[2, 1, 1, 3]].map(comp).into();
    assert_eq!(of(Kind::Knot), knots);
    assert_eq!(of(Kind::Link), links);
}

#[test]
fn tables_are_consistent() {
    for n in 2..=8 {
        let t = table(n).unwrap();
        let keys: BTreeSet<_> = t.iter().map(|e| e.parts.clone()).collect();
        assert_eq!(keys.len(), t.len());
        assert_eq!(keys, grown(n), "n = {n}");
        for e in &t {
            assert_eq!(e.parts.total(), n);
            assert_eq!(canonical(&e.parts), e.parts);
            let k = closure_components(&e.parts.to_expr());
            assert_eq!(e.components, k);
            assert_eq!(closure_components(&e.parts.reversed().to_expr()), k);
            assert_eq!(trace_components(&e.parts.to_expr()), k as usize);
        }
        for (i, a) in t.iter().enumerate() {
            for b in &t[i + 1..] {
                for f in [b.parts.fraction(), b.parts.reversed().fraction()] {
                    assert!(!schubert_equivalent(&a.fraction, &f).unwrap(), "{} ~ {}", a.parts, b.parts);
                }
            }
        }
    }
}

#[test]
fn generation_order() {
    let five: Vec<_> = compositions_with_big_ends(5).unwrap().collect();
    assert_eq!(five, vec![comp(&[2, 1, 2]), comp(&[2, 3]), comp(&[3, 2]), comp(&[5])]);
    let seven = compositions_with_big_ends(7).unwrap().collect::<Vec<_>>();
    assert!(seven.windows(2).all(|w| w[0] < w[1]));
}
