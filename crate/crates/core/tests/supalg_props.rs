//! Algebraic laws of the super-commutative engine on random classes.

use ckverify::class::{CohClass, Word};
use ckverify::linalg::rank;
use ckverify::rational::{frac, Rational};
use ckverify::space::SpaceSpec;
use proptest::prelude::*;

/// Random class on `Y(g)^m`; homogeneous when `homogeneous` is set.
fn build(g: u32, m: usize, raw: &[(Vec<usize>, i64, i64)], homogeneous: bool) -> CohClass {
    let space = SpaceSpec::y_type(g).unwrap();
    let basis = space.basis();
    let terms = raw.iter().map(|(idx, n, d)| {
        let w = Word::new((0..m).map(|k| basis[idx[k] % basis.len()]));
        (w, frac(*n, *d))
    });
    let c = CohClass::from_terms(space, m, terms).unwrap();
    if !homogeneous {
        return c;
    }
    match c.terms().keys().next() {
        Some(w) => c.homogeneous_part(w.degree(&space)),
        None => c,
    }
}

fn raw_terms() -> impl Strategy<Value = Vec<(Vec<usize>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..64, 3), -5i64..=5, 1i64..=4), 1..6)
}

fn parity(c: &CohClass) -> u32 {
    c.degree().map(|d| d % 2).unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn super_commutativity(g in 1u32..=4, m in 1usize..=3, a in raw_terms(), b in raw_terms()) {
        let x = build(g, m, &a, true);
        let y = build(g, m, &b, true);
        let sign = if parity(&x) * parity(&y) == 1 { frac(-1, 1) } else { frac(1, 1) };
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap().scale(&sign));
    }

    #[test]
    fn associativity(g in 1u32..=4, m in 1usize..=3, a in raw_terms(), b in raw_terms(), c in raw_terms()) {
        let (x, y, z) = (build(g, m, &a, false), build(g, m, &b, false), build(g, m, &c, false));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn projection_formula(g in 1u32..=3, a in raw_terms(), b in raw_terms(), which in 0usize..3) {
        // S ⊂ {0,1,2} of size 2; a on X^2, b on X^3
        let subsets = [[0usize, 1], [0, 2], [1, 2]];
        let s = subsets[which];
        let alpha = build(g, 2, &a, true);
        let beta = build(g, 3, &b, true);
        let lhs = alpha.pullback(&s, 3).unwrap().mul(&beta).unwrap().pushforward(&s).unwrap();
        let rhs = alpha.mul(&beta.pushforward(&s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_is_a_ring_action(g in 1u32..=3, a in raw_terms(), b in raw_terms(), p in 0usize..6, q in 0usize..6) {
        let perms = [[0usize, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let (s, t) = (perms[p], perms[q]);
        let x = build(g, 3, &a, false);
        let y = build(g, 3, &b, false);
        prop_assert_eq!(
            x.mul(&y).unwrap().permute(&s).unwrap(),
            x.permute(&s).unwrap().mul(&y.permute(&s).unwrap()).unwrap()
        );
        // composition: moving by s then t equals moving by t∘s
        let ts: Vec<usize> = (0..3).map(|i| t[s[i]]).collect();
        prop_assert_eq!(x.permute(&s).unwrap().permute(&t).unwrap(), x.permute(&ts).unwrap());
        let inv: Vec<usize> = (0..3).map(|i| s.iter().position(|&v| v == i).unwrap()).collect();
        prop_assert_eq!(x.permute(&s).unwrap().permute(&inv).unwrap(), x);
    }
}

#[test]
fn pullback_of_unit_is_unit() {
    let s = SpaceSpec::y_type(2).unwrap();
    assert_eq!(CohClass::unit(s, 2).pullback(&[0, 2], 3).unwrap(), CohClass::unit(s, 3));
}

/// Pairing matrix between degree-d and degree-(top−d) words is invertible.
#[test]
fn poincare_duality() {
    for g in 1..=4 {
        let space = SpaceSpec::y_type(g).unwrap();
        let basis = space.basis();
        for m in 1..=2usize {
            let words: Vec<Word> = if m == 1 {
                basis.iter().map(|&l| Word::new([l])).collect()
            } else {
                basis.iter().flat_map(|&a| basis.iter().map(move |&b| Word::new([a, b]))).collect()
            };
            let top = m as u32 * space.top_degree();
            let mut degrees: Vec<u32> = words.iter().map(|w| w.degree(&space)).collect();
            degrees.sort();
            degrees.dedup();
            for d in degrees {
                let low: Vec<&Word> = words.iter().filter(|w| w.degree(&space) == d).collect();
                let high: Vec<&Word> = words.iter().filter(|w| w.degree(&space) == top - d).collect();
                assert_eq!(low.len(), high.len(), "g={g} m={m} d={d}");
                let rows = low.iter().map(|a| {
                    let ca = CohClass::from_word(space, (*a).clone(), frac(1, 1)).unwrap();
                    high.iter()
                        .enumerate()
                        .map(|(j, b)| {
                            let cb = CohClass::from_word(space, (*b).clone(), frac(1, 1)).unwrap();
                            (j, ca.mul(&cb).unwrap().integrate())
                        })
                        .filter(|(_, v): &(usize, Rational)| *v != frac(0, 1))
                        .collect()
                });
                assert_eq!(rank(rows), low.len(), "g={g} m={m} d={d}");
            }
        }
    }
}
