//! Schubert products against an independent Littlewood–Richardson count.

use ckverify::rational::int;
use ckverify::schubert::{Grassmannian, Partition, SchubertClass};
use proptest::prelude::*;

/// Number of LR tableaux of shape `nu/lambda` with content `mu`.
fn lr_coefficient(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
    let rows = nu.len();
    let lam = |i: usize| lambda.get(i).copied().unwrap_or(0) as usize;
    if (0..rows).any(|i| lam(i) > nu[i] as usize) || lambda.len() > rows {
        return 0;
    }
    if lambda.iter().sum::<u32>() + mu.iter().sum::<u32>() != nu.iter().sum::<u32>() {
        return 0;
    }
    // cells in reading order: rows top to bottom, each right to left
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (lam(r)..nu[r] as usize).rev().map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; nu.first().copied().unwrap_or(0) as usize]; rows];
    let mut counts = vec![0u32; mu.len()];

    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<u32>,
        mu: &[u32],
        lam: &dyn Fn(usize) -> usize,
        nu: &[u32],
    ) -> u64 {
        if idx == cells.len() {
            return (counts.as_slice() == mu) as u64;
        }
        let (r, c) = cells[idx];
        let mut total = 0;
        for v in 1..=mu.len() {
            // rows weakly increase left to right: right neighbour filled first
            if c + 1 < nu[r] as usize && grid[r][c + 1] < v {
                continue;
            }
            // columns strictly increase downward
            if r > 0 && c >= lam(r - 1) && c < nu[r - 1] as usize && grid[r - 1][c] >= v {
                continue;
            }
            if counts[v - 1] == mu[v - 1] {
                continue;
            }
            // lattice condition on the reading word
            if v > 1 && counts[v - 1] + 1 > counts[v - 2] {
                continue;
            }
            grid[r][c] = v;
            counts[v - 1] += 1;
            total += go(idx + 1, cells, grid, counts, mu, lam, nu);
            counts[v - 1] -= 1;
            grid[r][c] = 0;
        }
        total
    }
    go(0, &cells, &mut grid, &mut counts, mu, &lam, nu)
}

#[test]
fn lr_oracle_sanity() {
    assert_eq!(lr_coefficient(&[2, 1], &[2, 1], &[3, 2, 1]), 2);
    assert_eq!(lr_coefficient(&[1], &[1], &[2]), 1);
    assert_eq!(lr_coefficient(&[1], &[1], &[1, 1]), 1);
    assert_eq!(lr_coefficient(&[], &[2], &[2]), 1);
}

#[test]
fn products_match_littlewood_richardson() {
    for (k, n) in [(2, 6), (3, 6), (2, 5)] {
        let gr = Grassmannian::new(k, n).unwrap();
        let parts = gr.partitions();
        for a in &parts {
            for b in &parts {
                if a.size() + b.size() > 8.min(gr.dimension()) {
                    continue;
                }
                let product = SchubertClass::sigma(gr, a.clone())
                    .unwrap()
                    .mult(&SchubertClass::sigma(gr, b.clone()).unwrap())
                    .unwrap();
                for c in &parts {
                    let expected = if c.size() == a.size() + b.size() {
                        lr_coefficient(a.parts(), b.parts(), c.parts())
                    } else {
                        0
                    };
                    assert_eq!(product.coeff(c), int(expected as i64), "Gr({k},{n}) {a:?}·{b:?} at {c:?}");
                }
            }
        }
    }
}

#[test]
fn duality_pairing() {
    for (k, n) in [(2, 4), (2, 6), (3, 6)] {
        let gr = Grassmannian::new(k, n).unwrap();
        let parts = gr.partitions();
        for a in &parts {
            for b in &parts {
                if a.size() + b.size() != gr.dimension() {
                    continue;
                }
                let v = SchubertClass::sigma(gr, a.clone())
                    .unwrap()
                    .mult(&SchubertClass::sigma(gr, b.clone()).unwrap())
                    .unwrap()
                    .integrate_top();
                assert_eq!(v, int((gr.dual(a) == *b) as i64), "{a:?} {b:?}");
            }
        }
    }
}

#[test]
fn top_power_of_hyperplane_is_degree() {
    // deg Gr(2,n) = Catalan(n−2)
    for (n, catalan) in [(4, 2), (5, 5), (6, 14)] {
        let gr = Grassmannian::new(2, n).unwrap();
        let mut c = SchubertClass::unit(gr);
        for _ in 0..gr.dimension() {
            c = c.pieri(1).unwrap();
        }
        assert_eq!(c.integrate_top(), int(catalan));
    }
}

fn partition_in(k: usize, width: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=width, k).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #[test]
    fn pieri_stays_in_box_and_adds_degree(lambda in partition_in(2, 4), r in 0u32..=4) {
        let gr = Grassmannian::new(2, 6).unwrap();
        let p = Partition::new(lambda).unwrap();
        let out = SchubertClass::sigma(gr, p.clone()).unwrap().pieri(r).unwrap();
        for (q, coeff) in out.terms() {
            prop_assert!(gr.fits(q));
            prop_assert_eq!(q.size(), p.size() + r);
            prop_assert_eq!(coeff, &int(1));
        }
    }

    #[test]
    fn multiplication_commutes(a in partition_in(3, 3), b in partition_in(3, 3)) {
        let gr = Grassmannian::new(3, 6).unwrap();
        let x = SchubertClass::sigma(gr, Partition::new(a).unwrap()).unwrap();
        let y = SchubertClass::sigma(gr, Partition::new(b).unwrap()).unwrap();
        prop_assert_eq!(x.mult(&y).unwrap(), y.mult(&x).unwrap());
    }
}

#[test]
fn pieri_rejects_oversized_strip() {
    let gr = Grassmannian::new(2, 6).unwrap();
    assert!(SchubertClass::unit(gr).pieri(5).is_err());
    assert!(Partition::new(vec![1, 2]).is_err());
}
