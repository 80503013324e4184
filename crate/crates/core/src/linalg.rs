//! Sparse exact linear algebra over the rationals.
//!
//! Vectors are sparse maps from an ordered key type to nonzero coefficients.
//! [`Echelon`] maintains a semi-reduced basis of the span of inserted rows:
//! every stored row is normalized so that its smallest key (the pivot) has
//! coefficient one, and no two rows share a pivot.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `target += factor * source`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, factor: &Rational, source: &SparseVec<K>) {
    for (k, v) in source {
        let delta = factor * v;
        match target.get_mut(k) {
            Some(existing) => {
                *existing += delta;
                if existing.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    target.insert(k.clone(), delta);
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots; the remainder has no key
    /// equal to a stored pivot at its leading position.
    pub fn reduce(&self, mut row: SparseVec<K>) -> SparseVec<K> {
        // Only the leading key is cleared at each step, so the remainder can
        // still carry pivot keys further right; the leading key never does.
        loop {
            let lead = match row.keys().next() {
                Some(k) => k.clone(),
                None => return row,
            };
            match self.rows.get(&lead) {
                Some(pivot_row) => {
                    let factor = -row[&lead].clone();
                    axpy(&mut row, &factor, pivot_row);
                }
                None => return row,
            }
        }
    }

    /// Inserts `row`; returns `true` when it was independent of the span.
    pub fn insert(&mut self, row: SparseVec<K>) -> bool {
        let row = self.reduce(row);
        let Some((lead, lead_coeff)) = row.iter().next() else {
            return false;
        };
        let lead = lead.clone();
        let inv = lead_coeff.recip();
        let normalized: SparseVec<K> = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
        self.rows.insert(lead, normalized);
        true
    }

    pub fn contains(&self, row: SparseVec<K>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    fn row(&self, pivot: &K) -> Option<&SparseVec<K>> {
        self.rows.get(pivot)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K, I>(rows: I) -> usize
where
    K: Ord + Clone,
    I: IntoIterator<Item = SparseVec<K>>,
{
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Col {
    Var(usize),
    Rhs,
}

/// Solves `sum_j a[i][j] x_j = b_i` for a unique `x` of length `nvars`.
///
/// Each equation is given as its sparse coefficient row and right-hand side.
pub fn solve_unique(
    nvars: usize,
    equations: impl IntoIterator<Item = (SparseVec<usize>, Rational)>,
) -> Result<Vec<Rational>> {
    let mut ech: Echelon<Col> = Echelon::new();
    for (coeffs, rhs) in equations {
        let mut row: SparseVec<Col> = coeffs
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (Col::Var(j), v))
            .collect();
        if !rhs.is_zero() {
            row.insert(Col::Rhs, rhs);
        }
        ech.insert(row);
    }
    if ech.row(&Col::Rhs).is_some() {
        return Err(Error::Singular("inconsistent system".into()));
    }
    if ech.rank() != nvars {
        return Err(Error::Singular(format!(
            "rank {} for {} unknowns",
            ech.rank(),
            nvars
        )));
    }
    let mut x = vec![Rational::zero(); nvars];
    for j in (0..nvars).rev() {
        let row = ech
            .row(&Col::Var(j))
            .ok_or_else(|| Error::Singular(format!("no pivot for unknown {j}")))?;
        let mut value = Rational::zero();
        for (k, v) in row {
            match k {
                Col::Var(i) if *i == j => debug_assert!(v.is_one()),
                Col::Var(i) => value -= v * &x[*i],
                Col::Rhs => value += v,
            }
        }
        x[j] = value;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn sv(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries.iter().map(|&(k, v)| (k, int(v))).collect()
    }

    #[test]
    fn rank_detects_dependency() {
        let rows = vec![sv(&[(0, 1), (1, 2)]), sv(&[(1, 1), (2, 1)]), sv(&[(0, 1), (1, 3), (2, 1)])];
        assert_eq!(rank(rows), 2);
        assert_eq!(rank(vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(2, 5)])]), 3);
        assert_eq!(rank(Vec::<SparseVec<usize>>::new()), 0);
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x - y = 1, 2z = 1
        let eqs = vec![
            (sv(&[(0, 1), (1, 1)]), int(3)),
            (sv(&[(0, 1), (1, -1)]), int(1)),
            (sv(&[(2, 2)]), int(1)),
        ];
        let x = solve_unique(3, eqs).unwrap();
        assert_eq!(x, vec![int(2), int(1), frac(1, 2)]);
    }

    #[test]
    fn rejects_underdetermined_and_inconsistent() {
        let eqs = vec![(sv(&[(0, 1), (1, 1)]), int(3))];
        assert!(solve_unique(2, eqs).is_err());
        let eqs = vec![(sv(&[(0, 1)]), int(1)), (sv(&[(0, 2)]), int(3))];
        assert!(solve_unique(1, eqs).is_err());
    }

    #[test]
    fn membership() {
        let mut ech = Echelon::new();
        ech.insert(sv(&[(0, 1), (2, 1)]));
        ech.insert(sv(&[(1, 1), (2, -1)]));
        assert!(ech.contains(sv(&[(0, 1), (1, 1)])));
        assert!(!ech.contains(sv(&[(2, 1)])));
    }
}
