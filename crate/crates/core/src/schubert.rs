//! Schubert calculus on Grassmannians and projective-bundle dimension counts.
//!
//! `Gr(k, n)` is the Grassmannian of `k`-planes in `C^n`; Schubert classes are
//! indexed by partitions in the `k × (n − k)` box and `σ_r` denotes the
//! special class `c_r(Q)` of the universal quotient bundle.
//!
//! Fulton's projective notation `(a_0, …, a_{k−1})`, `0 ≤ a_0 < … < a_{k−1} ≤
//! n − 1`, converts by `λ_i = n − k + i − a_i`. For lines in `P^5`:
//!
//! | projective | partition |
//! |------------|-----------|
//! | (2,4)      | (2,1)     |
//! | (2,5)      | (2)       |
//! | (0,4)      | (4,1)     |
//! | (1,3)      | (3,2)     |

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{Entry, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Grassmannian {
    k: usize,
    n: usize,
}

impl Grassmannian {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Invalid(format!("Gr({k},{n}) needs 0 < k < n")));
        }
        Ok(Grassmannian { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns of the box, `n − k`.
    pub fn width(&self) -> u32 {
        (self.n - self.k) as u32
    }

    pub fn dimension(&self) -> u32 {
        self.k as u32 * self.width()
    }

    pub fn fits(&self, p: &Partition) -> bool {
        p.0.len() <= self.k && p.0.first().is_none_or(|&a| a <= self.width())
    }

    /// The full box `((n−k)^k)`, the class of a point.
    pub fn point(&self) -> Partition {
        Partition(vec![self.width(); self.k])
    }

    /// Complement of `p` in the box, rotated by 180 degrees.
    pub fn dual(&self, p: &Partition) -> Partition {
        Partition::new((0..self.k).rev().map(|i| self.width() - p.part(i)).collect())
            .expect("complement is a partition")
    }

    /// All partitions in the box, ordered by size and then lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        fn go(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            if cur.len() == rows {
                return;
            }
            for v in 1..=max {
                cur.push(v);
                go(rows, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(self.k, self.width(), &mut Vec::new(), &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then(a.cmp(b)));
        out
    }

    /// Converts Fulton's projective indices to a partition.
    pub fn from_projective(&self, a: &[u32]) -> Result<Partition> {
        let ok = a.len() == self.k
            && a.windows(2).all(|w| w[0] < w[1])
            && a.last().is_some_and(|&x| (x as usize) < self.n);
        if !ok {
            return Err(Error::Invalid(format!("{a:?} is not a Schubert symbol for Gr({},{})", self.k, self.n)));
        }
        let parts = a
            .iter()
            .enumerate()
            .map(|(i, &ai)| self.width() + i as u32 - ai)
            .collect::<Vec<u32>>();
        Partition::new(parts)
    }
}

/// Weakly decreasing positive parts; trailing zeros are dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `i`-th part, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchubertClass {
    gr: Grassmannian,
    terms: BTreeMap<Partition, Rational>,
}

impl SchubertClass {
    pub fn zero(gr: Grassmannian) -> Self {
        SchubertClass { gr, terms: BTreeMap::new() }
    }

    pub fn unit(gr: Grassmannian) -> Self {
        Self::sigma(gr, Partition::empty()).expect("empty partition fits")
    }

    pub fn sigma(gr: Grassmannian, p: Partition) -> Result<Self> {
        if !gr.fits(&p) {
            return Err(Error::Invalid(format!("{p} does not fit the {}x{} box", gr.k, gr.width())));
        }
        let mut c = Self::zero(gr);
        c.terms.insert(p, rational::one());
        Ok(c)
    }

    /// Special class `σ_r = c_r(Q)`.
    pub fn special(gr: Grassmannian, r: u32) -> Result<Self> {
        Self::sigma(gr, Partition::new(vec![r])?)
    }

    pub fn grassmannian(&self) -> &Grassmannian {
        &self.gr
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, p: &Partition) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: Partition, q: Rational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert_with(Rational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &SchubertClass) -> Result<Self> {
        if self.gr != other.gr {
            return Err(Error::SpaceMismatch);
        }
        let mut out = self.clone();
        for (p, q) in &other.terms {
            out.add_term(p.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let mut out = Self::zero(self.gr);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * q);
        }
        out
    }

    /// Degree of every term, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut sizes = self.terms.keys().map(Partition::size);
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    /// Multiplication by `σ_r` via Pieri's rule: add `r` boxes, no two in the
    /// same column, staying inside the box.
    pub fn pieri(&self, r: u32) -> Result<Self> {
        if r > self.gr.width() {
            return Err(Error::Invalid(format!("σ_{r} is out of range for Gr({},{})", self.gr.k, self.gr.n)));
        }
        let mut out = Self::zero(self.gr);
        for (lambda, q) in &self.terms {
            for mu in horizontal_strips(&self.gr, lambda, r) {
                out.add_term(mu, q.clone());
            }
        }
        Ok(out)
    }

    /// Product of two classes. Each `σ_λ` of `other` is expanded by the
    /// Jacobi–Trudi determinant `det(σ_{λ_i − i + j})` into products of special
    /// classes, which act on `self` through [`Self::pieri`].
    pub fn mult(&self, other: &SchubertClass) -> Result<Self> {
        if self.gr != other.gr {
            return Err(Error::SpaceMismatch);
        }
        let width = self.gr.width() as i64;
        let mut out = Self::zero(self.gr);
        for (lambda, q) in &other.terms {
            let l = lambda.len();
            for (perm, negative) in permutations_with_sign(l) {
                let mut acc = self.scale(q);
                for (i, &pi) in perm.iter().enumerate() {
                    let r = lambda.part(i) as i64 - i as i64 + pi as i64;
                    if r < 0 || r > width {
                        acc = Self::zero(self.gr);
                        break;
                    }
                    acc = acc.pieri(r as u32)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                if negative {
                    acc = acc.scale(&-rational::one());
                }
                out = out.add(&acc)?;
            }
        }
        Ok(out)
    }

    /// Coefficient of the point class.
    pub fn integrate_top(&self) -> Rational {
        self.coeff(&self.gr.point())
    }
}

fn horizontal_strips(gr: &Grassmannian, lambda: &Partition, r: u32) -> Vec<Partition> {
    fn go(gr: &Grassmannian, lambda: &Partition, row: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if row == gr.k {
            if left == 0 {
                out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let low = lambda.part(row);
        let high = if row == 0 { gr.width() } else { lambda.part(row - 1) };
        for v in low..=high.min(low + left) {
            cur.push(v);
            go(gr, lambda, row + 1, left - (v - low), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if gr.fits(lambda) {
        go(gr, lambda, 0, r, &mut Vec::new(), &mut out);
    }
    out
}

/// All permutations of `0..n` with their sign (`true` for odd).
fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (smaller, negative) in permutations_with_sign(n - 1) {
        // insert n-1 at position pos; it passes n-1-pos larger-indexed entries
        for pos in 0..n {
            let mut p = smaller.clone();
            p.insert(pos, n - 1);
            let flips = (n - 1 - pos) % 2 == 1;
            out.push((p, negative ^ flips));
        }
    }
    out
}

/// `deg(c(Q)|_F)` for `[F] = fano` and `c` a class of complementary degree.
pub fn restricted_degree(fano: &SchubertClass, c: &SchubertClass) -> Result<Rational> {
    Ok(fano.mult(c)?.integrate_top())
}

/// Class of the Fano variety of lines on a smooth intersection of two
/// quadrics in `P^5`: `16 σ_{2,1}²` in `Gr(2,6)`.
pub fn fano_class(gr: Grassmannian) -> Result<SchubertClass> {
    let s21 = SchubertClass::sigma(gr, Partition::new(vec![2, 1])?)?;
    Ok(s21.mult(&s21)?.scale(&rational::int(16)))
}

/// `deg(c_2(Q)|_F) = 16` on `Gr(2,6)`, with two regression pins: `c_1(Q)²`
/// in place of `c_2(Q)`, and the same recipe on `Gr(2,4)`, where it
/// overflows the box.
pub fn fano_degree_check() -> Result<Report> {
    let gr = Grassmannian::new(2, 6)?;
    let fano = fano_class(gr)?;
    let c2 = SchubertClass::special(gr, 2)?;
    let degree = restricted_degree(&fano, &c2)?;
    let s1 = SchubertClass::special(gr, 1)?;
    let c1_squared = restricted_degree(&fano, &s1.mult(&s1)?)?;

    // The Fulton-notation route: 16 (2,4)·((0,4) + (1,3)).
    let sym = |a: &[u32]| -> Result<SchubertClass> { SchubertClass::sigma(gr, gr.from_projective(a)?) };
    let middle = sym(&[0, 4])?.add(&sym(&[1, 3])?)?;
    let projective_route = sym(&[2, 4])?.mult(&middle)?.scale(&rational::int(16)).integrate_top();
    let pieri_step = sym(&[2, 4])?.mult(&sym(&[2, 5])?)? == middle;

    let small = Grassmannian::new(2, 4)?;
    let small_degree = restricted_degree(&fano_class(small)?, &SchubertClass::special(small, 2)?)?;

    let mut report = Report::new();
    report.push(
        Entry::pass_if("schubert.fano-c2", degree == rational::int(16))
            .value("degree", rational::render(&degree))
            .value("projective-route", rational::render(&projective_route))
            .value("pieri-step", pieri_step),
    );
    report.push(
        Entry::pass_if("schubert.fano-c1-squared", c1_squared == rational::int(32))
            .value("degree", rational::render(&c1_squared)),
    );
    report.push(
        Entry::pass_if("schubert.gr24-overflow", small_degree.is_zero())
            .value("degree", rational::render(&small_degree)),
    );
    Ok(report)
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Projective-bundle bookkeeping for the universal families over the space
/// `P^r` of pairs of quadrics in `P^{2g+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionCounts {
    pub g: u32,
    /// `r = 2·C(2g+3, 2) − 1`.
    pub r: i64,
    /// Conditions imposed by a `(g−1)`-plane: `rank E = 2·C(g+1, 2)`.
    pub rank_e: i64,
    /// Fiber dimension of the family of Fano varieties over `Gr(g, 2g+2)`.
    pub s: i64,
    /// Fiber over a point of `P^{2g+1}`: `r − 2`.
    pub point_fiber: i64,
    /// Fiber over a pair of distinct points: `r − 4`.
    pub pair_fiber: i64,
    /// Fiber over the diagonal: `r − 2`.
    pub diagonal_fiber: i64,
    /// For `g = 2`, fibers over (line, point) pairs in `Gr(2,6) × P^5`: off
    /// the universal line `r − 8`, on it `r − 6`.
    pub line_point: Option<(i64, i64)>,
}

pub fn dimension_counts(g: u32) -> Result<DimensionCounts> {
    if g == 0 {
        return Err(Error::ZeroGenus(g));
    }
    let gi = g as i64;
    let r = 2 * binomial(2 * gi + 3, 2) - 1;
    let rank_e = 2 * binomial(gi + 1, 2);
    Ok(DimensionCounts {
        g,
        r,
        rank_e,
        s: r - rank_e,
        point_fiber: r - 2,
        pair_fiber: r - 4,
        diagonal_fiber: r - 2,
        line_point: (g == 2).then_some((r - 8, r - 6)),
    })
}

/// Internal consistency of the counts: all fibers nonnegative; a point
/// imposes one condition per quadric; for `g = 2` the fiber over the
/// universal line equals `s` and a point off the line costs two more.
pub fn dimension_report(g: u32) -> Result<Report> {
    let c = dimension_counts(g)?;
    let mut ok = [c.s, c.point_fiber, c.pair_fiber, c.diagonal_fiber].iter().all(|&v| v >= 0)
        && c.r - c.point_fiber == 2
        && c.point_fiber - c.pair_fiber == 2
        && c.diagonal_fiber == c.point_fiber;
    let mut entry = Entry::new("dims.projective-bundles", crate::report::Status::Pass)
        .param("g", g as i64)
        .value("r", c.r)
        .value("rankE", c.rank_e)
        .value("s", c.s)
        .value("point-fiber", c.point_fiber)
        .value("pair-fiber", c.pair_fiber)
        .value("diagonal-fiber", c.diagonal_fiber);
    if let Some((off, on)) = c.line_point {
        ok &= off >= 0 && on == c.s && on - off == 2;
        entry = entry.value("line-point-off", off).value("line-point-on", on);
    }
    if !ok {
        entry.status = crate::report::Status::Fail;
    }
    let mut report = Report::new();
    report.push(entry);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn gr26() -> Grassmannian {
        Grassmannian::new(2, 6).unwrap()
    }

    fn sig(parts: &[u32]) -> SchubertClass {
        SchubertClass::sigma(gr26(), Partition::new(parts.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn pieri_examples() {
        let s21 = sig(&[2, 1]);
        let expected = sig(&[4, 1]).add(&sig(&[3, 2])).unwrap();
        assert_eq!(s21.pieri(2).unwrap(), expected);
        let unit = SchubertClass::unit(gr26());
        assert_eq!(unit.pieri(0).unwrap(), unit);
        assert!(sig(&[4, 4]).pieri(1).unwrap().is_zero());
        assert!(unit.pieri(5).is_err());
    }

    #[test]
    fn product_examples() {
        let s21 = sig(&[2, 1]);
        let sq = s21.mult(&s21).unwrap();
        assert_eq!(sq, sig(&[4, 2]).add(&sig(&[3, 3])).unwrap());
        assert_eq!(sq.mult(&sig(&[2])).unwrap().integrate_top(), int(1));
        let unit = SchubertClass::unit(gr26());
        assert_eq!(unit.mult(&s21).unwrap(), s21);
        assert_eq!(sig(&[3, 1]).mult(&sig(&[2, 2])).unwrap(), sig(&[2, 2]).mult(&sig(&[3, 1])).unwrap());
    }

    #[test]
    fn integration() {
        assert_eq!(sig(&[4, 4]).integrate_top(), int(1));
        assert!(SchubertClass::unit(gr26()).integrate_top().is_zero());
    }

    #[test]
    fn projective_notation() {
        let gr = gr26();
        let conv = |a: &[u32]| gr.from_projective(a).unwrap();
        assert_eq!(conv(&[2, 4]), Partition::new(vec![2, 1]).unwrap());
        assert_eq!(conv(&[2, 5]), Partition::new(vec![2]).unwrap());
        assert_eq!(conv(&[0, 4]), Partition::new(vec![4, 1]).unwrap());
        assert_eq!(conv(&[1, 3]), Partition::new(vec![3, 2]).unwrap());
        assert!(gr.from_projective(&[3, 2]).is_err());
    }

    #[test]
    fn fano_check_values() {
        let r = fano_degree_check().unwrap();
        assert!(r.all_pass(), "{r:?}");
        let main = r.find("schubert.fano-c2").unwrap();
        assert_eq!(main.values["degree"], "16");
        assert_eq!(main.values["projective-route"], "16");
    }

    #[test]
    fn dimension_counts_g2() {
        let c = dimension_counts(2).unwrap();
        assert_eq!((c.r, c.rank_e, c.s), (41, 6, 35));
        assert_eq!(c.line_point, Some((33, 35)));
        assert!(dimension_report(2).unwrap().all_pass());
        assert!(dimension_counts(1).unwrap().line_point.is_none());
        assert!(dimension_counts(0).is_err());
    }

    #[test]
    fn sign_enumeration() {
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        let odd = perms.iter().filter(|(_, s)| *s).count();
        assert_eq!(odd, 3);
        let identity = perms.iter().find(|(p, _)| p == &vec![0, 1, 2]).unwrap();
        assert!(!identity.1);
    }
}
