//! Sparse classes in `H*(X^m)` with super-commutative multiplication.
//!
//! A [`Word`] is one Künneth basis element `a_1 ⊗ ... ⊗ a_m`. Products follow
//! the Koszul rule
//!
//! ```text
//! (a_1⊗…⊗a_m)·(b_1⊗…⊗b_m) = (−1)^{Σ_{i>j} |a_i||b_j|} (a_1b_1 ⊗ … ⊗ a_mb_m)
//! ```
//!
//! where `|x|` is the parity of a letter. Factor indices in this module are
//! zero-based.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{Letter, SpaceSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub SmallVec<[Letter; 6]>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    pub fn unit(m: usize) -> Self {
        Word(SmallVec::from_elem(Letter::UNIT, m))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self, space: &SpaceSpec) -> u32 {
        self.0.iter().map(|&l| space.degree(l)).sum()
    }

    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|l| l.is_odd()).count() % 2 == 1
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|l| l.name()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join("⊗"))
    }
}

/// Koszul sign of multiplying the words `a` and `b` factorwise.
fn koszul_negative(a: &[Letter], b: &[Letter]) -> bool {
    // count pairs i > j with a_i and b_j both odd
    let mut odd_a_after = 0usize;
    let mut total = 0usize;
    for j in (0..a.len()).rev() {
        if b[j].is_odd() {
            total += odd_a_after;
        }
        if a[j].is_odd() {
            odd_a_after += 1;
        }
    }
    total % 2 == 1
}

/// Word product `a·b` as `(negative, number of point-scalings, word)`.
fn word_product(space: &SpaceSpec, a: &Word, b: &Word) -> Option<(bool, u32, Word)> {
    let mut negative = koszul_negative(&a.0, &b.0);
    let mut scalings = 0;
    let mut out = SmallVec::with_capacity(a.len());
    for (&x, &y) in a.0.iter().zip(b.0.iter()) {
        let lp = space.letter_product(x, y)?;
        negative ^= lp.negative;
        scalings += lp.point_scaled as u32;
        out.push(lp.letter);
    }
    Some((negative, scalings, Word(out)))
}

/// A rational linear combination of words of a fixed arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohClass {
    space: SpaceSpec,
    arity: usize,
    terms: BTreeMap<Word, Rational>,
}

impl CohClass {
    pub fn zero(space: SpaceSpec, arity: usize) -> Self {
        CohClass { space, arity, terms: BTreeMap::new() }
    }

    pub fn unit(space: SpaceSpec, arity: usize) -> Self {
        Self::from_word(space, Word::unit(arity), rational::one())
            .expect("unit word is valid")
    }

    pub fn from_word(space: SpaceSpec, word: Word, coeff: Rational) -> Result<Self> {
        if let Some(&bad) = word.0.iter().find(|&&l| !space.contains(l)) {
            return Err(Error::Invalid(format!("letter {bad} not in {space}")));
        }
        let mut c = Self::zero(space, word.len());
        if !coeff.is_zero() {
            c.terms.insert(word, coeff);
        }
        Ok(c)
    }

    /// The single letter `l` as a class on `X`.
    pub fn letter(space: SpaceSpec, l: Letter) -> Result<Self> {
        Self::from_word(space, Word::new([l]), rational::one())
    }

    pub fn from_terms(
        space: SpaceSpec,
        arity: usize,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self> {
        let mut c = Self::zero(space, arity);
        for (w, q) in terms {
            if w.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: w.len() });
            }
            if let Some(&bad) = w.0.iter().find(|&&l| !space.contains(l)) {
                return Err(Error::Invalid(format!("letter {bad} not in {space}")));
            }
            c.add_term(w, q);
        }
        Ok(c)
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, w: Word, q: Rational) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += q;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, q);
            }
        }
    }

    /// Common degree of all terms, or `None` for zero or inhomogeneous classes.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|w| w.degree(&self.space));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Part of `self` in cohomological degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> CohClass {
        CohClass {
            space: self.space,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree(&self.space) == d)
                .map(|(w, q)| (w.clone(), q.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &CohClass) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn scale(&self, q: &Rational) -> CohClass {
        if q.is_zero() {
            return Self::zero(self.space, self.arity);
        }
        CohClass {
            space: self.space,
            arity: self.arity,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * q)).collect(),
        }
    }

    pub fn try_add(&self, other: &CohClass) -> Result<CohClass> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.add_term(w.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &CohClass) -> Result<CohClass> {
        self.try_add(&other.scale(&-rational::one()))
    }

    /// Cup product with the Koszul sign rule.
    pub fn mul(&self, other: &CohClass) -> Result<CohClass> {
        self.check_compatible(other)?;
        let inv_top = self.space.top_intersection().recip();
        let mut out = Self::zero(self.space, self.arity);
        for (wa, qa) in &self.terms {
            for (wb, qb) in &other.terms {
                let Some((negative, scalings, w)) = word_product(&self.space, wa, wb) else {
                    continue;
                };
                let mut q = qa * qb;
                for _ in 0..scalings {
                    q *= &inv_top;
                }
                if negative {
                    q = -q;
                }
                out.add_term(w, q);
            }
        }
        Ok(out)
    }

    /// `self^n`, with `self^0` the unit.
    pub fn pow(&self, n: u32) -> CohClass {
        let mut acc = Self::unit(self.space, self.arity);
        for _ in 0..n {
            acc = acc.mul(self).expect("same space and arity");
        }
        acc
    }

    /// Degree pairing: sum over words that are top-degree in every factor.
    pub fn integrate(&self) -> Rational {
        let top = self.space.top_letter();
        let per_factor = self.space.top_intersection();
        let mut total = Rational::zero();
        for (w, q) in &self.terms {
            if w.0.iter().all(|&l| l == top) {
                let mut v = q.clone();
                for _ in 0..self.arity {
                    v *= &per_factor;
                }
                total += v;
            }
        }
        total
    }

    /// Pullback along the projection `X^m -> X^{|S|}` onto the factors `S`.
    pub fn pullback(&self, positions: &[usize], m: usize) -> Result<CohClass> {
        check_index_set(positions, m, false)?;
        if positions.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: positions.len() });
        }
        let mut out = Self::zero(self.space, m);
        for (w, q) in &self.terms {
            let mut letters = Word::unit(m);
            for (&pos, &l) in positions.iter().zip(w.0.iter()) {
                letters.0[pos] = l;
            }
            out.terms.insert(letters, q.clone());
        }
        Ok(out)
    }

    /// Pushforward along the projection onto the factors `keep`, integrating
    /// out the others. Only the top even letter integrates to a nonzero value,
    /// so no Koszul sign arises.
    pub fn pushforward(&self, keep: &[usize]) -> Result<CohClass> {
        check_index_set(keep, self.arity, true)?;
        let top = self.space.top_letter();
        let per_factor = self.space.top_intersection();
        let dropped = self.arity - keep.len();
        let mut scale = rational::one();
        for _ in 0..dropped {
            scale *= &per_factor;
        }
        let mut kept_mask = vec![false; self.arity];
        for &k in keep {
            kept_mask[k] = true;
        }
        let mut out = Self::zero(self.space, keep.len());
        for (w, q) in &self.terms {
            let survives = w
                .0
                .iter()
                .zip(&kept_mask)
                .all(|(&l, &kept)| kept || l == top);
            if survives {
                let reduced = Word(keep.iter().map(|&k| w.0[k]).collect());
                out.add_term(reduced, q * &scale);
            }
        }
        Ok(out)
    }

    /// Moves factor `i` to position `sigma[i]`, with the Koszul sign of the
    /// induced reordering of odd letters.
    pub fn permute(&self, sigma: &[usize]) -> Result<CohClass> {
        check_permutation(sigma, self.arity)?;
        let mut out = Self::zero(self.space, self.arity);
        for (w, q) in &self.terms {
            let (negative, moved) = permute_word(w, sigma);
            out.terms.insert(moved, if negative { -q.clone() } else { q.clone() });
        }
        Ok(out)
    }

    /// Exterior product `a × b = p_1^* a · p_2^* b` on `X^{m+n}`; with units
    /// inserted this is plain concatenation of words.
    pub fn exterior(&self, other: &CohClass) -> Result<CohClass> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        let mut out = Self::zero(self.space, self.arity + other.arity);
        for (wa, qa) in &self.terms {
            for (wb, qb) in &other.terms {
                let w = Word(wa.0.iter().chain(wb.0.iter()).copied().collect());
                out.add_term(w, qa * qb);
            }
        }
        Ok(out)
    }

    pub fn to_serialized(&self) -> SerializedClass {
        SerializedClass {
            space: self.space.to_string(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(w, q)| {
                    let (numerator, denominator) = rational::to_parts(q);
                    SerializedTerm { word: w.names(), numerator, denominator }
                })
                .collect(),
        }
    }
}

pub(crate) fn permute_word(w: &Word, sigma: &[usize]) -> (bool, Word) {
    let mut moved = Word::unit(w.len());
    for (i, &l) in w.0.iter().enumerate() {
        moved.0[sigma[i]] = l;
    }
    let mut inversions = 0usize;
    for i in 0..w.len() {
        if !w.0[i].is_odd() {
            continue;
        }
        for j in i + 1..w.len() {
            if w.0[j].is_odd() && sigma[i] > sigma[j] {
                inversions += 1;
            }
        }
    }
    (inversions % 2 == 1, moved)
}

pub(crate) fn check_index_set(s: &[usize], m: usize, nonempty: bool) -> Result<()> {
    let increasing = s.windows(2).all(|p| p[0] < p[1]);
    let in_range = s.iter().all(|&i| i < m);
    if !increasing || !in_range || (nonempty && s.is_empty()) {
        return Err(Error::BadIndexSet { indices: s.to_vec(), arity: m });
    }
    Ok(())
}

pub(crate) fn check_permutation(sigma: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    let ok = sigma.len() == m
        && sigma.iter().all(|&i| i < m && !std::mem::replace(&mut seen[i], true));
    if !ok {
        return Err(Error::BadPermutation { perm: sigma.to_vec(), arity: m });
    }
    Ok(())
}

impl Add for &CohClass {
    type Output = CohClass;

    fn add(self, rhs: &CohClass) -> CohClass {
        self.try_add(rhs).expect("adding incompatible classes")
    }
}

impl Sub for &CohClass {
    type Output = CohClass;

    fn sub(self, rhs: &CohClass) -> CohClass {
        self.try_sub(rhs).expect("subtracting incompatible classes")
    }
}

impl Neg for &CohClass {
    type Output = CohClass;

    fn neg(self) -> CohClass {
        self.scale(&-rational::one())
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if q.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({}) {w}", rational::render(q))?;
            }
        }
        Ok(())
    }
}

/// Report form of a class: terms in canonical word order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedClass {
    pub space: String,
    pub arity: usize,
    pub terms: Vec<SerializedTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedTerm {
    pub word: Vec<String>,
    pub numerator: String,
    pub denominator: String,
}
