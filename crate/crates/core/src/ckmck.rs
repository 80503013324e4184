//! Chow–Künneth projectors for the two Hodge-level-1 profiles and their
//! multiplicativity in cohomology.
//!
//! For `X` with even generator powers `H(0..=p)` and top intersection `T`, the
//! even projectors are
//!
//! ```text
//! π^{2j} = (1/T) H(p − j) × H(j),     j = 0..=p
//! ```
//!
//! and the odd projector is the remainder `π^p = Δ − Σ_j π^{2j}`. Degrees are
//! cohomological and run over `0..=2p`; on `Y` (where `p = 2g − 1`) the
//! nonzero ones are `0, 2, …, 4g − 2` and the middle degree `2g − 1`, and the
//! projectors in the other odd degrees are zero.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::class::{CohClass, Word};
use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::report::{Entry, Report, Status};
use crate::space::{Letter, SpaceSpec};

#[derive(Debug, Clone)]
pub struct CkDecomposition {
    space: SpaceSpec,
    diagonal: Correspondence,
    small_diagonal: Correspondence,
    projectors: BTreeMap<u32, Correspondence>,
}

/// `H(a) × H(b)` as a correspondence `X ⊢ X`.
pub(crate) fn even_product(space: SpaceSpec, a: u16, b: u16) -> Result<Correspondence> {
    let carrier = CohClass::from_word(space, Word::new([Letter::H(a), Letter::H(b)]), rational::one())?;
    Correspondence::new(carrier, 1, 1)
}

/// `Σ_j (1/T) H(p − j) × H(j)`, the algebraic part of the diagonal.
pub fn even_diagonal_part(space: SpaceSpec) -> Result<Correspondence> {
    let p = space.top_power();
    let inv = space.top_intersection().recip();
    let mut acc = Correspondence::new(CohClass::zero(space, 2), 1, 1)?;
    for j in 0..=p {
        acc = acc.try_add(&even_product(space, p - j, j)?.scale(&inv))?;
    }
    Ok(acc)
}

impl CkDecomposition {
    pub fn new(space: SpaceSpec) -> Result<Self> {
        let diagonal = Correspondence::diagonal(space)?;
        let small_diagonal = Correspondence::small_diagonal_from(&diagonal)?;
        let p = space.top_power();
        let inv = space.top_intersection().recip();
        let mut projectors = BTreeMap::new();
        let mut odd = diagonal.clone();
        for j in 0..=p {
            let pi = even_product(space, p - j, j)?.scale(&inv);
            odd = odd.try_sub(&pi)?;
            projectors.insert(2 * j as u32, pi);
        }
        projectors.insert(space.odd_degree(), odd);
        // H^i = 0 for the remaining degrees up to 2 dim X; their projectors are zero.
        for i in 0..=space.top_degree() {
            projectors
                .entry(i)
                .or_insert_with(|| Correspondence::new(CohClass::zero(space, 2), 1, 1).expect("arity 2"));
        }
        Ok(CkDecomposition { space, diagonal, small_diagonal, projectors })
    }

    /// Builds a decomposition from explicit projectors (used to probe the
    /// verifier with tampered data).
    pub fn from_parts(space: SpaceSpec, projectors: BTreeMap<u32, Correspondence>) -> Result<Self> {
        let diagonal = Correspondence::diagonal(space)?;
        let small_diagonal = Correspondence::small_diagonal_from(&diagonal)?;
        Ok(CkDecomposition { space, diagonal, small_diagonal, projectors })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn diagonal(&self) -> &Correspondence {
        &self.diagonal
    }

    pub fn small_diagonal(&self) -> &Correspondence {
        &self.small_diagonal
    }

    pub fn projectors(&self) -> &BTreeMap<u32, Correspondence> {
        &self.projectors
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.projectors.keys().copied().collect()
    }

    pub fn projector(&self, degree: u32) -> Result<&Correspondence> {
        self.projectors.get(&degree).ok_or(Error::UnrealizedDegree(degree))
    }

    pub fn replace(&mut self, degree: u32, pi: Correspondence) {
        self.projectors.insert(degree, pi);
    }
}

/// The decomposition of a smooth intersection of two quadrics in `P^{2g+1}`.
pub fn build_ck(g: u32) -> Result<CkDecomposition> {
    CkDecomposition::new(SpaceSpec::y_type(g)?)
}

/// Runs `check` until the first failure; returns the number of items checked
/// and the failing witness, if any.
fn first_failure<T, F>(items: impl IntoIterator<Item = T>, mut check: F) -> (usize, Option<CohClass>)
where
    F: FnMut(T) -> Option<CohClass>,
{
    let mut count = 0;
    for item in items {
        count += 1;
        if let Some(w) = check(item) {
            return (count, Some(w));
        }
    }
    (count, None)
}

/// Checks idempotency, mutual orthogonality, completeness `Σ π = Δ` and the
/// Künneth image condition on the full basis of `H*(X)`.
pub fn verify_ck(d: &CkDecomposition) -> Report {
    let g = d.space.g() as i64;
    let mut report = Report::new();
    let projectors: Vec<(u32, &Correspondence)> = d.projectors.iter().map(|(&k, p)| (k, p)).collect();

    let (checked, witness) = first_failure(projectors.iter(), |(_, pi)| {
        let sq = pi.compose(pi).expect("square arities");
        let diff = sq.try_sub(pi).expect("same shape");
        (!diff.is_zero()).then(|| diff.into_carrier())
    });
    report.push(
        Entry::pass_if("ck.idempotent", witness.is_none())
            .param("g", g)
            .value("projectors", checked)
            .witness(witness.as_ref()),
    );

    let pairs = projectors
        .iter()
        .flat_map(|a| projectors.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.0 != b.0);
    let (checked, witness) = first_failure(pairs, |((_, p), (_, q))| {
        let c = p.compose(q).expect("square arities");
        (!c.is_zero()).then(|| c.into_carrier())
    });
    report.push(
        Entry::pass_if("ck.orthogonal", witness.is_none())
            .param("g", g)
            .value("pairs", checked)
            .witness(witness.as_ref()),
    );

    let mut sum = CohClass::zero(d.space, 2);
    for (_, pi) in &projectors {
        sum = &sum + pi.carrier();
    }
    let residue = &sum - d.diagonal.carrier();
    report.push(
        Entry::pass_if("ck.completeness", residue.is_zero())
            .param("g", g)
            .witness((!residue.is_zero()).then_some(&residue)),
    );

    let basis = d.space.basis();
    let cells = projectors
        .iter()
        .flat_map(|pk| basis.iter().map(move |&l| (pk, l)));
    let (checked, witness) = first_failure(cells, |((k, pi), l)| {
        let alpha = CohClass::letter(d.space, l).expect("basis letter");
        let image = pi.act(&alpha).expect("arity 1");
        let expected = if d.space.degree(l) == *k { alpha } else { CohClass::zero(d.space, 1) };
        let diff = &image - &expected;
        (!diff.is_zero()).then_some(diff)
    });
    report.push(
        Entry::pass_if("ck.kunneth-image", witness.is_none())
            .param("g", g)
            .value("cells", checked)
            .witness(witness.as_ref()),
    );
    report
}

/// `π^k ∘ Δ^sm ∘ (π^i × π^j)` as a correspondence `X^2 ⊢ X`.
pub fn mck_defect_corr(d: &CkDecomposition, i: u32, j: u32, k: u32) -> Result<Correspondence> {
    let (pi, pj, pk) = (d.projector(i)?, d.projector(j)?, d.projector(k)?);
    pi.exterior_product(pj)?.compose(&d.small_diagonal)?.compose(pk)
}

/// Carrier of `π^k ∘ Δ^sm ∘ (π^i × π^j)` on `X^3`.
pub fn mck_defect(d: &CkDecomposition, i: u32, j: u32, k: u32) -> Result<CohClass> {
    Ok(mck_defect_corr(d, i, j, k)?.into_carrier())
}

/// Enumerates every triple of realized degrees. The multiplicativity check
/// passes iff all triples with `i + j != k` vanish; a second entry records
/// that some triple with `i + j = k` is nonzero.
pub fn mck_full_check(d: &CkDecomposition) -> Report {
    let g = d.space.g() as i64;
    let degrees = d.degrees();
    let mut triples = Vec::with_capacity(degrees.len().pow(3));
    for &i in &degrees {
        for &j in &degrees {
            for &k in &degrees {
                triples.push((i, j, k));
            }
        }
    }
    let results: Vec<((u32, u32, u32), CohClass)> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let defect = mck_defect(d, i, j, k).expect("realized degrees");
            ((i, j, k), defect)
        })
        .collect();

    let mut off_diagonal = 0usize;
    let mut nonzero_off = 0usize;
    let mut on_diagonal_nonzero = 0usize;
    let mut witness = None;
    let mut witness_triple = None;
    for ((i, j, k), defect) in &results {
        if i + j != *k {
            off_diagonal += 1;
            if !defect.is_zero() {
                nonzero_off += 1;
                if witness.is_none() {
                    witness = Some(defect.clone());
                    witness_triple = Some((i, j, k));
                }
            }
        } else if !defect.is_zero() {
            on_diagonal_nonzero += 1;
        }
    }
    let mut report = Report::new();
    let mut vanishing = Entry::pass_if("mck.vanishing", nonzero_off == 0)
        .param("g", g)
        .value("triples", off_diagonal)
        .value("nonzero", nonzero_off)
        .witness(witness.as_ref());
    if let Some((i, j, k)) = witness_triple {
        vanishing = vanishing.value("first-nonzero", format!("({i},{j},{k})"));
    }
    report.push(vanishing);
    report.push(
        Entry::pass_if("mck.nonvacuous", on_diagonal_nonzero > 0)
            .param("g", g)
            .value("nonzero-graded-triples", on_diagonal_nonzero),
    );
    report
}

/// Coefficients `(a_1, …, a_{2g})` with `Δ · p_j^* h = Σ a_i h^i × h^{2g−i}`
/// on `Y × Y`, checked for both `j = 1, 2`.
///
/// The classes `h^i × h^{2g−i}` for `1 ≤ i ≤ 2g − 1` are linearly independent
/// and determine `a_1..a_{2g−1}`; the last one, `h^{2g} × h^0`, is zero in
/// cohomology because `h^{2g} = 0`, so `a_{2g}` is read off the Künneth
/// component `h^{2g−1} × h^0` of the diagonal whose product with `p_1^* h`
/// produces it.
pub fn hyp_coefficients(g: u32) -> Result<Vec<Rational>> {
    let space = SpaceSpec::y_type(g)?;
    let diag = Correspondence::diagonal(space)?;
    let p = space.top_power();
    let h = CohClass::letter(space, Letter::H(1))?;
    let n = 2 * g as u16;

    let mut solved: Option<Vec<Rational>> = None;
    for factor in 0..2 {
        let product = diag.carrier().mul(&h.pullback(&[factor], 2)?)?;
        let mut residue = product.clone();
        let mut coeffs = Vec::with_capacity(n as usize);
        for i in 1..n {
            let w = Word::new([Letter::H(i), Letter::H(n - i)]);
            let a = product.coeff(&w);
            residue.add_term(w, -a.clone());
            coeffs.push(a);
        }
        if !residue.is_zero() {
            return Err(Error::NotDecomposable(residue.len()));
        }
        match &solved {
            None => solved = Some(coeffs),
            Some(prev) if *prev != coeffs => {
                return Err(Error::Invalid("coefficients differ between the two factors".into()))
            }
            Some(_) => {}
        }
    }
    let mut coeffs = solved.expect("two factors checked");
    coeffs.push(diag.carrier().coeff(&Word::new([Letter::H(p), Letter::H(0)])));
    Ok(coeffs)
}

/// `(Δ − Σ_j π^{2j}) · p_j^* h` for `j = 1, 2`; both vanish exactly.
pub fn hyp_residues(g: u32) -> Result<[CohClass; 2]> {
    let space = SpaceSpec::y_type(g)?;
    let tau = Correspondence::diagonal(space)?.try_sub(&even_diagonal_part(space)?)?;
    let h = CohClass::letter(space, Letter::H(1))?;
    let r1 = tau.carrier().mul(&h.pullback(&[0], 2)?)?;
    let r2 = tau.carrier().mul(&h.pullback(&[1], 2)?)?;
    Ok([r1, r2])
}

pub fn hyp_report(g: u32) -> Report {
    let mut report = Report::new();
    let entry = match (hyp_coefficients(g), hyp_residues(g)) {
        (Ok(coeffs), Ok(residues)) => {
            let quarter = rational::frac(1, 4);
            let ok = coeffs.iter().all(|a| *a == quarter) && residues.iter().all(CohClass::is_zero);
            let rendered: Vec<String> = coeffs.iter().map(rational::render).collect();
            Entry::pass_if("hyp.coefficients", ok)
                .value("a", rendered.join(","))
                .witness(residues.iter().find(|r| !r.is_zero()))
        }
        (Err(e), _) | (_, Err(e)) => Entry::new("hyp.coefficients", Status::Fail).value("error", e),
    };
    report.push(entry.param("g", g as i64));
    report
}

/// Checks `(p × q × r)_* Δ^sm = r ∘ Δ^sm ∘ ᵗ(p × q)` for the given projector
/// degrees.
pub fn lieberman_defect(d: &CkDecomposition, i: u32, j: u32, k: u32) -> Result<CohClass> {
    let (p, q, r) = (d.projector(i)?, d.projector(j)?, d.projector(k)?);
    let triple = p.exterior_product(q)?.exterior_product(r)?;
    let lhs = triple.act(d.small_diagonal.carrier())?;
    let pq_t = p.exterior_product(q)?.transpose();
    let rhs = pq_t.compose(&d.small_diagonal)?.compose(r)?;
    lhs.try_sub(rhs.carrier())
}
