//! Tautological classes on `X^m` and the presentation of the subalgebra they
//! generate in cohomology.
//!
//! With `o = H(p)/T` the normalized point class, `h = H(1)` and
//! `τ = Δ − Σ_j (1/T) H(j) × H(p − j)` the middle Künneth projector, the
//! generators on `X^m` are the pullbacks `o_i`, `h_i` and `τ_ij`. They satisfy,
//! with `b = 2g`,
//!
//! ```text
//! o_i² = 0,  h_i o_i = 0,  h_i^p = T o_i
//! τ_ij o_i = 0,  τ_ij h_i = 0,  τ_ij² = −b o_i o_j
//! τ_ij τ_ik = τ_jk o_i
//! Σ_{σ ∈ S_{b+2}} Π_i τ_{σ(2i−1) σ(2i)} = 0
//! ```
//!
//! [`abstract_hilbert`] computes the Hilbert function of the commutative
//! algebra presented by these relations and [`image_hilbert`] the Hilbert
//! function of the subalgebra of `H*(X^m)` they generate.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;

use crate::ckmck::even_diagonal_part;
use crate::class::{CohClass, Word};
use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::{self, Rational};
use crate::report::{Entry, Report, Status};
use crate::space::{Letter, SpaceKind, SpaceSpec};

/// Default guard for monomial and permutation enumeration.
pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Debug, Clone)]
pub struct TautGenerators {
    space: SpaceSpec,
    m: usize,
    h: Vec<CohClass>,
    o: Vec<CohClass>,
    tau: CohClass,
    tau_t: CohClass,
}

/// `τ = Δ − Σ_j (1/T) H(j) × H(p − j)` on `X^2`.
pub fn tau_class(space: SpaceSpec) -> Result<CohClass> {
    let diag = Correspondence::diagonal(space)?;
    Ok(diag.try_sub(&even_diagonal_part(space)?)?.into_carrier())
}

/// Normalized point class `H(p)/T` on `X`.
pub fn point_class(space: SpaceSpec) -> Result<CohClass> {
    CohClass::from_word(space, Word::new([space.top_letter()]), space.top_intersection().recip())
}

pub fn build_generators(space: SpaceSpec, m: usize) -> Result<TautGenerators> {
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let o = point_class(space)?;
    let h = CohClass::letter(space, Letter::H(1))?;
    let tau = tau_class(space)?;
    let tau_t = tau.permute(&[1, 0])?;
    Ok(TautGenerators {
        space,
        m,
        h: (0..m).map(|i| h.pullback(&[i], m)).collect::<Result<_>>()?,
        o: (0..m).map(|i| o.pullback(&[i], m)).collect::<Result<_>>()?,
        tau,
        tau_t,
    })
}

impl TautGenerators {
    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `b = dim H^p(X) = 2g`.
    pub fn b(&self) -> usize {
        self.space.odd_rank()
    }

    pub fn h(&self, i: usize) -> &CohClass {
        &self.h[i]
    }

    pub fn o(&self, i: usize) -> &CohClass {
        &self.o[i]
    }

    /// `(p_ij)^* τ` for distinct factors `i`, `j` (zero-based, any order).
    pub fn tau(&self, i: usize, j: usize) -> Result<CohClass> {
        if i == j || i >= self.m || j >= self.m {
            return Err(Error::BadIndexSet { indices: vec![i, j], arity: self.m });
        }
        if i < j {
            self.tau.pullback(&[i, j], self.m)
        } else {
            self.tau_t.pullback(&[j, i], self.m)
        }
    }
}

fn prefix(space: &SpaceSpec) -> &'static str {
    match space.kind() {
        SpaceKind::YType => "taut",
        SpaceKind::CurveType => "curve-taut",
    }
}

struct RelationTally {
    name: &'static str,
    min_m: usize,
    instances: usize,
    witness: Option<CohClass>,
}

impl RelationTally {
    fn new(name: &'static str, min_m: usize) -> Self {
        RelationTally { name, min_m, instances: 0, witness: None }
    }

    fn record(&mut self, lhs: CohClass, rhs: CohClass) {
        self.instances += 1;
        if self.witness.is_none() {
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                self.witness = Some(diff);
            }
        }
    }
}

/// Checks the one-, two- and three-factor relations for every index choice
/// available on `X^m`.
pub fn verify_relations(gens: &TautGenerators) -> Result<Report> {
    let space = gens.space;
    let m = gens.m;
    let top = space.top_intersection();
    let b = rational::int(gens.b() as i64);
    let zero = CohClass::zero(space, m);
    let mut tallies = vec![
        RelationTally::new("o_i*o_i=0", 1),
        RelationTally::new("h_i*o_i=0", 1),
        RelationTally::new("h_i^p=T*o_i", 1),
        RelationTally::new("tau_ij*o_i=0", 2),
        RelationTally::new("tau_ij*h_i=0", 2),
        RelationTally::new("tau_ij^2=-b*o_i*o_j", 2),
        RelationTally::new("tau_ij*tau_ik=tau_jk*o_i", 3),
    ];
    for i in 0..m {
        let (o, h) = (&gens.o[i], &gens.h[i]);
        tallies[0].record(o.mul(o)?, zero.clone());
        tallies[1].record(h.mul(o)?, zero.clone());
        tallies[2].record(h.pow(space.top_power() as u32), o.scale(&top));
        for j in (0..m).filter(|&j| j != i) {
            let tij = gens.tau(i, j)?;
            tallies[3].record(tij.mul(o)?, zero.clone());
            tallies[4].record(tij.mul(h)?, zero.clone());
            tallies[5].record(tij.mul(&tij)?, o.mul(&gens.o[j])?.scale(&-b.clone()));
            for k in (j + 1..m).filter(|&k| k != i) {
                let lhs = tij.mul(&gens.tau(i, k)?)?;
                let rhs = gens.tau(j, k)?.mul(o)?;
                tallies[6].record(lhs, rhs);
            }
        }
    }
    let mut report = Report::new();
    for t in tallies.into_iter().filter(|t| m >= t.min_m) {
        report.push(
            Entry::pass_if(format!("{}.{}", prefix(&space), t.name), t.witness.is_none())
                .param("g", space.g() as i64)
                .param("m", m as i64)
                .value("instances", t.instances)
                .value("b", gens.b())
                .witness(t.witness.as_ref()),
        );
    }
    Ok(report)
}

/// Advances `perm` to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `Σ_{σ ∈ S_{b+2}} Π_{i=1}^{b/2+1} τ_{σ(2i−1), σ(2i)}` on `X^{b+2}`.
///
/// `omit` drops the permutation with that lexicographic index from the sum.
pub fn symmetrized_tau_sum(space: SpaceSpec, cap: u128, omit: Option<usize>) -> Result<CohClass> {
    let (total, omitted) = symmetrized_sum_parts(space, cap, omit)?;
    total.try_sub(&omitted)
}

/// Full sum together with the single term at index `omit` (zero if none).
fn symmetrized_sum_parts(space: SpaceSpec, cap: u128, omit: Option<usize>) -> Result<(CohClass, CohClass)> {
    let m = space.odd_rank() + 2;
    let count = factorial(m);
    if count > cap {
        return Err(Error::CapExceeded { what: format!("S_{m} permutation sum"), needed: count, cap });
    }
    let gens = build_generators(space, m)?;
    let mut taus: HashMap<(usize, usize), CohClass> = HashMap::new();
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            taus.insert((i, j), gens.tau(i, j)?);
        }
    }
    let mut perms = Vec::with_capacity(count as usize);
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        perms.push(perm.clone());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let term = |sigma: &[usize]| {
        sigma.chunks(2).fold(CohClass::unit(space, m), |prod, pair| {
            prod.mul(&taus[&(pair[0], pair[1])]).expect("same arity")
        })
    };
    let partials: Vec<CohClass> = perms
        .par_chunks(24)
        .map(|chunk| chunk.iter().fold(CohClass::zero(space, m), |acc, sigma| &acc + &term(sigma)))
        .collect();
    let mut total = CohClass::zero(space, m);
    for p in &partials {
        total = &total + p;
    }
    let omitted = match omit.and_then(|i| perms.get(i)) {
        Some(sigma) => term(sigma),
        None => CohClass::zero(space, m),
    };
    Ok((total, omitted))
}

pub fn symmetrized_report(space: SpaceSpec, cap: u128) -> Report {
    let m = space.odd_rank() + 2;
    let name = format!("{}.symmetrized-tau-sum", prefix(&space));
    let entry = match symmetrized_sum_parts(space, cap, Some(0)) {
        Ok((sum, first)) => {
            let control = sum.try_sub(&first).expect("same space");
            Entry::pass_if(name, sum.is_zero() && !control.is_zero())
                .value("terms", factorial(m))
                .value("sum-terms", sum.len())
                .value("control-terms", control.len())
                .witness((!sum.is_zero()).then_some(&sum))
        }
        Err(Error::CapExceeded { needed, cap, .. }) => Entry::new(name, Status::SkippedCap)
            .value("terms", needed)
            .value("cap", cap),
        Err(e) => Entry::new(name, Status::Fail).value("error", e),
    };
    let mut report = Report::new();
    report.push(entry.param("g", space.g() as i64).param("m", m as i64));
    report
}

/// A generator of the abstract tautological algebra (zero-based factors).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    H(usize),
    O(usize),
    Tau(usize, usize),
}

/// Relation families of the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationFamily {
    /// `o_i² = 0`, `h_i o_i = 0`, `h_i^p = T o_i`.
    OneFactor,
    /// `τ_ij o_i = 0`, `τ_ij h_i = 0`, `τ_ij² = −b o_i o_j`.
    TwoFactor,
    /// `τ_ij τ_ik = τ_jk o_i`.
    ThreeFactor,
    /// Vanishing of the symmetrized product of `b/2 + 1` factors `τ`.
    Symmetrized,
}

#[derive(Debug, Clone, Default)]
pub struct AbstractOptions {
    pub omit: Vec<RelationFamily>,
}

type Monomial = Vec<u16>;
type Poly = BTreeMap<Monomial, Rational>;

/// Generators of the tautological algebra on `X^m` with their weights, in
/// units of cohomological degree 2.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    space: SpaceSpec,
    m: usize,
    gens: Vec<Gen>,
    weights: Vec<u32>,
    index: HashMap<Gen, usize>,
}

impl GeneratorSet {
    pub fn new(space: SpaceSpec, m: usize) -> Self {
        let p = space.top_power() as u32;
        let mut gens = Vec::new();
        let mut weights = Vec::new();
        for i in 0..m {
            gens.push(Gen::H(i));
            weights.push(1);
        }
        for i in 0..m {
            gens.push(Gen::O(i));
            weights.push(p);
        }
        for i in 0..m {
            for j in i + 1..m {
                gens.push(Gen::Tau(i, j));
                weights.push(p);
            }
        }
        let index = gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        GeneratorSet { space, m, gens, weights, index }
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    /// Highest nonzero cohomological degree on `X^m`.
    pub fn top_degree(&self) -> u32 {
        self.m as u32 * self.space.top_degree()
    }

    fn idx(&self, g: Gen) -> usize {
        let g = match g {
            Gen::Tau(i, j) if i > j => Gen::Tau(j, i),
            other => other,
        };
        self.index[&g]
    }

    fn mono(&self, factors: &[(Gen, u16)]) -> Monomial {
        let mut e = vec![0u16; self.gens.len()];
        for &(g, k) in factors {
            e[self.idx(g)] += k;
        }
        e
    }

    fn weight(&self, mono: &[u16]) -> u32 {
        mono.iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    /// All monomials of the given weight, in lexicographic exponent order.
    fn monomials(&self, weight: u32, cap: u128) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        let mut current = vec![0u16; self.gens.len()];
        self.fill(0, weight, &mut current, &mut out, cap)?;
        Ok(out)
    }

    fn fill(&self, k: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>, cap: u128) -> Result<()> {
        if k == self.gens.len() {
            if left == 0 {
                if out.len() as u128 >= cap {
                    return Err(Error::CapExceeded {
                        what: "tautological monomials".into(),
                        needed: out.len() as u128 + 1,
                        cap,
                    });
                }
                out.push(cur.clone());
            }
            return Ok(());
        }
        let w = self.weights[k];
        for e in (0..=left / w).rev() {
            cur[k] = e as u16;
            self.fill(k + 1, left - e * w, cur, out, cap)?;
        }
        cur[k] = 0;
        Ok(())
    }

    /// Relations of the presentation as homogeneous polynomials.
    fn relations(&self, omit: &[RelationFamily]) -> Vec<Poly> {
        let m = self.m;
        let p = self.space.top_power();
        let t = self.space.top_intersection();
        let b = rational::int(self.space.odd_rank() as i64);
        let one = rational::one();
        let mut rels: Vec<Poly> = Vec::new();
        let mut push = |terms: Vec<(Monomial, Rational)>| {
            let mut poly = Poly::new();
            for (mono, q) in terms {
                *poly.entry(mono).or_insert_with(Rational::zero) += q;
            }
            poly.retain(|_, q| !q.is_zero());
            if !poly.is_empty() {
                rels.push(poly);
            }
        };
        use Gen::*;
        if !omit.contains(&RelationFamily::OneFactor) {
            for i in 0..m {
                push(vec![(self.mono(&[(O(i), 2)]), one.clone())]);
                push(vec![(self.mono(&[(H(i), 1), (O(i), 1)]), one.clone())]);
                push(vec![
                    (self.mono(&[(H(i), p)]), one.clone()),
                    (self.mono(&[(O(i), 1)]), -t.clone()),
                ]);
            }
        }
        if !omit.contains(&RelationFamily::TwoFactor) {
            for i in 0..m {
                for j in (0..m).filter(|&j| j != i) {
                    push(vec![(self.mono(&[(Tau(i, j), 1), (O(i), 1)]), one.clone())]);
                    push(vec![(self.mono(&[(Tau(i, j), 1), (H(i), 1)]), one.clone())]);
                    if i < j {
                        push(vec![
                            (self.mono(&[(Tau(i, j), 2)]), one.clone()),
                            (self.mono(&[(O(i), 1), (O(j), 1)]), b.clone()),
                        ]);
                    }
                }
            }
        }
        if !omit.contains(&RelationFamily::ThreeFactor) {
            for i in 0..m {
                for j in (0..m).filter(|&j| j != i) {
                    for k in (j + 1..m).filter(|&k| k != i) {
                        push(vec![
                            (self.mono(&[(Tau(i, j), 1), (Tau(i, k), 1)]), one.clone()),
                            (self.mono(&[(Tau(j, k), 1), (O(i), 1)]), -one.clone()),
                        ]);
                    }
                }
            }
        }
        let size = self.space.odd_rank() + 2;
        if !omit.contains(&RelationFamily::Symmetrized) && m >= size {
            // The τ's commute, so the sum over S_{b+2} is a nonzero multiple of
            // the sum over perfect matchings of the chosen factors.
            for subset in combinations(m, size) {
                let terms = perfect_matchings(&subset)
                    .into_iter()
                    .map(|pairs| {
                        let factors: Vec<(Gen, u16)> = pairs.iter().map(|&(a, c)| (Tau(a, c), 1)).collect();
                        (self.mono(&factors), one.clone())
                    })
                    .collect();
                push(terms);
            }
        }
        rels
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for idx in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|&(k, _)| k + 1 != idx).map(|(_, &v)| v).collect();
        for mut tail in perfect_matchings(&rest) {
            tail.insert(0, (first, items[idx]));
            out.push(tail);
        }
    }
    out
}

/// Hilbert function of the abstract presentation in cohomological degrees
/// `0, 2, …, top + 2p` (the range past `top` certifies that every monomial of
/// degree above `top` lies in the ideal, since each such monomial is divisible
/// by one whose degree falls in that range).
pub fn abstract_hilbert(space: SpaceSpec, m: usize, cap: u128, options: &AbstractOptions) -> Result<BTreeMap<u32, usize>> {
    let set = GeneratorSet::new(space, m);
    let rels = set.relations(&options.omit);
    let top_weight = set.top_degree() / 2;
    let max_weight = top_weight + space.top_power() as u32;
    let rel_weights: Vec<u32> = rels
        .iter()
        .map(|r| set.weight(r.keys().next().expect("nonempty relation")))
        .collect();

    let mut by_weight = Vec::with_capacity(max_weight as usize + 1);
    let mut enumerated: u128 = 0;
    for d in 0..=max_weight {
        let monos = set.monomials(d, cap)?;
        enumerated += monos.len() as u128;
        if enumerated > cap {
            return Err(Error::CapExceeded { what: "tautological monomials".into(), needed: enumerated, cap });
        }
        by_weight.push(monos);
    }
    let weights: Vec<u32> = (0..=max_weight).collect();
    let dims: Vec<Result<(u32, usize)>> = weights
        .par_iter()
        .map(|&d| {
            let basis = &by_weight[d as usize];
            let position: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, mono)| (mono, k)).collect();
            let mut ech: Echelon<usize> = Echelon::new();
            let mut rows_seen: u128 = 0;
            for (rel, &w) in rels.iter().zip(&rel_weights) {
                if w > d {
                    continue;
                }
                for mult in &by_weight[(d - w) as usize] {
                    rows_seen += 1;
                    if rows_seen > cap {
                        return Err(Error::CapExceeded { what: "relation multiples".into(), needed: rows_seen, cap });
                    }
                    let row: SparseVec<usize> = rel
                        .iter()
                        .map(|(mono, q)| {
                            let prod: Monomial = mono.iter().zip(mult).map(|(a, b)| a + b).collect();
                            (position[&prod], q.clone())
                        })
                        .collect();
                    ech.insert(row);
                    if ech.rank() == basis.len() {
                        break;
                    }
                }
            }
            Ok((2 * d, basis.len() - ech.rank()))
        })
        .collect();
    dims.into_iter().collect()
}

/// Hilbert function of the subalgebra of `H*(X^m)` generated by `o_i`, `h_i`,
/// `τ_ij`, in degrees `0, 2, …, top`.
pub fn image_hilbert(space: SpaceSpec, m: usize, cap: u128) -> Result<BTreeMap<u32, usize>> {
    let set = GeneratorSet::new(space, m);
    let gens = build_generators(space, m)?;
    let classes: Vec<CohClass> = set
        .gens
        .iter()
        .map(|&g| match g {
            Gen::H(i) => Ok(gens.h(i).clone()),
            Gen::O(i) => Ok(gens.o(i).clone()),
            Gen::Tau(i, j) => gens.tau(i, j),
        })
        .collect::<Result<_>>()?;
    let top_weight = set.top_degree() / 2;
    let mut values: HashMap<Monomial, CohClass> = HashMap::new();
    values.insert(vec![0; set.gens.len()], CohClass::unit(space, m));
    let mut out = BTreeMap::new();
    let mut enumerated: u128 = 0;
    for d in 0..=top_weight {
        let basis = set.monomials(d, cap)?;
        enumerated += basis.len() as u128;
        if enumerated > cap {
            return Err(Error::CapExceeded { what: "tautological monomials".into(), needed: enumerated, cap });
        }
        let evaluated: Vec<(Monomial, CohClass)> = basis
            .par_iter()
            .filter(|mono| mono.iter().any(|&e| e > 0))
            .map(|mono| {
                let k = mono.iter().position(|&e| e > 0).expect("nonconstant");
                let mut parent = mono.clone();
                parent[k] -= 1;
                let base = &values[&parent];
                let value = if base.is_zero() { base.clone() } else { base.mul(&classes[k]).expect("same arity") };
                (mono.clone(), value)
            })
            .collect();
        let mut ech: Echelon<Word> = Echelon::new();
        if d == 0 {
            ech.insert(CohClass::unit(space, m).terms().clone());
        }
        for (mono, value) in evaluated {
            if !value.is_zero() {
                ech.insert(value.terms().clone());
            }
            values.insert(mono, value);
        }
        out.insert(2 * d, ech.rank());
    }
    Ok(out)
}

fn render_dims(dims: &BTreeMap<u32, usize>) -> String {
    dims.iter().map(|(d, n)| format!("{d}:{n}")).collect::<Vec<_>>().join(",")
}

/// Compares the abstract and image Hilbert functions; passes iff they agree
/// in every degree up to `top` and the abstract side vanishes above it.
pub fn injectivity_report(space: SpaceSpec, m: usize, cap: u128) -> Report {
    injectivity_report_with(space, m, cap, &AbstractOptions::default())
}

pub fn injectivity_report_with(space: SpaceSpec, m: usize, cap: u128, options: &AbstractOptions) -> Report {
    let name = format!("{}.hilbert-match", prefix(&space));
    let result = image_hilbert(space, m, cap).and_then(|img| Ok((img, abstract_hilbert(space, m, cap, options)?)));
    let entry = match result {
        Ok((image, abs)) => {
            let top = m as u32 * space.top_degree();
            let mismatches: Vec<u32> = abs
                .iter()
                .filter(|&(d, n)| image.get(d).copied().unwrap_or(0) != *n)
                .map(|(d, _)| *d)
                .collect();
            let above_top_zero = abs.iter().filter(|(d, _)| **d > top).all(|(_, n)| *n == 0);
            let mut e = Entry::pass_if(name, mismatches.is_empty() && above_top_zero)
                .value("image", render_dims(&image))
                .value("abstract", render_dims(&abs));
            if !mismatches.is_empty() {
                e = e.value(
                    "mismatch-degrees",
                    mismatches.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                );
            }
            e
        }
        Err(Error::CapExceeded { needed, cap, .. }) => Entry::new(name, Status::SkippedCap)
            .value("needed", needed)
            .value("cap", cap),
        Err(e) => Entry::new(name, Status::Fail).value("error", e),
    };
    let mut report = Report::new();
    report.push(entry.param("g", space.g() as i64).param("m", m as i64));
    report
}

/// Canonical class `K_C = (2g − 2)·pt` on a curve of genus `g`.
pub fn canonical_class(space: SpaceSpec) -> Result<CohClass> {
    if space.kind() != SpaceKind::CurveType {
        return Err(Error::Invalid("canonical class is defined for the curve model".into()));
    }
    Ok(point_class(space)?.scale(&rational::int(2 * space.g() as i64 - 2)))
}

/// `Δ_C · p_j^*(K_C) − c · K_C × K_C` on `C × C`, for `factor` `j ∈ {0, 1}`.
pub fn fp_class_with(g: u32, factor: usize, coefficient: &Rational) -> Result<CohClass> {
    if g < 2 {
        return Err(Error::Invalid(format!("genus {g} < 2: K_C has degree {}", 2 * g as i64 - 2)));
    }
    if factor > 1 {
        return Err(Error::BadIndexSet { indices: vec![factor], arity: 2 });
    }
    let space = SpaceSpec::curve(g)?;
    let k = canonical_class(space)?;
    let diag = Correspondence::diagonal(space)?;
    let first = diag.carrier().mul(&k.pullback(&[factor], 2)?)?;
    let second = k.exterior(&k)?.scale(coefficient);
    first.try_sub(&second)
}

/// Faber–Pandharipande class with coefficient `1/(2g − 2)`.
pub fn fp_class(g: u32) -> Result<CohClass> {
    if g < 2 {
        return Err(Error::Invalid(format!("genus {g} < 2")));
    }
    fp_class_with(g, 0, &rational::frac(1, 2 * g as i64 - 2))
}

pub fn fp_report(g: u32) -> Report {
    let name = "fp.cohomologically-trivial";
    let entry = match (fp_class_with(g, 0, &rational::frac(1, 2 * g as i64 - 2)), fp_class_with(g, 1, &rational::frac(1, 2 * g as i64 - 2))) {
        (Ok(a), Ok(b)) => {
            let perturbed = fp_class_with(g, 0, &rational::frac(1, 2 * g as i64 - 1)).expect("same genus");
            Entry::pass_if(name, a.is_zero() && b.is_zero() && !perturbed.is_zero())
                .value("perturbed-terms", perturbed.len())
                .witness([&a, &b].into_iter().find(|c| !c.is_zero()))
        }
        (Err(e), _) | (_, Err(e)) => Entry::new(name, Status::Fail).value("error", e),
    };
    let mut report = Report::new();
    report.push(entry.param("g", g as i64));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ckmck::build_ck;
    use crate::rational::{frac, int};

    fn y(g: u32) -> SpaceSpec {
        SpaceSpec::y_type(g).unwrap()
    }

    #[test]
    fn tau_is_middle_projector_and_symmetric() {
        for g in 1..=3 {
            let tau = tau_class(y(g)).unwrap();
            let ck = build_ck(g).unwrap();
            assert_eq!(&tau, ck.projector(2 * g - 1).unwrap().carrier());
            assert_eq!(tau.permute(&[1, 0]).unwrap(), tau);
            let t = Correspondence::new(tau.clone(), 1, 1).unwrap();
            assert_eq!(t.compose(&t).unwrap(), t);
        }
    }

    #[test]
    fn tau_has_2g_odd_terms() {
        for g in 1..=4 {
            let gens = build_generators(y(g), 2).unwrap();
            let t12 = gens.tau(0, 1).unwrap();
            assert_eq!(t12.len(), 2 * g as usize);
            assert!(t12.terms().keys().all(|w| w.letters().iter().all(|l| l.is_odd())));
        }
        // g = 1: f⊗e − e⊗f
        let s = y(1);
        let expected = CohClass::from_terms(
            s,
            2,
            [
                (Word::new([Letter::F(1), Letter::E(1)]), int(1)),
                (Word::new([Letter::E(1), Letter::F(1)]), int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(tau_class(s).unwrap(), expected);
    }

    #[test]
    fn generator_degrees() {
        let gens = build_generators(y(2), 3).unwrap();
        assert_eq!(gens.h(0).degree(), Some(2));
        assert_eq!(gens.o(1).degree(), Some(6));
        assert_eq!(gens.tau(0, 2).unwrap().degree(), Some(6));
        assert!(gens.o(0).mul(gens.h(0)).unwrap().is_zero());
        assert!(gens.tau(1, 1).is_err());
        assert_eq!(gens.tau(2, 0).unwrap(), gens.tau(0, 2).unwrap());
    }

    #[test]
    fn relations_g2() {
        let r = verify_relations(&build_generators(y(2), 3).unwrap()).unwrap();
        assert_eq!(r.entries.len(), 7);
        assert!(r.all_pass(), "{r:?}");
        let gens = build_generators(y(2), 2).unwrap();
        let t = gens.tau(0, 1).unwrap();
        assert_eq!(t.mul(&t).unwrap(), gens.o(0).mul(gens.o(1)).unwrap().scale(&int(-4)));
        let one = verify_relations(&build_generators(y(1), 1).unwrap()).unwrap();
        assert_eq!(one.entries.len(), 3);
        assert!(one.all_pass());
    }

    #[test]
    fn curve_relations_in_own_normalization() {
        for g in 1..=3 {
            let r = verify_relations(&build_generators(SpaceSpec::curve(g).unwrap(), 3).unwrap()).unwrap();
            assert!(r.all_pass(), "curve g={g}: {r:?}");
        }
    }

    #[test]
    fn symmetrized_sum_g1() {
        let s = symmetrized_tau_sum(y(1), DEFAULT_CAP, None).unwrap();
        assert!(s.is_zero());
        let control = symmetrized_tau_sum(y(1), DEFAULT_CAP, Some(5)).unwrap();
        assert!(!control.is_zero());
        assert!(matches!(symmetrized_tau_sum(y(1), 23, None), Err(Error::CapExceeded { needed: 24, .. })));
    }

    #[test]
    fn permutation_enumeration() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(p, vec![2, 1, 0]);
        assert_eq!(perfect_matchings(&[0, 1, 2, 3]).len(), 3);
        assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).len(), 15);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn image_hilbert_single_factor() {
        let dims = image_hilbert(y(2), 1, DEFAULT_CAP).unwrap();
        assert_eq!(dims.values().copied().collect::<Vec<_>>(), vec![1, 1, 1, 1]);
        for g in 1..=3 {
            assert_eq!(image_hilbert(y(g), 1, DEFAULT_CAP).unwrap()[&0], 1);
        }
    }

    #[test]
    fn abstract_matches_single_factor() {
        let abs = abstract_hilbert(y(2), 1, DEFAULT_CAP, &AbstractOptions::default()).unwrap();
        assert_eq!(abs[&0], 1);
        let img = image_hilbert(y(2), 1, DEFAULT_CAP).unwrap();
        for (d, n) in &img {
            assert_eq!(abs[d], *n, "degree {d}");
        }
        assert!(abs.iter().filter(|(d, _)| **d > 6).all(|(_, n)| *n == 0));
    }

    #[test]
    fn fp_vanishes_and_perturbation_does_not() {
        for g in [2, 3] {
            assert!(fp_class(g).unwrap().is_zero());
            assert!(fp_class_with(g, 1, &frac(1, 2 * g as i64 - 2)).unwrap().is_zero());
            assert!(!fp_class_with(g, 0, &frac(1, 7)).unwrap().is_zero());
        }
        assert!(fp_class(1).is_err());
    }
}
