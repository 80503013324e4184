//! Correspondences between powers of a fixed space.
//!
//! A correspondence `X^a ⊢ X^b` is a class on `X^{a+b}` whose first `a`
//! factors are the source and last `b` the target. It acts on classes by
//! `α ↦ p_{target*}(p_{source}^* α · Γ)`.

use crate::class::CohClass;
use crate::error::{Error, Result};
use crate::linalg::{solve_unique, SparseVec};
use crate::class::Word;
use crate::space::SpaceSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    carrier: CohClass,
    source: usize,
    target: usize,
}

fn range(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

impl Correspondence {
    pub fn new(carrier: CohClass, source: usize, target: usize) -> Result<Self> {
        if carrier.arity() != source + target {
            return Err(Error::ArityMismatch { expected: source + target, found: carrier.arity() });
        }
        Ok(Correspondence { carrier, source, target })
    }

    /// Decomposable correspondence `a × b` from `X^{arity(a)}` to `X^{arity(b)}`.
    pub fn exterior_of(a: &CohClass, b: &CohClass) -> Result<Self> {
        Self::new(a.exterior(b)?, a.arity(), b.arity())
    }

    pub fn carrier(&self) -> &CohClass {
        &self.carrier
    }

    pub fn into_carrier(self) -> CohClass {
        self.carrier
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn space(&self) -> &SpaceSpec {
        self.carrier.space()
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.is_zero()
    }

    /// Class of the diagonal, found as the unique `D` on `X^2` acting as the
    /// identity on every basis letter.
    pub fn diagonal(space: SpaceSpec) -> Result<Self> {
        let basis = space.basis();
        let index_of = |l| basis.iter().position(|&b| b == l).expect("basis letter");
        let unknowns: Vec<Word> = basis
            .iter()
            .flat_map(|&x| basis.iter().map(move |&y| Word::new([x, y])))
            .collect();
        let inputs: Vec<CohClass> = basis
            .iter()
            .map(|&l| CohClass::letter(space, l))
            .collect::<Result<_>>()?;

        // Equation (input b, output letter c): Σ_w x_w [c] act(w, b) = δ_{bc}.
        let n = basis.len();
        let mut rows: Vec<SparseVec<usize>> = vec![SparseVec::new(); n * n];
        for (wi, w) in unknowns.iter().enumerate() {
            let corr = Correspondence::new(
                CohClass::from_word(space, w.clone(), crate::rational::one())?,
                1,
                1,
            )?;
            for (bi, input) in inputs.iter().enumerate() {
                let image = corr.act(input)?;
                for (out_word, q) in image.terms() {
                    let ci = index_of(out_word.letters()[0]);
                    rows[bi * n + ci].insert(wi, q.clone());
                }
            }
        }
        let equations = rows.into_iter().enumerate().map(|(r, row)| {
            let rhs = if r / n == r % n { crate::rational::one() } else { crate::rational::zero() };
            (row, rhs)
        });
        let solution = solve_unique(unknowns.len(), equations)?;
        let carrier = CohClass::from_terms(space, 2, unknowns.into_iter().zip(solution))?;
        Self::new(carrier, 1, 1)
    }

    /// Small diagonal `{(x,x,x)}` as a correspondence `X^2 ⊢ X`:
    /// `p_{12}^* Δ · p_{23}^* Δ`.
    pub fn small_diagonal(space: SpaceSpec) -> Result<Self> {
        let diag = Self::diagonal(space)?;
        Self::small_diagonal_from(&diag)
    }

    pub(crate) fn small_diagonal_from(diag: &Correspondence) -> Result<Self> {
        let d12 = diag.carrier.pullback(&[0, 1], 3)?;
        let d23 = diag.carrier.pullback(&[1, 2], 3)?;
        Self::new(d12.mul(&d23)?, 2, 1)
    }

    /// Push-pull action on a class of the source.
    pub fn act(&self, alpha: &CohClass) -> Result<CohClass> {
        if alpha.arity() != self.source {
            return Err(Error::ArityMismatch { expected: self.source, found: alpha.arity() });
        }
        let total = self.source + self.target;
        let lifted = alpha.pullback(&range(0, self.source), total)?;
        let product = lifted.mul(&self.carrier)?;
        if self.target == 0 {
            let value = product.integrate();
            return CohClass::from_word(*self.space(), Word::unit(0), value);
        }
        product.pushforward(&range(self.source, self.target))
    }

    /// `then ∘ self`: first `self`, then `then`.
    /// Computed as `p_{13*}(p_{12}^* self · p_{23}^* then)`.
    pub fn compose(&self, then: &Correspondence) -> Result<Self> {
        if self.target != then.source {
            return Err(Error::ArityMismatch { expected: self.target, found: then.source });
        }
        let (a, b, c) = (self.source, self.target, then.target);
        let total = a + b + c;
        let first = self.carrier.pullback(&range(0, a + b), total)?;
        let second = then.carrier.pullback(&range(a, b + c), total)?;
        let product = first.mul(&second)?;
        let keep: Vec<usize> = (0..a).chain(a + b..total).collect();
        let carrier = if keep.is_empty() {
            CohClass::from_word(*self.space(), Word::unit(0), product.integrate())?
        } else {
            product.pushforward(&keep)?
        };
        Self::new(carrier, a, c)
    }

    /// Swaps source and target blocks, with Koszul signs.
    pub fn transpose(&self) -> Self {
        let (a, b) = (self.source, self.target);
        let sigma: Vec<usize> = (0..a).map(|i| i + b).chain(0..b).collect();
        let carrier = self.carrier.permute(&sigma).expect("block swap is a permutation");
        Correspondence { carrier, source: b, target: a }
    }

    /// `self × other : X^{a+c} ⊢ X^{b+d}`, the product of the pullbacks of
    /// `self` to factors `(1..a, a+c+1..a+c+b)` and `other` to the rest.
    pub fn exterior_product(&self, other: &Correspondence) -> Result<Self> {
        if self.space() != other.space() {
            return Err(Error::SpaceMismatch);
        }
        let (a, b, c, d) = (self.source, self.target, other.source, other.target);
        let total = a + b + c + d;
        let first_pos: Vec<usize> = (0..a).chain(a + c..a + c + b).collect();
        let second_pos: Vec<usize> = (a..a + c).chain(a + c + b..total).collect();
        let first = self.carrier.pullback(&first_pos, total)?;
        let second = other.carrier.pullback(&second_pos, total)?;
        Self::new(first.mul(&second)?, a + c, b + d)
    }

    pub fn try_add(&self, other: &Correspondence) -> Result<Self> {
        self.check_shape(other)?;
        Self::new(self.carrier.try_add(&other.carrier)?, self.source, self.target)
    }

    pub fn try_sub(&self, other: &Correspondence) -> Result<Self> {
        self.check_shape(other)?;
        Self::new(self.carrier.try_sub(&other.carrier)?, self.source, self.target)
    }

    pub fn scale(&self, q: &crate::rational::Rational) -> Self {
        Correspondence { carrier: self.carrier.scale(q), source: self.source, target: self.target }
    }

    fn check_shape(&self, other: &Correspondence) -> Result<()> {
        if self.source != other.source {
            return Err(Error::ArityMismatch { expected: self.source, found: other.source });
        }
        if self.target != other.target {
            return Err(Error::ArityMismatch { expected: self.target, found: other.target });
        }
        Ok(())
    }
}
