//! Cohomology-ring blueprints for the two Hodge-level-1 profiles.
//!
//! A [`SpaceSpec`] fixes the basis of `H*(X)`: the powers `H(0..=p)` of an
//! even generator (the hyperplane class on `Y`, the point class on a curve)
//! and a symplectic basis `E(1..=g)`, `F(1..=g)` of the odd cohomology, which
//! sits in degree `p`. Here `p = 2g - 1` for a smooth intersection of two
//! quadrics `Y` in `P^{2g+1}` and `p = 1` for a curve of genus `g`.
//!
//! The odd classes multiply by `E(i) F(j) = delta_ij * pt` and `F(i) E(j) =
//! -delta_ij * pt` where `pt` is the point class, so that the pairing
//! `∫ E(i) F(i) = 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    /// Smooth complete intersection of two quadrics in `P^{2g+1}`.
    YType,
    /// Curve of genus `g`.
    CurveType,
}

/// One basis element of `H*(X)`.
///
/// Odd letters are indexed from 1, as in `E(1), ..., E(g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    H(u16),
    E(u16),
    F(u16),
}

impl Letter {
    pub const UNIT: Letter = Letter::H(0);

    pub fn is_odd(self) -> bool {
        !matches!(self, Letter::H(_))
    }

    pub fn name(self) -> String {
        match self {
            Letter::H(j) => format!("h^{j}"),
            Letter::E(i) => format!("e{i}"),
            Letter::F(i) => format!("f{i}"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Result of multiplying two letters: `sign * pt_scale * letter`, where
/// `pt_scale` is `1 / top_intersection` when the product is the point class
/// obtained from two odd letters and `1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LetterProduct {
    pub negative: bool,
    pub point_scaled: bool,
    pub letter: Letter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceSpec {
    kind: SpaceKind,
    g: u32,
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::ZeroGenus(g));
        }
        Ok(SpaceSpec { kind, g })
    }

    pub fn y_type(g: u32) -> Result<Self> {
        Self::new(SpaceKind::YType, g)
    }

    pub fn curve(g: u32) -> Result<Self> {
        Self::new(SpaceKind::CurveType, g)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    /// Highest nonvanishing power `p` of the even generator; also the complex
    /// dimension and the degree of the odd cohomology.
    pub fn top_power(&self) -> u16 {
        match self.kind {
            SpaceKind::YType => (2 * self.g - 1) as u16,
            SpaceKind::CurveType => 1,
        }
    }

    /// Cohomological degree of the fundamental class of a point.
    pub fn top_degree(&self) -> u32 {
        2 * self.top_power() as u32
    }

    /// Degrees `0, 2, ..., 2p`, each of rank one.
    pub fn even_degrees(&self) -> Vec<u32> {
        (0..=self.top_power() as u32).map(|j| 2 * j).collect()
    }

    pub fn odd_degree(&self) -> u32 {
        self.top_power() as u32
    }

    pub fn odd_rank(&self) -> usize {
        2 * self.g as usize
    }

    /// `∫ H(p)`: 4 on `Y` (degree of the intersection of two quadrics), 1 on
    /// a curve, where `H(1)` is the point class.
    pub fn top_intersection(&self) -> Rational {
        match self.kind {
            SpaceKind::YType => int(4),
            SpaceKind::CurveType => int(1),
        }
    }

    /// Total Betti number of `X`.
    pub fn dimension(&self) -> usize {
        self.top_power() as usize + 1 + self.odd_rank()
    }

    /// Basis letters in canonical order: even powers, then `E(i)`, then `F(i)`.
    pub fn basis(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..=self.top_power()).map(Letter::H).collect();
        out.extend((1..=self.g as u16).map(Letter::E));
        out.extend((1..=self.g as u16).map(Letter::F));
        out
    }

    pub fn contains(&self, l: Letter) -> bool {
        match l {
            Letter::H(j) => j <= self.top_power(),
            Letter::E(i) | Letter::F(i) => i >= 1 && i as u32 <= self.g,
        }
    }

    pub fn degree(&self, l: Letter) -> u32 {
        match l {
            Letter::H(j) => 2 * j as u32,
            _ => self.odd_degree(),
        }
    }

    /// The letter carrying the fundamental class of a point (up to scale).
    pub fn top_letter(&self) -> Letter {
        Letter::H(self.top_power())
    }

    /// `∫_X l`, nonzero only on the top letter.
    pub fn letter_integral(&self, l: Letter) -> Option<Rational> {
        (l == self.top_letter()).then(|| self.top_intersection())
    }

    pub(crate) fn letter_product(&self, a: Letter, b: Letter) -> Option<LetterProduct> {
        use Letter::*;
        let p = self.top_power();
        match (a, b) {
            (H(x), H(y)) => (x + y <= p).then_some(LetterProduct {
                negative: false,
                point_scaled: false,
                letter: H(x + y),
            }),
            (H(0), odd) | (odd, H(0)) => Some(LetterProduct {
                negative: false,
                point_scaled: false,
                letter: odd,
            }),
            (H(_), _) | (_, H(_)) => None,
            (E(i), F(j)) if i == j => Some(LetterProduct {
                negative: false,
                point_scaled: true,
                letter: H(p),
            }),
            (F(i), E(j)) if i == j => Some(LetterProduct {
                negative: true,
                point_scaled: true,
                letter: H(p),
            }),
            _ => None,
        }
    }

    /// Product of two basis letters as `(coefficient, letter)`.
    pub fn multiply_letters(&self, a: Letter, b: Letter) -> Option<(Rational, Letter)> {
        self.letter_product(a, b).map(|lp| {
            let mut c = if lp.point_scaled {
                self.top_intersection().recip()
            } else {
                int(1)
            };
            if lp.negative {
                c = -c;
            }
            (c, lp.letter)
        })
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SpaceKind::YType => write!(f, "Y(g={})", self.g),
            SpaceKind::CurveType => write!(f, "C(g={})", self.g),
        }
    }
}
