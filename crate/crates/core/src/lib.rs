//! Exact cohomological verification engine for intersections of two quadrics.
//!
//! The crate works entirely over the rationals. Cohomology classes on powers
//! `X^m` of a Hodge-level-1 space are sparse linear combinations of tensor
//! words (see [`class`]), correspondences are classes with declared source and
//! target arities (see [`corr`]), and the verification suites in [`ckmck`],
//! [`tautring`] and [`schubert`] produce structured [`report::Report`]s.

pub mod ckmck;
pub mod class;
pub mod corr;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod schubert;
pub mod space;
pub mod tautring;

pub use class::{CohClass, Word};
pub use corr::Correspondence;
pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{Entry, Report, Status};
pub use space::{Letter, SpaceKind, SpaceSpec};
