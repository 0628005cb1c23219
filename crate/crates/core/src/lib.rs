//! Truncated power series and planar harmonic mappings `f = h + conj(g)`.
//!
//! The crate builds the extremal maps of the stable harmonic classes, applies
//! ε-rotations, analytic slices and the affine/linear invariance transforms,
//! and checks coefficient, growth, distortion and Bohr-type inequalities on
//! truncated expansions.

pub mod bohr;
pub mod bounds;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod harmonic;
pub mod invariance;
pub mod numcheck;
pub mod series;

pub use error::{Error, Result};
pub use harmonic::{HarmonicMap, NormalizationClass};
pub use series::{Complex, PowerSeries};
