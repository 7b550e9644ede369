//! Spectral calculus on periodic grids for bilinear Fourier multipliers.
//!
//! The crate provides the machinery to evaluate, on discretized tori,
//! the operators of bilinear multiplier theory: fractional derivatives
//! and Riesz potentials, bilinear multipliers `T_m` and the bilinear
//! fractional integral, Littlewood-Paley decompositions and paraproduct
//! splits, (quasi-)norms of the classical and mixed-norm function
//! spaces, symbol regularity measurements, and a discrete frame
//! transform over dyadic cubes.  On top of that sits a config-driven
//! experiment runner (`suites`, exposed through the `bilap` binary)
//! that verifies exact operator identities to machine precision and
//! measures inequality constants as bounded ratios across function
//! families and exponent grids.

pub mod config;
pub mod error;
pub mod family;
pub mod fft;
pub mod field;
pub mod grid;
pub mod lp;
pub mod norms;
pub mod operators;
pub mod phi;
pub mod report;
pub mod suites;
pub mod symbols;

pub use error::{BilapError, Result};
pub use field::SpectralField;
pub use grid::{FrequencyIndex, TorusGrid};
pub use lp::LPFamily;
pub use operators::{BilinearSymbol, RadialMultiplier};
