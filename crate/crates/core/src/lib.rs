//! Rational and polynomial approximation on compact sets in the complex plane.
//!
//! The numerical kernels ([`linalg`], [`aaa`], [`polyfit`], [`potential`],
//! [`geometry`]) are generic over the real scalar type through [`Real`], so the
//! same code runs in `f32`, `f64` or an extended-precision float. The
//! convergence harness in [`analysis`] is `f64`-only. Concrete `f64`
//! aliases for the common types live at the crate root.

// Comparisons are negated on purpose so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aaa;
pub mod analysis;
mod error;
pub mod geometry;
pub mod linalg;
pub mod polyfit;
pub mod potential;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

/// Complex number over `f64`.
pub type C64 = Complex<f64>;
/// Dense complex matrix over `f64`.
pub type CMatrix = linalg::CMatrix<f64>;
/// Barycentric rational over `f64`.
pub type Barycentric = aaa::BarycentricRational<f64>;
/// AAA fit report over `f64`.
pub type FitReport = aaa::FitReport<f64>;
/// Arnoldi polynomial over `f64`.
pub type ArnoldiPolynomial = polyfit::ArnoldiPolynomial<f64>;
/// Approximation domain over `f64`.
pub type Domain = geometry::Domain<f64>;
/// Paired sample points and values over `f64`.
pub type SampleSet = geometry::SampleSet<f64>;
/// Gridded potential over `f64`.
pub type PotentialField = potential::PotentialField<f64>;
/// Plot window over `f64`.
pub type Window = potential::Window<f64>;
