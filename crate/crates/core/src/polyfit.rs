//! Polynomial least-squares fitting with an Arnoldi-orthogonalized basis.
//!
//! Instead of monomial columns the basis is built by the recurrence
//! `q_{k+1} h_{k+1,k} = z q_k - sum_j h_{j,k} q_j`, orthogonal with respect
//! to the discrete inner product on the fit points. Evaluation elsewhere
//! replays the stored recurrence.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::geometry::SampleSet;
use crate::linalg::{self, is_finite, CMatrix};
use crate::{Error, Real, Result};

/// Subdiagonal entries below this signal an exhausted point set.
pub const BREAKDOWN_TOL: f64 = 1e-14;

/// Polynomial stored as Arnoldi recurrence coefficients plus basis weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ArnoldiPolynomial<T> {
    degree: usize,
    /// `(degree + 1) x degree`, row-major.
    hessenberg: Vec<Complex<T>>,
    coeffs: Vec<Complex<T>>,
    fit_points: usize,
}

impl<T: Real> ArnoldiPolynomial<T> {
    /// Rebuilds a model from stored data (e.g. a deserialized file).
    pub fn from_parts(
        degree: usize,
        hessenberg: Vec<Complex<T>>,
        coeffs: Vec<Complex<T>>,
        fit_points: usize,
    ) -> Result<Self> {
        if hessenberg.len() != (degree + 1) * degree || coeffs.len() != degree + 1 {
            return Err(Error::Domain(format!(
                "degree {degree} needs {} recurrence and {} basis coefficients, got {} and {}",
                (degree + 1) * degree,
                degree + 1,
                hessenberg.len(),
                coeffs.len()
            )));
        }
        for k in 0..degree {
            let h = hessenberg[(k + 1) * degree + k];
            if !(h.im.is_zero() && h.re > T::zero()) {
                return Err(Error::Domain(format!("subdiagonal entry {k} is not positive real: {h:?}")));
            }
        }
        if hessenberg.iter().chain(&coeffs).any(|z| !is_finite(*z)) {
            return Err(Error::Domain("non-finite polynomial data".into()));
        }
        Ok(Self { degree, hessenberg, coeffs, fit_points })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn hessenberg(&self) -> &[Complex<T>] {
        &self.hessenberg
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn fit_points(&self) -> usize {
        self.fit_points
    }

    fn h(&self, i: usize, j: usize) -> Complex<T> {
        self.hessenberg[i * self.degree + j]
    }

    /// Evaluates the polynomial at `points` by replaying the recurrence.
    pub fn eval(&self, points: &[Complex<T>]) -> Vec<Complex<T>> {
        points
            .iter()
            .map(|&z| {
                let mut basis: Vec<Complex<T>> = Vec::with_capacity(self.degree + 1);
                basis.push(Complex::one());
                for k in 0..self.degree {
                    let mut w = z * basis[k];
                    for (j, b) in basis.iter().enumerate() {
                        w = w - self.h(j, k) * b;
                    }
                    basis.push(w / self.h(k + 1, k));
                }
                basis.iter().zip(&self.coeffs).fold(Complex::zero(), |acc, (b, c)| acc + b * c)
            })
            .collect()
    }
}

/// Arnoldi basis on `points`: `Q` (`M x (degree+1)`, columns of norm `sqrt(M)`)
/// and the `(degree+1) x degree` recurrence matrix.
pub fn arnoldi_basis<T: Real>(points: &[Complex<T>], degree: usize) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let m = points.len();
    if degree + 1 > m {
        return Err(Error::Domain(format!("degree {degree} needs at least {} points, got {m}", degree + 1)));
    }
    let mt = T::count(m);
    let sqrt_m = mt.sqrt();
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(degree + 1);
    cols.push(vec![Complex::one(); m]);
    let mut h = CMatrix::zeros(degree + 1, degree);
    for k in 0..degree {
        let mut q: Vec<Complex<T>> = points.iter().zip(&cols[k]).map(|(z, c)| z * c).collect();
        // classical Gram-Schmidt plus one reorthogonalization sweep
        for _ in 0..2 {
            for (j, col) in cols.iter().enumerate() {
                let proj = col.iter().zip(&q).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b) / mt;
                h[(j, k)] = h[(j, k)] + proj;
                for (qi, ci) in q.iter_mut().zip(col) {
                    *qi = *qi - ci * proj;
                }
            }
        }
        let sub = q.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt() / sqrt_m;
        if !(sub >= T::lit(BREAKDOWN_TOL)) {
            return Err(Error::Breakdown { step: k + 1, value: sub.as_f64() });
        }
        h[(k + 1, k)] = Complex::new(sub, T::zero());
        cols.push(q.into_iter().map(|x| x / sub).collect());
    }
    let q = CMatrix::from_fn(m, degree + 1, |i, j| cols[j][i]);
    Ok((q, h))
}

/// Least-squares polynomial fit of the given degree.
pub fn va_fit<T: Real>(samples: &SampleSet<T>, degree: usize) -> Result<ArnoldiPolynomial<T>> {
    let (q, h) = arnoldi_basis(samples.points(), degree)?;
    let coeffs = linalg::solve_least_squares(&q, samples.values())?;
    Ok(ArnoldiPolynomial { degree, hessenberg: h.as_slice().to_vec(), coeffs, fit_points: samples.len() })
}
