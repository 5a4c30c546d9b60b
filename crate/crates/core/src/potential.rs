//! Potential-theory view of a rational interpolant.
//!
//! With support points `z_k` and poles `p_k`,
//!
//! ```text
//! phi(z) = prod_{k=0..n} (z - z_k) / prod_{k=1..n} (z - p_k)
//! ```
//!
//! and for any circle `G` enclosing `z`, the supports, and the region where
//! `f` is analytic,
//!
//! ```text
//! f(z) - r(z) = 1/(2 pi i) * contour_integral_G  phi(z)/phi(t) * f(t)/(t - z) dt.
//! ```
//!
//! Level curves of `log10|phi|` are what the contour plots show.

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::aaa::BarycentricRational;
use crate::geometry::Domain;
use crate::{Error, Real, Result};

/// Span of the clipped colour range, in decades.
pub const CLIP_DECADES: f64 = 16.0;
/// Percentile of finite grid values used as the upper clip.
pub const CLIP_PERCENTILE: f64 = 0.995;
/// Cells within this fraction of the window diagonal of a charge are
/// excluded from [`potential_gap`].
pub const GAP_EXCLUSION: f64 = 0.01;
/// Default trapezoid node count for [`walsh_error`].
pub const DEFAULT_CONTOUR_NODES: usize = 256;
pub const MIN_RESOLUTION: usize = 32;
const POLE_CLEARANCE: f64 = 1e-8;

/// Evaluates `phi(z)`, interleaving the factors to stay in range.
pub fn phi<T: Real>(z: Complex<T>, supports: &[Complex<T>], poles: &[Complex<T>]) -> Complex<T> {
    if poles.contains(&z) {
        return Complex::new(T::infinity(), T::zero());
    }
    let mut acc = Complex::<T>::one();
    for k in 0..supports.len().max(poles.len()) {
        if let Some(s) = supports.get(k) {
            acc = acc * (z - s);
        }
        if let Some(p) = poles.get(k) {
            acc = acc / (z - p);
        }
    }
    acc
}

/// `log10|phi(z)|` as a sum of logarithms.
pub fn log10_abs_phi<T: Real>(z: Complex<T>, supports: &[Complex<T>], poles: &[Complex<T>]) -> T {
    let num = supports.iter().fold(T::zero(), |acc, s| acc + (z - s).norm().log10());
    let den = poles.iter().fold(T::zero(), |acc, p| acc + (z - p).norm().log10());
    num - den
}

/// Plot rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window<T> {
    pub xmin: T,
    pub xmax: T,
    pub ymin: T,
    pub ymax: T,
}

impl<T: Real> Window<T> {
    pub fn new(xmin: T, xmax: T, ymin: T, ymax: T) -> Result<Self> {
        let w = Self { xmin, xmax, ymin, ymax };
        if [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax {
            Ok(w)
        } else {
            Err(Error::Domain(format!("degenerate window {w:?}")))
        }
    }

    /// Bounding box of `domain` and `poles`, each side pushed out by 30% of
    /// the larger box dimension.
    pub fn around(domain: &Domain<T>, poles: &[Complex<T>]) -> Self {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = domain.bounding_box();
        for p in poles.iter().filter(|p| p.re.is_finite() && p.im.is_finite()) {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let pad = T::lit(0.3) * (xmax - xmin).max(ymax - ymin).max(T::lit(1e-3));
        Self { xmin: xmin - pad, xmax: xmax + pad, ymin: ymin - pad, ymax: ymax + pad }
    }

    pub fn diagonal(&self) -> T {
        (self.xmax - self.xmin).hypot(self.ymax - self.ymin)
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self { xmin: self.xmin * factor, xmax: self.xmax * factor, ymin: self.ymin * factor, ymax: self.ymax * factor }
    }
}

/// `log10|phi|` on the cell centres of a window, clipped for plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialField<T> {
    pub window: Window<T>,
    pub nx: usize,
    pub ny: usize,
    /// Row-major, `ny` rows from `ymin` upward, `nx` columns from `xmin`.
    pub log_abs_phi: Vec<T>,
    /// Integer contour levels inside the clip range, increasing.
    pub levels: Vec<T>,
    pub clip_min: T,
    pub clip_max: T,
    pub supports: Vec<Complex<T>>,
    pub poles: Vec<Complex<T>>,
}

impl<T: Real> PotentialField<T> {
    pub fn cell_center(&self, i: usize, j: usize) -> Complex<T> {
        cell_center(&self.window, self.nx, self.ny, i, j)
    }

    pub fn value(&self, i: usize, j: usize) -> T {
        self.log_abs_phi[j * self.nx + i]
    }
}

fn cell_center<T: Real>(w: &Window<T>, nx: usize, ny: usize, i: usize, j: usize) -> Complex<T> {
    let half = T::lit(0.5);
    Complex::new(
        w.xmin + (T::count(i) + half) * (w.xmax - w.xmin) / T::count(nx),
        w.ymin + (T::count(j) + half) * (w.ymax - w.ymin) / T::count(ny),
    )
}

/// Samples `log10|phi|` on an `nx x ny` grid. The upper clip is the 99.5th
/// percentile of the finite values and the lower clip sits 16 decades below.
pub fn potential_grid<T: Real>(
    supports: &[Complex<T>],
    poles: &[Complex<T>],
    window: Window<T>,
    resolution: (usize, usize),
) -> Result<PotentialField<T>> {
    let (nx, ny) = resolution;
    if nx < MIN_RESOLUTION || ny < MIN_RESOLUTION {
        return Err(Error::Domain(format!("resolution {nx}x{ny} is below {MIN_RESOLUTION}x{MIN_RESOLUTION}")));
    }
    let window = Window::new(window.xmin, window.xmax, window.ymin, window.ymax)?;
    let mut raw = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            raw.push(log10_abs_phi(cell_center(&window, nx, ny, i, j), supports, poles));
        }
    }
    let mut finite: Vec<T> = raw.iter().copied().filter(|v| v.is_finite()).collect();
    finite.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let clip_max = if finite.is_empty() {
        T::zero()
    } else {
        let idx = (T::lit(CLIP_PERCENTILE) * T::count(finite.len() - 1)).round().to_usize().unwrap_or(0);
        finite[idx.min(finite.len() - 1)]
    };
    let clip_min = clip_max - T::lit(CLIP_DECADES);
    let log_abs_phi =
        raw.into_iter().map(|v| if v.is_nan() { clip_max } else { v.max(clip_min).min(clip_max) }).collect();
    let mut levels = Vec::new();
    let mut l = clip_min.ceil();
    while l <= clip_max {
        levels.push(l);
        l = l + T::one();
    }
    Ok(PotentialField {
        window,
        nx,
        ny,
        log_abs_phi,
        levels,
        clip_min,
        clip_max,
        supports: supports.to_vec(),
        poles: poles.to_vec(),
    })
}

/// Colour-bar range of a field in decades, ignoring cells next to a charge.
pub fn potential_gap<T: Real>(field: &PotentialField<T>) -> T {
    let radius = T::lit(GAP_EXCLUSION) * field.window.diagonal();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for j in 0..field.ny {
        for i in 0..field.nx {
            let z = field.cell_center(i, j);
            let near = field.supports.iter().chain(&field.poles).any(|c| (z - c).norm() < radius);
            if near {
                continue;
            }
            let v = field.value(i, j);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if hi >= lo {
        hi - lo
    } else {
        T::zero()
    }
}

/// Quadrature contour for [`walsh_error`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourSpec<T> {
    Circle { center: Complex<T>, radius: T, nodes: usize },
}

impl<T: Real> ContourSpec<T> {
    pub fn circle(center: Complex<T>, radius: T, nodes: usize) -> Result<Self> {
        if !(radius > T::zero()) || nodes < 16 {
            return Err(Error::Domain(format!(
                "circle contour needs radius > 0 and >= 16 nodes, got {radius:?}, {nodes}"
            )));
        }
        Ok(Self::Circle { center, radius, nodes })
    }

    /// Equispaced quadrature nodes, starting at angle zero.
    pub fn nodes(&self) -> Vec<Complex<T>> {
        let Self::Circle { center, radius, nodes } = *self;
        let step = T::lit(2.0) * T::PI() / T::count(nodes);
        (0..nodes).map(|j| center + Complex::from_polar(radius, step * T::count(j))).collect()
    }
}

/// Trapezoid-rule estimate of `f(z) - r(z)` from the contour identity.
///
/// `f_on_contour` holds `f` at [`ContourSpec::nodes`]. `f` must be analytic
/// on and inside the contour and every support point of `r` must lie inside;
/// the poles of `r` may lie anywhere off the contour.
pub fn walsh_error<T: Real>(
    contour: &ContourSpec<T>,
    f_on_contour: &[Complex<T>],
    r: &BarycentricRational<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let ContourSpec::Circle { center, radius, nodes } = *contour;
    if f_on_contour.len() != nodes {
        return Err(Error::Domain(format!("{} contour values for {nodes} nodes", f_on_contour.len())));
    }
    if !((z - center).norm() < radius) {
        return Err(Error::Domain(format!("evaluation point {z:?} is not strictly inside the contour")));
    }
    if let Some(s) = r.supports().iter().find(|s| !((*s - center).norm() < radius)) {
        return Err(Error::Domain(format!("support point {s:?} is not strictly inside the contour")));
    }
    let poles = if r.degree() == 0 { Vec::new() } else { r.poles()? };
    for p in &poles {
        let d = ((p - center).norm() - radius).abs();
        if d < T::lit(POLE_CLEARANCE) {
            return Err(Error::PoleOnContour { pole: format!("{p:?}"), distance: d.as_f64() });
        }
    }
    let supports = r.supports();
    if supports.contains(&z) {
        return Ok(Complex::zero());
    }
    // For the poles of r, phi(z)/phi(t) = D(t)/D(z) with D the barycentric
    // denominator. Far poles are ill-conditioned in the weights, so the
    // quotient is formed from D directly rather than from computed poles.
    let denom =
        |x: Complex<T>| supports.iter().zip(r.weights()).fold(Complex::<T>::zero(), |acc, (s, w)| acc + w / (x - s));
    let dz = denom(z);
    let mut sum = Complex::<T>::zero();
    for (t, &ft) in contour.nodes().into_iter().zip(f_on_contour) {
        // dt = i (t - c) dtheta, and dtheta / (2 pi i) sums to (t - c) / N
        sum = sum + denom(t) / dz * ft * (t - center) / (t - z);
    }
    Ok(sum / T::count(nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aaa::aaa_fit;
    use crate::geometry::{FunctionSpec, SampleSet};

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn phi_values() {
        let s = [c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(phi(c(1.0, 0.0), &s, &[c(2.0, 0.0)]), C::zero());
        assert!((phi(c(3.0, 0.0), &s, &[c(2.0, 0.0)]) - c(6.0, 0.0)).norm() < 1e-15);
        assert!(phi(c(2.0, 0.0), &s, &[c(2.0, 0.0)]).re.is_infinite());
        // node polynomial when there are no poles
        let z = c(0.3, -0.7);
        assert!((phi(z, &s, &[]) - z * (z - 1.0)).norm() < 1e-15);
    }

    #[test]
    fn phi_is_asymptotically_z() {
        let supports = [c(0.1, 0.2), c(-0.5, 0.3), c(0.7, -0.1), c(0.0, -0.9)];
        let poles = [c(2.0, 1.0), c(-3.0, 0.5), c(0.2, 2.5)];
        let big = 1e6;
        let v = phi(c(big, 0.0), &supports, &poles);
        assert!((v / big - 1.0).norm() <= 10.0 / big);
    }

    #[test]
    fn phi_survives_high_degree() {
        let n = 200;
        let supports: Vec<C> = (0..=n).map(|k| C::from_polar(1.0, k as f64 * 0.031)).collect();
        let poles: Vec<C> = (1..=n).map(|k| C::from_polar(3.0, k as f64 * 0.029)).collect();
        let v = phi(c(10.0, 10.0), &supports, &poles);
        assert!(v.re.is_finite() && v.im.is_finite());
        let lg = log10_abs_phi(c(10.0, 10.0), &supports, &poles);
        assert!((v.norm().log10() - lg).abs() < 1e-10);
    }

    #[test]
    fn grid_single_support() {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let f = potential_grid(&[c(0.0, 0.0)], &[], w, (64, 64)).unwrap();
        assert_eq!(f.log_abs_phi.len(), 64 * 64);
        // cell nearest (1, 0)
        let v = f.value(63, 32);
        let cell = 2.0 / 64.0;
        assert!(v.abs() < cell * 2.0, "{v}");
        assert!(f.levels.windows(2).all(|l| l[1] > l[0]));
        assert!(f.log_abs_phi.iter().all(|&v| v >= f.clip_min && v <= f.clip_max));
    }

    #[test]
    fn grid_resolution_checked() {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert!(potential_grid(&[c(0.0, 0.0)], &[], w, (16, 64)).is_err());
        assert!(Window::new(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn grid_symmetry() {
        let w = Window::new(-3.0, 3.0, -3.0, 3.0).unwrap();
        let f = potential_grid(&[c(1.0, 0.0), c(-1.0, 0.0)], &[c(0.0, 2.0), c(0.0, -2.0)], w, (40, 40)).unwrap();
        for j in 0..40 {
            for i in 0..40 {
                assert!((f.value(i, j) - f.value(39 - i, 39 - j)).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn gap_single_support_closed_form() {
        // log10(max |z|) - log10(exclusion radius) = log10(sqrt 2) - log10(0.01 * 2 sqrt 2)
        let w = Window::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let f = potential_grid(&[c(0.0, 0.0)], &[], w, (400, 400)).unwrap();
        let want = 2f64.sqrt().log10() - (0.01 * 2.0 * 2f64.sqrt()).log10();
        assert!((want - 1.699).abs() < 1e-3);
        let gap = potential_gap(&f);
        assert!((gap - want).abs() < 0.05, "gap {gap}, closed form {want}");
    }

    #[test]
    fn gap_is_scale_invariant() {
        let s = [c(0.3, 0.1), c(-0.4, 0.5), c(0.1, -0.6)];
        let p = [c(1.5, 1.0), c(-2.0, -0.3)];
        let w = Window::new(-2.5, 2.0, -1.0, 1.5).unwrap();
        let g1 = potential_gap(&potential_grid(&s, &p, w, (80, 80)).unwrap());
        let k = 7.25;
        let s2: Vec<C> = s.iter().map(|z| z * k).collect();
        let p2: Vec<C> = p.iter().map(|z| z * k).collect();
        let g2 = potential_gap(&potential_grid(&s2, &p2, w.scaled(k), (80, 80)).unwrap());
        assert!((g1 - g2).abs() <= 1e-9, "{g1} vs {g2}");
    }

    #[test]
    fn walsh_exact_for_rational_data() {
        let f = |z: C| c(1.0, 0.0) / (z - 3.0) + c(0.0, 2.0) / (z + c(0.0, 4.0));
        let s = SampleSet::from_function(FunctionSpec::Exp, &Domain::unit_disk(), 200).unwrap();
        let v = s.points().iter().map(|&z| f(z)).collect();
        let s = SampleSet::new(s.points().to_vec(), v).unwrap();
        let r = aaa_fit(&s, 1e-13, 20).unwrap().model;
        // f has poles at 3 and -4i, so the contour must stay inside |t| < 3
        let contour = ContourSpec::circle(C::zero(), 2.0, 256).unwrap();
        let fv: Vec<C> = contour.nodes().iter().map(|&t| f(t)).collect();
        let est = walsh_error(&contour, &fv, &r, c(0.2, 0.1)).unwrap();
        assert!(est.norm() <= 1e-12 * 1.0, "{est}");
    }

    #[test]
    fn walsh_rejects_bad_points() {
        let s = SampleSet::from_function(FunctionSpec::Exp, &Domain::unit_disk(), 200).unwrap();
        let r = aaa_fit(&s, 1e-12, 20).unwrap().model;
        let contour = ContourSpec::circle(C::zero(), 2.0, 64).unwrap();
        let fv: Vec<C> = contour.nodes().iter().map(|t| t.exp()).collect();
        assert!(matches!(walsh_error(&contour, &fv, &r, c(2.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(walsh_error(&contour, &fv, &r, c(3.0, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(walsh_error(&contour, &fv[1..], &r, c(0.0, 0.0)), Err(Error::Domain(_))));
        let small = ContourSpec::circle(C::zero(), 0.5, 64).unwrap();
        let fv: Vec<C> = small.nodes().iter().map(|t| t.exp()).collect();
        assert!(matches!(walsh_error(&small, &fv, &r, c(0.0, 0.0)), Err(Error::Domain(_))));
        assert!(ContourSpec::circle(C::zero(), 1.0, 8).is_err());
    }

    #[test]
    fn walsh_flags_pole_on_contour() {
        let s = SampleSet::from_function(FunctionSpec::Exp, &Domain::unit_disk(), 100).unwrap();
        let v = s.points().iter().map(|&z| c(1.0, 0.0) / (z - 2.0)).collect();
        let s = SampleSet::new(s.points().to_vec(), v).unwrap();
        let r = aaa_fit(&s, 1e-12, 5).unwrap().model;
        let pole = r.poles().unwrap()[0];
        let contour = ContourSpec::circle(C::zero(), pole.norm(), 64).unwrap();
        let fv = vec![C::zero(); 64];
        assert!(matches!(walsh_error(&contour, &fv, &r, C::zero()), Err(Error::PoleOnContour { .. })));
    }
}
