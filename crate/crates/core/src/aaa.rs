//! Greedy barycentric rational fitting (AAA).
//!
//! A rational of degree `n` is stored in barycentric form
//!
//! ```text
//! r(z) = sum_k w_k f_k / (z - z_k)  /  sum_k w_k / (z - z_k),   k = 0..=n
//! ```
//!
//! The fitter adds one support point per step, always the sample with the
//! largest current error, and takes the weights as the minimal right singular
//! vector of the Loewner matrix on the remaining samples.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::geometry::SampleSet;
use crate::linalg::{self, is_finite, CMatrix};
use crate::{Error, Real, Result};

/// Residues below `CLEANUP_TOL * max|f| * diam` mark spurious poles.
pub const CLEANUP_TOL: f64 = 1e-13;

/// Rational function in barycentric form.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricRational<T> {
    supports: Vec<Complex<T>>,
    values: Vec<Complex<T>>,
    weights: Vec<Complex<T>>,
}

/// Residue of a pole, with a flag for poles sitting on a support point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residue<T> {
    pub pole: Complex<T>,
    pub value: Complex<T>,
    /// The pole is within `1e-13 * scale` of a support point; `value` is
    /// unreliable and the pole is a cleanup candidate.
    pub near_support: bool,
}

impl<T: Real> BarycentricRational<T> {
    pub fn new(supports: Vec<Complex<T>>, values: Vec<Complex<T>>, weights: Vec<Complex<T>>) -> Result<Self> {
        if supports.is_empty() || supports.len() != values.len() || supports.len() != weights.len() {
            return Err(Error::Domain(format!(
                "barycentric data lengths {} / {} / {}",
                supports.len(),
                values.len(),
                weights.len()
            )));
        }
        if weights.iter().all(|w| w.is_zero()) {
            return Err(Error::Domain("all barycentric weights are zero".into()));
        }
        if supports.iter().chain(&values).chain(&weights).any(|z| !is_finite(*z)) {
            return Err(Error::Domain("non-finite barycentric data".into()));
        }
        for (i, a) in supports.iter().enumerate() {
            if supports[i + 1..].contains(a) {
                return Err(Error::Domain(format!("repeated support point {a:?}")));
            }
        }
        Ok(Self { supports, values, weights })
    }

    /// Constant function `c` (one support at `z0`).
    pub fn constant(z0: Complex<T>, c: Complex<T>) -> Self {
        Self { supports: vec![z0], values: vec![c], weights: vec![Complex::one()] }
    }

    pub fn degree(&self) -> usize {
        self.supports.len() - 1
    }

    pub fn supports(&self) -> &[Complex<T>] {
        &self.supports
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn weights(&self) -> &[Complex<T>] {
        &self.weights
    }

    /// Evaluates `r(z)`. Exact support hits return the stored value; a
    /// numerical pole returns an infinite marker.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        if let Some(k) = self.supports.iter().position(|&s| s == z) {
            return self.values[k];
        }
        if self.supports.len() == 1 {
            return self.values[0];
        }
        let mut num = Complex::<T>::zero();
        let mut den = Complex::<T>::zero();
        for ((&s, &f), &w) in self.supports.iter().zip(&self.values).zip(&self.weights) {
            let c = w / (z - s);
            num = num + c * f;
            den = den + c;
        }
        if is_finite(num) && is_finite(den) {
            if den.is_zero() {
                return if num.is_zero() { Complex::new(T::nan(), T::nan()) } else { infinity() };
            }
            let r = num / den;
            if is_finite(r) {
                return r;
            }
            return infinity();
        }
        // 1/(z - z_k) overflowed: z is next to a support point
        let k = self.nearest_support(z);
        self.values[k]
    }

    pub fn eval_many(&self, zs: &[Complex<T>]) -> Vec<Complex<T>> {
        zs.iter().map(|&z| self.eval(z)).collect()
    }

    fn nearest_support(&self, z: Complex<T>) -> usize {
        let mut best = 0;
        for (k, s) in self.supports.iter().enumerate() {
            if (z - s).norm() < (z - self.supports[best]).norm() {
                best = k;
            }
        }
        best
    }

    fn arrowhead(&self, first_row: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if self.degree() == 0 {
            return Err(Error::Domain("a degree-0 rational has no poles or zeros".into()));
        }
        let m = self.supports.len();
        let e = CMatrix::from_fn(m + 1, m + 1, |i, j| match (i, j) {
            (0, 0) => Complex::zero(),
            (0, j) => first_row[j - 1],
            (_, 0) => Complex::one(),
            (i, j) if i == j => self.supports[i - 1],
            _ => Complex::zero(),
        });
        let mut mask = vec![true; m + 1];
        mask[0] = false;
        linalg::finite_generalized_eigenvalues(&e, &mask)
    }

    /// The `degree` finite poles, sorted by real then imaginary part.
    pub fn poles(&self) -> Result<Vec<Complex<T>>> {
        self.arrowhead(&self.weights)
    }

    /// Finite zeros, sorted by real then imaginary part.
    pub fn zeros(&self) -> Result<Vec<Complex<T>>> {
        if self.values.iter().all(|v| v.is_zero()) {
            return Err(Error::Domain("the zero function has no isolated zeros".into()));
        }
        let wf: Vec<Complex<T>> = self.weights.iter().zip(&self.values).map(|(w, f)| w * f).collect();
        if self.degree() == 0 {
            return Ok(Vec::new());
        }
        self.arrowhead(&wf)
    }

    /// Residues `N(p) / D'(p)` at the given poles.
    pub fn residues(&self, poles: &[Complex<T>]) -> Vec<Residue<T>> {
        let scale = support_scale(&self.supports);
        let near = T::lit(1e-13) * scale;
        poles
            .iter()
            .map(|&p| {
                let gap = self.supports.iter().map(|s| (p - s).norm()).fold(T::infinity(), T::min);
                if gap <= near {
                    return Residue { pole: p, value: Complex::zero(), near_support: true };
                }
                let mut num = Complex::<T>::zero();
                let mut dden = Complex::<T>::zero();
                for ((&s, &f), &w) in self.supports.iter().zip(&self.values).zip(&self.weights) {
                    let inv = Complex::<T>::one() / (p - s);
                    num = num + w * f * inv;
                    dden = dden - w * inv * inv;
                }
                Residue { pole: p, value: num / dden, near_support: false }
            })
            .collect()
    }
}

fn infinity<T: Real>() -> Complex<T> {
    Complex::new(T::infinity(), T::zero())
}

fn support_scale<T: Real>(z: &[Complex<T>]) -> T {
    let mut d = T::zero();
    for (i, a) in z.iter().enumerate() {
        for b in &z[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    if d.is_zero() {
        T::one()
    } else {
        d
    }
}

/// One greedy step: the model of that degree and its max error over the
/// non-support samples.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryEntry<T> {
    pub degree: usize,
    pub max_error: T,
    pub model: BarycentricRational<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitReport<T> {
    pub model: BarycentricRational<T>,
    pub history: Vec<HistoryEntry<T>>,
    pub converged: bool,
    /// Support points removed by [`cleanup`].
    pub cleanup_removed: usize,
    /// Set when cleanup would have removed every support point.
    pub cleanup_warning: bool,
    /// Max error of `model` over its non-support samples.
    pub max_error: T,
}

/// Greedy AAA iteration without spurious-pole cleanup.
///
/// Stops once the max error over the non-support samples drops to
/// `tol * max|f|`, or at degree `max_degree`.
pub fn aaa_greedy<T: Real>(samples: &SampleSet<T>, tol: T, max_degree: usize) -> Result<FitReport<T>> {
    let z = samples.points();
    let f = samples.values();
    let m = z.len();
    if m < max_degree + 2 {
        return Err(Error::Domain(format!(
            "{m} samples are too few for degree {max_degree} (need {})",
            max_degree + 2
        )));
    }
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol:?}")));
    }
    let target = tol * samples.scale();
    let mean = f.iter().fold(Complex::zero(), |acc, v| acc + v) / T::count(m);
    let mut approx = vec![mean; m];
    let mut is_support = vec![false; m];
    let mut support_idx: Vec<usize> = Vec::new();
    let mut history: Vec<HistoryEntry<T>> = Vec::new();
    let mut converged = false;

    for degree in 0..=max_degree {
        let next = argmax_error(f, &approx, &is_support);
        is_support[next] = true;
        support_idx.push(next);
        let weights = loewner_weights(z, f, &support_idx, &is_support)?;
        let model = BarycentricRational {
            supports: support_idx.iter().map(|&k| z[k]).collect(),
            values: support_idx.iter().map(|&k| f[k]).collect(),
            weights,
        };
        let mut err = T::zero();
        for i in 0..m {
            approx[i] = if is_support[i] { f[i] } else { model.eval(z[i]) };
            if !is_support[i] {
                let e = (f[i] - approx[i]).norm();
                err = if e.is_finite() { err.max(e) } else { T::infinity() };
            }
        }
        history.push(HistoryEntry { degree, max_error: err, model });
        if err <= target {
            converged = true;
            break;
        }
    }
    let last = history.last().expect("at least one greedy step");
    Ok(FitReport {
        model: last.model.clone(),
        max_error: last.max_error,
        history,
        converged,
        cleanup_removed: 0,
        cleanup_warning: false,
    })
}

/// Greedy AAA followed by [`cleanup`].
pub fn aaa_fit<T: Real>(samples: &SampleSet<T>, tol: T, max_degree: usize) -> Result<FitReport<T>> {
    let report = aaa_greedy(samples, tol, max_degree)?;
    Ok(cleanup(report, samples))
}

fn argmax_error<T: Real>(f: &[Complex<T>], approx: &[Complex<T>], is_support: &[bool]) -> usize {
    let mut best = None::<(usize, T)>;
    for i in 0..f.len() {
        if is_support[i] {
            continue;
        }
        let e = (f[i] - approx[i]).norm();
        let e = if e.is_nan() { T::infinity() } else { e };
        match best {
            Some((_, b)) if e <= b => {}
            _ => best = Some((i, e)),
        }
    }
    best.map(|(i, _)| i).expect("a non-support sample remains")
}

/// Minimal right singular vector of the Loewner matrix
/// `A[i, k] = (f_i - f(z_k)) / (z_i - z_k)` over the non-support rows.
fn loewner_weights<T: Real>(
    z: &[Complex<T>],
    f: &[Complex<T>],
    support_idx: &[usize],
    is_support: &[bool],
) -> Result<Vec<Complex<T>>> {
    let rows: Vec<usize> = (0..z.len()).filter(|&i| !is_support[i]).collect();
    let a = CMatrix::from_fn(rows.len(), support_idx.len(), |i, k| {
        let (r, s) = (rows[i], support_idx[k]);
        (f[r] - f[s]) / (z[r] - z[s])
    });
    Ok(linalg::min_singular_right_vector(&a)?.1)
}

fn max_error_off_support<T: Real>(model: &BarycentricRational<T>, samples: &SampleSet<T>) -> T {
    let mut err = T::zero();
    for (&zi, &fi) in samples.points().iter().zip(samples.values()) {
        if model.supports.contains(&zi) {
            continue;
        }
        let e = (fi - model.eval(zi)).norm();
        err = if e.is_finite() { err.max(e) } else { T::infinity() };
    }
    err
}

/// Removes spurious (tiny-residue) poles.
///
/// Each pole with `|residue| < 1e-13 * max|f| * diam(samples)` costs the model
/// its nearest support point, after which the weights are re-solved on the
/// reduced support set. Repeats until every residue is genuine, then
/// re-measures the max error.
pub fn cleanup<T: Real>(report: FitReport<T>, samples: &SampleSet<T>) -> FitReport<T> {
    if report.model.degree() == 0 {
        return report;
    }
    let threshold = T::lit(CLEANUP_TOL) * samples.scale() * samples.diameter();
    let z = samples.points();
    let f = samples.values();
    let mut model = report.model.clone();
    let mut removed = 0;
    while model.degree() > 0 {
        let Ok(poles) = model.poles() else { break };
        let spurious: Vec<Complex<T>> = model
            .residues(&poles)
            .into_iter()
            .filter(|r| r.near_support || !(r.value.norm() >= threshold))
            .map(|r| r.pole)
            .collect();
        if spurious.is_empty() {
            break;
        }
        let mut keep = vec![true; model.supports.len()];
        for p in &spurious {
            let nearest = (0..keep.len())
                .filter(|&k| keep[k])
                .min_by(|&a, &b| (p - model.supports[a]).norm().partial_cmp(&(p - model.supports[b]).norm()).unwrap());
            if let Some(k) = nearest {
                keep[k] = false;
            }
        }
        let kept = keep.iter().filter(|&&k| k).count();
        if kept == 0 {
            let mut out = report;
            out.cleanup_warning = true;
            return out;
        }
        let support_idx: Vec<usize> = model
            .supports
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .filter_map(|(s, _)| z.iter().position(|p| p == s))
            .collect();
        let mut is_support = vec![false; z.len()];
        for &i in &support_idx {
            is_support[i] = true;
        }
        let Ok(weights) = loewner_weights(z, f, &support_idx, &is_support) else { break };
        removed += keep.len() - kept;
        model = BarycentricRational {
            supports: support_idx.iter().map(|&k| z[k]).collect(),
            values: support_idx.iter().map(|&k| f[k]).collect(),
            weights,
        };
    }
    if removed == 0 {
        return report;
    }
    let max_error = max_error_off_support(&model, samples);
    FitReport { model, max_error, cleanup_removed: report.cleanup_removed + removed, ..report }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Domain, FunctionSpec};

    type C = Complex<f64>;

    fn circle_samples(m: usize, f: impl Fn(C) -> C) -> SampleSet<f64> {
        let z = Domain::<f64>::unit_disk().boundary_samples(m).unwrap();
        let v = z.iter().map(|&p| f(p)).collect();
        SampleSet::new(z, v).unwrap()
    }

    #[test]
    fn eval_hits_supports_exactly() {
        let r = BarycentricRational::new(
            vec![C::new(0.0, 0.0), C::new(1.0, 0.0)],
            vec![C::new(0.0, 0.0), C::new(1.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(-1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(r.eval(C::new(1.0, 0.0)), C::new(1.0, 0.0));
        // r(z) = z
        assert!((r.eval(C::new(0.5, 0.0)) - C::new(0.5, 0.0)).norm() < 1e-15);
        assert!((r.eval(C::new(-3.0, 2.0)) - C::new(-3.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn degree_zero_model_is_constant() {
        let r = BarycentricRational::constant(C::new(0.3, 0.1), C::new(2.0, -1.0));
        assert_eq!(r.degree(), 0);
        assert_eq!(r.eval(C::new(5.0, 5.0)), C::new(2.0, -1.0));
        assert!(matches!(r.poles(), Err(Error::Domain(_))));
        assert!(r.zeros().unwrap().is_empty());
    }

    #[test]
    fn eval_at_pole_is_infinite() {
        // w = (1, 1) at supports 0, 2 puts a pole at 1
        let r = BarycentricRational::new(
            vec![C::new(0.0, 0.0), C::new(2.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(3.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(1.0, 0.0)],
        )
        .unwrap();
        let v = r.eval(C::new(1.0, 0.0));
        assert!(v.re.is_infinite());
        let p = r.poles().unwrap();
        assert_eq!(p.len(), 1);
        assert!((p[0] - C::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn invalid_models_rejected() {
        let one = C::new(1.0, 0.0);
        assert!(BarycentricRational::new(vec![one], vec![one], vec![C::zero()]).is_err());
        assert!(BarycentricRational::new(vec![one, one], vec![one, one], vec![one, one]).is_err());
        assert!(BarycentricRational::<f64>::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn constant_data_gives_degree_zero() {
        let s = circle_samples(50, |_| C::new(5.0, 0.0));
        let rep = aaa_fit(&s, 1e-12, 10).unwrap();
        assert_eq!(rep.model.degree(), 0);
        assert!(rep.converged);
        assert_eq!(rep.history.len(), 1);
        assert_eq!(rep.history[0].max_error, 0.0);
    }

    #[test]
    fn simple_pole_recovered() {
        let s = circle_samples(200, |z| C::new(1.0, 0.0) / (z - 2.0));
        let rep = aaa_fit(&s, 1e-10, 20).unwrap();
        assert_eq!(rep.model.degree(), 1);
        let p = rep.model.poles().unwrap();
        assert!((p[0] - C::new(2.0, 0.0)).norm() < 1e-8, "{p:?}");
        let res = rep.model.residues(&p);
        assert!((res[0].value - C::new(1.0, 0.0)).norm() < 1e-8);
        assert!(!res[0].near_support);
    }

    #[test]
    fn residue_ignores_constant_shift() {
        let s = circle_samples(200, |z| C::new(3.0, -1.0) + C::new(1.0, 0.0) / (z - 2.0));
        let rep = aaa_fit(&s, 1e-12, 20).unwrap();
        let p = rep.model.poles().unwrap();
        let res = rep.model.residues(&p);
        assert_eq!(p.len(), 1);
        assert!((res[0].value - C::new(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn residue_of_imaginary_pole() {
        let i = C::new(0.0, 1.0);
        let z = Domain::disk(C::new(0.0, 0.0), 0.5).unwrap().boundary_samples(200).unwrap();
        let v = z.iter().map(|&p| C::new(2.0, 0.0) / (p - i)).collect();
        let s = SampleSet::new(z, v).unwrap();
        let rep = aaa_fit(&s, 1e-12, 20).unwrap();
        let p = rep.model.poles().unwrap();
        let res = rep.model.residues(&p);
        assert!((p[0] - i).norm() < 1e-8 && (res[0].value - C::new(2.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn zero_of_linear_data() {
        let s = circle_samples(100, |z| z - 0.5);
        let rep = aaa_fit(&s, 1e-12, 10).unwrap();
        let zs = rep.model.zeros().unwrap();
        assert!(zs.iter().any(|z| (z - C::new(0.5, 0.0)).norm() < 1e-8), "{zs:?}");
    }

    #[test]
    fn exp_on_unit_disk() {
        let s = SampleSet::from_function(FunctionSpec::Exp, &Domain::unit_disk(), 500).unwrap();
        let rep = aaa_fit(&s, 1e-12, 150).unwrap();
        assert!(rep.converged);
        assert!(rep.model.degree() <= 7, "degree {}", rep.model.degree());
        assert!(rep.max_error <= 1e-11 * std::f64::consts::E);
        let poles = rep.model.poles().unwrap();
        assert_eq!(poles.len(), rep.model.degree());
        let zeros = rep.model.zeros().unwrap();
        assert!(zeros.iter().all(|z| z.norm() > 1.0), "{zeros:?}");
        for h in rep.history.windows(2) {
            assert_eq!(h[1].degree, h[0].degree + 1);
        }
    }

    #[test]
    fn interpolation_property() {
        let s = SampleSet::from_function(FunctionSpec::TanSq, &Domain::unit_disk(), 300).unwrap();
        let rep = aaa_fit(&s, 1e-12, 60).unwrap();
        let m = &rep.model;
        for k in 0..=m.degree() {
            assert_eq!(m.eval(m.supports()[k]), m.values()[k]);
        }
    }

    #[test]
    fn too_few_samples_is_error() {
        let s = circle_samples(8, |z| z.exp());
        assert!(matches!(aaa_fit(&s, 1e-12, 7), Err(Error::Domain(_))));
        aaa_fit(&s, 1e-12, 6).unwrap();
        assert!(matches!(aaa_fit(&s, 0.0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn cleanup_leaves_clean_models_alone() {
        let s = circle_samples(200, |z| C::new(1.0, 0.0) / (z - 2.0));
        let rep = aaa_greedy(&s, 1e-10, 20).unwrap();
        let cleaned = cleanup(rep.clone(), &s);
        assert_eq!(cleaned, rep);
        assert_eq!(cleaned.cleanup_removed, 0);
    }

    #[test]
    fn cleanup_of_degree_zero_is_identity() {
        let s = circle_samples(20, |_| C::new(1.0, 0.0));
        let rep = aaa_greedy(&s, 1e-10, 5).unwrap();
        assert_eq!(cleanup(rep.clone(), &s), rep);
    }

    #[test]
    fn cleanup_removes_planted_doublet() {
        // 1/(z-2) plus a Froissart pair: pole at 0.3+0.2i with residue 1e-13
        let p = C::new(0.3, 0.2);
        let s = circle_samples(200, |z| C::new(1.0, 0.0) / (z - 2.0) + C::new(1e-13, 0.0) / (z - p));
        let rep = aaa_greedy(&s, 1e-15, 2).unwrap();
        assert_eq!(rep.model.degree(), 2);
        let cleaned = cleanup(rep, &s);
        assert_eq!(cleaned.cleanup_removed, 1);
        let poles = cleaned.model.poles().unwrap();
        assert!((poles[0] - C::new(2.0, 0.0)).norm() < 1e-8);
        assert!(cleaned.max_error < 1e-12);
    }

    #[test]
    fn runs_in_single_precision() {
        let z = Domain::<f32>::unit_disk().boundary_samples(100).unwrap();
        let v = z.iter().map(|&p| Complex::<f32>::new(1.0, 0.0) / (p - 3.0)).collect();
        let s = SampleSet::new(z, v).unwrap();
        let rep = aaa_fit(&s, 1e-5, 10).unwrap();
        assert!(rep.converged);
        let p = rep.model.poles().unwrap();
        assert!(p.iter().any(|p| (p - Complex::new(3.0, 0.0)).norm() < 1e-3), "{p:?}");
    }
}
