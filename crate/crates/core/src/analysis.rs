//! Convergence studies: sup-norm errors, degree sweeps and decay-rate
//! classification. Everything here is `f64`.

use std::fmt;

use num_complex::Complex;

use crate::aaa::{aaa_greedy, BarycentricRational};
use crate::geometry::{
    is_finite_value, Domain, FunctionSpec, SampleSet, DEFAULT_BOUNDARY_SAMPLES, DEFAULT_TEST_POINTS,
};
use crate::polyfit::{va_fit, ArnoldiPolynomial};
use crate::{Error, Result};

/// Relative error level below which entries count as floor-limited.
pub const DEFAULT_FLOOR: f64 = 1e-13;
/// A pole closer than this to `K` is treated as lying in `K`.
pub const POLE_IN_DOMAIN_TOL: f64 = 1e-9;
const INTERIOR_SCAN: usize = 40;
const MIN_CLASSIFY: usize = 4;
const CONCAVE_SHARE: f64 = 0.7;
const CONCAVE_MEAN: f64 = -0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Rational,
    Polynomial,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Rational => "rational",
            Self::Polynomial => "polynomial",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Ok,
    /// Below the relative noise floor; kept but not used for rates.
    Floor,
    /// A pole of the rational fit touches `K`.
    PoleInDomain,
}

impl Flag {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ok => "ok",
            Self::Floor => "floor",
            Self::PoleInDomain => "pole-in-domain",
        }
    }
}

/// Something that can be compared against `f` on `K`.
#[derive(Debug, Clone, Copy)]
pub enum Approximant<'a> {
    Rational(&'a BarycentricRational<f64>),
    Polynomial(&'a ArnoldiPolynomial<f64>),
}

impl Approximant<'_> {
    fn eval(&self, zs: &[Complex<f64>]) -> Vec<Complex<f64>> {
        match self {
            Self::Rational(r) => r.eval_many(zs),
            Self::Polynomial(p) => p.eval(zs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupError {
    pub value: f64,
    pub pole_in_domain: bool,
}

/// Max of `|f - approx|` over the test grid of `domain`. When a pole of a
/// rational approximant lies in `K`, interior points are scanned as well.
pub fn estimate_sup_error(f: FunctionSpec, approx: Approximant<'_>, domain: &Domain<f64>) -> Result<SupError> {
    let mut points = domain.test_grid(DEFAULT_TEST_POINTS)?;
    let pole_in_domain = match approx {
        Approximant::Rational(r) if r.degree() > 0 => {
            r.poles()?.iter().any(|&p| domain.distance(p) < POLE_IN_DOMAIN_TOL)
        }
        _ => false,
    };
    if pole_in_domain {
        points.extend(domain.interior_grid(INTERIOR_SCAN));
    }
    let got = approx.eval(&points);
    let mut value = 0.0f64;
    for (&z, a) in points.iter().zip(got) {
        let fz = f.eval(z);
        if !is_finite_value(fz) {
            return Err(Error::Domain(format!("{f} is not finite at {z}")));
        }
        let e = (fz - a).norm();
        value = if e.is_nan() { f64::INFINITY } else { value.max(e) };
    }
    Ok(SupError { value, pole_in_domain })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub degree: usize,
    pub method: Method,
    pub error: f64,
    pub flag: Flag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub function: FunctionSpec,
    pub domain: Domain<f64>,
    /// `max|f|` on the test grid; floors are relative to it.
    pub scale: f64,
    /// Polynomial entries first, then rational; degrees increase within each.
    pub entries: Vec<Entry>,
}

impl ConvergenceRecord {
    pub fn method(&self, method: Method) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.method == method)
    }
}

/// Polynomial and rational errors at each requested degree.
///
/// Polynomial entries come from independent fits. Rational entries come from
/// the snapshots of a single greedy run with tolerance `tol_floor`, so a
/// degree beyond the point where that run stops has no rational entry.
pub fn convergence_study(
    f: FunctionSpec,
    domain: &Domain<f64>,
    degrees: &[usize],
    tol_floor: f64,
) -> Result<ConvergenceRecord> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("degrees must be nonempty and increasing, got {degrees:?}")));
    }
    let max_degree = *degrees.last().unwrap_or(&0);
    let samples = SampleSet::from_function(f, domain, DEFAULT_BOUNDARY_SAMPLES.max(4 * (max_degree + 2)))?;
    let grid = domain.test_grid(DEFAULT_TEST_POINTS)?;
    let scale = grid.iter().map(|&z| f.eval(z).norm()).fold(0.0, f64::max);
    let floor = tol_floor * scale;
    let flag_of = |sup: SupError| {
        if sup.pole_in_domain {
            Flag::PoleInDomain
        } else if sup.value < floor {
            Flag::Floor
        } else {
            Flag::Ok
        }
    };

    let mut entries = Vec::new();
    for &n in degrees {
        let p = va_fit(&samples, n)?;
        let sup = estimate_sup_error(f, Approximant::Polynomial(&p), domain)?;
        entries.push(Entry { degree: n, method: Method::Polynomial, error: sup.value, flag: flag_of(sup) });
    }

    let greedy = aaa_greedy(&samples, tol_floor, max_degree)?;
    for &n in degrees {
        let Some(h) = greedy.history.iter().find(|h| h.degree == n) else { continue };
        let sup = estimate_sup_error(f, Approximant::Rational(&h.model), domain)?;
        entries.push(Entry { degree: n, method: Method::Rational, error: sup.value, flag: flag_of(sup) });
    }
    Ok(ConvergenceRecord { function: f, domain: *domain, scale, entries })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateVariant {
    Superexponential,
    /// Decades gained per unit degree.
    Exponential(f64),
    /// Decades gained per unit `sqrt(n)`.
    RootExponential(f64),
    /// `E_n ~ n^-order`.
    Algebraic(f64),
}

impl RateVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Superexponential => "superexponential",
            Self::Exponential(_) => "exponential",
            Self::RootExponential(_) => "root-exponential",
            Self::Algebraic(_) => "algebraic",
        }
    }

    pub fn rate(&self) -> Option<f64> {
        match *self {
            Self::Superexponential => None,
            Self::Exponential(r) | Self::RootExponential(r) | Self::Algebraic(r) => Some(r),
        }
    }
}

/// Classification plus the R² of each of the three straight-line models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateClass {
    pub variant: RateVariant,
    pub r2_linear: f64,
    pub r2_sqrt: f64,
    pub r2_log: f64,
}

/// Classifies the decay of one method's `ok` entries with positive degree.
pub fn classify_rate(record: &ConvergenceRecord, method: Method) -> Result<RateClass> {
    let (n, e): (Vec<f64>, Vec<f64>) = record
        .method(method)
        .filter(|x| x.flag == Flag::Ok && x.degree > 0)
        .map(|x| (x.degree as f64, x.error))
        .unzip();
    classify_errors(&n, &e)
}

/// Classifies `E(n)` from paired degrees and errors.
///
/// `log10 E` is fitted against `n`, `sqrt n` and `log10 n`. Clear concavity
/// in `n` means superexponential; otherwise the best R² wins.
pub fn classify_errors(degrees: &[f64], errors: &[f64]) -> Result<RateClass> {
    if degrees.len() != errors.len() {
        return Err(Error::Domain(format!("{} degrees for {} errors", degrees.len(), errors.len())));
    }
    if degrees.len() < MIN_CLASSIFY {
        return Err(Error::Domain(format!(
            "need at least {MIN_CLASSIFY} usable entries to classify, got {}",
            degrees.len()
        )));
    }
    if degrees.iter().any(|&n| !(n > 0.0)) || errors.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::Domain("degrees and errors must be positive and finite".into()));
    }
    let y: Vec<f64> = errors.iter().map(|e| e.log10()).collect();
    let sqrt: Vec<f64> = degrees.iter().map(|n| n.sqrt()).collect();
    let log: Vec<f64> = degrees.iter().map(|n| n.log10()).collect();
    let (s_lin, r2_linear) = line_fit(degrees, &y);
    let (s_sqrt, r2_sqrt) = line_fit(&sqrt, &y);
    let (s_log, r2_log) = line_fit(&log, &y);

    let curv: Vec<f64> = (1..degrees.len() - 1)
        .map(|i| {
            let (x0, x1, x2) = (degrees[i - 1], degrees[i], degrees[i + 1]);
            let d1 = (y[i] - y[i - 1]) / (x1 - x0);
            let d2 = (y[i + 1] - y[i]) / (x2 - x1);
            2.0 * (d2 - d1) / (x2 - x0)
        })
        .collect();
    let negative = curv.iter().filter(|&&c| c < 0.0).count() as f64;
    let mean = curv.iter().sum::<f64>() / curv.len() as f64;
    let variant = if negative >= CONCAVE_SHARE * curv.len() as f64 && mean < CONCAVE_MEAN {
        RateVariant::Superexponential
    } else if r2_linear >= r2_sqrt && r2_linear >= r2_log {
        RateVariant::Exponential(-s_lin)
    } else if r2_sqrt >= r2_log {
        RateVariant::RootExponential(-s_sqrt)
    } else {
        RateVariant::Algebraic(-s_log)
    };
    if variant.rate().is_some_and(|r| !(r > 0.0)) {
        return Err(Error::Domain(format!("errors do not decrease ({} slope {:?})", variant.name(), variant.rate())));
    }
    Ok(RateClass { variant, r2_linear, r2_sqrt, r2_log })
}

/// Least-squares slope and R² of `y` against `x`.
fn line_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let k = x.len() as f64;
    let mx = x.iter().sum::<f64>() / k;
    let my = y.iter().sum::<f64>() / k;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let ss_res: f64 = x.iter().zip(y).map(|(a, b)| (b - my - slope * (a - mx)).powi(2)).sum();
    let r2 = if syy > 0.0 {
        1.0 - ss_res / syy
    } else if ss_res == 0.0 {
        1.0
    } else {
        0.0
    };
    (slope, r2.clamp(0.0, 1.0))
}
