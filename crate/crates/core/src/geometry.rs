//! Approximation domains, their sampling, and the built-in test functions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::linalg::is_finite;
use crate::{Error, Real, Result};

/// Boundary sample count used for fitting.
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 500;
/// Point count of the independent error-estimation set.
pub const DEFAULT_TEST_POINTS: usize = 4000;

const MIN_BOUNDARY_SAMPLES: usize = 4;
const MIN_TEST_POINTS: usize = 64;
/// Deepest geometric cluster level toward an interior zero of an interval.
const CLUSTER_DECADES: f64 = 14.0;
const TEST_CLUSTER_DECADES: f64 = 15.0;

/// A compact, simply connected set in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain<T> {
    Disk {
        center: Complex<T>,
        radius: T,
    },
    Interval {
        a: T,
        b: T,
    },
    /// Annular sector `inner <= |z| <= outer`, `|arg z| >= opening`, with
    /// semicircular end caps of radius `(outer - inner) / 2`. The caps bulge
    /// into the sector so the region never meets the ray `|arg z| < opening`.
    Horseshoe {
        inner: T,
        outer: T,
        opening: T,
    },
}

impl<T: Real> Domain<T> {
    pub fn disk(center: Complex<T>, radius: T) -> Result<Self> {
        Self::Disk { center, radius }.validated()
    }

    pub fn unit_disk() -> Self {
        Self::Disk { center: Complex::zero(), radius: T::one() }
    }

    pub fn interval(a: T, b: T) -> Result<Self> {
        Self::Interval { a, b }.validated()
    }

    pub fn horseshoe(inner: T, outer: T, opening: T) -> Result<Self> {
        Self::Horseshoe { inner, outer, opening }.validated()
    }

    /// The default C-shaped region wrapped around the positive real axis.
    pub fn default_horseshoe() -> Self {
        Self::Horseshoe { inner: T::lit(0.5), outer: T::lit(1.5), opening: T::lit(0.3) }
    }

    fn validated(self) -> Result<Self> {
        let ok = match self {
            Self::Disk { center, radius } => is_finite(center) && radius.is_finite() && radius > T::zero(),
            Self::Interval { a, b } => a.is_finite() && b.is_finite() && a < b,
            Self::Horseshoe { inner, outer, opening } => {
                inner > T::zero()
                    && inner < outer
                    && outer.is_finite()
                    && opening > T::zero()
                    && opening < T::FRAC_PI_2()
            }
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Domain(format!("invalid domain parameters: {self:?}")))
        }
    }

    /// Axis-aligned bounding box `(xmin, xmax, ymin, ymax)`.
    pub fn bounding_box(&self) -> (T, T, T, T) {
        match *self {
            Self::Disk { center, radius } => {
                (center.re - radius, center.re + radius, center.im - radius, center.im + radius)
            }
            Self::Interval { a, b } => (a, b, T::zero(), T::zero()),
            Self::Horseshoe { outer, .. } => (-outer, outer, -outer, outer),
        }
    }

    /// Distance from `z` to the set (zero inside).
    pub fn distance(&self, z: Complex<T>) -> T {
        match *self {
            Self::Disk { center, radius } => ((z - center).norm() - radius).max(T::zero()),
            Self::Interval { a, b } => {
                let x = z.re.max(a).min(b);
                (z - Complex::new(x, T::zero())).norm()
            }
            Self::Horseshoe { .. } => {
                if self.horseshoe_contains(z) {
                    T::zero()
                } else {
                    self.horseshoe_pieces().iter().map(|p| p.distance(z)).fold(T::infinity(), T::min)
                }
            }
        }
    }

    fn horseshoe_contains(&self, z: Complex<T>) -> bool {
        let Self::Horseshoe { inner, outer, opening } = *self else { return false };
        let r = z.norm();
        if r < inner || r > outer || z.arg().abs() < opening {
            return false;
        }
        let (h, mid) = ((outer - inner) / T::lit(2.0), (outer + inner) / T::lit(2.0));
        [opening, -opening].iter().all(|&beta| (z - Complex::from_polar(mid, beta)).norm() >= h)
    }

    fn horseshoe_pieces(&self) -> [Piece<T>; 4] {
        let Self::Horseshoe { inner, outer, opening } = *self else {
            unreachable!("horseshoe pieces requested for {self:?}")
        };
        let two = T::lit(2.0);
        let (h, mid) = ((outer - inner) / two, (outer + inner) / two);
        let sweep = two * T::PI() - two * opening;
        let u_end = Complex::from_polar(T::one(), -opening);
        let u_start = Complex::from_polar(T::one(), opening);
        [
            // outer arc, counterclockwise from arg = opening
            Piece { center: Complex::zero(), radius: outer, start: opening, sweep, dir: T::one() },
            // cap at arg = -opening, outer end to inner end, bulging into the body
            Piece { center: u_end * mid, radius: h, start: (u_end).arg(), sweep: T::PI(), dir: -T::one() },
            // inner arc, clockwise back to arg = opening
            Piece { center: Complex::zero(), radius: inner, start: two * T::PI() - opening, sweep, dir: -T::one() },
            // cap at arg = opening, inner end to outer end
            Piece { center: u_start * mid, radius: h, start: (-u_start).arg(), sweep: T::PI(), dir: -T::one() },
        ]
    }

    /// `m` distinct points tracing the boundary once (for an interval, a
    /// clustered point set filling it).
    pub fn boundary_samples(&self, m: usize) -> Result<Vec<Complex<T>>> {
        if m < MIN_BOUNDARY_SAMPLES {
            return Err(Error::Domain(format!("need at least {MIN_BOUNDARY_SAMPLES} boundary samples, got {m}")));
        }
        Ok(match *self {
            Self::Disk { center, radius } => circle_points(center, radius, m, T::zero()),
            Self::Interval { a, b } => interval_points(a, b, m, false),
            Self::Horseshoe { .. } => self.horseshoe_points(m, T::zero()),
        })
    }

    /// Dense evaluation set for sup-norm estimates, disjoint from the default
    /// boundary samples.
    pub fn test_grid(&self, m: usize) -> Result<Vec<Complex<T>>> {
        if m < MIN_TEST_POINTS {
            return Err(Error::Domain(format!("need at least {MIN_TEST_POINTS} test points, got {m}")));
        }
        let half = T::lit(0.5);
        Ok(match *self {
            Self::Disk { center, radius } => circle_points(center, radius, m, half),
            Self::Interval { a, b } => interval_points(a, b, m, true),
            Self::Horseshoe { .. } => self.horseshoe_points(m, half),
        })
    }

    /// Interior points, used to hunt for the maximum of an error with a pole
    /// inside the set. Empty for intervals.
    pub fn interior_grid(&self, n: usize) -> Vec<Complex<T>> {
        let n = n.max(2);
        let mut pts = Vec::new();
        match *self {
            Self::Disk { center, radius } => {
                for i in 1..n {
                    let rho = radius * T::count(i) / T::count(n);
                    pts.extend(circle_points(center, rho, 4 * n, T::count(i % 2) * T::lit(0.5)));
                }
            }
            Self::Interval { .. } => {}
            Self::Horseshoe { inner, outer, .. } => {
                for i in 1..n {
                    let rho = inner + (outer - inner) * T::count(i) / T::count(n);
                    pts.extend(
                        circle_points(Complex::zero(), rho, 8 * n, T::lit(0.5))
                            .into_iter()
                            .filter(|&z| self.horseshoe_contains(z)),
                    );
                }
            }
        }
        pts
    }

    fn horseshoe_points(&self, m: usize, phase: T) -> Vec<Complex<T>> {
        let pieces = self.horseshoe_pieces();
        let total = pieces.iter().fold(T::zero(), |acc, p| acc + p.length());
        let step = total / T::count(m);
        (0..m)
            .map(|j| {
                let mut s = (T::count(j) + phase) * step;
                for p in &pieces {
                    let len = p.length();
                    if s < len {
                        return p.at(s);
                    }
                    s = s - len;
                }
                pieces[3].at(pieces[3].length())
            })
            .collect()
    }
}

/// Circular arc traversed at unit speed.
#[derive(Debug, Clone, Copy)]
struct Piece<T> {
    center: Complex<T>,
    radius: T,
    start: T,
    sweep: T,
    dir: T,
}

impl<T: Real> Piece<T> {
    fn length(&self) -> T {
        self.radius * self.sweep
    }

    fn at(&self, s: T) -> Complex<T> {
        self.center + Complex::from_polar(self.radius, self.start + self.dir * s / self.radius)
    }

    fn distance(&self, z: Complex<T>) -> T {
        let d = z - self.center;
        // angle of d measured along the traversal direction from the start
        let two_pi = T::lit(2.0) * T::PI();
        let mut rel = (d.arg() - self.start) * self.dir;
        rel = rel - (rel / two_pi).floor() * two_pi;
        if rel <= self.sweep && !d.norm().is_zero() {
            (d.norm() - self.radius).abs()
        } else {
            let a = self.at(T::zero());
            let b = self.at(self.length());
            (z - a).norm().min((z - b).norm())
        }
    }
}

fn circle_points<T: Real>(center: Complex<T>, radius: T, m: usize, phase: T) -> Vec<Complex<T>> {
    let two_pi = T::lit(2.0) * T::PI();
    (0..m)
        .map(|j| {
            let j = T::count(j) + phase;
            // exact quarter turns keep the four axis points exact
            let theta = two_pi * j / T::count(m);
            let (s, c) = exact_sin_cos(j * T::lit(4.0) / T::count(m), theta);
            center + Complex::new(c, s) * radius
        })
        .collect()
}

/// `(sin, cos)` of `theta`, exact when `quarters` is an integer.
fn exact_sin_cos<T: Real>(quarters: T, theta: T) -> (T, T) {
    if quarters.fract().is_zero() {
        let q = quarters.to_i64().unwrap_or(0).rem_euclid(4);
        let (s, c) = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)][q as usize];
        (T::lit(s), T::lit(c))
    } else {
        theta.sin_cos()
    }
}

/// Chebyshev-distributed points on `[a, b]`, with geometric clusters toward
/// zero when it lies strictly inside. `offset` selects the interleaved
/// (midpoint) family used for test grids.
fn interval_points<T: Real>(a: T, b: T, m: usize, offset: bool) -> Vec<Complex<T>> {
    let zero_inside = a < T::zero() && b > T::zero();
    let half = T::lit(0.5);
    let (mid, rad) = ((a + b) * half, (b - a) * half);
    let per_side = if zero_inside { m / 4 } else { 0 };
    let mut xs: Vec<T> = Vec::with_capacity(m);
    let mut n_cheb = m - 2 * per_side;
    // the midpoint family contains zero exactly when its size is odd
    let mut extra = 0;
    if offset && zero_inside && n_cheb.is_multiple_of(2) {
        n_cheb -= 1;
        extra = 1;
    }
    let pi = T::PI();
    for k in 0..n_cheb {
        // sin form is exactly antisymmetric about the midpoint
        let t = if offset {
            pi * (T::count(n_cheb - 1) - T::count(2 * k)) / T::count(2 * n_cheb)
        } else if n_cheb == 1 {
            T::zero()
        } else {
            pi * half * (T::count(n_cheb - 1) - T::count(2 * k)) / T::count(n_cheb - 1)
        };
        xs.push(mid + rad * t.sin());
    }
    let decades = T::lit(if offset { TEST_CLUSTER_DECADES } else { CLUSTER_DECADES });
    let ten = T::lit(10.0);
    for j in 1..=per_side {
        let level = if offset { T::count(j) - half } else { T::count(j) };
        let f = ten.powf(-decades * level / T::count(per_side));
        xs.push(b * f);
        xs.push(a * f);
    }
    if extra == 1 {
        let level = T::count(per_side) + half;
        xs.push(b * ten.powf(-decades * level / T::count(per_side)));
    }
    xs.sort_by(|p, q| p.partial_cmp(q).unwrap_or(Ordering::Equal));
    xs.dedup();
    xs.into_iter().map(|x| Complex::new(x, T::zero())).collect()
}

/// Points paired with function values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet<T> {
    points: Vec<Complex<T>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> SampleSet<T> {
    /// Validates lengths, distinctness and finiteness.
    pub fn new(points: Vec<Complex<T>>, values: Vec<Complex<T>>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::Domain(format!("{} points but {} values", points.len(), values.len())));
        }
        if points.len() < 2 {
            return Err(Error::Domain("a sample set needs at least two points".into()));
        }
        if let Some(i) = values.iter().position(|v| !is_finite(*v)) {
            return Err(Error::Domain(format!("non-finite value at sample point {:?}", points[i])));
        }
        if points.iter().any(|p| !is_finite(*p)) {
            return Err(Error::Domain("non-finite sample point".into()));
        }
        let mut sorted = points.clone();
        sorted.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap()));
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("repeated sample point {:?}", w[0])));
        }
        Ok(Self { points, values })
    }

    /// Samples `f` at `domain.boundary_samples(m)`.
    pub fn from_function(f: FunctionSpec, domain: &Domain<T>, m: usize) -> Result<Self> {
        let points = domain.boundary_samples(m)?;
        let values = points.iter().map(|&z| f.eval(z)).collect();
        Self::new(points, values)
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest `|value|`.
    pub fn scale(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    /// Diameter of the point set.
    pub fn diameter(&self) -> T {
        let mut d = T::zero();
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }
}

/// The six built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionSpec {
    /// `e^z`
    Exp,
    /// `tan(z^2)`
    TanSq,
    /// `exp(tan(z^2))`
    ExpTanSq,
    /// `sqrt((1.5 - z)(1.5i - z))`, as `exp((Log(1.5 - z) + Log(1.5i - z)) / 2)`
    TwoBranchSqrt,
    /// `|z|`
    AbsVal,
    /// principal `sqrt(-z)`, cut on `[0, inf)`
    SqrtNeg,
}

impl FunctionSpec {
    pub const ALL: [FunctionSpec; 6] =
        [Self::Exp, Self::TanSq, Self::ExpTanSq, Self::TwoBranchSqrt, Self::AbsVal, Self::SqrtNeg];

    pub fn name(self) -> &'static str {
        match self {
            Self::Exp => "exp",
            Self::TanSq => "tan-sq",
            Self::ExpTanSq => "exp-tan-sq",
            Self::TwoBranchSqrt => "two-branch-sqrt",
            Self::AbsVal => "abs",
            Self::SqrtNeg => "sqrt-neg",
        }
    }

    /// Evaluates the function. Poles yield an infinite marker and branch
    /// cuts a NaN marker; test with [`is_finite_value`].
    pub fn eval<T: Real>(self, z: Complex<T>) -> Complex<T> {
        match self {
            Self::Exp => z.exp(),
            Self::TanSq => tan_checked(z * z),
            Self::ExpTanSq => {
                let t = tan_checked(z * z);
                if is_finite(t) {
                    t.exp()
                } else {
                    t
                }
            }
            Self::TwoBranchSqrt => {
                let b = T::lit(1.5);
                let on_cut = (z.im.is_zero() && z.re >= b) || (z.im == b && z.re >= T::zero());
                if on_cut {
                    return nan_marker();
                }
                let s = (Complex::new(b, T::zero()) - z).ln() + (Complex::new(T::zero(), b) - z).ln();
                (s * T::lit(0.5)).exp()
            }
            Self::AbsVal => Complex::new(z.norm(), T::zero()),
            Self::SqrtNeg => {
                if z.im.is_zero() && z.re >= T::zero() {
                    return nan_marker();
                }
                (-z).sqrt()
            }
        }
    }
}

/// True unless `v` is a pole or branch-cut marker.
pub fn is_finite_value<T: Real>(v: Complex<T>) -> bool {
    is_finite(v)
}

fn nan_marker<T: Real>() -> Complex<T> {
    Complex::new(T::nan(), T::nan())
}

fn tan_checked<T: Real>(w: Complex<T>) -> Complex<T> {
    let c = w.cos();
    if c.norm() <= T::lit(8.0) * T::epsilon() * (T::one() + w.norm()) {
        Complex::new(T::infinity(), T::zero())
    } else {
        w.sin() / c
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|f| f.name()).collect();
            Error::Domain(format!("unknown function `{s}`; valid values: {}", names.join(", ")))
        })
    }
}

impl<T: Real + fmt::Display> fmt::Display for Domain<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Disk { center, radius } => write!(f, "disk:{},{},{}", center.re, center.im, radius),
            Self::Interval { a, b } => write!(f, "interval:{a},{b}"),
            Self::Horseshoe { inner, outer, opening } => write!(f, "horseshoe:{inner},{outer},{opening}"),
        }
    }
}

impl FromStr for Domain<f64> {
    type Err = Error;

    /// Parses `disk:cx,cy,r`, `interval:a,b` or `horseshoe[:inner,outer,opening]`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<f64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|e| Error::Domain(format!("bad number `{t}`: {e}"))))
                .collect::<Result<_>>()?
        };
        match (kind, nums.as_slice()) {
            ("disk", [cx, cy, r]) => Self::disk(Complex::new(*cx, *cy), *r),
            ("interval", [a, b]) => Self::interval(*a, *b),
            ("horseshoe", []) => Ok(Self::default_horseshoe()),
            ("horseshoe", [i, o, a]) => Self::horseshoe(*i, *o, *a),
            _ => Err(Error::Domain(format!(
                "unknown domain `{s}`; valid forms: disk:cx,cy,r | interval:a,b | horseshoe[:inner,outer,opening]"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn distinct(points: &[C]) -> bool {
        let mut v = points.to_vec();
        v.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
        v.windows(2).all(|w| w[0] != w[1])
    }

    #[test]
    fn disk_four_points() {
        let pts = Domain::<f64>::unit_disk().boundary_samples(4).unwrap();
        assert_eq!(pts, vec![C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(-1.0, 0.0), C::new(0.0, -1.0)]);
    }

    #[test]
    fn too_few_samples() {
        assert!(Domain::<f64>::unit_disk().boundary_samples(3).is_err());
        assert!(Domain::<f64>::unit_disk().test_grid(63).is_err());
    }

    #[test]
    fn interval_five_points_symmetric() {
        let pts = Domain::<f64>::interval(-1.0, 1.0).unwrap().boundary_samples(5).unwrap();
        assert_eq!(pts.len(), 5);
        for (p, q) in pts.iter().zip(pts.iter().rev()) {
            assert_eq!(p.re, -q.re);
            assert_eq!(p.im, 0.0);
        }
        assert!(pts.iter().all(|p| p.re.abs() <= 1.0));
    }

    #[test]
    fn interval_default_samples_cluster_at_zero() {
        let pts = Domain::<f64>::interval(-1.0, 1.0).unwrap().boundary_samples(500).unwrap();
        assert_eq!(pts.len(), 500);
        assert!(distinct(&pts));
        let smallest = pts.iter().map(|p| p.re.abs()).fold(f64::INFINITY, f64::min);
        assert!((smallest - 1e-14).abs() < 1e-20);
        assert_eq!(pts[0].re, -1.0);
        assert_eq!(pts[499].re, 1.0);
    }

    #[test]
    fn interval_test_grid_reaches_zero() {
        let pts = Domain::<f64>::interval(-1.0, 1.0).unwrap().test_grid(1001).unwrap();
        assert_eq!(pts.len(), 1001);
        assert!(pts.iter().any(|p| p.re.abs() < 1e-12));
    }

    #[test]
    fn test_grid_disjoint_from_samples() {
        for d in [
            Domain::<f64>::unit_disk(),
            Domain::<f64>::interval(-1.0, 1.0).unwrap(),
            Domain::<f64>::default_horseshoe(),
        ] {
            let s = d.boundary_samples(DEFAULT_BOUNDARY_SAMPLES).unwrap();
            let t = d.test_grid(DEFAULT_TEST_POINTS).unwrap();
            assert_eq!(t.len(), DEFAULT_TEST_POINTS);
            assert!(distinct(&s) && distinct(&t));
            let mut all = s.clone();
            all.extend(&t);
            assert!(distinct(&all), "{d:?}: overlap between fitting and test sets");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let d = Domain::<f64>::default_horseshoe();
        assert_eq!(d.boundary_samples(300).unwrap(), d.boundary_samples(300).unwrap());
        assert_eq!(d.test_grid(300).unwrap(), d.test_grid(300).unwrap());
    }

    #[test]
    fn horseshoe_samples_respect_geometry() {
        let d = Domain::<f64>::horseshoe(0.5, 1.5, 0.3).unwrap();
        let pts = d.boundary_samples(777).unwrap();
        for p in &pts {
            assert!(p.norm() >= 0.5 - 1e-12 && p.norm() <= 1.5 + 1e-12, "{p}");
            assert!(p.arg().abs() >= 0.3 - 1e-12, "{p}");
            assert!(d.distance(*p) < 1e-9, "{p} off the region: {}", d.distance(*p));
        }
        assert!(d.distance(C::new(1.0, 0.0)) > 0.1);
        assert!(d.distance(C::new(0.0, 0.0)) > 0.4);
        assert!(d.distance(C::new(-1.0, 0.0)) == 0.0);
    }

    #[test]
    fn horseshoe_boundary_closes() {
        let d = Domain::<f64>::default_horseshoe();
        let pts = d.boundary_samples(1000).unwrap();
        let step = pts.windows(2).map(|w| (w[1] - w[0]).norm()).fold(0.0, f64::max);
        assert!((pts[999] - pts[0]).norm() <= step * 1.0001);
        let pieces = d.horseshoe_pieces();
        for k in 0..4 {
            let end = pieces[k].at(pieces[k].length());
            let next = pieces[(k + 1) % 4].at(0.0);
            assert!((end - next).norm() < 1e-12, "gap after piece {k}");
        }
    }

    #[test]
    fn function_values() {
        assert_eq!(FunctionSpec::Exp.eval(C::new(0.0, 0.0)), C::new(1.0, 0.0));
        assert_eq!(FunctionSpec::AbsVal.eval(C::new(-0.5, 0.0)), C::new(0.5, 0.0));
        // sqrt(1.5 * 1.5i) = 1.5 e^{i pi/4}
        let v = FunctionSpec::TwoBranchSqrt.eval(C::new(0.0, 0.0));
        let want = C::from_polar(1.5, std::f64::consts::FRAC_PI_4);
        assert!((v - want).norm() < 1e-15, "{v}");
    }

    #[test]
    fn singular_points_are_marked() {
        let p = (std::f64::consts::FRAC_PI_2).sqrt();
        assert!(!is_finite_value(FunctionSpec::TanSq.eval(C::new(p, 0.0))));
        assert!(!is_finite_value(FunctionSpec::ExpTanSq.eval(C::new(0.0, p))));
        assert!(!is_finite_value(FunctionSpec::SqrtNeg.eval(C::new(0.25, 0.0))));
        assert!(!is_finite_value(FunctionSpec::TwoBranchSqrt.eval(C::new(2.0, 0.0))));
        assert!(!is_finite_value(FunctionSpec::TwoBranchSqrt.eval(C::new(0.5, 1.5))));
        assert!(is_finite_value(FunctionSpec::SqrtNeg.eval(C::new(0.25, 1e-300))));
    }

    #[test]
    fn disk_evaluations_are_finite() {
        let pts = Domain::<f64>::unit_disk().boundary_samples(500).unwrap();
        for f in [FunctionSpec::Exp, FunctionSpec::TanSq, FunctionSpec::ExpTanSq, FunctionSpec::TwoBranchSqrt] {
            assert!(pts.iter().all(|&z| is_finite_value(f.eval(z))), "{f}");
        }
    }

    #[test]
    fn two_branch_sqrt_squares_back() {
        for z in Domain::<f64>::unit_disk().interior_grid(12) {
            let v = FunctionSpec::TwoBranchSqrt.eval(z);
            let want = (C::new(1.5, 0.0) - z) * (C::new(0.0, 1.5) - z);
            assert!((v * v - want).norm() < 1e-13);
        }
    }

    #[test]
    fn sqrt_neg_schwarz_reflection() {
        for z in [C::new(0.3, 0.7), C::new(-1.2, 0.01), C::new(2.0, -3.0), C::new(-0.5, 0.0)] {
            let a = FunctionSpec::SqrtNeg.eval(z.conj());
            let b = FunctionSpec::SqrtNeg.eval(z).conj();
            assert_eq!(a, b, "{z}");
        }
    }

    #[test]
    fn sample_set_validation() {
        let p = vec![C::new(0.0, 0.0), C::new(1.0, 0.0)];
        assert!(SampleSet::new(p.clone(), vec![C::new(1.0, 0.0)]).is_err());
        assert!(SampleSet::new(vec![p[0], p[0]], vec![C::new(1.0, 0.0); 2]).is_err());
        assert!(SampleSet::new(p.clone(), vec![C::new(f64::NAN, 0.0), C::new(1.0, 0.0)]).is_err());
        assert!(SampleSet::new(p, vec![C::new(1.0, 0.0); 2]).is_ok());
    }

    #[test]
    fn parse_names() {
        for f in FunctionSpec::ALL {
            assert_eq!(f.name().parse::<FunctionSpec>().unwrap(), f);
        }
        let err = "sin".parse::<FunctionSpec>().unwrap_err().to_string();
        assert!(err.contains("exp") && err.contains("sqrt-neg"));
        assert_eq!("disk:0,0,1".parse::<Domain<f64>>().unwrap(), Domain::<f64>::unit_disk());
        assert_eq!("interval:-1,1".parse::<Domain<f64>>().unwrap(), Domain::Interval { a: -1.0, b: 1.0 });
        assert_eq!("horseshoe".parse::<Domain<f64>>().unwrap(), Domain::<f64>::default_horseshoe());
        assert!("square:1".parse::<Domain<f64>>().is_err());
        assert!("interval:1,-1".parse::<Domain<f64>>().is_err());
    }

    #[test]
    fn f32_sampling() {
        let pts = Domain::<f32>::unit_disk().boundary_samples(8).unwrap();
        assert!(pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-6));
    }
}
