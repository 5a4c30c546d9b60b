//! The Cauchy-Hermite identity checked against a double-double oracle.

mod support;

use ratapprox::aaa::{aaa_fit, BarycentricRational};
use ratapprox::geometry::FunctionSpec;
use ratapprox::potential::{walsh_error, ContourSpec};
use ratapprox::{Domain, SampleSet, C64};
use support::dd::{self, Cdd};

fn denominator(r: &BarycentricRational<f64>, x: Cdd) -> Cdd {
    r.supports()
        .iter()
        .zip(r.weights())
        .fold(Cdd::zero(), |acc, (&s, &w)| acc.add(Cdd::from_c64(w).div(x.sub(Cdd::from_c64(s)))))
}

// f(z) minus the interpolant with r's weights and exact data at the supports.
fn exact_error(r: &BarycentricRational<f64>, f: impl Fn(Cdd) -> Cdd, z: Cdd) -> Cdd {
    let (mut n, mut d) = (Cdd::zero(), Cdd::zero());
    for (&s, &w) in r.supports().iter().zip(r.weights()) {
        let q = Cdd::from_c64(w).div(z.sub(Cdd::from_c64(s)));
        n = n.add(q.mul(f(Cdd::from_c64(s))));
        d = d.add(q);
    }
    f(z).sub(n.div(d))
}

// Trapezoid sum of the contour integral with phi(z)/phi(t) = D(t)/D(z).
fn quadrature(r: &BarycentricRational<f64>, f: impl Fn(Cdd) -> Cdd, radius: f64, n: usize, z: Cdd) -> Cdd {
    let dz = denominator(r, z);
    dd::circle_nodes(radius, n).into_iter().fold(Cdd::zero(), |acc, t| {
        let term = denominator(r, t).div(dz).mul(f(t)).mul(t).div(t.sub(z));
        acc.add(term.div_f64(n as f64))
    })
}

fn interior_points() -> Vec<C64> {
    (0..10).map(|k| C64::from_polar(0.1 + 0.08 * k as f64, 0.7 * k as f64 + 0.3)).collect()
}

fn fit(f: FunctionSpec) -> BarycentricRational<f64> {
    let s = SampleSet::from_function(f, &Domain::unit_disk(), 500).unwrap();
    aaa_fit(&s, 1e-12, 150).unwrap().model
}

#[test]
fn identity_holds_in_double_double_for_exp() {
    let r = fit(FunctionSpec::Exp);
    for z in interior_points() {
        let z = Cdd::from_c64(z);
        let want = exact_error(&r, dd::exp, z).to_c64();
        let got = quadrature(&r, dd::exp, 2.0, 256, z).to_c64();
        assert!(want.norm() > 1e-17);
        assert!((got - want).norm() <= 1e-12 * want.norm(), "{got} vs {want}");
    }
}

#[test]
fn identity_holds_in_double_double_for_tan_sq() {
    let r = fit(FunctionSpec::TanSq);
    let f = |w: Cdd| dd::tan(w.mul(w));
    for z in interior_points() {
        let z = Cdd::from_c64(z);
        let want = exact_error(&r, f, z).to_c64();
        let got = quadrature(&r, f, 1.15, 1024, z).to_c64();
        assert!((got - want).norm() <= 1e-10 * want.norm(), "{got} vs {want}");
    }
}

// In f64 the contour nodes and f(t) carry rounding of ~1e-16 relative; the
// terms cancel, so the estimate is good to that level in absolute terms.
#[test]
fn f64_estimate_tracks_the_oracle() {
    let r = fit(FunctionSpec::Exp);
    let c = ContourSpec::circle(C64::new(0.0, 0.0), 2.0, 256).unwrap();
    let fc: Vec<C64> = c.nodes().iter().map(|t| t.exp()).collect();
    let fmax = fc.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for z in interior_points() {
        let want = exact_error(&r, dd::exp, Cdd::from_c64(z)).to_c64();
        let got = walsh_error(&c, &fc, &r, z).unwrap();
        assert!((got - want).norm() <= f64::EPSILON * fmax, "{got} vs {want}");
    }
}
