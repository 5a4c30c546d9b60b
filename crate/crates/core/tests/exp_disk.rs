//! The exponential on the unit disk end to end: fit, singularities, potential.

use ratapprox::aaa::aaa_fit;
use ratapprox::geometry::FunctionSpec;
use ratapprox::potential::{potential_gap, potential_grid};
use ratapprox::{Domain, SampleSet, Window};

fn samples() -> SampleSet {
    SampleSet::from_function(FunctionSpec::Exp, &Domain::unit_disk(), 500).unwrap()
}

#[test]
fn poles_and_zeros_lie_outside_the_disk() {
    let r = aaa_fit(&samples(), 1e-12, 150).unwrap().model;
    assert_eq!(r.poles().unwrap().len(), r.degree());
    for p in r.poles().unwrap().into_iter().chain(r.zeros().unwrap()) {
        assert!(p.norm() > 2.0, "{p}");
    }
}

#[test]
fn potential_extremes_sit_at_supports_and_poles() {
    let r = aaa_fit(&samples(), 1e-12, 150).unwrap().model;
    let poles = r.poles().unwrap();
    let domain = Domain::unit_disk();
    let window = Window::around(&domain, &poles);
    let field = potential_grid(r.supports(), &poles, window, (200, 200)).unwrap();
    let (mut lo, mut hi) = ((0, 0), (0, 0));
    for j in 0..field.ny {
        for i in 0..field.nx {
            if field.value(i, j) < field.value(lo.0, lo.1) {
                lo = (i, j);
            }
            if field.value(i, j) > field.value(hi.0, hi.1) {
                hi = (i, j);
            }
        }
    }
    let cell = window.diagonal() / 200.0;
    assert!(field.cell_center(lo.0, lo.1).norm() <= 1.0 + cell);
    let zmax = field.cell_center(hi.0, hi.1);
    let near = poles.iter().map(|p| (p - zmax).norm()).fold(f64::INFINITY, f64::min);
    assert!(near <= 2.0 * cell, "{zmax} is {near} from the nearest pole");
    let gap = potential_gap(&field);
    assert!((5.0..=9.0).contains(&gap), "{gap}");
}
