//! JSON report sections shared by the commands.

use serde::Serialize;

use ratapprox::analysis::{classify_rate, ConvergenceRecord, Method, POLE_IN_DOMAIN_TOL};
use ratapprox::{Barycentric, Domain, Window, C64};

use crate::num::{pair, Num};

#[derive(Debug, Serialize)]
pub struct PoleEntry {
    pub pole: [Num; 2],
    pub residue_abs: Num,
}

#[derive(Debug, Serialize)]
pub struct PoleDiagnostics {
    pub count: usize,
    pub min_modulus: Option<Num>,
    pub min_distance_to_domain: Option<Num>,
    /// Poles within `POLE_IN_DOMAIN_TOL` of the domain.
    pub in_domain: usize,
    /// Median of `|Re p| / |Im p|` over poles off the real axis.
    pub median_re_over_im: Option<Num>,
    /// `log10(max|Im p| / min|Im p|)` over poles off the real axis.
    pub imag_span_decades: Option<Num>,
    pub poles: Vec<PoleEntry>,
}

impl PoleDiagnostics {
    pub fn new(r: &Barycentric, poles: &[C64], domain: &Domain) -> Self {
        let residues = r.residues(poles);
        let fold_min =
            |it: &mut dyn Iterator<Item = f64>| it.fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))));
        let dist: Vec<f64> = poles.iter().map(|&p| domain.distance(p)).collect();
        let off_axis: Vec<C64> = poles.iter().copied().filter(|p| p.im != 0.0).collect();
        let mut ratios: Vec<f64> = off_axis.iter().map(|p| p.re.abs() / p.im.abs()).collect();
        ratios.sort_by(f64::total_cmp);
        let median = match ratios.len() {
            0 => None,
            n if n % 2 == 1 => Some(ratios[n / 2]),
            n => Some(0.5 * (ratios[n / 2 - 1] + ratios[n / 2])),
        };
        let span = fold_min(&mut off_axis.iter().map(|p| p.im.abs()))
            .map(|lo| (off_axis.iter().map(|p| p.im.abs()).fold(0.0, f64::max) / lo).log10());
        Self {
            count: poles.len(),
            min_modulus: fold_min(&mut poles.iter().map(|p| p.norm())).map(Num),
            min_distance_to_domain: fold_min(&mut dist.iter().copied()).map(Num),
            in_domain: dist.iter().filter(|&&d| d <= POLE_IN_DOMAIN_TOL).count(),
            median_re_over_im: median.map(Num),
            imag_span_decades: span.map(Num),
            poles: residues
                .iter()
                .map(|res| PoleEntry { pole: pair(res.pole), residue_abs: Num(res.value.norm()) })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum RateReport {
    Class { class: &'static str, rate: Option<Num>, r2_linear: Num, r2_sqrt: Num, r2_log: Num },
    Failed { error: String },
}

impl RateReport {
    pub fn new(record: &ConvergenceRecord, method: Method) -> Self {
        match classify_rate(record, method) {
            Ok(c) => Self::Class {
                class: c.variant.name(),
                rate: c.variant.rate().map(Num),
                r2_linear: Num(c.r2_linear),
                r2_sqrt: Num(c.r2_sqrt),
                r2_log: Num(c.r2_log),
            },
            Err(e) => Self::Failed { error: e.to_string() },
        }
    }

    pub fn class(&self) -> Option<&'static str> {
        match self {
            Self::Class { class, .. } => Some(class),
            Self::Failed { .. } => None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Rates {
    pub rational: RateReport,
    pub polynomial: RateReport,
}

impl Rates {
    pub fn new(record: &ConvergenceRecord) -> Self {
        Self {
            rational: RateReport::new(record, Method::Rational),
            polynomial: RateReport::new(record, Method::Polynomial),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WindowReport {
    pub xmin: Num,
    pub xmax: Num,
    pub ymin: Num,
    pub ymax: Num,
}

impl From<Window> for WindowReport {
    fn from(w: Window) -> Self {
        Self { xmin: Num(w.xmin), xmax: Num(w.xmax), ymin: Num(w.ymin), ymax: Num(w.ymax) }
    }
}

/// Last entry of each method in a study.
#[derive(Debug, Serialize)]
pub struct FinalError {
    pub degree: usize,
    pub error: Num,
    pub flag: &'static str,
}

pub fn final_error(record: &ConvergenceRecord, method: Method) -> Option<FinalError> {
    record.method(method).last().map(|e| FinalError { degree: e.degree, error: Num(e.error), flag: e.flag.name() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagnostics_of_known_poles() {
        // r(z) = 1/(z - 2i) + 1/(z - (0.1 + 0.01i)), built from supports 0, 1, -1
        let f = |z: C64| 1.0 / (z - C64::new(0.0, 2.0)) + 1.0 / (z - C64::new(0.1, 0.01));
        let z =
            vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0), C64::new(0.5, 0.5)];
        let s = ratapprox::SampleSet::new(z.clone(), z.iter().map(|&p| f(p)).collect()).unwrap();
        let r = ratapprox::aaa::aaa_fit(&s, 1e-13, 2).unwrap().model;
        let poles = r.poles().unwrap();
        let d = PoleDiagnostics::new(&r, &poles, &Domain::interval(-1.0, 1.0).unwrap());
        assert_eq!(d.count, 2);
        assert_eq!(d.in_domain, 0);
        assert!((d.min_modulus.unwrap().0 - 0.1f64.hypot(0.01)).abs() < 1e-8);
        assert!((d.min_distance_to_domain.unwrap().0 - 0.01).abs() < 1e-8);
        assert!((d.median_re_over_im.unwrap().0 - 5.0).abs() < 1e-6);
        assert!((d.imag_span_decades.unwrap().0 - 200f64.log10()).abs() < 1e-6);
        for p in &d.poles {
            assert!((p.residue_abs.0 - 1.0).abs() < 1e-8);
        }
    }
}
