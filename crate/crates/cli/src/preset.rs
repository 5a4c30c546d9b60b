//! The six figure configurations.

use ratapprox::geometry::FunctionSpec;
use ratapprox::{Domain, Window};

use crate::{CliError, CliResult};

pub const SAMPLES: usize = 500;
pub const TOL: f64 = 1e-12;
pub const MAX_DEGREE: usize = 150;
/// Potential grid resolution per side.
pub const RESOLUTION: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub id: u8,
    pub function: FunctionSpec,
    pub domain: Domain,
    pub samples: usize,
    pub tol: f64,
    pub max_degree: usize,
    /// `None` frames the domain and the poles of the final fit.
    pub plot_window: Option<Window>,
    pub degrees: Vec<usize>,
}

fn window(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Option<Window> {
    Some(Window { xmin, xmax, ymin, ymax })
}

impl FigurePreset {
    pub fn get(id: u8) -> CliResult<Self> {
        // Even functions sweep even degrees; odd steps only add an
        // unpaired support point.
        let (function, domain, plot_window, degrees): (_, _, _, Vec<usize>) = match id {
            1 => (FunctionSpec::Exp, Domain::unit_disk(), None, (0..=20).collect()),
            2 => {
                (FunctionSpec::TanSq, Domain::unit_disk(), window(-3.0, 3.0, -3.0, 3.0), (0..=60).step_by(2).collect())
            }
            3 => (
                FunctionSpec::ExpTanSq,
                Domain::unit_disk(),
                window(-3.0, 3.0, -3.0, 3.0),
                (0..=80).step_by(2).collect(),
            ),
            4 => (FunctionSpec::TwoBranchSqrt, Domain::unit_disk(), window(-1.5, 3.5, -1.5, 3.5), (0..=60).collect()),
            5 => (
                FunctionSpec::AbsVal,
                Domain::Interval { a: -1.0, b: 1.0 },
                window(-1.5, 1.5, -1.0, 1.0),
                (4..=60).step_by(2).collect(),
            ),
            6 => (FunctionSpec::SqrtNeg, Domain::default_horseshoe(), window(-2.0, 3.0, -2.5, 2.5), (0..=80).collect()),
            _ => return Err(CliError::Usage(format!("unknown figure {id}; valid ids are 1 to 6"))),
        };
        Ok(Self { id, function, domain, samples: SAMPLES, tol: TOL, max_degree: MAX_DEGREE, plot_window, degrees })
    }

    pub fn all() -> Vec<Self> {
        (1..=6).map(|id| Self::get(id).expect("ids 1..=6 exist")).collect()
    }
}
