//! `figure`, `fit`, `study` and `potential`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use ratapprox::aaa::aaa_fit;
use ratapprox::analysis::{
    convergence_study, estimate_sup_error, Approximant, ConvergenceRecord, Method, DEFAULT_FLOOR,
};
use ratapprox::geometry::FunctionSpec;
use ratapprox::polyfit::va_fit;
use ratapprox::potential::{potential_gap, potential_grid, MIN_RESOLUTION};
use ratapprox::{Domain, PotentialField, SampleSet, Window, C64};

use crate::model::Model;
use crate::num::{fmt17, to_json, Num};
use crate::preset::{FigurePreset, RESOLUTION};
use crate::report::{final_error, FinalError, PoleDiagnostics, Rates, WindowReport};
use crate::svg::{self, Curve};
use crate::{CliError, CliResult};

/// Files written by a command, and any postcondition that failed. Files
/// are emitted even when `problems` is nonempty.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub problems: Vec<String>,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut builder = tempfile::Builder::new();
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        builder.permissions(fs::Permissions::from_mode(0o644));
    }
    let mut tmp = builder.tempfile_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

fn prepare(out: &Path) -> CliResult<()> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(dir: &Path) -> CliResult<Self> {
        prepare(dir)?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    fn put(&mut self, name: &str, contents: &[u8]) -> CliResult<()> {
        let path = self.dir.join(name);
        write_atomic(&path, contents)?;
        self.files.push(path);
        Ok(())
    }
}

/// `degree,method,error,flag`, polynomial rows first.
pub fn convergence_csv(record: &ConvergenceRecord) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let row = |w: &mut csv::Writer<Vec<u8>>, cells: [&str; 4]| w.write_record(cells).expect("writing to memory");
    row(&mut w, ["degree", "method", "error", "flag"]);
    for e in &record.entries {
        row(&mut w, [&e.degree.to_string(), e.method.name(), &fmt17(e.error), e.flag.name()]);
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("ascii")
}

/// Parses `start:step:stop` (inclusive) or a single degree.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>, String> {
    let nums: Vec<usize> = s
        .split(':')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad degree `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match nums.as_slice() {
        [n] => Ok(vec![*n]),
        [a, step, b] if *step > 0 && a <= b => Ok((*a..=*b).step_by(*step).collect()),
        _ => Err(format!("expected start:step:stop with step > 0 and start <= stop, got `{s}`")),
    }
}

/// Parses `xmin,xmax,ymin,ymax`.
pub fn parse_window(s: &str) -> Result<Window, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b, c, d] => Window::new(*a, *b, *c, *d).map_err(|e| e.to_string()),
        _ => Err(format!("expected xmin,xmax,ymin,ymax, got `{s}`")),
    }
}

/// Parses `N` (square) or `NXxNY`.
pub fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad resolution `{t}`: {e}"));
    match s.split_once(['x', 'X']) {
        Some((a, b)) => Ok((parse(a)?, parse(b)?)),
        None => parse(s).map(|n| (n, n)),
    }
}

fn title(f: FunctionSpec, domain: &Domain, degree: usize) -> String {
    format!("{f} on {domain}, degree {degree}")
}

#[derive(Serialize)]
struct FitSection {
    degree: usize,
    converged: bool,
    greedy_degree: usize,
    cleanup_removed: usize,
    cleanup_warning: bool,
    sample_error: Num,
    sup_error: Num,
    pole_in_domain: bool,
    scale: Num,
    digits: Num,
}

#[derive(Serialize)]
struct FinalErrors {
    rational: Option<FinalError>,
    polynomial: Option<FinalError>,
}

#[derive(Serialize)]
struct PotentialSection {
    window: WindowReport,
    resolution: [usize; 2],
    levels: Vec<Num>,
    clip_min: Num,
    clip_max: Num,
    gap: Num,
    digits_per_gap: Num,
}

#[derive(Serialize)]
struct FigureReport {
    command: &'static str,
    figure: u8,
    function: &'static str,
    domain: String,
    samples: usize,
    tol: Num,
    max_degree: usize,
    degrees: Vec<usize>,
    tol_floor: Num,
    fit: FitSection,
    final_errors: FinalErrors,
    rates: Rates,
    poles: PoleDiagnostics,
    potential: PotentialSection,
    postconditions_held: bool,
    problems: Vec<String>,
}

fn potential_section(field: &PotentialField, digits: f64) -> PotentialSection {
    let gap = potential_gap(field);
    PotentialSection {
        window: field.window.into(),
        resolution: [field.nx, field.ny],
        levels: field.levels.iter().map(|&l| Num(l)).collect(),
        clip_min: Num(field.clip_min),
        clip_max: Num(field.clip_max),
        gap: Num(gap),
        digits_per_gap: Num(digits / gap),
    }
}

/// Runs figure preset `id` and writes `convergence.csv`, `model.json`,
/// `potential.svg` and `report.json` into `out`.
pub fn run_figure(id: u8, out: &Path) -> CliResult<Outcome> {
    let p = FigurePreset::get(id)?;
    let mut w = Writer::new(out)?;
    let samples = SampleSet::from_function(p.function, &p.domain, p.samples)?;
    let report = aaa_fit(&samples, p.tol, p.max_degree)?;
    let r = &report.model;
    let sup = estimate_sup_error(p.function, Approximant::Rational(r), &p.domain)?;
    let poles = if r.degree() > 0 { r.poles()? } else { Vec::new() };
    let record = convergence_study(p.function, &p.domain, &p.degrees, DEFAULT_FLOOR)?;
    let digits = -(sup.value / record.scale).log10();

    let window = p.plot_window.unwrap_or_else(|| Window::around(&p.domain, &poles));
    let field = potential_grid(r.supports(), &poles, window, (RESOLUTION, RESOLUTION))?;

    let mut problems = Vec::new();
    if !report.converged {
        problems.push(format!(
            "fit stopped at degree {} with sample error {:e}, above tol {:e} x max|f|",
            report.history.last().map_or(0, |h| h.degree),
            report.max_error,
            p.tol
        ));
    }
    if !sup.value.is_finite() {
        problems.push("sup error is not finite".into());
    }
    let doc = FigureReport {
        command: "figure",
        figure: p.id,
        function: p.function.name(),
        domain: p.domain.to_string(),
        samples: p.samples,
        tol: Num(p.tol),
        max_degree: p.max_degree,
        degrees: p.degrees.clone(),
        tol_floor: Num(DEFAULT_FLOOR),
        fit: FitSection {
            degree: r.degree(),
            converged: report.converged,
            greedy_degree: report.history.last().map_or(0, |h| h.degree),
            cleanup_removed: report.cleanup_removed,
            cleanup_warning: report.cleanup_warning,
            sample_error: Num(report.max_error),
            sup_error: Num(sup.value),
            pole_in_domain: sup.pole_in_domain,
            scale: Num(record.scale),
            digits: Num(digits),
        },
        final_errors: FinalErrors {
            rational: final_error(&record, Method::Rational),
            polynomial: final_error(&record, Method::Polynomial),
        },
        rates: Rates::new(&record),
        poles: PoleDiagnostics::new(r, &poles, &p.domain),
        potential: potential_section(&field, digits),
        postconditions_held: problems.is_empty(),
        problems: problems.clone(),
    };

    w.put("convergence.csv", convergence_csv(&record).as_bytes())?;
    w.put("model.json", Model::Rational(r.clone()).to_json().as_bytes())?;
    let svg = svg::render(
        &field,
        &[Curve::boundary(&p.domain)],
        &format!("Figure {id}: {}", title(p.function, &p.domain, r.degree())),
    );
    w.put("potential.svg", svg.as_bytes())?;
    w.put("report.json", to_json(&doc).as_bytes())?;
    Ok(Outcome { files: w.files, problems })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitArgs {
    pub function: FunctionSpec,
    pub domain: Domain,
    pub tol: f64,
    pub samples: usize,
    pub max_degree: usize,
    pub method: Method,
    /// Polynomial degree; required for `Method::Polynomial`.
    pub degree: Option<usize>,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct FitReport {
    command: &'static str,
    function: &'static str,
    domain: String,
    method: &'static str,
    samples: usize,
    tol: Num,
    max_degree: usize,
    requested_degree: Option<usize>,
    degree: usize,
    /// Whether AAA met `tol`; absent for a fixed-degree polynomial.
    converged: Option<bool>,
    sample_error: Num,
    sup_error: Num,
    pole_in_domain: bool,
    poles: Option<PoleDiagnostics>,
}

/// Fits one model; writes `model.json` and `fit.json`.
pub fn cmd_fit(a: &FitArgs) -> CliResult<Outcome> {
    let samples = SampleSet::from_function(a.function, &a.domain, a.samples)?;
    let mut problems = Vec::new();
    let (model, converged, sample_error, poles) = match a.method {
        Method::Rational => {
            let rep = aaa_fit(&samples, a.tol, a.max_degree)?;
            let poles = if rep.model.degree() > 0 { rep.model.poles()? } else { Vec::new() };
            if !rep.converged {
                problems
                    .push(format!("fit stopped with sample error {:e}, above tol {:e} x max|f|", rep.max_error, a.tol));
            }
            let diag = PoleDiagnostics::new(&rep.model, &poles, &a.domain);
            (Model::Rational(rep.model), Some(rep.converged), rep.max_error, Some(diag))
        }
        Method::Polynomial => {
            let n = a.degree.ok_or_else(|| CliError::Usage("--method polynomial needs --degree".into()))?;
            let p = va_fit(&samples, n)?;
            let fitted = p.eval(samples.points());
            let err = fitted.iter().zip(samples.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            (Model::Polynomial(p), None, err, None)
        }
    };
    let sup = match &model {
        Model::Rational(r) => estimate_sup_error(a.function, Approximant::Rational(r), &a.domain)?,
        Model::Polynomial(p) => estimate_sup_error(a.function, Approximant::Polynomial(p), &a.domain)?,
    };
    let doc = FitReport {
        command: "fit",
        function: a.function.name(),
        domain: a.domain.to_string(),
        method: a.method.name(),
        samples: a.samples,
        tol: Num(a.tol),
        max_degree: a.max_degree,
        requested_degree: a.degree,
        degree: model.degree(),
        converged,
        sample_error: Num(sample_error),
        sup_error: Num(sup.value),
        pole_in_domain: sup.pole_in_domain,
        poles,
    };
    let mut w = Writer::new(&a.out)?;
    w.put("model.json", model.to_json().as_bytes())?;
    w.put("fit.json", to_json(&doc).as_bytes())?;
    Ok(Outcome { files: w.files, problems })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyArgs {
    pub function: FunctionSpec,
    pub domain: Domain,
    pub degrees: Vec<usize>,
    pub tol_floor: f64,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct StudyReport {
    command: &'static str,
    function: &'static str,
    domain: String,
    degrees: Vec<usize>,
    tol_floor: Num,
    scale: Num,
    final_errors: FinalErrors,
    rates: Rates,
}

/// Degree sweep for both methods; writes `convergence.csv` and `study.json`.
pub fn cmd_study(a: &StudyArgs) -> CliResult<Outcome> {
    let record = convergence_study(a.function, &a.domain, &a.degrees, a.tol_floor)?;
    let doc = StudyReport {
        command: "study",
        function: a.function.name(),
        domain: a.domain.to_string(),
        degrees: a.degrees.clone(),
        tol_floor: Num(a.tol_floor),
        scale: Num(record.scale),
        final_errors: FinalErrors {
            rational: final_error(&record, Method::Rational),
            polynomial: final_error(&record, Method::Polynomial),
        },
        rates: Rates::new(&record),
    };
    let mut w = Writer::new(&a.out)?;
    w.put("convergence.csv", convergence_csv(&record).as_bytes())?;
    w.put("study.json", to_json(&doc).as_bytes())?;
    Ok(Outcome { files: w.files, problems: Vec::new() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialArgs {
    pub model: PathBuf,
    pub window: Window,
    pub resolution: (usize, usize),
    /// Drawn as the boundary curve when given.
    pub domain: Option<Domain>,
    pub out: PathBuf,
}

#[derive(Serialize)]
struct PotentialReport {
    command: &'static str,
    model: String,
    domain: Option<String>,
    degree: usize,
    poles: Vec<[Num; 2]>,
    potential: PotentialSection,
}

/// Potential of a saved rational model; writes `potential.svg` and
/// `potential.json`.
pub fn cmd_potential(a: &PotentialArgs) -> CliResult<Outcome> {
    let (nx, ny) = a.resolution;
    if nx < MIN_RESOLUTION || ny < MIN_RESOLUTION {
        return Err(CliError::Usage(format!("resolution {nx}x{ny} is below {MIN_RESOLUTION}x{MIN_RESOLUTION}")));
    }
    let Model::Rational(r) = Model::load(&a.model)? else {
        return Err(CliError::Usage(
            "the potential needs a barycentric model; polynomials have no finite poles".into(),
        ));
    };
    let poles: Vec<C64> = if r.degree() > 0 { r.poles()? } else { Vec::new() };
    let field = potential_grid(r.supports(), &poles, a.window, a.resolution)?;
    let boundary: Vec<Curve> = a.domain.iter().map(Curve::boundary).collect();
    let name =
        a.domain.map_or_else(|| format!("degree {}", r.degree()), |d| format!("model on {d}, degree {}", r.degree()));
    let svg = svg::render(&field, &boundary, &name);
    let doc = PotentialReport {
        command: "potential",
        model: a.model.display().to_string(),
        domain: a.domain.map(|d| d.to_string()),
        degree: r.degree(),
        poles: crate::num::pairs(&poles),
        potential: potential_section(&field, f64::NAN),
    };
    let mut w = Writer::new(&a.out)?;
    w.put("potential.svg", svg.as_bytes())?;
    w.put("potential.json", to_json(&doc).as_bytes())?;
    Ok(Outcome { files: w.files, problems: Vec::new() })
}
