use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ratapprox::analysis::{Method, DEFAULT_FLOOR};
use ratapprox::geometry::FunctionSpec;
use ratapprox::{Domain, Window};
use ratapprox_cli::commands::{
    cmd_fit, cmd_potential, cmd_study, parse_degrees, parse_resolution, parse_window, run_figure, FitArgs, Outcome,
    PotentialArgs, StudyArgs,
};
use ratapprox_cli::{preset, CliError, CliResult};

/// Rational and polynomial approximation experiments.
#[derive(Parser)]
#[command(name = "ratapprox", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rational,
    Polynomial,
}

fn message(e: ratapprox::Error) -> String {
    match e {
        ratapprox::Error::Domain(m) => m,
        e => e.to_string(),
    }
}

fn parse_function(s: &str) -> Result<FunctionSpec, String> {
    s.parse().map_err(message)
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    s.parse().map_err(message)
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce one of the six figure experiments.
    Figure {
        /// Figure number, 1 to 6.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fit one model and save it as model.json.
    Fit {
        /// exp | tan-sq | exp-tan-sq | two-branch-sqrt | abs | sqrt-neg
        #[arg(long = "fn", value_parser = parse_function)]
        function: FunctionSpec,
        /// disk:cx,cy,r | interval:a,b | horseshoe[:inner,outer,opening]
        #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
        domain: Domain,
        #[arg(long, default_value_t = preset::TOL)]
        tol: f64,
        #[arg(long, default_value_t = preset::SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = preset::MAX_DEGREE)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "rational")]
        method: MethodArg,
        /// Degree of a polynomial fit.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Sweep degrees for both methods and classify the convergence rates.
    Study {
        #[arg(long = "fn", value_parser = parse_function)]
        function: FunctionSpec,
        #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
        domain: Domain,
        /// start:step:stop, inclusive.
        // a full path keeps clap from treating the field as repeated values
        #[arg(long, value_parser = parse_degrees)]
        degrees: ::std::vec::Vec<usize>,
        /// Errors below this multiple of max|f| are flagged as floor.
        #[arg(long, default_value_t = DEFAULT_FLOOR)]
        tol_floor: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Plot log10|phi| for a saved rational model.
    Potential {
        #[arg(long)]
        model: PathBuf,
        /// xmin,xmax,ymin,ymax
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Window,
        /// N or NXxNY.
        #[arg(long, value_parser = parse_resolution, default_value = "400")]
        res: (usize, usize),
        /// Domain whose boundary is drawn.
        #[arg(long, value_parser = parse_domain, allow_hyphen_values = true)]
        domain: Option<Domain>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<Outcome> {
    match cli.command {
        Command::Figure { id, out } => run_figure(id, &out),
        Command::Fit { function, domain, tol, samples, max_degree, method, degree, out } => {
            let method = match method {
                MethodArg::Rational => Method::Rational,
                MethodArg::Polynomial => Method::Polynomial,
            };
            cmd_fit(&FitArgs { function, domain, tol, samples, max_degree, method, degree, out })
        }
        Command::Study { function, domain, degrees, tol_floor, out } => {
            cmd_study(&StudyArgs { function, domain, degrees, tol_floor, out })
        }
        Command::Potential { model, window, res, domain, out } => {
            cmd_potential(&PotentialArgs { model, window, resolution: res, domain, out })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(outcome) => {
            for f in &outcome.files {
                println!("{}", f.display());
            }
            for p in &outcome.problems {
                eprintln!("error: {p}");
            }
            ExitCode::from(if outcome.ok() { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(CliError::exit_code(&e) as u8)
        }
    }
}
