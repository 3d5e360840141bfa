use catenoid_cli::checks::{run_suite, suite_exit_code, SuiteConfig};
use catenoid_cli::commands::{
    self, render_constants, render_dirichlet, render_index, render_report, render_spectrum,
    render_verify, Format, ReportDoc,
};
use catenoid_core::error::Error;
use catenoid_core::geometry::Chart;
use catenoid_core::index_engine::morse_index;
use catenoid_core::CriticalParams;
use clap::{Arg, ArgMatches, Command};

fn tol_in_range(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 && v <= 1e-1 {
        Ok(v)
    } else {
        Err("tolerance must lie in (0, 1e-1]".into())
    }
}

fn cli() -> Command {
    let global = [
        Arg::new("grid-n")
            .long("grid-n")
            .value_name("N")
            .value_parser(clap::value_parser!(u64).range(64..=1_048_576))
            .default_value("1024")
            .global(true)
            .help("Number of grid nodes in the profile coordinate (>= 64)"),
        Arg::new("modes")
            .long("modes")
            .value_name("M")
            .value_parser(clap::value_parser!(u64).range(2..=4096))
            .default_value("10")
            .global(true)
            .help("Highest Fourier mode to include (>= 2)"),
        Arg::new("tol")
            .long("tol")
            .value_name("EPS")
            .value_parser(tol_in_range)
            .default_value("1e-4")
            .global(true)
            .help("Verification tolerance, in (0, 1e-1]"),
        Arg::new("format")
            .long("format")
            .value_name("FMT")
            .value_parser(["text", "json", "csv"])
            .default_value("text")
            .global(true)
            .help("Output format"),
        Arg::new("seed")
            .long("seed")
            .value_name("SEED")
            .value_parser(clap::value_parser!(u64))
            .default_value("0")
            .global(true)
            .help("Seed for randomized property checks"),
        Arg::new("chart")
            .long("chart")
            .value_name("CHART")
            .value_parser(["s", "phi"])
            .default_value("s")
            .global(true)
            .help("Coordinate chart for per-mode spectra: catenoid arc parameter (s) or spherical band colatitude (phi)"),
    ];
    Command::new("catenoid")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Spectral certification of the free-boundary catenoid in the unit ball")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .args(global)
        .subcommand(Command::new("constants").about("Print the critical-catenoid constants"))
        .subcommand(
            Command::new("spectrum")
                .about("Per-mode Dirichlet, Robin and Steklov eigenvalues"),
        )
        .subcommand(
            Command::new("index").about("Morse index from per-mode Robin negative counts"),
        )
        .subcommand(
            Command::new("dirichlet")
                .about("Solve the second-variation Dirichlet problem for boundary data from a CSV file")
                .arg(
                    Arg::new("file")
                        .value_name("FILE")
                        .required(true)
                        .help("CSV file: mode,cos_or_sin,value_at_plusT,value_at_minusT"),
                ),
        )
        .subcommand(Command::new("verify").about("Run the full verification suite"))
        .subcommand(
            Command::new("report")
                .about("Emit constants, spectrum, index and verification as one document"),
        )
}

struct Config {
    grid_n: usize,
    modes: usize,
    tol: f64,
    format: Format,
    seed: u64,
    chart: Chart,
}

impl Config {
    fn from_matches(m: &ArgMatches) -> Self {
        Self {
            grid_n: *m.get_one::<u64>("grid-n").expect("defaulted") as usize,
            modes: *m.get_one::<u64>("modes").expect("defaulted") as usize,
            tol: *m.get_one::<f64>("tol").expect("defaulted"),
            format: Format::parse(m.get_one::<String>("format").expect("defaulted"))
                .expect("validated by clap"),
            seed: *m.get_one::<u64>("seed").expect("defaulted"),
            chart: match m.get_one::<String>("chart").expect("defaulted").as_str() {
                "phi" => Chart::Phi,
                _ => Chart::S,
            },
        }
    }

    fn suite(&self) -> SuiteConfig {
        SuiteConfig {
            grid_n: self.grid_n,
            modes: self.modes,
            tol: self.tol,
            seed: self.seed,
        }
    }
}

/// Exit status for an engine error: 3 for non-convergence, 2 for invalid
/// input or domain violations (usage-class mistakes), 1 for everything else,
/// including data legitimately rejected as NOT_SOLVABLE.
fn exit_for(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) => 3,
        Error::InvalidInput(_) | Error::Domain(_) | Error::ChartMismatch(_) => 2,
        _ => 1,
    }
}

fn dispatch(name: &str, sub: &ArgMatches, cfg: &Config) -> Result<i32, Error> {
    let p = CriticalParams::solve(1e-14)?;
    match name {
        "constants" => {
            print!("{}", render_constants(&p, cfg.format));
            Ok(0)
        }
        "spectrum" => {
            let doc = commands::spectrum_doc(&p, cfg.grid_n, cfg.modes, cfg.chart)?;
            print!("{}", render_spectrum(&doc, cfg.format));
            Ok(0)
        }
        "index" => {
            let report = morse_index(&p, cfg.grid_n, cfg.modes)?;
            print!("{}", render_index(&report, cfg.format));
            Ok(if report.converged { 0 } else { 3 })
        }
        "dirichlet" => {
            let path = sub.get_one::<String>("file").expect("required");
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read '{path}': {e}")))?;
            let data = commands::parse_boundary_csv(&text)?;
            match catenoid_core::index_engine::solve_dirichlet(&data, &p, cfg.grid_n) {
                Ok(sol) => {
                    print!("{}", render_dirichlet(&sol, cfg.format));
                    Ok(0)
                }
                Err(e @ Error::NotSolvable(_)) => {
                    eprintln!("NOT_SOLVABLE: {e}");
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        "verify" => {
            let suite = cfg.suite();
            let outcomes = run_suite(&suite);
            print!("{}", render_verify(&outcomes, &suite, cfg.format));
            Ok(suite_exit_code(&outcomes))
        }
        "report" => {
            let suite = cfg.suite();
            let doc = ReportDoc {
                params: p,
                spectrum: commands::spectrum_doc(&p, cfg.grid_n, cfg.modes, cfg.chart)?,
                index: morse_index(&p, cfg.grid_n, cfg.modes)?,
                outcomes: run_suite(&suite),
            };
            print!("{}", render_report(&doc, &suite, cfg.format));
            Ok(suite_exit_code(&doc.outcomes))
        }
        other => unreachable!("unknown subcommand {other}"),
    }
}

fn main() {
    let matches = cli().get_matches();
    let cfg = Config::from_matches(&matches);
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let code = match dispatch(name, sub, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    };
    std::process::exit(code);
}
