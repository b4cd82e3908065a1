//! `tropcount`: count tropical curves through points and run the acceptance
//! suites.
//!
//! Exit codes: 0 success, 2 invalid problem, 3 no generic configuration
//! found, 4 unreadable or malformed input, 1 anything else.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use log::info;
use tropcount::acceptance::{Harness, Suite};
use tropcount::count::{count_random, enumerate_curves_with, CountOptions, CountResult};
use tropcount::io;
use tropcount::subdivision::AdmissibilityMode;
use tropcount::Error;

#[derive(Parser)]
#[command(name = "tropcount", version, about = "Tropical counts of rational nodal and 1-cuspidal curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Nodal,
    Cusp,
}

impl From<Mode> for AdmissibilityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Nodal => AdmissibilityMode::Nodal,
            Mode::Cusp => AdmissibilityMode::OneCusp,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count curves with Newton polygon from a file through marked points.
    #[command(group(ArgGroup::new("source").required(true).args(["points", "seed"])))]
    Count {
        /// Polygon JSON: {"vertices": [[x, y], ...]}.
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Points JSON: {"points": [["p/q", "p/q"], ...]}.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Seed for random points; later seeds are tried if the points are
        /// not generic.
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for one SVG per curve.
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        /// File for the count as JSON.
        #[arg(long)]
        emit_json: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        max_cells: usize,
        #[arg(long, default_value_t = 32)]
        max_retries: u32,
    },
    /// Run one acceptance suite, or all of them.
    Accept {
        /// Suite name or "all".
        #[arg(long)]
        suite: String,
        /// Print the report as JSON instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidProblem(_) => 2,
        Error::NonGenericConfiguration(_) => 3,
        Error::Io(_) | Error::Json(_) | Error::Parse(_) | Error::InvalidGeometry(_) => 4,
        _ => 1,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(fs::read_to_string(path)?)
}

fn write_artifacts(r: &CountResult, svg_dir: Option<&Path>, json: Option<&Path>) -> Result<(), Error> {
    if let Some(path) = json {
        fs::write(path, io::count_result_to_json(r))?;
    }
    if let Some(dir) = svg_dir {
        fs::create_dir_all(dir)?;
        for (i, c) in r.curves.iter().enumerate() {
            let path = dir.join(format!("{}.svg", io::curve_file_stem(i)));
            fs::write(path, io::curve_svg(&c.curve, &r.points))?;
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_count(
    polygon: &Path,
    mode: AdmissibilityMode,
    points: Option<&Path>,
    seed: Option<u64>,
    svg_dir: Option<&Path>,
    json: Option<&Path>,
    max_cells: usize,
    max_retries: u32,
) -> Result<CountResult, Error> {
    let delta = io::polygon_from_json(&read(polygon)?)?;
    let opts = CountOptions { max_cells };
    let result = match (points, seed) {
        (Some(path), _) => {
            let pts = io::points_from_json(&read(path)?)?;
            enumerate_curves_with(&delta, &pts, mode, opts)?
        }
        (None, Some(seed)) => count_random(&delta, mode, seed, max_retries, opts)?,
        (None, None) => unreachable!("clap requires a point source"),
    };
    info!(
        "{} subdivisions searched, {} curves",
        result.subdivisions_searched,
        result.curves.len()
    );
    write_artifacts(&result, svg_dir, json)?;
    Ok(result)
}

fn run_accept(name: &str, json: bool) -> Result<bool, Error> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![Suite::from_name(name)?]
    };
    let mut harness = Harness::new();
    let reports: Vec<_> = suites.into_iter().map(|s| harness.run(s)).collect();
    if json {
        println!("{}", serde_json::to_string_pretty(&reports)?);
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TROPCOUNT_LOG", "warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Count {
            polygon,
            mode,
            points,
            seed,
            emit_svg,
            emit_json,
            max_cells,
            max_retries,
        } => match run_count(
            &polygon,
            mode.into(),
            points.as_deref(),
            seed,
            emit_svg.as_deref(),
            emit_json.as_deref(),
            max_cells,
            max_retries,
        ) {
            Ok(r) => {
                for (i, c) in r.curves.iter().enumerate() {
                    println!(
                        "curve {i}: {} cells, multiplicity {}",
                        c.subdivision().cells().len(),
                        c.weight
                    );
                }
                println!("{}", r.total);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        },
        Command::Accept { suite, json } => match run_accept(&suite, json) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        },
    }
}
