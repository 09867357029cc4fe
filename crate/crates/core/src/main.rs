//! Command-line driver for the verification suites.

use clap::{Parser, Subcommand};
use geomom::report::VerificationReport;
use geomom::spectral::FixtureConfig;
use geomom::suites::{run_suite, SuiteConfig, SuiteError, SuiteName};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geomom",
    version,
    about = "Certifies the geometric momentum, Dirac bracket, and eigenfunction claims for a particle on a sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Runs a verification suite and prints the report.
    Run(RunArgs),
    /// Dumps the derived operator coefficient tables in the symbolic text
    /// format.
    Dump(DumpArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// geometry | momentum | constraints | spectral | all
    #[arg(long, default_value = "all")]
    suite: SuiteName,
    /// RNG seed; reports are byte-identical for a fixed seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Replaces every per-record tolerance (must lie in (0, 1)).
    #[arg(long)]
    tol_override: Option<f64>,
    /// Quadrature grid sizes: N_theta N_phi.
    #[arg(long, num_args = 2, value_names = ["N_THETA", "N_PHI"])]
    grid: Option<Vec<usize>>,
    /// Sphere radius bound to the symbol `r`.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Value bound to the symbol `hbar`.
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Value bound to the symbol `m`.
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// text | structured
    #[arg(long, default_value = "text")]
    format: Format,
    /// Debug contrast: build the momentum without its curvature term. The
    /// symmetry records then fail, isolating the term's role.
    #[arg(long)]
    disable_mn_term: bool,
    /// JSON fixture file for extra spectral eigenfunction checks.
    #[arg(long)]
    fixtures: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct DumpArgs {
    /// monge | spherical
    #[arg(long, default_value = "monge")]
    patch: String,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            other => Err(format!("unknown format `{other}` (expected text|structured)")),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => match run(args) {
            Ok(report) => {
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(SuiteError::Config(msg)) => {
                eprintln!("config error: {msg}");
                ExitCode::from(2)
            }
            Err(other) => {
                eprintln!("error: {other}");
                ExitCode::from(1)
            }
        },
        Command::Dump(args) => match dump(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        },
    }
}

fn run(args: RunArgs) -> Result<VerificationReport, SuiteError> {
    let mut cfg = SuiteConfig {
        hbar: args.hbar,
        mass: args.mass,
        radius: args.radius,
        seed: args.seed,
        tol_override: args.tol_override,
        include_mn_term: !args.disable_mn_term,
        ..SuiteConfig::default()
    };
    if let Some(grid) = &args.grid {
        cfg.n_theta = grid[0];
        cfg.n_phi = grid[1];
    }
    if let Some(path) = &args.fixtures {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SuiteError::Config(format!("cannot read {}: {e}", path.display())))?;
        cfg.fixtures =
            Some(FixtureConfig::from_json(&text).map_err(|e| SuiteError::Config(e.to_string()))?);
    }
    let report = run_suite(args.suite, &cfg)?;
    match args.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Structured => println!("{}", report.to_json()),
    }
    Ok(report)
}

fn dump(args: DumpArgs) -> Result<(), String> {
    let ctx = geomom::NumericContext::default();
    let patch = match args.patch.as_str() {
        "monge" => geomom::geometry::monge_sphere("r"),
        "spherical" => geomom::geometry::spherical_sphere("r"),
        other => return Err(format!("unknown patch `{other}` (expected monge|spherical)")),
    };
    let geom = geomom::geometry::build_geometry(patch, &ctx).map_err(|e| e.to_string())?;
    let p = geomom::operators::geometric_momentum(&geom);
    for (op, label) in p.iter().zip(["p_x", "p_y", "p_z"]) {
        println!("# {label}");
        print!("{}", op.dump_text());
    }
    let h = geomom::operators::surface_hamiltonian(&geom, &geom.geometric_potential.clone());
    println!("# H");
    print!("{}", h.dump_text());
    println!("# M");
    println!("1: {}", geom.mean_curvature.to_text());
    println!("# K");
    println!("1: {}", geom.gauss_curvature.to_text());
    Ok(())
}
