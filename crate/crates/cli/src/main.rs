use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use rxlip_cli::{execute, CliError, Command, Coord, Flags, Ordering, ProblemFile};

/// Triviality and rigidity of deformations of functions on
/// weighted-homogeneous hypersurfaces.
#[derive(Parser, Debug)]
#[command(name = "rxlip", version)]
struct Args {
    command: Command,
    /// Problem file (TOML).
    file: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    ordering: Option<Ordering>,
    /// Largest exponent tried per variable in the certificate search.
    #[arg(long)]
    cap: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    radii: Option<usize>,
    #[arg(long)]
    radius_factor: Option<f64>,
    #[arg(long)]
    points_per_radius: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    t_values: Option<Vec<f64>>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Mark a hypothesis as user-asserted (repeatable).
    #[arg(long = "assert")]
    asserted: Vec<String>,
    /// Comma-separated coordinates to set to zero, by name or 1-based index
    /// (repeatable).
    #[arg(long)]
    kill: Vec<String>,
}

fn run(args: Args) -> Result<(), CliError> {
    let pf = ProblemFile::read(&args.file)?;
    let flags = Flags {
        ordering: args.ordering,
        cap: args.cap,
        seed: args.seed,
        radii: args.radii,
        radius_factor: args.radius_factor,
        points_per_radius: args.points_per_radius,
        t_values: args.t_values,
        tolerance: args.tolerance,
        asserted: args.asserted,
        kill: args
            .kill
            .iter()
            .map(|k| k.split(',').map(|c| Coord::Name(c.trim().to_string())).collect())
            .collect(),
    };
    let report = execute(args.command, &pf, &flags)?;
    print!("{}", report.render());
    if let Some(path) = args.out {
        std::fs::write(&path, report.to_json()).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
