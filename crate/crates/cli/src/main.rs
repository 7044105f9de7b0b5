//! Command-line front end: reads a scene of two circles and writes JSON
//! reports and OBJ meshes.

mod commands;
mod config;
mod error;
mod obj;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use config::{parse_scene, AnyScene, Scene};
use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "bicircle", version, about = "Convex hulls of two circles in 3-space")]
struct Cli {
    /// Scene configuration (JSON). Not needed for `fuzz`.
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order type, face lattice, edge curve type and j-invariant.
    Classify,
    /// Coefficients, discriminants and singular points of the edge form.
    EdgeCurve,
    /// Stationary bisecants through a point of the first circle.
    Bisecants {
        /// `s,t` or an angle in radians.
        #[arg(long, allow_hyphen_values = true)]
        param: String,
    },
    /// Membership of a point in the hull.
    Member {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Support function of the hull.
    Support {
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
    },
    /// Intersections of a line with the edge surface.
    SurfaceDegree {
        /// Two points `x,y,z:x,y,z`.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Boundary mesh of the hull as OBJ.
    Mesh {
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The dual body and its boundary mesh.
    Dual {
        /// `auto` or `x,y,z`.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        origin: String,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectrahedral representation when one exists.
    Lmi {
        /// Side of the validation grid.
        #[arg(long, default_value_t = 9)]
        grid: usize,
    },
    /// Random circle pairs: order type and curve type census.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::EdgeCurve => "edge-curve",
            Command::Bisecants { .. } => "bisecants",
            Command::Member { .. } => "member",
            Command::Support { .. } => "support",
            Command::SurfaceDegree { .. } => "surface-degree",
            Command::Mesh { .. } => "mesh",
            Command::Dual { .. } => "dual",
            Command::Lmi { .. } => "lmi",
            Command::Fuzz { .. } => "fuzz",
        }
    }
}

/// Report and an optional OBJ with its destination.
type Output = (Value, Option<(String, Option<PathBuf>)>);

fn run_scene<S: bicircle::Scalar>(scene: &Scene<S>, cmd: &Command) -> Result<Output, CliError> {
    let with_obj = |(v, obj): (Value, String), out: &Option<PathBuf>| (v, Some((obj, out.clone())));
    Ok(match cmd {
        Command::Classify => (commands::classify(scene)?, None),
        Command::EdgeCurve => (commands::edge_curve(scene)?, None),
        Command::Bisecants { param } => (commands::bisecants(scene, param)?, None),
        Command::Member { point } => (commands::member(scene, point)?, None),
        Command::Support { dir } => (commands::support_cmd(scene, dir)?, None),
        Command::SurfaceDegree { line } => (commands::surface_degree(scene, line)?, None),
        Command::Mesh { resolution, out } => with_obj(commands::mesh(scene, *resolution)?, out),
        Command::Dual { origin, resolution, out } => with_obj(commands::dual(scene, origin, *resolution)?, out),
        Command::Lmi { grid } => (commands::lmi(scene, *grid)?, None),
        Command::Fuzz { .. } => unreachable!("handled without a scene"),
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    if let Command::Fuzz { seed, count } = cli.command {
        return Ok((commands::fuzz(seed, count)?, None));
    }
    let path = cli.config.as_ref().ok_or_else(|| CliError::Argument("a configuration file is required".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let (mut report, obj) = match parse_scene(&text)? {
        AnyScene::Exact(s) => {
            let r = run_scene(&s, &cli.command)?;
            (r.0, (r.1, "exact", commands::scalar_summary(&s)))
        }
        AnyScene::Float(s) => {
            let r = run_scene(&s, &cli.command)?;
            (r.0, (r.1, "float", commands::scalar_summary(&s)))
        }
    };
    let (obj, mode, circles) = obj;
    report["mode"] = Value::String(mode.into());
    report["circles"] = circles;
    Ok((report, obj))
}

fn configure_threads() {
    if let Some(n) = std::env::var("BICIRCLE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only when a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let name = cli.command.name();
    let mut stdout = std::io::stdout().lock();
    match run(&cli) {
        Ok((result, obj)) => {
            let doc = report::envelope(name, result);
            let text = serde_json::to_string_pretty(&doc).expect("report serializes");
            match obj {
                Some((obj, Some(path))) => {
                    if let Err(e) = std::fs::write(&path, obj) {
                        let err = CliError::Io(e);
                        eprintln!("error: {err}");
                        return ExitCode::from(err.exit_code() as u8);
                    }
                    let _ = writeln!(stdout, "{text}");
                }
                Some((obj, None)) => {
                    let _ = stdout.write_all(obj.as_bytes());
                    eprintln!("{text}");
                }
                None => {
                    let _ = writeln!(stdout, "{text}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let doc = report::error_envelope(name, err.code(), &err.to_string());
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
