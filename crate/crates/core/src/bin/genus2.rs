//! Command-line front end. Exit status: 0 all checks pass, 1 a verification
//! failed, 2 invalid parameters or input file.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genus2::chain::{build_chain_with, solve_k_for_m, ChainParams, Rho1Center};
use genus2::fourway::{build_fourway, verify_fourway};
use genus2::obj::export_obj;
use genus2::report::VerificationReport;
use genus2::scene::{read_scene, write_scene};
use genus2::sequence::{membership, similarity_dimension, MembershipResult, DEFAULT_LEVEL_BUDGET};
use genus2::verify::{verify_all, Skip, VerifyOptions};
use genus2::{Error, Vec3};

#[derive(Parser)]
#[command(name = "genus2", version, about = "Build and certify a self-similar genus-2 Cantor set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterArg {
    Literal,
    Holecenter,
}

#[derive(Clone, Copy, ValueEnum)]
enum SkipArg {
    Containment,
    Disjoint,
    Linking,
    Symmetry,
    Disks,
}

impl From<SkipArg> for Skip {
    fn from(s: SkipArg) -> Self {
        match s {
            SkipArg::Containment => Skip::Containment,
            SkipArg::Disjoint => Skip::Disjoint,
            SkipArg::Linking => Skip::Linking,
            SkipArg::Symmetry => Skip::Symmetry,
            SkipArg::Disks => Skip::Disks,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the level-one chain and write it as a scene file.
    Build {
        #[arg(long = "R")]
        big_r: f64,
        #[arg(long = "r")]
        small_r: f64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<f64>,
        #[arg(long = "rho1-center", value_enum, default_value = "holecenter")]
        rho1_center: CenterArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify a scene and write the report.
    Verify {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, value_delimiter = ',')]
        skip: Vec<SkipArg>,
        #[arg(long)]
        report: PathBuf,
        /// Check this many random non-adjacent pairs instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_LEVEL_BUDGET)]
        budget: u128,
    },
    /// Certify the four-way configuration on its own.
    Fourway {
        #[arg(long = "R")]
        big_r: f64,
        #[arg(long = "r")]
        small_r: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Export all components of one level as an OBJ mesh.
    Export {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        cores: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Escape level of a point under the inverse-similarity dynamics.
    Member {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Vec3,
        #[arg(long)]
        depth: usize,
    },
    /// Similarity dimension ln m / ln(1/k).
    Dim {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<f64>,
    },
}

fn parse_point(s: &str) -> Result<Vec3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(format!("expected x,y,z, got {} values", parts.len())),
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn emit(report: &VerificationReport, path: Option<&PathBuf>) -> Result<Outcome, Error> {
    if let Some(p) = path {
        std::fs::write(p, report.to_text())?;
    }
    print!("{report}");
    Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Build {
            big_r,
            small_r,
            m,
            k,
            rho1_center,
            out,
        } => {
            let params = ChainParams::new(big_r, small_r, m, k)?;
            let center = match rho1_center {
                CenterArg::Literal => Rho1Center::Literal,
                CenterArg::Holecenter => Rho1Center::HoleCenter,
            };
            let chain = build_chain_with(&params, center)?;
            write_scene(&chain, &out)?;
            println!(
                "wrote {} maps (k = {:.12}, n = {}) to {}",
                chain.m(),
                params.k,
                params.n,
                out.display()
            );
            Ok(Outcome::Pass)
        }
        Command::Verify {
            scene,
            depth,
            skip,
            report,
            samples,
            budget,
        } => {
            let chain = read_scene(&scene)?;
            let opts = VerifyOptions {
                skip: skip.into_iter().map(Skip::from).collect(),
                nonadjacent_samples: samples,
                budget,
                ..Default::default()
            };
            emit(&verify_all(&chain, depth, &opts), Some(&report))
        }
        Command::Fourway {
            big_r,
            small_r,
            report,
        } => emit(&verify_fourway(&build_fourway(big_r, small_r)?), report.as_ref()),
        Command::Export {
            scene,
            level,
            cores,
            out,
        } => {
            let chain = read_scene(&scene)?;
            let stats = export_obj(&chain, level, cores, &out)?;
            println!(
                "wrote {} groups, {} vertices, {} triangles to {}",
                stats.groups,
                stats.vertices,
                stats.triangles,
                out.display()
            );
            Ok(Outcome::Pass)
        }
        Command::Member { scene, point, depth } => {
            let chain = read_scene(&scene)?;
            match membership(&chain, &point, depth) {
                MembershipResult::Contained { prefix, depth } => {
                    println!("contained depth {depth} address {prefix}")
                }
                MembershipResult::EscapedAt(level) => println!("escaped_at {level}"),
            }
            Ok(Outcome::Pass)
        }
        Command::Dim { m, k } => {
            let k = match k {
                Some(k) => k,
                None => solve_k_for_m(m)?,
            };
            println!("{:.10}", similarity_dimension(m, k)?);
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
