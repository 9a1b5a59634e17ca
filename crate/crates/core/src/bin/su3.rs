use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use su3_euler::cli::{emit, parse_angles, parse_label, run_verify, write_output, EmitRequest, RepLabel, RunConfig, TableFormat};
use su3_euler::irreps::IrrepLabel;
use su3_euler::verify::{Suite, SuiteSelection};
use su3_euler::Error;

#[derive(Parser)]
#[command(name = "su3", version, about = "SU(3) Euler-angle representations: verification and tables")]
struct Args {
    /// Replace every residual tolerance
    #[arg(long, global = true, env = "SU3_TOL")]
    tol: Option<f64>,
    /// Gauss-Legendre nodes per radial axis
    #[arg(long, global = true, env = "SU3_GAUSS_ORDER")]
    gauss_order: Option<usize>,
    /// Monte Carlo samples for statistical checks
    #[arg(long, global = true, env = "SU3_MC_SAMPLES")]
    mc_samples: Option<usize>,
    #[arg(long, global = true, env = "SU3_SEED", default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long, global = true, env = "SU3_OUT")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fundamental,
    Adjoint,
    Diffops,
    Irreps,
    Haar,
    Cg,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print its JSON report
    Verify { suite: SuiteArg },
    /// Write a matrix or table
    Emit {
        #[command(subcommand)]
        what: EmitArg,
    },
}

#[derive(Subcommand)]
enum EmitArg {
    /// Representation matrix at given angles
    Dmatrix {
        /// 3, 3* or p,q
        #[arg(long)]
        rep: String,
        /// α,β,γ,θ,a,b,c,φ in radians
        #[arg(long, allow_hyphen_values = true)]
        angles: String,
    },
    /// Basis states of an irrep as polynomials
    Irrep {
        #[arg(long)]
        rep: String,
    },
    /// Coupling coefficients of one target in a product
    Cg {
        #[arg(long, num_args = 2, value_names = ["P,Q", "P,Q"])]
        factors: Vec<String>,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 0)]
        multiplicity: usize,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Group volume
    Volume,
}

fn selection(s: SuiteArg) -> SuiteSelection {
    match s {
        SuiteArg::Fundamental => SuiteSelection::One(Suite::Fundamental),
        SuiteArg::Adjoint => SuiteSelection::One(Suite::Adjoint),
        SuiteArg::Diffops => SuiteSelection::One(Suite::Diffops),
        SuiteArg::Irreps => SuiteSelection::One(Suite::Irreps),
        SuiteArg::Haar => SuiteSelection::One(Suite::Haar),
        SuiteArg::Cg => SuiteSelection::One(Suite::Cg),
        SuiteArg::All => SuiteSelection::All,
    }
}

fn request(what: EmitArg) -> Result<EmitRequest, Error> {
    Ok(match what {
        EmitArg::Dmatrix { rep, angles } => EmitRequest::DMatrix { rep: rep.parse::<RepLabel>()?, angles: parse_angles(&angles)? },
        EmitArg::Irrep { rep } => EmitRequest::Irrep { label: parse_label(&rep)? },
        EmitArg::Cg { factors, target, multiplicity, format } => {
            let f: Vec<IrrepLabel> = factors.iter().map(|s| parse_label(s)).collect::<Result<_, _>>()?;
            EmitRequest::Cg {
                factors: (f[0], f[1]),
                target: parse_label(&target)?,
                multiplicity,
                format: format.parse::<TableFormat>()?,
            }
        }
        EmitArg::Volume => EmitRequest::Volume,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = RunConfig {
        tol: args.tol,
        gauss_order: args.gauss_order,
        mc_samples: args.mc_samples,
        seed: args.seed,
        out: args.out,
    };
    let result = match args.command {
        Command::Verify { suite } => run_verify(selection(suite), &cfg).and_then(|(passed, body)| {
            write_output(&body, &cfg)?;
            Ok(passed)
        }),
        Command::Emit { what } => request(what).and_then(|req| emit(&req, &cfg)).and_then(|body| {
            write_output(&body, &cfg)?;
            Ok(true)
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("su3: {e}");
            ExitCode::from(2)
        }
    }
}
