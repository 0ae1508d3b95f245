use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use shintani::spectral_zeta::ResidueConvention;
use shintani::{CubicForm, Sign};
use shintani_cli::commands::{self, Outcome};
use shintani_cli::{CliError, GridSpec, RunConfig};

#[derive(Parser)]
#[command(name = "shintani", version, about = "Binary cubic form classes, shapes and twisted Shintani zeta experiments")]
struct Cli {
    /// worker threads for data-parallel steps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Pos,
    Neg,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Pos => Sign::Pos,
            SignArg::Neg => Sign::Neg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignsArg {
    Pos,
    Neg,
    Both,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ConventionArg {
    #[default]
    Stated,
    Rederived,
}

impl From<ConventionArg> for ResidueConvention {
    fn from(c: ConventionArg) -> ResidueConvention {
        match c {
            ConventionArg::Stated => ResidueConvention::Stated,
            ConventionArg::Rederived => ResidueConvention::Rederived,
        }
    }
}

fn parse_form(s: &str) -> Result<CubicForm, String> {
    s.parse().map_err(|e: shintani::Error| e.to_string())
}

fn parse_tau(s: &str) -> Result<(f64, f64), String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected X,Y but got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("{x:?}: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("{y:?}: {e}"))?;
    if !(y > 0.0) {
        return Err(format!("Y must be positive, got {y}"));
    }
    Ok((x, y))
}

#[derive(Subcommand)]
enum Command {
    /// Build or extend the class cache
    Enumerate {
        #[arg(long, value_enum, default_value = "both")]
        sign: SignsArg,
        #[arg(long)]
        max_disc: i64,
        /// also run the brute-force oracle and diff the class lists
        #[arg(long)]
        oracle: bool,
    },
    /// Lattice shape of one form, or a shape table for a cache
    Shape {
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true, conflicts_with_all = ["sign", "max_disc", "out"])]
        form: Option<CubicForm>,
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        #[arg(long)]
        max_disc: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate E(iγ, τ)
    Eis {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_parser = parse_tau, allow_hyphen_values = true)]
        tau: (f64, f64),
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Twisted partial sums S(X) on a grid, written as CSV
    Weyl {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        max_disc: i64,
        #[arg(long)]
        irreducible_only: bool,
        #[arg(long)]
        grid: GridSpec,
        #[arg(long)]
        out: PathBuf,
        /// fail instead of building a missing cache
        #[arg(long)]
        no_build: bool,
    },
    /// Fit a Weyl CSV against the pole model
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, value_enum)]
        family: SignArg,
        #[arg(long)]
        irreducible_only: bool,
        #[arg(long, value_enum, default_value = "stated")]
        convention: ConventionArg,
    },
    /// Residue table at the four poles for both families
    Residues {
        #[arg(long, required = true, num_args = 1.., allow_negative_numbers = true)]
        gamma: Vec<f64>,
        #[arg(long, value_enum, default_value = "stated")]
        convention: ConventionArg,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(shintani_cli::suites::SUITES))]
        suite: String,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut config = RunConfig { threads: cli.threads, cache_dir: Some(shintani_cli::cache_dir()), ..Default::default() };
    match cli.command {
        Command::Enumerate { sign, max_disc, oracle } => {
            config.max_disc = Some(max_disc);
            let signs = match sign {
                SignsArg::Pos => vec![Sign::Pos],
                SignsArg::Neg => vec![Sign::Neg],
                SignsArg::Both => vec![Sign::Neg, Sign::Pos],
            };
            commands::enumerate(&config, &signs, oracle)
        }
        Command::Shape { form: Some(f), .. } => {
            config.cache_dir = None;
            commands::shape_of(&config, &f)
        }
        Command::Shape { form: None, sign, max_disc, out } => {
            config.sign = sign.map(Sign::from);
            config.max_disc = max_disc;
            let out = out.ok_or_else(|| CliError::Usage("shape needs --form or --out".into()))?;
            commands::shape_table(&config, &out)
        }
        Command::Eis { gamma, tau, tol } => {
            config.cache_dir = None;
            config.gamma = vec![gamma];
            config.tolerance = tol;
            commands::eis(&config, tau)
        }
        Command::Weyl { gamma, sign, max_disc, irreducible_only, grid, out, no_build } => {
            config.gamma = vec![gamma];
            config.sign = Some(sign.into());
            config.max_disc = Some(max_disc);
            config.grid = Some(grid);
            commands::weyl(&config, irreducible_only, &out, !no_build)
        }
        Command::Fit { input, gamma, family, irreducible_only, convention } => {
            config.cache_dir = None;
            config.gamma = vec![gamma];
            config.sign = Some(family.into());
            commands::fit(&config, &input, irreducible_only, convention.into())
        }
        Command::Residues { gamma, convention } => {
            config.cache_dir = None;
            config.gamma = gamma;
            commands::residues(&config, convention.into())
        }
        Command::Verify { suite, tol } => {
            config.cache_dir = None;
            config.tolerance = tol;
            commands::verify(&config, &suite)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(outcome) => {
            let text = match serde_json::to_string_pretty(&outcome.report) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            };
            let mut out = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not a failure of the computation
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
                _ => {}
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
