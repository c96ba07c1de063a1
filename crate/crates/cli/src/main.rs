mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "rht", version, about = "Exact rational-homotopy computations on DGA models")]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Heisenberg,
    KodairaThurston,
    Vn,
    Cpn,
    Abelian,
    Point,
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Builtin model.
    #[arg(long, value_enum, conflicts_with = "from_file")]
    family: Option<Family>,

    /// Dimension for `vn` and `abelian`.
    #[arg(long)]
    n: Option<usize>,

    /// Complex dimension for `cpn`.
    #[arg(long)]
    m: Option<usize>,

    /// DGA file in JSON.
    #[arg(long, value_name = "PATH")]
    from_file: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Kt,
    M4,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build or load a model and print it as a DGA file.
    Model {
        #[command(flatten)]
        model: ModelArgs,
        /// Include the validation report.
        #[arg(long)]
        validate: bool,
    },
    /// Betti numbers up to a degree.
    Betti {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Also print class representatives and the product table.
        #[arg(long)]
        ring: bool,
    },
    /// Cup product of two cocycles.
    Cup {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Triple Massey product of three cocycles.
    Massey {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// Search all triple Massey products of basis classes.
    FormalityScan {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Check a symplectic form.
    Symplectic {
        #[command(flatten)]
        model: ModelArgs,
        /// Form on the selected model.
        #[arg(long, conflicts_with = "standard_omega")]
        form: Option<String>,
        /// The standard form on the model of M(2m); takes `--m`.
        #[arg(long)]
        standard_omega: bool,
        #[arg(long)]
        lefschetz: bool,
        #[arg(long)]
        harmonic: bool,
    },
    /// Model of a projectivized rank-k bundle over the selected model.
    Projectivize {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        k: u32,
        /// Chern classes c1,...,ck (default all zero).
        #[arg(long, value_delimiter = ',')]
        chern: Vec<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Betti numbers of the blow-up of CP^N along the selected model.
    BlowupBetti {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "N", id = "big_n")]
        big_n: u32,
    },
    /// The degree-8 and degree-7 Massey computations in a projectivized bundle.
    Lemma {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        which: u32,
        /// Base V_{2m} for the first computation.
        #[arg(long)]
        m: Option<usize>,
        /// Base of the second computation.
        #[arg(long, value_enum)]
        target: Option<Target>,
        #[arg(long)]
        k: u32,
        #[arg(long, value_delimiter = ',')]
        chern: Vec<String>,
        /// Rescale the symplectic class (second computation only).
        #[arg(long)]
        scale: Option<String>,
    },
    /// Whether a degree-q Massey product survives a connected sum.
    ConnSumSurvival {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        dim: u32,
    },
}

fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    let cap = commands::cap_override()?;
    match &cli.command {
        Command::Model { model, validate } => commands::model(model, cap, *validate),
        Command::Betti {
            model,
            max_degree,
            ring,
        } => commands::betti(model, cap, *max_degree, *ring),
        Command::Cup { model, a, b } => commands::cup(model, cap, a, b),
        Command::Massey { model, a, b, c } => commands::massey(model, cap, a, b, c),
        Command::FormalityScan { model, max_degree } => {
            commands::formality_scan(model, cap, *max_degree)
        }
        Command::Symplectic {
            model,
            form,
            standard_omega,
            lefschetz,
            harmonic,
        } => commands::symplectic(
            model,
            cap,
            form.as_deref(),
            *standard_omega,
            *lefschetz,
            *harmonic,
        ),
        Command::Projectivize {
            model,
            k,
            chern,
            max_degree,
        } => commands::projectivize(model, cap, *k, chern, *max_degree),
        Command::BlowupBetti { model, big_n } => commands::blowup_betti(model, cap, *big_n),
        Command::Lemma {
            which,
            m,
            target,
            k,
            chern,
            scale,
        } => commands::lemma(*which, *m, *target, *k, chern, scale.as_deref()),
        Command::ConnSumSurvival { q, dim } => Ok(commands::conn_sum_survival(*q, *dim)),
    }
}

fn render(value: &serde_json::Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("JSON values serialize");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = render(&value, cli.pretty);
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        let err = CliError::Io(format!("{}: {e}", path.display()));
                        eprint!("{}", render(&json!({ "error": err.report() }), cli.pretty));
                        return ExitCode::from(err.exit_code());
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprint!("{}", render(&json!({ "error": err.report() }), cli.pretty));
            ExitCode::from(err.exit_code())
        }
    }
}
