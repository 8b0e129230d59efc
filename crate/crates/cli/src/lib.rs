//! Batch front end for `sharpflat-core`: subcommands read and write JSON
//! artifacts that embed their run configuration and a content digest.

pub mod config;
pub mod error;
pub mod format;

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::{envelope, out_path, path_string, write_output, RunConfig};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "sharpflat", version, about = "p-adic logarithm matrices and sharp/flat decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    ap: i64,
    /// p-adic precision N.
    #[arg(long = "prec-p")]
    prec_p: Option<i64>,
    /// Series cap in X.
    #[arg(long = "prec-x")]
    prec_x: Option<usize>,
    /// Series cap in Y.
    #[arg(long = "prec-y")]
    prec_y: Option<usize>,
    #[arg(long, visible_alias = "at-root")]
    level: Option<u32>,
    #[arg(long)]
    nmax: Option<u32>,
    #[arg(long)]
    mmax: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-check the output's invariants before writing it.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OutputFormat {
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Xi {
    Alpha,
    Beta,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Order {
    Xy,
    Yx,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum GenKind {
    Pair,
    LalphaLbeta,
    Four,
    FourL,
    ThetaTower,
    Series,
    Series2,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The logarithm matrix, or its value at a root of unity.
    Logmat(Common),
    /// One-variable Weierstrass preparation.
    Prep(Common),
    /// Two-variable Weierstrass preparation.
    Prep2 {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Order::Xy)]
        order: Order,
    },
    /// Integral pair from (L_alpha, L_beta).
    Decompose(Common),
    /// Integral four-matrix from the (alpha, beta) matrix.
    Decompose2(Common),
    /// Stabilizes a Mazur-Tate tower at a root.
    MtStabilize {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Xi::Alpha)]
        xi: Xi,
    },
    /// Formal group and trace checks.
    Honda {
        #[command(subcommand)]
        action: HondaAction,
    },
    /// Growth profiles of the logarithm matrix or of an input series.
    Growth(Common),
    /// Seeded synthetic inputs.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum HondaAction {
    /// Checks the trace relations of the point logarithms.
    Verify(Common),
}

fn config_of(name: &str, c: &Common, flags: BTreeMap<String, String>) -> RunConfig {
    RunConfig {
        subcommand: name.into(),
        p: c.p,
        ap: c.ap,
        prec_p: c.prec_p,
        prec_x: c.prec_x,
        prec_y: c.prec_y,
        level: c.level,
        nmax: c.nmax,
        mmax: c.mmax,
        seed: c.seed,
        inputs: c.inputs.iter().map(|p| path_string(p)).collect(),
        out: c.out.as_deref().map(path_string),
        verify: c.verify,
        flags,
    }
}

fn flag(k: &str, v: &str) -> BTreeMap<String, String> {
    BTreeMap::from([(k.to_string(), v.to_string())])
}

fn dispatch(cli: Cli) -> CliResult<()> {
    let (mut config, job): (RunConfig, commands::Job) = match cli.command {
        Command::Logmat(c) => (config_of("logmat", &c, BTreeMap::new()), commands::Job::Logmat),
        Command::Prep(c) => (config_of("prep", &c, BTreeMap::new()), commands::Job::Prep),
        Command::Prep2 { common, order } => {
            let name = if order == Order::Xy { "xy" } else { "yx" };
            (config_of("prep2", &common, flag("order", name)), commands::Job::Prep2(order))
        }
        Command::Decompose(c) => (config_of("decompose", &c, BTreeMap::new()), commands::Job::Decompose),
        Command::Decompose2(c) => (config_of("decompose2", &c, BTreeMap::new()), commands::Job::Decompose2),
        Command::MtStabilize { common, xi } => {
            let name = if xi == Xi::Alpha { "alpha" } else { "beta" };
            (config_of("mt-stabilize", &common, flag("xi", name)), commands::Job::MtStabilize(xi))
        }
        Command::Honda { action: HondaAction::Verify(c) } => (config_of("honda verify", &c, BTreeMap::new()), commands::Job::HondaVerify),
        Command::Growth(c) => (config_of("growth", &c, BTreeMap::new()), commands::Job::Growth),
        Command::Gen { kind, common } => {
            let name = kind.to_possible_value().expect("named").get_name().to_string();
            (config_of("gen", &common, flag("kind", &name)), commands::Job::Gen(kind))
        }
    };
    config.validate()?;
    let result = commands::run(job, &mut config)?;
    let doc = envelope(&config, result);
    write_output(out_path(&config).as_deref(), &doc)
}

/// Runs the tool on `args` (program name first) and returns the exit code:
/// 0 success, 1 failed self-check, 2 not decomposable, 3 precision
/// exhausted, 4 malformed input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            report(&CliError::malformed(e.to_string()));
            return 4;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            report(&e);
            e.exit_code()
        }
    }
}

fn report(e: &CliError) {
    let doc = json!({ "error": e.kind(), "message": e.to_string(), "exitCode": e.exit_code() });
    eprintln!("{doc}");
}
