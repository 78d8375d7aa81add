//! `tiltlab`: tilting-theory computations over Z, Z/n, GF(p)[x] and their
//! quotients and products.
//!
//! Every subcommand prints one JSON report on stdout. Exit status: 0 on
//! success, 1 when the mathematical verdict is false, 2 on any error.

mod commands;
mod config;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use config::Config;
use session::Session;

#[derive(Parser, Debug)]
#[command(name = "tiltlab", version, about = "Tilting classes of finitely presented modules")]
pub struct Cli {
    /// Configuration file (`key = value`); overrides $TILTLAB_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Session file; read before the command and updated when an object is named.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassKind {
    Tilting,
    Cotilting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verify {
    None,
    Filtration,
    Divisibility,
    Probe,
    All,
}

/// Module arguments accept a JSON file path, inline JSON (`{...}`), or `@name`
/// for a module stored in the session. Basis arguments accept an ideal list
/// or `@name` for a stored topology or Thomason set.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the tilting classes (finite spectrum only).
    Classify {
        #[arg(long)]
        ring: Option<String>,
    },
    /// Auslander-Bridger transpose of a module.
    Transpose {
        #[arg(long)]
        module: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// `Ext^1(S, R)`.
    Dagger {
        #[arg(long)]
        module: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Cokernel of the generator column of an ideal.
    Ctr {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Membership in the tilting or cotilting class of a topology.
    Member {
        #[arg(long, value_enum)]
        class: ClassKind,
        #[arg(long)]
        module: String,
        #[arg(long)]
        basis: String,
    },
    /// Compare Hom/Tor1 and tensor/Ext1 through the transpose.
    CheckLemma {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Truncated tree module of a list of ideals.
    FuchsSalce {
        #[arg(long)]
        ring: Option<String>,
        /// Ideals separated by `;`, e.g. `(2:4,6);(3:3)`.
        #[arg(long)]
        ideals: String,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "none")]
        verify: Verify,
        #[arg(long)]
        name: Option<String>,
    },
    /// Divisibility of the localization at the powers of `s`.
    Localize {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        s: String,
        #[arg(long)]
        gabriel: String,
        #[arg(long)]
        bound: Option<usize>,
        /// Also compare the tower with the path tree of `(s)` at this depth.
        #[arg(long)]
        compare: Option<usize>,
    },
    /// Membership of an ideal in a finitely generated Gabriel topology.
    GabrielMember {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        basis: String,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Describe a Thomason set given by a basis of ideals.
    Thomason {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        basis: String,
        /// Primes to test for membership, e.g. `(2)` or `L:(3)`.
        #[arg(long = "prime")]
        primes: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Write the current session to a file.
    Save { path: PathBuf },
    /// Read a session file and check that replaying its log reproduces it.
    Load { path: PathBuf },
}

/// Runs one invocation; returns the verdict (if the command has one).
fn execute(cli: Cli) -> Result<Option<bool>> {
    let cfg = Config::load(cli.config.as_deref())?;
    tiltlab_core::ring::set_trial_bound(cfg.factor_trial_bound);
    let mut session = match &cli.session {
        Some(p) => Session::read_or_default(p)?,
        None => Session::default(),
    };
    let before = session.clone();
    let outcome = commands::run(&cli.command, &mut session, &cfg)?;
    let mut text = serde_json::to_string_pretty(&outcome.report)?;
    text.push('\n');
    print!("{text}");
    if let Some(p) = &cli.session {
        if session != before || !p.exists() {
            session.write(p)?;
        }
    }
    Ok(outcome.verdict)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(Some(false)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
