mod commands;
mod spec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

/// Exact quadratic form computations over semilocal rings.
#[derive(Parser, Debug)]
#[command(name = "formwitt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include wall-clock timing in the output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ring, e.g. "GF(5)", "GF(3)[X]/(X^2)", "GF(3) x GF(5)", "Q".
    #[arg(long)]
    pub ring: String,
    /// Form as "rank=n;c[i][j]=e;..." (1-based, i <= j), or @file.
    #[arg(long)]
    pub form: String,
    /// Candidate budget for exhaustive searches over finite rings.
    #[arg(long, default_value_t = 1_000_000_000)]
    pub search_bound: u64,
    /// Number of primitive vectors tried over Q.
    #[arg(long, default_value_t = 10_000)]
    pub height_bound: u64,
    /// Seed for randomized polynomial factorization.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on a single form.
    Form {
        #[command(subcommand)]
        command: FormCommand,
    },
    /// Search for an isotropic unimodular vector.
    Isotropy(Common),
    /// Witt decomposition: hyperbolic part and anisotropic kernel.
    Witt(Common),
    /// Lagrangian of a hyperbolic form.
    Hyperbolic(Common),
    /// Decide whether two forms are isometric.
    Isometric {
        #[command(flatten)]
        common: Common,
        /// The second form.
        #[arg(long)]
        other: String,
    },
    /// Decide whether the form represents a value.
    Represents {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        value: String,
    },
    /// Even Clifford algebra of a binary form and its splitting.
    Clifford {
        #[command(flatten)]
        common: Common,
        /// Odd-degree monic modulus P for the extension R[X]/(P).
        #[arg(long)]
        ext: Option<String>,
    },
    /// Bring an isotropic vector (or a represented value) down from R[X]/(P).
    Descend {
        #[command(flatten)]
        common: Common,
        /// Odd-degree monic modulus P.
        #[arg(long)]
        ext: String,
        /// Vector over R[X]/(P), entries separated by ';'. Searched for when absent.
        #[arg(long)]
        witness: Option<String>,
        /// Descend a represented unit instead of isotropy.
        #[arg(long)]
        value: Option<String>,
    },
    /// Lift isotropic vectors from the residue fields.
    Lift {
        #[command(flatten)]
        common: Common,
        /// Residue-field vector, one flag per maximal ideal in order.
        #[arg(long = "residue-witness")]
        residue_witness: Vec<String>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only this criterion (1-10).
        #[arg(long)]
        criterion: Option<usize>,
        #[arg(long, default_value_t = 0x5eed_f0e5)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum FormCommand {
    /// Regularity, nonsingularity and radical.
    Check(Common),
}

/// Outcome of a command before serialization.
pub enum Outcome {
    Done(Value),
    /// Search or factorization bound exceeded.
    Unknown(Value),
    /// Suite ran with failures.
    Failed(Value),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = std::time::Instant::now();
    let (name, result) = match &cli.command {
        Command::Form { command: FormCommand::Check(c) } => ("form check", commands::form_check(c)),
        Command::Isotropy(c) => ("isotropy", commands::isotropy(c)),
        Command::Witt(c) => ("witt", commands::witt(c)),
        Command::Hyperbolic(c) => ("hyperbolic", commands::hyperbolic(c)),
        Command::Isometric { common, other } => ("isometric", commands::isometric(common, other)),
        Command::Represents { common, value } => ("represents", commands::represents(common, value)),
        Command::Clifford { common, ext } => ("clifford", commands::clifford(common, ext.as_deref())),
        Command::Descend { common, ext, witness, value } => {
            ("descend", commands::descend(common, ext, witness.as_deref(), value.as_deref()))
        }
        Command::Lift { common, residue_witness } => ("lift", commands::lift(common, residue_witness)),
        Command::Selftest { criterion, seed } => ("selftest", commands::selftest(*criterion, *seed)),
    };
    let (mut body, code) = match result {
        Ok(Outcome::Done(v)) => (v, 0),
        Ok(Outcome::Unknown(v)) => (v, 2),
        Ok(Outcome::Failed(v)) => (v, 1),
        Err(e) => {
            eprintln!("formwitt {name}: {e}");
            let code = if commands::is_bound_error(&e) { 2 } else { 1 };
            (json!({ "status": if code == 2 { "unknown" } else { "error" }, "error": e.to_string() }), code)
        }
    };
    let obj = body.as_object_mut().expect("object response");
    obj.insert("schema".into(), json!(1));
    obj.insert("command".into(), json!(name));
    if cli.timing {
        obj.insert("timing_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    ExitCode::from(code)
}
