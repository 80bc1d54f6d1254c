use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use presentcert::cli::{execute, input_failure, parse_int_list, Flags, Outcome};

/// Certify compact presentability criteria and verify group witnesses.
///
/// Prints one JSON report on stdout and a summary line on stderr.
/// Exit codes: 0 certified/verified/outer/computed, 1 not established/not
/// verified/inner, 2 input error.
#[derive(Parser, Debug)]
#[command(name = "presentcert", version)]
struct Args {
    /// homology | weights | check | nonhopf | outer | cohopf
    command: String,
    /// Group spec file (not needed by `outer` and `cohopf`).
    specfile: Option<PathBuf>,
    /// Prime p, overriding the spec file.
    #[arg(long)]
    prime: Option<u64>,
    /// Use the ungraded homology computation.
    #[arg(long)]
    ungraded: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random pairs for the randomized checks.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Row-major entries of g, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = outcome(&args);
    print!("{}", outcome.to_json());
    eprintln!("{}", outcome.summary);
    ExitCode::from(outcome.exit_code() as u8)
}

fn outcome(args: &Args) -> Outcome {
    let text = match &args.specfile {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => Some(t),
            Err(e) => return input_failure(&args.command, format!("cannot read {}: {e}", path.display())),
        },
        None => None,
    };
    let g = match args.g.as_deref().map(parse_int_list).transpose() {
        Ok(g) => g,
        Err(e) => return input_failure(&args.command, format!("--g: {e}")),
    };
    let flags = Flags {
        prime: args.prime,
        ungraded: args.ungraded,
        seed: args.seed,
        samples: args.samples,
        n: args.n,
        m: args.m,
        k: args.k,
        g,
    };
    execute(&args.command, text.as_deref(), &flags)
}
