mod commands;
mod input;
mod report;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use commands::{AdversaryArgs, ComposeArgs, DegreeArgs, Outcome, SignDegArgs, SurveyArgs, VerifyArgs, WitnessArgs};
use report::{table, with_timeout, write_machine, Status};

/// Exact sign degree, approximate degree, dual witnesses and adversary
/// certificates for small Boolean functions.
///
/// TRUE is -1. Truth tables are written `n:<s>` with one `+` or `-` per
/// input mask, where bit i of the mask set means x_{i+1} is TRUE.
#[derive(Debug, Parser)]
#[command(name = "signlab", version)]
struct Cli {
    /// Seed for every random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Wall-clock budget per check, in seconds
    #[arg(long, global = true, default_value_t = 300)]
    timeout_secs: u64,

    /// Also write a machine-readable report here
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sign degree with certificates for both bounds
    Signdeg(SignDegArgs),
    /// α-approximate degree with certificates for both bounds
    Degree(DegreeArgs),
    /// Emit a dual witness proving a degree lower bound
    Witness(WitnessArgs),
    /// Check a witness file against a function (exit 0 valid, 1 invalid)
    Verify(VerifyArgs),
    /// Compare deg(f∘g) with deg(f)·deg(g) and build the composed witness
    Compose(ComposeArgs),
    /// Evaluate or emit adversary certificates
    Adversary(AdversaryArgs),
    /// Histogram of sign degrees over all functions of a few inputs
    Survey(SurveyArgs),
    /// Run the full suite of checks
    Reproduce(ReproduceArgs),
}

#[derive(Debug, clap::Args)]
struct ReproduceArgs {
    /// Run only these groups (repeatable or comma separated)
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,

    /// Negative control: corrupt the witness file before the verify check
    #[arg(long, hide = true)]
    corrupt_witness: bool,
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let timeout = Duration::from_secs(cli.timeout_secs);
    if let Command::Reproduce(args) = &cli.command {
        let opts = reproduce::Options {
            only: args.only.clone(),
            seed: cli.seed,
            timeout,
            corrupt_witness: args.corrupt_witness,
        };
        let lines = reproduce::run(&opts)?;
        print!("{}", table(&lines));
        let failed = lines.iter().filter(|l| l.status == Status::Fail).count();
        println!("{} checks, {failed} failed", lines.len());
        write_machine(cli.out.as_deref(), &lines)?;
        return Ok(u8::from(failed > 0));
    }

    let seed = cli.seed;
    let command = cli.command;
    let (result, _) = with_timeout(timeout, move || -> anyhow::Result<Outcome> {
        match &command {
            Command::Signdeg(a) => commands::signdeg(a),
            Command::Degree(a) => commands::degree(a),
            Command::Witness(a) => commands::witness(a),
            Command::Verify(a) => commands::verify(a),
            Command::Compose(a) => commands::compose(a),
            Command::Adversary(a) => commands::adversary(a, seed),
            Command::Survey(a) => commands::survey(a),
            Command::Reproduce(_) => unreachable!("handled above"),
        }
    });
    match result {
        Ok(outcome) => {
            let outcome = outcome?;
            write_machine(cli.out.as_deref(), &outcome.lines)?;
            Ok(outcome.code)
        }
        Err(t) => {
            println!("FAIL: timed out after {}s", t.0.as_secs());
            Ok(1)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
