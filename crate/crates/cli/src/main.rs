use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use segzeta_cli::selftest::cmd_selftest;
use segzeta_cli::{cmd_properties, cmd_restrict, cmd_segre, cmd_verify_cone, cmd_zeta, read_problem, CliError, Flags, Outcome};

#[derive(Parser)]
#[command(name = "segzeta", version, about = "Segre classes and Segre zeta functions of subschemes of P^n and P^n x P^m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Master seed for every randomized choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Working prime; results are confirmed at the next smaller prime
    #[arg(long, global = true, default_value_t = 2_147_483_647)]
    prime: u64,
    /// Fresh random attempts after the first before giving up
    #[arg(long, global = true, default_value_t = 5)]
    retries: u32,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Run a reduced self-test
    #[arg(long, global = true)]
    quick: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Segre class of the subscheme in its ambient
    Segre { file: String },
    /// Segre zeta function P/Q, with property checks
    Zeta { file: String },
    /// Compare zeta evaluated on a larger ambient with the Segre class of the cone
    VerifyCone {
        file: String,
        /// Target dimensions, `N` or `N,M`
        #[arg(long)]
        target: String,
    },
    /// Structural checks on the zeta function
    Properties { file: String },
    /// Restrict to a generic hyperplane and compare zeta functions
    Restrict {
        file: String,
        #[arg(long, default_value_t = 0)]
        factor: usize,
    },
    /// Run the bundled corpus and randomized suites
    Selftest,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let c = cli.common;
    let flags = Flags { seed: c.seed, prime: c.prime, retries: c.retries, json: c.json, quick: c.quick };
    match cli.command {
        Command::Segre { file } => cmd_segre(&read_problem(&file)?, &flags),
        Command::Zeta { file } => cmd_zeta(&read_problem(&file)?, &flags),
        Command::VerifyCone { file, target } => cmd_verify_cone(&read_problem(&file)?, &target, &flags),
        Command::Properties { file } => cmd_properties(&read_problem(&file)?, &flags),
        Command::Restrict { file, factor } => cmd_restrict(&read_problem(&file)?, factor, &flags),
        Command::Selftest => cmd_selftest(&flags),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
