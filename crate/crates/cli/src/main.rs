use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use multisym::weylstar::Sign;
use multisym_cli::commands::{self, parse_sign, CliError, Family, Format};
use multisym_cli::eval::EvalConfig;

#[derive(Parser)]
#[command(name = "multisym", version, about = "Exact multi-symmetric and star-product calculator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    L,
    Q,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        /// Drop ħ-degrees at or above this order.
        #[arg(long)]
        order: Option<u32>,
        /// Bracket sign σ, +1 or -1.
        #[arg(long, default_value = "+1", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Check the symbolic result against the direct expansion.
        #[arg(long)]
        verify: bool,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List the margin matrices of L or Q.
    Enum {
        #[arg(value_enum, ignore_case = true)]
        family: FamilyArg,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        beta: Vec<u32>,
        #[arg(long)]
        n: u32,
        /// ħ-weight (Q only).
        #[arg(long)]
        m: Option<u32>,
        /// Largest slice index (Q only, defaults to m).
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Write an invariant expression in the e_α basis.
    Decompose {
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    }
}

fn run(command: Command) -> Result<String, (CliError, String)> {
    match command {
        Command::Eval { n, d, order, sign, format: f, verify, expr } => {
            let config = EvalConfig { n, d, order, sign, verify };
            commands::eval(&expr, &config, format(f)).map_err(|e| (e, expr))
        }
        Command::Enum { family, alpha, beta, n, m, kmax } => {
            let family = match family {
                FamilyArg::L => Family::L,
                FamilyArg::Q => Family::Q,
            };
            commands::enumerate(family, &alpha, &beta, n, m, kmax).map_err(|e| (e, String::new()))
        }
        Command::Decompose { n, d, order, format: f, expr } => {
            let config = EvalConfig { n, d, order, ..EvalConfig::default() };
            commands::decompose(&expr, &config, format(f)).map_err(|e| (e, expr))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((e, input)) => {
            eprint!("{}", e.report(&input));
            ExitCode::FAILURE
        }
    }
}
