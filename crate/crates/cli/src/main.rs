use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use workbench_cli::{
    cmd_analyze, cmd_build, cmd_check, cmd_verify, CheckOptions, Format, EXIT_ERROR,
};

#[derive(Parser)]
#[command(
    name = "workbench",
    version,
    about = "Finite inverse semigroups and identity checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra from a family spec and print its size and flags.
    Build {
        spec: String,
        /// Write the Cayley table here.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Check the identity LHS = RHS. Exit 0 holds, 1 fails, 2 over budget.
    Check {
        algebra: String,
        lhs: String,
        rhs: String,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: ModeArg,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Principal series, factor classification and (h,m) type.
    Analyze { algebra: String },
    /// Run the claim registry, optionally filtered by an id glob.
    VerifyPaper {
        filter: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

fn emit(code: i32, out: String) -> ExitCode {
    print!("{}", out);
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Build { spec, output } => match cmd_build(&spec, output.as_deref()) {
            Ok(summary) => emit(0, format!("{}\n", summary)),
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(EXIT_ERROR as u8)
            }
        },
        Command::Check {
            algebra,
            lhs,
            rhs,
            mode,
            budget,
            trials,
            seed,
            format,
        } => {
            let opts = CheckOptions {
                sampled: matches!(mode, ModeArg::Sampled),
                budget,
                trials,
                seed,
                format: format.into(),
            };
            let (code, out) = cmd_check(&algebra, &lhs, &rhs, &opts);
            emit(code, out)
        }
        Command::Analyze { algebra } => match cmd_analyze(&algebra) {
            Ok(report) => emit(0, report),
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(EXIT_ERROR as u8)
            }
        },
        Command::VerifyPaper { filter, format } => {
            let (code, out) = cmd_verify(filter.as_deref(), format.into());
            emit(code, out)
        }
    }
}
