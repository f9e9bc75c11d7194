use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rewire::commands::{self, Branches, Output, SimulateArgs, SynthesizeArgs};
use rewire_core::GmPolicy;

#[derive(Parser)]
#[command(name = "rewire", version, about = "Logical Cliffords by measurement and correction")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in codes.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Check a code file.
    Validate {
        #[arg(long)]
        code: String,
    },
    /// Compile a gate program into a schedule file.
    Synthesize {
        /// Code file or catalog name.
        #[arg(long)]
        code: String,
        #[arg(long)]
        program: String,
        #[arg(long)]
        min_distance: Option<usize>,
        /// last, gauge, or index:M (0-based).
        #[arg(long, default_value = "last", value_parser = commands::parse_gm_policy)]
        gm: GmPolicy,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-simulate a schedule file.
    Simulate {
        #[arg(long)]
        code: String,
        #[arg(long)]
        schedule: PathBuf,
        /// `all`, or `sample N`.
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "N"])]
        branches: Option<Vec<String>>,
        /// Also run the dense state-vector check.
        #[arg(long)]
        oracle: bool,
        /// Program whose action the schedule must induce (default: the claimed action).
        #[arg(long)]
        expect: Option<String>,
    },
    /// Brute-force code distance.
    Distance {
        #[arg(long)]
        code: String,
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
}

#[derive(Subcommand)]
enum CodesAction {
    List,
    Show { name: String },
}

fn run(cli: &Cli) -> Result<Output, commands::UsageError> {
    match &cli.command {
        Command::Codes {
            action: CodesAction::List,
        } => Ok(commands::codes_list(cli.json)),
        Command::Codes {
            action: CodesAction::Show { name },
        } => commands::codes_show(name),
        Command::Validate { code } => commands::validate(code),
        Command::Synthesize {
            code,
            program,
            min_distance,
            gm,
            budget,
            out,
        } => commands::synthesize(&SynthesizeArgs {
            code,
            program,
            min_distance: *min_distance,
            gm: gm.clone(),
            budget: *budget,
            out,
        }),
        Command::Simulate {
            code,
            schedule,
            branches,
            oracle,
            expect,
        } => {
            let branches = branches
                .as_ref()
                .map(|words| words.join(" ").parse::<Branches>())
                .transpose()
                .map_err(|e| commands::UsageError(format!("--branches: {e}")))?;
            commands::simulate(&SimulateArgs {
                code,
                schedule,
                branches,
                oracle: *oracle,
                expect: expect.as_deref(),
            })
        }
        Command::Distance { code, max_weight } => commands::distance(code, *max_weight),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
