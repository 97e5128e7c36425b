//! Scenario runner: loads a JSON scenario, runs the selected checks and
//! prints a deterministic report.
//!
//! Exit codes: 0 when every selected task passes, 1 on any check failure,
//! 2 when the scenario fails to load or validate.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pwcheck_core::report::{self, Format};
use pwcheck_core::scenario;

#[derive(Parser)]
#[command(
    name = "pwcheck",
    version,
    about = "exact P=W, weight and perverse filtration checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// scenario JSON file
    scenario: PathBuf,
    /// output format
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// run only the task with this name
    #[arg(long)]
    task: Option<String>,
    /// also validate optional invariants (reality symmetry, PW marginals)
    #[arg(long)]
    strict_validation: bool,
    /// include wall-clock timings (not byte-stable)
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// perverse-mixed Hodge polynomial tasks
    Pw {
        #[command(subcommand)]
        action: PwAction,
    },
    /// weight spectral sequence tasks
    Weight {
        #[command(subcommand)]
        action: WeightAction,
    },
    /// perverse filtration tasks
    Perverse {
        #[command(subcommand)]
        action: PerverseAction,
    },
    /// Landau-Ginzburg combinatorics tasks
    Lg {
        #[command(subcommand)]
        action: LgAction,
    },
    /// run every task in the scenario
    Check {
        #[command(subcommand)]
        action: CheckAction,
    },
}

#[derive(Subcommand)]
enum PwAction {
    /// evaluate PW polynomials from stored tables
    Eval(RunArgs),
    /// run the mirror identity checks
    Mirror(RunArgs),
}

#[derive(Subcommand)]
enum WeightAction {
    /// compute E2 weight-graded dimensions
    E2(RunArgs),
}

#[derive(Subcommand)]
enum PerverseAction {
    /// compute perverse graded dimensions from the Cech rows
    E2(RunArgs),
    /// compare the flag and Cech routes
    Oracle(RunArgs),
}

#[derive(Subcommand)]
enum LgAction {
    /// discriminant loci and line counts
    Discriminant(RunArgs),
    /// gluing dimension identities
    Gluing(RunArgs),
    /// KKP-type Hodge number identities
    Kkp(RunArgs),
}

#[derive(Subcommand)]
enum CheckAction {
    /// run all tasks
    All(RunArgs),
}

fn run(args: &RunArgs, ops: Option<&[&str]>) -> ExitCode {
    let sc = match scenario::load(&args.scenario) {
        Ok(sc) => sc,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if args.strict_validation {
        if let Err(e) = scenario::strict_validate(&sc) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = report::run(&sc, ops, args.task.as_deref());
    let format = if args.format == "json" {
        Format::Json
    } else {
        Format::Text
    };
    print!("{}", report::emit(&report, format, args.timings));
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Pw {
            action: PwAction::Eval(args),
        } => run(args, Some(&["pw_eval", "is_hodge_tate", "hodge_tate_pw"])),
        Command::Pw {
            action: PwAction::Mirror(args),
        } => run(
            args,
            Some(&["mirror", "one_sided", "graded_correspondence"]),
        ),
        Command::Weight {
            action: WeightAction::E2(args),
        } => run(
            args,
            Some(&["weight_graded", "nc_cohomology", "simplicial_weight"]),
        ),
        Command::Perverse {
            action: PerverseAction::E2(args),
        } => run(
            args,
            Some(&[
                "perverse_e2",
                "flag_filtration",
                "filtration_length",
                "de_rham",
            ]),
        ),
        Command::Perverse {
            action: PerverseAction::Oracle(args),
        } => run(args, Some(&["oracle_compare"])),
        Command::Lg {
            action: LgAction::Discriminant(args),
        } => run(args, Some(&["discriminant", "line_counts"])),
        Command::Lg {
            action: LgAction::Gluing(args),
        } => run(args, Some(&["gluing"])),
        Command::Lg {
            action: LgAction::Kkp(args),
        } => run(args, Some(&["kkp", "hodge_tate_kkp"])),
        Command::Check {
            action: CheckAction::All(args),
        } => run(args, None),
    }
}
