//! Command line front end: exact invariants of Seifert fibered
//! rational homology spheres, their plumbing graphs, and the family
//! invariants of boundary Dehn twists.

mod commands;
mod report;
mod source;

use clap::{Parser, Subcommand, ValueEnum};
use std::process::ExitCode;

use crate::report::CliError;
use crate::source::Source;

#[derive(Parser)]
#[command(
    name = "seifert",
    version,
    about = "Exact invariants of Seifert fibered spaces and boundary Dehn twists",
    max_term_width = 100
)]
struct Cli {
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Seifert data and homological invariants.
    Info {
        #[command(subcommand)]
        source: Source,
    },
    /// Adiabatic spectrum of the canonical spin-c class.
    Spectrum {
        #[command(subcommand)]
        source: Source,
        /// Symmetric window bound, an exact fraction like 35/2
        /// (default: 2m+1 when the canonical class is a positive fiber
        /// power, else 10).
        #[arg(long, global = true, value_name = "P/Q")]
        lambda_max: Option<String>,
    },
    /// Critical manifolds of the perturbed equations.
    Critical {
        #[command(subcommand)]
        source: Source,
        /// Symmetric window bound for the reducible levels.
        #[arg(long, global = true, value_name = "P/Q")]
        lambda_max: Option<String>,
    },
    /// Flow moduli between critical manifolds, with transversality.
    Flows {
        #[command(subcommand)]
        source: Source,
        /// Symmetric window bound for the reducible levels.
        #[arg(long, global = true, value_name = "P/Q")]
        lambda_max: Option<String>,
    },
    /// Floer-simple certificate and the graded tower module.
    Floer {
        #[command(subcommand)]
        source: Source,
    },
    /// Family invariant of a power of the boundary Dehn twist.
    Fsw {
        #[command(subcommand)]
        source: Source,
        /// Twist power k.
        #[arg(long, global = true, default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
        /// Declared b+ of the filling, echoed into the assumptions.
        #[arg(long, global = true, value_name = "B")]
        b_plus: Option<u64>,
    },
    /// Plumbing graph calculus.
    Plumbing {
        #[command(subcommand)]
        action: PlumbingAction,
    },
    /// Smooth order of the Milnor fibration monodromy of a Brieskorn
    /// singularity.
    Monodromy { a1: u64, a2: u64, a3: u64 },
    /// Built-in verification reports.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
}

#[derive(Subcommand)]
enum PlumbingAction {
    /// Star-shaped plumbing graph of a Seifert manifold.
    Star {
        #[command(subcommand)]
        source: Source,
    },
    /// Resolution type of the graph: rational, minimally elliptic, or
    /// other.
    Classify {
        #[command(subcommand)]
        source: Source,
    },
    /// Determinant of the intersection matrix.
    Det {
        #[command(subcommand)]
        source: Source,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    /// Check one exceptional-sphere configuration against the star
    /// plumbing it should embed into.
    Embedding {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        s: u64,
    },
    /// Classify the small Brieskorn links and compare against the
    /// expected resolution types.
    LauferBrieskorn,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Plus,
    Minus,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders help and version through the same channel;
            // those are successes, anything else is a usage error.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };

    let outcome = match cli.command {
        Command::Info { source } => commands::info(source),
        Command::Spectrum { source, lambda_max } => commands::spectrum(source, lambda_max),
        Command::Critical { source, lambda_max } => commands::critical(source, lambda_max),
        Command::Flows { source, lambda_max } => commands::flows(source, lambda_max),
        Command::Floer { source } => commands::floer(source),
        Command::Fsw { source, power, b_plus } => commands::fsw(source, power, b_plus),
        Command::Plumbing { action } => match action {
            PlumbingAction::Star { source } => commands::plumbing_star(source),
            PlumbingAction::Classify { source } => commands::plumbing_classify(source),
            PlumbingAction::Det { source } => commands::plumbing_det(source),
        },
        Command::Monodromy { a1, a2, a3 } => commands::monodromy(a1, a2, a3),
        Command::Verify { what } => match what {
            VerifyWhat::Embedding { family, p, s } => {
                let family = match family {
                    FamilyArg::Plus => seifert_core::plumbing::TwistFamily::Plus,
                    FamilyArg::Minus => seifert_core::plumbing::TwistFamily::Minus,
                };
                commands::verify_embedding(family, p, s)
            }
            VerifyWhat::LauferBrieskorn => commands::verify_laufer_brieskorn(),
        },
    };

    match outcome {
        Ok(report) => {
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                print!("{}", report.render_human());
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Precondition { check, message }) => {
            eprintln!("error: {check}: fail ({message})");
            ExitCode::from(2)
        }
    }
}
