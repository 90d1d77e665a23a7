//! `solenoid`: batch front end for covering classification, existence,
//! direct-limit cohomology, and oracle cross-checks.
//!
//! Exit status: 0 on success, 1 on malformed or invalid input, 2 when a
//! cross-check between the classifier and the oracle fails.

mod commands;
mod record;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use solenoid_core::{Fraction, Permutation, SolenoidType};

use commands::{Coefficients, OracleMethod};

#[derive(Parser)]
#[command(
    name = "solenoid",
    version,
    about = "Finite-fold coverings and cohomology of solenoids"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "records", value_parser = ["records"])]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a connected covering of the given degree exists.
    Exists {
        #[arg(long = "type", value_parser = parse_type)]
        ty: SolenoidType,
        #[arg(long)]
        degree: usize,
        /// Cross-check against the oracle up to this stage.
        #[arg(long, value_name = "HORIZON")]
        verify: Option<usize>,
    },
    /// Split a covering into components from its sheet permutation.
    Classify {
        #[arg(long = "type", value_parser = parse_type)]
        ty: SolenoidType,
        /// Cycle notation such as "(1 2)(3 4 5)", or "id:r".
        #[arg(long, value_parser = parse_permutation)]
        monodromy: Permutation,
        /// Stage at which the monodromy is given.
        #[arg(long, default_value_t = 0)]
        base_stage: usize,
        #[arg(long, value_name = "HORIZON")]
        verify: Option<usize>,
    },
    /// First Čech cohomology as the direct limit Z → Z → ⋯ (or over Q).
    Cohomology {
        #[arg(long = "type", value_parser = parse_type)]
        ty: SolenoidType,
        #[arg(long, value_enum)]
        coeff: Coefficients,
        /// Stages to consider; required with Q.
        #[arg(long, required_if_eq("coeff", "Q"))]
        stages: Option<usize>,
        /// Comma-separated fractions, e.g. "1/2,1/4".
        #[arg(long, value_parser = parse_fractions)]
        gens: Option<FractionList>,
    },
    /// Whether two periodic types describe homeomorphic solenoids.
    Equiv {
        #[arg(long, value_parser = parse_type)]
        left: SolenoidType,
        #[arg(long, value_parser = parse_type)]
        right: SolenoidType,
    },
    /// Raw orbit count of the finite odometer model at one stage.
    Oracle {
        #[arg(long = "type", value_parser = parse_type)]
        ty: SolenoidType,
        #[arg(long, value_parser = parse_permutation)]
        monodromy: Permutation,
        #[arg(long)]
        stage: usize,
        #[arg(long, default_value_t = 0)]
        base_stage: usize,
        #[arg(long, value_enum, default_value_t = OracleMethod::Both)]
        method: OracleMethod,
    },
}

fn parse_type(s: &str) -> Result<SolenoidType, String> {
    s.parse().map_err(|e: solenoid_core::Error| e.to_string())
}

fn parse_permutation(s: &str) -> Result<Permutation, String> {
    s.parse().map_err(|e: solenoid_core::Error| e.to_string())
}

#[derive(Clone)]
struct FractionList(Vec<Fraction>);

fn parse_fractions(s: &str) -> Result<FractionList, String> {
    if s.trim().is_empty() {
        return Ok(FractionList(Vec::new()));
    }
    s.split(',')
        .map(|t| t.parse().map_err(|e: solenoid_core::Error| e.to_string()))
        .collect::<Result<_, _>>()
        .map(FractionList)
}

fn run(cli: Cli) -> commands::CmdResult {
    match cli.command {
        Command::Exists { ty, degree, verify } => commands::exists(&ty, degree, verify),
        Command::Classify {
            ty,
            monodromy,
            base_stage,
            verify,
        } => commands::classify(&ty, &monodromy, base_stage, verify),
        Command::Cohomology {
            ty,
            coeff,
            stages,
            gens,
        } => commands::cohomology(&ty, coeff, stages, gens.as_ref().map_or(&[][..], |g| &g.0)),
        Command::Equiv { left, right } => commands::equiv(&left, &right),
        Command::Oracle {
            ty,
            monodromy,
            stage,
            base_stage,
            method,
        } => commands::oracle(&ty, &monodromy, base_stage, stage, method),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // one line: the message up to clap's usage block
            let msg = e.to_string();
            let line: Vec<&str> = msg.lines().map(str::trim).take_while(|l| !l.is_empty()).collect();
            eprintln!("{}", line.join(" "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            let text = record::render(&out.records);
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.mismatch {
                eprintln!("error: classifier and oracle disagree");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e @ solenoid_core::Error::OracleMismatch { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
