use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vgcalc::scenario::{compare_golden_dir, parse_scenario_file, run, Emit};

#[derive(Parser)]
#[command(
    name = "vgcalc",
    version,
    about = "Run Vassiliev–Gorinov bookkeeping scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a `.vgl` scenario and report its artifacts and assertions.
    Run {
        file: PathBuf,
        /// Directory of golden files to compare artifacts against.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EmitArg::All)]
        emit: EmitArg,
        /// Print only failures and the summary line.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Poly,
    Table,
    All,
}

impl From<EmitArg> for Emit {
    fn from(e: EmitArg) -> Self {
        match e {
            EmitArg::Poly => Emit::Poly,
            EmitArg::Table => Emit::Table,
            EmitArg::All => Emit::All,
        }
    }
}

const EXIT_FAILED: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn main() -> ExitCode {
    let Command::Run {
        file,
        golden,
        emit,
        quiet,
    } = Cli::parse().command;
    let report = match parse_scenario_file(&file).and_then(|s| run(&s)) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if quiet {
        for a in report.assertions.iter().filter(|a| !a.passed) {
            println!(
                "assert {} FAIL: {}\n  left:  {}\n  right: {}",
                a.at, a.source, a.left, a.right
            );
        }
    } else {
        print!("{}", report.render(emit.into()));
    }
    let mut ok = report.passed();
    if let Some(dir) = golden {
        let outcomes = match compare_golden_dir(&report, &dir) {
            Ok(o) => o,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_INVALID);
            }
        };
        for o in &outcomes {
            if o.passed() {
                if !quiet {
                    println!("golden {}: ok", o.name);
                }
            } else {
                ok = false;
                println!("golden {}: FAILED", o.name);
                for line in &o.diff {
                    println!("  {line}");
                }
            }
        }
    }
    if quiet {
        let passed = report.assertions.iter().filter(|a| a.passed).count();
        println!("{passed}/{} assertions passed", report.assertions.len());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    }
}
