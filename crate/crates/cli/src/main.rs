use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cohesion_core::rig::FiniteRig;
use cohesion_core::topos::FinCat;
use cohesion_lab::scenario::{CheckKind, MONOID_FIXTURES, POINTED_FIXTURES};
use cohesion_lab::{parse_scenario, run, workers_from_env, Config, Overrides, RunOptions, Scenario, EXIT_IO, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "cohesion-lab", version, about = "Run verification scenarios against the cohesion engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a scenario file.
    Run {
        file: PathBuf,
        /// Print one JSON document instead of the text report.
        #[arg(long)]
        json: bool,
        /// Stop at the first check that does not pass.
        #[arg(long)]
        fail_fast: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_enumeration: Option<u64>,
        #[arg(long)]
        idempotent_degree_bound: Option<u32>,
    },
    /// Parse and resolve a scenario without running it.
    Validate { file: PathBuf },
    /// List built-in rigs, sites, fixtures and check kinds.
    Catalog,
}

fn load(file: &PathBuf) -> Result<Scenario, ExitCode> {
    let text = std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(EXIT_IO as u8)
    })?;
    parse_scenario(&text).map_err(|e| {
        eprintln!("{}:{e}", file.display());
        ExitCode::from(EXIT_PARSE as u8)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { file, json, fail_fast, seed, max_enumeration, idempotent_degree_bound } => {
            let scenario = match load(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            let overrides = Overrides { max_enumeration, idempotent_degree_bound, seed };
            let config = Config::resolve(&scenario, &overrides);
            let report = run(&scenario, &config, &RunOptions { fail_fast, workers: workers_from_env() });
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Command::Validate { file } => match load(&file) {
            Ok(s) => {
                println!("{}: {} statements, {} checks", file.display(), s.statements.len(), s.check_count());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Catalog => {
            println!("rigs: {}, Qline", FiniteRig::CATALOG.join(", "));
            println!("sites: {}", FinCat::CATALOG.join(", "));
            println!("pointed presheaves: {}", POINTED_FIXTURES.join(", "));
            println!("monoids: {}, constant SITE RIG, boolean SITE", MONOID_FIXTURES.join(", "));
            let kinds: Vec<&str> = CheckKind::ALL.iter().map(|k| k.keyword()).collect();
            println!("checks: {}", kinds.join(", "));
            ExitCode::SUCCESS
        }
    }
}
