//! Command-line front end: check `.chrono` files, dump closures, generate
//! the oversampling example, and run the oracle harnesses.
//!
//! Exit codes: 0 when everything asked for passed, 1 when a claim failed or
//! a harness found a counterexample, 2 for usage, I/O and parse errors.

mod engine;
mod fixtures;
mod mod5;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use chronoref_core::harness::{PreservationLaw, preservation_exhaustive, preservation_randomized};
use chronoref_core::{Law, verify_algebra};
use chronoref_dsl::{
    ClaimOutcome, ClaimStatus, EvaluatedClaim, ParseDiagnostic, RunSummary, SCHEMA_VERSION,
    SpecDocument, ToReportJson, parse, run_json,
};

use engine::Engine;

#[derive(Parser)]
#[command(
    name = "chronoref",
    version,
    about = "Check refinement and clock constraints over multi-level time structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a spec file, close its levels, and evaluate every claim.
    Check {
        /// The .chrono file to check.
        file: PathBuf,
        /// Emit the versioned JSON report instead of text.
        #[arg(long)]
        json: bool,
        /// Show per-predicate verdicts and witnesses for passing claims too.
        #[arg(long)]
        witnesses: bool,
    },
    /// Print one level's closed relations as sorted pair lists.
    Closure {
        /// The .chrono file to read.
        file: PathBuf,
        /// Name of the level to close and dump.
        #[arg(long)]
        level: String,
    },
    /// Emit the bundled two-level oversampling example for K groups.
    GenMod5 {
        /// Number of groups of five instants (universe 0..5K-1).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        groups: u32,
        /// Write to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the enumeration oracle: algebraic laws or preservation sweeps.
    Oracle {
        /// Largest universe for the exhaustive sweeps (at most 3).
        #[arg(long)]
        n: u32,
        /// Check one algebraic law of the refinement relation.
        #[arg(long, value_enum)]
        law: Option<LawArg>,
        /// Hunt for counterexamples to one preservation statement.
        #[arg(long, value_enum)]
        preservation: Option<PreservationArg>,
        /// Seed for the randomized phase of the preservation hunt.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Randomized instances to draw (0 skips the randomized phase).
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Universe size for randomized instances.
        #[arg(long, default_value_t = 8)]
        sample_universe: u32,
        /// Emit JSON reports instead of text.
        #[arg(long)]
        json: bool,
    },
    /// List or emit the bundled fixture files.
    Fixtures {
        /// List the available fixture names.
        #[arg(long)]
        list: bool,
        /// Print the named fixture.
        #[arg(long)]
        emit: Option<String>,
        /// Write the emitted fixture to this path instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LawArg {
    Reflexivity,
    Transitivity,
    Antisymmetry,
}

impl From<LawArg> for Law {
    fn from(arg: LawArg) -> Law {
        match arg {
            LawArg::Reflexivity => Law::Reflexivity,
            LawArg::Transitivity => Law::Transitivity,
            LawArg::Antisymmetry => Law::AntisymmetryUpToEquivalence,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PreservationArg {
    Subclock,
    Union,
}

impl From<PreservationArg> for PreservationLaw {
    fn from(arg: PreservationArg) -> PreservationLaw {
        match arg {
            PreservationArg::Subclock => PreservationLaw::Subclock,
            PreservationArg::Union => PreservationLaw::Union,
        }
    }
}

const USAGE_ERROR: u8 = 2;

/// Die quietly on a closed pipe (e.g. `chronoref closure ... | head`)
/// instead of panicking in `println!`.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Check {
            file,
            json,
            witnesses,
        } => cmd_check(&file, json, witnesses),
        Command::Closure { file, level } => cmd_closure(&file, &level),
        Command::GenMod5 { groups, out } => cmd_gen_mod5(groups, out.as_deref()),
        Command::Oracle {
            n,
            law,
            preservation,
            seed,
            samples,
            sample_universe,
            json,
        } => cmd_oracle(n, law, preservation, seed, samples, sample_universe, json),
        Command::Fixtures { list, emit, out } => {
            cmd_fixtures(list, emit.as_deref(), out.as_deref())
        }
    }
}

fn load(file: &Path) -> anyhow::Result<Result<SpecDocument, Vec<ParseDiagnostic>>> {
    let source =
        fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    Ok(parse(&source))
}

fn report_diagnostics(file: &Path, diagnostics: &[ParseDiagnostic]) -> u8 {
    for d in diagnostics {
        eprintln!("{}:{d}", file.display());
    }
    USAGE_ERROR
}

fn cmd_check(file: &Path, json: bool, witnesses: bool) -> anyhow::Result<u8> {
    let doc = match load(file)? {
        Ok(doc) => doc,
        Err(diagnostics) => return Ok(report_diagnostics(file, &diagnostics)),
    };
    let engine = Engine::new(&doc);
    let evaluated = engine.evaluate_all();
    let summary = RunSummary::tally(&evaluated);

    if json {
        println!("{}", serde_json::to_string_pretty(&run_json(&evaluated))?);
    } else {
        for claim in &evaluated {
            print_claim_line(claim, witnesses);
        }
        println!(
            "{} claims: {} passed, {} failed, {} vacuous",
            summary.claims_total,
            summary.claims_passed,
            summary.claims_failed,
            summary.claims_vacuous
        );
    }
    Ok(summary.exit_code())
}

fn print_claim_line(evaluated: &EvaluatedClaim, witnesses: bool) {
    let tag = match (&evaluated.outcome, evaluated.outcome.status()) {
        (ClaimOutcome::Error(_), _) => "ERROR",
        (_, ClaimStatus::Passed) => "PASS",
        (_, ClaimStatus::Failed) => "FAIL",
        (_, ClaimStatus::Vacuous) => "VACUOUS",
    };
    let head = format!(
        "{tag:7} assert {} {}",
        evaluated.claim.keyword(),
        evaluated.claim.operands().join(" ")
    );
    match &evaluated.outcome {
        ClaimOutcome::Spo(violations) if violations.is_empty() => println!("{head}"),
        ClaimOutcome::Spo(violations) => {
            let (a, b) = violations[0].witness;
            println!(
                "{head} -- {} ordered-coincident class(es), first witness ({a}, {b})",
                violations.len()
            );
            if witnesses {
                for violation in violations {
                    let (a, b) = violation.witness;
                    println!("        ordered and coincident: ({a}, {b})");
                }
            }
        }
        ClaimOutcome::Refines(report) => {
            if report.holds {
                println!("{head}");
            } else {
                let failures: Vec<String> = report
                    .failing()
                    .map(|outcome| {
                        let (a, b) = outcome.witness.expect("failing predicate has a witness");
                        format!("{} fails at ({a}, {b})", outcome.predicate)
                    })
                    .collect();
                println!("{head} -- {}", failures.join("; "));
            }
            if witnesses {
                for outcome in &report.predicates {
                    let verdict = if outcome.holds { "holds" } else { "fails" };
                    match outcome.witness {
                        Some((a, b)) => {
                            println!("        {}: {verdict} at ({a}, {b})", outcome.predicate)
                        }
                        None => println!("        {}: {verdict}", outcome.predicate),
                    }
                }
            }
        }
        ClaimOutcome::Constraint(verdict) => match verdict.witness {
            Some(tick) if !verdict.holds => {
                println!("{head} -- no partner for tick {tick}")
            }
            _ => println!("{head}"),
        },
        ClaimOutcome::Preservation(verdict) => {
            use chronoref_core::PreservationVerdict::*;
            match verdict {
                Satisfied => println!("{head}"),
                Vacuous { failed_hypothesis } => {
                    println!("{head} -- hypothesis {failed_hypothesis} failed")
                }
                Violated { detail } => match detail.witness {
                    Some(tick) => println!("{head} -- conclusion fails at tick {tick}"),
                    None => println!("{head} -- conclusion fails"),
                },
            }
        }
        ClaimOutcome::Error(message) => println!("{head} -- {message}"),
    }
}

fn cmd_closure(file: &Path, level: &str) -> anyhow::Result<u8> {
    let doc = match load(file)? {
        Ok(doc) => doc,
        Err(diagnostics) => return Ok(report_diagnostics(file, &diagnostics)),
    };
    let Some(structure) = doc.level_structure(level) else {
        eprintln!("error: no level named {level:?} in {}", file.display());
        return Ok(USAGE_ERROR);
    };
    let closed = structure.close();

    println!("level {level}: universe {}", closed.universe_size());
    let coincidence = closed.coincidence_pairs();
    println!("coincidence ({} pairs):", coincidence.len());
    for (a, b) in coincidence {
        println!("  ({a}, {b})");
    }
    let precedence = closed.precedence_pairs();
    println!("precedence ({} pairs):", precedence.len());
    for (a, b) in precedence {
        println!("  ({a}, {b})");
    }
    Ok(0)
}

fn cmd_gen_mod5(groups: u32, out: Option<&Path>) -> anyhow::Result<u8> {
    let text = mod5::source(groups);
    write_text(&text, out)?;
    Ok(0)
}

fn cmd_oracle(
    n: u32,
    law: Option<LawArg>,
    preservation: Option<PreservationArg>,
    seed: u64,
    samples: u64,
    sample_universe: u32,
    json: bool,
) -> anyhow::Result<u8> {
    let mut reports = Vec::new();
    let mut failed = false;

    match (law, preservation) {
        (Some(law), None) => {
            let law = Law::from(law);
            for size in 1..=n {
                let report = verify_algebra(size, law)
                    .with_context(|| format!("law sweep at size {size}"))?;
                if !json {
                    println!(
                        "law {law} n={size}: {} instances, {}",
                        report.instances_checked,
                        if report.holds() {
                            "pass"
                        } else {
                            "COUNTEREXAMPLE"
                        }
                    );
                }
                failed |= !report.holds();
                reports.push(report.report_json());
            }
        }
        (None, Some(which)) => {
            let law = PreservationLaw::from(which);
            let exhaustive =
                preservation_exhaustive(n, law).context("exhaustive preservation sweep")?;
            if !json {
                println!(
                    "preservation {law} exhaustive n<={n}: {} instances, {} satisfied, {} vacuous, {} violated",
                    exhaustive.instances,
                    exhaustive.satisfied,
                    exhaustive.vacuous,
                    exhaustive.violated
                );
            }
            failed |= !exhaustive.clean();
            reports.push(exhaustive.report_json());

            if samples > 0 {
                let randomized = preservation_randomized(sample_universe, samples, seed, law)
                    .context("randomized preservation sweep")?;
                if !json {
                    println!(
                        "preservation {law} randomized n={sample_universe} samples={samples} seed={seed}: {} satisfied, {} vacuous, {} violated",
                        randomized.satisfied, randomized.vacuous, randomized.violated
                    );
                }
                failed |= !randomized.clean();
                reports.push(randomized.report_json());
            }
        }
        _ => {
            eprintln!("error: pass exactly one of --law or --preservation");
            return Ok(USAGE_ERROR);
        }
    }

    if json {
        let doc = json!({ "schemaVersion": SCHEMA_VERSION, "reports": reports });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else if failed {
        for report in &reports {
            println!("{report}");
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_fixtures(list: bool, emit: Option<&str>, out: Option<&Path>) -> anyhow::Result<u8> {
    match (list, emit) {
        (true, None) => {
            for (name, _) in fixtures::FIXTURES {
                println!("{name}");
            }
            Ok(0)
        }
        (false, Some(name)) => match fixtures::get(name) {
            Some(source) => {
                write_text(source, out)?;
                Ok(0)
            }
            None => {
                eprintln!("error: no fixture named {name:?} (try --list)");
                Ok(USAGE_ERROR)
            }
        },
        _ => {
            eprintln!("error: pass exactly one of --list or --emit NAME");
            Ok(USAGE_ERROR)
        }
    }
}

fn write_text(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}
