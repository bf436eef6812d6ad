//! Command-line surface: catalog ingestion, command dispatch, report
//! emission. Exit codes: 0 success, 1 harness failure found, 2 usage or
//! input error.

use corefact_cli::{catalog, report};

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use corefact::chartab::{character_table, vanishing_profile};
use corefact::factcheck::{chief_witness, permutability, Factorisation};
use corefact::structure::cached_report;
use corefact::theorems::{run_harness, Instance};

use catalog::{build_entry, load_catalog, BuiltEntry};
use report::{Payload, ReportDoc};

#[derive(Parser)]
#[command(
    name = "corefact",
    version,
    about = "Exact character tables, vanishing elements and core-factorisation checks for small groups"
)]
struct Cli {
    /// Catalog path, or "default" for the embedded catalog.
    #[arg(long, global = true, default_value = "default")]
    catalog: PathBuf,

    /// Cap on group order during element enumeration.
    #[arg(long, global = true, default_value_t = corefact::perm::DEFAULT_ORDER_CAP)]
    max_order: usize,

    /// Cap on factor order for subgroup enumeration (permutability).
    #[arg(long, global = true, default_value_t = corefact::factcheck::DEFAULT_SUBGROUP_CAP)]
    max_subgroup_order: usize,

    /// Show per-outcome timings in verify output (timings never enter
    /// reports, which stay byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, class count and structural summary of an entry.
    Info {
        entry: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Exact irreducible character table.
    Chartab {
        entry: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Vanishing classes with indices and order annotations.
    Vanishing {
        entry: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Core-factorisation verdict with witness or failing normal subgroup.
    CheckCore {
        entry: String,
        #[arg(long, default_value_t = 0)]
        fact: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Mutual / total / tcc permutability of the factors.
    Permutability {
        entry: String,
        #[arg(long, default_value_t = 0)]
        fact: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sweep the theorem registry over the catalog.
    Verify {
        /// Comma-separated theorem ids, or "all".
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Restrict to comma-separated entry names.
        #[arg(long)]
        entries: Option<String>,
        /// Evaluate conclusions even when hypotheses fail.
        #[arg(long)]
        audit: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    args.join(" ")
}

fn emit(doc: &ReportDoc, json: Option<&PathBuf>) -> Result<(), String> {
    print!("{}", report::render_text(doc));
    if let Some(path) = json {
        let rendered = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
        std::fs::write(path, rendered + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn find_entry(cli: &Cli, name: &str) -> Result<BuiltEntry, String> {
    let entries = load_catalog(Some(&cli.catalog))?;
    let entry = entries
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| format!("unknown catalog entry {name:?}"))?;
    build_entry(entry, cli.max_order)
}

fn fact_of<'a>(built: &'a BuiltEntry, index: usize) -> Result<&'a Arc<Factorisation>, String> {
    built.factorisations.get(index).ok_or_else(|| {
        format!(
            "entry {:?} has {} factorisations, index {} is out of range",
            built.entry.name,
            built.factorisations.len(),
            index
        )
    })
}

fn doc(payload: Payload, exit_code: i32) -> ReportDoc {
    ReportDoc {
        command: command_echo(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        payload,
        exit_code,
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Info { entry, json } => {
            let built = find_entry(&cli, entry)?;
            let report = cached_report(&built.group);
            let payload = report::info_payload(
                &built.entry.name,
                &built.entry.tags,
                &built.group,
                &report,
                built.factorisations.len(),
            );
            emit(&doc(Payload::Info(payload), 0), json.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Chartab { entry, json } => {
            let built = find_entry(&cli, entry)?;
            let table = character_table(&built.group).map_err(|e| e.to_string())?;
            let payload = report::table_payload(&built.entry.name, &built.group, &table);
            emit(&doc(Payload::Chartab(payload), 0), json.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Vanishing { entry, json } => {
            let built = find_entry(&cli, entry)?;
            let profile = vanishing_profile(&built.group).map_err(|e| e.to_string())?;
            let order = built.group.order() as u64;
            let group_primes = corefact::arith::prime_divisors(order);
            let classes = &profile.classes;
            let payload = report::VanishingPayload {
                name: built.entry.name.clone(),
                order: built.group.order(),
                classes: (0..classes.class_count())
                    .map(|k| {
                        let rep = &classes.reps[k];
                        let element_order = rep.order();
                        report::VanishingClassReport {
                            rep: rep.to_string(),
                            index: classes.sizes[k],
                            element_order,
                            vanishing: profile.class_vanishing[k],
                            prime_power_order: corefact::arith::is_prime_power(element_order),
                            regular_for: group_primes
                                .iter()
                                .copied()
                                .filter(|&p| element_order % p != 0)
                                .collect(),
                            witnesses: profile.class_witnesses[k].clone(),
                        }
                    })
                    .collect(),
            };
            emit(&doc(Payload::Vanishing(payload), 0), json.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCore { entry, fact, json } => {
            let built = find_entry(&cli, entry)?;
            let f = fact_of(&built, *fact)?;
            let verdict = f.core_verdict();
            let witness = chief_witness(f);
            let payload = report::CheckCorePayload {
                name: built.entry.name.clone(),
                fact_index: *fact,
                a_order: f.a().order(),
                b_order: f.b().order(),
                holds: verdict.holds,
                failing_k: verdict.failing_k.as_deref().map(report::subgroup_report),
                witness: witness.as_ref().map(|w| {
                    w.series
                        .terms
                        .iter()
                        .skip(1)
                        .zip(&w.cover_labels)
                        .map(|(term, label)| report::WitnessTerm {
                            order: term.order(),
                            generators: term.generators().iter().map(|p| p.to_string()).collect(),
                            label: label.to_string(),
                        })
                        .collect()
                }),
                alternatives: witness.as_ref().map(|w| w.alternatives.clone()),
            };
            emit(&doc(Payload::CheckCore(payload), 0), json.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Permutability { entry, fact, json } => {
            let built = find_entry(&cli, entry)?;
            let f = fact_of(&built, *fact)?;
            let result = permutability(f, cli.max_subgroup_order).map_err(|e| e.to_string())?;
            let payload = report::PermutabilityPayload {
                name: built.entry.name.clone(),
                fact_index: *fact,
                mutual: result.mutual,
                total: result.total,
                tcc: result.tcc,
            };
            emit(&doc(Payload::Permutability(payload), 0), json.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            theorems,
            entries,
            audit,
            json,
        } => {
            let all_entries = load_catalog(Some(&cli.catalog))?;
            let wanted: Option<Vec<&str>> = entries.as_ref().map(|s| s.split(',').collect());
            let mut instances: Vec<Instance> = Vec::new();
            let mut entry_names = Vec::new();
            for entry in &all_entries {
                if let Some(filter) = &wanted {
                    if !filter.contains(&entry.name.as_str()) {
                        continue;
                    }
                }
                match build_entry(entry, cli.max_order) {
                    Ok(built) => {
                        entry_names.push(entry.name.clone());
                        instances.push(Instance::Group {
                            name: entry.name.clone(),
                            group: Arc::clone(&built.group),
                        });
                        for (i, f) in built.factorisations.iter().enumerate() {
                            instances.push(Instance::Fact {
                                name: format!("{}:fact{}", entry.name, i),
                                fact: Arc::clone(f),
                            });
                        }
                    }
                    Err(e) => {
                        // Cap problems and malformed entries are reported and
                        // skipped; the sweep continues.
                        eprintln!("skipping entry: {e}");
                    }
                }
            }
            let selection: Vec<String> = theorems.split(',').map(|s| s.trim().to_string()).collect();
            let harness = run_harness(&instances, &selection, *audit).map_err(|e| e.to_string())?;
            if cli.timings {
                for o in &harness.outcomes {
                    eprintln!(
                        "timing {} {} {} {:?}",
                        o.theorem, o.instance, o.params, o.elapsed
                    );
                }
            }
            let failed = harness.has_failures();
            let exit_code = if failed { 1 } else { 0 };
            let payload = report::VerifyPayload {
                selection,
                audit: *audit,
                entries: entry_names,
                report: harness,
            };
            emit(&doc(Payload::Verify(payload), exit_code), json.as_ref())?;
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}
