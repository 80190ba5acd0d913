//! `bbd`: command-line front end over the core library.
//!
//! Every subcommand reads digraphs in the shared text format (a file
//! path or `-` for standard input) and writes either human-readable
//! text or, with `--json`, a single JSON document.
//!
//! Exit codes: 0 command completed without finding a counterexample,
//! 1 a counterexample was found (verify/hunt), 2 usage or input error.

use bbd_core::analysis::{analyze, ConditionReport, MaxBk};
use bbd_core::canon::{build_complete, build_d10, build_d8, build_directed_cycle, find_isomorphism};
use bbd_core::cycles::{cycle_spectrum, find_cycle_of_length};
use bbd_core::digraph::BipartiteDigraph;
use bbd_core::hunt::{hunt_counterexamples, GenMode, GenSpec};
use bbd_core::verify::{verify, TheoremId};
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "bbd", version, about = "Balanced bipartite digraph toolkit")]
struct Cli {
    /// Emit a single JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in digraph in the text format.
    Exemplar {
        #[command(subcommand)]
        which: Exemplar,
    },
    /// Report connectivity and degree-condition facts.
    Check { input: String },
    /// List the even cycle lengths present.
    Spectrum { input: String },
    /// Find the least cycle through exactly the given number of vertices.
    Witness {
        input: String,
        #[arg(long)]
        length: usize,
    },
    /// Decide whether two digraphs are isomorphic.
    Iso { first: String, second: String },
    /// Evaluate one theorem's hypotheses and conclusion on a digraph.
    Verify {
        input: String,
        #[arg(long)]
        theorem: String,
    },
    /// Generate instances and hunt for counterexamples to a theorem.
    Hunt {
        #[arg(long)]
        theorem: String,
        /// Generation mode: random, structured, or exhaustive.
        #[arg(long)]
        mode: String,
        /// Half-order of generated instances.
        #[arg(long)]
        a: usize,
        /// Per-arc presence probability.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Worker threads; defaults to BBD_WORKERS or the global pool.
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Exemplar {
    /// The critical 10-vertex digraph with no 8-cycle.
    D10,
    /// The critical 8-vertex digraph with no 6-cycle.
    D8,
    /// Complete bipartite digraph on p and q vertices.
    Complete {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Directed cycle through all 2a vertices.
    Cycle {
        #[arg(long)]
        a: usize,
    },
}

#[derive(Serialize)]
struct ExemplarDoc {
    digraph: String,
}

#[derive(Serialize)]
struct WitnessDoc {
    length: usize,
    witness: Option<String>,
}

#[derive(Serialize)]
struct MappingDoc {
    parts_swapped: bool,
    x_image: Vec<String>,
    y_image: Vec<String>,
}

#[derive(Serialize)]
struct IsoDoc {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping: Option<MappingDoc>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(counterexample) => {
            if counterexample {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Runs the command; `Ok(true)` means a counterexample was found.
fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Exemplar { which } => {
            let d = match which {
                Exemplar::D10 => build_d10(),
                Exemplar::D8 => build_d8(),
                Exemplar::Complete { p, q } => build_complete(p, q).map_err(stringify)?,
                Exemplar::Cycle { a } => build_directed_cycle(a).map_err(stringify)?,
            };
            if cli.json {
                emit(&ExemplarDoc { digraph: d.serialize() })?;
            } else {
                print!("{}", d.serialize());
            }
            Ok(false)
        }
        Command::Check { input } => {
            let d = load(&input)?;
            let report = analyze(&d);
            if cli.json {
                emit(&report)?;
            } else {
                print_report(&report);
            }
            Ok(false)
        }
        Command::Spectrum { input } => {
            let d = load(&input)?;
            let spectrum = cycle_spectrum(&d);
            if cli.json {
                emit(&spectrum)?;
            } else if spectrum.lengths().is_empty() {
                println!("none");
            } else {
                println!("{}", join(spectrum.lengths().iter()));
            }
            Ok(false)
        }
        Command::Witness { input, length } => {
            let d = load(&input)?;
            let witness = find_cycle_of_length(&d, length);
            if cli.json {
                emit(&WitnessDoc { length, witness: witness.map(|w| w.to_string()) })?;
            } else {
                match witness {
                    Some(w) => println!("{w}"),
                    None => println!("none"),
                }
            }
            Ok(false)
        }
        Command::Iso { first, second } => {
            let d1 = load(&first)?;
            let d2 = load(&second)?;
            let mapping = find_isomorphism(&d1, &d2);
            if cli.json {
                let doc = IsoDoc {
                    isomorphic: mapping.is_some(),
                    mapping: mapping.map(|m| MappingDoc {
                        parts_swapped: m.parts_swapped,
                        x_image: m.x_image.iter().map(|v| v.to_string()).collect(),
                        y_image: m.y_image.iter().map(|v| v.to_string()).collect(),
                    }),
                };
                emit(&doc)?;
            } else {
                match mapping {
                    Some(m) => {
                        println!("isomorphic");
                        println!("parts swapped: {}", yes_no(m.parts_swapped));
                        println!("x images: {}", join(m.x_image.iter()));
                        println!("y images: {}", join(m.y_image.iter()));
                    }
                    None => println!("not isomorphic"),
                }
            }
            Ok(false)
        }
        Command::Verify { input, theorem } => {
            let theorem = TheoremId::from_str(&theorem)?;
            let d = load(&input)?;
            let verdict = verify(theorem, &d);
            if cli.json {
                emit(&verdict)?;
            } else {
                print_verdict(&verdict);
            }
            Ok(verdict.counterexample)
        }
        Command::Hunt { theorem, mode, a, density, seed, count, workers } => {
            let theorem = TheoremId::from_str(&theorem)?;
            let spec = GenSpec {
                half_order: a,
                mode: GenMode::from_str(&mode)?,
                arc_density: density,
                seed,
                count,
            };
            let workers = match workers {
                Some(w) => Some(w),
                None => workers_from_env()?,
            };
            let start = Instant::now();
            let mut report = hunt_counterexamples(theorem, &spec, workers).map_err(stringify)?;
            report.duration_ms = Some(start.elapsed().as_millis() as u64);
            let found = !report.counterexamples.is_empty();
            if cli.json {
                emit(&report)?;
            } else {
                println!("theorem: {}", report.theorem);
                println!(
                    "mode: {mode} a={a} density={density} seed={seed} count={count}",
                );
                println!("tested: {}", report.tested);
                println!("hypotheses met: {}", report.hypotheses_met);
                if report.rejections.is_empty() {
                    println!("rejections: none");
                } else {
                    let parts: Vec<String> =
                        report.rejections.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("rejections: {}", parts.join(" "));
                }
                println!("counterexamples: {}", report.counterexamples.len());
                for record in &report.counterexamples {
                    print!("{}", record.digraph);
                }
                println!("distinct canonical forms: {}", report.distinct_canonical_forms);
                if let Some(ms) = report.duration_ms {
                    println!("duration: {ms} ms");
                }
            }
            Ok(found)
        }
    }
}

/// The only environment configuration: an optional worker-count
/// override for hunts.
fn workers_from_env() -> Result<Option<usize>, String> {
    match std::env::var("BBD_WORKERS") {
        Ok(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| format!("invalid BBD_WORKERS value {raw:?}")),
        Err(_) => Ok(None),
    }
}

fn load(path: &str) -> Result<BipartiteDigraph, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    BipartiteDigraph::parse(&text).map_err(stringify)
}

fn emit<T: Serialize>(doc: &T) -> Result<(), String> {
    let json = serde_json::to_string(doc).map_err(stringify)?;
    println!("{json}");
    Ok(())
}

fn stringify(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn join<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn print_report(report: &ConditionReport) {
    println!("order: {}", report.order);
    println!("strong: {}", yes_no(report.strong));
    println!("underlying 2-connected: {}", yes_no(report.underlying_2connected));
    if report.cut_vertices.is_empty() {
        println!("cut vertices: none");
    } else {
        println!("cut vertices: {}", report.cut_vertices.join(" "));
    }
    println!("dominating pairs: {}", report.dominating_pairs);
    match report.max_bk {
        MaxBk::Vacuous => println!("max degree-condition level: vacuous"),
        MaxBk::Level(k) => println!("max degree-condition level: {k}"),
    }
    println!("wang condition: {}", yes_no(report.wang));
    println!("degree-sum condition: {}", yes_no(report.sum_condition));
    println!("degrees:");
    for entry in &report.degrees {
        println!(
            "  {}: out {}, in {}, total {}",
            entry.vertex,
            entry.out,
            entry.in_,
            entry.out + entry.in_
        );
    }
}

fn print_verdict(verdict: &bbd_core::verify::TheoremVerdict) {
    println!("theorem: {}", verdict.theorem);
    println!("hypotheses met: {}", yes_no(verdict.hypotheses_met));
    if !verdict.failed_hypotheses.is_empty() {
        println!("failed hypotheses: {}", verdict.failed_hypotheses.join(", "));
    }
    match verdict.conclusion_holds {
        Some(holds) => println!("conclusion holds: {}", yes_no(holds)),
        None => println!("conclusion holds: not evaluated"),
    }
    if let Some(clause) = &verdict.escape_clause {
        println!("escape clause: {clause}");
    }
    if let Some(witness) = &verdict.witness {
        match witness {
            bbd_core::verify::VerdictEvidence::Cycle(w) => println!("witness: {w}"),
            bbd_core::verify::VerdictEvidence::Spectrum(s) => {
                println!("witness spectrum: {}", join(s.lengths().iter()));
            }
        }
    }
    if let Some(note) = &verdict.note {
        println!("note: {note}");
    }
    println!("counterexample: {}", yes_no(verdict.counterexample));
}
