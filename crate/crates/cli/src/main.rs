mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use srcw::automata::brute_srcw;
use srcw::deciders::{decide, poly_method, Algorithm};
use srcw::device::{build_sink_device, lemma9_witness};
use srcw::dot::to_dot;
use srcw::gadgets::{build_gadget, Family, GadgetGraph};
use srcw::generate::random_graph_with;
use srcw::wsat::solve;
use srcw::{classify, Exec, Graph, WSatInstance, Word, WordClass};

use report::{Outcome, RunReport};
use verify::Scope;

/// Graphs above this size need `--force` before exhaustive search runs.
const BRUTE_STATE_CAP: usize = 24;

#[derive(Parser)]
#[command(
    name = "srcw",
    version,
    about = "Synchronizing road coloring with a fixed reset word"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the command's artifact (witness, gadget, graph) to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Auto,
    Poly,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    T3,
    T4,
    Sc,
}

#[derive(Subcommand)]
enum Command {
    /// Place a word in T1..T4
    Classify {
        #[arg(long)]
        word: String,
    },
    /// Decide whether some coloring of the graph makes the word a reset word
    Decide {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
        algorithm: AlgorithmArg,
        /// Cross-check the answer against exhaustive search
        #[arg(long)]
        verify: bool,
        /// Allow exhaustive search above the state cap
        #[arg(long)]
        force: bool,
    },
    /// Color a gadget from a satisfying assignment of its W-SAT instance
    Color {
        /// Gadget JSON as written by `gadget --out`
        #[arg(long)]
        graph: PathBuf,
        /// Rebuild the gadget around this instance first
        #[arg(long)]
        wsat: Option<PathBuf>,
    },
    /// Build a reduction gadget for a word and a W-SAT instance
    Gadget {
        #[arg(long)]
        word: String,
        #[arg(long)]
        wsat: PathBuf,
        #[arg(long, value_enum, default_value_t = FamilyArg::T4)]
        family: FamilyArg,
    },
    /// Build the sink device of a word and check its properties
    SinkDevice {
        #[arg(long)]
        word: String,
    },
    /// Run a self-check suite
    Verify {
        #[arg(value_enum)]
        scope: Scope,
        /// State bound (word-length bound for `device`)
        #[arg(long)]
        states: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample a random out-degree-2 graph
    RandomGraph {
        #[arg(long)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        strongly_connected: bool,
        #[arg(long)]
        aperiodic: bool,
    },
}

/// What a command produced: a report, or raw text that replaces it on stdout.
enum Output {
    Report(Box<RunReport>),
    Raw(String),
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<String> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(path.display().to_string())
}

fn word(s: &str) -> anyhow::Result<Word> {
    Ok(s.parse()?)
}

fn class_note(w: &Word) -> &'static str {
    match (classify(w), w.to_string().as_str()) {
        (_, "abb" | "baa") => "NP-complete in general, polynomial if strongly connected",
        (WordClass::T1 | WordClass::T2, _) => "polynomial",
        _ => "NP-complete",
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let format = cli.format;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Classify { word: s } => {
            let w = word(s)?;
            let mut r = RunReport::new("classify");
            r.word = Some(w.to_string());
            r.class = Some(classify(&w));
            r.decision = Outcome::Yes;
            r.details = Some(json!({ "note": class_note(&w) }));
            Ok(Output::Report(Box::new(r)))
        }
        Command::Decide {
            graph,
            word: s,
            algorithm,
            verify,
            force,
        } => {
            let g = Graph::from_json(&read(graph)?)?;
            let w = word(s)?;
            let algorithm = match algorithm {
                AlgorithmArg::Auto => Algorithm::Auto,
                AlgorithmArg::Poly => Algorithm::Poly,
                AlgorithmArg::Brute => Algorithm::Brute,
            };
            let brute = matches!(algorithm, Algorithm::Brute)
                || (matches!(algorithm, Algorithm::Auto) && poly_method(&g, &w).is_none());
            if (brute || *verify) && g.state_count() > BRUTE_STATE_CAP && !force {
                bail!(
                    "exhaustive search on {} states exceeds the cap of {BRUTE_STATE_CAP}; pass --force",
                    g.state_count()
                );
            }
            let d = decide(&g, &w, algorithm, Exec::Parallel)?;
            let mut r = RunReport::new("decide");
            r.states = Some(g.state_count());
            r.word = Some(w.to_string());
            r.class = Some(classify(&w));
            r.decision = Outcome::from_bool(d.coloring.is_some());
            r.method = Some(
                serde_json::to_value(d.method)?
                    .as_str()
                    .unwrap_or_default()
                    .into(),
            );
            r.warnings = d.warnings;
            if *verify {
                r.oracle_agrees = Some(brute_srcw(&g, &w)?.is_some() == d.coloring.is_some());
            }
            if format == Format::Dot {
                return Ok(Output::Raw(to_dot(&g, None, d.coloring.as_ref())));
            }
            if let (Some(c), Some(path)) = (&d.coloring, out) {
                r.witness_path = Some(write(path, &serde_json::to_string(c)?)?);
            }
            r.witness = d.coloring;
            Ok(Output::Report(Box::new(r)))
        }
        Command::Color { graph, wsat } => {
            let mut g = GadgetGraph::from_json(&read(graph)?)?;
            if let Some(p) = wsat {
                g = build_gadget(g.family, &g.word, &WSatInstance::from_json(&read(p)?)?)?;
            }
            let phi = g.wsat.clone();
            let mut r = RunReport::new("color");
            r.states = Some(g.graph.state_count());
            r.word = Some(g.word.to_string());
            r.class = Some(classify(&g.word));
            let coloring = solve(&phi)?
                .map(|xi| g.color(&xi).map(|c| (xi, c)))
                .transpose()?;
            r.decision = Outcome::from_bool(coloring.is_some());
            if format == Format::Dot {
                let c = coloring.as_ref().map(|(_, c)| c);
                return Ok(Output::Raw(to_dot(&g.graph, Some(&g.roles), c)));
            }
            if let Some((xi, c)) = coloring {
                r.details = Some(json!({ "assignment": xi }));
                if let Some(path) = out {
                    r.witness_path = Some(write(path, &serde_json::to_string(&c)?)?);
                }
                r.witness = Some(c);
            }
            Ok(Output::Report(Box::new(r)))
        }
        Command::Gadget {
            word: s,
            wsat,
            family,
        } => {
            let w = word(s)?;
            let phi = WSatInstance::from_json(&read(wsat)?)?;
            let family = match family {
                FamilyArg::T3 => Family::T3,
                FamilyArg::T4 => Family::T4,
                FamilyArg::Sc => Family::Sc,
            };
            let g = build_gadget(family, &w, &phi)?;
            if format == Format::Dot {
                return Ok(Output::Raw(to_dot(&g.graph, Some(&g.roles), None)));
            }
            let mut r = RunReport::new("gadget");
            r.states = Some(g.graph.state_count());
            r.word = Some(w.to_string());
            r.class = Some(classify(&w));
            r.decision = Outcome::Yes;
            let mut details = json!({
                "family": family,
                "strongly_connected": g.graph.is_strongly_connected(),
                "aperiodic": g.graph.is_aperiodic(),
            });
            match out {
                Some(path) => r.witness_path = Some(write(path, &g.to_json())?),
                None => details["gadget"] = serde_json::from_str(&g.to_json())?,
            }
            r.details = Some(details);
            Ok(Output::Report(Box::new(r)))
        }
        Command::SinkDevice { word: s } => {
            let w = word(s)?;
            let d = build_sink_device(&w)?;
            let report = d.report();
            let mut r = RunReport::new("sink-device");
            r.states = Some(d.state_count());
            r.word = Some(w.to_string());
            r.class = Some(classify(&w));
            r.decision = Outcome::from_bool(report.incomplete);
            let undefined: Vec<String> = d
                .automaton
                .undefined()
                .into_iter()
                .map(|(s, l)| format!("[{}]{}", d.labels[s], l.to_char()))
                .collect();
            r.details = Some(json!({
                "states": d.labels.iter().map(|l| format!("[{l}]")).collect::<Vec<_>>(),
                "report": report,
                "undefined": undefined,
                "lemma9_witness": lemma9_witness(&w)?.map(|u| u.to_string()),
            }));
            Ok(Output::Report(Box::new(r)))
        }
        Command::Verify {
            scope,
            states,
            seed,
        } => {
            let suite = verify::run(*scope, *states, *seed)?;
            let mut r = RunReport::new("verify");
            r.decision = Outcome::from_bool(suite.passed);
            r.details = Some(
                json!({ "scope": format!("{scope:?}").to_lowercase(), "result": suite.details }),
            );
            Ok(Output::Report(Box::new(r)))
        }
        Command::RandomGraph {
            states,
            seed,
            strongly_connected,
            aperiodic,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let g = random_graph_with(&mut rng, *states, *strongly_connected, *aperiodic)?;
            match (format, out) {
                (Format::Dot, _) => Ok(Output::Raw(to_dot(&g, None, None))),
                (_, None) => Ok(Output::Raw(g.to_json() + "\n")),
                (_, Some(path)) => {
                    let mut r = RunReport::new("random-graph");
                    r.states = Some(g.state_count());
                    r.decision = Outcome::Yes;
                    r.witness_path = Some(write(path, &g.to_json())?);
                    Ok(Output::Report(Box::new(r)))
                }
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Decide { .. } => "decide",
        Command::Color { .. } => "color",
        Command::Gadget { .. } => "gadget",
        Command::SinkDevice { .. } => "sink-device",
        Command::Verify { .. } => "verify",
        Command::RandomGraph { .. } => "random-graph",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            return ExitCode::SUCCESS;
        }
        Ok(Output::Report(r)) => *r,
        Err(e) => {
            let mut r = RunReport::new(command_name(&cli.command));
            r.error = Some(format!("{e:#}"));
            r
        }
    };
    let mut report = report;
    report.elapsed_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.to_text()),
    }
    ExitCode::from(report.decision.exit_code() as u8)
}
