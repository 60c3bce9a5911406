use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kotzig::boolean::{
    beta_equivalence_check, beta_kn_formula, cubic_form, cycle_beta, weight, MAX_FORM_VARIABLES,
};
use kotzig::capacity::{capacity_report, AncillaReading, MeasurementFixture};
use kotzig::classify::{
    check_connectedness_conjecture, classify_with, rows_to_json, rows_to_text, rows_to_tsv,
};
use kotzig::game::game_card;
use kotzig::orbit::kotzig_orbit;
use kotzig::report::{report, Section};
use kotzig::{EventGraph, Graph, StabilizerGroup};

#[derive(Parser)]
#[command(
    name = "kotzig",
    version,
    about = "Exclusivity graphs of graph-state stabilizer groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One row per Kotzig orbit of connected n-vertex graphs.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Tsv)]
        out: TableFormat,
        /// Allow n = 7 or 8.
        #[arg(long)]
        long_running: bool,
    },
    /// Text report for one graph.
    Report {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated sections, or "all".
        #[arg(long, default_value = "all")]
        sections: String,
    },
    /// Kotzig orbit of a connected graph.
    Orbit {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Build H(G) and write it as graph6.
    Hgraph {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write the vertex table as TSV.
        #[arg(long)]
        vertices: Option<PathBuf>,
    },
    /// Number of negative stabilizer signs.
    Beta(BetaArgs),
    /// Build the measurement family for G and verify it, or verify fixture files.
    CapacityVerify {
        #[arg(long, required_unless_present = "fixture")]
        graph: Option<String>,
        #[arg(long, value_enum, default_value_t = AncillaMode::Both)]
        ancilla_dim: AncillaMode,
        #[arg(long, num_args = 1.., conflicts_with = "graph")]
        fixture: Vec<PathBuf>,
    },
    /// Game card: classical value and the graph-state check.
    Game {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Component counts of H(G) over all orbits.
    Conjecture {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct GraphArg {
    /// Edge list such as "12,23" or "n=4:1-2,2-3".
    #[arg(long)]
    graph: String,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BetaArgs {
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    cycle: Option<usize>,
    #[arg(long)]
    complete: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Tsv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum AncillaMode {
    Linear,
    Product,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("THREADS") {
        let threads: usize = value
            .parse()
            .with_context(|| format!("THREADS={value:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn parse_graph(text: &str) -> Result<Graph> {
    Graph::parse(text).with_context(|| format!("parsing graph {text:?}"))
}

/// Runs a command; `Ok(false)` means a verification failed.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Classify {
            n,
            out,
            long_running,
        } => {
            let rows = classify_with(n, long_running)?;
            let text = match out {
                TableFormat::Tsv => rows_to_tsv(&rows),
                TableFormat::Json => rows_to_json(&rows)? + "\n",
                TableFormat::Text => rows_to_text(&rows),
            };
            print!("{text}");
            Ok(true)
        }
        Command::Report { graph, sections } => {
            print!(
                "{}",
                report(&graph.graph, &Section::parse_list(&sections)?)?
            );
            Ok(true)
        }
        Command::Orbit { graph } => {
            let orbit = kotzig_orbit(&parse_graph(&graph.graph)?)?;
            println!("orbit size {}", orbit.orbit_size);
            println!("beta range {}", orbit.beta_range());
            for g in &orbit.representatives {
                println!("{g}");
            }
            Ok(true)
        }
        Command::Hgraph {
            graph,
            out,
            vertices,
        } => {
            let h = EventGraph::build(&parse_graph(&graph.graph)?)?;
            std::fs::write(&out, h.to_graph6() + "\n")
                .with_context(|| format!("writing {}", out.display()))?;
            if let Some(path) = vertices {
                std::fs::write(&path, h.vertex_table_tsv())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!(
                "vertices {} edges {} components {}",
                h.vertex_count(),
                h.edge_count(),
                h.components().label()
            );
            Ok(true)
        }
        Command::Beta(args) => beta(args),
        Command::CapacityVerify {
            graph,
            ancilla_dim,
            fixture,
        } => {
            if !fixture.is_empty() {
                return verify_fixtures(&fixture);
            }
            let graph = parse_graph(graph.as_deref().expect("clap requires --graph"))?;
            let readings = match ancilla_dim {
                AncillaMode::Linear => vec![AncillaReading::Linear],
                AncillaMode::Product => vec![AncillaReading::Product],
                AncillaMode::Both => vec![AncillaReading::Linear, AncillaReading::Product],
            };
            let reports = readings
                .into_iter()
                .map(|r| capacity_report(&graph, r))
                .collect::<kotzig::Result<Vec<_>>>()?;
            println!("{}", serde_json::to_string_pretty(&reports)?);
            Ok(reports.iter().all(|r| r.verdict.all_ok()))
        }
        Command::Game { graph } => {
            let card = game_card(&parse_graph(&graph.graph)?)?;
            println!("{}", serde_json::to_string_pretty(&card)?);
            Ok(card.quantum.perfect())
        }
        Command::Conjecture { n } => {
            let r = check_connectedness_conjecture(n)?;
            for o in &r.orbits {
                let tag = if o.star_orbit { "  (star orbit)" } else { "" };
                println!("{}\t{}{tag}", o.representative, o.components);
            }
            if r.holds {
                println!("conjecture holds for n = {n}");
            } else {
                println!(
                    "conjecture violated for n = {n} by {}",
                    r.violations.join(" ")
                );
            }
            Ok(r.holds)
        }
    }
}

fn beta(args: BetaArgs) -> Result<bool> {
    if let Some(text) = args.graph {
        let graph = parse_graph(&text)?;
        let group = StabilizerGroup::from_graph(&graph)?;
        let f = cubic_form(&graph);
        println!("beta {}", group.beta());
        println!("f_G {f}");
        println!("wt(f_G) {}", weight(&f)?);
        let ok = beta_equivalence_check(&graph)?;
        println!("sign identity {ok}");
        return Ok(ok);
    }
    if let Some(n) = args.cycle {
        let value = cycle_beta(n)?;
        println!("beta(C_{n}) {value}");
        if n <= MAX_FORM_VARIABLES {
            let direct = weight(&cubic_form(&Graph::cycle(n)?))? as u128;
            println!("truth-table weight {direct}");
            return Ok(direct == value);
        }
        return Ok(true);
    }
    if let Some(n) = args.complete {
        let value = beta_kn_formula(n);
        println!("beta(K_{n}) {value}");
        if n <= kotzig::pauli::MAX_GROUP_QUBITS {
            let direct = StabilizerGroup::from_graph(&Graph::complete(n)?)?.beta() as u128;
            println!("direct count {direct}");
            return Ok(direct == value);
        }
        return Ok(true);
    }
    bail!("one of --graph, --cycle, --complete is required")
}

fn verify_fixtures(paths: &[PathBuf]) -> Result<bool> {
    let mut all = true;
    for path in paths {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let fixture = MeasurementFixture::from_json(&text)?;
        let verdict = fixture.verify()?;
        let agrees = fixture.classified_correctly()?;
        all &= agrees;
        println!(
            "{}\t{}\tprojectors={} orthogonality={} completeness={}",
            if agrees { "ok" } else { "MISMATCH" },
            fixture.name,
            verdict.projectors_ok,
            verdict.orthogonality_ok,
            verdict.completeness_ok
        );
    }
    Ok(all)
}
