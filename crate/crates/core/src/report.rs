//! Plain-text report for a single graph.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::amplitudes::{positive_probability_count, StateVector, MAX_STATE_QUBITS};
use crate::boolean::{beta_equivalence_check, cubic_form, weight};
use crate::capacity::{capacity_report, AncillaReading, MAX_CONSTRUCTION_QUBITS};
use crate::cliques::clique_bounds_check;
use crate::error::{Error, Result};
use crate::game::game_card;
use crate::graph::Graph;
use crate::hgraph::EventGraph;
use crate::orbit::kotzig_orbit;
use crate::parameters::{alpha_by_strategies, sandwich_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Section {
    Stabilizers,
    Events,
    Alpha,
    Certificate,
    Beta,
    Cliques,
    Capacity,
    Game,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::Stabilizers,
        Section::Events,
        Section::Alpha,
        Section::Certificate,
        Section::Beta,
        Section::Cliques,
        Section::Capacity,
        Section::Game,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Stabilizers => "stabilizers",
            Section::Events => "events",
            Section::Alpha => "alpha",
            Section::Certificate => "certificate",
            Section::Beta => "beta",
            Section::Cliques => "cliques",
            Section::Capacity => "capacity",
            Section::Game => "game",
        }
    }

    /// Comma-separated section names; `all` selects everything.
    pub fn parse_list(text: &str) -> Result<Vec<Section>> {
        if text.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<Section> = text
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Section {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: format!("unknown section {s:?}"),
            })
    }
}

/// Builds the report. Sections that exceed a module's size limit print the
/// reason instead of failing the whole document.
pub fn report(graph_text: &str, sections: &[Section]) -> Result<String> {
    let graph = Graph::parse(graph_text)?;
    let h = EventGraph::build(&graph)?;
    let mut out = String::new();
    let n = graph.n();
    let _ = writeln!(out, "graph {} (n = {n})", graph.to_edge_list());
    for &section in sections {
        let _ = writeln!(out, "\n[{}]", section.name());
        let body = match section {
            Section::Stabilizers => Ok(stabilizers(&h)),
            Section::Events => Ok(events(&h)),
            Section::Alpha => alpha(&h),
            Section::Certificate => certificate(&graph, &h),
            Section::Beta => beta(&graph, &h),
            Section::Cliques => cliques(&graph),
            Section::Capacity => capacity(&graph),
            Section::Game => game(&graph),
        };
        match body {
            Ok(text) => out.push_str(&text),
            Err(e @ (Error::Capability { .. } | Error::Disconnected)) => {
                let _ = writeln!(out, "skipped: {e}");
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn stabilizers(h: &EventGraph) -> String {
    let mut out = String::new();
    for (i, s) in h.group().elements().iter().enumerate() {
        let _ = writeln!(out, "s{} = {s}", i + 1);
    }
    out
}

fn events(h: &EventGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices {}", h.vertex_count());
    let _ = writeln!(out, "edges {}", h.edge_count());
    let _ = writeln!(out, "components {}", h.components().label());
    let _ = writeln!(out, "degrees {}", h.degree_sequence());
    let _ = writeln!(out, "minimum distance {}", h.group().min_distance());
    out
}

fn alpha(h: &EventGraph) -> Result<String> {
    let (alpha, t) = alpha_by_strategies(h.group())?;
    let mut out = String::new();
    let top = h.clique_count();
    let _ = writeln!(out, "alpha = {alpha}");
    let _ = writeln!(out, "witness strategy {t}");
    if alpha == top {
        let _ = writeln!(
            out,
            "alpha = 2^n - 1 = {top}: no classical gap (n = 2 exception)"
        );
    } else {
        let _ = writeln!(out, "alpha < 2^n - 1 = {top}");
    }
    Ok(out)
}

fn certificate(graph: &Graph, h: &EventGraph) -> Result<String> {
    let cert = sandwich_unchecked(graph)?;
    let mut out = String::new();
    let _ = writeln!(out, "lower (probability weights) = {}", cert.lower_value);
    let _ = writeln!(out, "upper (stabilizer cliques) = {}", cert.upper_value);
    let _ = writeln!(
        out,
        "cliques not summing to 1: {}",
        cert.clique_sum_failures.len()
    );
    let _ = writeln!(out, "valid {}", cert.is_valid());
    if graph.n() <= MAX_STATE_QUBITS {
        let psi = StateVector::graph_state(graph)?;
        let positive = positive_probability_count(h, &psi)?;
        if positive != h.vertex_count() {
            let _ = writeln!(
                out,
                "events with nonzero probability {positive} of {}",
                h.vertex_count()
            );
        }
    }
    Ok(out)
}

fn beta(graph: &Graph, h: &EventGraph) -> Result<String> {
    let f = cubic_form(graph);
    let mut out = String::new();
    let _ = writeln!(out, "beta = {}", h.group().beta());
    let _ = writeln!(out, "f_G = {f}");
    let _ = writeln!(out, "wt(f_G) = {}", weight(&f)?);
    let _ = writeln!(
        out,
        "sign identity holds {}",
        beta_equivalence_check(graph)?
    );
    let orbit = kotzig_orbit(graph)?;
    let _ = writeln!(out, "orbit size {}", orbit.orbit_size);
    let _ = writeln!(out, "orbit beta range {}", orbit.beta_range());
    let _ = writeln!(
        out,
        "alpha lower bound 2^n - 1 - beta_min = {}",
        h.clique_count() - orbit.beta_min
    );
    Ok(out)
}

fn cliques(graph: &Graph) -> Result<String> {
    let r = clique_bounds_check(graph)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bounds [{}, {}] with d_H = {}",
        r.lower_bound, r.upper_bound, r.d_h
    );
    if let Some(e) = &r.enumeration {
        let _ = writeln!(
            out,
            "maximal cliques {} with sizes {}..{}",
            e.count, e.min_size, e.max_size
        );
    }
    let show = |w: &Option<Vec<String>>| w.as_ref().map_or("none".to_string(), |v| v.join(" "));
    let _ = writeln!(out, "lower witness {}", show(&r.min_witness));
    let _ = writeln!(out, "upper witness {}", show(&r.max_witness));
    if !r.non_maximal_min_weight.is_empty() {
        let _ = writeln!(
            out,
            "minimum-weight elements with non-maximal cliques: {}",
            r.non_maximal_min_weight.join(" ")
        );
    }
    let _ = writeln!(out, "within bounds {}", r.within_bounds);
    let _ = writeln!(out, "both extremes witnessed {}", r.both_witnessed);
    Ok(out)
}

fn capacity(graph: &Graph) -> Result<String> {
    let mut out = String::new();
    let bound = crate::capacity::capacity_upper_bound(graph)?;
    let _ = writeln!(out, "upper bound {bound}");
    if graph.n() > MAX_CONSTRUCTION_QUBITS {
        let _ = writeln!(
            out,
            "construction skipped above n = {MAX_CONSTRUCTION_QUBITS}"
        );
        return Ok(out);
    }
    for reading in [AncillaReading::Linear, AncillaReading::Product] {
        let r = capacity_report(graph, reading)?;
        let _ = writeln!(
            out,
            "{reading:?} ancilla {:?}: projectors {} orthogonality {} completeness {} wrapped labels {}",
            r.ancilla_dims,
            r.verdict.projectors_ok,
            r.verdict.orthogonality_ok,
            r.verdict.completeness_ok,
            r.wrapped_labels
        );
    }
    Ok(out)
}

fn game(graph: &Graph) -> Result<String> {
    let card = game_card(graph)?;
    let mut out = String::new();
    let _ = writeln!(out, "players {} inputs {}", card.players, card.inputs.len());
    let _ = writeln!(out, "rule: {}", card.rule);
    let _ = writeln!(out, "classical value {}", card.classical_value);
    let _ = writeln!(out, "best strategy {}", card.best_strategy);
    let _ = writeln!(
        out,
        "graph state wins with certainty {}",
        card.quantum.perfect()
    );
    Ok(out)
}
