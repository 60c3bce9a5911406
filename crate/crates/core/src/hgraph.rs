//! The exclusivity graph H(G) of a graph-state stabilizer group.
//!
//! Each stabilizer element `s` of weight `w` contributes the 2^(w−1) outcome
//! tuples on its support whose product equals the sign of `s`. Two such events
//! are adjacent when some position carries the same measured letter in both
//! and the outcomes there differ.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bits::{ones, BitSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::pauli::{Letter, PauliOperator, StabilizerGroup};

/// Largest qubit count for which H(G) is materialised.
pub const MAX_H_QUBITS: usize = 10;

/// One vertex of H(G): a stabilizer element plus a sign-consistent outcome
/// assignment on its support (bit set = outcome −1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub stab_index: usize,
    pub outcome_mask: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    /// Underlined outcomes as a trailing `-`: `x-z-I`.
    Plain,
    /// Underlined outcomes with U+0332: `x̲z̲I`.
    Unicode,
}

/// Sign-consistent outcome masks of `s`, in binary counting order over the
/// support with the first support position as the most significant bit.
pub fn events_of_stabilizer(s: &PauliOperator) -> Vec<u64> {
    let support: Vec<usize> = ones(s.support()).collect();
    let w = support.len();
    let parity = s.is_negative() as u32;
    (0u64..1 << w)
        .filter(|c| c.count_ones() % 2 == parity)
        .map(|c| {
            support
                .iter()
                .enumerate()
                .filter(|&(t, _)| c >> (w - 1 - t) & 1 == 1)
                .fold(0u64, |m, (_, &pos)| m | 1 << pos)
        })
        .collect()
}

/// Positions where both words carry the same non-identity letter.
#[inline]
pub fn shared_letters(a: &PauliOperator, b: &PauliOperator) -> u64 {
    a.support() & b.support() & !((a.x_mask() ^ b.x_mask()) | (a.z_mask() ^ b.z_mask()))
}

/// Exclusivity of two events given their stabilizers.
#[inline]
pub fn are_exclusive(a: &PauliOperator, a_out: u64, b: &PauliOperator, b_out: u64) -> bool {
    (a_out ^ b_out) & shared_letters(a, b) != 0
}

/// Renders an event tuple over all `n` positions.
pub fn render_event(s: &PauliOperator, outcome: u64, style: RenderStyle) -> String {
    let mut out = String::new();
    for k in 0..s.n() {
        let letter = s.letter(k);
        if letter == Letter::I {
            out.push('I');
            continue;
        }
        out.push(letter.as_char().to_ascii_lowercase());
        if outcome >> k & 1 == 1 {
            match style {
                RenderStyle::Plain => out.push('-'),
                RenderStyle::Unicode => out.push('\u{332}'),
            }
        }
    }
    out
}

/// Parses a rendered event (`x-z-I`, `x̲z̲I`) into an unsigned word and an outcome mask.
pub fn parse_event(text: &str) -> Result<(PauliOperator, u64)> {
    let mut letters = String::new();
    let mut outcome = 0u64;
    for (i, c) in text.trim().chars().enumerate() {
        match c {
            'I' => letters.push('I'),
            'x' | 'y' | 'z' => letters.push(c.to_ascii_uppercase()),
            '-' | '\u{332}' | '_' if !letters.is_empty() => {
                let k = letters.len() - 1;
                if letters.ends_with('I') || outcome >> k & 1 == 1 {
                    return Err(Error::Parse {
                        position: i,
                        message: "underline must follow a measured letter".into(),
                    });
                }
                outcome |= 1 << k;
            }
            other => {
                return Err(Error::Parse {
                    position: i,
                    message: format!("unexpected character {other:?} in event"),
                })
            }
        }
    }
    Ok((PauliOperator::parse(&letters)?, outcome))
}

#[derive(Debug, Clone)]
pub struct EventGraph {
    group: StabilizerGroup,
    events: Vec<Event>,
    rows: Vec<BitSet>,
    clique_offsets: Vec<usize>,
}

/// Component count and sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Vertex sets, ordered by size then by smallest vertex.
    pub components: Vec<Vec<usize>>,
}

impl ComponentSummary {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }

    /// `"1"` when connected, else `"k[s1,s2,...]"` with ascending sizes.
    pub fn label(&self) -> String {
        let sizes = self.sizes();
        if sizes.len() == 1 {
            return "1".into();
        }
        let inner: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        format!("{}[{}]", sizes.len(), inner.join(","))
    }
}

impl EventGraph {
    /// Builds H(G) for a graph with at least two vertices.
    pub fn build(graph: &Graph) -> Result<Self> {
        if graph.n() < 2 {
            return Err(Error::TooSmall {
                min: 2,
                got: graph.n(),
            });
        }
        if graph.n() > MAX_H_QUBITS {
            return Err(Error::Capability {
                what: "exclusivity graph qubit count",
                got: graph.n(),
                limit: MAX_H_QUBITS,
            });
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Self::from_group(StabilizerGroup::from_graph(graph)?)
    }

    /// Builds the exclusivity graph of an already enumerated group.
    pub fn from_group(group: StabilizerGroup) -> Result<Self> {
        let ops = group.elements();
        let mut events = Vec::new();
        let mut clique_offsets = vec![0];
        for (idx, s) in ops.iter().enumerate() {
            events.extend(
                events_of_stabilizer(s)
                    .into_iter()
                    .map(|outcome_mask| Event {
                        stab_index: idx,
                        outcome_mask,
                    }),
            );
            clique_offsets.push(events.len());
        }
        let m = ops.len();
        let shared: Vec<u64> = (0..m * m)
            .map(|t| shared_letters(&ops[t / m], &ops[t % m]))
            .collect();
        let v = events.len();
        let rows: Vec<BitSet> = (0..v)
            .into_par_iter()
            .map(|i| {
                let a = events[i];
                let mut row = BitSet::new(v);
                for (j, b) in events.iter().enumerate() {
                    let mask = shared[a.stab_index * m + b.stab_index];
                    if (a.outcome_mask ^ b.outcome_mask) & mask != 0 {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let h = Self {
            group,
            events,
            rows,
            clique_offsets,
        };
        h.check_cliques()?;
        Ok(h)
    }

    fn check_cliques(&self) -> Result<()> {
        for idx in 0..self.group.len() {
            let range = self.clique(idx);
            let w = self.group.elements()[idx].weight();
            if range.len() != 1 << (w - 1) {
                return Err(Error::Internal(format!(
                    "stabilizer {idx} has {} events, expected 2^{}",
                    range.len(),
                    w - 1
                )));
            }
            for i in range.clone() {
                for j in range.clone() {
                    if i != j && !self.adjacent(i, j) {
                        return Err(Error::Internal(format!(
                            "events {i} and {j} of stabilizer {idx} are not exclusive"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn group(&self) -> &StabilizerGroup {
        &self.group
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn vertex_count(&self) -> usize {
        self.events.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Vertex range of the clique belonging to stabilizer `idx`.
    pub fn clique(&self, idx: usize) -> std::ops::Range<usize> {
        self.clique_offsets[idx]..self.clique_offsets[idx + 1]
    }

    pub fn clique_count(&self) -> usize {
        self.group.len()
    }

    /// The per-stabilizer clique partition as vertex lists.
    pub fn clique_partition(&self) -> Vec<Vec<usize>> {
        (0..self.clique_count())
            .map(|i| self.clique(i).collect())
            .collect()
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count()
    }

    pub fn stabilizer_of(&self, i: usize) -> &PauliOperator {
        &self.group.elements()[self.events[i].stab_index]
    }

    /// Recomputes exclusivity of two vertices from their event data.
    pub fn exclusive(&self, i: usize, j: usize) -> bool {
        are_exclusive(
            self.stabilizer_of(i),
            self.events[i].outcome_mask,
            self.stabilizer_of(j),
            self.events[j].outcome_mask,
        )
    }

    pub fn render(&self, i: usize, style: RenderStyle) -> String {
        render_event(self.stabilizer_of(i), self.events[i].outcome_mask, style)
    }

    /// Vertex index of a rendered event, if it is an event of this group.
    pub fn find(&self, text: &str) -> Option<usize> {
        let (word, outcome) = parse_event(text).ok()?;
        if word.n() != self.n() {
            return None;
        }
        let idx = self.group.index_of(&word)?;
        self.clique(idx)
            .find(|&v| self.events[v].outcome_mask == outcome)
    }

    pub fn components(&self) -> ComponentSummary {
        let v = self.vertex_count();
        let mut unseen = BitSet::full(v);
        let mut components = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = BitSet::new(v);
            comp.insert(start);
            unseen.remove(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let fresh = self.rows[u].intersection(&unseen);
                for w in fresh.iter() {
                    unseen.remove(w);
                    comp.insert(w);
                    stack.push(w);
                }
            }
            components.push(comp.iter().collect::<Vec<_>>());
        }
        components.sort_by_key(|c| (c.len(), c[0]));
        ComponentSummary { components }
    }

    /// `(degree, count)` pairs in ascending degree.
    pub fn degree_counts(&self) -> Vec<(usize, usize)> {
        let mut counts = BTreeMap::new();
        for i in 0..self.vertex_count() {
            *counts.entry(self.degree(i)).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Degree sequence as `a,b/c,d/...` (`b` vertices of degree `a`). A single
    /// degree class keeps a trailing `/`, e.g. `1,6/`.
    pub fn degree_sequence(&self) -> String {
        format_degree_counts(&self.degree_counts())
    }

    /// Regularity parameters `(k, λ, μ)` of the subgraph induced on `vertices`
    /// if it is strongly regular.
    pub fn strongly_regular_parameters(&self, vertices: &[usize]) -> Option<(usize, usize, usize)> {
        let set = BitSet::from_indices(self.vertex_count(), vertices.iter().copied());
        let deg = |u: usize| self.rows[u].intersection_count(&set);
        let k = deg(*vertices.first()?);
        let mut lambda = None;
        let mut mu = None;
        for (a, &u) in vertices.iter().enumerate() {
            if deg(u) != k {
                return None;
            }
            for &w in &vertices[a + 1..] {
                let common = self.rows[u]
                    .intersection(&self.rows[w])
                    .intersection_count(&set);
                let slot = if self.adjacent(u, w) {
                    &mut lambda
                } else {
                    &mut mu
                };
                match slot {
                    Some(x) if *x != common => return None,
                    _ => *slot = Some(common),
                }
            }
        }
        Some((k, lambda.unwrap_or(0), mu.unwrap_or(0)))
    }

    /// Two-colouring of the induced subgraph, if one exists.
    pub fn is_bipartite(&self, vertices: &[usize]) -> bool {
        let set = BitSet::from_indices(self.vertex_count(), vertices.iter().copied());
        let mut colour: BTreeMap<usize, bool> = BTreeMap::new();
        for &start in vertices {
            if colour.contains_key(&start) {
                continue;
            }
            colour.insert(start, false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let cu = colour[&u];
                for w in self.rows[u].intersection(&set).iter() {
                    match colour.get(&w) {
                        Some(&cw) if cw == cu => return false,
                        Some(_) => {}
                        None => {
                            colour.insert(w, !cu);
                            stack.push(w);
                        }
                    }
                }
            }
        }
        true
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self.vertex_count(), |i, j| self.adjacent(i, j))
    }

    /// TSV vertex table: id, stabilizer index, stabilizer word, rendered event.
    pub fn vertex_table_tsv(&self) -> String {
        let mut out = String::from("id\tstabilizer\tword\tevent\n");
        for (i, e) in self.events.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i}\t{}\t{}\t{}",
                e.stab_index,
                self.stabilizer_of(i),
                self.render(i, RenderStyle::Plain)
            );
        }
        out
    }

    /// One line per vertex: `id: neighbour ids`.
    pub fn adjacency_list(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            let nbrs: Vec<String> = row.iter().map(|j| j.to_string()).collect();
            let _ = writeln!(out, "{i}: {}", nbrs.join(" "));
        }
        out
    }
}

pub fn format_degree_counts(counts: &[(usize, usize)]) -> String {
    let groups: Vec<String> = counts.iter().map(|(d, c)| format!("{d},{c}")).collect();
    if groups.len() == 1 {
        format!("{}/", groups[0])
    } else {
        groups.join("/")
    }
}
