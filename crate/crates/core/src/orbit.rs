//! Kotzig (local-complementation) orbits up to isomorphism.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_CANONICAL_VERTICES};
use crate::pauli::StabilizerGroup;

/// The isomorphism classes reachable from a graph by local complementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    /// Canonical graphs of the orbit, ordered by adjacency code; the first is
    /// the orbit representative.
    pub representatives: Vec<Graph>,
    pub orbit_size: usize,
    pub beta_min: usize,
    pub beta_max: usize,
}

impl OrbitReport {
    pub fn representative(&self) -> &Graph {
        &self.representatives[0]
    }

    pub fn n(&self) -> usize {
        self.representative().n()
    }

    /// β range as printed in classification tables: a single value for
    /// one-class orbits, otherwise `min-max`.
    pub fn beta_range(&self) -> String {
        if self.orbit_size == 1 {
            self.beta_min.to_string()
        } else {
            format!("{}-{}", self.beta_min, self.beta_max)
        }
    }

    pub fn contains(&self, graph: &Graph) -> Result<bool> {
        let canon = graph.canonical_form()?;
        Ok(self.representatives.contains(&canon))
    }
}

/// Breadth-first closure under local complementation, deduplicated by canonical form.
pub fn kotzig_orbit(graph: &Graph) -> Result<OrbitReport> {
    if graph.n() > MAX_CANONICAL_VERTICES {
        return Err(Error::Capability {
            what: "orbit enumeration vertex count",
            got: graph.n(),
            limit: MAX_CANONICAL_VERTICES,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let start = graph.canonical_form()?;
    let mut seen: BTreeMap<u64, Graph> = BTreeMap::new();
    seen.insert(start.adjacency_code(), start.clone());
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let found: Vec<Graph> = frontier
            .par_iter()
            .flat_map_iter(|g| (0..g.n()).map(move |v| g.local_complement(v)))
            .map(|lc| lc.and_then(|h| h.canonical_form()))
            .collect::<Result<_>>()?;
        frontier = found
            .into_iter()
            .filter(|g| seen.insert(g.adjacency_code(), g.clone()).is_none())
            .collect();
        frontier.sort_by_key(Graph::adjacency_code);
        frontier.dedup();
    }
    let representatives: Vec<Graph> = seen.into_values().collect();
    let betas = representatives
        .iter()
        .map(|g| StabilizerGroup::from_graph(g).map(|s| s.beta()))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitReport {
        orbit_size: representatives.len(),
        beta_min: *betas.iter().min().expect("orbit is nonempty"),
        beta_max: *betas.iter().max().expect("orbit is nonempty"),
        representatives,
    })
}

/// Canonical forms of every graph on `n` vertices, by vertex augmentation.
pub fn graph_classes(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Capability {
            what: "graph class enumeration vertex count",
            got: n,
            limit: MAX_CANONICAL_VERTICES,
        });
    }
    let mut classes = vec![Graph::empty(0)?];
    for m in 1..=n {
        let mut next = BTreeMap::new();
        let grown: Vec<Graph> = classes
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (m - 1)).map(move |nbrs| {
                    let mut edges: Vec<(usize, usize)> = g.edges().collect();
                    edges.extend(
                        (0..m - 1)
                            .filter(|u| nbrs >> u & 1 == 1)
                            .map(|u| (u, m - 1)),
                    );
                    Graph::from_edges(m, &edges).and_then(|h| h.canonical_form())
                })
            })
            .collect::<Result<_>>()?;
        for g in grown {
            next.entry(g.adjacency_code()).or_insert(g);
        }
        classes = next.into_values().collect();
    }
    Ok(classes)
}

/// Canonical forms of the connected graphs on `n` vertices.
pub fn connected_classes(n: usize) -> Result<Vec<Graph>> {
    Ok(graph_classes(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// Partition of the connected graphs on `n` vertices into Kotzig orbits,
/// ordered by representative code.
pub fn orbits(n: usize) -> Result<Vec<OrbitReport>> {
    let classes = connected_classes(n)?;
    let mut by_code: BTreeMap<u64, &Graph> = BTreeMap::new();
    for g in &classes {
        by_code.insert(g.adjacency_code(), g);
    }
    let mut out = Vec::new();
    let mut covered = BTreeSet::new();
    for (code, g) in &by_code {
        if covered.contains(code) {
            continue;
        }
        let orbit = kotzig_orbit(g)?;
        for member in &orbit.representatives {
            covered.insert(member.adjacency_code());
        }
        out.push(orbit);
    }
    if covered.len() != classes.len() {
        return Err(Error::Internal(
            "orbit members outside the connected class list".into(),
        ));
    }
    out.sort_by_key(|o| o.representative().adjacency_code());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(s: &str) -> OrbitReport {
        kotzig_orbit(&Graph::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn table_orbit_sizes() {
        assert_eq!(orbit("12").orbit_size, 1);
        assert_eq!(orbit("12,13").orbit_size, 2);
        assert_eq!(orbit("14,24,34").orbit_size, 2);
        let o = orbit("15,25,34,45");
        assert_eq!((o.orbit_size, o.beta_min, o.beta_max), (6, 6, 12));
        assert_eq!(orbit("15,26,34,35,46,56").orbit_size, 25);
    }

    #[test]
    fn beta_range_formatting() {
        assert_eq!(orbit("12").beta_range(), "0");
        assert_eq!(orbit("12,13").beta_range(), "1-1");
        assert_eq!(orbit("14,23,24,34").beta_range(), "2-4");
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(
            kotzig_orbit(&Graph::parse("n=4:12,34").unwrap()),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn class_counts() {
        // numbers of graphs and connected graphs up to isomorphism
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            assert_eq!(graph_classes(n).unwrap().len(), all[n - 1], "n={n}");
            assert_eq!(
                connected_classes(n).unwrap().len(),
                connected[n - 1],
                "n={n}"
            );
        }
    }

    #[test]
    fn orbit_counts() {
        // connected LC orbits up to isomorphism: 1, 1, 2, 4, 11
        let counts: Vec<usize> = (2..=6).map(|n| orbits(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 11]);
    }

    #[test]
    fn orbit_is_closed() {
        let o = orbit("15,24,25,34,35");
        for g in &o.representatives {
            for v in 0..g.n() {
                let next = g.local_complement(v).unwrap();
                assert!(o.contains(&next).unwrap());
            }
        }
    }
}
