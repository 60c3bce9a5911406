//! Local complementation acting on stabilizer elements and on events.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_CANONICAL_VERTICES};
use crate::hgraph::EventGraph;
use crate::pauli::{Letter, PauliOperator, StabilizerGroup};

/// Letter permutation induced by local complementation at `pivot`:
/// Z and Y swap at the pivot, X and Y swap on its neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcLetterMap {
    pub pivot: usize,
    pub neighbourhood: u64,
}

impl LcLetterMap {
    pub fn new(graph: &Graph, pivot: usize) -> Result<Self> {
        graph.check_vertex(pivot)?;
        Ok(Self {
            pivot,
            neighbourhood: graph.neighbours(pivot),
        })
    }

    fn region(&self) -> u64 {
        self.neighbourhood | 1 << self.pivot
    }

    pub fn map_letter(&self, k: usize, letter: Letter) -> Letter {
        let (x, z) = letter.bits();
        if k == self.pivot {
            Letter::from_bits(x ^ z, z)
        } else if self.neighbourhood >> k & 1 == 1 {
            Letter::from_bits(x, z ^ x)
        } else {
            letter
        }
    }

    /// Positions in the pivot's closed neighbourhood carrying Y.
    pub fn y_positions(&self, s: &PauliOperator) -> u64 {
        s.x_mask() & s.z_mask() & self.region()
    }

    /// Image of `s`: letters permuted, sign multiplied by `(−1)^{#Y in {v} ∪ N(v)}`.
    pub fn apply(&self, s: &PauliOperator) -> PauliOperator {
        let p = 1u64 << self.pivot;
        let x = s.x_mask() ^ (s.z_mask() & p);
        let z = s.z_mask() ^ (s.x_mask() & self.neighbourhood);
        let flip = 2 * (self.y_positions(s).count_ones() % 2) as u8;
        PauliOperator::from_masks(s.n(), x, z, (s.phase() + flip) % 4)
            .expect("masks stay inside the qubit range")
    }

    /// Image of an event: outcomes flip where a Y is mapped.
    pub fn transport_event(&self, s: &PauliOperator, outcome: u64) -> (PauliOperator, u64) {
        (self.apply(s), outcome ^ self.y_positions(s))
    }
}

pub fn transform_stabilizer(s: &PauliOperator, v: usize, graph: &Graph) -> Result<PauliOperator> {
    if s.n() != graph.n() {
        return Err(Error::SizeMismatch {
            left: graph.n(),
            right: s.n(),
        });
    }
    Ok(LcLetterMap::new(graph, v)?.apply(s))
}

/// Index map from S(G) into S(G^v) under the letter permutation, or `None`
/// when some image is not an element with the right sign.
pub fn group_correspondence(graph: &Graph, v: usize) -> Result<Option<Vec<usize>>> {
    let map = LcLetterMap::new(graph, v)?;
    let source = StabilizerGroup::from_graph(graph)?;
    let target = StabilizerGroup::from_graph(&graph.local_complement(v)?)?;
    let mut image = Vec::with_capacity(source.len());
    let mut hit = vec![false; target.len()];
    for s in source.elements() {
        let t = map.apply(s);
        match target.index_of(&t) {
            Some(j) if target.elements()[j] == t && !hit[j] => {
                hit[j] = true;
                image.push(j);
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(image))
}

/// True when the permuted, re-signed elements of S(G) are exactly S(G^v).
pub fn verify_group_transport(graph: &Graph, v: usize) -> Result<bool> {
    check_size(graph)?;
    Ok(group_correspondence(graph, v)?.is_some())
}

fn check_size(graph: &Graph) -> Result<()> {
    if graph.n() > MAX_CANONICAL_VERTICES {
        return Err(Error::Capability {
            what: "LC transport vertex count",
            got: graph.n(),
            limit: MAX_CANONICAL_VERTICES,
        });
    }
    Ok(())
}

/// Event map H(G) → H(G^v) induced by the letter permutation, if it is a bijection.
pub fn event_correspondence(
    h: &EventGraph,
    h_v: &EventGraph,
    map: &LcLetterMap,
) -> Option<Vec<usize>> {
    let mut lookup = BTreeMap::new();
    for (j, e) in h_v.events().iter().enumerate() {
        lookup.insert((e.stab_index, e.outcome_mask), j);
    }
    let mut image = Vec::with_capacity(h.vertex_count());
    let mut hit = vec![false; h_v.vertex_count()];
    for e in h.events() {
        let (t, out) = map.transport_event(&h.group().elements()[e.stab_index], e.outcome_mask);
        let idx = h_v.group().index_of(&t)?;
        if h_v.group().elements()[idx] != t {
            return None;
        }
        let j = *lookup.get(&(idx, out))?;
        if hit[j] {
            return None;
        }
        hit[j] = true;
        image.push(j);
    }
    Some(image)
}

/// True when the transported events give an adjacency-preserving bijection H(G) → H(G^v).
pub fn verify_event_transport(graph: &Graph, v: usize) -> Result<bool> {
    let h = EventGraph::build(graph)?;
    let h_v = EventGraph::build(&graph.local_complement(v)?)?;
    let map = LcLetterMap::new(graph, v)?;
    Ok(event_isomorphism(&h, &h_v, &map))
}

fn event_isomorphism(h: &EventGraph, h_v: &EventGraph, map: &LcLetterMap) -> bool {
    if h.vertex_count() != h_v.vertex_count() || h.edge_count() != h_v.edge_count() {
        return false;
    }
    let Some(image) = event_correspondence(h, h_v, map) else {
        return false;
    };
    (0..h.vertex_count()).into_par_iter().all(|i| {
        (i + 1..h.vertex_count()).all(|j| h.adjacent(i, j) == h_v.adjacent(image[i], image[j]))
    })
}

/// Largest qubit count accepted by [`verify_h_invariance`].
pub const MAX_INVARIANCE_QUBITS: usize = 6;

/// Walks the LC orbit of `graph` through labeled graphs and checks that every
/// LC step carries H onto H by the transported events.
pub fn verify_h_invariance(graph: &Graph) -> Result<bool> {
    if graph.n() > MAX_INVARIANCE_QUBITS {
        return Err(Error::Capability {
            what: "H invariance vertex count",
            got: graph.n(),
            limit: MAX_INVARIANCE_QUBITS,
        });
    }
    let mut seen = BTreeMap::new();
    seen.insert(graph.canonical_form()?.adjacency_code(), ());
    let mut frontier = vec![graph.clone()];
    let reference = EventGraph::build(graph)?;
    while let Some(g) = frontier.pop() {
        let h = EventGraph::build(&g)?;
        if h.vertex_count() != reference.vertex_count()
            || h.degree_counts() != reference.degree_counts()
        {
            return Ok(false);
        }
        for v in 0..g.n() {
            let g_v = g.local_complement(v)?;
            let h_v = EventGraph::build(&g_v)?;
            if !event_isomorphism(&h, &h_v, &LcLetterMap::new(&g, v)?) {
                return Ok(false);
            }
            if seen
                .insert(g_v.canonical_form()?.adjacency_code(), ())
                .is_none()
            {
                frontier.push(g_v);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        Graph::parse(s).unwrap()
    }

    fn op(s: &str) -> PauliOperator {
        PauliOperator::parse(s).unwrap()
    }

    #[test]
    fn worked_examples() {
        let star = g("12,13");
        assert_eq!(
            transform_stabilizer(&op("YYZ"), 0, &star).unwrap(),
            op("ZXZ")
        );
        assert_eq!(
            transform_stabilizer(&op("-XYY"), 0, &star).unwrap(),
            op("-XXX")
        );
        let far = g("12,34");
        assert_eq!(
            transform_stabilizer(&op("IIYZ"), 0, &far).unwrap(),
            op("IIYZ")
        );
    }

    #[test]
    fn star_group_maps_onto_triangle_group() {
        let star = g("12,13");
        let image: Vec<String> = StabilizerGroup::from_graph(&star)
            .unwrap()
            .elements()
            .iter()
            .map(|s| transform_stabilizer(s, 0, &star).unwrap().to_string())
            .collect();
        let mut got = image.clone();
        got.sort();
        let mut want = ["XZZ", "ZXZ", "YYI", "ZZX", "YIY", "IYY", "-XXX"].map(String::from);
        want.sort();
        assert_eq!(got, want);
        assert!(verify_group_transport(&star, 0).unwrap());
    }

    #[test]
    fn transport_holds_for_all_small_graphs() {
        for n in 2..=5 {
            for graph in crate::orbit::graph_classes(n).unwrap() {
                for v in 0..n {
                    assert!(verify_group_transport(&graph, v).unwrap(), "{graph} v={v}");
                    let map = LcLetterMap::new(&graph, v).unwrap();
                    for s in StabilizerGroup::from_graph(&graph).unwrap().elements() {
                        assert_eq!(map.apply(s).weight(), s.weight());
                    }
                }
            }
        }
    }

    #[test]
    fn event_transport_is_isomorphism() {
        for text in ["12", "12,23", "12,13,23", "14,24,34", "12,23,34,45"] {
            let graph = g(text);
            for v in 0..graph.n() {
                assert!(verify_event_transport(&graph, v).unwrap(), "{text} v={v}");
            }
        }
    }

    #[test]
    fn h_invariance() {
        assert!(verify_h_invariance(&g("12,13")).unwrap());
        assert!(verify_h_invariance(&g("14,24,34")).unwrap());
        assert!(verify_h_invariance(&g("12,23,34,45")).unwrap());
        let st4 = EventGraph::build(&g("14,24,34")).unwrap();
        let k4 = EventGraph::build(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!((st4.vertex_count(), k4.vertex_count()), (84, 84));
    }

    #[test]
    fn wrong_sign_rule_is_detected() {
        // dropping the sign flip breaks transport for the star
        let star = g("12,13");
        let map = LcLetterMap::new(&star, 0).unwrap();
        let target = StabilizerGroup::from_graph(&star.local_complement(0).unwrap()).unwrap();
        let s = op("-XYY");
        let unsigned = map.apply(&s).negated();
        let idx = target.index_of(&unsigned).unwrap();
        assert_ne!(target.elements()[idx], unsigned);
    }
}
