//! Simple graphs on at most 64 vertices stored as neighbour bitmasks.
//!
//! Vertices are 0-based in the Rust API. The text edge-list format uses the
//! 1-based labels found in classification tables: `"12,13"` is the graph with
//! edges {1,2} and {1,3}, i.e. `(0,1)` and `(0,2)` here.

use std::fmt;

use crate::bits::ones;
use crate::error::{Error, Result};
use crate::graph6;

/// Largest vertex count representable (one neighbour mask per machine word).
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by the exhaustive canonical form.
pub const MAX_CANONICAL_VERTICES: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capability {
                what: "vertex count",
                got: n,
                limit: MAX_VERTICES,
            });
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edges; rejects loops and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u + 1));
            }
            if g.has_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
            g.toggle_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.toggle_edge(u, v);
            }
        }
        Ok(g)
    }

    /// Star with the centre on the last vertex, matching the `"14,24,34"` convention.
    pub fn star(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        if n > 1 {
            for u in 0..n - 1 {
                g.toggle_edge(u, n - 1);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 1..n {
            g.toggle_edge(u - 1, u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooSmall { min: 3, got: n });
        }
        let mut g = Self::path(n)?;
        g.toggle_edge(0, n - 1);
        Ok(g)
    }

    /// Parses the edge-list text format.
    ///
    /// Accepted tokens are compact pairs of single-digit labels (`"14"`) or
    /// dash-separated labels (`"1-14"`). An optional `n=K:` prefix fixes the
    /// vertex count; otherwise it is the largest label used.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed_start = text.len() - text.trim_start().len();
        let body = text.trim();
        let (explicit_n, list, offset) = match body.strip_prefix("n=") {
            Some(rest) => {
                let colon = rest.find(':').ok_or_else(|| Error::Parse {
                    position: trimmed_start,
                    message: "expected ':' after the n= prefix".into(),
                })?;
                let n: usize = rest[..colon].trim().parse().map_err(|_| Error::Parse {
                    position: trimmed_start + 2,
                    message: format!("invalid vertex count {:?}", &rest[..colon]),
                })?;
                (Some(n), &rest[colon + 1..], trimmed_start + 2 + colon + 1)
            }
            None => (None, body, trimmed_start),
        };

        let mut edges = Vec::new();
        let mut pos = offset;
        if !list.trim().is_empty() {
            for token in list.split(',') {
                let lead = token.len() - token.trim_start().len();
                let tok = token.trim();
                let at = pos + lead;
                edges.push((parse_edge_token(tok, at)?, at));
                pos += token.len() + 1;
            }
        }

        let max_label = edges.iter().map(|&((u, v), _)| u.max(v)).max().unwrap_or(0);
        let n = match explicit_n {
            Some(n) if n < max_label => {
                return Err(Error::Parse {
                    position: offset,
                    message: format!("label {max_label} exceeds n={n}"),
                })
            }
            Some(n) => n,
            None => max_label,
        };
        let mut g = Self::empty(n)?;
        for ((u, v), at) in edges {
            if u == v {
                return Err(Error::Parse {
                    position: at,
                    message: format!("self-loop on vertex {u}"),
                });
            }
            if g.has_edge(u - 1, v - 1) {
                return Err(Error::Parse {
                    position: at,
                    message: format!("duplicate edge {{{},{}}}", u.min(v), u.max(v)),
                });
            }
            g.toggle_edge(u - 1, v - 1);
        }
        Ok(g)
    }

    /// Renders the edge-list text format (compact form when every label is a digit).
    pub fn to_edge_list(&self) -> String {
        let compact = self.n <= 9;
        let edges: Vec<String> = self
            .edges()
            .map(|(u, v)| {
                if compact {
                    format!("{}{}", u + 1, v + 1)
                } else {
                    format!("{}-{}", u + 1, v + 1)
                }
            })
            .collect();
        let max_label = self.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
        if max_label == self.n && self.n > 0 {
            edges.join(",")
        } else {
            format!("n={}:{}", self.n, edges.join(","))
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbourhood of `v` as a bitmask (bit `u` set iff `u ~ v`).
    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| ones(self.adj[u] >> u >> 1).map(move |d| (u, u + 1 + d)))
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    /// Local complementation at `v`: the induced subgraph on N(v) is complemented.
    pub fn local_complement(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        let nbhd = self.adj[v];
        let mut g = self.clone();
        for u in ones(nbhd) {
            // toggle every edge from u to the rest of the neighbourhood
            g.adj[u] ^= nbhd & !(1 << u);
        }
        Ok(g)
    }

    /// Connectivity by bitmask flood fill. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in ones(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    /// Applies a relabelling where `order[new] = old`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        debug_assert_eq!(order.len(), self.n);
        let mut inverse = vec![0; self.n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let adj = order
            .iter()
            .map(|&old| ones(self.adj[old]).fold(0u64, |m, u| m | 1 << inverse[u]))
            .collect();
        Self { n: self.n, adj }
    }

    /// Adjacency bits in column-major upper-triangle order (the graph6 order):
    /// (0,1),(0,2),(1,2),(0,3),... with the first pair as the most significant bit.
    pub fn adjacency_code(&self) -> u64 {
        debug_assert!(self.n <= 11);
        let mut code = 0u64;
        for j in 1..self.n {
            for i in 0..j {
                code = code << 1 | (self.adj[i] >> j & 1);
            }
        }
        code
    }

    /// Relabelling (`order[new] = old`) minimising [`Graph::adjacency_code`] over all
    /// vertex permutations, together with the minimal code.
    pub fn canonical_labeling(&self) -> Result<(Vec<usize>, u64)> {
        if self.n > MAX_CANONICAL_VERTICES {
            return Err(Error::Capability {
                what: "canonical form vertex count",
                got: self.n,
                limit: MAX_CANONICAL_VERTICES,
            });
        }
        let mut search = CanonSearch {
            adj: &self.adj,
            n: self.n,
            total_bits: self.n * self.n.saturating_sub(1) / 2,
            order: vec![0; self.n],
            best: None,
        };
        search.descend(0, 0, 0, 0);
        let (order, code) = search.best.expect("at least one permutation");
        Ok((order, code))
    }

    /// Canonical representative of the isomorphism class.
    pub fn canonical_form(&self) -> Result<Self> {
        let (order, _) = self.canonical_labeling()?;
        Ok(self.permuted(&order))
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self.n, |i, j| self.has_edge(i, j))
    }

    pub fn from_graph6(text: &str) -> Result<Self> {
        let (n, edges) = graph6::decode(text)?;
        Self::from_edges(n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_edge_list())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn parse_edge_token(tok: &str, at: usize) -> Result<(usize, usize)> {
    let bad = |message: String| Error::Parse {
        position: at,
        message,
    };
    if tok.is_empty() {
        return Err(bad("empty edge token".into()));
    }
    let label = |s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(0) => Err(bad(format!("vertex labels start at 1, got {s:?}"))),
            Ok(v) => Ok(v),
            Err(_) => Err(bad(format!("invalid vertex label {s:?}"))),
        }
    };
    if let Some((a, b)) = tok.split_once('-') {
        return Ok((label(a.trim())?, label(b.trim())?));
    }
    let digits: Vec<char> = tok.chars().collect();
    if digits.len() != 2 || !digits.iter().all(|c| c.is_ascii_digit()) {
        return Err(bad(format!(
            "malformed edge {tok:?}; use two digits (\"14\") or \"u-v\""
        )));
    }
    Ok((
        label(&digits[0].to_string())?,
        label(&digits[1].to_string())?,
    ))
}

struct CanonSearch<'a> {
    adj: &'a [u64],
    n: usize,
    total_bits: usize,
    order: Vec<usize>,
    best: Option<(Vec<usize>, u64)>,
}

impl CanonSearch<'_> {
    fn descend(&mut self, depth: usize, used: u64, code: u64, bits: usize) {
        if depth == self.n {
            let better = match &self.best {
                Some((_, best)) => code < *best,
                None => true,
            };
            if better {
                self.best = Some((self.order.clone(), code));
            }
            return;
        }
        for u in 0..self.n {
            if used >> u & 1 == 1 {
                continue;
            }
            let mut next = code;
            for i in 0..depth {
                next = next << 1 | (self.adj[self.order[i]] >> u & 1);
            }
            let next_bits = bits + depth;
            if let Some((_, best)) = &self.best {
                let prefix = best >> (self.total_bits - next_bits);
                if next > prefix {
                    continue;
                }
            }
            self.order[depth] = u;
            self.descend(depth + 1, used | 1 << u, next, next_bits);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        Graph::parse(s).unwrap()
    }

    #[test]
    fn parse_compact_and_extended() {
        let star = g("12,13");
        assert_eq!(star.n(), 3);
        assert_eq!(star.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);

        let h = g("14,23,24,34");
        assert_eq!(h.n(), 4);
        assert_eq!(h.edge_count(), 4);

        let sparse = g("n=5:1-2");
        assert_eq!(sparse.n(), 5);
        assert_eq!(sparse.edge_count(), 1);
        assert_eq!((2..5).map(|v| sparse.degree(v)).sum::<usize>(), 0);

        let big = g("1-10, 10-11");
        assert_eq!(big.n(), 11);
        assert!(big.has_edge(9, 10));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            Graph::parse("12,1x"),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("12,11"),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!(
            Graph::parse("12,21"),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(Graph::parse("123").is_err());
        assert!(Graph::parse("n=2:1-3").is_err());
        assert!(Graph::parse("10").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        for s in ["12,13", "14,23,24,34", "n=5:12", "n=3:", "1-2,2-10"] {
            assert_eq!(g(s).to_edge_list(), s);
        }
    }

    #[test]
    fn local_complement_star_to_complete() {
        // ST3 centred at 1 becomes K3
        let lc = g("12,13").local_complement(0).unwrap();
        assert_eq!(lc, Graph::complete(3).unwrap());
    }

    #[test]
    fn local_complement_at_leaf_is_identity() {
        let p = Graph::path(5).unwrap();
        assert_eq!(p.local_complement(0).unwrap(), p);
        assert_eq!(p.local_complement(4).unwrap(), p);
    }

    #[test]
    fn local_complement_out_of_range() {
        assert!(matches!(
            Graph::path(3).unwrap().local_complement(3),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn lc_is_involution_on_all_small_graphs() {
        for n in 1..=5usize {
            let pairs = n * (n - 1) / 2;
            for bits in 0u32..(1 << pairs) {
                let graph = graph_from_bits(n, bits);
                for v in 0..n {
                    let twice = graph
                        .local_complement(v)
                        .unwrap()
                        .local_complement(v)
                        .unwrap();
                    assert_eq!(twice, graph);
                }
            }
        }
    }

    pub(crate) fn graph_from_bits(n: usize, bits: u32) -> Graph {
        let mut edges = Vec::new();
        let mut t = 0;
        for u in 0..n {
            for v in u + 1..n {
                if bits >> t & 1 == 1 {
                    edges.push((u, v));
                }
                t += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn canonical_form_relabel_invariant() {
        let a = g("12,23").canonical_form().unwrap();
        let b = g("12,13").canonical_form().unwrap();
        assert_eq!(a, b);
        assert_ne!(
            Graph::complete(3).unwrap().canonical_form().unwrap(),
            Graph::star(3).unwrap().canonical_form().unwrap()
        );
        assert_eq!(a.canonical_form().unwrap(), a);
        // star centre goes to the last label
        assert_eq!(
            Graph::star(5)
                .unwrap()
                .permuted(&[4, 0, 1, 2, 3])
                .canonical_form()
                .unwrap(),
            g("15,25,35,45")
        );
    }

    #[test]
    fn canonical_form_is_minimum_over_all_permutations() {
        // brute-force oracle: minimum code over every permutation
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        for (n, bits) in [
            (4, 0b101101u32),
            (5, 0b1100101001),
            (5, 0b0000011111),
            (4, 0),
        ] {
            let graph = graph_from_bits(n, bits);
            let brute = perms(n)
                .iter()
                .map(|p| graph.permuted(p).adjacency_code())
                .min()
                .unwrap();
            assert_eq!(graph.canonical_labeling().unwrap().1, brute);
            assert_eq!(graph.canonical_form().unwrap().adjacency_code(), brute);
        }
    }

    #[test]
    fn canonical_form_capability_bound() {
        assert!(matches!(
            Graph::path(9).unwrap().canonical_form(),
            Err(Error::Capability { .. })
        ));
    }

    #[test]
    fn connectivity() {
        assert!(g("12,23").is_connected());
        assert!(!g("n=3:12").is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn graph6_round_trip() {
        let graph = g("15,26,34,35,46,56");
        let text = graph.to_graph6();
        assert_eq!(Graph::from_graph6(&text).unwrap(), graph);
    }
}
