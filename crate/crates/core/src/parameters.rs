//! Independence number, the fractional/Lovász certificate and β bounds of H(G).

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{event_probabilities, StateVector};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::EventGraph;
use crate::orbit::kotzig_orbit;
use crate::pauli::{Letter, PauliOperator, StabilizerGroup};
use crate::scalar::ExactScalar;

/// Largest qubit count for the strategy oracle (2^(3n) table).
pub const MAX_STRATEGY_QUBITS: usize = 8;

/// Largest vertex count accepted by the branch-and-bound solver.
pub const MAX_MIS_VERTICES: usize = 128;

/// Deterministic classical answers: bit `k` of `neg[l]` set means player `k`
/// answers −1 when asked letter `l` (X, Y, Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Strategy {
    pub n: usize,
    pub neg: [u64; 3],
}

impl Strategy {
    pub fn all_plus(n: usize) -> Self {
        Self { n, neg: [0; 3] }
    }

    /// Strategy number `t`: bits `0..n` negate X, `n..2n` Y, `2n..3n` Z.
    pub fn from_index(n: usize, t: u64) -> Self {
        let m = (1u64 << n) - 1;
        Self {
            n,
            neg: [t & m, t >> n & m, t >> (2 * n) & m],
        }
    }

    pub fn index(&self) -> u64 {
        self.neg[0] | self.neg[1] << self.n | self.neg[2] << (2 * self.n)
    }

    /// Answer of player `k` to `letter`: true for −1. Identity inputs answer +1.
    pub fn answer(&self, k: usize, letter: Letter) -> bool {
        letter
            .measured_index()
            .is_some_and(|l| self.neg[l] >> k & 1 == 1)
    }

    /// Outcome mask this strategy produces on the support of `s`.
    pub fn outcome_on(&self, s: &PauliOperator) -> u64 {
        let m = s.letter_masks();
        (m[0] & self.neg[0]) | (m[1] & self.neg[1]) | (m[2] & self.neg[2])
    }

    pub fn satisfies(&self, s: &PauliOperator) -> bool {
        self.outcome_on(s).count_ones() % 2 == s.is_negative() as u32
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, name) in ['X', 'Y', 'Z'].into_iter().enumerate() {
            if l > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}:")?;
            for k in 0..self.n {
                f.write_str(if self.neg[l] >> k & 1 == 1 { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

pub fn satisfied_count(group: &StabilizerGroup, t: &Strategy) -> usize {
    group.elements().iter().filter(|s| t.satisfies(s)).count()
}

fn check_strategy_size(n: usize) -> Result<()> {
    if n > MAX_STRATEGY_QUBITS {
        return Err(Error::Capability {
            what: "strategy enumeration qubit count",
            got: n,
            limit: MAX_STRATEGY_QUBITS,
        });
    }
    Ok(())
}

/// Packed 3n-bit letter mask of `s`, matching [`Strategy::index`].
fn packed_letters(s: &PauliOperator) -> u64 {
    let [x, y, z] = s.letter_masks();
    x | y << s.n() | z << (2 * s.n())
}

/// Maximum number of stabilizers a classical strategy satisfies, with the
/// smallest-index strategy attaining it.
///
/// Writing F(m) = Σ (−1)^sign(s) over stabilizers with letter mask m, the
/// count for strategy t is (N + Ŵ(t))/2 where Ŵ is the Walsh–Hadamard
/// transform of F.
pub fn alpha_by_strategies(group: &StabilizerGroup) -> Result<(usize, Strategy)> {
    let n = group.n();
    check_strategy_size(n)?;
    let mut table = vec![0i32; 1 << (3 * n)];
    for s in group.elements() {
        table[packed_letters(s) as usize] += if s.is_negative() { -1 } else { 1 };
    }
    walsh_hadamard(&mut table);
    let total = group.len() as i32;
    let (t, best) = table.par_iter().enumerate().map(|(t, &w)| (t, w)).reduce(
        || (usize::MAX, i32::MIN),
        |a, b| {
            if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                b
            } else {
                a
            }
        },
    );
    let witness = Strategy::from_index(n, t as u64);
    let alpha = ((total + best) / 2) as usize;
    if satisfied_count(group, &witness) != alpha {
        return Err(Error::Internal(
            "transform and direct count disagree".into(),
        ));
    }
    Ok((alpha, witness))
}

fn walsh_hadamard(a: &mut [i32]) {
    let len = a.len();
    let mut h = 1;
    while h < len {
        a.par_chunks_mut(2 * h).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(h);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (p, q) = (*x, *y);
                *x = p + q;
                *y = p - q;
            }
        });
        h *= 2;
    }
}

/// The same maximum by evaluating every strategy directly.
pub fn alpha_by_enumeration(group: &StabilizerGroup) -> Result<usize> {
    let n = group.n();
    check_strategy_size(n)?;
    let packed: Vec<(u64, u32)> = group
        .elements()
        .iter()
        .map(|s| (packed_letters(s), s.is_negative() as u32))
        .collect();
    Ok((0u64..1 << (3 * n))
        .into_par_iter()
        .map(|t| {
            packed
                .iter()
                .filter(|&&(m, c)| (m & t).count_ones() % 2 == c)
                .count()
        })
        .max()
        .unwrap_or(0))
}

/// The event of each satisfied stabilizer under `t`; pairwise non-exclusive.
pub fn strategy_to_independent_set(h: &EventGraph, t: &Strategy) -> Vec<usize> {
    (0..h.clique_count())
        .filter_map(|idx| {
            let s = &h.group().elements()[idx];
            let out = t.outcome_on(s);
            h.clique(idx).find(|&v| h.events()[v].outcome_mask == out)
        })
        .collect()
}

/// A strategy agreeing with every event of an independent set; unused answers are +1.
pub fn independent_set_to_strategy(h: &EventGraph, set: &[usize]) -> Result<Strategy> {
    let n = h.n();
    let mut neg = [0u64; 3];
    let mut fixed = [0u64; 3];
    for &v in set {
        let s = h.stabilizer_of(v);
        let out = h.events()[v].outcome_mask;
        for (l, &mask) in s.letter_masks().iter().enumerate() {
            if (out ^ neg[l]) & mask & fixed[l] != 0 {
                return Err(Error::Internal(format!(
                    "vertex {v} conflicts with an earlier answer"
                )));
            }
            neg[l] |= out & mask;
            fixed[l] |= mask;
        }
    }
    Ok(Strategy { n, neg })
}

/// Exact maximum independent set of H(G) by branch and bound, bounding by
/// the number of per-stabilizer cliques still holding a candidate.
pub fn alpha_mis_bb(h: &EventGraph) -> Result<(usize, Vec<usize>)> {
    let v = h.vertex_count();
    if v > MAX_MIS_VERTICES {
        return Err(Error::Capability {
            what: "branch-and-bound vertex count",
            got: v,
            limit: MAX_MIS_VERTICES,
        });
    }
    let cliques: Vec<BitSet> = (0..h.clique_count())
        .map(|c| BitSet::from_indices(v, h.clique(c)))
        .collect();
    let mut search = MisSearch {
        h,
        cliques: &cliques,
        best: greedy_independent_set(h),
        current: Vec::new(),
    };
    search.run(0, BitSet::full(v));
    let best = search.best;
    Ok((best.len(), best))
}

fn greedy_independent_set(h: &EventGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..h.vertex_count()).collect();
    order.sort_by_key(|&u| (h.degree(u), u));
    let mut chosen: Vec<usize> = Vec::new();
    for u in order {
        if chosen.iter().all(|&w| !h.adjacent(u, w)) {
            chosen.push(u);
        }
    }
    chosen.sort_unstable();
    chosen
}

struct MisSearch<'a> {
    h: &'a EventGraph,
    cliques: &'a [BitSet],
    best: Vec<usize>,
    current: Vec<usize>,
}

impl MisSearch<'_> {
    fn run(&mut self, c: usize, candidates: BitSet) {
        if c == self.cliques.len() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
                self.best.sort_unstable();
            }
            return;
        }
        let live = self.cliques[c..]
            .iter()
            .filter(|k| !k.is_disjoint(&candidates))
            .count();
        if self.current.len() + live <= self.best.len() {
            return;
        }
        let here = self.cliques[c].intersection(&candidates);
        for u in here.iter() {
            let mut next = candidates.clone();
            next.difference_with(self.h.row(u));
            next.difference_with(&self.cliques[c]);
            self.current.push(u);
            self.run(c + 1, next);
            self.current.pop();
        }
        let mut next = candidates;
        next.difference_with(&self.cliques[c]);
        self.run(c + 1, next);
    }
}

/// Exact evidence that ϑ(H) = α*(H) = 2^n − 1: event probabilities in |G⟩
/// give a feasible weighting of value 2^n − 1, and the per-stabilizer cliques
/// give a cover of the same size.
#[derive(Debug, Clone, Serialize)]
pub struct SandwichCertificate {
    pub n: usize,
    /// Sizes of the per-stabilizer cliques.
    pub clique_partition: Vec<usize>,
    #[serde(serialize_with = "display_all")]
    pub primal_weights: Vec<ExactScalar>,
    #[serde(serialize_with = "display_one")]
    pub lower_value: ExactScalar,
    #[serde(serialize_with = "display_one")]
    pub upper_value: ExactScalar,
    /// Indices of partition cliques whose weights do not sum to one.
    pub clique_sum_failures: Vec<usize>,
}

fn display_one<S: serde::Serializer>(
    x: &ExactScalar,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn display_all<S: serde::Serializer>(
    xs: &[ExactScalar],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(ToString::to_string))
}

impl SandwichCertificate {
    pub fn target(&self) -> ExactScalar {
        ExactScalar::from_int((1 << self.n) - 1)
    }

    pub fn is_valid(&self) -> bool {
        self.lower_value == self.target()
            && self.upper_value == self.target()
            && self.clique_sum_failures.is_empty()
    }
}

/// Builds the certificate, or fails with `CertificateRejected` when either side deviates.
pub fn sandwich_certificate(graph: &Graph) -> Result<SandwichCertificate> {
    let cert = sandwich_unchecked(graph)?;
    if !cert.is_valid() {
        return Err(Error::CertificateRejected(format!(
            "lower {} upper {} target {} with {} failing cliques",
            cert.lower_value,
            cert.upper_value,
            cert.target(),
            cert.clique_sum_failures.len()
        )));
    }
    Ok(cert)
}

/// The certificate data without the acceptance check.
pub fn sandwich_unchecked(graph: &Graph) -> Result<SandwichCertificate> {
    let h = EventGraph::build(graph)?;
    let psi = StateVector::graph_state(graph)?;
    sandwich_for(&h, &psi)
}

/// Certificate data for an arbitrary state; used for negative controls.
pub fn sandwich_for(h: &EventGraph, psi: &StateVector) -> Result<SandwichCertificate> {
    let weights = event_probabilities(h, psi)?;
    let clique_sum_failures = (0..h.clique_count())
        .filter(|&c| {
            !weights[h.clique(c)]
                .iter()
                .copied()
                .sum::<ExactScalar>()
                .is_one()
        })
        .collect();
    Ok(SandwichCertificate {
        n: h.n(),
        clique_partition: (0..h.clique_count()).map(|c| h.clique(c).len()).collect(),
        lower_value: weights.iter().copied().sum(),
        upper_value: ExactScalar::from_int(h.clique_count() as i128),
        primal_weights: weights,
        clique_sum_failures,
    })
}

/// 2^n − 1 − β_min over the Kotzig orbit: the all-+1 strategy on the
/// member with fewest negative signs.
pub fn beta_lower_bound(graph: &Graph) -> Result<usize> {
    let orbit = kotzig_orbit(graph)?;
    Ok((1 << graph.n()) - 1 - orbit.beta_min)
}

/// Closed form for α(H(K_n)), n ≥ 3.
pub fn alpha_kn_formula(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::TooSmall { min: 3, got: n });
    }
    if n > 100 {
        return Err(Error::Capability {
            what: "closed-form vertex count",
            got: n,
            limit: 100,
        });
    }
    let p = |e: usize| 1u128 << e;
    Ok(if n % 2 == 1 {
        p((n - 3) / 2) + 3 * p(n - 2) - 1
    } else {
        p(n / 2 - 1) + p(n) - p(n - 2) - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        Graph::parse(s).unwrap()
    }

    fn group(s: &str) -> StabilizerGroup {
        StabilizerGroup::from_graph(&g(s)).unwrap()
    }

    #[test]
    fn all_plus_counts_positive_signs() {
        let p3 = group("12,23");
        assert_eq!(satisfied_count(&p3, &Strategy::all_plus(3)), 6);
        for text in ["12", "12,13,14", "15,25,34,45", "12,23,34,45,56,16"] {
            let s = group(text);
            assert_eq!(
                satisfied_count(&s, &Strategy::all_plus(s.n())),
                s.len() - s.beta()
            );
        }
    }

    #[test]
    fn strategy_index_round_trip() {
        for t in [0u64, 1, 0b101_110_011, (1 << 12) - 1] {
            assert_eq!(
                Strategy::from_index(4, t & ((1 << 12) - 1)).index(),
                t & ((1 << 12) - 1)
            );
        }
        assert_eq!(
            Strategy::from_index(2, 0b01_10_00).to_string(),
            "X:++ Y:+- Z:-+"
        );
    }

    #[test]
    fn small_alphas() {
        assert_eq!(alpha_by_strategies(&group("12")).unwrap().0, 3);
        let (a, w) = alpha_by_strategies(&group("12,23")).unwrap();
        assert_eq!(a, 6);
        assert_eq!(w, Strategy::all_plus(3));
        assert_eq!(alpha_by_strategies(&group("14,24,34")).unwrap().0, 13);
    }

    #[test]
    fn transform_matches_enumeration() {
        for n in 2..=4 {
            for graph in crate::orbit::connected_classes(n).unwrap() {
                let s = StabilizerGroup::from_graph(&graph).unwrap();
                assert_eq!(
                    alpha_by_strategies(&s).unwrap().0,
                    alpha_by_enumeration(&s).unwrap(),
                    "{graph}"
                );
            }
        }
    }

    #[test]
    fn branch_and_bound_matches() {
        let cases = [
            ("12", 3),
            ("12,23", 6),
            ("14,24,34", 13),
            ("14,23,24,34", 13),
        ];
        for (text, want) in cases {
            let h = EventGraph::build(&g(text)).unwrap();
            let (a, set) = alpha_mis_bb(&h).unwrap();
            assert_eq!(a, want, "{text}");
            for (i, &u) in set.iter().enumerate() {
                assert!(set[i + 1..].iter().all(|&w| !h.adjacent(u, w)));
            }
        }
        let big = EventGraph::build(&g("15,25,34,45")).unwrap();
        assert!(matches!(alpha_mis_bb(&big), Err(Error::Capability { .. })));
    }

    #[test]
    fn strategy_set_round_trip() {
        for text in ["12,23", "14,24,34", "12,23,34"] {
            let h = EventGraph::build(&g(text)).unwrap();
            let (alpha, t) = alpha_by_strategies(h.group()).unwrap();
            let set = strategy_to_independent_set(&h, &t);
            assert_eq!(set.len(), alpha);
            let back = independent_set_to_strategy(&h, &set).unwrap();
            assert_eq!(satisfied_count(h.group(), &back), alpha);
            let (_, mis) = alpha_mis_bb(&h).unwrap();
            let t2 = independent_set_to_strategy(&h, &mis).unwrap();
            assert_eq!(satisfied_count(h.group(), &t2), alpha);
        }
    }

    #[test]
    fn certificates() {
        let p3 = sandwich_certificate(&g("12,23")).unwrap();
        assert_eq!(p3.lower_value, ExactScalar::from_int(7));
        assert_eq!(p3.upper_value, ExactScalar::from_int(7));
        assert_eq!(p3.clique_partition.iter().sum::<usize>(), 22);
        let k2 = sandwich_certificate(&g("12")).unwrap();
        assert_eq!(k2.lower_value, ExactScalar::from_int(3));
        assert!(matches!(
            sandwich_certificate(&g("n=4:12,23")),
            Err(Error::Disconnected)
        ));
        let h = EventGraph::build(&g("12,23")).unwrap();
        let bad = StateVector::graph_state(&g("12,23"))
            .unwrap()
            .with_flipped_amplitude(3);
        assert!(!sandwich_for(&h, &bad).unwrap().is_valid());
    }

    #[test]
    fn beta_bounds() {
        assert_eq!(beta_lower_bound(&g("15,25,34,45")).unwrap(), 25);
        assert_eq!(beta_lower_bound(&g("16,26,35,45,46")).unwrap(), 49);
        assert_eq!(beta_lower_bound(&g("16,24,26,35,36,45")).unwrap(), 47);
    }

    #[test]
    fn kn_formula() {
        assert_eq!(alpha_kn_formula(3).unwrap(), 6);
        assert_eq!(alpha_kn_formula(4).unwrap(), 13);
        assert_eq!(alpha_kn_formula(6).unwrap(), 51);
        assert!(alpha_kn_formula(2).is_err());
        for n in 3..=6 {
            let s = StabilizerGroup::from_graph(&Graph::complete(n).unwrap()).unwrap();
            assert_eq!(
                alpha_by_strategies(&s).unwrap().0 as u128,
                alpha_kn_formula(n).unwrap()
            );
        }
    }
}
