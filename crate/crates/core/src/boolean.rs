//! The cubic form f_G whose truth-table weight counts negative stabilizer signs.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::bits::ones;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::StabilizerGroup;

/// Largest variable count for truth-table evaluation.
pub const MAX_FORM_VARIABLES: usize = 24;

/// Largest qubit count for [`beta_equivalence_check`].
pub const MAX_EQUIVALENCE_QUBITS: usize = 10;

/// Sum over GF(2) of cubic monomials `z_i z_j z_k`, stored as sorted triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    pub n: usize,
    pub monomials: BTreeSet<[usize; 3]>,
}

impl CubicForm {
    /// Value at the assignment whose bit `k` is `z_k`.
    pub fn eval(&self, z: u64) -> bool {
        self.masks().filter(|&m| z & m == m).count() % 2 == 1
    }

    fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials
            .iter()
            .map(|t| t.iter().fold(0u64, |m, &i| m | 1 << i))
    }
}

impl fmt::Display for CubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .monomials
            .iter()
            .map(|[i, j, k]| format!("z{}z{}z{}", i + 1, j + 1, k + 1))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// One monomial per two-edge path `i − j − k`, accumulated mod 2.
pub fn cubic_form(graph: &Graph) -> CubicForm {
    let mut monomials = BTreeSet::new();
    for j in 0..graph.n() {
        let nbrs: Vec<usize> = ones(graph.neighbours(j)).collect();
        for (a, &i) in nbrs.iter().enumerate() {
            for &k in &nbrs[a + 1..] {
                let mut t = [i, j, k];
                t.sort_unstable();
                if !monomials.remove(&t) {
                    monomials.insert(t);
                }
            }
        }
    }
    CubicForm {
        n: graph.n(),
        monomials,
    }
}

/// Number of ones in the truth table.
pub fn weight(f: &CubicForm) -> Result<u64> {
    if f.n > MAX_FORM_VARIABLES {
        return Err(Error::Capability {
            what: "truth-table variable count",
            got: f.n,
            limit: MAX_FORM_VARIABLES,
        });
    }
    let masks: Vec<u64> = f.masks().collect();
    Ok((0u64..1 << f.n)
        .into_par_iter()
        .filter(|&z| masks.iter().filter(|&&m| z & m == m).count() % 2 == 1)
        .count() as u64)
}

/// Checks wt(f_G) = β(G) and that each group element's sign is `(−1)^{f_G}`
/// at its generator subset.
pub fn beta_equivalence_check(graph: &Graph) -> Result<bool> {
    if graph.n() > MAX_EQUIVALENCE_QUBITS {
        return Err(Error::Capability {
            what: "β equivalence qubit count",
            got: graph.n(),
            limit: MAX_EQUIVALENCE_QUBITS,
        });
    }
    let f = cubic_form(graph);
    let group = StabilizerGroup::from_graph(graph)?;
    let signs_agree = (1u64..1 << graph.n())
        .all(|a| group.element(a).map(|s| s.is_negative()) == Some(f.eval(a)));
    Ok(signs_agree && weight(&f)? == group.beta() as u64)
}

/// β(C_n) from the recurrence β(C_{m+3}) = 2(β(C_{m+1}) + β(C_m) + 2^{m−1}).
pub fn cycle_beta(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::TooSmall { min: 3, got: n });
    }
    if n > 120 {
        return Err(Error::Capability {
            what: "cycle length",
            got: n,
            limit: 120,
        });
    }
    let mut seq: Vec<u128> = vec![1, 4, 6];
    while seq.len() < n - 2 {
        let m = seq.len();
        // seq[i] is β(C_{i+3}); the next entry is β(C_{m+3}) with index m
        let prev = seq[m - 2] + seq[m - 3] + (1u128 << (m - 1));
        seq.push(2 * prev);
    }
    Ok(seq[n - 3])
}

/// β(K_n) = Σ_{k=1}^{⌊(n+1)/4⌋} C(n, 4k−1).
pub fn beta_kn_formula(n: usize) -> u128 {
    (1..=(n + 1) / 4).map(|k| binomial(n, 4 * k - 1)).sum()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Graph {
        Graph::parse(s).unwrap()
    }

    #[test]
    fn forms() {
        assert_eq!(cubic_form(&g("12,23")).to_string(), "z1z2z3");
        assert!(cubic_form(&g("12")).monomials.is_empty());
        let k3 = cubic_form(&Graph::complete(3).unwrap());
        assert_eq!(k3.to_string(), "z1z2z3");
        assert_eq!(weight(&k3).unwrap(), 1);
        // K4: each triple arises from three centres and survives once
        assert_eq!(cubic_form(&Graph::complete(4).unwrap()).monomials.len(), 4);
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&cubic_form(&g("12,23"))).unwrap(), 1);
        assert_eq!(weight(&cubic_form(&Graph::cycle(6).unwrap())).unwrap(), 18);
        assert_eq!(weight(&cubic_form(&g("n=3:12"))).unwrap(), 0);
    }

    #[test]
    fn cycles() {
        let direct: Vec<u64> = (3..=8)
            .map(|n| weight(&cubic_form(&Graph::cycle(n).unwrap())).unwrap())
            .collect();
        assert_eq!(direct, [1, 4, 6, 18, 36, 80]);
        for n in 3..=16 {
            let w = weight(&cubic_form(&Graph::cycle(n).unwrap())).unwrap();
            assert_eq!(cycle_beta(n).unwrap(), w as u128, "n={n}");
        }
        assert!(cycle_beta(2).is_err());
    }

    #[test]
    fn complete_graphs() {
        for n in 2..=10 {
            let kn = Graph::complete(n).unwrap();
            let beta = StabilizerGroup::from_graph(&kn).unwrap().beta() as u128;
            assert_eq!(beta_kn_formula(n), beta, "n={n}");
            assert!(beta_equivalence_check(&kn).unwrap());
        }
    }

    #[test]
    fn lemma_holds_for_small_graphs() {
        for n in 1..=5 {
            for graph in crate::orbit::graph_classes(n).unwrap() {
                assert!(beta_equivalence_check(&graph).unwrap(), "{graph}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }
}
