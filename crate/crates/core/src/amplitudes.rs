//! Exact state vectors, stabilizer expectations and event probabilities.
//!
//! Basis index bit `k` is the computational value of qubit `k`.

use rayon::prelude::*;

use crate::bits::ones;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::EventGraph;
use crate::pauli::{Letter, PauliOperator};
use crate::scalar::ExactScalar;

/// Largest qubit count for dense state vectors.
pub const MAX_STATE_QUBITS: usize = 10;

type Mat2 = [[ExactScalar; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<ExactScalar>,
}

impl StateVector {
    pub fn new(n: usize, amplitudes: Vec<ExactScalar>) -> Result<Self> {
        check_qubits(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::SizeMismatch {
                left: 1 << n,
                right: amplitudes.len(),
            });
        }
        Ok(Self { n, amplitudes })
    }

    /// `|G⟩`, with amplitude `(−1)^{#edges inside b} · 2^(−n/2)` at basis `b`.
    pub fn graph_state(graph: &Graph) -> Result<Self> {
        let n = graph.n();
        check_qubits(n)?;
        let scale = ExactScalar::inv_sqrt2_pow(n as u32);
        let amplitudes = (0u64..1 << n)
            .map(|b| {
                let inside: u32 = ones(b)
                    .map(|v| (graph.neighbours(v) & b).count_ones())
                    .sum::<u32>()
                    / 2;
                if inside.is_multiple_of(2) {
                    scale
                } else {
                    -scale
                }
            })
            .collect();
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[ExactScalar] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> ExactScalar {
        self.amplitudes.iter().map(ExactScalar::norm_sqr).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<ExactScalar> {
        inner_product(&self.amplitudes, &other.amplitudes)
    }

    /// Copy with the sign of one amplitude flipped.
    pub fn with_flipped_amplitude(&self, basis: usize) -> Self {
        let mut out = self.clone();
        out.amplitudes[basis] = -out.amplitudes[basis];
        out
    }

    /// `s|ψ⟩`.
    pub fn apply(&self, s: &PauliOperator) -> Result<Self> {
        if s.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: s.n(),
            });
        }
        let (x, z) = (s.x_mask(), s.z_mask());
        // Y = iXZ, so the word is i^(phase + |x∧z|) X^x Z^z
        let base = (s.phase() as u32 + (x & z).count_ones()) % 4;
        let mut out = vec![ExactScalar::ZERO; self.amplitudes.len()];
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            let e = (base + 2 * ((b as u64 & z).count_ones() % 2)) % 4;
            out[b ^ x as usize] = amp * i_pow(e);
        }
        Ok(Self {
            n: self.n,
            amplitudes: out,
        })
    }

    fn apply_single(&mut self, k: usize, m: &Mat2) {
        let bit = 1usize << k;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amplitudes[b], self.amplitudes[b | bit]);
                self.amplitudes[b] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[b | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_STATE_QUBITS {
        return Err(Error::Capability {
            what: "state vector qubit count",
            got: n,
            limit: MAX_STATE_QUBITS,
        });
    }
    Ok(())
}

fn i_pow(e: u32) -> ExactScalar {
    match e % 4 {
        0 => ExactScalar::ONE,
        1 => ExactScalar::I,
        2 => -ExactScalar::ONE,
        _ => -ExactScalar::I,
    }
}

/// `Σ conj(a_k) b_k`.
pub fn inner_product(a: &[ExactScalar], b: &[ExactScalar]) -> Result<ExactScalar> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * *y).sum())
}

/// Exact `⟨ψ|s|ψ⟩`.
pub fn expectation(psi: &StateVector, s: &PauliOperator) -> Result<ExactScalar> {
    psi.inner(&psi.apply(s)?)
}

/// Projector onto the eigenvector of `letter` with eigenvalue −1 when `minus`.
pub fn eigen_projector(letter: Letter, minus: bool) -> Mat2 {
    let h = ExactScalar::dyadic(1, 1);
    let (o, z, i) = (ExactScalar::ONE, ExactScalar::ZERO, ExactScalar::I);
    let sg = if minus { -h } else { h };
    match letter {
        Letter::X => [[h, sg], [sg, h]],
        Letter::Y => [[h, -(sg * i)], [sg * i, h]],
        Letter::Z if minus => [[z, z], [z, o]],
        Letter::Z => [[o, z], [z, z]],
        Letter::I => [[o, z], [z, o]],
    }
}

/// Unit-norm eigenvector of `letter`; `I` gives `|0⟩`.
pub fn eigenvector(letter: Letter, minus: bool) -> [ExactScalar; 2] {
    let r = ExactScalar::inv_sqrt2_pow(1);
    let (o, z, i) = (ExactScalar::ONE, ExactScalar::ZERO, ExactScalar::I);
    match (letter, minus) {
        (Letter::X, false) => [r, r],
        (Letter::X, true) => [r, -r],
        (Letter::Y, false) => [r, r * i],
        (Letter::Y, true) => [r, -(r * i)],
        (Letter::Z, false) => [o, z],
        (Letter::Z, true) => [z, o],
        (Letter::I, _) => [o, z],
    }
}

fn check_event(s: &PauliOperator, outcome: u64) -> Result<()> {
    if outcome & !s.support() != 0 {
        return Err(Error::EventMismatch(format!(
            "outcome mask {outcome:#b} leaves the support of {s}"
        )));
    }
    if outcome.count_ones() % 2 != s.is_negative() as u32 {
        return Err(Error::EventMismatch(format!(
            "outcome mask {outcome:#b} is not sign-consistent with {s}"
        )));
    }
    Ok(())
}

/// Exact `⟨ψ|P_e|ψ⟩` for the event `(s, outcome)`, projecting each support
/// qubit onto the chosen eigenvector.
pub fn event_probability(
    psi: &StateVector,
    s: &PauliOperator,
    outcome: u64,
) -> Result<ExactScalar> {
    if s.n() != psi.n() {
        return Err(Error::SizeMismatch {
            left: psi.n(),
            right: s.n(),
        });
    }
    check_event(s, outcome)?;
    outcome_probability(psi, s, outcome)
}

/// Probability of reading `outcome` (bit k set for −1) when every support
/// qubit of `s` is measured in its letter's basis. Any outcome on the support
/// is accepted, sign-consistent or not.
pub fn outcome_probability(
    psi: &StateVector,
    s: &PauliOperator,
    outcome: u64,
) -> Result<ExactScalar> {
    if s.n() != psi.n() {
        return Err(Error::SizeMismatch {
            left: psi.n(),
            right: s.n(),
        });
    }
    if outcome & !s.support() != 0 {
        return Err(Error::EventMismatch(format!(
            "outcome mask {outcome:#b} leaves the support of {s}"
        )));
    }
    let mut phi = psi.clone();
    for k in ones(s.support()) {
        phi.apply_single(k, &eigen_projector(s.letter(k), outcome >> k & 1 == 1));
    }
    psi.inner(&phi)
}

/// Probabilities of every vertex of H(G) in `|G⟩`, in event order.
pub fn event_probabilities(h: &EventGraph, psi: &StateVector) -> Result<Vec<ExactScalar>> {
    h.events()
        .par_iter()
        .map(|e| event_probability(psi, &h.group().elements()[e.stab_index], e.outcome_mask))
        .collect()
}

/// Number of events with nonzero probability in `|G⟩`.
pub fn positive_probability_count(h: &EventGraph, psi: &StateVector) -> Result<usize> {
    Ok(event_probabilities(h, psi)?
        .iter()
        .filter(|p| !p.is_zero())
        .count())
}

/// Default filler ray for identity positions: `(2, 1)`, unnormalised.
pub fn default_filler() -> [ExactScalar; 2] {
    [ExactScalar::from_int(2), ExactScalar::ONE]
}

/// Tensor product of per-position eigenvectors, with `filler` at identity positions.
pub fn canonical_vector(
    s: &PauliOperator,
    outcome: u64,
    filler: [ExactScalar; 2],
) -> Result<Vec<ExactScalar>> {
    check_qubits(s.n())?;
    check_event(s, outcome)?;
    let mut v = vec![ExactScalar::ONE];
    for k in 0..s.n() {
        let f = match s.letter(k) {
            Letter::I => filler,
            l => eigenvector(l, outcome >> k & 1 == 1),
        };
        // qubit k is bit k, so later qubits are more significant
        v = f
            .iter()
            .flat_map(|&fk| v.iter().map(move |&a| a * fk))
            .collect();
    }
    Ok(v)
}

/// Distribution of measurement outcomes for the letters of `s`, indexed by
/// outcome mask (bit k set for −1); masks off the support get zero.
pub fn outcome_distribution(psi: &StateVector, s: &PauliOperator) -> Result<Vec<ExactScalar>> {
    if s.n() != psi.n() {
        return Err(Error::SizeMismatch {
            left: psi.n(),
            right: s.n(),
        });
    }
    let mut phi = psi.clone();
    for k in ones(s.support()) {
        let plus = eigenvector(s.letter(k), false);
        let minus = eigenvector(s.letter(k), true);
        let rotate = [
            [plus[0].conj(), plus[1].conj()],
            [minus[0].conj(), minus[1].conj()],
        ];
        phi.apply_single(k, &rotate);
    }
    let support = s.support() as usize;
    let mut out = vec![ExactScalar::ZERO; phi.amplitudes.len()];
    for (b, a) in phi.amplitudes.iter().enumerate() {
        out[b & support] = out[b & support] + a.norm_sqr();
    }
    Ok(out)
}
