//! Projective measurement families for zero-error signalling over H(G), and
//! an exact verifier for them.
//!
//! An operator is stored as a dense system matrix tensored with a diagonal
//! ancilla part: one basis label per ancilla factor, or the identity on it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amplitudes::eigen_projector;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hgraph::EventGraph;
use crate::pauli::Letter;
use crate::scalar::ExactScalar;

/// Largest qubit count for the explicit construction.
pub const MAX_CONSTRUCTION_QUBITS: usize = 4;

pub type Matrix = Vec<Vec<ExactScalar>>;

/// `(message, outcome)` index of an operator.
pub type OperatorIndex = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AncillaFactor {
    Fixed(usize),
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectorExact {
    pub matrix: Matrix,
    pub ancilla_dims: Vec<usize>,
    pub ancilla: Vec<AncillaFactor>,
}

fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    if r == c {
                        ExactScalar::ONE
                    } else {
                        ExactScalar::ZERO
                    }
                })
                .collect()
        })
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| (0..d).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![ExactScalar::ZERO; p * q]; p * q];
    for (r1, row) in a.iter().enumerate() {
        for (c1, &x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r2, brow) in b.iter().enumerate() {
                for (c2, &y) in brow.iter().enumerate() {
                    out[r1 * q + r2][c1 * q + c2] = x * y;
                }
            }
        }
    }
    out
}

impl ProjectorExact {
    /// A plain operator with no ancilla.
    pub fn system(matrix: Matrix) -> Self {
        Self {
            matrix,
            ancilla_dims: Vec::new(),
            ancilla: Vec::new(),
        }
    }

    pub fn system_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn dimension(&self) -> usize {
        self.system_dim() * self.ancilla_dims.iter().product::<usize>()
    }

    fn free_multiplicity(&self) -> i128 {
        self.ancilla
            .iter()
            .zip(&self.ancilla_dims)
            .filter(|(f, _)| **f == AncillaFactor::Identity)
            .map(|(_, &d)| d as i128)
            .product()
    }

    pub fn trace(&self) -> ExactScalar {
        let t: ExactScalar = (0..self.system_dim()).map(|i| self.matrix[i][i]).sum();
        t * ExactScalar::from_int(self.free_multiplicity())
    }

    /// `tr(self · other)`.
    pub fn trace_product(&self, other: &Self) -> Result<ExactScalar> {
        if self.system_dim() != other.system_dim() || self.ancilla_dims != other.ancilla_dims {
            return Err(Error::SizeMismatch {
                left: self.dimension(),
                right: other.dimension(),
            });
        }
        let d = self.system_dim();
        let sys: ExactScalar = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.matrix[i][j] * other.matrix[j][i])
            .sum();
        let mut anc = 1i128;
        for ((a, b), &dim) in self
            .ancilla
            .iter()
            .zip(&other.ancilla)
            .zip(&self.ancilla_dims)
        {
            anc *= match (a, b) {
                (AncillaFactor::Fixed(x), AncillaFactor::Fixed(y)) => (x == y) as i128,
                (AncillaFactor::Identity, AncillaFactor::Identity) => dim as i128,
                _ => 1,
            };
        }
        Ok(sys * ExactScalar::from_int(anc))
    }

    fn well_formed(&self) -> bool {
        let d = self.system_dim();
        self.matrix.iter().all(|r| r.len() == d)
            && self.ancilla.len() == self.ancilla_dims.len()
            && self
                .ancilla
                .iter()
                .zip(&self.ancilla_dims)
                .all(|(f, &dim)| !matches!(f, AncillaFactor::Fixed(l) if *l >= dim))
    }

    pub fn is_self_adjoint(&self) -> bool {
        let d = self.system_dim();
        (0..d).all(|r| (0..d).all(|c| self.matrix[r][c] == self.matrix[c][r].conj()))
    }

    pub fn is_idempotent(&self) -> bool {
        mat_mul(&self.matrix, &self.matrix) == self.matrix
    }

    /// Exact projector test: idempotent, self-adjoint, integer trace.
    pub fn is_projector(&self) -> bool {
        self.well_formed()
            && self.is_self_adjoint()
            && self.is_idempotent()
            && self.trace().as_integer().is_some_and(|t| t >= 0)
    }

    /// Dense matrix on the full space, system index most significant.
    pub fn to_dense(&self) -> Matrix {
        let mut out = self.matrix.clone();
        for (f, &dim) in self.ancilla.iter().zip(&self.ancilla_dims) {
            let part = match f {
                AncillaFactor::Identity => identity(dim),
                AncillaFactor::Fixed(l) => {
                    let mut m = vec![vec![ExactScalar::ZERO; dim]; dim];
                    m[*l][*l] = ExactScalar::ONE;
                    m
                }
            };
            out = kron(&out, &part);
        }
        out
    }
}

/// Operators grouped per message, in a shared ambient space.
#[derive(Debug, Clone)]
pub struct MeasurementFamily {
    pub messages: Vec<Vec<ProjectorExact>>,
}

impl MeasurementFamily {
    pub fn dimension(&self) -> Option<usize> {
        self.messages
            .iter()
            .flatten()
            .next()
            .map(ProjectorExact::dimension)
    }

    fn get(&self, (m, x): OperatorIndex) -> Result<&ProjectorExact> {
        self.messages
            .get(m)
            .and_then(|ops| ops.get(x))
            .ok_or_else(|| Error::InvalidPartition(format!("no operator {x} in message {m}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Failure {
    NotProjector {
        message: usize,
        index: usize,
    },
    Overlap {
        left: OperatorIndex,
        right: OperatorIndex,
        trace: String,
    },
    Incomplete {
        message: usize,
        defect_trace: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProtocolVerdict {
    pub projectors_ok: bool,
    pub orthogonality_ok: bool,
    pub completeness_ok: bool,
    pub failures: Vec<Failure>,
}

impl ProtocolVerdict {
    fn empty() -> Self {
        Self {
            projectors_ok: true,
            orthogonality_ok: true,
            completeness_ok: true,
            failures: Vec::new(),
        }
    }

    pub fn merge(mut self, other: Self) -> Self {
        self.projectors_ok &= other.projectors_ok;
        self.orthogonality_ok &= other.orthogonality_ok;
        self.completeness_ok &= other.completeness_ok;
        self.failures.extend(other.failures);
        self
    }

    pub fn all_ok(&self) -> bool {
        self.projectors_ok && self.orthogonality_ok && self.completeness_ok
    }
}

pub fn verify_projectors(family: &MeasurementFamily) -> ProtocolVerdict {
    let mut v = ProtocolVerdict::empty();
    for (m, ops) in family.messages.iter().enumerate() {
        for (x, p) in ops.iter().enumerate() {
            if !p.is_projector() {
                v.projectors_ok = false;
                v.failures.push(Failure::NotProjector {
                    message: m,
                    index: x,
                });
            }
        }
    }
    v
}

/// `tr(P·Q) = 0` for every confusable pair `((m, x), (m', x'))`.
pub fn verify_orthogonality(
    family: &MeasurementFamily,
    confusable: &[(OperatorIndex, OperatorIndex)],
) -> Result<ProtocolVerdict> {
    let traces: Vec<ExactScalar> = confusable
        .par_iter()
        .map(|&(a, b)| family.get(a)?.trace_product(family.get(b)?))
        .collect::<Result<_>>()?;
    let mut v = ProtocolVerdict::empty();
    for (&(a, b), t) in confusable.iter().zip(traces) {
        if !t.is_zero() {
            v.orthogonality_ok = false;
            v.failures.push(Failure::Overlap {
                left: a,
                right: b,
                trace: t.to_string(),
            });
        }
    }
    Ok(v)
}

/// `Σ_x P_x = I` for every message, tested block by block over ancilla labels.
pub fn verify_completeness(family: &MeasurementFamily) -> Result<ProtocolVerdict> {
    let mut v = ProtocolVerdict::empty();
    for (m, ops) in family.messages.iter().enumerate() {
        let Some(first) = ops.first() else {
            v.completeness_ok = false;
            v.failures.push(Failure::Incomplete {
                message: m,
                defect_trace: "empty message".into(),
            });
            continue;
        };
        let dims = first.ancilla_dims.clone();
        let d = first.system_dim();
        if let Some(p) = ops
            .iter()
            .find(|p| p.ancilla_dims != dims || p.system_dim() != d)
        {
            return Err(Error::SizeMismatch {
                left: first.dimension(),
                right: p.dimension(),
            });
        }
        let configs: usize = dims.iter().product();
        let mut defect = ExactScalar::ZERO;
        let mut complete = true;
        for c in 0..configs {
            let labels = decode_config(c, &dims);
            let mut sum = vec![vec![ExactScalar::ZERO; d]; d];
            for p in ops {
                let hit = p.ancilla.iter().zip(&labels).all(|(f, &l)| match f {
                    AncillaFactor::Fixed(x) => *x == l,
                    AncillaFactor::Identity => true,
                });
                if hit {
                    for (srow, prow) in sum.iter_mut().zip(&p.matrix) {
                        for (s, &x) in srow.iter_mut().zip(prow) {
                            *s = *s + x;
                        }
                    }
                }
            }
            for (r, row) in sum.iter().enumerate() {
                defect = defect + ExactScalar::ONE - row[r];
            }
            complete &= sum == identity(d);
        }
        if !complete {
            v.completeness_ok = false;
            v.failures.push(Failure::Incomplete {
                message: m,
                defect_trace: defect.to_string(),
            });
        }
    }
    Ok(v)
}

fn decode_config(mut c: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = c % d;
        c /= d;
    }
    out
}

/// How the ancilla register of the construction is sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AncillaReading {
    /// One register of dimension n − 1 (total 2^n·(n − 1)), labelled by the
    /// occurrence number at the last support position, reduced mod n − 1.
    #[default]
    Linear,
    /// One register of dimension 2^(n − 2) per qubit (total 2^(n(n − 1))),
    /// each labelled by that qubit's occurrence number.
    Product,
}

impl std::str::FromStr for AncillaReading {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Self::Linear),
            "product" => Ok(Self::Product),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown ancilla reading {other:?}, expected linear or product"),
            }),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructedFamily {
    pub family: MeasurementFamily,
    pub reading: AncillaReading,
    pub ancilla_dims: Vec<usize>,
    /// Operators whose occurrence number exceeded the register and wrapped.
    pub wrapped_labels: usize,
    pub h: EventGraph,
}

impl ConstructedFamily {
    /// Confusable pairs `((message, outcome), …)` from the edges of H(G).
    pub fn confusable_pairs(&self) -> Vec<(OperatorIndex, OperatorIndex)> {
        let at = |v: usize| {
            let m = self.h.events()[v].stab_index;
            (m, v - self.h.clique(m).start)
        };
        let nv = self.h.vertex_count();
        (0..nv)
            .flat_map(|u| (u + 1..nv).map(move |w| (u, w)))
            .filter(|&(u, w)| self.h.adjacent(u, w))
            .map(|(u, w)| (at(u), at(w)))
            .collect()
    }
}

/// Builds one operator per event of each stabilizer: eigenprojectors on the
/// support, identity elsewhere, and ancilla labels from occurrence numbers.
pub fn build_measurement_family(
    graph: &Graph,
    reading: AncillaReading,
) -> Result<ConstructedFamily> {
    let n = graph.n();
    if n > MAX_CONSTRUCTION_QUBITS {
        return Err(Error::Capability {
            what: "measurement construction qubit count",
            got: n,
            limit: MAX_CONSTRUCTION_QUBITS,
        });
    }
    let h = EventGraph::build(graph)?;
    let ancilla_dims = match reading {
        AncillaReading::Linear => vec![n - 1],
        AncillaReading::Product => vec![1 << (n - 2); n],
    };
    let mut wrapped = 0;
    let mut messages = Vec::with_capacity(h.clique_count());
    for idx in 0..h.clique_count() {
        let s = &h.group().elements()[idx];
        let mut seen: BTreeMap<(usize, bool), usize> = BTreeMap::new();
        let mut ops = Vec::new();
        for v in h.clique(idx) {
            let outcome = h.events()[v].outcome_mask;
            let mut matrix = vec![vec![ExactScalar::ONE]];
            let mut labels: Vec<Option<usize>> = Vec::with_capacity(n);
            for k in 0..n {
                let letter = s.letter(k);
                let minus = outcome >> k & 1 == 1;
                // qubit k is bit k of the system index, so it is the least significant factor so far
                let factor: Matrix = match letter {
                    Letter::I => {
                        labels.push(None);
                        identity(2)
                    }
                    l => {
                        let count = seen.entry((k, minus)).or_insert(0);
                        labels.push(Some(*count));
                        *count += 1;
                        eigen_projector(l, minus)
                            .iter()
                            .map(|r| r.to_vec())
                            .collect()
                    }
                };
                matrix = kron(&factor, &matrix);
            }
            let ancilla = match reading {
                AncillaReading::Linear => {
                    let last = labels.iter().rev().find_map(|l| *l).unwrap_or(0);
                    if last >= n - 1 {
                        wrapped += 1;
                    }
                    vec![AncillaFactor::Fixed(last % (n - 1))]
                }
                AncillaReading::Product => labels
                    .iter()
                    .map(|l| match l {
                        Some(x) => AncillaFactor::Fixed(*x),
                        None => AncillaFactor::Identity,
                    })
                    .collect(),
            };
            ops.push(ProjectorExact {
                matrix,
                ancilla_dims: ancilla_dims.clone(),
                ancilla,
            });
        }
        messages.push(ops);
    }
    Ok(ConstructedFamily {
        family: MeasurementFamily { messages },
        reading,
        ancilla_dims,
        wrapped_labels: wrapped,
        h,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MessageSummary {
    pub message: usize,
    pub word: String,
    pub operators: usize,
    pub ranks: Vec<i128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub graph: String,
    pub reading: AncillaReading,
    pub ancilla_dims: Vec<usize>,
    pub dimension: usize,
    pub wrapped_labels: usize,
    pub upper_bound: u64,
    pub messages: Vec<MessageSummary>,
    pub verdict: ProtocolVerdict,
}

/// Builds the family for `graph` and runs every exact check on it.
pub fn capacity_report(graph: &Graph, reading: AncillaReading) -> Result<CapacityReport> {
    let built = build_measurement_family(graph, reading)?;
    let verdict = verify_projectors(&built.family)
        .merge(verify_orthogonality(
            &built.family,
            &built.confusable_pairs(),
        )?)
        .merge(verify_completeness(&built.family)?);
    let messages = built
        .family
        .messages
        .iter()
        .enumerate()
        .map(|(m, ops)| MessageSummary {
            message: m,
            word: built.h.group().elements()[m].to_string(),
            operators: ops.len(),
            ranks: ops
                .iter()
                .map(|p| p.trace().as_integer().unwrap_or(-1))
                .collect(),
        })
        .collect();
    Ok(CapacityReport {
        graph: graph.to_edge_list(),
        reading,
        dimension: built.family.dimension().unwrap_or(0),
        ancilla_dims: built.ancilla_dims,
        wrapped_labels: built.wrapped_labels,
        upper_bound: capacity_upper_bound(graph)?,
        messages,
        verdict,
    })
}

/// The entanglement-assisted one-shot bound ϑ(H(G)) = 2^n − 1, taken from
/// the exact sandwich certificate.
pub fn capacity_upper_bound(graph: &Graph) -> Result<u64> {
    let cert = crate::parameters::sandwich_certificate(graph)?;
    cert.upper_value
        .as_integer()
        .map(|v| v as u64)
        .ok_or_else(|| Error::Internal("certificate value is not an integer".into()))
}

/// Matrix entry in fixture files: an integer, or `[a, b, c, d, k]` for
/// `(a + b√2 + i(c + d√2)) / 2^k`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FixtureEntry {
    Int(i64),
    Parts([i64; 5]),
}

impl FixtureEntry {
    fn value(self) -> Result<ExactScalar> {
        match self {
            Self::Int(v) => Ok(ExactScalar::from_int(v as i128)),
            Self::Parts([a, b, c, d, k]) => {
                if !(0..=64).contains(&k) {
                    return Err(Error::Fixture(format!("exponent {k} out of range")));
                }
                Ok(ExactScalar::new(
                    a as i128, b as i128, c as i128, d as i128, k as u32,
                ))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureExpectation {
    pub projectors: bool,
    pub orthogonality: bool,
    pub completeness: bool,
}

/// A hand-written measurement family with its expected verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasurementFixture {
    pub name: String,
    pub dimension: usize,
    pub expect: FixtureExpectation,
    pub messages: Vec<Vec<Vec<Vec<FixtureEntry>>>>,
    #[serde(default)]
    pub confusable: Vec<[[usize; 2]; 2]>,
}

impl MeasurementFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Fixture(e.to_string()))
    }

    pub fn family(&self) -> Result<MeasurementFamily> {
        let messages = self
            .messages
            .iter()
            .map(|ops| {
                ops.iter()
                    .map(|rows| {
                        if rows.len() != self.dimension
                            || rows.iter().any(|r| r.len() != self.dimension)
                        {
                            return Err(Error::Fixture(format!(
                                "{}: operator is not {d}x{d}",
                                self.name,
                                d = self.dimension
                            )));
                        }
                        let matrix = rows
                            .iter()
                            .map(|r| r.iter().map(|e| e.value()).collect::<Result<Vec<_>>>())
                            .collect::<Result<Matrix>>()?;
                        Ok(ProjectorExact::system(matrix))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MeasurementFamily { messages })
    }

    pub fn verify(&self) -> Result<ProtocolVerdict> {
        let family = self.family()?;
        let pairs: Vec<_> = self
            .confusable
            .iter()
            .map(|[a, b]| ((a[0], a[1]), (b[0], b[1])))
            .collect();
        Ok(verify_projectors(&family)
            .merge(verify_orthogonality(&family, &pairs)?)
            .merge(verify_completeness(&family)?))
    }

    /// True when the verdict agrees with the recorded expectation.
    pub fn classified_correctly(&self) -> Result<bool> {
        let v = self.verify()?;
        Ok(v.projectors_ok == self.expect.projectors
            && v.orthogonality_ok == self.expect.orthogonality
            && v.completeness_ok == self.expect.completeness)
    }
}
