//! n-qubit Pauli words with exact phase tracking and graph-state stabilizer groups.
//!
//! A word is `i^phase · P_1 ⊗ … ⊗ P_n` where `P_k` is read off two bitmasks:
//! `I` (neither bit), `X` (x only), `Z` (z only), `Y` (both). Position `k`
//! (1-based in text) is bit `k-1`.

use std::fmt;

use crate::bits::ones;
use crate::error::{Error, Result};
use crate::graph::{low_mask, Graph, MAX_VERTICES};

/// Largest qubit count for which the full stabilizer group is enumerated.
pub const MAX_GROUP_QUBITS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    /// Index among the measured letters X, Y, Z (0, 1, 2); `None` for I.
    pub fn measured_index(self) -> Option<usize> {
        match self {
            Letter::I => None,
            Letter::X => Some(0),
            Letter::Y => Some(1),
            Letter::Z => Some(2),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: u64,
    z: u64,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Self {
            n,
            x: 0,
            z: 0,
            phase: 0,
        })
    }

    /// Builds a word from masks; bits beyond `n` are rejected.
    pub fn from_masks(n: usize, x: u64, z: u64, phase: u8) -> Result<Self> {
        check_width(n)?;
        let outside = !low_mask(n);
        if (x | z) & outside != 0 {
            return Err(Error::Internal(format!(
                "Pauli masks {x:#x}/{z:#x} exceed {n} qubits"
            )));
        }
        Ok(Self {
            n,
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Parses words such as `"XZI"`, `"-YXY"`, `"+ZXZ"`, `"iXY"`, `"-iZ"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |position: usize, message: String| Error::Parse { position, message };
        let mut s = text.trim();
        let mut phase = 0u8;
        if let Some(rest) = s.strip_prefix('-').or_else(|| s.strip_prefix('−')) {
            phase = 2;
            s = rest;
        } else if let Some(rest) = s.strip_prefix('+') {
            s = rest;
        }
        if let Some(rest) = s.strip_prefix('i') {
            phase = (phase + 1) % 4;
            s = rest;
        }
        let letters: Vec<char> = s.chars().collect();
        check_width(letters.len())?;
        let (mut x, mut z) = (0u64, 0u64);
        for (k, c) in letters.iter().enumerate() {
            let letter = match c {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                other => return Err(bad(k, format!("unexpected character {other:?}"))),
            };
            let (bx, bz) = letter.bits();
            x |= (bx as u64) << k;
            z |= (bz as u64) << k;
        }
        Self::from_masks(letters.len(), x, z, phase)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_mask(&self) -> u64 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Exponent of `i` in the global coefficient.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    #[inline]
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.support().count_ones() as usize
    }

    /// True when the coefficient is −1.
    #[inline]
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    /// Letter at 0-based position `k`.
    pub fn letter(&self, k: usize) -> Letter {
        Letter::from_bits(self.x >> k & 1 == 1, self.z >> k & 1 == 1)
    }

    /// Positions carrying X, Y, Z respectively.
    pub fn letter_masks(&self) -> [u64; 3] {
        [self.x & !self.z, self.x & self.z, self.z & !self.x]
    }

    /// Word letters without the coefficient, e.g. `"YXY"`.
    pub fn letters(&self) -> String {
        (0..self.n).map(|k| self.letter(k).as_char()).collect()
    }

    pub fn negated(&self) -> Self {
        Self {
            phase: (self.phase + 2) % 4,
            ..*self
        }
    }

    pub fn with_phase(&self, phase: u8) -> Self {
        Self {
            phase: phase % 4,
            ..*self
        }
    }

    /// Matrix product `self · other`, position by position.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let [xa, ya, za] = self.letter_masks();
        let [xb, yb, zb] = other.letter_masks();
        // X·Y = iZ, Y·Z = iX, Z·X = iY and the reversed orders give −i
        let plus = (xa & yb) | (ya & zb) | (za & xb);
        let minus = (ya & xb) | (za & yb) | (xa & zb);
        let phase =
            (self.phase as u32 + other.phase as u32 + plus.count_ones() + 3 * minus.count_ones())
                % 4;
        Ok(Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: phase as u8,
        })
    }

    /// Two Pauli words commute iff their symplectic product vanishes.
    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_width(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capability {
            what: "qubit count",
            got: n,
            limit: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Generator `g_i = X_i ⊗ Z_{N(i)}` of the graph state.
pub fn generator_from_graph(graph: &Graph, i: usize) -> Result<PauliOperator> {
    graph.check_vertex(i)?;
    PauliOperator::from_masks(graph.n(), 1 << i, graph.neighbours(i), 0)
}

/// The 2ⁿ−1 non-identity elements of a graph-state stabilizer group.
///
/// Element `A` (a nonempty generator subset, as a bitmask) is stored at index
/// `A − 1`, so enumeration order is binary counting over generator indices.
/// Since every generator carries a single X-type bit at its own vertex, the
/// X-part of element `A` is exactly `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    elements: Vec<PauliOperator>,
}

impl StabilizerGroup {
    pub fn from_graph(graph: &Graph) -> Result<Self> {
        let n = graph.n();
        if n == 0 {
            return Err(Error::TooSmall { min: 1, got: 0 });
        }
        if n > MAX_GROUP_QUBITS {
            return Err(Error::Capability {
                what: "stabilizer group enumeration qubit count",
                got: n,
                limit: MAX_GROUP_QUBITS,
            });
        }
        let generators = (0..n)
            .map(|i| generator_from_graph(graph, i))
            .collect::<Result<Vec<_>>>()?;
        let size = (1usize << n) - 1;
        let mut elements: Vec<PauliOperator> = Vec::with_capacity(size);
        for subset in 1..=size {
            let top = usize::BITS - 1 - subset.leading_zeros();
            let rest = subset & !(1 << top);
            let element = if rest == 0 {
                generators[top as usize]
            } else {
                elements[rest - 1].multiply(&generators[top as usize])?
            };
            if element.phase % 2 == 1 {
                return Err(Error::Internal(format!(
                    "stabilizer element {element} for subset {subset:#b} has an imaginary coefficient"
                )));
            }
            elements.push(element);
        }
        Ok(Self { n, elements })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PauliOperator] {
        &self.elements
    }

    /// Element for a nonempty generator subset bitmask.
    pub fn element(&self, subset: u64) -> Option<&PauliOperator> {
        if subset == 0 {
            return None;
        }
        self.elements.get(subset as usize - 1)
    }

    /// Index of the element with the given letters (ignoring sign), if present.
    pub fn index_of(&self, op: &PauliOperator) -> Option<usize> {
        let idx = op.x_mask() as usize;
        let candidate = self.elements.get(idx.checked_sub(1)?)?;
        (candidate.n == op.n && candidate.z == op.z && candidate.x == op.x).then_some(idx - 1)
    }

    pub fn generators(&self) -> impl Iterator<Item = &PauliOperator> {
        (0..self.n).map(move |i| &self.elements[(1usize << i) - 1])
    }

    /// Number of elements with coefficient −1.
    pub fn beta(&self) -> usize {
        self.elements.iter().filter(|s| s.is_negative()).count()
    }

    /// Minimum weight over all non-identity elements (the code distance).
    pub fn min_distance(&self) -> usize {
        self.elements.iter().map(|s| s.weight()).min().unwrap_or(0)
    }

    pub fn max_weight(&self) -> usize {
        self.elements.iter().map(|s| s.weight()).max().unwrap_or(0)
    }

    /// `counts[w]` = number of elements of weight `w`.
    pub fn weight_distribution(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n + 1];
        for s in &self.elements {
            counts[s.weight()] += 1;
        }
        counts
    }
}

/// Generator subset of an element, read from its X-part.
pub fn subset_of(op: &PauliOperator) -> u64 {
    op.x_mask()
}

/// Iterates generator indices in a subset mask.
pub fn subset_members(subset: u64) -> impl Iterator<Item = usize> {
    ones(subset)
}
