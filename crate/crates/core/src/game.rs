//! The n-player stabilizer game: each player receives one letter of a
//! stabilizer element and answers ±1; the players win when the product of
//! the answers on the support equals the element's sign.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::amplitudes::{expectation, outcome_distribution, StateVector};
use crate::error::Result;
use crate::graph::Graph;
use crate::parameters::{alpha_by_strategies, satisfied_count, Strategy};
use crate::pauli::StabilizerGroup;

/// Inputs are the stabilizer elements, drawn uniformly.
#[derive(Debug, Clone)]
pub struct GraphGame {
    pub graph: Graph,
    pub group: StabilizerGroup,
}

impl GraphGame {
    pub fn new(graph: &Graph) -> Result<Self> {
        Ok(Self {
            graph: graph.clone(),
            group: StabilizerGroup::from_graph(graph)?,
        })
    }

    pub fn n(&self) -> usize {
        self.group.n()
    }

    pub fn input_count(&self) -> usize {
        self.group.len()
    }
}

/// Winning probability of a deterministic strategy.
pub fn evaluate_classical(game: &GraphGame, t: &Strategy) -> Ratio<u64> {
    Ratio::new(
        satisfied_count(&game.group, t) as u64,
        game.input_count() as u64,
    )
}

/// Best classical winning probability, with a strategy attaining it.
pub fn classical_value(game: &GraphGame) -> Result<(Ratio<u64>, Strategy)> {
    let (alpha, t) = alpha_by_strategies(&game.group)?;
    Ok((Ratio::new(alpha as u64, game.input_count() as u64), t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantumCheck {
    /// Every ⟨ψ|s|ψ⟩ equals 1.
    pub expectations_ok: bool,
    /// Every outcome with nonzero probability has the element's sign.
    pub outcomes_ok: bool,
    /// First input failing either test.
    pub witness: Option<String>,
}

impl QuantumCheck {
    pub fn perfect(&self) -> bool {
        self.expectations_ok && self.outcomes_ok
    }
}

/// Runs both perfect-play tests for players sharing `psi` and measuring
/// their letter.
pub fn check_quantum_strategy(game: &GraphGame, psi: &StateVector) -> Result<QuantumCheck> {
    let results: Vec<(bool, bool)> = game
        .group
        .elements()
        .par_iter()
        .map(|s| {
            let e = expectation(psi, s)?.is_one();
            let dist = outcome_distribution(psi, s)?;
            let parity = s.is_negative() as u32;
            let o = dist
                .iter()
                .enumerate()
                .all(|(mask, p)| p.is_zero() || (mask as u64).count_ones() % 2 == parity);
            Ok((e, o))
        })
        .collect::<Result<_>>()?;
    let witness = results
        .iter()
        .position(|&(e, o)| !(e && o))
        .map(|i| game.group.elements()[i].to_string());
    Ok(QuantumCheck {
        expectations_ok: results.iter().all(|r| r.0),
        outcomes_ok: results.iter().all(|r| r.1),
        witness,
    })
}

/// Perfect play with the graph state of the game's graph.
pub fn verify_quantum_perfect(game: &GraphGame) -> Result<bool> {
    let psi = StateVector::graph_state(&game.graph)?;
    Ok(check_quantum_strategy(game, &psi)?.perfect())
}

#[derive(Debug, Clone, Serialize)]
pub struct GameCard {
    pub graph: String,
    pub players: usize,
    pub inputs: Vec<String>,
    pub rule: String,
    pub classical_value: String,
    pub best_strategy: String,
    pub quantum: QuantumCheck,
}

pub fn game_card(graph: &Graph) -> Result<GameCard> {
    let game = GraphGame::new(graph)?;
    let (value, t) = classical_value(&game)?;
    let psi = StateVector::graph_state(graph)?;
    Ok(GameCard {
        graph: graph.to_edge_list(),
        players: game.n(),
        inputs: game.group.elements().iter().map(ToString::to_string).collect(),
        rule: "uniform input s; answers of players given I are ignored; win iff the product of the other answers is the sign of s".into(),
        classical_value: value.to_string(),
        best_strategy: t.to_string(),
        quantum: check_quantum_strategy(&game, &psi)?,
    })
}
