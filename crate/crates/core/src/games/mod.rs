//! Bounded-round representability games on atomic networks.
//!
//! ∀ demands a witness for a pair of nodes; ∃ answers with an existing node
//! or extends the network by one node. ∃ wins by surviving the round bound.
//! Positions are canonicalized up to isomorphism and memoized.

mod network;
mod rules;
mod solver;
mod strategy;

pub use network::Network;
pub use rules::{Demand, Response};
pub use strategy::{parse_certificate, Certificate, ForallMove, Strategy, Verification};

use crate::cylindric::CaAtomStructure;
use crate::error::{Error, Result};
use crate::ra::{AtomId, AtomStructure};
use rules::Rules;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Triangle,
    /// Triangle game where ∀ removes a node whenever the budget is reached.
    Pebble,
    /// Cylindrifier game on a dimension-3 basic-matrix atom structure.
    Ca,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Triangle => "triangle",
            Variant::Pebble => "pebble",
            Variant::Ca => "ca",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle" => Ok(Variant::Triangle),
            "pebble" => Ok(Variant::Pebble),
            "ca" => Ok(Variant::Ca),
            _ => Err(Error::InvalidParameter(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Start {
    Atom(AtomId),
    Network(Network),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub rounds: usize,
    /// `None` is unbounded.
    pub node_budget: Option<usize>,
    pub variant: Variant,
    /// `None` lets ∀ pick the opening edge.
    pub start: Option<Start>,
}

impl GameConfig {
    pub fn new(variant: Variant, rounds: usize) -> Self {
        GameConfig { rounds, node_budget: None, variant, start: None }
    }

    pub fn budget(mut self, k: usize) -> Self {
        self.node_budget = Some(k);
        self
    }

    pub fn start_atom(mut self, a: AtomId) -> Self {
        self.start = Some(Start::Atom(a));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    Exists,
    Forall,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Exists => "exists",
            Winner::Forall => "forall",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub winner: Winner,
    pub rounds: usize,
    /// The opening network ∀ wins from, when he picked it.
    pub start: Option<Network>,
    #[serde(skip)]
    pub strategy: Strategy,
    /// Distinct `(position, rounds)` pairs evaluated.
    pub positions_explored: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl GameResult {
    pub fn certificate(&self) -> Certificate {
        Certificate::from_result(self)
    }
}

/// The structure a game is played on.
#[derive(Debug, Clone, Copy)]
pub enum Board<'a> {
    Relation(&'a AtomStructure),
    Cylindric(&'a CaAtomStructure),
}

impl Board<'_> {
    fn base(&self) -> &AtomStructure {
        match self {
            Board::Relation(s) => s,
            Board::Cylindric(ca) => &ca.base,
        }
    }

    fn rules(&self, cfg: &GameConfig) -> Result<Rules> {
        rules::check_variant(cfg.variant, cfg.node_budget)?;
        match (self, cfg.variant) {
            (Board::Relation(s), Variant::Triangle | Variant::Pebble) => Ok(Rules::triangle(s, cfg.node_budget)),
            (Board::Cylindric(ca), Variant::Ca) => Rules::ca(ca, cfg.node_budget),
            (_, v) => Err(Error::InvalidParameter(format!("variant `{v}` does not match the structure"))),
        }
    }

    /// Canonical opening networks, in order and without repeats.
    fn starts(&self, rules: &Rules, cfg: &GameConfig) -> Result<Vec<Network>> {
        let s = self.base();
        let nets = match &cfg.start {
            Some(Start::Atom(a)) => {
                if *a >= s.atom_count() || !rules.pair_ok(*a) {
                    return Err(Error::InconsistentStart(format!("atom {a} cannot label an edge")));
                }
                vec![Network::edge(s, *a)]
            }
            Some(Start::Network(n)) => {
                if !rules.network_ok(n) {
                    return Err(Error::InconsistentStart("start network is not consistent".into()));
                }
                if rules.budget.is_some_and(|k| n.node_count() > k) {
                    return Err(Error::InconsistentStart("start network exceeds the node budget".into()));
                }
                vec![n.clone()]
            }
            None => rules.starts().into_iter().map(|a| Network::edge(s, a)).collect(),
        };
        let mut out: Vec<Network> = Vec::new();
        for n in nets {
            let c = n.canonical().0;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        if out.is_empty() {
            return Err(Error::InconsistentStart("no atom can label an edge".into()));
        }
        Ok(out)
    }
}

/// Triangle game, plain or pebbled.
pub fn solve_triangle_game(s: &AtomStructure, cfg: &GameConfig) -> Result<GameResult> {
    solver::solve(Board::Relation(s), cfg)
}

/// Cylindrifier game on a dimension-3 cylindric atom structure.
pub fn solve_ca_game(ca: &CaAtomStructure, cfg: &GameConfig) -> Result<GameResult> {
    solver::solve(Board::Cylindric(ca), cfg)
}

/// Replays every opponent line against the recorded strategy for
/// `cfg.rounds` rounds.
pub fn verify_strategy(board: Board<'_>, cfg: &GameConfig, res: &GameResult) -> Verification {
    verify_strategy_rounds(board, cfg, res, cfg.rounds)
}

/// As [`verify_strategy`] with an explicit replay bound.
pub fn verify_strategy_rounds(board: Board<'_>, cfg: &GameConfig, res: &GameResult, rounds: usize) -> Verification {
    strategy::verify(board, cfg, res.winner, res.start.as_ref(), &res.strategy, rounds)
}
