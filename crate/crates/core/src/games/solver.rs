use super::network::Network;
use super::rules::{Demand, Response, Rules};
use super::strategy::{ForallMove, Strategy};
use super::{Board, GameConfig, GameResult, Winner};
use crate::error::Result;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

struct Solver<'a> {
    rules: &'a Rules,
    memo: Mutex<HashMap<(Network, usize), bool>>,
    exists: Mutex<HashMap<(Network, Demand), (Response, usize)>>,
    forall: Mutex<HashMap<Network, (ForallMove, usize)>>,
}

/// The network after ∀'s optional deletion, canonicalized.
pub(crate) fn after_deletion(pos: &Network, del: Option<usize>) -> Network {
    match del {
        Some(w) => pos.delete(w).canonical().0,
        None => pos.clone(),
    }
}

impl Solver<'_> {
    /// Whether ∃ survives `r` more rounds from canonical `pos`.
    fn value(&self, pos: &Network, r: usize) -> bool {
        if r == 0 {
            return true;
        }
        if let Some(&v) = self.memo.lock().unwrap().get(&(pos.clone(), r)) {
            return v;
        }
        let mut win = true;
        'moves: for del in self.rules.deletions(pos) {
            let after = after_deletion(pos, del);
            for d in self.rules.all_demands(&after) {
                if !self.answer(&after, &d, r) {
                    self.record_forall(pos, ForallMove { delete: del, demand: d }, r);
                    win = false;
                    break 'moves;
                }
            }
        }
        self.memo.lock().unwrap().insert((pos.clone(), r), win);
        win
    }

    /// Whether ∃ has an answer to `d` leaving a position she wins with
    /// `r - 1` rounds.
    fn answer(&self, after: &Network, d: &Demand, r: usize) -> bool {
        for resp in self.rules.responses(after, d) {
            let child = self.rules.apply(after, &resp).canonical().0;
            if self.value(&child, r - 1) {
                let mut ex = self.exists.lock().unwrap();
                let entry = ex.entry((after.clone(), *d)).or_insert((resp.clone(), r));
                if entry.1 < r {
                    *entry = (resp, r);
                }
                return true;
            }
        }
        false
    }

    fn record_forall(&self, pos: &Network, mv: ForallMove, r: usize) {
        let mut fa = self.forall.lock().unwrap();
        let entry = fa.entry(pos.clone()).or_insert((mv.clone(), r));
        if entry.1 > r {
            *entry = (mv, r);
        }
    }
}

pub(crate) fn solve(board: Board<'_>, cfg: &GameConfig) -> Result<GameResult> {
    let t0 = Instant::now();
    let rules = board.rules(cfg)?;
    let starts = board.starts(&rules, cfg)?;
    let r = cfg.rounds;
    let solver = Solver {
        rules: &rules,
        memo: Mutex::new(HashMap::new()),
        exists: Mutex::new(HashMap::new()),
        forall: Mutex::new(HashMap::new()),
    };
    let mut start = None;
    let mut winner = Winner::Exists;
    if r > 0 {
        // Root ∀ moves of every opening, solved in parallel and without
        // short-circuiting so the explored set is schedule independent.
        let mut tasks = Vec::new();
        for (si, s) in starts.iter().enumerate() {
            for del in rules.deletions(s) {
                let after = after_deletion(s, del);
                for d in rules.all_demands(&after) {
                    tasks.push((si, del, after.clone(), d));
                }
            }
        }
        let answered: Vec<bool> = tasks.par_iter().map(|(_, _, after, d)| solver.answer(after, d, r)).collect();
        for (si, s) in starts.iter().enumerate() {
            let lost = tasks.iter().zip(&answered).find(|((i, ..), ok)| *i == si && !**ok);
            if let Some(((_, del, _, d), _)) = lost {
                solver.record_forall(s, ForallMove { delete: *del, demand: *d }, r);
                if winner == Winner::Exists {
                    winner = Winner::Forall;
                    start = cfg.start.is_none().then(|| s.clone());
                }
            }
            solver.memo.lock().unwrap().insert((s.clone(), r), lost.is_none());
        }
    }
    let positions_explored = solver.memo.lock().unwrap().len() as u64;
    let strategy = Strategy {
        exists: solver.exists.into_inner().unwrap().into_iter().collect(),
        forall: solver.forall.into_inner().unwrap().into_iter().collect(),
    };
    Ok(GameResult { winner, rounds: r, start, strategy, positions_explored, elapsed: t0.elapsed() })
}
