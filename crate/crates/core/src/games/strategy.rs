use super::network::Network;
use super::rules::{Demand, Response, Rules};
use super::solver::after_deletion;
use super::{Board, GameConfig, GameResult, Winner};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ForallMove {
    /// Node removed first (pebble budgets), in the position's numbering.
    pub delete: Option<usize>,
    /// In the numbering of the canonicalized post-deletion network.
    pub demand: Demand,
}

/// Winning moves keyed by canonical position.
///
/// An ∃ entry recorded with `r` rounds left stays winning for fewer rounds;
/// a ∀ entry recorded with `r` rounds stays winning for more.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Strategy {
    pub exists: BTreeMap<(Network, Demand), (Response, usize)>,
    pub forall: BTreeMap<Network, (ForallMove, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub valid: bool,
    pub failure: Option<String>,
    pub positions_checked: u64,
}

struct Replay<'a> {
    rules: &'a Rules,
    strategy: &'a Strategy,
    seen: HashSet<(Network, usize)>,
}

fn describe(net: &Network) -> String {
    format!("{:?}", net.labels())
}

impl Replay<'_> {
    fn exists(&mut self, pos: &Network, r: usize) -> std::result::Result<(), String> {
        if r == 0 || !self.seen.insert((pos.clone(), r)) {
            return Ok(());
        }
        for del in self.rules.deletions(pos) {
            let after = after_deletion(pos, del);
            for d in self.rules.all_demands(&after) {
                let resp = match self.strategy.exists.get(&(after.clone(), d)) {
                    Some((resp, rr)) if *rr >= r => resp,
                    _ => return Err(format!("no ∃ answer to {d:?} at {} with {r} rounds left", describe(&after))),
                };
                if !self.rules.response_ok(&after, &d, resp) {
                    return Err(format!("illegal ∃ answer {resp:?} to {d:?} at {}", describe(&after)));
                }
                let child = self.rules.apply(&after, resp).canonical().0;
                self.exists(&child, r - 1)?;
            }
        }
        Ok(())
    }

    fn forall(&mut self, pos: &Network, r: usize) -> std::result::Result<(), String> {
        if !self.seen.insert((pos.clone(), r)) {
            return Ok(());
        }
        if r == 0 {
            return Err(format!("∃ survives at {}", describe(pos)));
        }
        let mv = match self.strategy.forall.get(pos) {
            Some((mv, rr)) if *rr <= r => mv,
            _ => return Err(format!("no ∀ move at {} with {r} rounds left", describe(pos))),
        };
        if !self.rules.deletions(pos).contains(&mv.delete) {
            return Err(format!("illegal deletion {:?} at {}", mv.delete, describe(pos)));
        }
        let after = after_deletion(pos, mv.delete);
        if !self.rules.demand_ok(&after, &mv.demand) {
            return Err(format!("illegal demand {:?} at {}", mv.demand, describe(&after)));
        }
        for resp in self.rules.responses(&after, &mv.demand) {
            let child = self.rules.apply(&after, &resp).canonical().0;
            self.forall(&child, r - 1)?;
        }
        Ok(())
    }
}

pub(crate) fn verify(
    board: Board<'_>,
    cfg: &GameConfig,
    winner: Winner,
    start: Option<&Network>,
    strategy: &Strategy,
    rounds: usize,
) -> Verification {
    let fail = |msg: String| Verification { valid: false, failure: Some(msg), positions_checked: 0 };
    let rules = match board.rules(cfg) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let starts = match board.starts(&rules, cfg) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let mut replay = Replay { rules: &rules, strategy, seen: HashSet::new() };
    let outcome = match winner {
        Winner::Exists => starts.iter().try_for_each(|s| replay.exists(s, rounds)),
        Winner::Forall => {
            let chosen = match (start, &cfg.start) {
                (_, Some(_)) => Some(starts[0].clone()),
                (Some(n), None) => {
                    let c = n.canonical().0;
                    starts.contains(&c).then_some(c)
                }
                (None, None) => None,
            };
            match chosen {
                Some(s) => replay.forall(&s, rounds),
                None => Err("∀ strategy has no legal opening".into()),
            }
        }
    };
    let positions_checked = replay.seen.len() as u64;
    match outcome {
        Ok(()) => Verification { valid: true, failure: None, positions_checked },
        Err(msg) => Verification { valid: false, failure: Some(msg), positions_checked },
    }
}

/// The winner's half of a solved game, in a line-oriented text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub winner: Winner,
    pub rounds: usize,
    pub start: Option<Network>,
    pub strategy: Strategy,
}

const HEADER: &str = "atomlab-strategy v1";

fn write_net(s: &mut String, n: &Network) {
    write!(s, "{}", n.node_count()).unwrap();
    for l in n.labels() {
        write!(s, " {l}").unwrap();
    }
}

fn write_demand(s: &mut String, d: &Demand) {
    write!(s, "{} {} {} {}", d.x, d.y, d.a, d.b).unwrap();
}

impl Certificate {
    pub fn from_result(res: &GameResult) -> Self {
        let mut strategy = Strategy::default();
        match res.winner {
            Winner::Exists => strategy.exists = res.strategy.exists.clone(),
            Winner::Forall => strategy.forall = res.strategy.forall.clone(),
        }
        Certificate { winner: res.winner, rounds: res.rounds, start: res.start.clone(), strategy }
    }

    pub fn verify(&self, board: Board<'_>, cfg: &GameConfig) -> Verification {
        verify(board, cfg, self.winner, self.start.as_ref(), &self.strategy, cfg.rounds)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{HEADER}\nwinner {}\nrounds {}\nstart ", self.winner, self.rounds);
        match &self.start {
            Some(n) => write_net(&mut s, n),
            None => s.push('-'),
        }
        s.push('\n');
        for (pos, (mv, r)) in &self.strategy.forall {
            s.push_str("A ");
            write_net(&mut s, pos);
            write!(s, " : {r} : ").unwrap();
            match mv.delete {
                Some(w) => write!(s, "{w} ").unwrap(),
                None => s.push_str("- "),
            }
            write_demand(&mut s, &mv.demand);
            s.push('\n');
        }
        for ((pos, d), (resp, r)) in &self.strategy.exists {
            s.push_str("E ");
            write_net(&mut s, pos);
            s.push_str(" : ");
            write_demand(&mut s, d);
            write!(s, " : {r} : ").unwrap();
            match resp {
                Response::Witness(z) => write!(s, "w {z}").unwrap(),
                Response::Node(col) => {
                    s.push('n');
                    for l in col {
                        write!(s, " {l}").unwrap();
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}

fn nums(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("`{t}`: {e}") }))
        .collect()
}

fn parse_net(line: usize, text: &str) -> Result<Network> {
    let v = nums(line, text)?;
    let (&n, labels) = v.split_first().ok_or(Error::Parse { line, msg: "empty network".into() })?;
    Network::from_labels(n, labels.to_vec()).map_err(|e| Error::Parse { line, msg: e.to_string() })
}

fn parse_demand(line: usize, text: &str) -> Result<Demand> {
    match nums(line, text)?[..] {
        [x, y, a, b] => Ok(Demand { x, y, a, b }),
        _ => Err(Error::Parse { line, msg: format!("bad demand `{text}`") }),
    }
}

fn parse_one(line: usize, text: &str) -> Result<usize> {
    text.trim().parse().map_err(|e| Error::Parse { line, msg: format!("`{text}`: {e}") })
}

/// Reads the output of [`Certificate::to_text`].
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut field = |name: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((i, l)) if l.starts_with(name) => Ok((i, l[name.len()..].trim().to_string())),
            Some((i, l)) => Err(Error::Parse { line: i, msg: format!("expected `{name}`, found `{l}`") }),
            None => Err(Error::Parse { line: 0, msg: format!("missing `{name}`") }),
        }
    };
    let (i, rest) = field(HEADER)?;
    if !rest.is_empty() {
        return Err(Error::Parse { line: i, msg: "unexpected text after header".into() });
    }
    let (i, w) = field("winner")?;
    let winner = match w.as_str() {
        "exists" => Winner::Exists,
        "forall" => Winner::Forall,
        _ => return Err(Error::Parse { line: i, msg: format!("unknown winner `{w}`") }),
    };
    let (i, r) = field("rounds")?;
    let rounds = parse_one(i, &r)?;
    let (i, s) = field("start")?;
    let start = if s == "-" { None } else { Some(parse_net(i, &s)?) };
    let mut strategy = Strategy::default();
    for (i, l) in lines {
        let parts: Vec<&str> = l[1..].split(':').collect();
        match (l.as_bytes()[0], parts.as_slice()) {
            (b'A', [pos, r, mv]) => {
                let mut toks = mv.split_whitespace();
                let delete = match toks.next() {
                    Some("-") => None,
                    Some(w) => Some(parse_one(i, w)?),
                    None => return Err(Error::Parse { line: i, msg: "empty move".into() }),
                };
                let demand = parse_demand(i, &toks.collect::<Vec<_>>().join(" "))?;
                strategy.forall.insert(parse_net(i, pos)?, (ForallMove { delete, demand }, parse_one(i, r)?));
            }
            (b'E', [pos, d, r, resp]) => {
                let resp = resp.trim();
                let response = if let Some(z) = resp.strip_prefix('w') {
                    Response::Witness(parse_one(i, z)?)
                } else if let Some(col) = resp.strip_prefix('n') {
                    Response::Node(nums(i, col)?)
                } else {
                    return Err(Error::Parse { line: i, msg: format!("bad response `{resp}`") });
                };
                strategy.exists.insert((parse_net(i, pos)?, parse_demand(i, d)?), (response, parse_one(i, r)?));
            }
            _ => return Err(Error::Parse { line: i, msg: format!("unrecognised line `{l}`") }),
        }
    }
    Ok(Certificate { winner, rounds, start, strategy })
}
