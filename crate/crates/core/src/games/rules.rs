use super::network::Network;
use super::Variant;
use crate::cylindric::CaAtomStructure;
use crate::error::{Error, Result};
use crate::ra::{AtomId, AtomStructure};
use std::collections::HashSet;

/// A demand by ∀: a node `z` with `N(x, z) = a` and `N(z, y) = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Demand {
    pub x: usize,
    pub y: usize,
    pub a: AtomId,
    pub b: AtomId,
}

/// How ∃ answers a demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Response {
    /// An existing node already witnesses the demand.
    Witness(usize),
    /// A new node; entry `w` is `N(w, z)`.
    Node(Vec<AtomId>),
}

/// Everything the solver and the replay engine need to know about legal
/// play, independent of the variant.
#[derive(Debug, Clone)]
pub(crate) struct Rules {
    pub atoms: usize,
    pub identity: AtomId,
    pub conv: Vec<AtomId>,
    /// `tri[(p * atoms + q) * atoms + r]`: a triangle with `N(u,v) = p`,
    /// `N(v,w) = q`, `N(u,w) = r` is allowed in every node order.
    tri: Vec<bool>,
    /// Per label of `(x, y)`, the `(a, b)` pairs ∀ may demand.
    demands: Vec<Vec<(AtomId, AtomId)>>,
    /// ∃ may only answer with a new node.
    pub fresh_only: bool,
    pub budget: Option<usize>,
}

impl Rules {
    fn with_triangles(
        s: &AtomStructure,
        ok: impl Fn(AtomId, AtomId, AtomId) -> bool,
        fresh_only: bool,
        budget: Option<usize>,
    ) -> (Self, Vec<bool>) {
        let n = s.atom_count();
        let conv: Vec<AtomId> = (0..n).map(|a| s.converse(a)).collect();
        let mut tri = vec![false; n * n * n];
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    // labels between nodes u=0, v=1, w=2
                    let lab = |i: usize, j: usize| -> AtomId {
                        match (i, j) {
                            (0, 1) => p,
                            (1, 0) => conv[p],
                            (1, 2) => q,
                            (2, 1) => conv[q],
                            (0, 2) => r,
                            (2, 0) => conv[r],
                            _ => unreachable!(),
                        }
                    };
                    tri[(p * n + q) * n + r] = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
                        .iter()
                        .all(|&(i, j, k)| ok(lab(i, j), lab(j, k), lab(i, k)));
                }
            }
        }
        let rules =
            Rules { atoms: n, identity: s.identity(), conv, tri: tri.clone(), demands: Vec::new(), fresh_only, budget };
        (rules, tri)
    }

    pub fn triangle(s: &AtomStructure, budget: Option<usize>) -> Self {
        let (mut rules, _) = Self::with_triangles(s, |x, y, z| s.consistent(x, y, z), false, budget);
        let n = rules.atoms;
        rules.demands = (0..n)
            .map(|l| {
                let mut d = Vec::new();
                for a in 0..n {
                    for b in 0..n {
                        if s.consistent(a, b, l) {
                            d.push((a, b));
                        }
                    }
                }
                d
            })
            .collect();
        rules
    }

    pub fn ca(ca: &CaAtomStructure, budget: Option<usize>) -> Result<Self> {
        if ca.dim != 3 {
            return Err(Error::InvalidParameter(format!("cylindrifier games need dimension 3, got {}", ca.dim)));
        }
        if ca.atoms.is_empty() {
            return Err(Error::InvalidParameter("empty cylindric atom structure".into()));
        }
        let s = &ca.base;
        let members: HashSet<[AtomId; 3]> = ca.atoms.iter().map(|m| [m.upper[0], m.upper[1], m.upper[2]]).collect();
        // Upper entries are (0,1), (0,2), (1,2); the triangle callback gets
        // (N(i,j), N(j,k), N(i,k)).
        let (mut rules, _) = Self::with_triangles(s, |ij, jk, ik| members.contains(&[ij, ik, jk]), true, budget);
        let n = rules.atoms;
        let mut demands = vec![Vec::new(); n];
        for m in &ca.atoms {
            let d = (m.upper[1], s.converse(m.upper[2]));
            demands[m.upper[0]].push(d);
        }
        for d in &mut demands {
            d.sort_unstable();
            d.dedup();
        }
        rules.demands = demands;
        Ok(rules)
    }

    pub fn tri_ok(&self, p: AtomId, q: AtomId, r: AtomId) -> bool {
        self.tri[(p * self.atoms + q) * self.atoms + r]
    }

    /// A two-node network with this label is legal.
    pub fn pair_ok(&self, a: AtomId) -> bool {
        self.tri_ok(self.identity, a, a) && self.tri_ok(self.identity, self.identity, self.identity)
    }

    pub fn demands_for(&self, label: AtomId) -> &[(AtomId, AtomId)] {
        &self.demands[label]
    }

    pub fn network_ok(&self, net: &Network) -> bool {
        let n = net.node_count();
        (0..n).all(|i| net.label(i, i) == self.identity)
            && (0..n)
                .all(|i| (0..n).all(|j| net.label(i, j) < self.atoms && net.label(j, i) == self.conv[net.label(i, j)]))
            && (0..n).all(|i| (i + 1..n).all(|j| self.pair_ok(net.label(i, j))))
            && (0..n).all(|i| {
                (i + 1..n).all(|j| (j + 1..n).all(|k| self.tri_ok(net.label(i, j), net.label(j, k), net.label(i, k))))
            })
    }

    /// Start labels: those forming a legal two-node network.
    pub fn starts(&self) -> Vec<AtomId> {
        (0..self.atoms).filter(|&a| self.pair_ok(a)).collect()
    }

    /// ∀'s deletion options: none below the budget, otherwise each node.
    pub fn deletions(&self, net: &Network) -> Vec<Option<usize>> {
        match self.budget {
            Some(k) if net.node_count() >= k => (0..net.node_count()).map(Some).collect(),
            _ => vec![None],
        }
    }

    pub fn all_demands(&self, net: &Network) -> Vec<Demand> {
        let n = net.node_count();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for &(a, b) in self.demands_for(net.label(x, y)) {
                    out.push(Demand { x, y, a, b });
                }
            }
        }
        out
    }

    pub fn demand_ok(&self, net: &Network, d: &Demand) -> bool {
        d.x < net.node_count() && d.y < net.node_count() && self.demands_for(net.label(d.x, d.y)).contains(&(d.a, d.b))
    }

    /// Legal answers in solver order: witnesses by node, then new-node
    /// label vectors lexicographically.
    pub fn responses(&self, net: &Network, d: &Demand) -> Vec<Response> {
        let n = net.node_count();
        let mut out = Vec::new();
        if !self.fresh_only {
            for z in 0..n {
                if net.label(d.x, z) == d.a && net.label(z, d.y) == d.b {
                    out.push(Response::Witness(z));
                }
            }
        }
        let mut col = Vec::with_capacity(n);
        self.extend_column(net, d, &mut col, &mut out);
        out
    }

    fn extend_column(&self, net: &Network, d: &Demand, col: &mut Vec<AtomId>, out: &mut Vec<Response>) {
        let w = col.len();
        if w == net.node_count() {
            out.push(Response::Node(col.clone()));
            return;
        }
        let fixed = match (w == d.x, w == d.y) {
            (true, true) if d.a != self.conv[d.b] => return,
            (true, _) => Some(d.a),
            (_, true) => Some(self.conv[d.b]),
            _ => None,
        };
        let candidates: Vec<AtomId> = match fixed {
            Some(l) => vec![l],
            None => (0..self.atoms).collect(),
        };
        for l in candidates {
            if self.pair_ok(l) && (0..w).all(|u| self.tri_ok(net.label(u, w), l, col[u])) {
                col.push(l);
                self.extend_column(net, d, col, out);
                col.pop();
            }
        }
    }

    pub fn response_ok(&self, net: &Network, d: &Demand, r: &Response) -> bool {
        match r {
            Response::Witness(z) => {
                !self.fresh_only && *z < net.node_count() && net.label(d.x, *z) == d.a && net.label(*z, d.y) == d.b
            }
            Response::Node(col) => {
                col.len() == net.node_count()
                    && col[d.x] == d.a
                    && self.conv[col[d.y]] == d.b
                    && self.budget.is_none_or(|k| net.node_count() < k)
                    && self.network_ok(&self.apply(net, r))
            }
        }
    }

    pub fn apply(&self, net: &Network, r: &Response) -> Network {
        match r {
            Response::Witness(_) => net.clone(),
            Response::Node(col) => net.with_node(col, &self.conv, self.identity),
        }
    }
}

pub(crate) fn check_variant(variant: Variant, budget: Option<usize>) -> Result<()> {
    match (variant, budget) {
        (Variant::Triangle, None) | (Variant::Ca, None) => Ok(()),
        (Variant::Triangle, Some(_)) => Err(Error::InvalidParameter("node budgets need the pebble variant".into())),
        (Variant::Pebble, Some(k)) if k >= 2 => Ok(()),
        (Variant::Pebble, _) => Err(Error::InvalidParameter("the pebble variant needs a node budget >= 2".into())),
        (Variant::Ca, Some(k)) if k >= 5 => Ok(()),
        (Variant::Ca, Some(k)) => Err(Error::InvalidParameter(format!("cylindrifier budgets must be >= 5, got {k}"))),
    }
}
