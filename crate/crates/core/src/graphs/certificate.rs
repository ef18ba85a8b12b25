use super::colour::{chromatic_number, greedy_colouring, independence_number, k_colouring};
use super::girth::girth;
use super::Graph;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundMethod {
    /// Branch and bound decided the chromatic number.
    Exact,
    /// Only `ceil(n / alpha)` is known.
    IndependenceRatio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCertificate {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `None` means infinite (a forest).
    pub girth: Option<usize>,
    pub shortest_cycle: Vec<usize>,
    /// Present when exact.
    pub chromatic_number: Option<usize>,
    /// A proper colouring; uses exactly `chromatic_number` colours when exact.
    pub colouring: Vec<usize>,
    pub chi_lower_bound: usize,
    pub lower_bound_method: LowerBoundMethod,
    /// Nodes spent refuting a colouring with one colour fewer.
    pub refutation_nodes: u64,
    pub independence_number: usize,
    pub independent_set: Vec<usize>,
}

fn ratio_bound(n: usize, alpha: usize) -> usize {
    if alpha == 0 {
        0
    } else {
        n.div_ceil(alpha)
    }
}

/// Girth, chromatic number (exact up to `chi_limit` vertices) and
/// independence number, each with a witness.
pub fn certify(g: &Graph, chi_limit: usize) -> Result<GraphCertificate> {
    let n = g.vertex_count();
    let gi = girth(g);
    let indep = independence_number(g)?;
    let (chromatic_number, colouring, lower, method, nodes) = match chromatic_number_opt(g, chi_limit)? {
        Some(c) => (Some(c.chi), c.colouring, c.chi, LowerBoundMethod::Exact, c.refutation_nodes),
        None => (None, greedy_colouring(g), ratio_bound(n, indep.len()), LowerBoundMethod::IndependenceRatio, 0),
    };
    Ok(GraphCertificate {
        vertex_count: n,
        edge_count: g.edge_count(),
        girth: gi.length,
        shortest_cycle: gi.cycle,
        chromatic_number,
        colouring,
        chi_lower_bound: lower,
        lower_bound_method: method,
        refutation_nodes: nodes,
        independence_number: indep.len(),
        independent_set: indep,
    })
}

fn chromatic_number_opt(g: &Graph, limit: usize) -> Result<Option<super::Colouring>> {
    if g.vertex_count() > limit {
        Ok(None)
    } else {
        chromatic_number(g, limit).map(Some)
    }
}

fn is_cycle(g: &Graph, c: &[usize]) -> bool {
    let mut seen = HashSet::new();
    c.len() >= 3 && c.iter().all(|v| seen.insert(*v)) && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

impl GraphCertificate {
    /// Re-derives every claim from scratch.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        let n = g.vertex_count();
        if (self.vertex_count, self.edge_count) != (n, g.edge_count()) {
            return Err("graph size does not match".into());
        }
        match self.girth {
            Some(len) => {
                if self.shortest_cycle.len() != len || !is_cycle(g, &self.shortest_cycle) {
                    return Err(format!("cycle witness is not a cycle of length {len}"));
                }
            }
            None => {
                if !self.shortest_cycle.is_empty() {
                    return Err("forest with a cycle witness".into());
                }
            }
        }
        if girth(g).length != self.girth {
            return Err("girth differs on recomputation".into());
        }
        if self.colouring.len() != n || g.edges().iter().any(|&(u, v)| self.colouring[u] == self.colouring[v]) {
            return Err("colouring is not proper".into());
        }
        let used: HashSet<usize> = self.colouring.iter().copied().collect();
        if self.colouring.iter().any(|&c| c >= used.len()) {
            return Err("colours are not numbered 0..k".into());
        }
        match (self.chromatic_number, self.lower_bound_method) {
            (Some(chi), LowerBoundMethod::Exact) => {
                if used.len() != chi || self.chi_lower_bound != chi {
                    return Err(format!("colouring uses {} colours, claimed {chi}", used.len()));
                }
                if chi > 0 && k_colouring(g, chi - 1).0.is_some() {
                    return Err(format!("graph is {}-colourable", chi - 1));
                }
            }
            (None, LowerBoundMethod::IndependenceRatio) => {
                if self.chi_lower_bound != ratio_bound(n, self.independence_number) {
                    return Err("lower bound is not ceil(n / alpha)".into());
                }
            }
            _ => return Err("inconsistent chromatic fields".into()),
        }
        let set: HashSet<usize> = self.independent_set.iter().copied().collect();
        if set.len() != self.independence_number
            || set.iter().any(|&v| v >= n)
            || g.edges().iter().any(|(u, v)| set.contains(u) && set.contains(v))
        {
            return Err("independent set witness is wrong".into());
        }
        let alpha = independence_number(g).map_err(|e| e.to_string())?.len();
        if alpha != self.independence_number {
            return Err(format!("independence number is {alpha}, claimed {}", self.independence_number));
        }
        Ok(())
    }
}
