use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest vertex count for exact chromatic numbers.
pub const DEFAULT_CHI_LIMIT: usize = 40;

const MASK_LIMIT: usize = 128;

fn masks(g: &Graph) -> Result<Vec<u128>> {
    let n = g.vertex_count();
    if n > MASK_LIMIT {
        return Err(Error::LimitExceeded(format!("{n} vertices exceeds the exact limit of {MASK_LIMIT}")));
    }
    Ok((0..n).map(|v| g.neighbours(v).iter().fold(0u128, |m, &u| m | 1 << u)).collect())
}

/// Greedy colour classes of `p`, used as the clique bound.
fn colour_sort(adj: &[u128], p: u128) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::new();
    let mut bound = Vec::new();
    let mut uncoloured = p;
    let mut k = 0;
    while uncoloured != 0 {
        k += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !adj[v] & !(1u128 << v);
            uncoloured &= !(1u128 << v);
            order.push(v);
            bound.push(k);
        }
    }
    (order, bound)
}

fn expand(adj: &[u128], r: &mut Vec<usize>, mut p: u128, best: &mut Vec<usize>) {
    let (order, bound) = colour_sort(adj, p);
    for i in (0..order.len()).rev() {
        if r.len() + bound[i] <= best.len() {
            return;
        }
        let v = order[i];
        r.push(v);
        let np = p & adj[v];
        if np == 0 {
            if r.len() > best.len() {
                *best = r.clone();
            }
        } else {
            expand(adj, r, np, best);
        }
        r.pop();
        p &= !(1u128 << v);
    }
}

fn max_clique(adj: &[u128]) -> Vec<usize> {
    let n = adj.len();
    let all = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let mut best = Vec::new();
    expand(adj, &mut Vec::new(), all, &mut best);
    best.sort_unstable();
    best
}

/// A maximum clique.
pub fn clique_number(g: &Graph) -> Result<Vec<usize>> {
    Ok(max_clique(&masks(g)?))
}

/// A maximum independent set.
pub fn independence_number(g: &Graph) -> Result<Vec<usize>> {
    let n = g.vertex_count();
    let all = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let comp: Vec<u128> = masks(g)?.iter().enumerate().map(|(v, m)| all & !m & !(1u128 << v)).collect();
    Ok(max_clique(&comp))
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    count: Vec<Vec<u16>>,
    sat: Vec<u64>,
    nodes: u64,
}

impl Dsatur<'_> {
    fn set(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for &u in self.g.neighbours(v) {
            self.count[u][c] += 1;
            self.sat[u] |= 1 << c;
        }
    }

    fn unset(&mut self, v: usize, c: usize) {
        self.colour[v] = usize::MAX;
        for &u in self.g.neighbours(v) {
            self.count[u][c] -= 1;
            if self.count[u][c] == 0 {
                self.sat[u] &= !(1 << c);
            }
        }
    }

    fn solve(&mut self, coloured: usize, used: usize) -> bool {
        self.nodes += 1;
        let n = self.g.vertex_count();
        if coloured == n {
            return true;
        }
        let mut pick = usize::MAX;
        let mut key = (0u32, 0usize);
        for v in (0..n).filter(|&v| self.colour[v] == usize::MAX) {
            let s = self.sat[v].count_ones();
            if s as usize >= self.k {
                return false;
            }
            let k = (s, self.g.degree(v));
            if pick == usize::MAX || k > key {
                pick = v;
                key = k;
            }
        }
        let v = pick;
        for c in 0..self.k.min(used + 1) {
            if self.sat[v] >> c & 1 == 1 {
                continue;
            }
            self.set(v, c);
            if self.solve(coloured + 1, used.max(c + 1)) {
                return true;
            }
            self.unset(v, c);
        }
        false
    }
}

/// Decides `k`-colourability by DSATUR backtracking. Returns the colouring
/// (if any) and the number of search nodes.
pub fn k_colouring(g: &Graph, k: usize) -> (Option<Vec<usize>>, u64) {
    let n = g.vertex_count();
    if k >= n {
        return (Some((0..n).collect()), 0);
    }
    assert!(k <= 64, "at most 64 colours");
    let mut s = Dsatur { g, k, colour: vec![usize::MAX; n], count: vec![vec![0; k]; n], sat: vec![0; n], nodes: 0 };
    let found = s.solve(0, 0);
    (found.then_some(s.colour), s.nodes)
}

/// Colours vertices in order with the smallest free colour.
pub fn greedy_colouring(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut c = vec![usize::MAX; n];
    for v in 0..n {
        let mut c_v = 0;
        while g.neighbours(v).iter().any(|&u| c[u] == c_v) {
            c_v += 1;
        }
        c[v] = c_v;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub chi: usize,
    /// Proper colouring with exactly `chi` colours.
    pub colouring: Vec<usize>,
    /// A maximum clique (the lower bound that started the search).
    pub clique: Vec<usize>,
    /// Search nodes spent refuting a `chi - 1` colouring; zero when the
    /// clique already forces `chi`.
    pub refutation_nodes: u64,
}

/// Exact chromatic number: clique lower bound, DSATUR upper bound, then
/// increasing `k` until a colouring exists.
pub fn chromatic_number(g: &Graph, limit: usize) -> Result<Colouring> {
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::LimitExceeded(format!("{n} vertices exceeds the chromatic limit {limit}")));
    }
    if n == 0 {
        return Ok(Colouring { chi: 0, colouring: Vec::new(), clique: Vec::new(), refutation_nodes: 0 });
    }
    let clique = clique_number(g)?;
    let mut refutation_nodes = 0;
    for k in clique.len().max(1)..=n {
        let (c, nodes) = k_colouring(g, k);
        if let Some(colouring) = c {
            return Ok(Colouring { chi: k, colouring, clique, refutation_nodes });
        }
        refutation_nodes = nodes;
    }
    unreachable!("n colours always suffice")
}
