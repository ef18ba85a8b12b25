use super::certificate::{certify, GraphCertificate};
use super::colour::{k_colouring, DEFAULT_CHI_LIMIT};
use super::Graph;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErdosParams {
    pub chi_min: usize,
    pub girth_min: usize,
    pub max_n: usize,
    /// Edge probability; `max_n^(-p_exponent)` when absent.
    pub p: Option<f64>,
    pub p_exponent: f64,
    pub seed: u64,
    pub attempts: u64,
    pub chi_limit: usize,
}

impl Default for ErdosParams {
    fn default() -> Self {
        ErdosParams {
            chi_min: 3,
            girth_min: 4,
            max_n: 20,
            p: None,
            p_exponent: 0.8,
            seed: 0,
            attempts: 1000,
            chi_limit: DEFAULT_CHI_LIMIT,
        }
    }
}

impl ErdosParams {
    pub fn edge_probability(&self) -> f64 {
        self.p.unwrap_or_else(|| (self.max_n.max(1) as f64).powf(-self.p_exponent))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErdosSample {
    pub graph: Graph,
    pub certificate: GraphCertificate,
    /// Attempt index; its generator was seeded with `seed + attempt`.
    pub attempt: u64,
    pub p: f64,
    /// Vertices removed to break short cycles.
    pub deleted: usize,
}

/// For each vertex, the number of cycles shorter than `girth_min` through it.
pub(crate) fn short_cycle_counts(g: &Graph, girth_min: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut counts = vec![0usize; n];
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for start in 0..n {
        path.push(start);
        on_path[start] = true;
        extend(g, girth_min, start, &mut path, &mut on_path, &mut counts);
        on_path[start] = false;
        path.pop();
    }
    counts
}

// Cycles are rooted at their smallest vertex and counted once by requiring
// the second vertex to be smaller than the last.
fn extend(
    g: &Graph,
    girth_min: usize,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    counts: &mut [usize],
) {
    let last = *path.last().unwrap();
    for &w in g.neighbours(last) {
        if w == start && path.len() >= 3 && path[1] < last {
            for &v in path.iter() {
                counts[v] += 1;
            }
        } else if w > start && !on_path[w] && path.len() + 1 < girth_min {
            path.push(w);
            on_path[w] = true;
            extend(g, girth_min, start, path, on_path, counts);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Deletes a vertex on the most short cycles (lowest index on ties) until
/// none remain.
fn repair(mut g: Graph, girth_min: usize) -> (Graph, usize) {
    let mut deleted = 0;
    loop {
        let counts = short_cycle_counts(&g, girth_min);
        let Some((v, _)) = counts.iter().enumerate().filter(|(_, &c)| c > 0).min_by_key(|(v, &c)| (usize::MAX - c, *v))
        else {
            return (g, deleted);
        };
        g = g.remove_vertex(v);
        deleted += 1;
    }
}

fn sample(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn attempt(params: &ErdosParams, p: f64, index: u64) -> Option<ErdosSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(index));
    let (g, deleted) = repair(sample(params.max_n, p, &mut rng), params.girth_min);
    let n = g.vertex_count();
    if n < params.chi_min {
        return None;
    }
    // Cheap rejection: most samples have a (chi_min - 1)-colouring.
    if n <= params.chi_limit && k_colouring(&g, params.chi_min - 1).0.is_some() {
        return None;
    }
    let cert = certify(&g, params.chi_limit).ok()?;
    let chi_ok = cert.chromatic_number.unwrap_or(cert.chi_lower_bound) >= params.chi_min;
    chi_ok.then_some(ErdosSample { graph: g, certificate: cert, attempt: index, p, deleted })
}

/// Samples `G(max_n, p)`, removes short cycles, and returns the first
/// attempt whose chromatic number is certified at least `chi_min`.
pub fn erdos_sample(params: &ErdosParams) -> Result<Option<ErdosSample>> {
    if params.chi_min < 2 {
        return Err(Error::InvalidParameter("chi_min must be >= 2".into()));
    }
    if params.girth_min < 3 {
        return Err(Error::InvalidParameter("girth_min must be >= 3".into()));
    }
    let p = params.edge_probability();
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    if params.chi_min > params.max_n {
        return Ok(None);
    }
    Ok((0..params.attempts).into_par_iter().find_map_first(|i| attempt(params, p, i)))
}
