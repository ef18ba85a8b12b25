use super::{AtomId, AtomStructure};
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Identity-law triples of a symmetric structure with identity atom 0.
fn identity_triple(a: AtomId, b: AtomId, c: AtomId) -> Option<bool> {
    match (a, b, c) {
        (0, x, y) | (x, 0, y) | (x, y, 0) => Some(x == y),
        _ => None,
    }
}

/// `E_k(2,3)`: `k` symmetric diversity atoms, every triangle allowed
/// except the monochromatic ones. Atom 0 is `1'`, atom `i + 1` is `a{i}`.
pub fn ek23(k: usize) -> Result<AtomStructure> {
    if k == 0 {
        return Err(Error::InvalidParameter("ek23 needs k >= 1".into()));
    }
    let labels = std::iter::once("1'".to_string()).chain((0..k).map(|i| format!("a{i}"))).collect();
    let converse = (0..=k).collect();
    Ok(AtomStructure::from_rule(labels, 0, converse, |a, b, c| identity_triple(a, b, c).unwrap_or(!(a == b && b == c))))
}

/// Finite truncation of the bicolour structure: `1'`, the block
/// `a0_0 .. a0_{n0-1}` and the atoms `a1 .. a{n1}`. Forbidden are the
/// identity triples with distinct partners, the monochromatic `(aj, aj, aj)`
/// and every triple inside the `a0` block.
pub fn bicolour_monk(n0: usize, n1: usize) -> Result<AtomStructure> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::InvalidParameter("bicolour needs n0, n1 >= 1".into()));
    }
    let mut labels = vec!["1'".to_string()];
    labels.extend((0..n0).map(|i| format!("a0_{i}")));
    labels.extend((1..=n1).map(|j| format!("a{j}")));
    let n = labels.len();
    let in_block = move |x: AtomId| (1..=n0).contains(&x);
    Ok(AtomStructure::from_rule(labels, 0, (0..n).collect(), move |a, b, c| {
        identity_triple(a, b, c).unwrap_or_else(|| {
            let block = in_block(a) && in_block(b) && in_block(c);
            let mono = a == b && b == c;
            !(block || mono)
        })
    }))
}

/// Graph-based Monk-style structure: one symmetric atom `v{u}` per vertex.
/// `(a_u, a_v, a_w)` is forbidden iff `u = v = w` or `{u, v, w}` is an
/// independent set of the graph.
pub fn graph_monk(g: &Graph) -> Result<AtomStructure> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("graph_monk needs a nonempty graph".into()));
    }
    let mut labels = vec!["1'".to_string()];
    labels.extend((0..n).map(|u| format!("v{u}")));
    let adj: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    Ok(AtomStructure::from_rule(labels, 0, (0..=n).collect(), move |a, b, c| {
        identity_triple(a, b, c).unwrap_or_else(|| {
            let (u, v, w) = (a - 1, b - 1, c - 1);
            if u == v && v == w {
                return false;
            }
            let independent = !adj[u][v] && !adj[v][w] && !adj[u][w];
            !independent
        })
    }))
}
