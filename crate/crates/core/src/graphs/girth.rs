use super::Graph;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Girth {
    /// `None` for forests.
    pub length: Option<usize>,
    /// A shortest cycle as a vertex sequence (closing edge implied).
    pub cycle: Vec<usize>,
}

/// Shortest cycle via breadth-first search from every vertex.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| 2 * dist[u] + 1 >= b.len()) {
                break;
            }
            for &w in g.neighbours(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && parent[w] != u && dist[w] >= dist[u] {
                    let cyc = close_cycle(&parent, &dist, u, w);
                    if best.as_ref().is_none_or(|b| cyc.len() < b.len()) {
                        best = Some(cyc);
                    }
                }
            }
        }
    }
    match best {
        Some(cycle) => Girth { length: Some(cycle.len()), cycle },
        None => Girth { length: None, cycle: Vec::new() },
    }
}

// Joins the tree paths to `u` and `w` at their lowest common ancestor.
fn close_cycle(parent: &[usize], dist: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while dist[b] > dist[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.reverse();
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    // Shortest cycle through each edge: remove it and measure the distance
    // between its ends.
    fn girth_by_edge_removal(g: &Graph) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (u, v) in g.edges() {
            let n = g.vertex_count();
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut q = VecDeque::from([u]);
            while let Some(x) = q.pop_front() {
                for &y in g.neighbours(x) {
                    if (x, y) == (u, v) || (x, y) == (v, u) || dist[y] != usize::MAX {
                        continue;
                    }
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
            if dist[v] != usize::MAX {
                let c = dist[v] + 1;
                best = Some(best.map_or(c, |b: usize| b.min(c)));
            }
        }
        best
    }

    pub(crate) fn is_cycle(g: &Graph, c: &[usize]) -> bool {
        let mut seen = std::collections::HashSet::new();
        c.len() >= 3
            && c.iter().all(|v| seen.insert(*v))
            && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
    }

    #[test]
    fn examples() {
        assert_eq!(girth(&Graph::complete(3)).length, Some(3));
        assert_eq!(girth(&Graph::path(5)).length, None);
        assert_eq!(girth(&Graph::petersen()).length, Some(5));
        assert_eq!(girth(&Graph::cycle(7)).length, Some(7));
        assert_eq!(girth(&Graph::cycle(5).mycielski()).length, Some(4));
    }

    #[test]
    fn agrees_with_edge_removal_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(1..14);
            let p = rng.random_range(0.05..0.5);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            let got = girth(&g);
            assert_eq!(got.length, girth_by_edge_removal(&g));
            if got.length.is_some() {
                assert!(is_cycle(&g, &got.cycle), "{:?}", got.cycle);
            }
        }
    }
}
