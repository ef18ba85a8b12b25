use crate::error::{Error, Result};
use crate::ra::{AtomId, AtomStructure};
use serde::{Deserialize, Serialize};

/// A complete atom-labelled graph on nodes `0..n`, stored as a full
/// `n × n` label matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Network {
    n: usize,
    labels: Vec<AtomId>,
}

impl Network {
    /// Two nodes joined by `a`.
    pub fn edge(s: &AtomStructure, a: AtomId) -> Self {
        let e = s.identity();
        Network { n: 2, labels: vec![e, a, s.converse(a), e] }
    }

    pub fn from_labels(n: usize, labels: Vec<AtomId>) -> Result<Self> {
        if labels.len() != n * n {
            return Err(Error::InvalidParameter(format!("{} labels for {n} nodes", labels.len())));
        }
        Ok(Network { n, labels })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[AtomId] {
        &self.labels
    }

    pub fn label(&self, i: usize, j: usize) -> AtomId {
        self.labels[i * self.n + j]
    }

    /// Identity loops, converse symmetry and every triangle (repeated nodes
    /// included) consistent.
    pub fn is_consistent(&self, s: &AtomStructure) -> bool {
        let n = self.n;
        if self.labels.iter().any(|&l| l >= s.atom_count()) {
            return false;
        }
        (0..n).all(|i| s.is_identity(self.label(i, i)))
            && (0..n).all(|i| (0..n).all(|j| self.label(j, i) == s.converse(self.label(i, j))))
            && (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| s.consistent(self.label(x, z), self.label(z, y), self.label(x, y))))
            })
    }

    pub(crate) fn delete(&self, w: usize) -> Network {
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != w).collect();
        self.induced(&keep)
    }

    fn induced(&self, order: &[usize]) -> Network {
        let mut labels = Vec::with_capacity(order.len() * order.len());
        for &i in order {
            for &j in order {
                labels.push(self.label(i, j));
            }
        }
        Network { n: order.len(), labels }
    }

    /// Adds node `n` with `col[w] = N(w, n)`.
    pub(crate) fn with_node(&self, col: &[AtomId], conv: &[AtomId], identity: AtomId) -> Network {
        let n = self.n + 1;
        let mut labels = Vec::with_capacity(n * n);
        for (row, &l) in self.labels.chunks(self.n.max(1)).zip(col) {
            labels.extend_from_slice(row);
            labels.push(l);
        }
        labels.extend(col.iter().map(|&l| conv[l]));
        labels.push(identity);
        Network { n, labels }
    }

    /// Canonical relabelling: colour refinement splits nodes into ordered
    /// cells, then every ordering within the cells is tried and the
    /// lexicographically least label matrix kept. Returns the canonical
    /// network and `perm[v]`, the canonical index of node `v`.
    pub fn canonical(&self) -> (Network, Vec<usize>) {
        let n = self.n;
        let mut colour = vec![0usize; n];
        let mut classes = 1;
        loop {
            let sigs: Vec<(usize, Vec<(AtomId, usize)>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<(AtomId, usize)> =
                        (0..n).filter(|&w| w != v).map(|w| (self.label(v, w), colour[w])).collect();
                    nb.sort_unstable();
                    (colour[v], nb)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
            let stable = distinct.len() == classes;
            colour = next;
            classes = distinct.len();
            if stable {
                break;
            }
        }
        let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
        for v in 0..n {
            cells[colour[v]].push(v);
        }
        let mut best: Option<(Vec<AtomId>, Vec<usize>)> = None;
        let mut order = Vec::with_capacity(n);
        search_orders(self, &mut cells, 0, 0, &mut order, &mut best);
        let (labels, order) = best.unwrap_or_default();
        let mut perm = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = pos;
        }
        (Network { n, labels }, perm)
    }

    pub fn render(&self, s: &AtomStructure) -> String {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| s.label(self.label(i, j))).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// One arc `i -> j` per pair `i < j`, labelled with its atom.
    pub fn to_dot(&self, s: &AtomStructure) -> String {
        let mut out = String::from("digraph network {\n");
        for i in 0..self.n {
            out.push_str(&format!("  {i};\n"));
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push_str(&format!("  {i} -> {j} [label=\"{}\"];\n", s.label(self.label(i, j))));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn search_orders(
    net: &Network,
    cells: &mut [Vec<usize>],
    cell: usize,
    used: usize,
    order: &mut Vec<usize>,
    best: &mut Option<(Vec<AtomId>, Vec<usize>)>,
) {
    if cell == cells.len() {
        let labels = net.induced(order).labels;
        if best.as_ref().is_none_or(|(b, _)| labels < *b) {
            *best = Some((labels, order.clone()));
        }
        return;
    }
    if used == cells[cell].len() {
        search_orders(net, cells, cell + 1, 0, order, best);
        return;
    }
    for k in used..cells[cell].len() {
        cells[cell].swap(used, k);
        order.push(cells[cell][used]);
        search_orders(net, cells, cell, used + 1, order, best);
        order.pop();
        cells[cell].swap(used, k);
    }
}
