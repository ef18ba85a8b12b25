use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ra::{AtomId, AtomStructure};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// An `n × n` basic matrix. Only the strict upper triangle is stored; the
/// diagonal is the identity atom and `(j, i)` is the converse of `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasicMatrix {
    pub dim: usize,
    /// Row-major entries `(i, j)` for `i < j`.
    pub upper: Vec<AtomId>,
}

fn upper_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * (2 * dim - i - 1) / 2 + (j - i - 1)
}

impl BasicMatrix {
    pub fn upper_entry(&self, i: usize, j: usize) -> AtomId {
        self.upper[upper_index(self.dim, i, j)]
    }

    pub fn entry(&self, s: &AtomStructure, i: usize, j: usize) -> AtomId {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => s.identity(),
            Less => self.upper_entry(i, j),
            Greater => s.converse(self.upper_entry(j, i)),
        }
    }

    /// Checks the identity, converse and triangle conditions directly on the
    /// full matrix.
    pub fn is_basic(&self, s: &AtomStructure) -> bool {
        let n = self.dim;
        if self.upper.len() != n * n.saturating_sub(1) / 2 {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|m| s.consistent(self.entry(s, i, m), self.entry(s, m, j), self.entry(s, i, j))))
        })
    }

    /// Upper entries not involving index `k`.
    fn off(&self, k: usize) -> Vec<AtomId> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if i != k && j != k {
                    out.push(self.upper_entry(i, j));
                }
            }
        }
        out
    }

    pub fn render(&self, s: &AtomStructure) -> String {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| s.label(self.entry(s, i, j))).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// All `n × n` basic matrices over `s`, row-major lexicographic by atom index.
pub fn enumerate_basic_matrices(s: &AtomStructure, n: usize) -> Result<Vec<BasicMatrix>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("dimension must be >= 2, got {n}")));
    }
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let usable: Vec<AtomId> = (0..s.atom_count()).filter(|&a| s.edge_consistent(a)).collect();
    let out: Vec<Vec<BasicMatrix>> = usable
        .par_iter()
        .map(|&first| {
            let mut upper = vec![first];
            let mut out = Vec::new();
            fill(s, n, &positions, &usable, &mut upper, &mut out);
            out
        })
        .collect();
    Ok(out.into_iter().flatten().collect())
}

fn fill(
    s: &AtomStructure,
    n: usize,
    positions: &[(usize, usize)],
    usable: &[AtomId],
    upper: &mut Vec<AtomId>,
    out: &mut Vec<BasicMatrix>,
) {
    if upper.len() == positions.len() {
        out.push(BasicMatrix { dim: n, upper: upper.clone() });
        return;
    }
    let (i, j) = positions[upper.len()];
    for &x in usable {
        // (i, j) is the last position of each triangle a < i < j.
        let ok = (0..i).all(|a| s.consistent(upper[upper_index(n, a, i)], x, upper[upper_index(n, a, j)]));
        if ok {
            upper.push(x);
            fill(s, n, positions, usable, upper, out);
            upper.pop();
        }
    }
}

/// Indices into the checked list: `m ≡_ij n` but no `l` with
/// `m ≡_i l ≡_j n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationWitness {
    pub m: usize,
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamationReport {
    pub matrices: usize,
    pub pass: bool,
    pub witness: Option<AmalgamationWitness>,
}

/// Exhaustive amalgamation check. For each `i < j`, matrices are grouped by
/// their entries avoiding both `i` and `j`; inside a group an amalgam for
/// `(m, n)` must carry `m`'s entries through `j` and `n`'s entries through
/// `i`, so every such combination has to be realized.
pub fn check_amalgamation(set: &[BasicMatrix]) -> Result<AmalgamationReport> {
    let Some(first) = set.first() else {
        return Ok(AmalgamationReport { matrices: 0, pass: true, witness: None });
    };
    let dim = first.dim;
    if let Some(m) = set.iter().find(|m| m.dim != dim) {
        return Err(Error::MixedDimensions(dim, m.dim));
    }
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let witness = pairs.par_iter().find_map_first(|&(i, j)| amalgamation_gap(set, dim, i, j));
    Ok(AmalgamationReport { matrices: set.len(), pass: witness.is_none(), witness })
}

fn amalgamation_gap(set: &[BasicMatrix], dim: usize, i: usize, j: usize) -> Option<AmalgamationWitness> {
    // Entries through `want` that avoid `avoid`.
    let part = |m: &BasicMatrix, want: usize, avoid: usize| -> Vec<AtomId> {
        (0..dim).filter(|&x| x != want && x != avoid).map(|x| m.upper_entry(x.min(want), x.max(want))).collect()
    };
    let mut group_of: HashMap<Vec<AtomId>, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (idx, m) in set.iter().enumerate() {
        let mut key = Vec::new();
        for a in (0..dim).filter(|&a| a != i && a != j) {
            for b in (a + 1..dim).filter(|&b| b != i && b != j) {
                key.push(m.upper_entry(a, b));
            }
        }
        let g = *group_of.entry(key).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(idx);
    }
    for members in groups {
        let mut through_j: Vec<(Vec<AtomId>, usize)> = Vec::new();
        let mut through_i: Vec<(Vec<AtomId>, usize)> = Vec::new();
        let mut seen_j = HashSet::new();
        let mut seen_i = HashSet::new();
        let mut realized = HashSet::new();
        for &idx in &members {
            let (pj, pi) = (part(&set[idx], j, i), part(&set[idx], i, j));
            if seen_j.insert(pj.clone()) {
                through_j.push((pj.clone(), idx));
            }
            if seen_i.insert(pi.clone()) {
                through_i.push((pi.clone(), idx));
            }
            realized.insert((pj, pi));
        }
        if realized.len() == through_j.len() * through_i.len() {
            continue;
        }
        for (pj, m) in &through_j {
            for (pi, n) in &through_i {
                if !realized.contains(&(pj.clone(), pi.clone())) {
                    return Some(AmalgamationWitness { m: *m, n: *n, i, j });
                }
            }
        }
    }
    None
}

/// Basic matrices with the `≡_i` relations and diagonal sets.
#[derive(Debug, Clone)]
pub struct CaAtomStructure {
    /// The relation atom structure the matrices are drawn from.
    pub base: AtomStructure,
    pub dim: usize,
    pub atoms: Vec<BasicMatrix>,
    /// `classes[i][m]`: the `≡_i` class of atom `m`, numbered by first
    /// occurrence.
    pub classes: Vec<Vec<usize>>,
    /// `diag[i * dim + j]`: atoms whose `(i, j)` entry is the identity.
    pub diag: Vec<BitSet>,
}

impl CaAtomStructure {
    pub fn equivalent(&self, i: usize, a: usize, b: usize) -> bool {
        self.classes[i][a] == self.classes[i][b]
    }

    pub fn class_count(&self, i: usize) -> usize {
        self.classes[i].iter().max().map_or(0, |m| m + 1)
    }

    pub fn diagonal(&self, i: usize, j: usize) -> &BitSet {
        &self.diag[i * self.dim + j]
    }
}

pub fn ca_atom_structure(s: &AtomStructure, atoms: Vec<BasicMatrix>) -> Result<CaAtomStructure> {
    let Some(first) = atoms.first() else {
        return Err(Error::InvalidParameter("empty set of basic matrices".into()));
    };
    let dim = first.dim;
    if let Some(m) = atoms.iter().find(|m| m.dim != dim) {
        return Err(Error::MixedDimensions(dim, m.dim));
    }
    let classes = (0..dim)
        .map(|i| {
            let mut ids: HashMap<Vec<AtomId>, usize> = HashMap::new();
            atoms
                .iter()
                .map(|m| {
                    let next = ids.len();
                    *ids.entry(m.off(i)).or_insert(next)
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            diag.push(BitSet::from_iter(
                atoms.len(),
                atoms.iter().enumerate().filter(|(_, m)| s.is_identity(m.entry(s, i, j))).map(|(x, _)| x),
            ));
        }
    }
    Ok(CaAtomStructure { base: s.clone(), dim, atoms, classes, diag })
}
