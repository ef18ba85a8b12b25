//! Finite relation-algebra atom structures and their complex algebras.
//!
//! A triple `(a, b, c)` is *consistent* when `c ≤ a;b`. Structures built
//! through [`AtomStructureBuilder`] are closed under the Peircean cycle law
//! automatically; the named constructions are rule-backed and symmetric by
//! construction.

mod axioms;
mod constructions;
mod embed;
mod spec;

pub use axioms::{check_ra_axioms, AssocWitness, AxiomReport, Check, CycleWitness, IdentityWitness};
pub use constructions::{bicolour_monk, ek23, graph_monk};
pub use embed::{
    find_embedding, find_embedding_into, verify_embedding, ComplexAlgebra, Embedding, EmbeddingSearch, ImageFamily,
};
pub use spec::{parse_algebra_text, AlgebraSpec};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub type AtomId = usize;

/// An element of the complex algebra: a set of atoms.
pub type AtomSet = BitSet;

/// Structures with at most this many atoms store their triple table densely.
pub const DENSE_ATOM_LIMIT: usize = 128;

type Rule = Arc<dyn Fn(AtomId, AtomId, AtomId) -> bool + Send + Sync>;

#[derive(Clone)]
enum Table {
    Dense(Arc<Vec<u64>>),
    Rule(Rule),
}

#[derive(Clone)]
pub struct AtomStructure {
    labels: Vec<String>,
    identity: AtomId,
    converse: Vec<AtomId>,
    table: Table,
    // a;b for every pair of atoms, present for dense tables
    products: Option<Arc<Vec<AtomSet>>>,
}

impl AtomStructure {
    /// Builds a structure from a consistency predicate. Small structures are
    /// tabulated eagerly; larger ones keep the predicate.
    pub fn from_rule<F>(labels: Vec<String>, identity: AtomId, converse: Vec<AtomId>, rule: F) -> Self
    where
        F: Fn(AtomId, AtomId, AtomId) -> bool + Send + Sync + 'static,
    {
        let n = labels.len();
        assert!(identity < n && converse.len() == n);
        if n <= DENSE_ATOM_LIMIT {
            let mut bits = vec![0u64; (n * n * n).div_ceil(64)];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if rule(a, b, c) {
                            let i = (a * n + b) * n + c;
                            bits[i / 64] |= 1 << (i % 64);
                        }
                    }
                }
            }
            Self::from_dense(labels, identity, converse, bits)
        } else {
            AtomStructure { labels, identity, converse, table: Table::Rule(Arc::new(rule)), products: None }
        }
    }

    fn from_dense(labels: Vec<String>, identity: AtomId, converse: Vec<AtomId>, bits: Vec<u64>) -> Self {
        let n = labels.len();
        let mut products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let mut s = AtomSet::new(n);
                for c in 0..n {
                    let i = (a * n + b) * n + c;
                    if bits[i / 64] >> (i % 64) & 1 == 1 {
                        s.insert(c);
                    }
                }
                products.push(s);
            }
        }
        AtomStructure {
            labels,
            identity,
            converse,
            table: Table::Dense(Arc::new(bits)),
            products: Some(Arc::new(products)),
        }
    }

    pub fn atom_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: AtomId) -> &str {
        &self.labels[a]
    }

    pub fn find(&self, name: &str) -> Option<AtomId> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn identity(&self) -> AtomId {
        self.identity
    }

    pub fn identities(&self) -> AtomSet {
        AtomSet::singleton(self.atom_count(), self.identity)
    }

    pub fn is_identity(&self, a: AtomId) -> bool {
        a == self.identity
    }

    pub fn converse(&self, a: AtomId) -> AtomId {
        self.converse[a]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.atom_count()).all(|a| self.converse[a] == a)
    }

    /// Non-identity atoms in index order.
    pub fn diversity_atoms(&self) -> Vec<AtomId> {
        (0..self.atom_count()).filter(|&a| a != self.identity).collect()
    }

    /// `c ≤ a;b`.
    #[inline]
    pub fn consistent(&self, a: AtomId, b: AtomId, c: AtomId) -> bool {
        match &self.table {
            Table::Dense(bits) => {
                let n = self.labels.len();
                let i = (a * n + b) * n + c;
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            Table::Rule(rule) => rule(a, b, c),
        }
    }

    /// `a;b` as a set of atoms.
    pub fn compose_atoms(&self, a: AtomId, b: AtomId) -> AtomSet {
        match &self.products {
            Some(p) => p[a * self.atom_count() + b].clone(),
            None => {
                let n = self.atom_count();
                AtomSet::from_iter(n, (0..n).filter(|&c| self.consistent(a, b, c)))
            }
        }
    }

    /// Composition in the complex algebra.
    pub fn compose(&self, x: &AtomSet, y: &AtomSet) -> AtomSet {
        let n = self.atom_count();
        let mut out = AtomSet::new(n);
        for a in x.iter() {
            for b in y.iter() {
                match &self.products {
                    Some(p) => out.union_with(&p[a * n + b]),
                    None => {
                        for c in 0..n {
                            if self.consistent(a, b, c) {
                                out.insert(c);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn converse_set(&self, x: &AtomSet) -> AtomSet {
        AtomSet::from_iter(self.atom_count(), x.iter().map(|a| self.converse[a]))
    }

    pub fn atom_set<I: IntoIterator<Item = AtomId>>(&self, atoms: I) -> AtomSet {
        AtomSet::from_iter(self.atom_count(), atoms)
    }

    /// Resolves atom names to a set. Unknown names are an error.
    pub fn named_set(&self, names: &[&str]) -> Result<AtomSet> {
        let mut s = AtomSet::new(self.atom_count());
        for name in names {
            s.insert(self.find(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))?);
        }
        Ok(s)
    }

    pub fn unit(&self) -> AtomSet {
        AtomSet::full(self.atom_count())
    }

    /// All consistent triples in lexicographic order.
    pub fn consistent_triples(&self) -> Vec<(AtomId, AtomId, AtomId)> {
        let n = self.atom_count();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.consistent(a, b, c) {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Whether the atom can label an edge of a two-node network.
    pub fn edge_consistent(&self, a: AtomId) -> bool {
        let e = self.identity;
        let ca = self.converse[a];
        self.consistent(e, a, a) && self.consistent(a, e, a) && self.consistent(a, ca, e)
    }

    /// Text in the algebra-spec format, re-parseable by [`parse_algebra_text`].
    pub fn to_spec_text(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            s.push_str(&format!("atom {l}\n"));
        }
        s.push_str(&format!("identity {}\n", self.labels[self.identity]));
        for a in 0..self.atom_count() {
            let b = self.converse[a];
            if a < b {
                s.push_str(&format!("conv {} {}\n", self.labels[a], self.labels[b]));
            }
        }
        for (a, b, c) in self.consistent_triples() {
            s.push_str(&format!("triple {} {} {}\n", self.labels[a], self.labels[b], self.labels[c]));
        }
        s
    }
}

impl PartialEq for AtomStructure {
    fn eq(&self, other: &Self) -> bool {
        let n = self.atom_count();
        if self.labels != other.labels || self.identity != other.identity || self.converse != other.converse {
            return false;
        }
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.consistent(a, b, c) == other.consistent(a, b, c))))
    }
}

impl fmt::Debug for AtomStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtomStructure")
            .field("labels", &self.labels)
            .field("identity", &self.identity)
            .field("converse", &self.converse)
            .finish_non_exhaustive()
    }
}

/// Builder for explicitly listed structures.
#[derive(Debug, Clone, Default)]
pub struct AtomStructureBuilder {
    atoms: Vec<String>,
    identities: Vec<String>,
    conv: Vec<(String, String)>,
    triples: Vec<[String; 3]>,
    no_closure: bool,
}

impl AtomStructureBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom(mut self, name: &str) -> Self {
        self.atoms.push(name.to_string());
        self
    }

    pub fn atoms<'a>(mut self, names: impl IntoIterator<Item = &'a str>) -> Self {
        self.atoms.extend(names.into_iter().map(str::to_string));
        self
    }

    pub fn identity(mut self, name: &str) -> Self {
        self.identities.push(name.to_string());
        self
    }

    pub fn conv(mut self, a: &str, b: &str) -> Self {
        self.conv.push((a.to_string(), b.to_string()));
        self
    }

    pub fn triple(mut self, a: &str, b: &str, c: &str) -> Self {
        self.triples.push([a.to_string(), b.to_string(), c.to_string()]);
        self
    }

    /// Skip the Peircean closure. Only useful for building deliberately
    /// broken structures.
    pub fn without_cycle_closure(mut self) -> Self {
        self.no_closure = true;
        self
    }

    pub fn build(self) -> Result<AtomStructure> {
        let mut index: HashMap<&str, AtomId> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        for name in &self.atoms {
            if index.insert(name, labels.len()).is_some() {
                return Err(Error::DuplicateAtom(name.clone()));
            }
            labels.push(name.clone());
        }
        let identity = match self.identities.as_slice() {
            [] => return Err(Error::Identity("no identity atom declared".into())),
            [e] => match index.get(e.as_str()) {
                Some(&i) => i,
                None => {
                    // `identity x` declares the atom when it was not listed.
                    labels.push(e.clone());
                    index.insert(e, labels.len() - 1);
                    labels.len() - 1
                }
            },
            _ => return Err(Error::Identity("exactly one identity atom is supported".into())),
        };
        let n = labels.len();
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownAtom(name.to_string()));

        let mut converse: Vec<Option<AtomId>> = vec![None; n];
        for (a, b) in &self.conv {
            let (ia, ib) = (lookup(a)?, lookup(b)?);
            for (x, y) in [(ia, ib), (ib, ia)] {
                match converse[x] {
                    Some(prev) if prev != y => return Err(Error::ConverseNotInvolutive(labels[x].clone())),
                    _ => converse[x] = Some(y),
                }
            }
        }
        let converse: Vec<AtomId> = converse.iter().enumerate().map(|(i, c)| c.unwrap_or(i)).collect();
        if converse[identity] != identity {
            return Err(Error::Identity("the identity atom must be self-converse".into()));
        }

        let mut bits = vec![0u64; (n * n * n).div_ceil(64)];
        let set = |bits: &mut Vec<u64>, (a, b, c): (usize, usize, usize)| -> bool {
            let i = (a * n + b) * n + c;
            let was = bits[i / 64] >> (i % 64) & 1 == 1;
            bits[i / 64] |= 1 << (i % 64);
            !was
        };
        let mut stack = Vec::new();
        for [a, b, c] in &self.triples {
            let t = (lookup(a)?, lookup(b)?, lookup(c)?);
            if set(&mut bits, t) {
                stack.push(t);
            }
        }
        if !self.no_closure {
            while let Some((a, b, c)) = stack.pop() {
                for t in [(converse[a], c, b), (c, converse[b], a)] {
                    if set(&mut bits, t) {
                        stack.push(t);
                    }
                }
            }
        }
        if n > DENSE_ATOM_LIMIT {
            return Err(Error::LimitExceeded(format!(
                "explicit structures are limited to {DENSE_ATOM_LIMIT} atoms, got {n}"
            )));
        }
        Ok(AtomStructure::from_dense(labels, identity, converse, bits))
    }
}
