//! Embeddings of a finite atomic relation algebra (given by its atom
//! structure) into the complex algebra of another atom structure.
//!
//! An embedding sends each source atom to a nonempty block of target atoms;
//! the blocks partition the target atoms. Searching for one is phrased as a
//! colouring of target atoms by source atoms: every consistent target triple
//! must be coloured by a consistent source triple, and every source triple
//! must be realised above every target atom of its colour.

use super::{AtomId, AtomSet, AtomStructure};
use serde::{Deserialize, Serialize};

/// Restricts which blocks may serve as images of source atoms.
pub trait ImageFamily: Sync {
    fn admits(&self, block: &AtomSet) -> bool;
}

/// Every element of the complex algebra is admissible.
pub struct ComplexAlgebra;

impl ImageFamily for ComplexAlgebra {
    fn admits(&self, _block: &AtomSet) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    /// Image of each source atom, indexed by source atom id.
    pub images: Vec<AtomSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSearch {
    pub embedding: Option<Embedding>,
    /// Search-tree nodes visited.
    pub nodes: u64,
    /// Complete colourings that passed forward checking.
    pub leaves: u64,
}

pub fn find_embedding(src: &AtomStructure, dst: &AtomStructure) -> Option<Embedding> {
    find_embedding_into(src, dst, &ComplexAlgebra).embedding
}

/// Exhaustive backtracking search with forward checking on composition.
pub fn find_embedding_into(src: &AtomStructure, dst: &AtomStructure, family: &dyn ImageFamily) -> EmbeddingSearch {
    let mut search = Search::new(src, dst, family);
    let found = search.run();
    EmbeddingSearch { embedding: found, nodes: search.nodes, leaves: search.leaves }
}

/// Checks that `emb` is a Boolean-algebra-with-operators monomorphism on all
/// pairs of source atoms.
pub fn verify_embedding(src: &AtomStructure, dst: &AtomStructure, emb: &Embedding) -> Result<(), String> {
    let (ns, nd) = (src.atom_count(), dst.atom_count());
    if emb.images.len() != ns {
        return Err(format!("expected {ns} images, got {}", emb.images.len()));
    }
    let mut seen = AtomSet::new(nd);
    for (a, img) in emb.images.iter().enumerate() {
        if img.universe() != nd {
            return Err(format!("image of {} is over the wrong universe", src.label(a)));
        }
        if img.is_empty() {
            return Err(format!("image of {} is empty", src.label(a)));
        }
        if !img.is_disjoint(&seen) {
            return Err(format!("image of {} overlaps an earlier image", src.label(a)));
        }
        seen.union_with(img);
    }
    if seen != dst.unit() {
        return Err("images do not cover the target unit".into());
    }
    if emb.images[src.identity()] != dst.identities() {
        return Err("identity is not preserved".into());
    }
    for a in 0..ns {
        if emb.images[src.converse(a)] != dst.converse_set(&emb.images[a]) {
            return Err(format!("converse is not preserved at {}", src.label(a)));
        }
    }
    for a in 0..ns {
        for b in 0..ns {
            let lhs = dst.compose(&emb.images[a], &emb.images[b]);
            let mut rhs = AtomSet::new(nd);
            for c in src.compose_atoms(a, b).iter() {
                rhs.union_with(&emb.images[c]);
            }
            if lhs != rhs {
                return Err(format!("composition is not preserved at ({}, {})", src.label(a), src.label(b)));
            }
        }
    }
    Ok(())
}

struct Search<'a> {
    src: &'a AtomStructure,
    dst: &'a AtomStructure,
    family: &'a dyn ImageFamily,
    // target atoms r with (p, q, r) consistent, indexed p * nd + q
    dst_pairs: Vec<Vec<AtomId>>,
    src_products: Vec<AtomSet>,
    diversity: AtomSet,
    nodes: u64,
    leaves: u64,
}

#[derive(Clone)]
struct State {
    colour: Vec<Option<AtomId>>,
    domain: Vec<AtomSet>,
}

impl<'a> Search<'a> {
    fn new(src: &'a AtomStructure, dst: &'a AtomStructure, family: &'a dyn ImageFamily) -> Self {
        let (ns, nd) = (src.atom_count(), dst.atom_count());
        let dst_pairs =
            (0..nd * nd).map(|i| (0..nd).filter(|&r| dst.consistent(i / nd, i % nd, r)).collect()).collect();
        let src_products = (0..ns * ns).map(|i| src.compose_atoms(i / ns, i % ns)).collect();
        let diversity = AtomSet::from_iter(ns, src.diversity_atoms());
        Search { src, dst, family, dst_pairs, src_products, diversity, nodes: 0, leaves: 0 }
    }

    fn run(&mut self) -> Option<Embedding> {
        let (ns, nd) = (self.src.atom_count(), self.dst.atom_count());
        if nd < ns {
            return None;
        }
        let self_converse = AtomSet::from_iter(ns, (0..ns).filter(|&a| self.src.converse(a) == a));
        let mut state = State { colour: vec![None; nd], domain: Vec::with_capacity(nd) };
        for x in 0..nd {
            let mut d = self.diversity.clone();
            if self.dst.converse(x) == x {
                d.intersect_with(&self_converse);
            }
            state.domain.push(d);
        }
        let e = self.dst.identity();
        state.domain[e] = AtomSet::singleton(ns, self.src.identity());
        if !self.assign(&mut state, e, self.src.identity()) {
            return None;
        }
        self.descend(state)
    }

    /// Colours `x` (and its converse) and forward-checks every consistent
    /// target triple touching an assigned pair.
    fn assign(&self, st: &mut State, x: AtomId, c: AtomId) -> bool {
        let xc = self.dst.converse(x);
        let cc = self.src.converse(c);
        if x == xc && c != cc {
            return false;
        }
        if !st.domain[x].contains(c) || !st.domain[xc].contains(cc) {
            return false;
        }
        st.colour[x] = Some(c);
        st.colour[xc] = Some(cc);
        let nd = self.dst.atom_count();
        let ns = self.src.atom_count();
        let fresh = if x == xc { vec![x] } else { vec![x, xc] };
        let assigned: Vec<AtomId> = (0..nd).filter(|&q| st.colour[q].is_some()).collect();
        for &p in &fresh {
            for &q in &assigned {
                for (u, v) in [(p, q), (q, p)] {
                    let allowed = &self.src_products[st.colour[u].unwrap() * ns + st.colour[v].unwrap()];
                    for &r in &self.dst_pairs[u * nd + v] {
                        match st.colour[r] {
                            Some(cr) => {
                                if !allowed.contains(cr) {
                                    return false;
                                }
                            }
                            None => {
                                st.domain[r].intersect_with(allowed);
                                if st.domain[r].is_empty() {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn descend(&mut self, st: State) -> Option<Embedding> {
        self.nodes += 1;
        let unassigned: Vec<AtomId> = (0..st.colour.len()).filter(|&x| st.colour[x].is_none()).collect();
        let mut used = AtomSet::new(self.src.atom_count());
        for c in st.colour.iter().flatten() {
            used.insert(*c);
        }
        let missing = self.diversity.difference(&used).count();
        if missing > unassigned.len() {
            return None;
        }
        let Some(&var) = unassigned.iter().min_by_key(|&&x| (st.domain[x].count(), x)) else {
            return self.leaf(&st);
        };
        for c in st.domain[var].iter() {
            let mut next = st.clone();
            if self.assign(&mut next, var, c) {
                if let Some(e) = self.descend(next) {
                    return Some(e);
                }
            }
        }
        None
    }

    fn leaf(&mut self, st: &State) -> Option<Embedding> {
        self.leaves += 1;
        let (ns, nd) = (self.src.atom_count(), self.dst.atom_count());
        let mut images = vec![AtomSet::new(nd); ns];
        for (x, c) in st.colour.iter().enumerate() {
            images[c.unwrap()].insert(x);
        }
        if images.iter().any(|b| b.is_empty() || !self.family.admits(b)) {
            return None;
        }
        let emb = Embedding { images };
        verify_embedding(self.src, self.dst, &emb).ok().map(|_| emb)
    }
}
