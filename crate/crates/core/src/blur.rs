//! Blur conditions and finite truncations of blow-up-and-blur atom
//! structures.
//!
//! Blur sets are `l`-element subsets of the diversity atoms of `M`, stored as
//! bit masks over positions `0..k` (position `p` is the `p`-th diversity
//! atom). `k` is therefore capped at 64.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::ra::{AtomId, AtomSet, AtomStructure, ImageFamily};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

/// `E(i, j, k)`: the three ranks, read as a set, lie in arithmetic
/// progression. `E(i, i, i)` holds; two distinct values never do.
pub fn evenly_distributed(i: u64, j: u64, k: u64) -> bool {
    let mut v = [i, j, k];
    v.sort_unstable();
    if v[0] == v[2] {
        true
    } else if v[0] == v[1] || v[1] == v[2] {
        false
    } else {
        v[1] - v[0] == v[2] - v[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlurParams {
    pub n: usize,
    pub l: usize,
    pub k: usize,
}

impl BlurParams {
    pub fn new(n: usize, l: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("dimension n must be >= 3, got {n}")));
        }
        if l < 2 {
            return Err(Error::InvalidParameter(format!("blur width l must be >= 2, got {l}")));
        }
        if k < l {
            return Err(Error::InvalidParameter(format!("J_l is empty: k = {k} < l = {l}")));
        }
        if k > 64 {
            return Err(Error::LimitExceeded(format!("at most 64 diversity atoms, got {k}")));
        }
        Ok(BlurParams { n, l, k })
    }

    /// `l >= 2n - 1` and `k >= (2n - 1) l`.
    pub fn in_wide_regime(&self) -> bool {
        self.l >= 2 * self.n - 1 && self.k >= (2 * self.n - 1) * self.l
    }

    /// All `l`-subsets of `0..k` in lexicographic order.
    pub fn blurs(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..self.l).collect();
        loop {
            out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
            let mut i = self.l;
            while i > 0 && idx[i - 1] == self.k - self.l + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return out;
            }
            idx[i - 1] += 1;
            for j in i..self.l {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// `(V_2..V_n, W_2..W_n)` as blur masks.
type MaskPair = (Vec<u64>, Vec<u64>);

fn mask_atoms(mask: u64, div: &[AtomId]) -> Vec<AtomId> {
    (0..div.len()).filter(|&p| mask >> p & 1 == 1).map(|p| div[p]).collect()
}

/// `V_2..V_n, W_2..W_n` with no `T` in `J_l` working for all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct J4Witness {
    pub v: Vec<Vec<AtomId>>,
    pub w: Vec<Vec<AtomId>>,
}

/// `P_2..P_n, Q_2..Q_n, W` with `W ∩ P_2;Q_2 ∩ … ∩ P_n;Q_n = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct J5Witness {
    pub p: Vec<AtomId>,
    pub q: Vec<AtomId>,
    pub w: Vec<AtomId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlurReport {
    pub params: BlurParams,
    pub wide_regime: bool,
    pub j4_holds: bool,
    pub j4_counterexample: Option<J4Witness>,
    pub j5_holds: bool,
    pub j5_counterexample: Option<J5Witness>,
    /// `"orbits"` when the structure is invariant under all permutations of
    /// its diversity atoms, `"generic"` otherwise.
    pub j4_strategy: String,
    /// Number of `J4` cases evaluated (orbit representatives or mask tuples).
    pub j4_cases: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn diversity_of(m: &AtomStructure, params: &BlurParams) -> Result<Vec<AtomId>> {
    let div = m.diversity_atoms();
    if div.len() != params.k {
        return Err(Error::InvalidParameter(format!(
            "structure has {} diversity atoms but k = {}",
            div.len(),
            params.k
        )));
    }
    Ok(div)
}

/// `good[b * k + a]`: positions `c` with `a ≤ b;c`.
fn good_masks(m: &AtomStructure, div: &[AtomId]) -> Vec<u64> {
    let k = div.len();
    let mut good = vec![0u64; k * k];
    for b in 0..k {
        for a in 0..k {
            for c in 0..k {
                if m.consistent(div[b], div[c], div[a]) {
                    good[b * k + a] |= 1 << c;
                }
            }
        }
    }
    good
}

fn allowed(good: &[u64], k: usize, v: u64, w: u64) -> u64 {
    let mut out = if k == 64 { !0 } else { (1u64 << k) - 1 };
    for a in (0..k).filter(|&a| v >> a & 1 == 1) {
        for b in (0..k).filter(|&b| w >> b & 1 == 1) {
            out &= good[b * k + a];
        }
    }
    out
}

/// Whether consistency among the structure's atoms is invariant under every
/// permutation of the diversity atoms.
pub fn fully_symmetric(m: &AtomStructure) -> bool {
    let n = m.atom_count();
    if !m.is_symmetric() {
        return false;
    }
    let e = m.identity();
    let mut seen: HashMap<[u8; 3], bool> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = [a, b, c];
                // Pattern: identity marker, else index of first equal entry.
                let mut key = [0u8; 3];
                for i in 0..3 {
                    key[i] = if t[i] == e { 9 } else { (0..=i).find(|&j| t[j] == t[i]).unwrap() as u8 };
                }
                let v = m.consistent(a, b, c);
                if *seen.entry(key).or_insert(v) != v {
                    return false;
                }
            }
        }
    }
    true
}

/// Decides `(J4)_n` and `(J5)_n` for the blur family `J_l` of `M`.
pub fn check_blur(m: &AtomStructure, params: &BlurParams) -> Result<BlurReport> {
    let start = Instant::now();
    let params = BlurParams::new(params.n, params.l, params.k)?;
    let div = diversity_of(m, &params)?;
    let good = good_masks(m, &div);
    let (j4, strategy, cases) = if fully_symmetric(m) {
        let (w, c) = j4_orbits(&good, &params);
        (w, "orbits", c)
    } else {
        let (w, c) = j4_generic(&good, &params);
        (w, "generic", c)
    };
    let j5 = j5_search(m, &div, &params);
    let to_j4 = |(vs, ws): (Vec<u64>, Vec<u64>)| J4Witness {
        v: vs.iter().map(|&x| mask_atoms(x, &div)).collect(),
        w: ws.iter().map(|&x| mask_atoms(x, &div)).collect(),
    };
    Ok(BlurReport {
        params,
        wide_regime: params.in_wide_regime(),
        j4_holds: j4.is_none(),
        j4_counterexample: j4.map(to_j4),
        j5_holds: j5.is_none(),
        j5_counterexample: j5,
        j4_strategy: strategy.to_string(),
        j4_cases: cases,
        elapsed: start.elapsed(),
    })
}

/// Enumerates orbit representatives of `(V_2..V_n, W_2..W_n)` under the full
/// symmetric group on diversity atoms: an orbit is determined by how many
/// atoms carry each membership signature.
fn j4_orbits(good: &[u64], p: &BlurParams) -> (Option<MaskPair>, u64) {
    let sets = 2 * (p.n - 1);
    let sigs = 1usize << sets;
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut counts = vec![0usize; sigs];
    let mut caps = vec![p.l; sets];
    enumerate_counts(1, p.k, &mut counts, &mut caps, &mut reps);

    let k = p.k;
    let l = p.l;
    let half = p.n - 1;
    let found = reps.par_iter().find_map_first(|counts| {
        let mut masks = vec![0u64; sets];
        let mut next = 0;
        for (sig, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                for (s, m) in masks.iter_mut().enumerate() {
                    if sig >> s & 1 == 1 {
                        *m |= 1 << next;
                    }
                }
                next += 1;
            }
        }
        let (vs, ws) = masks.split_at(half);
        let meet = vs.iter().zip(ws).fold(!0u64, |acc, (&v, &w)| acc & allowed(good, k, v, w));
        ((meet.count_ones() as usize) < l).then(|| (vs.to_vec(), ws.to_vec()))
    });
    (found, reps.len() as u64)
}

fn enumerate_counts(
    sig: usize,
    left: usize,
    counts: &mut Vec<usize>,
    caps: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let sets = caps.len();
    if sig == counts.len() {
        if caps.iter().all(|&c| c == 0) {
            counts[0] = left;
            out.push(counts.clone());
            counts[0] = 0;
        }
        return;
    }
    // Every set still needing members must be reachable by a later signature;
    // a set s is only covered by signatures with bit s, and all signatures
    // >= sig with that bit remain, so no extra pruning is needed beyond caps.
    let max = (0..sets).filter(|&s| sig >> s & 1 == 1).map(|s| caps[s]).min().unwrap_or(0).min(left);
    for c in 0..=max {
        for s in (0..sets).filter(|&s| sig >> s & 1 == 1) {
            caps[s] -= c;
        }
        counts[sig] = c;
        if remaining_feasible(sig + 1, caps) {
            enumerate_counts(sig + 1, left - c, counts, caps, out);
        }
        counts[sig] = 0;
        for s in (0..sets).filter(|&s| sig >> s & 1 == 1) {
            caps[s] += c;
        }
    }
}

// A set with remaining capacity needs some signature >= next containing it.
fn remaining_feasible(next: usize, caps: &[usize]) -> bool {
    let sigs = 1usize << caps.len();
    caps.iter().enumerate().all(|(s, &c)| c == 0 || (next..sigs).any(|sig| sig >> s & 1 == 1))
}

/// Fallback for structures without full symmetry: deduplicate the allowed
/// masks of all `(V, W)` pairs, keep the inclusion-minimal ones, and search
/// tuples of them.
fn j4_generic(good: &[u64], p: &BlurParams) -> (Option<MaskPair>, u64) {
    let blurs = p.blurs();
    let mut by_mask: HashMap<u64, (u64, u64)> = HashMap::new();
    let mut order: Vec<u64> = Vec::new();
    for &v in &blurs {
        for &w in &blurs {
            let m = allowed(good, p.k, v, w);
            if let std::collections::hash_map::Entry::Vacant(e) = by_mask.entry(m) {
                e.insert((v, w));
                order.push(m);
            }
        }
    }
    let minimal: Vec<u64> = order.iter().copied().filter(|&m| !order.iter().any(|&o| o != m && o & !m == 0)).collect();
    let half = p.n - 1;
    let mut cases = 0u64;
    let mut pick = vec![0usize; half];
    loop {
        cases += 1;
        let meet = pick.iter().fold(!0u64, |acc, &i| acc & minimal[i]);
        if (meet.count_ones() as usize) < p.l {
            let pairs: Vec<(u64, u64)> = pick.iter().map(|&i| by_mask[&minimal[i]]).collect();
            return (Some((pairs.iter().map(|x| x.0).collect(), pairs.iter().map(|x| x.1).collect())), cases);
        }
        let mut i = 0;
        while i < half {
            pick[i] += 1;
            if pick[i] < minimal.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == half {
            return (None, cases);
        }
    }
}

fn j5_search(m: &AtomStructure, div: &[AtomId], p: &BlurParams) -> Option<J5Witness> {
    let k = p.k;
    let mut by_mask: HashMap<u64, (usize, usize)> = HashMap::new();
    let mut order = Vec::new();
    for a in 0..k {
        for b in 0..k {
            let mut mask = 0u64;
            for c in 0..k {
                if m.consistent(div[a], div[b], div[c]) {
                    mask |= 1 << c;
                }
            }
            if let std::collections::hash_map::Entry::Vacant(e) = by_mask.entry(mask) {
                e.insert((a, b));
                order.push(mask);
            }
        }
    }
    let half = p.n - 1;
    let full = if k == 64 { !0 } else { (1u64 << k) - 1 };
    let mut pick = vec![0usize; half];
    loop {
        let meet = pick.iter().fold(full, |acc, &i| acc & order[i]);
        let outside = full & !meet;
        if outside.count_ones() as usize >= p.l {
            let mut w = 0u64;
            for c in (0..k).filter(|&c| outside >> c & 1 == 1).take(p.l) {
                w |= 1 << c;
            }
            let pairs: Vec<(usize, usize)> = pick.iter().map(|&i| by_mask[&order[i]]).collect();
            return Some(J5Witness {
                p: pairs.iter().map(|x| div[x.0]).collect(),
                q: pairs.iter().map(|x| div[x.1]).collect(),
                w: mask_atoms(w, div),
            });
        }
        let mut i = 0;
        while i < half {
            pick[i] += 1;
            if pick[i] < order.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == half {
            return None;
        }
    }
}

impl J4Witness {
    /// Literal replay: no `T ∈ J_l` satisfies the condition.
    pub fn reproduces(&self, m: &AtomStructure, params: &BlurParams) -> bool {
        let div = m.diversity_atoms();
        params.blurs().iter().all(|&t| {
            let t = mask_atoms(t, &div);
            self.v
                .iter()
                .zip(&self.w)
                .any(|(vi, wi)| vi.iter().any(|&a| wi.iter().any(|&b| t.iter().any(|&c| !m.consistent(b, c, a)))))
        })
    }
}

impl J5Witness {
    pub fn reproduces(&self, m: &AtomStructure) -> bool {
        let n = m.atom_count();
        let mut meet = AtomSet::from_iter(n, self.w.iter().copied());
        for (&p, &q) in self.p.iter().zip(&self.q) {
            meet.intersect_with(&m.compose_atoms(p, q));
        }
        meet.is_empty()
    }
}

/// How forbidden triples of `M` behave on blown-up copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SafetyRule {
    /// Consistent iff the base triple is consistent in `M` and, whenever the
    /// ranks are evenly distributed, the three blurs are safe (every triple
    /// drawn from `V × W × T` is consistent in `M`).
    #[default]
    Guarded,
    /// Consistent iff the base triple is consistent in `M`, or it is
    /// forbidden but not (same blur on all three and evenly distributed
    /// ranks).
    Override,
}

impl fmt::Display for SafetyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SafetyRule::Guarded => "guarded",
            SafetyRule::Override => "override",
        })
    }
}

impl FromStr for SafetyRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "guarded" => Ok(SafetyRule::Guarded),
            "override" => Ok(SafetyRule::Override),
            _ => Err(Error::InvalidParameter(format!("unknown safety rule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlownAtom {
    /// Finite stand-in for the `ω` coordinate.
    pub rank: usize,
    /// Diversity atom of `M`.
    pub base: AtomId,
    /// Index into [`BlurParams::blurs`].
    pub blur: usize,
}

#[derive(Debug, Clone)]
pub struct Blowup {
    pub structure: AtomStructure,
    pub params: BlurParams,
    pub depth: usize,
    pub safety: SafetyRule,
    /// `None` for the identity atom.
    pub atoms: Vec<Option<BlownAtom>>,
    pub blurs: Vec<u64>,
}

impl Blowup {
    pub fn index_of(&self, rank: usize, base_pos: usize, blur: usize) -> AtomId {
        1 + (rank * self.params.k + base_pos) * self.blurs.len() + blur
    }

    /// The column of a base atom: every rank and blur.
    pub fn base_column(&self, base: AtomId) -> AtomSet {
        let n = self.structure.atom_count();
        AtomSet::from_iter(
            n,
            self.atoms.iter().enumerate().filter(|(_, a)| a.as_ref().is_some_and(|a| a.base == base)).map(|(i, _)| i),
        )
    }
}

/// Splits every diversity atom of `M` into `depth × |J_l|` copies.
pub fn blowup_truncate(m: &AtomStructure, params: &BlurParams, depth: usize, safety: SafetyRule) -> Result<Blowup> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be >= 1".into()));
    }
    let params = BlurParams::new(params.n, params.l, params.k)?;
    if !m.is_symmetric() {
        return Err(Error::InvalidParameter("blow-up needs a symmetric structure".into()));
    }
    let div = diversity_of(m, &params)?;
    let blurs = params.blurs();
    let nb = blurs.len();
    let k = params.k;

    let mut labels = vec![m.label(m.identity()).to_string()];
    let mut atoms = vec![None];
    for rank in 0..depth {
        for (pos, &base) in div.iter().enumerate() {
            for (bi, &mask) in blurs.iter().enumerate() {
                let names: Vec<&str> = mask_atoms(mask, &div).iter().map(|&a| m.label(a)).collect();
                labels.push(format!("({rank},{},{{{}}})", m.label(base), names.join(",")));
                atoms.push(Some(BlownAtom { rank, base: div[pos], blur: bi }));
            }
        }
    }
    let total = labels.len();

    // safe[(x * nb + y) * nb + z]: every triple from V_x × V_y × V_z is M-consistent.
    let safe: Vec<bool> = if nb * nb * nb <= 1 << 20 {
        let mut s = vec![false; nb * nb * nb];
        for x in 0..nb {
            for y in 0..nb {
                for z in 0..nb {
                    s[(x * nb + y) * nb + z] = triple_safe(m, &div, blurs[x], blurs[y], blurs[z]);
                }
            }
        }
        s
    } else {
        return Err(Error::LimitExceeded(format!("{nb} blurs is too many for a tabulated blow-up")));
    };
    let base_ok: Vec<bool> = {
        let mut t = vec![false; k * k * k];
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    t[(a * k + b) * k + c] = m.consistent(div[a], div[b], div[c]);
                }
            }
        }
        t
    };
    let decode = move |i: usize| {
        let j = i - 1;
        (j / (k * nb), (j / nb) % k, j % nb)
    };
    let rule = move |a: AtomId, b: AtomId, c: AtomId| -> bool {
        if a == 0 || b == 0 || c == 0 {
            return match (a, b, c) {
                (0, x, y) | (x, 0, y) | (x, y, 0) => x == y,
                _ => unreachable!(),
            };
        }
        let (r, pa, va) = decode(a);
        let (s, pb, vb) = decode(b);
        let (t, pc, vc) = decode(c);
        let ok = base_ok[(pa * k + pb) * k + pc];
        let even = evenly_distributed(r as u64, s as u64, t as u64);
        match safety {
            SafetyRule::Guarded => ok && (!even || safe[(va * nb + vb) * nb + vc]),
            SafetyRule::Override => ok || !(va == vb && vb == vc && even),
        }
    };
    let structure = AtomStructure::from_rule(labels, 0, (0..total).collect(), rule);
    Ok(Blowup { structure, params, depth, safety, atoms, blurs })
}

fn triple_safe(m: &AtomStructure, div: &[AtomId], x: u64, y: u64, z: u64) -> bool {
    let (xs, ys, zs) = (mask_atoms(x, div), mask_atoms(y, div), mask_atoms(z, div));
    xs.iter().all(|&a| ys.iter().all(|&b| zs.iter().all(|&c| m.consistent(a, b, c))))
}

/// Finite surrogate for the term algebra of the blow-up: per blur `W`, the
/// slab `{(r, a, W)}` may be met in finitely many ranks or missed in
/// finitely many ranks, where "finitely many" means at most `⌈depth/2⌉`.
#[derive(Debug, Clone)]
pub struct TermApproxFamily {
    /// For each blur, the `(rank, atom)` pairs of its slab.
    pub slabs: Vec<Vec<(usize, AtomId)>>,
    pub depth: usize,
    pub bound: usize,
    pub atom_count: usize,
}

pub fn term_approx_elements(blown: &Blowup) -> TermApproxFamily {
    let mut slabs = vec![Vec::new(); blown.blurs.len()];
    for (i, a) in blown.atoms.iter().enumerate() {
        if let Some(a) = a {
            slabs[a.blur].push((a.rank, i));
        }
    }
    TermApproxFamily {
        slabs,
        depth: blown.depth,
        bound: blown.depth.div_ceil(2),
        atom_count: blown.structure.atom_count(),
    }
}

impl TermApproxFamily {
    fn ranks_touched(&self, slab: &[(usize, AtomId)], pick: impl Fn(AtomId) -> bool) -> usize {
        let mut seen = BitSet::new(self.depth);
        for &(r, a) in slab {
            if pick(a) {
                seen.insert(r);
            }
        }
        seen.count()
    }

    pub fn contains(&self, x: &AtomSet) -> bool {
        self.slabs.iter().all(|slab| {
            self.ranks_touched(slab, |a| x.contains(a)) <= self.bound
                || self.ranks_touched(slab, |a| !x.contains(a)) <= self.bound
        })
    }

    /// Two members whose union is not a member, if the surrogate bound
    /// breaks union closure.
    pub fn union_closure_counterexample(&self) -> Option<(AtomSet, AtomSet)> {
        let slab = self.slabs.first()?;
        let mut by_rank: Vec<Option<AtomId>> = vec![None; self.depth];
        for &(r, a) in slab {
            by_rank[r].get_or_insert(a);
        }
        let picks: Vec<AtomId> = by_rank.into_iter().flatten().collect();
        if picks.len() <= self.bound {
            return None;
        }
        let x = AtomSet::from_iter(self.atom_count, picks[..self.bound].iter().copied());
        let y = AtomSet::singleton(self.atom_count, picks[self.bound]);
        let u = x.union(&y);
        (self.contains(&x) && self.contains(&y) && !self.contains(&u)).then_some((x, y))
    }
}

impl ImageFamily for TermApproxFamily {
    fn admits(&self, block: &AtomSet) -> bool {
        self.contains(block)
    }
}
