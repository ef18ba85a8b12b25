//! Slow, literal reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use atomlab_core::games::Winner;
use atomlab_core::ra::{verify_embedding, AtomStructureBuilder, Embedding, ImageFamily};
use atomlab_core::{AtomId, AtomSet, AtomStructure, BasicMatrix, CaAtomStructure};

// ---------------------------------------------------------------- structures

/// Every atom structure with one identity and at most two diversity atoms:
/// all converse patterns, all cycle-closed sets of diversity triangles.
pub fn small_structures() -> Vec<(String, AtomStructure)> {
    let mut out = Vec::new();
    type Pattern<'a> = (&'a [&'a str], &'a [(&'a str, &'a str)]);
    let patterns: [Pattern; 4] = [(&[], &[]), (&["a"], &[]), (&["a", "b"], &[]), (&["a", "b"], &[("a", "b")])];
    for (atoms, convs) in patterns {
        let conv = |x: &str| -> String {
            for (p, q) in convs {
                if x == *p {
                    return q.to_string();
                }
                if x == *q {
                    return p.to_string();
                }
            }
            x.to_string()
        };
        // orbits of diversity triangles under the two cycle transforms
        let mut orbits: Vec<Vec<[String; 3]>> = Vec::new();
        let mut seen: HashSet<[String; 3]> = HashSet::new();
        for x in atoms {
            for y in atoms {
                for z in atoms {
                    let t = [x.to_string(), y.to_string(), z.to_string()];
                    if seen.contains(&t) {
                        continue;
                    }
                    let mut orbit = vec![t.clone()];
                    seen.insert(t);
                    let mut i = 0;
                    while i < orbit.len() {
                        let [a, b, c] = orbit[i].clone();
                        for next in [[conv(&a), c.clone(), b.clone()], [c.clone(), conv(&b), a.clone()]] {
                            if seen.insert(next.clone()) {
                                orbit.push(next);
                            }
                        }
                        i += 1;
                    }
                    orbits.push(orbit);
                }
            }
        }
        for mask in 0u32..(1 << orbits.len()) {
            let mut b = AtomStructureBuilder::new().identity("1'").triple("1'", "1'", "1'");
            for x in atoms {
                b = b.atom(x).triple("1'", x, x);
            }
            for (p, q) in convs {
                b = b.conv(p, q);
            }
            for (i, orbit) in orbits.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let [x, y, z] = &orbit[0];
                    b = b.triple(x, y, z);
                }
            }
            let name = format!("atoms={atoms:?} conv={convs:?} orbits={mask:b}");
            out.push((name, b.build().expect("small structure builds")));
        }
    }
    out
}

// ---------------------------------------------------------------- axioms

/// `a;b` by scanning every atom.
pub fn compose_naive(s: &AtomStructure, x: &[bool], y: &[bool]) -> Vec<bool> {
    let n = s.atom_count();
    (0..n).map(|c| (0..n).any(|a| x[a] && (0..n).any(|b| y[b] && s.consistent(a, b, c)))).collect()
}

/// The first atom triple where `(a;b);c` and `a;(b;c)` differ.
pub fn associativity_failure(s: &AtomStructure) -> Option<(AtomId, AtomId, AtomId)> {
    let n = s.atom_count();
    let atom = |a: AtomId| -> Vec<bool> { (0..n).map(|i| i == a).collect() };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = compose_naive(s, &compose_naive(s, &atom(a), &atom(b)), &atom(c));
                let right = compose_naive(s, &atom(a), &compose_naive(s, &atom(b), &atom(c)));
                if left != right {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Identity law, converse involution, Peircean cycle law and associativity
/// on atoms.
pub fn ra_axioms_oracle(s: &AtomStructure) -> bool {
    let n = s.atom_count();
    let e = s.identity();
    let conv = |a: AtomId| s.converse(a);
    let identity =
        (0..n).all(|a| (0..n).all(|c| s.consistent(e, a, c) == (a == c) && s.consistent(a, e, c) == (a == c)));
    let involution = (0..n).all(|a| conv(conv(a)) == a);
    let cycle = (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| {
                let t = s.consistent(a, b, c);
                t == s.consistent(conv(a), c, b) && t == s.consistent(c, conv(b), a)
            })
        })
    });
    identity && involution && cycle && associativity_failure(s).is_none()
}

// ---------------------------------------------------------------- games

type Net = Vec<Vec<AtomId>>;

/// Literal game tree over raw networks: no canonical forms, memoized on
/// the exact labelling.
pub struct GameOracle<'a> {
    pub s: &'a AtomStructure,
    pub ca: Option<HashSet<[AtomId; 3]>>,
    pub budget: Option<usize>,
    memo: RefCell<HashMap<(Net, usize), bool>>,
}

impl<'a> GameOracle<'a> {
    pub fn triangle(s: &'a AtomStructure, budget: Option<usize>) -> Self {
        GameOracle { s, ca: None, budget, memo: RefCell::default() }
    }

    pub fn cylindric(s: &'a AtomStructure, ca: &CaAtomStructure, budget: Option<usize>) -> Self {
        let set = ca.atoms.iter().map(|m| [m.upper[0], m.upper[1], m.upper[2]]).collect();
        GameOracle { s, ca: Some(set), budget, memo: RefCell::default() }
    }

    fn valid(&self, net: &[Vec<AtomId>]) -> bool {
        let s = self.s;
        let n = net.len();
        let base = (0..n).all(|i| s.is_identity(net[i][i]))
            && (0..n).all(|i| (0..n).all(|j| net[j][i] == s.converse(net[i][j])));
        base && match &self.ca {
            None => (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| s.consistent(net[x][z], net[z][y], net[x][y])))),
            Some(set) => {
                (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| set.contains(&[net[i][j], net[i][k], net[j][k]]))))
            }
        }
    }

    fn demand_legal(&self, l: AtomId, a: AtomId, b: AtomId) -> bool {
        match &self.ca {
            None => self.s.consistent(a, b, l),
            Some(set) => set.contains(&[l, a, self.s.converse(b)]),
        }
    }

    fn extend(&self, net: &[Vec<AtomId>], col: &[AtomId]) -> Vec<Vec<AtomId>> {
        let mut out: Vec<Vec<AtomId>> = net.to_vec();
        for (w, row) in out.iter_mut().enumerate() {
            row.push(col[w]);
        }
        let mut last: Vec<AtomId> = col.iter().map(|&l| self.s.converse(l)).collect();
        last.push(self.s.identity());
        out.push(last);
        out
    }

    fn value(&self, net: &[Vec<AtomId>], r: usize) -> bool {
        if r == 0 {
            return true;
        }
        let key = (net.to_vec(), r);
        if let Some(&v) = self.memo.borrow().get(&key) {
            return v;
        }
        let v = self.value_uncached(net, r);
        self.memo.borrow_mut().insert(key, v);
        v
    }

    fn value_uncached(&self, net: &[Vec<AtomId>], r: usize) -> bool {
        let atoms = self.s.atom_count();
        let n = net.len();
        let dels: Vec<Option<usize>> = match self.budget {
            Some(k) if n >= k => (0..n).map(Some).collect(),
            _ => vec![None],
        };
        for del in dels {
            let keep: Vec<usize> = (0..n).filter(|&v| Some(v) != del).collect();
            let sub: Vec<Vec<AtomId>> = keep.iter().map(|&i| keep.iter().map(|&j| net[i][j]).collect()).collect();
            let m = sub.len();
            for x in 0..m {
                for y in 0..m {
                    for a in 0..atoms {
                        for b in 0..atoms {
                            if !self.demand_legal(sub[x][y], a, b) {
                                continue;
                            }
                            let mut ok = self.ca.is_none()
                                && (0..m).any(|z| sub[x][z] == a && sub[z][y] == b && self.value(&sub, r - 1));
                            if !ok && self.budget.is_none_or(|k| m < k) {
                                let total = atoms.pow(m as u32);
                                ok = (0..total).any(|code| {
                                    let col: Vec<AtomId> = (0..m).map(|w| code / atoms.pow(w as u32) % atoms).collect();
                                    if col[x] != a || self.s.converse(col[y]) != b {
                                        return false;
                                    }
                                    let next = self.extend(&sub, &col);
                                    self.valid(&next) && self.value(&next, r - 1)
                                });
                            }
                            if !ok {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    pub fn winner(&self, r: usize) -> Winner {
        let e = self.s.identity();
        for a in 0..self.s.atom_count() {
            let net = vec![vec![e, a], vec![self.s.converse(a), e]];
            if self.valid(&net) && !self.value(&net, r) {
                return Winner::Forall;
            }
        }
        Winner::Exists
    }
}

// ---------------------------------------------------------------- blurs

fn subsets(items: &[AtomId], l: usize) -> Vec<Vec<AtomId>> {
    if l == 0 {
        return vec![vec![]];
    }
    if items.len() < l {
        return vec![];
    }
    let mut with: Vec<Vec<AtomId>> = subsets(&items[1..], l - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], l));
    with
}

/// All `l`-subsets of the diversity atoms.
pub fn blur_family(m: &AtomStructure, l: usize) -> Vec<Vec<AtomId>> {
    subsets(&m.diversity_atoms(), l)
}

/// Whether `T` serves the pair `(V, W)`: every `a ∈ V`, `b ∈ W`, `c ∈ T`
/// has `a ≤ b;c`.
pub fn j4_pair_ok(m: &AtomStructure, v: &[AtomId], w: &[AtomId], t: &[AtomId]) -> bool {
    v.iter().all(|&a| w.iter().all(|&b| t.iter().all(|&c| m.consistent(b, c, a))))
}

fn tuples(count: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|p| (0..count).map(move |i| [p.clone(), vec![i]].concat())).collect();
    }
    out
}

/// `(J4)_n` by enumeration of every `(V_i, W_i)` tuple.
pub fn j4_oracle(m: &AtomStructure, n: usize, l: usize) -> bool {
    let j = blur_family(m, l);
    let pairs: Vec<(usize, usize)> = (0..j.len()).flat_map(|v| (0..j.len()).map(move |w| (v, w))).collect();
    let serves: Vec<Vec<bool>> =
        pairs.iter().map(|&(v, w)| j.iter().map(|t| j4_pair_ok(m, &j[v], &j[w], t)).collect()).collect();
    tuples(pairs.len(), n - 1).iter().all(|tuple| (0..j.len()).any(|t| tuple.iter().all(|&p| serves[p][t])))
}

/// `c ≤ p;q` for diversity `c`.
pub fn in_composition(m: &AtomStructure, p: AtomId, q: AtomId, c: AtomId) -> bool {
    m.consistent(p, q, c)
}

/// `(J5)_n` by enumeration of every `(P_i, Q_i)` tuple and `W`.
pub fn j5_oracle(m: &AtomStructure, n: usize, l: usize) -> bool {
    let j = blur_family(m, l);
    let div = m.diversity_atoms();
    let pairs: Vec<(AtomId, AtomId)> = div.iter().flat_map(|&p| div.iter().map(move |&q| (p, q))).collect();
    tuples(pairs.len(), n - 1).iter().all(|tuple| {
        j.iter().all(|w| w.iter().any(|&c| tuple.iter().all(|&i| in_composition(m, pairs[i].0, pairs[i].1, c))))
    })
}

// ---------------------------------------------------------------- bases

/// Every `dim × dim` atom matrix with identity diagonal, converse symmetry
/// and consistent triangles, as full row-major entry lists.
pub fn basic_matrices_oracle(s: &AtomStructure, dim: usize) -> Vec<Vec<AtomId>> {
    let atoms = s.atom_count();
    let cells = dim * dim;
    let mut out = Vec::new();
    let mut code = vec![0usize; cells];
    loop {
        let e = |i: usize, j: usize| code[i * dim + j];
        let ok = (0..dim).all(|i| s.is_identity(e(i, i)))
            && (0..dim).all(|i| (0..dim).all(|j| e(j, i) == s.converse(e(i, j))))
            && (0..dim).all(|i| (0..dim).all(|j| (0..dim).all(|k| s.consistent(e(i, k), e(k, j), e(i, j)))));
        if ok {
            out.push(code.clone());
        }
        let mut p = 0;
        while p < cells {
            code[p] += 1;
            if code[p] < atoms {
                break;
            }
            code[p] = 0;
            p += 1;
        }
        if p == cells {
            break;
        }
    }
    out
}

pub fn full_entries(s: &AtomStructure, m: &BasicMatrix) -> Vec<AtomId> {
    let d = m.dim;
    (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| m.entry(s, i, j)).collect()
}

/// Literal amalgamation property over full entry lists: whenever `m` and
/// `n` agree off `{i, j}` some `l` agrees with `m` off `i` and with `n`
/// off `j`.
pub fn amalgamation_oracle(set: &[Vec<AtomId>], dim: usize) -> bool {
    let agree_off = |x: &[AtomId], y: &[AtomId], skip: &[usize]| {
        (0..dim).all(|a| (0..dim).all(|b| skip.contains(&a) || skip.contains(&b) || x[a * dim + b] == y[a * dim + b]))
    };
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            for m in set {
                for n in set {
                    if agree_off(m, n, &[i, j]) && !set.iter().any(|l| agree_off(m, l, &[i]) && agree_off(l, n, &[j])) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------- terms

/// Full cylindric set algebra on `base^dim` with sets as bit masks.
pub struct SetOracle {
    pub base: usize,
    pub dim: usize,
    pub size: usize,
}

impl SetOracle {
    pub fn new(base: usize, dim: usize) -> Self {
        let size = base.pow(dim as u32);
        assert!(size <= 128);
        SetOracle { base, dim, size }
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.dim];
        for slot in t.iter_mut() {
            *slot = idx % self.base;
            idx /= self.base;
        }
        t
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().rev().fold(0, |acc, &v| acc * self.base + v)
    }

    fn image(&self, x: u128, f: impl Fn(&[usize]) -> bool) -> u128 {
        let _ = x;
        (0..self.size).filter(|&i| f(&self.tuple(i))).fold(0u128, |acc, i| acc | 1 << i)
    }

    fn has(&self, x: u128, t: &[usize]) -> bool {
        x >> self.index(t) & 1 == 1
    }

    pub fn cyl(&self, i: usize, x: u128) -> u128 {
        self.image(x, |s| {
            (0..self.base).any(|v| {
                let mut t = s.to_vec();
                t[i] = v;
                self.has(x, &t)
            })
        })
    }

    /// `{s : s[i <- s_j] ∈ x}`
    pub fn subst(&self, i: usize, j: usize, x: u128) -> u128 {
        self.image(x, |s| {
            let mut t = s.to_vec();
            t[i] = s[j];
            self.has(x, &t)
        })
    }

    pub fn swap(&self, i: usize, j: usize, x: u128) -> u128 {
        self.image(x, |s| {
            let mut t = s.to_vec();
            t.swap(i, j);
            self.has(x, &t)
        })
    }

    pub fn diag(&self, i: usize, j: usize) -> u128 {
        self.image(0, |s| s[i] == s[j])
    }

    pub fn unit(&self) -> u128 {
        if self.size == 128 {
            !0
        } else {
            (1u128 << self.size) - 1
        }
    }

    pub fn tau(&self, x: u128) -> u128 {
        self.subst(0, 1, self.cyl(1, x)) & self.subst(1, 0, self.cyl(0, x))
    }

    pub fn tau4(&self, x: u128) -> u128 {
        self.swap(0, 1, x)
    }
}

// ---------------------------------------------------------------- embeddings

/// Tries every map from target atoms onto source atoms.
pub fn embedding_oracle(src: &AtomStructure, dst: &AtomStructure, family: &dyn ImageFamily) -> bool {
    let (ns, nd) = (src.atom_count(), dst.atom_count());
    let total = ns.pow(nd as u32);
    (0..total).any(|code| {
        let mut images = vec![AtomSet::new(nd); ns];
        let mut c = code;
        for d in 0..nd {
            images[c % ns].insert(d);
            c /= ns;
        }
        images.iter().all(|x| !x.is_empty() && family.admits(x))
            && verify_embedding(src, dst, &Embedding { images }).is_ok()
    })
}

// ---------------------------------------------------------------- ramsey

pub fn has_mono_triangle(m: usize, colour: impl Fn(usize, usize) -> u8) -> bool {
    (0..m).any(|a| (a + 1..m).any(|b| (b + 1..m).any(|c| colour(a, b) == colour(a, c) && colour(a, c) == colour(b, c))))
}
