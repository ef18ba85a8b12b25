//! Finite unions of boxes `X1 x ... x Xn` over [`IntervalSet`], `n <= 4`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::interval::{IntervalSet, Rational};
use crate::error::{Error, Result};

pub const MAX_ARITY: usize = 4;

/// A box: one interval set per coordinate.
pub type ProductBox = Vec<IntervalSet>;

/// Column decomposition. At arity 1 a plain interval set; above that a list of
/// pairwise disjoint columns, each carrying the (constant) section over it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(IntervalSet),
    Cols(Vec<(IntervalSet, Node)>),
}

/// Unions of boxes in normal form: columns are disjoint, nonempty, carry
/// distinct nonempty sections, and are ordered by their least element. Equal
/// sets have equal normal forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSet {
    arity: usize,
    node: Node,
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ARITY {
        return Err(Error::InvalidParameter(format!("arity {n} not in 1..={MAX_ARITY}")));
    }
    Ok(())
}

fn normalise(boxes: &[&[IntervalSet]], arity: usize) -> Node {
    if arity == 1 {
        let mut u = IntervalSet::empty();
        for b in boxes {
            u = u.union(&b[0]);
        }
        return Node::Leaf(u);
    }
    let boxes: Vec<&[IntervalSet]> = boxes.iter().copied().filter(|b| b.iter().all(|x| !x.is_empty())).collect();
    let mut cuts: Vec<Rational> = vec![Rational::from_integer(0.into()), Rational::from_integer(1.into())];
    for b in &boxes {
        for (a, c) in b[0].parts() {
            cuts.push(a.clone());
            cuts.push(c.clone());
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut groups: Vec<(IntervalSet, Node)> = Vec::new();
    for w in cuts.windows(2) {
        let tails: Vec<&[IntervalSet]> = boxes.iter().filter(|b| b[0].contains(&w[0])).map(|b| &b[1..]).collect();
        if tails.is_empty() {
            continue;
        }
        let child = normalise(&tails, arity - 1);
        let cell = IntervalSet::interval(w[0].clone(), w[1].clone());
        match groups.iter_mut().find(|(_, c)| *c == child) {
            Some(g) => g.0 = g.0.union(&cell),
            None => groups.push((cell, child)),
        }
    }
    Node::Cols(groups)
}

fn node_boxes(node: &Node, prefix: &mut Vec<IntervalSet>, out: &mut Vec<ProductBox>) {
    match node {
        Node::Leaf(x) => {
            if !x.is_empty() {
                let mut b = prefix.clone();
                b.push(x.clone());
                out.push(b);
            }
        }
        Node::Cols(cols) => {
            for (x, child) in cols {
                prefix.push(x.clone());
                node_boxes(child, prefix, out);
                prefix.pop();
            }
        }
    }
}

fn node_contains(node: &Node, p: &[Rational]) -> bool {
    match node {
        Node::Leaf(x) => x.contains(&p[0]),
        Node::Cols(cols) => cols.iter().any(|(x, c)| x.contains(&p[0]) && node_contains(c, &p[1..])),
    }
}

impl ProductSet {
    pub fn from_boxes(arity: usize, boxes: &[ProductBox]) -> Result<Self> {
        check_arity(arity)?;
        if let Some(b) = boxes.iter().find(|b| b.len() != arity) {
            return Err(Error::InvalidParameter(format!("box of arity {} in a set of arity {arity}", b.len())));
        }
        let refs: Vec<&[IntervalSet]> = boxes.iter().map(|b| b.as_slice()).collect();
        Ok(ProductSet { arity, node: normalise(&refs, arity) })
    }

    /// Wraps a decomposition as given, without normalising it.
    pub fn from_node(arity: usize, node: Node) -> Result<Self> {
        check_arity(arity)?;
        Ok(ProductSet { arity, node })
    }

    pub fn empty(arity: usize) -> Result<Self> {
        Self::from_boxes(arity, &[])
    }

    pub fn unit(arity: usize) -> Result<Self> {
        Self::from_boxes(arity, &[vec![IntervalSet::unit(); arity]])
    }

    pub fn boxed(b: ProductBox) -> Result<Self> {
        Self::from_boxes(b.len(), &[b])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn boxes(&self) -> Vec<ProductBox> {
        let mut out = Vec::new();
        node_boxes(&self.node, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_normal(&self) -> bool {
        shape_ok(&self.node, self.arity)
            && Self::from_boxes(self.arity, &self.boxes()).map(|n| n.node == self.node).unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.boxes().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        Self::unit(self.arity).map(|u| u == *self).unwrap_or(false)
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        p.len() == self.arity && node_contains(&self.node, p)
    }

    fn same_arity(&self, other: &Self) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_arity(other);
        let mut b = self.boxes();
        b.extend(other.boxes());
        Self::from_boxes(self.arity, &b).expect("arity checked")
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_arity(other);
        let mut out = Vec::new();
        for x in self.boxes() {
            for y in other.boxes() {
                let b: ProductBox = x.iter().zip(&y).map(|(p, q)| p.intersection(q)).collect();
                if b.iter().all(|s| !s.is_empty()) {
                    out.push(b);
                }
            }
        }
        Self::from_boxes(self.arity, &out).expect("arity checked")
    }

    pub fn complement(&self) -> Self {
        let node = complement_node(&self.node, self.arity);
        Self::from_boxes(self.arity, &{
            let mut out = Vec::new();
            node_boxes(&node, &mut Vec::new(), &mut out);
            out
        })
        .expect("arity checked")
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

fn shape_ok(node: &Node, arity: usize) -> bool {
    match node {
        Node::Leaf(_) => arity == 1,
        Node::Cols(cols) => arity > 1 && cols.iter().all(|(_, c)| shape_ok(c, arity - 1)),
    }
}

fn unit_node(arity: usize) -> Node {
    if arity == 1 {
        Node::Leaf(IntervalSet::unit())
    } else {
        Node::Cols(vec![(IntervalSet::unit(), unit_node(arity - 1))])
    }
}

fn complement_node(node: &Node, arity: usize) -> Node {
    match node {
        Node::Leaf(x) => Node::Leaf(x.complement()),
        Node::Cols(cols) => {
            let mut covered = IntervalSet::empty();
            let mut out = Vec::new();
            for (x, c) in cols {
                covered = covered.union(x);
                out.push((x.clone(), complement_node(c, arity - 1)));
            }
            let rest = covered.complement();
            if !rest.is_empty() {
                out.push((rest, unit_node(arity - 1)));
            }
            Node::Cols(out)
        }
    }
}

/// `{s : s[0 <- s_1] in P}`: on a box, `X0 x X1 x R` goes to `U x (X0 & X1) x R`.
pub fn subst01(p: &ProductSet) -> ProductSet {
    assert!(p.arity >= 2, "subst01 needs arity at least 2");
    let boxes: Vec<ProductBox> = p
        .boxes()
        .into_iter()
        .map(|mut b| {
            let meet = b[0].intersection(&b[1]);
            b[0] = IntervalSet::unit();
            b[1] = meet;
            b
        })
        .collect();
    ProductSet::from_boxes(p.arity, &boxes).expect("arity checked")
}

impl fmt::Display for ProductSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let boxes = self.boxes();
        if boxes.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, b) in boxes.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let parts: Vec<String> = b.iter().map(|x| format!("({x})")).collect();
            write!(f, "{}", parts.join("x"))?;
        }
        Ok(())
    }
}

impl Serialize for ProductSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symsets::interval::rat;
    use proptest::prelude::*;

    fn iv(a: i64, b: i64, d: i64) -> IntervalSet {
        IntervalSet::interval(rat(a, d), rat(b, d))
    }

    fn arb_iv() -> impl Strategy<Value = IntervalSet> {
        (0i64..8, 1i64..=8).prop_map(|(a, w)| iv(a, a + w, 8))
    }

    fn arb_set(n: usize) -> impl Strategy<Value = ProductSet> {
        proptest::collection::vec(proptest::collection::vec(arb_iv(), n), 0..4)
            .prop_map(move |boxes| ProductSet::from_boxes(n, &boxes).unwrap())
    }

    fn grid(n: usize) -> Vec<Vec<Rational>> {
        let mut pts = vec![vec![]];
        for _ in 0..n {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    (0..8).map(move |k| {
                        let mut q = p.clone();
                        q.push(rat(2 * k + 1, 16));
                        q
                    })
                })
                .collect();
        }
        pts
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = ProductSet::from_boxes(
            2,
            &[vec![iv(0, 1, 2), IntervalSet::unit()], vec![iv(1, 2, 2), IntervalSet::unit()]],
        )
        .unwrap();
        assert_eq!(a, ProductSet::unit(2).unwrap());
        let b = ProductSet::from_boxes(2, &[vec![IntervalSet::unit(), iv(0, 1, 2)], vec![iv(0, 1, 4), iv(1, 2, 2)]])
            .unwrap();
        let c = ProductSet::from_boxes(2, &[vec![iv(0, 1, 4), IntervalSet::unit()], vec![iv(1, 4, 4), iv(0, 1, 2)]])
            .unwrap();
        assert_eq!(b, c);
        assert!(b.is_normal());
        let raw = ProductSet::from_node(
            2,
            Node::Cols(vec![
                (iv(0, 1, 2), Node::Leaf(IntervalSet::unit())),
                (iv(1, 2, 2), Node::Leaf(IntervalSet::unit())),
            ]),
        )
        .unwrap();
        assert!(!raw.is_normal());
    }

    #[test]
    fn subst_examples() {
        let u = ProductSet::unit(2).unwrap();
        assert_eq!(subst01(&u), u);
        let p = ProductSet::boxed(vec![iv(0, 1, 2), iv(1, 3, 4)]).unwrap();
        let expect = ProductSet::boxed(vec![IntervalSet::unit(), iv(1, 2, 4)]).unwrap();
        assert_eq!(subst01(&p), expect);
        // rational-point oracle: (s0,s1) in subst01(P) iff (s1,s1) in P
        for pt in grid(2) {
            let moved = vec![pt[1].clone(), pt[1].clone()];
            assert_eq!(subst01(&p).contains(&pt), p.contains(&moved));
        }
    }

    #[test]
    fn arity_limits() {
        assert!(ProductSet::unit(0).is_err());
        assert!(ProductSet::unit(5).is_err());
        assert!(ProductSet::from_boxes(2, &[vec![IntervalSet::unit()]]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn boolean_ops_match_points((n, a, b) in (1usize..=3).prop_flat_map(|n| (Just(n), arb_set(n), arb_set(n)))) {
            prop_assert!(a.is_normal());
            prop_assert_eq!(a.complement().complement(), a.clone());
            for pt in grid(n) {
                prop_assert_eq!(a.union(&b).contains(&pt), a.contains(&pt) || b.contains(&pt));
                prop_assert_eq!(a.intersection(&b).contains(&pt), a.contains(&pt) && b.contains(&pt));
                prop_assert_eq!(a.complement().contains(&pt), !a.contains(&pt));
            }
        }

        #[test]
        fn subst_additive(a in arb_set(2), b in arb_set(2)) {
            prop_assert_eq!(subst01(&a.union(&b)), subst01(&a).union(&subst01(&b)));
            for pt in grid(2) {
                let moved = vec![pt[1].clone(), pt[1].clone()];
                prop_assert_eq!(subst01(&a).contains(&pt), a.contains(&moved));
            }
        }

        #[test]
        fn subst_kills_separated_boxes(k in 0u64..16, m in 1u32..5) {
            let x = IntervalSet::dyadic(k % (1 << m), m);
            let p = ProductSet::boxed(vec![x.clone(), x.complement(), IntervalSet::unit()]).unwrap();
            prop_assert!(subst01(&p).is_empty());
        }
    }
}
