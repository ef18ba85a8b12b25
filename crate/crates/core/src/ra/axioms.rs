use super::{AtomId, AtomSet, AtomStructure};
use serde::{Deserialize, Serialize};

/// Outcome of one axiom check. A witness is present exactly on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Check<W> {
    Pass,
    Fail { witness: W },
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail { witness } => Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub triple: (AtomId, AtomId, AtomId),
    pub missing: (AtomId, AtomId, AtomId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityWitness {
    /// Where the identity sits in the offending triple (0 or 1).
    pub position: usize,
    pub b: AtomId,
    pub c: AtomId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssocWitness {
    pub a: AtomId,
    pub b: AtomId,
    pub c: AtomId,
    pub left: AtomSet,
    pub right: AtomSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub converse_involution: Check<AtomId>,
    pub cycle_law: Check<CycleWitness>,
    pub identity_law: Check<IdentityWitness>,
    pub associativity: Check<AssocWitness>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.converse_involution.passed()
            && self.cycle_law.passed()
            && self.identity_law.passed()
            && self.associativity.passed()
    }
}

/// Exhaustive check of the atom-level relation algebra axioms. Associativity
/// over atoms suffices because composition is completely additive.
pub fn check_ra_axioms(s: &AtomStructure) -> AxiomReport {
    AxiomReport {
        converse_involution: check_converse(s),
        cycle_law: check_cycles(s),
        identity_law: check_identity(s),
        associativity: check_associativity(s),
    }
}

fn check_converse(s: &AtomStructure) -> Check<AtomId> {
    let bad = (0..s.atom_count()).find(|&a| s.converse(s.converse(a)) != a || (s.is_identity(a) && s.converse(a) != a));
    match bad {
        Some(witness) => Check::Fail { witness },
        None => Check::Pass,
    }
}

impl CycleWitness {
    pub fn reproduces(&self, s: &AtomStructure) -> bool {
        let (a, b, c) = self.triple;
        s.consistent(a, b, c) && !s.consistent(self.missing.0, self.missing.1, self.missing.2)
    }
}

fn check_cycles(s: &AtomStructure) -> Check<CycleWitness> {
    for (a, b, c) in s.consistent_triples() {
        for missing in [(s.converse(a), c, b), (c, s.converse(b), a)] {
            if !s.consistent(missing.0, missing.1, missing.2) {
                return Check::Fail { witness: CycleWitness { triple: (a, b, c), missing } };
            }
        }
    }
    Check::Pass
}

impl IdentityWitness {
    pub fn reproduces(&self, s: &AtomStructure) -> bool {
        let e = s.identity();
        let got = if self.position == 0 { s.consistent(e, self.b, self.c) } else { s.consistent(self.b, e, self.c) };
        got != (self.b == self.c)
    }
}

fn check_identity(s: &AtomStructure) -> Check<IdentityWitness> {
    let n = s.atom_count();
    for position in 0..2 {
        for b in 0..n {
            for c in 0..n {
                let w = IdentityWitness { position, b, c };
                if w.reproduces(s) {
                    return Check::Fail { witness: w };
                }
            }
        }
    }
    Check::Pass
}

impl AssocWitness {
    pub fn reproduces(&self, s: &AtomStructure) -> bool {
        let n = s.atom_count();
        let (a, b, c) = (AtomSet::singleton(n, self.a), AtomSet::singleton(n, self.b), AtomSet::singleton(n, self.c));
        s.compose(&s.compose(&a, &b), &c) != s.compose(&a, &s.compose(&b, &c))
    }
}

fn check_associativity(s: &AtomStructure) -> Check<AssocWitness> {
    let n = s.atom_count();
    let products: Vec<AtomSet> = (0..n * n).map(|i| s.compose_atoms(i / n, i % n)).collect();
    let right_of = |x: &AtomSet, c: AtomId| {
        let mut out = AtomSet::new(n);
        for m in x.iter() {
            out.union_with(&products[m * n + c]);
        }
        out
    };
    for a in 0..n {
        for b in 0..n {
            let ab = &products[a * n + b];
            for c in 0..n {
                let left = right_of(ab, c);
                let bc = &products[b * n + c];
                let mut right = AtomSet::new(n);
                for m in bc.iter() {
                    right.union_with(&products[a * n + m]);
                }
                if left != right {
                    return Check::Fail { witness: AssocWitness { a, b, c, left, right } };
                }
            }
        }
    }
    Check::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ra::{ek23, AtomStructureBuilder};

    #[test]
    fn ek23_up_to_eight_passes() {
        for k in 1..=8 {
            assert!(check_ra_axioms(&ek23(k).unwrap()).all_pass(), "k={k}");
        }
    }

    #[test]
    fn ek1_with_monochromatic_cycle_added() {
        let s = AtomStructureBuilder::new()
            .atoms(["1'", "a"])
            .identity("1'")
            .triple("1'", "1'", "1'")
            .triple("1'", "a", "a")
            .triple("a", "a", "1'")
            .triple("a", "a", "a")
            .build()
            .unwrap();
        let r = check_ra_axioms(&s);
        assert!(r.identity_law.passed());
        assert!(r.cycle_law.passed());
        assert!(r.converse_involution.passed());
        // a;a = {1', a}: the two-element group-like structure, associative
        assert!(r.associativity.passed());
    }

    #[test]
    fn unclosed_cycles_are_reported() {
        let s = AtomStructureBuilder::new()
            .atoms(["1'", "a", "b"])
            .identity("1'")
            .conv("a", "b")
            .triple("1'", "1'", "1'")
            .triple("a", "b", "1'")
            .without_cycle_closure()
            .build()
            .unwrap();
        let r = check_ra_axioms(&s);
        let w = r.cycle_law.witness().expect("cycle law must fail");
        assert!(w.reproduces(&s));
        assert!(!r.all_pass());
    }

    #[test]
    fn witnesses_replay() {
        // Dead atom: identity law fails.
        let s = AtomStructureBuilder::new().atoms(["1'", "a"]).identity("1'").triple("1'", "1'", "1'").build().unwrap();
        let r = check_ra_axioms(&s);
        assert!(r.identity_law.witness().unwrap().reproduces(&s));
    }

    #[test]
    fn non_associative_example() {
        // a;a = {1', a}, b;b = {1'}, a;b = 0: (a;a);b = b but a;(a;b) = 0.
        let s = AtomStructureBuilder::new()
            .atoms(["1'", "a", "b"])
            .identity("1'")
            .triple("1'", "1'", "1'")
            .triple("1'", "a", "a")
            .triple("1'", "b", "b")
            .triple("a", "a", "a")
            .build()
            .unwrap();
        let r = check_ra_axioms(&s);
        let w = r.associativity.witness().expect("associativity must fail");
        assert!(w.reproduces(&s));
        assert!(r.cycle_law.passed() && r.identity_law.passed());
    }
}
