//! Exactly computable infinite set algebras: the rational interval algebra on
//! `[0,1)`, finite unions of its boxes, and finite/cofinite index sets. Used to
//! show that the substitution `s(0,1)` is additive but not completely additive.

mod fincof;
mod interval;
mod product;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use fincof::{BlockSet, FinCofSet, Mode};
pub use interval::{rat, IntervalSet, Rational};
pub use product::{subst01, Node, ProductBox, ProductSet, MAX_ARITY};

use crate::error::{Error, Result};

/// The first `size` nontrivial dyadic intervals, coarsest level first.
pub fn dyadic_family(size: usize) -> Vec<IntervalSet> {
    let mut out = Vec::with_capacity(size);
    let mut m = 1u32;
    while out.len() < size {
        for k in 0..(1u64 << m) {
            if out.len() == size {
                break;
            }
            out.push(IntervalSet::dyadic(k, m));
        }
        m += 1;
    }
    out
}

/// `X x ~X x U x ...` at the given arity.
pub fn separated_box(x: &IntervalSet, arity: usize) -> Result<ProductSet> {
    if arity < 2 {
        return Err(Error::InvalidParameter("separated boxes need arity at least 2".into()));
    }
    let mut b = vec![x.clone(), x.complement()];
    b.resize(arity, IntervalSet::unit());
    ProductSet::boxed(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GapVerdict {
    IsUnit,
    /// `x` times its complement is not below the candidate; `point` lies in
    /// the box and outside the candidate.
    Witness {
        x: IntervalSet,
        point: Vec<String>,
    },
    Inconclusive {
        family_size: usize,
    },
}

/// Looks for `X` in the dyadic test family with `X x ~X` not below `candidate`.
pub fn additivity_gap_witness(family_size: usize, candidate: &ProductSet) -> Result<GapVerdict> {
    if family_size == 0 {
        return Err(Error::InvalidParameter("family size must be at least 1".into()));
    }
    if !candidate.is_normal() {
        return Err(Error::NotNormalForm(candidate.to_string()));
    }
    if candidate.arity() < 2 {
        return Err(Error::InvalidParameter("candidate needs arity at least 2".into()));
    }
    if candidate.is_unit() {
        return Ok(GapVerdict::IsUnit);
    }
    let outside = candidate.complement().boxes();
    for x in dyadic_family(family_size) {
        let nx = x.complement();
        for b in &outside {
            let p = b[0].intersection(&x);
            let q = b[1].intersection(&nx);
            if let (Some(u), Some(v)) = (p.min(), q.min()) {
                let mut point = vec![u.clone(), v.clone()];
                point.extend(b[2..].iter().map(|s| s.min().expect("normal form boxes are nonempty").clone()));
                debug_assert!(!candidate.contains(&point));
                let point = point.iter().map(|r| r.to_string()).collect();
                return Ok(GapVerdict::Witness { x, point });
            }
        }
    }
    Ok(GapVerdict::Inconclusive { family_size })
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateRow {
    pub name: String,
    pub candidate: ProductSet,
    pub result: GapVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductDemoReport {
    pub arity: usize,
    pub family: usize,
    /// `subst01(X x ~X) = 0` for every family member.
    pub summands_empty: bool,
    /// `subst01` of the unit is the unit.
    pub sum_maps_to_unit: bool,
    pub candidates: Vec<CandidateRow>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ProductDemoReport {
    pub fn holds(&self) -> bool {
        self.summands_empty && self.sum_maps_to_unit
    }
}

/// Each summand `X x ~X` is sent to 0 while every upper bound of the family
/// tried here is either the unit or refuted by a separating `X`.
pub fn product_demo(family: usize, arity: usize) -> Result<ProductDemoReport> {
    let start = Instant::now();
    if family == 0 {
        return Err(Error::InvalidParameter("family size must be at least 1".into()));
    }
    let xs = dyadic_family(family);
    let mut summands_empty = true;
    for x in &xs {
        summands_empty &= subst01(&separated_box(x, arity)?).is_empty();
    }
    let unit = ProductSet::unit(arity)?;
    let sum_maps_to_unit = subst01(&unit) == unit;

    let mut corner = vec![IntervalSet::interval(rat(0, 1), rat(1, 4)); 2];
    corner.resize(arity, IntervalSet::unit());
    let mut partial = ProductSet::empty(arity)?;
    for x in &xs[..family.div_ceil(2)] {
        partial = partial.union(&separated_box(x, arity)?);
    }
    let named = vec![
        ("unit".to_string(), unit.clone()),
        ("unit minus [0,1/4)^2".to_string(), unit.difference(&ProductSet::boxed(corner)?)),
        ("empty".to_string(), ProductSet::empty(arity)?),
        (format!("union of the first {} summands", family.div_ceil(2)), partial),
    ];
    let mut candidates = Vec::new();
    for (name, candidate) in named {
        let result = additivity_gap_witness(family, &candidate)?;
        candidates.push(CandidateRow { name, candidate, result });
    }
    Ok(ProductDemoReport { arity, family, summands_empty, sum_maps_to_unit, candidates, elapsed: start.elapsed() })
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub x: String,
    pub in_filter: bool,
    pub denotation: String,
    pub contains_special: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RxReport {
    pub sample_k: u64,
    pub atoms: Vec<String>,
    pub atoms_nonzero: bool,
    pub atoms_disjoint: bool,
    /// Every tested `R_X` meets each sampled atom in 0 or the atom.
    pub atoms_minimal: bool,
    /// Every tested `R_X` that is not a singleton fails to be an atom.
    pub non_atoms_rejected: bool,
    /// Among tested `X`, only `J` gives an upper bound of all atoms.
    pub only_unit_bounds_atoms: bool,
    pub unit_contains_special: bool,
    /// The pointwise union of all atoms.
    pub union_of_atoms: String,
    pub union_omits_special: bool,
    pub union_is_element: bool,
    pub zero_is_empty: bool,
    pub cases: Vec<CaseRow>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RxReport {
    pub fn holds(&self) -> bool {
        self.atoms_nonzero
            && self.atoms_disjoint
            && self.atoms_minimal
            && self.non_atoms_rejected
            && self.only_unit_bounds_atoms
            && self.unit_contains_special
            && self.union_omits_special
            && !self.union_is_element
            && self.zero_is_empty
            && self.cases.iter().all(|c| c.in_filter == c.contains_special)
    }
}

/// Test sets over the first `k` indices: all finite subsets and their
/// complements when `k` is small, otherwise singletons, their complements,
/// prefixes and co-prefixes.
fn sample_sets(k: u64) -> Vec<FinCofSet> {
    let mut out = Vec::new();
    if k <= 8 {
        for mask in 0u64..(1 << k) {
            let s = FinCofSet::finite((0..k).filter(|i| mask >> i & 1 == 1));
            out.push(s.complement());
            out.push(s);
        }
    } else {
        for i in 0..=k {
            out.push(FinCofSet::finite(0..i));
            out.push(FinCofSet::cofinite(0..i));
            if i < k {
                out.push(FinCofSet::singleton(i));
                out.push(FinCofSet::cofinite([i]));
            }
        }
    }
    out
}

/// In `{R_X}` the atoms are the blocks `Q_k`, their only upper bound is the
/// unit, and that contains `Q_i` which their union misses.
pub fn rx_structure_demo(sample_k: u64) -> Result<RxReport> {
    let start = Instant::now();
    if sample_k < 2 {
        return Err(Error::InvalidParameter("sample_k must be at least 2".into()));
    }
    let atoms: Vec<BlockSet> = (0..sample_k).map(|k| BlockSet::r(&FinCofSet::singleton(k))).collect();
    let atoms_nonzero = atoms.iter().all(|a| !a.is_zero());
    let mut atoms_disjoint = true;
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i + 1..] {
            atoms_disjoint &= a.intersection(b).is_zero();
        }
    }

    let samples = sample_sets(sample_k);
    let mut atoms_minimal = true;
    let mut non_atoms_rejected = true;
    let mut only_unit_bounds_atoms = true;
    let unit = BlockSet::unit();
    for x in &samples {
        let rx = BlockSet::r(x);
        for a in &atoms {
            let m = rx.intersection(a);
            atoms_minimal &= m.is_zero() || m == *a;
        }
        let singleton = x.mode == Mode::Finite && x.support.len() == 1;
        if !singleton && !rx.is_zero() {
            // a nonzero R_Y strictly below R_X
            let k = x.witness_outside(&FinCofSet::empty()).expect("nonempty");
            let below = BlockSet::r(&FinCofSet::singleton(k));
            non_atoms_rejected &= below.is_subset(&rx) && below != rx;
        }
        // R_X bounds every atom iff X holds every index; J is the only such set.
        let bounds = x.witness_outside(&FinCofSet::empty()).is_some() && FinCofSet::all().witness_outside(x).is_none();
        only_unit_bounds_atoms &= bounds == (rx == unit);
        if bounds {
            only_unit_bounds_atoms &= atoms.iter().all(|a| a.is_subset(&rx));
        }
    }

    let union_of_atoms = BlockSet { blocks: FinCofSet::all(), special: false };
    let cases = [
        FinCofSet::empty(),
        FinCofSet::all(),
        FinCofSet::cofinite([0]),
        FinCofSet::cofinite([sample_k - 1]),
        FinCofSet::finite(0..sample_k),
        FinCofSet::singleton(sample_k - 1),
    ]
    .into_iter()
    .map(|x| {
        let d = BlockSet::r(&x);
        CaseRow { x: x.to_string(), in_filter: x.in_filter(), denotation: d.to_string(), contains_special: d.special }
    })
    .collect();

    Ok(RxReport {
        sample_k,
        atoms: atoms.iter().map(|a| a.to_string()).collect(),
        atoms_nonzero,
        atoms_disjoint,
        atoms_minimal,
        non_atoms_rejected,
        only_unit_bounds_atoms,
        unit_contains_special: BlockSet::r(&FinCofSet::all()).special,
        union_omits_special: !union_of_atoms.special,
        union_is_element: union_of_atoms.is_element(),
        union_of_atoms: union_of_atoms.to_string(),
        zero_is_empty: BlockSet::r(&FinCofSet::empty()).is_zero(),
        cases,
        elapsed: start.elapsed(),
    })
}
