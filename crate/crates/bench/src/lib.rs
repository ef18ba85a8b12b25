//! Fixtures shared by the benchmarks.

use atomlab_core::blur::{blowup_truncate, Blowup, SafetyRule};
use atomlab_core::ra::ek23;
use atomlab_core::symsets::{dyadic_family, ProductBox};
use atomlab_core::{AtomStructure, BlurParams, CaAtomStructure, ProductSet};

pub fn ek(k: usize) -> AtomStructure {
    ek23(k).expect("k >= 1")
}

/// Dimension-3 basic matrices of `ek23(k)` as a cylindric atom structure.
pub fn ca_board(k: usize) -> CaAtomStructure {
    let s = ek(k);
    let atoms = atomlab_core::cylindric::enumerate_basic_matrices(&s, 3).expect("dimension 3");
    atomlab_core::cylindric::ca_atom_structure(&s, atoms).expect("nonempty")
}

pub fn blowup(k: usize, l: usize, depth: usize) -> Blowup {
    let params = BlurParams::new(3, l, k).expect("valid blur parameters");
    blowup_truncate(&ek(k), &params, depth, SafetyRule::Guarded).expect("symmetric base")
}

/// Union of the first `j` summands `X x ~X` of the dyadic family.
pub fn summand_union(j: usize) -> ProductSet {
    let boxes: Vec<ProductBox> = dyadic_family(j)
        .into_iter()
        .map(|x| {
            let nx = x.complement();
            vec![x, nx]
        })
        .collect();
    ProductSet::from_boxes(2, &boxes).expect("arity 2")
}
