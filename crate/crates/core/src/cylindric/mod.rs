//! Basic matrices, cylindric atom structures and cylindric set algebras.

mod matrix;
mod term;

pub use matrix::{
    ca_atom_structure, check_amalgamation, enumerate_basic_matrices, AmalgamationReport, AmalgamationWitness,
    BasicMatrix, CaAtomStructure,
};
pub use term::{
    check_ca_identities, check_term_inequality, full_set_algebra, parse_term, CaSetAlgebra, CaTerm, IdentityReport,
    TermCheckReport, TermInequality, DEFAULT_TUPLE_LIMIT,
};
