//! Finite atom structures of relation and cylindric algebras, the blur
//! conditions for blow-up-and-blur truncations, cylindric bases, bounded
//! representability games, exact graph certificates and exactly computable
//! infinite set algebras.
//!
//! Everything here is exact: integer or rational arithmetic only, and every
//! search is exhaustive within the bounds it is given.

pub mod bitset;
pub mod blur;
pub mod cylindric;
pub mod error;
pub mod games;
pub mod graphs;
pub mod ra;
pub mod symsets;

pub use bitset::BitSet;
pub use blur::{BlurParams, BlurReport, SafetyRule};
pub use cylindric::{BasicMatrix, CaAtomStructure, CaSetAlgebra, CaTerm};
pub use error::{Error, Result};
pub use games::{GameConfig, GameResult, Network, Variant, Winner};
pub use graphs::{Graph, GraphCertificate};
pub use ra::{AlgebraSpec, AtomId, AtomSet, AtomStructure, AxiomReport};
pub use symsets::{FinCofSet, IntervalSet, ProductSet};
