//! Finite and cofinite subsets of the naturals, and the block algebra `R_X`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Finite,
    Cofinite,
}

/// Either `support` itself or the naturals minus `support`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinCofSet {
    pub mode: Mode,
    pub support: BTreeSet<u64>,
}

impl FinCofSet {
    pub fn finite<I: IntoIterator<Item = u64>>(items: I) -> Self {
        FinCofSet { mode: Mode::Finite, support: items.into_iter().collect() }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Self {
        FinCofSet { mode: Mode::Cofinite, support: missing.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::finite([])
    }

    pub fn all() -> Self {
        Self::cofinite([])
    }

    pub fn singleton(k: u64) -> Self {
        Self::finite([k])
    }

    pub fn contains(&self, k: u64) -> bool {
        match self.mode {
            Mode::Finite => self.support.contains(&k),
            Mode::Cofinite => !self.support.contains(&k),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.mode == Mode::Finite && self.support.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.mode == Mode::Cofinite && self.support.is_empty()
    }

    /// Membership in the cofinite filter, the decidable part of a
    /// non-principal ultrafilter.
    pub fn in_filter(&self) -> bool {
        self.mode == Mode::Cofinite
    }

    pub fn complement(&self) -> Self {
        let mode = match self.mode {
            Mode::Finite => Mode::Cofinite,
            Mode::Cofinite => Mode::Finite,
        };
        FinCofSet { mode, support: self.support.clone() }
    }

    pub fn union(&self, other: &Self) -> Self {
        use Mode::*;
        match (self.mode, other.mode) {
            (Finite, Finite) => Self::finite(self.support.union(&other.support).copied()),
            (Cofinite, Cofinite) => Self::cofinite(self.support.intersection(&other.support).copied()),
            (Finite, Cofinite) => Self::cofinite(other.support.difference(&self.support).copied()),
            (Cofinite, Finite) => Self::cofinite(self.support.difference(&other.support).copied()),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.intersection(&other.complement()).is_empty()
    }

    /// Some element of `self` outside `other`, if there is one.
    pub fn witness_outside(&self, other: &Self) -> Option<u64> {
        let d = self.intersection(&other.complement());
        match d.mode {
            Mode::Finite => d.support.iter().next().copied(),
            Mode::Cofinite => (0..).find(|k| !d.support.contains(k)),
        }
    }
}

impl fmt::Display for FinCofSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(|k| k.to_string()).collect();
        match self.mode {
            Mode::Finite => write!(f, "{{{}}}", items.join(",")),
            Mode::Cofinite if items.is_empty() => write!(f, "J"),
            Mode::Cofinite => write!(f, "J-{{{}}}", items.join(",")),
        }
    }
}

/// A union of blocks `Q_k` (`k` in `blocks`) plus, optionally, the
/// distinguished block `Q_i` lying outside the index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockSet {
    pub blocks: FinCofSet,
    pub special: bool,
}

impl BlockSet {
    pub fn zero() -> Self {
        BlockSet { blocks: FinCofSet::empty(), special: false }
    }

    pub fn unit() -> Self {
        BlockSet { blocks: FinCofSet::all(), special: true }
    }

    /// `R_X`: the blocks indexed by `X`, together with `Q_i` exactly when `X`
    /// is in the filter.
    pub fn r(x: &FinCofSet) -> Self {
        BlockSet { blocks: x.clone(), special: x.in_filter() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty() && !self.special
    }

    pub fn union(&self, other: &Self) -> Self {
        BlockSet { blocks: self.blocks.union(&other.blocks), special: self.special || other.special }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        BlockSet { blocks: self.blocks.intersection(&other.blocks), special: self.special && other.special }
    }

    pub fn complement(&self) -> Self {
        BlockSet { blocks: self.blocks.complement(), special: !self.special }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.blocks.is_subset(&other.blocks) && (!self.special || other.special)
    }

    /// Whether this denotation is `R_X` for some `X`.
    pub fn is_element(&self) -> bool {
        self.special == self.blocks.in_filter()
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.blocks)?;
        if self.special {
            write!(f, "+Q_i")?;
        }
        Ok(())
    }
}
