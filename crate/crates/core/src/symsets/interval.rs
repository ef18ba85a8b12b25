//! Finite unions of half-open rational intervals inside `[0,1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn zero() -> Rational {
    Rational::zero()
}

fn one() -> Rational {
    Rational::one()
}

/// Sorted, disjoint, non-adjacent intervals `[a,b)` with `0 <= a < b <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    parts: Vec<(Rational, Rational)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn unit() -> Self {
        IntervalSet { parts: vec![(zero(), one())] }
    }

    /// `[a,b)` clipped to the unit interval.
    pub fn interval(a: Rational, b: Rational) -> Self {
        Self::from_intervals(vec![(a, b)])
    }

    /// The dyadic interval `[k/2^m, (k+1)/2^m)`.
    pub fn dyadic(k: u64, m: u32) -> Self {
        let d = BigInt::from(1u8) << m;
        let a = BigRational::new(BigInt::from(k), d.clone());
        let b = BigRational::new(BigInt::from(k + 1), d);
        Self::interval(a, b)
    }

    pub fn from_intervals(raw: Vec<(Rational, Rational)>) -> Self {
        let mut v: Vec<(Rational, Rational)> =
            raw.into_iter().map(|(a, b)| (a.max(zero()), b.min(one()))).filter(|(a, b)| a < b).collect();
        v.sort();
        let mut parts: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match parts.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => parts.push((a, b)),
            }
        }
        IntervalSet { parts }
    }

    pub fn parts(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.parts.len() == 1 && self.parts[0].0.is_zero() && self.parts[0].1.is_one()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.parts.iter().any(|(a, b)| a <= q && q < b)
    }

    /// Least element, if any.
    pub fn min(&self) -> Option<&Rational> {
        self.parts.first().map(|p| &p.0)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut cur = zero();
        for (a, b) in &self.parts {
            if cur < *a {
                out.push((cur.clone(), a.clone()));
            }
            cur = b.clone();
        }
        if cur < one() {
            out.push((cur, one()));
        }
        IntervalSet { parts: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = self.parts.clone();
        v.extend(other.parts.iter().cloned());
        Self::from_intervals(v)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.parts.len() && j < other.parts.len() {
            let (a1, b1) = &self.parts[i];
            let (a2, b2) = &other.parts[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if lo < hi {
                out.push((lo.clone(), hi.clone()));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet { parts: out }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// A nonempty proper subset: the left half of the first interval.
    pub fn split(&self) -> Option<Self> {
        let (a, b) = self.parts.first()?;
        let mid = (a + b) / rat(2, 1);
        Some(Self::interval(a.clone(), mid))
    }

    /// A dyadic interval containing `u` and not `v`; both must lie in `[0,1)`.
    pub fn separate(u: &Rational, v: &Rational) -> Option<Self> {
        let unit = Self::unit();
        if u == v || !unit.contains(u) || !unit.contains(v) {
            return None;
        }
        let mut m = 0u32;
        loop {
            let scale = Rational::from_integer(BigInt::from(1u8) << m);
            let ku = (u * &scale).floor();
            let kv = (v * &scale).floor();
            if ku != kv {
                let a = &ku / &scale;
                let b = (&ku + one()) / &scale;
                return Some(Self::interval(a, b));
            }
            m += 1;
        }
    }
}

fn fmt_q(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, (a, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "[{},{})", fmt_q(a), fmt_q(b))?;
        }
        Ok(())
    }
}

fn parse_q(s: &str) -> Result<Rational> {
    let bad = || Error::Spec(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses the `Display` form, e.g. `[0,1/2)+[3/4,1)` or `{}`.
impl FromStr for IntervalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "{}" || s.is_empty() {
            return Ok(Self::empty());
        }
        let mut raw = Vec::new();
        for piece in s.split('+') {
            let body = piece
                .trim()
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::Spec(piece.to_string()))?;
            let (a, b) = body.split_once(',').ok_or_else(|| Error::Spec(piece.to_string()))?;
            raw.push((parse_q(a)?, parse_q(b)?));
        }
        Ok(Self::from_intervals(raw))
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
