use serde::{Deserialize, Serialize};

/// 2-or-more colouring of the edges of `K_m`, indexed by [`Self::index`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColouring {
    pub m: usize,
    pub colours: Vec<u8>,
}

impl EdgeColouring {
    pub fn new(m: usize, colours: Vec<u8>) -> Self {
        assert_eq!(colours.len(), m * m.saturating_sub(1) / 2, "colouring must be total");
        EdgeColouring { m, colours }
    }

    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> u8) -> Self {
        let mut colours = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                colours.push(f(u, v));
            }
        }
        EdgeColouring { m, colours }
    }

    /// Lexicographic position of `{u, v}` among pairs `u < v`.
    pub fn index(&self, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        u * (2 * self.m - u - 1) / 2 + (v - u - 1)
    }

    pub fn colour(&self, u: usize, v: usize) -> u8 {
        self.colours[self.index(u, v)]
    }
}

pub fn find_monochromatic_triangle(c: &EdgeColouring) -> Option<(usize, usize, usize)> {
    let m = c.m;
    for a in 0..m {
        for b in a + 1..m {
            let ab = c.colour(a, b);
            for d in b + 1..m {
                if c.colour(a, d) == ab && c.colour(b, d) == ab {
                    return Some((a, b, d));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyReport {
    pub m: usize,
    pub colourings: u64,
    pub all_have_triangle: bool,
    pub counterexample: Option<EdgeColouring>,
}

/// Checks every 2-colouring of `K_m` for a monochromatic triangle.
pub fn ramsey_exhaustive(m: usize) -> crate::Result<RamseyReport> {
    let edges = m * m.saturating_sub(1) / 2;
    if edges > 32 {
        return Err(crate::Error::LimitExceeded(format!("2^{edges} colourings")));
    }
    let total = 1u64 << edges;
    for bits in 0..total {
        let c = EdgeColouring::new(m, (0..edges).map(|i| (bits >> i & 1) as u8).collect());
        if find_monochromatic_triangle(&c).is_none() {
            return Ok(RamseyReport { m, colourings: bits + 1, all_have_triangle: false, counterexample: Some(c) });
        }
    }
    Ok(RamseyReport { m, colourings: total, all_have_triangle: true, counterexample: None })
}
