use super::{bicolour_monk, ek23, graph_monk, AtomStructure, AtomStructureBuilder};
use crate::blur::{blowup_truncate, BlurParams, SafetyRule};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

/// Parses the line-oriented algebra text format:
///
/// ```text
/// # comment
/// atom a
/// identity 1'
/// conv a b
/// triple a b c
/// ```
pub fn parse_algebra_text(text: &str) -> Result<AtomStructure> {
    let mut b = AtomStructureBuilder::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: &str| Error::Parse { line: lineno + 1, msg: msg.to_string() };
        b = match words.as_slice() {
            ["atom", name] => b.atom(name),
            ["identity", name] => b.identity(name),
            ["conv", x, y] => b.conv(x, y),
            ["triple", x, y, z] => b.triple(x, y, z),
            [kw, ..] if ["atom", "identity", "conv", "triple"].contains(kw) => {
                return Err(err(&format!("wrong number of arguments to `{kw}`")))
            }
            [kw, ..] => return Err(err(&format!("unknown directive `{kw}`"))),
            [] => unreachable!(),
        };
    }
    b.build()
}

/// URI-style names for atom structures, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    Ek(usize),
    Bicolour(usize, usize),
    GraphMonk(PathBuf),
    File(PathBuf),
    Blowup { base: Box<AlgebraSpec>, n: usize, l: usize, depth: usize, safety: SafetyRule },
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<AtomStructure> {
        match self {
            AlgebraSpec::Ek(k) => ek23(*k),
            AlgebraSpec::Bicolour(n0, n1) => bicolour_monk(*n0, *n1),
            AlgebraSpec::GraphMonk(path) => graph_monk(&Graph::parse(&std::fs::read_to_string(path)?)?),
            AlgebraSpec::File(path) => parse_algebra_text(&std::fs::read_to_string(path)?),
            AlgebraSpec::Blowup { base, n, l, depth, safety } => {
                let m = base.build()?;
                let params = BlurParams::new(*n, *l, m.atom_count() - 1)?;
                Ok(blowup_truncate(&m, &params, *depth, *safety)?.structure)
            }
        }
    }
}

fn num(s: &str, whole: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Spec(whole.to_string()))
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Spec(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "ek" => Ok(AlgebraSpec::Ek(num(rest, s)?)),
            "bicolour" => {
                let (a, b) = rest.split_once(':').ok_or_else(bad)?;
                Ok(AlgebraSpec::Bicolour(num(a, s)?, num(b, s)?))
            }
            "graphmonk" if !rest.is_empty() => Ok(AlgebraSpec::GraphMonk(rest.into())),
            "file" if !rest.is_empty() => Ok(AlgebraSpec::File(rest.into())),
            "blowup" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let split = parts.iter().position(|p| p.contains('=')).ok_or_else(bad)?;
                if split == 0 {
                    return Err(bad());
                }
                let base: AlgebraSpec = parts[..split].join(":").parse()?;
                let (mut n, mut l, mut depth, mut safety) = (None, None, None, SafetyRule::default());
                for p in &parts[split..] {
                    let (key, val) = p.split_once('=').ok_or_else(bad)?;
                    match key {
                        "n" => n = Some(num(val, s)?),
                        "l" => l = Some(num(val, s)?),
                        "depth" => depth = Some(num(val, s)?),
                        "safety" => safety = val.parse()?,
                        _ => return Err(bad()),
                    }
                }
                Ok(AlgebraSpec::Blowup {
                    base: Box::new(base),
                    n: n.ok_or_else(bad)?,
                    l: l.ok_or_else(bad)?,
                    depth: depth.ok_or_else(bad)?,
                    safety,
                })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Ek(k) => write!(f, "ek:{k}"),
            AlgebraSpec::Bicolour(a, b) => write!(f, "bicolour:{a}:{b}"),
            AlgebraSpec::GraphMonk(p) => write!(f, "graphmonk:{}", p.display()),
            AlgebraSpec::File(p) => write!(f, "file:{}", p.display()),
            AlgebraSpec::Blowup { base, n, l, depth, safety } => {
                write!(f, "blowup:{base}:n={n}:l={l}:depth={depth}:safety={safety}")
            }
        }
    }
}
