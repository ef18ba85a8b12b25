use crate::bitset::BitSet;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

/// Largest `|U|^n` accepted by [`full_set_algebra`].
pub const DEFAULT_TUPLE_LIMIT: usize = 1_000_000;

/// Terms over variables with Boolean operations, diagonals `d(i,j)`,
/// cylindrifications `c<i>`, replacements `s(i,j)` and transpositions
/// `p(i,j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CaTerm {
    Var(String),
    Zero,
    One,
    And(Box<CaTerm>, Box<CaTerm>),
    Or(Box<CaTerm>, Box<CaTerm>),
    Not(Box<CaTerm>),
    Diag(usize, usize),
    Cyl(usize, Box<CaTerm>),
    /// `s(i,j) x = {s : s[i <- s_j] ∈ x}`.
    Subst(usize, usize, Box<CaTerm>),
    /// `p(i,j) x = {s : s ∘ (i j) ∈ x}`.
    Transpose(usize, usize, Box<CaTerm>),
}

impl CaTerm {
    /// `s(0,1) c1 x & s(1,0) c0 x`
    pub fn tau() -> Self {
        parse_term("s(0,1) c1 x & s(1,0) c0 x").unwrap()
    }

    /// `p(0,1) x`
    pub fn tau4() -> Self {
        parse_term("p(0,1) x").unwrap()
    }

    /// `c1(c0 x & s(0,1) c1 y) & c1 x & c0 y`
    pub fn tau_binary() -> Self {
        parse_term("c1(c0 x & s(0,1) c1 y) & c1 x & c0 y").unwrap()
    }

    /// `c3(s(1,3) c3 x & s(0,3) c3 y)`
    pub fn tau4_binary() -> Self {
        parse_term("c3(s(1,3) c3 x & s(0,3) c3 y)").unwrap()
    }

    pub fn max_index(&self) -> Option<usize> {
        use CaTerm::*;
        match self {
            Var(_) | Zero | One => None,
            And(a, b) | Or(a, b) => a.max_index().max(b.max_index()),
            Not(a) => a.max_index(),
            Diag(i, j) => Some(*i.max(j)),
            Cyl(i, a) => Some(*i).max(a.max_index()),
            Subst(i, j, a) | Transpose(i, j, a) => Some(*i.max(j)).max(a.max_index()),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        fn walk(t: &CaTerm, out: &mut Vec<String>) {
            use CaTerm::*;
            match t {
                Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Zero | One | Diag(..) => {}
                And(a, b) | Or(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Not(a) | Cyl(_, a) | Subst(_, _, a) | Transpose(_, _, a) => walk(a, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for CaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CaTerm::*;
        match self {
            Var(v) => write!(f, "{v}"),
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            And(a, b) => write!(f, "({a} & {b})"),
            Or(a, b) => write!(f, "({a} | {b})"),
            Not(a) => write!(f, "-{a}"),
            Diag(i, j) => write!(f, "d({i},{j})"),
            Cyl(i, a) => write!(f, "c{i}({a})"),
            Subst(i, j, a) => write!(f, "s({i},{j})({a})"),
            Transpose(i, j, a) => write!(f, "p({i},{j})({a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(usize),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|e| perr(format!("`{s}`: {e}")))?));
        } else if "()&|-!,".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(perr(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn perr(msg: String) -> Error {
    Error::Parse { line: 1, msg }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn eat(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(perr(format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn num(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            other => Err(perr(format!("expected an index, found {other:?}"))),
        }
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.eat('(')?;
        let i = self.num()?;
        self.eat(',')?;
        let j = self.num()?;
        self.eat(')')?;
        Ok((i, j))
    }

    fn expr(&mut self) -> Result<CaTerm> {
        let mut t = self.and()?;
        while self.peek() == Some(&Tok::Sym('|')) {
            self.pos += 1;
            t = CaTerm::Or(Box::new(t), Box::new(self.and()?));
        }
        Ok(t)
    }

    fn and(&mut self) -> Result<CaTerm> {
        let mut t = self.unary()?;
        while self.peek() == Some(&Tok::Sym('&')) {
            self.pos += 1;
            t = CaTerm::And(Box::new(t), Box::new(self.unary()?));
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<CaTerm> {
        let open_next = self.peek_at(1) == Some(&Tok::Sym('('));
        match self.peek().cloned() {
            Some(Tok::Sym('-')) | Some(Tok::Sym('!')) => {
                self.pos += 1;
                Ok(CaTerm::Not(Box::new(self.unary()?)))
            }
            Some(Tok::Ident(id))
                if id.len() > 1 && id.starts_with('c') && id[1..].bytes().all(|b| b.is_ascii_digit()) =>
            {
                self.pos += 1;
                let i = id[1..].parse().map_err(|e| perr(format!("`{id}`: {e}")))?;
                Ok(CaTerm::Cyl(i, Box::new(self.unary()?)))
            }
            Some(Tok::Ident(id)) if id == "s" && open_next => {
                self.pos += 1;
                let (i, j) = self.pair()?;
                Ok(CaTerm::Subst(i, j, Box::new(self.unary()?)))
            }
            // `p3(0,1)`: the dimension subscript is accepted and ignored.
            Some(Tok::Ident(id)) if id.starts_with('p') && id[1..].bytes().all(|b| b.is_ascii_digit()) && open_next => {
                self.pos += 1;
                let (i, j) = self.pair()?;
                Ok(CaTerm::Transpose(i, j, Box::new(self.unary()?)))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<CaTerm> {
        let open_next = self.peek_at(1) == Some(&Tok::Sym('('));
        match self.peek().cloned() {
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let t = self.expr()?;
                self.eat(')')?;
                Ok(t)
            }
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(CaTerm::Zero)
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(CaTerm::One)
            }
            Some(Tok::Ident(id)) if id == "d" && open_next => {
                self.pos += 1;
                let (i, j) = self.pair()?;
                Ok(CaTerm::Diag(i, j))
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                Ok(CaTerm::Var(id))
            }
            other => Err(perr(format!("unexpected {other:?}"))),
        }
    }
}

/// Parses the term syntax, e.g. `c0(x & s(1,0) c1 x)`. `&` binds tighter
/// than `|`; `-` or `!` is complement.
pub fn parse_term(text: &str) -> Result<CaTerm> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(format!("trailing input at token {}", p.pos)));
    }
    Ok(t)
}

impl FromStr for CaTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// The full cylindric set algebra on `n`-tuples over `{0..base}`. Tuple
/// `s` has index `Σ s_i · base^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaSetAlgebra {
    pub base: usize,
    pub dim: usize,
    pub size: usize,
}

pub fn full_set_algebra(base: usize, dim: usize) -> Result<CaSetAlgebra> {
    CaSetAlgebra::with_limit(base, dim, DEFAULT_TUPLE_LIMIT)
}

impl CaSetAlgebra {
    pub fn with_limit(base: usize, dim: usize, limit: usize) -> Result<Self> {
        if base == 0 || dim == 0 {
            return Err(Error::InvalidParameter("base and dimension must be >= 1".into()));
        }
        let size = (0..dim)
            .try_fold(1usize, |acc, _| acc.checked_mul(base).filter(|&s| s <= limit))
            .ok_or_else(|| Error::LimitExceeded(format!("{base}^{dim} tuples exceeds {limit}")))?;
        Ok(CaSetAlgebra { base, dim, size })
    }

    pub fn unit(&self) -> BitSet {
        BitSet::full(self.size)
    }

    pub fn empty(&self) -> BitSet {
        BitSet::new(self.size)
    }

    fn stride(&self, i: usize) -> usize {
        self.base.pow(i as u32)
    }

    pub fn coord(&self, idx: usize, i: usize) -> usize {
        idx / self.stride(i) % self.base
    }

    pub fn tuple(&self, idx: usize) -> Vec<usize> {
        (0..self.dim).map(|i| self.coord(idx, i)).collect()
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().rev().fold(0, |acc, &c| acc * self.base + c)
    }

    fn with_coord(&self, idx: usize, i: usize, v: usize) -> usize {
        idx - self.coord(idx, i) * self.stride(i) + v * self.stride(i)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            Err(Error::IndexOutOfRange { index: i, dim: self.dim })
        } else {
            Ok(())
        }
    }

    pub fn set_of(&self, tuples: &[Vec<usize>]) -> BitSet {
        BitSet::from_iter(self.size, tuples.iter().map(|t| self.index(t)))
    }

    pub fn cyl(&self, i: usize, x: &BitSet) -> Result<BitSet> {
        self.check(i)?;
        let mut out = self.empty();
        for idx in x.iter() {
            for v in 0..self.base {
                out.insert(self.with_coord(idx, i, v));
            }
        }
        Ok(out)
    }

    pub fn diag(&self, i: usize, j: usize) -> Result<BitSet> {
        self.check(i)?;
        self.check(j)?;
        Ok(BitSet::from_iter(self.size, (0..self.size).filter(|&s| self.coord(s, i) == self.coord(s, j))))
    }

    pub fn subst(&self, i: usize, j: usize, x: &BitSet) -> Result<BitSet> {
        self.check(i)?;
        self.check(j)?;
        Ok(BitSet::from_iter(
            self.size,
            (0..self.size).filter(|&s| x.contains(self.with_coord(s, i, self.coord(s, j)))),
        ))
    }

    pub fn transpose(&self, i: usize, j: usize, x: &BitSet) -> Result<BitSet> {
        self.check(i)?;
        self.check(j)?;
        Ok(BitSet::from_iter(
            self.size,
            (0..self.size).filter(|&s| {
                let (a, b) = (self.coord(s, i), self.coord(s, j));
                x.contains(self.with_coord(self.with_coord(s, i, b), j, a))
            }),
        ))
    }

    pub fn eval(&self, t: &CaTerm, env: &HashMap<String, BitSet>) -> Result<BitSet> {
        use CaTerm::*;
        Ok(match t {
            Var(v) => {
                let x = env.get(v).ok_or_else(|| Error::InvalidParameter(format!("unbound variable `{v}`")))?;
                if x.universe() != self.size {
                    return Err(Error::InvalidParameter(format!("`{v}` is not a subset of the unit")));
                }
                x.clone()
            }
            Zero => self.empty(),
            One => self.unit(),
            And(a, b) => self.eval(a, env)?.intersection(&self.eval(b, env)?),
            Or(a, b) => self.eval(a, env)?.union(&self.eval(b, env)?),
            Not(a) => self.eval(a, env)?.complement(),
            Diag(i, j) => self.diag(*i, *j)?,
            Cyl(i, a) => self.cyl(*i, &self.eval(a, env)?)?,
            Subst(i, j, a) => self.subst(*i, *j, &self.eval(a, env)?)?,
            Transpose(i, j, a) => self.transpose(*i, *j, &self.eval(a, env)?)?,
        })
    }

    pub fn render(&self, x: &BitSet) -> Vec<Vec<usize>> {
        x.iter().map(|s| self.tuple(s)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermInequality {
    /// `p(0,1) x ≤ s(0,1) c1 x & s(1,0) c0 x`
    Tau4Le,
    /// The binary forms, over pairs of `c3`-closed elements.
    Polyadic,
}

impl FromStr for TermInequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tau4le" => Ok(TermInequality::Tau4Le),
            "polyadic" => Ok(TermInequality::Polyadic),
            _ => Err(Error::InvalidParameter(format!("unknown inequality `{s}`"))),
        }
    }
}

impl fmt::Display for TermInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermInequality::Tau4Le => "tau4le",
            TermInequality::Polyadic => "polyadic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermCheckReport {
    pub which: TermInequality,
    pub base: usize,
    pub dim: usize,
    pub exhaustive: bool,
    pub cases: u64,
    pub holds: bool,
    /// Variable assignments (as tuple lists) violating the inequality.
    pub counterexample: Option<Vec<(String, Vec<Vec<usize>>)>>,
}

const EXHAUSTIVE_BITS: usize = 24;

/// Checks `lhs ≤ rhs` exhaustively when the assignment space has at most
/// `2^24` points and `samples` is absent, otherwise on seeded random
/// assignments.
pub fn check_term_inequality(
    which: TermInequality,
    base: usize,
    dim: usize,
    samples: Option<u64>,
    seed: u64,
) -> Result<TermCheckReport> {
    let a = full_set_algebra(base, dim)?;
    let (lhs, rhs, closed) = match which {
        TermInequality::Tau4Le => {
            if dim < 2 {
                return Err(Error::InvalidParameter("tau4le needs dimension >= 2".into()));
            }
            (CaTerm::tau4(), CaTerm::tau(), None)
        }
        TermInequality::Polyadic => {
            if dim < 4 {
                return Err(Error::InvalidParameter("polyadic needs dimension >= 4".into()));
            }
            (CaTerm::tau4_binary(), CaTerm::tau_binary(), Some(3))
        }
    };
    let vars = lhs.variables();
    // Free points per variable: all tuples, or one tuple per c3-fibre.
    let points: Vec<usize> = match closed {
        None => (0..a.size).collect(),
        Some(k) => (0..a.size).filter(|&s| a.coord(s, k) == 0).collect(),
    };
    let expand = |bits: &dyn Fn(usize) -> bool| -> BitSet {
        let seed_set = BitSet::from_iter(a.size, points.iter().enumerate().filter(|(i, _)| bits(*i)).map(|(_, &p)| p));
        match closed {
            None => seed_set,
            Some(k) => a.cyl(k, &seed_set).unwrap(),
        }
    };
    let total_bits = points.len() * vars.len();
    let run = |assign: Vec<BitSet>| -> Result<Option<Vec<BitSet>>> {
        let env: HashMap<String, BitSet> = vars.iter().cloned().zip(assign.iter().cloned()).collect();
        let l = a.eval(&lhs, &env)?;
        let r = a.eval(&rhs, &env)?;
        Ok((!l.is_subset(&r)).then_some(assign))
    };
    let (exhaustive, cases, found) = match samples {
        None if total_bits <= EXHAUSTIVE_BITS => {
            let cases = 1u64 << total_bits;
            let p = points.len();
            let found = (0..cases)
                .into_par_iter()
                .map(|code| {
                    let assign = (0..vars.len()).map(|v| expand(&|i| code >> (v * p + i) & 1 == 1)).collect();
                    run(assign)
                })
                .find_map_first(|r| r.transpose())
                .transpose()?;
            (true, cases, found)
        }
        None => {
            return Err(Error::LimitExceeded(format!("2^{total_bits} assignments; pass a sample count")));
        }
        Some(n) => {
            let found = (0..n)
                .into_par_iter()
                .map(|k| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k));
                    let draws: Vec<Vec<bool>> =
                        vars.iter().map(|_| (0..points.len()).map(|_| rng.random_bool(0.5)).collect()).collect();
                    let assign = draws.iter().map(|d| expand(&|i| d[i])).collect();
                    run(assign)
                })
                .find_map_first(|r| r.transpose())
                .transpose()?;
            (false, n, found)
        }
    };
    Ok(TermCheckReport {
        which,
        base,
        dim,
        exhaustive,
        cases,
        holds: found.is_none(),
        counterexample: found.map(|assign| vars.iter().cloned().zip(assign.iter().map(|x| a.render(x))).collect()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub base: usize,
    pub dim: usize,
    pub cases: u64,
    /// Name of each identity that failed, with the offending element.
    pub failures: Vec<(String, Vec<Vec<usize>>)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `c_i c_i x = c_i x`, `x ≤ c_i x` and `d_ii = 1` over every subset `x`.
pub fn check_ca_identities(base: usize, dim: usize) -> Result<IdentityReport> {
    let a = full_set_algebra(base, dim)?;
    if a.size > 20 {
        return Err(Error::LimitExceeded(format!("2^{} subsets", a.size)));
    }
    let mut failures = Vec::new();
    for i in 0..dim {
        if a.diag(i, i)? != a.unit() {
            failures.push((format!("d{i}{i} = 1"), Vec::new()));
        }
    }
    let found: Vec<(String, Vec<Vec<usize>>)> = (0u64..1 << a.size)
        .into_par_iter()
        .flat_map_iter(|code| {
            let x = BitSet::from_iter(a.size, (0..a.size).filter(|&s| code >> s & 1 == 1));
            let mut bad = Vec::new();
            for i in 0..dim {
                let c = a.cyl(i, &x).unwrap();
                if a.cyl(i, &c).unwrap() != c {
                    bad.push((format!("c{i} c{i} x = c{i} x"), a.render(&x)));
                }
                if !x.is_subset(&c) {
                    bad.push((format!("x <= c{i} x"), a.render(&x)));
                }
            }
            bad
        })
        .collect();
    failures.extend(found);
    Ok(IdentityReport { base, dim, cases: 1 << a.size, failures })
}
