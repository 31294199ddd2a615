//! Generalized Boolean functions over `Z_q`, their graphs, and the maps from
//! functions to root-of-unity sequences.
//!
//! Index convention used throughout: a sequence index `r` corresponds to the
//! variable assignment `x_α = (r >> α) & 1`, so `x_0` is the least
//! significant bit. The same convention applies to the integers `t` and `d`
//! whose binary vectors select codes and codewords.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::{Error, Result};

/// Largest supported number of variables in a single function.
pub const MAX_VARS: usize = 63;

/// Largest supported sequence length exponent (`2^MAX_LOG_LEN` entries).
pub const MAX_LOG_LEN: usize = 26;

/// A monomial `Π_{i∈S} x_i`, stored as the bitmask of `S`.
///
/// Ordered by degree, then lexicographically by sorted variable indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_vars(vars: &[usize]) -> Self {
        Monomial(vars.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, var: usize) -> bool {
        self.0 >> var & 1 == 1
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    /// Whether the monomial evaluates to 1 at the assignment encoded by `r`.
    #[inline]
    pub fn active(self, r: u64) -> bool {
        r & self.0 == self.0
    }

    fn without(self, var: usize) -> Self {
        Monomial(self.0 & !(1u64 << var))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (i, v) in self.vars().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

/// A generalized Boolean function `f: {0,1}^m → Z_q`, `q` even.
///
/// Stored as a map from monomials to nonzero coefficients in `[1, q)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gbf {
    m: usize,
    q: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl Gbf {
    /// The zero function of `m` variables over `Z_q`.
    pub fn zero(m: usize, q: u32) -> Result<Self> {
        if q < 2 || !q.is_multiple_of(2) {
            return Err(Error::InvalidModulus(q));
        }
        if m > MAX_VARS {
            return Err(Error::InvalidParams(format!(
                "{m} variables exceeds the supported {MAX_VARS}"
            )));
        }
        Ok(Self {
            m,
            q,
            terms: BTreeMap::new(),
        })
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.terms.iter().map(|(&mono, &c)| (mono, c))
    }

    pub fn coefficient(&self, mono: Monomial) -> u32 {
        self.terms.get(&mono).copied().unwrap_or(0)
    }

    /// Highest degree among nonzero terms (0 for constants and for zero).
    pub fn order(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Adds `coeff·Π x_i` for the given variables, reducing mod `q`.
    pub fn add_term(&mut self, vars: &[usize], coeff: i64) -> Result<()> {
        if let Some(&v) = vars.iter().find(|&&v| v >= self.m) {
            return Err(Error::InvalidParams(format!(
                "variable x{v} out of range for {} variables",
                self.m
            )));
        }
        self.add_monomial(Monomial::from_vars(vars), coeff);
        Ok(())
    }

    fn add_monomial(&mut self, mono: Monomial, coeff: i64) {
        let q = self.q as i64;
        let cur = self.coefficient(mono) as i64;
        let next = (cur + coeff).rem_euclid(q) as u32;
        if next == 0 {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, next);
        }
    }

    /// Value at the assignment whose bit `α` is `x_α`.
    #[inline]
    pub fn eval_index(&self, r: u64) -> u32 {
        let q = self.q as u64;
        let sum: u64 = self
            .terms
            .iter()
            .filter(|(mono, _)| mono.active(r))
            .map(|(_, &c)| c as u64)
            .sum();
        (sum % q) as u32
    }

    pub fn eval(&self, x: &[bool]) -> Result<u32> {
        if x.len() != self.m {
            return Err(Error::Arity {
                expected: self.m,
                got: x.len(),
            });
        }
        let r = x
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        Ok(self.eval_index(r))
    }

    /// Substitutes fixed bits for some variables. The variable index space
    /// is unchanged; substituted variables simply no longer occur.
    pub fn restrict(&self, assignments: &[(usize, bool)]) -> Result<Self> {
        if let Some(&(v, _)) = assignments.iter().find(|(v, _)| *v >= self.m) {
            return Err(Error::InvalidParams(format!("cannot restrict x{v}")));
        }
        let mut out = Self {
            m: self.m,
            q: self.q,
            terms: BTreeMap::new(),
        };
        'terms: for (&mono, &c) in &self.terms {
            let mut reduced = mono;
            for &(v, bit) in assignments {
                if mono.contains(v) {
                    if !bit {
                        continue 'terms;
                    }
                    reduced = reduced.without(v);
                }
            }
            out.add_monomial(reduced, c as i64);
        }
        Ok(out)
    }

    /// `f(1 - x_0, …, 1 - x_{m-1})`, expanded and reduced mod `q`.
    pub fn negate_vars(&self) -> Self {
        let mut out = Self {
            m: self.m,
            q: self.q,
            terms: BTreeMap::new(),
        };
        for (&mono, &c) in &self.terms {
            // Π_{i∈S} (1 - x_i) = Σ_{T⊆S} (-1)^{|T|} Π_{i∈T} x_i
            let full = mono.mask();
            let mut sub = full;
            loop {
                let sign = if sub.count_ones() % 2 == 0 { 1 } else { -1 };
                out.add_monomial(Monomial(sub), sign * c as i64);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & full;
            }
        }
        out
    }

    /// The weighted graph of the quadratic terms.
    pub fn graph(&self) -> Result<FunctionGraph> {
        let mut edges = BTreeMap::new();
        for (&mono, &w) in &self.terms {
            match mono.degree() {
                0 | 1 => {}
                2 => {
                    let mut vs = mono.vars();
                    let a = vs.next().expect("degree 2");
                    let b = vs.next().expect("degree 2");
                    edges.insert((a, b), w);
                }
                _ => return Err(Error::NotSecondOrder(mono.to_string())),
            }
        }
        Ok(FunctionGraph { m: self.m, edges })
    }

    /// `ψ(f)`: the length-`2^m` sequence of `ω_q^{f(r)}`.
    pub fn psi(&self) -> Result<RootSequence> {
        check_log_len(self.m)?;
        let exponents = (0..1u64 << self.m).map(|r| self.eval_index(r)).collect();
        Ok(RootSequence {
            delta: self.q as usize,
            exponents,
        })
    }
}

impl fmt::Display for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&mono, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (mono.degree(), c) {
                (0, c) => write!(f, "{c}")?,
                (_, 1) => write!(f, "{mono}")?,
                (_, c) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Parses a sum of products such as `"2*x0*x1 + x1 + 1"`.
///
/// Each product is a `*`-separated list of integer constants and variables
/// `x<i>`; repeated variables collapse (`x^2 = x` on bits). Coefficients are
/// reduced mod `q`. Whitespace is ignored.
pub fn parse_gbf(text: &str, m: usize, q: u32) -> Result<Gbf> {
    let mut f = Gbf::zero(m, q)?;
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    loop {
        let (mono, coeff) = parser.term(m, q)?;
        f.add_monomial(mono, coeff as i64);
        parser.skip_ws();
        match parser.peek() {
            None => break,
            Some(b'+') => parser.pos += 1,
            Some(c) => return Err(parser.error(format!("unexpected '{}'", c as char))),
        }
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number".into()));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn term(&mut self, m: usize, q: u32) -> Result<(Monomial, u64)> {
        let mut mono = Monomial::ONE;
        let mut coeff = 1u64;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') => {
                    self.pos += 1;
                    let at = self.pos;
                    let v = self.number()?;
                    if v >= m as u64 {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("variable x{v} out of range for m = {m}"),
                        });
                    }
                    mono = Monomial(mono.0 | 1u64 << v);
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()? % q as u64;
                    coeff = coeff * n % q as u64;
                }
                Some(c) => return Err(self.error(format!("unexpected '{}'", c as char))),
                None => return Err(self.error("unexpected end of input".into())),
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Graph of a second-order function: one weighted edge per quadratic term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionGraph {
    m: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl FunctionGraph {
    /// Builds a graph from `(a, b, weight)` triples; zero weights are dropped.
    pub fn from_edges(m: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(a, b, w) in edges {
            if a == b || a >= m || b >= m {
                return Err(Error::InvalidParams(format!("bad edge ({a}, {b})")));
            }
            if w != 0 {
                map.insert((a.min(b), a.max(b)), w);
            }
        }
        Ok(Self { m, edges: map })
    }

    pub fn num_vertices(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(a, b), &w)| (a, b, w))
    }

    pub fn weight(&self, a: usize, b: usize) -> u32 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }
}

/// Witness that deleting `deleted` leaves a path whose edges all weigh `q/2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathCertificate {
    deleted: Vec<usize>,
    path: Vec<usize>,
}

impl PathCertificate {
    pub fn deleted(&self) -> &[usize] {
        &self.deleted
    }

    pub fn path_order(&self) -> &[usize] {
        &self.path
    }

    /// The two ends of the path (equal when the path is a single vertex).
    pub fn end_vertices(&self) -> (usize, usize) {
        (self.path[0], self.path[self.path.len() - 1])
    }

    pub fn is_end(&self, v: usize) -> bool {
        let (a, b) = self.end_vertices();
        v == a || v == b
    }

    /// The end vertex with the smaller index.
    pub fn default_gamma(&self) -> usize {
        let (a, b) = self.end_vertices();
        a.min(b)
    }
}

/// Checks that the graph minus `deleted` is a path whose edges have weight
/// exactly `q/2`, with no other edges among the remaining vertices. Edges
/// touching deleted vertices are unconstrained.
pub fn check_path_after_deletion(
    g: &FunctionGraph,
    deleted: &[usize],
    q: u32,
) -> Result<PathCertificate> {
    let m = g.m;
    let mut is_deleted = vec![false; m];
    for &v in deleted {
        if v >= m {
            return Err(Error::InvalidParams(format!(
                "deleted vertex x{v} out of range"
            )));
        }
        if std::mem::replace(&mut is_deleted[v], true) {
            return Err(Error::InvalidParams(format!("x{v} deleted twice")));
        }
    }
    if deleted.len() >= m {
        return Err(Error::InvalidParams(
            "at least one vertex must remain after deletion".into(),
        ));
    }
    let half = q / 2;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut edge_count = 0;
    for (a, b, w) in g.edges() {
        if is_deleted[a] || is_deleted[b] {
            continue;
        }
        if w != half {
            return Err(Error::NotAPath(format!(
                "edge x{a}-x{b} has weight {w}, expected {half}"
            )));
        }
        adj[a].push(b);
        adj[b].push(a);
        edge_count += 1;
    }
    let remaining: Vec<usize> = (0..m).filter(|&v| !is_deleted[v]).collect();
    if edge_count != remaining.len() - 1 {
        return Err(Error::NotAPath(format!(
            "{edge_count} edges among {} vertices",
            remaining.len()
        )));
    }
    if let Some(&v) = remaining.iter().find(|&&v| adj[v].len() > 2) {
        return Err(Error::NotAPath(format!("x{v} has degree {}", adj[v].len())));
    }
    let start = if remaining.len() == 1 {
        remaining[0]
    } else {
        *remaining
            .iter()
            .find(|&&v| adj[v].len() == 1)
            .ok_or_else(|| Error::NotAPath("no end vertex".into()))?
    };
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&n| n != prev) {
        path.push(next);
        prev = cur;
        cur = next;
        if path.len() > remaining.len() {
            break;
        }
    }
    if path.len() != remaining.len() {
        return Err(Error::NotAPath("remaining graph is disconnected".into()));
    }
    Ok(PathCertificate {
        deleted: deleted.to_vec(),
        path,
    })
}

/// A finite sequence of `δ`-th roots of unity, entry `i` being
/// `ω_δ^{exponents[i]}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootSequence {
    delta: usize,
    exponents: Vec<u32>,
}

impl RootSequence {
    pub fn new(delta: usize, exponents: Vec<u32>) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidParams("root order must be positive".into()));
        }
        if let Some(e) = exponents.iter().find(|&&e| e as usize >= delta) {
            return Err(Error::InvalidParams(format!(
                "exponent {e} not below root order {delta}"
            )));
        }
        Ok(Self { delta, exponents })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// First `keep` entries.
    pub fn truncate(&self, keep: usize) -> Result<Self> {
        if keep == 0 || keep > self.len() {
            return Err(Error::Truncate {
                keep,
                len: self.len(),
            });
        }
        Ok(Self {
            delta: self.delta,
            exponents: self.exponents[..keep].to_vec(),
        })
    }

    pub fn conjugate(&self) -> Self {
        let d = self.delta as u32;
        Self {
            delta: self.delta,
            exponents: self.exponents.iter().map(|&e| (d - e) % d).collect(),
        }
    }

    /// Every entry multiplied by `ω_δ^e`.
    pub fn mul_root(&self, e: i64) -> Self {
        let d = self.delta as i64;
        Self {
            delta: self.delta,
            exponents: self
                .exponents
                .iter()
                .map(|&x| (x as i64 + e).rem_euclid(d) as u32)
                .collect(),
        }
    }

    /// The same values written over `ω_target`, `δ | target`.
    pub fn promote(&self, target: usize) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.delta) {
            return Err(Error::DeltaMismatch(self.delta, target));
        }
        let step = (target / self.delta) as u32;
        Ok(Self {
            delta: target,
            exponents: self.exponents.iter().map(|&e| e * step).collect(),
        })
    }

    pub fn concat(parts: &[RootSequence]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Shape("nothing to concatenate".into()))?;
        let mut exponents = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            if p.delta != first.delta {
                return Err(Error::DeltaMismatch(first.delta, p.delta));
            }
            exponents.extend_from_slice(&p.exponents);
        }
        Ok(Self {
            delta: first.delta,
            exponents,
        })
    }

    pub fn to_complex(&self) -> Vec<num_complex::Complex64> {
        let step = 2.0 * std::f64::consts::PI / self.delta as f64;
        self.exponents
            .iter()
            .map(|&e| num_complex::Complex64::from_polar(1.0, step * e as f64))
            .collect()
    }
}

/// Which of the two pseudo-Boolean families a sequence belongs to: `F` built
/// on `f`, `G` on the variable-complemented `f̃`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PbfFamily {
    F,
    G,
}

/// `f + (λq/p)·(x_m + 2x_{m+1} + … + 2^{s-1}x_{m+s-1})` (family `F`) or the
/// same with `f̃` (family `G`), kept symbolic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbfSpec {
    f: Gbf,
    p: u32,
    s: u32,
    lambda: u32,
    family: PbfFamily,
}

impl PbfSpec {
    pub fn new(f: Gbf, p: u32, s: u32, lambda: u32, family: PbfFamily) -> Result<Self> {
        check_pbf_params(&f, p, s)?;
        if lambda >= p {
            return Err(Error::InvalidParams(format!(
                "λ = {lambda} not below p = {p}"
            )));
        }
        Ok(Self {
            f,
            p,
            s,
            lambda,
            family,
        })
    }

    pub fn function(&self) -> &Gbf {
        &self.f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn family(&self) -> PbfFamily {
        self.family
    }

    /// `lcm(p, q)`.
    pub fn delta(&self) -> usize {
        (self.p as usize).lcm(&(self.f.q as usize))
    }
}

pub(crate) fn check_pbf_params(f: &Gbf, p: u32, s: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidParams(format!("p = {p} is not prime")));
    }
    if s == 0 || s as usize > MAX_LOG_LEN || p as u64 > 1u64 << s {
        return Err(Error::InvalidParams(format!(
            "need 2 <= p <= 2^s with s >= 1, got p = {p}, s = {s}"
        )));
    }
    check_log_len(f.m + s as usize)
}

fn check_log_len(bits: usize) -> Result<()> {
    if bits > MAX_LOG_LEN {
        return Err(Error::InvalidParams(format!(
            "sequence length 2^{bits} exceeds 2^{MAX_LOG_LEN}"
        )));
    }
    Ok(())
}

pub fn is_prime(n: u32) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `bits[i] = (value >> i) & 1` for `i < len`.
pub fn to_bits(value: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| value >> i & 1 == 1).collect()
}

/// The full length-`2^{m+s}` sequence of one pseudo-Boolean function of `U_t^λ`
/// (family `F`) or `V_t^λ` (family `G`, before conjugation).
///
/// Entry `r' = r + 2^m·w` has exponent, over `δ = lcm(p, q)`,
/// `(δ/q)·[h(r) + (q/2)·((d+t)·x(r) + e·x_γ(r))] + (δ/p)·λ·w`, where for
/// family `F` `h = f`, `x` are the deleted-variable bits and `e = d`, and for
/// family `G` `h = f̃`, `x` are their complements and `e = 1 - d`.
pub fn psi_pbf(
    spec: &PbfSpec,
    d_vec: &[bool],
    t_vec: &[bool],
    d: bool,
    cert: &PathCertificate,
    gamma: usize,
) -> Result<RootSequence> {
    if !cert.is_end(gamma) {
        return Err(Error::InvalidGamma(gamma));
    }
    let k = cert.deleted.len();
    if d_vec.len() != k || t_vec.len() != k {
        return Err(Error::Arity {
            expected: k,
            got: if d_vec.len() != k {
                d_vec.len()
            } else {
                t_vec.len()
            },
        });
    }
    let f = &spec.f;
    let m = f.m;
    let q = f.q as u64;
    let delta = spec.delta() as u64;
    let scale_q = delta / q;
    let scale_p = delta / spec.p as u64;
    let full_mask = (1u64 << m) - 1;
    let weights: Vec<u64> = d_vec
        .iter()
        .zip(t_vec)
        .map(|(&a, &b)| a as u64 + b as u64)
        .collect();

    let block: Vec<u64> = (0..1u64 << m)
        .map(|r| {
            let (h, x_bits) = match spec.family {
                PbfFamily::F => (f.eval_index(r) as u64, r),
                PbfFamily::G => (f.eval_index(!r & full_mask) as u64, !r & full_mask),
            };
            let dot: u64 = cert
                .deleted
                .iter()
                .zip(&weights)
                .map(|(&v, &w)| w * (x_bits >> v & 1))
                .sum();
            let e = match spec.family {
                PbfFamily::F => d,
                PbfFamily::G => !d,
            };
            let lin = dot + (e as u64) * (r >> gamma & 1);
            (h + q / 2 * lin) % q * scale_q
        })
        .collect();

    let blocks = 1u64 << spec.s;
    let mut exponents = Vec::with_capacity((blocks as usize) << m);
    for w in 0..blocks {
        let shift = scale_p * (spec.lambda as u64 * w % spec.p as u64);
        exponents.extend(block.iter().map(|&e| ((e + shift) % delta) as u32));
    }
    Ok(RootSequence {
        delta: delta as usize,
        exponents,
    })
}
