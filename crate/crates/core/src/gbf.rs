//! Generalized Boolean functions `Z_2^m -> Z_q`.
//!
//! Functions are stored as `Z_q`-weighted products of literals, where a literal
//! is either a variable `x_i` or its complement `1 - x_i`. Mixing plain and
//! complemented literals is how the pair constructions are written, so keeping
//! that form avoids expanding into algebraic normal form and reducing mod `q`.
//!
//! The evaluation order for sequences is LSB-first: position `i` of `Ψ(f)` is
//! `f(r_0, …, r_{m-1})` with `i = Σ r_j 2^j`.
//!
//! Text format, one term per line after a header:
//!
//! ```text
//! m=3 q=2
//! 1 * x0 x1
//! 1 * x1 ~x2
//! 3
//! ```
//!
//! A bare coefficient is a constant term. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::sequence::PhaseSequence;

/// Largest supported variable count; indices are evaluated as `u64` bitmasks.
pub const MAX_VARIABLES: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbfError {
    #[error("phase modulus q must be even and at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("variable count m must be between 1 and {MAX_VARIABLES}, got {0}")]
    InvalidVariableCount(usize),
    #[error("literal x{var} is out of range for m = {m}")]
    VariableOutOfRange { var: usize, m: usize },
    #[error("variable x{0} appears twice in one term")]
    RepeatedVariable(usize),
    #[error("assignment has {got} bits, function has m = {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("functions are over different domains (m={m1}, q={q1} vs m={m2}, q={q2})")]
    DomainMismatch { m1: usize, q1: u32, m2: usize, q2: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Plain,
    Complemented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub polarity: Polarity,
}

impl Literal {
    pub fn plain(var: usize) -> Self {
        Self {
            var,
            polarity: Polarity::Plain,
        }
    }

    pub fn complemented(var: usize) -> Self {
        Self {
            var,
            polarity: Polarity::Complemented,
        }
    }

    pub fn flipped(self) -> Self {
        let polarity = match self.polarity {
            Polarity::Plain => Polarity::Complemented,
            Polarity::Complemented => Polarity::Plain,
        };
        Self { polarity, ..self }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Plain => write!(f, "x{}", self.var),
            Polarity::Complemented => write!(f, "~x{}", self.var),
        }
    }
}

/// A coefficient times a product of literals over distinct variables.
///
/// The product is 1 exactly on the assignments where every plain literal's
/// variable is 1 and every complemented literal's variable is 0, which is
/// cached as a `(mask, want)` bit pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    coeff: u32,
    literals: Vec<Literal>,
    mask: u64,
    want: u64,
}

impl Term {
    /// The coefficient is kept as given; it is reduced mod `q` when the term
    /// joins a function.
    pub fn new(coeff: u32, literals: impl IntoIterator<Item = Literal>) -> Result<Self, GbfError> {
        let mut literals: Vec<Literal> = literals.into_iter().collect();
        literals.sort();
        let mut mask = 0u64;
        let mut want = 0u64;
        for lit in &literals {
            if lit.var >= MAX_VARIABLES {
                return Err(GbfError::VariableOutOfRange {
                    var: lit.var,
                    m: MAX_VARIABLES,
                });
            }
            let bit = 1u64 << lit.var;
            if mask & bit != 0 {
                return Err(GbfError::RepeatedVariable(lit.var));
            }
            mask |= bit;
            if lit.polarity == Polarity::Plain {
                want |= bit;
            }
        }
        Ok(Self {
            coeff,
            literals,
            mask,
            want,
        })
    }

    pub fn constant(coeff: u32) -> Self {
        Self {
            coeff,
            literals: Vec::new(),
            mask: 0,
            want: 0,
        }
    }

    pub fn coeff(&self) -> u32 {
        self.coeff
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    /// Product of this term's literals with `other`'s, coefficients multiplied.
    pub fn times(&self, other: &Term) -> Result<Self, GbfError> {
        Term::new(
            self.coeff.wrapping_mul(other.coeff),
            self.literals.iter().chain(&other.literals).copied(),
        )
    }

    fn with_coeff(&self, coeff: u32) -> Self {
        Self { coeff, ..self.clone() }
    }

    #[inline]
    fn fires(&self, index: u64) -> bool {
        index & self.mask == self.want
    }

    fn max_var(&self) -> Option<usize> {
        self.literals.last().map(|l| l.var)
    }
}

/// A generalized Boolean function in canonical literal-product form.
///
/// Canonical means: duplicate literal products are merged by summing their
/// coefficients mod `q`, zero coefficients are dropped, and terms are ordered.
/// Two functions built from the same multiset of terms therefore compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gbf {
    m: usize,
    q: u32,
    terms: Vec<Term>,
}

impl Gbf {
    pub fn new(m: usize, q: u32, terms: impl IntoIterator<Item = Term>) -> Result<Self, GbfError> {
        if q < 2 || !q.is_multiple_of(2) {
            return Err(GbfError::InvalidModulus(q));
        }
        if m == 0 || m > MAX_VARIABLES {
            return Err(GbfError::InvalidVariableCount(m));
        }
        let mut merged: BTreeMap<(u64, u64), (u64, Vec<Literal>)> = BTreeMap::new();
        for term in terms {
            if let Some(var) = term.max_var().filter(|&v| v >= m) {
                return Err(GbfError::VariableOutOfRange { var, m });
            }
            let entry = merged
                .entry((term.mask, term.want))
                .or_insert_with(|| (0, term.literals.clone()));
            entry.0 = (entry.0 + u64::from(term.coeff % q)) % u64::from(q);
        }
        let terms = merged
            .into_iter()
            .filter(|(_, (c, _))| *c != 0)
            .map(|((mask, want), (coeff, literals))| Term {
                coeff: coeff as u32,
                literals,
                mask,
                want,
            })
            .collect();
        Ok(Self { m, q, terms })
    }

    pub fn zero(m: usize, q: u32) -> Result<Self, GbfError> {
        Self::new(m, q, [])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Evaluates at a bit assignment `(r_0, …, r_{m-1})`.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<u32, GbfError> {
        if assignment.len() != self.m {
            return Err(GbfError::DimensionMismatch {
                expected: self.m,
                got: assignment.len(),
            });
        }
        let index = assignment
            .iter()
            .enumerate()
            .fold(0u64, |acc, (j, &bit)| acc | (u64::from(bit) << j));
        Ok(self.evaluate_index(index))
    }

    /// Evaluates at the assignment given by the binary digits of `index`,
    /// bit `j` of `index` being `r_j`. Bits at or above `m` are ignored.
    #[inline]
    pub fn evaluate_index(&self, index: u64) -> u32 {
        let q = u64::from(self.q);
        let sum = self
            .terms
            .iter()
            .filter(|t| t.fires(index))
            .fold(0u64, |acc, t| (acc + u64::from(t.coeff)) % q);
        sum as u32
    }

    /// The length-`2^m` phase sequence `Ψ(f)`.
    pub fn to_sequence(&self) -> PhaseSequence {
        let phases = (0..1u64 << self.m).map(|i| self.evaluate_index(i)).collect();
        PhaseSequence::new(self.q, phases).expect("phases are reduced mod q and 2^m >= 2")
    }

    /// Flips every literal's polarity, so the result at `r` equals `f` at `¬r`.
    pub fn complement_all_vars(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term::new(t.coeff, t.literals.iter().map(|l| l.flipped())).expect("same variables"));
        Self::new(self.m, self.q, terms).expect("same domain")
    }

    /// `-f mod q`.
    pub fn negate(&self) -> Self {
        let terms = self.terms.iter().map(|t| t.with_coeff(self.q - t.coeff));
        Self::new(self.m, self.q, terms).expect("same domain")
    }

    pub fn plus(&self, other: &Gbf) -> Result<Self, GbfError> {
        self.check_domain(other)?;
        Self::new(self.m, self.q, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn plus_term(&self, term: Term) -> Result<Self, GbfError> {
        Self::new(self.m, self.q, self.terms.iter().cloned().chain(Some(term)))
    }

    /// Whether both functions agree on every point of `Z_2^m`.
    ///
    /// Unlike `==`, this sees through different literal-product spellings of
    /// the same function (e.g. `~x0` versus `1 + (q-1)·x0`).
    pub fn same_function(&self, other: &Gbf) -> bool {
        self.m == other.m
            && self.q == other.q
            && (0..1u64 << self.m).all(|i| self.evaluate_index(i) == other.evaluate_index(i))
    }

    fn check_domain(&self, other: &Gbf) -> Result<(), GbfError> {
        if self.m != other.m || self.q != other.q {
            return Err(GbfError::DomainMismatch {
                m1: self.m,
                q1: self.q,
                m2: other.m,
                q2: other.q,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Gbf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={} q={}", self.m, self.q)?;
        for term in &self.terms {
            write!(f, "{}", term.coeff)?;
            if !term.literals.is_empty() {
                f.write_str(" *")?;
                for lit in &term.literals {
                    write!(f, " {lit}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, u32), GbfError> {
    let err = |message: String| GbfError::Parse { line: line_no, message };
    let mut m = None;
    let mut q = None;
    for field in line.split_whitespace() {
        match field.split_once('=') {
            Some(("m", v)) => m = Some(v.parse().map_err(|_| err(format!("invalid m {v:?}")))?),
            Some(("q", v)) => q = Some(v.parse().map_err(|_| err(format!("invalid q {v:?}")))?),
            _ => return Err(err(format!("unexpected header field {field:?}"))),
        }
    }
    match (m, q) {
        (Some(m), Some(q)) => Ok((m, q)),
        _ => Err(err("header must be `m=<m> q=<q>`".into())),
    }
}

fn parse_literal(token: &str, line_no: usize) -> Result<Literal, GbfError> {
    let (polarity, rest) = match token.strip_prefix('~') {
        Some(rest) => (Polarity::Complemented, rest),
        None => (Polarity::Plain, token),
    };
    let var = rest
        .strip_prefix('x')
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| GbfError::Parse {
            line: line_no,
            message: format!("invalid literal {token:?}, expected x<k> or ~x<k>"),
        })?;
    Ok(Literal { var, polarity })
}

impl FromStr for Gbf {
    type Err = GbfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut header = None;
        let mut terms = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if header.is_none() {
                header = Some(parse_header(line, line_no)?);
                continue;
            }
            let (coeff_text, lits_text) = line.split_once('*').unwrap_or((line, ""));
            let coeff: u32 = coeff_text.trim().parse().map_err(|_| GbfError::Parse {
                line: line_no,
                message: format!("invalid coefficient {:?}", coeff_text.trim()),
            })?;
            let literals = lits_text
                .split_whitespace()
                .map(|tok| parse_literal(tok, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            let term = Term::new(coeff, literals).map_err(|e| GbfError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
            terms.push((line_no, term));
        }
        let (m, q) = header.ok_or(GbfError::Parse {
            line: 1,
            message: "missing `m=<m> q=<q>` header".into(),
        })?;
        if let Some((line, var)) = terms
            .iter()
            .find_map(|(l, t)| t.max_var().filter(|&v| v >= m).map(|v| (*l, v)))
        {
            return Err(GbfError::Parse {
                line,
                message: format!("literal x{var} is out of range for m = {m}"),
            });
        }
        Gbf::new(m, q, terms.into_iter().map(|(_, t)| t))
    }
}
