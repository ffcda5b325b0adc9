//! Pair constructions from generalized Boolean functions.
//!
//! Two families live here:
//!
//! * the Golay-form functions `f = (q/2) Σ x_{π(α)} x_{π(α+1)} + Σ g_i x_i + g'`,
//!   with their complementary pairs and complementary mates;
//! * the truncated even-length Z-complementary pairs `(Ψ_L(g^0), Ψ_L(g^1))` with
//!   `L = 2^{m-2} - 1`, of length `2^{m-1} + 2` and ZCZ width at least
//!   `2^{m-2} + 2^{π(m-3)} + 1`.
//!
//! In `g^d` the selector products (`x_{m-2} x̄_{m-1}` and friends) are multiplied
//! into every term of the inner `Z_2` functions `ζ^d` and `η^d`, giving 3- and
//! 4-literal terms with coefficient `q/2`.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::gbf::{Gbf, GbfError, Literal, Term};
use crate::sequence::{SequenceError, SequencePair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("m must be >= {min}, got {m}")]
    TooFewVariables { m: usize, min: usize },
    #[error("m must be at most {max}, got {m}")]
    TooManyVariables { m: usize, max: usize },
    #[error("q must be even and at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation must act on {expected} elements, got {got}")]
    PermutationLength { expected: usize, got: usize },
    #[error("offset list {name} must have {expected} entries, got {got}")]
    OffsetLength {
        name: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("offset {name}[{index}] = {value} is not below q = {q}")]
    OffsetOutOfRange {
        name: &'static str,
        index: usize,
        value: u32,
        q: u32,
    },
    #[error(transparent)]
    Gbf(#[from] GbfError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// Largest `m` accepted for sequence-producing constructions (`2^m` entries).
pub const MAX_M: usize = 26;

/// A bijection on `{0, …, k-1}` given by its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self, ConstructError> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &v in &image {
            if v >= k {
                return Err(ConstructError::InvalidPermutation(format!("{v} is outside 0..{k}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ConstructError::InvalidPermutation(format!("{v} appears twice")));
            }
        }
        Ok(Self { image })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            image: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Image of the last index, `π(k-1)`.
    pub fn last(&self) -> Option<usize> {
        self.image.last().copied()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let image = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| ConstructError::InvalidPermutation(format!("{:?} is not an index", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(image)
    }
}

fn check_modulus(q: u32) -> Result<(), ConstructError> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(ConstructError::InvalidModulus(q));
    }
    Ok(())
}

fn check_offsets(name: &'static str, values: &[u32], expected: usize, q: u32) -> Result<(), ConstructError> {
    if values.len() != expected {
        return Err(ConstructError::OffsetLength {
            name,
            expected,
            got: values.len(),
        });
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= q) {
        return Err(ConstructError::OffsetOutOfRange { name, index, value, q });
    }
    Ok(())
}

/// Validated parameters of the truncated-pair construction.
///
/// `pi` permutes `{0, …, m-3}`; `e` and `f_off` are the `Z_q` coefficients of
/// `x_i` and `x̄_i` for `i = 0 … m-3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Params {
    m: usize,
    q: u32,
    pi: Permutation,
    e: Vec<u32>,
    f_off: Vec<u32>,
    experimental: bool,
}

impl Theorem1Params {
    /// Parameters with all-zero affine offsets.
    pub fn new(m: usize, q: u32, pi: Permutation) -> Result<Self, ConstructError> {
        if m < 4 {
            return Err(ConstructError::TooFewVariables { m, min: 4 });
        }
        Self::build(m, q, pi, false)
    }

    /// The degenerate `m = 3` object, where the quadratic parts of `ζ^d` and
    /// `η^d` are empty. It carries no ZCZ claim.
    pub fn experimental_m3(q: u32, pi: Permutation) -> Result<Self, ConstructError> {
        Self::build(3, q, pi, true)
    }

    fn build(m: usize, q: u32, pi: Permutation, experimental: bool) -> Result<Self, ConstructError> {
        if m > MAX_M {
            return Err(ConstructError::TooManyVariables { m, max: MAX_M });
        }
        check_modulus(q)?;
        if pi.len() != m - 2 {
            return Err(ConstructError::PermutationLength {
                expected: m - 2,
                got: pi.len(),
            });
        }
        Ok(Self {
            m,
            q,
            pi,
            e: vec![0; m - 2],
            f_off: vec![0; m - 2],
            experimental,
        })
    }

    pub fn with_offsets(mut self, e: Vec<u32>, f_off: Vec<u32>) -> Result<Self, ConstructError> {
        check_offsets("e", &e, self.m - 2, self.q)?;
        check_offsets("f", &f_off, self.m - 2, self.q)?;
        self.e = e;
        self.f_off = f_off;
        Ok(self)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn pi(&self) -> &Permutation {
        &self.pi
    }

    pub fn e(&self) -> &[u32] {
        &self.e
    }

    pub fn f_off(&self) -> &[u32] {
        &self.f_off
    }

    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    /// Elements removed from each end of `Ψ(g^d)`: `2^{m-2} - 1`.
    pub fn truncation(&self) -> usize {
        (1 << (self.m - 2)) - 1
    }

    /// `2^{m-1} + 2`.
    pub fn pair_length(&self) -> usize {
        (1 << (self.m - 1)) + 2
    }

    /// `2^{m-2} + 2^{π(m-3)} + 1`; `None` for the experimental `m = 3` object.
    pub fn claimed_zcz(&self) -> Option<usize> {
        if self.experimental {
            return None;
        }
        let last = self.pi.last().expect("m >= 4 gives a non-empty permutation");
        Some((1 << (self.m - 2)) + (1 << last) + 1)
    }
}

/// Parameter file contents (`{"m": 6, "q": 2, "pi": [2,0,1,3]}`).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub m: usize,
    #[serde(default = "default_q")]
    pub q: u32,
    pub pi: Vec<usize>,
    #[serde(default)]
    pub e: Option<Vec<u32>>,
    #[serde(default)]
    pub f: Option<Vec<u32>>,
    #[serde(default)]
    pub experimental_m3: bool,
}

fn default_q() -> u32 {
    2
}

impl TryFrom<ParamsFile> for Theorem1Params {
    type Error = ConstructError;

    fn try_from(p: ParamsFile) -> Result<Self, Self::Error> {
        let pi = Permutation::new(p.pi)?;
        let base = if p.m == 3 && p.experimental_m3 {
            Theorem1Params::experimental_m3(p.q, pi)?
        } else {
            Theorem1Params::new(p.m, p.q, pi)?
        };
        let k = base.m - 2;
        base.with_offsets(p.e.unwrap_or_else(|| vec![0; k]), p.f.unwrap_or_else(|| vec![0; k]))
    }
}

fn product(lits: &[Literal]) -> Term {
    Term::new(1, lits.iter().copied()).expect("construction literals use distinct variables")
}

/// `ζ^d = Σ_{α=0}^{m-4} x_{π(α)} x_{π(α+1)} + d·x_{π(m-3)}` as terms over `Z_2`.
fn zeta_terms(pi: &Permutation, d: bool) -> Vec<Term> {
    let k = pi.len();
    let mut terms: Vec<Term> = (0..k.saturating_sub(1))
        .map(|a| product(&[Literal::plain(pi.apply(a)), Literal::plain(pi.apply(a + 1))]))
        .collect();
    if d {
        terms.push(product(&[Literal::plain(pi.apply(k - 1))]));
    }
    terms
}

/// `η^d = Σ_{α=0}^{m-4} x̄_{π(α)} x̄_{π(α+1)} + d̄·x_{π(m-3)}` as terms over `Z_2`.
fn eta_terms(pi: &Permutation, d: bool) -> Vec<Term> {
    let k = pi.len();
    let mut terms: Vec<Term> = (0..k.saturating_sub(1))
        .map(|a| {
            product(&[
                Literal::complemented(pi.apply(a)),
                Literal::complemented(pi.apply(a + 1)),
            ])
        })
        .collect();
    if !d {
        terms.push(product(&[Literal::plain(pi.apply(k - 1))]));
    }
    terms
}

/// `ζ^d` as a binary function of the first `m - 2` variables.
pub fn zeta(p: &Theorem1Params, d: bool) -> Gbf {
    Gbf::new(p.m - 2, 2, zeta_terms(&p.pi, d)).expect("valid inner function")
}

/// `η^d` as a binary function of the first `m - 2` variables.
pub fn eta(p: &Theorem1Params, d: bool) -> Gbf {
    Gbf::new(p.m - 2, 2, eta_terms(&p.pi, d)).expect("valid inner function")
}

/// The function `g^d`.
pub fn theorem1_gbf(p: &Theorem1Params, d: bool) -> Result<Gbf, ConstructError> {
    let (m, q) = (p.m, p.q);
    let half = q / 2;
    let (hi, lo) = (m - 1, m - 2);
    let selector = |lo_plain: bool, hi_plain: bool| {
        let pick = |v, plain| {
            if plain {
                Literal::plain(v)
            } else {
                Literal::complemented(v)
            }
        };
        Term::new(half, [pick(lo, lo_plain), pick(hi, hi_plain)]).expect("distinct selector variables")
    };

    let mut terms = Vec::new();
    let zeta_sel = selector(true, false);
    for t in zeta_terms(&p.pi, d) {
        terms.push(zeta_sel.times(&t)?);
    }
    let eta_sel = selector(false, true);
    for t in eta_terms(&p.pi, d) {
        terms.push(eta_sel.times(&t)?);
    }
    if d {
        terms.push(selector(false, false));
    }
    terms.push(selector(true, true));

    for (i, (&e, &f)) in p.e.iter().zip(&p.f_off).enumerate() {
        terms.push(Term::new(e, [Literal::plain(i)])?);
        terms.push(Term::new(f, [Literal::complemented(i)])?);
    }
    Ok(Gbf::new(m, q, terms)?)
}

/// `(Ψ_L(g^0), Ψ_L(g^1))` with `L = 2^{m-2} - 1`.
pub fn theorem1_pair(p: &Theorem1Params) -> Result<SequencePair, ConstructError> {
    let trim = p.truncation();
    let a = theorem1_gbf(p, false)?.to_sequence().truncate(trim)?;
    let b = theorem1_gbf(p, true)?.to_sequence().truncate(trim)?;
    Ok(SequencePair::new(a, b)?)
}

/// `2^{m-2} + 2^{π(m-3)} + 1`, or `None` for the experimental `m = 3` object.
pub fn claimed_zcz(p: &Theorem1Params) -> Option<usize> {
    p.claimed_zcz()
}

/// Golay-form function `(q/2) Σ_{α=0}^{m-2} x_{π(α)} x_{π(α+1)} + Σ g_i x_i + g'`.
pub fn gdj_gbf(m: usize, q: u32, pi: &Permutation, g: &[u32], g_const: u32) -> Result<Gbf, ConstructError> {
    if m < 2 {
        return Err(ConstructError::TooFewVariables { m, min: 2 });
    }
    if m > MAX_M {
        return Err(ConstructError::TooManyVariables { m, max: MAX_M });
    }
    check_modulus(q)?;
    if pi.len() != m {
        return Err(ConstructError::PermutationLength {
            expected: m,
            got: pi.len(),
        });
    }
    check_offsets("g", g, m, q)?;
    if g_const >= q {
        return Err(ConstructError::OffsetOutOfRange {
            name: "g'",
            index: 0,
            value: g_const,
            q,
        });
    }
    let half = q / 2;
    let mut terms: Vec<Term> = (0..m - 1)
        .map(|a| Term::new(half, [Literal::plain(pi.apply(a)), Literal::plain(pi.apply(a + 1))]))
        .collect::<Result<_, _>>()?;
    for (i, &gi) in g.iter().enumerate() {
        terms.push(Term::new(gi, [Literal::plain(i)])?);
    }
    terms.push(Term::constant(g_const));
    Ok(Gbf::new(m, q, terms)?)
}

fn sign_flip_term(f: &Gbf, pi: &Permutation) -> Result<Term, ConstructError> {
    if pi.len() != f.m() {
        return Err(ConstructError::PermutationLength {
            expected: f.m(),
            got: pi.len(),
        });
    }
    let last = pi.last().expect("m >= 1");
    Ok(Term::new(f.q() / 2, [Literal::plain(last)])?)
}

/// `(Ψ(f), Ψ(f + (q/2)·x_{π(m-1)}))`.
pub fn gcp_pair(f: &Gbf, pi: &Permutation) -> Result<SequencePair, ConstructError> {
    let flip = sign_flip_term(f, pi)?;
    let a = f.to_sequence();
    let b = f.plus_term(flip)?.to_sequence();
    Ok(SequencePair::new(a, b)?)
}

/// Complementary mate `(Ψ(f̃ + (q/2)·x_{π(m-1)}), Ψ(f̃))` of [`gcp_pair`],
/// where `f̃ = -f̄` is the negated all-variable complement.
///
/// Under the `ω^{a-b}` correlation convention the mate needs the conjugate of
/// the reversed sequences. Complementing every variable reverses `Ψ`, and
/// negating the phases conjugates it; at `q = 2` the negation is the identity.
pub fn mate_pair(f: &Gbf, pi: &Permutation) -> Result<SequencePair, ConstructError> {
    let flip = sign_flip_term(f, pi)?;
    let mate_base = f.complement_all_vars().negate();
    let c = mate_base.plus_term(flip)?.to_sequence();
    let d = mate_base.to_sequence();
    Ok(SequencePair::new(c, d)?)
}
