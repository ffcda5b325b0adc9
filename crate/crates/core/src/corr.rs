//! Exact aperiodic correlation over `q`-th roots of unity.
//!
//! A correlation value `Σ_k c_k ω^k` is kept as its integer multiplicity vector
//! `c`. Zero testing is exact: for power-of-two `q` the vector is folded with
//! `ω^{k+q/2} = -ω^k`, otherwise `Σ c_k x^k` is reduced modulo the `q`-th
//! cyclotomic polynomial. Floating point only appears in [`CorrelationValue::magnitude`]
//! and the complex coordinates used for reporting.
//!
//! The cross-correlation convention is `ρ_{a,b}(τ) = Σ_k ω^{a_k - b_{k+τ}}` for
//! `τ ≥ 0`, and `Σ_k ω^{a_{k-τ} - b_k}` for `τ < 0`. At `q = 2` this is the
//! usual `Σ (-1)^{a_k + b_{k+τ}}`.

use std::f64::consts::TAU;
use std::fmt;
use std::io;
use std::ops::{Add, AddAssign, Neg, Sub};

use thiserror::Error;

use crate::sequence::{PhaseSequence, SequencePair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrError {
    #[error("sequences differ in length ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("sequences differ in modulus (q={a} vs q={b})")]
    ModulusMismatch { a: u32, b: u32 },
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    // x^n - 1
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        poly = divide_exact_monic(&poly, &cyclotomic_polynomial(d));
    }
    poly
}

fn divide_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let (quot, rem) = div_rem_monic(num, den);
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Long division by a monic integer polynomial. Returns (quotient, remainder).
fn div_rem_monic(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        rem.resize(dd, 0);
        return (vec![0], rem);
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        quot[top - dd] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[top - dd + j] -= c * dc;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// An element `Σ_{k<q} c_k ω^k` of `Z[ω]`, `ω = exp(2πi/q)`.
#[derive(Debug, Clone)]
pub struct CorrelationValue {
    q: u32,
    counts: Vec<i64>,
}

impl CorrelationValue {
    pub fn zero(q: u32) -> Self {
        assert!(q >= 1, "modulus must be positive");
        Self {
            q,
            counts: vec![0; q as usize],
        }
    }

    /// The rational integer `n`, i.e. `n·ω^0`.
    pub fn integer(q: u32, n: i64) -> Self {
        let mut v = Self::zero(q);
        v.counts[0] = n;
        v
    }

    /// Builds a value from explicit multiplicities; `counts.len()` is `q`.
    pub fn from_counts(counts: Vec<i64>) -> Self {
        assert!(!counts.is_empty(), "multiplicity vector must be non-empty");
        Self {
            q: counts.len() as u32,
            counts,
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Adds `n·ω^k`.
    pub fn add_power(&mut self, k: u32, n: i64) {
        self.counts[(k % self.q) as usize] += n;
    }

    /// Signed length-`q/2` vector under `ω^{k+q/2} = -ω^k`, for power-of-two `q`.
    ///
    /// For those moduli `{1, ω, …, ω^{q/2-1}}` is an integral basis, so the
    /// folded vector is the canonical form. Returns `None` for other `q`.
    pub fn folded(&self) -> Option<Vec<i64>> {
        if !self.q.is_power_of_two() {
            return None;
        }
        if self.q == 1 {
            return Some(self.counts.clone());
        }
        let half = self.q as usize / 2;
        Some((0..half).map(|k| self.counts[k] - self.counts[k + half]).collect())
    }

    /// Remainder of `Σ c_k x^k` modulo the `q`-th cyclotomic polynomial.
    pub fn cyclotomic_remainder(&self) -> Vec<i64> {
        div_rem_monic(&self.counts, &cyclotomic_polynomial(self.q)).1
    }

    pub fn is_zero(&self) -> bool {
        match self.folded() {
            Some(folded) => folded.iter().all(|&c| c == 0),
            None => self.cyclotomic_remainder().iter().all(|&c| c == 0),
        }
    }

    /// Complex conjugate: `ω^k ↦ ω^{-k}`.
    pub fn conjugate(&self) -> Self {
        let q = self.q as usize;
        let counts = (0..q).map(|k| self.counts[(q - k) % q]).collect();
        Self { q: self.q, counts }
    }

    /// Product in `Z[ω]`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.q, other.q, "mixed moduli");
        let q = self.q as usize;
        let mut out = Self::zero(self.q);
        for (i, &x) in self.counts.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in other.counts.iter().enumerate() {
                out.counts[(i + j) % q] += x * y;
            }
        }
        out
    }

    /// `|v|²` as an element of `Z[ω]`.
    pub fn norm_squared(&self) -> Self {
        self.mul(&self.conjugate())
    }

    /// `Some(n)` iff the value is exactly the rational integer `n`.
    pub fn as_integer(&self) -> Option<i64> {
        let (re, im) = self.to_complex();
        if im.abs() > 0.5 {
            return None;
        }
        let n = re.round() as i64;
        (self.clone() - Self::integer(self.q, n)).is_zero().then_some(n)
    }

    /// Exact real and imaginary parts, available when `q ∈ {1, 2, 4}`.
    pub fn exact_re_im(&self) -> Option<(i64, i64)> {
        let c = &self.counts;
        match self.q {
            1 => Some((c[0], 0)),
            2 => Some((c[0] - c[1], 0)),
            4 => Some((c[0] - c[2], c[1] - c[3])),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> (f64, f64) {
        if let Some((re, im)) = self.exact_re_im() {
            return (re as f64, im as f64);
        }
        let q = f64::from(self.q);
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold((0.0, 0.0), |(re, im), (k, &c)| {
                let theta = TAU * k as f64 / q;
                (re + c as f64 * theta.cos(), im + c as f64 * theta.sin())
            })
    }

    /// `|v|` in floating point. Reporting only; use [`is_zero`](Self::is_zero)
    /// for decisions.
    pub fn magnitude(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let (re, im) = self.to_complex();
        re.hypot(im)
    }
}

impl PartialEq for CorrelationValue {
    /// Value equality in `Z[ω]`, not representation equality.
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && (self.clone() - other.clone()).is_zero()
    }
}

impl Eq for CorrelationValue {}

impl AddAssign<&CorrelationValue> for CorrelationValue {
    fn add_assign(&mut self, rhs: &CorrelationValue) {
        assert_eq!(self.q, rhs.q, "mixed moduli");
        for (x, y) in self.counts.iter_mut().zip(&rhs.counts) {
            *x += y;
        }
    }
}

impl Add for CorrelationValue {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl Neg for CorrelationValue {
    type Output = Self;

    fn neg(mut self) -> Self {
        self.counts.iter_mut().for_each(|c| *c = -*c);
        self
    }
}

impl Sub for CorrelationValue {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl fmt::Display for CorrelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_re_im() {
            Some((re, 0)) => write!(f, "{re}"),
            Some((re, im)) => write!(f, "{re}{im:+}i"),
            None => {
                let (re, im) = self.to_complex();
                write!(f, "{re:.6}{im:+.6}i")
            }
        }
    }
}

/// Adds `ω^{x_k - y_k}` for each aligned position into `counts`.
#[inline]
fn accumulate(counts: &mut [i64], xs: &[u32], ys: &[u32], q: u32) {
    if q.is_power_of_two() {
        let mask = q - 1;
        for (&x, &y) in xs.iter().zip(ys) {
            counts[(x.wrapping_sub(y) & mask) as usize] += 1;
        }
    } else {
        for (&x, &y) in xs.iter().zip(ys) {
            counts[((x + q - y) % q) as usize] += 1;
        }
    }
}

fn check_compatible(a: &PhaseSequence, b: &PhaseSequence) -> Result<(), CorrError> {
    if a.q() != b.q() {
        return Err(CorrError::ModulusMismatch { a: a.q(), b: b.q() });
    }
    if a.len() != b.len() {
        return Err(CorrError::LengthMismatch { a: a.len(), b: b.len() });
    }
    Ok(())
}

fn accf_into(counts: &mut [i64], a: &[u32], b: &[u32], q: u32, tau: isize) {
    let n = a.len();
    let shift = tau.unsigned_abs();
    if shift >= n {
        return;
    }
    if tau >= 0 {
        accumulate(counts, &a[..n - shift], &b[shift..], q);
    } else {
        accumulate(counts, &a[shift..], &b[..n - shift], q);
    }
}

/// Aperiodic cross-correlation `ρ_{a,b}(τ)`; exactly zero for `|τ| ≥ N`.
pub fn accf(a: &PhaseSequence, b: &PhaseSequence, tau: isize) -> Result<CorrelationValue, CorrError> {
    check_compatible(a, b)?;
    let mut v = CorrelationValue::zero(a.q());
    accf_into(&mut v.counts, a.phases(), b.phases(), a.q(), tau);
    Ok(v)
}

/// Aperiodic autocorrelation `ρ_a(τ)`.
pub fn aacf(a: &PhaseSequence, tau: isize) -> CorrelationValue {
    accf(a, a, tau).expect("a sequence is compatible with itself")
}

/// `ρ_{a,c}(τ) + ρ_{b,d}(τ)`, the cross-correlation sum used for mates.
pub fn cross_sum(p1: &SequencePair, p2: &SequencePair, tau: isize) -> Result<CorrelationValue, CorrError> {
    check_compatible(p1.a(), p2.a())?;
    let q = p1.q();
    let mut v = CorrelationValue::zero(q);
    accf_into(&mut v.counts, p1.a().phases(), p2.a().phases(), q, tau);
    accf_into(&mut v.counts, p1.b().phases(), p2.b().phases(), q, tau);
    Ok(v)
}

/// Aperiodic autocorrelation sums `ρ_a(τ) + ρ_b(τ)` for `τ = 0 … N-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AacsProfile {
    q: u32,
    values: Vec<CorrelationValue>,
}

impl AacsProfile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[CorrelationValue] {
        &self.values
    }

    /// Value at any shift; negative shifts are conjugates of positive ones
    /// and `|τ| ≥ N` is zero.
    pub fn at(&self, tau: isize) -> CorrelationValue {
        match self.values.get(tau.unsigned_abs()) {
            Some(v) if tau >= 0 => v.clone(),
            Some(v) => v.conjugate(),
            None => CorrelationValue::zero(self.q),
        }
    }

    /// Writes `tau,re,im,magnitude,is_zero`, one row per shift.
    ///
    /// `re`/`im` are exact integers for `q ∈ {2, 4}`.
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "tau,re,im,magnitude,is_zero")?;
        for (tau, v) in self.values.iter().enumerate() {
            let zero = v.is_zero();
            let (re, im) = match v.exact_re_im() {
                Some((re, im)) => (re.to_string(), im.to_string()),
                None if zero => ("0".into(), "0".into()),
                None => {
                    let (re, im) = v.to_complex();
                    (format!("{re:.9}"), format!("{im:.9}"))
                }
            };
            writeln!(out, "{tau},{re},{im},{},{zero}", v.magnitude())?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

/// The AACS profile of a pair.
pub fn aacs_profile(pair: &SequencePair) -> AacsProfile {
    let q = pair.q();
    let (a, b) = (pair.a().phases(), pair.b().phases());
    let values = (0..pair.len() as isize)
        .map(|tau| {
            let mut v = CorrelationValue::zero(q);
            accf_into(&mut v.counts, a, a, q, tau);
            accf_into(&mut v.counts, b, b, q, tau);
            v
        })
        .collect();
    AacsProfile { q, values }
}

/// Largest `Z` with `values[τ] = 0` for all `1 ≤ τ ≤ Z - 1`; `N` when the
/// profile vanishes everywhere off the peak.
pub fn zcz_width(profile: &AacsProfile) -> usize {
    profile
        .values
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, v)| !v.is_zero())
        .map_or(profile.len(), |(tau, _)| tau)
}
