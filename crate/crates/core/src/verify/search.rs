//! Exhaustive enumeration of short binary pairs.
//!
//! Pairs are normalized to `a_0 = b_0 = +`: negating a whole sequence leaves
//! its autocorrelation unchanged, so this drops a factor of four without
//! losing any profile. Sequences are bitmasks (bit `k` set means `-`), and
//! `ρ_a(τ) = (N - τ) - 2·popcount((a ⊕ (a >> τ)) & mask)`.
//!
//! Work is sharded by the first sequence and merged with an associative,
//! order-independent reduction, so the result does not depend on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::sequence::{PhaseSequence, SequencePair};

/// Largest length enumerated without an explicit override.
pub const DEFAULT_CAP: usize = 12;

/// Absolute limit; the per-sequence table alone is `2^{N-1}·N` entries.
pub const HARD_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search length must be even and at least 2, got {0}")]
    InvalidLength(usize),
    #[error(
        "N = {n} exceeds the search cap of {cap}: {pairs} normalized pairs, roughly {ops} correlation steps; raise the cap to proceed"
    )]
    OverCap { n: usize, cap: usize, pairs: u64, ops: u64 },
    #[error("N = {n} is beyond the supported limit of {HARD_LIMIT}")]
    BeyondLimit { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub cap: usize,
    pub witness_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            witness_cap: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub best_zcz: usize,
    /// Lexicographically first pairs (by bitmask) achieving `best_zcz`.
    pub witness_pairs: Vec<SequencePair>,
    pub pairs_examined: u64,
    pub golay_length: bool,
    /// Pairs with a nonzero out-of-zone AACS value of magnitude below 4.
    pub floor_violations: u64,
    pub floor_counterexample: Option<SequencePair>,
}

/// Whether `n = 2^a 10^b 26^c`, the lengths where binary Golay pairs exist.
pub fn is_golay_length(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut rest = n;
    let mut strip = |p: usize| {
        let mut k = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        k
    };
    let fives = strip(5);
    let thirteens = strip(13);
    let twos = strip(2);
    rest == 1 && twos >= fives + thirteens
}

#[derive(Debug, Clone, Default)]
struct Shard {
    best: usize,
    witnesses: Vec<(u32, u32)>,
    examined: u64,
    violations: u64,
    first_violation: Option<(u32, u32)>,
}

impl Shard {
    fn merge(mut self, other: Shard, cap: usize) -> Shard {
        use std::cmp::Ordering::*;
        match self.best.cmp(&other.best) {
            Less => {
                self.best = other.best;
                self.witnesses = other.witnesses;
            }
            Equal => {
                self.witnesses.extend(other.witnesses);
                self.witnesses.sort_unstable();
                self.witnesses.truncate(cap);
            }
            Greater => {}
        }
        self.examined += other.examined;
        self.violations += other.violations;
        self.first_violation = match (self.first_violation, other.first_violation) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        self
    }
}

fn autocorrelations(n: usize) -> Vec<i32> {
    let count = 1usize << (n - 1);
    let mut table = vec![0i32; count * n];
    for (idx, row) in table.chunks_exact_mut(n).enumerate() {
        let a = (idx as u64) << 1;
        for (tau, slot) in row.iter_mut().enumerate() {
            let overlap = n - tau;
            let mask = (1u64 << overlap) - 1;
            let disagree = ((a ^ (a >> tau)) & mask).count_ones() as i32;
            *slot = overlap as i32 - 2 * disagree;
        }
    }
    table
}

fn to_pair(n: usize, (i, j): (u32, u32)) -> SequencePair {
    let seq = |idx: u32| {
        let signs: Vec<bool> = (0..n).map(|k| k > 0 && (idx >> (k - 1)) & 1 == 1).collect();
        PhaseSequence::from_signs(&signs).expect("n >= 2")
    };
    SequencePair::new(seq(i), seq(j)).expect("equal lengths")
}

/// Best ZCZ width over all normalized binary pairs of length `n`.
pub fn exhaustive_search(n: usize, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    exhaustive_search_with_progress(n, opts, &|_, _| {})
}

/// As [`exhaustive_search`], calling `progress(done, total)` as shards finish.
pub fn exhaustive_search_with_progress(
    n: usize,
    opts: &SearchOptions,
    progress: &(dyn Fn(u64, u64) + Sync),
) -> Result<SearchResult, SearchError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(SearchError::InvalidLength(n));
    }
    if n > HARD_LIMIT {
        return Err(SearchError::BeyondLimit { n });
    }
    let pairs = 1u64 << (2 * n - 2);
    if n > opts.cap {
        return Err(SearchError::OverCap {
            n,
            cap: opts.cap,
            pairs,
            ops: pairs * n as u64,
        });
    }

    let table = autocorrelations(n);
    let count = 1u64 << (n - 1);
    let done = AtomicU64::new(0);
    let step = (count / 100).max(1);
    let cap = opts.witness_cap;

    let merged = (0..count as u32)
        .into_par_iter()
        .map(|i| {
            let ra = &table[i as usize * n..(i as usize + 1) * n];
            let mut shard = Shard::default();
            for j in 0..count as u32 {
                let rb = &table[j as usize * n..(j as usize + 1) * n];
                let z = (1..n).find(|&t| ra[t] + rb[t] != 0).unwrap_or(n);
                let violates = (z..n).any(|t| {
                    let v = ra[t] + rb[t];
                    v != 0 && v.abs() < 4
                });
                shard.examined += 1;
                if violates {
                    shard.violations += 1;
                    shard.first_violation.get_or_insert((i, j));
                }
                if z > shard.best {
                    shard.best = z;
                    shard.witnesses.clear();
                }
                if z == shard.best && shard.witnesses.len() < cap {
                    shard.witnesses.push((i, j));
                }
            }
            let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
            if finished.is_multiple_of(step) || finished == count {
                progress(finished, count);
            }
            shard
        })
        .reduce(Shard::default, |x, y| x.merge(y, cap));

    Ok(SearchResult {
        n,
        best_zcz: merged.best,
        witness_pairs: merged.witnesses.iter().map(|&w| to_pair(n, w)).collect(),
        pairs_examined: merged.examined,
        golay_length: is_golay_length(n),
        floor_violations: merged.violations,
        floor_counterexample: merged.first_violation.map(|w| to_pair(n, w)),
    })
}
