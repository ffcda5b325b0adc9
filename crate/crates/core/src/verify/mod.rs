//! Property checks over sequence pairs: ZCZ reports, Golay and mate checks,
//! the out-of-zone magnitude floor, exhaustive search and ratio tables.

mod search;
mod table;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::corr::{aacs_profile, cross_sum, zcz_width, AacsProfile, CorrError};
use crate::sequence::SequencePair;

pub use search::{
    exhaustive_search, exhaustive_search_with_progress, is_golay_length, SearchError, SearchOptions, SearchResult,
    DEFAULT_CAP, HARD_LIMIT,
};
pub use table::{comparison_table, ratio_table, ComparisonRow, RatioRow, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("magnitude floor check needs a binary pair, got q = {0}")]
    NotBinary(u32),
}

/// How histogram keys are to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnitudeKey {
    /// `|v|`, used for binary pairs where every value is an integer.
    Abs,
    /// `|v|²`, used for every other modulus.
    AbsSquared,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZcpReport {
    pub length: usize,
    pub q: u32,
    pub claimed_zcz: Option<usize>,
    pub actual_zcz: usize,
    /// Counts of out-of-zone values (`actual_zcz ≤ τ < N`) by magnitude key.
    pub out_of_zone_magnitudes: BTreeMap<u64, usize>,
    pub magnitude_key: MagnitudeKey,
    /// False when some `|v|²` was irrational and its key had to be rounded.
    pub histogram_exact: bool,
    pub is_gcp: bool,
    pub passes_claim: bool,
    /// Every nonzero out-of-zone value has magnitude exactly 4.
    pub passes_corollary1: bool,
    /// The magnitude-4 property is only asserted for claimed binary pairs.
    pub corollary1_applicable: bool,
}

impl ZcpReport {
    pub fn from_profile(profile: &AacsProfile, claimed: Option<usize>) -> Self {
        let length = profile.len();
        let q = profile.q();
        let actual_zcz = zcz_width(profile);
        let magnitude_key = if q == 2 {
            MagnitudeKey::Abs
        } else {
            MagnitudeKey::AbsSquared
        };

        let mut histogram = BTreeMap::new();
        let mut histogram_exact = true;
        let mut all_four = true;
        for v in &profile.values()[actual_zcz.min(length)..] {
            let key = if v.is_zero() {
                0
            } else {
                let norm = v.norm_squared().as_integer();
                all_four &= norm == Some(16);
                match (magnitude_key, norm) {
                    (MagnitudeKey::Abs, _) => v.as_integer().expect("binary values are integers").unsigned_abs(),
                    (MagnitudeKey::AbsSquared, Some(n)) => n as u64,
                    (MagnitudeKey::AbsSquared, None) => {
                        histogram_exact = false;
                        v.magnitude().powi(2).round() as u64
                    }
                }
            };
            *histogram.entry(key).or_insert(0) += 1;
        }

        Self {
            length,
            q,
            claimed_zcz: claimed,
            actual_zcz,
            out_of_zone_magnitudes: histogram,
            magnitude_key,
            histogram_exact,
            is_gcp: actual_zcz == length,
            passes_claim: claimed.is_none_or(|c| actual_zcz >= c),
            passes_corollary1: all_four,
            corollary1_applicable: q == 2 && claimed.is_some(),
        }
    }

    /// The claim check, plus the magnitude-4 check where it applies.
    pub fn all_claims_hold(&self) -> bool {
        self.passes_claim && (!self.corollary1_applicable || self.passes_corollary1)
    }
}

/// Profile, ZCZ width and out-of-zone statistics of `pair`.
pub fn verify_zcp(pair: &SequencePair, claimed: Option<usize>) -> ZcpReport {
    ZcpReport::from_profile(&aacs_profile(pair), claimed)
}

/// Whether the autocorrelation sums vanish at every nonzero shift.
pub fn verify_gcp(pair: &SequencePair) -> bool {
    zcz_width(&aacs_profile(pair)) == pair.len()
}

/// Whether `ρ_{a,c}(τ) + ρ_{b,d}(τ) = 0` for every `τ` in `(-N, N)`.
pub fn verify_mates(p1: &SequencePair, p2: &SequencePair) -> Result<bool, CorrError> {
    let n = p1.len() as isize;
    for tau in -(n - 1)..n {
        if !cross_sum(p1, p2, tau)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every nonzero AACS value at `Z ≤ τ < N` has `|value| ≥ 4`,
/// `Z` being the pair's actual ZCZ width.
pub fn magnitude_floor_check(pair: &SequencePair) -> Result<bool, VerifyError> {
    if pair.q() != 2 {
        return Err(VerifyError::NotBinary(pair.q()));
    }
    let profile = aacs_profile(pair);
    let z = zcz_width(&profile);
    Ok(profile.values()[z.min(profile.len())..].iter().all(|v| {
        let n = v.as_integer().expect("binary values are integers");
        n == 0 || n.abs() >= 4
    }))
}
