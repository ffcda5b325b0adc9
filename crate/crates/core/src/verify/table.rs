//! ZCZ-ratio rows for the maximal-claim pairs, and the static comparison
//! against earlier even-length binary ZCP constructions.

use std::fmt::Display;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Rows are computed in `i128`; `2^m + 4` stays far from overflow up to here.
pub const MAX_TABLE_M: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("m range must start at 4 or above, got {0}")]
    StartTooSmall(usize),
    #[error("empty m range {0}..={1}")]
    EmptyRange(usize, usize),
    #[error("m range must end at {MAX_TABLE_M} or below, got {0}")]
    EndTooLarge(usize),
}

fn as_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub m: usize,
    pub length: i128,
    /// ZCZ width with `π(m-3) = m-3`.
    pub zcz: i128,
    #[serde(serialize_with = "as_display")]
    pub ratio: Ratio<i128>,
    /// `3/4 - ratio`.
    #[serde(serialize_with = "as_display")]
    pub deviation: Ratio<i128>,
    /// `deviation == 1/(2^m + 4)`.
    pub closed_form_holds: bool,
}

pub fn ratio_table(m_min: usize, m_max: usize) -> Result<Vec<RatioRow>, TableError> {
    if m_min < 4 {
        return Err(TableError::StartTooSmall(m_min));
    }
    if m_min > m_max {
        return Err(TableError::EmptyRange(m_min, m_max));
    }
    if m_max > MAX_TABLE_M {
        return Err(TableError::EndTooLarge(m_max));
    }
    Ok((m_min..=m_max)
        .map(|m| {
            let pow = |k: usize| 1i128 << k;
            let length = pow(m - 1) + 2;
            let zcz = pow(m - 2) + pow(m - 3) + 1;
            let ratio = Ratio::new(zcz, length);
            let deviation = Ratio::new(3, 4) - ratio;
            RatioRow {
                m,
                length,
                zcz,
                ratio,
                deviation,
                closed_form_holds: deviation == Ratio::new(1, pow(m) + 4),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub construction: &'static str,
    pub method: &'static str,
    pub direct: bool,
    #[serde(serialize_with = "as_display")]
    pub zcz_ratio: Ratio<i128>,
}

static COMPARISON: [ComparisonRow; 4] = [
    ComparisonRow {
        construction: "Liu et al. (2014)",
        method: "truncation of certain GCPs",
        direct: false,
        zcz_ratio: Ratio::new_raw(2, 3),
    },
    ComparisonRow {
        construction: "Chen (2017)",
        method: "generalized Boolean functions",
        direct: true,
        zcz_ratio: Ratio::new_raw(2, 3),
    },
    ComparisonRow {
        construction: "insertion method",
        method: "insertion into certain GCPs",
        direct: false,
        zcz_ratio: Ratio::new_raw(3, 4),
    },
    ComparisonRow {
        construction: "this crate",
        method: "generalized Boolean functions",
        direct: true,
        zcz_ratio: Ratio::new_raw(3, 4),
    },
];

/// Asymptotic ZCZ ratios of EB-ZCP constructions with lengths `2^{m-1} + 2`.
pub fn comparison_table() -> &'static [ComparisonRow] {
    &COMPARISON
}
