//! Phase sequences over `Z_q` and ordered sequence pairs.
//!
//! A phase sequence stores the exponents of `ω = exp(2πi/q)`, not the complex
//! samples themselves. All correlation arithmetic downstream works on these
//! exponents, so nothing here ever touches floating point.
//!
//! Text format: binary sequences (`q = 2`) are written with the glyphs `+`
//! (phase 0) and `-` (phase 1); any other alphabet is a comma-separated list of
//! integer phases. A pair file holds the two sequences on consecutive lines,
//! preceded by a `q=<q>` header when `q != 2`. Blank lines and lines starting
//! with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("phase modulus q must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("sequence must contain at least one element")]
    Empty,
    #[error("phase {phase} at index {index} is not below q = {q}")]
    PhaseOutOfRange { index: usize, phase: u32, q: u32 },
    #[error("cannot remove {trim} elements from each end of a length-{len} sequence (need 2L < N)")]
    TruncationTooLong { len: usize, trim: usize },
    #[error("pair sequences differ in length ({a} vs {b})")]
    LengthMismatch { a: usize, b: usize },
    #[error("pair sequences differ in modulus (q={a} vs q={b})")]
    ModulusMismatch { a: u32, b: u32 },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> SequenceError {
    SequenceError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A length-`N` sequence of `Z_q` phases.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhaseSequence {
    q: u32,
    phases: Vec<u32>,
}

impl PhaseSequence {
    pub fn new(q: u32, phases: Vec<u32>) -> Result<Self, SequenceError> {
        if q < 2 {
            return Err(SequenceError::InvalidModulus(q));
        }
        if phases.is_empty() {
            return Err(SequenceError::Empty);
        }
        if let Some((index, &phase)) = phases.iter().enumerate().find(|(_, &p)| p >= q) {
            return Err(SequenceError::PhaseOutOfRange { index, phase, q });
        }
        Ok(Self { q, phases })
    }

    /// Binary sequence from `±1` signs; `true` means `-`.
    pub fn from_signs(negative: &[bool]) -> Result<Self, SequenceError> {
        Self::new(2, negative.iter().map(|&n| n as u32).collect())
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    /// Always false; a phase sequence has at least one element.
    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn phases(&self) -> &[u32] {
        &self.phases
    }

    /// Removes the first and last `trim` entries.
    pub fn truncate(&self, trim: usize) -> Result<Self, SequenceError> {
        let len = self.len();
        if trim.checked_mul(2).is_none_or(|t| t >= len) {
            return Err(SequenceError::TruncationTooLong { len, trim });
        }
        Ok(Self {
            q: self.q,
            phases: self.phases[trim..len - trim].to_vec(),
        })
    }

    /// Parses one line of the sequence text format for alphabet size `q`.
    ///
    /// `line_no` is only used to position error messages.
    pub fn parse_line(text: &str, q: u32, line_no: usize) -> Result<Self, SequenceError> {
        let text = text.trim_end_matches('\r');
        if q == 2 && !text.contains(',') {
            let mut phases = Vec::with_capacity(text.len());
            for (col, ch) in text.char_indices() {
                match ch {
                    '+' => phases.push(0),
                    '-' | '\u{2212}' => phases.push(1),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(parse_err(
                            line_no,
                            col + 1,
                            format!("unexpected symbol {c:?}, expected '+' or '-'"),
                        ))
                    }
                }
            }
            return Self::new(2, phases).map_err(|e| parse_err(line_no, 1, e.to_string()));
        }

        let mut phases = Vec::new();
        let mut col = 1;
        for field in text.split(',') {
            let value = field.trim();
            let phase: u32 = value
                .parse()
                .map_err(|_| parse_err(line_no, col, format!("expected an integer phase, found {value:?}")))?;
            if phase >= q {
                return Err(parse_err(line_no, col, format!("phase {phase} is not below q = {q}")));
            }
            phases.push(phase);
            col += field.len() + 1;
        }
        Self::new(q, phases).map_err(|e| parse_err(line_no, 1, e.to_string()))
    }
}

impl fmt::Display for PhaseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 2 {
            for &p in &self.phases {
                f.write_str(if p == 0 { "+" } else { "-" })?;
            }
            Ok(())
        } else {
            for (i, p) in self.phases.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            Ok(())
        }
    }
}

impl Serialize for PhaseSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Ordered pair `(a, b)` of sequences with equal length and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SequencePair {
    a: PhaseSequence,
    b: PhaseSequence,
}

impl SequencePair {
    pub fn new(a: PhaseSequence, b: PhaseSequence) -> Result<Self, SequenceError> {
        if a.q() != b.q() {
            return Err(SequenceError::ModulusMismatch { a: a.q(), b: b.q() });
        }
        if a.len() != b.len() {
            return Err(SequenceError::LengthMismatch { a: a.len(), b: b.len() });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &PhaseSequence {
        &self.a
    }

    pub fn b(&self) -> &PhaseSequence {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q(&self) -> u32 {
        self.a.q()
    }
}

impl fmt::Display for SequencePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q() != 2 {
            writeln!(f, "q={}", self.q())?;
        }
        writeln!(f, "{}", self.a)?;
        writeln!(f, "{}", self.b)
    }
}

impl FromStr for SequencePair {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut q = 2;
        let mut seen_header = false;
        let mut seqs = Vec::with_capacity(2);
        let mut last_line = 0;
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("q=") {
                if seen_header || !seqs.is_empty() {
                    return Err(parse_err(line_no, 1, "q header must appear once, before the sequences"));
                }
                q = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, 3, format!("invalid modulus {rest:?}")))?;
                if q < 2 {
                    return Err(parse_err(line_no, 3, format!("modulus must be at least 2, got {q}")));
                }
                seen_header = true;
                continue;
            }
            if seqs.len() == 2 {
                return Err(parse_err(line_no, 1, "more than two sequences in pair file"));
            }
            seqs.push(PhaseSequence::parse_line(line, q, line_no)?);
        }
        if seqs.len() != 2 {
            return Err(parse_err(
                last_line.max(1),
                1,
                format!("expected two sequences, found {}", seqs.len()),
            ));
        }
        let b = seqs.pop().expect("two sequences");
        let a = seqs.pop().expect("two sequences");
        Self::new(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncate_boundaries() {
        let s = PhaseSequence::new(2, vec![0, 1, 0, 0, 1, 1, 0, 1]).unwrap();
        assert_eq!(s.truncate(0).unwrap(), s);
        assert_eq!(s.truncate(3).unwrap().phases(), &[0, 1]);
        assert_eq!(s.truncate(4), Err(SequenceError::TruncationTooLong { len: 8, trim: 4 }));
        assert!(s.truncate(usize::MAX).is_err());
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(PhaseSequence::new(1, vec![0]), Err(SequenceError::InvalidModulus(1)));
        assert_eq!(PhaseSequence::new(2, vec![]), Err(SequenceError::Empty));
        assert!(matches!(
            PhaseSequence::new(4, vec![0, 4]),
            Err(SequenceError::PhaseOutOfRange {
                index: 1,
                phase: 4,
                q: 4
            })
        ));
    }

    #[test]
    fn binary_glyphs() {
        let s = PhaseSequence::parse_line("++-+", 2, 1).unwrap();
        assert_eq!(s.phases(), &[0, 0, 1, 0]);
        assert_eq!(s.to_string(), "++-+");
        // U+2212 is what typeset sources use for minus
        let t = PhaseSequence::parse_line("+\u{2212}", 2, 1).unwrap();
        assert_eq!(t.phases(), &[0, 1]);
    }

    #[test]
    fn parse_error_positions() {
        let err = PhaseSequence::parse_line("++*-", 2, 7).unwrap_err();
        assert_eq!(
            err,
            SequenceError::Parse {
                line: 7,
                column: 3,
                message: "unexpected symbol '*', expected '+' or '-'".into()
            }
        );
        let err = "q=4\n0,1,2\n0,x,1\n".parse::<SequencePair>().unwrap_err();
        assert!(matches!(err, SequenceError::Parse { line: 3, column: 3, .. }), "{err}");
    }

    #[test]
    fn pair_file_roundtrip() {
        let p: SequencePair = "# comment\n++\n+-\n".parse().unwrap();
        assert_eq!(p.a().phases(), &[0, 0]);
        assert_eq!(p.b().phases(), &[0, 1]);
        assert_eq!(p.to_string(), "++\n+-\n");

        let quaternary = SequencePair::new(
            PhaseSequence::new(4, vec![0, 1, 3]).unwrap(),
            PhaseSequence::new(4, vec![2, 2, 0]).unwrap(),
        )
        .unwrap();
        let text = quaternary.to_string();
        assert_eq!(text, "q=4\n0,1,3\n2,2,0\n");
        assert_eq!(text.parse::<SequencePair>().unwrap(), quaternary);
    }

    #[test]
    fn pair_file_shape_errors() {
        assert!(matches!(
            "++\n+-+\n".parse::<SequencePair>(),
            Err(SequenceError::LengthMismatch { a: 2, b: 3 })
        ));
        assert!("++\n".parse::<SequencePair>().is_err());
        assert!("++\n--\n+-\n".parse::<SequencePair>().is_err());
    }
}
