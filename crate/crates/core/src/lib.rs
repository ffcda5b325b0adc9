//! Even-length Z-complementary pairs built directly from generalized Boolean
//! functions, with exact correlation checks.
//!
//! * [`gbf`]: generalized Boolean functions as weighted literal products, and
//!   their phase sequences.
//! * [`corr`]: exact aperiodic correlation over `Z[ω]` and ZCZ extraction.
//! * [`construct`]: Golay-form functions, complementary pairs and mates, and
//!   the truncated pairs of length `2^{m-1} + 2`.
//! * [`verify`]: reports, exhaustive search over short binary pairs, and
//!   ratio tables.
//!
//! ```
//! use zcp::construct::{theorem1_pair, Theorem1Params};
//! use zcp::verify::verify_zcp;
//!
//! let params = Theorem1Params::new(6, 2, "2,0,1,3".parse().unwrap()).unwrap();
//! let pair = theorem1_pair(&params).unwrap();
//! let report = verify_zcp(&pair, params.claimed_zcz());
//! assert_eq!(report.length, 34);
//! assert_eq!(report.actual_zcz, 25);
//! assert!(report.all_claims_hold());
//! ```

pub mod construct;
pub mod corr;
pub mod gbf;
pub mod sequence;
pub mod verify;

pub use construct::{Permutation, Theorem1Params};
pub use corr::{AacsProfile, CorrelationValue};
pub use gbf::{Gbf, Literal, Polarity, Term};
pub use sequence::{PhaseSequence, SequencePair};
pub use verify::{SearchResult, ZcpReport};
