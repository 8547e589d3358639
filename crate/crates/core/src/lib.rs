//! Non-adaptive group testing with consecutive positives.
//!
//! The items are linearly ordered and the positive ones form a single
//! consecutive run. Under that promise a population of `n` items with up to
//! (or exactly) `d` consecutive positives can be screened with on the order
//! of `log(n/d) + d` fixed tests and decoded in time linear in the number of
//! tests. This crate provides:
//!
//! * [`codes`] - binary and reflected-Gray codeword arithmetic;
//! * [`matrices`] - the measurement-matrix constructions, all strongly
//!   explicit: any column is generated on demand in O(rows);
//! * [`scheme`] - the five end-to-end designs and their test counts;
//! * [`encoder`] - outcome simulation under the OR channel;
//! * [`decoders`] - the O(t) decoding procedures;
//! * [`oracle`] - a brute-force reference that checks identifiability and
//!   arbitrates every decoding rule;
//! * [`bench`] - a seeded benchmark harness with CSV output.
//!
//! Everything is a pure function over immutable values; all types are safe
//! to share across threads.
//!
//! ```
//! use congt::{decode_scheme, encode_scheme, ConsecutiveRange, SchemeKind, SchemeSpec};
//!
//! // Up to 100 consecutive positives among 2^32 items, in 252 tests.
//! let spec = SchemeSpec::new(SchemeKind::UpToDBinary, 1 << 32, Some(100))?;
//! assert_eq!(spec.test_count(), 252);
//!
//! let run = ConsecutiveRange::new(3_000_000_000, 77)?;
//! let outcome = encode_scheme(&spec, &run)?;
//! assert_eq!(decode_scheme(&spec, &outcome)?, run);
//! # Ok::<(), congt::Error>(())
//! ```

pub mod bench;
pub mod bits;
pub mod codes;
pub mod decoders;
pub mod encoder;
mod error;
pub mod matrices;
pub mod oracle;
pub mod scheme;

pub use bits::BitVec;
pub use codes::Codeword;
pub use decoders::{
    decode_block, decode_exact_d, decode_scheme, decode_scheme_counted, decode_single,
    decode_two_consecutive_bin, decode_two_consecutive_gray, decode_up_to_d, decode_up_to_d_gray,
    ExactVariant, SuperPositiveSet,
};
pub use encoder::{encode, encode_scheme, ConsecutiveRange, OutcomeVector, Segment, SegmentLabel};
pub use error::{Error, Result};
pub use matrices::{
    binary_code_matrix, binary_pair_matrix, expand_to_items, gray_matrix, half_block_matrix,
    materialize, mod_spacing_matrix, mod_spacing_rows, stack, BlockSide, DenseMatrix,
    MeasurementMatrix, SuperItemPartition,
};
pub use oracle::{
    brute_force_decode, scheme_candidates, verify_identifiability, CandidateSet, CardinalityRule,
    IdentifiabilityReport,
};
pub use scheme::{SchemeKind, SchemeSpec};
