//! The five end-to-end designs and their derived parameters.
//!
//! Each scheme stacks a phase-1 matrix that locates up to two consecutive
//! super positive items with a phase-2 spacing matrix that separates the
//! items inside them:
//!
//! * `SinglePositive` - plain binary code, one positive, `ceil(log2 n)` tests.
//! * `UpToDBinary`   - binary pair code over blocks of `d`, plus a `2d`-row
//!   spacing matrix; `2*ceil(log2 ceil(n/d)) + 2d` tests.
//! * `UpToDGray`     - Gray code plus a 3-row spacing matrix over blocks of
//!   `d - 1`, plus a `2(d-1)`-row spacing matrix;
//!   `ceil(log2 ceil(n/(d-1))) + 2d + 1` tests.
//! * `ExactDGray`    - Gray phase 1 over blocks of `d`, plus `d` spacing rows
//!   at modulus `2d`; `ceil(log2 ceil(n/d)) + d + 3` tests.
//! * `ExactDBinary`  - binary pair phase 1 over blocks of `d`, plus the same
//!   `d` spacing rows; `2*ceil(log2 ceil(n/d)) + d` tests.
//!
//! When the whole population fits in one super item (`kappa = 1`) phase 1 is
//! dropped and every item is a potential positive.

use std::fmt;
use std::str::FromStr;

use crate::encoder::{Segment, SegmentLabel};
use crate::error::{Error, Result};
use crate::matrices::{
    binary_code_matrix, binary_pair_matrix, ceil_log2, expand_to_items, gray_matrix,
    mod_spacing_matrix, mod_spacing_rows, stack, MeasurementMatrix, SuperItemPartition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeKind {
    SinglePositive,
    UpToDBinary,
    UpToDGray,
    ExactDGray,
    ExactDBinary,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::SinglePositive,
        SchemeKind::UpToDBinary,
        SchemeKind::UpToDGray,
        SchemeKind::ExactDGray,
        SchemeKind::ExactDBinary,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchemeKind::SinglePositive => "single-positive",
            SchemeKind::UpToDBinary => "up-to-d-binary",
            SchemeKind::UpToDGray => "up-to-d-gray",
            SchemeKind::ExactDGray => "exact-d-gray",
            SchemeKind::ExactDBinary => "exact-d-binary",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scheme {s:?}")))
    }
}

/// A fully validated scheme instance: kind, population size and positive
/// bound. For `SinglePositive` the bound is fixed at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeSpec {
    kind: SchemeKind,
    n: u64,
    d: u64,
}

/// Population cap: keeps every codeword width within 63 bits.
pub const MAX_N: u64 = 1 << 62;
/// Positive-bound cap: keeps `2d` rows comfortably inside address space.
pub const MAX_D: u64 = 1 << 32;

impl SchemeSpec {
    pub fn new(kind: SchemeKind, n: u64, d: Option<u64>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Domain(format!("n exceeds the supported {MAX_N}")));
        }
        if let Some(d) = d {
            if d > MAX_D {
                return Err(Error::Domain(format!("d exceeds the supported {MAX_D}")));
            }
        }
        match kind {
            SchemeKind::SinglePositive => {
                if !matches!(d, None | Some(1)) {
                    return Err(Error::Domain(
                        "single-positive takes no positive bound other than 1".into(),
                    ));
                }
                if n < 2 {
                    return Err(Error::Domain(
                        "single-positive needs n >= 2; a population of one needs no tests".into(),
                    ));
                }
                Ok(SchemeSpec { kind, n, d: 1 })
            }
            _ => {
                let d = d.ok_or_else(|| {
                    Error::Domain(format!("scheme {kind} needs a positive bound d"))
                })?;
                if n == 0 || d == 0 {
                    return Err(Error::Domain(format!(
                        "scheme needs n >= 1 and d >= 1, got n={n} d={d}"
                    )));
                }
                if kind == SchemeKind::UpToDGray && d < 2 {
                    return Err(Error::Domain("up-to-d-gray needs d >= 2".into()));
                }
                if matches!(kind, SchemeKind::ExactDGray | SchemeKind::ExactDBinary) && d > n {
                    return Err(Error::Domain(format!(
                        "exact-d schemes need d <= n, got n={n} d={d}"
                    )));
                }
                Ok(SchemeSpec { kind, n, d })
            }
        }
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Items per super item in phase 1 (1 for the single-positive code).
    pub fn block(&self) -> u64 {
        match self.kind {
            SchemeKind::SinglePositive => 1,
            SchemeKind::UpToDGray => self.d - 1,
            _ => self.d,
        }
    }

    /// Number of super items.
    pub fn kappa(&self) -> u64 {
        self.n.div_ceil(self.block())
    }

    /// Spacing modulus of the phase-2 matrix, if the scheme has one.
    pub fn phase2_modulus(&self) -> Option<u64> {
        match self.kind {
            SchemeKind::SinglePositive => None,
            SchemeKind::UpToDGray => Some(2 * (self.d - 1)),
            _ => Some(2 * self.d),
        }
    }

    /// Rows of the phase-2 matrix.
    fn phase2_rows(&self) -> u64 {
        match self.kind {
            SchemeKind::SinglePositive => 0,
            SchemeKind::UpToDBinary => 2 * self.d,
            SchemeKind::UpToDGray => 2 * (self.d - 1),
            SchemeKind::ExactDGray | SchemeKind::ExactDBinary => self.d,
        }
    }

    /// Number of tests; always equal to the rows of [`SchemeSpec::matrix`].
    pub fn test_count(&self) -> u64 {
        let kappa = self.kappa();
        let w = ceil_log2(kappa) as u64;
        match self.kind {
            SchemeKind::SinglePositive => ceil_log2(self.n) as u64,
            SchemeKind::UpToDBinary | SchemeKind::ExactDBinary => 2 * w + self.phase2_rows(),
            SchemeKind::UpToDGray | SchemeKind::ExactDGray => {
                // The 3 spacing rows exist only alongside the Gray rows.
                if kappa >= 2 {
                    w + 3 + self.phase2_rows()
                } else {
                    self.phase2_rows()
                }
            }
        }
    }

    /// The scheme's stacked measurement matrix.
    pub fn matrix(&self) -> MeasurementMatrix {
        self.build().expect("validated spec always builds")
    }

    fn build(&self) -> Result<MeasurementMatrix> {
        match self.kind {
            SchemeKind::SinglePositive => binary_code_matrix(self.n),
            _ => {
                let kappa = self.kappa();
                let mut parts = Vec::new();
                if kappa >= 2 {
                    let partition = SuperItemPartition::new(self.n, self.block())?;
                    match self.kind {
                        SchemeKind::UpToDBinary | SchemeKind::ExactDBinary => {
                            parts.push(expand_to_items(binary_pair_matrix(kappa)?, partition)?);
                        }
                        _ => {
                            parts.push(expand_to_items(gray_matrix(kappa)?, partition.clone())?);
                            parts.push(expand_to_items(mod_spacing_matrix(3, kappa)?, partition)?);
                        }
                    }
                }
                let modulus = self.phase2_modulus().expect("two-phase scheme");
                parts.push(mod_spacing_rows(modulus, self.phase2_rows(), self.n)?);
                stack(parts)
            }
        }
    }

    /// Segment layout of the outcome vector, matching the decoder's reading.
    pub fn segments(&self) -> Vec<Segment> {
        let kappa = self.kappa();
        let w = ceil_log2(kappa) as usize;
        let p2 = self.phase2_rows() as usize;
        match self.kind {
            SchemeKind::SinglePositive => {
                vec![Segment::new(SegmentLabel::Y, 0, ceil_log2(self.n) as usize)]
            }
            SchemeKind::UpToDBinary | SchemeKind::ExactDBinary => {
                let mut segs = Vec::new();
                if kappa >= 2 {
                    segs.push(Segment::new(SegmentLabel::Y1, 0, 2 * w));
                }
                segs.push(Segment::new(
                    SegmentLabel::Y2,
                    if kappa >= 2 { 2 * w } else { 0 },
                    p2,
                ));
                segs
            }
            SchemeKind::UpToDGray | SchemeKind::ExactDGray => {
                let phase2_label = if self.kind == SchemeKind::UpToDGray {
                    SegmentLabel::V
                } else {
                    SegmentLabel::Y2
                };
                let mut segs = Vec::new();
                let mut offset = 0;
                if kappa >= 2 {
                    segs.push(Segment::new(SegmentLabel::S, 0, w));
                    segs.push(Segment::new(SegmentLabel::L, w, 3));
                    offset = w + 3;
                }
                segs.push(Segment::new(phase2_label, offset, p2));
                segs
            }
        }
    }

    /// Is `len` an admissible positive-set size for this scheme? The empty
    /// set is admissible everywhere on the encoding side.
    pub fn admits_len(&self, len: u64) -> bool {
        match self.kind {
            SchemeKind::SinglePositive => len <= 1,
            SchemeKind::UpToDBinary | SchemeKind::UpToDGray => len <= self.d,
            SchemeKind::ExactDGray | SchemeKind::ExactDBinary => len == 0 || len == self.d,
        }
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, d={})", self.kind, self.n, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: SchemeKind, n: u64, d: u64) -> SchemeSpec {
        SchemeSpec::new(kind, n, Some(d)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SchemeSpec::new(SchemeKind::SinglePositive, 8, None).is_ok());
        assert!(SchemeSpec::new(SchemeKind::SinglePositive, 8, Some(1)).is_ok());
        assert!(SchemeSpec::new(SchemeKind::SinglePositive, 8, Some(2)).is_err());
        assert!(SchemeSpec::new(SchemeKind::SinglePositive, 1, None).is_err());
        assert!(SchemeSpec::new(SchemeKind::UpToDBinary, 8, None).is_err());
        assert!(SchemeSpec::new(SchemeKind::UpToDGray, 8, Some(1)).is_err());
        assert!(SchemeSpec::new(SchemeKind::ExactDBinary, 4, Some(5)).is_err());
        assert!(SchemeSpec::new(SchemeKind::UpToDBinary, 4, Some(5)).is_ok());
        assert!(SchemeSpec::new(SchemeKind::UpToDBinary, MAX_N + 1, Some(5)).is_err());
        assert!(SchemeSpec::new(SchemeKind::UpToDBinary, 16, Some(MAX_D + 1)).is_err());
        assert!(SchemeSpec::new(SchemeKind::UpToDBinary, MAX_N, Some(3)).is_ok());
    }

    #[test]
    fn test_count_matches_closed_forms() {
        // ceil(log2 16384) + 2*5 + 1
        assert_eq!(spec(SchemeKind::UpToDGray, 1 << 16, 5).test_count(), 25);
        // 2*ceil(log2 42949673) + 200
        assert_eq!(
            spec(SchemeKind::UpToDBinary, 1 << 32, 100).test_count(),
            252
        );
        // 2*ceil(log2 13108) + 5
        assert_eq!(spec(SchemeKind::ExactDBinary, 1 << 16, 5).test_count(), 33);
        // ceil(log2 ceil(2^32/99)) + 2*100 + 1
        assert_eq!(spec(SchemeKind::UpToDGray, 1 << 32, 100).test_count(), 227);
        assert_eq!(
            SchemeSpec::new(SchemeKind::SinglePositive, 1 << 16, None)
                .unwrap()
                .test_count(),
            16
        );
    }

    #[test]
    fn test_count_equals_matrix_rows() {
        for kind in SchemeKind::ALL {
            for n in [1u64, 2, 3, 4, 7, 16, 17, 100, 255, 256] {
                for d in 1..=9u64 {
                    let bound = (kind != SchemeKind::SinglePositive).then_some(d);
                    let Ok(s) = SchemeSpec::new(kind, n, bound) else {
                        continue;
                    };
                    assert_eq!(s.test_count(), s.matrix().rows(), "{kind} n={n} d={d}");
                    let segs = s.segments();
                    let total: usize = segs.iter().map(|g| g.len()).sum();
                    assert_eq!(total as u64, s.test_count(), "{kind} n={n} d={d}");
                    // Segments tile the outcome without overlap.
                    let mut offset = 0;
                    for g in &segs {
                        assert_eq!(g.offset(), offset);
                        offset += g.len();
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_single_super_item() {
        // n <= d: phase 1 disappears, every item is a potential positive.
        let s = spec(SchemeKind::UpToDBinary, 3, 5);
        assert_eq!(s.kappa(), 1);
        assert_eq!(s.test_count(), 10);
        assert_eq!(s.matrix().rows(), 10);

        let s = spec(SchemeKind::ExactDGray, 4, 4);
        assert_eq!(s.kappa(), 1);
        assert_eq!(s.test_count(), 4);

        let s = spec(SchemeKind::UpToDBinary, 1, 1);
        assert_eq!(s.test_count(), 2);
    }

    #[test]
    fn scheme_names_round_trip() {
        for kind in SchemeKind::ALL {
            assert_eq!(kind.as_str().parse::<SchemeKind>().unwrap(), kind);
        }
        assert!("adaptive".parse::<SchemeKind>().is_err());
    }
}
