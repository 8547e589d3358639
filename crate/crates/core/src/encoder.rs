//! Test simulation: outcome vectors under the OR channel.
//!
//! The outcome of test `i` is 1 exactly when some positive item belongs to
//! it. Encoding ORs the lazy columns of the positive items, so a run of
//! `p` positives against a `t`-row matrix costs O(t * p) regardless of the
//! population size.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::matrices::MeasurementMatrix;
use crate::scheme::SchemeSpec;

/// A consecutive run of positive items: `start, start+1, ..., start+len-1`.
/// `len = 0` is the empty positive set (start is then 0 by convention).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConsecutiveRange {
    start: u64,
    len: u64,
}

impl ConsecutiveRange {
    pub const EMPTY: ConsecutiveRange = ConsecutiveRange { start: 0, len: 0 };

    pub fn new(start: u64, len: u64) -> Result<Self> {
        if len == 0 {
            return Ok(Self::EMPTY);
        }
        if start == 0 {
            return Err(Error::Domain("item indices are 1-based".into()));
        }
        if start.checked_add(len).is_none() {
            return Err(Error::Domain(format!(
                "range start={start} len={len} overflows the item index space"
            )));
        }
        Ok(ConsecutiveRange { start, len })
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    /// Last item of the run; only meaningful when non-empty.
    pub fn end(&self) -> u64 {
        debug_assert!(!self.is_empty());
        self.start + self.len - 1
    }

    pub fn items(&self) -> impl Iterator<Item = u64> {
        self.start..self.start + self.len
    }

    pub fn contains(&self, item: u64) -> bool {
        !self.is_empty() && item >= self.start && item <= self.end()
    }

    fn check_within(&self, n: u64) -> Result<()> {
        if !self.is_empty() && self.end() > n {
            return Err(Error::Domain(format!(
                "positive range {self} exceeds the population of {n} items"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for ConsecutiveRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("empty")
        } else {
            write!(f, "{},{}", self.start, self.len)
        }
    }
}

/// Labels for the per-phase slices of an outcome vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentLabel {
    /// Gray-code phase-1 rows.
    S,
    /// 3-row spacing phase-1 rows.
    L,
    /// Spacing phase-2 rows of the Gray up-to-d design.
    V,
    /// Whole outcome of a single-matrix design.
    Y,
    /// Binary-pair phase-1 rows.
    Y1,
    /// Spacing phase-2 rows.
    Y2,
}

impl SegmentLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SegmentLabel::S => "s",
            SegmentLabel::L => "l",
            SegmentLabel::V => "v",
            SegmentLabel::Y => "y",
            SegmentLabel::Y1 => "y1",
            SegmentLabel::Y2 => "y2",
        }
    }
}

impl fmt::Display for SegmentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SegmentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "s" => SegmentLabel::S,
            "l" => SegmentLabel::L,
            "v" => SegmentLabel::V,
            "y" => SegmentLabel::Y,
            "y1" => SegmentLabel::Y1,
            "y2" => SegmentLabel::Y2,
            _ => return Err(Error::Parse(format!("unknown segment label {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    label: SegmentLabel,
    offset: usize,
    len: usize,
}

impl Segment {
    pub fn new(label: SegmentLabel, offset: usize, len: usize) -> Self {
        Segment { label, offset, len }
    }

    pub fn label(&self) -> SegmentLabel {
        self.label
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

/// The test-result bit vector, sliced into phase segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeVector {
    bits: BitVec,
    segments: Vec<Segment>,
}

impl OutcomeVector {
    pub fn new(bits: BitVec, segments: Vec<Segment>) -> Result<Self> {
        // Segments must tile the bits in order, without gaps or overlap.
        let mut offset = 0;
        for seg in &segments {
            if seg.offset != offset {
                return Err(Error::Domain(format!(
                    "segment {} at offset {} does not tile (expected {offset})",
                    seg.label, seg.offset
                )));
            }
            offset += seg.len;
        }
        if offset != bits.len() {
            return Err(Error::Domain(format!(
                "segments cover {offset} bits but the outcome has {}",
                bits.len()
            )));
        }
        Ok(OutcomeVector { bits, segments })
    }

    /// Wrap raw bits as one unnamed whole-vector segment.
    pub fn from_bits(bits: BitVec) -> Self {
        let len = bits.len();
        OutcomeVector {
            bits,
            segments: vec![Segment::new(SegmentLabel::Y, 0, len)],
        }
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment(&self, label: SegmentLabel) -> Option<Segment> {
        self.segments.iter().copied().find(|s| s.label == label)
    }

    /// Copy of the bits under `label`.
    pub fn segment_bits(&self, label: SegmentLabel) -> Option<BitVec> {
        self.segment(label)
            .map(|s| self.bits.slice(s.offset, s.len))
    }

    /// Annotated text form: `label:offset:len,...` header, a space, then the
    /// bits. The plain form (just the bits) is `to_string()`.
    pub fn to_annotated_string(&self) -> String {
        let header: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("{}:{}:{}", s.label, s.offset, s.len))
            .collect();
        format!("{} {}", header.join(","), self.bits)
    }
}

impl fmt::Display for OutcomeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

impl FromStr for OutcomeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(' ') {
            None => Ok(OutcomeVector::from_bits(s.parse()?)),
            Some((header, bits)) => {
                let bits: BitVec = bits.trim().parse()?;
                let mut segments = Vec::new();
                for part in header.split(',') {
                    let fields: Vec<&str> = part.split(':').collect();
                    if fields.len() != 3 {
                        return Err(Error::Parse(format!(
                            "segment {part:?} is not label:offset:len"
                        )));
                    }
                    let label: SegmentLabel = fields[0].parse()?;
                    let offset: usize = fields[1]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad segment offset in {part:?}")))?;
                    let len: usize = fields[2]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad segment length in {part:?}")))?;
                    segments.push(Segment::new(label, offset, len));
                }
                OutcomeVector::new(bits, segments)
            }
        }
    }
}

/// Outcome of testing `positives` with `matrix`: bit `i` is 1 iff some
/// positive item appears in test `i + 1`. O(rows * len) via lazy columns.
pub fn encode(matrix: &MeasurementMatrix, positives: &ConsecutiveRange) -> Result<OutcomeVector> {
    positives.check_within(matrix.cols())?;
    let rows = usize::try_from(matrix.rows()).expect("row count fits in usize");
    let mut bits = BitVec::zeros(rows);
    for j in positives.items() {
        matrix.or_column_into(j, &mut bits, 0);
    }
    Ok(OutcomeVector::from_bits(bits))
}

/// Outcome of the full scheme, sliced into the segments its decoder expects.
pub fn encode_scheme(spec: &SchemeSpec, positives: &ConsecutiveRange) -> Result<OutcomeVector> {
    positives.check_within(spec.n())?;
    if !spec.admits_len(positives.len()) {
        return Err(Error::Domain(format!(
            "{} does not admit {} positives",
            spec,
            positives.len()
        )));
    }
    let y = encode(&spec.matrix(), positives)?;
    OutcomeVector::new(y.bits, spec.segments())
}
