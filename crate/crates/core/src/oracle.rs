//! Brute-force reference decoder and identifiability checker.
//!
//! The brute-force core re-encodes every admissible consecutive range
//! through its own entry-by-entry path and compares outcomes; it takes no
//! part in the fast decoding logic it arbitrates. On top of it,
//! [`verify_identifiability`] confronts the fast decoder with every valid
//! positive set, so its reports double as the exhaustive round-trip check.

use std::collections::HashMap;
use std::fmt;

use crate::bits::BitVec;
use crate::decoders::decode_scheme;
use crate::encoder::{encode_scheme, ConsecutiveRange, OutcomeVector};
use crate::error::{Error, Result};
use crate::matrices::MeasurementMatrix;
use crate::scheme::{SchemeKind, SchemeSpec};

/// Admissible positive-set sizes for an enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardinalityRule {
    /// Sizes `0..=max`, the empty set included.
    UpTo(u64),
    /// Size exactly `count` (at least 1).
    Exactly(u64),
}

impl CardinalityRule {
    fn lengths(&self, n: u64) -> Vec<u64> {
        match *self {
            CardinalityRule::UpTo(max) => (0..=max.min(n)).collect(),
            CardinalityRule::Exactly(count) => {
                if count >= 1 && count <= n {
                    vec![count]
                } else {
                    vec![]
                }
            }
        }
    }
}

/// Every admissible range of length `len` over `n` items.
fn ranges_of_len(n: u64, len: u64) -> Vec<ConsecutiveRange> {
    if len == 0 {
        return vec![ConsecutiveRange::EMPTY];
    }
    (1..=n - len + 1)
        .map(|start| ConsecutiveRange::new(start, len).expect("in range"))
        .collect()
}

fn all_ranges(n: u64, rule: CardinalityRule) -> Vec<ConsecutiveRange> {
    rule.lengths(n)
        .into_iter()
        .flat_map(|len| ranges_of_len(n, len))
        .collect()
}

/// Entry-by-entry OR encoding, independent of the lazy column path.
pub fn reference_encode(matrix: &MeasurementMatrix, positives: &ConsecutiveRange) -> BitVec {
    let rows = matrix.rows();
    let mut y = BitVec::zeros(rows as usize);
    for i in 1..=rows {
        let hit = positives.items().any(|j| matrix.entry(i, j));
        if hit {
            y.set((i - 1) as usize, true);
        }
    }
    y
}

/// All admissible ranges that re-encode to exactly `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub candidates: Vec<ConsecutiveRange>,
}

impl CandidateSet {
    pub fn is_singleton(&self) -> bool {
        self.candidates.len() == 1
    }
}

const MAX_ENUM_COLS: u64 = 1 << 16;
const MAX_EXHAUSTIVE_N: u64 = 1 << 12;

/// Enumerate every range admitted by `rule`, encode each, and return those
/// matching `y` bit for bit.
pub fn brute_force_decode(
    matrix: &MeasurementMatrix,
    y: &BitVec,
    rule: CardinalityRule,
) -> Result<CandidateSet> {
    let n = matrix.cols();
    if n > MAX_ENUM_COLS {
        return Err(Error::TooLarge(format!(
            "refusing to enumerate ranges over {n} columns (cap {MAX_ENUM_COLS})"
        )));
    }
    if y.len() as u64 != matrix.rows() {
        return Err(Error::Domain(format!(
            "outcome has {} bits but the matrix has {} rows",
            y.len(),
            matrix.rows()
        )));
    }
    let candidates = all_ranges(n, rule)
        .into_iter()
        .filter(|p| &reference_encode(matrix, p) == y)
        .collect();
    Ok(CandidateSet { candidates })
}

/// One positive set the scheme fails on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub positives: ConsecutiveRange,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Another admissible set produces the same outcome.
    Ambiguous { collides_with: ConsecutiveRange },
    /// The fast decoder returned a different set.
    DecoderMismatch { decoded: ConsecutiveRange },
    /// The fast decoder refused a valid outcome.
    DecoderError { message: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={}: ", self.positives)?;
        match &self.kind {
            ViolationKind::Ambiguous { collides_with } => {
                write!(f, "outcome collides with P={collides_with}")
            }
            ViolationKind::DecoderMismatch { decoded } => {
                write!(f, "decoder returned {decoded}")
            }
            ViolationKind::DecoderError { message } => {
                write!(f, "decoder failed: {message}")
            }
        }
    }
}

/// Result of exhaustively checking one scheme instance.
#[derive(Clone, Debug)]
pub struct IdentifiabilityReport {
    pub spec: SchemeSpec,
    pub checked: u64,
    pub violations: Vec<Violation>,
}

impl IdentifiabilityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for IdentifiabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "scheme={} n={} d={} tests={} positive_sets={} violations={}",
            self.spec.kind(),
            self.spec.n(),
            self.spec.d(),
            self.spec.test_count(),
            self.checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

fn scheme_rule(spec: &SchemeSpec) -> CardinalityRule {
    match spec.kind() {
        SchemeKind::SinglePositive => CardinalityRule::Exactly(1),
        SchemeKind::UpToDBinary | SchemeKind::UpToDGray => CardinalityRule::UpTo(spec.d()),
        SchemeKind::ExactDGray | SchemeKind::ExactDBinary => CardinalityRule::Exactly(spec.d()),
    }
}

/// Check that every admissible positive set of `spec` has a unique outcome
/// and that the fast decoder recovers it. Violations are reported, sorted by
/// positive set; they are content, not errors.
pub fn verify_identifiability(spec: &SchemeSpec) -> Result<IdentifiabilityReport> {
    if spec.n() > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge(format!(
            "exhaustive verification is capped at n = {MAX_EXHAUSTIVE_N}, got {}",
            spec.n()
        )));
    }
    let ranges = all_ranges(spec.n(), scheme_rule(spec));
    let mut by_outcome: HashMap<BitVec, ConsecutiveRange> = HashMap::new();
    let mut violations = Vec::new();

    for &p in &ranges {
        let y = encode_scheme(spec, &p).expect("admissible range encodes");
        if let Some(&other) = by_outcome.get(y.bits()) {
            violations.push(Violation {
                positives: p,
                kind: ViolationKind::Ambiguous {
                    collides_with: other,
                },
            });
        } else {
            by_outcome.insert(y.bits().clone(), p);
        }
        match decode_scheme(spec, &y) {
            Ok(run) if run == p => {}
            Ok(run) => violations.push(Violation {
                positives: p,
                kind: ViolationKind::DecoderMismatch { decoded: run },
            }),
            Err(e) => violations.push(Violation {
                positives: p,
                kind: ViolationKind::DecoderError {
                    message: e.to_string(),
                },
            }),
        }
    }

    violations.sort_by_key(|v| v.positives);
    Ok(IdentifiabilityReport {
        spec: *spec,
        checked: ranges.len() as u64,
        violations,
    })
}

/// The outcomes a scheme can produce, keyed by bits; used by tests that need
/// the full outcome-to-set map rather than a report.
pub fn outcome_map(spec: &SchemeSpec) -> Result<HashMap<BitVec, Vec<ConsecutiveRange>>> {
    if spec.n() > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge(format!(
            "exhaustive enumeration is capped at n = {MAX_EXHAUSTIVE_N}, got {}",
            spec.n()
        )));
    }
    let mut map: HashMap<BitVec, Vec<ConsecutiveRange>> = HashMap::new();
    for p in all_ranges(spec.n(), scheme_rule(spec)) {
        let y = encode_scheme(spec, &p)?;
        map.entry(y.bits().clone()).or_default().push(p);
    }
    Ok(map)
}

/// Oracle view of a whole outcome vector against a scheme: candidates under
/// the scheme's own cardinality rule.
pub fn scheme_candidates(spec: &SchemeSpec, y: &OutcomeVector) -> Result<CandidateSet> {
    brute_force_decode(&spec.matrix(), y.bits(), scheme_rule(spec))
}
