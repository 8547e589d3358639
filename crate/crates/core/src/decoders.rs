//! Decoding procedures. Every decoder runs in O(t) for a t-test outcome:
//! a constant number of passes over each outcome segment plus one step per
//! potential positive.
//!
//! Phase 1 names up to two consecutive super positive items; phase 2 sifts
//! the true positives out of the items those super items cover. Outcomes
//! that cannot have come from any consecutive positive set are reported as
//! decode errors rather than folded into a best-effort answer.

use crate::bits::BitVec;
use crate::encoder::{ConsecutiveRange, OutcomeVector};
use crate::error::{Error, Result};
use crate::matrices::{ceil_log2, BlockSide};
use crate::scheme::{SchemeKind, SchemeSpec};

/// Unit-step counter: one step per outcome bit scanned and one per potential
/// positive examined. Backs the `steps <= c * t` decode-cost bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct StepCounter {
    steps: u64,
}

impl StepCounter {
    pub fn new() -> Self {
        StepCounter::default()
    }

    #[inline]
    fn bump(&mut self, n: u64) {
        self.steps += n;
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}

/// Up to two consecutive super positive items.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperPositiveSet {
    Empty,
    One(u64),
    /// The pair `{j, j + 1}`.
    Two(u64),
}

impl SuperPositiveSet {
    pub fn min(&self) -> Option<u64> {
        match *self {
            SuperPositiveSet::Empty => None,
            SuperPositiveSet::One(j) | SuperPositiveSet::Two(j) => Some(j),
        }
    }

    pub fn max(&self) -> Option<u64> {
        match *self {
            SuperPositiveSet::Empty => None,
            SuperPositiveSet::One(j) => Some(j),
            SuperPositiveSet::Two(j) => Some(j + 1),
        }
    }

    pub fn to_vec(&self) -> Vec<u64> {
        match *self {
            SuperPositiveSet::Empty => vec![],
            SuperPositiveSet::One(j) => vec![j],
            SuperPositiveSet::Two(j) => vec![j, j + 1],
        }
    }
}

/// Which phase-1 code an exact-d outcome was produced with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactVariant {
    Gray,
    Binary,
}

// --- Phase-1 primitives ---

/// Decode up to two consecutive positives from a binary-pair outcome.
///
/// `y` is split into halves `yL`/`yR`. The left-most position where both
/// halves read 1 marks the bit flipped between the two positives' codewords;
/// clearing it in `yL` recovers the smaller index. Without such a position
/// the set has at most one element, read off `yL` directly.
pub fn decode_two_consecutive_bin(y: &BitVec, kappa: u64) -> Result<SuperPositiveSet> {
    decode_two_consecutive_bin_counted(y, kappa, &mut StepCounter::new())
}

fn decode_two_consecutive_bin_counted(
    y: &BitVec,
    kappa: u64,
    steps: &mut StepCounter,
) -> Result<SuperPositiveSet> {
    if kappa < 2 {
        return Err(Error::Domain(
            "binary-pair decoding needs kappa >= 2".into(),
        ));
    }
    let w = ceil_log2(kappa) as usize;
    if y.len() != 2 * w {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {} for kappa = {kappa}",
            y.len(),
            2 * w
        )));
    }

    let mut flip = None;
    for i in 0..w {
        steps.bump(1);
        if y.get(i) && y.get(w + i) {
            flip = Some(i);
            break;
        }
    }

    if let Some(i0) = flip {
        let mut value = 0u64;
        for i in 0..w {
            steps.bump(1);
            let bit = i != i0 && y.get(i);
            value = (value << 1) | bit as u64;
        }
        let a = value + 1;
        if a + 1 > kappa {
            return Err(Error::Decode(format!(
                "decoded pair {{{a}, {}}} exceeds the {kappa} super items",
                a + 1
            )));
        }
        return Ok(SuperPositiveSet::Two(a));
    }

    let mut any = false;
    for i in 0..w {
        steps.bump(1);
        if y.get(i) || y.get(w + i) {
            any = true;
            break;
        }
    }
    if !any {
        return Ok(SuperPositiveSet::Empty);
    }
    let mut value = 0u64;
    for i in 0..w {
        steps.bump(1);
        value = (value << 1) | y.get(i) as u64;
    }
    let a = value + 1;
    if a > kappa {
        return Err(Error::Decode(format!(
            "decoded index {a} exceeds the {kappa} super items"
        )));
    }
    Ok(SuperPositiveSet::One(a))
}

/// Decode up to two consecutive positives from a Gray outcome `s` plus the
/// 3-row spacing outcome `l`.
///
/// Consecutive Gray columns differ in one bit, so their union is one of
/// them: `s` always names a super positive item `alpha`. The three spacing
/// rows then say whether `alpha - 1`, `alpha` itself, or `alpha + 1` is also
/// positive; `l` being all-zero means there are no positives at all.
pub fn decode_two_consecutive_gray(s: &BitVec, l: &BitVec, kappa: u64) -> Result<SuperPositiveSet> {
    decode_two_consecutive_gray_counted(s, l, kappa, &mut StepCounter::new())
}

fn decode_two_consecutive_gray_counted(
    s: &BitVec,
    l: &BitVec,
    kappa: u64,
    steps: &mut StepCounter,
) -> Result<SuperPositiveSet> {
    if kappa < 2 {
        return Err(Error::Domain("gray decoding needs kappa >= 2".into()));
    }
    let w = ceil_log2(kappa) as usize;
    if s.len() != w || l.len() != 3 {
        return Err(Error::Domain(format!(
            "segments have {} and {} bits, expected {w} and 3 for kappa = {kappa}",
            s.len(),
            l.len()
        )));
    }

    steps.bump(3);
    if l.is_zero() {
        steps.bump(w as u64);
        if !s.is_zero() {
            return Err(Error::Decode(
                "spacing rows are empty but gray rows are set".into(),
            ));
        }
        return Ok(SuperPositiveSet::Empty);
    }

    // Gray-to-rank scan, one XOR fold per bit.
    let mut acc = false;
    let mut value = 0u64;
    for i in 0..w {
        steps.bump(1);
        acc ^= s.get(i);
        value = (value << 1) | acc as u64;
    }
    let alpha = value + 1;
    if alpha > kappa {
        return Err(Error::Decode(format!(
            "decoded index {alpha} exceeds the {kappa} super items"
        )));
    }

    // Super item j occupies spacing row ((j - 1) mod 3); three consecutive
    // super items occupy three distinct rows.
    let own = l.get(((alpha - 1) % 3) as usize);
    let prev = l.get(((alpha + 1) % 3) as usize); // (alpha - 2) mod 3
    let next = l.get((alpha % 3) as usize);
    if !own {
        return Err(Error::Decode(format!(
            "spacing row of super item {alpha} is not set"
        )));
    }
    if prev && alpha == 1 {
        return Err(Error::Decode(
            "spacing row of a nonexistent predecessor is set".into(),
        ));
    }
    if next && alpha == kappa {
        return Err(Error::Decode(
            "spacing row of a nonexistent successor is set".into(),
        ));
    }
    match (prev, next) {
        (true, true) => Err(Error::Decode(
            "both neighbor spacing rows are set; not a consecutive set".into(),
        )),
        (true, false) => Ok(SuperPositiveSet::Two(alpha - 1)),
        (false, true) => Ok(SuperPositiveSet::Two(alpha)),
        (false, false) => Ok(SuperPositiveSet::One(alpha)),
    }
}

/// Decode the single positive of the plain binary code: the outcome is the
/// positive item's codeword. The all-zero outcome is item 1's codeword.
pub fn decode_single(y: &BitVec, n: u64) -> Result<u64> {
    decode_single_counted(y, n, &mut StepCounter::new())
}

fn decode_single_counted(y: &BitVec, n: u64, steps: &mut StepCounter) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(
            "single-positive decoding needs n >= 2".into(),
        ));
    }
    let w = ceil_log2(n) as usize;
    if y.len() != w {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {w} for n = {n}",
            y.len()
        )));
    }
    let mut value = 0u64;
    for i in 0..w {
        steps.bump(1);
        value = (value << 1) | y.get(i) as u64;
    }
    let item = value + 1;
    if item > n {
        return Err(Error::Decode(format!(
            "decoded item {item} exceeds n = {n}"
        )));
    }
    Ok(item)
}

// --- Half-identity block decoder ---

/// Position (1-based, in `1..=2d`) of the starting (`Left`) or terminal
/// (`Right`) positive among `2d` items with exactly `d` consecutive
/// positives, from the `d`-test half-identity outcome.
///
/// With the identity on the left half the outcome is a suffix run whose
/// LEFT-most 1 is the starting positive; all-zero means the run starts at
/// `d + 1`. With the identity on the right half the outcome is a prefix run
/// whose right-most 1 is the terminal positive at `d + i0`; all-zero means
/// the run ends at `d`.
pub fn decode_block(y: &BitVec, d: u64, side: BlockSide) -> Result<u64> {
    decode_block_counted(y, d, side, &mut StepCounter::new())
}

fn decode_block_counted(
    y: &BitVec,
    d: u64,
    side: BlockSide,
    steps: &mut StepCounter,
) -> Result<u64> {
    if d == 0 {
        return Err(Error::Domain("block decoding needs d >= 1".into()));
    }
    if y.len() as u64 != d {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {d}",
            y.len()
        )));
    }
    let d_us = d as usize;
    match side {
        BlockSide::Left => {
            // Expect 0^(k-1) 1^(d-k+1) and return k, or d + 1 when all-zero.
            let mut first = None;
            for i in 0..d_us {
                steps.bump(1);
                match (first.is_some(), y.get(i)) {
                    (false, true) => first = Some(i),
                    (true, false) => {
                        return Err(Error::Decode(
                            "outcome is not a contiguous suffix run".into(),
                        ))
                    }
                    _ => {}
                }
            }
            Ok(first.map_or(d + 1, |i| i as u64 + 1))
        }
        BlockSide::Right => {
            // Expect 1^k 0^(d-k) and return d + k, or d when all-zero.
            let mut last = None;
            let mut ended = false;
            for i in 0..d_us {
                steps.bump(1);
                if y.get(i) {
                    if ended {
                        return Err(Error::Decode(
                            "outcome is not a contiguous prefix run".into(),
                        ));
                    }
                    last = Some(i);
                } else {
                    ended = true;
                }
            }
            Ok(last.map_or(d, |i| d + i as u64 + 1))
        }
    }
}

// --- Scheme-level decoders ---

struct Phase2 {
    offset: usize,
    rows: usize,
    modulus: u64,
}

/// Keep the potential positives `first..=last` whose phase-2 row reads 1 and
/// return them as one consecutive run.
fn filter_potentials(
    y: &OutcomeVector,
    phase2: &Phase2,
    first: u64,
    last: u64,
    steps: &mut StepCounter,
) -> Result<ConsecutiveRange> {
    let mut kept_first = 0u64;
    let mut kept_last = 0u64;
    let mut count = 0u64;
    for j in first..=last {
        steps.bump(1);
        let row = ((j - 1) % phase2.modulus) as usize;
        debug_assert!(row < phase2.rows);
        if y.bits().get(phase2.offset + row) {
            if count == 0 {
                kept_first = j;
            } else if kept_last + 1 != j {
                return Err(Error::Decode(format!(
                    "surviving items {kept_last} and {j} are not consecutive"
                )));
            }
            kept_last = j;
            count += 1;
        }
    }
    if count == 0 {
        return Ok(ConsecutiveRange::EMPTY);
    }
    ConsecutiveRange::new(kept_first, count)
}

fn check_phase2_zero(y: &OutcomeVector, phase2: &Phase2, steps: &mut StepCounter) -> Result<()> {
    steps.bump(phase2.rows as u64);
    for i in 0..phase2.rows {
        if y.bits().get(phase2.offset + i) {
            return Err(Error::Decode(
                "phase 1 reports no positives but a phase-2 test fired".into(),
            ));
        }
    }
    Ok(())
}

/// Decode an up-to-d outcome whose phase 1 is the binary pair code over
/// blocks of `d` and whose phase 2 has `2d` spacing rows.
pub fn decode_up_to_d(y: &OutcomeVector, n: u64, d: u64) -> Result<ConsecutiveRange> {
    decode_up_to_d_counted(y, n, d, &mut StepCounter::new())
}

fn decode_up_to_d_counted(
    y: &OutcomeVector,
    n: u64,
    d: u64,
    steps: &mut StepCounter,
) -> Result<ConsecutiveRange> {
    if n == 0 || d == 0 {
        return Err(Error::Domain("decoding needs n >= 1 and d >= 1".into()));
    }
    let kappa = n.div_ceil(d);
    let w = if kappa >= 2 {
        ceil_log2(kappa) as usize
    } else {
        0
    };
    let phase2 = Phase2 {
        offset: 2 * w,
        rows: 2 * d as usize,
        modulus: 2 * d,
    };
    let expected = 2 * w + phase2.rows;
    if y.len() != expected {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {expected}",
            y.len()
        )));
    }

    if kappa < 2 {
        // Single super item: every item is a potential positive.
        let run = filter_potentials(y, &phase2, 1, n, steps)?;
        return bound_up_to_d(run, n, d);
    }

    let y1 = y.bits().slice(0, 2 * w);
    let supers = decode_two_consecutive_bin_counted(&y1, kappa, steps)?;
    finish_up_to_d(y, &phase2, supers, n, d, d, steps)
}

/// Decode an up-to-d outcome whose phase 1 is the Gray code plus 3 spacing
/// rows over blocks of `d - 1` and whose phase 2 has `2(d-1)` spacing rows.
pub fn decode_up_to_d_gray(y: &OutcomeVector, n: u64, d: u64) -> Result<ConsecutiveRange> {
    decode_up_to_d_gray_counted(y, n, d, &mut StepCounter::new())
}

fn decode_up_to_d_gray_counted(
    y: &OutcomeVector,
    n: u64,
    d: u64,
    steps: &mut StepCounter,
) -> Result<ConsecutiveRange> {
    if n == 0 || d < 2 {
        return Err(Error::Domain(
            "gray up-to-d decoding needs n >= 1 and d >= 2".into(),
        ));
    }
    let block = d - 1;
    let kappa = n.div_ceil(block);
    let w = if kappa >= 2 {
        ceil_log2(kappa) as usize
    } else {
        0
    };
    let phase1 = if kappa >= 2 { w + 3 } else { 0 };
    let phase2 = Phase2 {
        offset: phase1,
        rows: 2 * block as usize,
        modulus: 2 * block,
    };
    let expected = phase1 + phase2.rows;
    if y.len() != expected {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {expected}",
            y.len()
        )));
    }

    if kappa < 2 {
        let run = filter_potentials(y, &phase2, 1, n, steps)?;
        return bound_up_to_d(run, n, d);
    }

    let s = y.bits().slice(0, w);
    let l = y.bits().slice(w, 3);
    let supers = decode_two_consecutive_gray_counted(&s, &l, kappa, steps)?;
    finish_up_to_d(y, &phase2, supers, n, d, block, steps)
}

fn finish_up_to_d(
    y: &OutcomeVector,
    phase2: &Phase2,
    supers: SuperPositiveSet,
    n: u64,
    d: u64,
    block: u64,
    steps: &mut StepCounter,
) -> Result<ConsecutiveRange> {
    let (Some(lo), Some(hi)) = (supers.min(), supers.max()) else {
        check_phase2_zero(y, phase2, steps)?;
        return Ok(ConsecutiveRange::EMPTY);
    };
    let first = (lo - 1) * block + 1;
    let last = (hi * block).min(n);
    let run = filter_potentials(y, phase2, first, last, steps)?;
    if run.is_empty() {
        return Err(Error::Decode(
            "phase 1 found super positives but phase 2 kept no item".into(),
        ));
    }
    bound_up_to_d(run, n, d)
}

fn bound_up_to_d(run: ConsecutiveRange, n: u64, d: u64) -> Result<ConsecutiveRange> {
    if run.len() > d {
        return Err(Error::Decode(format!(
            "{} surviving items exceed the bound d = {d}",
            run.len()
        )));
    }
    if !run.is_empty() && run.end() > n {
        return Err(Error::Decode(format!(
            "decoded range {run} exceeds n = {n}"
        )));
    }
    Ok(run)
}

/// Decode an exact-d outcome. Phase 1 names one or two super positive items;
/// one super item pins the run to a whole block, two super items leave a
/// 2d-item window whose half-identity phase-2 outcome locates the starting
/// or terminal positive depending on the parity of the lower index.
pub fn decode_exact_d(
    y: &OutcomeVector,
    n: u64,
    d: u64,
    variant: ExactVariant,
) -> Result<ConsecutiveRange> {
    decode_exact_d_counted(y, n, d, variant, &mut StepCounter::new())
}

fn decode_exact_d_counted(
    y: &OutcomeVector,
    n: u64,
    d: u64,
    variant: ExactVariant,
    steps: &mut StepCounter,
) -> Result<ConsecutiveRange> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::Domain(format!(
            "exact-d decoding needs 1 <= d <= n, got n={n} d={d}"
        )));
    }
    let kappa = n.div_ceil(d);
    let w = if kappa >= 2 {
        ceil_log2(kappa) as usize
    } else {
        0
    };
    let phase1 = if kappa < 2 {
        0
    } else {
        match variant {
            ExactVariant::Gray => w + 3,
            ExactVariant::Binary => 2 * w,
        }
    };
    let phase2 = Phase2 {
        offset: phase1,
        rows: d as usize,
        modulus: 2 * d,
    };
    if y.len() != phase1 + phase2.rows {
        return Err(Error::Domain(format!(
            "outcome has {} bits, expected {}",
            y.len(),
            phase1 + phase2.rows
        )));
    }

    if kappa < 2 {
        // kappa = 1 forces n = d: the only candidate run is the whole
        // population, and each of its items sits alone in one test.
        let y2 = y.bits().slice(phase2.offset, phase2.rows);
        steps.bump(d);
        if y2.is_zero() {
            return Ok(ConsecutiveRange::EMPTY);
        }
        if y2.count_ones() != phase2.rows {
            return Err(Error::Decode(
                "an exact-d run over the whole population must fire every test".into(),
            ));
        }
        return ConsecutiveRange::new(1, d);
    }

    let supers = match variant {
        ExactVariant::Gray => {
            let s = y.bits().slice(0, w);
            let l = y.bits().slice(w, 3);
            decode_two_consecutive_gray_counted(&s, &l, kappa, steps)?
        }
        ExactVariant::Binary => {
            let y1 = y.bits().slice(0, 2 * w);
            decode_two_consecutive_bin_counted(&y1, kappa, steps)?
        }
    };

    let alpha = match supers {
        SuperPositiveSet::Empty => {
            check_phase2_zero(y, &phase2, steps)?;
            return Ok(ConsecutiveRange::EMPTY);
        }
        SuperPositiveSet::One(alpha) => {
            // The run is exactly block alpha.
            let start = (alpha - 1) * d + 1;
            let run = ConsecutiveRange::new(start, d)?;
            if run.end() > n {
                return Err(Error::Decode(format!(
                    "super item {alpha} cannot hold {d} positives (n = {n})"
                )));
            }
            return Ok(run);
        }
        SuperPositiveSet::Two(alpha) => alpha,
    };

    // Two super positive items: the 2d potential positives start the window
    // at an even multiple of d when alpha is odd, so the phase-2 rows prune
    // to the left half-identity; for even alpha they prune to the right one.
    let y2 = y.bits().slice(phase2.offset, phase2.rows);
    let start = if alpha % 2 == 1 {
        let pos = decode_block_counted(&y2, d, BlockSide::Left, steps)?;
        (alpha - 1) * d + pos
    } else {
        let pos = decode_block_counted(&y2, d, BlockSide::Right, steps)?;
        let terminal = (alpha - 1) * d + pos;
        terminal - d + 1
    };
    let run = ConsecutiveRange::new(start, d)?;
    if run.end() > n {
        return Err(Error::Decode(format!(
            "decoded range {run} exceeds n = {n}"
        )));
    }
    // The run must actually touch both super items phase 1 reported.
    let start_block = (run.start() - 1) / d + 1;
    let end_block = (run.end() - 1) / d + 1;
    if start_block != alpha || end_block != alpha + 1 {
        return Err(Error::Decode(format!(
            "decoded range {run} is inconsistent with super positives {{{alpha}, {}}}",
            alpha + 1
        )));
    }
    Ok(run)
}

/// Decode a whole-scheme outcome back to its consecutive positive set.
pub fn decode_scheme(spec: &SchemeSpec, y: &OutcomeVector) -> Result<ConsecutiveRange> {
    Ok(decode_scheme_counted(spec, y)?.0)
}

/// As [`decode_scheme`], also reporting the unit steps the decoder took.
pub fn decode_scheme_counted(
    spec: &SchemeSpec,
    y: &OutcomeVector,
) -> Result<(ConsecutiveRange, u64)> {
    if y.len() as u64 != spec.test_count() {
        return Err(Error::Domain(format!(
            "outcome has {} bits but {spec} uses {} tests",
            y.len(),
            spec.test_count()
        )));
    }
    let mut steps = StepCounter::new();
    let run = match spec.kind() {
        SchemeKind::SinglePositive => {
            let item = decode_single_counted(y.bits(), spec.n(), &mut steps)?;
            ConsecutiveRange::new(item, 1)?
        }
        SchemeKind::UpToDBinary => decode_up_to_d_counted(y, spec.n(), spec.d(), &mut steps)?,
        SchemeKind::UpToDGray => decode_up_to_d_gray_counted(y, spec.n(), spec.d(), &mut steps)?,
        SchemeKind::ExactDGray => {
            decode_exact_d_counted(y, spec.n(), spec.d(), ExactVariant::Gray, &mut steps)?
        }
        SchemeKind::ExactDBinary => {
            decode_exact_d_counted(y, spec.n(), spec.d(), ExactVariant::Binary, &mut steps)?
        }
    };
    Ok((run, steps.steps()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{encode, encode_scheme};
    use crate::matrices::{binary_pair_matrix, half_block_matrix};

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn range(start: u64, len: u64) -> ConsecutiveRange {
        ConsecutiveRange::new(start, len).unwrap()
    }

    #[test]
    fn algorithm_worked_example() {
        // The four outcomes of the 6x8 binary-pair matrix.
        assert_eq!(
            decode_two_consecutive_bin(&bits("000000"), 8).unwrap(),
            SuperPositiveSet::Empty
        );
        assert_eq!(
            decode_two_consecutive_bin(&bits("000111"), 8).unwrap(),
            SuperPositiveSet::One(1)
        );
        assert_eq!(
            decode_two_consecutive_bin(&bits("001111"), 8).unwrap(),
            SuperPositiveSet::Two(1)
        );
        assert_eq!(
            decode_two_consecutive_bin(&bits("111111"), 8).unwrap(),
            SuperPositiveSet::Two(4)
        );
    }

    #[test]
    fn bin_decoder_never_pairs_small_sets() {
        // The both-halves-1 condition cannot fire with fewer than two
        // positives: exhaustive over every |P| <= 2 input, n <= 1024.
        for n in 2..=1024u64 {
            let m = binary_pair_matrix(n).unwrap();
            let empty = encode(&m, &ConsecutiveRange::EMPTY).unwrap();
            assert_eq!(
                decode_two_consecutive_bin(empty.bits(), n).unwrap(),
                SuperPositiveSet::Empty
            );
            for a in 1..=n {
                let y = encode(&m, &range(a, 1)).unwrap();
                assert_eq!(
                    decode_two_consecutive_bin(y.bits(), n).unwrap(),
                    SuperPositiveSet::One(a),
                    "n={n} a={a}"
                );
                if a < n {
                    let y = encode(&m, &range(a, 2)).unwrap();
                    assert_eq!(
                        decode_two_consecutive_bin(y.bits(), n).unwrap(),
                        SuperPositiveSet::Two(a),
                        "n={n} a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn bin_decoder_rejects_bad_input() {
        assert!(decode_two_consecutive_bin(&bits("0000"), 8).is_err()); // wrong length
        assert!(decode_two_consecutive_bin(&bits("00"), 1).is_err()); // kappa too small
                                                                      // n = 5 (width 3): a pair {5, 6} does not exist.
                                                                      // union of columns 5 and 6 at width 3 would be 10x ++ 011 patterns;
                                                                      // craft an outcome whose cleared value lands past kappa.
        let y = bits("101011"); // flip at position 2 -> value 100 -> a = 5, a+1 = 6 > 5
        assert!(decode_two_consecutive_bin(&y, 5).is_err());
    }

    #[test]
    fn gray_decoder_examples() {
        // kappa = 4: the printed 2x4 Gray matrix and 3x4 spacing matrix.
        // Super items {1, 2}: s = 00 v 01 = 01, l = 110.
        assert_eq!(
            decode_two_consecutive_gray(&bits("01"), &bits("110"), 4).unwrap(),
            SuperPositiveSet::Two(1)
        );
        // Super item {3}: s = 11, l = 001.
        assert_eq!(
            decode_two_consecutive_gray(&bits("11"), &bits("001"), 4).unwrap(),
            SuperPositiveSet::One(3)
        );
        assert_eq!(
            decode_two_consecutive_gray(&bits("00"), &bits("000"), 4).unwrap(),
            SuperPositiveSet::Empty
        );
    }

    #[test]
    fn gray_decoder_rejects_inconsistent_spacing() {
        // alpha = 2: both neighbor rows set.
        assert!(decode_two_consecutive_gray(&bits("01"), &bits("111"), 4).is_err());
        // l empty but s set.
        assert!(decode_two_consecutive_gray(&bits("01"), &bits("000"), 4).is_err());
        // own row unset.
        assert!(decode_two_consecutive_gray(&bits("01"), &bits("101"), 4).is_err());
        // phantom predecessor of super item 1.
        assert!(decode_two_consecutive_gray(&bits("00"), &bits("101"), 4).is_err());
        // phantom successor of super item kappa.
        assert!(decode_two_consecutive_gray(&bits("10"), &bits("011"), 4).is_err());
        // wrong lengths.
        assert!(decode_two_consecutive_gray(&bits("0"), &bits("000"), 4).is_err());
        assert!(decode_two_consecutive_gray(&bits("00"), &bits("00"), 4).is_err());
    }

    #[test]
    fn single_decoder_examples() {
        assert_eq!(decode_single(&bits("000"), 8).unwrap(), 1);
        assert_eq!(decode_single(&bits("011"), 8).unwrap(), 4);
        assert_eq!(decode_single(&bits("111"), 8).unwrap(), 8);
        assert!(decode_single(&bits("111"), 5).is_err()); // item 8 of 5
        assert!(decode_single(&bits("0111"), 8).is_err()); // wrong length
    }

    #[test]
    fn block_decoder_enumerated() {
        // All four offsets at d = 3 against the two half-identity designs.
        let left = half_block_matrix(3, BlockSide::Left).unwrap();
        let right = half_block_matrix(3, BlockSide::Right).unwrap();
        for start in 1..=4u64 {
            let p = range(start, 3);
            let y_left = encode(&left, &p).unwrap();
            assert_eq!(
                decode_block(y_left.bits(), 3, BlockSide::Left).unwrap(),
                start
            );
            let y_right = encode(&right, &p).unwrap();
            assert_eq!(
                decode_block(y_right.bits(), 3, BlockSide::Right).unwrap(),
                start + 2
            );
        }
        // Fixed spot values.
        assert_eq!(decode_block(&bits("011"), 3, BlockSide::Left).unwrap(), 2);
        assert_eq!(decode_block(&bits("000"), 3, BlockSide::Left).unwrap(), 4);
        assert_eq!(decode_block(&bits("100"), 3, BlockSide::Right).unwrap(), 4);
        // Non-run patterns are rejected.
        assert!(decode_block(&bits("010"), 3, BlockSide::Left).is_err());
        assert!(decode_block(&bits("101"), 3, BlockSide::Right).is_err());
        assert!(decode_block(&bits("0101"), 3, BlockSide::Left).is_err());
    }

    #[test]
    fn up_to_d_worked_cases() {
        let spec = SchemeSpec::new(SchemeKind::UpToDBinary, 16, Some(2)).unwrap();
        let y = encode_scheme(&spec, &range(5, 2)).unwrap();
        assert_eq!(decode_up_to_d(&y, 16, 2).unwrap(), range(5, 2));

        let y = encode_scheme(&spec, &ConsecutiveRange::EMPTY).unwrap();
        assert_eq!(decode_up_to_d(&y, 16, 2).unwrap(), ConsecutiveRange::EMPTY);

        let y = encode_scheme(&spec, &range(8, 1)).unwrap();
        assert_eq!(decode_up_to_d(&y, 16, 2).unwrap(), range(8, 1));
    }

    #[test]
    fn up_to_d_rejects_inconsistent_outcomes() {
        // Phase 1 empty but a phase-2 test fired.
        let y: OutcomeVector = "0000001000".parse().unwrap();
        assert!(decode_up_to_d(&y, 16, 2).is_err());
        // Phase 1 says super item 3 ({5, 6}) but phase 2 kept nothing.
        let y: OutcomeVector = "0101010000".parse().unwrap();
        assert!(decode_up_to_d(&y, 16, 2).is_err());
        // Survivors 5 and 8 are not consecutive (rows 1 and 4 fire while
        // phase 1 names super items 3 and 4, potentials 5..8).
        let y: OutcomeVector = "0111011001".parse().unwrap();
        assert!(decode_up_to_d(&y, 16, 2).is_err());
        // Wrong length.
        let y: OutcomeVector = "010101".parse().unwrap();
        assert!(decode_up_to_d(&y, 16, 2).is_err());
    }

    #[test]
    fn up_to_d_gray_worked_case() {
        let spec = SchemeSpec::new(SchemeKind::UpToDGray, 16, Some(5)).unwrap();
        let y = encode_scheme(&spec, &range(4, 3)).unwrap();
        assert_eq!(decode_up_to_d_gray(&y, 16, 5).unwrap(), range(4, 3));
        let y = encode_scheme(&spec, &ConsecutiveRange::EMPTY).unwrap();
        assert_eq!(
            decode_up_to_d_gray(&y, 16, 5).unwrap(),
            ConsecutiveRange::EMPTY
        );
    }

    #[test]
    fn exact_d_worked_cases() {
        let spec = SchemeSpec::new(SchemeKind::ExactDBinary, 16, Some(2)).unwrap();
        // Run inside one super item.
        let y = encode_scheme(&spec, &range(3, 2)).unwrap();
        assert_eq!(
            decode_exact_d(&y, 16, 2, ExactVariant::Binary).unwrap(),
            range(3, 2)
        );
        // Run across super items 2 and 3 (alpha even: right identity).
        let y = encode_scheme(&spec, &range(4, 2)).unwrap();
        assert_eq!(
            decode_exact_d(&y, 16, 2, ExactVariant::Binary).unwrap(),
            range(4, 2)
        );
        // Empty, under the relaxed encode.
        let y = encode_scheme(&spec, &ConsecutiveRange::EMPTY).unwrap();
        assert_eq!(
            decode_exact_d(&y, 16, 2, ExactVariant::Binary).unwrap(),
            ConsecutiveRange::EMPTY
        );
    }

    #[test]
    fn exact_d_exhaustive_both_variants() {
        for (n, d) in [(16u64, 2u64), (15, 4), (12, 3), (9, 2), (8, 8), (10, 4)] {
            for kind in [SchemeKind::ExactDGray, SchemeKind::ExactDBinary] {
                let spec = SchemeSpec::new(kind, n, Some(d)).unwrap();
                for start in 1..=(n - d + 1) {
                    let p = range(start, d);
                    let y = encode_scheme(&spec, &p).unwrap();
                    assert_eq!(
                        decode_scheme(&spec, &y).unwrap(),
                        p,
                        "{kind} n={n} d={d} start={start}"
                    );
                }
            }
        }
    }

    #[test]
    fn exact_d_rejects_inconsistent_outcomes() {
        // n=16, d=2: phase 1 says supers {2, 3} (alpha even) but y2 is
        // all-zero, which no exact run can produce.
        let spec = SchemeSpec::new(SchemeKind::ExactDBinary, 16, Some(2)).unwrap();
        let good = encode_scheme(&spec, &range(4, 2)).unwrap();
        let mut bad_bits = good.bits().clone();
        bad_bits.set(6, false);
        bad_bits.set(7, false);
        let bad = OutcomeVector::from_bits(bad_bits);
        assert!(decode_scheme(&spec, &bad).is_err());
    }

    #[test]
    fn scheme_dispatch_round_trips() {
        for (kind, n, d, p) in [
            (SchemeKind::SinglePositive, 8u64, None, range(4, 1)),
            (SchemeKind::UpToDBinary, 16, Some(2), range(5, 2)),
            (SchemeKind::UpToDGray, 16, Some(5), range(4, 3)),
            (SchemeKind::ExactDGray, 16, Some(4), range(7, 4)),
            (SchemeKind::ExactDBinary, 16, Some(4), range(7, 4)),
        ] {
            let spec = SchemeSpec::new(kind, n, d).unwrap();
            let y = encode_scheme(&spec, &p).unwrap();
            let (run, steps) = decode_scheme_counted(&spec, &y).unwrap();
            assert_eq!(run, p, "{kind}");
            assert!(
                steps > 0 && steps <= 3 * spec.test_count(),
                "{kind}: {steps}"
            );
        }
    }

    #[test]
    fn large_population_round_trips() {
        // n = 2^32, d = 100. The last super item is short (96 items), so the
        // tail starts cross it.
        let n = 1u64 << 32;
        let d = 100u64;
        let kappa = n.div_ceil(d);
        let boundary = (kappa - 1) * d; // last full-block edge
        for kind in SchemeKind::ALL {
            let bound = (kind != SchemeKind::SinglePositive).then_some(d);
            let spec = SchemeSpec::new(kind, n, bound).unwrap();
            let len = spec.d();
            let starts = [
                1,
                2,
                d,
                d + 1,
                boundary - d - 1,
                boundary - len + 1,
                boundary + 1,
                n - len + 1,
                n / 2,
                (n / 2) - d / 2,
            ];
            for start in starts.into_iter().filter(|s| s + len - 1 <= n) {
                let p = range(start, len);
                let y = encode_scheme(&spec, &p).unwrap();
                assert_eq!(decode_scheme(&spec, &y).unwrap(), p, "{kind} start={start}");
            }
        }
    }

    #[test]
    fn phase1_reports_exactly_the_hit_blocks() {
        // The super positive set equals the set of blocks intersecting P.
        use crate::encoder::SegmentLabel;
        for kind in [
            SchemeKind::UpToDBinary,
            SchemeKind::UpToDGray,
            SchemeKind::ExactDGray,
            SchemeKind::ExactDBinary,
        ] {
            for n in 4..=48u64 {
                for d in 2..=5u64 {
                    let Ok(spec) = SchemeSpec::new(kind, n, Some(d)) else {
                        continue;
                    };
                    if spec.kappa() < 2 {
                        continue;
                    }
                    let block = spec.block();
                    let lens: Vec<u64> = match kind {
                        SchemeKind::ExactDGray | SchemeKind::ExactDBinary => vec![d],
                        _ => (1..=d).collect(),
                    };
                    for len in lens {
                        for start in 1..=(n - len + 1) {
                            let p = range(start, len);
                            let y = encode_scheme(&spec, &p).unwrap();
                            let supers = match kind {
                                SchemeKind::UpToDBinary | SchemeKind::ExactDBinary => {
                                    let y1 = y.segment_bits(SegmentLabel::Y1).unwrap();
                                    decode_two_consecutive_bin(&y1, spec.kappa()).unwrap()
                                }
                                _ => {
                                    let s = y.segment_bits(SegmentLabel::S).unwrap();
                                    let l = y.segment_bits(SegmentLabel::L).unwrap();
                                    decode_two_consecutive_gray(&s, &l, spec.kappa()).unwrap()
                                }
                            };
                            let first = (start - 1) / block + 1;
                            let last = (p.end() - 1) / block + 1;
                            let expected: Vec<u64> = (first..=last).collect();
                            assert_eq!(supers.to_vec(), expected, "{kind} n={n} d={d} P={p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_single_block_schemes() {
        // n <= d: no phase 1 at all.
        let spec = SchemeSpec::new(SchemeKind::UpToDBinary, 3, Some(5)).unwrap();
        for (start, len) in [(0u64, 0u64), (1, 1), (2, 2), (1, 3)] {
            let p = ConsecutiveRange::new(start, len).unwrap();
            let y = encode_scheme(&spec, &p).unwrap();
            assert_eq!(decode_scheme(&spec, &y).unwrap(), p);
        }

        let spec = SchemeSpec::new(SchemeKind::ExactDGray, 4, Some(4)).unwrap();
        let y = encode_scheme(&spec, &range(1, 4)).unwrap();
        assert_eq!(decode_scheme(&spec, &y).unwrap(), range(1, 4));
        let y = encode_scheme(&spec, &ConsecutiveRange::EMPTY).unwrap();
        assert_eq!(decode_scheme(&spec, &y).unwrap(), ConsecutiveRange::EMPTY);
    }
}
