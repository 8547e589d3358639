//! Benchmark harness: per-scheme test counts and decode timings over a
//! seeded grid of populations and positive bounds.
//!
//! Only the decode call is timed, on a monotonic clock, after a few
//! untimed warm-up decodes per cell. Positive runs are sampled uniformly
//! over the valid starts (and lengths, for the up-to-d schemes) from a
//! seeded generator, so the record set is reproducible; the three timing
//! columns are the only nondeterministic output.

use std::io::{self, Write};
use std::time::Instant;

use crate::decoders::decode_scheme;
use crate::encoder::{encode_scheme, ConsecutiveRange};
use crate::error::{Error, Result};
use crate::scheme::{SchemeKind, SchemeSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub schemes: Vec<SchemeKind>,
    pub n_values: Vec<u64>,
    pub d_values: Vec<u64>,
    pub trials: u32,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            schemes: SchemeKind::ALL.to_vec(),
            n_values: vec![1 << 16, 1 << 20, 1 << 24, 1 << 28, 1 << 32],
            d_values: vec![5, 50, 100],
            trials: 100,
            seed: 1,
        }
    }
}

impl BenchConfig {
    /// Parse a flat `key=value` config. Keys: `schemes`, `n_values`,
    /// `d_values`, `trials`, `seed`; list values are comma-separated.
    /// Missing keys keep their defaults; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut config = BenchConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "schemes" => {
                    config.schemes = value
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_>>()?;
                }
                "n_values" => config.n_values = parse_u64_list(value)?,
                "d_values" => config.d_values = parse_u64_list(value)?,
                "trials" => {
                    config.trials = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad trials value {value:?}")))?;
                }
                "seed" => {
                    config.seed = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad seed value {value:?}")))?;
                }
                _ => return Err(Error::Parse(format!("unknown config key {key:?}"))),
            }
        }
        Ok(config)
    }
}

fn parse_u64_list(value: &str) -> Result<Vec<u64>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        })
        .collect()
}

/// One (scheme, n, d) cell of the grid.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub scheme: SchemeKind,
    pub n: u64,
    pub d: u64,
    pub tests: u64,
    pub mean_decode_ns: f64,
    pub min_decode_ns: u64,
    pub max_decode_ns: u64,
}

/// splitmix64: a small deterministic 64-bit generator.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound`.
    fn below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.next() as u128 * bound as u128) >> 64) as u64
    }
}

fn sample_range(spec: &SchemeSpec, rng: &mut SplitMix64) -> ConsecutiveRange {
    let len = match spec.kind() {
        SchemeKind::SinglePositive => 1,
        SchemeKind::UpToDBinary | SchemeKind::UpToDGray => 1 + rng.below(spec.d().min(spec.n())),
        SchemeKind::ExactDGray | SchemeKind::ExactDBinary => spec.d(),
    };
    let start = 1 + rng.below(spec.n() - len + 1);
    ConsecutiveRange::new(start, len).expect("sampled range is valid")
}

const WARMUP_DECODES: u32 = 3;

/// Run the grid. Records come back sorted by (scheme, n, d); `tests` is the
/// scheme's exact test count.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if config.trials == 0 {
        return Err(Error::Domain("bench needs trials >= 1".into()));
    }
    if config.schemes.is_empty() || config.n_values.is_empty() || config.d_values.is_empty() {
        return Err(Error::Domain("bench grid must be non-empty".into()));
    }

    let mut cells = Vec::new();
    for &scheme in &config.schemes {
        for &n in &config.n_values {
            for &d in &config.d_values {
                cells.push((scheme, n, d));
            }
        }
    }
    cells.sort();
    cells.dedup();

    // Validate the whole grid before timing anything.
    let specs: Vec<(SchemeSpec, u64)> = cells
        .iter()
        .map(|&(scheme, n, d)| {
            let bound = (scheme != SchemeKind::SinglePositive).then_some(d);
            SchemeSpec::new(scheme, n, bound).map(|s| (s, d))
        })
        .collect::<Result<_>>()?;

    let mut rng = SplitMix64::new(config.seed);
    let mut records = Vec::with_capacity(specs.len());
    for (spec, d) in specs {
        let mut min_ns = u64::MAX;
        let mut max_ns = 0u64;
        let mut total_ns = 0u128;

        // Warm-up, untimed.
        for _ in 0..WARMUP_DECODES {
            let p = sample_range(&spec, &mut rng);
            let y = encode_scheme(&spec, &p)?;
            let decoded = decode_scheme(&spec, &y)?;
            debug_assert_eq!(decoded, p);
        }

        for _ in 0..config.trials {
            let p = sample_range(&spec, &mut rng);
            let y = encode_scheme(&spec, &p)?;
            let t0 = Instant::now();
            let decoded = decode_scheme(&spec, &y)?;
            let ns = t0.elapsed().as_nanos() as u64;
            if decoded != p {
                return Err(Error::Decode(format!(
                    "bench round-trip mismatch for {spec}: {p} decoded as {decoded}"
                )));
            }
            min_ns = min_ns.min(ns);
            max_ns = max_ns.max(ns);
            total_ns += ns as u128;
        }

        records.push(BenchRecord {
            scheme: spec.kind(),
            n: spec.n(),
            d,
            tests: spec.test_count(),
            mean_decode_ns: total_ns as f64 / config.trials as f64,
            min_decode_ns: min_ns,
            max_decode_ns: max_ns,
        });
    }
    Ok(records)
}

/// CSV with the fixed header; rows keep the (scheme, n, d) order of
/// [`run_bench`].
pub fn emit_csv(records: &[BenchRecord], out: &mut impl Write) -> io::Result<()> {
    writeln!(
        out,
        "scheme,n,d,tests,mean_decode_ns,min_decode_ns,max_decode_ns"
    )?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{:.1},{},{}",
            r.scheme, r.n, r.d, r.tests, r.mean_decode_ns, r.min_decode_ns, r.max_decode_ns
        )?;
    }
    Ok(())
}
