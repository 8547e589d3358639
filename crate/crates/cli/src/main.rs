//! Command-line front end: matrix generation, encode/decode, brute-force
//! verification, benchmarks and the test-count table.
//!
//! Exit codes: 0 on success, 1 on a decode or verification failure, 2 on a
//! usage error.

use std::collections::HashMap;
use std::fs;
use std::process::ExitCode;

use congt::{
    bench::{emit_csv, run_bench, BenchConfig},
    decode_scheme, encode_scheme, matrices, verify_identifiability, ConsecutiveRange, Error,
    OutcomeVector, SchemeKind, SchemeSpec,
};

const USAGE: &str = "\
congt - non-adaptive group testing with consecutive positives

USAGE:
    congt <command> [options]

COMMANDS:
    gen-matrix --scheme <kind> --n <int> [--d <int>] [--out <file>]
        Materialize a scheme's measurement matrix (small n only) as
        `t n` followed by t rows of 0/1 characters.

    encode --scheme <kind> --n <int> [--d <int>] --start <int> --len <int>
           [--annotate]
        Print the outcome vector of the given consecutive positive run.
        --len 0 encodes the empty run (--start is then ignored).
        --annotate prefixes the segment layout (label:offset:len,...).

    decode --scheme <kind> --n <int> [--d <int>] --outcome <bits>
        Recover the positive run; prints `start,len` or `empty`.

    verify --scheme <kind> --n <int> [--d <int>]
        Exhaustively check the scheme against brute force (n <= 4096).
        Exits 0 exactly when there are no violations.

    bench [--config <file>] [--csv <file>]
        Run the decode-timing grid and emit CSV (stdout by default).
        The config file holds key=value lines: schemes, n_values,
        d_values, trials, seed.

    table --n-list <a,b,..> --d-list <a,b,..> [--schemes <k1,k2,..>]
        Print scheme,n,d,tests for every valid grid cell.

SCHEME KINDS:
    single-positive | up-to-d-binary | up-to-d-gray | exact-d-gray |
    exact-d-binary

The positive bound --d is required for every scheme except single-positive.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    ExitCode::from(run(&args))
}

fn run(args: &[String]) -> u8 {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return 2;
    };
    let rest = &args[1..];
    match command.as_str() {
        "gen-matrix" => cmd_gen_matrix(rest),
        "encode" => cmd_encode(rest),
        "decode" => cmd_decode(rest),
        "verify" => cmd_verify(rest),
        "bench" => cmd_bench(rest),
        "table" => cmd_table(rest),
        "help" | "--help" | "-h" => {
            print!("{USAGE}");
            0
        }
        other => {
            eprintln!("unknown command {other:?}; try `congt help`");
            2
        }
    }
}

// --- option parsing ---

struct Opts {
    values: HashMap<&'static str, String>,
    flags: Vec<&'static str>,
}

impl Opts {
    fn parse(
        args: &[String],
        value_opts: &[&'static str],
        flag_opts: &[&'static str],
    ) -> Result<Opts, String> {
        let mut values = HashMap::new();
        let mut flags = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = args[i].as_str();
            if let Some(&name) = flag_opts.iter().find(|&&f| f == arg) {
                flags.push(name);
                i += 1;
            } else if let Some(&name) = value_opts.iter().find(|&&v| v == arg) {
                let value = args
                    .get(i + 1)
                    .ok_or_else(|| format!("{name} needs a value"))?;
                values.insert(name, value.clone());
                i += 2;
            } else {
                return Err(format!("unknown option {arg:?}"));
            }
        }
        Ok(Opts { values, flags })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    fn require(&self, name: &str) -> Result<&str, String> {
        self.get(name)
            .ok_or_else(|| format!("missing required option {name}"))
    }

    fn u64(&self, name: &str) -> Result<u64, String> {
        self.require(name)?
            .parse()
            .map_err(|_| format!("{name} must be a non-negative integer"))
    }

    fn u64_opt(&self, name: &str) -> Result<Option<u64>, String> {
        self.get(name)
            .map(|v| {
                v.parse()
                    .map_err(|_| format!("{name} must be a non-negative integer"))
            })
            .transpose()
    }

    fn has(&self, name: &str) -> bool {
        self.flags.contains(&name)
    }
}

fn scheme_spec(opts: &Opts) -> Result<SchemeSpec, String> {
    let kind: SchemeKind = opts
        .require("--scheme")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    let n = opts.u64("--n")?;
    let d = opts.u64_opt("--d")?;
    SchemeSpec::new(kind, n, d).map_err(|e| e.to_string())
}

fn usage_error(message: &str) -> u8 {
    eprintln!("{message}");
    2
}

fn parse_u64_list(value: &str, name: &str) -> Result<Vec<u64>, String> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| format!("{name} holds a bad integer {s:?}"))
        })
        .collect()
}

fn write_output(path: Option<&str>, content: &str) -> Result<(), String> {
    match path {
        Some(path) => fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

// --- commands ---

fn cmd_gen_matrix(args: &[String]) -> u8 {
    let opts = match Opts::parse(args, &["--scheme", "--n", "--d", "--out"], &[]) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let spec = match scheme_spec(&opts) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    match matrices::to_text(&spec.matrix()) {
        Ok(text) => match write_output(opts.get("--out"), &text) {
            Ok(()) => 0,
            Err(e) => usage_error(&e),
        },
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_encode(args: &[String]) -> u8 {
    let opts = match Opts::parse(
        args,
        &["--scheme", "--n", "--d", "--start", "--len"],
        &["--annotate"],
    ) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let result = (|| -> Result<String, String> {
        let spec = scheme_spec(&opts)?;
        let len = opts.u64("--len")?;
        let start = if len == 0 { 0 } else { opts.u64("--start")? };
        let range = ConsecutiveRange::new(start, len).map_err(|e| e.to_string())?;
        let y = encode_scheme(&spec, &range).map_err(|e| e.to_string())?;
        Ok(if opts.has("--annotate") {
            y.to_annotated_string()
        } else {
            y.to_string()
        })
    })();
    match result {
        Ok(text) => {
            println!("{text}");
            0
        }
        Err(e) => usage_error(&e),
    }
}

fn cmd_decode(args: &[String]) -> u8 {
    let opts = match Opts::parse(args, &["--scheme", "--n", "--d", "--outcome"], &[]) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let spec = match scheme_spec(&opts) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let outcome = match opts.require("--outcome") {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let parsed: Result<OutcomeVector, Error> = outcome.parse();
    let decoded = parsed.and_then(|y| decode_scheme(&spec, &y));
    match decoded {
        Ok(run) => {
            println!("{run}");
            0
        }
        Err(e @ Error::Decode(_)) => {
            eprintln!("{e}");
            1
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_verify(args: &[String]) -> u8 {
    let opts = match Opts::parse(args, &["--scheme", "--n", "--d"], &[]) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let spec = match scheme_spec(&opts) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    match verify_identifiability(&spec) {
        Ok(report) => {
            print!("{report}");
            if report.is_clean() {
                0
            } else {
                1
            }
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_bench(args: &[String]) -> u8 {
    let opts = match Opts::parse(args, &["--config", "--csv"], &[]) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let config = match opts.get("--config") {
        None => Ok(BenchConfig::default()),
        Some(path) => fs::read_to_string(path)
            .map_err(|e| format!("cannot read {path}: {e}"))
            .and_then(|text| BenchConfig::parse(&text).map_err(|e| e.to_string())),
    };
    let config = match config {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let records = match run_bench(&config) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mut csv = Vec::new();
    emit_csv(&records, &mut csv).expect("writing to memory cannot fail");
    let csv = String::from_utf8(csv).expect("csv is ascii");
    match opts.get("--csv") {
        Some(path) => match fs::write(path, &csv) {
            Ok(()) => 0,
            Err(e) => usage_error(&format!("cannot write {path}: {e}")),
        },
        None => {
            print!("{csv}");
            0
        }
    }
}

fn cmd_table(args: &[String]) -> u8 {
    let opts = match Opts::parse(args, &["--n-list", "--d-list", "--schemes"], &[]) {
        Ok(o) => o,
        Err(e) => return usage_error(&e),
    };
    let result = (|| -> Result<String, String> {
        let n_list = parse_u64_list(opts.require("--n-list")?, "--n-list")?;
        let d_list = parse_u64_list(opts.require("--d-list")?, "--d-list")?;
        let schemes: Vec<SchemeKind> = match opts.get("--schemes") {
            None => SchemeKind::ALL.to_vec(),
            Some(list) => list
                .split(',')
                .map(|s| s.trim().parse().map_err(|e: Error| e.to_string()))
                .collect::<Result<_, _>>()?,
        };
        let mut out = String::from("scheme,n,d,tests\n");
        let mut line = |s: &str| out.push_str(s);
        for &scheme in &schemes {
            for &n in &n_list {
                for &d in &d_list {
                    let bound = (scheme != SchemeKind::SinglePositive).then_some(d);
                    // Cells outside a scheme's domain are skipped.
                    if let Ok(spec) = SchemeSpec::new(scheme, n, bound) {
                        line(&format!("{scheme},{n},{d},{}\n", spec.test_count()));
                    }
                }
            }
        }
        Ok(out)
    })();
    match result {
        Ok(table) => {
            print!("{table}");
            0
        }
        Err(e) => usage_error(&e),
    }
}
