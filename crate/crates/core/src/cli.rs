//! The `golodlab` command line: JSON records in, JSON documents out.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::complex::{build_kn, KnVertex, NonFaceSequence, SimplicialComplex};
use crate::golod::{
    exhaustive_instances, par_map, random_instances, theorem_report, verify_kn_homotopy,
    InstanceFilter, RandomConfig, TheoremReport, VerifySummary,
};
use crate::linalg::Ring;
use crate::mask::{sort_lex, VertexMask};
use crate::taylor::{betti_from_taylor, is_minimal_taylor, private_vertices, UnitEntry};
use crate::zk::{hochster_table, moment_angle_cohomology, products_trivial, real_cubical_complex, real_hochster_dims};

pub const FORMAT_VERSION: u32 = 1;

/// Success.
pub const EXIT_OK: u8 = 0;
/// A verification check failed.
pub const EXIT_INCONSISTENT: u8 = 1;
/// Unreadable or invalid input.
pub const EXIT_INPUT: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "golodlab", version, about = "Golodness of Stanley-Reisner rings with minimal Taylor resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the minimal non-faces of a complex.
    Mnf(InputArg),
    /// Minimality of the Taylor resolution and the multigraded Betti numbers.
    Taylor {
        #[command(flatten)]
        input: InputArg,
        /// Also scan the differential for unit entries and compare verdicts.
        #[arg(long)]
        check_minimal: bool,
        #[arg(long, default_value = "Q")]
        ring: Ring,
    },
    /// Cohomology of the moment-angle complex and its product verdict.
    Zk {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "Q")]
        ring: Ring,
        /// Compare the real moment-angle complex against its additive prediction.
        #[arg(long)]
        with_real_oracle: bool,
    },
    /// Check the Golodness equivalences; one JSON report per line, then a summary.
    Verify(VerifyArgs),
    /// Build K(N) from a sequence record.
    Kn {
        #[command(flatten)]
        input: InputArg,
        /// Check the sphere-or-contractible dichotomy and the disjointified inclusion.
        #[arg(long)]
        verify_homotopy: bool,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// JSON input file; standard input when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArg,
    /// Every antichain on this many vertices (at most 5).
    #[arg(long, value_name = "M", conflicts_with_all = ["input", "random"])]
    exhaustive: Option<u8>,
    /// This many seeded random instances.
    #[arg(long, value_name = "N", conflicts_with = "input")]
    random: Option<usize>,
    #[arg(long, value_name = "M", default_value_t = 7, requires = "random")]
    max_m: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep only instances with a minimal Taylor resolution.
    #[arg(long)]
    minimal_only: bool,
    /// Drop instances equal to an earlier one up to a vertex permutation.
    #[arg(long, requires = "exhaustive")]
    dedup: bool,
}

/// A complex given by facets or by minimal non-faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub version: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimal_non_faces: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// A sequence `(N_1, .., N_r)` of subsets of `{1, .., W}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceRecord {
    pub version: u32,
    #[serde(rename = "W")]
    pub w: u32,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn bad(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn check_version(v: u32) -> Result<(), InputError> {
    if v != FORMAT_VERSION {
        return Err(bad(format!("unsupported version {v}, expected {FORMAT_VERSION}")));
    }
    Ok(())
}

fn parse_set(list: &[u32], m: u32, what: &str) -> Result<VertexMask, InputError> {
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad(format!("{what} {list:?} must be sorted ascending without repeats")));
    }
    if let Some(&v) = list.iter().find(|&&v| v == 0 || v > m) {
        return Err(bad(format!("{what} {list:?}: vertex {v} outside 1..={m}")));
    }
    Ok(VertexMask::try_from_vertices(list.iter().copied()).expect("range checked"))
}

fn mask_list(m: VertexMask) -> Vec<u32> {
    m.iter().map(u32::from).collect()
}

impl ComplexRecord {
    pub fn to_complex(&self) -> Result<SimplicialComplex, InputError> {
        check_version(self.version)?;
        if self.m > 64 {
            return Err(bad(format!("m = {} exceeds 64 vertices", self.m)));
        }
        let m = self.m as u8;
        let parse = |lists: &[Vec<u32>], what| {
            lists
                .iter()
                .map(|l| parse_set(l, self.m, what))
                .collect::<Result<Vec<_>, _>>()
        };
        let k = match (&self.facets, &self.minimal_non_faces) {
            (Some(f), None) => SimplicialComplex::from_facets(m, &parse(f, "facet")?),
            (None, Some(n)) => SimplicialComplex::from_minimal_nonfaces(m, &parse(n, "minimal non-face")?),
            _ => return Err(bad("exactly one of `facets` and `minimal_non_faces` is required")),
        };
        k.map_err(|e| bad(e.to_string()))
    }

    pub fn from_complex(k: &SimplicialComplex, name: Option<String>) -> Self {
        ComplexRecord {
            version: FORMAT_VERSION,
            m: k.vertex_count() as u32,
            facets: None,
            minimal_non_faces: Some(k.minimal_nonfaces().into_iter().map(mask_list).collect()),
            name,
        }
    }
}

impl SequenceRecord {
    pub fn to_sequence(&self) -> Result<NonFaceSequence, InputError> {
        check_version(self.version)?;
        if self.w > 64 {
            return Err(bad(format!("W = {} exceeds 64", self.w)));
        }
        let entries = self
            .entries
            .iter()
            .map(|l| parse_set(l, self.w, "entry"))
            .collect::<Result<Vec<_>, _>>()?;
        NonFaceSequence::new(VertexMask::range(self.w as u8), entries).map_err(|e| bad(e.to_string()))
    }
}

fn read_input(arg: &InputArg, stdin: &mut dyn Read) -> Result<String, InputError> {
    let mut text = String::new();
    match arg.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| bad(format!("{}: {e}", p.display())))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| bad(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// One or more whitespace-separated JSON documents.
fn parse_records<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>, InputError> {
    let out = serde_json::Deserializer::from_str(text)
        .into_iter::<T>()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| bad(format!("malformed input: {e}")))?;
    if out.is_empty() {
        return Err(bad("no input record"));
    }
    Ok(out)
}

fn parse_one<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    let mut v = parse_records(text)?;
    if v.len() != 1 {
        return Err(bad(format!("expected one record, got {}", v.len())));
    }
    Ok(v.remove(0))
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")
}

#[derive(Serialize)]
#[serde(untagged)]
enum TaylorWitness {
    Covered(usize),
    Private(Vec<u8>),
}

#[derive(Serialize)]
struct TaylorOutput {
    minimal: bool,
    witness: TaylorWitness,
    #[serde(skip_serializing_if = "Option::is_none")]
    scan_minimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit_entry: Option<Option<UnitEntry>>,
    betti: Option<crate::taylor::TorTable>,
}

#[derive(Serialize)]
struct VerifyLine<'a> {
    index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    #[serde(flatten)]
    report: &'a TheoremReport,
}

/// Outcome of a command: exit code, having written its output.
type Outcome = Result<u8, InputError>;

fn cmd_mnf(input: &InputArg, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let k = parse_one::<ComplexRecord>(&read_input(input, stdin)?)?.to_complex()?;
    let mnfs: Vec<Vec<u32>> = k.minimal_nonfaces().into_iter().map(mask_list).collect();
    emit(out, &mnfs).map_err(|e| bad(e.to_string()))?;
    Ok(EXIT_OK)
}

/// Largest Taylor complex for which Betti numbers are computed.
const TAYLOR_MAX_GENERATORS: usize = 24;

fn cmd_taylor(input: &InputArg, check: bool, ring: Ring, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    if !ring.is_field() {
        return Err(bad("--ring must be a field for Betti numbers"));
    }
    let k = parse_one::<ComplexRecord>(&read_input(input, stdin)?)?.to_complex()?;
    let mnfs = k.minimal_nonfaces();
    let (minimal, witness) = match private_vertices(&mnfs) {
        Ok(p) => (true, TaylorWitness::Private(p)),
        Err(i) => (false, TaylorWitness::Covered(i)),
    };
    let mut code = EXIT_OK;
    let (scan_minimal, unit_entry) = if check {
        let report = is_minimal_taylor(&mnfs);
        if !report.routes_agree() {
            code = EXIT_INCONSISTENT;
        }
        (Some(report.scan_minimal), Some(report.unit_entry))
    } else {
        (None, None)
    };
    let betti = (mnfs.len() <= TAYLOR_MAX_GENERATORS)
        .then(|| betti_from_taylor(&mnfs, ring).expect("field and antichain"));
    let output = TaylorOutput {
        minimal,
        witness,
        scan_minimal,
        unit_entry,
        betti,
    };
    emit(out, &output).map_err(|e| bad(e.to_string()))?;
    Ok(code)
}

fn cmd_zk(input: &InputArg, ring: Ring, real: bool, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let k = parse_one::<ComplexRecord>(&read_input(input, stdin)?)?.to_complex()?;
    let koszul = moment_angle_cohomology(&k, ring);
    let hochster = hochster_table(&k, ring);
    let products = products_trivial(&k, ring).expect("every supported ring");
    let mut agrees = koszul.dims == hochster.unreduced();
    let table = serde_json::to_value(&koszul).expect("serializable");
    let mut doc = json!({
        "ring": ring,
        "dims": table["dims"],
        "torsion": table["torsion"],
        "hochster_dims": hochster.unreduced(),
        "products": products,
    });
    if real {
        let cubical = real_cubical_complex(&k).map_err(|e| bad(e.to_string()))?;
        let field = if ring.is_field() { ring } else { Ring::Rationals };
        let computed: BTreeMap<i32, usize> = cubical
            .dims_over(field)
            .into_iter()
            .filter(|&(_, d)| d > 0)
            .collect();
        let predicted = real_hochster_dims(&k, field);
        agrees &= computed == predicted;
        doc["real_oracle"] = json!({
            "ring": field,
            "dims": computed,
            "predicted": predicted,
            "agrees": computed == predicted,
        });
    }
    doc["agrees"] = json!(agrees);
    emit(out, &doc).map_err(|e| bad(e.to_string()))?;
    Ok(if agrees { EXIT_OK } else { EXIT_INCONSISTENT })
}

fn cmd_verify(args: &VerifyArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let filter = if args.minimal_only {
        InstanceFilter::MinimalTaylor
    } else {
        InstanceFilter::All
    };
    let (complexes, names): (Vec<SimplicialComplex>, Vec<Option<String>>) = if let Some(m) = args.exhaustive {
        let instances = exhaustive_instances(m, filter, args.dedup).map_err(|e| bad(e.to_string()))?;
        instances.iter().map(|i| (i.complex(), None)).unzip()
    } else if let Some(n) = args.random {
        if args.max_m == 0 || args.max_m > 12 {
            return Err(bad("--max-m must be in 1..=12"));
        }
        let config = RandomConfig::new(args.max_m, filter);
        random_instances(n, config, args.seed)
            .iter()
            .map(|i| (i.complex(), None))
            .unzip()
    } else {
        let records: Vec<ComplexRecord> = parse_records(&read_input(&args.input, stdin)?)?;
        let mut pairs = Vec::new();
        for r in records {
            let k = r.to_complex()?;
            if k.vertex_count() > 12 {
                return Err(bad(format!("m = {} is too large to verify", k.vertex_count())));
            }
            if filter == InstanceFilter::All || private_vertices(&k.minimal_nonfaces()).is_ok() {
                pairs.push((k, r.name));
            }
        }
        pairs.into_iter().unzip()
    };
    let reports = par_map(&complexes, theorem_report);
    let io = |e: std::io::Error| bad(e.to_string());
    for (index, (report, name)) in reports.iter().zip(&names).enumerate() {
        let line = VerifyLine {
            index,
            name: name.as_deref(),
            report,
        };
        emit(out, &line).map_err(io)?;
    }
    let summary = VerifySummary::from_reports(&reports);
    emit(out, &json!({ "summary": summary })).map_err(io)?;
    Ok(if summary.inconsistent > 0 {
        EXIT_INCONSISTENT
    } else {
        EXIT_OK
    })
}

fn cmd_kn(input: &InputArg, verify: bool, stdin: &mut dyn Read, out: &mut dyn Write) -> Outcome {
    let seq = parse_one::<SequenceRecord>(&read_input(input, stdin)?)?.to_sequence()?;
    let kn = build_kn(&seq).map_err(|e| bad(e.to_string()))?;
    let mut mnfs = kn.augmented_nonfaces(&seq);
    sort_lex(&mut mnfs);
    let record = ComplexRecord {
        version: FORMAT_VERSION,
        m: kn.complex.vertex_count() as u32,
        facets: None,
        minimal_non_faces: Some(mnfs.into_iter().map(mask_list).collect()),
        name: None,
    };
    let labels: Vec<serde_json::Value> = kn
        .labels
        .iter()
        .map(|l| match l {
            KnVertex::Ground(w) => json!({ "ground": w }),
            KnVertex::Extra(i) => json!({ "extra": i }),
        })
        .collect();
    let mut doc = json!({ "complex": record, "labels": labels });
    let mut code = EXIT_OK;
    if verify {
        let report = verify_kn_homotopy(&seq).map_err(|e| bad(e.to_string()))?;
        if !report.passed {
            code = EXIT_INCONSISTENT;
        }
        doc["homotopy"] = serde_json::to_value(&report).expect("serializable");
    }
    emit(out, &doc).map_err(|e| bad(e.to_string()))?;
    Ok(code)
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Mnf(input) => cmd_mnf(input, stdin, out),
        Command::Taylor {
            input,
            check_minimal,
            ring,
        } => cmd_taylor(input, *check_minimal, *ring, stdin, out),
        Command::Zk {
            input,
            ring,
            with_real_oracle,
        } => cmd_zk(input, *ring, *with_real_oracle, stdin, out),
        Command::Verify(args) => cmd_verify(args, stdin, out),
        Command::Kn {
            input,
            verify_homotopy,
        } => cmd_kn(input, *verify_homotopy, stdin, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
