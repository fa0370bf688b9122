//! Batch command-line front end for the projective solver kernel.
//!
//! `homsolve solve` reads one JSON problem record per line from stdin and
//! writes one JSON result record per line to stdout, preserving order.
//! Malformed lines produce an error record (with the 1-based line number)
//! and processing continues; the exit status is 1 if any line was
//! malformed, 0 otherwise. `homsolve bench` runs the precision or
//! throughput experiments and writes their records to stdout.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use homsolve::bary::{bary_tetrahedron, bary_triangle};
use homsolve::geom::{
    join_points2, join_points3, line2, meet_lines2, meet_planes3, plane3, solve_nonhomogeneous,
    LinSystem,
};
use homsolve::homog::{point2, point3};
use homsolve::{ProjResult, Ring, Tolerance};
use num::rational::BigRational;
use num::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "homsolve", version, about = "Division-free projective geometry solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve geometry problems read as JSON lines from stdin.
    Solve {
        /// Scalar arithmetic used unless a record overrides it.
        #[arg(long, value_enum, default_value_t = ScalarMode::Float)]
        scalar: ScalarMode,
    },
    /// Run precision (--family) or throughput (--op) experiments.
    #[command(group(ArgGroup::new("target").required(true).args(["family", "op"])))]
    Bench {
        /// Near-degenerate case family for a precision run.
        #[arg(long)]
        family: Option<String>,
        /// Operation for a throughput run.
        #[arg(long)]
        op: Option<String>,
        /// Severity range `A..B` (inclusive) for precision runs.
        #[arg(long, conflicts_with = "op")]
        t: Option<String>,
        /// Seed for deterministic corpus generation.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Operations per timed repetition for throughput runs.
        #[arg(long, conflicts_with = "family", default_value_t = 1_000_000)]
        batch: usize,
        /// Timed repetitions (the minimum is reported).
        #[arg(long, conflicts_with = "family", default_value_t = 10)]
        reps: usize,
    },
}

/// Scalar arithmetic for a batch or a single record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ScalarMode {
    /// IEEE double precision; Euclidean output available.
    Float,
    /// 128-bit integers; division-free end to end, homogeneous output only.
    Int,
    /// Arbitrary-precision rationals; everything exact.
    Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemRecord {
    op: String,
    #[serde(default)]
    scalar_mode: Option<ScalarMode>,
    inputs: Vec<Value>,
}

#[derive(Serialize)]
struct ResultRecord {
    op: String,
    tag: &'static str,
    homogeneous: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    euclidean: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Value>>,
}

#[derive(Serialize)]
struct ErrorRecord {
    line: usize,
    error: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { scalar } => {
            let stdin = io::stdin();
            let stdout = io::stdout();
            match run_batch(stdin.lock(), &mut stdout.lock(), scalar) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("homsolve: i/o error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Bench { family, op, t, seed, batch, reps } => {
            match run_bench(family, op, t, seed, batch, reps) {
                Ok(records) => {
                    print!("{}", homsolve_bench::to_jsonl(&records));
                    ExitCode::SUCCESS
                }
                Err(msg) => {
                    // Bad experiment selectors are usage errors, like any
                    // other unparseable flag value.
                    eprintln!("homsolve: {msg}");
                    ExitCode::from(2)
                }
            }
        }
    }
}

fn run_bench(
    family: Option<String>,
    op: Option<String>,
    t: Option<String>,
    seed: u64,
    batch: usize,
    reps: usize,
) -> Result<Vec<homsolve_bench::Record>, String> {
    if let Some(name) = family {
        let family: homsolve_bench::Family = name.parse().map_err(|e| format!("{e}"))?;
        let range = match t {
            Some(spec) => parse_t_range(&spec)?,
            None => 1..=40,
        };
        homsolve_bench::run_precision(family, range, seed).map_err(|e| format!("{e}"))
    } else {
        let name = op.expect("clap guarantees exactly one of --family/--op");
        let op: homsolve_bench::ThroughputOp = name.parse().map_err(|e| format!("{e}"))?;
        homsolve_bench::run_throughput(op, batch, reps, seed).map_err(|e| format!("{e}"))
    }
}

/// Parses `A..B` (inclusive) or a single `T` as a severity range.
fn parse_t_range(spec: &str) -> Result<std::ops::RangeInclusive<u32>, String> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| format!("invalid severity `{s}` in --t (expected an integer)"))
    };
    let (lo, hi) = match spec.split_once("..") {
        Some((a, b)) => (parse_one(a)?, parse_one(b)?),
        None => {
            let t = parse_one(spec)?;
            (t, t)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("invalid --t range `{spec}` (expected 1 <= A <= B)"));
    }
    Ok(lo..=hi)
}

/// Processes one problem record per input line; returns `Ok(true)` when
/// every line parsed and evaluated cleanly.
fn run_batch<R: BufRead, W: Write>(
    input: R,
    out: &mut W,
    default_mode: ScalarMode,
) -> io::Result<bool> {
    let mut clean = true;
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let outcome = process_line(&line, default_mode);
        match outcome {
            Ok(record) => serde_json::to_writer(&mut *out, &record)?,
            Err(error) => {
                clean = false;
                serde_json::to_writer(&mut *out, &ErrorRecord { line: lineno, error })?;
            }
        }
        out.write_all(b"\n")?;
    }
    Ok(clean)
}

fn process_line(line: &str, default_mode: ScalarMode) -> Result<ResultRecord, String> {
    let record: ProblemRecord =
        serde_json::from_str(line).map_err(|e| format!("invalid record: {e}"))?;
    let mode = record.scalar_mode.unwrap_or(default_mode);
    match mode {
        ScalarMode::Float => eval_op::<f64>(&record.op, &record.inputs),
        ScalarMode::Int => eval_op::<i128>(&record.op, &record.inputs),
        ScalarMode::Rational => eval_op::<BigRational>(&record.op, &record.inputs),
    }
}

/// Scalar decoding/encoding for one CLI mode. `divide` returns `None` for
/// modes that honor the division-free contract end to end (integers).
trait ModeScalar: Ring {
    fn decode(v: &Value) -> Result<Self, String>;
    fn encode(&self) -> Value;
    fn divide(num: &Self, den: &Self) -> Option<Value>;
}

impl ModeScalar for f64 {
    fn decode(v: &Value) -> Result<Self, String> {
        v.as_f64().ok_or_else(|| format!("expected a number, got {v}"))
    }

    fn encode(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    fn divide(num: &Self, den: &Self) -> Option<Value> {
        Some(ModeScalar::encode(&(num / den)))
    }
}

impl ModeScalar for i128 {
    fn decode(v: &Value) -> Result<Self, String> {
        v.as_i64()
            .map(i128::from)
            .ok_or_else(|| format!("expected an integer, got {v}"))
    }

    // Products of several 64-bit inputs exceed JSON's interoperable number
    // range, so exact integers travel as decimal strings.
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn divide(_num: &Self, _den: &Self) -> Option<Value> {
        None
    }
}

impl ModeScalar for BigRational {
    fn decode(v: &Value) -> Result<Self, String> {
        let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            format!("expected a [numerator, denominator] pair, got {v}")
        })?;
        let n = pair[0].as_i64().ok_or_else(|| format!("expected an integer, got {}", pair[0]))?;
        let d = pair[1].as_i64().ok_or_else(|| format!("expected an integer, got {}", pair[1]))?;
        if d == 0 {
            return Err("zero denominator".to_string());
        }
        Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }

    fn divide(num: &Self, den: &Self) -> Option<Value> {
        Some(ModeScalar::encode(&(num / den)))
    }
}

/// How a result record is assembled from a homogeneous output tuple.
enum OutputKind {
    /// `[x_1.. : w]`; Euclidean coordinates on request.
    Point,
    /// Incidence coefficients; no Euclidean form.
    Form,
    /// Barycentric `[xi_1.. : xi_w]`; weights `-xi_i / xi_w` on request.
    Bary,
}

fn eval_op<S: ModeScalar>(op: &str, inputs: &[Value]) -> Result<ResultRecord, String> {
    let tol = Tolerance::default();
    let (result, kind, dims): (ProjResult<Vec<S>>, OutputKind, usize) = match op {
        "meet2" => {
            let [l1, l2] = decode_rows::<S, 3, 2>(op, inputs)?;
            let r = meet_lines2(&line2of(l1), &line2of(l2), &tol);
            (r.map(|p| p.components().to_vec()), OutputKind::Point, 3)
        }
        "join2" => {
            let [p1, p2] = decode_rows::<S, 3, 2>(op, inputs)?;
            let r = join_points2(&point2of(p1), &point2of(p2), &tol);
            (r.map(|l| l.components().to_vec()), OutputKind::Form, 3)
        }
        "meet3" => {
            let [p1, p2, p3] = decode_rows::<S, 4, 3>(op, inputs)?;
            let r = meet_planes3(&plane3of(p1), &plane3of(p2), &plane3of(p3), &tol);
            (r.map(|p| p.components().to_vec()), OutputKind::Point, 4)
        }
        "join3" => {
            let [p1, p2, p3] = decode_rows::<S, 4, 3>(op, inputs)?;
            let r = join_points3(&point3of(p1), &point3of(p2), &point3of(p3), &tol);
            (r.map(|l| l.components().to_vec()), OutputKind::Form, 4)
        }
        "bary2" => {
            let [v1, v2, v3, q] = decode_rows::<S, 3, 4>(op, inputs)?;
            let r = bary_triangle(&point2of(v1), &point2of(v2), &point2of(v3), &point2of(q), &tol);
            (r.map(|b| b.xi().to_vec()), OutputKind::Bary, 4)
        }
        "bary3" => {
            let [v1, v2, v3, v4, q] = decode_rows::<S, 4, 5>(op, inputs)?;
            let r = bary_tetrahedron(
                &point3of(v1),
                &point3of(v2),
                &point3of(v3),
                &point3of(v4),
                &point3of(q),
                &tol,
            );
            (r.map(|b| b.xi().to_vec()), OutputKind::Bary, 5)
        }
        "solve" => {
            let n = inputs.len();
            if !(2..=4).contains(&n) {
                return Err(format!("op solve expects 2..4 augmented rows, got {n}"));
            }
            let mut a = Vec::with_capacity(n);
            let mut b = Vec::with_capacity(n);
            for row in inputs {
                let mut r = decode_row::<S>(row)?;
                if r.len() != n + 1 {
                    return Err(format!(
                        "op solve with {n} rows expects rows of {} numbers",
                        n + 1
                    ));
                }
                b.push(r.pop().expect("row is nonempty"));
                a.push(r);
            }
            let sys = LinSystem::new(a, b).expect("shape checked above");
            let r = solve_nonhomogeneous(&sys, &tol).map_err(|e| format!("{e}"))?;
            (r, OutputKind::Point, n + 1)
        }
        other => return Err(format!("unknown op `{other}`")),
    };
    Ok(assemble(op, result, kind, dims))
}

fn decode_row<S: ModeScalar>(row: &Value) -> Result<Vec<S>, String> {
    row.as_array()
        .ok_or_else(|| format!("expected an array of numbers, got {row}"))?
        .iter()
        .map(S::decode)
        .collect()
}

fn decode_rows<S: ModeScalar, const M: usize, const K: usize>(
    op: &str,
    inputs: &[Value],
) -> Result<[[S; M]; K], String> {
    if inputs.len() != K {
        return Err(format!("op {op} expects {K} inputs, got {}", inputs.len()));
    }
    let mut rows = Vec::with_capacity(K);
    for input in inputs {
        let row = decode_row::<S>(input)?;
        let row: [S; M] = row
            .try_into()
            .map_err(|_| format!("op {op} expects inputs of {M} numbers"))?;
        rows.push(row);
    }
    Ok(rows.try_into().map_err(|_| ()).expect("length checked above"))
}

fn line2of<S>([a, b, c]: [S; 3]) -> homsolve::geom::Line2<S> {
    line2(a, b, c)
}

fn point2of<S>([x, y, w]: [S; 3]) -> homsolve::HomPoint2<S> {
    point2(x, y, w)
}

fn plane3of<S>([a, b, c, d]: [S; 4]) -> homsolve::geom::Plane3<S> {
    plane3(a, b, c, d)
}

fn point3of<S>([x, y, z, w]: [S; 4]) -> homsolve::HomPoint3<S> {
    point3(x, y, z, w)
}

fn assemble<S: ModeScalar>(
    op: &str,
    result: ProjResult<Vec<S>>,
    kind: OutputKind,
    dims: usize,
) -> ResultRecord {
    let (tag, hom) = match result {
        ProjResult::Regular(h) => ("regular", h),
        ProjResult::AtInfinity(h) => ("at_infinity", h),
        // The kernel's output for dependent inputs is the zero tuple.
        ProjResult::Degenerate => ("degenerate", vec![Ring::from_i64(0); dims]),
    };
    let last = hom.len() - 1;
    let euclidean = match (tag, &kind) {
        ("regular", OutputKind::Point) => {
            collect_divisions((0..last).map(|i| S::divide(&hom[i], &hom[last])))
        }
        _ => None,
    };
    let weights = match (tag, &kind) {
        ("regular", OutputKind::Bary) => {
            collect_divisions((0..last).map(|i| S::divide(&(-hom[i].clone()), &hom[last])))
        }
        _ => None,
    };
    ResultRecord {
        op: op.to_string(),
        tag,
        homogeneous: hom.iter().map(S::encode).collect(),
        euclidean,
        weights,
    }
}

/// Collects per-component quotients; `None` (division-free mode) drops the
/// whole optional field.
fn collect_divisions(parts: impl Iterator<Item = Option<Value>>) -> Option<Vec<Value>> {
    parts.collect()
}
