//! Reproducible precision and throughput experiments for the projective
//! (division-free) solver paths.
//!
//! Three solver paths are compared on identical inputs:
//!
//! * `projective` - the cross-product kernel; divisions happen once, at the
//!   very end, when the homogeneous result is converted to Euclidean form.
//! * `cramer` - determinant ratios; one division per output component.
//! * `elimination` - Gaussian elimination with partial pivoting; divisions
//!   on every elimination step.
//!
//! Precision experiments run the float paths on near-degenerate instances
//! whose inputs are exactly representable (integers plus dyadic `2^-t`
//! perturbations) and whose ground truth is kept in exact rational
//! arithmetic, so every reported error is itself exact. Throughput
//! experiments time the paths over a pregenerated corpus with
//! minimum-over-repetitions aggregation.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

use std::fmt;
use std::hint::black_box;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use homsolve::bary::bary_triangle;
use homsolve::geom::{
    line2, meet_lines2, meet_planes3, plane3, solve_nonhomogeneous, LinSystem,
};
use homsolve::homog::point2;
use homsolve::oracle::{cramer_solve, gauss_solve};
use homsolve::scalar::rational_to_f64;
use homsolve::{ProjResult, Ring, Tolerance};
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Instances generated per severity step by [`run_precision`].
pub const SAMPLES_PER_T: usize = 64;

/// Distinct instances in a throughput corpus; the timed loop cycles through
/// them until `batch` operations have been performed.
pub const CORPUS_SIZE: usize = 4096;

/// Errors from parsing experiment selectors or validating parameters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    /// The named case family does not exist.
    #[error("unknown case family `{0}` (expected near-parallel-lines, near-coplanar-planes, or sliver-triangle)")]
    UnknownFamily(String),
    /// The named throughput operation does not exist.
    #[error("unknown throughput op `{0}` (expected meet2, meet3, or solve3)")]
    UnknownOp(String),
    /// Severity must be at least 1.
    #[error("severity t must be >= 1")]
    SeverityOutOfRange,
    /// Batch size must be at least 1.
    #[error("batch size must be >= 1")]
    EmptyBatch,
}

/// A family of near-degenerate problem instances whose conditioning is
/// controlled by the severity parameter `t` (degeneracy scale `2^-t`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Two lines whose normals differ by an exact multiple of `2^-t`.
    NearParallelLines,
    /// Three planes, the third a perturbation of the span of the first two
    /// by an exact multiple of `2^-t`.
    NearCoplanarPlanes,
    /// A triangle with one vertex displaced `2^-t` off the opposite edge's
    /// line, queried for barycentric weights.
    SliverTriangle,
}

impl Family {
    /// All families, in the order reports enumerate them.
    pub const ALL: [Family; 3] = [
        Family::NearParallelLines,
        Family::NearCoplanarPlanes,
        Family::SliverTriangle,
    ];

    fn name(self) -> &'static str {
        match self {
            Family::NearParallelLines => "near-parallel-lines",
            Family::NearCoplanarPlanes => "near-coplanar-planes",
            Family::SliverTriangle => "sliver-triangle",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "near-parallel-lines" => Ok(Family::NearParallelLines),
            "near-coplanar-planes" => Ok(Family::NearCoplanarPlanes),
            "sliver-triangle" => Ok(Family::SliverTriangle),
            other => Err(BenchError::UnknownFamily(other.to_string())),
        }
    }
}

/// An operation measured by [`run_throughput`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThroughputOp {
    /// Intersection of two lines in the plane.
    Meet2,
    /// Intersection of three planes in space.
    Meet3,
    /// A dense 3x3 linear solve.
    Solve3,
}

impl ThroughputOp {
    fn name(self) -> &'static str {
        match self {
            ThroughputOp::Meet2 => "meet2",
            ThroughputOp::Meet3 => "meet3",
            ThroughputOp::Solve3 => "solve3",
        }
    }

    fn system_size(self) -> usize {
        match self {
            ThroughputOp::Meet2 => 2,
            ThroughputOp::Meet3 | ThroughputOp::Solve3 => 3,
        }
    }
}

impl fmt::Display for ThroughputOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ThroughputOp {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "meet2" => Ok(ThroughputOp::Meet2),
            "meet3" => Ok(ThroughputOp::Meet3),
            "solve3" => Ok(ThroughputOp::Solve3),
            other => Err(BenchError::UnknownOp(other.to_string())),
        }
    }
}

/// The solver path a record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Path {
    /// Cross-product kernel, single deferred division.
    Projective,
    /// Determinant ratios, one division per component.
    Cramer,
    /// Gaussian elimination, division on every step.
    Elimination,
}

impl Path {
    const ALL: [Path; 3] = [Path::Projective, Path::Cramer, Path::Elimination];

    fn name(self) -> &'static str {
        match self {
            Path::Projective => "projective",
            Path::Cramer => "cramer",
            Path::Elimination => "elimination",
        }
    }
}

/// One report line: either precision statistics (with `ns_per_op` null) or
/// a throughput measurement (with the error fields null). Field names and
/// presence are fixed so downstream tooling can rely on the shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    /// Case family (precision) or operation name (throughput).
    pub family: String,
    /// Solver path the numbers describe.
    pub path: String,
    /// Severity step, present for precision records only.
    pub t: Option<u32>,
    /// Instances measured (precision) or batch size (throughput).
    pub samples: usize,
    /// Largest relative error against the exact rational ground truth.
    pub max_rel_err: Option<f64>,
    /// Median relative error against the exact rational ground truth.
    pub median_rel_err: Option<f64>,
    /// Wall-clock nanoseconds per operation, minimum over repetitions.
    pub ns_per_op: Option<f64>,
}

/// Serializes records as line-delimited JSON, one record per line.
pub fn to_jsonl(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serialization cannot fail"));
        out.push('\n');
    }
    out
}

/// One generated problem: an `n x n` float system `A x = b` whose inputs
/// are exactly representable, together with the exact rational solution.
///
/// For the line and plane families the rows of `[A | b]` are the incidence
/// coefficients (so `x` is the intersection point); for the triangle family
/// the columns of `A` are the homogeneous vertices, `b` is the query point,
/// and `x` is the barycentric weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    /// Coefficient matrix, row-major.
    pub a: Vec<Vec<f64>>,
    /// Right-hand side.
    pub b: Vec<f64>,
    /// Exact solution of `A x = b`.
    pub truth: Vec<BigRational>,
}

fn rat(v: f64) -> BigRational {
    Ring::to_rational(&v)
}

/// Exact rational solution of the instance's float system.
fn exact_solution(a: &[Vec<f64>], b: &[f64]) -> Vec<BigRational> {
    let ar: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
    let br: Vec<BigRational> = b.iter().map(|&v| rat(v)).collect();
    let sys = LinSystem::new(ar, br).expect("generator produced a square system");
    cramer_solve(&sys, &Tolerance::default())
        .expect("generator guarantees a nonsingular system")
}

/// Deterministic near-degenerate instances with exact rational ground
/// truth. The degeneracy scale is `2^-t`; all inputs are exactly
/// representable in `f64` (small integers plus dyadic perturbations), so
/// the float paths are measured on precisely the problem that the rational
/// ground truth solves.
pub fn gen_near_degenerate(
    family: Family,
    t: u32,
    seed: u64,
    count: usize,
) -> Result<Vec<Instance>, BenchError> {
    if t == 0 {
        return Err(BenchError::SeverityOutOfRange);
    }
    let delta = (-(t as f64)).exp2();
    // Derive the stream from (family, t, seed) so each configuration is an
    // independent, reproducible corpus.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((t as u64) << 8) ^ ((family as u64) << 40));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(inst) = gen_one(family, delta, &mut rng) {
            out.push(inst);
        }
    }
    Ok(out)
}

fn gen_one(family: Family, delta: f64, rng: &mut ChaCha8Rng) -> Option<Instance> {
    // Small integer draws keep every product in the solver paths within the
    // 53-bit significand (see the per-family comments), so the only float
    // rounding the experiment can observe comes from divisions.
    let mut int = |lo: i32, hi: i32| rng.gen_range(lo..=hi) as f64;
    match family {
        Family::NearParallelLines => {
            // Normals (a1, b1) and (a1 + p*2^-t, b1 + q*2^-t); determinant
            // (a1*q - b1*p) * 2^-t must not vanish.
            let (a1, b1) = (int(-16, 16), int(-16, 16));
            let (p, q) = (int(-8, 8), int(-8, 8));
            if a1 * q - b1 * p == 0.0 {
                return None;
            }
            let (c1, c2) = (int(-16, 16), int(-16, 16));
            let a = vec![vec![a1, b1], vec![a1 + p * delta, b1 + q * delta]];
            let b = vec![-c1, -c2];
            let truth = exact_solution(&a, &b);
            Some(Instance { a, b, truth })
        }
        Family::NearCoplanarPlanes => {
            // Third normal = n1 + n2 + 2^-t * u; the determinant equals
            // 2^-t * det(n1, n2, u), kept nonzero by the rational check.
            let n1: Vec<f64> = (0..3).map(|_| int(-8, 8)).collect();
            let n2: Vec<f64> = (0..3).map(|_| int(-8, 8)).collect();
            let u: Vec<f64> = (0..3).map(|_| int(-8, 8)).collect();
            let n3: Vec<f64> = (0..3).map(|i| n1[i] + n2[i] + u[i] * delta).collect();
            let d: Vec<f64> = (0..3).map(|_| int(-16, 16)).collect();
            let a = vec![n1, n2, n3];
            let b = vec![-d[0], -d[1], -d[2]];
            if exact_det3(&a) == Ring::from_i64(0) {
                return None;
            }
            let truth = exact_solution(&a, &b);
            Some(Instance { a, b, truth })
        }
        Family::SliverTriangle => {
            // v3 sits on the line through v1 along g, displaced 2^-t along
            // the perpendicular; twice the signed area is 2^-t * |g|^2.
            let (e1, e2) = (int(-16, 16), int(-16, 16));
            let (g1, g2) = (int(-8, 8), int(-8, 8));
            if g1 == 0.0 && g2 == 0.0 {
                return None;
            }
            let r = int(1, 4);
            let v1 = [e1, e2];
            let v2 = [e1 + g1, e2 + g2];
            let v3 = [e1 + r * g1 - g2 * delta, e2 + r * g2 + g1 * delta];
            let q = [e1 + int(-8, 8), e2 + int(-8, 8)];
            let a = vec![
                vec![v1[0], v2[0], v3[0]],
                vec![v1[1], v2[1], v3[1]],
                vec![1.0, 1.0, 1.0],
            ];
            let b = vec![q[0], q[1], 1.0];
            let truth = exact_solution(&a, &b);
            Some(Instance { a, b, truth })
        }
    }
}

fn exact_det3(a: &[Vec<f64>]) -> BigRational {
    let m = |i: usize, j: usize| rat(a[i][j]);
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Runs one float path on an instance, returning the Euclidean result.
///
/// The projective path goes through the dedicated geometric operation for
/// the family (meet of lines, meet of planes, barycentric weights) and
/// divides only when converting the homogeneous result. Classification uses
/// an exact-zero tolerance: the generators guarantee nonzero determinants,
/// and the experiment measures arithmetic error, not tag thresholds.
fn run_path(family: Family, path: Path, inst: &Instance) -> Vec<f64> {
    let tol = Tolerance::new(0.0);
    match path {
        Path::Projective => match family {
            Family::NearParallelLines => {
                let l1 = line2(inst.a[0][0], inst.a[0][1], -inst.b[0]);
                let l2 = line2(inst.a[1][0], inst.a[1][1], -inst.b[1]);
                match meet_lines2(&l1, &l2, &tol) {
                    ProjResult::Regular(p) => {
                        p.to_euclidean(&tol).expect("regular point has nonzero w").coords.to_vec()
                    }
                    other => panic!("near-parallel instance classified {:?}", other.tag()),
                }
            }
            Family::NearCoplanarPlanes => {
                let pl: Vec<_> = (0..3)
                    .map(|i| plane3(inst.a[i][0], inst.a[i][1], inst.a[i][2], -inst.b[i]))
                    .collect();
                match meet_planes3(&pl[0], &pl[1], &pl[2], &tol) {
                    ProjResult::Regular(p) => {
                        p.to_euclidean(&tol).expect("regular point has nonzero w").coords.to_vec()
                    }
                    other => panic!("near-coplanar instance classified {:?}", other.tag()),
                }
            }
            Family::SliverTriangle => {
                let v: Vec<_> =
                    (0..3).map(|j| point2(inst.a[0][j], inst.a[1][j], inst.a[2][j])).collect();
                let q = point2(inst.b[0], inst.b[1], inst.b[2]);
                match bary_triangle(&v[0], &v[1], &v[2], &q, &tol) {
                    ProjResult::Regular(bary) => bary
                        .to_weights(&tol)
                        .expect("nonzero area gives finite weights")
                        .lambda()
                        .to_vec(),
                    other => panic!("sliver instance classified {:?}", other.tag()),
                }
            }
        },
        Path::Cramer | Path::Elimination => {
            let sys = LinSystem::new(inst.a.clone(), inst.b.clone())
                .expect("generator produced a square system");
            let solved = if path == Path::Cramer {
                cramer_solve(&sys, &tol)
            } else {
                gauss_solve(&sys, &tol)
            };
            solved.expect("generator guarantees a nonsingular system")
        }
    }
}

/// Exact relative error of a float result against the rational truth:
/// `max_i |approx_i - truth_i| / max_i |truth_i|`, evaluated in rational
/// arithmetic and rounded once to `f64` for reporting.
fn relative_error(approx: &[f64], truth: &[BigRational]) -> f64 {
    let zero: BigRational = Ring::from_i64(0);
    let mut num = zero.clone();
    let mut den = zero.clone();
    for (a, t) in approx.iter().zip(truth) {
        let diff = Ring::abs(&(rat(*a) - t.clone()));
        let mag = Ring::abs(t);
        if diff > num {
            num = diff;
        }
        if mag > den {
            den = mag;
        }
    }
    if den == zero {
        // Zero truth vector cannot occur for these families; guard anyway.
        return if num == zero { 0.0 } else { f64::INFINITY };
    }
    rational_to_f64(&(num / den))
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Precision experiment: for each severity in `t_range` and each solver
/// path, measures exact relative error over [`SAMPLES_PER_T`] instances and
/// emits one record per (family, path, t). Deterministic for a fixed seed;
/// `ns_per_op` is null on every record.
pub fn run_precision(
    family: Family,
    t_range: RangeInclusive<u32>,
    seed: u64,
) -> Result<Vec<Record>, BenchError> {
    let mut records = Vec::new();
    for t in t_range {
        let corpus = gen_near_degenerate(family, t, seed, SAMPLES_PER_T)?;
        for path in Path::ALL {
            let mut errs: Vec<f64> = corpus
                .iter()
                .map(|inst| relative_error(&run_path(family, path, inst), &inst.truth))
                .collect();
            errs.sort_by(|a, b| a.partial_cmp(b).expect("errors are finite"));
            records.push(Record {
                family: family.to_string(),
                path: path.name().to_string(),
                t: Some(t),
                samples: errs.len(),
                max_rel_err: Some(*errs.last().expect("at least one sample")),
                median_rel_err: Some(median(&errs)),
                ns_per_op: None,
            });
        }
    }
    Ok(records)
}

/// A pregenerated throughput corpus: well-separated integer systems for
/// `op`, plus the same systems in the typed form the projective path
/// consumes.
struct ThroughputCorpus {
    systems: Vec<LinSystem<f64>>,
}

fn gen_throughput_corpus(op: ThroughputOp, seed: u64) -> ThroughputCorpus {
    let n = op.system_size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7468_7270); // distinct stream per purpose
    let tol = Tolerance::default();
    let mut systems = Vec::with_capacity(CORPUS_SIZE);
    while systems.len() < CORPUS_SIZE {
        let a: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-99i32..=99) as f64).collect())
            .collect();
        let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-99i32..=99) as f64).collect();
        let sys = LinSystem::new(a, b).expect("square by construction");
        if cramer_solve(&sys, &tol).is_ok() {
            systems.push(sys);
        }
    }
    ThroughputCorpus { systems }
}

fn time_path(op: ThroughputOp, path: Path, corpus: &ThroughputCorpus, batch: usize) -> f64 {
    let tol = Tolerance::default();
    let start = Instant::now();
    let mut sink = 0.0f64;
    match (op, path) {
        (ThroughputOp::Meet2, Path::Projective) => {
            for i in 0..batch {
                let sys = &corpus.systems[i % CORPUS_SIZE];
                let l1 = line2(*sys.a(0, 0), *sys.a(0, 1), -*sys.b(0));
                let l2 = line2(*sys.a(1, 0), *sys.a(1, 1), -*sys.b(1));
                if let ProjResult::Regular(p) = black_box(meet_lines2(&l1, &l2, &tol)) {
                    sink += p.components()[0];
                }
            }
        }
        (ThroughputOp::Meet3, Path::Projective) => {
            for i in 0..batch {
                let sys = &corpus.systems[i % CORPUS_SIZE];
                let p1 = plane3(*sys.a(0, 0), *sys.a(0, 1), *sys.a(0, 2), -*sys.b(0));
                let p2 = plane3(*sys.a(1, 0), *sys.a(1, 1), *sys.a(1, 2), -*sys.b(1));
                let p3 = plane3(*sys.a(2, 0), *sys.a(2, 1), *sys.a(2, 2), -*sys.b(2));
                if let ProjResult::Regular(p) = black_box(meet_planes3(&p1, &p2, &p3, &tol)) {
                    sink += p.components()[0];
                }
            }
        }
        (ThroughputOp::Solve3, Path::Projective) => {
            for i in 0..batch {
                let sys = &corpus.systems[i % CORPUS_SIZE];
                if let Ok(ProjResult::Regular(h)) = black_box(solve_nonhomogeneous(sys, &tol)) {
                    sink += h[0];
                }
            }
        }
        (_, Path::Cramer) => {
            for i in 0..batch {
                let sys = &corpus.systems[i % CORPUS_SIZE];
                if let Ok(x) = black_box(cramer_solve(sys, &tol)) {
                    sink += x[0];
                }
            }
        }
        (_, Path::Elimination) => {
            for i in 0..batch {
                let sys = &corpus.systems[i % CORPUS_SIZE];
                if let Ok(x) = black_box(gauss_solve(sys, &tol)) {
                    sink += x[0];
                }
            }
        }
    }
    black_box(sink);
    start.elapsed().as_nanos() as f64 / batch as f64
}

/// Throughput experiment: times each solver path over the identical
/// pregenerated corpus, `batch` operations per repetition, reporting the
/// minimum ns/op across `repetitions` runs. Emits one record per path; the
/// error fields are null.
pub fn run_throughput(
    op: ThroughputOp,
    batch: usize,
    repetitions: usize,
    seed: u64,
) -> Result<Vec<Record>, BenchError> {
    if batch == 0 {
        return Err(BenchError::EmptyBatch);
    }
    let corpus = gen_throughput_corpus(op, seed);
    let reps = repetitions.max(1);
    let mut records = Vec::new();
    for path in Path::ALL {
        let mut best = f64::INFINITY;
        for _ in 0..reps {
            best = best.min(time_path(op, path, &corpus, batch));
        }
        records.push(Record {
            family: op.to_string(),
            path: path.name().to_string(),
            t: None,
            samples: batch,
            max_rel_err: None,
            median_rel_err: None,
            ns_per_op: Some(best),
        });
    }
    Ok(records)
}
