//! Join/meet operations and projectivized solvers for small systems.
//!
//! All six operations funnel into the extended cross products of
//! [`crate::cross`]: joining points, meeting lines or planes, and solving
//! `A x = b` are the same computation applied to different rows - duality
//! means one kernel serves both directions. No operation here divides;
//! outputs are homogeneous elements plus a classification tag, and callers
//! choose if and when to convert to Euclidean values.
//!
//! Solving a nonhomogeneous system `A x = b` is projectivized by
//! augmenting each row `i` as `[a_i1, ..., a_in, -b_i]` and taking the
//! extended cross product of the `n` augmented rows: the result
//! `[x_1, ..., x_n : w]` satisfies `A (x/w) = b` whenever `w != 0`. The
//! sign of the augmentation matters and is pinned by the residual tests.

use crate::cross::{cross3, cross4, cross5};
use crate::homog::{
    classify_components, FormKind, GeomKind, HomCoords, HomPoint2, HomPoint3, Kind, ProjResult,
    ProjTag,
};
use crate::scalar::{Ring, Tolerance};

/// A 2D line as form coefficients `[a, b : c]` of `a*x + b*y + c*w = 0`.
pub type Line2<S> = HomCoords<S, 3, FormKind>;

/// A 3D plane as form coefficients `[a, b, c : d]` of
/// `a*x + b*y + c*z + d*w = 0`.
pub type Plane3<S> = HomCoords<S, 4, FormKind>;

/// Builds a 2D line from its coefficients.
pub fn line2<S>(a: S, b: S, c: S) -> Line2<S> {
    HomCoords::new([a, b, c])
}

/// Builds a 3D plane from its coefficients.
pub fn plane3<S>(a: S, b: S, c: S, d: S) -> Plane3<S> {
    HomCoords::new([a, b, c, d])
}

/// Errors from the dynamically sized solver entry points.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    /// Only 2x2, 3x3, and 4x4 systems map onto the cross-product kernels.
    #[error("unsupported system dimension n = {n} (supported: 2, 3, 4)")]
    UnsupportedDimension {
        /// The offending dimension.
        n: usize,
    },
    /// Rows of `A` and `b` must agree in length.
    #[error("inconsistent matrix/vector dimensions")]
    InconsistentDimensions,
}

/// A square linear system `A x = b` with runtime dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct LinSystem<S> {
    n: usize,
    a: Vec<S>, // row-major n x n
    b: Vec<S>,
}

impl<S: Ring> LinSystem<S> {
    /// Builds a system from nested rows; every row and `b` must have
    /// length `a.len()`.
    pub fn new(a: Vec<Vec<S>>, b: Vec<S>) -> Result<Self, GeomError> {
        let n = a.len();
        if n == 0 || b.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(GeomError::InconsistentDimensions);
        }
        Ok(LinSystem { n, a: a.into_iter().flatten().collect(), b })
    }

    /// Builds a system from fixed-size arrays (infallible shape).
    pub fn from_arrays<const N: usize>(a: [[S; N]; N], b: [S; N]) -> Self {
        LinSystem {
            n: N,
            a: a.into_iter().flatten().collect(),
            b: b.into_iter().collect(),
        }
    }

    /// System dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient `A[i][j]`.
    pub fn a(&self, i: usize, j: usize) -> &S {
        &self.a[i * self.n + j]
    }

    /// Right-hand side component `b[i]`.
    pub fn b(&self, i: usize) -> &S {
        &self.b[i]
    }

    /// Row `i` augmented as `[a_i1, ..., a_in, -b_i]`.
    fn augmented_row(&self, i: usize) -> Vec<S> {
        let mut row: Vec<S> = (0..self.n).map(|j| self.a(i, j).clone()).collect();
        row.push(-self.b(i).clone());
        row
    }
}

/// Classifies raw components and renormalizes regular float output.
fn finish<S: Ring, const M: usize, K: Kind>(
    mut c: [S; M],
    tol: &Tolerance,
) -> ProjResult<HomCoords<S, M, K>> {
    match classify_components(&c, K::KIND, tol) {
        ProjTag::Degenerate => ProjResult::Degenerate,
        ProjTag::AtInfinity => ProjResult::AtInfinity(HomCoords::new(c)),
        ProjTag::Regular => {
            S::renormalize(&mut c);
            ProjResult::Regular(HomCoords::new(c))
        }
    }
}

/// Same as [`finish`] for dynamically sized output.
fn finish_vec<S: Ring>(mut c: Vec<S>, kind: GeomKind, tol: &Tolerance) -> ProjResult<Vec<S>> {
    match classify_components(&c, kind, tol) {
        ProjTag::Degenerate => ProjResult::Degenerate,
        ProjTag::AtInfinity => ProjResult::AtInfinity(c),
        ProjTag::Regular => {
            S::renormalize(&mut c);
            ProjResult::Regular(c)
        }
    }
}

/// The line through two points (their cross product). `Regular` is an
/// ordinary line, `AtInfinity` the ideal line (both points were
/// directions), `Degenerate` means the points were projectively equal.
pub fn join_points2<S: Ring>(
    x1: &HomPoint2<S>,
    x2: &HomPoint2<S>,
    tol: &Tolerance,
) -> ProjResult<Line2<S>> {
    finish(cross3(x1.components(), x2.components()), tol)
}

/// The intersection of two lines (their cross product). `Regular` is a
/// finite point, `AtInfinity` the shared direction of parallel distinct
/// lines, `Degenerate` means the lines coincide.
pub fn meet_lines2<S: Ring>(
    p1: &Line2<S>,
    p2: &Line2<S>,
    tol: &Tolerance,
) -> ProjResult<HomPoint2<S>> {
    finish(cross3(p1.components(), p2.components()), tol)
}

/// The plane through three points (their ternary cross product).
/// `Degenerate` means the points are collinear (or coincide).
pub fn join_points3<S: Ring>(
    x1: &HomPoint3<S>,
    x2: &HomPoint3<S>,
    x3: &HomPoint3<S>,
    tol: &Tolerance,
) -> ProjResult<Plane3<S>> {
    finish(cross4(x1.components(), x2.components(), x3.components()), tol)
}

/// The common point of three planes (their ternary cross product).
/// `AtInfinity` means the planes share only a direction (some pair is
/// parallel, or they form a prism); `Degenerate` means they share a line
/// or coincide.
pub fn meet_planes3<S: Ring>(
    r1: &Plane3<S>,
    r2: &Plane3<S>,
    r3: &Plane3<S>,
    tol: &Tolerance,
) -> ProjResult<HomPoint3<S>> {
    finish(cross4(r1.components(), r2.components(), r3.components()), tol)
}

/// Solves `A x = b` for `n` in {2, 3, 4} without dividing: the extended
/// cross product of the augmented rows `[A | -b]` yields
/// `[x_1, ..., x_n : w]` with `x_i / w` the solution. Returned components
/// are value-first with the homogeneous coordinate last.
///
/// Tags: `Regular` means unique finite solution; `AtInfinity` means
/// `det(A)` classifies as zero but the system is inconsistent (no finite
/// solution; the value part is a direction annihilated by `A`);
/// `Degenerate` means the augmented rows are themselves dependent (an
/// underdetermined system - the whole output vanished).
pub fn solve_nonhomogeneous<S: Ring>(
    sys: &LinSystem<S>,
    tol: &Tolerance,
) -> Result<ProjResult<Vec<S>>, GeomError> {
    let rows: Vec<Vec<S>> = (0..sys.n()).map(|i| sys.augmented_row(i)).collect();
    let product = cross_of_rows(&rows)?;
    Ok(finish_vec(product, GeomKind::Point, tol))
}

/// Solves the homogeneous system with the given coefficient rows: for
/// `k` rows of `k + 1` components each (`k` in {2, 3, 4}), returns their
/// extended cross product - a representative of the one-parameter solution
/// family. An all-zero product (dependent rows) is `Degenerate`; otherwise
/// the tag classifies the representative under `result_kind`, which states
/// the caller's geometric reading of the solution (e.g.
/// [`GeomKind::Form`] when the rows are points and the solution is the
/// hyperplane through them).
pub fn solve_homogeneous<S: Ring>(
    rows: &[Vec<S>],
    result_kind: GeomKind,
    tol: &Tolerance,
) -> Result<ProjResult<Vec<S>>, GeomError> {
    let k = rows.len();
    if rows.iter().any(|r| r.len() != k + 1) {
        return Err(GeomError::InconsistentDimensions);
    }
    let product = cross_of_rows(rows)?;
    Ok(finish_vec(product, result_kind, tol))
}

/// Reborrows a slice as a fixed-size array reference.
fn as_array<S, const L: usize>(row: &[S]) -> Result<&[S; L], GeomError> {
    row.try_into().map_err(|_| GeomError::InconsistentDimensions)
}

/// Dispatches `k` rows of `k + 1` components to the right cross product.
fn cross_of_rows<S: Ring>(rows: &[Vec<S>]) -> Result<Vec<S>, GeomError> {
    match rows.len() {
        2 => Ok(cross3(as_array::<S, 3>(&rows[0])?, as_array(&rows[1])?).into_iter().collect()),
        3 => Ok(cross4(
            as_array::<S, 4>(&rows[0])?,
            as_array(&rows[1])?,
            as_array(&rows[2])?,
        )
        .into_iter()
        .collect()),
        4 => Ok(cross5(
            as_array::<S, 5>(&rows[0])?,
            as_array(&rows[1])?,
            as_array(&rows[2])?,
            as_array(&rows[3])?,
        )
        .into_iter()
        .collect()),
        n => Err(GeomError::UnsupportedDimension { n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homog::{point2, point3, ProjTag};
    use num::rational::BigRational;
    use proptest::prelude::*;

    type Rat = BigRational;

    fn rat(n: i64) -> Rat {
        Ring::from_i64(n)
    }

    #[test]
    fn meet_of_axis_aligned_lines() {
        let tol = Tolerance::default();
        // x = 1 and y = 2.
        let p = meet_lines2(&line2(1.0, 0.0, -1.0), &line2(0.0, 1.0, -2.0), &tol)
            .regular()
            .expect("finite intersection");
        assert_eq!(p.to_euclidean(&tol).unwrap().coords, [1.0, 2.0]);
    }

    #[test]
    fn meet_of_parallel_and_coincident_lines() {
        let tol = Tolerance::default();
        // Parallel distinct: x + y = 0 and x + y = 1.
        let r = meet_lines2(&line2(1i128, 1, 0), &line2(1i128, 1, -1), &tol);
        assert_eq!(r.tag(), ProjTag::AtInfinity);
        let dir = r.value().unwrap();
        // The shared direction (-1, 1) up to scale, with w = 0.
        assert_eq!(dir.components()[2], 0);
        assert_eq!(dir.components()[0] * 1 + dir.components()[1] * 1, 0);
        // Coincident: the same line twice (scaled).
        let r = meet_lines2(&line2(1i128, 1, -1), &line2(3i128, 3, -3), &tol);
        assert_eq!(r.tag(), ProjTag::Degenerate);
    }

    #[test]
    fn join_of_two_euclidean_points() {
        let tol = Tolerance::default();
        // (0,0) and (1,1) give the diagonal -x + y = 0.
        let l = join_points2(&point2(0i128, 0, 1), &point2(1i128, 1, 1), &tol)
            .regular()
            .unwrap();
        assert_eq!(l.components(), &[-1, 1, 0]);
        // Joining a point with itself (scaled) degenerates.
        let r = join_points2(&point2(2i128, 3, 1), &point2(4i128, 6, 2), &tol);
        assert_eq!(r.tag(), ProjTag::Degenerate);
    }

    #[test]
    fn join_of_two_directions_is_the_ideal_line() {
        let tol = Tolerance::default();
        let r = join_points2(&point2(0i128, 1, 0), &point2(1i128, 0, 0), &tol);
        assert_eq!(r.tag(), ProjTag::AtInfinity);
        let l = r.value().unwrap();
        assert_eq!(l.value_part(), &[0, 0]);
        assert_eq!(l.w().abs(), 1);
    }

    #[test]
    fn join_three_points_into_a_plane() {
        let tol = Tolerance::default();
        let p = join_points3(
            &point3(1i128, 0, 0, 1),
            &point3(0i128, 1, 0, 1),
            &point3(0i128, 0, 1, 1),
            &tol,
        )
        .regular()
        .unwrap();
        // x + y + z = 1, up to overall sign.
        assert_eq!(p.components(), &[1, 1, 1, -1]);
        // Collinear points degenerate.
        let r = join_points3(
            &point3(0i128, 0, 0, 1),
            &point3(1i128, 1, 1, 1),
            &point3(2i128, 2, 2, 1),
            &tol,
        );
        assert_eq!(r.tag(), ProjTag::Degenerate);
    }

    #[test]
    fn meet_three_axis_planes() {
        let tol = Tolerance::default();
        // x = 1, y = 2, z = 3.
        let p = meet_planes3(
            &plane3(1.0, 0.0, 0.0, -1.0),
            &plane3(0.0, 1.0, 0.0, -2.0),
            &plane3(0.0, 0.0, 1.0, -3.0),
            &tol,
        )
        .regular()
        .unwrap();
        assert_eq!(p.to_euclidean(&tol).unwrap().coords, [1.0, 2.0, 3.0]);
        // Two parallel planes: common direction only.
        let r = meet_planes3(
            &plane3(0i128, 0, 1, 0),
            &plane3(0i128, 0, 1, -1),
            &plane3(1i128, 0, 0, 0),
            &tol,
        );
        assert_eq!(r.tag(), ProjTag::AtInfinity);
    }

    #[test]
    fn solve_identity_and_scaled_systems() {
        let tol = Tolerance::default();
        let sys = LinSystem::from_arrays([[1i128, 0], [0, 1]], [3, 4]);
        let r = solve_nonhomogeneous(&sys, &tol).unwrap();
        assert_eq!(r.regular().unwrap(), vec![3, 4, 1]);

        // 2x = 2, 2y = 4: homogeneous output scales, Euclidean value not.
        let sys = LinSystem::from_arrays([[rat(2), rat(0)], [rat(0), rat(2)]], [rat(2), rat(4)]);
        let r = solve_nonhomogeneous(&sys, &tol).unwrap().regular().unwrap();
        let w = r[2].clone();
        assert_eq!(r[0].clone() / w.clone(), rat(1));
        assert_eq!(r[1].clone() / w, rat(2));
    }

    #[test]
    fn solve_classifies_singular_systems() {
        let tol = Tolerance::default();
        // Inconsistent: x + y = 1, x + y = 2 has no solution.
        let sys = LinSystem::from_arrays([[1i128, 1], [1, 1]], [1, 2]);
        let r = solve_nonhomogeneous(&sys, &tol).unwrap();
        assert_eq!(r.tag(), ProjTag::AtInfinity);
        // Underdetermined: x + y = 1 twice; augmented rows dependent.
        let sys = LinSystem::from_arrays([[1i128, 1], [2, 2]], [1, 2]);
        let r = solve_nonhomogeneous(&sys, &tol).unwrap();
        assert_eq!(r.tag(), ProjTag::Degenerate);
    }

    #[test]
    fn solve_rejects_unsupported_dimensions() {
        let tol = Tolerance::default();
        let a: Vec<Vec<i128>> = (0..5).map(|i| (0..5).map(|j| ((i + j) % 5) as i128).collect()).collect();
        let sys = LinSystem::new(a, vec![1, 2, 3, 4, 5]).unwrap();
        assert_eq!(
            solve_nonhomogeneous(&sys, &tol),
            Err(GeomError::UnsupportedDimension { n: 5 })
        );
        assert!(matches!(
            LinSystem::new(vec![vec![1i128, 2], vec![3]], vec![1, 2]),
            Err(GeomError::InconsistentDimensions)
        ));
    }

    #[test]
    fn solve_homogeneous_examples() {
        let tol = Tolerance::default();
        // Rows e1, e2: solutions are multiples of e3.
        let r = solve_homogeneous(
            &[vec![1i128, 0, 0], vec![0, 1, 0]],
            GeomKind::Point,
            &tol,
        )
        .unwrap();
        assert_eq!(r.regular().unwrap(), vec![0, 0, 1]);
        // Dependent rows degenerate.
        let r = solve_homogeneous(
            &[vec![1i128, 2, 3], vec![2, 4, 6]],
            GeomKind::Point,
            &tol,
        )
        .unwrap();
        assert_eq!(r.tag(), ProjTag::Degenerate);
    }

    #[test]
    fn solve_homogeneous_agrees_with_join() {
        let tol = Tolerance::default();
        let p1 = point2(3i128, -2, 1);
        let p2 = point2(-1i128, 4, 1);
        let via_join = join_points2(&p1, &p2, &tol).regular().unwrap();
        let via_solve = solve_homogeneous(
            &[p1.components().to_vec(), p2.components().to_vec()],
            GeomKind::Form,
            &tol,
        )
        .unwrap()
        .regular()
        .unwrap();
        assert_eq!(via_solve.as_slice(), via_join.components().as_slice());
    }

    #[test]
    fn regular_float_results_are_pow2_normalized() {
        let tol = Tolerance::default();
        let p = meet_lines2(&line2(1.0, 0.0, -1.0), &line2(0.0, 1.0, -2.0), &tol)
            .regular()
            .unwrap();
        // Raw cross product is [1, 2, 1]; renormalization halves it so the
        // largest magnitude sits in [1, 2).
        assert_eq!(p.components(), &[0.5, 1.0, 0.5]);
        let m = p.components().iter().fold(0.0f64, |a, c| a.max(c.abs()));
        assert!((1.0..2.0).contains(&m));
    }

    fn ipoint() -> impl Strategy<Value = [i128; 3]> {
        proptest::array::uniform3(-50i128..=50)
    }

    proptest! {
        // Duality: the joined line passes through both points; the met
        // point lies on both lines. Incidence residual is a plain dot
        // product and must vanish exactly over integers.
        #[test]
        fn join_meet_incidence(a in ipoint(), b in ipoint(), c in ipoint(), d in ipoint()) {
            let tol = Tolerance::default();
            let (pa, pb) = (point2(a[0], a[1], a[2]), point2(b[0], b[1], b[2]));
            let (pc, pd) = (point2(c[0], c[1], c[2]), point2(d[0], d[1], d[2]));
            if let Some(l1) = join_points2(&pa, &pb, &tol).value() {
                prop_assert_eq!(crate::cross::dot(l1.components(), pa.components()), 0);
                prop_assert_eq!(crate::cross::dot(l1.components(), pb.components()), 0);
                if let Some(l2) = join_points2(&pc, &pd, &tol).value() {
                    if let Some(x) = meet_lines2(&l1, &l2, &tol).value() {
                        prop_assert_eq!(crate::cross::dot(l1.components(), x.components()), 0);
                        prop_assert_eq!(crate::cross::dot(l2.components(), x.components()), 0);
                    }
                }
            }
        }

        // The projective solution reproduces b: A * value = w * b exactly.
        #[test]
        fn solve_residual_vanishes(
            a in proptest::array::uniform4(-30i128..=30),
            b in proptest::array::uniform2(-30i128..=30),
        ) {
            let tol = Tolerance::default();
            let sys = LinSystem::from_arrays([[a[0], a[1]], [a[2], a[3]]], [b[0], b[1]]);
            if let ProjResult::Regular(x) = solve_nonhomogeneous(&sys, &tol).unwrap() {
                for i in 0..2 {
                    let lhs = *sys.a(i, 0) * x[0] + *sys.a(i, 1) * x[1];
                    prop_assert_eq!(lhs, x[2] * *sys.b(i));
                }
            }
        }
    }
}
