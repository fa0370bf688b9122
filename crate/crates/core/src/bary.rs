//! Projective barycentric coordinates for triangles and tetrahedra,
//! computed without division.
//!
//! The barycentric system for a query point `x0` against vertices
//! `x1..xk` is homogeneous once each Cartesian row is extended with the
//! query point's entry: stack the rows
//! `[x_1, ..., x_k, x_0]` per coordinate (and one row of homogeneous
//! coordinates `w`) and take the extended cross product. The result
//! `xi = [xi_1, ..., xi_k : xi_w]` encodes the weights as
//! `lambda_i = -xi_i / xi_w`; the negation is an artifact of carrying
//! `x0`'s column with a positive sign and lives only in [`to_weights`],
//! so the stored `xi` is the raw division-free cross product.
//!
//! Sidedness never needs the division: `lambda_i > 0` exactly when
//! `xi_i` and `-xi_w` share their sign, so [`ProjBary::side`] reads signs
//! only - over exact scalars this is a robust point-in-simplex predicate.

use crate::cross::{cross4, cross5};
use crate::homog::{
    classify_components, max_abs, GeomKind, HomPoint2, HomPoint3, ProjResult, ProjTag,
    ProjectionError,
};
use crate::scalar::{Field, Ring, Tolerance};

/// Raw projective barycentric output with `M` components
/// (`M - 1` vertex entries plus the homogeneous entry).
#[derive(Clone, Debug, PartialEq)]
pub struct ProjBary<S, const M: usize> {
    xi: [S; M],
}

/// Barycentric output for a triangle.
pub type TriangleBary<S> = ProjBary<S, 4>;
/// Barycentric output for a tetrahedron.
pub type TetrahedronBary<S> = ProjBary<S, 5>;

/// Euclidean barycentric weights `lambda_1..lambda_K`, summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct BaryWeights<S, const K: usize> {
    lambda: [S; K],
}

impl<S, const K: usize> BaryWeights<S, K> {
    /// The weights.
    pub fn lambda(&self) -> &[S; K] {
        &self.lambda
    }
}

/// Position of the query point relative to the simplex, judged purely
/// from signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexSide {
    /// Strictly inside: every weight positive.
    Inside,
    /// On the boundary: some weight zero, none negative.
    Boundary,
    /// Outside: some weight negative.
    Outside,
}

impl<S: Ring, const M: usize> ProjBary<S, M> {
    /// The raw cross-product output `[xi_1, ..., xi_{M-1} : xi_w]`.
    pub fn xi(&self) -> &[S; M] {
        &self.xi
    }

    /// The homogeneous component `xi_w`.
    pub fn xi_w(&self) -> &S {
        &self.xi[M - 1]
    }

    /// Division-free sidedness: `lambda_i > 0` iff `sign(xi_i)` equals
    /// `sign(-xi_w)`. Returns `None` when `xi_w` is literally zero (no
    /// finite weights to take sides on). Exact scalars make this a robust
    /// predicate; under floats it inherits rounding of the inputs.
    pub fn side(&self) -> Option<SimplexSide> {
        let sw = -(self.xi[M - 1].sign());
        if sw == 0 {
            return None;
        }
        let mut boundary = false;
        for i in 0..(M - 1) {
            let s = self.xi[i].sign();
            if s == 0 {
                boundary = true;
            } else if s != sw {
                return Some(SimplexSide::Outside);
            }
        }
        Some(if boundary { SimplexSide::Boundary } else { SimplexSide::Inside })
    }
}

macro_rules! impl_to_weights {
    ($m:literal => $k:literal) => {
        impl<S: Field> ProjBary<S, $m> {
            /// Converts to Euclidean weights `lambda_i = -xi_i / xi_w`.
            /// The single place this module divides; fails when `xi_w`
            /// classifies as zero.
            pub fn to_weights(&self, tol: &Tolerance) -> Result<BaryWeights<S, $k>, ProjectionError> {
                let scale = max_abs(&self.xi);
                let w = &self.xi[$m - 1];
                if w.is_zero_rel(&scale, tol.eps_w) {
                    return Err(ProjectionError::HomogeneousZero);
                }
                let lambda = std::array::from_fn(|i| -(self.xi[i].clone() / w.clone()));
                Ok(BaryWeights { lambda })
            }
        }
    };
}

impl_to_weights!(4 => 3);
impl_to_weights!(5 => 4);

/// Stacks one coordinate row `[x_1[i], ..., x_k[i], x_0[i]]`.
fn coord_row<S: Ring, const M: usize, const R: usize>(
    points: [&[S; M]; R],
    i: usize,
) -> [S; R] {
    std::array::from_fn(|p| points[p][i].clone())
}

/// Projective barycentric coordinates of `x0` in the triangle
/// `x1, x2, x3`. The tag classifies `xi_w`: `Regular` means finite
/// weights exist; `AtInfinity` means the vertices are collinear while
/// `x0` is off their line (or `x0` is a direction) so no finite weights
/// exist; `Degenerate` means all four points are collinear - the system
/// carries no information at all.
pub fn bary_triangle<S: Ring>(
    x1: &HomPoint2<S>,
    x2: &HomPoint2<S>,
    x3: &HomPoint2<S>,
    x0: &HomPoint2<S>,
    tol: &Tolerance,
) -> ProjResult<ProjBary<S, 4>> {
    let pts = [x1.components(), x2.components(), x3.components(), x0.components()];
    let row_x = coord_row(pts, 0);
    let row_y = coord_row(pts, 1);
    let row_w = coord_row(pts, 2);
    classify_bary(cross4(&row_x, &row_y, &row_w), tol)
}

/// Projective barycentric coordinates of `x0` in the tetrahedron
/// `x1..x4`; tags as in [`bary_triangle`] with "collinear" replaced by
/// "coplanar".
pub fn bary_tetrahedron<S: Ring>(
    x1: &HomPoint3<S>,
    x2: &HomPoint3<S>,
    x3: &HomPoint3<S>,
    x4: &HomPoint3<S>,
    x0: &HomPoint3<S>,
    tol: &Tolerance,
) -> ProjResult<ProjBary<S, 5>> {
    let pts = [
        x1.components(),
        x2.components(),
        x3.components(),
        x4.components(),
        x0.components(),
    ];
    let row_x = coord_row(pts, 0);
    let row_y = coord_row(pts, 1);
    let row_z = coord_row(pts, 2);
    let row_w = coord_row(pts, 3);
    classify_bary(cross5(&row_x, &row_y, &row_z, &row_w), tol)
}

/// Classifies the raw cross output; unlike the join/meet operations the
/// stored vector is never rescaled, so downstream sign logic sees the
/// exact cross product.
fn classify_bary<S: Ring, const M: usize>(
    xi: [S; M],
    tol: &Tolerance,
) -> ProjResult<ProjBary<S, M>> {
    match classify_components(&xi, GeomKind::Point, tol) {
        ProjTag::Degenerate => ProjResult::Degenerate,
        ProjTag::AtInfinity => ProjResult::AtInfinity(ProjBary { xi }),
        ProjTag::Regular => ProjResult::Regular(ProjBary { xi }),
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

    fn ratq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn vertex_queries_are_one_hot() {
        let tol = Tolerance::default();
        let (a, b, c) = (point2(rat(0), rat(0), rat(1)), point2(rat(4), rat(0), rat(1)), point2(rat(0), rat(4), rat(1)));
        for (i, v) in [&a, &b, &c].into_iter().enumerate() {
            let bary = bary_triangle(&a, &b, &c, v, &tol).regular().unwrap();
            let w = bary.to_weights(&tol).unwrap();
            for j in 0..3 {
                assert_eq!(w.lambda()[j], if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn centroid_has_equal_thirds() {
        let tol = Tolerance::default();
        let a = point2(rat(0), rat(0), rat(1));
        let b = point2(rat(1), rat(0), rat(1));
        let c = point2(rat(0), rat(1), rat(1));
        let centroid = point2(ratq(1, 3), ratq(1, 3), rat(1));
        let bary = bary_triangle(&a, &b, &c, &centroid, &tol).regular().unwrap();
        let w = bary.to_weights(&tol).unwrap();
        assert_eq!(w.lambda(), &[ratq(1, 3), ratq(1, 3), ratq(1, 3)]);
        assert_eq!(bary.side(), Some(SimplexSide::Inside));
    }

    #[test]
    fn tetrahedron_centroid_has_equal_quarters() {
        let tol = Tolerance::default();
        let vs = [
            point3(rat(0), rat(0), rat(0), rat(1)),
            point3(rat(2), rat(0), rat(0), rat(1)),
            point3(rat(0), rat(2), rat(0), rat(1)),
            point3(rat(0), rat(0), rat(2), rat(1)),
        ];
        let centroid = point3(ratq(1, 2), ratq(1, 2), ratq(1, 2), rat(1));
        let bary = bary_tetrahedron(&vs[0], &vs[1], &vs[2], &vs[3], &centroid, &tol)
            .regular()
            .unwrap();
        let w = bary.to_weights(&tol).unwrap();
        assert_eq!(w.lambda(), &[ratq(1, 4), ratq(1, 4), ratq(1, 4), ratq(1, 4)]);
    }

    #[test]
    fn weights_sum_to_one_with_unit_w() {
        let tol = Tolerance::default();
        let a = point2(rat(-3), rat(2), rat(1));
        let b = point2(rat(5), rat(1), rat(1));
        let c = point2(rat(1), rat(7), rat(1));
        let q = point2(ratq(7, 5), ratq(9, 4), rat(1));
        let bary = bary_triangle(&a, &b, &c, &q, &tol).regular().unwrap();
        let w = bary.to_weights(&tol).unwrap();
        let sum = w.lambda()[0].clone() + w.lambda()[1].clone() + w.lambda()[2].clone();
        assert_eq!(sum, rat(1));
    }

    #[test]
    fn sidedness_from_signs_alone() {
        let tol = Tolerance::default();
        let a = point2(0i128, 0, 1);
        let b = point2(4i128, 0, 1);
        let c = point2(0i128, 4, 1);
        let cases = [
            (point2(1i128, 1, 1), SimplexSide::Inside),
            (point2(5i128, 5, 1), SimplexSide::Outside),
            (point2(2i128, 0, 1), SimplexSide::Boundary), // on edge ab
            (point2(0i128, 0, 1), SimplexSide::Boundary), // a vertex
        ];
        for (q, expect) in cases {
            let bary = bary_triangle(&a, &b, &c, &q, &tol).value().unwrap();
            assert_eq!(bary.side(), Some(expect), "query {:?}", q);
        }
    }

    #[test]
    fn degenerate_and_at_infinity_tags() {
        let tol = Tolerance::default();
        // All four points on one line: nothing to measure.
        let r = bary_triangle(
            &point2(0i128, 0, 1),
            &point2(1i128, 1, 1),
            &point2(2i128, 2, 1),
            &point2(3i128, 3, 1),
            &tol,
        );
        assert_eq!(r.tag(), ProjTag::Degenerate);
        // Collinear vertices, query off the line: weights cannot exist.
        let r = bary_triangle(
            &point2(rat(0), rat(0), rat(1)),
            &point2(rat(1), rat(1), rat(1)),
            &point2(rat(2), rat(2), rat(1)),
            &point2(rat(5), rat(0), rat(1)),
            &tol,
        );
        assert_eq!(r.tag(), ProjTag::AtInfinity);
        let bary = r.value().unwrap();
        assert!(bary.side().is_none());
        assert_eq!(bary.to_weights(&tol), Err(ProjectionError::HomogeneousZero));
    }

    // The raw weights solve the homogeneous system, so they depend on the
    // representatives chosen for each point: scaling vertex k by q divides
    // lambda_k by q (others fixed), and scaling the query by q multiplies
    // every lambda by q.  The representative-independent quantities are the
    // Euclidean weights mu_i = lambda_i * w_i / w_0.
    #[test]
    fn weights_transform_covariantly_under_rescaling() {
        let tol = Tolerance::default();
        let a = point2(rat(1), rat(1), rat(1));
        let b = point2(rat(6), rat(2), rat(1));
        let c = point2(rat(2), rat(8), rat(1));
        let q = point2(rat(3), rat(3), rat(1));
        let w1 = bary_triangle(&a, &b, &c, &q, &tol)
            .regular()
            .unwrap()
            .to_weights(&tol)
            .unwrap();

        // Rescale one vertex: only that vertex's weight changes, by 1/q.
        let b2 = b.scaled(&rat(-7));
        let w2 = bary_triangle(&a, &b2, &c, &q, &tol)
            .regular()
            .unwrap()
            .to_weights(&tol)
            .unwrap();
        assert_eq!(w2.lambda()[0], w1.lambda()[0]);
        assert_eq!(w2.lambda()[1], w1.lambda()[1].clone() / rat(-7));
        assert_eq!(w2.lambda()[2], w1.lambda()[2]);

        // Rescale the query: every weight scales by q.
        let q2 = q.scaled(&rat(3));
        let w3 = bary_triangle(&a, &b, &c, &q2, &tol)
            .regular()
            .unwrap()
            .to_weights(&tol)
            .unwrap();
        for i in 0..3 {
            assert_eq!(w3.lambda()[i], w1.lambda()[i].clone() * rat(3));
        }

        // Euclidean weights lambda_i * w_i / w_0 are invariant under both.
        let mu = |w: &BaryWeights<BigRational, 3>, ws: [i64; 4]| -> Vec<BigRational> {
            (0..3)
                .map(|i| w.lambda()[i].clone() * rat(ws[i]) / rat(ws[3]))
                .collect()
        };
        let base = mu(&w1, [1, 1, 1, 1]);
        assert_eq!(mu(&w2, [1, -7, 1, 1]), base);
        assert_eq!(mu(&w3, [1, 1, 1, 3]), base);
    }

    fn ipt() -> impl Strategy<Value = [i64; 2]> {
        proptest::array::uniform2(-20i64..=20)
    }

    proptest! {
        // Reconstruction: sum(lambda_i * x_i) = x0 exactly over rationals,
        // whenever finite weights exist.
        #[test]
        fn weights_reconstruct_the_query(a in ipt(), b in ipt(), c in ipt(), q in ipt()) {
            let tol = Tolerance::default();
            let pts = [a, b, c].map(|p| point2(rat(p[0]), rat(p[1]), rat(1)));
            let query = point2(rat(q[0]), rat(q[1]), rat(1));
            if let ProjResult::Regular(bary) =
                bary_triangle(&pts[0], &pts[1], &pts[2], &query, &tol)
            {
                let w = bary.to_weights(&tol).unwrap();
                for coord in 0..2 {
                    let mut acc = rat(0);
                    for (i, p) in pts.iter().enumerate() {
                        acc = acc + w.lambda()[i].clone() * p.components()[coord].clone();
                    }
                    prop_assert_eq!(acc, query.components()[coord].clone());
                }
                let sum = w.lambda().iter().fold(rat(0), |s, l| s + l.clone());
                prop_assert_eq!(sum, rat(1));
            }
        }
    }
}
