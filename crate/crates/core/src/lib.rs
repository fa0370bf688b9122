//! Division-free projective linear algebra over homogeneous coordinates.
//!
//! Finite values are carried as homogeneous tuples `[x_1, ..., x_n : w]`
//! representing the fraction vector `(x_1/w, ..., x_n/w)`. Because a common
//! nonzero scale factor is irrelevant, additions and multiplications can
//! stand in for divisions everywhere except the final conversion back to
//! ordinary coordinates. The workhorse is the extended cross product: the
//! vector of signed maximal minors of a `(k) x (k+1)` coefficient matrix,
//! which solves small linear systems, joins points, and meets lines or
//! planes without a single intermediate division.
//!
//! Module map:
//!
//! * [`scalar`] - arithmetic capability traits ([`Ring`], [`Field`]) and the
//!   classification [`Tolerance`]; instantiations for `f64`, `i128`, and
//!   arbitrary-precision rationals.
//! * [`homog`] - the homogeneous-coordinate data model: [`HomCoords`],
//!   Euclidean conversions, projective equivalence, classification.
//! * [`cross`] - extended cross products in 3, 4, and 5 components, plus
//!   their antisymmetric-matrix and dot/cross decomposed forms.
//! * [`geom`] - join/meet operations and the projectivized solvers for
//!   2x2 .. 4x4 systems.
//! * [`bary`] - projective (division-free) barycentric coordinates for
//!   triangles and tetrahedra.
//! * [`oracle`] - independent reference implementations (cofactor
//!   determinant, Cramer, Gaussian elimination, exact rank) used to
//!   cross-check the projective paths in tests and benchmarks.
//!
//! # Quick start
//!
//! ```
//! use homsolve::geom::{line2, meet_lines2};
//! use homsolve::{ProjResult, Tolerance};
//!
//! let tol = Tolerance::default();
//! // x = 1 and y = 2, as lines a*x + b*y + c*w = 0.
//! let a = line2(1.0, 0.0, -1.0);
//! let b = line2(0.0, 1.0, -2.0);
//! match meet_lines2(&a, &b, &tol) {
//!     ProjResult::Regular(p) => {
//!         let e = p.to_euclidean(&tol).unwrap();
//!         assert_eq!(e.coords, [1.0, 2.0]);
//!     }
//!     _ => unreachable!("lines are not parallel"),
//! }
//! ```

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod bary;
pub mod cross;
pub mod geom;
pub mod homog;
pub mod oracle;
pub mod scalar;

pub use homog::{
    EuclidPoint, GeomKind, HomCoords, HomPoint2, HomPoint3, ProjResult, ProjTag, ProjectionError,
};
pub use scalar::{Field, Ring, Tolerance};
