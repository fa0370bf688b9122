//! Homogeneous-coordinate data model.
//!
//! A [`HomCoords`] value stores `M` scalars `[x_1, ..., x_{M-1} : w]` -
//! value part first, homogeneous coordinate last - and carries its
//! geometric role (point, form, or direction) at the type level, so a 2D
//! point and a 2D line are different types even though both are three
//! scalars. Two elements denote the same projective object when one is a
//! nonzero scalar multiple of the other; see
//! [`HomCoords::proj_equivalent`].
//!
//! Classification ([`HomCoords::classify`]) sorts an element into one of
//! three tags:
//!
//! * `Regular` - a finite object; division by `w` (points) is meaningful.
//! * `AtInfinity` - the homogeneous slot classifies as zero for points
//!   (direction only), or the whole value part does for forms (the ideal
//!   line/plane).
//! * `Degenerate` - every component is zero; no object at all.
//!
//! Float zero tests are relative to the element's largest component
//! magnitude (see [`Tolerance`]); exact scalars compare against literal
//! zero.

use std::marker::PhantomData;

use crate::scalar::{Field, Ring, Tolerance};

/// Geometric role of a homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeomKind {
    /// A location; `[x_1, ..., x_n : w]` with `w != 0` maps to `x_i / w`.
    Point,
    /// A linear form (line in 2D, plane in 3D): coefficients of an
    /// incidence equation `a.x + b.y + ... + c.w = 0`.
    Form,
    /// A direction vector; the homogeneous slot is a free scale.
    Direction,
}

/// Type-level marker for [`GeomKind`]; lets the compiler reject mixing
/// points with forms instead of deferring to a runtime check.
pub trait Kind: Copy + Clone + std::fmt::Debug + PartialEq + Eq + 'static {
    /// The runtime kind this marker denotes.
    const KIND: GeomKind;
}

/// Marker type for [`GeomKind::Point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointKind;

/// Marker type for [`GeomKind::Form`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormKind;

/// Marker type for [`GeomKind::Direction`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectionKind;

impl Kind for PointKind {
    const KIND: GeomKind = GeomKind::Point;
}
impl Kind for FormKind {
    const KIND: GeomKind = GeomKind::Form;
}
impl Kind for DirectionKind {
    const KIND: GeomKind = GeomKind::Direction;
}

/// A homogeneous element with `M` components: value part first, the
/// homogeneous coordinate last. `K` fixes its geometric role.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomCoords<S, const M: usize, K: Kind> {
    c: [S; M],
    _kind: PhantomData<K>,
}

/// A 2D homogeneous point `[x, y : w]`.
pub type HomPoint2<S> = HomCoords<S, 3, PointKind>;
/// A 3D homogeneous point `[x, y, z : w]`.
pub type HomPoint3<S> = HomCoords<S, 4, PointKind>;

/// A plain Euclidean point with `N` coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EuclidPoint<S, const N: usize> {
    /// Cartesian coordinates.
    pub coords: [S; N],
}

impl<S, const N: usize> EuclidPoint<S, N> {
    /// Wraps raw coordinates.
    pub fn new(coords: [S; N]) -> Self {
        EuclidPoint { coords }
    }
}

/// Failure to leave projective space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProjectionError {
    /// The homogeneous component classifies as zero; the element has no
    /// finite representative.
    #[error("homogeneous component classifies as zero (element at infinity)")]
    HomogeneousZero,
}

/// Outcome tag of a projective operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjTag {
    /// Finite result.
    Regular,
    /// Result exists projectively but has no finite representative.
    AtInfinity,
    /// All components vanished; the inputs were dependent.
    Degenerate,
}

/// A projective operation result: the raw homogeneous output plus its
/// classification. `Degenerate` carries no value because the output is the
/// zero tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjResult<T> {
    /// Finite result.
    Regular(T),
    /// Non-finite but well-defined result (e.g. the common direction of
    /// parallel lines, or the ideal line joining two directions).
    AtInfinity(T),
    /// The inputs were linearly dependent; every output component is zero.
    Degenerate,
}

impl<T> ProjResult<T> {
    /// The classification tag alone.
    pub fn tag(&self) -> ProjTag {
        match self {
            ProjResult::Regular(_) => ProjTag::Regular,
            ProjResult::AtInfinity(_) => ProjTag::AtInfinity,
            ProjResult::Degenerate => ProjTag::Degenerate,
        }
    }

    /// The payload if the result is `Regular`.
    pub fn regular(self) -> Option<T> {
        match self {
            ProjResult::Regular(v) => Some(v),
            _ => None,
        }
    }

    /// The payload for either non-degenerate tag.
    pub fn value(self) -> Option<T> {
        match self {
            ProjResult::Regular(v) | ProjResult::AtInfinity(v) => Some(v),
            ProjResult::Degenerate => None,
        }
    }

    /// Borrowing view.
    pub fn as_ref(&self) -> ProjResult<&T> {
        match self {
            ProjResult::Regular(v) => ProjResult::Regular(v),
            ProjResult::AtInfinity(v) => ProjResult::AtInfinity(v),
            ProjResult::Degenerate => ProjResult::Degenerate,
        }
    }

    /// Maps the payload, keeping the tag.
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> ProjResult<U> {
        match self {
            ProjResult::Regular(v) => ProjResult::Regular(f(v)),
            ProjResult::AtInfinity(v) => ProjResult::AtInfinity(f(v)),
            ProjResult::Degenerate => ProjResult::Degenerate,
        }
    }
}

/// Classifies raw components under the given kind's rule. This is the one
/// shared implementation behind [`HomCoords::classify`] and the
/// dynamically sized solver results.
pub(crate) fn classify_components<S: Ring>(c: &[S], kind: GeomKind, tol: &Tolerance) -> ProjTag {
    let scale = max_abs(c);
    if scale.is_zero() {
        return ProjTag::Degenerate;
    }
    let last = c.len() - 1;
    let at_infinity = match kind {
        GeomKind::Point | GeomKind::Direction => c[last].is_zero_rel(&scale, tol.eps_w),
        GeomKind::Form => c[..last].iter().all(|v| v.is_zero_rel(&scale, tol.eps_w)),
    };
    if at_infinity {
        ProjTag::AtInfinity
    } else {
        ProjTag::Regular
    }
}

/// Largest component magnitude.
pub(crate) fn max_abs<S: Ring>(c: &[S]) -> S {
    let mut m = S::zero();
    for v in c {
        let a = v.abs();
        if a > m {
            m = a;
        }
    }
    m
}

impl<S, const M: usize, K: Kind> HomCoords<S, M, K> {
    /// Wraps raw components `[value..., w]`. No validity check is made;
    /// the all-zero tuple is representable and classifies as degenerate.
    pub fn new(c: [S; M]) -> Self {
        HomCoords { c, _kind: PhantomData }
    }

    /// All components, value part first, homogeneous coordinate last.
    pub fn components(&self) -> &[S; M] {
        &self.c
    }

    /// Consumes the element, returning its components.
    pub fn into_components(self) -> [S; M] {
        self.c
    }

    /// The value part (all components except the last).
    pub fn value_part(&self) -> &[S] {
        &self.c[..M - 1]
    }

    /// The homogeneous coordinate.
    pub fn w(&self) -> &S {
        &self.c[M - 1]
    }

    /// The runtime kind of this element.
    pub fn kind(&self) -> GeomKind {
        K::KIND
    }
}

impl<S: Ring, const M: usize, K: Kind> HomCoords<S, M, K> {
    /// The same element scaled by `q`; projectively identical when
    /// `q != 0`.
    pub fn scaled(&self, q: &S) -> Self {
        let c = std::array::from_fn(|i| self.c[i].clone() * q.clone());
        HomCoords::new(c)
    }

    /// True when every component is literally zero (no projective object).
    pub fn is_zero_element(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    /// Sorts the element into `Regular`, `AtInfinity`, or `Degenerate`.
    /// Floats use the relative rule from [`Tolerance`]; exact scalars test
    /// literal zero. Points and directions classify on the homogeneous
    /// slot, forms on the value part (the ideal line `[0, 0 : c]` is the
    /// at-infinity form).
    pub fn classify(self, tol: &Tolerance) -> ProjResult<Self> {
        match classify_components(&self.c, K::KIND, tol) {
            ProjTag::Regular => ProjResult::Regular(self),
            ProjTag::AtInfinity => ProjResult::AtInfinity(self),
            ProjTag::Degenerate => ProjResult::Degenerate,
        }
    }

    /// Projective equality: some nonzero `q` satisfies `self = q * other`.
    /// Implemented division-free as the vanishing of every 2x2 cross
    /// determinant `self[i] * other[j] - self[j] * other[i]`; for floats,
    /// vanishing is relative to the product of the two elements' largest
    /// magnitudes. The all-zero element is equivalent to nothing, itself
    /// included.
    pub fn proj_equivalent(&self, other: &Self, tol: &Tolerance) -> bool {
        if self.is_zero_element() || other.is_zero_element() {
            return false;
        }
        let scale = max_abs(&self.c) * max_abs(&other.c);
        for i in 0..M {
            for j in (i + 1)..M {
                let d = self.c[i].clone() * other.c[j].clone()
                    - self.c[j].clone() * other.c[i].clone();
                if !d.is_zero_rel(&scale, tol.eps_w) {
                    return false;
                }
            }
        }
        true
    }
}

impl<const M: usize, K: Kind> HomCoords<f64, M, K> {
    /// Rescales by a power of two so the largest component magnitude lands
    /// in `[1, 2)`. Exact: the element stays bit-for-bit projectively
    /// identical (every quotient of components is unchanged), while
    /// repeated multiplicative pipelines stop drifting toward overflow.
    pub fn normalize_pow2(&self) -> Self {
        let mut c = self.c;
        crate::scalar::pow2_rescale(&mut c);
        HomCoords::new(c)
    }
}

macro_rules! impl_euclidean_bridge {
    ($m:literal => $n:literal) => {
        impl<S: Ring> HomCoords<S, $m, PointKind> {
            /// Embeds a Euclidean point with `w = 1`.
            pub fn from_euclidean(p: &EuclidPoint<S, $n>) -> Self {
                let mut c: [S; $m] = std::array::from_fn(|_| S::zero());
                for i in 0..$n {
                    c[i] = p.coords[i].clone();
                }
                c[$m - 1] = S::one();
                HomCoords::new(c)
            }
        }

        impl<S: Field> HomCoords<S, $m, PointKind> {
            /// Divides out the homogeneous coordinate. This is the single
            /// place division enters the pipeline; it fails when `w`
            /// classifies as zero.
            pub fn to_euclidean(
                &self,
                tol: &Tolerance,
            ) -> Result<EuclidPoint<S, $n>, ProjectionError> {
                let scale = max_abs(&self.c);
                if self.w().is_zero_rel(&scale, tol.eps_w) {
                    return Err(ProjectionError::HomogeneousZero);
                }
                let coords =
                    std::array::from_fn(|i| self.c[i].clone() / self.w().clone());
                Ok(EuclidPoint::new(coords))
            }
        }
    };
}

impl_euclidean_bridge!(3 => 2);
impl_euclidean_bridge!(4 => 3);
impl_euclidean_bridge!(5 => 4);

/// Builds a 2D homogeneous point `[x, y : w]`.
pub fn point2<S>(x: S, y: S, w: S) -> HomPoint2<S> {
    HomCoords::new([x, y, w])
}

/// Builds a 3D homogeneous point `[x, y, z : w]`.
pub fn point3<S>(x: S, y: S, z: S, w: S) -> HomPoint3<S> {
    HomCoords::new([x, y, z, w])
}
