//! Extended cross products: the vector of signed maximal minors of a
//! `k x (k+1)` coefficient matrix.
//!
//! For rows `a, b` (three components), `a, b, c` (four), or `a, b, c, d`
//! (five), component `k` of the product is the cofactor `(-1)^k * M_k`,
//! where `M_k` is the determinant of the square matrix left after deleting
//! column `k` (indices from zero). That convention - cofactor expansion
//! along an imagined top row - is normative here; the antisymmetric-matrix
//! forms ([`cross3_matrix`], [`cross4_matrix`], [`cross5_matrix`]) and the
//! dot/cross decomposition ([`cross4_decomposed`]) are assembled to agree
//! with it exactly, and the property tests pin that agreement down.
//!
//! The result is orthogonal to every input row, flips sign when two
//! arguments swap, is linear in each argument, and vanishes precisely when
//! the rows are linearly dependent. Everything here is division-free, so
//! `i128` inputs within the envelope documented in [`crate::scalar`]
//! produce exact results.

use crate::scalar::Ring;

/// Dot product of two equally sized tuples.
pub fn dot<S: Ring, const M: usize>(a: &[S; M], b: &[S; M]) -> S {
    let mut acc = S::zero();
    for i in 0..M {
        acc = acc + a[i].clone() * b[i].clone();
    }
    acc
}

/// 2x2 determinant `a*d - b*c`.
#[inline]
fn det2<S: Ring>(a: &S, b: &S, c: &S, d: &S) -> S {
    a.clone() * d.clone() - b.clone() * c.clone()
}

/// 3x3 determinant of rows `r0, r1, r2` restricted to columns `c`,
/// expanded along the first row.
#[inline]
fn det3_cols<S: Ring>(r0: &[S], r1: &[S], r2: &[S], c: [usize; 3]) -> S {
    let [i, j, k] = c;
    r0[i].clone() * det2(&r1[j], &r1[k], &r2[j], &r2[k])
        - r0[j].clone() * det2(&r1[i], &r1[k], &r2[i], &r2[k])
        + r0[k].clone() * det2(&r1[i], &r1[j], &r2[i], &r2[j])
}

/// 4x4 determinant of rows restricted to columns `c`, expanded along the
/// first row with 3x3 minors.
#[inline]
fn det4_cols<S: Ring>(r0: &[S], r1: &[S], r2: &[S], r3: &[S], c: [usize; 4]) -> S {
    let mut acc = S::zero();
    for (pos, &col) in c.iter().enumerate() {
        let rest = cols_excluding_at(&c, pos);
        let term = r0[col].clone() * det3_cols(r1, r2, r3, rest);
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// The columns of `c` with position `pos` removed.
#[inline]
fn cols_excluding_at<const N: usize, const L: usize>(c: &[usize; N], pos: usize) -> [usize; L] {
    debug_assert_eq!(L, N - 1);
    let mut out = [0usize; L];
    let mut k = 0;
    for (i, &v) in c.iter().enumerate() {
        if i != pos {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// `0..M` with column `j` removed.
#[inline]
fn cols_excluding<const M: usize, const L: usize>(j: usize) -> [usize; L] {
    debug_assert_eq!(L, M - 1);
    let mut out = [0usize; L];
    let mut k = 0;
    for c in 0..M {
        if c != j {
            out[k] = c;
            k += 1;
        }
    }
    out
}

/// Classic 3D cross product
/// `(a_1*b_2 - a_2*b_1, a_2*b_0 - a_0*b_2, a_0*b_1 - a_1*b_0)`.
pub fn cross3<S: Ring>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        det2(&a[1], &a[2], &b[1], &b[2]),
        -det2(&a[0], &a[2], &b[0], &b[2]),
        det2(&a[0], &a[1], &b[0], &b[1]),
    ]
}

/// Ternary cross product of three 4-component rows: component `k` is
/// `(-1)^k` times the 3x3 minor that skips column `k`.
pub fn cross4<S: Ring>(a: &[S; 4], b: &[S; 4], c: &[S; 4]) -> [S; 4] {
    std::array::from_fn(|j| {
        let cols: [usize; 3] = cols_excluding::<4, 3>(j);
        let minor = det3_cols(a, b, c, cols);
        if j % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

/// Quaternary cross product of four 5-component rows: component `k` is
/// `(-1)^k` times the 4x4 minor that skips column `k`.
pub fn cross5<S: Ring>(a: &[S; 5], b: &[S; 5], c: &[S; 5], d: &[S; 5]) -> [S; 5] {
    std::array::from_fn(|j| {
        let cols: [usize; 4] = cols_excluding::<5, 4>(j);
        let minor = det4_cols(a, b, c, d, cols);
        if j % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

/// An `M x M` antisymmetric matrix representing a partially applied cross
/// product: multiplying it by the final argument yields the product.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMat<S, const M: usize> {
    rows: [[S; M]; M],
}

impl<S: Ring, const M: usize> SkewMat<S, M> {
    /// Matrix-vector product.
    pub fn apply(&self, v: &[S; M]) -> [S; M] {
        std::array::from_fn(|i| dot(&self.rows[i], v))
    }

    /// Row access (mainly for inspecting antisymmetry).
    pub fn rows(&self) -> &[[S; M]; M] {
        &self.rows
    }
}

/// Matrix form of [`cross3`]: `cross3_matrix(a).apply(&b) == cross3(&a, &b)`.
pub fn cross3_matrix<S: Ring>(a: &[S; 3]) -> SkewMat<S, 3> {
    let z = S::zero;
    SkewMat {
        rows: [
            [z(), -a[2].clone(), a[1].clone()],
            [a[2].clone(), z(), -a[0].clone()],
            [-a[1].clone(), a[0].clone(), z()],
        ],
    }
}

/// All 2x2 sub-determinants `d_ij = a_i*b_j - a_j*b_i` (for `i < j`) of the
/// 2 x M matrix with rows `a, b`, computed once so that many final
/// arguments can reuse them.
#[derive(Clone, Debug, PartialEq)]
pub struct CofactorTable2<S, const M: usize> {
    /// Upper triangle in lexicographic order: (0,1), (0,2), ..., (M-2,M-1).
    delta: Vec<S>,
}

impl<S: Ring, const M: usize> CofactorTable2<S, M> {
    /// Computes every `d_ij` for the rows `a, b`.
    pub fn new(a: &[S; M], b: &[S; M]) -> Self {
        let mut delta = Vec::with_capacity(M * (M - 1) / 2);
        for i in 0..M {
            for j in (i + 1)..M {
                delta.push(det2(&a[i], &a[j], &b[i], &b[j]));
            }
        }
        CofactorTable2 { delta }
    }

    /// `d_ij`, antisymmetric in its indices: `get(j, i) == -get(i, j)`,
    /// and `get(i, i)` is zero.
    pub fn get(&self, i: usize, j: usize) -> S {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => S::zero(),
            Ordering::Less => self.delta[Self::index(i, j)].clone(),
            Ordering::Greater => -self.delta[Self::index(j, i)].clone(),
        }
    }

    fn index(i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < M);
        // Entries before row i, then the offset within row i.
        i * (2 * M - i - 1) / 2 + (j - i - 1)
    }
}

/// All 3x3 sub-determinants `d_ijk` (for `i < j < k`) of the 3 x M matrix
/// with rows `a, b, c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CofactorTable3<S, const M: usize> {
    /// Triples in lexicographic order: (0,1,2), (0,1,3), ...
    delta: Vec<S>,
}

impl<S: Ring, const M: usize> CofactorTable3<S, M> {
    /// Computes every `d_ijk` for the rows `a, b, c`.
    pub fn new(a: &[S; M], b: &[S; M], c: &[S; M]) -> Self {
        let mut delta = Vec::new();
        for i in 0..M {
            for j in (i + 1)..M {
                for k in (j + 1)..M {
                    delta.push(det3_cols(a, b, c, [i, j, k]));
                }
            }
        }
        CofactorTable3 { delta }
    }

    /// `d_ijk`, totally antisymmetric: any index swap negates, repeated
    /// indices give zero.
    pub fn get(&self, i: usize, j: usize, k: usize) -> S {
        if i == j || j == k || i == k {
            return S::zero();
        }
        // Sort the three indices, tracking permutation parity.
        let mut idx = [i, j, k];
        let mut swaps = 0;
        for x in 0..2 {
            for y in 0..(2 - x) {
                if idx[y] > idx[y + 1] {
                    idx.swap(y, y + 1);
                    swaps += 1;
                }
            }
        }
        let v = self.delta[Self::index(idx[0], idx[1], idx[2])].clone();
        if swaps % 2 == 0 {
            v
        } else {
            -v
        }
    }

    fn index(i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < j && j < k && k < M);
        let mut n = 0;
        for x in 0..M {
            for y in (x + 1)..M {
                for z in (y + 1)..M {
                    if (x, y, z) == (i, j, k) {
                        return n;
                    }
                    n += 1;
                }
            }
        }
        unreachable!("index triple in range")
    }
}

/// Matrix form of [`cross4`] with the first two arguments fixed:
/// `cross4_matrix(a, b).apply(&c) == cross4(&a, &b, &c)`.
///
/// Row `j` holds the coefficients of the final argument in the cofactor
/// `(-1)^j * M_j`, read off by expanding each minor along its last row:
/// entry `(j, l)` is `(-1)^j * (-1)^p * d_uv`, where `p` is the position
/// of column `l` among the three columns the minor keeps and `u < v` are
/// the two it keeps after also dropping `l`. The resulting matrix is
/// antisymmetric.
pub fn cross4_matrix<S: Ring>(a: &[S; 4], b: &[S; 4]) -> SkewMat<S, 4> {
    let table = CofactorTable2::<S, 4>::new(a, b);
    let rows = std::array::from_fn(|j| {
        let cols: [usize; 3] = cols_excluding::<4, 3>(j);
        std::array::from_fn(|l| {
            if l == j {
                return S::zero();
            }
            let p = cols.iter().position(|&c| c == l).expect("l != j");
            let rest: [usize; 2] = cols_excluding_at(&cols, p);
            let v = table.get(rest[0], rest[1]);
            let negate = (j % 2 == 1) ^ (p % 2 == 1);
            if negate {
                -v
            } else {
                v
            }
        })
    });
    SkewMat { rows }
}

/// Matrix form of [`cross5`] with the first three arguments fixed:
/// `cross5_matrix(a, b, c).apply(&d) == cross5(&a, &b, &c, &d)`.
///
/// Same construction as [`cross4_matrix`] one size up: entry `(j, l)` is
/// `(-1)^j * (-1)^(p+1) * d_uvw` with `p` the position of `l` among the
/// four columns minor `j` keeps and `u < v < w` the remaining three.
pub fn cross5_matrix<S: Ring>(a: &[S; 5], b: &[S; 5], c: &[S; 5]) -> SkewMat<S, 5> {
    let table = CofactorTable3::<S, 5>::new(a, b, c);
    let rows = std::array::from_fn(|j| {
        let cols: [usize; 4] = cols_excluding::<5, 4>(j);
        std::array::from_fn(|l| {
            if l == j {
                return S::zero();
            }
            let p = cols.iter().position(|&c| c == l).expect("l != j");
            let rest: [usize; 3] = cols_excluding_at(&cols, p);
            let v = table.get(rest[0], rest[1], rest[2]);
            let negate = (j % 2 == 1) ^ (p % 2 == 0);
            if negate {
                -v
            } else {
                v
            }
        })
    });
    SkewMat { rows }
}

/// [`cross4`] factored into classic dot and cross products of the
/// three-component sub-tuples, the arrangement that maps onto shader-style
/// `dot`/`cross` intrinsics:
///
/// ```text
/// r.x =  dot(a.yzw, cross(b.yzw, c.yzw))
/// r.y = -dot(a.xzw, cross(b.xzw, c.xzw))
/// r.z =  dot(a.xyw, cross(b.xyw, c.xyw))
/// r.w = -dot(a.xyz, cross(b.xyz, c.xyz))
/// ```
pub fn cross4_decomposed<S: Ring>(a: &[S; 4], b: &[S; 4], c: &[S; 4]) -> [S; 4] {
    fn pick<S: Ring>(v: &[S; 4], idx: [usize; 3]) -> [S; 3] {
        std::array::from_fn(|k| v[idx[k]].clone())
    }
    std::array::from_fn(|j| {
        let cols: [usize; 3] = cols_excluding::<4, 3>(j);
        let triple = dot(&pick(a, cols), &cross3(&pick(b, cols), &pick(c, cols)));
        if j % 2 == 0 {
            triple
        } else {
            -triple
        }
    })
}
