//! Independent reference implementations used to arbitrate the projective
//! paths.
//!
//! Nothing here shares code with [`crate::cross`] or [`crate::geom`]: the
//! determinant expands along columns (the cross products expand along
//! rows), the solvers divide where the projective pipeline multiplies, and
//! rank runs a fraction-free elimination of its own. When a test or
//! benchmark claims a projective result is right, "right" is defined by
//! this module evaluated over exact scalars.

use crate::geom::LinSystem;
use crate::homog::max_abs;
use crate::scalar::{Field, Ring, Tolerance};

/// Largest dimension the oracles accept; everything in this crate is 5
/// components or fewer.
pub const MAX_DIM: usize = 5;

/// Oracle failures.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    /// The determinant is only defined for square matrices.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare {
        /// Row count.
        rows: usize,
        /// Column count.
        cols: usize,
    },
    /// Dimensions must be in `1..=MAX_DIM`.
    #[error("dimension out of range ({rows}x{cols}, limit {MAX_DIM})")]
    DimensionOutOfRange {
        /// Row count.
        rows: usize,
        /// Column count.
        cols: usize,
    },
    /// Row-major data length must equal `rows * cols`.
    #[error("data length {len} does not match {rows}x{cols}")]
    ShapeMismatch {
        /// Row count.
        rows: usize,
        /// Column count.
        cols: usize,
        /// Supplied element count.
        len: usize,
    },
    /// The coefficient matrix classified as singular.
    #[error("coefficient matrix is singular")]
    SingularMatrix,
}

/// A small dense row-major matrix, at most [`MAX_DIM`] in either direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> DenseMatrix<S> {
    /// Wraps row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self, OracleError> {
        if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
            return Err(OracleError::DimensionOutOfRange { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(OracleError::ShapeMismatch { rows, cols, len: data.len() });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    /// Builds from nested rows.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, OracleError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(OracleError::ShapeMismatch { rows: r, cols: c, len: 0 });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Element at `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

/// Exact cofactor-expansion determinant, expanding along the leading
/// column at every level (the cross products expand along rows, keeping
/// the two computations structurally independent).
pub fn det<S: Ring>(m: &DenseMatrix<S>) -> Result<S, OracleError> {
    if m.rows != m.cols {
        return Err(OracleError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    Ok(det_rec(m, &rows, 0))
}

fn det_rec<S: Ring>(m: &DenseMatrix<S>, rows: &[usize], col: usize) -> S {
    if rows.len() == 1 {
        return m.get(rows[0], col).clone();
    }
    let mut acc = S::zero();
    for (pos, &r) in rows.iter().enumerate() {
        let coeff = m.get(r, col).clone();
        if coeff.is_zero() {
            continue;
        }
        let rest: Vec<usize> =
            rows.iter().copied().enumerate().filter(|&(i, _)| i != pos).map(|(_, v)| v).collect();
        let term = coeff * det_rec(m, &rest, col + 1);
        acc = if pos % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// A magnitude scale for determinant zero tests: the product of row
/// maximum magnitudes (a crude Hadamard-style bound).
fn det_scale<S: Ring>(m: &DenseMatrix<S>) -> S {
    let mut scale = S::one();
    for r in 0..m.rows {
        let row: Vec<S> = (0..m.cols).map(|c| m.get(r, c).clone()).collect();
        scale = scale * max_abs(&row);
    }
    scale
}

fn system_matrix<S: Ring>(sys: &LinSystem<S>) -> DenseMatrix<S> {
    let n = sys.n();
    let data: Vec<S> = (0..n).flat_map(|i| (0..n).map(move |j| sys.a(i, j).clone())).collect();
    DenseMatrix::new(n, n, data).expect("system dimensions validated on construction")
}

/// Solves `A x = b` by explicit determinant ratios: `x_i` is the
/// determinant of `A` with column `i` replaced by `b`, divided by
/// `det(A)`. Fails when `det(A)` classifies as zero.
pub fn cramer_solve<S: Field>(sys: &LinSystem<S>, tol: &Tolerance) -> Result<Vec<S>, OracleError> {
    let n = sys.n();
    let a = system_matrix(sys);
    let d = det(&a).expect("square by construction");
    if d.is_zero_rel(&det_scale(&a), tol.eps_w) {
        return Err(OracleError::SingularMatrix);
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut ai = a.clone();
        for r in 0..n {
            ai.set(r, i, sys.b(r).clone());
        }
        let di = det(&ai).expect("square by construction");
        out.push(di / d.clone());
    }
    Ok(out)
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting and
/// back-substitution - the per-step-division path the projective pipeline
/// avoids. Fails when the best available pivot classifies as zero
/// relative to the largest magnitude in `A`.
pub fn gauss_solve<S: Field>(sys: &LinSystem<S>, tol: &Tolerance) -> Result<Vec<S>, OracleError> {
    let n = sys.n();
    let mut m = {
        // Augmented [A | b].
        let data: Vec<S> = (0..n)
            .flat_map(|i| (0..n).map(move |j| sys.a(i, j).clone()).chain([sys.b(i).clone()]))
            .collect();
        DenseMatrix { rows: n, cols: n + 1, data }
    };
    let scale = {
        let a = system_matrix(sys);
        max_abs(&a.data)
    };

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| {
                let ax = m.get(x, col).abs();
                let ay = m.get(y, col).abs();
                ax.partial_cmp(&ay).expect("magnitudes are comparable")
            })
            .expect("non-empty pivot range");
        if m.get(pivot_row, col).is_zero_rel(&scale, tol.eps_w) {
            return Err(OracleError::SingularMatrix);
        }
        m.swap_rows(col, pivot_row);
        for r in (col + 1)..n {
            let factor = m.get(r, col).clone() / m.get(col, col).clone();
            for c in col..=n {
                let v = m.get(r, c).clone() - factor.clone() * m.get(col, c).clone();
                m.set(r, c, v);
            }
        }
    }

    let mut x: Vec<S> = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = m.get(i, n).clone();
        for j in (i + 1)..n {
            acc = acc - m.get(i, j).clone() * x[j].clone();
        }
        x[i] = acc / m.get(i, i).clone();
    }
    Ok(x)
}

/// Matrix rank by fraction-free elimination (two-term cross-multiplication
/// update divided exactly by the previous pivot, so intermediate growth
/// stays polynomial). Exact over exact scalars; pivot tests use literal
/// zero, which is the intended use - rank questions should be asked of
/// integer or rational data.
pub fn rank<S: Ring>(m: &DenseMatrix<S>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rk = 0;
    let mut prev = S::one();
    for col in 0..cols {
        let Some(pivot_row) = (rk..rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(rk, pivot_row);
        for r in (rk + 1)..rows {
            for c in (col + 1)..cols {
                let v = a.get(rk, col).clone() * a.get(r, c).clone()
                    - a.get(r, col).clone() * a.get(rk, c).clone();
                a.set(r, c, v.exact_div(&prev));
            }
            a.set(r, col, S::zero());
        }
        prev = a.get(rk, col).clone();
        rk += 1;
        if rk == rows {
            break;
        }
    }
    rk
}
