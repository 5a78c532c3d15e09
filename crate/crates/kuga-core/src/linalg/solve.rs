//! Gaussian-elimination solvers: linear systems, nullspaces, and a
//! Hermitian least-squares helper, generic over the scalar field.

use super::mat::Mat;
use super::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("singular system (rank deficiency detected at pivot {0})")]
    Singular(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Row echelon reduction with partial pivoting by modulus, searching for
/// pivots only in the first `pivot_cols` columns (later columns are
/// reduced but never chosen as pivots — they may hold right-hand sides).
/// Returns the pivot column for each pivot row.  Entries below `tol`
/// (relative to the matrix scale) are treated as zero; exact scalars
/// ignore `tol`.
fn row_reduce<S: Scalar>(m: &mut Mat<S>, pivot_cols: usize, tol: f64) -> Vec<usize> {
    let rows = m.rows();
    let cols = m.cols();
    let scale = m.max_abs().max(1.0);
    let threshold = tol * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        if r >= rows {
            break;
        }
        // Find the best pivot in column c at or below row r.
        let (best_row, best_abs) = (r..rows)
            .map(|i| (i, m.at(i, c).abs_f64()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if m.at(best_row, c).is_negligible(threshold) || best_abs == 0.0 {
            continue;
        }
        m.swap_rows(r, best_row);
        let inv = S::one() / m.at(r, c).clone();
        for j in c..cols {
            let v = inv.clone() * m.at(r, j).clone();
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || m.at(i, c).is_zero() {
                continue;
            }
            let f = m.at(i, c).clone();
            for j in c..cols {
                let v = m.at(i, j).clone() - f.clone() * m.at(r, j).clone();
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the (right) nullspace of `a`, one column vector per basis
/// element.  `tol` is the relative rank threshold for floating scalars.
pub fn nullspace<S: Scalar>(a: &Mat<S>, tol: f64) -> Vec<Mat<S>> {
    let mut m = a.clone();
    let pivots = row_reduce(&mut m, a.cols(), tol);
    let cols = a.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = Mat::zeros(cols, 1);
        v.set(f, 0, S::one());
        for (row, &p) in pivots.iter().enumerate() {
            v.set(p, 0, -m.at(row, f).clone());
        }
        basis.push(v);
    }
    basis
}

/// Solve the square system `a x = b` (multiple right-hand sides allowed
/// as columns of `b`).
pub fn solve_linear<S: Scalar>(a: &Mat<S>, b: &Mat<S>, tol: f64) -> Result<Mat<S>, SolveError> {
    if !a.is_square() {
        return Err(SolveError::NotSquare(a.rows(), a.cols()));
    }
    if a.rows() != b.rows() {
        return Err(SolveError::Shape(format!(
            "{} equations vs {} right-hand rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.rows();
    let mut aug = Mat::zeros(n, n + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, n, b);
    let pivots = row_reduce(&mut aug, n, tol);
    if pivots.len() < n {
        return Err(SolveError::Singular(pivots.len()));
    }
    Ok(aug.block(0, n, n, b.cols()))
}

/// Least-squares solution of an overdetermined `a x = b` through the
/// normal equations `aᴴa x = aᴴ b` (assumes full column rank).
pub fn lstsq_hermitian<S: Scalar>(a: &Mat<S>, b: &Mat<S>, tol: f64) -> Result<Mat<S>, SolveError> {
    let ah = a.conj_t();
    solve_linear(&ah.matmul(a), &ah.matmul(b), tol)
}
