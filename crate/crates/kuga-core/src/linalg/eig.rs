//! Real symmetric eigenvalue routines: cyclic Jacobi for full spectra on
//! moderate sizes, Cholesky plus inverse iteration for the smallest
//! eigenvalue of large positive-definite matrices.

use super::mat::Mat;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EigError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric within tolerance (asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("not positive definite: pivot {index} is {value:.6e}")]
    NotPositive { index: usize, value: f64 },
    #[error("inverse iteration failed to converge")]
    NoConvergence,
}

fn check_symmetric(a: &Mat<f64>) -> Result<(), EigError> {
    if !a.is_square() {
        return Err(EigError::NotSquare(a.rows(), a.cols()));
    }
    let scale = a.max_abs().max(1.0);
    let mut worst = 0.0f64;
    for i in 0..a.rows() {
        for j in (i + 1)..a.cols() {
            worst = worst.max((a.at(i, j) - a.at(j, i)).abs());
        }
    }
    if worst > 1e-9 * scale {
        return Err(EigError::NotSymmetric(worst));
    }
    Ok(())
}

/// Full spectrum and orthonormal eigenvectors of a real symmetric matrix
/// by cyclic Jacobi rotations.  Eigenvalues ascend; eigenvectors are the
/// columns of the returned matrix, aligned with the eigenvalues.
pub fn jacobi_eigh(a: &Mat<f64>) -> Result<(Vec<f64>, Mat<f64>), EigError> {
    check_symmetric(a)?;
    let n = a.rows();
    let mut m = a.clone();
    let mut q: Mat<f64> = Mat::identity(n);
    if n <= 1 {
        let vals = (0..n).map(|i| *m.at(i, i)).collect();
        return Ok((vals, q));
    }

    let max_sweeps = 60;
    for _sweep in 0..max_sweeps {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m.at(i, j) * m.at(i, j);
            }
        }
        if off.sqrt() <= 1e-14 * m.max_abs().max(1e-300) * (n as f64) {
            break;
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = *m.at(p, r);
                if apr.abs() <= 1e-300 {
                    continue;
                }
                let app = *m.at(p, p);
                let arr = *m.at(r, r);
                let theta = (arr - app) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Apply the rotation G(p,r;c,s) on the left and right.
                for k in 0..n {
                    let mkp = *m.at(k, p);
                    let mkr = *m.at(k, r);
                    m.set(k, p, c * mkp - s * mkr);
                    m.set(k, r, s * mkp + c * mkr);
                }
                for k in 0..n {
                    let mpk = *m.at(p, k);
                    let mrk = *m.at(r, k);
                    m.set(p, k, c * mpk - s * mrk);
                    m.set(r, k, s * mpk + c * mrk);
                }
                for k in 0..n {
                    let qkp = *q.at(k, p);
                    let qkr = *q.at(k, r);
                    q.set(k, p, c * qkp - s * qkr);
                    q.set(k, r, s * qkp + c * qkr);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.at(i, i).partial_cmp(m.at(j, j)).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| *m.at(i, i)).collect();
    let vecs = Mat::from_fn(n, n, |i, j| *q.at(i, order[j]));
    Ok((vals, vecs))
}

/// Eigenvalues only, ascending.
pub fn jacobi_eigenvalues(a: &Mat<f64>) -> Result<Vec<f64>, EigError> {
    jacobi_eigh(a).map(|(vals, _)| vals)
}

/// Cholesky factorization `A = L Lᵀ` of a real symmetric
/// positive-definite matrix.
pub struct Cholesky {
    l: Mat<f64>,
}

impl Cholesky {
    pub fn new(a: &Mat<f64>) -> Result<Self, EigError> {
        check_symmetric(a)?;
        let n = a.rows();
        let mut l = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = *a.at(i, j);
                for k in 0..j {
                    sum -= l.at(i, k) * l.at(j, k);
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(EigError::NotPositive {
                            index: i,
                            value: sum,
                        });
                    }
                    l.set(i, j, sum.sqrt());
                } else {
                    l.set(i, j, sum / l.at(j, j));
                }
            }
        }
        Ok(Cholesky { l })
    }

    pub fn factor(&self) -> &Mat<f64> {
        &self.l
    }

    /// Solve `A x = b` via the two triangular solves.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.l.rows();
        assert_eq!(b.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l.at(i, k) * y[k];
            }
            y[i] = s / self.l.at(i, i);
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= self.l.at(k, i) * x[k];
            }
            x[i] = s / self.l.at(i, i);
        }
        x
    }
}

/// Smallest eigenvalue of a symmetric positive-definite matrix.
///
/// Small matrices get the full Jacobi spectrum; large ones use Cholesky
/// followed by inverse iteration with a deterministic start vector.
/// Returns an error if the matrix is not positive definite.
pub fn min_eig_posdef(a: &Mat<f64>) -> Result<f64, EigError> {
    let n = a.rows();
    if n == 0 {
        return Ok(0.0);
    }
    if n <= 400 {
        let vals = jacobi_eigenvalues(a)?;
        let min = vals[0];
        if min <= 0.0 {
            return Err(EigError::NotPositive {
                index: 0,
                value: min,
            });
        }
        return Ok(min);
    }
    let chol = Cholesky::new(a)?;
    // Deterministic pseudo-random start vector (splitmix-style hash).
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) - 0.5
        })
        .collect();
    let norm = |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>().sqrt();
    let nv = norm(&v);
    v.iter_mut().for_each(|t| *t /= nv);
    let mut lambda = f64::INFINITY;
    for _ in 0..200 {
        let w = chol.solve(&v);
        let nw = norm(&w);
        if !nw.is_finite() || nw == 0.0 {
            return Err(EigError::NoConvergence);
        }
        let next: Vec<f64> = w.iter().map(|t| t / nw).collect();
        // Rayleigh quotient vᵀAv with the normalized iterate.
        let mut av = vec![0.0; n];
        for i in 0..n {
            let row = a.row(i);
            av[i] = row.iter().zip(&next).map(|(x, y)| x * y).sum();
        }
        let rq: f64 = next.iter().zip(&av).map(|(x, y)| x * y).sum();
        if (rq - lambda).abs() <= 1e-12 * rq.abs().max(1e-300) {
            return Ok(rq);
        }
        lambda = rq;
        v = next;
    }
    Ok(lambda)
}
