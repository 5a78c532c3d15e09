//! Matrix exponential by scaling-and-squaring with a truncated series.

use super::mat::Mat;
use super::scalar::FloatScalar;

/// `exp(A)` for square floating-point matrices.
///
/// The argument is scaled by `2^-s` until its max-entry norm is at most
/// one half, the series is summed to machine precision, and the result
/// is squared back `s` times.
pub fn expm<S: FloatScalar>(a: &Mat<S>) -> Mat<S> {
    assert!(a.is_square(), "exponential of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Mat::zeros(0, 0);
    }
    let norm = a.max_abs() * n as f64;
    let mut s = 0u32;
    while norm / f64::powi(2.0, s as i32) > 0.5 {
        s += 1;
        // 2^-60 scaling of a finite-norm matrix always reaches 0.5.
        assert!(s < 64, "matrix norm too large for exponential scaling");
    }
    let scale = S::from_ratio(1, 1i64 << s.min(62));
    let scaled = if s > 0 { a.scale(&scale) } else { a.clone() };

    let mut result: Mat<S> = Mat::identity(n);
    let mut term: Mat<S> = Mat::identity(n);
    for k in 1..=40u32 {
        term = term.matmul(&scaled).scale(&S::from_ratio(1, k as i64));
        result = result.add_mat(&term);
        if term.max_abs() <= 1e-18 * result.max_abs().max(1.0) {
            break;
        }
    }
    for _ in 0..s {
        result = result.matmul(&result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;

    #[test]
    fn exponential_of_zero_is_identity() {
        let z: Mat<f64> = Mat::zeros(4, 4);
        assert!(expm(&z).approx_eq(&Mat::identity(4), 1e-15));
    }

    #[test]
    fn diagonal_exponentiates_entrywise() {
        let d = Mat::from_diag(&[1.0f64, -2.0, 0.5]);
        let e = expm(&d);
        for (i, x) in [1.0f64, -2.0, 0.5].iter().enumerate() {
            assert!((e.at(i, i) - x.exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn rotation_generator_gives_cosine_sine() {
        // exp(t·[[0,-1],[1,0]]) = [[cos t, -sin t],[sin t, cos t]].
        let t = 0.7362f64;
        let g = Mat::from_rows(vec![vec![0.0, -t], vec![t, 0.0]]);
        let e = expm(&g);
        assert!((e.at(0, 0) - t.cos()).abs() < 1e-13);
        assert!((e.at(1, 0) - t.sin()).abs() < 1e-13);
    }

    #[test]
    fn imaginary_scalar_gives_unit_circle() {
        // exp(iθ) on a 1x1 complex matrix.
        let theta = std::f64::consts::PI / 3.0;
        let m = Mat::from_rows(vec![vec![C64::new(0.0, theta)]]);
        let e = expm(&m);
        let z = *e.at(0, 0);
        assert!((z.re - 0.5).abs() < 1e-13);
        assert!((z.im - (3.0f64).sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn group_law_on_commuting_arguments() {
        let a = Mat::from_rows(vec![vec![0.3f64, 0.1], vec![0.1, -0.2]]);
        let two_a = a.scale(&2.0);
        let lhs = expm(&two_a);
        let e = expm(&a);
        let rhs = &e * &e;
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn large_norm_argument_survives_scaling() {
        // Rotation by 50 radians: still orthogonal with determinant-like
        // column norms equal to one.
        let g = Mat::from_rows(vec![vec![0.0, -50.0], vec![50.0, 0.0]]);
        let e = expm(&g);
        assert!((e.at(0, 0) - 50.0f64.cos()).abs() < 1e-9);
        let col_norm = (e.at(0, 0).powi(2) + e.at(1, 0).powi(2)).sqrt();
        assert!((col_norm - 1.0).abs() < 1e-11);
    }
}
