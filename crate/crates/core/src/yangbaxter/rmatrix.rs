use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use super::check_pole;
use crate::error::Result;

type Matrix8 = SMatrix<Complex64, 8, 8>;

/// The gl(2)-invariant R-matrix with `b(u) = u/(u+η)` and `c(u) = η/(u+η)`.
pub fn r_matrix(u: Complex64, eta: f64) -> Result<Matrix4<Complex64>> {
    let denom = u + eta;
    check_pole(denom, || format!("R-matrix at u = {u} has a pole (u + eta = 0, eta = {eta})"))?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let b = u / denom;
    let c = Complex64::new(eta, 0.0) / denom;
    #[rustfmt::skip]
    let r = Matrix4::new(
        one,  zero, zero, zero,
        zero, b,    c,    zero,
        zero, c,    b,    zero,
        zero, zero, zero, one,
    );
    Ok(r)
}

/// Embeds a two-space operator acting on factors `(first, second)` of
/// `C² ⊗ C² ⊗ C²`, identity on the remaining factor.
fn embed(r: &Matrix4<Complex64>, first: usize, second: usize) -> Matrix8 {
    let bit = |idx: usize, factor: usize| (idx >> (2 - factor)) & 1;
    let other = 3 - first - second;
    Matrix8::from_fn(|row, col| {
        if bit(row, other) != bit(col, other) {
            return Complex64::new(0.0, 0.0);
        }
        let r_row = 2 * bit(row, first) + bit(row, second);
        let r_col = 2 * bit(col, first) + bit(col, second);
        r[(r_row, r_col)]
    })
}

/// `max |R12(u−v) R13(u) R23(v) − R23(v) R13(u) R12(u−v)|`.
pub fn ybe_residual(u: Complex64, v: Complex64, eta: f64) -> Result<f64> {
    let r12 = embed(&r_matrix(u - v, eta)?, 0, 1);
    let r13 = embed(&r_matrix(u, eta)?, 0, 2);
    let r23 = embed(&r_matrix(v, eta)?, 1, 2);
    let lhs = r12 * r13 * r23;
    let rhs = r23 * r13 * r12;
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let eta = rng.gen_range(0.1..3.0);
            let r = r_matrix(u, eta).unwrap();
            assert!((r[(1, 1)] + r[(1, 2)] - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_spectral_parameter_is_permutation() {
        let r = r_matrix(c(0.0, 0.0), 0.7).unwrap();
        assert_eq!(r[(1, 1)], c(0.0, 0.0));
        assert_eq!(r[(1, 2)], c(1.0, 0.0));
        assert_eq!(r[(2, 1)], c(1.0, 0.0));
    }

    #[test]
    fn large_u_approaches_identity() {
        let r = r_matrix(c(1e8, 0.0), 1.3).unwrap();
        let dev = (r - Matrix4::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev <= 1e-7);
    }

    #[test]
    fn pole_is_an_error() {
        assert!(matches!(r_matrix(c(-0.5, 0.0), 0.5), Err(Error::Pole(_))));
        assert!(ybe_residual(c(0.2, 0.0), c(1.2, 0.0), 1.0).is_err());
    }

    #[test]
    fn yang_baxter_examples() {
        assert!(ybe_residual(c(0.7, 0.0), c(-0.3, 0.0), 1.1).unwrap() <= 1e-13);
        assert!(ybe_residual(c(0.4, 0.2), c(0.4, 0.2), 0.9).unwrap() <= 1e-15);
    }

    #[test]
    fn embedding_respects_identity_factor() {
        let r = r_matrix(c(0.3, 0.0), 1.0).unwrap();
        let r13 = embed(&r, 0, 2);
        // |0 1 0> -> factor 2 fixed at 1, (f0, f2) = (0, 0) untouched
        assert_eq!(r13[(0b010, 0b010)], c(1.0, 0.0));
        assert_eq!(r13[(0b001, 0b100)], r[(1, 2)]);
    }
}
