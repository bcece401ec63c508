//! Haar-distributed unitary and special orthogonal matrices.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{check_domain, Result};
use crate::linalg::{real_det, CMatrix};
use crate::rng::RngStream;

/// Gram–Schmidt on the columns (twice, for stability). The resulting `Q`
/// is the QR factor with positive `R` diagonal, which makes it Haar when the
/// input has i.i.d. Gaussian entries.
fn orthonormalize_columns(m: &mut CMatrix) {
    let n = m.dim();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let dot: Complex64 = (0..n).map(|i| m[(i, k)].conj() * m[(i, j)]).sum();
                for i in 0..n {
                    let qk = m[(i, k)];
                    m[(i, j)] -= dot * qk;
                }
            }
        }
        let norm = (0..n).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            m[(i, j)] /= norm;
        }
    }
}

pub fn sample_haar_unitary(n: usize, rng: &mut RngStream) -> Result<CMatrix> {
    check_domain(n >= 1, "n", n as f64, "n >= 1")?;
    let mut m = CMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    orthonormalize_columns(&mut m);
    Ok(m)
}

/// Haar on `SO(two_n)`: Haar on `O(two_n)`, then the last column is negated
/// when the determinant is `-1`.
pub fn sample_haar_so(two_n: usize, rng: &mut RngStream) -> Result<CMatrix> {
    check_domain(
        two_n >= 2 && two_n % 2 == 0,
        "two_n",
        two_n as f64,
        "even and >= 2",
    )?;
    let mut m = CMatrix::from_fn(two_n, |_, _| Complex64::new(rng.sample(StandardNormal), 0.0));
    orthonormalize_columns(&mut m);
    let rows: Vec<Vec<f64>> = (0..two_n)
        .map(|i| (0..two_n).map(|j| m[(i, j)].re).collect())
        .collect();
    if real_det(&rows) < 0.0 {
        for i in 0..two_n {
            m[(i, two_n - 1)] = -m[(i, two_n - 1)];
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitary_to_precision() {
        let mut rng = RngStream::from_seed(41);
        for n in [1, 2, 5, 20] {
            assert!(sample_haar_unitary(n, &mut rng).unwrap().unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn so_has_unit_determinant() {
        let mut rng = RngStream::from_seed(42);
        for _ in 0..50 {
            let m = sample_haar_so(6, &mut rng).unwrap();
            assert!(m.unitarity_defect() < 1e-12);
            assert_eq!(m.max_imag(), 0.0);
            let rows: Vec<Vec<f64>> = (0..6).map(|i| (0..6).map(|j| m[(i, j)].re).collect()).collect();
            assert!((real_det(&rows) - 1.0).abs() < 1e-10);
        }
        assert!(sample_haar_so(5, &mut rng).is_err());
    }
}
