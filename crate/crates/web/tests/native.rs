//! The browser operations, exercised natively.

use beta_ensembles_web::{circular_gap_histogram, cmv_magnitudes, jacobi_eigenvalue_histogram};

fn mass(packed: &[f64]) -> f64 {
    let (lo, hi) = (packed[0], packed[1]);
    let w = (hi - lo) / (packed.len() - 2) as f64;
    packed[2..].iter().sum::<f64>() * w
}

#[test]
fn gap_histogram_is_a_density() {
    let h = circular_gap_histogram(12, 2.0, 200, 32, 1).unwrap();
    assert_eq!(h.len(), 34);
    assert!((mass(&h) - 1.0).abs() < 1e-12);
    // level repulsion: the first bin is nearly empty
    assert!(h[2] < 0.1 * h[2..].iter().cloned().fold(0.0, f64::max));
}

#[test]
fn jacobi_histogram_covers_interval() {
    let h = jacobi_eigenvalue_histogram(8, 1.0, 0.0, 2.0, 200, 20, 2).unwrap();
    assert_eq!((h[0], h[1]), (-2.0, 2.0));
    assert!((mass(&h) - 1.0).abs() < 1e-12);
    assert!(jacobi_eigenvalue_histogram(8, -1.0, 0.0, 0.0, 10, 20, 2).is_err());
}

#[test]
fn cmv_is_five_diagonal() {
    let n = 9;
    let m = cmv_magnitudes(n, 2.0, 3).unwrap();
    for i in 0..n {
        let row: f64 = (0..n).map(|j| m[i * n + j].powi(2)).sum();
        assert!((row - 1.0).abs() < 1e-12, "row {i} not unit norm");
        for j in 0..n {
            if (i as isize - j as isize).abs() > 2 {
                assert_eq!(m[i * n + j], 0.0);
            }
        }
    }
}

#[test]
fn deterministic_under_seed() {
    assert_eq!(cmv_magnitudes(6, 1.0, 4).unwrap(), cmv_magnitudes(6, 1.0, 4).unwrap());
}
