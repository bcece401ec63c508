//! Randomised invariants over Verblunsky sequences.

use num_complex::Complex64;
use proptest::prelude::*;

use beta_ensembles::cmv::{build_cmv, cmv_spectral};
use beta_ensembles::hist::histogram;
use beta_ensembles::opuc::{measure_to_verblunsky, szego_evaluate, VerblunskySeq};
use beta_ensembles::szego::{folded_phi2n, geronimus, jacobi_spectral};

fn complex_seq() -> impl Strategy<Value = VerblunskySeq> {
    (prop::collection::vec((0.0..0.9f64, 0.0..std::f64::consts::TAU), 0..10), 0.0..std::f64::consts::TAU).prop_map(
        |(inner, last)| {
            let mut a: Vec<Complex64> = inner.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect();
            a.push(Complex64::from_polar(1.0, last));
            VerblunskySeq::new(a).unwrap()
        },
    )
}

fn real_seq() -> impl Strategy<Value = VerblunskySeq> {
    (1usize..8).prop_flat_map(|n| prop::collection::vec(-0.9..0.9f64, 2 * n - 1)).prop_map(|mut a| {
        a.push(-1.0);
        VerblunskySeq::from_real(&a).unwrap()
    })
}

proptest! {
    #[test]
    fn szego_reversal_has_equal_modulus_on_circle(v in complex_seq(), t in 0.0..std::f64::consts::TAU) {
        let z = Complex64::from_polar(1.0, t);
        for k in 0..=v.len() {
            let (p, ps) = szego_evaluate(&v, z, k).unwrap();
            prop_assert!((p.norm() - ps.norm()).abs() < 1e-10 * (1.0 + p.norm()));
        }
    }

    #[test]
    fn cmv_is_unitary(v in complex_seq()) {
        prop_assert!(build_cmv(&v).lm().unitarity_defect() < 1e-12);
    }

    #[test]
    fn spectral_round_trip(v in complex_seq()) {
        let m = cmv_spectral(&v).unwrap();
        prop_assume!(m.len() < 2 || m.min_gap() > 1e-3);
        prop_assume!(m.weights.iter().all(|&w| w > 1e-6));
        let back = measure_to_verblunsky(&m).unwrap();
        for k in 0..v.len() {
            prop_assert!((back.alpha(k) - v.alpha(k)).norm() < 1e-6, "k={} {} vs {}", k, back.alpha(k), v.alpha(k));
        }
    }

    #[test]
    fn geronimus_is_a_jacobi_matrix_on_the_interval(v in real_seq()) {
        let j = geronimus(&v).unwrap();
        prop_assert!(j.a.iter().all(|&a| a > 0.0));
        let nu = jacobi_spectral(&j).unwrap();
        prop_assert!(nu.xs.iter().all(|x| x.abs() < 2.0 + 1e-10));
        prop_assert!((nu.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn folding_matches_recurrence(v in real_seq()) {
        let folded = folded_phi2n(&v).unwrap();
        prop_assert!(folded.max_coeff_diff(&geronimus(&v).unwrap().charpoly()) < 1e-9);
    }

    #[test]
    fn histogram_keeps_in_range_counts(xs in prop::collection::vec(-3.0..3.0f64, 1..200), bins in 1usize..30) {
        let h = histogram(&xs, bins, -2.0, 2.0).unwrap();
        let inside = xs.iter().filter(|x| x.abs() <= 2.0).count() as u64;
        prop_assert_eq!(h.iter().map(|b| b.count).sum::<u64>(), inside);
    }
}
