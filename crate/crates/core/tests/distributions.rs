//! Goodness of fit of the building-block samplers against laws written out
//! independently here.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::distribution::{Beta, ContinuousCDF};

use beta_ensembles::distributions::{
    dirichlet_moment, sample_beta_sym, sample_simplex, sample_sphere, sample_theta, BetaSymParam, ThetaParam,
};
use beta_ensembles::ks::{ks_one_sample, ks_two_sample};
use beta_ensembles::rng::RngStream;

const N: usize = 20_000;
const LEVEL: f64 = 1e-3;

fn thetas(nu: f64, seed: u64) -> Vec<Complex64> {
    let p = ThetaParam::new(nu).unwrap();
    let mut r = RngStream::new(seed, 0);
    (0..N).map(|_| sample_theta(p, &mut r)).collect()
}

#[test]
fn theta_radius_and_phase() {
    for (i, nu) in [2.0, 3.0, 5.5, 12.0].into_iter().enumerate() {
        let z = thetas(nu, 100 + i as u64);
        let r2: Vec<f64> = z.iter().map(|z| z.norm_sqr()).collect();
        let p = ks_one_sample(&r2, |s| 1.0 - (1.0 - s).powf((nu - 1.0) / 2.0)).p_value;
        assert!(p > LEVEL, "radius ν={nu}: p={p}");
        let ph: Vec<f64> = z.iter().map(|z| z.arg() + PI).collect();
        let p = ks_one_sample(&ph, |t| t / (2.0 * PI)).p_value;
        assert!(p > LEVEL, "phase ν={nu}: p={p}");
    }
}

#[test]
fn theta_one_is_the_circle() {
    let z = thetas(1.0, 7);
    assert!(z.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15));
}

#[test]
fn theta_matches_sphere_projection() {
    // (x_1, x_2) of a uniform point on S^ν ⊂ R^{ν+1} is Θ_ν-distributed.
    for nu in [3usize, 4] {
        let mut r = RngStream::new(11, nu as u64);
        let proj: Vec<f64> = (0..N)
            .map(|_| {
                let x = sample_sphere(nu, &mut r).unwrap();
                x[0] * x[0] + x[1] * x[1]
            })
            .collect();
        let direct: Vec<f64> = thetas(nu as f64, 12 + nu as u64).iter().map(|z| z.norm_sqr()).collect();
        let p = ks_two_sample(&proj, &direct).p_value;
        assert!(p > LEVEL, "ν={nu}: p={p}");
    }
}

#[test]
fn beta_sym_against_statrs() {
    for (i, (s, t)) in [(0.5, 0.5), (1.0, 3.0), (2.5, 0.7), (8.0, 8.0)].into_iter().enumerate() {
        let law = BetaSymParam::new(s, t).unwrap();
        let mut r = RngStream::new(21, i as u64);
        let xs: Vec<f64> = (0..N).map(|_| sample_beta_sym(law, &mut r)).collect();
        let d = Beta::new(s, t).unwrap();
        let p = ks_one_sample(&xs, |x| 1.0 - d.cdf((1.0 - x) / 2.0)).p_value;
        assert!(p > LEVEL, "B({s},{t}): p={p}");
        let mean = xs.iter().sum::<f64>() / N as f64;
        assert!((mean - law.mean()).abs() < 4.0 / (N as f64).sqrt(), "B({s},{t}) mean {mean}");
        assert!((law.mean() - (t - s) / (s + t)).abs() < 1e-15);
    }
}

#[test]
fn simplex_marginal_and_moment() {
    let n = 5;
    let mut r = RngStream::new(31, 0);
    let w: Vec<Vec<f64>> = (0..N).map(|_| sample_simplex(n, &mut r).unwrap()).collect();
    assert!(w.iter().all(|w| (w.iter().sum::<f64>() - 1.0).abs() < 1e-14));
    // μ_1 ~ Beta(1, n-1)
    let first: Vec<f64> = w.iter().map(|w| w[0]).collect();
    let p = ks_one_sample(&first, |x| 1.0 - (1.0 - x).powi(n as i32 - 1)).p_value;
    assert!(p > LEVEL, "p={p}");
    // E μ_1 μ_2² = 4! Γ(2)Γ(3) / Γ(8) = 48/5040
    let exact = 48.0 / 5040.0;
    assert!((dirichlet_moment(&[1.0, 2.0, 0.0, 0.0, 0.0]).unwrap() - exact).abs() < 1e-15);
    let vals: Vec<f64> = w.iter().map(|w| w[0] * w[1] * w[1]).collect();
    let mean = vals.iter().sum::<f64>() / N as f64;
    let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / N as f64).sqrt();
    assert!((mean - exact).abs() < 4.0 * sd / (N as f64).sqrt());
}

#[test]
fn samplers_are_reproducible() {
    let a: Vec<Complex64> = thetas(3.0, 99);
    let b: Vec<Complex64> = thetas(3.0, 99);
    assert_eq!(a, b);
    let c: Vec<Complex64> = thetas(3.0, 98);
    assert_ne!(a, c);
}
