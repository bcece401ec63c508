//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each operation has a plain Rust form (tested natively) and a thin
//! `#[wasm_bindgen]` wrapper that turns errors into JavaScript exceptions.

use beta_ensembles::cmv::build_cmv;
use beta_ensembles::ensembles::{circular_alphas, sample_circular, sample_jacobi, EnsembleSpec};
use beta_ensembles::hist::{extract, histogram, Statistic};
use beta_ensembles::rng::RngStream;
use wasm_bindgen::prelude::*;

/// Flat layout returned to JavaScript: `[lo, hi, d_0, …, d_{bins-1}]`.
fn pack(lo: f64, hi: f64, densities: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out = vec![lo, hi];
    out.extend(densities);
    out
}

/// Histogram of nearest-neighbour gaps, rescaled by the mean gap `2π/n`.
pub fn circular_gap_histogram(n: usize, beta: f64, count: usize, bins: usize, seed: u64) -> Result<Vec<f64>, String> {
    let batch = sample_circular(&EnsembleSpec::circular(n, beta, seed), count).map_err(|e| e.to_string())?;
    let scale = n as f64 / (2.0 * std::f64::consts::PI);
    let gaps: Vec<f64> = extract(&batch, Statistic::Gap)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|g| g * scale)
        .collect();
    let hi = 4.0;
    let h = histogram(&gaps, bins, 0.0, hi).map_err(|e| e.to_string())?;
    Ok(pack(0.0, hi, h.iter().map(|b| b.density)))
}

/// Histogram of Jacobi-model eigenvalues on `[-2, 2]`.
pub fn jacobi_eigenvalue_histogram(n: usize, beta: f64, a: f64, b: f64, count: usize, bins: usize, seed: u64) -> Result<Vec<f64>, String> {
    let batch = sample_jacobi(&EnsembleSpec::jacobi(n, beta, a, b, seed), count).map_err(|e| e.to_string())?;
    let xs = extract(&batch, Statistic::Eigenvalue).map_err(|e| e.to_string())?;
    let h = histogram(&xs, bins, -2.0, 2.0).map_err(|e| e.to_string())?;
    Ok(pack(-2.0, 2.0, h.iter().map(|b| b.density)))
}

/// `|(LM)_{ij}|` of one random CMV matrix, row-major `n × n`.
pub fn cmv_magnitudes(n: usize, beta: f64, seed: u64) -> Result<Vec<f64>, String> {
    let v = circular_alphas(n, beta, &mut RngStream::new(seed, 0)).map_err(|e| e.to_string())?;
    let lm = build_cmv(&v).lm();
    Ok((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| lm[(i, j)].norm()).collect())
}

#[wasm_bindgen(js_name = circularGapHistogram)]
pub fn circular_gap_histogram_js(n: usize, beta: f64, count: usize, bins: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    circular_gap_histogram(n, beta, count, bins, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = jacobiEigenvalueHistogram)]
pub fn jacobi_eigenvalue_histogram_js(n: usize, beta: f64, a: f64, b: f64, count: usize, bins: usize, seed: u64) -> Result<Vec<f64>, JsError> {
    jacobi_eigenvalue_histogram(n, beta, a, b, count, bins, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = cmvMagnitudes)]
pub fn cmv_magnitudes_js(n: usize, beta: f64, seed: u64) -> Result<Vec<f64>, JsError> {
    cmv_magnitudes(n, beta, seed).map_err(|e| JsError::new(&e))
}
