//! CMV and Hessenberg representations of multiplication by `z`.
//!
//! For a Verblunsky sequence of length `n`, the CMV matrix is the product
//! `LM` of two block-diagonal unitaries built from
//!
//! ```text
//! Ξ_k = [ conj(α_k)  ρ_k ]        Ξ_{-1} = [1],  Ξ_{n-1} = [conj(α_{n-1})]
//!       [ ρ_k       -α_k ]
//! L = diag(Ξ_0, Ξ_2, Ξ_4, …)      M = diag(Ξ_{-1}, Ξ_1, Ξ_3, …)
//! ```
//!
//! `LM` is five-diagonal. The Hessenberg matrix `H` is the same operator in
//! the orthonormal-polynomial basis and is dense above the sub-diagonal.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{reduce_to_hessenberg, schur, CMatrix};
use crate::opuc::{wrap_angle, SpectralMeasureCircle, VerblunskySeq};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone)]
pub struct CmvOperator {
    v: VerblunskySeq,
    l: CMatrix,
    m: CMatrix,
}

impl CmvOperator {
    pub fn verblunsky(&self) -> &VerblunskySeq {
        &self.v
    }

    pub fn l(&self) -> &CMatrix {
        &self.l
    }

    pub fn m(&self) -> &CMatrix {
        &self.m
    }

    pub fn lm(&self) -> CMatrix {
        self.l.mul(&self.m)
    }

    pub fn ml(&self) -> CMatrix {
        self.m.mul(&self.l)
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }
}

/// Place `Ξ_k` (rows/columns `k, k+1`) into `target`; `k = -1` and `k = n-1`
/// are the 1×1 blocks.
fn place_block(target: &mut CMatrix, v: &VerblunskySeq, k: isize) {
    let n = v.len() as isize;
    if k == -1 {
        target[(0, 0)] = ONE;
        return;
    }
    let ku = k as usize;
    let a = v.alpha(ku);
    if k == n - 1 {
        target[(ku, ku)] = a.conj();
        return;
    }
    let rho = Complex64::new(v.rho(ku), 0.0);
    target[(ku, ku)] = a.conj();
    target[(ku, ku + 1)] = rho;
    target[(ku + 1, ku)] = rho;
    target[(ku + 1, ku + 1)] = -a;
}

pub fn build_cmv(v: &VerblunskySeq) -> CmvOperator {
    let n = v.len();
    let mut l = CMatrix::zeros(n);
    let mut m = CMatrix::zeros(n);
    for k in (0..n as isize).step_by(2) {
        place_block(&mut l, v, k);
    }
    for k in (-1..n as isize).step_by(2) {
        place_block(&mut m, v, k);
    }
    CmvOperator { v: v.clone(), l, m }
}

/// Unitary upper-Hessenberg matrix with positive sub-diagonal.
#[derive(Debug, Clone)]
pub struct HessenbergOperator {
    pub h: CMatrix,
}

/// Entries `H_{i+1,j+1} = -α_{i-1} conj(α_j) ∏_{l=i}^{j-1} ρ_l` for `i ≤ j`,
/// `ρ_{j-1}` on the sub-diagonal, zero below.
pub fn build_hessenberg(v: &VerblunskySeq) -> HessenbergOperator {
    let n = v.len();
    let mut h = CMatrix::zeros(n);
    for j in 0..n {
        let abar = v.alpha(j).conj();
        let mut rho_prod = 1.0;
        // Walk i downward from j so the ρ product grows one factor at a time.
        for i in (0..=j).rev() {
            h[(i, j)] = -v.alpha_ext(i as isize - 1) * abar * rho_prod;
            if i > 0 {
                rho_prod *= v.rho(i - 1);
            }
        }
        if j + 1 < n {
            h[(j + 1, j)] = Complex64::new(v.rho(j), 0.0);
        }
    }
    HessenbergOperator { h }
}

/// Verblunsky coefficients of the spectral measure of `(U, e₁)`.
///
/// `U` is brought to Hessenberg form with positive sub-diagonal by
/// Householder reflections that fix `e₁`; the coefficients are then read off
/// column by column as `conj(α_j) = ⟨X_j, H e_j⟩`, where
/// `X_j = (-α_{i-1} ∏_{l=i}^{j-1} ρ_l)_{i ≤ j}` is the unit vector the
/// Hessenberg structure forces. With `real_form` the input must be real
/// orthogonal and the reduction stays in real arithmetic.
pub fn householder_reduce(u: &CMatrix, real_form: bool) -> Result<VerblunskySeq> {
    let n = u.dim();
    if n == 0 {
        return Err(Error::InvalidSequence("empty matrix".into()));
    }
    let defect = u.unitarity_defect();
    if !(defect <= 1e-8) {
        return Err(Error::NotUnitary(defect));
    }
    if real_form && u.max_imag() != 0.0 {
        return Err(Error::NotReal(u.max_imag()));
    }
    let hs = reduce_to_hessenberg(u, real_form);
    if let Some(&k) = hs.zero_pivots.first() {
        return Err(Error::DegenerateSpectrum(format!(
            "column {k} has no mass below the diagonal; e1 is not cyclic"
        )));
    }
    read_alphas(&hs.h)
}

/// Verblunsky coefficients of a unitary Hessenberg matrix with positive
/// sub-diagonal.
pub fn read_alphas(h: &CMatrix) -> Result<VerblunskySeq> {
    let n = h.dim();
    let mut alphas: Vec<Complex64> = Vec::with_capacity(n);
    for j in 0..n {
        // X_i = -α_{i-1} ∏_{l=i}^{j-1} ρ_l, ρ_l = H_{l+1,l}
        let mut abar = ZERO;
        let mut rho_prod = 1.0;
        for i in (0..=j).rev() {
            let prev = if i == 0 { -ONE } else { alphas[i - 1] };
            let x = -prev * rho_prod;
            abar += x.conj() * h[(i, j)];
            if i > 0 {
                rho_prod *= h[(i, i - 1)].re;
            }
        }
        alphas.push(abar.conj());
    }
    let last = alphas[n - 1];
    if (last.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::Numerical(format!(
            "final coefficient modulus {} far from 1",
            last.norm()
        )));
    }
    alphas[n - 1] = last / last.norm();
    VerblunskySeq::new(alphas)
}

/// Raw eigen-data of the CMV matrix before projection to the circle.
#[derive(Debug, Clone)]
pub struct CmvEigen {
    pub eigenvalues: Vec<Complex64>,
    pub first_components: Vec<Complex64>,
    /// `max_j ‖LM q_j - λ_j q_j‖`.
    pub residual: f64,
}

impl CmvEigen {
    pub fn max_unimodularity_defect(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| (l.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Schur decomposition of `LM`. Since `LM` is normal, the Schur vectors are
/// eigenvectors; their first components give the spectral weights.
pub fn cmv_eigen(v: &VerblunskySeq) -> Result<CmvEigen> {
    let lm = build_cmv(v).lm();
    let s = schur(&lm)?;
    let n = lm.dim();
    let eigenvalues = s.eigenvalues();
    let mut residual = 0.0f64;
    for j in 0..n {
        let q: Vec<Complex64> = (0..n).map(|i| s.q[(i, j)]).collect();
        let lq = lm.mul_vec(&q);
        let r = (0..n)
            .map(|i| (lq[i] - eigenvalues[j] * q[i]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r);
    }
    if residual > 1e-8 {
        return Err(Error::Numerical(format!("eigenvector residual {residual:e}")));
    }
    let first_components = (0..n).map(|j| s.q[(0, j)]).collect();
    Ok(CmvEigen {
        eigenvalues,
        first_components,
        residual,
    })
}

/// Spectral measure of `(LM, e₁)`: eigen-angles in `[0, 2π)`, sorted, with
/// weights `|⟨e₁, v_j⟩|²` normalised to total mass 1.
pub fn cmv_spectral(v: &VerblunskySeq) -> Result<SpectralMeasureCircle> {
    let eig = cmv_eigen(v)?;
    let defect = eig.max_unimodularity_defect();
    if defect > 1e-10 {
        return Err(Error::Numerical(format!("eigenvalue off the unit circle by {defect:e}")));
    }
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .zip(&eig.first_components)
        .map(|(l, q)| (wrap_angle(l.arg()), q.norm_sqr()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    SpectralMeasureCircle::new(
        pairs.iter().map(|p| p.0).collect(),
        pairs.iter().map(|p| p.1 / total).collect(),
    )
}

/// `(∏ λ_j, (-1)^{m-1} conj(α_{m-1}))`: two routes to `det(LM)`.
pub fn cmv_det_check(v: &VerblunskySeq) -> Result<(Complex64, Complex64)> {
    let eig = cmv_eigen(v)?;
    let prod = eig
        .eigenvalues
        .iter()
        .fold(ONE, |acc, l| acc * (l / l.norm()));
    let m = v.len();
    let sign = if (m - 1) % 2 == 0 { 1.0 } else { -1.0 };
    Ok((prod, v.alpha(m - 1).conj() * sign))
}

/// JSON export of a dense matrix: row-major rows of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixExport {
    pub name: String,
    pub n: usize,
    pub layout: &'static str,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixExport {
    pub fn new(name: &str, m: &CMatrix) -> Self {
        Self {
            name: name.to_string(),
            n: m.dim(),
            layout: "row-major, [re, im]",
            entries: m.to_pairs(),
        }
    }
}

/// Angles with `k` equal steps starting at `offset`; used in tests and demos.
pub fn equispaced_angles(k: usize, offset: f64) -> Vec<f64> {
    (0..k).map(|j| wrap_angle(offset + 2.0 * PI * j as f64 / k as f64)).collect()
}
