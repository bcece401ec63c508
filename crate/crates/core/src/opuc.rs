//! Orthogonal polynomials on the unit circle.
//!
//! A probability measure with `m` support points on the circle is encoded by
//! its Verblunsky coefficients `α_0 … α_{m-1}`: the first `m-1` lie in the
//! open disk and the last on the circle. They drive the Szegő recurrence
//!
//! ```text
//! Φ_{k+1}(z)  = z Φ_k(z) - conj(α_k) Φ_k*(z)
//! Φ_{k+1}*(z) = Φ_k*(z)  - α_k z Φ_k(z)
//! ```
//!
//! with `Φ_0 = Φ_0* = 1`. Index conventions used throughout the crate:
//! `α_{-1} = -1` and `α_{-2} = 0` (see [`VerblunskySeq::alpha_ext`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance on `|α_{m-1}| = 1`.
pub const UNIMODULAR_TOL: f64 = 1e-12;
/// Interior coefficients closer than this to the circle trigger a warning.
pub const NEAR_UNIMODULAR_WARN: f64 = 1e-10;
/// Minimum separation between support points of a measure.
pub const MIN_GAP: f64 = 1e-10;

/// Finite Verblunsky sequence `α_0 … α_{m-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerblunskySeq {
    alphas: Vec<Complex64>,
}

impl VerblunskySeq {
    /// Validates `|α_k| < 1` for `k < m-1` and `|α_{m-1}| = 1` to within
    /// [`UNIMODULAR_TOL`]; the last coefficient is then projected exactly onto
    /// the circle.
    pub fn new(mut alphas: Vec<Complex64>) -> Result<Self> {
        let m = alphas.len();
        if m == 0 {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        for (k, a) in alphas[..m - 1].iter().enumerate() {
            if !(a.norm() < 1.0) {
                return Err(Error::InvalidSequence(format!(
                    "|alpha_{k}| = {} is not inside the unit disk",
                    a.norm()
                )));
            }
            if 1.0 - a.norm() < NEAR_UNIMODULAR_WARN {
                log::warn!("alpha_{k} is within {NEAR_UNIMODULAR_WARN:e} of the unit circle");
            }
        }
        let last = alphas[m - 1];
        if (last.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::InvalidSequence(format!(
                "final coefficient has modulus {}, expected 1",
                last.norm()
            )));
        }
        alphas[m - 1] = last / last.norm();
        Ok(Self { alphas })
    }

    /// Real sequence; the final entry must be ±1.
    pub fn from_real(alphas: &[f64]) -> Result<Self> {
        Self::new(alphas.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }

    pub fn alpha(&self, k: usize) -> Complex64 {
        self.alphas[k]
    }

    /// `α_k` for `k ≥ -2`, with `α_{-1} = -1`, `α_{-2} = 0`.
    pub fn alpha_ext(&self, k: isize) -> Complex64 {
        match k {
            -1 => -ONE,
            -2 => ZERO,
            k if k >= 0 => self.alphas[k as usize],
            _ => panic!("alpha index {k} below -2"),
        }
    }

    /// `ρ_k = √(1-|α_k|²)`; zero for the final coefficient.
    pub fn rho(&self, k: usize) -> f64 {
        if k + 1 == self.alphas.len() {
            return 0.0;
        }
        (1.0 - self.alphas[k].norm_sqr()).max(0.0).sqrt()
    }

    pub fn is_real(&self) -> bool {
        self.alphas.iter().all(|a| a.im == 0.0)
    }

    pub fn max_imag(&self) -> f64 {
        self.alphas.iter().map(|a| a.im.abs()).fold(0.0, f64::max)
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.alphas.iter().map(|a| a.re).collect()
    }

    /// Real parts, after checking every imaginary part is exactly zero.
    pub fn require_real(&self) -> Result<Vec<f64>> {
        if self.is_real() {
            Ok(self.real_parts())
        } else {
            Err(Error::NotReal(self.max_imag()))
        }
    }
}

/// Discrete probability measure `Σ μ_j δ_{exp(iθ_j)}` on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeasureCircle {
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpectralMeasureCircle {
    /// Validates positivity, total mass 1 (to 1e-12) and distinct points.
    /// Angles are reduced to `[0, 2π)`; order is preserved.
    pub fn new(thetas: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if thetas.len() != weights.len() || thetas.is_empty() {
            return Err(Error::DegenerateMeasure(
                "angle and weight vectors must be non-empty and of equal length".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::DegenerateMeasure(format!("non-positive weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::DegenerateMeasure(format!("total mass {total} != 1")));
        }
        let thetas: Vec<f64> = thetas.into_iter().map(wrap_angle).collect();
        let m = Self { thetas, weights };
        let gap = m.min_gap();
        if gap <= MIN_GAP {
            return Err(Error::DegenerateMeasure(format!(
                "support points closer than {MIN_GAP:e} (gap {gap:e})"
            )));
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.thetas.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Smallest distance between support points on the circle.
    pub fn min_gap(&self) -> f64 {
        let pts = self.points();
        let mut gap = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                gap = gap.min((pts[i] - pts[j]).norm());
            }
        }
        gap
    }

    /// Copy sorted by angle.
    pub fn sorted(&self) -> Self {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.thetas[a].total_cmp(&self.thetas[b]));
        Self {
            thetas: idx.iter().map(|&i| self.thetas[i]).collect(),
            weights: idx.iter().map(|&i| self.weights[i]).collect(),
        }
    }

    /// `∫ f dμ`.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Complex64 {
        self.points()
            .into_iter()
            .zip(&self.weights)
            .map(|(z, &w)| f(z) * w)
            .sum()
    }
}

pub(crate) fn wrap_angle(t: f64) -> f64 {
    let r = t.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// Monic polynomial `c_0 + c_1 z + … + z^k` (coefficients in ascending order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonicPolynomial {
    coeffs: Vec<Complex64>,
}

impl MonicPolynomial {
    /// The leading coefficient is forced to exactly 1.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ONE);
        }
        *coeffs.last_mut().unwrap() = ONE;
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Reversal `Φ*(z) = z^k conj(Φ(1/conj z))`: conjugated coefficients in
    /// reverse order (not monic in general).
    pub fn reversed_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().rev().map(|c| c.conj()).collect()
    }

    /// Largest coefficient difference against another polynomial of equal degree.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.degree(), other.degree());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_degree(v: &VerblunskySeq, k: usize) -> Result<()> {
    if k > v.len() {
        Err(Error::IndexOutOfRange {
            index: k,
            max: v.len(),
        })
    } else {
        Ok(())
    }
}

/// `(Φ_k(z), Φ_k*(z))` by forward recurrence.
pub fn szego_evaluate(v: &VerblunskySeq, z: Complex64, k: usize) -> Result<(Complex64, Complex64)> {
    check_degree(v, k)?;
    let (mut phi, mut phi_star) = (ONE, ONE);
    for &a in &v.alphas()[..k] {
        let next = z * phi - a.conj() * phi_star;
        phi_star = phi_star - a * z * phi;
        phi = next;
    }
    Ok((phi, phi_star))
}

/// Coefficients of `Φ_k`.
pub fn monic_coeffs(v: &VerblunskySeq, k: usize) -> Result<MonicPolynomial> {
    check_degree(v, k)?;
    let mut phi = vec![ONE];
    let mut phi_star = vec![ONE];
    for &a in &v.alphas()[..k] {
        let d = phi.len();
        let mut next = vec![ZERO; d + 1];
        let mut next_star = vec![ZERO; d + 1];
        for i in 0..d {
            next[i + 1] += phi[i];
            next[i] -= a.conj() * phi_star[i];
            next_star[i] += phi_star[i];
            next_star[i + 1] -= a * phi[i];
        }
        phi = next;
        phi_star = next_star;
    }
    Ok(MonicPolynomial::new(phi))
}

/// `‖Φ_k‖ = ∏_{l<k} ρ_l`.
pub fn phi_norm(v: &VerblunskySeq, k: usize) -> Result<f64> {
    if k >= v.len() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: v.len() - 1,
        });
    }
    Ok((0..k).map(|l| v.rho(l)).product())
}

/// Verblunsky coefficients of a discrete measure.
///
/// Works with the values of the orthonormal `φ_k`, `φ_k*` on the support
/// points only: `conj(α_k) = ⟨φ_k*, z φ_k⟩_μ`, and `ρ_k` is taken as the norm
/// of `z φ_k - conj(α_k) φ_k*` rather than from `1 - |α_k|²`.
pub fn measure_to_verblunsky(m: &SpectralMeasureCircle) -> Result<VerblunskySeq> {
    Ok(verblunsky_with_rho(m)?.0)
}

/// Coefficients together with the directly computed `ρ_0..ρ_{n-2}`.
fn verblunsky_with_rho(m: &SpectralMeasureCircle) -> Result<(VerblunskySeq, Vec<f64>)> {
    let n = m.len();
    let pts = m.points();
    let w = &m.weights;
    let inner = |f: &[Complex64], g: &[Complex64]| -> Complex64 {
        (0..n).map(|j| f[j].conj() * g[j] * w[j]).sum()
    };
    let mut phi = vec![ONE; n];
    let mut phi_star = vec![ONE; n];
    let mut alphas = Vec::with_capacity(n);
    let mut rhos = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let zphi: Vec<Complex64> = (0..n).map(|j| pts[j] * phi[j]).collect();
        let abar = inner(&phi_star, &zphi);
        let a = abar.conj();
        if k + 1 == n {
            if (a.norm() - 1.0).abs() > 1e-6 {
                return Err(Error::Numerical(format!(
                    "final coefficient has modulus {} (ill-conditioned measure)",
                    a.norm()
                )));
            }
            alphas.push(a / a.norm());
            break;
        }
        let next: Vec<Complex64> = (0..n).map(|j| zphi[j] - abar * phi_star[j]).collect();
        let next_star: Vec<Complex64> = (0..n).map(|j| phi_star[j] - a * zphi[j]).collect();
        let rho = inner(&next, &next).re.sqrt();
        if !(rho > 1e-14) || a.norm() >= 1.0 {
            return Err(Error::DegenerateMeasure(format!(
                "rho_{k} = {rho:e}: support has fewer than {n} distinct points"
            )));
        }
        alphas.push(a);
        rhos.push(rho);
        phi = next.into_iter().map(|x| x / rho).collect();
        phi_star = next_star.into_iter().map(|x| x / rho).collect();
    }
    Ok((VerblunskySeq::new(alphas)?, rhos))
}

/// Both sides of the Toeplitz-determinant identity
/// `|Δ(z_1..z_n)|² ∏μ_j = ∏_{k≤n-2} (1-|α_k|²)^{n-k-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToeplitzCheck {
    pub ln_lhs: f64,
    pub ln_rhs: f64,
}

impl ToeplitzCheck {
    pub fn lhs(&self) -> f64 {
        self.ln_lhs.exp()
    }

    pub fn rhs(&self) -> f64 {
        self.ln_rhs.exp()
    }

    /// `|rhs - lhs| / lhs`, computed from the logarithms.
    pub fn relative_gap(&self) -> f64 {
        (self.ln_rhs - self.ln_lhs).exp_m1().abs()
    }
}

/// The right side uses `ρ_k²` from the recurrence, which keeps full relative
/// accuracy when `|α_k|` is close to 1.
pub fn toeplitz_det(m: &SpectralMeasureCircle) -> Result<ToeplitzCheck> {
    let (_, rhos) = verblunsky_with_rho(m)?;
    let pts = m.points();
    let n = pts.len();
    let mut ln_lhs: f64 = m.weights.iter().map(|w| w.ln()).sum();
    for i in 0..n {
        for j in i + 1..n {
            ln_lhs += 2.0 * (pts[i] - pts[j]).norm().ln();
        }
    }
    let ln_rhs: f64 = rhos.iter().enumerate().map(|(k, r)| 2.0 * (n - k - 1) as f64 * r.ln()).sum();
    Ok(ToeplitzCheck { ln_lhs, ln_rhs })
}

/// `Φ_{2n}(1) = 2∏_{k≤2n-2}(1-α_k)` and `Φ_{2n}(-1) = 2∏_{k≤2n-2}(1+(-1)^k α_k)`
/// for a real sequence of length `2n` ending in `-1`.
pub fn phi2n_at_pm1(v: &VerblunskySeq) -> Result<(f64, f64)> {
    let a = v.require_real()?;
    let m = a.len();
    if m % 2 != 0 || a[m - 1] != -1.0 {
        return Err(Error::InvalidSequence(
            "expected an even-length real sequence ending in -1".into(),
        ));
    }
    let mut plus = 2.0;
    let mut minus = 2.0;
    for (k, &ak) in a[..m - 1].iter().enumerate() {
        plus *= 1.0 - ak;
        minus *= if k % 2 == 0 { 1.0 + ak } else { 1.0 - ak };
    }
    Ok((plus, minus))
}

/// `α̃_k = -e^{iφ} conj(α_{m-2-k})` for `k ≤ m-2`, `α̃_{m-1} = e^{iφ}`; the
/// degree-`m` orthogonal polynomial is unchanged.
pub fn reverse_coefficients(v: &VerblunskySeq) -> VerblunskySeq {
    let m = v.len();
    let last = v.alpha(m - 1);
    let mut out: Vec<Complex64> = (0..m - 1).map(|k| -last * v.alpha(m - 2 - k).conj()).collect();
    out.push(last);
    VerblunskySeq { alphas: out }
}
