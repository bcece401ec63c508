//! Finite-difference checks of the Jacobian of `(θ, μ) ↦ α`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_domain, Error, Result};
use crate::linalg::real_det;
use crate::opuc::{measure_to_verblunsky, SpectralMeasureCircle};
use crate::szego::SpectralMeasureInterval;

/// Central-difference determinant next to the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianCheck {
    pub fd: f64,
    pub formula: f64,
}

impl JacobianCheck {
    pub fn relative_error(&self) -> f64 {
        ((self.fd - self.formula) / self.formula).abs()
    }
}

fn wrap_pm_pi(t: f64) -> f64 {
    let r = (t + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

/// `|det ∂F/∂p|` by central differences; `angular[i]` marks outputs whose
/// differences are taken modulo `2π`.
fn fd_det<F>(p: &[f64], h: f64, angular: &[bool], f: F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    let d = p.len();
    let mut cols = vec![vec![0.0; d]; d];
    for j in 0..d {
        let mut up = p.to_vec();
        let mut dn = p.to_vec();
        up[j] += h;
        dn[j] -= h;
        let (fu, fdn) = (f(&up)?, f(&dn)?);
        if fu.len() != d {
            return Err(Error::Numerical(format!("map has {} outputs for {d} inputs", fu.len())));
        }
        for i in 0..d {
            let diff = if angular[i] { wrap_pm_pi(fu[i] - fdn[i]) } else { fu[i] - fdn[i] };
            cols[j][i] = diff / (2.0 * h);
        }
    }
    // rows of the Jacobian are outputs; transpose does not change |det|
    Ok(real_det(&cols).abs())
}

fn check_step(h: f64, room: f64) -> Result<()> {
    check_domain(h > 0.0 && h.is_finite(), "step", h, "step > 0")?;
    if h * 4.0 >= room {
        return Err(Error::Domain {
            name: "step",
            value: h,
            constraint: "step must be small against point gaps and weights",
        });
    }
    Ok(())
}

/// Complex case: `(θ_1..θ_n, μ_1..μ_{n-1}) ↦ (Re α_k, Im α_k)_{k≤n-2}, φ`
/// with `α_{n-1} = e^{iφ}` and `μ_n = 1 - Σμ`. Closed form
/// `2^{1-n} |Δ(e^{iθ})|² / ∏_{k=0}^{n-2} (1-|α_k|²)^{n-k-2}`.
pub fn jacobian_check_unitary(m: &SpectralMeasureCircle, h: f64) -> Result<JacobianCheck> {
    let n = m.len();
    let room = m.min_gap().min(m.weights.iter().cloned().fold(f64::INFINITY, f64::min));
    check_step(h, room)?;
    let mut p: Vec<f64> = m.thetas.clone();
    p.extend_from_slice(&m.weights[..n - 1]);

    let map = |q: &[f64]| -> Result<Vec<f64>> {
        let thetas = q[..n].to_vec();
        let mut w = q[n..].to_vec();
        w.push(1.0 - w.iter().sum::<f64>());
        let v = measure_to_verblunsky(&SpectralMeasureCircle::new(thetas, w)?)?;
        let mut out = Vec::with_capacity(2 * n - 1);
        for k in 0..n - 1 {
            out.push(v.alpha(k).re);
            out.push(v.alpha(k).im);
        }
        out.push(v.alpha(n - 1).arg());
        Ok(out)
    };
    let mut angular = vec![false; 2 * n - 1];
    angular[2 * n - 2] = true;
    let fd = fd_det(&p, h, &angular, map)?;

    let v = measure_to_verblunsky(m)?;
    let pts = m.points();
    let mut ln = (1.0 - n as f64) * std::f64::consts::LN_2;
    for j in 0..n {
        for k in j + 1..n {
            ln += 2.0 * (pts[j] - pts[k]).norm().ln();
        }
    }
    for k in 0..n.saturating_sub(1) {
        ln -= (n as f64 - k as f64 - 2.0) * (1.0 - v.alpha(k).norm_sqr()).ln();
    }
    Ok(JacobianCheck { fd, formula: ln.exp() })
}

/// Real case: the measure `Σ ½μ_j (δ_{e^{iθ_j}} + δ_{e^{-iθ_j}})` with
/// `x_j = 2cos θ_j`, and the map `(θ_1..θ_n, μ_1..μ_{n-1}) ↦ (α_0..α_{2n-2})`.
/// Closed form `2^{1-n} |Δ(x)|² / ∏_{k=0}^{2n-2} (1-α_k²)^{(2n-k-3)/2}`.
pub fn jacobian_check_real(nu: &SpectralMeasureInterval, h: f64) -> Result<JacobianCheck> {
    let n = nu.len();
    if let Some(x) = nu.xs.iter().find(|x| x.abs() >= 2.0) {
        return Err(Error::DegenerateMeasure(format!("point {x} at the edge of [-2, 2]")));
    }
    let thetas: Vec<f64> = nu.xs.iter().map(|x| (x / 2.0).acos()).collect();
    let mut room = nu.weights.iter().cloned().fold(f64::INFINITY, f64::min);
    for t in &thetas {
        room = room.min(*t).min(PI - t);
    }
    for w in thetas.windows(2) {
        room = room.min((w[0] - w[1]).abs());
    }
    check_step(h, room)?;

    let mut p = thetas.clone();
    p.extend_from_slice(&nu.weights[..n - 1]);
    let map = |q: &[f64]| -> Result<Vec<f64>> {
        let mut w = q[n..].to_vec();
        w.push(1.0 - w.iter().sum::<f64>());
        let mut th = Vec::with_capacity(2 * n);
        let mut ww = Vec::with_capacity(2 * n);
        for j in 0..n {
            th.push(q[j]);
            th.push(2.0 * PI - q[j]);
            ww.push(0.5 * w[j]);
            ww.push(0.5 * w[j]);
        }
        let v = measure_to_verblunsky(&SpectralMeasureCircle::new(th, ww)?)?;
        Ok(v.alphas()[..2 * n - 1].iter().map(|a: &Complex64| a.re).collect())
    };
    let fd = fd_det(&p, h, &vec![false; 2 * n - 1], map)?;

    let al = map(&p)?;
    let mut ln = (1.0 - n as f64) * std::f64::consts::LN_2;
    for j in 0..n {
        for k in j + 1..n {
            ln += 2.0 * (nu.xs[j] - nu.xs[k]).abs().ln();
        }
    }
    for (k, a) in al.iter().enumerate() {
        ln -= (2.0 * n as f64 - k as f64 - 3.0) / 2.0 * (1.0 - a * a).ln();
    }
    Ok(JacobianCheck { fd, formula: ln.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_at_plus_minus_i() {
        let m = SpectralMeasureCircle::new(vec![PI / 2.0, 3.0 * PI / 2.0], vec![0.5, 0.5]).unwrap();
        let c = jacobian_check_unitary(&m, 1e-5).unwrap();
        assert!(c.relative_error() < 1e-4, "{c:?}");
    }

    #[test]
    fn single_point() {
        let m = SpectralMeasureCircle::new(vec![1.0], vec![1.0]).unwrap();
        let c = jacobian_check_unitary(&m, 1e-5).unwrap();
        assert!((c.fd - 1.0).abs() < 1e-8 && c.formula == 1.0);
    }

    #[test]
    fn real_two_points() {
        let nu = SpectralMeasureInterval::new(vec![-0.7, 1.1], vec![0.35, 0.65]).unwrap();
        let c = jacobian_check_real(&nu, 1e-5).unwrap();
        assert!(c.relative_error() < 1e-4, "{c:?}");
    }

    #[test]
    fn step_guard() {
        let m = SpectralMeasureCircle::new(vec![0.0, 2e-5], vec![0.5, 0.5]).unwrap();
        assert!(jacobian_check_unitary(&m, 1e-5).is_err());
        let m = SpectralMeasureCircle::new(vec![0.0, 2.0], vec![0.5, 0.5]).unwrap();
        assert!(jacobian_check_unitary(&m, 0.0).is_err());
    }
}
