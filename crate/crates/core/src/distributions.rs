//! Samplers for the building-block laws of the matrix models.
//!
//! * `Θ_ν` on the closed unit disk, density `(ν-1)/(2π)·(1-|z|²)^{(ν-3)/2}`;
//!   `ν = 1` is the uniform law on the unit circle.
//! * `B(s,t)` on `(-1,1)`, density proportional to `(1-x)^{s-1}(1+x)^{t-1}`.
//! * Uniform points on spheres and simplices, plus the Dirichlet moment.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use libm::lgamma as ln_gamma;

use crate::error::{check_domain, Error, Result};
use crate::rng::RngStream;

/// Parameter of the `Θ_ν` law. `ν ≥ 1`; `ν = 1` is the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParam {
    nu: f64,
}

impl ThetaParam {
    pub fn new(nu: f64) -> Result<Self> {
        check_domain(nu.is_finite() && nu >= 1.0, "nu", nu, "nu >= 1")?;
        Ok(Self { nu })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// CDF of the squared radius `s = |z|²`, i.e. `1 - (1-s)^{(ν-1)/2}`.
    /// Degenerates to a point mass at 1 when `ν = 1`.
    pub fn radial_cdf(&self, s: f64) -> f64 {
        if s <= 0.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return 1.0;
        }
        if self.nu == 1.0 {
            return 0.0;
        }
        -(0.5 * (self.nu - 1.0) * (-s).ln_1p()).exp_m1()
    }

    /// `E|z|² = 2/(ν+1)`.
    pub fn mean_sq_radius(&self) -> f64 {
        2.0 / (self.nu + 1.0)
    }
}

/// Parameters of the symmetric-interval beta law `B(s,t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaSymParam {
    s: f64,
    t: f64,
}

impl BetaSymParam {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        check_domain(s.is_finite() && s > 0.0, "s", s, "s > 0")?;
        check_domain(t.is_finite() && t > 0.0, "t", t, "t > 0")?;
        Ok(Self { s, t })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// `E X = (t-s)/(t+s)`.
    pub fn mean(&self) -> f64 {
        (self.t - self.s) / (self.t + self.s)
    }

    /// Log of the normalising constant `2^{1-s-t} Γ(s+t) / (Γ(s)Γ(t))`.
    pub fn ln_norm(&self) -> f64 {
        let (s, t) = (self.s, self.t);
        (1.0 - s - t) * std::f64::consts::LN_2 + ln_gamma(s + t) - ln_gamma(s) - ln_gamma(t)
    }

    pub fn density(&self, x: f64) -> f64 {
        if x <= -1.0 || x >= 1.0 {
            return 0.0;
        }
        (self.ln_norm() + (self.s - 1.0) * (-x).ln_1p() + (self.t - 1.0) * x.ln_1p()).exp()
    }

    /// CDF, via the regularised incomplete beta function of `u = (1-x)/2`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -1.0 {
            return 0.0;
        }
        if x >= 1.0 {
            return 1.0;
        }
        // X ≤ x  ⇔  U ≥ (1-x)/2 where U ~ Beta(s,t) on [0,1].
        let u = 0.5 * (1.0 - x);
        1.0 - statrs::function::beta::beta_reg(self.s, self.t, u)
    }
}

/// Largest modulus returned for an interior draw. Laws with most of their
/// mass at the boundary (small `ν - 1`, or beta shapes near 0) can produce
/// values that round to modulus 1; those are pulled in to this radius so
/// that `ρ = √(1-|α|²)` stays positive.
pub const MAX_INTERIOR_RADIUS: f64 = 1.0 - 4.0 * f64::EPSILON;

/// Draw from `Θ_ν` by inverting the squared-radius CDF; the phase is
/// independent and uniform.
pub fn sample_theta(p: ThetaParam, rng: &mut RngStream) -> Complex64 {
    let phase = 2.0 * PI * rng.open01();
    if p.nu == 1.0 {
        return Complex64::from_polar(1.0, phase);
    }
    let u = rng.open01();
    // s = 1 - (1-u)^{2/(ν-1)}
    let s = -((2.0 / (p.nu - 1.0)) * (-u).ln_1p()).exp_m1();
    Complex64::from_polar(s.sqrt().min(MAX_INTERIOR_RADIUS), phase)
}

/// Standard `Gamma(shape, 1)` variate (Marsaglia–Tsang, boosted for shape < 1).
fn gamma_variate(shape: f64, rng: &mut RngStream) -> f64 {
    Gamma::new(shape, 1.0)
        .expect("shape validated by caller")
        .sample(rng)
}

/// Draw from `B(s,t)` on `(-1,1)` as `1 - 2u` with `u ~ Beta(s,t)` built
/// from a ratio of gamma variates.
pub fn sample_beta_sym(p: BetaSymParam, rng: &mut RngStream) -> f64 {
    loop {
        let g1 = gamma_variate(p.s, rng);
        let g2 = gamma_variate(p.t, rng);
        let total = g1 + g2;
        if total > 0.0 && total.is_finite() {
            // 1 - 2 g1/(g1+g2), written to keep both tails accurate.
            let x = (g2 - g1) / total;
            return x.clamp(-MAX_INTERIOR_RADIUS, MAX_INTERIOR_RADIUS);
        }
    }
}

/// Uniform point on the sphere `S^dim ⊂ R^{dim+1}`.
pub fn sample_sphere(dim: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if dim < 1 {
        return Err(Error::Domain {
            name: "dim",
            value: dim as f64,
            constraint: "dim >= 1",
        });
    }
    loop {
        let v: Vec<f64> = (0..=dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return Ok(v.into_iter().map(|x| x / norm).collect());
        }
    }
}

/// Uniform point on the `(n-1)`-simplex, as normalised unit exponentials.
pub fn sample_simplex(n: usize, rng: &mut RngStream) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            constraint: "n >= 1",
        });
    }
    if n == 1 {
        return Ok(vec![1.0]);
    }
    let e: Vec<f64> = (0..n)
        .map(|_| {
            let x: f64 = rng.sample(Exp1);
            x.max(f64::MIN_POSITIVE)
        })
        .collect();
    let total: f64 = e.iter().sum();
    Ok(e.into_iter().map(|x| x / total).collect())
}

/// `E ∏ μ_j^{p_j}` for `μ` uniform on the simplex:
/// `(n-1)! ∏Γ(p_j+1) / Γ(Σp_j + n)`.
pub fn dirichlet_moment(p: &[f64]) -> Result<f64> {
    let ln = ln_dirichlet_moment(p)?;
    let n = p.len() as f64;
    let sum: f64 = p.iter().sum();
    // direct gamma products are exact to a few ulps while no factor overflows
    if sum + n < 150.0 {
        let direct = libm::tgamma(n) * p.iter().map(|&pj| libm::tgamma(pj + 1.0)).product::<f64>() / libm::tgamma(sum + n);
        if direct.is_finite() && direct > 0.0 {
            return Ok(direct);
        }
    }
    Ok(ln.exp())
}

pub fn ln_dirichlet_moment(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::Domain {
            name: "p",
            value: 0.0,
            constraint: "at least one exponent",
        });
    }
    for &pj in p {
        check_domain(pj.is_finite() && pj > -1.0, "p", pj, "every exponent > -1")?;
    }
    if p.iter().all(|&pj| pj == 0.0) {
        return Ok(0.0);
    }
    let n = p.len() as f64;
    let sum: f64 = p.iter().sum();
    Ok(ln_gamma(n) + p.iter().map(|&pj| ln_gamma(pj + 1.0)).sum::<f64>() - ln_gamma(sum + n))
}
