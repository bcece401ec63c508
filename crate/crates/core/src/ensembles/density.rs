//! Unnormalised log-densities, partition functions and Selberg's integral.

use num_complex::Complex64;
use quadrature::double_exponential;
use libm::lgamma as ln_gamma;

use crate::error::{check_domain, Error, Result};

/// `β Σ_{j<k} log|e^{iθ_j} - e^{iθ_k}|`; `-∞` when two angles coincide.
pub fn log_density_circular(thetas: &[f64], beta: f64) -> f64 {
    let mut s = 0.0;
    for j in 0..thetas.len() {
        for k in j + 1..thetas.len() {
            let d = (0.5 * (thetas[j] - thetas[k])).sin().abs() * 2.0;
            if d == 0.0 {
                return f64::NEG_INFINITY;
            }
            s += d.ln();
        }
    }
    beta * s
}

/// `log|Δ(z)|` from complex points, by the direct product of differences.
pub fn log_abs_vandermonde(zs: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for j in 0..zs.len() {
        for k in j + 1..zs.len() {
            s += (zs[j] - zs[k]).norm().ln();
        }
    }
    s
}

/// `β Σ_{j<k} log|x_j - x_k| + Σ_j [a log(2-x_j) + b log(2+x_j)]`.
///
/// Points outside `[-2, 2]` are a domain error. At an endpoint a zero
/// exponent contributes nothing; a non-zero one gives `-∞` (positive
/// exponent: the density vanishes; negative: the point is not admissible).
pub fn log_density_jacobi(xs: &[f64], beta: f64, a: f64, b: f64) -> Result<f64> {
    for &x in xs {
        check_domain(x.abs() <= 2.0, "x", x, "|x| <= 2")?;
    }
    let mut s = 0.0;
    for j in 0..xs.len() {
        for k in j + 1..xs.len() {
            let d = (xs[j] - xs[k]).abs();
            if d == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            s += d.ln();
        }
    }
    s *= beta;
    for &x in xs {
        for (e, base) in [(a, 2.0 - x), (b, 2.0 + x)] {
            if e == 0.0 {
                continue;
            }
            if base == 0.0 {
                return Ok(f64::NEG_INFINITY);
            }
            s += e * base.ln();
        }
    }
    Ok(s)
}

/// `log Z_{n,β} = log Γ(βn/2 + 1) - n log Γ(β/2 + 1)`, where
/// `Z_{n,β} = (2π)^{-n} ∫ |Δ|^β dθ`.
pub fn ln_partition_circular(n: usize, beta: f64) -> Result<f64> {
    check_domain(n >= 1, "n", n as f64, "n >= 1")?;
    check_domain(beta > 0.0, "beta", beta, "beta > 0")?;
    Ok(ln_gamma(beta * n as f64 / 2.0 + 1.0) - n as f64 * ln_gamma(beta / 2.0 + 1.0))
}

pub fn partition_circular(n: usize, beta: f64) -> Result<f64> {
    let ln = ln_partition_circular(n, beta)?;
    let top = beta * n as f64 / 2.0 + 1.0;
    if top < 150.0 {
        let direct = libm::tgamma(top) / libm::tgamma(beta / 2.0 + 1.0).powi(n as i32);
        if direct.is_finite() && direct > 0.0 {
            return Ok(direct);
        }
    }
    Ok(ln.exp())
}

/// Total mass of the Verblunsky-side measure,
/// `(2π)^n / (β^{n-1} (n-1)!)`.
pub fn verblunsky_mass_closed(n: usize, beta: f64) -> f64 {
    (2.0 * std::f64::consts::PI).powi(n as i32) / (beta.powi(n as i32 - 1) * (1..n).map(|k| k as f64).product::<f64>())
}

/// The same mass as a product of one-coordinate integrals:
/// `2π · ∏_{k=0}^{n-2} ∫_{|α|<1} (1-|α|²)^{β(n-k-1)/2 - 1} d²α`, each
/// disk integral being `π / (β(n-k-1)/2)`.
pub fn verblunsky_mass_product(n: usize, beta: f64) -> f64 {
    let mut m = 2.0 * std::f64::consts::PI;
    for k in 0..n.saturating_sub(1) {
        m *= std::f64::consts::PI / (beta * (n - k - 1) as f64 / 2.0);
    }
    m
}

/// `log S_n(x, y, z)` for
/// `S_n = ∫_{[0,1]^n} |Δ(u)|^{2z} ∏ u_j^{x-1} (1-u_j)^{y-1} du`:
///
/// `S_n = ∏_{r=0}^{n-1} Γ(rz+x) Γ(rz+y) Γ((r+1)z+1) / (Γ(z+1) Γ((n+r-1)z+x+y))`.
pub fn ln_selberg_value(n: usize, x: f64, y: f64, z: f64) -> Result<f64> {
    check_domain(n >= 1, "n", n as f64, "n >= 1")?;
    check_domain(x > 0.0, "x", x, "x > 0")?;
    check_domain(y > 0.0, "y", y, "y > 0")?;
    check_domain(z >= 0.0, "z", z, "z >= 0")?;
    let mut s = 0.0;
    for r in 0..n {
        let r = r as f64;
        s += ln_gamma(r * z + x) + ln_gamma(r * z + y) + ln_gamma((r + 1.0) * z + 1.0)
            - ln_gamma(z + 1.0)
            - ln_gamma((n as f64 + r - 1.0) * z + x + y);
    }
    if !s.is_finite() {
        return Err(Error::Numerical(format!("Selberg product not finite for ({x}, {y}, {z})")));
    }
    Ok(s)
}

pub fn selberg_value(n: usize, x: f64, y: f64, z: f64) -> Result<f64> {
    let ln = ln_selberg_value(n, x, y, z)?;
    let nf = n as f64;
    if (2.0 * nf - 2.0) * z + x + y < 150.0 && nf * z + 1.0 < 150.0 {
        let g = libm::tgamma;
        let direct: f64 = (0..n)
            .map(|r| {
                let r = r as f64;
                g(r * z + x) * g(r * z + y) * g((r + 1.0) * z + 1.0) / (g(z + 1.0) * g((nf + r - 1.0) * z + x + y))
            })
            .product();
        if direct.is_finite() && direct > 0.0 {
            return Ok(direct);
        }
    }
    Ok(ln.exp())
}

/// Selberg's integral transported to `[-2, 2]^n` via `x = 4u - 2`:
/// `2^τ S_n` with `τ = 2n((n-1)z + x + y - 1)`.
pub fn selberg_value_interval(n: usize, x: f64, y: f64, z: f64) -> Result<f64> {
    let tau = 2.0 * n as f64 * ((n as f64 - 1.0) * z + x + y - 1.0);
    Ok((ln_selberg_value(n, x, y, z)? + tau * std::f64::consts::LN_2).exp())
}

/// Tanh-sinh quadrature of `(1/2π) ∫_0^{2π} |2 sin(θ/2)|^β dθ`, i.e. `Z_{2,β}`.
pub fn partition_n2_quadrature(beta: f64) -> f64 {
    // θ = 2t, t ∈ [0, π]
    let out = double_exponential::integrate(|t| (2.0 * t.sin()).powf(beta), 0.0, std::f64::consts::PI, 1e-14);
    out.integral / std::f64::consts::PI
}

/// Nested tanh-sinh quadrature of the two-dimensional Selberg integral,
/// split along the diagonal where `|u_1 - u_2|^{2z}` is not smooth.
pub fn selberg_n2_quadrature(x: f64, y: f64, z: f64) -> f64 {
    let w = |u: f64| u.powf(x - 1.0) * (1.0 - u).powf(y - 1.0);
    let outer = double_exponential::integrate(
        |u1| {
            if u1 <= 0.0 {
                return 0.0;
            }
            let inner = double_exponential::integrate(|u2| (u1 - u2).abs().powf(2.0 * z) * w(u2), 0.0, u1, 1e-15);
            w(u1) * inner.integral
        },
        0.0,
        1.0,
        1e-14,
    );
    2.0 * outer.integral
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn circular_density_examples() {
        assert!((log_density_circular(&[0.0, PI], 3.0) - 3.0 * 2f64.ln()).abs() < 1e-14);
        let t = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
        let zs: Vec<Complex64> = t.iter().map(|&x| Complex64::from_polar(1.0, x)).collect();
        let direct = 2.0 * log_abs_vandermonde(&zs);
        assert!((log_density_circular(&t, 2.0) - direct).abs() < 1e-13);
        assert!((log_density_circular(&t, 1.0) - (3.0 * 3f64.sqrt()).ln()).abs() < 1e-13);
        let p = [t[2], t[0], t[1]];
        assert_eq!(log_density_circular(&t, 1.7), log_density_circular(&p, 1.7));
        assert_eq!(log_density_circular(&[1.0, 1.0], 1.0), f64::NEG_INFINITY);
    }

    #[test]
    fn jacobi_density_examples() {
        assert_eq!(log_density_jacobi(&[0.3], 2.0, 0.0, 0.0).unwrap(), 0.0);
        assert!((log_density_jacobi(&[-1.0, 1.0], 2.0, 0.0, 0.0).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(log_density_jacobi(&[2.0], 1.0, -0.5, 0.0).unwrap(), f64::NEG_INFINITY);
        assert_eq!(log_density_jacobi(&[2.0], 1.0, 0.0, 0.5).unwrap(), 0.5 * 4f64.ln());
        assert!(log_density_jacobi(&[2.5], 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn partition_examples() {
        assert!((partition_circular(1, 2.7).unwrap() - 1.0).abs() < 1e-14);
        assert!((partition_circular(2, 2.0).unwrap() - 2.0).abs() < 1e-13);
        for beta in [1.0, 2.0, 4.0] {
            let q = partition_n2_quadrature(beta);
            assert!((q - partition_circular(2, beta).unwrap()).abs() < 1e-6, "beta={beta}");
        }
    }

    #[test]
    fn verblunsky_mass_two_ways() {
        for n in 1..8 {
            for beta in [0.5, 1.0, 2.0, 4.0] {
                let (a, b) = (verblunsky_mass_closed(n, beta), verblunsky_mass_product(n, beta));
                assert!(((a - b) / a).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn selberg_examples() {
        let euler = |x: f64, y: f64| (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp();
        assert!((selberg_value(1, 2.0, 3.0, 0.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        assert!((selberg_value(1, 0.7, 1.9, 0.4).unwrap() - euler(0.7, 1.9)).abs() < 1e-14);
        assert!((selberg_value(2, 1.0, 1.0, 1.0).unwrap() - 1.0 / 6.0).abs() < 1e-14);
        for (x, y, z) in [(1.0, 1.0, 0.5), (2.0, 1.0, 1.0), (0.8, 1.5, 0.3)] {
            let q = selberg_n2_quadrature(x, y, z);
            let s = selberg_value(2, x, y, z).unwrap();
            assert!(((q - s) / s).abs() < 1e-5, "({x},{y},{z}): {q} vs {s}");
        }
        assert!(selberg_value(2, 0.0, 1.0, 1.0).is_err());
    }
}
