//! Expected characteristic polynomial of the random Jacobi matrix.
//!
//! Replacing each `α_k` by its mean gives a deterministic sequence whose
//! degree-`n` folded polynomial is the average of `det(x - J)`; it equals the
//! monic Jacobi polynomial on `[-2, 2]` with parameters
//! `ã = 2(a+1)/β - 1`, `b̃ = 2(b+1)/β - 1`.

use crate::error::Result;
use crate::opuc::{monic_coeffs, reverse_coefficients, MonicPolynomial, VerblunskySeq};
use crate::szego::{classical_jacobi, fold_self_reciprocal, geronimus, JacobiOperator};

use super::{EnsembleKind, EnsembleSpec};

/// `E α_k`: `(2b-2a)/((2n-k-2)β+2a+2b+4)` for even `k`,
/// `(β-2a-2b-4)/((2n-k-2)β+2a+2b+4)` for odd `k`, and `α_{2n-1} = -1`.
pub fn expected_alphas(n: usize, beta: f64, a: f64, b: f64) -> Result<VerblunskySeq> {
    EnsembleSpec::jacobi(n, beta, a, b, 0).validate(EnsembleKind::Jacobi)?;
    let mut al = Vec::with_capacity(2 * n);
    for k in 0..2 * n - 1 {
        let den = (2.0 * n as f64 - k as f64 - 2.0) * beta + 2.0 * a + 2.0 * b + 4.0;
        let num = if k % 2 == 0 {
            2.0 * b - 2.0 * a
        } else {
            beta - 2.0 * a - 2.0 * b - 4.0
        };
        al.push(num / den);
    }
    al.push(-1.0);
    VerblunskySeq::from_real(&al)
}

pub fn shifted_parameters(beta: f64, a: f64, b: f64) -> (f64, f64) {
    (2.0 * (a + 1.0) / beta - 1.0, 2.0 * (b + 1.0) / beta - 1.0)
}

/// The three independent evaluations of the averaged polynomial.
#[derive(Debug, Clone)]
pub struct AomotoRoutes {
    /// Fold of `Φ_{2n}` built from the averaged coefficients.
    pub route_a: MonicPolynomial,
    /// Characteristic polynomial of the Geronimus matrix of the reversed
    /// averaged coefficients.
    pub route_b: MonicPolynomial,
    pub reversed_operator: JacobiOperator,
    /// Classical recurrence with the shifted parameters.
    pub classical: MonicPolynomial,
    pub classical_operator: JacobiOperator,
}

impl AomotoRoutes {
    pub fn max_discrepancy(&self) -> f64 {
        self.route_a
            .max_coeff_diff(&self.route_b)
            .max(self.route_a.max_coeff_diff(&self.classical))
            .max(self.route_b.max_coeff_diff(&self.classical))
    }
}

pub fn aomoto_routes(n: usize, beta: f64, a: f64, b: f64) -> Result<AomotoRoutes> {
    let v = expected_alphas(n, beta, a, b)?;
    let route_a = fold_self_reciprocal(&monic_coeffs(&v, 2 * n)?)?;
    let reversed_operator = geronimus(&reverse_coefficients(&v))?;
    let route_b = reversed_operator.charpoly();
    let (at, bt) = shifted_parameters(beta, a, b);
    let (classical_operator, classical) = classical_jacobi(at, bt, n)?;
    Ok(AomotoRoutes {
        route_a,
        route_b,
        reversed_operator,
        classical,
        classical_operator,
    })
}

/// `E det(x - J)` for the Jacobi model with parameters `(n, β, a, b)`.
pub fn expected_charpoly(n: usize, beta: f64, a: f64, b: f64) -> Result<MonicPolynomial> {
    let v = expected_alphas(n, beta, a, b)?;
    fold_self_reciprocal(&monic_coeffs(&v, 2 * n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::jacobi_alpha_law;

    #[test]
    fn means_match_beta_laws() {
        let (n, beta, a, b) = (4, 1.7, 0.3, 1.1);
        let v = expected_alphas(n, beta, a, b).unwrap();
        for k in 0..2 * n - 1 {
            let law = jacobi_alpha_law(n, beta, a, b, k).unwrap();
            assert!((v.alpha(k).re - law.mean()).abs() < 1e-15);
        }
    }

    #[test]
    fn degree_one() {
        let p = expected_charpoly(1, 2.0, 0.0, 1.0).unwrap();
        assert!((p.real_coeffs()[0] + 2.0 / 3.0).abs() < 1e-15);
        let (a, b) = (0.4, -0.3);
        let p = expected_charpoly(1, 3.3, a, b).unwrap();
        assert!((p.real_coeffs()[0] + 2.0 * (b - a) / (a + b + 2.0)).abs() < 1e-15);
    }

    #[test]
    fn routes_agree() {
        for n in 1..=6 {
            let r = aomoto_routes(n, 1.3, 0.2, -0.4).unwrap();
            assert!(r.max_discrepancy() < 1e-10, "n={n}: {}", r.max_discrepancy());
        }
    }

    #[test]
    fn symmetric_weight_has_parity() {
        let p = expected_charpoly(5, 2.5, 0.7, 0.7).unwrap().real_coeffs();
        for (i, c) in p.iter().enumerate() {
            if (5 - i) % 2 == 1 {
                assert!(c.abs() < 1e-12);
            }
        }
    }
}
