//! Circular and Jacobi β-ensembles through their sparse matrix models.
//!
//! * Circular: `α_k ~ Θ_{β(n-k-1)+1}` independently for `k = 0..n-1`; the
//!   eigenvalues of the CMV matrix `LM` then have joint density proportional
//!   to `|Δ(e^{iθ_1}, …, e^{iθ_n})|^β`.
//! * Jacobi: real `α_k ~ B(s_k, t_k)` with
//!   `(s, t) = ((2n-k-2)β/4 + a + 1, (2n-k-2)β/4 + b + 1)` for even `k` and
//!   `((2n-k-3)β/4 + a + b + 2, (2n-k-1)β/4)` for odd `k`, `α_{2n-1} = -1`;
//!   the Geronimus matrix `J` then has eigenvalues with density proportional
//!   to `|Δ(x)|^β ∏ (2-x_j)^a (2+x_j)^b` on `[-2, 2]`.

pub mod aomoto;
pub mod density;
pub mod haar;
pub mod jacobian;
pub mod rejection;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cmv::cmv_spectral;
use crate::distributions::{sample_beta_sym, sample_theta, BetaSymParam, ThetaParam};
use crate::error::{check_domain, Result};
use crate::opuc::VerblunskySeq;
use crate::rng::RngStream;
use crate::szego::{geronimus, jacobi_spectral, INTERVAL_SLACK};

pub use aomoto::{aomoto_routes, expected_alphas, expected_charpoly, AomotoRoutes};
pub use density::{
    ln_partition_circular, ln_selberg_value, log_density_circular, log_density_jacobi,
    partition_circular, selberg_value,
};
pub use haar::{sample_haar_so, sample_haar_unitary};
pub use jacobian::{jacobian_check_real, jacobian_check_unitary, JacobianCheck};
pub use rejection::{rejection_oracle_circular, rejection_oracle_jacobi, RejectionRun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleKind {
    Circular,
    Jacobi,
}

impl EnsembleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Circular => "circular",
            Self::Jacobi => "jacobi",
        }
    }
}

/// One sampling task. `a`, `b` are ignored by the circular ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub beta: f64,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    pub seed: u64,
    #[serde(default)]
    pub stream_id: u64,
}

impl EnsembleSpec {
    pub fn circular(n: usize, beta: f64, seed: u64) -> Self {
        Self { n, beta, a: 0.0, b: 0.0, seed, stream_id: 0 }
    }

    pub fn jacobi(n: usize, beta: f64, a: f64, b: f64, seed: u64) -> Self {
        Self { n, beta, a, b, seed, stream_id: 0 }
    }

    pub fn with_stream(self, stream_id: u64) -> Self {
        Self { stream_id, ..self }
    }

    pub fn validate(&self, kind: EnsembleKind) -> Result<()> {
        check_domain(self.n >= 1, "n", self.n as f64, "n >= 1")?;
        check_domain(self.beta > 0.0 && self.beta.is_finite(), "beta", self.beta, "beta > 0")?;
        if kind == EnsembleKind::Jacobi {
            check_domain(self.a > -1.0 && self.a.is_finite(), "a", self.a, "a > -1")?;
            check_domain(self.b > -1.0 && self.b.is_finite(), "b", self.b, "b > -1")?;
        }
        Ok(())
    }

    pub fn rng(&self) -> RngStream {
        RngStream::new(self.seed, self.stream_id)
    }
}

/// One configuration: sorted eigen-angles in `[0, 2π)` (circular) or sorted
/// eigenvalues in `[-2, 2]` (Jacobi), with the coefficients and spectral
/// weights that produced them when available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Draw {
    pub eigenvalues: Vec<f64>,
    pub alphas: Option<VerblunskySeq>,
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub kind: EnsembleKind,
    pub spec: EnsembleSpec,
    pub draws: Vec<Draw>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    /// Scalar summaries used for distribution comparisons: sorted cyclic
    /// gaps for the circle, sorted eigenvalues for the interval.
    pub fn ks_vectors(&self) -> Vec<Vec<f64>> {
        self.draws
            .iter()
            .map(|d| match self.kind {
                EnsembleKind::Circular => sorted_gaps(&d.eigenvalues),
                EnsembleKind::Jacobi => d.eigenvalues.clone(),
            })
            .collect()
    }

    /// Largest distance of any eigenvalue from its admissible set.
    pub fn max_structural_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for d in &self.draws {
            for &x in &d.eigenvalues {
                let v = match self.kind {
                    EnsembleKind::Circular => (-x).max(x - 2.0 * PI).max(0.0),
                    EnsembleKind::Jacobi => (x.abs() - 2.0).max(0.0),
                };
                worst = worst.max(v);
            }
        }
        worst
    }
}

/// Sorted nearest-neighbour gaps of angles on the circle (cyclically).
pub fn sorted_gaps(thetas: &[f64]) -> Vec<f64> {
    let mut t = thetas.to_vec();
    t.sort_by(|a, b| a.total_cmp(b));
    let n = t.len();
    let mut gaps: Vec<f64> = (0..n)
        .map(|j| {
            if j + 1 < n {
                t[j + 1] - t[j]
            } else {
                t[0] + 2.0 * PI - t[n - 1]
            }
        })
        .collect();
    gaps.sort_by(|a, b| a.total_cmp(b));
    gaps
}

/// `α_k ~ Θ_{β(n-k-1)+1}`, `k = 0..n-1`.
pub fn circular_alphas(n: usize, beta: f64, rng: &mut RngStream) -> Result<VerblunskySeq> {
    let alphas = (0..n)
        .map(|k| {
            let nu = beta * (n - k - 1) as f64 + 1.0;
            ThetaParam::new(nu).map(|p| sample_theta(p, rng))
        })
        .collect::<Result<Vec<_>>>()?;
    VerblunskySeq::new(alphas)
}

/// Law of `α_k` in the Jacobi model, `k = 0..2n-2`.
pub fn jacobi_alpha_law(n: usize, beta: f64, a: f64, b: f64, k: usize) -> Result<BetaSymParam> {
    let kk = k as f64;
    let nn = n as f64;
    if k % 2 == 0 {
        let c = (2.0 * nn - kk - 2.0) * beta / 4.0;
        BetaSymParam::new(c + a + 1.0, c + b + 1.0)
    } else {
        BetaSymParam::new(
            (2.0 * nn - kk - 3.0) * beta / 4.0 + a + b + 2.0,
            (2.0 * nn - kk - 1.0) * beta / 4.0,
        )
    }
}

/// Real coefficients `α_0..α_{2n-2}` from their beta laws, then `α_{2n-1} = -1`.
pub fn jacobi_alphas(n: usize, beta: f64, a: f64, b: f64, rng: &mut RngStream) -> Result<VerblunskySeq> {
    let mut al = Vec::with_capacity(2 * n);
    for k in 0..2 * n - 1 {
        al.push(sample_beta_sym(jacobi_alpha_law(n, beta, a, b, k)?, rng));
    }
    al.push(-1.0);
    VerblunskySeq::from_real(&al)
}

pub fn sample_circular(spec: &EnsembleSpec, count: usize) -> Result<SampleBatch> {
    spec.validate(EnsembleKind::Circular)?;
    let mut rng = spec.rng();
    let mut draws = Vec::with_capacity(count);
    for _ in 0..count {
        let v = circular_alphas(spec.n, spec.beta, &mut rng)?;
        let m = cmv_spectral(&v)?;
        draws.push(Draw {
            eigenvalues: m.thetas,
            alphas: Some(v),
            weights: Some(m.weights),
        });
    }
    Ok(SampleBatch {
        kind: EnsembleKind::Circular,
        spec: *spec,
        draws,
    })
}

pub fn sample_jacobi(spec: &EnsembleSpec, count: usize) -> Result<SampleBatch> {
    spec.validate(EnsembleKind::Jacobi)?;
    let mut rng = spec.rng();
    let mut draws = Vec::with_capacity(count);
    for _ in 0..count {
        let v = jacobi_alphas(spec.n, spec.beta, spec.a, spec.b, &mut rng)?;
        let m = jacobi_spectral(&geronimus(&v)?)?;
        debug_assert!(m.xs.iter().all(|x| x.abs() <= 2.0 + INTERVAL_SLACK));
        draws.push(Draw {
            eigenvalues: m.xs,
            alphas: Some(v),
            weights: Some(m.weights),
        });
    }
    Ok(SampleBatch {
        kind: EnsembleKind::Jacobi,
        spec: *spec,
        draws,
    })
}

pub fn sample(kind: EnsembleKind, spec: &EnsembleSpec, count: usize) -> Result<SampleBatch> {
    match kind {
        EnsembleKind::Circular => sample_circular(spec, count),
        EnsembleKind::Jacobi => sample_jacobi(spec, count),
    }
}
