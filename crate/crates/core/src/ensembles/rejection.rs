//! Exact brute-force samplers for tiny `n`, used as oracles.
//!
//! Both draw uniform proposals and accept with probability
//! `density / envelope`, where the envelope is a proven upper bound:
//! `|e^{iθ_j} - e^{iθ_k}| ≤ 2`, `|x_j - x_k| ≤ 4`, and for `a, b ≥ 0`,
//! `(2-x)^a (2+x)^b ≤ 4^{max(a,b)}` on `[-2, 2]`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{check_domain, Error, Result};
use crate::rng::RngStream;

use super::density::{ln_partition_circular, ln_selberg_value, log_density_circular, log_density_jacobi};
use super::{Draw, EnsembleKind, EnsembleSpec, SampleBatch};

/// Acceptance probabilities below this are refused.
pub const MIN_ACCEPTANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionRun {
    pub batch: SampleBatch,
    pub proposals: u64,
    /// Exact acceptance probability from the partition function.
    pub expected_rate: f64,
}

impl RejectionRun {
    pub fn observed_rate(&self) -> f64 {
        self.batch.len() as f64 / self.proposals as f64
    }
}

fn run<F>(kind: EnsembleKind, spec: &EnsembleSpec, count: usize, rate: f64, mut propose: F, rng: &mut RngStream) -> Result<RejectionRun>
where
    F: FnMut(&mut RngStream) -> Result<Option<Vec<f64>>>,
{
    if rate < MIN_ACCEPTANCE {
        return Err(Error::EnvelopeTooLoose(rate));
    }
    let mut draws = Vec::with_capacity(count);
    let mut proposals = 0u64;
    while draws.len() < count {
        proposals += 1;
        if let Some(mut x) = propose(rng)? {
            x.sort_by(|a, b| a.total_cmp(b));
            draws.push(Draw {
                eigenvalues: x,
                alphas: None,
                weights: None,
            });
        }
    }
    Ok(RejectionRun {
        batch: SampleBatch { kind, spec: *spec, draws },
        proposals,
        expected_rate: rate,
    })
}

/// Uniform angles accepted with probability `|Δ|^β / 2^{βn(n-1)/2}`.
pub fn rejection_oracle_circular(spec: &EnsembleSpec, count: usize) -> Result<RejectionRun> {
    spec.validate(EnsembleKind::Circular)?;
    let (n, beta) = (spec.n, spec.beta);
    check_domain(n <= 4, "n", n as f64, "n <= 4 for the rejection oracle")?;
    check_domain(beta <= 8.0, "beta", beta, "beta <= 8 for the rejection oracle")?;
    let ln_env = beta * (n * (n - 1)) as f64 / 2.0 * LN_2;
    let rate = (ln_partition_circular(n, beta)? - ln_env).exp();
    let mut rng = spec.rng();
    run(
        EnsembleKind::Circular,
        spec,
        count,
        rate,
        |r| {
            let t: Vec<f64> = (0..n).map(|_| 2.0 * PI * r.open01()).collect();
            let accept = r.open01().ln() < log_density_circular(&t, beta) - ln_env;
            Ok(accept.then_some(t))
        },
        &mut rng,
    )
}

/// Uniform points on `[-2, 2]^n` accepted with probability
/// `|Δ|^β ∏(2-x)^a(2+x)^b / (4^{βn(n-1)/2} 4^{n max(a,b)})`.
pub fn rejection_oracle_jacobi(spec: &EnsembleSpec, count: usize) -> Result<RejectionRun> {
    spec.validate(EnsembleKind::Jacobi)?;
    let (n, beta, a, b) = (spec.n, spec.beta, spec.a, spec.b);
    check_domain(n <= 3, "n", n as f64, "n <= 3 for the rejection oracle")?;
    check_domain(a >= 0.0, "a", a, "a >= 0 for the rejection oracle")?;
    check_domain(b >= 0.0, "b", b, "b >= 0 for the rejection oracle")?;
    let ln4 = 2.0 * LN_2;
    let ln_env = (beta * (n * (n - 1)) as f64 / 2.0 + n as f64 * a.max(b)) * ln4;
    // Mass of the target on [-2,2]^n over the proposal volume 4^n:
    // 4^{βn(n-1)/2 + n(a+b)} S_n(b+1, a+1, β/2).
    let ln_mass = (beta * (n * (n - 1)) as f64 / 2.0 + n as f64 * (a + b)) * ln4
        + ln_selberg_value(n, b + 1.0, a + 1.0, beta / 2.0)?;
    let rate = (ln_mass - ln_env).exp();
    let mut rng = spec.rng();
    run(
        EnsembleKind::Jacobi,
        spec,
        count,
        rate,
        |r| {
            let x: Vec<f64> = (0..n).map(|_| 4.0 * r.open01() - 2.0).collect();
            let accept = r.open01().ln() < log_density_jacobi(&x, beta, a, b)? - ln_env;
            Ok(accept.then_some(x))
        },
        &mut rng,
    )
}
