//! Validation suites: each check compares two independent computations of
//! the same quantity and records the worst discrepancy against a tolerance.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::cmv::{cmv_det_check, cmv_eigen, cmv_spectral, householder_reduce};
use crate::distributions::{sample_simplex, BetaSymParam, ThetaParam};
use crate::ensembles::{
    aomoto_routes, circular_alphas, expected_charpoly, jacobian_check_real,
    jacobian_check_unitary, partition_circular, rejection_oracle_circular, rejection_oracle_jacobi,
    sample_circular, sample_haar_so, sample_haar_unitary, sample_jacobi, selberg_value, EnsembleSpec,
    SampleBatch,
};
use crate::ensembles::density::{partition_n2_quadrature, selberg_n2_quadrature};
use crate::error::{Error, Result};
use crate::io::{write_csv, write_jsonl, SCHEMA_VERSION};
use crate::ks::{bonferroni_two_sample, ks_one_sample};
use crate::opuc::{monic_coeffs, reverse_coefficients, szego_evaluate, toeplitz_det, SpectralMeasureCircle, VerblunskySeq};
use crate::rng::RngStream;
use crate::szego::{
    geronimus, jacobi_spectral, push_to_interval, split_lm_plus_ml, twisted_coeffs, SpectralMeasureInterval,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Ensembles,
    Integrals,
    Jacobians,
    All,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Identities => "identities",
            Self::Ensembles => "ensembles",
            Self::Integrals => "integrals",
            Self::Jacobians => "jacobians",
            Self::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Self::Identities),
            "ensembles" => Ok(Self::Ensembles),
            "integrals" => Ok(Self::Integrals),
            "jacobians" => Ok(Self::Jacobians),
            "all" => Ok(Self::All),
            _ => Err(Error::Format(format!(
                "unknown suite `{s}` (identities | ensembles | integrals | jacobians | all)"
            ))),
        }
    }
}

/// Named tolerances with their defaults; overrides must use a known key.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances(BTreeMap<String, f64>);

impl Default for Tolerances {
    fn default() -> Self {
        let pairs = [
            ("toeplitz", 1e-8),
            ("det_cmv", 1e-9),
            ("commuting_diagram", 1e-8),
            ("split_residual", 1e-10),
            ("split_j", 1e-10),
            ("split_tilde", 1e-8),
            ("twisted", 1e-8),
            ("reversal", 1e-10),
            ("folding", 1e-9),
            ("partition", 1e-6),
            ("selberg", 1e-5),
            ("aomoto_exact", 1e-10),
            ("aomoto_mc_sigmas", 4.0),
            ("jacobian", 1e-4),
            ("ks_level", 1e-3),
            ("haar_last_alpha", 1e-9),
            ("unimodularity", 1e-10),
            ("interval", 1e-10),
        ];
        Self(pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect())
    }
}

impl Tolerances {
    pub fn get(&self, key: &str) -> f64 {
        self.0[key]
    }

    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match self.0.get_mut(key) {
            Some(v) if value > 0.0 && value.is_finite() => {
                *v = value;
                Ok(())
            }
            Some(_) => Err(Error::Format(format!("tolerance {key} must be positive, got {value}"))),
            None => Err(Error::Format(format!(
                "unknown tolerance key `{key}`; known keys: {}",
                self.0.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass when `measured ≤ tolerance`.
    AtMost,
    /// Pass when `measured ≥ tolerance` (p-values).
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity or law being checked, as a formula.
    pub anchor: String,
    pub measured: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub fast: bool,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ValidateOptions {
    pub fast: bool,
    pub seed: u64,
    pub tolerances: Tolerances,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            fast: false,
            seed: 20_240_601,
            tolerances: Tolerances::default(),
        }
    }
}

struct Ctx<'a> {
    opts: &'a ValidateOptions,
    checks: Vec<Check>,
    stream: u64,
}

impl Ctx<'_> {
    fn rng(&mut self) -> RngStream {
        self.stream += 1;
        RngStream::new(self.opts.seed, self.stream)
    }

    fn seed(&mut self) -> (u64, u64) {
        self.stream += 1;
        (self.opts.seed, self.stream)
    }

    fn tol(&self, key: &str) -> f64 {
        self.opts.tolerances.get(key)
    }

    fn record(&mut self, name: &str, anchor: &str, tol_key: &str, cmp: Comparison, measured: Result<f64>) {
        let tolerance = self.tol(tol_key);
        let (measured, detail) = match measured {
            Ok(m) => (m, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let pass = match cmp {
            Comparison::AtMost => measured <= tolerance,
            Comparison::AtLeast => measured >= tolerance,
        };
        log::info!("{name}: measured {measured:e}, tolerance {tolerance:e}, pass {pass}");
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            measured,
            tolerance,
            comparison: cmp,
            pass,
            detail,
        });
    }
}

pub fn run_suite(suite: Suite, opts: &ValidateOptions) -> Report {
    let mut ctx = Ctx {
        opts,
        checks: Vec::new(),
        stream: 0,
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Identities {
        identities(&mut ctx);
    }
    if all || suite == Suite::Integrals {
        integrals(&mut ctx);
    }
    if all || suite == Suite::Jacobians {
        jacobians(&mut ctx);
    }
    if all || suite == Suite::Ensembles {
        ensembles(&mut ctx);
    }
    let pass = ctx.checks.iter().all(|c| c.pass);
    Report {
        schema_version: SCHEMA_VERSION,
        suite: suite.as_str().to_string(),
        fast: opts.fast,
        seed: opts.seed,
        tolerances: opts.tolerances.clone(),
        checks: ctx.checks,
        pass,
    }
}

// ---------------------------------------------------------------- fixtures

/// Random complex sequence of length `m`: interior `|α| ≤ 0.95`, last unimodular.
pub fn random_complex_seq(m: usize, rng: &mut RngStream) -> Result<VerblunskySeq> {
    let mut a: Vec<Complex64> = (0..m - 1)
        .map(|_| Complex64::from_polar(0.95 * rng.open01().sqrt(), 2.0 * PI * rng.open01()))
        .collect();
    a.push(Complex64::from_polar(1.0, 2.0 * PI * rng.open01()));
    VerblunskySeq::new(a)
}

/// Random real sequence of length `2n` with interior `|α| < 0.95` and `α_{2n-1} = -1`.
pub fn random_real_seq(n: usize, rng: &mut RngStream) -> Result<VerblunskySeq> {
    let mut a: Vec<f64> = (0..2 * n - 1).map(|_| 1.9 * rng.open01() - 0.95).collect();
    a.push(-1.0);
    VerblunskySeq::from_real(&a)
}

/// Uniform angles and simplex weights, redrawn until the angles are
/// `min_gap`-separated and each weight exceeds `min_weight`.
pub fn random_circle_measure(n: usize, min_gap: f64, min_weight: f64, rng: &mut RngStream) -> Result<SpectralMeasureCircle> {
    loop {
        let t: Vec<f64> = (0..n).map(|_| 2.0 * PI * rng.open01()).collect();
        let w = sample_simplex(n, rng)?;
        if w.iter().any(|&x| x < min_weight) {
            continue;
        }
        let m = SpectralMeasureCircle::new(t, w)?;
        if n < 2 || m.min_gap() >= min_gap {
            return Ok(m);
        }
    }
}

/// Points in `(-2, 2)` with `θ = arccos(x/2)` separated from each other and
/// from `0, π` by `min_gap`; simplex weights above `min_weight`.
pub fn random_interval_measure(n: usize, min_gap: f64, min_weight: f64, rng: &mut RngStream) -> Result<SpectralMeasureInterval> {
    loop {
        let t: Vec<f64> = (0..n).map(|_| PI * rng.open01()).collect();
        let mut s = t.clone();
        s.push(0.0);
        s.push(PI);
        s.sort_by(|a, b| a.total_cmp(b));
        if s.windows(2).any(|w| w[1] - w[0] < min_gap) {
            continue;
        }
        let w = sample_simplex(n, rng)?;
        if w.iter().any(|&x| x < min_weight) {
            continue;
        }
        return SpectralMeasureInterval::new(t.iter().map(|x| 2.0 * x.cos()).collect(), w);
    }
}

fn max_over<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    let mut worst = 0.0f64;
    for r in it {
        let v = r?;
        if v.is_nan() {
            return Err(Error::Numerical("NaN in comparison".into()));
        }
        worst = worst.max(v);
    }
    Ok(worst)
}

// ---------------------------------------------------------------- identities

fn identities(ctx: &mut Ctx) {
    let mut rng = ctx.rng();
    let r = max_over((0..1000).map(|i| {
        let m = random_circle_measure(1 + i % 12, 0.0, 0.0, &mut rng)?;
        Ok(toeplitz_det(&m)?.relative_gap())
    }));
    ctx.record(
        "toeplitz",
        "|Δ(e^{iθ})|² ∏μ_j = ∏_{k≤n-2} (1-|α_k|²)^{n-k-1}",
        "toeplitz",
        Comparison::AtMost,
        r,
    );

    let mut rng = ctx.rng();
    let r = max_over((0..200).map(|i| {
        let v = random_complex_seq(1 + i % 15, &mut rng)?;
        let (a, b) = cmv_det_check(&v)?;
        Ok((a - b).norm())
    }));
    ctx.record("det_cmv", "det(LM) = ∏λ_j = (-1)^{m-1} conj(α_{m-1})", "det_cmv", Comparison::AtMost, r);

    let mut rng = ctx.rng();
    let r = max_over((0..200).map(|i| {
        let v = random_real_seq(1 + i % 16, &mut rng)?;
        let lhs = push_to_interval(&cmv_spectral(&v)?)?;
        let rhs = jacobi_spectral(&geronimus(&v)?)?;
        Ok(lhs.max_diff(&rhs))
    }));
    ctx.record(
        "commuting_diagram",
        "push(spectral(LM)) = spectral(J), J from b_{k+1}, a_{k+1} Geronimus relations",
        "commuting_diagram",
        Comparison::AtMost,
        r,
    );

    let mut rng = ctx.rng();
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    let r: Result<()> = (0..200).try_for_each(|i| {
        let v = random_real_seq(1 + i % 8, &mut rng)?;
        let s = split_lm_plus_ml(&v)?;
        let g = geronimus(&v)?;
        let dj = s.j.b.iter().chain(&s.j.a).zip(g.b.iter().chain(&g.a)).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        let nu = jacobi_spectral(&g)?;
        let al = v.real_parts();
        let mass = nu.integrate(|x| 4.0 - x * x);
        let expect = 2.0 * (1.0 - al[0] * al[0]) * (1.0 - al[1]);
        let tilde = if nu.len() == 1 {
            // (4 - x²) dν reduces to a point mass; J̃ is 1×1 at the same point
            (jacobi_spectral(&s.j_tilde)?.xs[0] - nu.xs[0]).abs()
        } else {
            jacobi_spectral(&s.j_tilde)?.max_diff(&nu.tilt(|x| 4.0 - x * x)?)
        };
        worst.0 = worst.0.max(s.residual);
        worst.1 = worst.1.max(dj);
        worst.2 = worst.2.max(tilde).max((mass - expect).abs());
        Ok(())
    });
    let anchor = "S†(LM+ML)S = J ⊕ J̃ with S_k = (1/√2)[[-√(1-α_k), √(1+α_k)], [√(1+α_k), √(1-α_k)]]";
    ctx.record("split_residual", anchor, "split_residual", Comparison::AtMost, r.clone().map(|_| worst.0));
    ctx.record("split_j_matches_geronimus", anchor, "split_j", Comparison::AtMost, r.clone().map(|_| worst.1));
    ctx.record(
        "split_tilde_measure",
        "spectral measure of J̃ = (4-x²) dν / (2(1-α_0²)(1-α_1))",
        "split_tilde",
        Comparison::AtMost,
        r.map(|_| worst.2),
    );

    for plus in [true, false] {
        let mut rng = ctx.rng();
        let sign = if plus { 1.0 } else { -1.0 };
        let r = max_over((0..100).map(|i| {
            let v = random_real_seq(2 + i % 7, &mut rng)?;
            let nu = jacobi_spectral(&geronimus(&v)?)?;
            let target = nu.tilt(|x| 2.0 + sign * x)?;
            Ok(jacobi_spectral(&twisted_coeffs(&v, plus)?)?.max_diff(&target))
        }));
        let (name, anchor) = if plus {
            ("twisted_plus", "spectral measure of the + twisted operator = ½(1+α_0)⁻¹(2+x) dν")
        } else {
            ("twisted_minus", "spectral measure of the - twisted operator = ½(1-α_0)⁻¹(2-x) dν")
        };
        ctx.record(name, anchor, "twisted", Comparison::AtMost, r);
    }

    let mut rng = ctx.rng();
    let r = max_over((0..100).map(|i| {
        let m = 1 + i % 10;
        let v = random_complex_seq(m, &mut rng)?;
        Ok(monic_coeffs(&v, m)?.max_coeff_diff(&monic_coeffs(&reverse_coefficients(&v), m)?))
    }));
    ctx.record(
        "reversal",
        "Φ_m(α) = Φ_m(α̃), α̃_k = -e^{iφ} conj(α_{m-2-k})",
        "reversal",
        Comparison::AtMost,
        r,
    );

    let mut rng = ctx.rng();
    let r = max_over((0..50).map(|i| {
        let n = 1 + i % 10;
        let v = random_real_seq(n, &mut rng)?;
        let j = geronimus(&v)?;
        let z = Complex64::from_polar(1.0, 2.0 * PI * rng.open01());
        let x = (z + 1.0 / z).re;
        let (pz, _) = szego_evaluate(&v, z, 2 * n)?;
        let (pzi, _) = szego_evaluate(&v, 1.0 / z, 2 * n)?;
        let folded = 0.5 * (z.powi(-(n as i32)) * pz + z.powu(n as u32) * pzi);
        let direct = j.charpoly_at(x);
        Ok((folded.re - direct).abs().max(folded.im.abs()) / direct.abs().max(1.0))
    }));
    ctx.record(
        "folding",
        "det(x-J) = ½(z^{-n}Φ_{2n}(z) + z^nΦ_{2n}(1/z)), x = z + 1/z",
        "folding",
        Comparison::AtMost,
        r,
    );
}

// ---------------------------------------------------------------- integrals

fn integrals(ctx: &mut Ctx) {
    let r = max_over([1.0, 2.0, 3.0, 4.0].iter().map(|&beta| {
        Ok((partition_n2_quadrature(beta) - partition_circular(2, beta)?).abs())
    }));
    ctx.record(
        "partition_n2",
        "(1/2π)∫|2sin(θ/2)|^β dθ = Γ(β+1)/Γ(β/2+1)²",
        "partition",
        Comparison::AtMost,
        r,
    );

    let r = max_over([(1.0, 1.0, 1.0), (1.0, 1.0, 0.5), (2.0, 1.0, 1.0)].iter().map(|&(x, y, z)| {
        let s = selberg_value(2, x, y, z)?;
        Ok(((selberg_n2_quadrature(x, y, z) - s) / s).abs())
    }));
    ctx.record(
        "selberg_n2",
        "S_n = ∏_r Γ(rz+x)Γ(rz+y)Γ((r+1)z+1) / (Γ(z+1)Γ((n+r-1)z+x+y))",
        "selberg",
        Comparison::AtMost,
        r,
    );

    let mut cases = Vec::new();
    for n in 1..=8 {
        for beta in [0.5, 1.0, 2.0, 4.0] {
            for a in [-0.5, 0.0, 1.0] {
                for b in [-0.5, 0.0, 1.0] {
                    cases.push((n, beta, a, b));
                }
            }
        }
    }
    let r = max_over(cases.iter().map(|&(n, beta, a, b)| Ok(aomoto_routes(n, beta, a, b)?.max_discrepancy())));
    ctx.record(
        "aomoto_exact",
        "E det(x-J) = fold(Φ_{2n}(Eα)) = charpoly(J(reverse(Eα))) = monic Jacobi polynomial with ã = 2(a+1)/β - 1, b̃ = 2(b+1)/β - 1",
        "aomoto_exact",
        Comparison::AtMost,
        r,
    );

    let (seed, stream) = ctx.seed();
    let r = aomoto_mc(seed, stream);
    ctx.record(
        "aomoto_monte_carlo",
        "mean of det(x-J) over draws vs E det(x-J), in standard errors",
        "aomoto_mc_sigmas",
        Comparison::AtMost,
        r,
    );
}

/// Largest `|mean - expected| / SE` over the non-leading coefficients.
pub fn aomoto_mc(seed: u64, stream: u64) -> Result<f64> {
    let (n, beta, a, b, count) = (4, 1.7, 0.3, 1.1, 20_000);
    let expected = expected_charpoly(n, beta, a, b)?.real_coeffs();
    let batch = sample_jacobi(&EnsembleSpec::jacobi(n, beta, a, b, seed).with_stream(stream), count)?;
    let mut sum = vec![0.0; n];
    let mut sq = vec![0.0; n];
    for d in &batch.draws {
        let c = geronimus(d.alphas.as_ref().expect("sampler keeps coefficients"))?.charpoly().real_coeffs();
        for i in 0..n {
            sum[i] += c[i];
            sq[i] += c[i] * c[i];
        }
    }
    let nf = count as f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        let mean = sum[i] / nf;
        let var = (sq[i] / nf - mean * mean) * nf / (nf - 1.0);
        worst = worst.max((mean - expected[i]).abs() / (var / nf).sqrt());
    }
    Ok(worst)
}

// ---------------------------------------------------------------- jacobians

fn jacobians(ctx: &mut Ctx) {
    let mut rng = ctx.rng();
    let r = max_over([2usize, 3].iter().flat_map(|&n| (0..20).map(move |_| n)).map(|n| {
        let m = random_circle_measure(n, 0.2, 0.05, &mut rng)?;
        Ok(jacobian_check_unitary(&m, 1e-5)?.relative_error())
    }));
    ctx.record(
        "jacobian_unitary",
        "|∂(α,φ)/∂(θ,μ)| = 2^{1-n}|Δ(e^{iθ})|² / ∏_{k≤n-2}(1-|α_k|²)^{n-k-2}",
        "jacobian",
        Comparison::AtMost,
        r,
    );
    let mut rng = ctx.rng();
    let r = max_over([2usize, 3].iter().flat_map(|&n| (0..20).map(move |_| n)).map(|n| {
        let m = random_interval_measure(n, 0.2, 0.05, &mut rng)?;
        Ok(jacobian_check_real(&m, 1e-5)?.relative_error())
    }));
    ctx.record(
        "jacobian_real",
        "|∂α/∂(θ,μ)| = 2^{1-n}|Δ(x)|² / ∏_{k≤2n-2}(1-α_k²)^{(2n-k-3)/2}",
        "jacobian",
        Comparison::AtMost,
        r,
    );
}

// ---------------------------------------------------------------- ensembles

fn ks_pair(a: Result<SampleBatch>, b: Result<SampleBatch>, level: f64) -> Result<(bool, f64, usize)> {
    let (a, b) = (a?, b?);
    let va = a.ks_vectors();
    let dim = va.first().map_or(1, Vec::len);
    let (ok, p) = bonferroni_two_sample(&va, &b.ks_vectors(), level);
    Ok((ok, p, dim))
}

fn ensembles(ctx: &mut Ctx) {
    let level = ctx.tol("ks_level");
    let draws = 10_000;
    let circ_n: &[usize] = if ctx.opts.fast { &[2] } else { &[2, 3] };
    let circ_beta: &[f64] = if ctx.opts.fast { &[1.0, 2.0] } else { &[0.5, 1.0, 2.0, 4.0] };
    for &n in circ_n {
        for &beta in circ_beta {
            let (s1, t1) = ctx.seed();
            let (s2, t2) = ctx.seed();
            let model = sample_circular(&EnsembleSpec::circular(n, beta, s1).with_stream(t1), draws);
            let oracle = rejection_oracle_circular(&EnsembleSpec::circular(n, beta, s2).with_stream(t2), draws).map(|r| r.batch);
            record_ks(ctx, &format!("circular_vs_rejection_n{n}_beta{beta}"), "θ density ∝ |Δ(e^{iθ})|^β", ks_pair(model, oracle, level));
        }
    }
    let jac_beta: &[f64] = if ctx.opts.fast { &[2.0] } else { &[1.0, 2.0] };
    for &beta in jac_beta {
        let (s1, t1) = ctx.seed();
        let (s2, t2) = ctx.seed();
        let model = sample_jacobi(&EnsembleSpec::jacobi(2, beta, 0.0, 0.0, s1).with_stream(t1), draws);
        let oracle = rejection_oracle_jacobi(&EnsembleSpec::jacobi(2, beta, 0.0, 0.0, s2).with_stream(t2), draws).map(|r| r.batch);
        record_ks(ctx, &format!("jacobi_vs_rejection_n2_beta{beta}"), "x density ∝ |Δ(x)|^β ∏(2-x_j)^a(2+x_j)^b", ks_pair(model, oracle, level));
    }
    if ctx.opts.fast {
        return;
    }

    let mut rng = ctx.rng();
    let r = haar_unitary_marginals(4, 5000, level, &mut rng);
    record_ks(ctx, "haar_u4_verblunsky", "Haar U(n): α_j ~ Θ_{2n-2j-1} independently", r);

    let mut rng = ctx.rng();
    match haar_so_marginals(3, 5000, level, &mut rng) {
        Ok((ok, p, dim, last)) => {
            record_ks(ctx, "haar_so6_verblunsky", "Haar SO(2n): α_k ~ B((2n-k-1)/2, (2n-k-1)/2)", Ok((ok, p, dim)));
            ctx.record("haar_so6_last_alpha", "Haar SO(2n): α_{2n-1} = -1", "haar_last_alpha", Comparison::AtMost, Ok(last));
        }
        Err(e) => {
            record_ks(ctx, "haar_so6_verblunsky", "Haar SO(2n): α_k ~ B((2n-k-1)/2, (2n-k-1)/2)", Err(e.clone()));
            ctx.record("haar_so6_last_alpha", "Haar SO(2n): α_{2n-1} = -1", "haar_last_alpha", Comparison::AtMost, Err(e));
        }
    }

    let mut rng = ctx.rng();
    let r = max_over([1usize, 2, 5, 10, 20, 50].iter().flat_map(|&n| [0.5, 2.0, 6.0].map(|b| (n, b))).map(|(n, beta)| {
        let mut worst = 0.0f64;
        for _ in 0..5 {
            worst = worst.max(cmv_eigen(&circular_alphas(n, beta, &mut rng)?)?.max_unimodularity_defect());
        }
        Ok(worst)
    }));
    ctx.record("cmv_unimodularity", "|λ_j| = 1 for eigenvalues of LM", "unimodularity", Comparison::AtMost, r);

    let (seed, _) = ctx.seed();
    let r = max_over([1usize, 2, 5, 10, 20, 50].iter().flat_map(|&n| [(0.5, -0.9, 3.0), (2.0, 0.0, 0.0), (6.0, 2.0, -0.5)].map(|p| (n, p))).map(|(n, (beta, a, b))| {
        Ok(sample_jacobi(&EnsembleSpec::jacobi(n, beta, a, b, seed), 20)?.max_structural_violation())
    }));
    ctx.record("jacobi_in_interval", "eigenvalues of J lie in [-2, 2]", "interval", Comparison::AtMost, r);

    let (seed, _) = ctx.seed();
    let r = rerun_identical(seed);
    ctx.record("byte_identical_rerun", "same seed ⇒ same bytes", "interval", Comparison::AtMost, r);
}

fn record_ks(ctx: &mut Ctx, name: &str, anchor: &str, r: Result<(bool, f64, usize)>) {
    // Bonferroni: each of `dim` components is tested at level/dim; the
    // recorded value is the smallest p-value scaled back by dim.
    let r = r.map(|(_, p, dim)| (p * dim as f64).min(1.0));
    ctx.record(name, anchor, "ks_level", Comparison::AtLeast, r);
}

/// Householder-reduce Haar unitaries; KS of `|α_j|²` against the `Θ_{2n-2j-1}`
/// radial law and of `arg α_j` against the uniform law.
pub fn haar_unitary_marginals(n: usize, count: usize, level: f64, rng: &mut RngStream) -> Result<(bool, f64, usize)> {
    let mut alphas: Vec<Vec<Complex64>> = vec![Vec::with_capacity(count); n];
    for _ in 0..count {
        let v = householder_reduce(&sample_haar_unitary(n, rng)?, false)?;
        for j in 0..n {
            alphas[j].push(v.alpha(j));
        }
    }
    let mut ps = Vec::new();
    for (j, a) in alphas.iter().enumerate() {
        let nu = (2 * n - 2 * j - 1) as f64;
        let phases: Vec<f64> = a.iter().map(|z| crate::opuc::wrap_angle(z.arg())).collect();
        ps.push(ks_one_sample(&phases, |t| t / (2.0 * PI)).p_value);
        if nu > 1.0 {
            let p = ThetaParam::new(nu)?;
            let r2: Vec<f64> = a.iter().map(|z| z.norm_sqr()).collect();
            ps.push(ks_one_sample(&r2, |s| p.radial_cdf(s)).p_value);
        }
    }
    let min_p = ps.iter().cloned().fold(1.0, f64::min);
    Ok((min_p >= level / ps.len() as f64, min_p, ps.len()))
}

/// Real-form reduction of Haar `SO(2n)`; KS of `α_k` against
/// `B((2n-k-1)/2, (2n-k-1)/2)` and the largest `|α_{2n-1} + 1|`.
pub fn haar_so_marginals(n: usize, count: usize, level: f64, rng: &mut RngStream) -> Result<(bool, f64, usize, f64)> {
    let m = 2 * n;
    let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(count); m - 1];
    let mut last = 0.0f64;
    for _ in 0..count {
        let v = householder_reduce(&sample_haar_so(m, rng)?, true)?;
        let al = v.require_real()?;
        for k in 0..m - 1 {
            cols[k].push(al[k]);
        }
        last = last.max((al[m - 1] + 1.0).abs());
    }
    let mut min_p = 1.0f64;
    for (k, xs) in cols.iter().enumerate() {
        let s = (m - k - 1) as f64 / 2.0;
        let law = BetaSymParam::new(s, s)?;
        min_p = min_p.min(ks_one_sample(xs, |x| law.cdf(x)).p_value);
    }
    Ok((min_p >= level / (m - 1) as f64, min_p, m - 1, last))
}

/// Samples twice from the same seed and compares serialised bytes;
/// returns 0 when identical.
pub fn rerun_identical(seed: u64) -> Result<f64> {
    let mut outs = Vec::new();
    for _ in 0..2 {
        let c = sample_circular(&EnsembleSpec::circular(5, 1.5, seed), 50)?;
        let j = sample_jacobi(&EnsembleSpec::jacobi(4, 2.5, 0.5, -0.5, seed), 50)?;
        let mut buf = Vec::new();
        write_csv(&c, true, &mut buf)?;
        write_jsonl(&j, true, &mut buf)?;
        outs.push(buf);
    }
    Ok(if outs[0] == outs[1] { 0.0 } else { 1.0 })
}
