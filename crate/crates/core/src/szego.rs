//! From the circle to the interval `[-2, 2]`.
//!
//! A conjugation-symmetric measure on the circle pushes forward under
//! `x = z + 1/z` to a measure on `[-2, 2]`. On the level of recurrence
//! coefficients this is the Geronimus map from real Verblunsky coefficients
//! (with `α_{2n-1} = -1`) to a Jacobi matrix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmv::build_cmv;
use crate::error::{Error, Result};
use crate::linalg::{tridiag_eigen, CMatrix};
use crate::opuc::{monic_coeffs, MonicPolynomial, SpectralMeasureCircle, VerblunskySeq};

/// Tolerance for pairing `±θ` support points and their weights.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Slack allowed outside `[-2, 2]`.
pub const INTERVAL_SLACK: f64 = 1e-10;

/// Real symmetric tridiagonal matrix: diagonal `b_1..b_n`, off-diagonal
/// `a_1..a_{n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiOperator {
    pub b: Vec<f64>,
    pub a: Vec<f64>,
}

impl JacobiOperator {
    pub fn new(b: Vec<f64>, a: Vec<f64>) -> Result<Self> {
        if b.is_empty() || a.len() + 1 != b.len() {
            return Err(Error::InvalidSequence(format!(
                "need n ≥ 1 diagonal and n-1 off-diagonal entries, got {} and {}",
                b.len(),
                a.len()
            )));
        }
        if let Some((k, &ak)) = a.iter().enumerate().find(|(_, &x)| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidSequence(format!("a_{} = {ak} is not positive", k + 1)));
        }
        if let Some(bk) = b.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidSequence(format!("non-finite diagonal entry {bk}")));
        }
        Ok(Self { b, a })
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    /// `det(x - J)` by the three-term recurrence
    /// `P_{k+1} = (x - b_{k+1}) P_k - a_k² P_{k-1}`.
    pub fn charpoly(&self) -> MonicPolynomial {
        let mut prev: Vec<f64> = vec![1.0];
        let mut cur: Vec<f64> = vec![-self.b[0], 1.0];
        for k in 1..self.dim() {
            let a2 = self.a[k - 1] * self.a[k - 1];
            let mut next = vec![0.0; k + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= self.b[k] * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= a2 * c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        MonicPolynomial::from_real(&cur)
    }

    /// `det(x - J)` evaluated directly.
    pub fn charpoly_at(&self, x: f64) -> f64 {
        let (mut prev, mut cur) = (1.0, x - self.b[0]);
        for k in 1..self.dim() {
            let next = (x - self.b[k]) * cur - self.a[k - 1] * self.a[k - 1] * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            m[i][i] = self.b[i];
            if i + 1 < n {
                m[i][i + 1] = self.a[i];
                m[i + 1][i] = self.a[i];
            }
        }
        m
    }
}

/// Point masses on `[-2, 2]`, sorted by position.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeasureInterval {
    pub xs: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpectralMeasureInterval {
    /// Validates and sorts. Points must be distinct and within
    /// `[-2, 2]` up to [`INTERVAL_SLACK`]; weights positive with total 1.
    pub fn new(xs: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if xs.is_empty() || xs.len() != weights.len() {
            return Err(Error::DegenerateMeasure(format!(
                "{} points with {} weights",
                xs.len(),
                weights.len()
            )));
        }
        if let Some(x) = xs.iter().find(|x| !(x.abs() <= 2.0 + INTERVAL_SLACK)) {
            return Err(Error::DegenerateMeasure(format!("point {x} outside [-2, 2]")));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0)) {
            return Err(Error::DegenerateMeasure(format!("non-positive weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::DegenerateMeasure(format!("total mass {total}")));
        }
        let mut idx: Vec<usize> = (0..xs.len()).collect();
        idx.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
        let xs: Vec<f64> = idx.iter().map(|&i| xs[i]).collect();
        let weights: Vec<f64> = idx.iter().map(|&i| weights[i]).collect();
        if xs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::DegenerateMeasure("coincident support points".into()));
        }
        Ok(Self { xs, weights })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.xs.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// `f(x) dν / ∫ f dν` for a positive `f`.
    pub fn tilt<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        let raw: Vec<f64> = self.xs.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect();
        let total: f64 = raw.iter().sum();
        Self::new(self.xs.clone(), raw.iter().map(|w| w / total).collect())
    }

    /// Largest difference in positions or weights against another measure
    /// with the same number of points.
    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.xs
            .iter()
            .zip(&other.xs)
            .map(|(a, b)| (a - b).abs())
            .chain(self.weights.iter().zip(&other.weights).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

/// Pushforward under `x = 2 cos θ`. The input must consist of `±θ` pairs
/// with `θ ∈ (0, π)` and matching weights; each pair becomes one point
/// carrying the pair's total mass.
pub fn push_to_interval(m: &SpectralMeasureCircle) -> Result<SpectralMeasureInterval> {
    use std::f64::consts::PI;
    let n = m.len();
    if n % 2 != 0 {
        return Err(Error::Asymmetric(format!("odd number of support points ({n})")));
    }
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (&t, &w) in m.thetas.iter().zip(&m.weights) {
        if t < SYMMETRY_TOL || (t - PI).abs() < SYMMETRY_TOL || 2.0 * PI - t < SYMMETRY_TOL {
            return Err(Error::Asymmetric(format!("support point on the real axis at θ = {t}")));
        }
        if t < PI {
            upper.push((t, w));
        } else {
            lower.push((2.0 * PI - t, w));
        }
    }
    if upper.len() != lower.len() {
        return Err(Error::Asymmetric(format!(
            "{} points above the axis, {} below",
            upper.len(),
            lower.len()
        )));
    }
    upper.sort_by(|a, b| a.0.total_cmp(&b.0));
    lower.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut xs = Vec::with_capacity(n / 2);
    let mut ws = Vec::with_capacity(n / 2);
    for (u, l) in upper.iter().zip(&lower) {
        if (u.0 - l.0).abs() > SYMMETRY_TOL || (u.1 - l.1).abs() > SYMMETRY_TOL {
            return Err(Error::Asymmetric(format!(
                "θ = {} (weight {}) has partner θ = {} (weight {})",
                u.0, u.1, l.0, l.1
            )));
        }
        xs.push(2.0 * (0.5 * (u.0 + l.0)).cos());
        ws.push(u.1 + l.1);
    }
    let total: f64 = ws.iter().sum();
    SpectralMeasureInterval::new(xs, ws.iter().map(|w| w / total).collect())
}

/// Real coefficients of an even-length sequence ending in `-1`.
fn require_szego_form(v: &VerblunskySeq) -> Result<(Vec<f64>, usize)> {
    let al = v.require_real()?;
    let m = al.len();
    if m % 2 != 0 {
        return Err(Error::InvalidSequence(format!("length {m} is odd")));
    }
    if al[m - 1] != -1.0 {
        return Err(Error::InvalidSequence(format!(
            "final coefficient is {}, expected -1",
            al[m - 1]
        )));
    }
    Ok((al, m / 2))
}

/// `α_k` with `α_{-1} = -1`, `α_{-2} = 0`; indices past the end only appear
/// multiplied by a vanishing factor and read as 0.
fn ext(al: &[f64], k: isize) -> f64 {
    match k {
        -1 => -1.0,
        k if k < 0 => 0.0,
        k if k as usize >= al.len() => 0.0,
        k => al[k as usize],
    }
}

/// Geronimus relations:
/// `b_{k+1} = (1-α_{2k-1})α_{2k} - (1+α_{2k-1})α_{2k-2}`,
/// `a_{k+1} = √((1-α_{2k-1})(1-α_{2k}²)(1+α_{2k+1}))`.
pub fn geronimus(v: &VerblunskySeq) -> Result<JacobiOperator> {
    let (al, n) = require_szego_form(v)?;
    let e = |k: isize| ext(&al, k);
    let mut b = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n as isize {
        b.push((1.0 - e(2 * k - 1)) * e(2 * k) - (1.0 + e(2 * k - 1)) * e(2 * k - 2));
        if (k as usize) + 1 < n {
            a.push(((1.0 - e(2 * k - 1)) * (1.0 - e(2 * k) * e(2 * k)) * (1.0 + e(2 * k + 1))).sqrt());
        }
    }
    JacobiOperator::new(b, a)
}

/// Companion operator `J̃` of the split:
/// `b̃_{k+1} = (1-α_{2k+1})α_{2k} - (1+α_{2k+1})α_{2k+2}`,
/// `ã_{k+1} = √((1+α_{2k+1})(1-α_{2k+2}²)(1-α_{2k+3}))`.
pub fn geronimus_tilde(v: &VerblunskySeq) -> Result<JacobiOperator> {
    let (al, n) = require_szego_form(v)?;
    let e = |k: isize| ext(&al, k);
    let mut b = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n as isize {
        b.push((1.0 - e(2 * k + 1)) * e(2 * k) - (1.0 + e(2 * k + 1)) * e(2 * k + 2));
        if (k as usize) + 1 < n {
            a.push(
                ((1.0 + e(2 * k + 1)) * (1.0 - e(2 * k + 2) * e(2 * k + 2)) * (1.0 - e(2 * k + 3)))
                    .sqrt(),
            );
        }
    }
    JacobiOperator::new(b, a)
}

/// Eigenvalues and squared first eigenvector components.
pub fn jacobi_spectral(j: &JacobiOperator) -> Result<SpectralMeasureInterval> {
    let (xs, z) = tridiag_eigen(&j.b, &j.a)?;
    let raw: Vec<f64> = z.iter().map(|c| c * c).collect();
    let total: f64 = raw.iter().sum();
    SpectralMeasureInterval::new(xs, raw.iter().map(|w| w / total).collect())
}

/// Output of [`split_lm_plus_ml`].
#[derive(Debug, Clone)]
pub struct Split {
    /// Block on the odd (1-based) positions.
    pub j: JacobiOperator,
    /// Block on the even (1-based) positions.
    pub j_tilde: JacobiOperator,
    /// Largest entry of `S†(LM+ML)S` outside the two tridiagonal blocks.
    pub residual: f64,
}

/// Conjugate `LM + ML` by the rotation `S = diag([1], S_1, S_3, …)` that
/// diagonalises `M`, and read off the two Jacobi blocks.
///
/// `S_k = (1/√2) [[-√(1-α_k), √(1+α_k)], [√(1+α_k), √(1-α_k)]]` turns
/// `Ξ_k` into `diag(-1, 1)`; the trailing 1×1 block for `α_{2n-1} = -1` is
/// `-1`. With `S†MS = R = diag(1, -1, 1, -1, …)` and `B = S†LS`,
/// `S†(LM+ML)S = BR + RB` vanishes between positions of opposite parity.
pub fn split_lm_plus_ml(v: &VerblunskySeq) -> Result<Split> {
    let (al, n) = require_szego_form(v)?;
    let m = 2 * n;
    let mut s = CMatrix::zeros(m);
    s[(0, 0)] = Complex64::new(1.0, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for k in (1..m).step_by(2) {
        if k + 1 < m {
            let (p, q) = ((1.0 - al[k]).sqrt() * r, (1.0 + al[k]).sqrt() * r);
            s[(k, k)] = Complex64::new(-p, 0.0);
            s[(k, k + 1)] = Complex64::new(q, 0.0);
            s[(k + 1, k)] = Complex64::new(q, 0.0);
            s[(k + 1, k + 1)] = Complex64::new(p, 0.0);
        } else {
            s[(k, k)] = Complex64::new(-(1.0 - al[k]).sqrt() * r, 0.0);
        }
    }
    let c = build_cmv(v);
    let sum = c.lm().add(&c.ml());
    let a = s.adjoint().mul(&sum).mul(&s);

    let mut residual = 0.0f64;
    for i in 0..m {
        for jx in 0..m {
            let same_block = i % 2 == jx % 2 && i.abs_diff(jx) <= 2;
            if !same_block {
                residual = residual.max(a[(i, jx)].norm());
            } else {
                residual = residual.max(a[(i, jx)].im.abs());
            }
        }
    }
    let block = |parity: usize| -> Result<JacobiOperator> {
        let idx: Vec<usize> = (parity..m).step_by(2).collect();
        let b = idx.iter().map(|&i| a[(i, i)].re).collect();
        // The off-diagonal signs depend on the orientation of S; a diagonal
        // ±1 similarity makes them positive without changing the measure
        // at the first basis vector.
        let off = idx.windows(2).map(|w| a[(w[0], w[1])].re.abs()).collect();
        JacobiOperator::new(b, off)
    };
    Ok(Split {
        j: block(0)?,
        j_tilde: block(1)?,
        residual,
    })
}

/// Recurrence coefficients of the tilted measure `½(1±α_0)⁻¹ (2±x) dν`:
/// `b_{k+1} = ±(1∓α_{2k})α_{2k+1} ∓ (1±α_{2k})α_{2k-1}`,
/// `a_{k+1} = √((1∓α_{2k})(1-α_{2k+1}²)(1±α_{2k+2}))`.
/// `plus` selects the upper signs.
pub fn twisted_coeffs(v: &VerblunskySeq, plus: bool) -> Result<JacobiOperator> {
    let (al, n) = require_szego_form(v)?;
    let e = |k: isize| ext(&al, k);
    let s = if plus { 1.0 } else { -1.0 };
    let mut b = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n as isize {
        let (a0, a1, am) = (e(2 * k), e(2 * k + 1), e(2 * k - 1));
        b.push(s * (1.0 - s * a0) * a1 - s * (1.0 + s * a0) * am);
        if (k as usize) + 1 < n {
            a.push(((1.0 - s * a0) * (1.0 - a1 * a1) * (1.0 + s * e(2 * k + 2))).sqrt());
        }
    }
    JacobiOperator::new(b, a)
}

/// Jacobi matrix of the weight `(2-x)^ã (2+x)^b̃` on `[-2, 2]` and its monic
/// characteristic polynomial.
///
/// `b_{k+1} = 2(b̃²-ã²)/((2k+ã+b̃)(2k+ã+b̃+2))`,
/// `a_{k+1}² = 16(k+1)(k+ã+b̃+1)(k+ã+1)(k+b̃+1) /
///            ((2k+ã+b̃+1)(2k+ã+b̃+2)²(2k+ã+b̃+3))`,
/// with the common factors `(ã+b̃)` and `(ã+b̃+1)` cancelled at `k = 0`.
pub fn classical_jacobi(atil: f64, btil: f64, n: usize) -> Result<(JacobiOperator, MonicPolynomial)> {
    crate::error::check_domain(atil > -1.0, "atil", atil, "atil > -1")?;
    crate::error::check_domain(btil > -1.0, "btil", btil, "btil > -1")?;
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let s = atil + btil;
    let mut b = Vec::with_capacity(n);
    let mut a = Vec::with_capacity(n - 1);
    for k in 0..n {
        let kf = k as f64;
        if k == 0 {
            b.push(2.0 * (btil - atil) / (s + 2.0));
        } else {
            b.push(2.0 * (btil * btil - atil * atil) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0)));
        }
        if k + 1 < n {
            let a2 = if k == 0 {
                16.0 * (atil + 1.0) * (btil + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
            } else {
                let d = 2.0 * kf + s;
                16.0 * (kf + 1.0) * (kf + s + 1.0) * (kf + atil + 1.0) * (kf + btil + 1.0)
                    / ((d + 1.0) * (d + 2.0) * (d + 2.0) * (d + 3.0))
            };
            a.push(a2.sqrt());
        }
    }
    let j = JacobiOperator::new(b, a)?;
    let p = j.charpoly();
    Ok((j, p))
}

/// Fold a real self-reciprocal polynomial of degree `2n` into the degree-`n`
/// polynomial `P` with `z^{-n} Φ(z) = P(z + 1/z)`.
///
/// Uses `z^k + z^{-k} = C_k(x)` with `C_0 = 2`, `C_1 = x`,
/// `C_{k+1} = x C_k - C_{k-1}`; the coefficient pairs are averaged, which is
/// the symmetrisation `½(z^{-n}Φ(z) + z^n Φ(1/z))`.
pub fn fold_self_reciprocal(p: &MonicPolynomial) -> Result<MonicPolynomial> {
    let deg = p.degree();
    if deg % 2 != 0 {
        return Err(Error::InvalidSequence(format!("degree {deg} is odd")));
    }
    let imag = p.coeffs().iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    if imag != 0.0 {
        return Err(Error::NotReal(imag));
    }
    let c = p.real_coeffs();
    let n = deg / 2;
    let mut out = vec![0.0; n + 1];
    out[0] = c[n];
    let mut cm1: Vec<f64> = vec![2.0];
    let mut ck: Vec<f64> = vec![0.0, 1.0];
    for k in 1..=n {
        let w = 0.5 * (c[n + k] + c[n - k]);
        for (i, x) in ck.iter().enumerate() {
            out[i] += w * x;
        }
        let mut next = vec![0.0; k + 2];
        for (i, x) in ck.iter().enumerate() {
            next[i + 1] += x;
        }
        for (i, x) in cm1.iter().enumerate() {
            next[i] -= x;
        }
        cm1 = std::mem::replace(&mut ck, next);
    }
    Ok(MonicPolynomial::from_real(&out))
}

/// `P_n` from `Φ_{2n}`: the folded characteristic polynomial of the Jacobi
/// matrix attached to `v`.
pub fn folded_phi2n(v: &VerblunskySeq) -> Result<MonicPolynomial> {
    require_szego_form(v)?;
    fold_self_reciprocal(&monic_coeffs(v, v.len())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::cmv_spectral;
    use crate::rng::RngStream;

    fn random_real(n: usize, rng: &mut RngStream) -> VerblunskySeq {
        let mut a: Vec<f64> = (0..2 * n - 1).map(|_| 1.8 * rng.open01() - 0.9).collect();
        a.push(-1.0);
        VerblunskySeq::from_real(&a).unwrap()
    }

    #[test]
    fn push_single_pair() {
        use std::f64::consts::PI;
        let m = SpectralMeasureCircle::new(vec![PI / 2.0, 3.0 * PI / 2.0], vec![0.5, 0.5]).unwrap();
        let nu = push_to_interval(&m).unwrap();
        assert!(nu.xs[0].abs() < 1e-15);
        assert_eq!(nu.weights, vec![1.0]);
    }

    #[test]
    fn push_rejects_asymmetry() {
        let m = SpectralMeasureCircle::new(vec![1.0, 5.0], vec![0.5, 0.5]).unwrap();
        assert!(matches!(push_to_interval(&m), Err(Error::Asymmetric(_))));
        let m = SpectralMeasureCircle::new(vec![1.0, 2.0 * std::f64::consts::PI - 1.0], vec![0.4, 0.6])
            .unwrap();
        assert!(matches!(push_to_interval(&m), Err(Error::Asymmetric(_))));
    }

    #[test]
    fn geronimus_free_and_n1() {
        let mut a = vec![0.0; 9];
        a.push(-1.0);
        let j = geronimus(&VerblunskySeq::from_real(&a).unwrap()).unwrap();
        assert!(j.b.iter().all(|&b| b == 0.0));
        assert_eq!(j.a[0], 2f64.sqrt());
        assert!(j.a[1..].iter().all(|&x| x == 1.0));
        let j = geronimus(&VerblunskySeq::from_real(&[0.35, -1.0]).unwrap()).unwrap();
        assert_eq!(j.b, vec![0.7]);
        assert!(j.a.is_empty());
    }

    #[test]
    fn geronimus_requires_szego_form() {
        assert!(geronimus(&VerblunskySeq::from_real(&[0.1, 0.2, 1.0]).unwrap()).is_err());
        assert!(geronimus(&VerblunskySeq::from_real(&[0.1, 1.0]).unwrap()).is_err());
        let v = VerblunskySeq::new(vec![Complex64::new(0.1, 0.1), Complex64::new(-1.0, 0.0)]).unwrap();
        assert!(matches!(geronimus(&v), Err(Error::NotReal(_))));
    }

    #[test]
    fn commuting_diagram() {
        let mut rng = RngStream::from_seed(21);
        for n in 1..=8 {
            let v = random_real(n, &mut rng);
            let lhs = push_to_interval(&cmv_spectral(&v).unwrap()).unwrap();
            let rhs = jacobi_spectral(&geronimus(&v).unwrap()).unwrap();
            assert!(lhs.max_diff(&rhs) < 1e-8, "n={n}");
        }
    }

    #[test]
    fn charpoly_folds() {
        let mut rng = RngStream::from_seed(22);
        for n in 1..=7 {
            let v = random_real(n, &mut rng);
            let p = geronimus(&v).unwrap().charpoly();
            let q = folded_phi2n(&v).unwrap();
            assert!(p.max_coeff_diff(&q) < 1e-10, "n={n}");
        }
    }

    #[test]
    fn translation_covariance() {
        let j = JacobiOperator::new(vec![0.1, -0.3, 0.2], vec![0.7, 1.1]).unwrap();
        let k = JacobiOperator::new(j.b.iter().map(|b| b + 0.25).collect(), j.a.clone()).unwrap();
        let (m, mk) = (jacobi_spectral(&j).unwrap(), jacobi_spectral(&k).unwrap());
        for i in 0..3 {
            assert!((m.xs[i] + 0.25 - mk.xs[i]).abs() < 1e-13);
            assert!((m.weights[i] - mk.weights[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn split_blocks() {
        let mut rng = RngStream::from_seed(23);
        for n in 1..=8 {
            let v = random_real(n, &mut rng);
            let s = split_lm_plus_ml(&v).unwrap();
            assert!(s.residual < 1e-10, "n={n} residual {}", s.residual);
            let g = geronimus(&v).unwrap();
            let gt = geronimus_tilde(&v).unwrap();
            for (x, y) in s.j.b.iter().chain(&s.j.a).zip(g.b.iter().chain(&g.a)) {
                assert!((x - y).abs() < 1e-10, "n={n}: J {x} vs {y}");
            }
            for (x, y) in s.j_tilde.b.iter().chain(&s.j_tilde.a).zip(gt.b.iter().chain(&gt.a)) {
                assert!((x - y).abs() < 1e-10, "n={n}: J~ {x} vs {y}");
            }
        }
    }

    #[test]
    fn twisted_free_case() {
        let v = VerblunskySeq::from_real(&[0.0, 0.0, 0.0, 0.0, 0.0, -1.0]).unwrap();
        let j = twisted_coeffs(&v, true).unwrap();
        assert_eq!(j.b[0], 1.0);
    }

    #[test]
    fn classical_special_cases() {
        let (j, _) = classical_jacobi(-0.5, -0.5, 5).unwrap();
        assert!((j.a[0] - 2f64.sqrt()).abs() < 1e-14);
        assert!(j.a[1..].iter().all(|a| (a - 1.0).abs() < 1e-14));
        assert!(j.b.iter().all(|b| b.abs() < 1e-15));
        let (_, p) = classical_jacobi(0.0, 1.0, 1).unwrap();
        assert!((p.real_coeffs()[0] + 2.0 / 3.0).abs() < 1e-15);
        let (j, p) = classical_jacobi(0.0, 0.0, 6).unwrap();
        assert!(j.b.iter().all(|&b| b == 0.0));
        let m = jacobi_spectral(&j).unwrap();
        assert!(m.xs.iter().all(|x| x.abs() < 2.0));
        for x in &m.xs {
            assert!(p.eval(Complex64::new(*x, 0.0)).norm() < 1e-10);
        }
        assert!(classical_jacobi(-1.0, 0.0, 2).is_err());
    }

    #[test]
    fn jacobi_json_shape() {
        let j = JacobiOperator::new(vec![0.5, -0.5], vec![1.0]).unwrap();
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"b":[0.5,-0.5],"a":[1.0]}"#);
    }
}
