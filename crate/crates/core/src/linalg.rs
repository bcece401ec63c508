//! Small dense linear algebra: complex matrices, Householder reduction to
//! Hessenberg form, a shifted-QR Schur solver, and the symmetric tridiagonal
//! QL solver used for Jacobi matrices.
//!
//! Sizes here are desk-scale (n up to a few hundred), so everything is
//! row-major `Vec` storage with O(n³) algorithms.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex64>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        Self::from_fn(n, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `max |(X X† - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { ONE } else { ZERO };
                worst = worst.max((p[(i, j)] - target).norm());
            }
        }
        worst
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Row-major `[re, im]` pairs, the JSON export layout.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect()
    }

    fn rotate_rows(&mut self, i: usize, c: f64, s: Complex64) {
        let n = self.n;
        for j in 0..n {
            let x = self.data[i * n + j];
            let y = self.data[(i + 1) * n + j];
            self.data[i * n + j] = x * c + s * y;
            self.data[(i + 1) * n + j] = -s.conj() * x + y * c;
        }
    }

    fn rotate_cols(&mut self, i: usize, c: f64, s: Complex64) {
        let n = self.n;
        for r in 0..n {
            let x = self.data[r * n + i];
            let y = self.data[r * n + i + 1];
            self.data[r * n + i] = x * c + y * s.conj();
            self.data[r * n + i + 1] = -x * s + y * c;
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// Result of [`reduce_to_hessenberg`]: `A = Q H Q†`.
#[derive(Debug, Clone)]
pub struct Hessenberg {
    pub h: CMatrix,
    pub q: CMatrix,
    /// Columns whose below-diagonal part was already (numerically) zero.
    pub zero_pivots: Vec<usize>,
}

/// Householder reduction to upper Hessenberg form with `e₁` fixed.
///
/// Column `k` is reflected by `v = [0,…,0, α, a_{k+2,k}, …, a_{n,k}]` with
/// `α = a_{k+1,k} - u·‖a_{k+1..n,k}‖`. For complex input `u = a_{k+1,k}/|a_{k+1,k}|`
/// and a diagonal phase then rotates the new sub-diagonal entry onto the
/// positive axis; with `real_form` the target is `u = 1` and no phase step is
/// needed, so real input stays real.
pub fn reduce_to_hessenberg(a: &CMatrix, real_form: bool) -> Hessenberg {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    let mut zero_pivots = Vec::new();
    let scale = a.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);

    for k in 0..n.saturating_sub(1) {
        let lead = h[(k + 1, k)];
        let rest_sq: f64 = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum();
        let norm = (lead.norm_sqr() + rest_sq).sqrt();
        if norm <= 1e-14 * scale {
            zero_pivots.push(k);
            continue;
        }
        let unit = if real_form || lead.norm() < 1e-14 {
            ONE
        } else {
            lead / lead.norm()
        };
        // α = lead - u·norm, with the cancellation-free form when conj(u)·lead > 0.
        let w = unit.conj() * lead;
        let alpha = if w.re > 0.0 {
            // |w|² - norm² = -rest_sq exactly
            unit * (-rest_sq / (w.norm() + norm))
        } else {
            lead - unit * norm
        };
        let mut v = vec![ZERO; n];
        v[k + 1] = alpha;
        for i in k + 2..n {
            v[i] = h[(i, k)];
        }
        let vnorm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sq > 0.0 {
            apply_reflector(&mut h, &mut q, &v, vnorm_sq, k + 1);
        }
        // Exact zeros below the sub-diagonal, and the reflected entry itself.
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
        h[(k + 1, k)] = unit * norm;
        if !real_form && unit != ONE {
            // D = diag(…, ū, …): row k+1 by ū, column k+1 by u.
            let ubar = unit.conj();
            for j in 0..n {
                h[(k + 1, j)] *= ubar;
            }
            for i in 0..n {
                h[(i, k + 1)] *= unit;
                q[(i, k + 1)] *= unit;
            }
            h[(k + 1, k)] = Complex64::new(norm, 0.0);
        }
    }
    Hessenberg { h, q, zero_pivots }
}

/// `H ← R H R`, `Q ← Q R` with `R = I - 2 v v† / ‖v‖²`; `v` vanishes above `start`.
fn apply_reflector(h: &mut CMatrix, q: &mut CMatrix, v: &[Complex64], vnorm_sq: f64, start: usize) {
    let n = h.dim();
    let tau = 2.0 / vnorm_sq;
    // Left: H -= tau v (v† H)
    for j in 0..n {
        let mut dot = ZERO;
        for i in start..n {
            dot += v[i].conj() * h[(i, j)];
        }
        if dot == ZERO {
            continue;
        }
        let f = dot * tau;
        for i in start..n {
            h[(i, j)] -= v[i] * f;
        }
    }
    // Right: X -= tau (X v) v†
    for m in [h, q] {
        for i in 0..n {
            let mut dot = ZERO;
            for j in start..n {
                dot += m[(i, j)] * v[j];
            }
            if dot == ZERO {
                continue;
            }
            let f = dot * tau;
            for j in start..n {
                m[(i, j)] -= f * v[j].conj();
            }
        }
    }
}

/// Complex Schur decomposition `A = Q T Q†`.
#[derive(Debug, Clone)]
pub struct Schur {
    pub t: CMatrix,
    pub q: CMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.dim()).map(|i| self.t[(i, i)]).collect()
    }
}

fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let rho = (an * an + b.norm_sqr()).sqrt();
    if rho == 0.0 {
        return (1.0, ZERO);
    }
    if an == 0.0 {
        return (0.0, ONE);
    }
    (an / rho, (a / an) * b.conj() / rho)
}

/// Schur form via Hessenberg reduction and single-shift implicit QR with
/// Wilkinson shifts. Rotations are applied to whole rows and columns so the
/// accumulated `Q` is the full Schur basis; for a normal input (unitary,
/// Hermitian) its columns are eigenvectors.
pub fn schur(a: &CMatrix) -> Result<Schur> {
    let n = a.dim();
    let Hessenberg { h: mut t, mut q, .. } = reduce_to_hessenberg(a, false);
    if n <= 1 {
        return Ok(Schur { t, q });
    }
    let eps = f64::EPSILON;
    let max_iter = 60 * n;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;

    while hi > 0 {
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = t[(lo, lo - 1)].norm();
            let diag = t[(lo, lo)].norm() + t[(lo - 1, lo - 1)].norm();
            if sub <= eps * diag.max(1e-300) {
                t[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_iter {
            return Err(Error::NoConvergence(total));
        }

        let shift = if iter % 10 == 0 {
            // Exceptional shift to break cycles.
            let mut kick = t[(hi, hi - 1)].re.abs();
            if hi >= lo + 2 {
                kick += t[(hi - 1, hi - 2)].re.abs();
            }
            t[(hi, hi)] + kick
        } else {
            wilkinson_shift(
                t[(hi - 1, hi - 1)],
                t[(hi - 1, hi)],
                t[(hi, hi - 1)],
                t[(hi, hi)],
            )
        };

        let (c, s) = givens(t[(lo, lo)] - shift, t[(lo + 1, lo)]);
        t.rotate_rows(lo, c, s);
        t.rotate_cols(lo, c, s);
        q.rotate_cols(lo, c, s);
        for k in lo + 1..hi {
            let (c, s) = givens(t[(k, k - 1)], t[(k + 1, k - 1)]);
            t.rotate_rows(k, c, s);
            t.rotate_cols(k, c, s);
            q.rotate_cols(k, c, s);
            t[(k + 1, k - 1)] = ZERO;
        }
    }
    Ok(Schur { t, q })
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m = (a + d) * 0.5;
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues and first eigenvector components of a real symmetric
/// tridiagonal matrix, by implicit-shift QL. Only the first row of the
/// eigenvector matrix is tracked.
///
/// Returns `(eigenvalues, first_components)` in the order the solver
/// leaves them (unsorted).
pub fn tridiag_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert!(off.len() + 1 == n || (n == 0 && off.is_empty()));
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = off.iter().copied().chain(std::iter::once(0.0)).collect();
    let mut z = vec![0.0; n];
    if n == 0 {
        return Ok((d, z));
    }
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence(iter));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// Determinant of a real square matrix by partial-pivot elimination.
pub fn real_det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}
