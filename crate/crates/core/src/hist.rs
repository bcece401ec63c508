//! Fixed-bin histograms of batch statistics.

use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::ensembles::{sorted_gaps, EnsembleKind, SampleBatch};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Eigen-angles (circular only).
    Angle,
    /// Nearest-neighbour cyclic gaps (circular only).
    Gap,
    /// Stored eigenvalues: angles or interval points.
    Eigenvalue,
}

impl FromStr for Statistic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "angle" => Ok(Self::Angle),
            "gap" => Ok(Self::Gap),
            "eigenvalue" => Ok(Self::Eigenvalue),
            _ => Err(Error::Format(format!("unknown statistic `{s}` (angle | gap | eigenvalue)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub left: f64,
    pub right: f64,
    pub count: u64,
    pub density: f64,
}

/// Pooled values of a statistic over all draws.
pub fn extract(batch: &SampleBatch, stat: Statistic) -> Result<Vec<f64>> {
    let circular = batch.kind == EnsembleKind::Circular;
    if !circular && stat != Statistic::Eigenvalue {
        return Err(Error::Format("angle and gap statistics need a circular batch".into()));
    }
    Ok(match stat {
        Statistic::Gap => batch.draws.iter().flat_map(|d| sorted_gaps(&d.eigenvalues)).collect(),
        _ => batch.draws.iter().flat_map(|d| d.eigenvalues.iter().copied()).collect(),
    })
}

/// Natural range of a statistic for a batch.
pub fn default_range(batch: &SampleBatch, stat: Statistic, values: &[f64]) -> (f64, f64) {
    match (stat, batch.kind) {
        (Statistic::Gap, _) => (0.0, values.iter().cloned().fold(0.0, f64::max)),
        (_, EnsembleKind::Circular) => (0.0, 2.0 * PI),
        (_, EnsembleKind::Jacobi) => (-2.0, 2.0),
    }
}

/// Equal-width bins on `[lo, hi]`, the last one closed. Values outside the
/// range are dropped; densities are normalised over the values kept, so
/// `Σ density · width = 1`.
pub fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Vec<Bin>> {
    if bins == 0 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Format(format!("bad histogram range [{lo}, {hi}] with {bins} bins")));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0u64; bins];
    let mut kept = 0u64;
    for &x in values {
        if !(x >= lo && x <= hi) {
            continue;
        }
        let i = (((x - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
        kept += 1;
    }
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, &c)| Bin {
            left: lo + i as f64 * width,
            right: if i + 1 == bins { hi } else { lo + (i + 1) as f64 * width },
            count: c,
            density: if kept == 0 { 0.0 } else { c as f64 / (kept as f64 * width) },
        })
        .collect())
}

pub fn write_histogram_csv<W: Write>(bins: &[Bin], out: &mut W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin_left", "bin_right", "count", "density"])
        .map_err(|e| Error::Io(e.to_string()))?;
    for b in bins {
        w.write_record([b.left.to_string(), b.right.to_string(), b.count.to_string(), b.density.to_string()])
            .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_circular, sample_jacobi, EnsembleSpec};

    #[test]
    fn density_normalised() {
        let b = sample_circular(&EnsembleSpec::circular(20, 2.0, 3), 200).unwrap();
        let g = extract(&b, Statistic::Gap).unwrap();
        let (lo, hi) = default_range(&b, Statistic::Gap, &g);
        let h = histogram(&g, 40, lo, hi).unwrap();
        let total: f64 = h.iter().map(|b| b.density * (b.right - b.left)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(h.iter().map(|b| b.count).sum::<u64>(), g.len() as u64);
    }

    #[test]
    fn flat_single_particle() {
        let b = sample_jacobi(&EnsembleSpec::jacobi(1, 2.0, 0.0, 0.0, 4), 40_000).unwrap();
        let v = extract(&b, Statistic::Eigenvalue).unwrap();
        let h = histogram(&v, 8, -2.0, 2.0).unwrap();
        // uniform on [-2, 2]: density 1/4, count ~ Binomial(N, 1/8)
        let se = (40_000.0f64 * 0.125 * 0.875).sqrt();
        for bin in &h {
            assert!((bin.count as f64 - 5000.0).abs() < 4.0 * se);
        }
        assert!(extract(&b, Statistic::Gap).is_err());
    }
}
