//! Scaled zero-counting measures and their distance to a limit law.

use alloc::vec::Vec;

use crate::asymptotic::LimitMeasure;
use crate::error::Result;
use crate::rootfind::RootEnclosure;

/// Right-continuous step CDF with mass `1/n` at each scaled zero.
#[derive(Clone, Debug, PartialEq)]
pub struct StepMeasure {
    pub scaled_zeros: Vec<f64>,
    pub n: usize,
    pub phi_value: f64,
}

impl StepMeasure {
    pub fn from_scaled(mut scaled_zeros: Vec<f64>, n: usize, phi_value: f64) -> Self {
        scaled_zeros.sort_by(f64::total_cmp);
        StepMeasure { scaled_zeros, n, phi_value }
    }

    /// `#{z <= t} / n`.
    pub fn cdf(&self, t: f64) -> f64 {
        self.scaled_zeros.partition_point(|&z| z <= t) as f64 / self.n as f64
    }

    /// `#{z < t} / n`.
    pub fn cdf_left(&self, t: f64) -> f64 {
        self.scaled_zeros.partition_point(|&z| z < t) as f64 / self.n as f64
    }

    /// Raw moment `(1/n) sum z^k`.
    pub fn moment(&self, k: u32) -> f64 {
        self.scaled_zeros.iter().map(|z| z.powi(k as i32)).sum::<f64>() / self.n as f64
    }
}

/// `z_k = value_k / phi`.
pub fn empirical_cdf(roots: &[RootEnclosure], n: usize, phi: f64) -> StepMeasure {
    StepMeasure::from_scaled(roots.iter().map(|e| e.value / phi).collect(), n, phi)
}

/// Sup-distance between a step CDF and a limit CDF.
///
/// Between jumps the step function is constant and the limit is monotone,
/// so the supremum is reached at a one-sided limit at some jump point or at
/// a support endpoint.
pub fn ks_distance(emp: &StepMeasure, lim: &LimitMeasure) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut probe = |t: f64| -> Result<()> {
        let right = (emp.cdf(t) - lim.cdf(t)?).abs();
        let left = (emp.cdf_left(t) - lim.cdf_left(t)?).abs();
        worst = worst.max(right).max(left);
        Ok(())
    };
    for &z in &emp.scaled_zeros {
        probe(z)?;
    }
    for t in [lim.support_lo, lim.support_hi] {
        if t.is_finite() {
            probe(t)?;
        }
    }
    Ok(worst)
}
