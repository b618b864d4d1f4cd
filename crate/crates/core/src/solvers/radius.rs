use crate::error::Result;
use crate::forms::Connection;
use crate::homotopy::Center;

const SAMPLES: usize = 128;

/// Convergence radius bound `k / sup ‖A‖` along the segment from the
/// center to `x`, with the supremum of the Frobenius norm taken over 129
/// equally spaced points. Infinite when `A` vanishes on the segment.
///
/// Some statements of this bound use `1 / ‖A‖`. The series estimate for
/// `k`-forms gives `k / ‖A‖`, which is what this function and
/// [`SolveReport`](super::SolveReport) return.
pub fn radius_bound(a: &Connection, x: &[f64], center: &Center, k: usize) -> Result<f64> {
    center.check(a.dim())?;
    let x0 = center.to_f64();
    let mut sup = 0.0f64;
    for s in 0..=SAMPLES {
        let t = s as f64 / SAMPLES as f64;
        let p: Vec<f64> = x0.iter().zip(x).map(|(c, xi)| c + t * (xi - c)).collect();
        sup = sup.max(a.norm_at(&p)?);
    }
    Ok(if sup == 0.0 { f64::INFINITY } else { k as f64 / sup })
}
