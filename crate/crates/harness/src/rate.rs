use iclaws_core::fit::fit_line;
use serde::Serialize;

use crate::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

/// Least squares on `(log t, log(y - floor))`.
pub fn fit_rate(points: &[(f64, f64)], floor: f64) -> Result<RateFit> {
    if points.len() < 3 {
        return Err(HarnessError::DegenerateFit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(t, y) in points {
        if !(t > 0.0) {
            return Err(HarnessError::DegenerateFit(format!("abscissa {t} is not positive")));
        }
        if !(y > floor) {
            return Err(HarnessError::DegenerateFit(format!(
                "value {y} does not exceed the floor {floor}"
            )));
        }
        xs.push(t.ln());
        ys.push((y - floor).ln());
    }
    let line = fit_line(&xs, &ys).map_err(|e| HarnessError::DegenerateFit(e.to_string()))?;
    Ok(RateFit {
        slope: line.slope,
        intercept: line.intercept,
        residual: line.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ladder() -> Vec<f64> {
        (0..9).map(|k| 0.05 * 20f64.powf(k as f64 / 8.0)).collect()
    }

    #[test]
    fn exact_power_laws() {
        let pts: Vec<_> = ladder().into_iter().map(|t| (t, 2.0 / t)).collect();
        assert_abs_diff_eq!(fit_rate(&pts, 0.0).unwrap().slope, -1.0, epsilon = 1e-12);

        let pts: Vec<_> = ladder().into_iter().map(|t| (t, 3.0 / t + 5.0)).collect();
        let fit = fit_rate(&pts, 5.0).unwrap();
        assert_abs_diff_eq!(fit.slope, -1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(fit.intercept, 3f64.ln(), epsilon = 1e-9);
    }

    #[test]
    fn noisy_slope_is_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<_> = (0..40)
            .map(|k| {
                let t = 0.05 * 20f64.powf(k as f64 / 39.0);
                (t, 4.0 * t.powf(-1.5) * (1.0 + rng.gen_range(-0.05..0.05)))
            })
            .collect();
        let fit = fit_rate(&pts, 0.0).unwrap();
        assert!((fit.slope + 1.5).abs() <= 0.05, "{fit:?}");
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            fit_rate(&[(1.0, 2.0), (2.0, 1.0)], 0.0),
            Err(HarnessError::DegenerateFit(_))
        ));
        let below = [(0.1, 3.0), (0.5, 2.0), (1.0, 0.5)];
        assert!(matches!(fit_rate(&below, 1.0), Err(HarnessError::DegenerateFit(_))));
        let same_t = [(1.0, 3.0), (1.0, 2.0), (1.0, 1.5)];
        assert!(matches!(fit_rate(&same_t, 0.0), Err(HarnessError::DegenerateFit(_))));
    }
}
