//! Explicit evaluator against the Godunov scheme under mesh refinement.

use iclaws_core::explicit::Evaluator;
use iclaws_core::fit::fit_line;

use super::common::{build_cases, check_max_principle, check_traces, finest, fv_window, window_centers};
use crate::config::{ExperimentId, ProblemConfig};
use crate::report::ExperimentReport;
use crate::Result;

/// Largest accepted L1 distance at the finest resolution.
pub const FINAL_ERROR: f64 = 1e-2;

/// L1 distance on `[-m, m]` between cell averages and explicit values at
/// the cell centers.
pub fn window_error(ev: &Evaluator, fv: &[f64], m: f64, t: f64) -> Result<f64> {
    let n = fv.len();
    let field = ev.sample_profile(t, &window_centers(m, n))?;
    let dx = 2.0 * m / n as f64;
    Ok(fv.iter().zip(&field.points).map(|(a, p)| (a - p.u).abs()).sum::<f64>() * dx)
}

pub fn run_convergence(cfg: &ProblemConfig) -> Result<ExperimentReport> {
    cfg.validate_for(ExperimentId::E5)?;
    let mut report = ExperimentReport::new(ExperimentId::E5, cfg.seed);
    let m = cfg.window;
    let t = *cfg.times.last().unwrap();
    for case in build_cases(cfg)? {
        let name = case.name.as_str();
        let ev = Evaluator::new(case.pair.clone(), &case.data)?;
        let mut errors = Vec::with_capacity(cfg.resolutions.len());
        for &n in &cfg.resolutions {
            let fv = fv_window(&case.pair, &case.data, m, n, t)?;
            let err = window_error(&ev, &fv, m, t)?;
            report.push(name, "l1_error", err, None, err.is_finite(), n);
            if n == finest(cfg) {
                check_max_principle(&mut report, name, "godunov", &fv, ev.bound());
                let explicit = ev.sample_profile(t, &window_centers(m, n))?.us();
                check_max_principle(&mut report, name, "explicit", &explicit, ev.bound());
            }
            errors.push(err);
        }
        if case.pair.compatible() {
            check_traces(&mut report, name, &ev, t);
        }
        let worst_increase = errors.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        report.at_most(name, "l1_error_increase", worst_increase, 1e-15, finest(cfg));
        report.at_most(
            name,
            "l1_error_final",
            *errors.last().unwrap(),
            FINAL_ERROR,
            finest(cfg),
        );

        if errors.iter().all(|&e| e > 0.0) && errors.len() >= 2 {
            let xs: Vec<f64> = cfg.resolutions.iter().map(|&n| (n as f64).ln()).collect();
            let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
            let slope = fit_line(&xs, &ys)?.slope;
            report.fit(name, "rate", slope);
            if let Some(rate) = case.config.expect_rate {
                report.at_most(name, "l1_rate", slope, rate, finest(cfg));
            }
        }
    }
    Ok(report)
}
