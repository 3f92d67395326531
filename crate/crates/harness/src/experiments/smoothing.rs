//! Smoothing of bounded data into `BV^s` with `s = min(1/p, 1/q)`.

use iclaws_core::explicit::Evaluator;
use iclaws_core::fractional_bv::scan_values;

use super::common::{
    build_cases, check_max_principle, check_traces, critical_exponent, explicit_profile, finest, require_compatible,
    top_half_ratio, tvs_of,
};
use crate::config::{ExperimentId, ProblemConfig};
use crate::report::ExperimentReport;
use crate::Result;

/// Scan ratio at or below which a scan counts as bounded.
pub const BOUNDED_RATIO: f64 = 1.5;
/// Scan ratio at or above which a scan counts as growing.
pub const GROWING_RATIO: f64 = 2.0;
/// Exponent factor probed below the critical exponent.
pub const BELOW_CRITICAL: f64 = 0.8;

pub fn run_smoothing(cfg: &ProblemConfig) -> Result<ExperimentReport> {
    cfg.validate_for(ExperimentId::E1)?;
    let mut report = ExperimentReport::new(ExperimentId::E1, cfg.seed);
    let t = *cfg.times.last().unwrap();
    let m = cfg.window;
    let n = finest(cfg);
    for case in build_cases(cfg)? {
        require_compatible(&case)?;
        let name = case.name.as_str();
        let s_star = critical_exponent(&case.pair);
        let s_low = BELOW_CRITICAL * s_star;
        report.fit(name, "s_star", s_star);

        let ev = Evaluator::new(case.pair.clone(), &case.data)?;
        let field = explicit_profile(&ev, m, n, t)?;
        let values = field.us();
        check_max_principle(&mut report, name, &format!("t={t}"), &values, ev.bound());
        check_traces(&mut report, name, &ev, t);

        let scan = scan_values(&values, (-m, m), &[s_star, s_low], &cfg.resolutions)?;
        let (at_star, below) = scan.split_at(cfg.resolutions.len());
        report.at_most(name, "scan_ratio_s_star", top_half_ratio(at_star), BOUNDED_RATIO, n);
        report.at_least(name, "scan_ratio_below_s_star", top_half_ratio(below), GROWING_RATIO, n);
        report.fit(name, "tvs_s_star", at_star.last().unwrap().tvs);
        report.scans.push((name.to_string(), scan));

        // uniformly convex single flux: one-sided Lipschitz bound on the profile
        let (f, g) = (case.pair.right(), case.pair.left());
        if f == g && f.nondeg_exponent() == 1.0 {
            let s = ev.bound();
            let c2 = f.verify_nondegeneracy(-s, s, 1.0, 201);
            let tv = tvs_of(&values, 1.0)?;
            let bound = 4.0 * m / (c2 * t) + 2.0 * case.data.sup_bound();
            report.fit(name, "nondegeneracy_constant", c2);
            report.at_most(name, "tv_one_sided_lipschitz", tv, bound, n);
        }
    }
    Ok(report)
}
