//! Propagation of `BV^s` regularity for `s` below the critical exponent.

use iclaws_core::explicit::Evaluator;
use iclaws_core::fractional_bv::{scan_values, uniform_grid};

use super::common::{
    build_cases, check_max_principle, check_traces, explicit_profile, finest, require_compatible, top_half_ratio,
    tvs_of,
};
use super::decay::floor_term;
use super::smoothing::BOUNDED_RATIO;
use crate::config::{ExperimentId, ProblemConfig};
use crate::report::ExperimentReport;
use crate::Result;

/// `min(max(1/p, s), max(1/q, s))`.
pub fn improved_exponent(p: f64, q: f64, s: f64) -> f64 {
    (1.0 / p).max(s).min((1.0 / q).max(s))
}

pub fn run_propagation(cfg: &ProblemConfig) -> Result<ExperimentReport> {
    cfg.validate_for(ExperimentId::E3)?;
    let mut report = ExperimentReport::new(ExperimentId::E3, cfg.seed);
    let m = cfg.window;
    let n = finest(cfg);
    for case in build_cases(cfg)? {
        require_compatible(&case)?;
        let name = case.name.as_str();
        let (p, q) = (case.pair.right().nondeg_exponent(), case.pair.left().nondeg_exponent());
        let ev = Evaluator::new(case.pair.clone(), &case.data)?;
        let initial: Vec<f64> = uniform_grid(-m, m, n).iter().map(|&x| case.data.eval(x)).collect();
        let profiles = cfg
            .times
            .iter()
            .map(|&t| {
                let values = explicit_profile(&ev, m, n, t)?.us();
                check_max_principle(&mut report, name, &format!("t={t}"), &values, ev.bound());
                check_traces(&mut report, name, &ev, t);
                Ok((t, values))
            })
            .collect::<Result<Vec<_>>>()?;

        for &s in &cfg.s_values {
            let tag = format!("s={s}");
            let tv0 = tvs_of(&initial, s)?;
            let floor = floor_term(case.data.sup_bound(), s);
            let s1 = improved_exponent(p, q, s);
            let mut measured = Vec::with_capacity(profiles.len());
            for (t, values) in &profiles {
                let scan = scan_values(values, (-m, m), &[s, s1], &cfg.resolutions)?;
                let (at_s, at_s1) = scan.split_at(cfg.resolutions.len());
                report.at_most(
                    name,
                    &format!("scan_ratio_{tag}_t={t}"),
                    top_half_ratio(at_s),
                    BOUNDED_RATIO,
                    n,
                );
                report.at_most(
                    name,
                    &format!("scan_ratio_s1={s1}_t={t}"),
                    top_half_ratio(at_s1),
                    BOUNDED_RATIO,
                    n,
                );
                measured.push((*t, at_s.last().unwrap().tvs));
                if *t == *cfg.times.last().unwrap() {
                    report.scans.push((format!("{name}_{tag}"), scan));
                }
            }
            // one constant for the pair across the ladder
            let c = measured
                .iter()
                .map(|&(_, tv)| tv - 2.0 * tv0 - floor)
                .fold(0.0f64, f64::max);
            report.fit(name, &format!("tv0_{tag}"), tv0);
            report.fit(name, &format!("c_fit_{tag}"), c);
            for (t, tv) in measured {
                report.at_most(name, &format!("tvs_{tag}_t={t}"), tv, 2.0 * tv0 + c + floor, n);
            }
        }
    }
    Ok(report)
}
