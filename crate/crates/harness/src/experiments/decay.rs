//! Explicit decay of `TV^s` for data away from the critical points near the
//! interface.

use iclaws_core::explicit::Evaluator;
use iclaws_core::InterfacePair;

use super::common::{
    build_cases, check_max_principle, check_traces, critical_exponent, explicit_profile, finest, require_compatible,
    tvs_of,
};
use crate::config::{DecayConfig, ExperimentId, ProblemConfig};
use crate::rate::fit_rate;
use crate::report::{DecayRow, ExperimentReport};
use crate::{HarnessError, Result};

/// Allowed excess of the fitted slope over the predicted exponent.
pub const SLOPE_SLACK: f64 = 0.25;
/// Allowed distance between the fitted slope and the predicted exponent.
pub const SLOPE_BAND: f64 = 0.2;

/// Exponents of the decay bound for a pair and `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayShape {
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub delta: f64,
    pub r: f64,
}

impl DecayShape {
    pub fn new(pair: &InterfacePair, decay: DecayConfig) -> Self {
        Self {
            p: pair.right().nondeg_exponent(),
            q: pair.left().nondeg_exponent(),
            s: critical_exponent(pair),
            delta: decay.delta,
            r: decay.r,
        }
    }

    /// `min(t^{1/(qs)}, t^{1/(ps)})`.
    pub fn time_factor(&self, t: f64) -> f64 {
        t.powf(1.0 / (self.q * self.s)).min(t.powf(1.0 / (self.p * self.s)))
    }

    /// `max(1, t/delta, 1/r)^{(pqs + 1)/s^2}`.
    pub fn bracket(&self, t: f64) -> f64 {
        let base = 1f64.max(t / self.delta).max(1.0 / self.r);
        base.powf((self.p * self.q * self.s + 1.0) / (self.s * self.s))
    }

    /// `C bracket(t) / time_factor(t) + floor`.
    pub fn bound(&self, c: f64, t: f64, floor: f64) -> f64 {
        c * self.bracket(t) / self.time_factor(t) + floor
    }

    /// Predicted decay exponent `min(1/(qs), 1/(ps))`.
    pub fn exponent(&self) -> f64 {
        (1.0 / (self.q * self.s)).min(1.0 / (self.p * self.s))
    }
}

/// `2 (2 sup|u0|)^{1/s}`.
pub fn floor_term(sup: f64, s: f64) -> f64 {
    2.0 * (2.0 * sup).powf(1.0 / s)
}

pub fn run_decay(cfg: &ProblemConfig) -> Result<ExperimentReport> {
    cfg.validate_for(ExperimentId::E2)?;
    let decay = cfg.decay.expect("validated");
    let mut report = ExperimentReport::new(ExperimentId::E2, cfg.seed);
    let m = cfg.window;
    let n = finest(cfg);
    for case in build_cases(cfg)? {
        require_compatible(&case)?;
        let name = case.name.as_str();
        let (tg, tf) = (case.pair.left().theta(), case.pair.right().theta());
        let left_sup = case.data.ess_sup(-decay.delta, 0.0);
        let right_sup = case.data.ess_sup(0.0, decay.delta);
        if !(left_sup > tg + decay.r && right_sup < tf - decay.r) {
            return Err(HarnessError::ConditionViolated(format!(
                "case {name:?}: ess sup {left_sup} on (-delta, 0) must exceed {} and ess sup {right_sup} on (0, delta) must stay below {}",
                tg + decay.r,
                tf - decay.r
            )));
        }
        let shape = DecayShape::new(&case.pair, decay);
        let floor = floor_term(case.data.sup_bound(), shape.s);
        report.fit(name, "floor", floor);

        let ev = Evaluator::new(case.pair.clone(), &case.data)?;
        let mut points = Vec::with_capacity(cfg.times.len());
        for &t in &cfg.times {
            let values = explicit_profile(&ev, m, n, t)?.us();
            check_max_principle(&mut report, name, &format!("t={t}"), &values, ev.bound());
            check_traces(&mut report, name, &ev, t);
            points.push((t, tvs_of(&values, shape.s)?));
        }

        // single constant over the whole ladder
        let c = points
            .iter()
            .map(|&(t, tv)| (tv - floor) * shape.time_factor(t) / shape.bracket(t))
            .fold(0.0f64, f64::max);
        report.fit(name, "c_fit", c);
        let rows: Vec<DecayRow> = points
            .iter()
            .map(|&(t, tvs)| {
                let bound = shape.bound(c, t, floor);
                DecayRow {
                    t,
                    tvs,
                    bound,
                    pass: tvs <= bound * (1.0 + 1e-12),
                }
            })
            .collect();
        for row in &rows {
            report.push(name, &format!("tvs_t={}", row.t), row.tvs, Some(row.bound), row.pass, n);
        }
        report.decay.push((name.to_string(), rows));

        let target = -shape.exponent();
        match fit_rate(&points, floor) {
            Ok(fit) => {
                report.fit(name, "slope", fit.slope);
                report.fit(name, "intercept", fit.intercept);
                report.at_most(name, "decay_slope", fit.slope, target + SLOPE_SLACK, n);
                report.at_most(name, "decay_slope_deviation", (fit.slope - target).abs(), SLOPE_BAND, n);
            }
            Err(_) => {
                report.push(name, "decay_slope", f64::NAN, Some(target + SLOPE_SLACK), false, n);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use iclaws_core::ConvexFlux;

    fn shape() -> DecayShape {
        let pair = InterfacePair::new(
            ConvexFlux::quadratic(-0.5, 0.0).unwrap(),
            ConvexFlux::quadratic(0.5, 0.0).unwrap(),
        );
        DecayShape::new(&pair, DecayConfig { delta: 1.0, r: 1.0 })
    }

    #[test]
    fn bound_shape_for_quadratics() {
        let sh = shape();
        assert_eq!((sh.p, sh.q, sh.s), (1.0, 1.0, 1.0));
        assert_eq!(sh.exponent(), 1.0);
        assert_eq!(sh.bracket(0.5), 1.0);
        assert_eq!(sh.time_factor(0.25), 0.25);
        assert_eq!(sh.bound(2.0, 0.5, 1.0), 5.0);
        assert_eq!(floor_term(0.6, 1.0), 2.4);
    }

    #[test]
    fn bracket_loosens_past_delta() {
        let sh = DecayShape { delta: 0.5, ..shape() };
        // (t / delta)^{(pqs + 1)/s^2} = 4^2
        assert_eq!(sh.bracket(2.0), 16.0);
        assert!(sh.bound(1.0, 2.0, 0.0) > shape().bound(1.0, 2.0, 0.0));
        let small_r = DecayShape { r: 0.5, ..shape() };
        assert_eq!(small_r.bracket(0.1), 4.0);
    }
}
