use iclaws_core::explicit::{Evaluator, TRACE_TOL};
use iclaws_core::fractional_bv::{tvs_reduced, uniform_grid, ScanPoint};
use iclaws_core::{FvState, Grid1D, InitialData, InterfacePair, SampledFunction, Scheme, SolutionField};

use crate::config::{CaseConfig, ProblemConfig};
use crate::data::{build_data, build_pair};
use crate::report::ExperimentReport;
use crate::{HarnessError, Result};

/// Starting distance for interface trace extraction.
pub const TRACE_EPS: f64 = 1e-3;

/// Slack on the maximum principle.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-9;

pub struct Case {
    pub name: String,
    pub pair: InterfacePair,
    pub data: InitialData,
    pub config: CaseConfig,
}

pub fn build_cases(cfg: &ProblemConfig) -> Result<Vec<Case>> {
    cfg.cases
        .iter()
        .map(|c| {
            let pair = build_pair(c)?;
            let data = build_data(&c.data, &pair, cfg)?;
            Ok(Case {
                name: c.name.clone(),
                pair,
                data,
                config: c.clone(),
            })
        })
        .collect()
}

pub fn require_compatible(case: &Case) -> Result<()> {
    if !case.pair.compatible() {
        return Err(HarnessError::Config(format!(
            "case {:?} needs a compatible pair",
            case.name
        )));
    }
    Ok(())
}

/// `s* = min(1/p, 1/q)` from the non-degeneracy exponents.
pub fn critical_exponent(pair: &InterfacePair) -> f64 {
    (1.0 / pair.right().nondeg_exponent()).min(1.0 / pair.left().nondeg_exponent())
}

pub fn finest(cfg: &ProblemConfig) -> usize {
    *cfg.resolutions.last().expect("validated ladder")
}

/// Explicit profile on the `n`-cell uniform grid of `[-m, m]`.
pub fn explicit_profile(ev: &Evaluator, m: f64, n: usize, t: f64) -> Result<SolutionField> {
    Ok(ev.sample_profile(t, &uniform_grid(-m, m, n))?)
}

/// Centers of the `n` window cells of `[-m, m]`.
pub fn window_centers(m: f64, n: usize) -> Vec<f64> {
    let dx = 2.0 * m / n as f64;
    (0..n).map(|j| -m + dx * (j as f64 + 0.5)).collect()
}

/// Godunov cell averages at time `t` on the `n` cells of `[-m, m]`. The
/// computational domain is padded beyond the reach of the fastest wave,
/// so the outflow boundaries never influence the window.
pub fn fv_window(pair: &InterfacePair, data: &InitialData, m: f64, n: usize, t: f64) -> Result<Vec<f64>> {
    if n % 2 != 0 {
        return Err(HarnessError::Config(format!(
            "window needs an even cell count, got {n}"
        )));
    }
    let window = Grid1D::new(-m, m, n)?;
    let dx = window.dx();
    let v_max = Scheme::new(pair.clone(), window, data.sup_bound())?.v_max();
    let pad = ((v_max * t + 0.25) / dx).ceil() as usize;
    let half = pad as f64 * dx;
    let grid = Grid1D::new(-m - half, m + half, n + 2 * pad)?;
    let scheme = Scheme::new(pair.clone(), grid, data.sup_bound())?;
    let mut state = FvState::from_data(grid, data);
    scheme.run(&mut state, t)?;
    Ok(state.u[pad..pad + n].to_vec())
}

/// Cell averages of the data on the window cells.
pub fn data_window(data: &InitialData, m: f64, n: usize) -> Result<Vec<f64>> {
    Ok(FvState::from_data(Grid1D::new(-m, m, n)?, data).u)
}

/// `last / first` over the upper half of a scan.
pub fn top_half_ratio(scan: &[ScanPoint]) -> f64 {
    let top = &scan[scan.len() / 2..];
    let (first, last) = (top[0].tvs, top[top.len() - 1].tvs);
    if first == 0.0 {
        if last == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        last / first
    }
}

/// `TV^s` of values at unit spacing.
pub fn tvs_of(values: &[f64], s: f64) -> Result<f64> {
    if values.len() < 2 {
        return Ok(0.0);
    }
    Ok(tvs_reduced(&SampledFunction::from_values(values.to_vec())?, s)?.value)
}

/// Adds a maximum-principle row for a sampled set of values.
pub fn check_max_principle(report: &mut ExperimentReport, case: &str, label: &str, values: &[f64], bound: f64) -> bool {
    let worst = values.iter().fold(0.0f64, |m, u| m.max(u.abs()));
    report.at_most(
        case,
        &format!("max_principle_{label}"),
        worst,
        bound + MAX_PRINCIPLE_TOL,
        values.len(),
    )
}

/// Adds interface flux balance and entropy rows at time `t`.
pub fn check_traces(report: &mut ExperimentReport, case: &str, ev: &Evaluator, t: f64) -> bool {
    let label = format!("t={t}");
    match ev.interface_trace(t, TRACE_EPS) {
        Ok(trace) => {
            let rh = report.at_most(case, &format!("rh_residual_{label}"), trace.rh_residual, TRACE_TOL, 0);
            let entropy = report.push(
                case,
                &format!("interface_entropy_{label}"),
                f64::from(u8::from(trace.entropy_ok)),
                None,
                trace.entropy_ok,
                0,
            );
            rh && entropy
        }
        Err(_) => report.push(
            case,
            &format!("rh_residual_{label}"),
            f64::NAN,
            Some(TRACE_TOL),
            false,
            0,
        ),
    }
}
