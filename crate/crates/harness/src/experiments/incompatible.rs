//! Control experiment with unequal flux minima, run on the Godunov scheme.
//!
//! Perturbation growth: for oscillatory data `u0` and its unperturbed
//! reference `v0`, the ratio `TV^s(u(T) - v(T)) / TV^s(u0 - v0)` on the
//! window cells. The same data on the pair with equalized minima gives the
//! baseline.

use iclaws_core::InterfacePair;

use super::common::{build_cases, check_max_principle, data_window, finest, fv_window, tvs_of};
use crate::config::{ExperimentId, ProblemConfig};
use crate::data::build_data;
use crate::report::ExperimentReport;
use crate::{HarnessError, Result};

/// Required factor between incompatible and baseline growth.
pub const SEPARATION: f64 = 2.0;
/// Tolerance on the middle state value.
pub const PLATEAU_TOL: f64 = 1e-2;
/// Widths up to this count as no plateau.
pub const ZERO_WIDTH: f64 = 0.05;

/// Width of the run of cells right of the interface within `tol` of
/// `level`, starting at the first cell right of the interface.
pub fn plateau_width(values: &[f64], m: f64, level: f64, tol: f64) -> f64 {
    let n = values.len();
    let dx = 2.0 * m / n as f64;
    values[n / 2..].iter().take_while(|u| (*u - level).abs() <= tol).count() as f64 * dx
}

/// Cell value at `x` of a window profile.
pub fn cell_value(values: &[f64], m: f64, x: f64) -> f64 {
    let n = values.len();
    let j = (((x + m) / (2.0 * m)) * n as f64).floor().clamp(0.0, (n - 1) as f64) as usize;
    values[j]
}

pub fn run_incompatible(cfg: &ProblemConfig) -> Result<ExperimentReport> {
    cfg.validate_for(ExperimentId::E4)?;
    let mut report = ExperimentReport::new(ExperimentId::E4, cfg.seed);
    let m = cfg.window;
    let t = *cfg.times.last().unwrap();
    let n_max = finest(cfg);
    for case in build_cases(cfg)? {
        let name = case.name.as_str();
        if case.pair.compatible() {
            return Err(HarnessError::Config(format!("case {name:?} needs unequal minima")));
        }
        let reference = build_data(case.config.reference.as_ref().expect("validated"), &case.pair, cfg)?;
        let baseline = case.pair.with_equalized_minima();
        let variants = [("incompatible", &case.pair), ("compatible", &baseline)];

        let mut finest_ratio = [vec![0.0; cfg.s_values.len()], vec![0.0; cfg.s_values.len()]];
        for &n in &cfg.resolutions {
            let u0 = data_window(&case.data, m, n)?;
            let v0 = data_window(&reference, m, n)?;
            let d0: Vec<f64> = u0.iter().zip(&v0).map(|(a, b)| a - b).collect();
            for (k, (label, pair)) in variants.iter().enumerate() {
                let u = fv_window(pair, &case.data, m, n, t)?;
                let v = fv_window(pair, &reference, m, n, t)?;
                let d: Vec<f64> = u.iter().zip(&v).map(|(a, b)| a - b).collect();
                for (i, &s) in cfg.s_values.iter().enumerate() {
                    let before = tvs_of(&d0, s)?;
                    let ratio = tvs_of(&d, s)? / before;
                    report.push(
                        name,
                        &format!("growth_ratio_s={s}_{label}"),
                        ratio,
                        None,
                        ratio.is_finite(),
                        n,
                    );
                    report.push(name, &format!("tvs_s={s}_{label}"), tvs_of(&u, s)?, None, true, n);
                    if n == n_max {
                        finest_ratio[k][i] = ratio;
                    }
                }
            }
        }
        for (i, &s) in cfg.s_values.iter().enumerate() {
            let (inc, comp) = (finest_ratio[0][i], finest_ratio[1][i]);
            report.fit(name, &format!("growth_ratio_s={s}_incompatible"), inc);
            report.fit(name, &format!("growth_ratio_s={s}_compatible"), comp);
            report.at_least(name, &format!("growth_separation_s={s}"), inc / comp, SEPARATION, n_max);
        }

        plateau_rows(
            &mut report,
            name,
            "incompatible",
            &case.pair,
            m,
            n_max,
            t,
            cfg.sup_bound,
        )?;
        plateau_rows(&mut report, name, "compatible", &baseline, m, n_max, t, cfg.sup_bound)?;
    }
    Ok(report)
}

/// Constant data at the left critical point: the middle state
/// `f_+^{-1}(g(theta_g))` right of the interface, of positive width only
/// when the minima differ.
#[allow(clippy::too_many_arguments)]
fn plateau_rows(
    report: &mut ExperimentReport,
    name: &str,
    label: &str,
    pair: &InterfacePair,
    m: f64,
    n: usize,
    t: f64,
    sup_bound: f64,
) -> Result<()> {
    let theta_g = pair.left().theta();
    let data = iclaws_core::InitialData::constant(theta_g);
    let middle = pair.singular_map_lr(theta_g)?;
    let u = fv_window(pair, &data, m, n, t)?;
    let bound = iclaws_core::explicit::max_bound(pair, sup_bound.max(theta_g.abs()))?.value;
    check_max_principle(report, name, &format!("plateau_{label}"), &u, bound);
    let width = plateau_width(&u, m, middle, PLATEAU_TOL);
    report.fit(name, &format!("middle_state_{label}"), middle);
    report.fit(name, &format!("plateau_width_{label}"), width);
    if pair.compatible() {
        report.at_most(name, &format!("plateau_width_{label}"), width, ZERO_WIDTH, n);
    } else {
        let reach = pair.right().deriv(middle) * t;
        let probe = cell_value(&u, m, 0.5 * reach);
        report.at_most(
            name,
            &format!("plateau_value_error_{label}"),
            (probe - middle).abs(),
            PLATEAU_TOL,
            n,
        );
        report.at_least(name, &format!("plateau_width_{label}"), width, 0.5 * reach, n);
        let tv = tvs_of(&u, 1.0)?;
        report.at_least(
            name,
            &format!("constant_data_tv_{label}"),
            tv,
            0.5 * (theta_g - middle).abs(),
            n,
        );
    }
    Ok(())
}
