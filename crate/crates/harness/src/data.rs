//! Builds fluxes and initial data from their config specs.

use iclaws_core::{ConvexFlux, InitialData, InterfacePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{CaseConfig, DataSpec, FluxSpec, ProblemConfig};
use crate::{HarnessError, Result};

pub fn build_flux(spec: &FluxSpec) -> Result<ConvexFlux> {
    let flux = match spec {
        FluxSpec::PowerLaw { theta, alpha, offset } => ConvexFlux::power_law(*theta, *alpha, *offset)?,
        FluxSpec::Quadratic { theta, offset } => ConvexFlux::quadratic(*theta, *offset)?,
        FluxSpec::Tabulated {
            nodes,
            derivs,
            min_value,
        } => ConvexFlux::tabulated(nodes.clone(), derivs.clone(), *min_value)?,
    };
    Ok(flux)
}

/// The pair of a case; fails when compatibility differs from the expectation.
pub fn build_pair(case: &CaseConfig) -> Result<InterfacePair> {
    let pair = InterfacePair::new(build_flux(&case.left)?, build_flux(&case.right)?);
    if pair.compatible() != case.expect_compatible {
        return Err(HarnessError::Config(format!(
            "case {:?}: minima {} and {} do not match expect_compatible = {}",
            case.name,
            pair.left().min_value(),
            pair.right().min_value(),
            case.expect_compatible
        )));
    }
    Ok(pair)
}

/// Builds the data of `spec` for `pair`, checking it against `sup_bound`.
pub fn build_data(spec: &DataSpec, pair: &InterfacePair, cfg: &ProblemConfig) -> Result<InitialData> {
    let data = match spec {
        DataSpec::Constant { value } => InitialData::constant(*value),
        DataSpec::Riemann { left, right } => InitialData::riemann(*left, *right),
        DataSpec::Piecewise { breakpoints, values } => {
            InitialData::piecewise_constant(breakpoints.clone(), values.clone())?
        }
        DataSpec::Linear { nodes } => InitialData::piecewise_linear(nodes.iter().map(|n| (n[0], n[1])).collect())?,
        DataSpec::SinePack {
            base,
            amplitude,
            wavenumbers,
            lo,
            hi,
            samples,
        } => {
            if wavenumbers.is_empty() {
                return Err(HarnessError::Config("sine pack needs wavenumbers".into()));
            }
            let k = wavenumbers.len() as f64;
            let (base, amplitude) = (*base, *amplitude);
            let profile = |x: f64| base + amplitude * wavenumbers.iter().map(|w| (w * x).sin()).sum::<f64>() / k;
            InitialData::sampled(profile, *lo, *hi, *samples)?
        }
        DataSpec::RandomPiecewise { steps, levels, seed } => random_piecewise(
            pair,
            cfg.window,
            cfg.sup_bound,
            *steps,
            levels.as_deref(),
            seed.unwrap_or(cfg.seed),
        )?,
        DataSpec::SquareWave {
            low,
            high,
            period,
            lo,
            hi,
            outside,
            patches,
        } => {
            if !(period > &0.0 && hi > lo) {
                return Err(HarnessError::Config("square wave needs period > 0 and hi > lo".into()));
            }
            let cells = ((hi - lo) / (0.5 * period)).round() as usize;
            if cells == 0 || cells > 1_000_000 {
                return Err(HarnessError::Config(format!("square wave with {cells} half periods")));
            }
            let mut breakpoints = Vec::with_capacity(cells + 1);
            let mut values = vec![*outside];
            for k in 0..cells {
                breakpoints.push(lo + (hi - lo) * (k as f64 / cells as f64));
                values.push(if k % 2 == 0 { *low } else { *high });
            }
            breakpoints.push(*hi);
            values.push(*outside);
            for patch in patches {
                (breakpoints, values) = overwrite(&breakpoints, &values, patch.lo, patch.hi, patch.value)?;
            }
            InitialData::piecewise_constant(breakpoints, values)?
        }
    };
    if data.sup_bound() > cfg.sup_bound * (1.0 + 1e-12) {
        return Err(HarnessError::Config(format!(
            "data reaches {} beyond sup_bound {}",
            data.sup_bound(),
            cfg.sup_bound
        )));
    }
    Ok(data)
}

/// Sets the piecewise-constant function to `value` on `[lo, hi)`.
fn overwrite(breakpoints: &[f64], values: &[f64], lo: f64, hi: f64, value: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(hi > lo) {
        return Err(HarnessError::Config(format!("empty patch [{lo}, {hi})")));
    }
    let at = |x: f64| values[breakpoints.partition_point(|&b| b <= x)];
    let after = at(hi);
    let mut bs = Vec::with_capacity(breakpoints.len() + 2);
    let mut vs = vec![values[0]];
    for (k, &b) in breakpoints.iter().enumerate() {
        if b < lo {
            bs.push(b);
            vs.push(values[k + 1]);
        }
    }
    bs.push(lo);
    vs.push(value);
    bs.push(hi);
    vs.push(after);
    for (k, &b) in breakpoints.iter().enumerate() {
        if b > hi {
            bs.push(b);
            vs.push(values[k + 1]);
        }
    }
    // drop breaks that separate equal values
    let mut out_b = Vec::with_capacity(bs.len());
    let mut out_v = vec![vs[0]];
    for (k, &b) in bs.iter().enumerate() {
        if vs[k + 1] != *out_v.last().unwrap() {
            out_b.push(b);
            out_v.push(vs[k + 1]);
        }
    }
    Ok((out_b, out_v))
}

/// `steps` equal steps over `[-m, m]`, the end steps extended to infinity.
///
/// Values are uniform in `[theta_g - 2, theta_f + 2]` (or drawn from
/// `levels`), clipped to `sup_bound`, and adjusted so that the data takes
/// values on both sides of both critical points.
pub fn random_piecewise(
    pair: &InterfacePair,
    m: f64,
    sup_bound: f64,
    steps: usize,
    levels: Option<&[f64]>,
    seed: u64,
) -> Result<InitialData> {
    if steps < 4 {
        return Err(HarnessError::Config("random data needs at least 4 steps".into()));
    }
    let (tg, tf) = (pair.left().theta(), pair.right().theta());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = match levels {
        Some([]) => return Err(HarnessError::Config("empty level set".into())),
        Some(l) => (
            l.iter().copied().fold(f64::INFINITY, f64::min),
            l.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ),
        None => (tg - 2.0, tf + 2.0),
    };
    if !(hi > lo) {
        return Err(HarnessError::Config(format!("empty value range [{lo}, {hi}]")));
    }
    let mut values: Vec<f64> = (0..steps)
        .map(|_| {
            let v = match levels {
                Some(l) => l[rng.gen_range(0..l.len())],
                None => rng.gen_range(lo..hi),
            };
            v.clamp(-sup_bound, sup_bound)
        })
        .collect();
    let low_theta = tg.min(tf);
    let high_theta = tg.max(tf);
    if !values.iter().any(|&v| v < low_theta) {
        values[steps / 4] = lo.max(-sup_bound);
    }
    if !values.iter().any(|&v| v > high_theta) {
        values[3 * steps / 4] = hi.min(sup_bound);
    }
    if !(values.iter().any(|&v| v < low_theta) && values.iter().any(|&v| v > high_theta)) {
        return Err(HarnessError::Config(format!(
            "values cannot straddle both critical points {tg}, {tf} within sup_bound {sup_bound}"
        )));
    }
    let breakpoints = (1..steps).map(|k| -m + 2.0 * m * (k as f64 / steps as f64)).collect();
    Ok(InitialData::piecewise_constant(breakpoints, values)?)
}
