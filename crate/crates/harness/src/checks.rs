//! Invariant suite behind the `check` subcommand.

use std::time::Instant;

use iclaws_core::explicit::{max_bound, Evaluator, TRACE_TOL};
use iclaws_core::fractional_bv::{tvs_bruteforce, tvs_dp, tvs_reduced};
use iclaws_core::{CaseTag, ConvexFlux, FvState, Grid1D, InitialData, InterfacePair, SampledFunction, Scheme};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::random_piecewise;
use crate::experiments::common::{MAX_PRINCIPLE_TOL, TRACE_EPS};

/// Absolute tolerance of the flux root finders.
pub const TOL_ROOT: f64 = 1e-12;
/// Relative tolerance of the flux identities.
pub const TOL_IDENTITY: f64 = 1e-9;
/// Slack on monotone selections of feet and crossing times.
pub const TOL_MONOTONE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
}

fn timed(name: &'static str, body: impl FnOnce() -> (bool, String)) -> CheckOutcome {
    let start = Instant::now();
    let (pass, detail) = body();
    CheckOutcome {
        name,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Exact dynamic-programming `TV^s` against subset enumeration on random
/// samples of up to 12 points at mixed scales.
pub fn variation_oracle(instances: usize, seed: u64) -> CheckOutcome {
    timed("variation_oracle", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut mismatches = 0;
        let mut reduced_worst = 0.0f64;
        for _ in 0..instances {
            let n = rng.gen_range(2..=12);
            let scale = 10f64.powi(rng.gen_range(-4..=4));
            let us: Vec<f64> = (0..n)
                .map(|_| {
                    let v: f64 = rng.gen_range(-1.0..1.0);
                    if rng.gen_bool(0.2) {
                        v * scale * 1e3
                    } else {
                        v * scale
                    }
                })
                .collect();
            let s = match rng.gen_range(0..4) {
                0 => 1.0,
                1 => 0.5,
                2 => 1.0 / 3.0,
                _ => rng.gen_range(0.05..1.0),
            };
            let f = SampledFunction::from_values(us).expect("finite samples");
            let dp = tvs_dp(&f, s).expect("valid exponent");
            let brute = tvs_bruteforce(&f, s).expect("small input");
            if dp.value != brute.value {
                mismatches += 1;
            }
            let reduced = tvs_reduced(&f, s).expect("valid exponent").value;
            reduced_worst = reduced_worst.max((reduced - dp.value).abs() / dp.value.max(f64::MIN_POSITIVE));
        }
        (
            mismatches == 0 && reduced_worst <= 1e-12,
            format!("{instances} instances, {mismatches} mismatches, reduced relative gap {reduced_worst:.1e}"),
        )
    })
}

/// One flux of every family.
pub fn shipped_fluxes() -> Vec<(&'static str, ConvexFlux)> {
    let nodes: Vec<f64> = (0..=80).map(|k| -4.0 + 0.1 * k as f64).collect();
    let derivs: Vec<f64> = nodes.iter().map(|u| u + u * u * u / 3.0 - 0.2).collect();
    vec![
        ("quadratic", ConvexFlux::quadratic(0.5, -0.2).unwrap()),
        ("power_law_4", ConvexFlux::power_law(0.3, 4.0, 0.1).unwrap()),
        ("power_law_2.5", ConvexFlux::power_law(-1.0, 2.5, 0.0).unwrap()),
        ("power_law_3", ConvexFlux::power_law(1.0, 3.0, 0.0).unwrap()),
        ("tabulated", ConvexFlux::tabulated(nodes, derivs, 0.25).unwrap()),
    ]
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64)).collect()
}

/// Worst violations of the inverse, conjugate and Young identities.
pub fn flux_deviation(flux: &ConvexFlux) -> FluxDeviation {
    let us = linspace(-3.0, 3.0, 2001);
    let mut dev = FluxDeviation::default();
    let rel = |x: f64| x.abs().max(1.0);
    for &u in &us {
        let back = flux
            .deriv_inverse(flux.deriv(u))
            .map_or(f64::INFINITY, |v| (v - u).abs());
        dev.deriv_round_trip = dev.deriv_round_trip.max(back);
    }
    let (xi_lo, xi_hi) = (flux.deriv(-3.0), flux.deriv(3.0));
    let xis = linspace(xi_lo, xi_hi, 2001);
    for &xi in &xis {
        let err = flux
            .deriv_inverse(xi)
            .map_or(f64::INFINITY, |u| (flux.deriv(u) - xi).abs() / rel(xi));
        dev.inverse_round_trip = dev.inverse_round_trip.max(err);
    }
    let m = flux.min_value();
    for y in linspace(m, m + 10.0, 2001) {
        let plus = flux.inverse_plus(y);
        let minus = flux.inverse_minus(y);
        let err = match (plus, minus) {
            (Ok(p), Ok(q)) if p >= flux.theta() && q <= flux.theta() => {
                ((flux.eval(p) - y).abs().max((flux.eval(q) - y).abs())) / rel(y)
            }
            _ => f64::INFINITY,
        };
        dev.value_round_trip = dev.value_round_trip.max(err);
    }
    let coarse_u = linspace(-3.0, 3.0, 201);
    let coarse_xi = linspace(xi_lo, xi_hi, 201);
    let conj: Vec<f64> = coarse_xi
        .iter()
        .map(|&xi| flux.legendre(xi).unwrap_or(f64::NAN))
        .collect();
    for &u in &coarse_u {
        let fu = flux.eval(u);
        for (&xi, &c) in coarse_xi.iter().zip(&conj) {
            let gap = fu + c - u * xi;
            dev.young = dev.young.max(-gap / rel(u * xi).max(rel(fu)));
        }
        let xi = flux.deriv(u);
        let gap = (fu + flux.legendre(xi).unwrap_or(f64::NAN) - u * xi).abs();
        dev.young_equality = dev.young_equality.max(gap / rel(u * xi).max(rel(fu)));
    }
    for w in conj.windows(3) {
        let excess = w[1] - 0.5 * (w[0] + w[2]);
        dev.convexity = dev.convexity.max(excess / rel(w[1]));
    }
    if conj.iter().any(|c| c.is_nan()) {
        dev.convexity = f64::INFINITY;
    }
    dev.conjugate_at_zero = (flux.legendre(0.0).unwrap_or(f64::NAN) + m).abs() / rel(m);
    dev
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FluxDeviation {
    pub deriv_round_trip: f64,
    pub inverse_round_trip: f64,
    pub value_round_trip: f64,
    pub young: f64,
    pub young_equality: f64,
    pub convexity: f64,
    pub conjugate_at_zero: f64,
}

impl FluxDeviation {
    pub fn pass(&self) -> bool {
        self.deriv_round_trip <= 10.0 * TOL_ROOT
            && self.inverse_round_trip <= TOL_IDENTITY
            && self.value_round_trip <= TOL_IDENTITY
            && self.young <= TOL_IDENTITY
            && self.young_equality <= TOL_IDENTITY
            && self.convexity <= TOL_IDENTITY
            && self.conjugate_at_zero <= TOL_IDENTITY
    }
}

pub fn flux_identities() -> CheckOutcome {
    timed("flux_identities", || {
        let mut pass = true;
        let mut detail = Vec::new();
        for (name, flux) in shipped_fluxes() {
            let d = flux_deviation(&flux);
            pass &= d.pass();
            if !d.pass() {
                detail.push(format!("{name}: {d:?}"));
            }
        }
        if detail.is_empty() {
            detail.push(format!("{} families within tolerance", shipped_fluxes().len()));
        }
        (pass, detail.join("; "))
    })
}

/// Compatible problems shared by the trace and monotonicity suites.
pub fn compatible_problems() -> Vec<(String, InterfacePair, InitialData)> {
    let q = |theta: f64| ConvexFlux::quadratic(theta, 0.0).unwrap();
    let burgers = InterfacePair::new(q(0.0), q(0.0));
    let shifted = InterfacePair::new(q(1.0), q(0.0));
    let quartic = InterfacePair::new(
        ConvexFlux::power_law(0.5, 4.0, 0.0).unwrap(),
        ConvexFlux::power_law(-0.5, 2.5, 0.0).unwrap(),
    );
    let mixed = InterfacePair::new(q(1.0), ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap());
    let mut out = vec![
        (
            "burgers_shock".to_string(),
            burgers.clone(),
            InitialData::riemann(1.0, 0.0),
        ),
        (
            "burgers_fan".to_string(),
            burgers.clone(),
            InitialData::riemann(0.0, 1.0),
        ),
        (
            "burgers_constant".to_string(),
            burgers.clone(),
            InitialData::constant(0.7),
        ),
        (
            "shifted_constant".to_string(),
            shifted.clone(),
            InitialData::constant(2.0),
        ),
        (
            "shifted_left_moving".to_string(),
            shifted.clone(),
            InitialData::constant(-1.0),
        ),
        (
            "shifted_critical".to_string(),
            shifted.clone(),
            InitialData::riemann(1.0, 0.0),
        ),
        (
            "shifted_riemann".to_string(),
            shifted.clone(),
            InitialData::riemann(2.0, -1.5),
        ),
        (
            "shifted_fan".to_string(),
            shifted.clone(),
            InitialData::riemann(-0.5, 1.5),
        ),
        (
            "quartic_riemann".to_string(),
            quartic.clone(),
            InitialData::riemann(1.5, -1.0),
        ),
        (
            "quartic_steps".to_string(),
            quartic.clone(),
            InitialData::piecewise_constant(vec![-1.2, -0.4, 0.3, 0.9], vec![-1.0, 1.4, 0.2, -1.1, 0.8]).unwrap(),
        ),
    ];
    for (label, pair) in [("shifted", &shifted), ("mixed", &mixed), ("quartic", &quartic)] {
        for seed in 0..2u64 {
            let data = random_piecewise(pair, 2.0, 3.0, 64, None, seed).expect("straddling data");
            out.push((format!("{label}_random_{seed}"), pair.clone(), data));
        }
    }
    out
}

/// Flux balance and interface entropy at the traces.
pub fn trace_suite(times: &[f64]) -> CheckOutcome {
    timed("interface_traces", || {
        let mut failures = Vec::new();
        let mut worst = 0.0f64;
        let mut count = 0;
        for (name, pair, data) in compatible_problems() {
            let ev = Evaluator::new(pair, &data).expect("valid problem");
            for &t in times {
                count += 1;
                match ev.interface_trace(t, TRACE_EPS) {
                    Ok(tr) => {
                        worst = worst.max(tr.rh_residual);
                        if tr.rh_residual > TRACE_TOL || !tr.entropy_ok {
                            failures.push(format!("{name} t={t}: {tr:?}"));
                        }
                    }
                    Err(e) => failures.push(format!("{name} t={t}: {e}")),
                }
            }
        }
        let detail = if failures.is_empty() {
            format!("{count} traces, worst residual {worst:.1e}")
        } else {
            failures.join("; ")
        };
        (failures.is_empty(), detail)
    })
}

/// Monotone feet and crossing times plus the maximum principle over
/// sampled profiles.
pub fn monotonicity_suite(times: &[f64]) -> CheckOutcome {
    timed("monotonicity", || {
        let xs = linspace(-3.0, 3.0, 601);
        let mut failures = Vec::new();
        let mut points = 0;
        for (name, pair, data) in compatible_problems() {
            let ev = Evaluator::new(pair, &data).expect("valid problem");
            for &t in times {
                let field = match ev.sample_profile(t, &xs) {
                    Ok(f) => f,
                    Err(e) => {
                        failures.push(format!("{name} t={t}: {e}"));
                        continue;
                    }
                };
                points += field.points.len();
                if let Some(p) = field.points.iter().find(|p| p.u.abs() > ev.bound() + MAX_PRINCIPLE_TOL) {
                    failures.push(format!("{name} t={t}: |u| = {} above {}", p.u.abs(), ev.bound()));
                }
                for w in field.points.windows(2) {
                    let (a, b) = (&w[0], &w[1]);
                    if (a.x < 0.0) == (b.x < 0.0) && a.z > b.z + TOL_MONOTONE {
                        failures.push(format!("{name} t={t}: foot decreases between x = {} and {}", a.x, b.x));
                    }
                    if a.case_tag == b.case_tag {
                        let (ta, tb) = (a.tau.unwrap_or(0.0), b.tau.unwrap_or(0.0));
                        let bad = match a.case_tag {
                            CaseTag::CrossLR => ta < tb - TOL_MONOTONE,
                            CaseTag::CrossRL => ta > tb + TOL_MONOTONE,
                            _ => false,
                        };
                        if bad {
                            failures.push(format!("{name} t={t}: crossing time not monotone at x = {}", a.x));
                        }
                    }
                }
            }
        }
        let detail = if failures.is_empty() {
            format!("{points} points")
        } else {
            failures.join("; ")
        };
        (failures.is_empty(), detail)
    })
}

/// Godunov mass balance against boundary fluxes and the maximum principle.
pub fn godunov_suite() -> CheckOutcome {
    timed("godunov_conservation", || {
        let mut failures = Vec::new();
        for (name, pair, data) in compatible_problems() {
            let grid = Grid1D::new(-3.0, 3.0, 300).expect("grid");
            let scheme = Scheme::new(pair.clone(), grid, data.sup_bound()).expect("scheme");
            let bound = max_bound(&pair, data.sup_bound()).expect("bound").value;
            let mut state = FvState::from_data(grid, &data);
            let m0 = state.mass();
            let dt = scheme.stable_dt();
            let mut inflow = 0.0;
            for _ in 0..200 {
                inflow += dt * (pair.left().eval(state.u[0]) - pair.right().eval(state.u[grid.cells() - 1]));
                scheme.step(&mut state, dt).expect("stable step");
            }
            let drift = (state.mass() - m0 - inflow).abs();
            let worst = state.u.iter().fold(0.0f64, |m, u| m.max(u.abs()));
            if drift > 1e-10 || worst > bound + 1e-12 {
                failures.push(format!("{name}: drift {drift:.1e}, sup {worst} vs {bound}"));
            }
        }
        let detail = if failures.is_empty() {
            "mass balanced".to_string()
        } else {
            failures.join("; ")
        };
        (failures.is_empty(), detail)
    })
}

/// The full invariant suite.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        variation_oracle(1000, 0),
        flux_identities(),
        trace_suite(&[0.25, 0.5, 1.0]),
        monotonicity_suite(&[0.5, 1.0]),
        godunov_suite(),
    ]
}
