//! Acceptance criteria. Prints one line per criterion and exits with a
//! nonzero status when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iclaws_harness::checks::{flux_identities, monotonicity_suite, trace_suite, variation_oracle, CheckOutcome};
use iclaws_harness::experiments::{run_convergence, run_decay, run_incompatible, run_propagation, run_smoothing};
use iclaws_harness::{DataSpec, ExperimentReport, FluxSpec, ProblemConfig};

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Duration,
    run: fn() -> Verdict,
}

struct Verdict {
    pass: bool,
    detail: String,
}

impl From<CheckOutcome> for Verdict {
    fn from(c: CheckOutcome) -> Self {
        Verdict {
            pass: c.pass,
            detail: c.detail,
        }
    }
}

fn error(e: impl std::fmt::Display) -> Verdict {
    Verdict {
        pass: false,
        detail: format!("error: {e}"),
    }
}

fn config(name: &str) -> Result<ProblemConfig, iclaws_harness::HarnessError> {
    ProblemConfig::load(format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR")))
}

/// Verdict over the rows whose quantity satisfies `select`; fails when
/// nothing is selected.
fn rows_verdict(report: &ExperimentReport, select: impl Fn(&str) -> bool) -> Verdict {
    let rows: Vec<_> = report.rows.iter().filter(|r| select(&r.quantity)).collect();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}/{} = {:.4e} vs {:?}", r.case, r.quantity, r.value, r.bound))
        .collect();
    let pass = !rows.is_empty() && failed.is_empty();
    let detail = if rows.is_empty() {
        "no rows selected".to_string()
    } else if failed.is_empty() {
        format!("{} rows", rows.len())
    } else {
        format!("{} of {} rows fail: {}", failed.len(), rows.len(), failed.join("; "))
    };
    Verdict { pass, detail }
}

fn worst(report: &ExperimentReport, quantity: &str, largest: bool) -> Option<(String, f64)> {
    let rows = report.rows.iter().filter(|r| r.quantity == quantity);
    let pick = |a: &(String, f64), b: &(String, f64)| if largest { a.1 >= b.1 } else { a.1 <= b.1 };
    rows.map(|r| (r.case.clone(), r.value))
        .reduce(|a, b| if pick(&a, &b) { a } else { b })
}

fn with_note(mut v: Verdict, note: String) -> Verdict {
    v.detail = format!("{note}; {}", v.detail);
    v
}

fn c1_variation() -> Verdict {
    variation_oracle(1000, 0).into()
}

fn c2_identities() -> Verdict {
    flux_identities().into()
}

fn c3_traces() -> Verdict {
    trace_suite(&[0.25, 0.5, 1.0]).into()
}

fn is_shifted_pair(case: &iclaws_harness::CaseConfig) -> bool {
    matches!(case.left, FluxSpec::Quadratic { theta, offset } if theta == 1.0 && offset == 0.0)
        && matches!(case.right, FluxSpec::Quadratic { theta, offset } if theta == 0.0 && offset == 0.0)
}

fn c4_equivalence() -> Verdict {
    let mut cfg = match config("e5.toml") {
        Ok(c) => c,
        Err(e) => return error(e),
    };
    cfg.cases
        .retain(|c| matches!(c.data, DataSpec::Riemann { .. } | DataSpec::Constant { .. }));
    let has_interface_case = cfg
        .cases
        .iter()
        .any(|c| is_shifted_pair(c) && matches!(c.data, DataSpec::Constant { value } if value == 2.0));
    if !has_interface_case || cfg.times.last() != Some(&1.0) || cfg.window != 2.0 {
        return error("suite lacks u0 = 2 with the shifted quadratic pair on [-2, 2] at T = 1");
    }
    if cfg.resolutions.last() != Some(&8192) {
        return error("finest resolution is not 8192");
    }
    match run_convergence(&cfg) {
        Ok(report) => {
            let v = rows_verdict(&report, |q| q == "l1_error_increase" || q == "l1_error_final");
            let (case, err) = worst(&report, "l1_error_final", true).unwrap_or_default();
            with_note(
                v,
                format!("{} cases, largest final error {err:.3e} ({case})", cfg.cases.len()),
            )
        }
        Err(e) => error(e),
    }
}

fn c5_smoothing() -> Verdict {
    match config("e1.toml").and_then(|c| run_smoothing(&c)) {
        Ok(report) => {
            let v = rows_verdict(&report, |q| q == "scan_ratio_s_star" || q == "scan_ratio_below_s_star");
            let (_, at) = worst(&report, "scan_ratio_s_star", true).unwrap_or_default();
            let (_, below) = worst(&report, "scan_ratio_below_s_star", false).unwrap_or_default();
            with_note(v, format!("max ratio at s* {at:.4}, min ratio at 0.8 s* {below:.4}"))
        }
        Err(e) => error(e),
    }
}

fn c6_decay() -> Verdict {
    match config("e2.toml").and_then(|c| run_decay(&c)) {
        Ok(report) => {
            let v = rows_verdict(&report, |q| q == "decay_slope_deviation");
            let slopes: Vec<String> = report
                .fitted
                .iter()
                .filter(|(k, _)| k.ends_with("/slope"))
                .map(|(k, s)| format!("{k} {s:.4}"))
                .collect();
            with_note(v, slopes.join(", "))
        }
        Err(e) => error(e),
    }
}

fn c7_propagation() -> Verdict {
    match config("e3.toml").and_then(|c| run_propagation(&c)) {
        Ok(report) => {
            let v = rows_verdict(&report, |q| q.starts_with("tvs_"));
            let fits: Vec<String> = report
                .fitted
                .iter()
                .filter(|(k, _)| k.contains("c_fit"))
                .map(|(k, c)| format!("{k} {c:.4}"))
                .collect();
            with_note(v, fits.join(", "))
        }
        Err(e) => error(e),
    }
}

fn c8_monotonicity() -> Verdict {
    monotonicity_suite(&[0.5, 1.0]).into()
}

fn c9_incompatible() -> Verdict {
    match config("e4.toml").and_then(|c| run_incompatible(&c)) {
        Ok(report) => {
            let v = rows_verdict(&report, |_| true);
            let sep: Vec<String> = report
                .rows
                .iter()
                .filter(|r| r.quantity.starts_with("growth_separation"))
                .map(|r| format!("{} {:.3}", r.quantity, r.value))
                .collect();
            with_note(v, sep.join(", "))
        }
        Err(e) => error(e),
    }
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        name: "variation_oracle",
        limit: Duration::from_secs(10),
        run: c1_variation,
    },
    Criterion {
        id: 2,
        name: "flux_identities",
        limit: Duration::from_secs(5),
        run: c2_identities,
    },
    Criterion {
        id: 3,
        name: "interface_traces",
        limit: Duration::from_secs(30),
        run: c3_traces,
    },
    Criterion {
        id: 4,
        name: "oracle_equivalence",
        limit: Duration::from_secs(300),
        run: c4_equivalence,
    },
    Criterion {
        id: 5,
        name: "smoothing_rate",
        limit: Duration::from_secs(600),
        run: c5_smoothing,
    },
    Criterion {
        id: 6,
        name: "decay_rate",
        limit: Duration::from_secs(300),
        run: c6_decay,
    },
    Criterion {
        id: 7,
        name: "propagation",
        limit: Duration::from_secs(300),
        run: c7_propagation,
    },
    Criterion {
        id: 8,
        name: "monotonicity",
        limit: Duration::from_secs(60),
        run: c8_monotonicity,
    },
    Criterion {
        id: 9,
        name: "compatibility_necessity",
        limit: Duration::from_secs(300),
        run: c9_incompatible,
    },
];

fn main() -> ExitCode {
    let mut failures = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = verdict.pass && in_time;
        if !pass {
            failures += 1;
        }
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), c.limit.as_secs());
        let timing = if in_time {
            timing
        } else {
            format!("{timing}, over limit")
        };
        println!(
            "{} criterion {} {:<24} [{timing}] {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            verdict.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        CRITERIA.len() - failures,
        CRITERIA.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
