//! Experiment configuration, read from TOML.
//!
//! ```toml
//! seed = 7
//! window = 2.0
//! sup_bound = 3.0
//! times = [0.1, 0.5, 1.0]
//! s_values = [0.5]
//! resolutions = [1024, 2048, 4096]
//!
//! [decay]
//! delta = 1.0
//! r = 1.0
//!
//! [[cases]]
//! name = "quadratic"
//! expect_compatible = true
//! left = { family = "quadratic", theta = 1.0 }
//! right = { family = "power_law", theta = 0.0, alpha = 4.0 }
//! data = { kind = "riemann", left = 2.0, right = -1.0 }
//! ```
//!
//! Flux families: `power_law` (`theta`, `alpha`, `offset`), `quadratic`
//! (`theta`, `offset`), `tabulated` (`nodes`, `derivs`, `min_value`).
//!
//! Data kinds: `constant`, `riemann`, `piecewise`, `linear`, `sine_pack`,
//! `random_piecewise`, `square_wave`.

use std::path::Path;

use iclaws_core::explicit::T_MIN;
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    #[serde(default)]
    pub seed: u64,
    /// Half-width `M` of the measurement window `[-M, M]`.
    #[serde(default = "default_window")]
    pub window: f64,
    #[serde(default = "default_sup_bound")]
    pub sup_bound: f64,
    #[serde(default = "default_times")]
    pub times: Vec<f64>,
    #[serde(default)]
    pub s_values: Vec<f64>,
    #[serde(default = "default_resolutions")]
    pub resolutions: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decay: Option<DecayConfig>,
    pub cases: Vec<CaseConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecayConfig {
    pub delta: f64,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseConfig {
    pub name: String,
    #[serde(default = "yes")]
    pub expect_compatible: bool,
    pub left: FluxSpec,
    pub right: FluxSpec,
    pub data: DataSpec,
    /// Unperturbed data for the incompatibility experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<DataSpec>,
    /// Upper bound on the log-log convergence slope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FluxSpec {
    PowerLaw {
        theta: f64,
        alpha: f64,
        #[serde(default)]
        offset: f64,
    },
    Quadratic {
        theta: f64,
        #[serde(default)]
        offset: f64,
    },
    Tabulated {
        nodes: Vec<f64>,
        derivs: Vec<f64>,
        #[serde(default)]
        min_value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Patch {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DataSpec {
    Constant {
        value: f64,
    },
    Riemann {
        left: f64,
        right: f64,
    },
    Piecewise {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Linear {
        nodes: Vec<[f64; 2]>,
    },
    /// `base + amplitude * sum_k sin(k x) / K` on `[lo, hi]`, `base` outside.
    SinePack {
        #[serde(default)]
        base: f64,
        amplitude: f64,
        wavenumbers: Vec<f64>,
        lo: f64,
        hi: f64,
        #[serde(default = "default_sine_samples")]
        samples: usize,
    },
    /// Steps of equal width over the window, end steps extended.
    RandomPiecewise {
        #[serde(default = "default_steps")]
        steps: usize,
        /// Draw from these levels instead of the default uniform range.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        levels: Option<Vec<f64>>,
        /// Overrides the top-level seed.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    /// Alternates `low`, `high` with the given period on `[lo, hi]`,
    /// `outside` elsewhere, then applies the patches in order.
    SquareWave {
        low: f64,
        high: f64,
        period: f64,
        lo: f64,
        hi: f64,
        outside: f64,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        patches: Vec<Patch>,
    },
}

fn default_window() -> f64 {
    2.0
}

fn default_sup_bound() -> f64 {
    3.0
}

/// Eight log-spaced times on `[0.05, 1]`.
pub fn default_times() -> Vec<f64> {
    log_ladder(0.05, 1.0, 8)
}

fn default_resolutions() -> Vec<usize> {
    vec![512, 1024, 2048, 4096, 8192]
}

fn default_sine_samples() -> usize {
    4096
}

fn default_steps() -> usize {
    64
}

fn yes() -> bool {
    true
}

/// `n` log-spaced points from `a` to `b` inclusive.
pub fn log_ladder(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![b];
    }
    (0..n)
        .map(|k| {
            if k == n - 1 {
                b
            } else {
                a * (b / a).powf(k as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// Which experiment a config is validated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentId {
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 5] = [Self::E1, Self::E2, Self::E3, Self::E4, Self::E5];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::E1 => "e1",
            Self::E2 => "e2",
            Self::E3 => "e3",
            Self::E4 => "e4",
            Self::E5 => "e5",
        }
    }
}

impl std::str::FromStr for ExperimentId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s.to_ascii_lowercase())
            .ok_or_else(|| HarnessError::Config(format!("unknown experiment {s:?}, expected e1..e5")))
    }
}

impl std::fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl ProblemConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks that hold for every experiment.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Config(msg));
        if !(self.window > 0.0 && self.window.is_finite()) {
            return bad(format!("window must be positive, got {}", self.window));
        }
        if !(self.sup_bound > 0.0 && self.sup_bound.is_finite()) {
            return bad(format!("sup_bound must be positive, got {}", self.sup_bound));
        }
        if self.times.is_empty() || self.times.iter().any(|&t| !(t >= T_MIN && t.is_finite())) {
            return bad("times must be non-empty and at least 1e-9".into());
        }
        if self.times.windows(2).any(|w| !(w[1] > w[0])) {
            return bad("times must be strictly increasing".into());
        }
        if self.s_values.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
            return bad("s values must lie in (0, 1]".into());
        }
        if self.resolutions.is_empty() || self.resolutions[0] < 2 || self.resolutions[0] % 2 != 0 {
            return bad("resolutions must start at an even count of at least 2".into());
        }
        if self.resolutions.windows(2).any(|w| w[1] <= w[0] || w[1] % w[0] != 0) {
            return bad("resolutions must be increasing and nested".into());
        }
        if let Some(d) = self.decay {
            if !(d.delta > 0.0 && d.r > 0.0) {
                return bad(format!("decay needs delta, r > 0, got {}, {}", d.delta, d.r));
            }
        }
        if self.cases.is_empty() {
            return bad("no cases".into());
        }
        for (i, c) in self.cases.iter().enumerate() {
            if c.name.is_empty()
                || c.name
                    .contains(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_' || ch == '-'))
            {
                return bad(format!("case name {:?} must be a non-empty identifier", c.name));
            }
            if self.cases[..i].iter().any(|o| o.name == c.name) {
                return bad(format!("duplicate case {:?}", c.name));
            }
        }
        Ok(())
    }

    /// Extra requirements of one experiment.
    pub fn validate_for(&self, id: ExperimentId) -> Result<()> {
        self.validate()?;
        match id {
            ExperimentId::E2 => match self.decay {
                Some(d) => {
                    let t_max = *self.times.last().unwrap();
                    if d.delta < t_max || d.r < 1.0 {
                        return Err(HarnessError::Config(format!(
                            "decay needs delta >= max t = {t_max} and r >= 1, got {}, {}",
                            d.delta, d.r
                        )));
                    }
                }
                None => return Err(HarnessError::Config("decay experiment needs a [decay] table".into())),
            },
            ExperimentId::E3 if self.s_values.is_empty() => {
                return Err(HarnessError::Config("propagation needs s_values".into()));
            }
            ExperimentId::E4 => {
                if self.s_values.is_empty() {
                    return Err(HarnessError::Config("incompatibility experiment needs s_values".into()));
                }
                if let Some(c) = self.cases.iter().find(|c| c.reference.is_none()) {
                    return Err(HarnessError::Config(format!("case {:?} needs reference data", c.name)));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = r#"
        seed = 7
        times = [0.1, 0.5, 1.0]
        s_values = [0.5]
        resolutions = [1024, 2048, 4096]

        [decay]
        delta = 1.0
        r = 1.0

        [[cases]]
        name = "quadratic"
        left = { family = "quadratic", theta = 1.0 }
        right = { family = "power_law", theta = 0.0, alpha = 4.0 }
        data = { kind = "riemann", left = 2.0, right = -1.0 }
    "#;

    #[test]
    fn parses_with_defaults() {
        let cfg = ProblemConfig::from_toml(EXAMPLE).unwrap();
        assert_eq!(cfg.window, 2.0);
        assert_eq!(cfg.sup_bound, 3.0);
        assert_eq!(cfg.seed, 7);
        assert!(cfg.cases[0].expect_compatible);
        assert_eq!(
            cfg.cases[0].left,
            FluxSpec::Quadratic {
                theta: 1.0,
                offset: 0.0
            }
        );
        assert!(cfg.validate_for(ExperimentId::E2).is_ok());
        assert!(cfg.validate_for(ExperimentId::E4).is_err());
    }

    #[test]
    fn default_ladder() {
        let t = default_times();
        assert_eq!(t.len(), 8);
        assert_eq!(t[0], 0.05);
        assert_eq!(t[7], 1.0);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn rejects_bad_configs() {
        let swap = |from: &str, to: &str| ProblemConfig::from_toml(&EXAMPLE.replace(from, to));
        assert!(swap("resolutions = [1024, 2048, 4096]", "resolutions = [1024, 3000]").is_err());
        assert!(swap("s_values = [0.5]", "s_values = [1.5]").is_err());
        assert!(swap("times = [0.1, 0.5, 1.0]", "times = [0.5, 0.1]").is_err());
        assert!(swap("r = 1.0", "r = 0.0").is_err());
        assert!(swap("theta = 1.0 }", "theta = 1.0, bogus = 1 }").is_err());
        assert!(swap("name = \"quadratic\"", "name = \"has space\"").is_err());

        let cfg = ProblemConfig::from_toml(&EXAMPLE.replace("delta = 1.0", "delta = 0.5")).unwrap();
        assert!(cfg.validate_for(ExperimentId::E2).is_err());
        let no_decay = EXAMPLE.replace("[decay]\n        delta = 1.0\n        r = 1.0", "");
        let cfg = ProblemConfig::from_toml(&no_decay).unwrap();
        assert!(matches!(
            cfg.validate_for(ExperimentId::E2),
            Err(HarnessError::Config(_))
        ));
    }

    #[test]
    fn experiment_ids() {
        assert_eq!("E3".parse::<ExperimentId>().unwrap(), ExperimentId::E3);
        assert!("e6".parse::<ExperimentId>().is_err());
    }

    fn finite() -> impl Strategy<Value = f64> {
        -1e6..1e6f64
    }

    fn flux() -> impl Strategy<Value = FluxSpec> {
        prop_oneof![
            (finite(), 1.1..6.0f64, finite())
                .prop_map(|(theta, alpha, offset)| { FluxSpec::PowerLaw { theta, alpha, offset } }),
            (finite(), finite()).prop_map(|(theta, offset)| FluxSpec::Quadratic { theta, offset }),
            (prop::collection::vec(finite(), 2..5), finite()).prop_map(|(nodes, min_value)| {
                FluxSpec::Tabulated {
                    derivs: nodes.iter().map(|x| x * 0.5).collect(),
                    nodes,
                    min_value,
                }
            }),
        ]
    }

    fn data() -> impl Strategy<Value = DataSpec> {
        prop_oneof![
            finite().prop_map(|value| DataSpec::Constant { value }),
            (finite(), finite()).prop_map(|(left, right)| DataSpec::Riemann { left, right }),
            prop::collection::vec(finite(), 1..4).prop_map(|breakpoints| DataSpec::Piecewise {
                values: vec![0.5; breakpoints.len() + 1],
                breakpoints
            }),
            prop::collection::vec((finite(), finite()), 1..4).prop_map(|n| DataSpec::Linear {
                nodes: n.into_iter().map(|(a, b)| [a, b]).collect()
            }),
            (
                1usize..100,
                prop::option::of(prop::collection::vec(finite(), 1..3)),
                prop::option::of(any::<u64>())
            )
                .prop_map(|(steps, levels, seed)| DataSpec::RandomPiecewise { steps, levels, seed }),
            (finite(), finite(), prop::collection::vec(0.1..5.0f64, 1..3)).prop_map(
                |(base, amplitude, wavenumbers)| {
                    DataSpec::SinePack {
                        base,
                        amplitude,
                        wavenumbers,
                        lo: -1.0,
                        hi: 1.0,
                        samples: 64,
                    }
                }
            ),
            (
                finite(),
                finite(),
                prop::collection::vec((finite(), finite(), finite()), 0..3)
            )
                .prop_map(|(low, high, p)| {
                    DataSpec::SquareWave {
                        low,
                        high,
                        period: 0.1,
                        lo: -1.0,
                        hi: 1.0,
                        outside: 0.0,
                        patches: p.into_iter().map(|(lo, hi, value)| Patch { lo, hi, value }).collect(),
                    }
                }),
        ]
    }

    prop_compose! {
        fn config()(
            seed in any::<u64>(),
            window in 0.1..10.0f64,
            sup_bound in 0.1..10.0f64,
            times in prop::collection::vec(0.01..1.0f64, 1..5),
            s_values in prop::collection::vec(0.01..=1.0f64, 0..3),
            base in 1usize..64,
            levels in 1usize..4,
            decay in prop::option::of((0.1..5.0f64, 0.1..5.0f64)),
            cases in prop::collection::vec((flux(), flux(), data(), prop::option::of(data()), any::<bool>(), prop::option::of(-3.0..0.0f64)), 1..3),
        ) -> ProblemConfig {
            let mut times = times;
            times.sort_by(f64::total_cmp);
            times.dedup();
            ProblemConfig {
                seed,
                window,
                sup_bound,
                times,
                s_values,
                resolutions: (0..levels).map(|k| 2 * base << k).collect(),
                decay: decay.map(|(delta, r)| DecayConfig { delta, r }),
                cases: cases
                    .into_iter()
                    .enumerate()
                    .map(|(i, (left, right, data, reference, expect_compatible, expect_rate))| CaseConfig {
                        name: format!("case_{i}"),
                        expect_compatible,
                        left,
                        right,
                        data,
                        reference,
                        expect_rate,
                    })
                    .collect(),
            }
        }
    }

    proptest! {
        #[test]
        fn toml_round_trip(cfg in config()) {
            let text = cfg.to_toml().unwrap();
            let back = ProblemConfig::from_toml(&text).unwrap();
            prop_assert_eq!(&back, &cfg);
            prop_assert_eq!(back.to_toml().unwrap(), text);
        }
    }
}
