//! Strictly convex fluxes with a single critical point, and the pair of
//! fluxes meeting at the interface `x = 0`.
//!
//! The left flux `g` governs `x < 0` and the right flux `f` governs `x > 0`.
//! Every flux carries its critical point `theta`, its minimum value and the
//! exponent `p` of the lower bound `|f'(u) - f'(v)| >= C |u - v|^p`.

use crate::fit::fit_line;
use crate::minimize::{bisect_increasing, MAX_BISECTIONS};
use crate::{Error, Result};

/// Two fluxes are compatible when their minima agree within this tolerance.
pub const TOL_COMPAT: f64 = 1e-10;

/// Slack below the minimum still accepted by the one-sided inverses.
const TOL_VALUE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum FluxFamily {
    /// `u -> |u - theta|^alpha / alpha + offset`, `alpha > 1`.
    PowerLaw { theta: f64, alpha: f64, offset: f64 },
    /// `u -> (u - theta)^2 / 2 + offset`.
    Quadratic { theta: f64, offset: f64 },
    /// Piecewise-linear derivative through monotone samples.
    Tabulated(Tabulated),
}

/// A flux given by samples of its derivative.
///
/// The derivative interpolates linearly between nodes and extends linearly
/// past the end nodes with the end-segment slopes. Slope queries outside the
/// sampled derivative range are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    nodes: Vec<f64>,
    derivs: Vec<f64>,
    /// Antiderivative of the derivative measured from the critical point.
    primitive: Vec<f64>,
}

impl Tabulated {
    fn segment(&self, u: f64) -> usize {
        let n = self.nodes.len();
        match self.nodes.partition_point(|&x| x <= u) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        }
    }

    fn deriv(&self, u: f64) -> f64 {
        let k = self.segment(u);
        let (a, b) = (self.nodes[k], self.nodes[k + 1]);
        let (da, db) = (self.derivs[k], self.derivs[k + 1]);
        da + (db - da) * (u - a) / (b - a)
    }

    fn primitive(&self, u: f64) -> f64 {
        let k = self.segment(u);
        let a = self.nodes[k];
        self.primitive[k] + 0.5 * (u - a) * (self.derivs[k] + self.deriv(u))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexFlux {
    family: FluxFamily,
    theta: f64,
    min_value: f64,
    nondeg_exponent: f64,
}

impl ConvexFlux {
    pub fn power_law(theta: f64, alpha: f64, offset: f64) -> Result<Self> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(Error::InvalidFlux(format!("power-law exponent {alpha} must exceed 1")));
        }
        if !theta.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidFlux("non-finite parameter".into()));
        }
        Ok(Self {
            family: FluxFamily::PowerLaw { theta, alpha, offset },
            theta,
            min_value: offset,
            nondeg_exponent: (alpha - 1.0).max(1.0),
        })
    }

    pub fn quadratic(theta: f64, offset: f64) -> Result<Self> {
        if !theta.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidFlux("non-finite parameter".into()));
        }
        Ok(Self {
            family: FluxFamily::Quadratic { theta, offset },
            theta,
            min_value: offset,
            nondeg_exponent: 1.0,
        })
    }

    /// Builds a flux from strictly increasing derivative samples
    /// `derivs[i] = f'(nodes[i])`; the samples must change sign so that the
    /// flux has a minimum, whose value is `min_value`.
    pub fn tabulated(nodes: Vec<f64>, derivs: Vec<f64>, min_value: f64) -> Result<Self> {
        if nodes.len() != derivs.len() || nodes.len() < 2 {
            return Err(Error::InvalidFlux("need at least two matching samples".into()));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) || derivs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidFlux(
                "nodes and derivative samples must be strictly increasing".into(),
            ));
        }
        let k = derivs.partition_point(|&d| d < 0.0);
        if k == 0 || k == derivs.len() && derivs[k - 1] < 0.0 {
            return Err(Error::InvalidFlux("derivative samples do not change sign".into()));
        }
        // derivs[k-1] < 0 <= derivs[k]
        let (a, b) = (nodes[k - 1], nodes[k]);
        let (da, db) = (derivs[k - 1], derivs[k]);
        let theta = a - da * (b - a) / (db - da);
        let mut table = Tabulated {
            nodes,
            derivs,
            primitive: Vec::new(),
        };
        // primitive(u) = int_theta^u f'
        let mut primitive = vec![0.0; table.nodes.len()];
        let anchor = table.segment(theta);
        let tail = |from: f64, to: f64, t: &Tabulated| 0.5 * (to - from) * (t.deriv(from) + t.deriv(to));
        primitive[anchor] = tail(theta, table.nodes[anchor], &table);
        for i in anchor + 1..table.nodes.len() {
            primitive[i] = primitive[i - 1] + tail(table.nodes[i - 1], table.nodes[i], &table);
        }
        for i in (0..anchor).rev() {
            primitive[i] = primitive[i + 1] - tail(table.nodes[i], table.nodes[i + 1], &table);
        }
        table.primitive = primitive;
        Ok(Self {
            family: FluxFamily::Tabulated(table),
            theta,
            min_value,
            nondeg_exponent: 1.0,
        })
    }

    pub fn family(&self) -> &FluxFamily {
        &self.family
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    /// Exponent `p` of the non-degeneracy bound.
    pub fn nondeg_exponent(&self) -> f64 {
        self.nondeg_exponent
    }

    /// Same flux shifted vertically so that its minimum is `min_value`.
    pub fn with_min_value(&self, min_value: f64) -> Self {
        let mut out = self.clone();
        out.min_value = min_value;
        match &mut out.family {
            FluxFamily::PowerLaw { offset, .. } | FluxFamily::Quadratic { offset, .. } => *offset = min_value,
            FluxFamily::Tabulated(_) => {}
        }
        out
    }

    pub fn eval(&self, u: f64) -> f64 {
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, offset } => (u - theta).abs().powf(*alpha) / alpha + offset,
            FluxFamily::Quadratic { theta, offset } => 0.5 * (u - theta) * (u - theta) + offset,
            FluxFamily::Tabulated(t) => self.min_value + t.primitive(u),
        }
    }

    pub fn deriv(&self, u: f64) -> f64 {
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, .. } => {
                let v = u - theta;
                v.signum() * v.abs().powf(alpha - 1.0)
            }
            FluxFamily::Quadratic { theta, .. } => u - theta,
            FluxFamily::Tabulated(t) => t.deriv(u),
        }
    }

    /// Closure of the derivative's range.
    pub fn deriv_range(&self) -> (f64, f64) {
        match &self.family {
            FluxFamily::Tabulated(t) => (t.derivs[0], *t.derivs.last().unwrap()),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn deriv_inverse(&self, xi: f64) -> Result<f64> {
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, .. } => Ok(theta + xi.signum() * xi.abs().powf(1.0 / (alpha - 1.0))),
            FluxFamily::Quadratic { theta, .. } => Ok(theta + xi),
            FluxFamily::Tabulated(t) => {
                let (lo, hi) = self.deriv_range();
                let slack = 1e-12 * (hi - lo);
                if xi < lo - slack || xi > hi + slack {
                    return Err(Error::OutOfRange { xi, lo, hi });
                }
                let xi = xi.clamp(lo, hi);
                let (a, b) = (t.nodes[0], *t.nodes.last().unwrap());
                Ok(bisect_increasing(|u| t.deriv(u), xi, a, b))
            }
        }
    }

    /// Inverse of the increasing branch `u >= theta`.
    pub fn inverse_plus(&self, y: f64) -> Result<f64> {
        let excess = self.excess(y)?;
        if excess == 0.0 {
            return Ok(self.theta);
        }
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, .. } => Ok(theta + (alpha * excess).powf(1.0 / alpha)),
            FluxFamily::Quadratic { theta, .. } => Ok(theta + (2.0 * excess).sqrt()),
            FluxFamily::Tabulated(_) => {
                let mut hi = self.theta + 1.0;
                let mut n = 0;
                while self.eval(hi) < y && n < MAX_BISECTIONS {
                    hi = self.theta + 2.0 * (hi - self.theta);
                    n += 1;
                }
                Ok(bisect_increasing(|u| self.eval(u), y, self.theta, hi))
            }
        }
    }

    /// Inverse of the decreasing branch `u <= theta`.
    pub fn inverse_minus(&self, y: f64) -> Result<f64> {
        let excess = self.excess(y)?;
        if excess == 0.0 {
            return Ok(self.theta);
        }
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, .. } => Ok(theta - (alpha * excess).powf(1.0 / alpha)),
            FluxFamily::Quadratic { theta, .. } => Ok(theta - (2.0 * excess).sqrt()),
            FluxFamily::Tabulated(_) => {
                let mut lo = self.theta - 1.0;
                let mut n = 0;
                while self.eval(lo) < y && n < MAX_BISECTIONS {
                    lo = self.theta - 2.0 * (self.theta - lo);
                    n += 1;
                }
                // eval is decreasing on [lo, theta]
                Ok(bisect_increasing(|u| -self.eval(u), -y, lo, self.theta))
            }
        }
    }

    fn excess(&self, y: f64) -> Result<f64> {
        let excess = y - self.min_value;
        if excess < -TOL_VALUE || excess.is_nan() {
            return Err(Error::BelowMinimum { y, min: self.min_value });
        }
        Ok(excess.max(0.0))
    }

    /// Legendre conjugate `f*(xi) = sup_u (xi u - f(u))`.
    pub fn legendre(&self, xi: f64) -> Result<f64> {
        match &self.family {
            FluxFamily::PowerLaw { theta, alpha, offset } => {
                let beta = alpha / (alpha - 1.0);
                Ok(theta * xi + xi.abs().powf(beta) / beta - offset)
            }
            FluxFamily::Quadratic { theta, offset } => Ok(theta * xi + 0.5 * xi * xi - offset),
            FluxFamily::Tabulated(_) => {
                let u = self.deriv_inverse(xi)?;
                Ok(xi * u - self.eval(u))
            }
        }
    }

    /// Largest characteristic speed `|f'(u)|` over `|u| <= bound`.
    pub fn max_speed(&self, bound: f64) -> f64 {
        self.deriv(-bound).abs().max(self.deriv(bound).abs())
    }

    /// Grid minimum of `|f'(u) - f'(v)| / |u - v|^p` over `n` equispaced
    /// points of `[lo, hi]`; a positive value certifies the non-degeneracy
    /// bound at grid scale.
    pub fn verify_nondegeneracy(&self, lo: f64, hi: f64, p: f64, n: usize) -> f64 {
        let grid = linspace(lo, hi, n);
        let d: Vec<f64> = grid.iter().map(|&u| self.deriv(u)).collect();
        min_pair_ratio(&grid, &d, p)
    }

    /// Grid minimum of `|f(u) - f(v)| / |u - v|^exponent` over `n` points of
    /// `(theta, theta + upper]`.
    pub fn verify_flatness(&self, upper: f64, exponent: f64, n: usize) -> f64 {
        let h = upper / n as f64;
        let grid: Vec<f64> = (1..=n).map(|k| self.theta + h * k as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&u| self.eval(u)).collect();
        min_pair_ratio(&grid, &values, exponent)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| lo + (hi - lo) * (i as f64 / (n - 1) as f64)).collect()
}

fn min_pair_ratio(grid: &[f64], values: &[f64], p: f64) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let r = (values[j] - values[i]).abs() / (grid[j] - grid[i]).abs().powf(p);
            best = best.min(r);
        }
    }
    best
}

/// Least-squares slope of `log ω(r)` against `log r`, where `ω(r)` is the
/// sampled modulus of continuity of `map` at `center`.
pub fn holder_exponent_probe(map: impl Fn(f64) -> f64, center: f64, radii: &[f64]) -> Result<f64> {
    if radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::DegenerateFit("radii must be positive".into()));
    }
    let base = map(center);
    let mut xs = Vec::with_capacity(radii.len());
    let mut ys = Vec::with_capacity(radii.len());
    for &r in radii {
        let omega = (1..=8)
            .flat_map(|k| {
                let h = r * k as f64 / 8.0;
                [center - h, center + h]
            })
            .map(|x| (map(x) - base).abs())
            .fold(0.0, f64::max);
        if omega > 0.0 {
            xs.push(r.ln());
            ys.push(omega.ln());
        }
    }
    if xs.is_empty() {
        return Ok(f64::INFINITY);
    }
    Ok(fit_line(&xs, &ys)?.slope)
}

/// The left flux `g` (for `x < 0`) and the right flux `f` (for `x > 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct InterfacePair {
    left: ConvexFlux,
    right: ConvexFlux,
    compatible: bool,
}

impl InterfacePair {
    pub fn new(left: ConvexFlux, right: ConvexFlux) -> Self {
        let compatible = (right.min_value - left.min_value).abs() <= TOL_COMPAT;
        Self {
            left,
            right,
            compatible,
        }
    }

    /// `g`, acting on `x < 0`.
    pub fn left(&self) -> &ConvexFlux {
        &self.left
    }

    /// `f`, acting on `x > 0`.
    pub fn right(&self) -> &ConvexFlux {
        &self.right
    }

    pub fn compatible(&self) -> bool {
        self.compatible
    }

    /// The same pair with the left flux shifted so that both minima agree.
    pub fn with_equalized_minima(&self) -> Self {
        Self::new(self.left.with_min_value(self.right.min_value), self.right.clone())
    }

    /// Heaviside combination `F(x, u)`; the interface itself uses `f`.
    pub fn flux_at(&self, x: f64, u: f64) -> f64 {
        if x >= 0.0 {
            self.right.eval(u)
        } else {
            self.left.eval(u)
        }
    }

    /// `f_+^{-1}(g(u))`: the right state carrying the flux of the left state `u`.
    pub fn singular_map_lr(&self, u: f64) -> Result<f64> {
        self.right.inverse_plus(self.left.eval(u))
    }

    /// `g_-^{-1}(f(u))`: the left state carrying the flux of the right state `u`.
    pub fn singular_map_rl(&self, u: f64) -> Result<f64> {
        self.left.inverse_minus(self.right.eval(u))
    }

    /// Largest characteristic speed of either flux over `|u| <= bound`.
    pub fn max_speed(&self, bound: f64) -> f64 {
        self.left.max_speed(bound).max(self.right.max_speed(bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn quad(theta: f64) -> ConvexFlux {
        ConvexFlux::quadratic(theta, 0.0).unwrap()
    }

    fn tabulated() -> ConvexFlux {
        // f'(u) = u^3 + u sampled on [-3, 3]
        let nodes: Vec<f64> = (0..=60).map(|i| -3.0 + 0.1 * i as f64).collect();
        let derivs = nodes.iter().map(|u| u * u * u + u).collect();
        ConvexFlux::tabulated(nodes, derivs, 0.25).unwrap()
    }

    fn central_difference(f: &ConvexFlux, u: f64) -> f64 {
        let h = 1e-6;
        (f.eval(u + h) - f.eval(u - h)) / (2.0 * h)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(quad(0.0).eval(2.0), 2.0);
        assert_eq!(ConvexFlux::power_law(1.0, 2.0, 0.0).unwrap().eval(1.0), 0.0);
        assert_eq!(ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap().eval(2.0), 4.0);
    }

    #[test]
    fn deriv_examples() {
        assert_eq!(quad(0.0).deriv(1.5), 1.5);
        assert_eq!(ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap().deriv(2.0), 8.0);
        // |u-1|^3/3 decreases through u = 0, so the slope there is -1.
        let f = ConvexFlux::power_law(1.0, 3.0, 0.0).unwrap();
        let fd = central_difference(&f, 0.0);
        assert_abs_diff_eq!(fd, -1.0, epsilon = 1e-8);
        assert_abs_diff_eq!(f.deriv(0.0), fd, epsilon = 1e-8);
    }

    #[test]
    fn deriv_inverse_examples() {
        assert_eq!(quad(0.0).deriv_inverse(1.5).unwrap(), 1.5);
        let f = ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.deriv_inverse(8.0).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(f.deriv_inverse(1e-6).unwrap(), 0.01, epsilon = 1e-14);
    }

    #[test]
    fn one_sided_inverses() {
        let q = quad(0.0);
        assert_abs_diff_eq!(q.inverse_plus(0.5).unwrap(), 1.0);
        assert_abs_diff_eq!(q.inverse_minus(0.5).unwrap(), -1.0);
        let p = ConvexFlux::power_law(1.0, 2.0, 0.0).unwrap();
        assert_abs_diff_eq!(p.inverse_plus(0.5).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.inverse_minus(2.0).unwrap(), -1.0, epsilon = 1e-14);
        for f in [q, p, tabulated(), ConvexFlux::power_law(-0.5, 3.5, 1.0).unwrap()] {
            assert_abs_diff_eq!(f.inverse_plus(f.min_value()).unwrap(), f.theta(), epsilon = 1e-9);
            assert_abs_diff_eq!(f.inverse_minus(f.min_value()).unwrap(), f.theta(), epsilon = 1e-9);
            assert!(matches!(
                f.inverse_plus(f.min_value() - 1e-3),
                Err(Error::BelowMinimum { .. })
            ));
        }
    }

    #[test]
    fn legendre_examples() {
        assert_abs_diff_eq!(quad(0.0).legendre(1.0).unwrap(), 0.5);
        let f = ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap();
        assert_abs_diff_eq!(f.legendre(8.0).unwrap(), 12.0, epsilon = 1e-12);
        // dense-grid supremum of 8u - u^4/4
        let sup = (0..=400_000)
            .map(|i| -4.0 + 2e-5 * i as f64)
            .map(|u| 8.0 * u - f.eval(u))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_abs_diff_eq!(sup, 12.0, epsilon = 1e-8);
        for f in [quad(0.7), tabulated(), ConvexFlux::power_law(0.3, 2.5, -1.0).unwrap()] {
            assert_abs_diff_eq!(f.legendre(0.0).unwrap(), -f.min_value(), epsilon = 1e-9);
        }
    }

    #[test]
    fn tabulated_is_consistent() {
        let f = tabulated();
        assert_abs_diff_eq!(f.theta(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.eval(f.theta()), 0.25, epsilon = 1e-12);
        for &u in &[-2.5, -0.3, 0.45, 1.7] {
            assert_abs_diff_eq!(central_difference(&f, u), f.deriv(u), epsilon = 1e-6);
        }
        assert!(matches!(f.deriv_inverse(1e3), Err(Error::OutOfRange { .. })));
        assert!(matches!(f.legendre(-1e3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn tabulated_rejects_bad_samples() {
        assert!(ConvexFlux::tabulated(vec![0.0, 1.0], vec![1.0, 2.0], 0.0).is_err());
        assert!(ConvexFlux::tabulated(vec![0.0, 1.0], vec![1.0, -2.0], 0.0).is_err());
        assert!(ConvexFlux::power_law(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn singular_maps_of_shifted_quadratics() {
        let pair = InterfacePair::new(quad(1.0), quad(0.0));
        assert!(pair.compatible());
        assert_abs_diff_eq!(pair.singular_map_lr(2.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            pair.singular_map_lr(2.0).unwrap(),
            pair.right().inverse_plus(pair.left().eval(2.0)).unwrap()
        );
        assert_abs_diff_eq!(pair.singular_map_lr(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(pair.singular_map_lr(-1.0).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pair.singular_map_rl(0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(pair.singular_map_rl(1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pair.singular_map_rl(-2.0).unwrap(), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn incompatible_pair_blocks_transfer() {
        let pair = InterfacePair::new(ConvexFlux::quadratic(1.0, 0.3).unwrap(), quad(0.0));
        assert!(!pair.compatible());
        // f(0) = 0 < min g: nothing on the left carries that flux.
        assert!(matches!(pair.singular_map_rl(0.0), Err(Error::BelowMinimum { .. })));
        assert_abs_diff_eq!(pair.singular_map_lr(1.0).unwrap(), 0.6f64.sqrt(), epsilon = 1e-14);
        assert!(pair.with_equalized_minima().compatible());
    }

    #[test]
    fn heaviside_combination() {
        let pair = InterfacePair::new(quad(1.0), quad(0.0));
        assert_eq!(pair.flux_at(0.5, 2.0), 2.0);
        assert_eq!(pair.flux_at(-0.5, 2.0), 0.5);
    }

    #[test]
    fn nondegeneracy_grid() {
        assert_abs_diff_eq!(quad(0.0).verify_nondegeneracy(-1.0, 1.0, 1.0, 50), 1.0, epsilon = 1e-12);
        let f = ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap();
        let c = f.verify_nondegeneracy(-1.0, 1.0, 3.0, 50);
        // |u^3 - v^3| / |u - v|^3 is smallest at v = -u, where it equals 1/4.
        assert!(c > 0.0 && c <= 1.0);
        assert_abs_diff_eq!(c, 0.25, epsilon = 1e-12);
        let coarse = f.verify_nondegeneracy(-1.0, 1.0, 1.0, 50);
        let fine = f.verify_nondegeneracy(-1.0, 1.0, 1.0, 400);
        assert!(fine < coarse && fine < 1e-4);
    }

    #[test]
    fn antiderivative_flatness() {
        // q = 3: |f(u) - f(v)| >= c |u - v|^4 on (theta, theta + U]
        let f = ConvexFlux::power_law(0.5, 4.0, 0.0).unwrap();
        let c = f.verify_flatness(2.0, 4.0, 80);
        assert!(c > 1e-3, "{c}");
    }

    #[test]
    fn holder_probe_examples() {
        let radii: Vec<f64> = (0..8).map(|k| 1e-2 * 0.5f64.powi(k)).collect();
        let f = ConvexFlux::power_law(0.0, 4.0, 0.0).unwrap();
        let slope = holder_exponent_probe(|xi| f.deriv_inverse(xi).unwrap(), 0.0, &radii).unwrap();
        assert_abs_diff_eq!(slope, 1.0 / 3.0, epsilon = 0.05);
        let pair = InterfacePair::new(quad(1.0), quad(0.0));
        let slope = holder_exponent_probe(|u| pair.singular_map_lr(u).unwrap(), 1.0, &radii).unwrap();
        assert_abs_diff_eq!(slope, 1.0, epsilon = 0.1);
        let slope = holder_exponent_probe(|u| u, 3.7, &radii).unwrap();
        assert_abs_diff_eq!(slope, 1.0, epsilon = 1e-9);
    }
}
