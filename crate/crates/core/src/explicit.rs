//! Pointwise entropy solution through the Lax–Oleinik variational principle
//! extended to paths that cross the interface once.
//!
//! With the potential `V0(z) = ∫_0^z u0`, the value at `x > 0` minimizes
//! over two path classes:
//!
//! * direct: a straight line from a foot `z >= 0`,
//!   cost `V0(z) + t f*((x - z) / t)`, giving `u = (f')^{-1}((x - z) / t)`;
//! * crossing: a foot `z <= 0` reaching the interface at time `tau`, then a
//!   straight line to `(x, t)`, cost
//!   `V0(z) + tau g*(-z / tau) + (t - tau) f*(x / (t - tau))`,
//!   giving `u = (f')^{-1}(x / (t - tau))`.
//!
//! Points with `x < 0` use the mirror classes with `f` and `g` exchanged.
//! The potential is piecewise quadratic, so each class is minimized piece
//! by piece: a closed form for constant pieces, and for the crossing class a
//! root search in the remaining time `t - tau` of a derivative that is
//! increasing on every piece where the data is non-decreasing.

use rayon::prelude::*;

use crate::flux::{ConvexFlux, InterfacePair};
use crate::minimize::{bisect_increasing_within, TOL_ROOT};
use crate::{Error, Result};

/// Smallest time accepted by the evaluator.
pub const T_MIN: f64 = 1e-9;

/// Costs closer than this (relative) count as a tie.
const TIE_TOL: f64 = 1e-12;

/// Stabilization threshold for interface traces.
pub const TRACE_TOL: f64 = 1e-6;

const TRACE_MAX_HALVINGS: usize = 48;
const NONCONVEX_CELLS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// `values[k]` holds on `[breakpoints[k-1], breakpoints[k])`, with the
    /// first and last values extending to infinity.
    PiecewiseConstant { breakpoints: Vec<f64>, values: Vec<f64> },
    /// Linear interpolation between nodes, constant beyond the end nodes.
    PiecewiseLinear { nodes: Vec<(f64, f64)> },
}

impl InitialData {
    pub fn piecewise_constant(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidData(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) || breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidData(
                "breakpoints must be finite and strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidData("non-finite value".into()));
        }
        Ok(Self::PiecewiseConstant { breakpoints, values })
    }

    pub fn piecewise_linear(nodes: Vec<(f64, f64)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidData("no nodes".into()));
        }
        if nodes.windows(2).any(|w| !(w[1].0 > w[0].0)) || nodes.iter().any(|(x, u)| !x.is_finite() || !u.is_finite()) {
            return Err(Error::InvalidData(
                "nodes must be finite with strictly increasing abscissae".into(),
            ));
        }
        Ok(Self::PiecewiseLinear { nodes })
    }

    pub fn constant(value: f64) -> Self {
        Self::PiecewiseConstant {
            breakpoints: vec![],
            values: vec![value],
        }
    }

    /// Riemann data with its jump at the interface.
    pub fn riemann(left: f64, right: f64) -> Self {
        Self::PiecewiseConstant {
            breakpoints: vec![0.0],
            values: vec![left, right],
        }
    }

    /// Samples an analytic profile on `n + 1` equispaced points of
    /// `[lo, hi]`, constant outside.
    pub fn sampled(profile: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(hi > lo) || n == 0 {
            return Err(Error::InvalidData("empty sampling window".into()));
        }
        let nodes = (0..=n)
            .map(|k| {
                let x = lo + (hi - lo) * (k as f64 / n as f64);
                (x, profile(x))
            })
            .collect();
        Self::piecewise_linear(nodes)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Self::PiecewiseConstant { breakpoints, values } => values[breakpoints.partition_point(|&b| b <= x)],
            Self::PiecewiseLinear { nodes } => {
                let k = nodes.partition_point(|&(nx, _)| nx <= x);
                if k == 0 {
                    nodes[0].1
                } else if k == nodes.len() {
                    nodes[k - 1].1
                } else {
                    let (x0, u0) = nodes[k - 1];
                    let (x1, u1) = nodes[k];
                    u0 + (u1 - u0) * (x - x0) / (x1 - x0)
                }
            }
        }
    }

    /// `sup |u0|`.
    pub fn sup_bound(&self) -> f64 {
        match self {
            Self::PiecewiseConstant { values, .. } => values.iter().fold(0.0, |m, v| m.max(v.abs())),
            Self::PiecewiseLinear { nodes } => nodes.iter().fold(0.0, |m, (_, v)| m.max(v.abs())),
        }
    }

    /// Radius beyond which the data is constant.
    pub fn support_hint(&self) -> f64 {
        let xs: Vec<f64> = match self {
            Self::PiecewiseConstant { breakpoints, .. } => breakpoints.clone(),
            Self::PiecewiseLinear { nodes } => nodes.iter().map(|n| n.0).collect(),
        };
        xs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Essential supremum on the open interval `(lo, hi)`.
    pub fn ess_sup(&self, lo: f64, hi: f64) -> f64 {
        let pot = Potential::new(self);
        pot.pieces
            .iter()
            .filter(|p| p.hi > lo && p.lo < hi)
            .map(|p| {
                let a = p.lo.max(lo);
                let b = p.hi.min(hi);
                p.u_at(a).max(p.u_at(b))
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Constant pieces as `(lo, hi, value)`, for piecewise-constant data.
    pub fn pieces(&self) -> Vec<(f64, f64, f64)> {
        Potential::new(self)
            .pieces
            .iter()
            .map(|p| (p.lo, p.hi, p.u_anchor))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Piece {
    lo: f64,
    hi: f64,
    anchor: f64,
    v_anchor: f64,
    u_anchor: f64,
    slope: f64,
}

impl Piece {
    fn u_at(&self, z: f64) -> f64 {
        if self.slope == 0.0 {
            self.u_anchor
        } else {
            self.u_anchor + self.slope * (z - self.anchor)
        }
    }

    fn v_at(&self, z: f64) -> f64 {
        let d = z - self.anchor;
        self.v_anchor + d * (self.u_anchor + 0.5 * self.slope * d)
    }
}

/// Antiderivative `V0(z) = ∫_0^z u0` of the initial data, exact on every
/// piece. The pieces always include a break at `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    pieces: Vec<Piece>,
}

impl Potential {
    pub fn new(data: &InitialData) -> Self {
        // (x, u_left_limit, u_right_limit) at every break, plus the break at 0
        let mut breaks: Vec<f64> = match data {
            InitialData::PiecewiseConstant { breakpoints, .. } => breakpoints.clone(),
            InitialData::PiecewiseLinear { nodes } => nodes.iter().map(|n| n.0).collect(),
        };
        if !breaks.iter().any(|&b| b == 0.0) {
            let k = breaks.partition_point(|&b| b < 0.0);
            breaks.insert(k, 0.0);
        }
        let mut edges = Vec::with_capacity(breaks.len() + 2);
        edges.push(f64::NEG_INFINITY);
        edges.extend_from_slice(&breaks);
        edges.push(f64::INFINITY);

        let mut pieces: Vec<Piece> = edges
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let (anchor, u_anchor, slope) = match data {
                    InitialData::PiecewiseConstant { .. } => {
                        let a = if lo.is_finite() { lo } else { hi };
                        let probe = if lo.is_finite() { lo } else { hi - 1.0 };
                        (a, data.eval(probe), 0.0)
                    }
                    InitialData::PiecewiseLinear { .. } => {
                        if lo.is_finite() && hi.is_finite() {
                            let (ul, uh) = (data.eval(lo), data.eval(hi));
                            (lo, ul, (uh - ul) / (hi - lo))
                        } else {
                            let a = if lo.is_finite() { lo } else { hi };
                            (a, data.eval(a), 0.0)
                        }
                    }
                };
                Piece {
                    lo,
                    hi,
                    anchor,
                    v_anchor: 0.0,
                    u_anchor,
                    slope,
                }
            })
            .collect();

        // integrate outwards from the break at zero
        let zero = pieces.iter().position(|p| p.lo == 0.0).expect("break at zero");
        for k in zero..pieces.len() {
            pieces[k].v_anchor = if k == zero {
                0.0
            } else {
                let prev = pieces[k - 1];
                prev.v_at(pieces[k].anchor)
            };
        }
        for k in (0..zero).rev() {
            let next = pieces[k + 1];
            let v_hi = next.v_at(pieces[k].hi);
            let p = &mut pieces[k];
            // re-express the value at hi through the anchor
            let d = p.hi - p.anchor;
            p.v_anchor = v_hi - d * (p.u_anchor + 0.5 * p.slope * d);
        }
        Self { pieces }
    }

    fn piece_index(&self, z: f64) -> usize {
        self.pieces.partition_point(|p| p.lo <= z).saturating_sub(1)
    }

    pub fn value(&self, z: f64) -> f64 {
        self.pieces[self.piece_index(z)].v_at(z)
    }

    /// Pieces overlapping `[zl, zh]`, clipped to it.
    fn overlapping(&self, zl: f64, zh: f64) -> impl Iterator<Item = (Piece, f64, f64)> + '_ {
        let first = self.piece_index(zl);
        self.pieces[first..]
            .iter()
            .take_while(move |p| p.lo <= zh)
            .filter_map(move |p| {
                let a = p.lo.max(zl);
                let b = p.hi.min(zh);
                (a <= b).then_some((*p, a, b))
            })
    }
}

/// Minimizes `V0(z) + tau h*((x0 - z) / tau)` over `z in [a, b]` within
/// one piece, returning `(cost, z)`.
fn foot_on_piece(piece: &Piece, h: &ConvexFlux, x0: f64, tau: f64, a: f64, b: f64) -> (f64, f64) {
    let cost = |z: f64| {
        let conj = h.legendre((x0 - z) / tau).unwrap_or(f64::INFINITY);
        piece.v_at(z) + tau * conj
    };
    // derivative of the cost in z
    let d = |z: f64| {
        let (lo, hi) = h.deriv_range();
        piece.u_at(z) - h.deriv_inverse(((x0 - z) / tau).clamp(lo, hi)).unwrap_or(f64::NAN)
    };
    // feet move by tau per unit of characteristic speed
    let tol = TOL_ROOT * tau.min(1.0);
    let z = if piece.slope == 0.0 {
        (x0 - tau * h.deriv(piece.u_anchor)).clamp(a, b)
    } else if piece.slope > 0.0 {
        // d is increasing
        if d(a) >= 0.0 {
            a
        } else if d(b) <= 0.0 {
            b
        } else {
            bisect_increasing_within(d, 0.0, a, b, tol)
        }
    } else {
        let step = (b - a) / NONCONVEX_CELLS as f64;
        let nodes: Vec<f64> = (0..=NONCONVEX_CELLS).map(|k| a + step * k as f64).collect();
        let slopes: Vec<f64> = nodes.iter().map(|&z| d(z)).collect();
        let mut best = (cost(a), a);
        let mut consider = |z: f64| {
            let c = cost(z);
            if c < best.0 || (c == best.0 && z < best.1) {
                best = (c, z);
            }
        };
        consider(b);
        for k in 0..NONCONVEX_CELLS {
            if slopes[k] < 0.0 && slopes[k + 1] >= 0.0 {
                consider(bisect_increasing_within(d, 0.0, nodes[k], nodes[k + 1], tol));
            }
        }
        return best;
    };
    (cost(z), z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Straight characteristic from a foot `z >= 0` to `x > 0`.
    DirectRight,
    /// Straight characteristic from a foot `z <= 0` to `x < 0`.
    DirectLeft,
    /// Left foot, crossing the interface into `x > 0`.
    CrossLR,
    /// Right foot, crossing the interface into `x < 0`.
    CrossRL,
}

impl CaseTag {
    pub fn is_crossing(self) -> bool {
        matches!(self, Self::CrossLR | Self::CrossRL)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::DirectRight => "direct_right",
            Self::DirectLeft => "direct_left",
            Self::CrossLR => "cross_lr",
            Self::CrossRL => "cross_rl",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionPoint {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    pub case_tag: CaseTag,
    /// Foot of the minimizing path.
    pub z: f64,
    /// Interface crossing time, for crossing paths.
    pub tau: Option<f64>,
    /// Minimal cost, the value of the potential `U(x, t)`.
    pub cost: f64,
}

/// A solution profile at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub t: f64,
    pub points: Vec<SolutionPoint>,
}

impl SolutionField {
    pub fn xs(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.x).collect()
    }

    pub fn us(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.u).collect()
    }
}

/// One-sided interface traces at a fixed time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trace {
    pub t: f64,
    pub u_minus: f64,
    pub u_plus: f64,
    /// Distance from the interface at which the traces stabilized.
    pub eps: f64,
    /// `|f(u+) - g(u-)|`.
    pub rh_residual: f64,
    /// False when characteristics leave the interface into both sides.
    pub entropy_ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterfaceCurves {
    pub times: Vec<f64>,
    pub r1: Vec<f64>,
    pub l1: Vec<f64>,
}

/// Result of the maximum-principle bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxBound {
    pub value: f64,
    /// Scan points where a singular map was undefined (incompatible pairs).
    pub skipped: usize,
}

/// `S = max(m, sup_{|v|<=m} |f_+^{-1}(g(v))|, sup_{|v|<=m} |g_-^{-1}(f(v))|)`
/// by a grid scan over `v`.
pub fn max_bound(pair: &InterfacePair, m: f64) -> Result<MaxBound> {
    if !(m >= 0.0) {
        return Err(Error::InvalidData(format!("bound {m} must be non-negative")));
    }
    const N: usize = 4000;
    let mut grid: Vec<f64> = (0..=N).map(|k| -m + 2.0 * m * (k as f64 / N as f64)).collect();
    for theta in [pair.left().theta(), pair.right().theta()] {
        if theta.abs() <= m {
            grid.push(theta);
        }
    }
    let mut value = m;
    let mut skipped = 0;
    for v in grid {
        for image in [pair.singular_map_lr(v), pair.singular_map_rl(v)] {
            match image {
                Ok(w) => value = value.max(w.abs()),
                Err(_) => skipped += 1,
            }
        }
    }
    Ok(MaxBound { value, skipped })
}

/// Pointwise evaluator for one pair and one initial datum.
#[derive(Debug, Clone)]
pub struct Evaluator {
    pair: InterfacePair,
    potential: Potential,
    bound: f64,
    speed: f64,
}

struct Candidate {
    cost: f64,
    z: f64,
    tau: f64,
    // state entering the interface, for crossing paths
    u_in: f64,
}

impl Evaluator {
    pub fn new(pair: InterfacePair, data: &InitialData) -> Result<Self> {
        let bound = max_bound(&pair, data.sup_bound())?.value;
        let speed = 1.05 * pair.max_speed(bound) + 1e-9;
        Ok(Self {
            pair,
            potential: Potential::new(data),
            bound,
            speed,
        })
    }

    pub fn pair(&self) -> &InterfacePair {
        &self.pair
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    /// Maximum-principle bound on `|u|`.
    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// Characteristic speed bound used to limit the foot search.
    pub fn speed(&self) -> f64 {
        self.speed
    }

    fn check_time(t: f64) -> Result<()> {
        if !(t >= T_MIN) || !t.is_finite() {
            return Err(Error::InvalidTime(t));
        }
        Ok(())
    }

    fn direct(&self, medium: &ConvexFlux, x: f64, t: f64, zl: f64, zh: f64) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        for (piece, a, b) in self.potential.overlapping(zl, zh) {
            let (cost, z) = foot_on_piece(&piece, medium, x, t, a, b);
            if best.as_ref().map_or(true, |c| cost < c.cost) {
                best = Some(Candidate {
                    cost,
                    z,
                    tau: 0.0,
                    u_in: f64::NAN,
                });
            }
        }
        best
    }

    /// Crossing class. `right_target` selects LR (foot on the left, target
    /// `x >= 0`) or RL.
    ///
    /// Parametrized by the remaining time `w = t - tau`, the cost on one
    /// piece has derivative `h_in(u_in) - h_out(u_out)` in `w`, the flux
    /// imbalance across the interface, which is increasing wherever the
    /// data is non-decreasing. Its root is found by bisection.
    ///
    /// Both legs only get cheaper as they are stretched over the whole time
    /// `t`, so a piece whose stretched cost already exceeds `ceiling` is
    /// skipped.
    fn crossing(&self, x: f64, t: f64, right_target: bool, ceiling: f64) -> Option<Candidate> {
        let v = self.speed;
        let (inner, outer) = if right_target {
            (self.pair.left(), self.pair.right())
        } else {
            (self.pair.right(), self.pair.left())
        };
        let w_lo = x.abs() / v;
        let tau_floor = t * 1e-12;
        if t - w_lo <= tau_floor {
            return None;
        }
        let (zl, zh) = if right_target { (-v * t, 0.0) } else { (0.0, v * t) };
        let (in_lo, in_hi) = inner.deriv_range();
        let (out_lo, out_hi) = outer.deriv_range();
        let stretched_out = outer.legendre(x / t).map_or(f64::NEG_INFINITY, |c| t * c);
        let floor = stretched_out + t * inner.min_value().min(outer.min_value());
        let mut best: Option<Candidate> = None;
        for (piece, a, b) in self.potential.overlapping(zl, zh) {
            let near = if right_target { b } else { a };
            let w_hi = t - (near.abs() / v).max(tau_floor);
            if w_hi <= w_lo {
                continue;
            }
            let limit = best.as_ref().map_or(ceiling, |c| c.cost.min(ceiling));
            let lower = foot_on_piece(&piece, inner, 0.0, t, a, b).0 + floor;
            if lower > limit + 2.0 * TIE_TOL * limit.abs().max(1.0) + 1e-12 {
                continue;
            }
            // (cost, foot, derivative in w, entering state)
            let probe = |w: f64| -> (f64, f64, f64, f64) {
                let tau = t - w;
                let (c, z) = foot_on_piece(&piece, inner, 0.0, tau, a, b);
                let u_in = if z > a && z < b {
                    piece.u_at(z)
                } else {
                    inner.deriv_inverse((-z / tau).clamp(in_lo, in_hi)).unwrap_or(f64::NAN)
                };
                let sigma = if x == 0.0 { 0.0 } else { (x / w).clamp(out_lo, out_hi) };
                let u_out = outer.deriv_inverse(sigma).unwrap_or(f64::NAN);
                let leg = if w == 0.0 {
                    0.0
                } else {
                    w * outer.legendre(x / w).unwrap_or(f64::INFINITY)
                };
                (c + leg, z, inner.eval(u_in) - outer.eval(u_out), u_in)
            };
            let root = |mut lo: f64, mut hi: f64| -> f64 {
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if probe(mid).2 > 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                if probe(lo).0 <= probe(hi).0 {
                    lo
                } else {
                    hi
                }
            };
            let mut candidates = vec![w_lo, w_hi];
            if piece.slope >= 0.0 {
                if probe(w_lo).2 < 0.0 && probe(w_hi).2 > 0.0 {
                    candidates.push(root(w_lo, w_hi));
                }
            } else {
                let h = (w_hi - w_lo) / NONCONVEX_CELLS as f64;
                let nodes: Vec<f64> = (0..=NONCONVEX_CELLS).map(|k| w_lo + h * k as f64).collect();
                let slopes: Vec<f64> = nodes.iter().map(|&w| probe(w).2).collect();
                for k in 0..NONCONVEX_CELLS {
                    if slopes[k] < 0.0 && slopes[k + 1] >= 0.0 {
                        candidates.push(root(nodes[k], nodes[k + 1]));
                    }
                }
            }
            // larger w first, so ties keep the smaller tau
            candidates.sort_by(|p, q| q.total_cmp(p));
            for w in candidates {
                let (cost, z, _, u_in) = probe(w);
                if !cost.is_finite() {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some(c) => cost < c.cost - TIE_TOL * c.cost.abs().max(1.0),
                };
                if better {
                    best = Some(Candidate {
                        cost,
                        z,
                        tau: t - w,
                        u_in,
                    });
                }
            }
        }
        best
    }

    pub fn evaluate(&self, x: f64, t: f64) -> Result<SolutionPoint> {
        Self::check_time(t)?;
        if !x.is_finite() {
            return Err(Error::InvalidData(format!("non-finite position {x}")));
        }
        let v = self.speed;
        let right = x >= 0.0;
        let direct = if right {
            self.direct(self.pair.right(), x, t, (x - v * t).max(0.0), x + v * t)
        } else {
            self.direct(self.pair.left(), x, t, x - v * t, (x + v * t).min(0.0))
        };
        let ceiling = direct.as_ref().map_or(f64::INFINITY, |d| d.cost);
        let cross = self.crossing(x, t, right, ceiling);
        let medium = if right { self.pair.right() } else { self.pair.left() };

        let take_cross = match (&direct, &cross) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(d), Some(c)) => c.cost < d.cost - TIE_TOL * d.cost.abs().max(1.0),
        };
        let point = if take_cross {
            let c = cross.unwrap();
            let w = t - c.tau;
            let u = if w > 0.0 {
                medium.deriv_inverse(x / w)?
            } else {
                // arrival at the interface at time t: right trace
                medium.inverse_plus(self.pair.left().eval(c.u_in))?
            };
            SolutionPoint {
                x,
                t,
                u,
                case_tag: if right { CaseTag::CrossLR } else { CaseTag::CrossRL },
                z: c.z,
                tau: Some(c.tau),
                cost: c.cost,
            }
        } else {
            let d = direct.ok_or_else(|| Error::InvalidData("no admissible foot".into()))?;
            let u = medium.deriv_inverse((x - d.z) / t)?;
            SolutionPoint {
                x,
                t,
                u,
                case_tag: if right {
                    CaseTag::DirectRight
                } else {
                    CaseTag::DirectLeft
                },
                z: d.z,
                tau: None,
                cost: d.cost,
            }
        };
        Ok(point)
    }

    /// Evaluates on a sorted grid, in parallel.
    pub fn sample_profile(&self, t: f64, grid: &[f64]) -> Result<SolutionField> {
        Self::check_time(t)?;
        if grid.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidData("profile grid must be sorted".into()));
        }
        let points = grid
            .par_iter()
            .map(|&x| self.evaluate(x, t))
            .collect::<Result<Vec<_>>>()?;
        Ok(SolutionField { t, points })
    }

    /// One-sided traces at the interface, from evaluations at `x = ∓eps`
    /// with `eps` halved until the characteristic speeds and fluxes on both
    /// sides change by at most [`TRACE_TOL`] over three successive halvings.
    pub fn interface_trace(&self, t: f64, eps: f64) -> Result<Trace> {
        Self::check_time(t)?;
        if !(eps > 0.0) {
            return Err(Error::InvalidData("eps must be positive".into()));
        }
        let (f, g) = (self.pair.right(), self.pair.left());
        let probe = |e: f64| -> Result<(f64, f64, [f64; 4])> {
            let um = self.evaluate(-e, t)?.u;
            let up = self.evaluate(e, t)?.u;
            Ok((um, up, [g.eval(um), f.eval(up), g.deriv(um), f.deriv(up)]))
        };
        let mut e = eps;
        let mut previous = probe(e)?;
        let mut stable = 0;
        for _ in 0..TRACE_MAX_HALVINGS {
            e *= 0.5;
            let current = probe(e)?;
            let change = previous
                .2
                .iter()
                .zip(&current.2)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            // unbalanced fluxes mean a wave still lies within the probe
            let balanced = (current.2[1] - current.2[0]).abs() <= TRACE_TOL;
            previous = current;
            stable = if change <= TRACE_TOL && balanced { stable + 1 } else { 0 };
            if stable >= 3 {
                let (um, up, [gm, fp, gd, fd]) = previous;
                return Ok(Trace {
                    t,
                    u_minus: um,
                    u_plus: up,
                    eps: e,
                    rh_residual: (fp - gm).abs(),
                    entropy_ok: !(fd > TRACE_TOL && gd < -TRACE_TOL),
                });
            }
        }
        Err(Error::NoConvergence { eps: e })
    }

    fn locate_edge(&self, t: f64, right: bool) -> Result<f64> {
        Self::check_time(t)?;
        let tag = if right { CaseTag::CrossLR } else { CaseTag::CrossRL };
        let sign = if right { 1.0 } else { -1.0 };
        let reach = self.speed * t;
        let crossing = |d: f64| -> Result<bool> { Ok(self.evaluate(sign * d, t)?.case_tag == tag) };
        const CELLS: usize = 128;
        let h = reach / CELLS as f64;
        let mut last = None;
        for k in 0..=CELLS {
            let d = if k == 0 { 1e-9 * reach.max(1.0) } else { h * k as f64 };
            if crossing(d)? {
                last = Some(d);
            }
        }
        let Some(mut lo) = last else {
            return Ok(0.0);
        };
        let mut hi = (lo + h).min(reach);
        if lo >= hi {
            return Ok(sign * lo);
        }
        while hi - lo > 1e-10 * reach.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if crossing(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(sign * 0.5 * (lo + hi))
    }

    /// Right edge `R1(t) >= 0` of the region reached by left-to-right crossings.
    pub fn locate_r1(&self, t: f64) -> Result<f64> {
        self.locate_edge(t, true)
    }

    /// Left edge `L1(t) <= 0` of the region reached by right-to-left crossings.
    pub fn locate_l1(&self, t: f64) -> Result<f64> {
        self.locate_edge(t, false)
    }

    pub fn interface_curves(&self, times: &[f64]) -> Result<InterfaceCurves> {
        let rows = times
            .par_iter()
            .map(|&t| Ok((self.locate_r1(t)?, self.locate_l1(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(InterfaceCurves {
            times: times.to_vec(),
            r1: rows.iter().map(|r| r.0).collect(),
            l1: rows.iter().map(|r| r.1).collect(),
        })
    }
}

/// Convenience wrapper: `V0` of the data.
pub fn potential(data: &InitialData) -> Potential {
    Potential::new(data)
}

/// Convenience wrapper around [`Evaluator::evaluate`].
pub fn evaluate(pair: &InterfacePair, data: &InitialData, x: f64, t: f64) -> Result<SolutionPoint> {
    Evaluator::new(pair.clone(), data)?.evaluate(x, t)
}
