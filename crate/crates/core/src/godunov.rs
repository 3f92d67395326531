//! First-order Godunov finite-volume scheme with the interface on a cell edge.

use crate::explicit::{max_bound, InitialData, SolutionField};
use crate::flux::{ConvexFlux, InterfacePair};
use crate::{Error, Result};

pub const CFL: f64 = 0.45;

/// Uniform grid on `[a, b]` with `n` cells. The interface `x = 0` must be
/// the edge between cells `j0 - 1` and `j0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    a: f64,
    b: f64,
    n: usize,
    j0: usize,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a < 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidGrid(format!("[{a}, {b}] must straddle the interface")));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("{n} cells")));
        }
        let dx = (b - a) / n as f64;
        let j = -a / dx;
        let j0 = j.round();
        if (j - j0).abs() > 1e-9 * n as f64 || j0 <= 0.0 || j0 >= n as f64 {
            return Err(Error::InvalidGrid(format!(
                "x = 0 is not a cell edge of {n} cells on [{a}, {b}]"
            )));
        }
        Ok(Self {
            a,
            b,
            n,
            j0: j0 as usize,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    /// Index of the first cell right of the interface.
    pub fn interface_index(&self) -> usize {
        self.j0
    }

    pub fn dx(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.a + self.dx() * (j as f64 + 0.5)
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.center(j)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FvState {
    pub grid: Grid1D,
    pub t: f64,
    pub u: Vec<f64>,
}

impl FvState {
    /// Cell averages of the data by 16-point midpoint quadrature.
    pub fn from_data(grid: Grid1D, data: &InitialData) -> Self {
        const Q: usize = 16;
        let dx = grid.dx();
        let u = (0..grid.n)
            .map(|j| {
                let left = grid.a + dx * j as f64;
                (0..Q)
                    .map(|q| data.eval(left + dx * (q as f64 + 0.5) / Q as f64))
                    .sum::<f64>()
                    / Q as f64
            })
            .collect();
        Self { grid, t: 0.0, u }
    }

    pub fn mass(&self) -> f64 {
        self.u.iter().sum::<f64>() * self.grid.dx()
    }

    /// `dx Σ |u_j - v(x_j)|` against a reference profile sampled at the
    /// cell centers.
    pub fn l1_error_field(&self, reference: &SolutionField) -> Result<f64> {
        if reference.points.len() != self.u.len() {
            return Err(Error::InvalidData(format!(
                "reference has {} points for {} cells",
                reference.points.len(),
                self.u.len()
            )));
        }
        Ok(self
            .u
            .iter()
            .zip(&reference.points)
            .map(|(a, p)| (a - p.u).abs())
            .sum::<f64>()
            * self.grid.dx())
    }

    /// L1 distance to a state on a nested coarser or equal grid, comparing
    /// averages over the coarse cells.
    pub fn l1_error_state(&self, other: &FvState) -> Result<f64> {
        let (fine, coarse) = if self.u.len() >= other.u.len() {
            (self, other)
        } else {
            (other, self)
        };
        let ratio = fine.u.len() / coarse.u.len();
        if ratio * coarse.u.len() != fine.u.len() || fine.grid.a != coarse.grid.a || fine.grid.b != coarse.grid.b {
            return Err(Error::InvalidGrid("states are not on nested grids".into()));
        }
        let err: f64 = coarse
            .u
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let avg = fine.u[j * ratio..(j + 1) * ratio].iter().sum::<f64>() / ratio as f64;
                (avg - c).abs()
            })
            .sum();
        Ok(err * coarse.grid.dx())
    }
}

/// Godunov flux for one convex flux between states `a` (left) and `b`.
pub fn godunov_flux(h: &ConvexFlux, a: f64, b: f64) -> f64 {
    if a <= b {
        h.eval(h.theta().clamp(a, b))
    } else {
        h.eval(a).max(h.eval(b))
    }
}

/// Interface flux `max(g(max(a, θ_g)), f(min(b, θ_f)))`.
pub fn interface_flux(pair: &InterfacePair, a: f64, b: f64) -> f64 {
    let (g, f) = (pair.left(), pair.right());
    g.eval(a.max(g.theta())).max(f.eval(b.min(f.theta())))
}

#[derive(Debug, Clone)]
pub struct Scheme {
    pair: InterfacePair,
    grid: Grid1D,
    v_max: f64,
}

impl Scheme {
    /// `sup_data` bounds the data; the CFL speed comes from the
    /// maximum-principle bound.
    pub fn new(pair: InterfacePair, grid: Grid1D, sup_data: f64) -> Result<Self> {
        let bound = max_bound(&pair, sup_data)?.value;
        let v_max = pair.max_speed(bound).max(1e-12);
        Ok(Self { pair, grid, v_max })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn v_max(&self) -> f64 {
        self.v_max
    }

    pub fn stable_dt(&self) -> f64 {
        CFL * self.grid.dx() / self.v_max
    }

    /// Fluxes at edges `lo..=hi + 1`; edge k sits between cells k - 1 and
    /// k, with copy boundaries.
    fn edge_fluxes(&self, u: &[f64], lo: usize, hi: usize) -> Vec<f64> {
        let n = u.len();
        let j0 = self.grid.j0;
        let (g, f) = (self.pair.left(), self.pair.right());
        let first = lo.saturating_sub(1);
        let last = (hi + 1).min(n - 1);
        let mut cell = Vec::with_capacity(last + 1 - first);
        for j in first..=last {
            let h = if j < j0 { g } else { f };
            let reuse = j > first && j != j0 && u[j] == u[j - 1];
            cell.push(if reuse { cell[j - 1 - first] } else { h.eval(u[j]) });
        }
        let at = |j: usize| cell[j - first];
        let (min_g, min_f) = (g.eval(g.theta()), f.eval(f.theta()));
        let side = |theta: f64, min: f64, k: usize| {
            let (ia, ib) = (k.saturating_sub(1), k.min(n - 1));
            let (a, b) = (u[ia], u[ib]);
            if a <= b {
                if theta < a {
                    at(ia)
                } else if theta > b {
                    at(ib)
                } else {
                    min
                }
            } else {
                at(ia).max(at(ib))
            }
        };
        (lo..=hi + 1)
            .map(|k| {
                if k < j0 {
                    side(g.theta(), min_g, k)
                } else if k == j0 {
                    let left = if u[k - 1] > g.theta() { at(k - 1) } else { min_g };
                    let right = if u[k] < f.theta() { at(k) } else { min_f };
                    left.max(right)
                } else {
                    side(f.theta(), min_f, k)
                }
            })
            .collect()
    }

    /// Smallest cell range outside which a step changes nothing: cells
    /// next to a jump inside `from..=to`, and the two interface cells.
    fn active_span(&self, u: &[f64], from: usize, to: usize) -> (usize, usize) {
        let j0 = self.grid.j0;
        let jump = |d: &usize| u[*d] != u[*d + 1];
        let lo = (from..to).find(jump).unwrap_or(j0 - 1).min(j0 - 1);
        let hi = (from..to).rev().find(jump).map_or(j0, |d| d + 1).max(j0);
        (lo, hi)
    }

    fn check_step(&self, state: &FvState, dt: f64) -> Result<()> {
        let limit = self.stable_dt();
        if !(dt > 0.0) || dt > limit * (1.0 + 1e-12) {
            return Err(Error::CflViolation { dt, limit });
        }
        if state.u.len() != self.grid.n {
            return Err(Error::InvalidGrid("state does not match the scheme grid".into()));
        }
        Ok(())
    }

    fn advance(&self, u: &mut [f64], lo: usize, hi: usize, dt: f64) {
        let fluxes = self.edge_fluxes(u, lo, hi);
        let r = dt / self.grid.dx();
        for j in lo..=hi {
            u[j] -= r * (fluxes[j + 1 - lo] - fluxes[j - lo]);
        }
    }

    pub fn step(&self, state: &mut FvState, dt: f64) -> Result<()> {
        self.check_step(state, dt)?;
        let n = state.u.len();
        self.advance(&mut state.u, 0, n - 1, dt);
        state.t += dt;
        Ok(())
    }

    /// Advances to time `t_end` with the largest stable steps. Only cells
    /// whose update can be nonzero are touched; the result matches
    /// repeated [`Scheme::step`] exactly.
    pub fn run(&self, state: &mut FvState, t_end: f64) -> Result<()> {
        let dt = self.stable_dt();
        let n = state.u.len();
        let mut span: Option<(usize, usize)> = None;
        while state.t < t_end - 1e-14 * t_end.max(1.0) {
            let step = dt.min(t_end - state.t);
            self.check_step(state, step)?;
            let (lo, hi) = match span {
                None => self.active_span(&state.u, 0, n - 1),
                Some((lo, hi)) => self.active_span(&state.u, lo.saturating_sub(1), (hi + 1).min(n - 1)),
            };
            self.advance(&mut state.u, lo, hi, step);
            state.t += step;
            span = Some((lo, hi));
        }
        Ok(())
    }
}
