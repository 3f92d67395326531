//! Numerical laboratory for scalar conservation laws with a two-flux interface
//! at `x = 0`.
//!
//! * [`flux`]: strictly convex fluxes, their inverses and conjugates, and the
//!   interface pair with its singular maps.
//! * [`explicit`]: pointwise entropy solution through the variational
//!   (Lax–Oleinik) principle extended to interface-crossing paths.
//! * [`godunov`]: first-order finite-volume solver with an interface flux,
//!   used as an independent oracle.
//! * [`fractional_bv`]: fractional total variation `TV^s` of sampled data.

pub mod error;
pub mod explicit;
pub mod fit;
pub mod flux;
pub mod fractional_bv;
pub mod godunov;
mod minimize;

pub use error::{Error, Result};
pub use explicit::{CaseTag, InitialData, InterfaceCurves, Potential, SolutionField, SolutionPoint};
pub use flux::{ConvexFlux, FluxFamily, InterfacePair};
pub use fractional_bv::{SampledFunction, VariationResult};
pub use godunov::{FvState, Grid1D, Scheme};
