//! The stationary, wave and geodesic conformal problems.
//!
//! All three share the operator `ξ ↦ ∂ᵀ_z ξ_z`, whose disk spectrum on `z^m` is
//! `m(m+1)`. With `V = c|z|²/2` the wave equation therefore splits into
//! independent oscillators with `ω² = m² + m + c`.

pub mod geodesic;
pub mod potential;
pub mod stationary;
pub mod wave;

use crate::domains::conformal_map::ConformalMap;

/// Where a dynamics problem is posed.
#[derive(Clone, Copy, Debug)]
pub enum Domain<'a> {
    Disk,
    Mapped(&'a ConformalMap),
}

pub use geodesic::{
    geodesic_energy, geodesic_force_pullback, geodesic_integrate, geodesic_rhs, lie_derivative, GeodesicConfig,
    GeodesicSample, GeodesicState, GeodesicTrajectory,
};
pub use potential::{grad_v_compose, grad_v_compose_holomorphic, PotentialSpec};
pub use stationary::{domain_norm, stationary_residual, stationary_solve, StationaryConfig, StationaryIterate, StationarySolution};
pub use wave::{
    first_integrals, wave_integrate, wave_mode_solution, wave_rhs, FirstIntegralReport, WaveConfig, WaveSample,
    WaveState, WaveTrajectory,
};
