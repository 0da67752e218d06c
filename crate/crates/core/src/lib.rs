//! Spectral calculus for conformal vector fields on flat planar domains.
//!
//! Vector fields `u ∂x + v ∂y` are identified with complex functions `u + iv`
//! and represented as truncated polynomials in `z` and `z̄`. The crate provides
//! exact disk inner products, three independent routes to the projection onto
//! conformal (holomorphic) fields, the adjoint of the complex derivative, the
//! orthogonal decomposition `X = X_con ⊕ grad̄(F₀) ⊕ sgrad̄(F₀)` with its Dirichlet
//! multipliers, the Hodge catalog of model domains, and solvers for the
//! stationary, wave and geodesic conformal problems.

pub mod disk_calculus;
pub mod domains;
pub mod dynamics;
pub mod error;
pub mod formats;
pub mod quadrature;
pub mod selftest;
pub mod series;

pub use error::{Error, Result};
pub use series::{BivariateField, HolomorphicSeries, InnerProductValue, Truncated, Truncation, C64};
