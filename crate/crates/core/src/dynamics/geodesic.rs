use crate::domains::conformal_map::{map_inner_product_on_image, ConformalMap, MappedGram};
use crate::error::{Error, Result};
use crate::series::{BivariateField, HolomorphicSeries, Truncation, C64};

/// An embedding `φ: 𝔻 → U` together with the spatial velocity `ξ`, a series in the
/// image coordinate of `U = φ(𝔻)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicState {
    pub phi: ConformalMap,
    pub xi: HolomorphicSeries,
    pub t: f64,
}

/// `E = ½⟨ξ, ξ⟩_U`.
pub fn geodesic_energy(phi: &ConformalMap, xi: &HolomorphicSeries) -> f64 {
    0.5 * map_inner_product_on_image(phi, xi, xi).real_value
}

/// `X∘φ = ξ̄∘φ · (∂ᵀ_z ξ)∘φ − 2 div(ξ)∘φ · ξ∘φ`, the geodesic force before projection,
/// with `div ξ = ξ′ + conj(ξ′)`.
pub fn geodesic_force_pullback(phi: &ConformalMap, xi: &HolomorphicSeries, degree: usize) -> Result<BivariateField> {
    let gram = MappedGram::new(phi, degree, None)?;
    let p = gram.pullback(xi);
    let r = gram.pullback(&gram.adjoint_dz(xi));
    let q = gram.pullback(&xi.derivative());
    let cap = (2 * p.budget().max(q.budget()).max(r.budget())) as u32;
    let trunc = Truncation::new(cap);
    let pf = p.to_field();
    let qf = q.to_field();
    let div = &qf + &q.conj_field();
    let a = p.conj_field().mul(&r.to_field(), &trunc).value;
    let b = div.mul(&pf, &trunc).value.scale_real(2.0);
    Ok(&a - &b)
}

/// `(φ̇, ξ̇)` with `φ̇ = ξ∘φ` and `ξ̇ = Pr_con(ξ̄ ∂ᵀ_z ξ − 2 div(ξ) ξ)` on `U`.
///
/// The projection pairs the force with `φ′φ^j`. Moving conjugated factors across the
/// pairing keeps everything holomorphic:
/// `⟪φ′P̄R, b⟫ = ⟪φ′R, P b⟫` and `⟪φ′Q̄P, b⟫ = ⟪φ′P, Q b⟫` with `P = ξ∘φ`,
/// `Q = ξ′∘φ`, `R = (∂ᵀ_z ξ)∘φ`.
pub fn geodesic_rhs(
    phi: &ConformalMap,
    xi: &HolomorphicSeries,
    degree: usize,
    work: Option<usize>,
) -> Result<(HolomorphicSeries, HolomorphicSeries)> {
    let gram = MappedGram::new(phi, degree, work)?;
    let p = gram.pullback(xi);
    let phi_dot = p.resized(phi.phi().budget()).value;
    let r = gram.pullback(&gram.adjoint_dz(xi));
    let q = gram.pullback(&xi.derivative());
    let dr = gram.times_dphi(&r);
    let dq = gram.times_dphi(&q);
    let dp = gram.times_dphi(&p);
    let dqp = gram.mul(&dq, &p);
    let rhs: Vec<C64> = gram
        .weighted_basis()
        .iter()
        .map(|b| {
            let t1 = dr.inner_product(&gram.mul(&p, b)).complex_value;
            let t2 = dqp.inner_product(b).complex_value;
            let t3 = dp.inner_product(&gram.mul(&q, b)).complex_value;
            t1 - (t2 + t3) * 2.0
        })
        .collect();
    Ok((phi_dot, gram.solve(&rhs)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodesicConfig {
    pub dt: f64,
    pub steps: usize,
    pub sample_stride: usize,
    /// Budget of `ξ`; `None` keeps the budget of the initial velocity.
    pub degree: Option<usize>,
    /// Truncation degree for pulled-back series; `None` computes them exactly.
    pub work_degree: Option<usize>,
    /// Abort when `min|φ′|` falls below this value.
    pub min_deriv_floor: f64,
}

impl Default for GeodesicConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            steps: 1000,
            sample_stride: 10,
            degree: None,
            work_degree: None,
            min_deriv_floor: 1e-3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeodesicSample {
    pub t: f64,
    pub phi: HolomorphicSeries,
    pub xi: HolomorphicSeries,
    pub energy: f64,
    pub min_deriv: f64,
}

#[derive(Clone, Debug)]
pub struct GeodesicTrajectory {
    pub samples: Vec<GeodesicSample>,
}

impl GeodesicTrajectory {
    pub fn last(&self) -> &GeodesicSample {
        self.samples.last().expect("trajectory holds the initial state")
    }

    /// `max |E(t) − E(0)| / E(0)` over the recorded samples (0 when `E(0) = 0`).
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.samples[0].energy;
        if e0 == 0.0 {
            return 0.0;
        }
        self.samples
            .iter()
            .map(|s| (s.energy - e0).abs() / e0.abs())
            .fold(0.0, f64::max)
    }
}

fn sample(phi: &ConformalMap, xi: &HolomorphicSeries, t: f64) -> GeodesicSample {
    GeodesicSample {
        t,
        phi: phi.phi().clone(),
        xi: xi.clone(),
        energy: geodesic_energy(phi, xi),
        min_deriv: phi.min_deriv(),
    }
}

fn accept(phi: HolomorphicSeries, t: f64, floor: f64) -> Result<ConformalMap> {
    match ConformalMap::new(phi) {
        Ok(m) if m.min_deriv() >= floor => Ok(m),
        Ok(m) => Err(Error::EmbeddingDegenerate {
            t,
            reason: format!("min |phi'| = {:.3e} below floor {floor:.1e}", m.min_deriv()),
        }),
        Err(e) => Err(Error::EmbeddingDegenerate { t, reason: e.to_string() }),
    }
}

/// Classical fourth-order Runge–Kutta on the coefficients of `(φ, ξ)`.
///
/// Every stage re-projects `ξ` onto the conformal fields of the current image. After each
/// step the embedding is validated: `min|φ′|` must stay above the floor and the boundary
/// must not self-intersect.
pub fn geodesic_integrate(state0: &GeodesicState, cfg: &GeodesicConfig) -> Result<GeodesicTrajectory> {
    if !(cfg.dt > 0.0) {
        return Err(Error::InvalidConfig("time step must be positive".into()));
    }
    let degree = cfg.degree.unwrap_or(state0.xi.budget());
    let stride = cfg.sample_stride.max(1);
    let phi_budget = state0.phi.phi().budget().max(degree);
    let mut phi = ConformalMap::new_unchecked(state0.phi.phi().resized(phi_budget).value);
    let mut xi = state0.xi.resized(degree).value;
    let mut samples = vec![sample(&phi, &xi, state0.t)];
    let h = cfg.dt;
    let rhs = |p: &HolomorphicSeries, x: &HolomorphicSeries| {
        geodesic_rhs(&ConformalMap::new_unchecked(p.clone()), x, degree, cfg.work_degree)
    };
    for step in 1..=cfg.steps {
        let p0 = phi.phi().clone();
        let (k1p, k1x) = rhs(&p0, &xi)?;
        let (k2p, k2x) = rhs(&(&p0 + &k1p.scale_real(h / 2.0)), &(&xi + &k1x.scale_real(h / 2.0)))?;
        let (k3p, k3x) = rhs(&(&p0 + &k2p.scale_real(h / 2.0)), &(&xi + &k2x.scale_real(h / 2.0)))?;
        let (k4p, k4x) = rhs(&(&p0 + &k3p.scale_real(h)), &(&xi + &k3x.scale_real(h)))?;
        let dp = &(&k1p + &k4p) + &(&k2p + &k3p).scale_real(2.0);
        let dx = &(&k1x + &k4x) + &(&k2x + &k3x).scale_real(2.0);
        let t = state0.t + step as f64 * h;
        phi = accept(&p0 + &dp.scale_real(h / 6.0), t, cfg.min_deriv_floor)?;
        xi = &xi + &dx.scale_real(h / 6.0);
        if step % stride == 0 || step == cfg.steps {
            samples.push(sample(&phi, &xi, t));
        }
    }
    Ok(GeodesicTrajectory { samples })
}

/// `£_η ξ = η′ξ − ξ′η` for holomorphic fields on a common chart.
pub fn lie_derivative(eta: &HolomorphicSeries, xi: &HolomorphicSeries, max_degree: usize) -> HolomorphicSeries {
    let a = eta.derivative().mul(xi, max_degree).value;
    let b = xi.derivative().mul(eta, max_degree).value;
    &a - &b
}
