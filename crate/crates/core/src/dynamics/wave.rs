use crate::dynamics::potential::PotentialSpec;
use crate::dynamics::stationary::stationary_residual;
use crate::dynamics::Domain;
use crate::error::{Error, Result};
use crate::series::{HolomorphicSeries, C64};

/// Coefficient state of `ξ_tt + ∂ᵀ_z ξ_z + Pr_con(grad V ∘ ξ) = 0` on the disk.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveState {
    pub xi: HolomorphicSeries,
    pub xi_t: HolomorphicSeries,
    pub t: f64,
}

impl WaveState {
    /// Pads both series to a common budget.
    pub fn new(xi: HolomorphicSeries, xi_t: HolomorphicSeries, t: f64) -> Self {
        let n = xi.budget().max(xi_t.budget());
        Self {
            xi: xi.resized(n).value,
            xi_t: xi_t.resized(n).value,
            t,
        }
    }

    pub fn budget(&self) -> usize {
        self.xi.budget()
    }

    fn size(&self) -> f64 {
        (self.xi.norm().powi(2) + self.xi_t.norm().powi(2)).sqrt()
    }
}

/// Acceleration `−∂ᵀ_z(ξ_z) − Pr_con(grad V ∘ ξ)`.
pub fn wave_rhs(state: &WaveState, v: &PotentialSpec) -> Result<HolomorphicSeries> {
    Ok(-&stationary_residual(&state.xi, v, &Domain::Disk, state.budget())?)
}

/// Closed-form solution of one mode `ẍ + ω² x = 0` with `ω² = m² + m + c`.
pub fn wave_mode_solution(m: u32, c: f64, xi0: C64, xidot0: C64, t: f64) -> (C64, C64) {
    let m = m as f64;
    let w2 = m * m + m + c;
    if w2 > 0.0 {
        let w = w2.sqrt();
        let (s, co) = (w * t).sin_cos();
        (xi0 * co + xidot0 * (s / w), -xi0 * (w * s) + xidot0 * co)
    } else if w2 == 0.0 {
        (xi0 + xidot0 * t, xidot0)
    } else {
        let k = (-w2).sqrt();
        let (sh, ch) = ((k * t).sinh(), (k * t).cosh());
        (xi0 * ch + xidot0 * (sh / k), xi0 * (k * sh) + xidot0 * ch)
    }
}

/// Per-mode energies at one instant.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstIntegralReport {
    pub t: f64,
    pub values: Vec<f64>,
}

/// `I_m = ½|ξ̇_m|² + ½(m² + m + c)|ξ_m|²` for `m = 0 … max_m`.
///
/// The values are nonnegative only for modes with `m² + m + c ≥ 0`.
pub fn first_integrals(state: &WaveState, c: f64, max_m: usize) -> FirstIntegralReport {
    let values = (0..=max_m)
        .map(|m| {
            let mf = m as f64;
            0.5 * state.xi_t.coeff(m).norm_sqr() + 0.5 * (mf * mf + mf + c) * state.xi.coeff(m).norm_sqr()
        })
        .collect();
    FirstIntegralReport { t: state.t, values }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveConfig {
    pub dt: f64,
    pub steps: usize,
    /// Record every `sample_stride`-th step (the first and last states are always kept).
    pub sample_stride: usize,
    /// Abort when `‖(ξ, ξ_t)‖` exceeds this multiple of its initial value.
    pub growth_limit: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            steps: 10_000,
            sample_stride: 100,
            growth_limit: 1e6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct WaveSample {
    pub state: WaveState,
    /// Present for quadratic potentials.
    pub integrals: Option<FirstIntegralReport>,
}

#[derive(Clone, Debug)]
pub struct WaveTrajectory {
    pub samples: Vec<WaveSample>,
}

impl WaveTrajectory {
    pub fn last(&self) -> &WaveState {
        &self.samples.last().expect("trajectory holds the initial state").state
    }
}

/// Velocity Verlet (Störmer–Verlet) integration.
///
/// The scheme is symplectic and second order. For a mode with frequency `ω` the
/// step is stable for `ω dt < 2`; the numerical energy oscillates with relative
/// amplitude about `(ω dt)²/4` without secular drift.
pub fn wave_integrate(state0: &WaveState, v: &PotentialSpec, cfg: &WaveConfig) -> Result<WaveTrajectory> {
    if !(cfg.dt > 0.0) {
        return Err(Error::InvalidConfig("time step must be positive".into()));
    }
    let stride = cfg.sample_stride.max(1);
    let c = v.quadratic_c();
    let budget = state0.budget();
    let record = |s: &WaveState| WaveSample {
        state: s.clone(),
        integrals: c.map(|c| first_integrals(s, c, budget)),
    };
    let size0 = state0.size();
    let mut samples = vec![record(state0)];
    let mut s = state0.clone();
    let mut acc = wave_rhs(&s, v)?;
    let half = 0.5 * cfg.dt;
    for step in 1..=cfg.steps {
        let v_half = &s.xi_t + &acc.scale_real(half);
        s.xi = &s.xi + &v_half.scale_real(cfg.dt);
        acc = wave_rhs(&s, v)?;
        s.xi_t = &v_half + &acc.scale_real(half);
        s.t = state0.t + step as f64 * cfg.dt;
        if size0 > 0.0 {
            let growth = s.size() / size0;
            if !(growth <= cfg.growth_limit) {
                return Err(Error::Unstable { t: s.t, growth });
            }
        }
        if step % stride == 0 || step == cfg.steps {
            samples.push(record(&s));
        }
    }
    Ok(WaveTrajectory { samples })
}
