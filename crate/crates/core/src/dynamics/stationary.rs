use nalgebra::{DMatrix, DVector};

use crate::disk_calculus::{adjoint_dz_disk, conformal_decompose, project_con_rule, MultiplierPair};
use crate::domains::conformal_map::{map_inner_product_on_image, MappedGram};
use crate::dynamics::potential::{grad_v_compose_holomorphic, PotentialSpec};
use crate::dynamics::Domain;
use crate::error::Result;
use crate::series::{HolomorphicSeries, C64};

/// `∂ᵀ_z(ξ_z) + Pr_con(grad V ∘ ξ)` on the chosen domain, with budget `degree`.
pub fn stationary_residual(
    xi: &HolomorphicSeries,
    v: &PotentialSpec,
    domain: &Domain,
    degree: usize,
) -> Result<HolomorphicSeries> {
    match domain {
        Domain::Disk => {
            let a = adjoint_dz_disk(&xi.derivative(), degree).value;
            let work = degree.max(xi.budget()) as u32;
            let g = grad_v_compose_holomorphic(v, xi, work).value;
            let p = project_con_rule(&g).resized(degree).value;
            Ok(&a + &p)
        }
        Domain::Mapped(map) => {
            let gram = MappedGram::new(map, degree, None)?;
            let a = gram.adjoint_dz(&xi.derivative());
            let pulled = gram.pullback(xi);
            let work = pulled.budget() as u32;
            let g = match v.quadratic_c() {
                Some(c) => gram.project_holomorphic(&pulled.scale_real(c)),
                None => gram.project(&grad_v_compose_holomorphic(v, &pulled, work).value),
            };
            Ok(&a + &g)
        }
    }
}

/// L² norm on the domain of a series given in the image coordinate.
pub fn domain_norm(xi: &HolomorphicSeries, domain: &Domain) -> f64 {
    match domain {
        Domain::Disk => xi.norm(),
        Domain::Mapped(map) => map_inner_product_on_image(map, xi, xi).real_value.max(0.0).sqrt(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationaryConfig {
    pub tol: f64,
    pub max_iter: usize,
    /// Newton step multiplier in `(0, 1]`.
    pub damping: f64,
}

impl Default for StationaryConfig {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 50,
            damping: 1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StationarySolution {
    pub xi: HolomorphicSeries,
    /// Recovered from the unprojected residual (disk only).
    pub multipliers: Option<MultiplierPair>,
    pub iterations: usize,
    pub residual_norm: f64,
    pub converged: bool,
    /// Every Newton iterate with its residual norm, starting from the initial guess.
    pub history: Vec<StationaryIterate>,
}

#[derive(Clone, Debug)]
pub struct StationaryIterate {
    pub xi: HolomorphicSeries,
    pub residual_norm: f64,
}

fn to_real(s: &HolomorphicSeries, n: usize) -> DVector<f64> {
    let mut v = DVector::zeros(2 * n);
    for k in 0..n {
        let c = s.coeff(k);
        v[2 * k] = c.re;
        v[2 * k + 1] = c.im;
    }
    v
}

fn from_real(v: &DVector<f64>) -> HolomorphicSeries {
    HolomorphicSeries::new((0..v.len() / 2).map(|k| C64::new(v[2 * k], v[2 * k + 1])).collect())
}

/// Damped Newton iteration on the real and imaginary parts of the coefficients.
///
/// The Jacobian is formed by central differences and inverted with an SVD
/// pseudo-inverse, so directions in the kernel of the mode operator stay where the
/// initial guess put them. Non-convergence is reported through `converged = false`
/// with the best iterate; the underlying variational problem need not be well-posed.
pub fn stationary_solve(
    v: &PotentialSpec,
    init: &HolomorphicSeries,
    cfg: &StationaryConfig,
    domain: &Domain,
) -> Result<StationarySolution> {
    let degree = init.budget();
    let n = degree + 1;
    let residual_vec = |x: &DVector<f64>| -> Result<DVector<f64>> {
        Ok(to_real(&stationary_residual(&from_real(x), v, domain, degree)?, n))
    };
    let norm_of = |x: &DVector<f64>| -> Result<f64> {
        let r = stationary_residual(&from_real(x), v, domain, degree)?;
        Ok(domain_norm(&r, domain))
    };

    let mut x = to_real(init, n);
    let mut r = residual_vec(&x)?;
    let mut best = (x.clone(), norm_of(&x)?);
    let mut history = vec![StationaryIterate {
        xi: from_real(&x),
        residual_norm: best.1,
    }];
    let mut iterations = 0;
    while best.1 > cfg.tol && iterations < cfg.max_iter {
        let mut jac = DMatrix::zeros(2 * n, 2 * n);
        for j in 0..2 * n {
            let h = 1e-6 * x[j].abs().max(1.0);
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let col = (residual_vec(&xp)? - residual_vec(&xm)?) / (2.0 * h);
            jac.set_column(j, &col);
        }
        let svd = jac.svd(true, true);
        let eps = 1e-10 * svd.singular_values.max().max(f64::MIN_POSITIVE);
        let step = svd
            .solve(&(-&r), eps)
            .unwrap_or_else(|_| DVector::zeros(2 * n));
        x += step * cfg.damping;
        r = residual_vec(&x)?;
        iterations += 1;
        let nrm = norm_of(&x)?;
        history.push(StationaryIterate {
            xi: from_real(&x),
            residual_norm: nrm,
        });
        if nrm < best.1 {
            best = (x.clone(), nrm);
        }
    }
    let xi = from_real(&best.0);
    let converged = best.1 <= cfg.tol;
    if !converged {
        log::warn!(
            "stationary solve stopped after {iterations} iterations with residual {:.3e}",
            best.1
        );
    }
    let multipliers = match domain {
        Domain::Disk => {
            let a = adjoint_dz_disk(&xi.derivative(), degree + 1).value.to_field();
            let work = (degree + 1) as u32;
            let g = grad_v_compose_holomorphic(v, &xi, work).value;
            Some(conformal_decompose(&(&a.with_max_degree_at_least(work) + &g)).multipliers)
        }
        Domain::Mapped(_) => None,
    };
    Ok(StationarySolution {
        xi,
        multipliers,
        iterations,
        residual_norm: best.1,
        converged,
        history,
    })
}
