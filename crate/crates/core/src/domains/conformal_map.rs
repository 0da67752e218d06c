//! Domains `U = φ(𝔻)` given by a polynomial conformal map.
//!
//! Nothing on `U` is represented through `φ⁻¹`. A function `ξ` on `U` is either a
//! series in the image coordinate `w`, or is handled through its pullback `ξ∘φ`,
//! a series on the disk. Inner products use the change of variables
//!
//! ```text
//! ⟪ξ, η⟫_U = ⟪φ′ · ξ∘φ, φ′ · η∘φ⟫_𝔻 .
//! ```

use nalgebra::{DMatrix, DVector};

use crate::disk_calculus::bergman_kernel_disk;
use crate::error::{Error, Result};
use crate::quadrature::{boundary_samples, closed_disk_samples};
use crate::series::{
    inner_product, inner_product_holomorphic, BivariateField, HolomorphicSeries, InnerProductValue, Truncation, C64,
};

const NEWTON_TOL: f64 = 1e-13;
const NEWTON_MAX_ITER: usize = 50;
const BOUNDARY_SAMPLES: usize = 256;
const MAX_CONDITION: f64 = 1e12;

/// A polynomial map `φ: 𝔻 → U` with nonvanishing derivative and injective boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalMap {
    phi: HolomorphicSeries,
    dphi: HolomorphicSeries,
    min_deriv: f64,
}

impl ConformalMap {
    /// Validates `φ`: `min|φ′|` on a 64×128 grid of the closed disk must be positive and
    /// the images of 256 boundary samples must stay apart and trace a simple polygon.
    pub fn new(phi: HolomorphicSeries) -> Result<Self> {
        let map = Self::new_unchecked(phi);
        let scale = map.dphi.max_abs_coeff().max(1.0);
        if !(map.min_deriv > 1e-12 * scale) {
            return Err(Error::DegenerateMap {
                min_deriv: map.min_deriv,
            });
        }
        map.check_boundary()?;
        Ok(map)
    }

    /// Builds the map and its derivative bound without the validity checks.
    pub fn new_unchecked(phi: HolomorphicSeries) -> Self {
        let dphi = phi.derivative();
        let min_deriv = closed_disk_samples(64, 128)
            .into_iter()
            .map(|z| dphi.evaluate(z).norm())
            .fold(f64::INFINITY, f64::min);
        Self { phi, dphi, min_deriv }
    }

    pub fn identity() -> Self {
        Self::new_unchecked(HolomorphicSeries::identity(1))
    }

    /// `w = s z`.
    pub fn scaling(s: C64) -> Result<Self> {
        Self::new(HolomorphicSeries::new(vec![C64::new(0.0, 0.0), s]))
    }

    pub fn phi(&self) -> &HolomorphicSeries {
        &self.phi
    }

    pub fn derivative(&self) -> &HolomorphicSeries {
        &self.dphi
    }

    pub fn min_deriv(&self) -> f64 {
        self.min_deriv
    }

    /// Highest power actually present in `φ` (at least one).
    pub fn degree(&self) -> usize {
        self.phi.degree().unwrap_or(1).max(1)
    }

    fn check_boundary(&self) -> Result<()> {
        let pts: Vec<C64> = boundary_samples(BOUNDARY_SAMPLES)
            .into_iter()
            .map(|z| self.phi.evaluate(z))
            .collect();
        let n = pts.len();
        let adjacent = |i: usize, j: usize| {
            let d = (i + n - j) % n;
            d <= 1 || d == n - 1
        };
        for i in 0..n {
            for j in (i + 1)..n {
                if adjacent(i, j) {
                    continue;
                }
                if (pts[i] - pts[j]).norm() <= 1e-12 {
                    return Err(Error::BoundarySelfIntersection { first: i, second: j });
                }
                if segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) {
                    return Err(Error::BoundarySelfIntersection { first: i, second: j });
                }
            }
        }
        Ok(())
    }

    /// `φ⁻¹(w)` by Newton's method seeded from the nearest image of a coarse grid.
    pub fn invert(&self, w: C64) -> Result<C64> {
        let mut z = closed_disk_samples(17, 32)
            .into_iter()
            .min_by(|a, b| {
                let da = (self.phi.evaluate(*a) - w).norm();
                let db = (self.phi.evaluate(*b) - w).norm();
                da.total_cmp(&db)
            })
            .unwrap_or_default();
        let tol = NEWTON_TOL * w.norm().max(1.0);
        for _ in 0..NEWTON_MAX_ITER {
            let (f, df) = self.phi.evaluate_with_derivative(z);
            let r = f - w;
            if r.norm() <= tol {
                if z.norm() <= 1.0 + 1e-9 {
                    return Ok(z);
                }
                break;
            }
            if df.norm() == 0.0 {
                break;
            }
            z -= r / df;
        }
        Err(Error::InversionFailed {
            point: w,
            iterations: NEWTON_MAX_ITER,
        })
    }

    /// `χ₁∘φ = (z² φ′)′` as a series on the disk.
    pub fn chi1_pullback(&self) -> HolomorphicSeries {
        self.z2_times(&self.dphi).derivative()
    }

    /// `χ₂∘φ = z² φ′²` as a series on the disk.
    pub fn chi2_pullback(&self) -> HolomorphicSeries {
        let sq = self.dphi.mul(&self.dphi, 2 * self.dphi.budget()).value;
        self.z2_times(&sq)
    }

    fn z2_times(&self, h: &HolomorphicSeries) -> HolomorphicSeries {
        let mut c = vec![C64::new(0.0, 0.0); 2];
        c.extend_from_slice(h.coeffs());
        HolomorphicSeries::new(c)
    }

    /// `ξ∘φ`, computed exactly (the budget is `deg ξ · deg φ`).
    pub fn pullback(&self, xi: &HolomorphicSeries) -> HolomorphicSeries {
        let budget = xi.budget() * self.degree();
        xi.compose(&self.phi, budget).value
    }

    fn times_dphi(&self, h: &HolomorphicSeries) -> HolomorphicSeries {
        h.mul(&self.dphi, h.budget() + self.dphi.budget()).value
    }
}

fn cross(a: C64, b: C64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn segments_cross(p1: C64, p2: C64, q1: C64, q2: C64) -> bool {
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// `⟨ξ, η⟩_U` for fields given by their pullbacks `f = ξ∘φ`, `g = η∘φ`.
pub fn map_inner_product(map: &ConformalMap, f: &BivariateField, g: &BivariateField) -> InnerProductValue {
    let d = map.dphi.budget() as u32;
    let wf = f.mul_holomorphic(&map.dphi, &Truncation::new(f.max_degree() + d)).value;
    let wg = g.mul_holomorphic(&map.dphi, &Truncation::new(g.max_degree() + d)).value;
    inner_product(&wf, &wg)
}

/// `⟨ξ, η⟩_U` for holomorphic pullbacks.
pub fn map_inner_product_holomorphic(
    map: &ConformalMap,
    f: &HolomorphicSeries,
    g: &HolomorphicSeries,
) -> InnerProductValue {
    map.times_dphi(f).inner_product(&map.times_dphi(g))
}

/// `⟨ξ, η⟩_U` for series given in the image coordinate.
pub fn map_inner_product_on_image(
    map: &ConformalMap,
    xi: &HolomorphicSeries,
    eta: &HolomorphicSeries,
) -> InnerProductValue {
    map_inner_product_holomorphic(map, &map.pullback(xi), &map.pullback(eta))
}

/// Bergman kernel of `U`: `K_U(z, ζ) = K_𝔻(ψz, ψζ) ψ′(ζ) conj(ψ′(z))` with `ψ = φ⁻¹`.
pub fn bergman_kernel_mapped(map: &ConformalMap, z: C64, zeta: C64) -> Result<C64> {
    let a = map.invert(z)?;
    let b = map.invert(zeta)?;
    let dpsi_z = C64::new(1.0, 0.0) / map.dphi.evaluate(a);
    let dpsi_zeta = C64::new(1.0, 0.0) / map.dphi.evaluate(b);
    Ok(bergman_kernel_disk(a, b) * dpsi_zeta * dpsi_z.conj())
}

/// Gram system of the pulled-back monomials `φ^0, …, φ^degree` under `⟪·,·⟫_U`,
/// `G_jk = ⟪φ′φ^k, φ′φ^j⟫_𝔻`, factored once after Jacobi scaling.
///
/// With `work = Some(W)` every pulled-back series is truncated at degree `W`; this
/// trades exactness for speed when `φ` has many small high-order coefficients.
#[derive(Clone, Debug)]
pub struct MappedGram {
    phi: HolomorphicSeries,
    dphi: HolomorphicSeries,
    chi1: HolomorphicSeries,
    chi2: HolomorphicSeries,
    work: Option<usize>,
    pulled: Vec<HolomorphicSeries>,
    weighted: Vec<HolomorphicSeries>,
    scale: Vec<f64>,
    factor: nalgebra::linalg::Cholesky<C64, nalgebra::Dyn>,
    condition: f64,
}

impl MappedGram {
    pub fn new(map: &ConformalMap, degree: usize, work: Option<usize>) -> Result<Self> {
        let d = map.degree();
        let cap = |n: usize| work.map_or(n, |w| n.min(w));
        let mut pulled = Vec::with_capacity(degree + 1);
        let mut p = HolomorphicSeries::constant(C64::new(1.0, 0.0), 0);
        for k in 0..=degree {
            if k > 0 {
                p = p.mul(&map.phi, cap(k * d)).value;
            }
            pulled.push(p.clone());
        }
        let dphi = map.dphi.clone();
        let weighted: Vec<HolomorphicSeries> = pulled
            .iter()
            .map(|b| b.mul(&dphi, cap(b.budget() + dphi.budget())).value)
            .collect();
        let n = weighted.len();
        let mut g = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
        for j in 0..n {
            for k in 0..=j {
                let v = weighted[k].inner_product(&weighted[j]).complex_value;
                g[(j, k)] = v;
                g[(k, j)] = v.conj();
            }
        }
        let scale: Vec<f64> = (0..n).map(|j| 1.0 / g[(j, j)].re.sqrt()).collect();
        for j in 0..n {
            for k in 0..n {
                g[(j, k)] *= scale[j] * scale[k];
            }
        }
        let eig = g.clone().symmetric_eigenvalues();
        let (lo, hi) = eig
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e)));
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if !(condition <= MAX_CONDITION) {
            return Err(Error::IllConditioned { condition });
        }
        let factor = g.cholesky().ok_or(Error::IllConditioned { condition })?;
        Ok(Self {
            phi: map.phi.clone(),
            dphi,
            chi1: map.chi1_pullback(),
            chi2: map.chi2_pullback(),
            work,
            pulled,
            weighted,
            scale,
            factor,
            condition,
        })
    }

    pub fn degree(&self) -> usize {
        self.pulled.len() - 1
    }

    /// Condition estimate of the scaled Gram matrix.
    pub fn condition(&self) -> f64 {
        self.condition
    }

    /// `φ^j`.
    pub fn pulled_basis(&self) -> &[HolomorphicSeries] {
        &self.pulled
    }

    /// `φ′ φ^j`.
    pub fn weighted_basis(&self) -> &[HolomorphicSeries] {
        &self.weighted
    }

    fn cap(&self, n: usize) -> usize {
        self.work.map_or(n, |w| n.min(w))
    }

    /// `a · b`, truncated at the work degree.
    pub fn mul(&self, a: &HolomorphicSeries, b: &HolomorphicSeries) -> HolomorphicSeries {
        a.mul(b, self.cap(a.budget() + b.budget())).value
    }

    /// `ξ∘φ`, truncated at the work degree.
    pub fn pullback(&self, xi: &HolomorphicSeries) -> HolomorphicSeries {
        let d = self.phi.degree().unwrap_or(1).max(1);
        xi.compose(&self.phi, self.cap(xi.budget() * d)).value
    }

    /// `φ′ · h`.
    pub fn times_dphi(&self, h: &HolomorphicSeries) -> HolomorphicSeries {
        self.mul(h, &self.dphi)
    }

    /// Solves `G c = r`; `c` are the coefficients of `ζ^k` on the image.
    pub fn solve(&self, rhs: &[C64]) -> HolomorphicSeries {
        let n = self.pulled.len();
        let r = DVector::from_iterator(n, (0..n).map(|j| rhs[j] * self.scale[j]));
        let c = self.factor.solve(&r);
        HolomorphicSeries::new((0..n).map(|k| c[k] * self.scale[k]).collect())
    }

    /// Projection of a field given by its pullback.
    pub fn project(&self, f: &BivariateField) -> HolomorphicSeries {
        let d = self.dphi.budget() as u32;
        let wf = f.mul_holomorphic(&self.dphi, &Truncation::new(f.max_degree() + d)).value;
        let rhs: Vec<C64> = self.weighted.iter().map(|b| inner_product_holomorphic(&wf, b)).collect();
        self.solve(&rhs)
    }

    /// Projection of a holomorphic pullback.
    pub fn project_holomorphic(&self, f: &HolomorphicSeries) -> HolomorphicSeries {
        let wf = self.times_dphi(f);
        let rhs: Vec<C64> = self.weighted.iter().map(|b| wf.inner_product(b).complex_value).collect();
        self.solve(&rhs)
    }

    /// `∂ᵀ_z ξ` for `ξ` given in the image coordinate.
    ///
    /// Pulling `⟪ξ, η_w⟫_U` back to the disk and using the disk adjoint gives
    /// `⟪W, η∘φ⟫_𝔻` with `W = (z² φ′ · ξ∘φ)_z = χ₁∘φ · ξ∘φ + χ₂∘φ · ξ′∘φ`. The weight
    /// `|φ′|⁻²` cancels against the area element, so the right-hand side of the Gram
    /// system is `⟪W, φ^j⟫_𝔻`.
    pub fn adjoint_dz(&self, xi: &HolomorphicSeries) -> HolomorphicSeries {
        let p = self.pullback(xi);
        let dp = self.pullback(&xi.derivative());
        let w = &self.mul(&self.chi1, &p) + &self.mul(&self.chi2, &dp);
        let rhs: Vec<C64> = self.pulled.iter().map(|b| w.inner_product(b).complex_value).collect();
        self.solve(&rhs)
    }
}

/// `Pr_con` on `U` for a field given by its pullback `f = X∘φ`, projected onto
/// `span{ζ^0, …, ζ^degree}`; coefficients are returned in the image coordinate.
pub fn project_con_mapped(map: &ConformalMap, f: &BivariateField, degree: usize) -> Result<HolomorphicSeries> {
    Ok(MappedGram::new(map, degree, None)?.project(f))
}

/// Same as [`project_con_mapped`] for a holomorphic pullback.
pub fn project_con_mapped_holomorphic(
    map: &ConformalMap,
    f: &HolomorphicSeries,
    degree: usize,
) -> Result<HolomorphicSeries> {
    Ok(MappedGram::new(map, degree, None)?.project_holomorphic(f))
}

/// `∂ᵀ_z ξ` on `U`, projected onto `span{ζ^0, …, ζ^degree}`; see [`MappedGram::adjoint_dz`].
pub fn adjoint_dz_mapped(map: &ConformalMap, xi: &HolomorphicSeries, degree: usize) -> Result<HolomorphicSeries> {
    Ok(MappedGram::new(map, degree, None)?.adjoint_dz(xi))
}
