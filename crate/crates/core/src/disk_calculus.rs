//! Conformal projection, adjoint derivative and orthogonal decompositions on the unit disk.
//!
//! Three independent routes compute the projection onto conformal fields:
//! the closed-form monomial rule, a Gram/least-squares projection built from
//! exact inner products, and numerical integration against the Bergman kernel
//! `K(z, ζ) = 1 / (π (1 − z̄ζ)²)`.
//!
//! The decompositions recover their Dirichlet multipliers with an exact
//! polynomial Poisson solver ([`poisson_disk`]).

use std::f64::consts::PI;

use crate::domains::forms::{contract_area_form, PlanarField};
use crate::error::{Error, Result};
use crate::quadrature::{boundary_samples, closed_disk_samples, PolarGrid, QuadratureSpec};
use crate::series::{
    inner_product, inner_product_holomorphic, monomial_norm_sq, BivariateField, HolomorphicSeries,
    Truncated, Truncation, C64,
};

const I: C64 = C64::new(0.0, 1.0);

/// `Pr_con(z^m z̄^n) = (m−n+1)/(m+1) z^(m−n)` for `m ≥ n`, else 0, extended linearly.
pub fn project_con_rule(f: &BivariateField) -> HolomorphicSeries {
    let budget = f
        .terms()
        .filter(|&((m, n), _)| m >= n)
        .map(|((m, n), _)| (m - n) as usize)
        .max()
        .unwrap_or(0);
    let mut out = HolomorphicSeries::zero(budget);
    for ((m, n), c) in f.terms() {
        if m >= n {
            let k = (m - n) as usize;
            out.coeffs_mut()[k] += c * ((m - n + 1) as f64 / (m + 1) as f64);
        }
    }
    out
}

/// Least-squares projection onto `span{1, z, …, z^degree}` from exact inner products.
///
/// The Gram matrix of the monomials is diagonal, `⟪z^k, z^k⟫ = π/(k+1)`.
pub fn project_con_gram_oracle(f: &BivariateField, degree: usize) -> HolomorphicSeries {
    let mut out = HolomorphicSeries::zero(degree);
    for k in 0..=degree {
        let basis = HolomorphicSeries::monomial(k, C64::new(1.0, 0.0), k);
        let rhs = inner_product_holomorphic(f, &basis);
        out.coeffs_mut()[k] = rhs / monomial_norm_sq(k);
    }
    out
}

/// Bergman kernel of the unit disk.
pub fn bergman_kernel_disk(z: C64, zeta: C64) -> C64 {
    let d = C64::new(1.0, 0.0) - z.conj() * zeta;
    C64::new(1.0 / PI, 0.0) / (d * d)
}

/// Projection by quadrature against the Bergman kernel.
///
/// Expanding `conj K(z, ζ) = Σ (k+1)/π z^k ζ̄^k` turns `⟪f, K(z, ·)⟫` into the
/// coefficients `(k+1)/π ∫ f ζ̄^k dA`. The output budget is `max(m − n)` over the
/// terms of `f`. Angular aliasing is reported as an error; radial
/// under-resolution only costs accuracy.
pub fn project_con_bergman(f: &BivariateField, quadrature: QuadratureSpec) -> Result<HolomorphicSeries> {
    let budget = f
        .terms()
        .map(|((m, n), _)| m as i64 - n as i64)
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    for ((m, n), _) in f.terms() {
        for k in 0..=budget as i64 {
            let freq = m as i64 - n as i64 - k;
            if freq != 0 && freq.unsigned_abs() as usize >= quadrature.angular {
                return Err(Error::UnderResolved {
                    radial: quadrature.radial,
                    angular: quadrature.angular,
                    frequency: freq,
                });
            }
        }
    }
    if let Some(d) = f.degree() {
        if d as usize + budget + 1 > quadrature.radial_exact_degree() {
            log::debug!(
                "Bergman quadrature {}x{} under-resolves radial degree {}",
                quadrature.radial,
                quadrature.angular,
                d as usize + budget + 1
            );
        }
    }
    let grid = PolarGrid::disk(quadrature);
    let moments = grid.integrate_many(budget + 1, |zeta, out| {
        let v = f.evaluate(zeta);
        let zb = zeta.conj();
        let mut p = C64::new(1.0, 0.0);
        for slot in out.iter_mut() {
            *slot = v * p;
            p *= zb;
        }
    });
    Ok(HolomorphicSeries::new(
        moments
            .into_iter()
            .enumerate()
            .map(|(k, m)| m * ((k as f64 + 1.0) / PI))
            .collect(),
    ))
}

/// `∂ᵀ_z h = (z² h)_z`, i.e. `a_m z^m ↦ (m+2) a_m z^(m+1)`, truncated at `max_degree`.
pub fn adjoint_dz_disk(h: &HolomorphicSeries, max_degree: usize) -> Truncated<HolomorphicSeries> {
    let mut out = vec![C64::new(0.0, 0.0); h.budget() + 2];
    for (m, &a) in h.coeffs().iter().enumerate() {
        out[m + 1] = a * (m as f64 + 2.0);
    }
    HolomorphicSeries::new(out)
        .resized(max_degree)
        .warn_above(0.0, "disk adjoint derivative")
}

/// Dirichlet problem `ΔF = rhs` in the disk, `F = 0` on the unit circle, solved exactly.
///
/// The particular solution maps `z^m z̄^n ↦ z^(m+1) z̄^(n+1) / (4(m+1)(n+1))`.
/// On the circle `z^a z̄^b = e^{i(a−b)θ}`, so the boundary trace is a trigonometric
/// polynomial whose harmonic extension `z^(a−b)` or `z̄^(b−a)` is subtracted.
pub fn poisson_disk(rhs: &BivariateField) -> BivariateField {
    let mut particular = BivariateField::zero(rhs.max_degree() + 2);
    for ((m, n), c) in rhs.terms() {
        let s = 4.0 * (m as f64 + 1.0) * (n as f64 + 1.0);
        particular.accumulate(m + 1, n + 1, c / s);
    }
    let mut out = particular.clone();
    for ((a, b), c) in particular.terms() {
        if a >= b {
            out.accumulate(a - b, 0, -c);
        } else {
            out.accumulate(0, b - a, -c);
        }
    }
    out
}

/// Reflection gradient `grad̄F = F_x − i F_y = 2∂_z F`.
pub fn grad_bar(f: &BivariateField) -> BivariateField {
    f.d_z().scale_real(2.0)
}

/// Reflection skew gradient `sgrad̄G = G_y + i G_x = 2i ∂_z G`.
pub fn sgrad_bar(g: &BivariateField) -> BivariateField {
    g.d_z().scale(C64::new(0.0, 2.0))
}

/// Ordinary gradient `F_x + i F_y = 2∂_z̄ F`.
pub fn grad(f: &BivariateField) -> BivariateField {
    f.d_zbar().scale_real(2.0)
}

/// Real multipliers `F`, `G` vanishing on the boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierPair {
    pub f: BivariateField,
    pub g: BivariateField,
}

impl MultiplierPair {
    /// Largest `|F|`, `|G|` over `samples` equispaced points of the unit circle.
    pub fn boundary_trace(&self, samples: usize) -> f64 {
        boundary_samples(samples)
            .into_iter()
            .map(|z| self.f.evaluate(z).norm().max(self.g.evaluate(z).norm()))
            .fold(0.0, f64::max)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.f.is_real(tol) && self.g.is_real(tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionKind {
    Conformal,
    Helmholtz,
    Symplectic,
}

impl DecompositionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecompositionKind::Conformal => "conformal",
            DecompositionKind::Helmholtz => "helmholtz",
            DecompositionKind::Symplectic => "symplectic",
        }
    }
}

impl std::str::FromStr for DecompositionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conformal" => Ok(Self::Conformal),
            "helmholtz" => Ok(Self::Helmholtz),
            "symplectic" => Ok(Self::Symplectic),
            other => Err(Error::InvalidConfig(format!("unknown decomposition kind '{other}'"))),
        }
    }
}

/// An L²-orthogonal splitting of a field.
///
/// `components` holds the parts in order: for the conformal kind
/// `[conformal, grad̄F, sgrad̄G]`; for Helmholtz and symplectic kinds
/// `[divergence-free, grad F]`.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub kind: DecompositionKind,
    pub principal: BivariateField,
    pub multipliers: MultiplierPair,
    pub components: Vec<BivariateField>,
    /// L² norm of `f − Σ components`.
    pub residual_norm: f64,
    /// `|⟨a, b⟩| / (‖a‖ ‖b‖)` for every pair of components (0 when either vanishes).
    pub orthogonality: Vec<Vec<f64>>,
    /// Coefficient size of `d(i_ξ ω)` for the symplectic part (symplectic kind only).
    pub closedness_defect: Option<f64>,
}

impl DecompositionResult {
    /// The conformal part as a series (conformal kind only).
    pub fn conformal(&self) -> Option<HolomorphicSeries> {
        match self.kind {
            DecompositionKind::Conformal => self.principal.to_holomorphic(1e-12).ok(),
            _ => None,
        }
    }

    pub fn max_orthogonality(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.orthogonality.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i != j {
                    worst = worst.max(v);
                }
            }
        }
        worst
    }
}

fn orthogonality_matrix(parts: &[BivariateField]) -> Vec<Vec<f64>> {
    let norms: Vec<f64> = parts.iter().map(|p| p.norm()).collect();
    parts
        .iter()
        .enumerate()
        .map(|(i, a)| {
            parts
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    if i == j {
                        1.0
                    } else if norms[i] == 0.0 || norms[j] == 0.0 {
                        0.0
                    } else {
                        inner_product(a, b).real_value.abs() / (norms[i] * norms[j])
                    }
                })
                .collect()
        })
        .collect()
}

/// `f = h + grad̄F + sgrad̄G` with `h` conformal and `F`, `G` real Dirichlet functions.
///
/// Applying `2∂_z̄` gives `ΔF + iΔG = 2∂_z̄ f`, so the multipliers come from two
/// Poisson solves with the real and imaginary parts of the Cauchy–Riemann residual.
pub fn conformal_decompose(f: &BivariateField) -> DecompositionResult {
    let r = f.cr_residual();
    let big_f = poisson_disk(&r.real_part());
    let big_g = poisson_disk(&r.imag_part());
    let gf = grad_bar(&big_f);
    let sg = sgrad_bar(&big_g);
    let h = &(f - &gf) - &sg;
    let residual_norm = (&(&(f - &h) - &gf) - &sg).norm();
    let components = vec![h.clone(), gf, sg];
    DecompositionResult {
        kind: DecompositionKind::Conformal,
        principal: h,
        multipliers: MultiplierPair { f: big_f, g: big_g },
        orthogonality: orthogonality_matrix(&components),
        components,
        residual_norm,
        closedness_defect: None,
    }
}

/// `f = w + grad F` with `div w = 0` and `F = 0` on the boundary.
pub fn helmholtz_decompose(f: &BivariateField) -> DecompositionResult {
    let div = f.div_curl().real_part();
    let big_f = poisson_disk(&div);
    let gradient = grad(&big_f);
    let w = f - &gradient;
    let residual_norm = (&(f - &w) - &gradient).norm();
    let components = vec![w.clone(), gradient];
    DecompositionResult {
        kind: DecompositionKind::Helmholtz,
        principal: w,
        multipliers: MultiplierPair {
            f: big_f,
            g: BivariateField::zero(0),
        },
        orthogonality: orthogonality_matrix(&components),
        components,
        residual_norm,
        closedness_defect: None,
    }
}

/// Symplectic splitting `X = X_ω ⊕ grad F₀`. On a flat planar domain the area form is
/// the symplectic form, so the parts coincide with [`helmholtz_decompose`]; in addition
/// `d(i_ξ ω)` of the symplectic part is evaluated and must vanish.
pub fn symplectic_decompose(f: &BivariateField) -> DecompositionResult {
    let mut out = helmholtz_decompose(f);
    let contraction = contract_area_form(&out.principal);
    out.closedness_defect = Some(PlanarField::max_abs_coeff(&contraction.d()));
    out.kind = DecompositionKind::Symplectic;
    out
}

/// Outcome of comparing `Pr_con(ξ)` with `Pr_con(ψ̄ ξ)` for a nonvanishing conformal `ψ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionPropertyReport {
    pub norm_projection: f64,
    pub norm_weighted_projection: f64,
    pub min_abs_psi: f64,
    /// Both norms `≤ tol`, or both `> tol`.
    pub consistent: bool,
    pub both_vanish: bool,
}

/// Checks that `Pr_con(f) = 0` exactly when `Pr_con(ψ̄ f) = 0`.
///
/// `ψ` must not vanish on a 64×128 sample grid of the closed disk; the margin is
/// `1e-8 · max(1, max|ψ|)`.
pub fn projection_property_check(
    f: &BivariateField,
    psi: &HolomorphicSeries,
    tol: f64,
) -> Result<ProjectionPropertyReport> {
    let samples = closed_disk_samples(64, 128);
    let (min_abs, max_abs) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &z| {
        let v = psi.evaluate(z).norm();
        (lo.min(v), hi.max(v))
    });
    if min_abs <= 1e-8 * max_abs.max(1.0) {
        return Err(Error::WeightVanishes { min_abs });
    }
    let weighted = psi
        .conj_field()
        .mul(f, &Truncation::new(psi.budget() as u32 + f.max_degree()))
        .value;
    let a = project_con_rule(f).norm();
    let b = project_con_rule(&weighted).norm();
    let both_vanish = a <= tol && b <= tol;
    Ok(ProjectionPropertyReport {
        norm_projection: a,
        norm_weighted_projection: b,
        min_abs_psi: min_abs,
        consistent: both_vanish || (a > tol && b > tol),
        both_vanish,
    })
}

/// `f − Pr_con(f)` paired against `z^k`, used by tests of the projection residual.
pub fn projection_residual_pairings(f: &BivariateField, degree: usize) -> Vec<C64> {
    let p = project_con_rule(f).to_field();
    let r = f - &p;
    (0..=degree)
        .map(|k| inner_product_holomorphic(&r, &HolomorphicSeries::monomial(k, C64::new(1.0, 0.0), k)))
        .collect()
}

/// Rotation by a right angle, `J f = i f`.
pub fn rotate(f: &BivariateField) -> BivariateField {
    f.scale(I)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn mono(m: u32, n: u32) -> BivariateField {
        BivariateField::monomial(m, n, c(1.0))
    }

    #[test]
    fn rule_examples() {
        let p = project_con_rule(&mono(2, 1));
        assert!((p.coeff(1) - c(2.0 / 3.0)).norm() < 1e-15);
        assert_eq!(p.degree(), Some(1));
        let p = project_con_rule(&mono(1, 1));
        assert!((p.coeff(0) - c(0.5)).norm() < 1e-15);
        assert!(project_con_rule(&BivariateField::zbar()).is_zero());
    }

    #[test]
    fn gram_oracle_examples() {
        let p = project_con_gram_oracle(&mono(2, 1), 4);
        // (π/3) / (π/2)
        assert!((p.coeff(1) - c(2.0 / 3.0)).norm() < 1e-15);
        let h = HolomorphicSeries::new(vec![c(1.0), C64::new(0.0, 2.0), c(-3.0)]);
        assert!(project_con_gram_oracle(&h.to_field(), 2).max_abs_diff(&h) < 1e-15);
        assert!(project_con_gram_oracle(&BivariateField::zbar(), 6).is_zero());
    }

    #[test]
    fn bergman_examples() {
        for zeta in [c(0.3), C64::new(-0.2, 0.7), C64::new(0.0, -0.99)] {
            assert!((bergman_kernel_disk(c(0.0), zeta) - c(1.0 / PI)).norm() < 1e-15);
        }
        let q = QuadratureSpec::new(64, 128);
        let p = project_con_bergman(&mono(1, 1), q).unwrap();
        assert!((p.coeff(0) - c(0.5)).norm() < 1e-6);
        let p = project_con_bergman(&mono(0, 2), q).unwrap();
        assert!(p.max_abs_coeff() < 1e-6);
    }

    #[test]
    fn bergman_reports_aliasing() {
        let f = mono(0, 20);
        let err = project_con_bergman(&(&f + &mono(20, 0)), QuadratureSpec::new(8, 16));
        assert!(matches!(err, Err(Error::UnderResolved { .. })));
    }

    #[test]
    fn adjoint_examples() {
        let one = HolomorphicSeries::constant(c(1.0), 0);
        let a = adjoint_dz_disk(&one, 16).value;
        assert_eq!(a.coeff(1), c(2.0));
        // ⟪1, (z)_z⟫ = π = ⟪2z, z⟫
        let lhs = one.inner_product(&HolomorphicSeries::constant(c(1.0), 0)).complex_value;
        let rhs = a.inner_product(&HolomorphicSeries::identity(1)).complex_value;
        assert!((lhs - rhs).norm() < 1e-15);
        assert!((lhs - c(PI)).norm() < 1e-15);
        for n in 0..8 {
            let a = adjoint_dz_disk(&HolomorphicSeries::monomial(n, c(1.0), n), 16).value;
            assert_eq!(a.coeff(n + 1), c(n as f64 + 2.0));
        }
        assert!(adjoint_dz_disk(&HolomorphicSeries::zero(4), 16).value.is_zero());
    }

    #[test]
    fn adjoint_truncation_reports_overflow() {
        let a = adjoint_dz_disk(&HolomorphicSeries::monomial(4, c(1.0), 4), 4);
        assert!(a.dropped_norm > 0.0);
    }

    #[test]
    fn poisson_examples() {
        let f = poisson_disk(&BivariateField::constant(c(4.0), 0));
        assert!((&f - &(&mono(1, 1) - &BivariateField::constant(c(1.0), 2))).max_abs_coeff() < 1e-15);
        assert!(poisson_disk(&BivariateField::zero(4)).is_zero());
        let f = poisson_disk(&mono(1, 1).scale_real(16.0));
        let expect = &mono(2, 2) - &BivariateField::constant(c(1.0), 4);
        assert!((&f - &expect).max_abs_coeff() < 1e-15);
    }

    #[test]
    fn gradient_examples() {
        let f = &mono(1, 1) - &BivariateField::constant(c(1.0), 2);
        assert!((&grad_bar(&f) - &BivariateField::zbar().scale_real(2.0)).max_abs_coeff() < 1e-15);
        assert!((&sgrad_bar(&f) - &BivariateField::zbar().scale(C64::new(0.0, 2.0))).max_abs_coeff() < 1e-15);
        assert!(grad_bar(&BivariateField::constant(c(3.0), 0)).is_zero());
    }

    #[test]
    fn conformal_decompose_zbar() {
        let d = conformal_decompose(&BivariateField::zbar());
        assert!(d.principal.is_zero());
        let expect = (&mono(1, 1) - &BivariateField::constant(c(1.0), 2)).scale_real(0.5);
        assert!((&d.multipliers.f - &expect).max_abs_coeff() < 1e-15);
        assert!(d.multipliers.g.is_zero());
        assert!(d.multipliers.boundary_trace(256) < 1e-15);
    }

    #[test]
    fn conformal_decompose_holomorphic_is_identity() {
        for m in 0..5 {
            let d = conformal_decompose(&mono(m, 0));
            assert_eq!(d.principal, mono(m, 0).truncate(16).value.with_max_degree_at_least(d.principal.max_degree()));
            assert!(d.multipliers.f.is_zero() && d.multipliers.g.is_zero());
        }
    }

    #[test]
    fn conformal_decompose_z_zbar() {
        let f = mono(1, 1);
        let d = conformal_decompose(&f);
        let h = d.conformal().unwrap();
        assert!((h.coeff(0) - c(0.5)).norm() < 1e-15);
        let rest = &d.components[1] + &d.components[2];
        let expect = &f - &BivariateField::constant(c(0.5), 2);
        assert!((&rest - &expect).norm() < 1e-12);
    }

    #[test]
    fn helmholtz_examples() {
        let d = helmholtz_decompose(&BivariateField::z());
        assert!(d.principal.norm() < 1e-15);
        let expect = (&mono(1, 1) - &BivariateField::constant(c(1.0), 2)).scale_real(0.5);
        assert!((&d.multipliers.f - &expect).max_abs_coeff() < 1e-15);
        let iz = BivariateField::z().scale(I);
        let d = helmholtz_decompose(&iz);
        assert!((&d.principal - &iz).norm() < 1e-15);
        assert!(d.multipliers.f.is_zero());
        let d = helmholtz_decompose(&BivariateField::zbar());
        assert!((&d.principal - &BivariateField::zbar()).norm() < 1e-15);
        assert!(d.multipliers.f.is_zero());
    }

    #[test]
    fn symplectic_examples() {
        let iz = BivariateField::z().scale(I);
        let d = symplectic_decompose(&iz);
        assert!((&d.principal - &iz).norm() < 1e-15);
        assert_eq!(d.closedness_defect, Some(0.0));
        assert!(symplectic_decompose(&BivariateField::z()).principal.norm() < 1e-15);
        let d = symplectic_decompose(&BivariateField::zbar());
        assert!((&d.principal - &BivariateField::zbar()).norm() < 1e-15);
    }

    #[test]
    fn projection_property_examples() {
        let psi = HolomorphicSeries::new(vec![c(1.0), c(0.5)]);
        let r = projection_property_check(&BivariateField::zbar(), &psi, 1e-12).unwrap();
        assert!(r.both_vanish && r.consistent);
        let r = projection_property_check(&BivariateField::z(), &HolomorphicSeries::constant(c(1.0), 0), 1e-12)
            .unwrap();
        assert!(r.consistent && !r.both_vanish);
        assert!((r.norm_projection - BivariateField::z().norm()).abs() < 1e-15);
        let r = projection_property_check(&mono(0, 2), &HolomorphicSeries::constant(c(2.0), 0), 1e-12).unwrap();
        assert!(r.both_vanish);
    }

    #[test]
    fn projection_property_rejects_vanishing_weight() {
        let psi = HolomorphicSeries::identity(1);
        let err = projection_property_check(&BivariateField::z(), &psi, 1e-12);
        assert!(matches!(err, Err(Error::WeightVanishes { .. })));
    }
}
