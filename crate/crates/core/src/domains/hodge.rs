//! The six-space Hodge catalog and membership tests for 1-forms.
//!
//! `A₁ = dΩ⁰_D` (exact, Dirichlet potential), `A₂ = δΩ²_N` (co-exact),
//! `A₃` harmonic fields that are neither exact nor co-exact, `A₄` exact harmonic
//! fields with vanishing tangential trace, `A₅` co-exact harmonic fields with
//! vanishing normal trace, and `A₆` harmonic fields that are both exact and co-exact.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::disk_calculus::conformal_decompose;
use crate::domains::annulus::{alpha_zero, LaurentField};
use crate::domains::forms::{d0, delta2, flat_map, sharp_map, OneForm, PlanarField};
use crate::domains::torus::{torus_project_con, TorusField};
use crate::error::Result;
use crate::quadrature::boundary_samples;
use crate::series::{BivariateField, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HodgeDomain {
    Disk,
    Annulus,
    Torus,
    Sphere,
}

impl std::str::FromStr for HodgeDomain {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "disk" => Ok(Self::Disk),
            "annulus" => Ok(Self::Annulus),
            "torus" => Ok(Self::Torus),
            "sphere" => Ok(Self::Sphere),
            other => Err(crate::error::Error::InvalidConfig(format!("unknown domain '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "dim")]
pub enum SubspaceDim {
    Zero,
    Finite(usize),
    Infinite,
}

impl fmt::Display for SubspaceDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceDim::Zero => write!(f, "0"),
            SubspaceDim::Finite(k) => write!(f, "{k}"),
            SubspaceDim::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeCatalogEntry {
    pub domain: HodgeDomain,
    /// Dimensions of `A¹₁ … A¹₆`.
    pub dims: [SubspaceDim; 6],
}

/// Dimensions of the six subspaces of 1-forms on the model domains.
pub fn hodge_catalog(domain: HodgeDomain) -> HodgeCatalogEntry {
    use SubspaceDim::*;
    let dims = match domain {
        HodgeDomain::Disk => [Infinite, Infinite, Zero, Zero, Zero, Infinite],
        HodgeDomain::Annulus => [Infinite, Infinite, Zero, Finite(1), Finite(1), Infinite],
        HodgeDomain::Torus => [Infinite, Infinite, Finite(2), Zero, Zero, Zero],
        HodgeDomain::Sphere => [Infinite, Infinite, Zero, Zero, Zero, Zero],
    };
    HodgeCatalogEntry { domain, dims }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HodgeComponent {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
}

impl HodgeComponent {
    pub const ALL: [HodgeComponent; 6] = [Self::A1, Self::A2, Self::A3, Self::A4, Self::A5, Self::A6];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Present,
    Absent,
    Inconclusive,
}

/// Verdict for a relative size: absent at or below `tol`, present at or above `100·tol`.
pub fn decide(ratio: f64, tol: f64) -> Verdict {
    if ratio <= tol {
        Verdict::Absent
    } else if ratio >= 100.0 * tol {
        Verdict::Present
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub component: HodgeComponent,
    pub verdict: Verdict,
    /// Norm of the component relative to the norm of the form (`None` when not computable).
    pub relative_norm: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub domain: HodgeDomain,
    pub components: Vec<ComponentReport>,
    /// Largest coefficient of `dα` and `δα`.
    pub d_defect: f64,
    pub delta_defect: f64,
    /// Largest tangential and normal boundary traces over 256 samples per boundary circle.
    pub tangential_trace: f64,
    pub normal_trace: f64,
    /// Coordinates along the topological basis forms (annulus only).
    pub a4_coeff: Option<f64>,
    pub a5_coeff: Option<f64>,
}

impl MembershipReport {
    pub fn verdict(&self, c: HodgeComponent) -> Verdict {
        self.components
            .iter()
            .find(|r| r.component == c)
            .map(|r| r.verdict)
            .unwrap_or(Verdict::Absent)
    }

    /// Components judged present.
    pub fn labels(&self) -> Vec<HodgeComponent> {
        self.components
            .iter()
            .filter(|r| r.verdict == Verdict::Present)
            .map(|r| r.component)
            .collect()
    }

    pub fn is_conclusive(&self) -> bool {
        self.components.iter().all(|r| r.verdict != Verdict::Inconclusive)
    }
}

fn traces<F: PlanarField>(alpha: &OneForm<F>, radii: &[f64]) -> (f64, f64) {
    let mut t = 0.0f64;
    let mut n = 0.0f64;
    for &r in radii {
        for z in boundary_samples(256) {
            let z = z * r;
            t = t.max(alpha.tangential_trace(z).abs());
            n = n.max(alpha.normal_trace(z).abs());
        }
    }
    (t, n)
}

fn absent(c: HodgeComponent) -> ComponentReport {
    ComponentReport {
        component: c,
        verdict: Verdict::Absent,
        relative_norm: Some(0.0),
    }
}

/// Splits a polynomial 1-form on the disk into `A₁ ⊕ A₂ ⊕ A₆`.
///
/// With `f = α♯`, the conformal decomposition `f = h + grad̄F + sgrad̄G` gives
/// `α = dF + δ(−G dx∧dy) + h♭`: the potentials vanish on the circle and `h♭` is harmonic.
pub fn hodge_membership_disk(alpha: &OneForm<BivariateField>, tol: f64) -> MembershipReport {
    let f = sharp_map(alpha);
    let dec = conformal_decompose(&f);
    let total = alpha.l2_norm();
    let a1 = d0(&dec.multipliers.f);
    let a2 = delta2(&dec.multipliers.g.scale_real(-1.0));
    let a6 = flat_map(&dec.principal);
    let rel = |x: f64| if total > 0.0 { x / total } else { 0.0 };
    let mk = |c, form: &OneForm<BivariateField>| {
        let r = rel(form.l2_norm());
        ComponentReport {
            component: c,
            verdict: decide(r, tol),
            relative_norm: Some(r),
        }
    };
    let (t, n) = traces(alpha, &[1.0]);
    MembershipReport {
        domain: HodgeDomain::Disk,
        components: vec![
            mk(HodgeComponent::A1, &a1),
            mk(HodgeComponent::A2, &a2),
            absent(HodgeComponent::A3),
            absent(HodgeComponent::A4),
            absent(HodgeComponent::A5),
            mk(HodgeComponent::A6, &a6),
        ],
        d_defect: PlanarField::max_abs_coeff(&alpha.d()),
        delta_defect: PlanarField::max_abs_coeff(&alpha.delta()),
        tangential_trace: t,
        normal_trace: n,
        a4_coeff: None,
        a5_coeff: None,
    }
}

/// Membership of a Laurent 1-form on the annulus.
///
/// `A₁` is present exactly when `δα ≠ 0` and `A₂` exactly when `dα ≠ 0`, since the other
/// spaces are closed and co-closed. `α₀ = d ln(x² + y²)` spans `A₄` and `⋆α₀` spans `A₅`;
/// both are orthogonal to every other space, so the `A₄`/`A₅` coordinates are plain L²
/// projections. The `A₆` remainder is resolved for harmonic input and reported as
/// inconclusive otherwise, because separating it from `A₁ ⊕ A₂` would need Dirichlet
/// potentials with logarithmic terms.
pub fn hodge_membership_annulus(alpha: &OneForm<LaurentField>, tol: f64) -> MembershipReport {
    let r_in = alpha.dx.r_in();
    let (ax, ay) = alpha_zero(r_in);
    let a0 = OneForm::new(ax, ay);
    let s0 = a0.star();
    let norm0 = a0.l2_inner(&a0);
    let total = alpha.l2_norm();
    let rel = |x: f64| if total > 0.0 { x / total } else { 0.0 };

    let d = alpha.d();
    let delta = alpha.delta();
    let scale = alpha.max_abs_coeff().max(f64::MIN_POSITIVE);

    let c4 = alpha.l2_inner(&a0) / norm0;
    let c5 = alpha.l2_inner(&s0) / norm0;
    let part4 = a0.scale(c4);
    let part5 = s0.scale(c5);

    let a1 = decide(PlanarField::max_abs_coeff(&delta) / scale, tol);
    let a2 = decide(PlanarField::max_abs_coeff(&d) / scale, tol);
    let harmonic = a1 == Verdict::Absent && a2 == Verdict::Absent;
    let a6 = if harmonic {
        let rest = alpha.sub(&part4).sub(&part5);
        let r = rel(rest.l2_norm());
        ComponentReport {
            component: HodgeComponent::A6,
            verdict: decide(r, tol),
            relative_norm: Some(r),
        }
    } else {
        ComponentReport {
            component: HodgeComponent::A6,
            verdict: Verdict::Inconclusive,
            relative_norm: None,
        }
    };
    let r4 = rel(part4.l2_norm());
    let r5 = rel(part5.l2_norm());
    let (t, n) = traces(alpha, &[r_in, 1.0]);
    MembershipReport {
        domain: HodgeDomain::Annulus,
        components: vec![
            ComponentReport {
                component: HodgeComponent::A1,
                verdict: a1,
                relative_norm: None,
            },
            ComponentReport {
                component: HodgeComponent::A2,
                verdict: a2,
                relative_norm: None,
            },
            absent(HodgeComponent::A3),
            ComponentReport {
                component: HodgeComponent::A4,
                verdict: decide(r4, tol),
                relative_norm: Some(r4),
            },
            ComponentReport {
                component: HodgeComponent::A5,
                verdict: decide(r5, tol),
                relative_norm: Some(r5),
            },
            a6,
        ],
        d_defect: PlanarField::max_abs_coeff(&d),
        delta_defect: PlanarField::max_abs_coeff(&delta),
        tangential_trace: t,
        normal_trace: n,
        a4_coeff: Some(c4),
        a5_coeff: Some(c5),
    }
}

/// Membership of the 1-form `f_θ dθ + f_φ dφ` on the flat torus.
///
/// Each Fourier mode `(j, k) ≠ 0` splits into its component along `(j, k)`, which is
/// exact, and the perpendicular component, which is co-exact. The constant mode is the
/// harmonic part `A₃` with coordinates `(c_θ, c_φ)` along `dθ`, `dφ`.
pub fn hodge_membership_torus(f: &TorusField, tol: f64) -> TorusMembership {
    let proj = torus_project_con(f);
    let n = f.band();
    let (mut exact, mut coexact, mut d_defect, mut delta_defect) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for j in -n..=n {
        for k in -n..=n {
            if (j, k) == (0, 0) {
                continue;
            }
            let (a, b) = (f.theta_coeff(j, k), f.phi_coeff(j, k));
            let (jf, kf) = (j as f64, k as f64);
            let along = (a * jf + b * kf) / (jf * jf + kf * kf);
            let across = (b * jf - a * kf) / (jf * jf + kf * kf);
            exact += along.norm_sqr() * (jf * jf + kf * kf);
            coexact += across.norm_sqr() * (jf * jf + kf * kf);
            // dα = (∂_θ f_φ − ∂_φ f_θ) dθ∧dφ and δα = ∂_θ f_θ + ∂_φ f_φ, mode by mode.
            let i = C64::new(0.0, 1.0);
            d_defect = d_defect.max((i * (b * jf - a * kf)).norm());
            delta_defect = delta_defect.max((i * (a * jf + b * kf)).norm());
        }
    }
    let harmonic = proj.c_theta * proj.c_theta + proj.c_phi * proj.c_phi;
    let total = exact + coexact + harmonic;
    let rel = |x: f64| if total > 0.0 { (x / total).sqrt() } else { 0.0 };
    let mk = |c, x: f64| {
        let r = rel(x);
        ComponentReport {
            component: c,
            verdict: decide(r, tol),
            relative_norm: Some(r),
        }
    };
    TorusMembership {
        report: MembershipReport {
            domain: HodgeDomain::Torus,
            components: vec![
                mk(HodgeComponent::A1, exact),
                mk(HodgeComponent::A2, coexact),
                mk(HodgeComponent::A3, harmonic),
                absent(HodgeComponent::A4),
                absent(HodgeComponent::A5),
                absent(HodgeComponent::A6),
            ],
            d_defect,
            delta_defect,
            tangential_trace: 0.0,
            normal_trace: 0.0,
            a4_coeff: None,
            a5_coeff: None,
        },
        c_theta: proj.c_theta,
        c_phi: proj.c_phi,
    }
}

/// Torus membership together with the coordinates of the harmonic part along `dθ`, `dφ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusMembership {
    pub report: MembershipReport,
    pub c_theta: f64,
    pub c_phi: f64,
}

/// `α₀ = d ln(x² + y²)` as a Laurent 1-form.
pub fn annulus_alpha(r_in: f64) -> OneForm<LaurentField> {
    let (dx, dy) = alpha_zero(r_in);
    OneForm::new(dx, dy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::C64;

    #[test]
    fn catalog_rows() {
        use SubspaceDim::*;
        assert_eq!(hodge_catalog(HodgeDomain::Disk).dims[3], Zero);
        assert_eq!(hodge_catalog(HodgeDomain::Annulus).dims[3], Finite(1));
        assert_eq!(hodge_catalog(HodgeDomain::Torus).dims[2], Finite(2));
        assert_eq!(hodge_catalog(HodgeDomain::Sphere).dims[2..], [Zero; 4]);
    }

    #[test]
    fn exact_form_with_dirichlet_potential_is_a1() {
        let f = &BivariateField::monomial(1, 1, C64::new(1.0, 0.0)) - &BivariateField::constant(C64::new(1.0, 0.0), 2);
        let r = hodge_membership_disk(&d0(&f), 1e-10);
        assert_eq!(r.labels(), vec![HodgeComponent::A1]);
        assert!(r.is_conclusive());
    }

    #[test]
    fn flat_of_z_is_a6() {
        let r = hodge_membership_disk(&flat_map(&BivariateField::z()), 1e-10);
        assert_eq!(r.labels(), vec![HodgeComponent::A6]);
        assert_eq!(r.d_defect, 0.0);
        assert_eq!(r.delta_defect, 0.0);
    }

    #[test]
    fn torus_modes_split() {
        let one = C64::new(1.0, 0.0);
        let f = TorusField::from_coefficients(2, &[((0, 0), one)], &[]).unwrap();
        let r = hodge_membership_torus(&f, 1e-10);
        assert_eq!(r.report.labels(), vec![HodgeComponent::A3]);
        assert_eq!((r.c_theta, r.c_phi), (1.0, 0.0));
        // cos θ dθ = d(sin θ) is exact; cos θ dφ is co-exact.
        let half = C64::new(0.5, 0.0);
        let f = TorusField::from_coefficients(1, &[((1, 0), half), ((-1, 0), half)], &[]).unwrap();
        assert_eq!(hodge_membership_torus(&f, 1e-10).report.labels(), vec![HodgeComponent::A1]);
        let f = TorusField::from_coefficients(1, &[], &[((1, 0), half), ((-1, 0), half)]).unwrap();
        let r = hodge_membership_torus(&f, 1e-10);
        assert_eq!(r.report.labels(), vec![HodgeComponent::A2]);
        assert_eq!(r.report.delta_defect, 0.0);
    }

    #[test]
    fn log_form_on_annulus_is_a4() {
        let a = annulus_alpha(0.5);
        let r = hodge_membership_annulus(&a, 1e-10);
        assert_eq!(r.labels(), vec![HodgeComponent::A4]);
        assert!((r.a4_coeff.unwrap() - 1.0).abs() < 1e-14);
        assert!(r.tangential_trace < 1e-14);
        let r = hodge_membership_annulus(&a.star(), 1e-10);
        assert_eq!(r.labels(), vec![HodgeComponent::A5]);
        assert!(r.normal_trace < 1e-14);
    }
}
