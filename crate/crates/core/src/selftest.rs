//! Built-in oracle suite behind the `check` subcommand.
//!
//! Each suite compares two independent computations of the same quantity and
//! records the worst discrepancy against its threshold.

use std::fmt;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disk_calculus::{conformal_decompose, project_con_bergman, project_con_gram_oracle, project_con_rule};
use crate::domains::annulus::{annulus_classify, LaurentField};
use crate::domains::conformal_map::{adjoint_dz_mapped, map_inner_product_on_image, ConformalMap};
use crate::domains::hodge::{hodge_catalog, HodgeDomain, SubspaceDim};
use crate::dynamics::geodesic::{geodesic_integrate, GeodesicConfig, GeodesicState};
use crate::dynamics::potential::PotentialSpec;
use crate::dynamics::wave::{wave_integrate, wave_mode_solution, WaveConfig, WaveState};
use crate::quadrature::QuadratureSpec;
use crate::series::{inner_product_with, BivariateField, HolomorphicSeries, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelfTestOptions {
    /// Quadrature used by the Bergman agreement suite.
    pub bergman_quadrature: QuadratureSpec,
    /// Fault injection: the disk moment `π/(k+1)` becomes `π/(k+1+δ)`.
    pub moment_perturbation: f64,
}

impl Default for SelfTestOptions {
    fn default() -> Self {
        Self {
            bergman_quadrature: QuadratureSpec::default(),
            moment_perturbation: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfTestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelfTestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteResult> {
        self.suites.iter().filter(|s| !s.passed)
    }
}

impl fmt::Display for SelfTestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<22} {:>6} {:>12} {:>12}  note", "suite", "result", "measured", "threshold")?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<22} {:>6} {:>12.3e} {:>12.1e}  {}",
                s.name,
                if s.passed { "pass" } else { "FAIL" },
                s.measured,
                s.threshold,
                s.note
            )?;
        }
        Ok(())
    }
}

fn suite(name: &'static str, measured: f64, threshold: f64, note: impl Into<String>) -> SuiteResult {
    SuiteResult {
        name,
        measured,
        threshold,
        passed: measured <= threshold,
        note: note.into(),
    }
}

/// A field with coefficients drawn uniformly from the square `[-1, 1]²` on every `z^m z̄^n`, `m + n ≤ degree`.
pub fn random_field<R: Rng>(rng: &mut R, degree: u32) -> BivariateField {
    let mut terms = Vec::new();
    for m in 0..=degree {
        for n in 0..=degree - m {
            terms.push(((m, n), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
        }
    }
    BivariateField::from_terms(degree, terms).expect("indices within degree")
}

fn mono(m: u32, n: u32) -> BivariateField {
    BivariateField::monomial(m, n, C64::new(1.0, 0.0))
}

fn projection_gram() -> SuiteResult {
    let mut worst = 0.0f64;
    for m in 0..=8 {
        for n in 0..=8 {
            let f = mono(m, n);
            worst = worst.max(project_con_rule(&f).max_abs_diff(&project_con_gram_oracle(&f, 16)));
        }
    }
    suite("projection-gram", worst, 1e-12, "rule vs Gram oracle, m, n <= 8")
}

fn projection_bergman(q: QuadratureSpec) -> SuiteResult {
    let full = q.radial >= 64 && q.angular >= 128;
    let threshold = if full { 1e-6 } else { 1e-3 };
    let mut worst = 0.0f64;
    for m in 0..=8 {
        for n in 0..=8 {
            let f = mono(m, n);
            match project_con_bergman(&f, q) {
                Ok(p) => worst = worst.max(project_con_rule(&f).max_abs_diff(&p)),
                Err(e) => return suite("projection-bergman", f64::INFINITY, threshold, e.to_string()),
            }
        }
    }
    let note = format!(
        "rule vs Bergman quadrature {}x{}{}",
        q.radial,
        q.angular,
        if full { "" } else { ", degraded tolerance" }
    );
    suite("projection-bergman", worst, threshold, note)
}

fn adjoint_disk(delta: f64) -> SuiteResult {
    let moment = |a: u32, b: u32| if a == b { PI / (a as f64 + 1.0 + delta) } else { 0.0 };
    let mut worst = 0.0f64;
    for m in 0..=10usize {
        for n in 0..=10usize {
            let xi = HolomorphicSeries::monomial(m, C64::new(1.0, 0.0), m);
            let eta = HolomorphicSeries::monomial(n, C64::new(1.0, 0.0), n);
            let z2xi = HolomorphicSeries::monomial(m + 2, C64::new(1.0, 0.0), m + 2);
            let lhs = inner_product_with(&xi.to_field(), &eta.derivative().to_field(), moment);
            let rhs = inner_product_with(&z2xi.derivative().to_field(), &eta.to_field(), moment);
            worst = worst.max((lhs.complex_value - rhs.complex_value).norm());
        }
    }
    suite("adjoint-disk", worst, 1e-12, "<xi, eta_z> = <(z^2 xi)_z, eta>, degree <= 10")
}

fn adjoint_mapped() -> SuiteResult {
    let map = match ConformalMap::new(HolomorphicSeries::new(vec![
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.1, 0.0),
    ])) {
        Ok(m) => m,
        Err(e) => return suite("adjoint-mapped", f64::INFINITY, 1e-8, e.to_string()),
    };
    let degree = 6;
    let mut worst = 0.0f64;
    for m in 0..=degree {
        let xi = HolomorphicSeries::monomial(m, C64::new(1.0, 0.0), m);
        let adj = match adjoint_dz_mapped(&map, &xi, degree + 1) {
            Ok(a) => a,
            Err(e) => return suite("adjoint-mapped", f64::INFINITY, 1e-8, e.to_string()),
        };
        for n in 0..=degree {
            let eta = HolomorphicSeries::monomial(n, C64::new(1.0, 0.0), n);
            let lhs = map_inner_product_on_image(&map, &xi, &eta.derivative());
            let rhs = map_inner_product_on_image(&map, &adj, &eta);
            worst = worst.max((lhs.complex_value - rhs.complex_value).norm());
        }
    }
    let mut scaled = 0.0f64;
    if let Ok(s) = ConformalMap::scaling(C64::new(2.0, 0.0)) {
        let one = HolomorphicSeries::constant(C64::new(1.0, 0.0), 0);
        scaled = (map_inner_product_on_image(&s, &one, &one).real_value - 4.0 * PI).abs();
        match adjoint_dz_mapped(&s, &one, 2) {
            Ok(a) => scaled = scaled.max(a.max_abs_diff(&HolomorphicSeries::monomial(1, C64::new(0.5, 0.0), 2))),
            Err(_) => scaled = f64::INFINITY,
        }
    }
    suite(
        "adjoint-mapped",
        worst.max(scaled),
        1e-8,
        "phi = z + 0.1 z^2 up to degree 6; <1,1> on 2D and adjoint of 1",
    )
}

fn decomposition() -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_field(&mut rng, 8);
        let scale = f.norm();
        let d = conformal_decompose(&f);
        let independent = project_con_rule(&f).to_field();
        let agree = (&d.principal - &independent).norm() / scale;
        worst = worst
            .max(d.residual_norm / scale)
            .max(d.max_orthogonality())
            .max(d.multipliers.boundary_trace(256) / scale)
            .max(agree);
    }
    suite(
        "decomposition",
        worst,
        1e-10,
        "reconstruction, orthogonality, multiplier traces, Poisson vs rule",
    )
}

fn catalog() -> SuiteResult {
    use SubspaceDim::*;
    let expected = [
        (HodgeDomain::Disk, Zero, Zero, Zero),
        (HodgeDomain::Annulus, Zero, Finite(1), Finite(1)),
        (HodgeDomain::Torus, Finite(2), Zero, Zero),
        (HodgeDomain::Sphere, Zero, Zero, Zero),
    ];
    let mut mismatches = 0usize;
    for (dom, a3, a4, a5) in expected {
        let e = hodge_catalog(dom);
        if e.dims[2] != a3 || e.dims[3] != a4 || e.dims[4] != a5 {
            mismatches += 1;
        }
    }
    let r_in = 0.5;
    let one_over_z = LaurentField::monomial(-1, 0, C64::new(1.0, 0.0), 2, r_in);
    let i_over_z = LaurentField::monomial(-1, 0, C64::new(0.0, 1.0), 2, r_in);
    match (annulus_classify(&one_over_z, 1e-12), annulus_classify(&i_over_z, 1e-12)) {
        (Ok(a), Ok(b)) => {
            if !(a.a5_coeff == 1.0 && a.a4_coeff == 0.0 && a.a6_part.is_zero()) {
                mismatches += 1;
            }
            if !(b.a4_coeff == 1.0 && b.a5_coeff == 0.0 && b.a6_part.is_zero()) {
                mismatches += 1;
            }
        }
        _ => mismatches += 2,
    }
    suite("catalog", mismatches as f64, 0.0, "catalog table and annulus 1/z, i/z")
}

fn wave() -> [SuiteResult; 2] {
    let state = WaveState::new(HolomorphicSeries::identity(4), HolomorphicSeries::zero(4), 0.0);
    let cfg = WaveConfig {
        dt: 1e-3,
        steps: 10_000,
        sample_stride: 100,
        ..WaveConfig::default()
    };
    let tr = match wave_integrate(&state, &PotentialSpec::Quadratic { c: 0.0 }, &cfg) {
        Ok(t) => t,
        Err(e) => {
            return [
                suite("wave-mode", f64::INFINITY, 1e-4, e.to_string()),
                suite("wave-integral", f64::INFINITY, 1e-6, e.to_string()),
            ]
        }
    };
    let mut err = 0.0f64;
    let mut drift = 0.0f64;
    let i0 = tr.samples[0].integrals.as_ref().map(|r| r.values[1]).unwrap_or(1.0);
    for s in &tr.samples {
        let (x, _) = wave_mode_solution(1, 0.0, C64::new(1.0, 0.0), C64::new(0.0, 0.0), s.state.t);
        err = err.max((s.state.xi.coeff(1) - x).norm());
        if let Some(r) = &s.integrals {
            drift = drift.max((r.values[1] - i0).abs() / i0);
        }
    }
    [
        suite("wave-mode", err, 1e-4, "xi0 = z, c = 0 vs cos(sqrt(2) t) over T = 10"),
        suite("wave-integral", drift, 1e-6, "relative drift of I_1 over T = 10"),
    ]
}

fn geodesic() -> SuiteResult {
    let state = GeodesicState {
        phi: ConformalMap::identity(),
        xi: HolomorphicSeries::constant(C64::new(0.1, 0.0), 6),
        t: 0.0,
    };
    let cfg = GeodesicConfig {
        dt: 1e-3,
        steps: 1000,
        sample_stride: 50,
        degree: Some(6),
        work_degree: Some(12),
        ..GeodesicConfig::default()
    };
    match geodesic_integrate(&state, &cfg) {
        Ok(tr) => suite(
            "geodesic",
            tr.energy_drift(),
            1e-6,
            "relative energy drift, phi0 = id, xi0 = 0.1, T = 1",
        ),
        Err(e) => suite("geodesic", f64::INFINITY, 1e-6, e.to_string()),
    }
}

/// Runs every suite in a fixed order.
pub fn run_self_test(opts: &SelfTestOptions) -> SelfTestReport {
    let mut suites = vec![
        projection_gram(),
        projection_bergman(opts.bergman_quadrature),
        adjoint_disk(opts.moment_perturbation),
        adjoint_mapped(),
        decomposition(),
        catalog(),
    ];
    suites.extend(wave());
    suites.push(geodesic());
    SelfTestReport { suites }
}
