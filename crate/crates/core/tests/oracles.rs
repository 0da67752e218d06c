//! Library results against oracles computed in the test: finite differences and
//! quadrature that share no code path with the closed forms.

use std::f64::consts::PI;

use conformal_hodge::disk_calculus::{bergman_kernel_disk, conformal_decompose, poisson_disk};
use conformal_hodge::domains::forms::d0;
use conformal_hodge::domains::{annulus_inner, map_inner_product_on_image, ConformalMap, LaurentField, OneForm};
use conformal_hodge::dynamics::{
    geodesic_force_pullback, grad_v_compose_holomorphic, stationary_solve, wave_rhs, Domain, PotentialSpec,
    StationaryConfig, WaveState,
};
use conformal_hodge::quadrature::{boundary_samples, PolarGrid, QuadratureSpec};
use conformal_hodge::selftest::random_field;
use conformal_hodge::series::inner_product;
use conformal_hodge::{BivariateField, HolomorphicSeries, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Fourth-order five-point Laplacian.
fn laplacian_fd(f: &BivariateField, z: C64, h: f64) -> C64 {
    let second = |dir: C64| {
        let at = |k: f64| f.evaluate(z + dir * (k * h));
        (-at(2.0) + at(1.0) * 16.0 - at(0.0) * 30.0 + at(-1.0) * 16.0 - at(-2.0)) / (12.0 * h * h)
    };
    second(c(1.0, 0.0)) + second(c(0.0, 1.0))
}

fn interior_points() -> Vec<C64> {
    let mut pts = Vec::new();
    for i in 1..6 {
        for j in 0..12 {
            pts.push(C64::from_polar(0.15 * i as f64, 2.0 * PI * j as f64 / 12.0 + 0.1 * i as f64));
        }
    }
    pts
}

#[test]
fn poisson_matches_finite_differences() {
    let rhs = BivariateField::monomial(1, 1, c(16.0, 0.0));
    let f = poisson_disk(&rhs);
    let expected = BivariateField::from_terms(4, [((0, 0), c(-1.0, 0.0)), ((2, 2), c(1.0, 0.0))]).unwrap();
    assert!((&f - &expected).max_abs_coeff() < 1e-15);
    for z in interior_points() {
        let err = (laplacian_fd(&f, z, 1e-2) - rhs.evaluate(z)).norm();
        assert!(err < 1e-6, "at {z}: {err}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let rhs = random_field(&mut rng, 3);
        let f = poisson_disk(&rhs);
        for z in interior_points() {
            let err = (laplacian_fd(&f, z, 1e-2) - rhs.evaluate(z)).norm();
            assert!(err < 1e-6, "at {z}: {err}");
        }
        for z in boundary_samples(64) {
            assert!(f.evaluate(z).norm() < 1e-12);
        }
    }
}

#[test]
fn green_identity_by_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = PolarGrid::disk(QuadratureSpec::new(32, 64));
    for _ in 0..5 {
        let gamma = random_field(&mut rng, 4).real_part();
        let beta = OneForm::new(random_field(&mut rng, 4).real_part(), random_field(&mut rng, 4).real_part());
        let dg = d0(&gamma);
        let lhs = dg.l2_inner(&beta) + inner_product(&gamma, &beta.delta()).real_value;
        let interior = grid
            .integrate(|z| {
                let (gx, gy) = dg.evaluate(z);
                let (a, b) = beta.evaluate(z);
                c(gx * a + gy * b + gamma.evaluate(z).re * beta.delta().evaluate(z).re, 0.0)
            })
            .re;
        let n = 512;
        let boundary: f64 = boundary_samples(n)
            .into_iter()
            .map(|z| gamma.evaluate(z).re * beta.normal_trace(z))
            .sum::<f64>()
            * (2.0 * PI / n as f64);
        assert!((lhs - interior).abs() < 1e-10, "{lhs} vs {interior}");
        assert!((lhs - boundary).abs() < 1e-10, "{lhs} vs {boundary}");
    }
}

#[test]
fn mapped_area_and_inner_products() {
    let phi = HolomorphicSeries::new(vec![c(0.1, 0.0), c(1.0, 0.0), c(0.1, 0.05), c(0.0, 0.02)]);
    let map = ConformalMap::new(phi.clone()).unwrap();
    let one = HolomorphicSeries::constant(c(1.0, 0.0), 0);
    let area: f64 = phi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| k as f64 * a.norm_sqr())
        .sum::<f64>()
        * PI;
    assert!((map_inner_product_on_image(&map, &one, &one).real_value - area).abs() < 1e-13);

    let grid = PolarGrid::disk(QuadratureSpec::new(48, 96));
    let dphi = phi.derivative();
    let xi = HolomorphicSeries::new(vec![c(0.3, 0.1), c(0.0, -1.0), c(0.5, 0.0)]);
    let eta = HolomorphicSeries::new(vec![c(1.0, 0.0), c(0.2, 0.2)]);
    let quad = grid.integrate(|z| {
        let w = phi.evaluate(z);
        xi.evaluate(w) * eta.evaluate(w).conj() * dphi.evaluate(z).norm_sqr()
    });
    let closed = map_inner_product_on_image(&map, &xi, &eta).complex_value;
    assert!((closed - quad).norm() < 1e-12, "{closed} vs {quad}");
}

#[test]
fn bergman_kernel_reproduces_holomorphic_functions() {
    let grid = PolarGrid::disk(QuadratureSpec::new(64, 128));
    let h = HolomorphicSeries::new(vec![c(0.5, 0.0), c(0.0, 1.0), c(-0.3, 0.2), c(0.1, 0.0)]);
    for &z in &[c(0.0, 0.0), c(0.3, 0.1), c(-0.2, -0.4)] {
        // h(z) = ∫ K(z, ζ) h(ζ) dA(ζ) with K(z, ζ) = 1 / (π (1 − z ζ̄)²).
        let v = grid.integrate(|zeta| bergman_kernel_disk(zeta, z) * h.evaluate(zeta));
        assert!((v - h.evaluate(z)).norm() < 1e-8, "at {z}: {v} vs {}", h.evaluate(z));
    }
}

#[test]
fn annulus_inner_product_by_quadrature() {
    let r_in = 0.4;
    let grid = PolarGrid::annulus(QuadratureSpec::new(48, 96), r_in, 1.0);
    let f = LaurentField::from_terms(3, r_in, [((-1, 0), c(1.0, 0.5)), ((0, -2), c(0.3, 0.0)), ((2, 1), c(0.0, 1.0))]).unwrap();
    let g = LaurentField::from_terms(3, r_in, [((-1, -3), c(0.1, 0.1)), ((-1, 0), c(0.0, 1.0)), ((1, 0), c(2.0, 0.0))]).unwrap();
    let quad = grid.integrate(|z| f.evaluate(z) * g.evaluate(z).conj());
    let closed = annulus_inner(&f, &g).complex_value;
    assert!((quad - closed).norm() < 1e-10, "{quad} vs {closed}");
    let norm_sq = annulus_inner(&LaurentField::monomial(-1, 0, c(1.0, 0.0), 1, r_in), &LaurentField::monomial(-1, 0, c(1.0, 0.0), 1, r_in));
    assert!((norm_sq.real_value - 2.0 * PI * (1.0 / r_in).ln()).abs() < 1e-13);
}

#[test]
fn stationary_points_are_wave_equilibria() {
    let v = PotentialSpec::from_xy(&[(2, 0, 1.0), (0, 2, 0.5), (4, 0, 0.25)]).unwrap();
    let init = HolomorphicSeries::new(vec![c(0.02, 0.01), c(0.1, 0.0), c(0.0, 0.03), c(0.01, 0.0)]);
    let sol = stationary_solve(&v, &init, &StationaryConfig::default(), &Domain::Disk).unwrap();
    assert!(sol.converged, "residual {}", sol.residual_norm);
    let budget = sol.xi.budget();
    let acc = wave_rhs(&WaveState::new(sol.xi.clone(), HolomorphicSeries::zero(budget), 0.0), &v).unwrap();
    assert!(acc.norm() <= 1e-10, "acceleration {}", acc.norm());
    let quad = PotentialSpec::Quadratic { c: -2.0 };
    let init = HolomorphicSeries::new(vec![c(0.02, 0.0), c(1.0, 0.0), c(0.05, 0.0)]);
    let sol = stationary_solve(&quad, &init, &StationaryConfig::default(), &Domain::Disk).unwrap();
    let acc = wave_rhs(&WaveState::new(sol.xi.clone(), HolomorphicSeries::zero(2), 0.0), &quad).unwrap();
    assert!(acc.norm() <= 1e-10);
    assert!((sol.xi.coeff(1) - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn multipliers_recovered_from_unprojected_forces() {
    let xi = HolomorphicSeries::new(vec![c(0.1, 0.0), c(0.05, 0.02), c(0.0, 0.04)]);
    let v = PotentialSpec::from_xy(&[(2, 2, 1.0), (3, 0, 0.5)]).unwrap();
    let forces = [
        grad_v_compose_holomorphic(&v, &xi, 16).value,
        geodesic_force_pullback(&ConformalMap::identity(), &xi, 4).unwrap(),
    ];
    for f in &forces {
        let scale = f.norm();
        let d = conformal_decompose(f);
        assert!(d.residual_norm <= 1e-10 * scale);
        assert!(d.multipliers.boundary_trace(256) <= 1e-10 * scale);
        let rebuilt = &(&d.components[0] + &d.components[1]) + &d.components[2];
        assert!((f - &rebuilt).norm() <= 1e-10 * scale);
    }
}
