//! Polar tensor-product quadrature: Gauss–Legendre in the radius, trapezoid in the angle.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::series::C64;

/// Resolution of a polar quadrature grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub radial: usize,
    pub angular: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial: 64,
            angular: 128,
        }
    }
}

impl QuadratureSpec {
    pub fn new(radial: usize, angular: usize) -> Self {
        Self { radial, angular }
    }

    /// Largest polynomial degree in `r` integrated exactly.
    pub fn radial_exact_degree(&self) -> usize {
        2 * self.radial - 1
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n > 0, "Gauss-Legendre needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes `ζ` and area weights of the polar grid on the disk of radius `radius`.
#[derive(Clone, Debug)]
pub struct PolarGrid {
    pub spec: QuadratureSpec,
    pub radii: Vec<f64>,
    /// Radial weights already multiplied by the Jacobian `r`.
    pub radial_weights: Vec<f64>,
    pub angles: Vec<f64>,
    pub angular_weight: f64,
}

impl PolarGrid {
    /// Grid on the annulus `inner ≤ |ζ| ≤ outer` (use `inner = 0` for the disk).
    pub fn annulus(spec: QuadratureSpec, inner: f64, outer: f64) -> Self {
        let (x, w) = gauss_legendre(spec.radial);
        let half = 0.5 * (outer - inner);
        let radii: Vec<f64> = x.iter().map(|&t| inner + half * (t + 1.0)).collect();
        let radial_weights = radii.iter().zip(&w).map(|(&r, &wi)| wi * half * r).collect();
        let angles = (0..spec.angular)
            .map(|j| 2.0 * PI * j as f64 / spec.angular as f64)
            .collect();
        Self {
            spec,
            radii,
            radial_weights,
            angles,
            angular_weight: 2.0 * PI / spec.angular as f64,
        }
    }

    pub fn disk(spec: QuadratureSpec) -> Self {
        Self::annulus(spec, 0.0, 1.0)
    }

    /// `∫ f dA`. Rings are summed in parallel; the reduction order is fixed.
    pub fn integrate<F>(&self, f: F) -> C64
    where
        F: Fn(C64) -> C64 + Sync,
    {
        let rings: Vec<C64> = self
            .radii
            .par_iter()
            .zip(self.radial_weights.par_iter())
            .map(|(&r, &w)| {
                let s = self
                    .angles
                    .iter()
                    .fold(C64::new(0.0, 0.0), |acc, &t| acc + f(C64::from_polar(r, t)));
                s * (w * self.angular_weight)
            })
            .collect();
        rings.into_iter().fold(C64::new(0.0, 0.0), |a, b| a + b)
    }

    /// Integrates several functions at once; `f` fills one value per output slot.
    pub fn integrate_many<F>(&self, outputs: usize, f: F) -> Vec<C64>
    where
        F: Fn(C64, &mut [C64]) + Sync,
    {
        let rings: Vec<Vec<C64>> = self
            .radii
            .par_iter()
            .zip(self.radial_weights.par_iter())
            .map(|(&r, &w)| {
                let mut acc = vec![C64::new(0.0, 0.0); outputs];
                let mut buf = vec![C64::new(0.0, 0.0); outputs];
                for &t in &self.angles {
                    buf.iter_mut().for_each(|b| *b = C64::new(0.0, 0.0));
                    f(C64::from_polar(r, t), &mut buf);
                    for (a, b) in acc.iter_mut().zip(&buf) {
                        *a += *b;
                    }
                }
                let s = w * self.angular_weight;
                acc.into_iter().map(|a| a * s).collect()
            })
            .collect();
        let mut total = vec![C64::new(0.0, 0.0); outputs];
        for ring in rings {
            for (t, v) in total.iter_mut().zip(ring) {
                *t += v;
            }
        }
        total
    }
}

/// `n` equispaced points on the unit circle.
pub fn boundary_samples(n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64))
        .collect()
}

/// `radial × angular` sample grid of the closed unit disk (both the centre and the rim included).
pub fn closed_disk_samples(radial: usize, angular: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(radial * angular);
    for i in 0..radial {
        let r = i as f64 / (radial - 1) as f64;
        for j in 0..angular {
            out.push(C64::from_polar(r, 2.0 * PI * j as f64 / angular as f64));
        }
    }
    out
}
