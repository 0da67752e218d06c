//! Band-limited vector fields on the flat torus in angle coordinates `(θ, φ)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::series::C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Components `f_θ ∂_θ + f_φ ∂_φ`, each stored as Fourier coefficients of
/// `e^{i(jθ + kφ)}` for `|j|, |k| ≤ band`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusField {
    band: i32,
    theta: Vec<C64>,
    phi: Vec<C64>,
}

impl TorusField {
    pub fn zero(band: i32) -> Self {
        let side = (2 * band + 1) as usize;
        Self {
            band,
            theta: vec![ZERO; side * side],
            phi: vec![ZERO; side * side],
        }
    }

    /// The constant field `a ∂_θ + b ∂_φ`.
    pub fn constant(a: f64, b: f64, band: i32) -> Self {
        let mut f = Self::zero(band);
        f.set_theta(0, 0, C64::new(a, 0.0));
        f.set_phi(0, 0, C64::new(b, 0.0));
        f
    }

    /// Builds a field from explicit coefficient lists; indices must be within the band
    /// and both components must come out real-valued.
    pub fn from_coefficients(
        band: i32,
        theta: &[((i32, i32), C64)],
        phi: &[((i32, i32), C64)],
    ) -> Result<Self> {
        let mut f = Self::zero(band);
        for (list, is_theta) in [(theta, true), (phi, false)] {
            for &((j, k), c) in list {
                if j.abs() > band || k.abs() > band {
                    return Err(Error::IndexOutOfRange {
                        m: j as i64,
                        n: k as i64,
                        max_degree: band as i64,
                    });
                }
                let idx = f.index(j, k);
                let slot = if is_theta { &mut f.theta[idx] } else { &mut f.phi[idx] };
                if *slot != ZERO {
                    return Err(Error::DuplicateTerm { m: j as i64, n: k as i64 });
                }
                *slot = c;
            }
        }
        if !f.is_real(1e-12) {
            return Err(Error::Format(
                "torus field coefficients must be Hermitian-symmetric".into(),
            ));
        }
        Ok(f)
    }

    fn index(&self, j: i32, k: i32) -> usize {
        let side = 2 * self.band + 1;
        ((j + self.band) * side + (k + self.band)) as usize
    }

    pub fn band(&self) -> i32 {
        self.band
    }

    pub fn theta_coeff(&self, j: i32, k: i32) -> C64 {
        self.theta[self.index(j, k)]
    }

    pub fn phi_coeff(&self, j: i32, k: i32) -> C64 {
        self.phi[self.index(j, k)]
    }

    pub fn set_theta(&mut self, j: i32, k: i32, c: C64) {
        let i = self.index(j, k);
        self.theta[i] = c;
    }

    pub fn set_phi(&mut self, j: i32, k: i32, c: C64) {
        let i = self.index(j, k);
        self.phi[i] = c;
    }

    /// Nonzero coefficients of each component in lexicographic `(j, k)` order.
    pub fn terms(&self) -> (Vec<((i32, i32), C64)>, Vec<((i32, i32), C64)>) {
        let mut t = Vec::new();
        let mut p = Vec::new();
        for j in -self.band..=self.band {
            for k in -self.band..=self.band {
                let (a, b) = (self.theta_coeff(j, k), self.phi_coeff(j, k));
                if a != ZERO {
                    t.push(((j, k), a));
                }
                if b != ZERO {
                    p.push(((j, k), b));
                }
            }
        }
        (t, p)
    }

    /// `c_{−j,−k} = conj(c_{j,k})` for both components.
    pub fn is_real(&self, tol: f64) -> bool {
        (-self.band..=self.band).all(|j| {
            (-self.band..=self.band).all(|k| {
                (self.theta_coeff(j, k) - self.theta_coeff(-j, -k).conj()).norm() <= tol
                    && (self.phi_coeff(j, k) - self.phi_coeff(-j, -k).conj()).norm() <= tol
            })
        })
    }

    pub fn evaluate(&self, theta: f64, phi: f64) -> (f64, f64) {
        let mut a = ZERO;
        let mut b = ZERO;
        for j in -self.band..=self.band {
            for k in -self.band..=self.band {
                let e = C64::from_polar(1.0, j as f64 * theta + k as f64 * phi);
                a += self.theta_coeff(j, k) * e;
                b += self.phi_coeff(j, k) * e;
            }
        }
        (a.re, b.re)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.band, other.band, "band limits differ");
        Self {
            band: self.band,
            theta: self.theta.iter().zip(&other.theta).map(|(a, b)| a - b).collect(),
            phi: self.phi.iter().zip(&other.phi).map(|(a, b)| a - b).collect(),
        }
    }

    /// `∫ (f_θ g_θ + f_φ g_φ) dθ dφ` by Parseval.
    pub fn l2_inner(&self, other: &Self) -> f64 {
        assert_eq!(self.band, other.band, "band limits differ");
        let s: C64 = self
            .theta
            .iter()
            .zip(&other.theta)
            .chain(self.phi.iter().zip(&other.phi))
            .map(|(a, b)| a * b.conj())
            .sum();
        4.0 * PI * PI * s.re
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().chain(&self.phi).all(|c| *c == ZERO)
    }
}

/// Conformal part of a torus field: the translation `c_θ ∂_θ + c_φ ∂_φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusProjection {
    pub c_theta: f64,
    pub c_phi: f64,
    pub residual: TorusField,
}

/// Projects onto the translations, which on the flat torus are the only conformal fields.
pub fn torus_project_con(f: &TorusField) -> TorusProjection {
    let c_theta = f.theta_coeff(0, 0).re;
    let c_phi = f.phi_coeff(0, 0).re;
    let residual = f.sub(&TorusField::constant(c_theta, c_phi, f.band));
    TorusProjection {
        c_theta,
        c_phi,
        residual,
    }
}
