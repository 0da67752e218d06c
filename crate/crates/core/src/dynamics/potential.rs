use crate::error::{Error, Result};
use crate::series::{BivariateField, HolomorphicSeries, Truncated, Truncation, C64};

/// A real potential `V` on the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum PotentialSpec {
    /// `V(z) = c|z|²/2`, so that `grad V ∘ ξ = c ξ`.
    Quadratic { c: f64 },
    /// A real polynomial `V` written in `z`, `z̄`.
    Polynomial(BivariateField),
}

impl PotentialSpec {
    pub fn zero() -> Self {
        Self::Quadratic { c: 0.0 }
    }

    /// Checks that the polynomial is real-valued.
    pub fn polynomial(v: BivariateField) -> Result<Self> {
        if !v.is_real(1e-12 * v.max_abs_coeff().max(1.0)) {
            return Err(Error::InvalidConfig("potential must be real-valued".into()));
        }
        Ok(Self::Polynomial(v))
    }

    /// `V = Σ a_ij x^i y^j` from real coefficients.
    pub fn from_xy(terms: &[(u32, u32, f64)]) -> Result<Self> {
        let degree = terms.iter().map(|&(i, j, _)| i + j).max().unwrap_or(0);
        let trunc = Truncation::new(degree);
        let x = (&BivariateField::z() + &BivariateField::zbar()).scale_real(0.5);
        let y = (&BivariateField::z() - &BivariateField::zbar()).scale(C64::new(0.0, -0.5));
        let mut v = BivariateField::zero(degree);
        for &(i, j, a) in terms {
            let mut t = BivariateField::constant(C64::new(a, 0.0), degree);
            for _ in 0..i {
                t = t.mul(&x, &trunc).value;
            }
            for _ in 0..j {
                t = t.mul(&y, &trunc).value;
            }
            v = &v + &t;
        }
        Self::polynomial(v)
    }

    /// The quadratic constant, if this potential is quadratic.
    pub fn quadratic_c(&self) -> Option<f64> {
        match self {
            Self::Quadratic { c } => Some(*c),
            Self::Polynomial(_) => None,
        }
    }

    /// `grad V = V_x + i V_y = 2∂_z̄ V` as a field.
    pub fn gradient(&self) -> BivariateField {
        match self {
            Self::Quadratic { c } => BivariateField::monomial(1, 0, C64::new(*c, 0.0)),
            Self::Polynomial(v) => v.d_zbar().scale_real(2.0),
        }
    }
}

/// `grad V ∘ ξ`, substituting `z → ξ`, `z̄ → ξ̄` and truncating at `max_degree`.
pub fn grad_v_compose(v: &PotentialSpec, xi: &BivariateField, max_degree: u32) -> Truncated<BivariateField> {
    match v {
        PotentialSpec::Quadratic { c } => xi.scale_real(*c).truncate(max_degree),
        PotentialSpec::Polynomial(_) => {
            let g = v.gradient();
            let trunc = Truncation::new(max_degree);
            let xib = xi.conj();
            let mut out = BivariateField::zero(max_degree);
            let mut dropped = 0.0f64;
            let max_m = g.terms().map(|((m, _), _)| m).max().unwrap_or(0);
            let max_n = g.terms().map(|((_, n), _)| n).max().unwrap_or(0);
            let mut pow_xi = vec![BivariateField::constant(C64::new(1.0, 0.0), max_degree)];
            for _ in 0..max_m {
                let t = pow_xi.last().expect("nonempty").mul(xi, &trunc);
                dropped = dropped.max(t.dropped_norm);
                pow_xi.push(t.value);
            }
            let mut pow_xib = vec![BivariateField::constant(C64::new(1.0, 0.0), max_degree)];
            for _ in 0..max_n {
                let t = pow_xib.last().expect("nonempty").mul(&xib, &trunc);
                dropped = dropped.max(t.dropped_norm);
                pow_xib.push(t.value);
            }
            for ((m, n), c) in g.terms() {
                let t = pow_xi[m as usize].mul(&pow_xib[n as usize], &trunc);
                dropped = dropped.max(t.dropped_norm);
                out = &out + &t.value.scale(c);
            }
            Truncated {
                value: out,
                dropped_norm: dropped,
            }
            .warn_above(trunc.warn_tol, "grad V composition")
        }
    }
}

/// [`grad_v_compose`] for a holomorphic argument.
pub fn grad_v_compose_holomorphic(v: &PotentialSpec, xi: &HolomorphicSeries, max_degree: u32) -> Truncated<BivariateField> {
    grad_v_compose(v, &xi.to_field().with_max_degree_at_least(max_degree), max_degree)
}
