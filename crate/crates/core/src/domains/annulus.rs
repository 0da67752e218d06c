//! Laurent fields on the annulus `r_in ≤ |z| ≤ 1` and the classification of its
//! harmonic fields.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::series::{InnerProductValue, C64};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Finite sum `Σ c_mn z^m z̄^n` with `|m|, |n| ≤ band` on an annulus.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentField {
    terms: BTreeMap<(i32, i32), C64>,
    band: i32,
    r_in: f64,
}

impl LaurentField {
    pub fn zero(band: i32, r_in: f64) -> Self {
        assert!(r_in > 0.0 && r_in < 1.0, "inner radius must lie in (0, 1)");
        Self {
            terms: BTreeMap::new(),
            band: band.max(0),
            r_in,
        }
    }

    /// `c z^m z̄^n`, with the band widened to hold the indices if needed.
    pub fn monomial(m: i32, n: i32, c: C64, band: i32, r_in: f64) -> Self {
        let mut f = Self::zero(band.max(m.abs()).max(n.abs()), r_in);
        f.accumulate(m, n, c);
        f
    }

    /// Builds a field from terms in lexicographic order; duplicates and out-of-band indices are errors.
    pub fn from_terms<It>(band: i32, r_in: f64, terms: It) -> Result<Self>
    where
        It: IntoIterator<Item = ((i32, i32), C64)>,
    {
        if !(r_in > 0.0 && r_in < 1.0) {
            return Err(Error::InvalidConfig(format!("inner radius {r_in} outside (0, 1)")));
        }
        let mut f = Self::zero(band, r_in);
        let mut last: Option<(i32, i32)> = None;
        for ((m, n), c) in terms {
            if m.abs() > band || n.abs() > band {
                return Err(Error::IndexOutOfRange {
                    m: m as i64,
                    n: n as i64,
                    max_degree: band as i64,
                });
            }
            if let Some(prev) = last {
                if prev == (m, n) {
                    return Err(Error::DuplicateTerm { m: m as i64, n: n as i64 });
                }
                if prev > (m, n) {
                    return Err(Error::UnorderedTerms { m: m as i64, n: n as i64 });
                }
            }
            last = Some((m, n));
            f.accumulate(m, n, c);
        }
        Ok(f)
    }

    fn accumulate(&mut self, m: i32, n: i32, c: C64) {
        if c == ZERO {
            return;
        }
        self.band = self.band.max(m.abs()).max(n.abs());
        let slot = self.terms.entry((m, n)).or_insert(ZERO);
        *slot += c;
        if *slot == ZERO {
            self.terms.remove(&(m, n));
        }
    }

    pub fn band(&self) -> i32 {
        self.band
    }

    pub fn r_in(&self) -> f64 {
        self.r_in
    }

    pub fn coeff(&self, m: i32, n: i32) -> C64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), C64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn map_terms<F>(&self, band: i32, mut f: F) -> Self
    where
        F: FnMut(i32, i32, C64) -> Option<((i32, i32), C64)>,
    {
        let mut out = Self::zero(band, self.r_in);
        for (&(m, n), &c) in &self.terms {
            if let Some(((p, q), v)) = f(m, n, c) {
                out.accumulate(p, q, v);
            }
        }
        out
    }

    /// `z^m z̄^n ↦ m z^(m−1) z̄^n`; the band grows by one when a negative power is differentiated.
    pub fn d_z(&self) -> Self {
        self.map_terms(self.band, |m, n, c| (m != 0).then(|| ((m - 1, n), c * m as f64)))
    }

    pub fn d_zbar(&self) -> Self {
        self.map_terms(self.band, |m, n, c| (n != 0).then(|| ((m, n - 1), c * n as f64)))
    }

    pub fn conj(&self) -> Self {
        self.map_terms(self.band, |m, n, c| Some(((n, m), c.conj())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), &c) in &other.terms {
            out.accumulate(m, n, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), &c) in &other.terms {
            out.accumulate(m, n, -c);
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map_terms(self.band, |m, n, c| Some(((m, n), c * s)))
    }

    /// `2∂_z̄ f`; zero exactly for holomorphic Laurent fields.
    pub fn cr_residual(&self) -> Self {
        self.d_zbar().scale(C64::new(2.0, 0.0))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        annulus_inner(self, self).real_value.max(0.0).sqrt()
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        let zb = z.conj();
        self.terms
            .iter()
            .fold(ZERO, |acc, (&(m, n), &c)| acc + c * z.powi(m) * zb.powi(n))
    }

    /// Holomorphic part: terms with `n = 0`.
    pub fn holomorphic_part(&self) -> Self {
        self.map_terms(self.band, |m, n, c| (n == 0).then_some(((m, n), c)))
    }
}

/// `∫_𝔸 |z|^(2s) dA` over `r_in ≤ |z| ≤ 1`.
pub fn annulus_moment(s: i32, r_in: f64) -> f64 {
    if s == -1 {
        2.0 * PI * (1.0 / r_in).ln()
    } else {
        let p = 2 * s + 2;
        PI * (1.0 - r_in.powi(p)) / (s as f64 + 1.0)
    }
}

/// `⟪f, g⟫ = ∫_𝔸 f ḡ dA` in closed form.
///
/// # Panics
///
/// If the two fields live on annuli with different inner radii.
pub fn annulus_inner(f: &LaurentField, g: &LaurentField) -> InnerProductValue {
    assert!(
        f.r_in == g.r_in,
        "annulus inner product needs a shared inner radius"
    );
    let mut acc = ZERO;
    for (&(m, n), &a) in &f.terms {
        for (&(p, q), &b) in &g.terms {
            if m + q == n + p {
                acc += a * b.conj() * annulus_moment(m + q, f.r_in);
            }
        }
    }
    InnerProductValue::new(acc)
}

/// Coordinates of a holomorphic field along the two topological harmonic directions.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusClassification {
    /// Coefficient of `i/z`.
    pub a4_coeff: f64,
    /// Coefficient of `1/z`.
    pub a5_coeff: f64,
    /// Every other mode.
    pub a6_part: LaurentField,
}

/// Splits the `z⁻¹` coefficient `p + iq` of a holomorphic Laurent field into the A⁵
/// coordinate `p` (along `1/z`) and the A⁴ coordinate `q` (along `i/z`).
///
/// The function `h` is read as the harmonic 1-form `Im(h dz)`, so `i/z` becomes
/// `d ln|z|`, a multiple of `α = d ln(x² + y²)`, and `1/z` becomes `dθ`, a multiple
/// of `⋆α`. The raw coefficients are returned; `‖1/z‖² = ‖i/z‖² = 2π ln(1/r_in)`.
pub fn annulus_classify(h: &LaurentField, tol: f64) -> Result<AnnulusClassification> {
    let residual = h.cr_residual().max_abs_coeff();
    if residual > tol * h.max_abs_coeff().max(1.0) {
        return Err(Error::NotHolomorphic { residual });
    }
    let c = h.coeff(-1, 0);
    let mut rest = h.clone();
    rest.accumulate(-1, 0, -c);
    Ok(AnnulusClassification {
        a4_coeff: c.im,
        a5_coeff: c.re,
        a6_part: rest,
    })
}

/// Orthogonal projection onto holomorphic Laurent modes `z^k`, `|k| ≤ band`.
///
/// The monomials are orthogonal on the annulus, so
/// `Pr(z^m z̄^n) = M(m)/M(m−n) z^(m−n)` with `M(s) = ∫ |z|^(2s) dA`.
/// Modes outside the band are dropped and their number returned.
pub fn annulus_project_con(f: &LaurentField, band: i32) -> (LaurentField, usize) {
    let mut out = LaurentField::zero(band, f.r_in);
    let mut dropped = 0;
    for (&(m, n), &c) in &f.terms {
        let k = m - n;
        if k.abs() > band {
            dropped += 1;
            continue;
        }
        let ratio = annulus_moment(m, f.r_in) / annulus_moment(k, f.r_in);
        out.accumulate(k, 0, c * ratio);
    }
    (out, dropped)
}

/// Components `(dx, dy)` of `α₀ = d ln(x² + y²)`: `2x/r² = 1/z + 1/z̄`, `2y/r² = i/z − i/z̄`.
pub fn alpha_zero(r_in: f64) -> (LaurentField, LaurentField) {
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let dx = LaurentField::monomial(-1, 0, one, 1, r_in).add(&LaurentField::monomial(0, -1, one, 1, r_in));
    let dy = LaurentField::monomial(-1, 0, i, 1, r_in).add(&LaurentField::monomial(0, -1, -i, 1, r_in));
    (dx, dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: f64 = 0.4;

    fn mono(m: i32, n: i32, c: C64) -> LaurentField {
        LaurentField::monomial(m, n, c, 4, R)
    }

    #[test]
    fn inner_product_examples() {
        let one = C64::new(1.0, 0.0);
        let inv = mono(-1, 0, one);
        assert!((annulus_inner(&inv, &inv).real_value - 2.0 * PI * (1.0 / R).ln()).abs() < 1e-14);
        let c = mono(0, 0, one);
        assert!((annulus_inner(&c, &c).real_value - PI * (1.0 - R * R)).abs() < 1e-14);
        assert_eq!(annulus_inner(&mono(1, 0, one), &c).complex_value, ZERO);
    }

    #[test]
    fn classify_examples() {
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let r = annulus_classify(&mono(-1, 0, one), 1e-12).unwrap();
        assert_eq!((r.a4_coeff, r.a5_coeff), (0.0, 1.0));
        assert!(r.a6_part.is_zero());
        let r = annulus_classify(&mono(-1, 0, i), 1e-12).unwrap();
        assert_eq!((r.a4_coeff, r.a5_coeff), (1.0, 0.0));
        let r = annulus_classify(&mono(1, 0, one), 1e-12).unwrap();
        assert_eq!((r.a4_coeff, r.a5_coeff), (0.0, 0.0));
        assert_eq!(r.a6_part, mono(1, 0, one));
        assert!(matches!(
            annulus_classify(&mono(0, 1, one), 1e-12),
            Err(Error::NotHolomorphic { .. })
        ));
    }

    #[test]
    fn derivatives_of_negative_powers() {
        let one = C64::new(1.0, 0.0);
        let d = mono(-1, 0, one).d_z();
        assert_eq!(d.coeff(-2, 0), C64::new(-1.0, 0.0));
        assert!(mono(-3, 0, one).d_zbar().is_zero());
    }

    #[test]
    fn projection_of_modulus_square() {
        let f = mono(1, 1, C64::new(1.0, 0.0));
        let (p, dropped) = annulus_project_con(&f, 4);
        assert_eq!(dropped, 0);
        let expect = annulus_moment(1, R) / annulus_moment(0, R);
        assert!((p.coeff(0, 0).re - expect).abs() < 1e-15);
    }

    #[test]
    fn from_terms_rejects_bad_input() {
        let one = C64::new(1.0, 0.0);
        assert!(LaurentField::from_terms(2, R, [((3, 0), one)]).is_err());
        assert!(LaurentField::from_terms(2, R, [((1, 0), one), ((1, 0), one)]).is_err());
        assert!(LaurentField::from_terms(2, 1.5, [((1, 0), one)]).is_err());
    }
}
