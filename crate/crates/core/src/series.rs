//! Truncated polynomial fields on the unit disk.
//!
//! A planar vector field `u ∂x + v ∂y` is identified with the complex function
//! `f = u + i v` and stored as a finite sum `Σ c_mn z^m z̄^n`. Holomorphic
//! (conformal) fields are the `n = 0` diagonal and have their own dense
//! representation, [`HolomorphicSeries`].
//!
//! All inner products are the exact closed forms on the unit disk,
//!
//! ```text
//! ⟪z^m z̄^n, z^p z̄^q⟫ = ∫ z^(m+q) z̄^(n+p) dA = π / (m+q+1)   if m+q = n+p, else 0,
//! ```
//!
//! conjugate-linear in the second slot.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default global bound on the total degree `m + n`.
pub const DEFAULT_MAX_DEGREE: u32 = 16;

const I: C64 = C64::new(0.0, 1.0);

/// Truncation policy for products: the result keeps terms with `m + n ≤ max_degree`
/// and warns when the L² mass of the discarded terms exceeds `warn_tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    pub max_degree: u32,
    pub warn_tol: f64,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            max_degree: DEFAULT_MAX_DEGREE,
            warn_tol: 1e-12,
        }
    }
}

impl Truncation {
    pub fn new(max_degree: u32) -> Self {
        Self {
            max_degree,
            ..Self::default()
        }
    }
}

/// A value produced by a truncating operation together with the L² norm of
/// everything that was discarded.
#[derive(Clone, Debug)]
pub struct Truncated<T> {
    pub value: T,
    pub dropped_norm: f64,
}

impl<T> Truncated<T> {
    pub fn exact(value: T) -> Self {
        Self {
            value,
            dropped_norm: 0.0,
        }
    }

    pub fn into_inner(self) -> T {
        self.value
    }

    pub(crate) fn warn_above(self, tol: f64, what: &str) -> Self {
        if self.dropped_norm > tol {
            log::warn!(
                "{what}: truncation dropped mass {:.3e} (tolerance {:.1e})",
                self.dropped_norm,
                tol
            );
        }
        self
    }
}

/// Complex and real L² pairings of two fields.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InnerProductValue {
    pub complex_value: C64,
    pub real_value: f64,
}

impl InnerProductValue {
    pub fn new(complex_value: C64) -> Self {
        Self {
            complex_value,
            real_value: complex_value.re,
        }
    }
}

/// `∫_𝔻 z^a z̄^b dA`.
#[inline]
pub fn disk_moment(a: u32, b: u32) -> f64 {
    if a == b {
        PI / (a as f64 + 1.0)
    } else {
        0.0
    }
}

/// Squared L² norm of `z^k` on the disk, `π / (k + 1)`.
#[inline]
pub fn monomial_norm_sq(k: usize) -> f64 {
    PI / (k as f64 + 1.0)
}

/// Finite sum `Σ c_mn z^m z̄^n` with `m + n ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct BivariateField {
    terms: BTreeMap<(u32, u32), C64>,
    max_degree: u32,
}

impl BivariateField {
    pub fn zero(max_degree: u32) -> Self {
        Self {
            terms: BTreeMap::new(),
            max_degree,
        }
    }

    pub fn constant(c: C64, max_degree: u32) -> Self {
        let mut f = Self::zero(max_degree);
        f.accumulate(0, 0, c);
        f
    }

    /// `c z^m z̄^n`, with truncation degree `max(m + n, DEFAULT_MAX_DEGREE)`.
    pub fn monomial(m: u32, n: u32, c: C64) -> Self {
        let mut f = Self::zero((m + n).max(DEFAULT_MAX_DEGREE));
        f.accumulate(m, n, c);
        f
    }

    pub fn z() -> Self {
        Self::monomial(1, 0, C64::new(1.0, 0.0))
    }

    pub fn zbar() -> Self {
        Self::monomial(0, 1, C64::new(1.0, 0.0))
    }

    /// Builds a field from `((m, n), c)` pairs; repeated indices are summed.
    pub fn from_terms<It>(max_degree: u32, terms: It) -> Result<Self>
    where
        It: IntoIterator<Item = ((u32, u32), C64)>,
    {
        let mut f = Self::zero(max_degree);
        for ((m, n), c) in terms {
            if m + n > max_degree {
                return Err(Error::IndexOutOfRange {
                    m: m as i64,
                    n: n as i64,
                    max_degree: max_degree as i64,
                });
            }
            f.accumulate(m, n, c);
        }
        Ok(f)
    }

    pub(crate) fn accumulate(&mut self, m: u32, n: u32, c: C64) {
        debug_assert!(m + n <= self.max_degree);
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let slot = self.terms.entry((m, n)).or_insert(C64::new(0.0, 0.0));
        *slot += c;
        if *slot == C64::new(0.0, 0.0) {
            self.terms.remove(&(m, n));
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Highest total degree actually present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(m, n)| m + n).max()
    }

    pub fn coeff(&self, m: u32, n: u32) -> C64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    /// Nonzero terms in lexicographic `(m, n)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), C64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Raises the truncation bound without touching coefficients.
    pub fn with_max_degree_at_least(mut self, d: u32) -> Self {
        self.max_degree = self.max_degree.max(d);
        self
    }

    /// Drops every term with `m + n > max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Truncated<Self> {
        let mut kept = Self::zero(max_degree);
        let mut dropped = Self::zero(self.max_degree);
        for (&(m, n), &c) in &self.terms {
            if m + n <= max_degree {
                kept.accumulate(m, n, c);
            } else {
                dropped.accumulate(m, n, c);
            }
        }
        Truncated {
            value: kept,
            dropped_norm: dropped.norm(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (&(m, n), &c) in &self.terms {
            out.accumulate(m, n, c * s);
        }
        out
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Pointwise complex conjugate: `(m, n) ↦ (n, m)` with conjugated coefficients.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (&(m, n), &c) in &self.terms {
            out.accumulate(n, m, c.conj());
        }
        out
    }

    /// Product truncated at `min(deg f + deg g, trunc.max_degree)`.
    pub fn mul(&self, rhs: &Self, trunc: &Truncation) -> Truncated<Self> {
        let cap = (self.max_degree + rhs.max_degree).min(trunc.max_degree);
        let mut out = Self::zero(cap);
        let mut dropped = Self::zero(self.max_degree + rhs.max_degree);
        for (&(m, n), &a) in &self.terms {
            for (&(p, q), &b) in &rhs.terms {
                let (mm, nn) = (m + p, n + q);
                if mm + nn <= cap {
                    out.accumulate(mm, nn, a * b);
                } else {
                    dropped.accumulate(mm, nn, a * b);
                }
            }
        }
        Truncated {
            value: out,
            dropped_norm: dropped.norm(),
        }
        .warn_above(trunc.warn_tol, "field product")
    }

    /// Multiplication by a holomorphic series, truncated like [`Self::mul`].
    pub fn mul_holomorphic(&self, h: &HolomorphicSeries, trunc: &Truncation) -> Truncated<Self> {
        self.mul(&h.to_field(), trunc)
    }

    /// `∂_z`: `z^m z̄^n ↦ m z^(m−1) z̄^n`.
    pub fn d_z(&self) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (&(m, n), &c) in &self.terms {
            if m > 0 {
                out.accumulate(m - 1, n, c * m as f64);
            }
        }
        out
    }

    /// `∂_z̄`: `z^m z̄^n ↦ n z^m z̄^(n−1)`.
    pub fn d_zbar(&self) -> Self {
        let mut out = Self::zero(self.max_degree);
        for (&(m, n), &c) in &self.terms {
            if n > 0 {
                out.accumulate(m, n - 1, c * n as f64);
            }
        }
        out
    }

    /// `∂_x = ∂_z + ∂_z̄`.
    pub fn d_x(&self) -> Self {
        &self.d_z() + &self.d_zbar()
    }

    /// `∂_y = i (∂_z − ∂_z̄)`.
    pub fn d_y(&self) -> Self {
        (&self.d_z() - &self.d_zbar()).scale(I)
    }

    /// `2 ∂_z̄ f`. Real part `u_x − v_y`, imaginary part `v_x + u_y`; zero iff `f` is conformal.
    pub fn cr_residual(&self) -> Self {
        self.d_zbar().scale_real(2.0)
    }

    /// `2 ∂_z f`. Real part is the divergence `u_x + v_y`, imaginary part the vorticity `v_x − u_y`.
    pub fn div_curl(&self) -> Self {
        self.d_z().scale_real(2.0)
    }

    /// `Re f = (f + f̄)/2` as a (Hermitian) field.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale_real(0.5)
    }

    /// `Im f = (f − f̄)/(2i)` as a (Hermitian) field.
    pub fn imag_part(&self) -> Self {
        (self - &self.conj()).scale(C64::new(0.0, -0.5))
    }

    /// Whether `c_nm = conj(c_mn)` for all terms, up to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms
            .iter()
            .all(|(&(m, n), &c)| (c - self.coeff(n, m).conj()).norm() <= tol)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// L² norm on the unit disk.
    pub fn norm(&self) -> f64 {
        inner_product(self, self).real_value.max(0.0).sqrt()
    }

    /// Horner evaluation: outer recursion in `z̄`, inner in `z`.
    pub fn evaluate(&self, z: C64) -> C64 {
        let Some(deg) = self.degree() else {
            return C64::new(0.0, 0.0);
        };
        let zb = z.conj();
        let d = deg as usize;
        // rows[n][m] dense coefficient triangle
        let mut rows = vec![vec![C64::new(0.0, 0.0); d + 1]; d + 1];
        for (&(m, n), &c) in &self.terms {
            rows[n as usize][m as usize] = c;
        }
        let mut acc = C64::new(0.0, 0.0);
        for row in rows.iter().rev() {
            let inner = row.iter().rev().fold(C64::new(0.0, 0.0), |s, &c| s * z + c);
            acc = acc * zb + inner;
        }
        acc
    }

    /// The `(m, 0)` terms as a series, provided nothing else is present.
    pub fn to_holomorphic(&self, tol: f64) -> Result<HolomorphicSeries> {
        let residual = self.cr_residual().max_abs_coeff();
        if residual > tol {
            return Err(Error::NotHolomorphic { residual });
        }
        let mut coeffs = vec![C64::new(0.0, 0.0); self.max_degree as usize + 1];
        for (&(m, n), &c) in &self.terms {
            if n == 0 {
                coeffs[m as usize] = c;
            }
        }
        Ok(HolomorphicSeries::new(coeffs))
    }
}

/// `⟪f, g⟫ = ∫_𝔻 f ḡ dA`, in closed form.
pub fn inner_product(f: &BivariateField, g: &BivariateField) -> InnerProductValue {
    inner_product_with(f, g, disk_moment)
}

/// Inner product with an arbitrary monomial moment rule `∫ z^a z̄^b dA`.
pub fn inner_product_with<M>(f: &BivariateField, g: &BivariateField, moment: M) -> InnerProductValue
where
    M: Fn(u32, u32) -> f64,
{
    let mut acc = C64::new(0.0, 0.0);
    for (&(m, n), &a) in &f.terms {
        for (&(p, q), &b) in &g.terms {
            // z^m z̄^n · conj(z^p z̄^q) = z^(m+q) z̄^(n+p)
            if m + q == n + p {
                acc += a * b.conj() * moment(m + q, n + p);
            }
        }
    }
    InnerProductValue::new(acc)
}

/// `⟪f, h⟫` for holomorphic `h`; only terms `z^(k+n) z̄^n` of `f` pair with `z^k`.
pub fn inner_product_holomorphic(f: &BivariateField, h: &HolomorphicSeries) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (&(m, n), &a) in &f.terms {
        if m >= n {
            let k = (m - n) as usize;
            if k < h.coeffs.len() {
                acc += a * h.coeffs[k].conj() * disk_moment(m, m);
            }
        }
    }
    acc
}

impl Add for &BivariateField {
    type Output = BivariateField;
    fn add(self, rhs: &BivariateField) -> BivariateField {
        let mut out = self.clone();
        out.max_degree = self.max_degree.max(rhs.max_degree);
        for (&(m, n), &c) in &rhs.terms {
            out.accumulate(m, n, c);
        }
        out
    }
}

impl Sub for &BivariateField {
    type Output = BivariateField;
    fn sub(self, rhs: &BivariateField) -> BivariateField {
        let mut out = self.clone();
        out.max_degree = self.max_degree.max(rhs.max_degree);
        for (&(m, n), &c) in &rhs.terms {
            out.accumulate(m, n, -c);
        }
        out
    }
}

impl Add for BivariateField {
    type Output = BivariateField;
    fn add(self, rhs: BivariateField) -> BivariateField {
        &self + &rhs
    }
}

impl Sub for BivariateField {
    type Output = BivariateField;
    fn sub(self, rhs: BivariateField) -> BivariateField {
        &self - &rhs
    }
}

impl Neg for &BivariateField {
    type Output = BivariateField;
    fn neg(self) -> BivariateField {
        self.scale_real(-1.0)
    }
}

/// Dense Taylor coefficients `a_0 … a_N` of a holomorphic function on the disk.
///
/// The length of the coefficient vector is the degree budget; trailing zeros are kept.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HolomorphicSeries {
    coeffs: Vec<C64>,
}

impl HolomorphicSeries {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn zero(budget: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); budget + 1])
    }

    pub fn constant(c: C64, budget: usize) -> Self {
        let mut s = Self::zero(budget);
        s.coeffs[0] = c;
        s
    }

    /// `c z^k` with budget `max(k, budget)`.
    pub fn monomial(k: usize, c: C64, budget: usize) -> Self {
        let mut s = Self::zero(budget.max(k));
        s.coeffs[k] = c;
        s
    }

    pub fn identity(budget: usize) -> Self {
        Self::monomial(1, C64::new(1.0, 0.0), budget.max(1))
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [C64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Degree budget `N` (the series holds `N + 1` coefficients).
    pub fn budget(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Highest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != C64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Pads with zeros or truncates to budget `n`.
    pub fn resized(&self, n: usize) -> Truncated<Self> {
        let mut coeffs = self.coeffs.clone();
        let dropped: Vec<C64> = if coeffs.len() > n + 1 {
            coeffs.split_off(n + 1)
        } else {
            Vec::new()
        };
        coeffs.resize(n + 1, C64::new(0.0, 0.0));
        let dropped_norm = dropped
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm_sqr() * monomial_norm_sq(n + 1 + j))
            .sum::<f64>()
            .sqrt();
        Truncated {
            value: Self::new(coeffs),
            dropped_norm,
        }
    }

    pub fn to_field(&self) -> BivariateField {
        let mut f = BivariateField::zero(self.budget() as u32);
        for (k, &c) in self.coeffs.iter().enumerate() {
            f.accumulate(k as u32, 0, c);
        }
        f
    }

    /// `conj(h)` as a field in powers of `z̄`.
    pub fn conj_field(&self) -> BivariateField {
        let mut f = BivariateField::zero(self.budget() as u32);
        for (k, &c) in self.coeffs.iter().enumerate() {
            f.accumulate(0, k as u32, c.conj());
        }
        f
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn evaluate_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Complex derivative; the budget shrinks by one (never below zero).
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Antiderivative vanishing at 0 (budget grows by one).
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] = c / (k as f64 + 1.0);
        }
        Self::new(out)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Cauchy product truncated at `max_degree`.
    pub fn mul(&self, rhs: &Self, max_degree: usize) -> Truncated<Self> {
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![C64::new(0.0, 0.0); full];
        for (j, &a) in self.coeffs.iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                out[j + k] += a * b;
            }
        }
        Self::new(out).resized(max_degree)
    }

    /// `self ∘ inner`, truncated at `max_degree`, by Horner's scheme in series arithmetic.
    pub fn compose(&self, inner: &Self, max_degree: usize) -> Truncated<Self> {
        let mut acc = Self::zero(max_degree);
        let mut dropped = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            let t = acc.mul(inner, max_degree);
            dropped = dropped.max(t.dropped_norm);
            acc = t.value;
            acc.coeffs[0] += c;
        }
        Truncated {
            value: acc,
            dropped_norm: dropped,
        }
    }

    /// `⟪self, other⟫` on the disk: `Σ a_k conj(b_k) π/(k+1)`.
    pub fn inner_product(&self, other: &Self) -> InnerProductValue {
        let acc = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(k, (&a, &b))| a * b.conj() * monomial_norm_sq(k))
            .fold(C64::new(0.0, 0.0), |s, x| s + x);
        InnerProductValue::new(acc)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm_sqr() * monomial_norm_sq(k))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference, treating missing coefficients as zero.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &HolomorphicSeries {
    type Output = HolomorphicSeries;
    fn add(self, rhs: &HolomorphicSeries) -> HolomorphicSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HolomorphicSeries::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &HolomorphicSeries {
    type Output = HolomorphicSeries;
    fn sub(self, rhs: &HolomorphicSeries) -> HolomorphicSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        HolomorphicSeries::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Add for HolomorphicSeries {
    type Output = HolomorphicSeries;
    fn add(self, rhs: HolomorphicSeries) -> HolomorphicSeries {
        &self + &rhs
    }
}

impl Sub for HolomorphicSeries {
    type Output = HolomorphicSeries;
    fn sub(self, rhs: HolomorphicSeries) -> HolomorphicSeries {
        &self - &rhs
    }
}

impl Neg for &HolomorphicSeries {
    type Output = HolomorphicSeries;
    fn neg(self) -> HolomorphicSeries {
        self.scale_real(-1.0)
    }
}

impl From<&HolomorphicSeries> for BivariateField {
    fn from(h: &HolomorphicSeries) -> Self {
        h.to_field()
    }
}
