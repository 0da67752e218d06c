//! Exterior calculus of polynomial (or Laurent) forms on a flat chart.
//!
//! Sign conventions: `⋆dx = dy`, `⋆dy = −dx`, `⋆1 = dx∧dy`, and the
//! co-differential is `δ = ⋆d⋆` on both 1-forms and 2-forms of the plane,
//! so that for `α = a dx + b dy`
//!
//! ```text
//! dα = (b_x − a_y) dx∧dy,     δα = a_x + b_y .
//! ```
//!
//! With the reflected flat map `u + iv ↦ u dx − v dy` this gives
//! `δ(f♭) = u_x − v_y` and `d(f♭) = −(v_x + u_y) dx∧dy`, the real and
//! (negated) imaginary parts of `2∂_z̄ f`. Note that with this sign of `δ`
//! Green's formula reads `⟨dγ, β⟩ + ⟨γ, δβ⟩ = ∫_∂ γ ⋆β`.

use crate::domains::annulus::LaurentField;
use crate::series::{inner_product, BivariateField, C64};

const I: C64 = C64::new(0.0, 1.0);

/// Operations shared by the coefficient representations of real functions on a chart.
pub trait PlanarField: Clone {
    fn d_z(&self) -> Self;
    fn d_zbar(&self) -> Self;
    fn conj(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn scale(&self, s: C64) -> Self;
    fn max_abs_coeff(&self) -> f64;
    fn evaluate(&self, z: C64) -> C64;
    /// `∫ f g dA` for real `f`, `g` over the domain the representation lives on.
    fn l2_pairing(&self, other: &Self) -> f64;

    fn d_x(&self) -> Self {
        self.d_z().plus(&self.d_zbar())
    }

    fn d_y(&self) -> Self {
        self.d_z().minus(&self.d_zbar()).scale(I)
    }

    fn real_part(&self) -> Self {
        self.plus(&self.conj()).scale(C64::new(0.5, 0.0))
    }

    fn imag_part(&self) -> Self {
        self.minus(&self.conj()).scale(C64::new(0.0, -0.5))
    }

    fn negate(&self) -> Self {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl PlanarField for BivariateField {
    fn d_z(&self) -> Self {
        BivariateField::d_z(self)
    }
    fn d_zbar(&self) -> Self {
        BivariateField::d_zbar(self)
    }
    fn conj(&self) -> Self {
        BivariateField::conj(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn scale(&self, s: C64) -> Self {
        BivariateField::scale(self, s)
    }
    fn max_abs_coeff(&self) -> f64 {
        BivariateField::max_abs_coeff(self)
    }
    fn evaluate(&self, z: C64) -> C64 {
        BivariateField::evaluate(self, z)
    }
    fn l2_pairing(&self, other: &Self) -> f64 {
        inner_product(self, other).real_value
    }
}

impl PlanarField for LaurentField {
    fn d_z(&self) -> Self {
        LaurentField::d_z(self)
    }
    fn d_zbar(&self) -> Self {
        LaurentField::d_zbar(self)
    }
    fn conj(&self) -> Self {
        LaurentField::conj(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn scale(&self, s: C64) -> Self {
        LaurentField::scale(self, s)
    }
    fn max_abs_coeff(&self) -> f64 {
        LaurentField::max_abs_coeff(self)
    }
    fn evaluate(&self, z: C64) -> C64 {
        LaurentField::evaluate(self, z)
    }
    fn l2_pairing(&self, other: &Self) -> f64 {
        crate::domains::annulus::annulus_inner(self, other).real_value
    }
}

/// `α = a dx + b dy` with real coefficient functions.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<F> {
    pub dx: F,
    pub dy: F,
}

/// A form of any degree on the plane. Two-forms store the coefficient of `dx∧dy`.
#[derive(Clone, Debug, PartialEq)]
pub enum Form<F> {
    Zero(F),
    One(OneForm<F>),
    Two(F),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormOp {
    D,
    Delta,
    Star,
}

impl<F: PlanarField> OneForm<F> {
    pub fn new(dx: F, dy: F) -> Self {
        Self { dx, dy }
    }

    /// `⋆(a dx + b dy) = a dy − b dx`.
    pub fn star(&self) -> Self {
        Self::new(self.dy.negate(), self.dx.clone())
    }

    /// Coefficient of `dx∧dy` in `dα`.
    pub fn d(&self) -> F {
        self.dy.d_x().minus(&self.dx.d_y())
    }

    /// `δα = ⋆d⋆α = a_x + b_y`.
    pub fn delta(&self) -> F {
        self.dx.d_x().plus(&self.dy.d_y())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.dx.plus(&other.dx), self.dy.plus(&other.dy))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.dx.minus(&other.dx), self.dy.minus(&other.dy))
    }

    pub fn scale(&self, s: f64) -> Self {
        let s = C64::new(s, 0.0);
        Self::new(self.dx.scale(s), self.dy.scale(s))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.dx.max_abs_coeff().max(self.dy.max_abs_coeff())
    }

    /// `∫ (a₁a₂ + b₁b₂) dA`.
    pub fn l2_inner(&self, other: &Self) -> f64 {
        self.dx.l2_pairing(&other.dx) + self.dy.l2_pairing(&other.dy)
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_inner(self).max(0.0).sqrt()
    }

    /// Pointwise value `(a, b)`.
    pub fn evaluate(&self, z: C64) -> (f64, f64) {
        (self.dx.evaluate(z).re, self.dy.evaluate(z).re)
    }

    /// Pullback to the circle `|z| = r` along the counter-clockwise unit tangent.
    pub fn tangential_trace(&self, z: C64) -> f64 {
        let (a, b) = self.evaluate(z);
        let t = z / z.norm();
        -a * t.im + b * t.re
    }

    /// Outward normal component, i.e. the tangential trace of `⋆α`.
    pub fn normal_trace(&self, z: C64) -> f64 {
        let (a, b) = self.evaluate(z);
        let n = z / z.norm();
        a * n.re + b * n.im
    }
}

/// `df = f_x dx + f_y dy`.
pub fn d0<F: PlanarField>(f: &F) -> OneForm<F> {
    OneForm::new(f.d_x(), f.d_y())
}

/// `δ(w dx∧dy) = ⋆d w = −w_y dx + w_x dy`.
pub fn delta2<F: PlanarField>(w: &F) -> OneForm<F> {
    OneForm::new(w.d_y().negate(), w.d_x())
}

/// Applies `d`, `δ` or `⋆` to a form of any degree.
///
/// `d` of a 2-form and `δ` of a 0-form are zero in the plane and are returned as such.
pub fn one_form_calculus<F: PlanarField>(form: &Form<F>, op: FormOp) -> Form<F> {
    match (form, op) {
        (Form::Zero(f), FormOp::D) => Form::One(d0(f)),
        (Form::Zero(f), FormOp::Delta) => Form::Zero(f.scale(C64::new(0.0, 0.0))),
        (Form::Zero(f), FormOp::Star) => Form::Two(f.clone()),
        (Form::One(a), FormOp::D) => Form::Two(a.d()),
        (Form::One(a), FormOp::Delta) => Form::Zero(a.delta()),
        (Form::One(a), FormOp::Star) => Form::One(a.star()),
        (Form::Two(w), FormOp::D) => Form::Two(w.scale(C64::new(0.0, 0.0))),
        (Form::Two(w), FormOp::Delta) => Form::One(delta2(w)),
        (Form::Two(w), FormOp::Star) => Form::Zero(w.clone()),
    }
}

/// Reflected flat map `u + iv ↦ u dx − v dy`.
pub fn flat_map<F: PlanarField>(f: &F) -> OneForm<F> {
    OneForm::new(f.real_part(), f.imag_part().negate())
}

/// Inverse of [`flat_map`]: `a dx + b dy ↦ a − i b`.
pub fn sharp_map<F: PlanarField>(alpha: &OneForm<F>) -> F {
    alpha.dx.minus(&alpha.dy.scale(I))
}

/// Interior product `i_ξ(dx∧dy) = u dy − v dx` of the area form.
pub fn contract_area_form<F: PlanarField>(f: &F) -> OneForm<F> {
    OneForm::new(f.imag_part().negate(), f.real_part())
}
