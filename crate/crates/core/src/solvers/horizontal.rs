use num_traits::One;

use crate::error::{Error, Result};
use crate::forms::{interior, wedge, Connection, Form, IndexSet, PolyVectorField};
use crate::homotopy::Center;

use super::{cov_d, residual_degree};

/// One-forms `ω_i` and vector fields `X_i` with `X_j ⌟ ω_i = δ_ij` and
/// `Σ ω_i = A`.
#[derive(Clone, Debug)]
pub struct HorizontalFrame {
    omegas: Vec<Form>,
    fields: Vec<PolyVectorField>,
}

impl HorizontalFrame {
    /// Checks the duality relations. The relation to a connection is checked
    /// by [`horizontal_delta`].
    pub fn new(omegas: Vec<Form>, fields: Vec<PolyVectorField>) -> Result<Self> {
        if omegas.len() != fields.len() || omegas.is_empty() {
            return Err(Error::FrameInvalid(format!(
                "{} one-forms and {} vector fields",
                omegas.len(),
                fields.len()
            )));
        }
        for (i, w) in omegas.iter().enumerate() {
            if w.degree() != 1 || w.fiber() != 1 {
                return Err(Error::FrameInvalid(format!("ω_{} is not a scalar one-form", i + 1)));
            }
            for (j, x) in fields.iter().enumerate() {
                let pairing = interior(x, w)?.coeff(IndexSet::EMPTY, 0);
                let unit = pairing.len() == 1 && pairing.constant_term().is_one();
                let ok = if i == j { unit } else { pairing.is_zero() };
                if !ok {
                    return Err(Error::FrameInvalid(format!(
                        "X_{} ⌟ ω_{} = {pairing}, expected {}",
                        j + 1,
                        i + 1,
                        u8::from(i == j)
                    )));
                }
            }
        }
        Ok(HorizontalFrame { omegas, fields })
    }

    pub fn omegas(&self) -> &[Form] {
        &self.omegas
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    /// `P_i φ = φ - ω_i ∧ (X_i ⌟ φ)`.
    pub fn project(&self, i: usize, phi: &Form) -> Result<Form> {
        let contracted = interior(&self.fields[i], phi)?;
        if contracted.is_zero() {
            return Ok(phi.clone());
        }
        phi.checked_sub(&wedge(&self.omegas[i], &contracted)?)
    }
}

/// Outcome of removing the vertical directions of a form.
#[derive(Clone, Debug)]
pub struct HorizontalResult {
    /// `Δφ = P_1 ∘ … ∘ P_k φ`.
    pub delta: Form,
    /// Every `X_i ⌟ Δφ` vanishes.
    pub horizontal: bool,
    /// Lowest degree of `(d + A∧)Δφ` about the center.
    pub residual_min_degree: u32,
    /// `Δφ` is covariantly constant through the truncation order.
    pub covariantly_constant: bool,
}

/// Applies the horizontal projection of `frame` to `φ` and reports whether
/// the result is horizontal and still covariantly constant for `A`.
pub fn horizontal_delta(
    frame: &HorizontalFrame,
    a: &Connection,
    phi: &Form,
    center: &Center,
) -> Result<HorizontalResult> {
    if a.m() != 1 {
        return Err(Error::FrameInvalid("frames are defined for scalar connections".into()));
    }
    let mut sum = Form::zero(a.dim(), 1, 1, a.trunc());
    for w in &frame.omegas {
        sum = sum.checked_add(w)?;
    }
    if !sum.checked_sub(a.entry(0, 0))?.is_zero() {
        return Err(Error::FrameInvalid(format!(
            "Σ ω_i = {sum} differs from A = {}",
            a.entry(0, 0)
        )));
    }
    let mut delta = phi.clone();
    for i in (0..frame.omegas.len()).rev() {
        delta = frame.project(i, &delta)?;
    }
    let mut horizontal = true;
    for x in &frame.fields {
        horizontal &= interior(x, &delta)?.is_zero();
    }
    let a_loc = a.translate(center.coords());
    let local = cov_d(&a_loc, &center.to_local(&delta))?;
    let residual_min_degree = residual_degree(&local, &Center::origin(a.dim()));
    Ok(HorizontalResult {
        covariantly_constant: residual_min_degree >= a.trunc(),
        delta,
        horizontal,
        residual_min_degree,
    })
}

