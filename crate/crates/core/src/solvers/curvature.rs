use crate::error::{Error, Result};
use crate::forms::{Connection, Form, MatrixForm};
use crate::homotopy::{ext_d, Center};

use super::first_order::{local_residual, Side};
use super::{solve_general, solve_homogeneous, SolveReport};

/// Curvature `F = dA + A∧A`.
pub fn curvature(a: &Connection) -> Result<MatrixForm> {
    a.map(ext_d).checked_add(&a.wedge(a)?)
}

/// Both stages of a solve of `(d + A∧)² φ = J`.
#[derive(Clone, Debug)]
pub struct CurvatureSolution {
    /// `φ` itself.
    pub phi1: Form,
    /// `φ₂ = (d + A∧) φ`.
    pub phi2: Form,
    pub stage2: SolveReport,
    pub stage1: SolveReport,
}

/// Solves `F∧φ = J` written as two first-order steps: `D φ₂ = J` with
/// initial data `c2`, then `D φ₁ = φ₂`, plus the homogeneous solution for
/// `c1` when it is nonzero.
pub fn solve_curvature(
    a: &Connection,
    j: &Form,
    c1: &Form,
    c2: &Form,
    center: &Center,
) -> Result<CurvatureSolution> {
    if j.degree() < 2 {
        return Err(Error::DegreeError("F∧φ has degree at least 2".into()));
    }
    if !c1.is_zero() && c1.degree() + 2 != j.degree() {
        return Err(Error::DegreeError(format!(
            "c1 has degree {} but J has degree {}",
            c1.degree(),
            j.degree()
        )));
    }
    let stage2 = solve_general(a, c2, j, center).map_err(|e| e.at_stage(1))?;
    let phi2 = stage2.solution.clone();
    let zero = Form::zero(a.dim(), a.m(), phi2.degree().saturating_sub(1), a.trunc());
    let mut stage1 = solve_general(a, &zero, &phi2, center).map_err(|e| e.at_stage(2))?;
    if !c1.is_zero() {
        let hom = solve_homogeneous(a, c1, center).map_err(|e| e.at_stage(2))?;
        stage1.solution = stage1.solution.checked_add(&hom.solution)?;
        let a_loc = a.translate(center.coords());
        let local = local_residual(
            Side::Primal,
            &a_loc,
            &center.to_local(&stage1.solution),
            Some(&center.to_local(&phi2)),
        )?;
        stage1.residual_min_degree = super::residual_degree(&local, &Center::origin(a.dim()));
        stage1.residual = center.from_local(&local);
    }
    Ok(CurvatureSolution {
        phi1: stage1.solution.clone(),
        phi2,
        stage2,
        stage1,
    })
}
