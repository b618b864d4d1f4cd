use crate::error::{Error, Result};
use crate::forms::{Connection, Form, MatrixForm};
use crate::homotopy::{homotopy_h, homotopy_h_matrix, is_closed, Center};

use super::first_order::check_connection;
use super::iteration_cap;

/// Solves `dφ + A∧φ = J_e` by the fixed-point iteration
/// `φ ← (H J_e + dα) - H(A∧φ)` started from zero.
///
/// `dα` plays the role of the initial data `c`, so the result agrees with
/// [`solve_inhom_exact`](super::solve_inhom_exact) for `c = dα`.
pub fn neumann_integral_solve(
    a: &Connection,
    j_e: &Form,
    alpha_exact: &Form,
    center: &Center,
) -> Result<Form> {
    check_connection(a, j_e)?;
    check_connection(a, alpha_exact)?;
    center.check(a.dim())?;
    if !is_closed(j_e) {
        return Err(Error::RhsNotExact);
    }
    if !is_closed(alpha_exact) {
        return Err(Error::InitialDataNotExact);
    }
    let a_loc = a.translate(center.coords());
    let origin = Center::origin(a.dim());
    let source = homotopy_h(&center.to_local(j_e), &origin)
        .checked_add(&center.to_local(alpha_exact))?;
    let mut phi = source.zero_with_degree(source.degree());
    for _ in 0..=iteration_cap(a.trunc()) {
        let next = source.checked_sub(&homotopy_h(&a_loc.act(&phi)?, &origin))?;
        if next == phi {
            return Ok(center.from_local(&phi));
        }
        phi = next;
    }
    Err(Error::NotConverged(iteration_cap(a.trunc()) + 1))
}

/// Fundamental solution `φ = I + H(φΓ)` of `dφ = φΓ` for an `m × m`
/// matrix `Γ` of one-forms, normalised to the identity at the center.
pub fn riemann_graves_solve(gamma: &MatrixForm, center: &Center) -> Result<MatrixForm> {
    if gamma.degree() != 1 {
        return Err(Error::DegreeError("Γ must be a matrix of one-forms".into()));
    }
    center.check(gamma.dim())?;
    let g_loc = gamma.translate(center.coords());
    let origin = Center::origin(gamma.dim());
    let id = MatrixForm::identity(gamma.dim(), gamma.m(), gamma.trunc());
    let mut phi = id.clone();
    for _ in 0..=iteration_cap(gamma.trunc()) {
        let next = id.checked_add(&homotopy_h_matrix(&phi.wedge(&g_loc)?, &origin))?;
        if next == phi {
            return Ok(phi.translate(&center.negated()));
        }
        phi = next;
    }
    Err(Error::NotConverged(iteration_cap(gamma.trunc()) + 1))
}
