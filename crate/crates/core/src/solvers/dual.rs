use crate::coeff::{fmt_monomial, variable_names};
use crate::error::{Error, Obstruction, Result};
use crate::forms::{basis_name, Connection, Form};
use crate::homotopy::{codecompose, codiff, cohomotopy_h, is_coclosed, Center};
use crate::linsys::{solve_sparse, Solution};

use super::first_order::{alternating_series, check_connection, finish, Side};
use super::linear::{assemble, form_from, kernel_forms, Stacked};
use super::SolveReport;

/// Dual covariant derivative `δφ + A^♯⌟φ`.
pub fn dual_cov_d(a: &Connection, phi: &Form) -> Result<Form> {
    codiff(phi).checked_add(&a.interior_act(phi)?)
}

/// Basis of `{φ : A^♯⌟φ = 0}` among `k`-forms.
pub fn dual_kernel_basis(a: &Connection, k: usize) -> Result<Vec<Form>> {
    let stack = Stacked {
        ops: vec![Box::new(|phi: &Form| a.interior_act(phi))],
    };
    kernel_forms(&stack, a.dim(), a.m(), k, a.trunc())
}

/// Kernel of `A^♯⌟_` intersected with the coclosed forms.
pub(crate) fn dual_gauge_modes(a: &Connection, k: usize) -> Result<Vec<Form>> {
    let stack = Stacked {
        ops: vec![
            Box::new(|phi: &Form| a.interior_act(phi)),
            Box::new(|phi: &Form| Ok(codiff(phi))),
        ],
    };
    kernel_forms(&stack, a.dim(), a.m(), k, a.trunc())
}

/// Solves `A^♯⌟φ = J_y` for an anticoexact `J_y` about the origin.
pub fn solve_dual_constraint(a: &Connection, j_y: &Form) -> Result<Form> {
    check_connection(a, j_y)?;
    let k = j_y.degree() + 1;
    if k > a.dim() {
        return Err(Error::DegreeError("no forms above the top degree".into()));
    }
    let parts = codecompose(j_y, &Center::origin(a.dim()))?;
    if !parts.exact_part.is_zero() || !parts.point_part.is_zero() {
        return Err(Error::RhsNotAnticoexact);
    }
    let stack = Stacked {
        ops: vec![Box::new(|phi: &Form| a.interior_act(phi))],
    };
    let sys = assemble(&stack, a.dim(), a.m(), k, a.trunc(), &[Some(j_y)])?;
    match solve_sparse(&sys) {
        Solution::Solved { particular, .. } => {
            Ok(form_from(a.dim(), a.m(), k, a.trunc(), &particular))
        }
        Solution::Inconsistent { row } => {
            let names = variable_names(a.dim());
            let slot = [fmt_monomial(&row.2, &names), basis_name(row.0, &names)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            Err(Error::NoSolution(Obstruction {
                stage: None,
                detail: format!(
                    "anticoexact part {} is not in the image of A♯⌟_: the {} component cannot be matched",
                    j_y.to_expr(),
                    if slot.is_empty() { "constant".to_string() } else { slot }
                ),
            }))
        }
    }
}

/// Solves `δφ + A^♯⌟φ = J` with `δhφ = c`, the Hodge dual of
/// [`solve_general`](super::solve_general): the anticoexact part of `J` is
/// met algebraically, the coexact remainder by the series in
/// `h ∘ (A^♯⌟ _)`.
pub fn solve_dual(a: &Connection, c: &Form, j: &Form, center: &Center) -> Result<SolveReport> {
    check_connection(a, j)?;
    check_connection(a, c)?;
    center.check(a.dim())?;
    let k = j.degree() + 1;
    if k > a.dim() {
        return Err(Error::DegreeError("no forms above the top degree".into()));
    }
    if !c.is_zero() && c.degree() != k {
        return Err(Error::DegreeError(format!(
            "initial data of degree {} for an unknown of degree {k}",
            c.degree()
        )));
    }
    let origin = Center::origin(a.dim());
    let a_loc = a.translate(center.coords());
    let c_loc = if c.is_zero() {
        Form::zero(a.dim(), a.m(), k, a.trunc())
    } else {
        center.to_local(c)
    };
    let j_loc = center.to_local(j);

    if !is_coclosed(&c_loc) {
        return Err(Error::InitialDataNotCoexact);
    }
    if !c_loc.is_zero() && !a_loc.is_zero() && a_loc.interior_act(&c_loc)?.is_zero() {
        return Err(Error::InitialDataInKernel);
    }

    let parts = codecompose(&j_loc, &origin)?;
    let (j_y, j_c) = (parts.antiexact_part, parts.exact_part);
    let phi2 = solve_dual_constraint(&a_loc, &j_y)?;
    let rhs1 = j_c.checked_sub(&codiff(&phi2))?;

    let step = |g: &Form| Ok(cohomotopy_h(&a_loc.interior_act(g)?, &origin));
    let (phi_h, terms, it_h) = alternating_series(&c_loc, step)?;
    let seed = cohomotopy_h(&rhs1, &origin);
    let (phi_i, _, it_i) = alternating_series(&seed, step)?;
    let phi_loc = phi_h.checked_add(&phi_i)?.checked_add(&phi2)?;

    finish(
        Side::Dual,
        a,
        &a_loc,
        center,
        &phi_loc,
        Some(j),
        it_h.max(it_i),
        terms,
        true,
        Vec::new(),
        None,
    )
}
