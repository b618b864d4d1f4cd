use crate::coeff::{fmt_monomial, fmt_rational, variable_names, Rational};
use crate::error::{Error, Obstruction, Result};
use crate::forms::{basis_name, Connection, Form};
use crate::homotopy::{decompose, ext_d, homotopy_h, is_closed, Center};
use crate::linsys::{solve_sparse, Coord, Solution};

use super::linear::{assemble, form_from, kernel_forms, Stacked};
use super::{iteration_cap, residual_degree, ConstraintStatus, KernelBranch, SolveReport};

/// Covariant exterior derivative `dφ + A∧φ`.
pub fn cov_d(a: &Connection, phi: &Form) -> Result<Form> {
    ext_d(phi).checked_add(&a.act(phi)?)
}

/// Basis of `{φ : A∧φ = 0}` among `k`-forms truncated at the connection's
/// order.
pub fn kernel_basis(a: &Connection, k: usize) -> Result<Vec<Form>> {
    let stack = Stacked {
        ops: vec![Box::new(|phi: &Form| a.act(phi))],
    };
    kernel_forms(&stack, a.dim(), a.m(), k, a.trunc())
}

/// Basis of the gauge modes: `k`-forms in the kernel of `A∧_` that are also
/// closed, so they can be added to any solution.
pub fn gauge_modes(a: &Connection, k: usize) -> Result<Vec<Form>> {
    let stack = Stacked {
        ops: vec![
            Box::new(|phi: &Form| a.act(phi)),
            Box::new(|phi: &Form| Ok(ext_d(phi))),
        ],
    };
    kernel_forms(&stack, a.dim(), a.m(), k, a.trunc())
}

/// Solves the algebraic constraint `A∧φ = J_a` for an antiexact `J_a`
/// (about the origin). Free coefficients are set to zero.
pub fn solve_wedge_constraint(a: &Connection, j_a: &Form) -> Result<Form> {
    check_connection(a, j_a)?;
    if j_a.degree() == 0 {
        return Err(Error::DegreeError("constraint right-hand side must have degree >= 1".into()));
    }
    let parts = decompose(j_a, &Center::origin(a.dim()))?;
    if !parts.exact_part.is_zero() || !parts.point_part.is_zero() {
        return Err(Error::RhsNotAntiexact);
    }
    let k = j_a.degree() - 1;
    let stack = Stacked {
        ops: vec![Box::new(|phi: &Form| a.act(phi))],
    };
    let sys = assemble(&stack, a.dim(), a.m(), k, a.trunc(), &[Some(j_a)])?;
    match solve_sparse(&sys) {
        Solution::Solved { particular, .. } => {
            Ok(form_from(a.dim(), a.m(), k, a.trunc(), &particular))
        }
        Solution::Inconsistent { row } => Err(Error::NoSolution(Obstruction {
            stage: None,
            detail: unreachable_component(j_a, &row),
        })),
    }
}

fn unreachable_component(j_a: &Form, row: &Coord) -> String {
    let names = variable_names(j_a.dim());
    let (idx, a, alpha) = row;
    let value = j_a.coeff(*idx, *a).coeff(alpha);
    let mut slot = [fmt_monomial(alpha, &names), basis_name(*idx, &names)]
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect::<Vec<_>>()
        .join("*");
    if j_a.fiber() > 1 {
        slot.push_str(&format!("[{}]", a + 1));
    }
    format!(
        "antiexact part {} is not in the image of A∧_: the {slot} component (coefficient {}) cannot be matched",
        j_a.to_expr(),
        fmt_rational(&value)
    )
}

/// Solves `dφ + A∧φ = 0` with `dHφ = c` about `center` as the alternating
/// series `Σ (-1)^l γ_l`, `γ_0 = c`, `γ_l = H(A∧γ_{l-1})`.
pub fn solve_homogeneous(a: &Connection, c: &Form, center: &Center) -> Result<SolveReport> {
    check_connection(a, c)?;
    center.check(a.dim())?;
    let a_loc = a.translate(center.coords());
    let series = homogeneous_series(&a_loc, &center.to_local(c))?;
    let mut checks = vec![("series terms keep A∧γ closed".to_string(), series.closed)];
    let phi_loc = series.sum.clone();
    if c.degree() == 0 && a.m() == 1 && !c.is_zero() {
        let c0 = c.coeff(crate::forms::IndexSet::EMPTY, 0).constant_term();
        let closed = scalar_local(&a_loc, &c0)?;
        checks.push(("matches c·exp(-HA)".into(), closed == phi_loc));
    }
    finish(
        Side::Primal,
        a,
        &a_loc,
        center,
        &phi_loc,
        None,
        series.iterations,
        series.terms,
        false,
        checks,
        None,
    )
}

/// `c₀ · exp(-H A)` for a scalar connection acting on functions.
pub fn solve_scalar_homogeneous(a: &Connection, c0: &Rational, center: &Center) -> Result<Form> {
    if a.m() != 1 {
        return Err(Error::FiberMismatch("scalar solve needs a 1x1 connection".into()));
    }
    center.check(a.dim())?;
    let local = scalar_local(&a.translate(center.coords()), c0)?;
    Ok(center.from_local(&local))
}

fn scalar_local(a_loc: &Connection, c0: &Rational) -> Result<Form> {
    let ha = homotopy_h(a_loc.entry(0, 0), &Center::origin(a_loc.dim()));
    let f = ha.coeff(crate::forms::IndexSet::EMPTY, 0);
    Ok(Form::function((-&f).exp()?.scale(c0)))
}

/// Solves `dφ + A∧φ = J_e` for an exact right-hand side, with `dHφ = c`.
///
/// The solution is the homogeneous series for `c` plus the series seeded
/// with `H J_e`. Integrability of the equation is not assumed; when it
/// fails the residual has terms below the truncation order and the report
/// says so.
pub fn solve_inhom_exact(
    a: &Connection,
    c: &Form,
    j_e: &Form,
    center: &Center,
) -> Result<SolveReport> {
    check_connection(a, j_e)?;
    check_connection(a, c)?;
    center.check(a.dim())?;
    if j_e.degree() == 0 {
        return Err(Error::DegreeError("right-hand side must have degree >= 1".into()));
    }
    if !c.is_zero() && c.degree() + 1 != j_e.degree() {
        return Err(Error::DegreeError(format!(
            "initial data of degree {} for a right-hand side of degree {}",
            c.degree(),
            j_e.degree()
        )));
    }
    if !is_closed(j_e) {
        return Err(Error::RhsNotExact);
    }
    let a_loc = a.translate(center.coords());
    let pieces = inhom_local(&a_loc, &center.to_local(c), &center.to_local(j_e))?;
    finish(
        Side::Primal,
        a,
        &a_loc,
        center,
        &pieces.phi,
        Some(j_e),
        pieces.iterations,
        pieces.terms,
        false,
        pieces.checks,
        None,
    )
}

/// Solves `dφ + A∧φ = J` with `dHφ = c`.
///
/// `J` splits into its exact part `J_e` and antiexact part `J_a`. The
/// algebraic equation `A∧φ₂ = J_a` is solved first, then
/// `dφ₁ + A∧φ₁ = J_e - dφ₂`; the solution is `φ₁ + φ₂`. An unsolvable
/// constraint is an error; failed integrability of the remaining equation
/// shows up in the report's constraint status.
pub fn solve_general(a: &Connection, c: &Form, j: &Form, center: &Center) -> Result<SolveReport> {
    check_connection(a, j)?;
    check_connection(a, c)?;
    center.check(a.dim())?;
    if j.degree() == 0 {
        return Err(Error::DegreeError("right-hand side must have degree >= 1".into()));
    }
    let origin = Center::origin(a.dim());
    let a_loc = a.translate(center.coords());
    let (c_loc, j_loc) = (center.to_local(c), center.to_local(j));
    let parts = decompose(&j_loc, &origin)?;
    let (j_a, j_e) = (parts.antiexact_part, parts.exact_part);

    let phi2 = solve_wedge_constraint(&a_loc, &j_a)?;
    let rhs1 = j_e.checked_sub(&ext_d(&phi2))?;
    let pieces = inhom_local(&a_loc, &c_loc, &rhs1)?;
    let phi_loc = pieces.phi.checked_add(&phi2)?;

    let kernel_branch = if j_a.is_zero() {
        let cand = c_loc.checked_add(&homotopy_h(&j_e, &origin))?;
        let n = a.trunc();
        let in_kernel = a_loc.act(&cand)?.below_degree(n).is_zero();
        let solves = cov_d(&a_loc, &cand)?.checked_sub(&j_loc)?.below_degree(n).is_zero();
        Some(KernelBranch {
            solution: center.from_local(&cand),
            in_kernel,
            solves,
        })
    } else {
        None
    };
    finish(
        Side::Primal,
        a,
        &a_loc,
        center,
        &phi_loc,
        Some(j),
        pieces.iterations,
        pieces.terms,
        true,
        pieces.checks,
        kernel_branch,
    )
}

pub(crate) fn check_connection(a: &Connection, phi: &Form) -> Result<()> {
    if a.degree() != 1 {
        return Err(Error::DegreeError("connection must be a matrix of one-forms".into()));
    }
    phi.check_ring(a.dim(), a.trunc())?;
    if phi.fiber() != a.m() {
        return Err(Error::FiberMismatch(format!(
            "{0}x{0} connection with a form of fiber {1}",
            a.m(),
            phi.fiber()
        )));
    }
    Ok(())
}

pub(crate) struct SeriesOut {
    pub sum: Form,
    pub terms: Vec<Form>,
    pub iterations: usize,
    pub closed: bool,
}

/// Sums `Σ (-1)^l γ_l` with `γ_l = step(γ_{l-1})` until a term vanishes.
pub(crate) fn alternating_series(
    seed: &Form,
    mut step: impl FnMut(&Form) -> Result<Form>,
) -> Result<(Form, Vec<Form>, usize)> {
    let mut terms = vec![seed.clone()];
    let mut sum = seed.clone();
    let mut iterations = 0;
    if seed.is_zero() {
        return Ok((sum, terms, iterations));
    }
    let cap = iteration_cap(seed.trunc());
    loop {
        let next = step(terms.last().expect("seeded"))?;
        iterations += 1;
        if next.is_zero() {
            break;
        }
        if iterations > cap {
            return Err(Error::NotConverged(iterations));
        }
        sum = if iterations % 2 == 1 {
            sum.checked_sub(&next)?
        } else {
            sum.checked_add(&next)?
        };
        terms.push(next);
    }
    Ok((sum, terms, iterations))
}

/// Homogeneous series about the origin, after validating the initial data.
fn homogeneous_series(a: &Connection, c: &Form) -> Result<SeriesOut> {
    if !is_closed(c) {
        return Err(Error::InitialDataNotExact);
    }
    if !c.is_zero() && !a.is_zero() && a.act(c)?.is_zero() {
        return Err(Error::InitialDataInKernel);
    }
    let origin = Center::origin(a.dim());
    let n = a.trunc();
    let mut closed = true;
    let (sum, terms, iterations) = alternating_series(c, |g| {
        let ag = a.act(g)?;
        closed &= ext_d(&ag).below_degree(n).is_zero();
        Ok(homotopy_h(&ag, &origin))
    })?;
    Ok(SeriesOut {
        sum,
        terms,
        iterations,
        closed,
    })
}

struct InhomPieces {
    phi: Form,
    terms: Vec<Form>,
    iterations: usize,
    checks: Vec<(String, bool)>,
}

/// `φ_H + φ_I` about the origin for an exact right-hand side.
fn inhom_local(a: &Connection, c: &Form, j_e: &Form) -> Result<InhomPieces> {
    let origin = Center::origin(a.dim());
    let k = j_e.degree() - 1;
    let c = if c.is_zero() {
        Form::zero(a.dim(), a.m(), k, a.trunc())
    } else {
        c.clone()
    };
    let hom = homogeneous_series(a, &c)?;
    let seed = homotopy_h(j_e, &origin);
    let (phi_i, terms_i, it_i) =
        alternating_series(&seed, |g| Ok(homotopy_h(&a.act(g)?, &origin)))?;
    let mut checks = vec![("series terms keep A∧γ closed".to_string(), hom.closed)];
    if k == 0 && a.m() == 1 {
        let ha = homotopy_h(a.entry(0, 0), &origin).coeff(crate::forms::IndexSet::EMPTY, 0);
        let grow = ha.exp()?;
        let shrink = (-&ha).exp()?;
        let inner = homotopy_h(&j_e.mul_function(&grow), &origin);
        let closed_i = inner.mul_function(&shrink);
        checks.push(("particular part matches exp(-HA)·H(J·exp(HA))".into(), closed_i == phi_i));
        let c0 = c.coeff(crate::forms::IndexSet::EMPTY, 0).constant_term();
        let closed_h = Form::function(shrink.scale(&c0));
        checks.push(("homogeneous part matches c·exp(-HA)".into(), closed_h == hom.sum));
    }
    Ok(InhomPieces {
        phi: hom.sum.checked_add(&phi_i)?,
        terms: terms_i,
        iterations: hom.iterations.max(it_i),
        checks,
    })
}

#[derive(Clone, Copy)]
pub(crate) enum Side {
    Primal,
    Dual,
}

/// Assembles the report: residual, kernel data and the radius estimate.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finish(
    side: Side,
    a: &Connection,
    a_loc: &Connection,
    center: &Center,
    phi_loc: &Form,
    rhs: Option<&Form>,
    iterations: usize,
    series_terms: Vec<Form>,
    constrained: bool,
    checks: Vec<(String, bool)>,
    kernel_branch: Option<KernelBranch>,
) -> Result<SolveReport> {
    let solution = center.from_local(phi_loc);
    let residual = local_residual(side, a_loc, phi_loc, rhs.map(|j| center.to_local(j)).as_ref())?;
    let residual_min_degree = residual_degree(&residual, &Center::origin(a.dim()));
    let residual = center.from_local(&residual);
    let k = solution.degree();
    let (kernel, gauge) = match side {
        Side::Primal => (kernel_basis(a_loc, k)?, gauge_modes(a_loc, k)?),
        Side::Dual => (
            super::dual_kernel_basis(a_loc, k)?,
            super::dual::dual_gauge_modes(a_loc, k)?,
        ),
    };
    let constraint_status = status(residual_min_degree, a.trunc(), constrained);
    Ok(SolveReport {
        residual_min_degree,
        residual,
        iterations,
        series_terms: series_terms.iter().map(|g| center.from_local(g)).collect(),
        kernel_basis: kernel.iter().map(|f| center.from_local(f)).collect(),
        gauge_mode_basis: gauge.iter().map(|f| center.from_local(f)).collect(),
        constraint_status,
        radius_estimate: radius_estimate(a, center, k),
        checks,
        kernel_branch,
        solution,
    })
}

/// `D φ - J` with everything already in coordinates about the center, so
/// that truncation is graded about the center.
pub(crate) fn local_residual(
    side: Side,
    a_loc: &Connection,
    phi_loc: &Form,
    rhs_loc: Option<&Form>,
) -> Result<Form> {
    let image = match side {
        Side::Primal => cov_d(a_loc, phi_loc)?,
        Side::Dual => super::dual_cov_d(a_loc, phi_loc)?,
    };
    match rhs_loc {
        Some(j) => image.checked_sub(j),
        None => Ok(image),
    }
}

pub(crate) fn status(min_degree: u32, trunc: u32, constrained: bool) -> ConstraintStatus {
    if min_degree < trunc {
        ConstraintStatus::NoSolution(Obstruction {
            stage: None,
            detail: format!(
                "Integrability: residual has terms of degree {min_degree}, below the truncation order {trunc}"
            ),
        })
    } else if constrained {
        ConstraintStatus::Satisfied
    } else {
        ConstraintStatus::NotApplicable
    }
}

pub(crate) fn radius_estimate(a: &Connection, center: &Center, k: usize) -> Option<f64> {
    if k == 0 {
        return None;
    }
    let norm = a.norm_at(&center.to_f64()).ok()?;
    (norm > 0.0).then(|| k as f64 / norm)
}

