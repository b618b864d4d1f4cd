//! Solvers for `dφ + A∧φ = J`, its Hodge dual, and the equations built
//! from them.
//!
//! Every solver works in coordinates centered at the homotopy center, so
//! "residual degree" always means the lowest total degree of the residual
//! in `u = x - x₀`. A residual whose lowest degree is at least the
//! truncation order is the signature of an exact solution.

mod curvature;
mod dual;
mod first_order;
mod gauge;
mod horizontal;
mod integral;
mod linear;
mod pipeline;
mod radius;

pub use curvature::{curvature, solve_curvature, CurvatureSolution};
pub use dual::{dual_cov_d, dual_kernel_basis, solve_dual, solve_dual_constraint};
pub use first_order::{
    cov_d, gauge_modes, kernel_basis, solve_general, solve_homogeneous, solve_inhom_exact,
    solve_scalar_homogeneous, solve_wedge_constraint,
};
pub use gauge::{gauge_push, gauge_transform};
pub use horizontal::{horizontal_delta, HorizontalFrame, HorizontalResult};
pub use integral::{neumann_integral_solve, riemann_graves_solve};
pub use pipeline::{solve_pipeline, PipelineOp, PipelineReport, PipelineStage};
pub use radius::radius_bound;

use crate::error::Obstruction;
use crate::forms::Form;
use crate::homotopy::Center;

/// Whether the algebraic side condition of a solve held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintStatus {
    Satisfied,
    NoSolution(Obstruction),
    NotApplicable,
}

impl ConstraintStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ConstraintStatus::Satisfied => "Satisfied",
            ConstraintStatus::NoSolution(_) => "NoSolution",
            ConstraintStatus::NotApplicable => "NotApplicable",
        }
    }
}

/// The direct candidate `c + H J_e` used when the antiexact part of the
/// right-hand side vanishes, with the two properties that make it a
/// solution.
#[derive(Clone, Debug)]
pub struct KernelBranch {
    pub solution: Form,
    pub in_kernel: bool,
    pub solves: bool,
}

/// Result of a solve together with its diagnostics.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solution: Form,
    /// `D φ - J`, computed about the center and written in the original
    /// coordinates.
    pub residual: Form,
    /// Lowest degree of the residual about the center; `N + 1` when it
    /// vanishes.
    pub residual_min_degree: u32,
    /// Applications of `H ∘ (A ∧ _)` (or its dual) before the series
    /// stopped; the larger count when two series were summed.
    pub iterations: usize,
    /// Series terms before signs: `(H A∧)^l c` for homogeneous solves,
    /// `(H A∧)^l H J_e` when there is a right-hand side.
    pub series_terms: Vec<Form>,
    pub kernel_basis: Vec<Form>,
    pub gauge_mode_basis: Vec<Form>,
    pub constraint_status: ConstraintStatus,
    /// `k / ‖A(x₀)‖`, absent for functions or a connection vanishing at
    /// the center.
    pub radius_estimate: Option<f64>,
    /// Named internal consistency checks and their outcome.
    pub checks: Vec<(String, bool)>,
    pub kernel_branch: Option<KernelBranch>,
}

impl SolveReport {
    /// True when the residual is confined to degrees at or above the
    /// truncation order.
    pub fn is_graded(&self) -> bool {
        self.residual_min_degree >= self.solution.trunc()
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Lowest degree of `residual` in coordinates about `center`, `N + 1` for
/// zero.
pub fn residual_degree(residual: &Form, center: &Center) -> u32 {
    center
        .to_local(residual)
        .min_degree()
        .unwrap_or(residual.trunc() + 1)
}

/// Safety cap on series length: a nilpotent series over coefficients
/// truncated at `N` ends after at most `N + 1` applications.
pub(crate) fn iteration_cap(trunc: u32) -> usize {
    trunc as usize + 2
}
