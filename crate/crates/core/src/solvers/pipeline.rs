use crate::error::{Error, Result};
use crate::forms::{flat, Connection, Form, MatrixForm, PolyVectorField};
use crate::homotopy::Center;

use super::{solve_dual, solve_general, ConstraintStatus, SolveReport};

/// A first-order operator in a product of operators.
#[derive(Clone, Debug)]
pub enum PipelineOp {
    /// `d + A∧_`
    Covariant(Connection),
    /// `δ + A^♯⌟_`
    Dual(Connection),
}

impl PipelineOp {
    /// `δ + X⌟_` acting on `m`-vector forms, as the dual operator of the
    /// connection `X^♭ · I`.
    pub fn dual_field(x: &PolyVectorField, m: usize) -> Self {
        let w = flat(x);
        let mut a = MatrixForm::zero(x.dim(), m, 1, x.trunc());
        for i in 0..m {
            a.set(i, i, w.clone()).expect("scalar one-form");
        }
        PipelineOp::Dual(a)
    }

    fn connection(&self) -> &Connection {
        match self {
            PipelineOp::Covariant(a) | PipelineOp::Dual(a) => a,
        }
    }
}

/// `op` raised to `power`, with optional initial data for each factor in
/// the order the factors are solved (outermost first).
#[derive(Clone, Debug)]
pub struct PipelineStage {
    pub op: PipelineOp,
    pub power: usize,
    pub initial: Vec<Form>,
}

impl PipelineStage {
    pub fn new(op: PipelineOp, power: usize) -> Self {
        PipelineStage {
            op,
            power,
            initial: Vec::new(),
        }
    }

    pub fn with_initial(mut self, initial: Vec<Form>) -> Self {
        self.initial = initial;
        self
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub solution: Form,
    /// Solution of each first-order step, outermost first; the last entry
    /// is the solution itself.
    pub intermediates: Vec<Form>,
    pub reports: Vec<SolveReport>,
}

/// Solves `S_0 S_1 ⋯ S_r φ = J` for the product of `stages` (stage 0 is
/// the outermost operator) as a chain of first-order solves, outermost
/// first. A failed constraint or integrability condition at any step is
/// reported as `NoSolution` naming the step (1-based, in solve order).
pub fn solve_pipeline(stages: &[PipelineStage], j: &Form, center: &Center) -> Result<PipelineReport> {
    let mut rhs = j.clone();
    let mut intermediates = Vec::new();
    let mut reports = Vec::new();
    let mut step = 0;
    for stage in stages {
        for p in 0..stage.power {
            step += 1;
            let a = stage.op.connection();
            let k = match stage.op {
                PipelineOp::Covariant(_) => rhs.degree().checked_sub(1),
                PipelineOp::Dual(_) => Some(rhs.degree() + 1).filter(|k| *k <= rhs.dim()),
            }
            .ok_or_else(|| {
                Error::DegreeError(format!("step {step}: no unknown degree for a {}-form", rhs.degree()))
            })?;
            let c = match stage.initial.get(p) {
                Some(c) => c.clone(),
                None => Form::zero(a.dim(), a.m(), k, a.trunc()),
            };
            let report = match &stage.op {
                PipelineOp::Covariant(a) => solve_general(a, &c, &rhs, center),
                PipelineOp::Dual(a) => solve_dual(a, &c, &rhs, center),
            }
            .map_err(|e| e.at_stage(step))?;
            if let ConstraintStatus::NoSolution(o) = &report.constraint_status {
                let mut o = o.clone();
                o.stage = Some(step);
                return Err(Error::NoSolution(o));
            }
            rhs = report.solution.clone();
            intermediates.push(rhs.clone());
            reports.push(report);
        }
    }
    Ok(PipelineReport {
        solution: rhs,
        intermediates,
        reports,
    })
}
