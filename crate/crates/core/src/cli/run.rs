use std::time::Instant;

use crate::error::{Error, Result};
use crate::forms::{Form, GaugeElement};
use crate::homotopy::Center;
use crate::solvers::{
    cov_d, gauge_push, gauge_transform, horizontal_delta, residual_degree, solve_curvature,
    solve_dual, solve_general, solve_homogeneous, solve_inhom_exact, solve_pipeline,
    ConstraintStatus, HorizontalFrame, PipelineOp, PipelineStage, SolveReport,
};

use super::problem::{render_problem, Equation, ProblemSpec};
use super::report::{CheckData, FormData, GaugeData, HorizontalData, Report, StatusData, StepData};
use super::verify::residual_agrees;

/// Exit code for an error that prevented a report.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        Error::NoSolution(_) => 4,
        Error::InvariantViolation(_) | Error::NotConverged(_) | Error::NonNilpotentArgument => 5,
        _ => 3,
    }
}

/// One solved first-order step with what is needed to re-check it.
struct Step<'a> {
    dual: bool,
    rhs: Option<&'a Form>,
    report: &'a SolveReport,
}

/// Solves the problem and re-checks every step. An equation without a
/// solution yields a report with status `NoSolution` rather than an error.
pub fn run(spec: &ProblemSpec) -> Result<Report> {
    let start = Instant::now();
    let a = &spec.connection;
    let center = Center::new(spec.center.clone());
    let c = &spec.initial[0];
    let zero_rhs;
    let rhs = match &spec.rhs {
        Some(j) => j,
        None => {
            zero_rhs = Form::zero(spec.dim, spec.fiber, c.degree() + 1, spec.trunc);
            &zero_rhs
        }
    };
    let first_order = matches!(
        spec.equation,
        Equation::Homogeneous | Equation::InhomExact | Equation::General
    );
    if (spec.frame.is_some() || spec.gauge.is_some()) && !first_order {
        return Err(Error::Validation(format!(
            "frames and gauges apply to first-order covariant problems, not '{}'",
            spec.equation.name()
        )));
    }

    let outcome = match spec.equation {
        Equation::Homogeneous => solve_homogeneous(a, c, &center).map(Solved::Single),
        Equation::InhomExact => solve_inhom_exact(a, c, rhs, &center).map(Solved::Single),
        Equation::General => solve_general(a, c, rhs, &center).map(Solved::Single),
        Equation::Dual => solve_dual(a, c, rhs, &center).map(Solved::Single),
        Equation::Curvature => {
            solve_curvature(a, rhs, &spec.initial[1], &spec.initial[0], &center).map(|s| {
                Solved::Chain {
                    solution: s.phi1,
                    rhs: vec![rhs.clone(), s.phi2],
                    duals: vec![false, false],
                    reports: vec![s.stage2, s.stage1],
                }
            })
        }
        Equation::Pipeline => {
            let mut stages = Vec::new();
            let mut duals = Vec::new();
            let mut init = spec.initial.iter();
            for s in &spec.stages {
                let op = if s.dual {
                    PipelineOp::Dual(a.clone())
                } else {
                    PipelineOp::Covariant(a.clone())
                };
                let initial: Vec<Form> = init.by_ref().take(s.power).cloned().collect();
                duals.extend(std::iter::repeat_n(s.dual, s.power));
                stages.push(PipelineStage::new(op, s.power).with_initial(initial));
            }
            solve_pipeline(&stages, rhs, &center).map(|p| {
                let mut rhs_chain = vec![rhs.clone()];
                rhs_chain.extend(p.intermediates[..p.intermediates.len() - 1].iter().cloned());
                Solved::Chain {
                    solution: p.solution,
                    rhs: rhs_chain,
                    duals,
                    reports: p.reports,
                }
            })
        }
    };

    let solved = match outcome {
        Ok(s) => s,
        Err(Error::NoSolution(o)) => {
            return Ok(Report {
                problem: render_problem(spec),
                solution: None,
                residual_min_degree: None,
                iterations: 0,
                constraint_status: StatusData::from_status(&ConstraintStatus::NoSolution(o)),
                gauge_modes: Vec::new(),
                radius: None,
                residual_terms: 0,
                verified: None,
                steps: Vec::new(),
                checks: Vec::new(),
                horizontal: None,
                gauge: None,
                timing_us: start.elapsed().as_micros() as u64,
            })
        }
        Err(e) => return Err(e),
    };

    let (solution, steps): (Form, Vec<Step>) = match &solved {
        Solved::Single(r) => {
            let dual = spec.equation == Equation::Dual;
            let rhs = (spec.equation != Equation::Homogeneous).then_some(rhs);
            (r.solution.clone(), vec![Step { dual, rhs, report: r }])
        }
        Solved::Chain {
            solution,
            rhs,
            duals,
            reports,
        } => (
            solution.clone(),
            reports
                .iter()
                .zip(rhs)
                .zip(duals)
                .map(|((report, rhs), dual)| Step {
                    dual: *dual,
                    rhs: Some(rhs),
                    report,
                })
                .collect(),
        ),
    };

    let step_data: Vec<StepData> = steps
        .iter()
        .enumerate()
        .map(|(i, s)| StepData {
            step: i + 1,
            operator: if s.dual { "delta" } else { "d" }.into(),
            solution: FormData::from_form(&s.report.solution),
            residual_min_degree: s.report.residual_min_degree,
            iterations: s.report.iterations,
            constraint_status: StatusData::from_status(&s.report.constraint_status),
            verified: residual_agrees(s.dual, a, &s.report.solution, s.rhs, &center, &s.report.residual),
        })
        .collect();

    let last = steps.last().expect("at least one step").report;
    let status = step_data
        .iter()
        .map(|s| &s.constraint_status)
        .find(|s| s.is_no_solution())
        .cloned()
        .unwrap_or_else(|| StatusData::from_status(&steps[0].report.constraint_status));
    let checks = steps
        .iter()
        .flat_map(|s| &s.report.checks)
        .map(|(name, passed)| CheckData {
            name: name.clone(),
            passed: *passed,
        })
        .collect();

    let horizontal = match &spec.frame {
        Some((omegas, fields)) => {
            let frame = HorizontalFrame::new(omegas.clone(), fields.clone())?;
            let h = horizontal_delta(&frame, a, &solution, &center)?;
            Some(HorizontalData {
                delta: FormData::from_form(&h.delta),
                horizontal: h.horizontal,
                residual_min_degree: h.residual_min_degree,
                covariantly_constant: h.covariantly_constant,
            })
        }
        None => None,
    };
    let gauge = match &spec.gauge {
        Some(entries) => {
            let g = GaugeElement::new(spec.fiber, entries.clone())?;
            let a2 = gauge_transform(a, &g)?;
            let phi2 = gauge_push(&solution, &g)?;
            let shift = center.coords();
            let mut res = cov_d(&a2.translate(shift), &center.to_local(&phi2))?;
            if let Some(j) = &spec.rhs {
                res = res.checked_sub(&center.to_local(&gauge_push(j, &g)?))?;
            }
            Some(GaugeData {
                solution: FormData::from_form(&phi2),
                residual_min_degree: residual_degree(&res, &Center::origin(spec.dim)),
            })
        }
        None => None,
    };

    Ok(Report {
        problem: render_problem(spec),
        solution: Some(FormData::from_form(&solution)),
        residual_min_degree: step_data.iter().map(|s| s.residual_min_degree).min(),
        iterations: step_data.iter().map(|s| s.iterations).sum(),
        constraint_status: status,
        gauge_modes: last.gauge_mode_basis.iter().map(FormData::from_form).collect(),
        radius: last.radius_estimate,
        residual_terms: steps.iter().map(|s| s.report.residual.term_count()).sum(),
        verified: Some(step_data.iter().all(|s| s.verified)),
        steps: step_data,
        checks,
        horizontal,
        gauge,
        timing_us: start.elapsed().as_micros() as u64,
    })
}

enum Solved {
    Single(SolveReport),
    Chain {
        solution: Form,
        /// Right-hand side of each step.
        rhs: Vec<Form>,
        duals: Vec<bool>,
        reports: Vec<SolveReport>,
    },
}
