use serde::{Deserialize, Serialize};

use crate::coeff::{fmt_rational, parse_rational, MultiIndex, Rational, Series};
use crate::forms::{Form, IndexSet};
use crate::solvers::ConstraintStatus;

/// One coefficient of a form. Indices and fiber slots are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TermData {
    pub index_set: Vec<usize>,
    pub fiber: usize,
    pub monomial: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FormData {
    pub degree: usize,
    pub terms: Vec<TermData>,
}

impl FormData {
    pub fn from_form(f: &Form) -> Self {
        let terms = f
            .flat_terms()
            .into_iter()
            .map(|(idx, a, m, v)| TermData {
                index_set: idx.iter().map(|i| i + 1).collect(),
                fiber: a + 1,
                monomial: m.to_vec(),
                value: fmt_rational(&v),
            })
            .collect();
        FormData {
            degree: f.degree(),
            terms,
        }
    }

    /// Rebuilds the form; `None` if a term does not fit the given shape.
    pub fn to_form(&self, dim: usize, fiber: usize, trunc: u32) -> Option<Form> {
        let mut out = Form::zero(dim, fiber, self.degree, trunc);
        for t in &self.terms {
            let idx: Vec<usize> = t.index_set.iter().map(|i| i.checked_sub(1)).collect::<Option<_>>()?;
            let idx = IndexSet::new(&idx).filter(|s| s.len() == self.degree)?;
            let slot = t.fiber.checked_sub(1).filter(|a| *a < fiber)?;
            if t.monomial.len() != dim || idx.max_index().is_some_and(|i| i >= dim) {
                return None;
            }
            let v: Rational = parse_rational(&t.value)?;
            let f = Series::monomial(dim, trunc, MultiIndex::new(&t.monomial), v);
            out.add_term(idx, slot, f);
        }
        Some(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatusData {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl StatusData {
    pub fn from_status(s: &ConstraintStatus) -> Self {
        match s {
            ConstraintStatus::NoSolution(o) => StatusData {
                status: s.label().into(),
                stage: o.stage,
                detail: Some(o.detail.clone()),
            },
            _ => StatusData {
                status: s.label().into(),
                stage: None,
                detail: None,
            },
        }
    }

    pub fn is_no_solution(&self) -> bool {
        self.status == "NoSolution"
    }
}

/// One first-order solve of a multi-step equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StepData {
    pub step: usize,
    /// `d` or `delta`.
    pub operator: String,
    pub solution: FormData,
    pub residual_min_degree: u32,
    pub iterations: usize,
    pub constraint_status: StatusData,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckData {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HorizontalData {
    pub delta: FormData,
    pub horizontal: bool,
    pub residual_min_degree: u32,
    pub covariantly_constant: bool,
}

/// The solution pushed through the gauge given in the problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaugeData {
    pub solution: FormData,
    pub residual_min_degree: u32,
}

/// Everything `solve` prints. The field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    /// The problem as a normalized problem file.
    pub problem: String,
    pub solution: Option<FormData>,
    /// Lowest residual degree about the center, minimized over steps.
    pub residual_min_degree: Option<u32>,
    /// Series iterations, summed over steps.
    pub iterations: usize,
    pub constraint_status: StatusData,
    pub gauge_modes: Vec<FormData>,
    pub radius: Option<f64>,
    pub residual_terms: usize,
    /// Whether the independent residual recomputation matched the solver
    /// at every step; absent when there is no solution to check.
    pub verified: Option<bool>,
    pub steps: Vec<StepData>,
    pub checks: Vec<CheckData>,
    pub horizontal: Option<HorizontalData>,
    pub gauge: Option<GaugeData>,
    pub timing_us: u64,
}

impl Report {
    /// Process exit code: 4 for no solution, 5 when verification or an
    /// internal cross-check failed.
    pub fn exit_code(&self) -> i32 {
        if self.constraint_status.is_no_solution() {
            4
        } else if self.verified == Some(false) || self.checks.iter().any(|c| !c.passed) {
            5
        } else {
            0
        }
    }
}
