//! The command-line surface: problem files, solver dispatch, independent
//! verification of every solution, and report output.

mod emit;
mod expr;
mod problem;
mod report;
mod run;
mod verify;

pub use emit::{emit, latex_form, parse_report};
pub use expr::{parse_expr, ExprError, Parsed};
pub use problem::{
    parse_coordinates, parse_problem, parse_problem_with, render_problem, Equation, OutputFormat,
    Overrides, ProblemSpec, StageSpec,
};
pub use report::{
    CheckData, FormData, GaugeData, HorizontalData, Report, StatusData, StepData, TermData,
};
pub use run::{exit_code_for, run};
pub use verify::residual_agrees;
