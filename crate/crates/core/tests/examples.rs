//! Runs every example so they stay in step with the library.

#[path = "../examples/constraint.rs"]
mod constraint;

#[path = "../examples/curvature.rs"]
mod curvature;

#[path = "../examples/dual.rs"]
mod dual;

#[path = "../examples/gauge.rs"]
mod gauge;

#[path = "../examples/homogeneous.rs"]
mod homogeneous;

#[path = "../examples/horizontal.rs"]
mod horizontal;


#[path = "../examples/inhomogeneous.rs"]
mod inhomogeneous;

#[path = "../examples/integral_equations.rs"]
mod integral_equations;

#[path = "../examples/pipeline.rs"]
mod pipeline;

#[path = "../examples/problem_file.rs"]
mod problem_file;

#[path = "../examples/radius.rs"]
mod radius;

#[test]
fn examples_run() {
    constraint::run_example().expect("constraint");
    curvature::run_example().expect("curvature");
    dual::run_example().expect("dual");
    gauge::run_example().expect("gauge");
    homogeneous::run_example().expect("homogeneous");
    horizontal::run_example().expect("horizontal");
    identities::run_example().expect("identities");
    inhomogeneous::run_example().expect("inhomogeneous");
    integral_equations::run_example().expect("integral_equations");
    pipeline::run_example().expect("pipeline");
    problem_file::run_example().expect("problem_file");
    radius::run_example().expect("radius");
}
