//! Solves dφ + dy∧φ = 0 on the plane with dHφ = dx and prints the series
//! terms and the residual grading.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let a = Connection::scalar(Form::dx(2, n, 1));
    let c = Form::dx(2, n, 0);
    let report = solve_homogeneous(&a, &c, &Center::origin(2))?;

    for (k, term) in report.series_terms.iter().enumerate().take(4) {
        println!("(HA∧)^{k} c = {term}");
    }
    println!("φ = {}", report.solution);
    println!(
        "{} applications of H(A∧_), residual degree {}, exact to order {n}: {}",
        report.iterations,
        report.residual_min_degree,
        report.is_graded()
    );
    assert!(report.is_graded());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
