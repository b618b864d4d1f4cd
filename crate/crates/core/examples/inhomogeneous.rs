//! dφ + dy∧φ = x dx with zero initial data. The solution is a function
//! whose Taylor data is that of (x/y)²(e^{-y} - 1 + y).

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let a = Connection::scalar(Form::dx(2, n, 1));
    let j = Form::dx(2, n, 0).mul_function(&Series::variable(2, n, 0));
    let report = solve_inhom_exact(&a, &Form::zero(2, 1, 0, n), &j, &Center::origin(2))?;

    println!("φ = {}", report.solution);
    for (name, ok) in &report.checks {
        println!("  {name}: {ok}");
    }
    println!("residual degree {}", report.residual_min_degree);
    assert!(report.checks_pass());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
