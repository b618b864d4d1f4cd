//! Convergence radius estimates: the one stored in a solve report and the
//! bound along a segment.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 6;
    let x = Series::variable(2, n, 0);
    // A = (1 + x) dy
    let a = Connection::scalar(Form::dx(2, n, 1).mul_function(&(&Series::constant(2, n, int(1)) + &x)));
    let o = Center::origin(2);
    let report = solve_homogeneous(&a, &Form::dx(2, n, 0), &o)?;
    println!("estimate at the center: {:?}", report.radius_estimate);
    for target in [[0.5, 0.0], [2.0, 0.0], [0.0, 2.0]] {
        println!("bound towards {target:?}: {:.4}", radius_bound(&a, &target, &o, 1)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
