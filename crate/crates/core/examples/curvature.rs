//! (d + A∧)²φ = F∧φ = J as two first-order solves.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 6;
    let o = Center::origin(3);
    let x = Series::variable(3, n, 0);
    // A = x dy has curvature dx^dy
    let a = Connection::scalar(Form::dx(3, n, 1).mul_function(&x));
    println!("F = {}", curvature(&a)?.entry(0, 0));

    // F∧dx = 0, so the initial data dx is compatible with (d + A∧)φ = 0
    let j = Form::zero(3, 1, 3, n);
    let c2 = Form::zero(3, 1, 2, n);
    let c1 = Form::dx(3, n, 0);
    let s = solve_curvature(&a, &j, &c1, &c2, &o)?;
    println!("φ = {}", s.phi1);
    println!("(d + A∧)φ = {}", s.phi2);
    let twice = cov_d(&a, &cov_d(&a, &s.phi1)?)?;
    println!("residual degree of (d + A∧)²φ - J: {}", residual_degree(&(&twice - &j), &o));
    println!("stage residual degrees: {} and {}", s.stage2.residual_min_degree, s.stage1.residual_min_degree);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
