//! Gauge covariance: if dφ + A∧φ = 0 then φ' = g⁻¹φ solves the equation
//! for A' = g⁻¹Ag + g⁻¹dg.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let a = Connection::scalar(Form::dx(2, n, 1));
    let phi = solve_homogeneous(&a, &Form::dx(2, n, 0), &Center::origin(2))?.solution;

    let (x, y) = (Series::variable(2, n, 0), Series::variable(2, n, 1));
    let g = GaugeElement::exp_scalar(&(&x * &y))?;
    let a2 = gauge_transform(&a, &g)?;
    let phi2 = gauge_push(&phi, &g)?;
    println!("A' = {}", a2.entry(0, 0));
    let residual = cov_d(&a2, &phi2)?;
    println!("residual degree of (d + A'∧)φ' = {}", residual_degree(&residual, &Center::origin(2)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
