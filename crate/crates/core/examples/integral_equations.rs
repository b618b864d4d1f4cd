//! Fixed-point forms of the solvers: the Neumann iteration for
//! dφ + A∧φ = J_e and the Riemann–Graves fundamental solution of dΦ = ΦΓ.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let o = Center::origin(2);
    let a = Connection::scalar(Form::dx(2, n, 1));
    let c = Form::dx(2, n, 0);
    let fixed = neumann_integral_solve(&a, &Form::zero(2, 1, 2, n), &c, &o)?;
    let series = solve_homogeneous(&a, &c, &o)?.solution;
    println!("Neumann iteration matches the series solution: {}", fixed == series);

    // Γ = [[0, dx], [-dx, 0]] gives a rotation by angle x
    let gamma = MatrixForm::from_entries(
        2,
        vec![Form::zero(2, 1, 1, n), Form::dx(2, n, 0), Form::dx(2, n, 0).scale(&int(-1)), Form::zero(2, 1, 1, n)],
    )?;
    let phi = riemann_graves_solve(&gamma, &o)?;
    println!("Φ₁₁ = {}", phi.entry(0, 0));
    println!("Φ₁₂ = {}", phi.entry(0, 1));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
