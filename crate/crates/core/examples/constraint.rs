//! The general solver splits J into an exact part and an antiexact part,
//! then solves A∧φ₂ = J_a algebraically. When J_a lies outside the image
//! of A∧_ the obstruction is reported.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 6;
    let o = Center::origin(2);
    let a = Connection::scalar(Form::dx(2, n, 1));
    let (x, y) = (Series::variable(2, n, 0), Series::variable(2, n, 1));

    let exact = Form::basis(2, n, IndexSet::new(&[0, 1]).unwrap());
    let report = solve_general(&a, &Form::zero(2, 1, 1, n), &exact, &o)?;
    println!("J = dx^dy: φ = {}", report.solution);
    println!("  status {}", report.constraint_status.label());

    let half = rat(1, 2);
    let rotation = &Form::dx(2, n, 1).mul_function(&x.scale(&half))
        - &Form::dx(2, n, 0).mul_function(&y.scale(&half));
    match solve_general(&a, &Form::zero(2, 1, 1, n), &rotation, &o) {
        Err(Error::NoSolution(obstruction)) => println!("J = (x dy - y dx)/2: {}", obstruction.detail),
        other => panic!("expected an obstruction, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
