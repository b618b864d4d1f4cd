//! The Hodge dual equation (δ + A♯⌟)φ = 0 and its relation to the primal
//! solution through the star operator.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let o = Center::origin(2);
    let a = Connection::scalar(Form::dx(2, n, 1));
    let c = Form::dx(2, n, 1);
    let dual = solve_dual(&a, &c, &Form::zero(2, 1, 0, n), &o)?;
    println!("φ = {}", dual.solution);
    println!("residual degree {}", dual.residual_min_degree);

    let minus_a = Connection::scalar(Form::dx(2, n, 1).scale(&int(-1)));
    let primal = solve_homogeneous(&minus_a, &Form::dx(2, n, 0), &o)?;
    let starred = hodge_star(&primal.solution);
    println!("⋆ of the primal solution with -A agrees: {}", starred == dual.solution);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
