//! Horizontal projection Δφ = Σ ω_i ∧ (X_i ⌟ φ). A form that is already
//! horizontal and covariantly constant is reproduced exactly.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 8;
    let o = Center::origin(2);
    let a = Connection::scalar(Form::dx(2, n, 1));
    let frame = HorizontalFrame::new(vec![Form::dx(2, n, 1)], vec![PolyVectorField::coordinate(2, n, 1)])?;

    let phi = solve_homogeneous(&a, &Form::dx(2, n, 0), &o)?.solution;
    let h = horizontal_delta(&frame, &a, &phi, &o)?;
    println!("Δφ = {}", h.delta);
    println!("  covariantly constant: {}", h.covariantly_constant);

    // e^{-y} dx
    let exp_neg_y = Series::from_terms(
        2,
        n,
        (0..=n).map(|k| {
            let c = covinv::coeff::inv_factorial(k);
            (MultiIndex::new(&[0, k]), if k % 2 == 0 { c } else { -c })
        }),
    );
    let phi2 = Form::dx(2, n, 0).mul_function(&exp_neg_y);
    let h2 = horizontal_delta(&frame, &a, &phi2, &o)?;
    println!("Δ(e^(-y) dx) = e^(-y) dx: {}", h2.delta == phi2);
    println!("  covariantly constant: {}", h2.covariantly_constant);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
