//! δdφ = 0 for a one-form in three dimensions, solved as δψ = 0 followed
//! by dφ = ψ. With closed and coclosed initial data the answer is e + Hc.

use covinv::prelude::*;

pub fn run_example() -> Result<()> {
    let n = 6;
    let o = Center::origin(3);
    let zero = Connection::zero(3, 1, 1, n);
    let (x, y) = (Series::variable(3, n, 0), Series::variable(3, n, 1));
    // x² - y² is harmonic, so c = ⋆d(x² - y²) is closed and coclosed
    let c = hodge_star(&ext_d(&Form::function(&(&x * &x) - &(&y * &y))));
    let e = Form::dx(3, n, 2);
    let stages = [
        PipelineStage::new(PipelineOp::Dual(zero.clone()), 1).with_initial(vec![c.clone()]),
        PipelineStage::new(PipelineOp::Covariant(zero), 1).with_initial(vec![e.clone()]),
    ];
    let report = solve_pipeline(&stages, &Form::zero(3, 1, 1, n), &o)?;
    println!("φ = {}", report.solution);
    println!("φ = e + Hc: {}", report.solution == &e + &homotopy_h(&c, &o));
    println!("δdφ = {}", codiff(&ext_d(&report.solution)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
