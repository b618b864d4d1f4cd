//! Reads a problem in the text format, solves it and prints the report in
//! every output format.

use covinv::cli::{emit, parse_problem, run, OutputFormat};

const PROBLEM: &str = "\
# dφ + dy∧φ = 0 with dHφ = dx
dim=2
trunc=4
A[1][1]=dy
equation=homogeneous
c=dx
";

pub fn run_example() -> covinv::Result<()> {
    let report = run(&parse_problem(PROBLEM)?)?;
    for format in [OutputFormat::Text, OutputFormat::Latex, OutputFormat::Json] {
        print!("{}", emit(&report, format));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> covinv::Result<()> {
    run_example()
}
