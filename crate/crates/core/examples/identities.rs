//! Checks the operator identities on seeded random forms.

use covinv::identities::run_suite;

pub fn run_example() -> covinv::Result<()> {
    for r in run_suite(2, 5, 3, 20)? {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        println!("{verdict}  m={}  {}", r.fiber, r.name);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> covinv::Result<()> {
    run_example()
}
