#![allow(dead_code)]

use covinv::coeff::inv_factorial;
use covinv::prelude::*;

pub fn var(n: usize, trunc: u32, i: usize) -> Series {
    Series::variable(n, trunc, i)
}

pub fn mono(n: usize, trunc: u32, exps: &[u32], c: Rational) -> Series {
    Series::monomial(n, trunc, MultiIndex::new(exps), c)
}

/// Alternating `Σ_{j ≤ top} (-1)^j y^j / (j + shift)!` on the plane.
pub fn alt_series(trunc: u32, top: u32, shift: u32) -> Series {
    let terms = (0..=top).map(|j| {
        let c = inv_factorial(j + shift);
        (MultiIndex::new(&[0, j]), if j % 2 == 0 { c } else { -c })
    });
    Series::from_terms(2, trunc, terms.collect::<Vec<_>>())
}

/// Taylor data of `(1 - e^{-y}) dx / y + (e^{-y} - 1 + y) x dy / y²`.
pub fn dydx_oracle(trunc: u32) -> Form {
    let dx = Form::dx(2, trunc, 0).mul_function(&alt_series(trunc, trunc, 1));
    let dy_coef = &alt_series(trunc, trunc - 1, 2) * &var(2, trunc, 0);
    &dx + &Form::dx(2, trunc, 1).mul_function(&dy_coef)
}

/// `γ_k = (y^k dx - y^{k-1} x dy) / (k + 1)!`.
pub fn dydx_gamma(trunc: u32, k: u32) -> Form {
    let c = inv_factorial(k + 1);
    let a = Form::dx(2, trunc, 0).mul_function(&mono(2, trunc, &[0, k], c.clone()));
    let b = Form::dx(2, trunc, 1).mul_function(&mono(2, trunc, &[1, k - 1], c));
    &a - &b
}

/// The base problem: `A = dy`, `c = dx` on the plane.
pub fn dydx(trunc: u32) -> (Connection, Form) {
    (Connection::scalar(Form::dx(2, trunc, 1)), Form::dx(2, trunc, 0))
}

/// Taylor data of `e^{-y}`.
pub fn exp_neg_y(trunc: u32) -> Series {
    alt_series(trunc, trunc, 0)
}
