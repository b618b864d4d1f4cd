//! Residual recomputation kept apart from the solvers: forms are flattened
//! into plain maps from `(basis, slot, exponents)` to rationals and `d`,
//! `δ`, `A∧_` and `A^♯⌟_` are applied term by term in coordinates about the
//! center.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::Rational;
use crate::forms::{Connection, Form};
use crate::homotopy::Center;

type Key = (Vec<usize>, usize, Vec<u32>);
type Flat = BTreeMap<Key, Rational>;

fn flatten(f: &Form) -> Flat {
    let mut out = Flat::new();
    for (idx, a, m, v) in f.flat_terms() {
        push(&mut out, (idx.indices(), a, m.to_vec()), v);
    }
    out
}

fn push(out: &mut Flat, key: Key, v: Rational) {
    let slot = out.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += v;
    if slot.is_zero() {
        out.remove(&key);
    }
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::from_integer(1.into())
    } else {
        Rational::from_integer((-1).into())
    }
}

/// `dx^i ∧ dx^I`, as a sorted index list and a sign.
fn insert(i: usize, idx: &[usize]) -> Option<(Vec<usize>, Rational)> {
    if idx.contains(&i) {
        return None;
    }
    let below = idx.iter().filter(|&&j| j < i).count();
    let mut out = idx.to_vec();
    out.insert(below, i);
    Some((out, sign(below)))
}

/// `ι_{e_i} dx^I`.
fn remove(i: usize, idx: &[usize]) -> Option<(Vec<usize>, Rational)> {
    let pos = idx.iter().position(|&j| j == i)?;
    let mut out = idx.to_vec();
    out.remove(pos);
    Some((out, sign(pos)))
}

fn d(phi: &Flat, dim: usize) -> Flat {
    let mut out = Flat::new();
    for ((idx, a, exps), v) in phi {
        for i in 0..dim {
            if exps[i] == 0 {
                continue;
            }
            if let Some((new_idx, s)) = insert(i, idx) {
                let mut e = exps.clone();
                e[i] -= 1;
                push(&mut out, (new_idx, *a, e), v * Rational::from_integer(exps[i].into()) * s);
            }
        }
    }
    out
}

fn delta(phi: &Flat, dim: usize) -> Flat {
    let mut out = Flat::new();
    for ((idx, a, exps), v) in phi {
        for i in 0..dim {
            if exps[i] == 0 {
                continue;
            }
            if let Some((new_idx, s)) = remove(i, idx) {
                let mut e = exps.clone();
                e[i] -= 1;
                push(&mut out, (new_idx, *a, e), -(v * Rational::from_integer(exps[i].into()) * s));
            }
        }
    }
    out
}

/// `Σ_b A^a_b ∧ φ^b` or `Σ_b (A^a_b)^♯ ⌟ φ^b`, dropping degrees above `trunc`.
fn connection_term(a: &Connection, phi: &Flat, trunc: u32, dual: bool) -> Flat {
    let mut out = Flat::new();
    for row in 0..a.m() {
        for col in 0..a.m() {
            let entry = flatten(a.entry(row, col));
            for ((ai, _, ae), av) in &entry {
                let i = ai[0];
                for ((idx, b, pe), pv) in phi {
                    if *b != col {
                        continue;
                    }
                    let exps: Vec<u32> = ae.iter().zip(pe).map(|(x, y)| x + y).collect();
                    if exps.iter().sum::<u32>() > trunc {
                        continue;
                    }
                    let moved = if dual { remove(i, idx) } else { insert(i, idx) };
                    if let Some((new_idx, s)) = moved {
                        push(&mut out, (new_idx, row, exps), av * pv * s);
                    }
                }
            }
        }
    }
    out
}

/// Recomputes `D φ - J` about `center` (`D = d + A∧_`, or `δ + A^♯⌟_` when
/// `dual`) and compares it with the residual a solver reported.
pub fn residual_agrees(
    dual: bool,
    a: &Connection,
    phi: &Form,
    rhs: Option<&Form>,
    center: &Center,
    reported: &Form,
) -> bool {
    let a_loc = a.translate(center.coords());
    let phi_loc = flatten(&center.to_local(phi));
    let mut res = if dual { delta(&phi_loc, a.dim()) } else { d(&phi_loc, a.dim()) };
    for (k, v) in connection_term(&a_loc, &phi_loc, a.trunc(), dual) {
        push(&mut res, k, v);
    }
    if let Some(j) = rhs {
        for (k, v) in flatten(&center.to_local(j)) {
            push(&mut res, k, -v);
        }
    }
    res == flatten(&center.to_local(reported))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::MatrixForm;
    use crate::homotopy::{codiff, ext_d};
    use crate::identities::{random_connection, random_form, Shape};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn operators_match_library() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 2..=3 {
            let shape = Shape { dim, fiber: 2, trunc: 5 };
            for k in 0..=dim {
                let phi = random_form(&mut rng, &shape, k, 5);
                assert_eq!(d(&flatten(&phi), dim), flatten(&ext_d(&phi)));
                assert_eq!(delta(&flatten(&phi), dim), flatten(&codiff(&phi)));
                let a: MatrixForm = random_connection(&mut rng, &shape, 3);
                let wedge = connection_term(&a, &flatten(&phi), 5, false);
                assert_eq!(wedge, flatten(&a.act(&phi).unwrap()));
                let inner = connection_term(&a, &flatten(&phi), 5, true);
                assert_eq!(inner, flatten(&a.interior_act(&phi).unwrap()));
            }
        }
    }

    #[test]
    fn detects_a_wrong_residual() {
        let a = MatrixForm::scalar(Form::dx(2, 4, 1));
        let phi = Form::dx(2, 4, 0);
        let center = Center::origin(2);
        let right = a.act(&phi).unwrap();
        assert!(residual_agrees(false, &a, &phi, None, &center, &right));
        assert!(!residual_agrees(false, &a, &phi, None, &center, &phi));
    }
}
