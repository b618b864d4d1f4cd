use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeff::{MultiIndex, Rational, Series};
use crate::error::Result;
use crate::forms::{Form, IndexSet};
use crate::linsys::{Coord, Solution, SparseSystem};

/// Every coefficient slot of an `m`-vector `k`-form truncated at `trunc`.
pub(crate) fn coords(dim: usize, m: usize, k: usize, trunc: u32) -> Vec<Coord> {
    let monos = MultiIndex::all_up_to(dim, trunc);
    let mut out = Vec::new();
    for idx in IndexSet::all_of_size(dim, k) {
        for a in 0..m {
            for alpha in &monos {
                out.push((idx, a, *alpha));
            }
        }
    }
    out
}

pub(crate) fn unit_form(dim: usize, m: usize, trunc: u32, c: &Coord) -> Form {
    let f = Series::monomial(dim, trunc, c.2, Rational::one());
    Form::term(dim, m, trunc, c.0, c.1, f)
}

/// Builds a form of the given shape from coordinate values.
pub(crate) fn form_from(
    dim: usize,
    m: usize,
    k: usize,
    trunc: u32,
    values: &BTreeMap<Coord, Rational>,
) -> Form {
    let mut grouped: BTreeMap<(IndexSet, usize), Vec<(MultiIndex, Rational)>> = BTreeMap::new();
    for ((idx, a, alpha), v) in values {
        grouped.entry((*idx, *a)).or_default().push((*alpha, v.clone()));
    }
    let mut out = Form::zero(dim, m, k, trunc);
    for ((idx, a), terms) in grouped {
        out.add_term(idx, a, Series::from_terms(dim, trunc, terms));
    }
    out
}

/// A stack of linear operators applied to one unknown form.
pub(crate) struct Stacked<'a> {
    pub ops: Vec<Box<dyn Fn(&Form) -> Result<Form> + 'a>>,
}

/// Assembles the system `op_t(φ) = rhs_t` for every operator `t`, with
/// unknown `φ` an `m`-vector `k`-form. Rows of operator `t` carry fiber
/// labels shifted by `t * m` so that they stay distinct.
pub(crate) fn assemble(
    stack: &Stacked<'_>,
    dim: usize,
    m: usize,
    k: usize,
    trunc: u32,
    rhs: &[Option<&Form>],
) -> Result<SparseSystem> {
    let mut rows: BTreeMap<Coord, (Vec<(Coord, Rational)>, Rational)> = BTreeMap::new();
    let mut sys = SparseSystem::new();
    for col in coords(dim, m, k, trunc) {
        sys.column(col);
        let unit = unit_form(dim, m, trunc, &col);
        for (t, op) in stack.ops.iter().enumerate() {
            let image = op(&unit)?;
            for ((idx, a), f) in image.coeffs() {
                for (alpha, v) in f.terms() {
                    let label = (*idx, a + t * m, *alpha);
                    rows.entry(label)
                        .or_insert_with(|| (Vec::new(), Rational::zero()))
                        .0
                        .push((col, v.clone()));
                }
            }
        }
    }
    for (t, r) in rhs.iter().enumerate() {
        if let Some(r) = r {
            for ((idx, a), f) in r.coeffs() {
                for (alpha, v) in f.terms() {
                    let label = (*idx, a + t * m, *alpha);
                    rows.entry(label)
                        .or_insert_with(|| (Vec::new(), Rational::zero()))
                        .1 = v.clone();
                }
            }
        }
    }
    for (label, (entries, b)) in rows {
        sys.add_row(label, entries, b);
    }
    Ok(sys)
}

/// Kernel of the stacked operators as a list of forms.
pub(crate) fn kernel_forms(
    stack: &Stacked<'_>,
    dim: usize,
    m: usize,
    k: usize,
    trunc: u32,
) -> Result<Vec<Form>> {
    let sys = assemble(stack, dim, m, k, trunc, &[])?;
    match crate::linsys::solve_sparse(&sys) {
        Solution::Solved { kernel, .. } => Ok(kernel
            .iter()
            .map(|v| form_from(dim, m, k, trunc, v))
            .collect()),
        Solution::Inconsistent { .. } => unreachable!("homogeneous systems are consistent"),
    }
}
