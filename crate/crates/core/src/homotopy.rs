//! Exterior derivative, the linear homotopy operator and their Hodge duals.
//!
//! `H` is evaluated with the closed monomial rule at the origin:
//! `H(x^α dx_I) = x^α (K ⌟ dx_I) / (|α| + k)` for `|I| = k`, with the Euler
//! field `K = x^i ∂_i`. Any other center is handled by translating the
//! coordinates so that the center sits at the origin.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::coeff::{int, MultiIndex, Rational, Series};
use crate::error::{Error, Result};
use crate::forms::{eta, hodge_star, star_inverse, Form, IndexSet, MatrixForm};

/// Center `x₀` of the linear homotopy `F(t, x) = x₀ + t (x - x₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Center {
    x0: Vec<Rational>,
}

impl Center {
    pub fn new(x0: Vec<Rational>) -> Self {
        Center { x0 }
    }

    pub fn origin(dim: usize) -> Self {
        Center {
            x0: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x0
    }

    pub fn is_origin(&self) -> bool {
        self.x0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.x0.iter().map(crate::coeff::to_f64).collect()
    }

    /// Re-expresses data in coordinates `u = x - x₀`.
    pub fn to_local(&self, phi: &Form) -> Form {
        phi.translate(&self.x0)
    }

    /// Inverse of [`Center::to_local`].
    pub fn from_local(&self, phi: &Form) -> Form {
        phi.translate(&self.negated())
    }

    pub fn negated(&self) -> Vec<Rational> {
        self.x0.iter().map(|c| -c).collect()
    }

    pub(crate) fn check(&self, dim: usize) -> Result<()> {
        if self.x0.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "center has {} coordinates in dimension {dim}",
                self.x0.len()
            )));
        }
        Ok(())
    }
}

/// Parts of a form under `I = dH + Hd + s*` or its Hodge dual.
///
/// For [`decompose`] the parts are exact / antiexact / point value; for
/// [`codecompose`] they are coexact / anticoexact / dual point value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub exact_part: Form,
    pub antiexact_part: Form,
    pub point_part: Form,
}

impl Decomposition {
    pub fn sum(&self) -> Form {
        &(&self.exact_part + &self.antiexact_part) + &self.point_part
    }
}

/// Exterior derivative.
pub fn ext_d(phi: &Form) -> Form {
    let n = phi.dim();
    let mut out = phi.zero_with_degree(phi.degree() + 1);
    if phi.degree() >= n {
        return out;
    }
    for ((idx, a), f) in phi.coeffs() {
        for i in 0..n {
            if idx.contains(i) {
                continue;
            }
            let df = f.partial(i);
            if df.is_zero() {
                continue;
            }
            let (target, sign) = IndexSet::single(i).wedge(idx).expect("disjoint");
            out.add_term(target, *a, if sign > 0 { df } else { -&df });
        }
    }
    out
}

/// Homotopy operator `H` about `center`. Returns zero on 0-forms.
pub fn homotopy_h(phi: &Form, center: &Center) -> Form {
    if center.is_origin() {
        return homotopy_at_origin(phi);
    }
    center.from_local(&homotopy_at_origin(&center.to_local(phi)))
}

fn homotopy_at_origin(phi: &Form) -> Form {
    let k = phi.degree();
    if k == 0 {
        return phi.zero_with_degree(0);
    }
    let (n, trunc) = (phi.dim(), phi.trunc());
    let mut acc: BTreeMap<(IndexSet, usize), Vec<(MultiIndex, Rational)>> = BTreeMap::new();
    for ((idx, a), f) in phi.coeffs() {
        for (alpha, c) in f.terms() {
            if alpha.total_degree() >= trunc {
                continue;
            }
            let weight = c / int((alpha.total_degree() as usize + k) as i64);
            for (j, i) in idx.iter().enumerate() {
                let coef = if j % 2 == 0 { weight.clone() } else { -weight.clone() };
                acc.entry((idx.without(i), *a))
                    .or_default()
                    .push((alpha.bump(i), coef));
            }
        }
    }
    let mut out = phi.zero_with_degree(k - 1);
    for ((idx, a), terms) in acc {
        out.add_term(idx, a, Series::from_terms(n, trunc, terms));
    }
    out
}

/// `H` applied entry-wise to a matrix of forms.
pub fn homotopy_h_matrix(a: &MatrixForm, center: &Center) -> MatrixForm {
    a.map(|f| homotopy_h(f, center))
}

/// Point part `s*φ`: the constant value at the center for 0-forms, zero
/// otherwise.
pub fn point_part(phi: &Form, center: &Center) -> Result<Form> {
    center.check(phi.dim())?;
    if phi.degree() != 0 {
        return Ok(phi.zero_with_degree(phi.degree()));
    }
    phi.at_point(center.coords())
}

/// Splits `φ` into exact, antiexact and point parts.
///
/// The antiexact part is `Hdφ` and the point part `s*φ`; the exact part is
/// the complement `φ - Hdφ - s*φ`, which equals `dHφ` through degree `N - 1`
/// and keeps the three parts summing to `φ` exactly.
pub fn decompose(phi: &Form, center: &Center) -> Result<Decomposition> {
    let antiexact = homotopy_h(&ext_d(phi), center);
    let point = point_part(phi, center)?;
    let exact = phi.checked_sub(&antiexact)?.checked_sub(&point)?;
    Ok(Decomposition {
        exact_part: exact,
        antiexact_part: antiexact,
        point_part: point,
    })
}

/// Codifferential `δ = ⋆⁻¹ d ⋆ η`.
pub fn codiff(phi: &Form) -> Form {
    if phi.degree() == 0 {
        return phi.zero_with_degree(0);
    }
    star_inverse(&ext_d(&hodge_star(&eta(phi))))
}

/// Cohomotopy operator `h = η ⋆⁻¹ H ⋆`.
pub fn cohomotopy_h(phi: &Form, center: &Center) -> Form {
    if phi.degree() == phi.dim() {
        return phi.zero_with_degree(phi.degree());
    }
    eta(&star_inverse(&homotopy_h(&hodge_star(phi), center)))
}

/// Dual point part `S = ⋆⁻¹ s* ⋆`, nonzero only on top-degree forms.
pub fn dual_point_part(phi: &Form, center: &Center) -> Result<Form> {
    Ok(star_inverse(&point_part(&hodge_star(phi), center)?))
}

/// Splits `φ` into coexact, anticoexact and dual point parts, mirroring
/// [`decompose`] with `δ`, `h` and `S`.
pub fn codecompose(phi: &Form, center: &Center) -> Result<Decomposition> {
    let anticoexact = cohomotopy_h(&codiff(phi), center);
    let point = dual_point_part(phi, center)?;
    let coexact = phi.checked_sub(&anticoexact)?.checked_sub(&point)?;
    Ok(Decomposition {
        exact_part: coexact,
        antiexact_part: anticoexact,
        point_part: point,
    })
}

/// `dφ = 0` with every stored term.
pub fn is_closed(phi: &Form) -> bool {
    ext_d(phi).is_zero()
}

/// `δφ = 0` with every stored term.
pub fn is_coclosed(phi: &Form) -> bool {
    codiff(phi).is_zero()
}
