use super::{Form, IndexSet, PolyVectorField};
use crate::error::{Error, Result};

/// Exterior product. At most one argument may carry a fiber dimension
/// above one; the result takes the larger fiber.
pub fn wedge(alpha: &Form, beta: &Form) -> Result<Form> {
    alpha.check_ring(beta.dim(), beta.trunc())?;
    if alpha.fiber() > 1 && beta.fiber() > 1 {
        return Err(Error::FiberMismatch(format!(
            "wedge of two vector-valued forms (m={} and m={})",
            alpha.fiber(),
            beta.fiber()
        )));
    }
    let fiber = alpha.fiber().max(beta.fiber());
    let degree = alpha.degree() + beta.degree();
    let mut out = Form::zero(alpha.dim(), fiber, degree.min(alpha.dim()), alpha.trunc());
    if degree > alpha.dim() {
        return Ok(out);
    }
    for ((i, a), f) in alpha.coeffs() {
        for ((j, b), g) in beta.coeffs() {
            if let Some((ij, sign)) = i.wedge(j) {
                let prod = f * g;
                let prod = if sign < 0 { -&prod } else { prod };
                out.add_term(ij, (*a).max(*b), prod);
            }
        }
    }
    Ok(out)
}

/// Interior product `X ⌟ φ`, an antiderivation of degree -1.
pub fn interior(x: &PolyVectorField, phi: &Form) -> Result<Form> {
    phi.check_ring(x.dim(), x.trunc())?;
    if phi.degree() == 0 {
        return Ok(phi.zero_with_degree(0));
    }
    let mut out = phi.zero_with_degree(phi.degree() - 1);
    for ((idx, a), f) in phi.coeffs() {
        for (j, i) in idx.iter().enumerate() {
            let xi = x.component(i);
            if xi.is_zero() {
                continue;
            }
            let prod = f * xi;
            out.add_term(idx.without(i), *a, if j % 2 == 0 { prod } else { -&prod });
        }
    }
    Ok(out)
}

/// `α^♯` under the identity metric.
pub fn sharp(alpha: &Form) -> Result<PolyVectorField> {
    if alpha.degree() != 1 {
        return Err(Error::DegreeError(format!(
            "sharp needs a one-form, got degree {}",
            alpha.degree()
        )));
    }
    if alpha.fiber() != 1 {
        return Err(Error::FiberMismatch("sharp needs a scalar one-form".into()));
    }
    let comps = (0..alpha.dim())
        .map(|i| alpha.coeff(IndexSet::single(i), 0))
        .collect();
    Ok(PolyVectorField::new(comps))
}

/// `X^♭` under the identity metric.
pub fn flat(x: &PolyVectorField) -> Form {
    let mut out = Form::zero(x.dim(), 1, 1, x.trunc());
    for i in 0..x.dim() {
        out.add_term(IndexSet::single(i), 0, x.component(i).clone());
    }
    out
}

/// Euclidean Hodge star with orientation `dx1 ∧ ... ∧ dxn`.
pub fn hodge_star(phi: &Form) -> Form {
    let n = phi.dim();
    let mut out = phi.zero_with_degree(n - phi.degree());
    for ((idx, a), f) in phi.coeffs() {
        let comp = idx.complement(n);
        let (_, sign) = idx.wedge(&comp).expect("complement is disjoint");
        out.add_term(comp, *a, if sign > 0 { f.clone() } else { -f });
    }
    out
}

/// Inverse of [`hodge_star`]: `⋆⁻¹ψ = (-1)^{j(n-j)} ⋆ψ` on `j`-forms.
pub fn star_inverse(psi: &Form) -> Form {
    let j = psi.degree();
    let star = hodge_star(psi);
    if (j * (psi.dim() - j)).is_multiple_of(2) {
        star
    } else {
        -&star
    }
}

/// `η φ = (-1)^k φ`.
pub fn eta(phi: &Form) -> Form {
    if phi.degree().is_multiple_of(2) {
        phi.clone()
    } else {
        -phi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rat, MultiIndex, Series};

    fn x(n: usize, var: usize) -> Series {
        Series::variable(n, 6, var)
    }

    #[test]
    fn wedge_anticommutes() {
        let dx = Form::dx(2, 6, 0);
        let dy = Form::dx(2, 6, 1);
        let xy = wedge(&dx, &dy).unwrap();
        let yx = wedge(&dy, &dx).unwrap();
        assert_eq!(xy, -&yx);
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        assert_eq!(xy.coeff(IndexSet::full(2), 0), Series::one(2, 6));
    }

    #[test]
    fn wedge_rejects_two_vector_forms() {
        let v = Form::dx(2, 6, 0).embed(0, 2);
        assert!(matches!(wedge(&v, &v), Err(Error::FiberMismatch(_))));
    }

    #[test]
    fn interior_of_euler_field() {
        // K ⌟ (dy ∧ dx) = y dx - x dy
        let k = PolyVectorField::new(vec![x(2, 0), x(2, 1)]);
        let dydx = wedge(&Form::dx(2, 6, 1), &Form::dx(2, 6, 0)).unwrap();
        let got = interior(&k, &dydx).unwrap();
        let mut want = Form::zero(2, 1, 1, 6);
        want.add_term(IndexSet::single(0), 0, x(2, 1));
        want.add_term(IndexSet::single(1), 0, -&x(2, 0));
        assert_eq!(got, want);
        assert!(interior(&k, &Form::function(x(2, 0))).unwrap().is_zero());
    }

    #[test]
    fn sharp_is_componentwise() {
        let alpha = &Form::dx(2, 6, 0).mul_function(&x(2, 0)) + &Form::dx(2, 6, 1).mul_function(&x(2, 1));
        let v = sharp(&alpha).unwrap();
        assert_eq!(v.component(0), &x(2, 0));
        assert_eq!(flat(&v), alpha);
        assert!(matches!(
            sharp(&Form::function(x(2, 0))),
            Err(Error::DegreeError(_))
        ));
    }

    #[test]
    fn star_in_the_plane() {
        let dx = Form::dx(2, 6, 0);
        let dy = Form::dx(2, 6, 1);
        assert_eq!(hodge_star(&dx), dy);
        assert_eq!(hodge_star(&dy), -&dx);
        let one = Form::function(Series::one(2, 6));
        assert_eq!(hodge_star(&one), Form::basis(2, 6, IndexSet::full(2)));
        assert_eq!(star_inverse(&hodge_star(&dy)), dy);
    }

    #[test]
    fn star_in_space() {
        let f = Series::monomial(3, 6, MultiIndex::new(&[1, 0, 2]), rat(3, 2));
        for k in 0..=3 {
            for idx in IndexSet::all_of_size(3, k) {
                let phi = Form::term(3, 1, 6, idx, 0, f.clone());
                let twice = hodge_star(&hodge_star(&phi));
                let want = phi.scale(&crate::coeff::int(if k * (3 - k) % 2 == 0 { 1 } else { -1 }));
                assert_eq!(twice, want);
                assert_eq!(star_inverse(&hodge_star(&phi)), phi);
            }
        }
    }

    #[test]
    fn eta_signs() {
        let dx = Form::dx(2, 6, 0);
        assert_eq!(eta(&dx), -&dx);
        let vol = Form::basis(2, 6, IndexSet::full(2));
        assert_eq!(eta(&vol), vol);
    }
}
