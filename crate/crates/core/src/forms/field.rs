use crate::coeff::{Rational, Series};

/// Vector field `X = X^i ∂_i` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVectorField {
    comps: Vec<Series>,
}

impl PolyVectorField {
    pub fn new(comps: Vec<Series>) -> Self {
        assert!(!comps.is_empty(), "vector field needs at least one component");
        let (n, t) = (comps[0].dim(), comps[0].trunc());
        assert_eq!(comps.len(), n, "component count must equal dimension");
        assert!(
            comps.iter().all(|c| c.dim() == n && c.trunc() == t),
            "components must share dimension and truncation"
        );
        PolyVectorField { comps }
    }

    pub fn zero(dim: usize, trunc: u32) -> Self {
        Self::new(vec![Series::zero(dim, trunc); dim])
    }

    /// The coordinate field `∂_i`.
    pub fn coordinate(dim: usize, trunc: u32, i: usize) -> Self {
        let mut comps = vec![Series::zero(dim, trunc); dim];
        comps[i] = Series::one(dim, trunc);
        Self::new(comps)
    }

    /// The Euler field `K = (x - x0)^i ∂_i`.
    pub fn euler(dim: usize, trunc: u32, center: &[Rational]) -> Self {
        let comps = (0..dim)
            .map(|i| {
                let xi = Series::variable(dim, trunc, i);
                &xi - &Series::constant(dim, trunc, center[i].clone())
            })
            .collect();
        Self::new(comps)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn trunc(&self) -> u32 {
        self.comps[0].trunc()
    }

    pub fn component(&self, i: usize) -> &Series {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Series] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Series::is_zero)
    }

    pub fn translate(&self, shift: &[Rational]) -> Self {
        Self::new(self.comps.iter().map(|c| c.translate(shift)).collect())
    }
}
