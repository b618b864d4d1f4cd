use num_traits::{One, Zero};

use super::MatrixForm;
use crate::coeff::Series;
use crate::error::{Error, Result};

/// Invertible `m × m` matrix of functions together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    m: usize,
    entries: Vec<Series>,
    inverse: Vec<Series>,
}

impl GaugeElement {
    /// Builds from row-major entries, computing the inverse by elimination
    /// over the truncated series ring.
    pub fn new(m: usize, entries: Vec<Series>) -> Result<Self> {
        if entries.len() != m * m || m == 0 {
            return Err(Error::FiberMismatch(format!(
                "{} entries for a {m}x{m} gauge",
                entries.len()
            )));
        }
        let inverse = invert(m, &entries)?;
        Ok(GaugeElement { m, entries, inverse })
    }

    /// Accepts a caller-supplied inverse after checking `g g⁻¹ = I`.
    pub fn with_inverse(m: usize, entries: Vec<Series>, inverse: Vec<Series>) -> Result<Self> {
        if entries.len() != m * m || inverse.len() != m * m {
            return Err(Error::SingularGauge);
        }
        let prod = mat_mul(m, &entries, &inverse)?;
        for a in 0..m {
            for b in 0..m {
                let want = if a == b { Series::one(prod[0].dim(), prod[0].trunc()) } else { Series::zero(prod[0].dim(), prod[0].trunc()) };
                if prod[a * m + b] != want {
                    return Err(Error::SingularGauge);
                }
            }
        }
        Ok(GaugeElement { m, entries, inverse })
    }

    /// Scalar gauge `g = e^λ` for `λ` with zero constant term.
    pub fn exp_scalar(lambda: &Series) -> Result<Self> {
        let g = lambda.exp()?;
        let inv = (-lambda).exp()?;
        Ok(GaugeElement {
            m: 1,
            entries: vec![g],
            inverse: vec![inv],
        })
    }

    pub fn identity(dim: usize, m: usize, trunc: u32) -> Self {
        let mut entries = vec![Series::zero(dim, trunc); m * m];
        for a in 0..m {
            entries[a * m + a] = Series::one(dim, trunc);
        }
        GaugeElement {
            m,
            inverse: entries.clone(),
            entries,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    pub fn inverse_entries(&self) -> &[Series] {
        &self.inverse
    }

    /// `g` as a degree-0 matrix form.
    pub fn matrix(&self) -> MatrixForm {
        MatrixForm::from_functions(self.m, self.entries.clone()).expect("square gauge")
    }

    /// `g⁻¹` as a degree-0 matrix form.
    pub fn inverse_matrix(&self) -> MatrixForm {
        MatrixForm::from_functions(self.m, self.inverse.clone()).expect("square gauge")
    }
}

fn mat_mul(m: usize, a: &[Series], b: &[Series]) -> Result<Vec<Series>> {
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let mut acc = Series::zero(a[0].dim(), a[0].trunc());
            for k in 0..m {
                acc = acc.checked_add(&a[i * m + k].checked_mul(&b[k * m + j])?)?;
            }
            out.push(acc);
        }
    }
    Ok(out)
}

// Gauss–Jordan over the series ring; a pivot is usable iff its constant
// term is nonzero.
fn invert(m: usize, entries: &[Series]) -> Result<Vec<Series>> {
    let (dim, trunc) = (entries[0].dim(), entries[0].trunc());
    let mut a: Vec<Vec<Series>> = (0..m).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect();
    let mut inv: Vec<Vec<Series>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { Series::one(dim, trunc) } else { Series::zero(dim, trunc) })
                .collect()
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !a[r][col].constant_term().is_zero())
            .ok_or(Error::SingularGauge)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = a[col][col].inverse()?;
        for j in 0..m {
            a[col][j] = &a[col][j] * &p_inv;
            inv[col][j] = &inv[col][j] * &p_inv;
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..m {
                a[r][j] = &a[r][j] - &(&factor * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&factor * &inv[col][j]);
            }
        }
    }
    debug_assert!(a.iter().enumerate().all(|(i, row)| row[i].constant_term().is_one()));
    Ok(inv.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::int;

    #[test]
    fn inverse_of_unipotent_matrix() {
        let x = Series::variable(2, 5, 0);
        let one = Series::one(2, 5);
        let zero = Series::zero(2, 5);
        let g = GaugeElement::new(2, vec![one.clone(), x.clone(), zero.clone(), one.clone()]).unwrap();
        assert_eq!(g.inverse_entries()[1], -&x);
        let prod = mat_mul(2, g.entries(), g.inverse_entries()).unwrap();
        assert_eq!(prod, vec![one.clone(), zero.clone(), zero, one]);
    }

    #[test]
    fn singular_gauge_detected() {
        let x = Series::variable(1, 5, 0);
        assert_eq!(GaugeElement::new(1, vec![x]), Err(Error::SingularGauge));
        let two = Series::constant(1, 5, int(2));
        let bad = Series::constant(1, 5, int(1));
        assert_eq!(
            GaugeElement::with_inverse(1, vec![two], vec![bad]),
            Err(Error::SingularGauge)
        );
    }

    #[test]
    fn scalar_exponential_gauge() {
        let y = Series::variable(2, 6, 1);
        let g = GaugeElement::exp_scalar(&y).unwrap();
        assert!((&g.entries()[0] * &g.inverse_entries()[0]).constant_term().is_one());
        assert_eq!(&g.entries()[0] * &g.inverse_entries()[0], Series::one(2, 6));
    }
}
