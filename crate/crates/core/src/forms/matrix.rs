use std::fmt;

use super::{interior, sharp, wedge, Form};
use crate::coeff::{to_f64, Rational, Series};
use crate::error::{Error, Result};

/// `m × m` matrix of scalar `k`-forms, stored row-major.
///
/// Degree one gives a connection `A ∈ Λ¹(U, End V)`; degree zero gives a
/// matrix of functions (gauge elements, Riemann–Graves unknowns); degree two
/// holds curvatures.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixForm {
    m: usize,
    entries: Vec<Form>,
}

/// Matrix-valued one-form.
pub type Connection = MatrixForm;

impl MatrixForm {
    pub fn zero(dim: usize, m: usize, degree: usize, trunc: u32) -> Self {
        MatrixForm {
            m,
            entries: vec![Form::zero(dim, 1, degree, trunc); m * m],
        }
    }

    /// The `1 × 1` matrix holding a scalar form.
    pub fn scalar(form: Form) -> Self {
        assert_eq!(form.fiber(), 1, "matrix entries are scalar forms");
        MatrixForm {
            m: 1,
            entries: vec![form],
        }
    }

    /// Builds from row-major entries, checking they share shape.
    pub fn from_entries(m: usize, entries: Vec<Form>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::FiberMismatch(format!(
                "{} entries for a {m}x{m} matrix",
                entries.len()
            )));
        }
        let first = &entries[0];
        let shape = Form::zero(first.dim(), 1, first.degree(), first.trunc());
        for e in &entries {
            e.check_same_shape(&shape)?;
        }
        Ok(MatrixForm { m, entries })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: Vec<Form>) -> Result<Self> {
        let m = diag.len();
        let first = diag
            .first()
            .ok_or_else(|| Error::FiberMismatch("empty diagonal".into()))?;
        let zero = first.zero_with_degree(first.degree());
        let mut entries = vec![zero; m * m];
        for (a, f) in diag.into_iter().enumerate() {
            entries[a * m + a] = f;
        }
        Self::from_entries(m, entries)
    }

    /// Matrix of functions (degree 0) from row-major series.
    pub fn from_functions(m: usize, entries: Vec<Series>) -> Result<Self> {
        Self::from_entries(m, entries.into_iter().map(Form::function).collect())
    }

    /// Identity matrix of functions.
    pub fn identity(dim: usize, m: usize, trunc: u32) -> Self {
        let mut out = Self::zero(dim, m, 0, trunc);
        for a in 0..m {
            out.entries[a * m + a] = Form::function(Series::one(dim, trunc));
        }
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.entries[0].dim()
    }

    pub fn degree(&self) -> usize {
        self.entries[0].degree()
    }

    pub fn trunc(&self) -> u32 {
        self.entries[0].trunc()
    }

    pub fn entry(&self, a: usize, b: usize) -> &Form {
        &self.entries[a * self.m + b]
    }

    pub fn entries(&self) -> &[Form] {
        &self.entries
    }

    /// Replaces entry `(a, b)`; the new entry must match the matrix shape.
    pub fn set(&mut self, a: usize, b: usize, f: Form) -> Result<()> {
        f.check_same_shape(&self.entries[0].zero_with_degree(self.degree()))?;
        self.entries[a * self.m + b] = f;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// Lowest coefficient degree over all entries.
    pub fn min_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Form::min_degree).min()
    }

    pub fn map(&self, op: impl FnMut(&Form) -> Form) -> Self {
        MatrixForm {
            m: self.m,
            entries: self.entries.iter().map(op).collect(),
        }
    }

    pub fn try_map(&self, op: impl FnMut(&Form) -> Result<Form>) -> Result<Self> {
        Ok(MatrixForm {
            m: self.m,
            entries: self.entries.iter().map(op).collect::<Result<_>>()?,
        })
    }

    pub fn translate(&self, shift: &[Rational]) -> Self {
        self.map(|f| f.translate(shift))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_m(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(MatrixForm { m: self.m, entries })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.map(|f| -f))
    }

    pub fn neg(&self) -> Self {
        self.map(|f| -f)
    }

    fn check_m(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::FiberMismatch(format!(
                "{0}x{0} vs {1}x{1} matrices",
                self.m, other.m
            )));
        }
        Ok(())
    }

    /// Matrix wedge `(A ∧ B)^a_c = Σ_b A^a_b ∧ B^b_c`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_m(other)?;
        let m = self.m;
        let degree = (self.degree() + other.degree()).min(self.dim());
        let mut out = Self::zero(self.dim(), m, degree, self.trunc());
        for a in 0..m {
            for c in 0..m {
                let mut acc = out.entries[a * m + c].clone();
                for b in 0..m {
                    let (l, r) = (self.entry(a, b), other.entry(b, c));
                    if l.is_zero() || r.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&wedge(l, r)?)?;
                }
                out.entries[a * m + c] = acc;
            }
        }
        Ok(out)
    }

    /// Left action on a vector-valued form: `(A ∧ φ)^a = Σ_b A^a_b ∧ φ^b`.
    pub fn act(&self, phi: &Form) -> Result<Form> {
        self.check_fiber(phi)?;
        let degree = (self.degree() + phi.degree()).min(phi.dim());
        let mut parts = Vec::with_capacity(self.m);
        let comps: Vec<Form> = (0..self.m).map(|b| phi.component(b)).collect();
        for a in 0..self.m {
            let mut acc = Form::zero(phi.dim(), 1, degree, phi.trunc());
            for (b, pb) in comps.iter().enumerate() {
                let e = self.entry(a, b);
                if e.is_zero() || pb.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&wedge(e, pb)?)?;
            }
            parts.push(acc);
        }
        Form::from_components(&parts)
    }

    /// Right action `(φ ∧ A)^a = Σ_b φ^b ∧ A^b_a`, treating `φ` as a row.
    pub fn act_right(&self, phi: &Form) -> Result<Form> {
        self.check_fiber(phi)?;
        let degree = (self.degree() + phi.degree()).min(phi.dim());
        let comps: Vec<Form> = (0..self.m).map(|b| phi.component(b)).collect();
        let mut parts = Vec::with_capacity(self.m);
        for a in 0..self.m {
            let mut acc = Form::zero(phi.dim(), 1, degree, phi.trunc());
            for (b, pb) in comps.iter().enumerate() {
                let e = self.entry(b, a);
                if e.is_zero() || pb.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&wedge(pb, e)?)?;
            }
            parts.push(acc);
        }
        Form::from_components(&parts)
    }

    /// Dual action `(A^♯ ⌟ φ)^a = Σ_b (A^a_b)^♯ ⌟ φ^b` of a connection.
    pub fn interior_act(&self, phi: &Form) -> Result<Form> {
        self.check_fiber(phi)?;
        if self.degree() != 1 {
            return Err(Error::DegreeError("dual action needs a one-form matrix".into()));
        }
        let comps: Vec<Form> = (0..self.m).map(|b| phi.component(b)).collect();
        let degree = phi.degree().saturating_sub(1);
        let mut parts = Vec::with_capacity(self.m);
        for a in 0..self.m {
            let mut acc = Form::zero(phi.dim(), 1, degree, phi.trunc());
            for (b, pb) in comps.iter().enumerate() {
                let e = self.entry(a, b);
                if e.is_zero() || pb.is_zero() {
                    continue;
                }
                acc = acc.checked_add(&interior(&sharp(e)?, pb)?)?;
            }
            parts.push(acc);
        }
        Form::from_components(&parts)
    }

    fn check_fiber(&self, phi: &Form) -> Result<()> {
        phi.check_ring(self.dim(), self.trunc())?;
        if phi.fiber() != self.m {
            return Err(Error::FiberMismatch(format!(
                "{0}x{0} matrix acting on a form with fiber {1}",
                self.m,
                phi.fiber()
            )));
        }
        Ok(())
    }

    /// Frobenius norm over entries and coordinate components at a point.
    pub fn norm_at(&self, point: &[f64]) -> Result<f64> {
        let mut sum = 0.0;
        for e in &self.entries {
            for (_, f) in e.coeffs() {
                let v = f.eval(point)?;
                sum += v * v;
            }
        }
        Ok(sum.sqrt())
    }

    /// Frobenius norm of the constant terms.
    pub fn norm_at_origin(&self) -> f64 {
        let mut sum = 0.0;
        for e in &self.entries {
            for (_, f) in e.coeffs() {
                let v = to_f64(&f.constant_term());
                sum += v * v;
            }
        }
        sum.sqrt()
    }
}

impl fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        let rows: Vec<String> = (0..self.m)
            .map(|a| {
                let cells: Vec<String> =
                    (0..self.m).map(|b| self.entry(a, b).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixForm[{0}x{0}, k={1}]({self})", self.m, self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::IndexSet;

    #[test]
    fn scalar_action_is_wedge() {
        let a = MatrixForm::scalar(Form::dx(2, 4, 1));
        let got = a.act(&Form::dx(2, 4, 0)).unwrap();
        assert_eq!(got, -&Form::basis(2, 4, IndexSet::full(2)));
        assert!(a.act(&Form::zero(2, 1, 1, 4)).unwrap().is_zero());
    }

    #[test]
    fn block_diagonal_action() {
        let alpha = Form::dx(2, 4, 0);
        let a = MatrixForm::diagonal(vec![alpha.clone(), Form::zero(2, 1, 1, 4)]).unwrap();
        let beta = Form::dx(2, 4, 1);
        let gamma = Form::dx(2, 4, 0);
        let phi = Form::from_components(&[beta.clone(), gamma]).unwrap();
        let got = a.act(&phi).unwrap();
        let want = Form::from_components(&[wedge(&alpha, &beta).unwrap(), Form::zero(2, 1, 2, 4)])
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn nilpotent_matrix_squares_to_zero() {
        let x = Series::variable(2, 4, 0);
        let mut a = MatrixForm::zero(2, 2, 1, 4);
        a.set(0, 1, Form::dx(2, 4, 1).mul_function(&x)).unwrap();
        assert!(a.wedge(&a).unwrap().is_zero());
    }
}
