use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::IndexSet;
use crate::coeff::{variable_names, MultiIndex, Rational, Series};
use crate::error::{Error, Result};

/// A degree-`k` differential form on `R^n` with values in `Q^m`.
///
/// Stored component-wise: each `(basis index set, fiber index)` pair maps to
/// a nonzero coefficient [`Series`]. Fiber indices are 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    fiber: usize,
    degree: usize,
    trunc: u32,
    coeffs: BTreeMap<(IndexSet, usize), Series>,
}

impl Form {
    pub fn zero(dim: usize, fiber: usize, degree: usize, trunc: u32) -> Self {
        assert!(fiber >= 1, "fiber dimension must be positive");
        Form {
            dim,
            fiber,
            degree,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// Scalar-valued 0-form with the given coefficient.
    pub fn function(f: Series) -> Self {
        let mut out = Self::zero(f.dim(), 1, 0, f.trunc());
        out.add_term(IndexSet::EMPTY, 0, f);
        out
    }

    /// Scalar basis form `dx_I` with coefficient 1.
    pub fn basis(dim: usize, trunc: u32, idx: IndexSet) -> Self {
        Self::term(dim, 1, trunc, idx, 0, Series::one(dim, trunc))
    }

    /// Scalar one-form `dx_i`.
    pub fn dx(dim: usize, trunc: u32, i: usize) -> Self {
        Self::basis(dim, trunc, IndexSet::single(i))
    }

    /// A single term `f dx_I` in fiber slot `a`.
    pub fn term(dim: usize, fiber: usize, trunc: u32, idx: IndexSet, a: usize, f: Series) -> Self {
        let mut out = Self::zero(dim, fiber, idx.len(), trunc);
        out.add_term(idx, a, f);
        out
    }

    /// Adds `f dx_I` to fiber slot `a` in place.
    pub fn add_term(&mut self, idx: IndexSet, a: usize, f: Series) {
        assert_eq!(idx.len(), self.degree, "basis degree differs from form degree");
        assert!(a < self.fiber, "fiber index out of range");
        assert!(idx.max_index().is_none_or(|i| i < self.dim), "basis index out of range");
        assert_eq!((f.dim(), f.trunc()), (self.dim, self.trunc), "coefficient ring mismatch");
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry((idx, a)) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &f;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(IndexSet, usize), &Series)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, idx: IndexSet, a: usize) -> Series {
        self.coeffs
            .get(&(idx, a))
            .cloned()
            .unwrap_or_else(|| Series::zero(self.dim, self.trunc))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest total degree over all coefficient terms, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Series::min_degree).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.coeffs.values().filter_map(Series::max_degree).max()
    }

    /// Total number of stored monomial terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.values().map(Series::len).sum()
    }

    /// Same dimension, fiber, degree and truncation.
    pub fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.trunc != other.trunc {
            return Err(Error::DimensionMismatch(format!(
                "forms on (n={}, N={}) vs (n={}, N={})",
                self.dim, self.trunc, other.dim, other.trunc
            )));
        }
        if self.fiber != other.fiber {
            return Err(Error::FiberMismatch(format!(
                "fiber {} vs {}",
                self.fiber, other.fiber
            )));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeError(format!(
                "degree {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub(crate) fn check_ring(&self, other_dim: usize, other_trunc: u32) -> Result<()> {
        if self.dim != other_dim || self.trunc != other_trunc {
            return Err(Error::DimensionMismatch(format!(
                "(n={}, N={}) vs (n={other_dim}, N={other_trunc})",
                self.dim, self.trunc
            )));
        }
        Ok(())
    }

    /// Sum of two forms. The zero form belongs to every degree, so a zero
    /// operand is accepted whatever its nominal degree.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree && (self.is_zero() || other.is_zero()) {
            let mut probe = other.zero_with_degree(self.degree);
            probe.fiber = other.fiber;
            self.check_same_shape(&probe)?;
            return Ok(if other.is_zero() { self.clone() } else { other.clone() });
        }
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for ((idx, a), f) in &other.coeffs {
            out.add_term(*idx, *a, f.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|f| f.scale(c))
    }

    /// Multiplies every coefficient by the function `g`.
    pub fn mul_function(&self, g: &Series) -> Self {
        self.map_coeffs(|f| f * g)
    }

    /// Applies `op` to every coefficient, keeping the basis slots.
    pub fn map_coeffs(&self, mut op: impl FnMut(&Series) -> Series) -> Self {
        let mut out = Self::zero(self.dim, self.fiber, self.degree, self.trunc);
        for ((idx, a), f) in &self.coeffs {
            let g = op(f);
            if !g.is_zero() {
                out.coeffs.insert((*idx, *a), g);
            }
        }
        out
    }

    /// Fiber component `a` as a scalar form.
    pub fn component(&self, a: usize) -> Form {
        let mut out = Self::zero(self.dim, 1, self.degree, self.trunc);
        for ((idx, b), f) in &self.coeffs {
            if *b == a {
                out.coeffs.insert((*idx, 0), f.clone());
            }
        }
        out
    }

    /// Stacks scalar forms into a vector-valued form.
    pub fn from_components(parts: &[Form]) -> Result<Form> {
        let first = parts
            .first()
            .ok_or_else(|| Error::FiberMismatch("no components".into()))?;
        let mut out = Self::zero(first.dim, parts.len(), first.degree, first.trunc);
        for (a, p) in parts.iter().enumerate() {
            if p.fiber != 1 {
                return Err(Error::FiberMismatch("components must be scalar".into()));
            }
            p.check_same_shape(&Form::zero(first.dim, 1, first.degree, first.trunc))?;
            for ((idx, _), f) in &p.coeffs {
                out.coeffs.insert((*idx, a), f.clone());
            }
        }
        Ok(out)
    }

    /// Embeds a scalar form into fiber slot `a` of an `m`-vector.
    pub fn embed(&self, a: usize, m: usize) -> Form {
        assert_eq!(self.fiber, 1);
        let mut out = Self::zero(self.dim, m, self.degree, self.trunc);
        for ((idx, _), f) in &self.coeffs {
            out.coeffs.insert((*idx, a), f.clone());
        }
        out
    }

    /// Substitutes `x -> x + shift` in every coefficient.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        if shift.iter().all(Zero::is_zero) {
            return self.clone();
        }
        self.map_coeffs(|f| f.translate(shift))
    }

    /// Keeps only coefficient terms of total degree strictly below `degree`.
    pub fn below_degree(&self, degree: u32) -> Self {
        self.map_coeffs(|f| f.below_degree(degree))
    }

    /// Re-truncates every coefficient at `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        let mut out = Self::zero(self.dim, self.fiber, self.degree, max_degree);
        for (k, f) in &self.coeffs {
            let g = f.truncate(max_degree);
            if !g.is_zero() {
                out.coeffs.insert(*k, g);
            }
        }
        out
    }

    /// Value of the coefficients at an exact point (basis slots unchanged),
    /// returned as constant coefficients.
    pub fn at_point(&self, point: &[Rational]) -> Result<Form> {
        let mut out = Self::zero(self.dim, self.fiber, self.degree, self.trunc);
        for ((idx, a), f) in &self.coeffs {
            let v = f.eval_exact(point)?;
            out.add_term(*idx, *a, Series::constant(self.dim, self.trunc, v));
        }
        Ok(out)
    }

    /// Zero form of the given degree with this form's shape otherwise.
    /// Degrees above the dimension are clamped; such forms are always zero.
    pub fn zero_with_degree(&self, degree: usize) -> Self {
        Self::zero(self.dim, self.fiber, degree.min(self.dim), self.trunc)
    }

    /// Renders as a sum of terms in problem-file syntax, e.g.
    /// `1/2*y*dx - 1/2*x*dy` (fiber slots as `[a]` suffixes when `m > 1`).
    pub fn to_expr(&self) -> String {
        let names = variable_names(self.dim);
        let mut out = String::new();
        for ((idx, a), f) in &self.coeffs {
            let basis = basis_name(*idx, &names);
            for (m, c) in f.terms() {
                let neg = c < &Rational::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push_str(if neg { " - " } else { " + " });
                }
                let mut factors = Vec::new();
                if !abs.is_one() || (m.is_constant() && basis.is_empty()) {
                    factors.push(crate::coeff::fmt_rational(&abs));
                }
                let mono = crate::coeff::fmt_monomial(m, &names);
                if !mono.is_empty() {
                    factors.push(mono);
                }
                if !basis.is_empty() {
                    factors.push(basis.clone());
                }
                out.push_str(&factors.join("*"));
                if self.fiber > 1 {
                    out.push_str(&format!("[{}]", a + 1));
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Every coefficient term as `(index set, fiber, monomial, value)`.
    pub fn flat_terms(&self) -> Vec<(IndexSet, usize, MultiIndex, Rational)> {
        self.coeffs
            .iter()
            .flat_map(|((idx, a), f)| f.terms().map(move |(m, c)| (*idx, *a, *m, c.clone())))
            .collect()
    }
}

/// `dx^dy` style name of a basis monomial; empty for the 0-form basis.
pub(crate) fn basis_name(idx: IndexSet, names: &[String]) -> String {
    idx.iter()
        .map(|i| format!("d{}", names[i]))
        .collect::<Vec<_>>()
        .join("^")
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.checked_add(rhs).expect("form addition")
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self.checked_sub(rhs).expect("form subtraction")
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coeffs(|f| -f)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Form[n={}, m={}, k={}, N={}]({})",
            self.dim, self.fiber, self.degree, self.trunc, self
        )
    }
}
