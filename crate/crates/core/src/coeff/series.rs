use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{fmt_rational, inv_factorial, int, to_f64, MultiIndex, Rational, MAX_DIM};
use crate::error::{Error, Result};

/// Truncated multivariate power series with exact rational coefficients.
///
/// Represents the polynomial ring in `dim` variables modulo all monomials of
/// total degree greater than `trunc`. Zero coefficients are never stored, so
/// structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    dim: usize,
    trunc: u32,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Series {
    pub fn zero(dim: usize, trunc: u32) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Series {
            dim,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize, trunc: u32) -> Self {
        Self::constant(dim, trunc, Rational::one())
    }

    pub fn constant(dim: usize, trunc: u32, c: Rational) -> Self {
        Self::monomial(dim, trunc, MultiIndex::zero(dim), c)
    }

    /// `c * x^exps`; zero when the degree exceeds the truncation.
    pub fn monomial(dim: usize, trunc: u32, exps: MultiIndex, c: Rational) -> Self {
        assert_eq!(exps.dim(), dim, "monomial arity differs from series dimension");
        let mut s = Self::zero(dim, trunc);
        if !c.is_zero() && exps.total_degree() <= trunc {
            s.terms.insert(exps, c);
        }
        s
    }

    /// The coordinate function `x_var`.
    pub fn variable(dim: usize, trunc: u32, var: usize) -> Self {
        Self::monomial(dim, trunc, MultiIndex::unit(dim, var), Rational::one())
    }

    /// Sums the given terms, dropping anything above the truncation.
    pub fn from_terms(
        dim: usize,
        trunc: u32,
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Self {
        let mut s = Self::zero(dim, trunc);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub(crate) fn add_term(&mut self, m: MultiIndex, c: Rational) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() || m.total_degree() > self.trunc {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// Lowest total degree of a stored term, `None` for the zero series.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::total_degree)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::total_degree)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.trunc != other.trunc {
            return Err(Error::DimensionMismatch(format!(
                "series (dim {}, trunc {}) vs (dim {}, trunc {})",
                self.dim, self.trunc, other.dim, other.trunc
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    /// Product in the truncated ring; terms above the truncation are dropped.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.dim, self.trunc);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            // terms are sorted by total degree, so the inner loop can stop early
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > self.trunc {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.trunc);
        }
        Series {
            dim: self.dim,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim, self.trunc);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `sum_{j<=N} a^j / j!`, exact because `a` has no constant term and is
    /// therefore nilpotent in the truncated ring.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonNilpotentArgument);
        }
        let mut acc = Self::one(self.dim, self.trunc);
        let mut power = Self::one(self.dim, self.trunc);
        for j in 1..=self.trunc {
            power = &power * self;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&inv_factorial(j));
        }
        Ok(acc)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::SingularGauge);
        }
        let inv_c0 = c0.recip();
        // 1/(c0 + r) = (1/c0) * sum_j (-r/c0)^j
        let mut ratio = self.clone();
        ratio.terms.remove(&MultiIndex::zero(self.dim));
        let ratio = ratio.scale(&-inv_c0.clone());
        let mut acc = Self::one(self.dim, self.trunc);
        let mut power = Self::one(self.dim, self.trunc);
        for _ in 1..=self.trunc {
            power = &power * &ratio;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&inv_c0))
    }

    /// Evaluates the stored polynomial at a machine-precision point.
    pub fn eval(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for series in {} variables",
                point.len(),
                self.dim
            )));
        }
        // Horner in the last variable, recursively over the others.
        Ok(horner(&self.terms_as_vecs(), point))
    }

    fn terms_as_vecs(&self) -> Vec<(Vec<u32>, f64)> {
        self.terms.iter().map(|(m, c)| (m.to_vec(), to_f64(c))).collect()
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} for series in {} variables",
                point.len(),
                self.dim
            )));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * int(e as i64));
            }
        }
        out
    }

    /// Multiplies by the coordinate `x_var`, truncating.
    pub fn times_variable(&self, var: usize) -> Self {
        let mut out = Self::zero(self.dim, self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.bump(var), c.clone());
        }
        out
    }

    /// Drops every term of total degree above `max_degree` and records the
    /// new truncation order.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Series {
            dim: self.dim,
            trunc: max_degree,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= max_degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Keeps only the terms of total degree strictly below `degree`.
    pub fn below_degree(&self, degree: u32) -> Self {
        Series {
            dim: self.dim,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() < degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Substitutes `x -> x + shift`. Exact: a polynomial of degree at most `N`
    /// stays within the truncation.
    pub fn translate(&self, shift: &[Rational]) -> Self {
        assert_eq!(shift.len(), self.dim, "shift length differs from dimension");
        let mut cur = self.clone();
        for (var, s) in shift.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mut next = Self::zero(self.dim, self.trunc);
            for (m, c) in &cur.terms {
                let a = m.exponent(var);
                // (x + s)^a = sum_j C(a, j) s^(a-j) x^j
                let mut binom = Rational::one();
                for j in (0..=a).rev() {
                    let coef = c * &binom * num_traits::pow(s.clone(), (a - j) as usize);
                    next.add_term(m.with_exponent(var, j), coef);
                    // C(a, j-1) = C(a, j) * j / (a - j + 1)
                    binom = binom * int(j as i64) / int((a - j + 1) as i64);
                }
            }
            cur = next;
        }
        cur
    }
}

fn horner(terms: &[(Vec<u32>, f64)], point: &[f64]) -> f64 {
    if point.is_empty() {
        return terms.iter().map(|(_, c)| c).sum();
    }
    let last = point.len() - 1;
    let max_e = terms.iter().map(|(m, _)| m[last]).max().unwrap_or(0);
    let mut buckets: Vec<Vec<(Vec<u32>, f64)>> = vec![Vec::new(); max_e as usize + 1];
    for (m, c) in terms {
        buckets[m[last] as usize].push((m[..last].to_vec(), *c));
    }
    let mut acc = 0.0;
    for bucket in buckets.iter().rev() {
        acc = acc * point[last] + horner(bucket, &point[..last]);
    }
    acc
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.checked_add(rhs).expect("series addition")
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.checked_sub(rhs).expect("series subtraction")
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.checked_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&-Rational::one())
    }
}

/// Default variable names: `x, y, z` up to three dimensions, `x1..xn` beyond.
pub fn variable_names(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

pub(crate) fn fmt_monomial(m: &MultiIndex, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, name) in m.exponents().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Series {
    /// Renders in the problem-file polynomial syntax, e.g. `1 - 1/2*y + x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let names = variable_names(self.dim);
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(m, &names);
            if mono.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[n={}, N={}]({})", self.dim, self.trunc, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn x(n: u32) -> Series {
        Series::variable(2, n, 0)
    }
    fn y(n: u32) -> Series {
        Series::variable(2, n, 1)
    }

    #[test]
    fn difference_of_squares() {
        let one = Series::one(2, 4);
        let lhs = &(&one + &x(4)) * &(&one - &x(4));
        assert_eq!(lhs, &one - &(&x(4) * &x(4)));
    }

    #[test]
    fn product_above_truncation_is_dropped() {
        assert!((&x(1) * &y(1)).is_zero());
    }

    #[test]
    fn rational_product() {
        let a = y(3).scale(&rat(1, 2));
        let b = y(3).scale(&rat(1, 3));
        let expected = Series::monomial(2, 3, MultiIndex::new(&[0, 2]), rat(1, 6));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn mismatched_series_are_rejected() {
        let a = Series::one(2, 3);
        assert!(matches!(a.checked_add(&Series::one(3, 3)), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.checked_mul(&Series::one(2, 4)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn exponential() {
        assert_eq!(Series::zero(2, 5).exp().unwrap(), Series::one(2, 5));
        let e = (-&y(6)).exp().unwrap();
        for j in 0..=6u32 {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let expected = inv_factorial(j) * int(sign);
            assert_eq!(e.coeff(&MultiIndex::new(&[0, j])), expected);
        }
        assert_eq!(e.len(), 7);
        assert_eq!(Series::one(2, 3).exp(), Err(Error::NonNilpotentArgument));
    }

    #[test]
    fn evaluation() {
        let s = &(&Series::one(2, 3) + &x(3)) + &y(3);
        assert_eq!(s.eval(&[1.0, 2.0]).unwrap(), 4.0);
        assert_eq!(Series::zero(2, 3).eval(&[7.0, -1.0]).unwrap(), 0.0);
        let q = Series::monomial(2, 3, MultiIndex::new(&[0, 2]), rat(1, 6));
        assert_eq!(q.eval(&[0.0, 3.0]).unwrap(), 1.5);
        assert!(q.eval(&[1.0]).is_err());
    }

    #[test]
    fn translation_round_trip() {
        let p = Series::from_terms(
            2,
            4,
            [
                (MultiIndex::new(&[2, 1]), rat(3, 2)),
                (MultiIndex::new(&[0, 4]), rat(-1, 1)),
                (MultiIndex::new(&[1, 0]), rat(5, 7)),
            ],
        );
        let shift = [rat(1, 2), rat(-3, 1)];
        let back = [rat(-1, 2), rat(3, 1)];
        assert_eq!(p.translate(&shift).translate(&back), p);
        // value at the shifted point is preserved
        let at = [rat(2, 3), rat(1, 5)];
        let moved: Vec<Rational> = at.iter().zip(&back).map(|(a, b)| a + b).collect();
        assert_eq!(p.translate(&shift).eval_exact(&moved).unwrap(), p.eval_exact(&at).unwrap());
    }

    #[test]
    fn inverse_of_unit() {
        let s = &Series::constant(2, 5, rat(2, 1)) + &x(5);
        assert_eq!(&s * &s.inverse().unwrap(), Series::one(2, 5));
        assert_eq!(x(5).inverse(), Err(Error::SingularGauge));
    }

    #[test]
    fn display() {
        let s = Series::from_terms(
            2,
            3,
            [
                (MultiIndex::new(&[0, 0]), rat(1, 1)),
                (MultiIndex::new(&[0, 1]), rat(-1, 2)),
                (MultiIndex::new(&[2, 0]), rat(1, 1)),
            ],
        );
        assert_eq!(s.to_string(), "1 - 1/2*y + x^2");
        assert_eq!(Series::zero(2, 3).to_string(), "0");
    }
}
