use std::cmp::Ordering;
use std::fmt;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// Exponent vector of a monomial `x1^a1 ... xn^an`.
///
/// Ordered by total degree first, then so that earlier variables carry the
/// larger exponents (`x^2 < x*y < y^2` within degree two).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    len: u8,
    exps: [u8; MAX_DIM],
}

impl MultiIndex {
    /// The constant monomial in `dim` variables.
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        MultiIndex {
            len: dim as u8,
            exps: [0; MAX_DIM],
        }
    }

    pub fn new(exps: &[u32]) -> Self {
        let mut m = Self::zero(exps.len());
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u8::try_from(e).expect("exponent exceeds 255");
        }
        m
    }

    /// The monomial `x_var`.
    pub fn unit(dim: usize, var: usize) -> Self {
        let mut m = Self::zero(dim);
        m.exps[var] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.len as usize
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.exps[..self.dim()].iter().map(|&e| e as u32)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.exponents().collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of monomials (exponent sum).
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    pub fn with_exponent(&self, var: usize, e: u32) -> Self {
        let mut m = *self;
        m.exps[var] = u8::try_from(e).expect("exponent exceeds 255");
        m
    }

    /// Multiplies by `x_var`.
    pub fn bump(&self, var: usize) -> Self {
        self.with_exponent(var, self.exponent(var) + 1)
    }

    /// Enumerates every monomial of total degree at most `max_degree`, in
    /// [`Ord`] order.
    pub fn all_up_to(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut cur = vec![0u32; dim];
            fill_degree(dim, 0, d, &mut cur, &mut out);
        }
        out
    }
}

// Emits monomials of exact degree `left` in variables `var..dim`, earlier
// variables taking the largest exponents first.
fn fill_degree(dim: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if dim == 0 {
        if left == 0 {
            out.push(MultiIndex::zero(0));
        }
        return;
    }
    if var == dim - 1 {
        cur[var] = left;
        out.push(MultiIndex::new(cur));
        cur[var] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[var] = e;
        fill_degree(dim, var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.len.cmp(&other.len))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}
