//! Exact sparse linear systems over the rationals.
//!
//! Rows are scaled to primitive integer vectors and eliminated
//! fraction-free (Gauss–Jordan with cross-multiplication), picking at each
//! step the sparsest row holding a candidate pivot. Free variables are set
//! to zero in the particular solution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::{MultiIndex, Rational};
use crate::forms::IndexSet;

/// Unknown coordinate: coefficient of `x^α dx_I` in fiber slot `a`.
pub type Coord = (IndexSet, usize, MultiIndex);

/// Sparse system `M x = b` with rows and columns keyed by [`Coord`].
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    cols: Vec<Coord>,
    col_index: BTreeMap<Coord, usize>,
    rows: Vec<(Coord, BTreeMap<usize, Rational>, Rational)>,
}

/// Outcome of [`solve_sparse`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved {
        particular: BTreeMap<Coord, Rational>,
        kernel: Vec<BTreeMap<Coord, Rational>>,
    },
    /// No solution; carries the label of an original row that reduces to
    /// `0 = nonzero`.
    Inconsistent { row: Coord },
}

impl SparseSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers an unknown and returns its column number.
    pub fn column(&mut self, c: Coord) -> usize {
        if let Some(&i) = self.col_index.get(&c) {
            return i;
        }
        let i = self.cols.len();
        self.cols.push(c);
        self.col_index.insert(c, i);
        i
    }

    pub fn columns(&self) -> &[Coord] {
        &self.cols
    }

    /// Adds the equation `Σ coef · x_col = rhs` labelled `label`; zero
    /// entries are dropped.
    pub fn add_row(&mut self, label: Coord, entries: impl IntoIterator<Item = (Coord, Rational)>, rhs: Rational) {
        let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, v) in entries {
            let i = self.column(c);
            *row.entry(i).or_insert_with(Rational::zero) += v;
        }
        row.retain(|_, v| !v.is_zero());
        self.rows.push((label, row, rhs));
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    /// `M x` as a map from row label to value, for verification.
    pub fn apply(&self, x: &BTreeMap<Coord, Rational>) -> Vec<(Coord, Rational, Rational)> {
        self.rows
            .iter()
            .map(|(label, row, rhs)| {
                let mut acc = Rational::zero();
                for (c, v) in row {
                    if let Some(xv) = x.get(&self.cols[*c]) {
                        acc += v * xv;
                    }
                }
                (*label, acc, rhs.clone())
            })
            .collect()
    }
}

// Integer row: entries and right-hand side share one denominator, cleared.
struct IntRow {
    label: Coord,
    entries: BTreeMap<usize, BigInt>,
    rhs: BigInt,
}

impl IntRow {
    fn from_rational(label: Coord, row: &BTreeMap<usize, Rational>, rhs: &Rational) -> Self {
        let mut lcm = BigInt::one();
        for v in row.values().chain(std::iter::once(rhs)) {
            lcm = lcm.lcm(v.denom());
        }
        let scale = |v: &Rational| (v * Rational::from(lcm.clone())).to_integer();
        let mut out = IntRow {
            label,
            entries: row.iter().map(|(c, v)| (*c, scale(v))).collect(),
            rhs: scale(rhs),
        };
        out.make_primitive();
        out
    }

    fn make_primitive(&mut self) {
        let mut g = self.rhs.abs();
        for v in self.entries.values() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for v in self.entries.values_mut() {
            *v /= &g;
        }
        self.rhs /= &g;
    }

    // self <- p * self - f * other, eliminating column `col`
    fn eliminate(&mut self, other: &IntRow, col: usize) {
        let f = match self.entries.get(&col) {
            Some(f) => f.clone(),
            None => return,
        };
        let p = other.entries[&col].clone();
        let g = p.gcd(&f);
        let (p, f) = (&p / &g, &f / &g);
        for v in self.entries.values_mut() {
            *v *= &p;
        }
        self.rhs *= &p;
        for (c, v) in &other.entries {
            let e = self.entries.entry(*c).or_insert_with(BigInt::zero);
            *e -= &f * v;
        }
        self.rhs -= &f * &other.rhs;
        self.entries.retain(|_, v| !v.is_zero());
        self.make_primitive();
    }
}

/// Solves the system exactly. Returns a particular solution with every
/// free variable zero plus a kernel basis, or the label of an inconsistent
/// row.
pub fn solve_sparse(sys: &SparseSystem) -> Solution {
    let ncols = sys.cols.len();
    let mut pending: Vec<IntRow> = sys
        .rows
        .iter()
        .map(|(l, r, b)| IntRow::from_rational(*l, r, b))
        .collect();
    let mut pivots: Vec<(usize, IntRow)> = Vec::new();

    loop {
        // drop rows that became trivial, flagging inconsistencies
        let mut i = 0;
        while i < pending.len() {
            if pending[i].entries.is_empty() {
                if !pending[i].rhs.is_zero() {
                    return Solution::Inconsistent {
                        row: pending[i].label,
                    };
                }
                pending.swap_remove(i);
            } else {
                i += 1;
            }
        }
        if pending.is_empty() {
            break;
        }
        let best = (0..pending.len())
            .min_by_key(|&i| (pending[i].entries.len(), *pending[i].entries.keys().next().unwrap()))
            .unwrap();
        let row = pending.swap_remove(best);
        // pivot on the column with the smallest absolute entry
        let col = *row
            .entries
            .iter()
            .min_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.cmp(b.0)))
            .unwrap()
            .0;
        for r in pending.iter_mut() {
            r.eliminate(&row, col);
        }
        for (_, r) in pivots.iter_mut() {
            r.eliminate(&row, col);
        }
        pivots.push((col, row));
    }

    // every pivot row now has exactly one pivot column among the pivots
    let pivot_cols: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();
    let mut particular = BTreeMap::new();
    for (col, row) in &pivots {
        let p = &row.entries[col];
        let v = Rational::new(row.rhs.clone(), p.clone());
        if !v.is_zero() {
            particular.insert(sys.cols[*col], v);
        }
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains_key(c)) {
        let mut vec = BTreeMap::new();
        vec.insert(sys.cols[free], Rational::one());
        for (col, row) in &pivots {
            if let Some(v) = row.entries.get(&free) {
                let val = -Rational::new(v.clone(), row.entries[col].clone());
                vec.insert(sys.cols[*col], val);
            }
        }
        kernel.push(vec);
    }
    Solution::Solved { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coord(i: usize) -> Coord {
        (IndexSet::EMPTY, i, MultiIndex::zero(1))
    }

    fn system(m: &[Vec<i64>], b: &[i64]) -> SparseSystem {
        let mut sys = SparseSystem::new();
        for j in 0..m[0].len() {
            sys.column(coord(j));
        }
        for (i, row) in m.iter().enumerate() {
            sys.add_row(
                coord(100 + i),
                row.iter().enumerate().map(|(j, &v)| (coord(j), int(v))),
                int(b[i]),
            );
        }
        sys
    }

    fn check(sys: &SparseSystem, sol: &Solution) {
        let Solution::Solved { particular, kernel } = sol else {
            panic!("expected a solution");
        };
        for (_, lhs, rhs) in sys.apply(particular) {
            assert_eq!(lhs, rhs);
        }
        for k in kernel {
            for (_, lhs, _) in sys.apply(k) {
                assert!(lhs.is_zero());
            }
        }
    }

    #[test]
    fn partially_zero_system() {
        let sys = system(&[vec![1, 0], vec![0, 0]], &[1, 0]);
        let sol = solve_sparse(&sys);
        check(&sys, &sol);
        let Solution::Solved { particular, kernel } = sol else { unreachable!() };
        assert_eq!(particular.get(&coord(0)), Some(&int(1)));
        assert_eq!(particular.get(&coord(1)), None);
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].get(&coord(1)), Some(&int(1)));
    }

    #[test]
    fn zero_matrix_nonzero_rhs() {
        let sys = system(&[vec![0]], &[1]);
        assert_eq!(solve_sparse(&sys), Solution::Inconsistent { row: coord(100) });
    }

    #[test]
    fn identity_system() {
        let sys = system(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[3, -2, 7]);
        let sol = solve_sparse(&sys);
        check(&sys, &sol);
        let Solution::Solved { particular, kernel } = sol else { unreachable!() };
        assert!(kernel.is_empty());
        assert_eq!(particular.get(&coord(1)), Some(&int(-2)));
    }

    #[test]
    fn rational_entries() {
        let mut sys = SparseSystem::new();
        sys.add_row(coord(100), [(coord(0), rat(1, 2)), (coord(1), rat(1, 3))], rat(5, 6));
        sys.add_row(coord(101), [(coord(0), rat(1, 1)), (coord(1), rat(-1, 1))], rat(0, 1));
        let sol = solve_sparse(&sys);
        check(&sys, &sol);
    }

    // Dense reference: rank of [M | b] vs rank of M, computed over Q.
    fn dense_rank(m: &[Vec<Rational>]) -> usize {
        let mut a = m.to_vec();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let piv = a[rank][c].clone();
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &piv;
                    for j in 0..cols {
                        let sub = &f * &a[rank][j];
                        a[r][j] -= sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn agrees_with_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-3..4) }).collect())
                .collect();
            let b: Vec<i64> = (0..rows).map(|_| rng.gen_range(-3..4)).collect();
            let sys = system(&m, &b);
            let qm: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let aug: Vec<Vec<Rational>> = m
                .iter()
                .zip(&b)
                .map(|(r, &bi)| r.iter().map(|&v| int(v)).chain([int(bi)]).collect())
                .collect();
            let rank = dense_rank(&qm);
            let consistent = rank == dense_rank(&aug);
            match solve_sparse(&sys) {
                Solution::Inconsistent { .. } => assert!(!consistent),
                sol @ Solution::Solved { .. } => {
                    assert!(consistent);
                    check(&sys, &sol);
                    let Solution::Solved { kernel, .. } = sol else { unreachable!() };
                    assert_eq!(kernel.len(), cols - rank);
                    // independence: kernel vectors stacked have full rank
                    if !kernel.is_empty() {
                        let k: Vec<Vec<Rational>> = kernel
                            .iter()
                            .map(|v| (0..cols).map(|j| v.get(&coord(j)).cloned().unwrap_or_else(Rational::zero)).collect())
                            .collect();
                        assert_eq!(dense_rank(&k), kernel.len());
                    }
                }
            }
        }
    }
}
