use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{MagError, Result};

/// Exact field arithmetic used by the generic linear-algebra routines.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero; callers test `is_zero` first.
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Incremental row echelon form over sparse rows.
///
/// Each stored row has a leading column distinct from every other stored row.
#[derive(Debug, Clone)]
pub struct SparseEchelon<F: Field> {
    ncols: usize,
    rows: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `row` against stored rows; returns true when it was independent.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, F)>) -> bool {
        let mut r: BTreeMap<usize, F> = BTreeMap::new();
        for (j, x) in row {
            debug_assert!(j < self.ncols);
            if x.is_zero() {
                continue;
            }
            let e = r.entry(j).or_insert_with(F::zero);
            *e = e.add(&x);
            if e.is_zero() {
                r.remove(&j);
            }
        }
        while let Some((&lead, x)) = r.iter().next() {
            let Some(p) = self.rows.get(&lead) else {
                self.rows.insert(lead, r);
                return true;
            };
            let f = x.mul(&p[&lead].inv());
            for (j, y) in p {
                let e = r.entry(*j).or_insert_with(F::zero);
                *e = e.sub(&f.mul(y));
                if e.is_zero() {
                    r.remove(j);
                }
            }
        }
        false
    }

    /// True when `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &[(usize, F)]) -> bool {
        let mut probe = self.clone();
        !probe.insert(row.iter().cloned())
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Basis of the solution space of the homogeneous system given by the stored rows.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|j| !self.rows.contains_key(j)) {
            let mut x = vec![F::zero(); self.ncols];
            x[free] = F::one();
            for (&p, row) in self.rows.iter().rev() {
                let mut s = F::zero();
                for (j, a) in row.range(p + 1..) {
                    if !x[*j].is_zero() {
                        s = s.add(&a.mul(&x[*j]));
                    }
                }
                x[p] = s.neg().mul(&row[&p].inv());
            }
            out.push(x);
        }
        out
    }
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r.iter().cloned().enumerate());
    }
    e.rank()
}

pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r.iter().cloned().enumerate());
    }
    e.nullspace()
}

/// Gauss-Jordan inverse of a square matrix given by rows.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(MagError::DivisionByZero)?;
        a.swap(c, p);
        inv.swap(c, p);
        let s = a[c][c].inv();
        for j in 0..n {
            a[c][j] = a[c][j].mul(&s);
            inv[c][j] = inv[c][j].mul(&s);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                if !a[c][j].is_zero() {
                    a[r][j] = a[r][j].sub(&f.mul(&a[c][j]));
                }
                if !inv[c][j].is_zero() {
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[c][j]));
                }
            }
        }
    }
    Ok(inv)
}

/// Some solution of `A x = b` (rows of `A` given), or none when inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut e = SparseEchelon::new(ncols + 1);
    for (row, rhs) in a.iter().zip(b) {
        let it = row.iter().cloned().enumerate().chain(std::iter::once((ncols, rhs.neg())));
        e.insert(it);
    }
    if e.rows.contains_key(&ncols) {
        return None;
    }
    // particular solution: augmented column as the free variable set to one
    let mut x = vec![F::zero(); ncols + 1];
    x[ncols] = F::one();
    for (&p, row) in e.rows.iter().rev() {
        let mut s = F::zero();
        for (j, a) in row.range(p + 1..) {
            if !x[*j].is_zero() {
                s = s.add(&a.mul(&x[*j]));
            }
        }
        x[p] = s.neg().mul(&row[&p].inv());
    }
    x.truncate(ncols);
    Some(x)
}
