//! Smith and Hermite normal forms over the integers.
//!
//! Pivoting is deterministic: the smallest absolute nonzero entry of the
//! remaining block, ties broken by lowest (row, column). Row operations are
//! kept as a log so that `U` never has to be materialised for tall matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::{IntMatrix, SparseIntMatrix};
use crate::error::{MagError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowOp {
    Swap(usize, usize),
    /// row[target] += factor * row[source]
    AddMul(usize, usize, BigInt),
    Negate(usize),
}

/// `U * A * V = diag(d)` with `d[i] | d[i+1]`; `d` lists only the nonzero invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

/// Working form of a Smith decomposition with `U` stored as an operation log.
#[derive(Debug, Clone)]
pub struct SmithWork {
    pub rows: usize,
    pub cols: usize,
    pub diag: Vec<BigInt>,
    ops: Vec<RowOp>,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn two_rows<T>(a: &mut [Vec<T>], i: usize, j: usize) -> (&mut Vec<T>, &Vec<T>) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = a.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

struct Eliminator {
    a: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
    ops: Vec<RowOp>,
    v: Vec<Vec<BigInt>>,
    vinv: Vec<Vec<BigInt>>,
}

impl Eliminator {
    fn row_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.ops.push(RowOp::Swap(i, j));
        }
    }

    fn row_addmul(&mut self, target: usize, source: usize, q: BigInt, from: usize) {
        let (t, s) = two_rows(&mut self.a, target, source);
        for j in from..s.len() {
            if !s[j].is_zero() {
                t[j] += &q * &s[j];
            }
        }
        self.ops.push(RowOp::AddMul(target, source, q));
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        self.ops.push(RowOp::Negate(i));
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
        self.vinv.swap(i, j);
    }

    /// col[target] += q * col[source]
    fn col_addmul(&mut self, target: usize, source: usize, q: BigInt, from: usize) {
        for row in self.a[from..].iter_mut() {
            if !row[source].is_zero() {
                let add = &q * &row[source];
                row[target] += add;
            }
        }
        for row in self.v.iter_mut() {
            if !row[source].is_zero() {
                let add = &q * &row[source];
                row[target] += add;
            }
        }
        let (s, t) = two_rows(&mut self.vinv, source, target);
        for j in 0..t.len() {
            if !t[j].is_zero() {
                s[j] -= &q * &t[j];
            }
        }
    }

    fn find_min(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().map_or(true, |b| ax < b.2) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.find_min(t) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let p = self.a[t][t].clone();
                let mut dirty = false;
                for i in t + 1..self.m {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = &self.a[i][t] / &p;
                    if !q.is_zero() {
                        self.row_addmul(i, t, -q, t);
                    }
                    dirty |= !self.a[i][t].is_zero();
                }
                for j in t + 1..self.n {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = &self.a[t][j] / &p;
                    if !q.is_zero() {
                        self.col_addmul(j, t, -q, t);
                    }
                    dirty |= !self.a[t][j].is_zero();
                }
                if dirty {
                    let mut best: Option<(bool, usize, BigInt)> = None;
                    for i in t + 1..self.m {
                        let x = self.a[i][t].abs();
                        if !x.is_zero() && best.as_ref().map_or(true, |b| x < b.2) {
                            best = Some((true, i, x));
                        }
                    }
                    for j in t + 1..self.n {
                        let x = self.a[t][j].abs();
                        if !x.is_zero() && best.as_ref().map_or(true, |b| x < b.2) {
                            best = Some((false, j, x));
                        }
                    }
                    match best {
                        Some((true, i, _)) => self.row_swap(t, i),
                        Some((false, j, _)) => self.col_swap(t, j),
                        None => unreachable!(),
                    }
                    continue;
                }
                let bad = (t + 1..self.m).find(|&i| {
                    self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.row_addmul(t, i, BigInt::one(), t),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_negate(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        debug_assert!(diag.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
        diag
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl SmithWork {
    pub fn compute(a: &IntMatrix) -> Self {
        let mut e = Eliminator {
            a: a.to_rows(),
            m: a.rows,
            n: a.cols,
            ops: Vec::new(),
            v: identity_rows(a.cols),
            vinv: identity_rows(a.cols),
        };
        let diag = e.run();
        SmithWork {
            rows: a.rows,
            cols: a.cols,
            diag,
            ops: e.ops,
            v: IntMatrix::from_rows(&e.v).expect("square"),
            v_inv: IntMatrix::from_rows(&e.vinv).expect("square"),
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// x <- U x
    pub fn apply_u(&self, x: &mut [BigInt]) {
        for op in &self.ops {
            match op {
                RowOp::Swap(i, j) => x.swap(*i, *j),
                RowOp::AddMul(t, s, q) => {
                    let add = q * &x[*s];
                    x[*t] += add;
                }
                RowOp::Negate(i) => x[*i] = -std::mem::take(&mut x[*i]),
            }
        }
    }

    /// x <- U^{-1} x
    pub fn apply_u_inv(&self, x: &mut [BigInt]) {
        for op in self.ops.iter().rev() {
            match op {
                RowOp::Swap(i, j) => x.swap(*i, *j),
                RowOp::AddMul(t, s, q) => {
                    let sub = q * &x[*s];
                    x[*t] -= sub;
                }
                RowOp::Negate(i) => x[*i] = -std::mem::take(&mut x[*i]),
            }
        }
    }

    /// Row `i` of `U`.
    pub fn u_row(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.rows];
        v[i] = BigInt::one();
        for op in self.ops.iter().rev() {
            match op {
                RowOp::Swap(a, b) => v.swap(*a, *b),
                RowOp::AddMul(t, s, q) => {
                    let add = q * &v[*t];
                    v[*s] += add;
                }
                RowOp::Negate(a) => v[*a] = -std::mem::take(&mut v[*a]),
            }
        }
        v
    }

    pub fn u_matrix(&self) -> IntMatrix {
        let mut u = IntMatrix::zeros(self.rows, self.rows);
        for j in 0..self.rows {
            let mut col = vec![BigInt::zero(); self.rows];
            col[j] = BigInt::one();
            self.apply_u(&mut col);
            for (i, x) in col.into_iter().enumerate() {
                u.set(i, j, x);
            }
        }
        u
    }

    pub fn decomposition(&self) -> SmithDecomposition {
        SmithDecomposition {
            d: self.diag.clone(),
            u: self.u_matrix(),
            v: self.v.clone(),
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    SmithWork::compute(a).decomposition()
}

/// Columns form a basis of the integer kernel lattice (saturated).
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let w = SmithWork::compute(a);
    let r = w.rank();
    let mut k = IntMatrix::zeros(a.cols, a.cols - r);
    for j in r..a.cols {
        for i in 0..a.cols {
            k.set(i, j - r, w.v.get(i, j).clone());
        }
    }
    k
}

/// Column-style Hermite form: `A * W = H`, `W` unimodular, `H` in column echelon form
/// with positive pivots and reduced entries left of each pivot.
#[derive(Debug, Clone)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub w: IntMatrix,
    /// (row, column) of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.transpose().to_rows(); // columns of A as rows
    let mut w = identity_rows(n); // rows are columns of W
    let mut pivots = Vec::new();
    let mut k = 0;
    for r in 0..m {
        if k == n {
            break;
        }
        loop {
            let best = (k..n)
                .filter(|&j| !h[j][r].is_zero())
                .min_by(|&x, &y| h[x][r].abs().cmp(&h[y][r].abs()).then(x.cmp(&y)));
            let Some(j) = best else { break };
            h.swap(k, j);
            w.swap(k, j);
            let mut clean = true;
            for j in k + 1..n {
                if h[j][r].is_zero() {
                    continue;
                }
                let q = &h[j][r] / &h[k][r];
                let (tj, sk) = two_rows(&mut h, j, k);
                for (x, y) in tj.iter_mut().zip(sk.iter()) {
                    *x -= &q * y;
                }
                let (tj, sk) = two_rows(&mut w, j, k);
                for (x, y) in tj.iter_mut().zip(sk.iter()) {
                    *x -= &q * y;
                }
                clean &= h[j][r].is_zero();
            }
            if clean {
                break;
            }
        }
        if k < n && !h[k][r].is_zero() {
            if h[k][r].is_negative() {
                for x in h[k].iter_mut().chain(w[k].iter_mut()) {
                    *x = -std::mem::take(x);
                }
            }
            for j in 0..k {
                let q = h[j][r].div_floor(&h[k][r]);
                if q.is_zero() {
                    continue;
                }
                let (tj, sk) = two_rows(&mut h, j, k);
                for (x, y) in tj.iter_mut().zip(sk.iter()) {
                    *x -= &q * y;
                }
                let (tj, sk) = two_rows(&mut w, j, k);
                for (x, y) in tj.iter_mut().zip(sk.iter()) {
                    *x -= &q * y;
                }
            }
            pivots.push((r, k));
            k += 1;
        }
    }
    HermiteDecomposition {
        h: IntMatrix::from_rows(&h).expect("rectangular").transpose_or_empty(m, n),
        w: IntMatrix::from_rows(&w).expect("square").transpose_or_empty(n, n),
        pivots,
    }
}

impl IntMatrix {
    fn transpose_or_empty(&self, rows: usize, cols: usize) -> IntMatrix {
        if self.rows == 0 || self.cols == 0 {
            IntMatrix::zeros(rows, cols)
        } else {
            self.transpose()
        }
    }
}

/// Integer solution of `A x = b`, decided through the Hermite form.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(MagError::param(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows
        )));
    }
    let hd = hermite_normal_form(a);
    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); a.cols];
    let mut next = hd.pivots.iter().peekable();
    for r in 0..a.rows {
        match next.peek() {
            Some(&&(pr, k)) if pr == r => {
                next.next();
                let p = hd.h.get(r, k);
                let (q, rem) = residual[r].div_rem(p);
                if !rem.is_zero() {
                    return Ok(None);
                }
                for i in r..a.rows {
                    let c = hd.h.get(i, k);
                    if !c.is_zero() {
                        residual[i] -= &q * c;
                    }
                }
                y[k] = q;
            }
            _ => {
                if !residual[r].is_zero() {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(hd.w.mul_vec(&y)?))
}

/// Invariant factors (nonzero, divisibility chain) via sparse elimination of unit
/// pivots followed by dense Smith form on whatever block remains.
pub fn smith_invariants_sparse(a: &SparseIntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); a.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols];
    for (i, j, v) in a.entries() {
        rows[*i].insert(*j, v.clone());
        col_rows[*j].insert(*i);
    }
    let mut alive_rows: BTreeSet<usize> = (0..a.rows).collect();
    let mut alive_cols: BTreeSet<usize> = (0..a.cols).collect();
    let mut units = 0usize;
    loop {
        // unit pivot in the column of fewest entries, then the row of fewest entries
        let mut choice: Option<(usize, usize, usize, usize)> = None;
        for &j in &alive_cols {
            let cnt = col_rows[j].len();
            if cnt == 0 || choice.map_or(false, |c| cnt >= c.0) {
                continue;
            }
            let pick = col_rows[j]
                .iter()
                .filter(|&&i| rows[i][&j].abs().is_one())
                .min_by_key(|&&i| (rows[i].len(), i));
            if let Some(&i) = pick {
                choice = Some((cnt, rows[i].len(), i, j));
                if cnt == 1 {
                    break;
                }
            }
        }
        let Some((_, _, pi, pj)) = choice else { break };
        let prow = rows[pi].clone();
        let pv = prow[&pj].clone();
        let targets: Vec<usize> = col_rows[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in targets {
            let f = &rows[i][&pj] * &pv; // pv = ±1, so f/pv = f*pv
            for (j, x) in &prow {
                let e = rows[i].entry(*j).or_insert_with(BigInt::zero);
                *e -= &f * x;
                if e.is_zero() {
                    rows[i].remove(j);
                    col_rows[*j].remove(&i);
                } else {
                    col_rows[*j].insert(i);
                }
            }
        }
        for j in prow.keys() {
            col_rows[*j].remove(&pi);
        }
        rows[pi].clear();
        alive_rows.remove(&pi);
        alive_cols.remove(&pj);
        units += 1;
    }
    let rmap: Vec<usize> = alive_rows.into_iter().filter(|&i| !rows[i].is_empty()).collect();
    let cmap: Vec<usize> = alive_cols.into_iter().filter(|&j| !col_rows[j].is_empty()).collect();
    let cidx: BTreeMap<usize, usize> = cmap.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense = IntMatrix::zeros(rmap.len(), cmap.len());
    for (r, &i) in rmap.iter().enumerate() {
        for (j, x) in &rows[i] {
            dense.set(r, cidx[j], x.clone());
        }
    }
    let mut d = vec![BigInt::one(); units];
    d.extend(SmithWork::compute(&dense).diag);
    d
}
