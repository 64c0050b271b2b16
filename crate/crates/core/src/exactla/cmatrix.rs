use super::cyclotomic::Cyclotomic;
use super::field::{self, Field};
use crate::error::{MagError, Result};

/// Dense matrix over cyclotomic fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Cyclotomic>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Cyclotomic::one())
    }

    pub fn scalar(n: usize, s: Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|x| x.len() != c) {
            return Err(MagError::param("ragged matrix rows"));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclotomic::int(v)).collect()).collect())
            .expect("rectangular")
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    /// Least common conductor of the entries.
    pub fn conductor(&self) -> u32 {
        use num_integer::Integer;
        self.data.iter().fold(1, |acc, x| acc.lcm(&x.conductor()))
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = CMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &CMatrix) -> CMatrix {
        self.add(&o.scale(&Cyclotomic::int(-1)))
    }

    pub fn scale(&self, s: &Cyclotomic) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// conj applied when `bit` is set.
    pub fn conj_if(&self, bit: bool) -> CMatrix {
        if bit {
            self.conj()
        } else {
            self.clone()
        }
    }

    pub fn transpose(&self) -> CMatrix {
        let mut t = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn adjoint(&self) -> CMatrix {
        self.transpose().conj()
    }

    pub fn kron(&self, o: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        if self.rows != self.cols {
            return Err(MagError::param("inverse of non-square matrix"));
        }
        CMatrix::from_rows(field::inverse(&self.to_rows())?)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && field::rank(&self.to_rows(), self.cols) == self.rows
    }

    /// The scalar s with self = s * I, if any.
    pub fn as_scalar(&self) -> Option<Cyclotomic> {
        if self.rows != self.cols {
            return None;
        }
        let s = if self.rows == 0 { Cyclotomic::one() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &s } else { &Cyclotomic::zero() };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// The scalar s with self = s * other, if any (other nonzero).
    pub fn ratio_to(&self, other: &CMatrix) -> Option<Cyclotomic> {
        let k = other.data.iter().position(|x| !x.is_zero())?;
        let s = self.data[k].mul(&other.data[k].inv());
        if *self == other.scale(&s) {
            Some(s)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_sigma_y_squares_under_conj() {
        let i = Cyclotomic::i();
        let sy = CMatrix::from_rows(vec![
            vec![Cyclotomic::zero(), i.neg()],
            vec![i.clone(), Cyclotomic::zero()],
        ])
        .unwrap();
        let isy = sy.scale(&i);
        assert_eq!(isy.mul(&isy.conj()), CMatrix::scalar(2, Cyclotomic::int(-1)));
        assert_eq!(isy.inverse().unwrap().mul(&isy), CMatrix::identity(2));
        assert_eq!(isy.kron(&CMatrix::identity(2)).rows, 4);
    }

    #[test]
    fn ratio_detects_scalars() {
        let a = CMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = a.scale(&Cyclotomic::i());
        assert_eq!(b.ratio_to(&a), Some(Cyclotomic::i()));
        assert_eq!(CMatrix::identity(2).ratio_to(&a), None);
    }
}
