//! Altland-Zirnbauer class detection from a Hamiltonian and its antiunitary symmetries.

use num_complex::Complex64;
use serde_json::Value;

use super::tenfold::{az_lookup, TenfoldClass};
use crate::error::{MagError, Result};
use crate::exactla::{parse_rational, CMatrix, Cyclotomic};

pub const DEFAULT_TOL: f64 = 1e-9;

/// A matrix read from JSON: floating pairs or exact Gaussian rationals.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixInput {
    Numeric(Vec<Vec<Complex64>>),
    Exact(CMatrix),
}

impl MatrixInput {
    pub fn dim(&self) -> (usize, usize) {
        match self {
            MatrixInput::Numeric(r) => (r.len(), r.first().map_or(0, Vec::len)),
            MatrixInput::Exact(m) => (m.rows, m.cols),
        }
    }

    pub fn to_numeric(&self) -> Vec<Vec<Complex64>> {
        match self {
            MatrixInput::Numeric(r) => r.clone(),
            MatrixInput::Exact(m) => m
                .to_rows()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| {
                            let (re, im) = x.to_complex();
                            Complex64::new(re, im)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Parses `[[entry, ..], ..]` where entries are `[re, im]`, plain numbers, or strings `"a/b+c/d i"`.
pub fn parse_matrix(v: &Value) -> Result<MatrixInput> {
    let rows = v.as_array().ok_or_else(|| MagError::param("matrix must be an array of rows"))?;
    let mut exact = true;
    for r in rows {
        let r = r.as_array().ok_or_else(|| MagError::param("matrix rows must be arrays"))?;
        exact &= r.iter().all(|x| x.is_string() || x.as_i64().is_some());
    }
    if exact {
        let m = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .expect("checked")
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => Cyclotomic::parse_gaussian(s),
                        other => Ok(Cyclotomic::rational(parse_rational(&other.to_string())?)),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(MatrixInput::Exact(CMatrix::from_rows(m)?));
    }
    let num = |x: &Value| -> Result<f64> { x.as_f64().ok_or_else(|| MagError::param("matrix entry is not a number")) };
    let m = rows
        .iter()
        .map(|r| {
            r.as_array()
                .expect("checked")
                .iter()
                .map(|x| match x {
                    Value::Array(p) if p.len() == 2 => Ok(Complex64::new(num(&p[0])?, num(&p[1])?)),
                    Value::Number(_) => Ok(Complex64::new(num(x)?, 0.0)),
                    Value::String(s) => {
                        let (re, im) = Cyclotomic::parse_gaussian(s)?.to_complex();
                        Ok(Complex64::new(re, im))
                    }
                    _ => Err(MagError::param("matrix entry must be [re, im], a number or a string")),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let c = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != c) {
        return Err(MagError::param("ragged matrix rows"));
    }
    Ok(MatrixInput::Numeric(m))
}

trait AzMatrix: Sized + Clone {
    fn size(&self) -> (usize, usize);
    fn mul(&self, o: &Self) -> Self;
    fn conj(&self) -> Self;
    fn adjoint(&self) -> Self;
    fn neg(&self) -> Self;
    fn identity(n: usize) -> Self;
    fn close(&self, o: &Self, scale: f64) -> bool;
    fn norm(&self) -> f64;

    /// +1 or -1 when the matrix is close to the corresponding multiple of the identity.
    fn sign_of_identity(&self, scale: f64) -> Option<i8> {
        let id = Self::identity(self.size().0);
        if self.close(&id, scale) {
            Some(1)
        } else if self.close(&id.neg(), scale) {
            Some(-1)
        } else {
            None
        }
    }
}

#[derive(Clone)]
struct Num {
    tol: f64,
    rows: Vec<Vec<Complex64>>,
}

impl AzMatrix for Num {
    fn size(&self) -> (usize, usize) {
        (self.rows.len(), self.rows.first().map_or(0, Vec::len))
    }

    fn mul(&self, o: &Self) -> Self {
        let (n, k) = self.size();
        let m = o.size().1;
        let mut out = vec![vec![Complex64::new(0.0, 0.0); m]; n];
        for i in 0..n {
            for l in 0..k {
                let a = self.rows[i][l];
                for j in 0..m {
                    out[i][j] += a * o.rows[l][j];
                }
            }
        }
        Num { tol: self.tol, rows: out }
    }

    fn conj(&self) -> Self {
        Num {
            tol: self.tol,
            rows: self.rows.iter().map(|r| r.iter().map(Complex64::conj).collect()).collect(),
        }
    }

    fn adjoint(&self) -> Self {
        let (n, m) = self.size();
        Num {
            tol: self.tol,
            rows: (0..m).map(|j| (0..n).map(|i| self.rows[i][j].conj()).collect()).collect(),
        }
    }

    fn neg(&self) -> Self {
        Num {
            tol: self.tol,
            rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
        }
    }

    fn identity(n: usize) -> Self {
        let mut rows = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = Complex64::new(1.0, 0.0);
        }
        Num { tol: DEFAULT_TOL, rows }
    }

    fn close(&self, o: &Self, scale: f64) -> bool {
        self.size() == o.size()
            && self
                .rows
                .iter()
                .zip(&o.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| (x - y).norm() <= self.tol * scale.max(1.0)))
    }

    fn norm(&self) -> f64 {
        self.rows.iter().map(|r| r.iter().map(|x| x.norm()).sum::<f64>()).fold(0.0, f64::max)
    }
}

impl AzMatrix for CMatrix {
    fn size(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn mul(&self, o: &Self) -> Self {
        CMatrix::mul(self, o)
    }

    fn conj(&self) -> Self {
        CMatrix::conj(self)
    }

    fn adjoint(&self) -> Self {
        CMatrix::adjoint(self)
    }

    fn neg(&self) -> Self {
        self.scale(&Cyclotomic::int(-1))
    }

    fn identity(n: usize) -> Self {
        CMatrix::identity(n)
    }

    fn close(&self, o: &Self, _scale: f64) -> bool {
        self.size() == o.size() && self.sub(o).is_zero()
    }

    fn norm(&self) -> f64 {
        1.0
    }
}

fn detect<M: AzMatrix>(h: &M, u_t: Option<&M>, u_c: Option<&M>, u_s: Option<&M>) -> Result<TenfoldClass> {
    let (n, m) = h.size();
    if n != m {
        return Err(MagError::param("Hamiltonian must be square"));
    }
    let scale = h.norm();
    if !h.adjoint().close(h, scale) {
        return Err(MagError::param("Hamiltonian is not Hermitian"));
    }
    let id = M::identity(n);
    for (name, u) in [("T", u_t), ("C", u_c), ("S", u_s)] {
        if let Some(u) = u {
            if u.size() != (n, n) {
                return Err(MagError::param(format!("U_{name} has the wrong size")));
            }
            if !u.mul(&u.adjoint()).close(&id, 1.0) {
                return Err(MagError::param(format!("U_{name} is not unitary")));
            }
        }
    }
    let antiunitary = |u: &M, target: &M, name: &str| -> Result<i8> {
        if !u.mul(&h.conj()).mul(&u.adjoint()).close(target, scale) {
            return Err(MagError::SymmetryNotPresent(format!("{name} relation fails for the supplied U_{name}")));
        }
        u.mul(&u.conj())
            .sign_of_identity(1.0)
            .ok_or_else(|| MagError::InvalidAntiunitary(format!("{name}^2 is neither +1 nor -1")))
    };
    let t = u_t.map(|u| antiunitary(u, h, "T")).transpose()?.unwrap_or(0);
    let c = u_c.map(|u| antiunitary(u, &h.neg(), "C")).transpose()?.unwrap_or(0);
    let s = match u_s {
        None => u8::from(t != 0 && c != 0),
        Some(u) => {
            if !u.mul(h).mul(&u.adjoint()).close(&h.neg(), scale) {
                return Err(MagError::SymmetryNotPresent("S relation fails for the supplied U_S".into()));
            }
            if (t == 0) != (c == 0) {
                return Err(MagError::InvalidSymmetryData(
                    "a chiral operator with exactly one antiunitary symmetry".into(),
                ));
            }
            1
        }
    };
    if t != 0 && c != 0 {
        // S is fixed by the row once both antiunitaries are known
        return crate::gradalg::tenfold::TenfoldClass::ALL
            .into_iter()
            .find(|k| {
                let (kt, kc, _) = crate::gradalg::az_row(*k);
                (kt, kc) == (t, c)
            })
            .ok_or_else(|| MagError::InvalidSymmetryData(format!("no row with T = {t}, C = {c}")));
    }
    az_lookup(t, c, s)
}

/// Numeric detection; exact inputs are converted to floating point.
pub fn az_detect(
    h: &MatrixInput,
    u_t: Option<&MatrixInput>,
    u_c: Option<&MatrixInput>,
    u_s: Option<&MatrixInput>,
    tol: f64,
) -> Result<TenfoldClass> {
    if let (MatrixInput::Exact(h), true) = (h, [u_t, u_c, u_s].iter().flatten().all(|u| matches!(u, MatrixInput::Exact(_)))) {
        let ex = |u: Option<&MatrixInput>| match u {
            Some(MatrixInput::Exact(m)) => Some(m.clone()),
            _ => None,
        };
        return az_detect_exact(h, ex(u_t).as_ref(), ex(u_c).as_ref(), ex(u_s).as_ref());
    }
    let wrap = |m: &MatrixInput| Num { tol, rows: m.to_numeric() };
    let (ht, tt, ct, st) = (wrap(h), u_t.map(wrap), u_c.map(wrap), u_s.map(wrap));
    detect(&ht, tt.as_ref(), ct.as_ref(), st.as_ref())
}

/// Exact detection over Q(zeta_N); no tolerance.
pub fn az_detect_exact(h: &CMatrix, u_t: Option<&CMatrix>, u_c: Option<&CMatrix>, u_s: Option<&CMatrix>) -> Result<TenfoldClass> {
    detect(h, u_t, u_c, u_s)
}
