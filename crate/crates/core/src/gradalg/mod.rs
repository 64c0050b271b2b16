//! Finite-dimensional Z/2-graded algebras over Q, Q(i) and Q(zeta_N), given
//! by sparse structure constants.

mod az;
mod mecsga;
mod tenfold;

pub use az::{az_detect, az_detect_exact, parse_matrix, MatrixInput, DEFAULT_TOL};
pub use mecsga::Mecsga;
pub use tenfold::{az_lookup, az_row, clifford_class, tenfold_classify, TenfoldClass};

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{MagError, Result};
use crate::exactla::{parse_rational, rational_to_string, CMatrix, Cyclotomic, Field, SparseEchelon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseField {
    Q,
    Qi,
    QZeta(u32),
}

impl BaseField {
    pub fn conductor(self) -> u32 {
        match self {
            BaseField::Q => 1,
            BaseField::Qi => 4,
            BaseField::QZeta(n) => n,
        }
    }

    pub fn from_conductor(n: u32) -> Self {
        match n {
            1 | 2 => BaseField::Q,
            4 => BaseField::Qi,
            n => BaseField::QZeta(n),
        }
    }

    pub fn join(self, o: BaseField) -> BaseField {
        BaseField::from_conductor(self.conductor().lcm(&o.conductor()))
    }

    pub fn contains(self, x: &Cyclotomic) -> bool {
        let c = self.conductor();
        x.conductor() <= 2 || c % x.conductor() == 0 || x.promote(x.conductor()).coeffs().iter().skip(1).all(num_traits::Zero::is_zero)
    }
}

/// Sparse coordinate vector.
pub type Sparse = Vec<(usize, Cyclotomic)>;

/// Graded algebra with basis b_0 .. b_{d-1}; `sc[i][j]` holds b_i b_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub field: BaseField,
    pub degrees: Vec<u8>,
    pub sc: Vec<Vec<Sparse>>,
    pub unit: Vec<Cyclotomic>,
    pub labels: Vec<String>,
}

fn czero() -> Cyclotomic {
    <Cyclotomic as Field>::zero()
}

fn cone() -> Cyclotomic {
    <Cyclotomic as Field>::one()
}

fn sparse_add(acc: &mut BTreeMap<usize, Cyclotomic>, k: usize, v: Cyclotomic) {
    let e = acc.entry(k).or_insert_with(czero);
    *e = e.add(&v);
    if e.is_zero() {
        acc.remove(&k);
    }
}

impl GradedAlgebra {
    /// Checks shapes, homogeneity of products and the unit; associativity is
    /// checked separately by [`GradedAlgebra::associativity_violation`].
    pub fn new(field: BaseField, degrees: Vec<u8>, sc: Vec<Vec<Sparse>>, unit: Vec<Cyclotomic>) -> Result<Self> {
        let d = degrees.len();
        let labels = (0..d).map(|i| format!("b{i}")).collect();
        let a = GradedAlgebra {
            field,
            degrees,
            sc,
            unit,
            labels,
        };
        a.check_shape()?;
        Ok(a)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.dim() {
            self.labels = labels;
        }
        self
    }

    fn check_shape(&self) -> Result<()> {
        let d = self.dim();
        if self.sc.len() != d || self.sc.iter().any(|r| r.len() != d) || self.unit.len() != d {
            return Err(MagError::param("structure constants do not match the dimension"));
        }
        if self.degrees.iter().any(|&x| x > 1) {
            return Err(MagError::param("degrees must be 0 or 1"));
        }
        for i in 0..d {
            for j in 0..d {
                for (k, v) in &self.sc[i][j] {
                    if *k >= d {
                        return Err(MagError::param(format!("b{i} b{j} has coordinate {k} out of range")));
                    }
                    if !self.field.contains(v) {
                        return Err(MagError::param(format!("b{i} b{j} has a coefficient outside the field")));
                    }
                    if !v.is_zero() && self.degrees[*k] != self.degrees[i] ^ self.degrees[j] {
                        return Err(MagError::param(format!("b{i} b{j} is not homogeneous of the expected degree")));
                    }
                }
            }
        }
        for i in 0..d {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(MagError::param(format!("unit is not a two-sided identity on b{i}")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// First basis triple with (b_i b_j) b_k != b_i (b_j b_k).
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut l = BTreeMap::new();
                    for (p, x) in &self.sc[i][j] {
                        for (q, y) in &self.sc[*p][k] {
                            sparse_add(&mut l, *q, x.mul(y));
                        }
                    }
                    let mut r = BTreeMap::new();
                    for (p, x) in &self.sc[j][k] {
                        for (q, y) in &self.sc[i][*p] {
                            sparse_add(&mut r, *q, x.mul(y));
                        }
                    }
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn basis(&self, i: usize) -> Vec<Cyclotomic> {
        let mut v = vec![czero(); self.dim()];
        v[i] = cone();
        v
    }

    pub fn zero_elem(&self) -> Vec<Cyclotomic> {
        vec![czero(); self.dim()]
    }

    pub fn mul(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut out = self.zero_elem();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in &self.sc[i][j] {
                    out[*k] = out[*k].add(&ab.mul(c));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }

    pub fn scale(&self, s: &Cyclotomic, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
        x.iter().map(|a| a.mul(s)).collect()
    }

    pub fn conj(&self, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
        x.iter().map(Cyclotomic::conj).collect()
    }

    /// Degree of a homogeneous element; zero counts as even; None when mixed.
    pub fn degree_of(&self, x: &[Cyclotomic]) -> Option<u8> {
        let mut seen = None;
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    /// Matrix of y -> x y in the basis.
    pub fn left_mul_matrix(&self, x: &[Cyclotomic]) -> CMatrix {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(x, &self.basis(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn inverse(&self, x: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let l = self.left_mul_matrix(x);
        let rows = l.to_rows();
        let y = crate::exactla::field::solve(&rows, &self.unit, self.dim()).ok_or(MagError::DivisionByZero)?;
        if self.mul(&y, x) != self.unit {
            return Err(MagError::DivisionByZero);
        }
        Ok(y)
    }

    /// s with x = s y, for nonzero y.
    pub fn ratio(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Option<Cyclotomic> {
        let k = y.iter().position(|v| !v.is_zero())?;
        let s = x[k].mul(&y[k].inv());
        let sy = self.scale(&s, y);
        (sy.as_slice() == x).then_some(s)
    }

    pub fn as_scalar(&self, x: &[Cyclotomic]) -> Option<Cyclotomic> {
        if x.iter().all(Field::is_zero) {
            return Some(czero());
        }
        self.ratio(x, &self.unit)
    }

    /// True when every structure constant and the unit are rational.
    pub fn is_rational(&self) -> bool {
        self.unit.iter().all(Cyclotomic::is_rational)
            && self.sc.iter().flatten().flatten().all(|(_, v)| v.is_rational())
    }

    /// The ground field as a one-dimensional even algebra.
    pub fn ground(field: BaseField) -> Self {
        GradedAlgebra {
            field,
            degrees: vec![0],
            sc: vec![vec![vec![(0, cone())]]],
            unit: vec![cone()],
            labels: vec!["1".into()],
        }
    }

    /// Clifford algebra with generators squaring to the given signs; basis by subset masks.
    pub fn clifford(field: BaseField, squares: &[i64]) -> Result<Self> {
        let n = squares.len();
        if n > 12 {
            return Err(MagError::ResourceLimit {
                what: "Clifford algebra generators".into(),
                needed: n,
                budget: 12,
            });
        }
        let d = 1usize << n;
        let degrees = (0..d).map(|m| (m.count_ones() % 2) as u8).collect();
        let sc = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let mut sign = 1i64;
                        for t in 0..n {
                            if b >> t & 1 == 1 {
                                // generators of a above t pass over e_t
                                if (a >> (t + 1)).count_ones() % 2 == 1 {
                                    sign = -sign;
                                }
                                if a >> t & 1 == 1 {
                                    sign *= squares[t];
                                }
                            }
                        }
                        if sign == 0 {
                            Vec::new()
                        } else {
                            vec![(a ^ b, Cyclotomic::int(sign))]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![czero(); d];
        unit[0] = cone();
        let labels = (0..d)
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..n).filter(|t| m >> t & 1 == 1).map(|t| format!("e{}", t + 1)).collect()
                }
            })
            .collect();
        Ok(GradedAlgebra {
            field,
            degrees,
            sc,
            unit,
            labels,
        })
    }

    /// Real Clifford algebra C^{p,q}: p generators square to +1, q to -1.
    pub fn clifford_real(p: usize, q: usize) -> Result<Self> {
        let mut squares = vec![1; p];
        squares.extend(std::iter::repeat(-1).take(q));
        Self::clifford(BaseField::Q, &squares)
    }

    /// Complex Clifford algebra C^n over Q(i).
    pub fn clifford_complex(n: usize) -> Result<Self> {
        Self::clifford(BaseField::Qi, &vec![1; n])
    }

    /// End(k^{d0|d1}) with matrix units E_ab at index a (d0 + d1) + b.
    pub fn matrix_algebra(field: BaseField, d0: usize, d1: usize) -> Self {
        let n = d0 + d1;
        let par = |a: usize| u8::from(a >= d0);
        let d = n * n;
        let degrees = (0..d).map(|k| par(k / n) ^ par(k % n)).collect();
        let sc = (0..d)
            .map(|x| {
                let (a, b) = (x / n, x % n);
                (0..d)
                    .map(|y| {
                        let (c, e) = (y / n, y % n);
                        if b == c {
                            vec![(a * n + e, cone())]
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut unit = vec![czero(); d];
        for a in 0..n {
            unit[a * n + a] = cone();
        }
        let labels = (0..d).map(|k| format!("E{}{}", k / n, k % n)).collect();
        GradedAlgebra {
            field,
            degrees,
            sc,
            unit,
            labels,
        }
    }

    /// Element of a matrix algebra from its matrix.
    pub fn matrix_element(m: &CMatrix) -> Vec<Cyclotomic> {
        m.entries().to_vec()
    }

    /// A commutative even algebra Q[y]/(y^2 = s).
    pub fn quadratic(field: BaseField, s: i64) -> Self {
        let sc = vec![
            vec![vec![(0, cone())], vec![(1, cone())]],
            vec![vec![(1, cone())], vec![(0, Cyclotomic::int(s))]],
        ];
        GradedAlgebra {
            field,
            degrees: vec![0, 0],
            sc,
            unit: vec![cone(), czero()],
            labels: vec!["1".into(), "y".into()],
        }
    }

    /// Hamilton quaternions in degree 0, basis 1, i, j, k.
    pub fn quaternions() -> Self {
        let table: [[(usize, i64); 4]; 4] = [
            [(0, 1), (1, 1), (2, 1), (3, 1)],
            [(1, 1), (0, -1), (3, 1), (2, -1)],
            [(2, 1), (3, -1), (0, -1), (1, 1)],
            [(3, 1), (2, 1), (1, -1), (0, -1)],
        ];
        let sc = table
            .iter()
            .map(|row| row.iter().map(|&(k, s)| vec![(k, Cyclotomic::int(s))]).collect())
            .collect();
        GradedAlgebra {
            field: BaseField::Q,
            degrees: vec![0; 4],
            sc,
            unit: vec![cone(), czero(), czero(), czero()],
            labels: vec!["1".into(), "i".into(), "j".into(), "k".into()],
        }
    }

    /// Graded tensor product with (a x b)(a' x b') = (-1)^{|b||a'|} aa' x bb'.
    pub fn graded_tensor(&self, o: &GradedAlgebra) -> GradedAlgebra {
        let (da, db) = (self.dim(), o.dim());
        let d = da * db;
        let mut degrees = Vec::with_capacity(d);
        let mut labels = Vec::with_capacity(d);
        for i in 0..da {
            for j in 0..db {
                degrees.push(self.degrees[i] ^ o.degrees[j]);
                labels.push(format!("{}*{}", self.labels[i], o.labels[j]));
            }
        }
        let mut sc = vec![vec![Vec::new(); d]; d];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let neg = o.degrees[j] & self.degrees[k] == 1;
                        let mut out = Vec::new();
                        for (p, x) in &self.sc[i][k] {
                            for (q, y) in &o.sc[j][l] {
                                let v = x.mul(y);
                                out.push((p * db + q, if neg { v.neg() } else { v }));
                            }
                        }
                        sc[i * db + j][k * db + l] = out;
                    }
                }
            }
        }
        let mut unit = vec![czero(); d];
        for i in 0..da {
            for j in 0..db {
                unit[i * db + j] = self.unit[i].mul(&o.unit[j]);
            }
        }
        GradedAlgebra {
            field: self.field.join(o.field),
            degrees,
            sc,
            unit,
            labels,
        }
    }

    /// a^op b^op = (-1)^{|a||b|} (ba)^op.
    pub fn opposite(&self) -> GradedAlgebra {
        let d = self.dim();
        let sc = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let neg = self.degrees[i] & self.degrees[j] == 1;
                        self.sc[j][i]
                            .iter()
                            .map(|(k, v)| (*k, if neg { v.neg() } else { v.clone() }))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra {
            sc,
            labels: self.labels.iter().map(|l| format!("{l}^op")).collect(),
            ..self.clone()
        }
    }

    /// Solutions z of degree `deg` to z b_i = sign(i) b_i z for all i.
    fn commutation_solutions(&self, deg: u8, graded: bool) -> Vec<Vec<Cyclotomic>> {
        let d = self.dim();
        let unknowns: Vec<usize> = (0..d).filter(|&k| self.degrees[k] == deg).collect();
        let mut ech = SparseEchelon::<Cyclotomic>::new(unknowns.len());
        for i in 0..d {
            let neg = graded && (deg & self.degrees[i]) == 1;
            let mut rows: BTreeMap<usize, Vec<(usize, Cyclotomic)>> = BTreeMap::new();
            for (u, &k) in unknowns.iter().enumerate() {
                for (l, v) in &self.sc[k][i] {
                    rows.entry(*l).or_default().push((u, v.clone()));
                }
                for (l, v) in &self.sc[i][k] {
                    rows.entry(*l).or_default().push((u, if neg { v.clone() } else { v.neg() }));
                }
            }
            for (_, r) in rows {
                ech.insert(r);
            }
        }
        ech.nullspace()
            .into_iter()
            .map(|sol| {
                let mut z = self.zero_elem();
                for (u, &k) in unknowns.iter().enumerate() {
                    z[k] = sol[u].clone();
                }
                z
            })
            .collect()
    }

    /// Basis of the graded center, even part first.
    pub fn graded_center(&self) -> Vec<Vec<Cyclotomic>> {
        let mut out = self.commutation_solutions(0, true);
        out.extend(self.commutation_solutions(1, true));
        out
    }

    /// Basis of the odd part of the ungraded center.
    pub fn ungraded_center_odd(&self) -> Vec<Vec<Cyclotomic>> {
        self.commutation_solutions(1, false)
    }

    /// Rank of a -> (x -> (-1)^{|b||x|} a x b) on A (x) A^op, computed on
    /// connected blocks of its sparsity pattern.
    pub fn canonical_map_rank(&self) -> usize {
        let d = self.dim();
        let cols: Vec<BTreeMap<usize, Cyclotomic>> = (0..d * d)
            .map(|c| {
                let (i, j) = (c / d, c % d);
                let mut out = BTreeMap::new();
                for k in 0..d {
                    let neg = self.degrees[j] & self.degrees[k] == 1;
                    for (p, x) in &self.sc[i][k] {
                        for (l, y) in &self.sc[*p][j] {
                            let v = x.mul(y);
                            sparse_add(&mut out, l * d + k, if neg { v.neg() } else { v });
                        }
                    }
                }
                out
            })
            .collect();
        // union-find over columns and End coordinates
        let n = 2 * d * d;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (c, col) in cols.iter().enumerate() {
            for &r in col.keys() {
                let (a, b) = (find(&mut parent, c), find(&mut parent, d * d + r));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for c in 0..d * d {
            if !cols[c].is_empty() {
                let root = find(&mut parent, c);
                blocks.entry(root).or_default().push(c);
            }
        }
        let mut rank = 0;
        for members in blocks.values() {
            let mut local: BTreeMap<usize, usize> = BTreeMap::new();
            for &c in members {
                for &r in cols[c].keys() {
                    let next = local.len();
                    local.entry(r).or_insert(next);
                }
            }
            let mut ech = SparseEchelon::<Cyclotomic>::new(local.len());
            for &c in members {
                if ech.insert(cols[c].iter().map(|(r, v)| (local[r], v.clone()))) {
                    rank += 1;
                }
            }
        }
        rank
    }

    /// Graded center is the ground field and A (x) A^op -> End(A) is bijective.
    pub fn is_central_simple(&self) -> bool {
        self.graded_center().len() == 1 && self.canonical_map_rank() == self.dim() * self.dim()
    }

    /// `{ "field", "N"?, "degrees", "sc", "unit" }` with dense coefficient vectors.
    pub fn to_json(&self) -> Value {
        let enc = |x: &Cyclotomic| -> Value {
            let c = x.promote(self.field.conductor().max(x.conductor()));
            if c.is_rational() {
                Value::String(rational_to_string(&c.as_rational().expect("rational")))
            } else {
                Value::Array(c.coeffs().iter().map(|q| Value::String(rational_to_string(q))).collect())
            }
        };
        let dense = |s: &Sparse| -> Value {
            let mut v = vec![Value::String("0".into()); self.dim()];
            for (k, x) in s {
                v[*k] = enc(x);
            }
            Value::Array(v)
        };
        let (field, n) = match self.field {
            BaseField::Q => ("Q".to_string(), None),
            BaseField::Qi => ("Qi".to_string(), None),
            BaseField::QZeta(n) => (format!("Qzeta{n}"), Some(n)),
        };
        let mut out = json!({
            "field": field,
            "degrees": self.degrees,
            "sc": self.sc.iter().map(|r| Value::Array(r.iter().map(dense).collect())).collect::<Vec<_>>(),
            "unit": self.unit.iter().map(enc).collect::<Vec<_>>(),
        });
        if let Some(n) = n {
            out["N"] = json!(n);
        }
        out
    }

    pub fn from_json(v: &Value) -> Result<GradedAlgebra> {
        let fname = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| MagError::param("algebra JSON needs a `field`"))?;
        let field = match fname {
            "Q" => BaseField::Q,
            "Qi" => BaseField::Qi,
            s if s.starts_with("Qzeta") => {
                let n = v
                    .get("N")
                    .and_then(Value::as_u64)
                    .or_else(|| s["Qzeta".len()..].parse().ok())
                    .ok_or_else(|| MagError::param("Qzeta field needs `N`"))?;
                BaseField::QZeta(n as u32)
            }
            other => return Err(MagError::param(format!("unknown field `{other}`"))),
        };
        let n = field.conductor();
        let scalar = |x: &Value| -> Result<Cyclotomic> {
            match x {
                Value::String(s) if s.contains('i') => Cyclotomic::parse_gaussian(s),
                Value::String(s) => Ok(Cyclotomic::rational(parse_rational(s)?)),
                Value::Number(num) => Ok(Cyclotomic::rational(parse_rational(&num.to_string())?)),
                Value::Array(cs) => {
                    let qs = cs
                        .iter()
                        .map(|c| match c {
                            Value::String(s) => parse_rational(s),
                            Value::Number(num) => parse_rational(&num.to_string()),
                            _ => Err(MagError::param("coefficient must be a rational")),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Cyclotomic::from_coeffs(n, qs)
                }
                _ => Err(MagError::param("bad scalar in algebra JSON")),
            }
        };
        let degrees: Vec<u8> = v
            .get("degrees")
            .and_then(Value::as_array)
            .ok_or_else(|| MagError::param("algebra JSON needs `degrees`"))?
            .iter()
            .map(|x| x.as_u64().map(|b| b as u8).ok_or_else(|| MagError::param("degrees must be 0/1")))
            .collect::<Result<_>>()?;
        let d = degrees.len();
        let sc_v = v
            .get("sc")
            .and_then(Value::as_array)
            .ok_or_else(|| MagError::param("algebra JSON needs `sc`"))?;
        let mut sc = Vec::with_capacity(d);
        for row in sc_v {
            let row = row.as_array().ok_or_else(|| MagError::param("`sc` rows must be arrays"))?;
            let mut out_row = Vec::with_capacity(d);
            for cell in row {
                let cell = cell.as_array().ok_or_else(|| MagError::param("`sc` cells must be arrays"))?;
                let mut sp = Vec::new();
                for (k, x) in cell.iter().enumerate() {
                    let c = scalar(x)?;
                    if !c.is_zero() {
                        sp.push((k, c));
                    }
                }
                out_row.push(sp);
            }
            sc.push(out_row);
        }
        let unit = v
            .get("unit")
            .and_then(Value::as_array)
            .ok_or_else(|| MagError::param("algebra JSON needs `unit`"))?
            .iter()
            .map(scalar)
            .collect::<Result<Vec<_>>>()?;
        GradedAlgebra::new(field, degrees, sc, unit)
    }
}

/// Rational view of a scalar, for the real-algebra routines.
pub(crate) fn rat(x: &Cyclotomic) -> Option<BigRational> {
    x.as_rational()
}
