//! Group cohomology of magnetic groups on the normalized bar complex.
//!
//! An n-cochain stores one value per n-tuple of non-identity elements; the
//! tuple `(g_0, .., g_{n-1})` sits at index `sum pos(g_i) * k^(n-1-i)` with
//! `k = |G| - 1`. The twisted action multiplies by `(-1)^phi(g)`.

mod compute;
mod ops;

pub use compute::{
    cohomology, cohomology_invariants, h2_units, normalize_factors, Budget, CocycleClass, CohomologyGroup, CoordKind,
};
pub use ops::{cup_z2, hom_to_z2, iota, iota_into, trivialize, Trivialization};

pub(crate) use compute::dense_coboundary;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{MagError, Result};
use crate::exactla::{parse_rational, rational_to_string, SparseIntMatrix};
use crate::magcore::{FiniteGroup, MagneticGroup, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientModel {
    ZTwisted,
    ZTrivial,
    ZmodTwisted(u64),
    ZmodTrivial(u64),
    QmodZTwisted,
    /// Q/Z with trivial action; carries classes of C* with trivial action.
    QmodZTrivial,
}

impl CoefficientModel {
    pub fn is_twisted(self) -> bool {
        matches!(
            self,
            CoefficientModel::ZTwisted | CoefficientModel::ZmodTwisted(_) | CoefficientModel::QmodZTwisted
        )
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            CoefficientModel::ZmodTwisted(m) | CoefficientModel::ZmodTrivial(m) => Some(m),
            _ => None,
        }
    }

    pub fn is_qz(self) -> bool {
        matches!(self, CoefficientModel::QmodZTwisted | CoefficientModel::QmodZTrivial)
    }

    pub fn with_twist(self, twisted: bool) -> Self {
        use CoefficientModel::*;
        match (self, twisted) {
            (ZTwisted | ZTrivial, true) => ZTwisted,
            (ZTwisted | ZTrivial, false) => ZTrivial,
            (ZmodTwisted(m) | ZmodTrivial(m), true) => ZmodTwisted(m),
            (ZmodTwisted(m) | ZmodTrivial(m), false) => ZmodTrivial(m),
            (QmodZTwisted | QmodZTrivial, true) => QmodZTwisted,
            (QmodZTwisted | QmodZTrivial, false) => QmodZTrivial,
        }
    }

    /// Canonical representative of `v` in the coefficient module.
    pub fn reduce(self, v: &BigRational) -> BigRational {
        match self {
            CoefficientModel::ZTwisted | CoefficientModel::ZTrivial => v.clone(),
            CoefficientModel::ZmodTwisted(m) | CoefficientModel::ZmodTrivial(m) => {
                rat_mod(v, &BigRational::from_integer(BigInt::from(m)))
            }
            _ => v - v.floor(),
        }
    }

    /// Whether `v` is zero in the coefficient module.
    pub fn is_zero_value(self, v: &BigRational) -> bool {
        self.reduce(v).is_zero()
    }
}

pub(crate) fn rat_mod(v: &BigRational, m: &BigRational) -> BigRational {
    v - (v / m).floor() * m
}

impl fmt::Display for CoefficientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientModel::ZTwisted => write!(f, "Zt"),
            CoefficientModel::ZTrivial => write!(f, "Z"),
            CoefficientModel::ZmodTwisted(m) => write!(f, "Z/{m}t"),
            CoefficientModel::ZmodTrivial(m) => write!(f, "Z/{m}"),
            CoefficientModel::QmodZTwisted => write!(f, "Q/Zt"),
            CoefficientModel::QmodZTrivial => write!(f, "Q/Z"),
        }
    }
}

impl FromStr for CoefficientModel {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || MagError::Parse {
            pos: 0,
            msg: format!("unknown coefficient model `{s}` (expected Z, Zt, Z/m, Z/mt, Q/Z or Q/Zt)"),
        };
        match s {
            "Z" => return Ok(CoefficientModel::ZTrivial),
            "Zt" => return Ok(CoefficientModel::ZTwisted),
            "Q/Z" => return Ok(CoefficientModel::QmodZTrivial),
            "Q/Zt" => return Ok(CoefficientModel::QmodZTwisted),
            _ => {}
        }
        let rest = s.strip_prefix("Z/").ok_or_else(bad)?;
        let (digits, twisted) = match rest.strip_suffix('t') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let m: u64 = digits.parse().map_err(|_| MagError::Parse {
            pos: 2,
            msg: format!("bad modulus `{digits}`"),
        })?;
        if m == 0 {
            return Err(MagError::Parse {
                pos: 2,
                msg: "modulus must be positive".into(),
            });
        }
        Ok(if twisted {
            CoefficientModel::ZmodTwisted(m)
        } else {
            CoefficientModel::ZmodTrivial(m)
        })
    }
}

/// Index arithmetic for normalized bar cochains.
#[derive(Debug, Clone)]
pub struct BarIndex {
    k: usize,
    nonid: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl BarIndex {
    pub fn new(g: &FiniteGroup) -> Self {
        let nonid: Vec<usize> = (0..g.order).filter(|&x| x != g.identity).collect();
        let mut pos = vec![None; g.order];
        for (i, &x) in nonid.iter().enumerate() {
            pos[x] = Some(i);
        }
        BarIndex {
            k: nonid.len(),
            nonid,
            pos,
        }
    }

    pub fn width(&self) -> usize {
        self.k
    }

    /// Number of normalized n-tuples, saturating on overflow.
    pub fn size(&self, n: usize) -> usize {
        self.k.checked_pow(n as u32).unwrap_or(usize::MAX)
    }

    /// None when the tuple contains the identity.
    pub fn encode(&self, t: &[usize]) -> Option<usize> {
        let mut idx = 0usize;
        for &g in t {
            idx = idx * self.k + self.pos[g]?;
        }
        Some(idx)
    }

    pub fn decode(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = self.nonid[idx % self.k];
            idx /= self.k;
        }
        t
    }
}

/// Normalized cochain with values in a coefficient model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    pub model: CoefficientModel,
    pub group_order: usize,
    pub values: Vec<BigRational>,
}

impl Cochain {
    pub fn zero(m: &MagneticGroup, model: CoefficientModel, degree: usize) -> Self {
        let bar = BarIndex::new(&m.group);
        Cochain {
            degree,
            model,
            group_order: m.order(),
            values: vec![BigRational::zero(); bar.size(degree)],
        }
    }

    /// Builds from a function on tuples; tuples containing the identity are skipped.
    pub fn from_fn(
        m: &MagneticGroup,
        model: CoefficientModel,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> BigRational,
    ) -> Self {
        let bar = BarIndex::new(&m.group);
        let values = (0..bar.size(degree))
            .map(|i| model.reduce(&f(&bar.decode(i, degree))))
            .collect();
        Cochain {
            degree,
            model,
            group_order: m.order(),
            values,
        }
    }

    pub(crate) fn from_values(m: &MagneticGroup, model: CoefficientModel, degree: usize, values: Vec<BigRational>) -> Self {
        Cochain {
            degree,
            model,
            group_order: m.order(),
            values: values.iter().map(|v| model.reduce(v)).collect(),
        }
    }

    pub fn value(&self, bar: &BarIndex, t: &[usize]) -> BigRational {
        match bar.encode(t) {
            Some(i) => self.values[i].clone(),
            None => BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn check_base(&self, m: &MagneticGroup) -> Result<()> {
        let bar = BarIndex::new(&m.group);
        if self.group_order != m.order() || self.values.len() != bar.size(self.degree) {
            return Err(MagError::param(format!(
                "cochain lives on a group of order {}, not {}",
                self.group_order,
                m.order()
            )));
        }
        Ok(())
    }

    fn check_same(&self, o: &Cochain) -> Result<()> {
        if self.model != o.model || self.degree != o.degree || self.values.len() != o.values.len() {
            return Err(MagError::param(format!(
                "cochain mismatch: degree {} in {} vs degree {} in {}",
                self.degree, self.model, o.degree, o.model
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        self.check_same(o)?;
        let values = self
            .values
            .iter()
            .zip(&o.values)
            .map(|(a, b)| self.model.reduce(&(a + b)))
            .collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn neg(&self) -> Cochain {
        let values = self.values.iter().map(|a| self.model.reduce(&-a)).collect();
        Cochain { values, ..self.clone() }
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let k = BigRational::from_integer(BigInt::from(k));
        let values = self.values.iter().map(|a| self.model.reduce(&(a * &k))).collect();
        Cochain { values, ..self.clone() }
    }

    /// Same values reinterpreted in another model.
    pub fn recast(&self, model: CoefficientModel) -> Cochain {
        Cochain {
            model,
            values: self.values.iter().map(|v| model.reduce(v)).collect(),
            ..self.clone()
        }
    }

    /// Least common multiple of the value denominators.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Restriction to a subgroup, re-indexed on `sub_base` (its induced group).
    pub fn restrict(&self, m: &MagneticGroup, sub: &Subgroup, sub_base: &MagneticGroup) -> Result<Cochain> {
        self.check_base(m)?;
        if sub_base.order() != sub.order() {
            return Err(MagError::param("subgroup and its base group differ in order"));
        }
        let bar = BarIndex::new(&m.group);
        let mut buf = Vec::with_capacity(self.degree);
        Ok(Cochain::from_fn(sub_base, self.model, self.degree, |t| {
            buf.clear();
            buf.extend(t.iter().map(|&p| sub.embedding(p)));
            self.value(&bar, &buf)
        }))
    }

    /// `{ "degree", "model", "values": { "g1,g2": "p/q" } }`, zeros omitted.
    pub fn to_json(&self, m: &MagneticGroup) -> Value {
        let bar = BarIndex::new(&m.group);
        let mut values = Map::new();
        for (i, v) in self.values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let key = bar
                .decode(i, self.degree)
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",");
            values.insert(key, Value::String(rational_to_string(v)));
        }
        serde_json::json!({
            "degree": self.degree,
            "model": self.model.to_string(),
            "values": values,
        })
    }

    pub fn from_json(m: &MagneticGroup, v: &Value) -> Result<Cochain> {
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| MagError::param("cochain JSON needs an integer `degree`"))? as usize;
        let model: CoefficientModel = v
            .get("model")
            .and_then(Value::as_str)
            .ok_or_else(|| MagError::param("cochain JSON needs a string `model`"))?
            .parse()?;
        let mut c = Cochain::zero(m, model, degree);
        let bar = BarIndex::new(&m.group);
        if let Some(map) = v.get("values") {
            let map = map
                .as_object()
                .ok_or_else(|| MagError::param("`values` must be an object"))?;
            for (key, val) in map {
                let t: Vec<usize> = if key.is_empty() {
                    Vec::new()
                } else {
                    key.split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| MagError::param(format!("bad tuple key `{key}`")))?
                };
                if t.len() != degree || t.iter().any(|&g| g >= m.order()) {
                    return Err(MagError::param(format!("tuple key `{key}` does not fit degree {degree}")));
                }
                let q = match val {
                    Value::String(s) => parse_rational(s)?,
                    Value::Number(n) => parse_rational(&n.to_string())?,
                    _ => return Err(MagError::param(format!("value for `{key}` must be a rational string"))),
                };
                match bar.encode(&t) {
                    Some(i) => c.values[i] = model.reduce(&q),
                    None if model.is_zero_value(&q) => {}
                    None => return Err(MagError::param(format!("normalized cochain must vanish at `{key}`"))),
                }
            }
        }
        Ok(c)
    }
}

fn boundary_terms(m: &MagneticGroup, bar: &BarIndex, twisted: bool, t: &[usize], buf: &mut Vec<usize>, out: &mut Vec<(usize, i64)>) {
    out.clear();
    let n = t.len() - 1;
    let s0 = if twisted && m.phi(t[0]) == 1 { -1 } else { 1 };
    out.push((bar.encode(&t[1..]).expect("non-identity tail"), s0));
    for j in 1..=n {
        buf.clear();
        buf.extend_from_slice(&t[..j - 1]);
        buf.push(m.group.mul(t[j - 1], t[j]));
        buf.extend_from_slice(&t[j + 1..]);
        if let Some(c) = bar.encode(buf) {
            out.push((c, if j % 2 == 0 { 1 } else { -1 }));
        }
    }
    out.push((bar.encode(&t[..n]).expect("non-identity head"), if n % 2 == 0 { -1 } else { 1 }));
}

/// Unreduced coboundary of an n-cochain given by its value vector.
pub fn coboundary_raw(m: &MagneticGroup, twisted: bool, n: usize, values: &[BigRational]) -> Vec<BigRational> {
    let bar = BarIndex::new(&m.group);
    let mut buf = Vec::new();
    let mut terms = Vec::new();
    (0..bar.size(n + 1))
        .map(|r| {
            let t = bar.decode(r, n + 1);
            boundary_terms(m, &bar, twisted, &t, &mut buf, &mut terms);
            let mut acc = BigRational::zero();
            for &(c, s) in &terms {
                if s > 0 {
                    acc += &values[c];
                } else {
                    acc -= &values[c];
                }
            }
            acc
        })
        .collect()
}

pub fn coboundary(m: &MagneticGroup, f: &Cochain) -> Result<Cochain> {
    f.check_base(m)?;
    let raw = coboundary_raw(m, f.model.is_twisted(), f.degree, &f.values);
    Ok(Cochain::from_values(m, f.model, f.degree + 1, raw))
}

/// First tuple where the coboundary of `f` is nonzero in its model.
pub fn cocycle_violation(m: &MagneticGroup, f: &Cochain) -> Result<Option<Vec<usize>>> {
    f.check_base(m)?;
    let raw = coboundary_raw(m, f.model.is_twisted(), f.degree, &f.values);
    let bar = BarIndex::new(&m.group);
    Ok(raw
        .iter()
        .position(|v| !f.model.is_zero_value(v))
        .map(|i| bar.decode(i, f.degree + 1)))
}

/// Matrix of the coboundary from degree n to degree n + 1 over the integers.
pub fn coboundary_matrix(m: &MagneticGroup, twisted: bool, n: usize) -> SparseIntMatrix {
    let bar = BarIndex::new(&m.group);
    let rows = bar.size(n + 1);
    let cols = bar.size(n);
    let mut triplets = Vec::with_capacity(rows * (n + 2));
    let mut buf = Vec::new();
    let mut terms = Vec::new();
    for r in 0..rows {
        let t = bar.decode(r, n + 1);
        boundary_terms(m, &bar, twisted, &t, &mut buf, &mut terms);
        triplets.extend(terms.iter().map(|&(c, s)| (r, c, BigInt::from(s))));
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets).expect("indices in range")
}
