//! Magnetic, projective and graded representations over cyclotomic fields.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohom::{CoefficientModel, Cochain};
use crate::error::{MagError, Result};
use crate::exactla::{parse_rational, rational_to_string, CMatrix, Cyclotomic, Field, SparseEchelon};
use crate::gradalg::{tenfold_classify, BaseField, GradedAlgebra, TenfoldClass};
use crate::magcore::{FiniteGroup, MagneticGroup};

/// Grading by a homomorphism psi with the splitting dim = d0 + d1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub psi: Vec<u8>,
    pub d0: usize,
}

/// g -> Lambda_g, where Lambda_g acts antilinearly when phi(g) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagneticRep {
    pub base: MagneticGroup,
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
    pub grading: Option<Grading>,
}

impl MagneticRep {
    pub fn new(base: MagneticGroup, matrices: Vec<CMatrix>, grading: Option<Grading>) -> Result<Self> {
        let n = base.order();
        if matrices.len() != n {
            return Err(MagError::param(format!("{} matrices for a group of order {n}", matrices.len())));
        }
        let dim = matrices[0].rows;
        for (g, m) in matrices.iter().enumerate() {
            if m.rows != dim || m.cols != dim {
                return Err(MagError::param(format!("matrix of element {g} is not {dim}x{dim}")));
            }
            if !m.is_invertible() {
                return Err(MagError::param(format!("matrix of element {g} is not invertible")));
            }
        }
        if matrices[base.group.identity] != CMatrix::identity(dim) {
            return Err(MagError::param("the identity must act by the identity matrix"));
        }
        if let Some(gr) = &grading {
            if gr.d0 > dim || gr.psi.len() != n || gr.psi.iter().any(|&b| b > 1) {
                return Err(MagError::param("grading does not match the representation"));
            }
            for g in 0..n {
                for h in 0..n {
                    if gr.psi[base.group.mul(g, h)] != gr.psi[g] ^ gr.psi[h] {
                        return Err(MagError::param(format!("psi is not a homomorphism at ({g}, {h})")));
                    }
                }
            }
            for (g, m) in matrices.iter().enumerate() {
                for i in 0..dim {
                    for j in 0..dim {
                        let off = (i < gr.d0) != (j < gr.d0);
                        if off != (gr.psi[g] == 1) && !m.get(i, j).is_zero() {
                            return Err(MagError::param(format!("matrix of element {g} violates the grading at ({i}, {j})")));
                        }
                    }
                }
            }
        }
        Ok(MagneticRep {
            base,
            dim,
            matrices,
            grading,
        })
    }

    /// Lambda = I everywhere.
    pub fn trivial(base: MagneticGroup, dim: usize) -> Self {
        let matrices = vec![CMatrix::identity(dim); base.order()];
        MagneticRep {
            base,
            dim,
            matrices,
            grading: None,
        }
    }

    /// Builds a representation from images of the group generators by closing
    /// under Lambda_g conj^{phi(g)}(Lambda_h) = Lambda_{gh}.
    pub fn from_generators(base: MagneticGroup, images: &[(usize, CMatrix)]) -> Result<Self> {
        let n = base.order();
        let dim = images.first().map_or(1, |x| x.1.rows);
        let mut mats: Vec<Option<CMatrix>> = vec![None; n];
        mats[base.group.identity] = Some(CMatrix::identity(dim));
        let mut frontier = vec![base.group.identity];
        while let Some(g) = frontier.pop() {
            for (s, ms) in images {
                let gs = base.group.mul(g, *s);
                let cand = mats[g].as_ref().expect("set").mul(&ms.conj_if(base.phi(g) == 1));
                match &mats[gs] {
                    None => {
                        mats[gs] = Some(cand);
                        frontier.push(gs);
                    }
                    Some(existing) if *existing != cand => {
                        return Err(MagError::param(format!("generator images are inconsistent at element {gs}")));
                    }
                    _ => {}
                }
            }
        }
        let matrices = mats
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| MagError::param("images do not generate the group"))?;
        MagneticRep::new(base, matrices, None)
    }

    pub fn conductor(&self) -> u32 {
        self.matrices.iter().fold(1, |acc, m| acc.lcm(&m.conductor()))
    }

    fn twisted(&self, g: usize, x: &CMatrix) -> CMatrix {
        x.conj_if(self.base.phi(g) == 1)
    }

    /// First pair with Lambda_g conj^{phi(g)}(Lambda_h) != Lambda_{gh}.
    pub fn twisted_hom_violation(&self) -> Option<(usize, usize)> {
        let n = self.base.order();
        (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .find(|&(g, h)| self.matrices[g].mul(&self.twisted(g, &self.matrices[h])) != self.matrices[self.base.group.mul(g, h)])
    }

    pub fn verify_twisted_hom(&self) -> bool {
        self.twisted_hom_violation().is_none()
    }

    /// Discrepancy cocycle as angles in mu_m.
    pub fn extract_cocycle(&self) -> Result<ScalarCocycle> {
        let n = self.base.order();
        let bound = 2 * u64::from(self.conductor()).lcm(&2) * n as u64;
        let mut raw = Vec::with_capacity(n * n);
        let mut m = 1u64;
        for g in 0..n {
            for h in 0..n {
                let gh = self.base.group.mul(g, h);
                let lhs = self.matrices[g].mul(&self.twisted(g, &self.matrices[h]));
                let s = lhs
                    .ratio_to(&self.matrices[gh])
                    .ok_or(MagError::NotProjective(g, h))?;
                let (j, l) = s
                    .root_of_unity_exponent()
                    .ok_or_else(|| MagError::UnsupportedScalar(format!("discrepancy at ({g}, {h}) is not a root of unity")))?;
                let d = j.gcd(&l);
                let (p, q) = (j / d, l / d);
                if bound % q != 0 {
                    return Err(MagError::UnsupportedScalar(format!(
                        "discrepancy at ({g}, {h}) has order {q}, beyond {bound}"
                    )));
                }
                m = m.lcm(&q);
                raw.push((p, q));
            }
        }
        let values = raw.into_iter().map(|(p, q)| p * (m / q)).collect();
        let c = ScalarCocycle { m, values };
        if let Some(w) = c.violation(&self.base) {
            return Err(MagError::InvalidCocycle { witness: w });
        }
        Ok(c)
    }

    /// Kronecker product of ungraded representations.
    pub fn tensor(&self, o: &MagneticRep) -> Result<MagneticRep> {
        if self.base != o.base {
            return Err(MagError::param("tensor factors have different magnetic groups"));
        }
        if self.grading.is_some() || o.grading.is_some() {
            return Err(MagError::param("tensor products are formed for ungraded representations"));
        }
        let matrices = self.matrices.iter().zip(&o.matrices).map(|(a, b)| a.kron(b)).collect();
        MagneticRep::new(self.base.clone(), matrices, None)
    }

    /// P Lambda_g conj^{phi(g)}(P)^{-1}.
    pub fn conjugate_by(&self, p: &CMatrix) -> Result<MagneticRep> {
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for (g, m) in self.matrices.iter().enumerate() {
            matrices.push(p.mul(m).mul(&self.twisted(g, p).inverse()?));
        }
        MagneticRep::new(self.base.clone(), matrices, None)
    }

    /// g -> exp(-2 pi i alpha(g)) Lambda_g for a Q/Z 1-cochain alpha.
    pub fn rescale(&self, alpha: &Cochain) -> Result<MagneticRep> {
        if alpha.degree != 1 || !alpha.model.is_qz() {
            return Err(MagError::param("rescaling needs a Q/Z 1-cochain"));
        }
        let d = alpha
            .denominator()
            .to_u32()
            .ok_or_else(|| MagError::UnsupportedScalar("rescaling angle denominator too large".into()))?;
        let bar = crate::cohom::BarIndex::new(&self.base.group);
        let matrices = (0..self.base.order())
            .map(|g| {
                let a = alpha.value(&bar, &[g]) * BigRational::from_integer(BigInt::from(d));
                let k = a.to_integer().to_i64().expect("small");
                self.matrices[g].scale(&Cyclotomic::zeta(d.max(1), -k))
            })
            .collect();
        MagneticRep::new(self.base.clone(), matrices, self.grading.clone())
    }

    /// `{ "N", "dim", "matrices": { "g": [[entries]] }, "phi", "psi"?, "d0"? }`.
    pub fn from_json(base: &MagneticGroup, v: &Value) -> Result<MagneticRep> {
        let n_cond = v.get("N").and_then(Value::as_u64).unwrap_or(4) as u32;
        let dim = v
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| MagError::param("representation JSON needs `dim`"))? as usize;
        if let Some(phi) = v.get("phi") {
            let phi: Vec<u8> = serde_json::from_value(phi.clone()).map_err(|e| MagError::param(e.to_string()))?;
            if phi != base.phi {
                return Err(MagError::param("`phi` does not match the magnetic group"));
            }
        }
        let mats = v
            .get("matrices")
            .and_then(Value::as_object)
            .ok_or_else(|| MagError::param("representation JSON needs `matrices`"))?;
        let mut matrices: Vec<Option<CMatrix>> = vec![None; base.order()];
        matrices[base.group.identity] = Some(CMatrix::identity(dim));
        for (key, m) in mats {
            let g = key
                .parse::<usize>()
                .ok()
                .filter(|&g| g < base.order())
                .or_else(|| (0..base.order()).find(|&g| base.group.label(g) == *key))
                .ok_or_else(|| MagError::param(format!("unknown group element `{key}`")))?;
            matrices[g] = Some(parse_cyclotomic_matrix(n_cond, m)?);
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| MagError::param(format!("no matrix for element {g}"))))
            .collect::<Result<Vec<_>>>()?;
        let grading = match v.get("psi") {
            None | Some(Value::Null) => None,
            Some(p) => Some(Grading {
                psi: serde_json::from_value(p.clone()).map_err(|e| MagError::param(e.to_string()))?,
                d0: v.get("d0").and_then(Value::as_u64).map_or(dim / 2, |x| x as usize),
            }),
        };
        MagneticRep::new(base.clone(), matrices, grading)
    }

    pub fn to_json(&self) -> Value {
        let n = self.conductor().lcm(&1);
        let mats: serde_json::Map<String, Value> = self
            .matrices
            .iter()
            .enumerate()
            .map(|(g, m)| {
                let rows: Vec<Value> = m
                    .to_rows()
                    .iter()
                    .map(|r| {
                        Value::Array(
                            r.iter()
                                .map(|x| {
                                    Value::Array(x.promote(n).coeffs().iter().map(|q| Value::String(rational_to_string(q))).collect())
                                })
                                .collect(),
                        )
                    })
                    .collect();
                (g.to_string(), Value::Array(rows))
            })
            .collect();
        let mut out = json!({ "N": n, "dim": self.dim, "matrices": mats, "phi": self.base.phi });
        if let Some(gr) = &self.grading {
            out["psi"] = json!(gr.psi);
            out["d0"] = json!(gr.d0);
        }
        out
    }
}

/// Matrix whose entries are coefficient vectors over Q(zeta_n), Gaussian strings, or integers.
pub fn parse_cyclotomic_matrix(n: u32, v: &Value) -> Result<CMatrix> {
    let rows = v.as_array().ok_or_else(|| MagError::param("matrix must be an array of rows"))?;
    let parse_q = |x: &Value| -> Result<BigRational> {
        match x {
            Value::String(s) => parse_rational(s),
            Value::Number(k) => parse_rational(&k.to_string()),
            _ => Err(MagError::param("coefficient must be a rational")),
        }
    };
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| MagError::param("matrix rows must be arrays"))?
                .iter()
                .map(|x| match x {
                    Value::Array(cs) => Cyclotomic::from_coeffs(n, cs.iter().map(parse_q).collect::<Result<Vec<_>>>()?),
                    Value::String(s) if s.contains('i') => Cyclotomic::parse_gaussian(s),
                    other => Ok(Cyclotomic::rational(parse_q(other)?)),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CMatrix::from_rows(rows)
}

/// tau(g, h) = exp(2 pi i values[g |G| + h] / m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarCocycle {
    pub m: u64,
    pub values: Vec<u64>,
}

impl ScalarCocycle {
    pub fn trivial(order: usize) -> Self {
        ScalarCocycle {
            m: 1,
            values: vec![0; order * order],
        }
    }

    fn order(&self) -> usize {
        (self.values.len() as f64).sqrt().round() as usize
    }

    pub fn value(&self, g: usize, h: usize) -> u64 {
        self.values[g * self.order() + h]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// First triple violating phi(g)tau(h,k) tau(g,hk) = tau(gh,k) tau(g,h).
    pub fn violation(&self, base: &MagneticGroup) -> Option<Vec<usize>> {
        let n = base.order();
        if self.values.len() != n * n {
            return Some(Vec::new());
        }
        let m = self.m as i128;
        let grp = &base.group;
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let s = if base.phi(g) == 1 { -1 } else { 1 };
                    let lhs = s * self.value(h, k) as i128 + self.value(g, grp.mul(h, k)) as i128;
                    let rhs = self.value(grp.mul(g, h), k) as i128 + self.value(g, h) as i128;
                    if (lhs - rhs).rem_euclid(m) != 0 {
                        return Some(vec![g, h, k]);
                    }
                }
            }
        }
        None
    }

    /// Pointwise product.
    pub fn mul(&self, o: &ScalarCocycle) -> ScalarCocycle {
        let m = self.m.lcm(&o.m);
        let values = self
            .values
            .iter()
            .zip(&o.values)
            .map(|(a, b)| (a * (m / self.m) + b * (m / o.m)) % m)
            .collect();
        ScalarCocycle { m, values }.reduced()
    }

    /// Smallest modulus carrying the same angles.
    pub fn reduced(&self) -> ScalarCocycle {
        let g = self.values.iter().fold(self.m, |acc, &v| acc.gcd(&v));
        ScalarCocycle {
            m: self.m / g,
            values: self.values.iter().map(|v| v / g).collect(),
        }
    }

    /// The same angles as a twisted Q/Z cochain of degree 2.
    pub fn to_cochain(&self, base: &MagneticGroup) -> Cochain {
        let m = BigInt::from(self.m);
        Cochain::from_fn(base, CoefficientModel::QmodZTwisted, 2, |t| {
            BigRational::new(BigInt::from(self.value(t[0], t[1])), m.clone())
        })
    }

    /// Reads a normalized twisted Q/Z 2-cochain.
    pub fn from_cochain(base: &MagneticGroup, c: &Cochain) -> Result<ScalarCocycle> {
        if c.degree != 2 || !c.model.is_qz() {
            return Err(MagError::param("expected a Q/Z 2-cochain"));
        }
        let m = c
            .denominator()
            .to_u64()
            .ok_or_else(|| MagError::UnsupportedScalar("cocycle denominator too large".into()))?;
        let bar = crate::cohom::BarIndex::new(&base.group);
        let n = base.order();
        let mut values = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let v = c.value(&bar, &[g, h]) * BigRational::from_integer(BigInt::from(m));
                values.push(v.to_integer().to_u64().unwrap_or(0));
            }
        }
        Ok(ScalarCocycle { m, values })
    }
}

/// Finite extension mu_m x_tau G with element (lambda, g) at index g m + lambda.
#[derive(Debug, Clone)]
pub struct Extension {
    pub group: FiniteGroup,
    pub m: u64,
    pub projection: Vec<usize>,
    pub marker: Vec<usize>,
}

pub fn cocycle_to_extension(t: &ScalarCocycle, base: &MagneticGroup) -> Result<Extension> {
    if let Some(w) = t.violation(base) {
        return Err(MagError::InvalidCocycle { witness: w });
    }
    let m = t.m as usize;
    let n = base.order();
    let table = (0..n * m)
        .map(|x| {
            let (g0, l0) = (x / m, x % m);
            (0..n * m)
                .map(|y| {
                    let (g1, l1) = (y / m, y % m);
                    let l1t = if base.phi(g0) == 1 { (m - l1) % m } else { l1 };
                    let lam = (t.value(g0, g1) as usize + l0 + l1t) % m;
                    base.group.mul(g0, g1) * m + lam
                })
                .collect()
        })
        .collect();
    let group = FiniteGroup::from_table(table)?;
    Ok(Extension {
        group,
        m: t.m,
        projection: (0..n * m).map(|x| x / m).collect(),
        marker: (0..m).map(|l| base.group.identity * m + l).collect(),
    })
}

/// Basis over Q of {X : F(X) = 0} for a Q-linear map F on d x d matrices over Q(zeta_l).
fn q_kernel(d: usize, l: u32, support: impl Fn(usize, usize) -> bool, f: impl Fn(&CMatrix) -> Vec<CMatrix>) -> Vec<CMatrix> {
    let deg = Cyclotomic::zero_in(l).coeffs().len();
    let mut unknowns = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if support(i, j) {
                for k in 0..deg {
                    unknowns.push((i, j, k));
                }
            }
        }
    }
    let mut rows: BTreeMap<usize, Vec<(usize, BigRational)>> = BTreeMap::new();
    for (u, &(i, j, k)) in unknowns.iter().enumerate() {
        let mut x = CMatrix::zeros(d, d);
        x.set(i, j, Cyclotomic::zeta(l, k as i64));
        let mut offset = 0;
        for out in f(&x) {
            for e in out.entries() {
                for (c, q) in e.promote(l).coeffs().iter().enumerate() {
                    if !Zero::is_zero(q) {
                        rows.entry(offset + c).or_default().push((u, q.clone()));
                    }
                }
                offset += deg;
            }
        }
    }
    let mut ech = SparseEchelon::<BigRational>::new(unknowns.len());
    for (_, r) in rows {
        ech.insert(r);
    }
    ech.nullspace()
        .into_iter()
        .map(|v| {
            let mut x = CMatrix::zeros(d, d);
            for (u, &(i, j, k)) in unknowns.iter().enumerate() {
                if !Zero::is_zero(&v[u]) {
                    let cur = x.get(i, j).clone();
                    x.set(i, j, cur.add(&Cyclotomic::zeta(l, k as i64).scale(&v[u])));
                }
            }
            x
        })
        .collect()
}

/// Intertwiner M with M Lambda_g conj^{phi(g)}(M)^{-1} = Lambda'_g, searched with
/// integer coefficients of absolute value at most `radius`.
pub fn equival_reps(r1: &MagneticRep, r2: &MagneticRep, radius: i64) -> Result<Option<CMatrix>> {
    if r1.base != r2.base || r1.dim != r2.dim {
        return Err(MagError::param("representations must share group and dimension"));
    }
    if !r1.verify_twisted_hom() || !r2.verify_twisted_hom() {
        return Err(MagError::param("equivalence is tested for strict representations"));
    }
    let l = r1.conductor().lcm(&r2.conductor()).lcm(&4);
    let d = r1.dim;
    let basis = q_kernel(d, l, |_, _| true, |m| {
        (0..r1.base.order())
            .map(|g| r2.matrices[g].mul(&m.conj_if(r1.base.phi(g) == 1)).sub(&m.mul(&r1.matrices[g])))
            .collect()
    });
    if basis.is_empty() {
        return Ok(None);
    }
    let k = basis.len();
    let combo = |c: &[i64]| -> CMatrix {
        basis
            .iter()
            .zip(c)
            .fold(CMatrix::zeros(d, d), |acc, (b, &x)| acc.add(&b.scale(&Cyclotomic::int(x))))
    };
    let ones = vec![1; k];
    if let Some(m) = Some(combo(&ones)).filter(CMatrix::is_invertible) {
        return Ok(Some(m));
    }
    let cap = 200_000usize;
    let mut tried = 0usize;
    for r in 1..=radius.max(1) {
        let mut c = vec![-r; k];
        loop {
            if c.iter().any(|x| x.abs() == r) {
                tried += 1;
                if tried > cap {
                    return Ok(None);
                }
                let m = combo(&c);
                if m.is_invertible() {
                    return Ok(Some(m));
                }
            }
            let mut pos = 0;
            while pos < k && c[pos] == r {
                c[pos] = -r;
                pos += 1;
            }
            if pos == k {
                break;
            }
            c[pos] += 1;
        }
    }
    Ok(None)
}

/// Real type of an irreducible magnetic representation or Dyson class of a graded one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommutantType {
    Real,
    Complex,
    Quaternionic,
    Graded(TenfoldClass),
}

impl std::fmt::Display for CommutantType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CommutantType::Real => f.write_str("R"),
            CommutantType::Complex => f.write_str("C"),
            CommutantType::Quaternionic => f.write_str("H"),
            CommutantType::Graded(c) => write!(f, "{} ({})", c.tag(), c.az_label()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommutantReport {
    pub real_dimension: usize,
    pub basis: Vec<CMatrix>,
    pub degrees: Vec<u8>,
    pub identified_type: Option<CommutantType>,
}

/// Commutant {X : Lambda_g conj^{phi(g)}(X) = (-1)^{|X| psi(g)} X Lambda_g} as a real space.
pub fn commutant(r: &MagneticRep) -> Result<CommutantReport> {
    if !r.verify_twisted_hom() {
        return Err(MagError::param("commutant is computed for strict representations"));
    }
    let l = r.conductor().lcm(&4);
    let d = r.dim;
    let n = r.base.order();
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let parts: Vec<u8> = if r.grading.is_some() { vec![0, 1] } else { vec![0] };
    for &deg in &parts {
        let support = |i: usize, j: usize| match &r.grading {
            None => true,
            Some(gr) => u8::from((i < gr.d0) != (j < gr.d0)) == deg,
        };
        let sols = q_kernel(d, l, support, |x| {
            (0..n)
                .map(|g| {
                    let lhs = r.matrices[g].mul(&x.conj_if(r.base.phi(g) == 1));
                    let rhs = x.mul(&r.matrices[g]);
                    let odd = r.grading.as_ref().is_some_and(|gr| gr.psi[g] & deg == 1);
                    if odd {
                        lhs.add(&rhs)
                    } else {
                        lhs.sub(&rhs)
                    }
                })
                .collect()
        });
        degrees.extend(std::iter::repeat(deg).take(sols.len()));
        basis.extend(sols);
    }
    // the solution space is a vector space over the real subfield of Q(zeta_l)
    let real_sub = (Cyclotomic::zero_in(l).coeffs().len() / 2).max(1);
    let real_dimension = basis.len() / real_sub;
    let identified_type = if real_sub == 1 {
        classify_commutant(&basis, &degrees)
    } else {
        match (r.grading.is_some(), real_dimension) {
            (false, 1) => Some(CommutantType::Real),
            (false, 2) => Some(CommutantType::Complex),
            (false, 4) => Some(CommutantType::Quaternionic),
            _ => None,
        }
    };
    Ok(CommutantReport {
        real_dimension,
        basis,
        degrees,
        identified_type,
    })
}

/// Structure constants of the commutant over Q, passed to the tenfold classifier.
fn classify_commutant(basis: &[CMatrix], degrees: &[u8]) -> Option<CommutantType> {
    let k = basis.len();
    if k == 0 {
        return None;
    }
    let flat = |m: &CMatrix| -> Vec<BigRational> {
        m.entries()
            .iter()
            .flat_map(|e| e.promote(4).coeffs().to_vec())
            .collect()
    };
    let cols: Vec<Vec<BigRational>> = basis.iter().map(flat).collect();
    let rows: Vec<Vec<BigRational>> = (0..cols[0].len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let coords = |m: &CMatrix| -> Option<Vec<Cyclotomic>> {
        let sol = crate::exactla::field::solve(&rows, &flat(m), k)?;
        Some(sol.into_iter().map(Cyclotomic::rational).collect())
    };
    let d = basis[0].rows;
    let unit = coords(&CMatrix::identity(d))?;
    let mut sc = Vec::with_capacity(k);
    for a in basis {
        let mut row = Vec::with_capacity(k);
        for b in basis {
            let v = coords(&a.mul(b))?;
            row.push(v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
        }
        sc.push(row);
    }
    let alg = GradedAlgebra::new(BaseField::Q, degrees.to_vec(), sc, unit).ok()?;
    let class = tenfold_classify(&alg, false).ok()?;
    Some(if degrees.iter().any(|&x| x == 1) {
        CommutantType::Graded(class)
    } else {
        match class {
            TenfoldClass::R0 => CommutantType::Real,
            TenfoldClass::C0 => CommutantType::Complex,
            TenfoldClass::R4 => CommutantType::Quaternionic,
            other => CommutantType::Graded(other),
        }
    })
}

/// (Z/4, mod 2) with the generator acting by i sigma_y.
pub fn example_quaternionic() -> MagneticRep {
    let base = MagneticGroup::cyclic_mod2(4).expect("even order");
    let isy = CMatrix::from_ints(&[&[0, 1], &[-1, 0]]);
    MagneticRep::from_generators(base, &[(1, isy)]).expect("consistent")
}

/// Plain Z/2 on C^{1|1} with the generator acting by the odd matrix sigma_x.
pub fn example_chiral() -> MagneticRep {
    let base = MagneticGroup::plain(FiniteGroup::cyclic(2).expect("positive order"));
    let sx = CMatrix::from_ints(&[&[0, 1], &[1, 0]]);
    MagneticRep::new(
        base,
        vec![CMatrix::identity(2), sx],
        Some(Grading { psi: vec![0, 1], d0: 1 }),
    )
    .expect("graded rep")
}

#[cfg(test)]
mod tests;
