use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{coboundary_matrix, coboundary_raw, BarIndex, Cochain, CoefficientModel};
use crate::error::{MagError, Result};
use crate::exactla::{smith_invariants_sparse, IntMatrix, SmithWork};
use crate::magcore::MagneticGroup;

/// Size limits for the linear algebra behind cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_dense_cells: usize,
    pub max_sparse_entries: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dense_cells: 1_000_000,
            max_sparse_entries: 20_000_000,
        }
    }
}

impl Budget {
    pub fn check_dense(&self, what: &str, rows: usize, cols: usize) -> Result<()> {
        let cells = rows.saturating_mul(cols);
        if cells > self.max_dense_cells {
            return Err(MagError::ResourceLimit {
                what: format!("{what} ({rows} x {cols} dense)"),
                needed: cells,
                budget: self.max_dense_cells,
            });
        }
        Ok(())
    }

    fn check_sparse(&self, what: &str, entries: usize) -> Result<()> {
        if entries > self.max_sparse_entries {
            return Err(MagError::ResourceLimit {
                what: format!("{what} (sparse)"),
                needed: entries,
                budget: self.max_sparse_entries,
            });
        }
        Ok(())
    }
}

/// Dense integer matrix of the degree-n coboundary, subject to the budget.
pub(crate) fn dense_coboundary(m: &MagneticGroup, twisted: bool, n: usize, budget: &Budget) -> Result<IntMatrix> {
    let bar = BarIndex::new(&m.group);
    budget.check_dense(&format!("coboundary C^{n} -> C^{}", n + 1), bar.size(n + 1), bar.size(n))?;
    Ok(coboundary_matrix(m, twisted, n).to_dense())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoordKind {
    /// coordinates are `row . values` of the cocycle itself
    Direct,
    /// coordinates are `row . delta(lift)` for Q/Z cocycles
    Bockstein,
}

/// Finite abelian group H^n with explicit generators and a coordinate map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub model: CoefficientModel,
    pub group_order: usize,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<Cochain>,
    pub coord_rows: Vec<Vec<BigRational>>,
    pub kind: CoordKind,
}

/// A cocycle with its coordinates in a computed presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleClass {
    pub cocycle: Cochain,
    pub coords: Vec<u64>,
}

impl CocycleClass {
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| MagError::param(format!("invariant factor {v} does not fit in 64 bits")))
}

fn ints_to_rats(v: Vec<BigInt>) -> Vec<BigRational> {
    v.into_iter().map(BigRational::from_integer).collect()
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn reduce(&self, coords: &[i64]) -> Vec<u64> {
        coords
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
            .collect()
    }

    pub fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// All coordinate vectors, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn check_cochain(&self, m: &MagneticGroup, c: &Cochain) -> Result<()> {
        c.check_base(m)?;
        if c.model != self.model || c.degree != self.degree || c.group_order != self.group_order {
            return Err(MagError::param(format!(
                "expected a degree-{} cochain in {}, got degree {} in {}",
                self.degree, self.model, c.degree, c.model
            )));
        }
        Ok(())
    }

    /// Coordinates of a cocycle; fails with a witness tuple when `c` is not a cocycle.
    pub fn coordinates(&self, m: &MagneticGroup, c: &Cochain) -> Result<Vec<u64>> {
        self.check_cochain(m, c)?;
        let bar = BarIndex::new(&m.group);
        let raw = coboundary_raw(m, self.model.is_twisted(), self.degree, &c.values);
        if let Some(i) = raw.iter().position(|v| !self.model.is_zero_value(v)) {
            return Err(MagError::InvalidCocycle {
                witness: bar.decode(i, self.degree + 1),
            });
        }
        let x: &[BigRational] = match self.kind {
            CoordKind::Direct => &c.values,
            CoordKind::Bockstein => &raw,
        };
        self.coord_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, &d)| {
                let mut acc = BigRational::zero();
                for (a, b) in row.iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                if !acc.is_integer() {
                    return Err(MagError::param("cocycle does not lie on the coordinate lattice"));
                }
                let r = acc.to_integer().mod_floor(&BigInt::from(d));
                Ok(r.to_u64().expect("reduced below d"))
            })
            .collect()
    }

    pub fn class_of(&self, m: &MagneticGroup, c: &Cochain) -> Result<CocycleClass> {
        let coords = self.coordinates(m, c)?;
        Ok(CocycleClass {
            cocycle: c.clone(),
            coords,
        })
    }

    /// Representative cocycle of a coordinate vector.
    pub fn combination(&self, m: &MagneticGroup, coords: &[u64]) -> Result<Cochain> {
        if coords.len() != self.rank() {
            return Err(MagError::param(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let mut acc = Cochain::zero(m, self.model, self.degree);
        for (g, &c) in self.generators.iter().zip(coords) {
            if c != 0 {
                acc = acc.add(&g.scale(c as i64))?;
            }
        }
        Ok(acc)
    }

    /// Generators have unit coordinates and the stated orders.
    pub fn validate(&self, m: &MagneticGroup) -> Result<()> {
        if self.invariant_factors.iter().any(|&d| d < 2)
            || self.invariant_factors.windows(2).any(|w| w[1] % w[0] != 0)
        {
            return Err(MagError::param("invariant factors do not form a divisibility chain"));
        }
        if self.generators.len() != self.rank() || self.coord_rows.len() != self.rank() {
            return Err(MagError::param("generator count differs from invariant factor count"));
        }
        for (i, (g, &d)) in self.generators.iter().zip(&self.invariant_factors).enumerate() {
            let c = self.coordinates(m, g)?;
            if c.iter().enumerate().any(|(j, &x)| x != u64::from(i == j)) {
                return Err(MagError::param(format!("generator {i} has coordinates {c:?}")));
            }
            if self.coordinates(m, &g.scale(d as i64))?.iter().any(|&x| x != 0) {
                return Err(MagError::param(format!("generator {i} does not have order {d}")));
            }
        }
        Ok(())
    }
}

/// H^n(G, M) for n >= 1.
pub fn cohomology(m: &MagneticGroup, model: CoefficientModel, n: usize, budget: &Budget) -> Result<CohomologyGroup> {
    if n == 0 {
        return Err(MagError::param("cohomology is computed in degrees n >= 1"));
    }
    if model.is_qz() {
        bockstein(m, model, n, budget)
    } else if let Some(q) = model.modulus() {
        zmod(m, model, n, q, budget)
    } else {
        integral(m, model, n, budget)
    }
}

/// H^2(G, C*_phi), presented as H^2(G, Q/Z_phi) with Bockstein coordinates.
pub fn h2_units(m: &MagneticGroup, budget: &Budget) -> Result<CohomologyGroup> {
    cohomology(m, CoefficientModel::QmodZTwisted, 2, budget)
}

/// H^n with integral coefficients is the torsion of coker(delta_{n-1}).
fn integral(m: &MagneticGroup, model: CoefficientModel, n: usize, budget: &Budget) -> Result<CohomologyGroup> {
    let d = dense_coboundary(m, model.is_twisted(), n - 1, budget)?;
    let w = SmithWork::compute(&d);
    let mut out = empty(m, model, n, CoordKind::Direct);
    for (i, di) in w.diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let mut e = vec![BigInt::zero(); d.rows];
        e[i] = BigInt::one();
        w.apply_u_inv(&mut e);
        out.invariant_factors.push(to_u64(di)?);
        out.generators.push(Cochain::from_values(m, model, n, ints_to_rats(e)));
        out.coord_rows.push(ints_to_rats(w.u_row(i)));
    }
    Ok(out)
}

/// H^n with Q/Z coefficients through H^{n+1} with integral coefficients.
fn bockstein(m: &MagneticGroup, model: CoefficientModel, n: usize, budget: &Budget) -> Result<CohomologyGroup> {
    let d = dense_coboundary(m, model.is_twisted(), n, budget)?;
    let w = SmithWork::compute(&d);
    let mut out = empty(m, model, n, CoordKind::Bockstein);
    for (i, di) in w.diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let values = (0..d.cols)
            .map(|j| BigRational::new(w.v.get(j, i).clone(), di.clone()))
            .collect();
        let g = Cochain::from_values(m, model, n, values);
        debug_assert!((BigInt::from(m.order() as u64) % g.denominator()).is_zero());
        out.invariant_factors.push(to_u64(di)?);
        out.generators.push(g);
        out.coord_rows.push(ints_to_rats(w.u_row(i)));
    }
    Ok(out)
}

/// H^n with Z/q coefficients: cocycles form the lattice V diag(t) Z^k with
/// t_i = q / gcd(q, d_i); relations are delta_{n-1} columns and q Z^k.
fn zmod(m: &MagneticGroup, model: CoefficientModel, n: usize, q: u64, budget: &Budget) -> Result<CohomologyGroup> {
    let tw = model.is_twisted();
    let hi = dense_coboundary(m, tw, n, budget)?;
    let lo = dense_coboundary(m, tw, n - 1, budget)?;
    let kn = hi.cols;
    budget.check_dense("relation matrix", kn, lo.cols + kn)?;
    let qb = BigInt::from(q);
    let s1 = SmithWork::compute(&hi);
    let t: Vec<BigInt> = (0..kn)
        .map(|i| match s1.diag.get(i) {
            Some(d) => &qb / d.gcd(&qb),
            None => BigInt::one(),
        })
        .collect();
    let y = s1.v_inv.mul(&lo)?;
    let mut rel = IntMatrix::zeros(kn, lo.cols + kn);
    for i in 0..kn {
        for j in 0..lo.cols {
            let v = y.get(i, j);
            if !v.is_zero() {
                debug_assert!((v % &t[i]).is_zero());
                rel.set(i, j, v / &t[i]);
            }
        }
        for j in 0..kn {
            let v = s1.v_inv.get(i, j);
            if !v.is_zero() {
                rel.set(i, lo.cols + j, v * &qb / &t[i]);
            }
        }
    }
    let s2 = SmithWork::compute(&rel);
    if s2.rank() != kn {
        return Err(MagError::param("relation lattice is not of full rank"));
    }
    let mut out = empty(m, model, n, CoordKind::Direct);
    for (i, di) in s2.diag.iter().enumerate() {
        if di.is_one() {
            continue;
        }
        let mut e = vec![BigInt::zero(); kn];
        e[i] = BigInt::one();
        s2.apply_u_inv(&mut e);
        let scaled: Vec<BigInt> = e.iter().zip(&t).map(|(a, b)| a * b).collect();
        let x = s1.v.mul_vec(&scaled)?;
        let u = s2.u_row(i);
        let mut row = vec![BigRational::zero(); kn];
        for (l, ul) in u.iter().enumerate() {
            if ul.is_zero() {
                continue;
            }
            let f = BigRational::new(ul.clone(), t[l].clone());
            for (j, r) in row.iter_mut().enumerate() {
                let v = s1.v_inv.get(l, j);
                if !v.is_zero() {
                    *r += &f * BigRational::from_integer(v.clone());
                }
            }
        }
        out.invariant_factors.push(to_u64(di)?);
        out.generators.push(Cochain::from_values(m, model, n, ints_to_rats(x)));
        out.coord_rows.push(row);
    }
    Ok(out)
}

fn empty(m: &MagneticGroup, model: CoefficientModel, n: usize, kind: CoordKind) -> CohomologyGroup {
    CohomologyGroup {
        degree: n,
        model,
        group_order: m.order(),
        invariant_factors: Vec::new(),
        generators: Vec::new(),
        coord_rows: Vec::new(),
        kind,
    }
}

/// Rewrites any list of cyclic orders as invariant factors d_1 | d_2 | ...
pub fn normalize_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &o in orders {
        let mut x = o;
        let mut p = 2;
        while x > 1 {
            if p * p > x {
                p = x;
            }
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (j, e) in es.into_iter().enumerate() {
            out[j] *= p.pow(e);
        }
    }
    out.reverse();
    out
}

fn torsion(diag: &[BigInt]) -> Result<Vec<u64>> {
    diag.iter().filter(|d| !d.is_one()).map(to_u64).collect()
}

/// Invariant factors only; falls back to sparse elimination past the dense budget.
pub fn cohomology_invariants(
    m: &MagneticGroup,
    model: CoefficientModel,
    n: usize,
    budget: &Budget,
) -> Result<Vec<u64>> {
    match cohomology(m, model, n, budget) {
        Ok(h) => return Ok(h.invariant_factors),
        Err(MagError::ResourceLimit { .. }) => {}
        Err(e) => return Err(e),
    }
    let bar = BarIndex::new(&m.group);
    let tw = model.is_twisted();
    let sparse_z = |deg: usize| -> Result<Vec<u64>> {
        budget.check_sparse(
            &format!("coboundary C^{deg} -> C^{}", deg + 1),
            bar.size(deg + 1).saturating_mul(deg + 2),
        )?;
        torsion(&smith_invariants_sparse(&coboundary_matrix(m, tw, deg)))
    };
    if model.is_qz() {
        return sparse_z(n);
    }
    match model.modulus() {
        None => sparse_z(n - 1),
        Some(q) => {
            let mut all: Vec<u64> = sparse_z(n - 1)?.into_iter().map(|d| d.gcd(&q)).collect();
            all.extend(sparse_z(n)?.into_iter().map(|d| d.gcd(&q)));
            all.retain(|&d| d > 1);
            Ok(normalize_factors(&all))
        }
    }
}
