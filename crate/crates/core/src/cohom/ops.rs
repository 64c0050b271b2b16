use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{cocycle_violation, dense_coboundary, BarIndex, Budget, Cochain, CoefficientModel, CohomologyGroup};
use crate::error::{MagError, Result};
use crate::exactla::{field, solve_integer};
use crate::magcore::{check_hom_to_z2, FiniteGroup, MagneticGroup};

/// Every homomorphism G -> Z/2 as a value table, ordered by the bit pattern
/// on `generators()`; the zero map comes first.
pub fn hom_to_z2(g: &FiniteGroup) -> Vec<Vec<u8>> {
    let gens = g.generators();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << gens.len()) {
        let mut val: Vec<Option<u8>> = vec![None; g.order];
        val[g.identity] = Some(0);
        let mut queue = vec![g.identity];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            let vx = val[x].expect("queued elements have values");
            for (b, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let vy = vx ^ ((mask >> b) & 1) as u8;
                match val[y] {
                    None => {
                        val[y] = Some(vy);
                        queue.push(y);
                    }
                    Some(w) if w != vy => ok = false,
                    _ => {}
                }
            }
        }
        if !ok {
            continue;
        }
        let table: Vec<u8> = val.into_iter().map(|v| v.expect("generators span G")).collect();
        if check_hom_to_z2(g, &table).is_ok() {
            out.push(table);
        }
    }
    out
}

/// (psi0 u psi1)(g, h) = psi0(g) psi1(h) in Z/2.
pub fn cup_z2(m: &MagneticGroup, psi0: &[u8], psi1: &[u8]) -> Result<Cochain> {
    check_hom_to_z2(&m.group, psi0)?;
    check_hom_to_z2(&m.group, psi1)?;
    Ok(Cochain::from_fn(m, CoefficientModel::ZmodTrivial(2), 2, |t| {
        BigRational::from_integer(BigInt::from(psi0[t[0]] & psi1[t[1]]))
    }))
}

/// Z/2 -> Q/Z_phi, x -> x/2.
pub fn iota(m: &MagneticGroup, c: &Cochain) -> Result<Cochain> {
    iota_into(m, c, CoefficientModel::QmodZTwisted)
}

/// Z/2 -> Q/Z in the given action model.
pub fn iota_into(m: &MagneticGroup, c: &Cochain, target: CoefficientModel) -> Result<Cochain> {
    if c.model.modulus() != Some(2) || !target.is_qz() {
        return Err(MagError::param(format!("iota maps Z/2 cochains to Q/Z, got {} -> {}", c.model, target)));
    }
    if let Some(w) = cocycle_violation(m, c)? {
        return Err(MagError::InvalidCocycle { witness: w });
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let values = c.values.iter().map(|v| v * &half).collect();
    Ok(Cochain::from_values(m, target, c.degree, values))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Trivialization {
    /// 1-cochain alpha with delta(alpha) = c in Q/Z
    Coboundary(Cochain),
    Nontrivial(Vec<u64>),
}

/// Finds alpha with delta(alpha) = c for a Q/Z 2-cocycle whose class vanishes.
///
/// Writes the lift as c~ = n + r with n integral and r a rational cocycle,
/// then solves delta(alpha) = r over Q.
pub fn trivialize(m: &MagneticGroup, h2: &CohomologyGroup, c: &Cochain, budget: &Budget) -> Result<Trivialization> {
    if !c.model.is_qz() || c.degree != 2 || h2.model != c.model || h2.degree != 2 {
        return Err(MagError::param("trivialize expects a Q/Z 2-cocycle and its H^2 presentation"));
    }
    let coords = h2.coordinates(m, c)?;
    if coords.iter().any(|&x| x != 0) {
        return Ok(Trivialization::Nontrivial(coords));
    }
    let tw = c.model.is_twisted();
    let d2 = dense_coboundary(m, tw, 2, budget)?;
    let d1 = dense_coboundary(m, tw, 1, budget)?;
    let z: Vec<BigInt> = super::coboundary_raw(m, tw, 2, &c.values)
        .into_iter()
        .map(|v| v.to_integer())
        .collect();
    let n = solve_integer(&d2, &z)?.ok_or_else(|| MagError::param("integral lift of a trivial class not found"))?;
    let r: Vec<BigRational> = c
        .values
        .iter()
        .zip(&n)
        .map(|(v, k)| v - BigRational::from_integer(k.clone()))
        .collect();
    let a: Vec<Vec<BigRational>> = d1
        .to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let alpha = field::solve(&a, &r, d1.cols).ok_or_else(|| MagError::param("rational cocycle is not a coboundary"))?;
    let alpha = Cochain::from_values(m, c.model, 1, alpha);
    debug_assert!({
        let bar = BarIndex::new(&m.group);
        let d = super::coboundary(m, &alpha).expect("same base");
        (0..bar.size(2)).all(|i| (&d.values[i] - &c.values[i]).is_zero())
    });
    Ok(Trivialization::Coboundary(alpha))
}
