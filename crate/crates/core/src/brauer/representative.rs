//! Explicit algebras End(V_lam) (x) sigma(psi) (x) alpha(a) and their decomposition.

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{BrauerContext, BrauerElement};
use crate::error::{MagError, Result};
use crate::exactla::{CMatrix, Cyclotomic};
use crate::gradalg::{BaseField, GradedAlgebra, Mecsga};
use crate::magrep::ScalarCocycle;

/// Matrices M_h with M_h e_g = zeta_m^{tau(h, g)} e_{hg}: the component of the
/// regular representation of mu_m x_tau G on which mu_m acts by its standard character.
pub fn twisted_regular_matrices(ctx: &BrauerContext, tau: &ScalarCocycle) -> Vec<CMatrix> {
    let g = &ctx.base.group;
    let n = g.order;
    let m = tau.m as u32;
    (0..n)
        .map(|h| {
            let mut x = CMatrix::zeros(n, n);
            for col in 0..n {
                x.set(g.mul(h, col), col, Cyclotomic::zeta(m.max(1), tau.value(h, col) as i64));
            }
            x
        })
        .collect()
}

/// MECSGA of a Brauer element. Factors with trivial coordinate are omitted.
pub fn representative_algebra(ctx: &BrauerContext, x: &BrauerElement) -> Result<Mecsga> {
    ctx.check(x)?;
    let base = &ctx.base;
    let n = base.order();
    let mut acc = Mecsga::trivial(GradedAlgebra::ground(BaseField::Qi), base.clone())?;
    if x.lam.iter().any(|&c| c != 0) {
        let lam = ctx.h2.combination(base, &x.lam)?;
        let tau = ScalarCocycle::from_cochain(base, &lam)?;
        let cond = (tau.m as u32).lcm(&4);
        if cond > 1 << 12 {
            return Err(MagError::ResourceLimit {
                what: "cyclotomic conductor".into(),
                needed: cond as usize,
                budget: 1 << 12,
            });
        }
        let end = GradedAlgebra::matrix_algebra(BaseField::from_conductor(cond), n, 0);
        let xs = twisted_regular_matrices(ctx, &tau)
            .iter()
            .map(GradedAlgebra::matrix_element)
            .collect();
        acc = Mecsga::new(end, base.clone(), xs)?;
    }
    if x.psi.iter().any(|&b| b == 1) {
        let sigma = GradedAlgebra::clifford(BaseField::Qi, &[1, 1])?;
        let xs = x.psi.iter().map(|&b| sigma.basis(usize::from(b))).collect();
        acc = acc.graded_tensor(&Mecsga::new(sigma, base.clone(), xs)?)?;
    }
    if x.a == 1 {
        let alpha = GradedAlgebra::clifford(BaseField::Qi, &[1])?;
        acc = acc.graded_tensor(&Mecsga::trivial(alpha, base.clone())?)?;
    }
    Ok(acc)
}

/// Reads (lam, psi, a) from inner action data: psi from the degrees of X(g),
/// a from odd elements in the ungraded center, lam from the scalar discrepancies
/// of g -> X(g) K^{phi(g)} taken in the coordinates of the given basis.
pub fn decompose_algebra(ctx: &BrauerContext, alg: &Mecsga) -> Result<BrauerElement> {
    if alg.base != ctx.base {
        return Err(MagError::param("algebra is equivariant for a different magnetic group"));
    }
    let n = ctx.base.order();
    let psi: Vec<u8> = (0..n).map(|g| alg.degree(g)).collect();
    if !ctx.homs.contains(&psi) {
        return Err(MagError::InvalidAction("degrees of the implementing elements are not a homomorphism".into()));
    }
    let a = u8::from(!alg.algebra.ungraded_center_odd().is_empty());
    let mut angles = Vec::with_capacity(n * n);
    let mut m = 1u64;
    for g in 0..n {
        for h in 0..n {
            let s = alg.discrepancy(g, h)?;
            let (j, l) = s
                .root_of_unity_exponent()
                .ok_or_else(|| MagError::UnsupportedScalar(format!("discrepancy at ({g}, {h}) is not a root of unity")))?;
            let d = j.gcd(&l);
            m = m.lcm(&(l / d));
            angles.push((j / d, l / d));
        }
    }
    let values = angles.into_iter().map(|(p, q)| p * (m / q)).collect();
    let tau = ScalarCocycle { m, values };
    let lam = ctx.h2.coordinates(&ctx.base, &tau.to_cochain(&ctx.base))?;
    let lam = lam.iter().map(|c| c.to_u64().expect("coordinate")).collect();
    Ok(BrauerElement { lam, psi, a })
}
