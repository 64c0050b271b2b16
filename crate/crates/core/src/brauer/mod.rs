//! The magnetic equivariant graded Brauer group in (lambda, psi, a) coordinates.

mod representative;
mod riehm;

pub use representative::{decompose_algebra, representative_algebra, twisted_regular_matrices};
pub use riehm::{riehm_grbr, RiehmContext, RiehmElement, RiehmField, RiehmGroupStructure};

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cohom::{cup_z2, h2_units, hom_to_z2, iota, Budget, Cochain, CoefficientModel, CohomologyGroup};
use crate::error::{MagError, Result};
use crate::magcore::{invariant_factors_from_orders, MagneticGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BrauerElement {
    pub lam: Vec<u64>,
    pub psi: Vec<u8>,
    pub a: u8,
}

impl BrauerElement {
    pub fn to_json(&self) -> Value {
        json!({ "lam": self.lam, "psi": self.psi, "a": self.a })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| MagError::param(format!("bad Brauer element: {e}")))
    }
}

impl fmt::Display for BrauerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let psi: String = self.psi.iter().map(|b| char::from(b'0' + b)).collect();
        write!(f, "(lam={:?}, psi={psi}, a={})", self.lam, self.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedGenerator {
    pub name: String,
    pub element: BrauerElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrauerGroupStructure {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<NamedGenerator>,
}

impl BrauerGroupStructure {
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "invariant_factors": self.invariant_factors,
            "generators": self.generators.iter().map(|g| json!({"name": g.name, "element": g.element.to_json()})).collect::<Vec<_>>(),
        })
    }
}

/// "Z/2 x Z/4"; the trivial group prints as "0".
pub fn format_factors(f: &[u64]) -> String {
    if f.is_empty() {
        "0".into()
    } else {
        f.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

impl fmt::Display for BrauerGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_factors(&self.invariant_factors))
    }
}

/// Orders of all elements under `mul`, split across `jobs` threads.
pub(crate) fn element_orders<E: Sync + PartialEq>(elems: &[E], id: &E, mul: impl Fn(&E, &E) -> E + Sync, jobs: usize) -> Vec<u64> {
    let order_of = |x: &E| -> u64 {
        let mut k = 1;
        let mut p = mul(x, id);
        while p != *id {
            p = mul(&p, x);
            k += 1;
        }
        k
    };
    let jobs = jobs.max(1).min(elems.len().max(1));
    if jobs == 1 {
        return elems.iter().map(order_of).collect();
    }
    let chunk = elems.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = elems
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(order_of).collect::<Vec<u64>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("census worker")).collect()
    })
}

/// Group data for one magnetic group: H^2(G, C*_phi), Hom(G, Z/2) and the
/// cached sign classes of the product.
#[derive(Debug, Clone)]
pub struct BrauerContext {
    pub base: MagneticGroup,
    pub h2: CohomologyGroup,
    pub homs: Vec<Vec<u8>>,
    hom_index: HashMap<Vec<u8>, usize>,
    phi_index: usize,
    signs: Vec<Vec<u64>>,
}

impl BrauerContext {
    pub fn new(base: &MagneticGroup, budget: &Budget) -> Result<Self> {
        base.require_magnetic()?;
        Self::with_h2(base, h2_units(base, budget)?)
    }

    /// Builds the context from a previously computed H^2(G, Q/Z_phi).
    pub fn with_h2(base: &MagneticGroup, h2: CohomologyGroup) -> Result<Self> {
        base.require_magnetic()?;
        if h2.degree != 2 || h2.model != CoefficientModel::QmodZTwisted || h2.group_order != base.order() {
            return Err(MagError::param("H^2 does not belong to this magnetic group"));
        }
        let homs = hom_to_z2(&base.group);
        let hom_index: HashMap<Vec<u8>, usize> = homs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        let phi_index = hom_index[&base.phi];
        let nh = homs.len();
        let phi = &base.phi;
        let mut signs = Vec::with_capacity(nh * nh * 2);
        for i in 0..nh {
            for j in 0..nh {
                let c = cup_z2(base, &homs[i], &homs[j])?;
                let cross = cup_z2(base, &homs[i], phi)?.add(&cup_z2(base, &homs[j], phi)?)?;
                for b in 0..2 {
                    let z = if b == 1 { c.add(&cross)? } else { c.clone() };
                    signs.push(h2.coordinates(base, &iota(base, &z)?)?);
                }
            }
        }
        Ok(BrauerContext {
            base: base.clone(),
            h2,
            homs,
            hom_index,
            phi_index,
            signs,
        })
    }

    pub fn identity(&self) -> BrauerElement {
        BrauerElement {
            lam: vec![0; self.h2.rank()],
            psi: self.homs[0].clone(),
            a: 0,
        }
    }

    /// alpha(1) = (0, 0, 1).
    pub fn alpha(&self) -> BrauerElement {
        BrauerElement { a: 1, ..self.identity() }
    }

    pub fn sigma(&self, psi: &[u8]) -> Result<BrauerElement> {
        let e = BrauerElement {
            psi: psi.to_vec(),
            ..self.identity()
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn end_lambda(&self, lam: &[u64]) -> Result<BrauerElement> {
        let e = BrauerElement {
            lam: lam.to_vec(),
            ..self.identity()
        };
        self.check(&e)?;
        Ok(e)
    }

    pub fn phi(&self) -> &[u8] {
        &self.homs[self.phi_index]
    }

    fn psi_index(&self, psi: &[u8]) -> Result<usize> {
        self.hom_index
            .get(psi)
            .copied()
            .ok_or_else(|| MagError::param("psi is not a homomorphism of this group to Z/2"))
    }

    pub fn check(&self, x: &BrauerElement) -> Result<()> {
        if x.lam.len() != self.h2.rank() || x.lam.iter().zip(&self.h2.invariant_factors).any(|(c, d)| c >= d) {
            return Err(MagError::param(format!("lam {:?} is not a reduced H^2 coordinate vector", x.lam)));
        }
        if x.a > 1 {
            return Err(MagError::param("a must be 0 or 1"));
        }
        self.psi_index(&x.psi).map(|_| ())
    }

    /// (lam0 + lam1 + iota(psi0 psi1 + (psi0 + psi1) phi^{a0 a1}), psi0 + psi1 + phi^{a0 a1}, a0 + a1).
    pub fn mul(&self, x: &BrauerElement, y: &BrauerElement) -> Result<BrauerElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &BrauerElement, y: &BrauerElement) -> BrauerElement {
        let (i, j) = (self.hom_index[&x.psi], self.hom_index[&y.psi]);
        let b = (x.a & y.a) as usize;
        let sign = &self.signs[(i * self.homs.len() + j) * 2 + b];
        let lam = self.h2.add_coords(&self.h2.add_coords(&x.lam, &y.lam), sign);
        let phi = self.phi();
        let psi = x
            .psi
            .iter()
            .zip(&y.psi)
            .zip(phi)
            .map(|((p, q), f)| p ^ q ^ (f & b as u8))
            .collect();
        BrauerElement { lam, psi, a: x.a ^ y.a }
    }

    pub fn pow(&self, x: &BrauerElement, k: u64) -> Result<BrauerElement> {
        self.check(x)?;
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, x);
        }
        Ok(acc)
    }

    pub fn order(&self, x: &BrauerElement) -> Result<u64> {
        self.check(x)?;
        let id = self.identity();
        let mut p = x.clone();
        let mut k = 1;
        while p != id {
            p = self.mul_unchecked(&p, x);
            k += 1;
        }
        Ok(k)
    }

    pub fn inv(&self, x: &BrauerElement) -> Result<BrauerElement> {
        let n = self.order(x)?;
        self.pow(x, n - 1)
    }

    /// All |H^2| |Hom| 2 elements; a varies slowest, then psi, then lam.
    pub fn elements(&self) -> Vec<BrauerElement> {
        let lams = self.h2.elements();
        let mut out = Vec::with_capacity(lams.len() * self.homs.len() * 2);
        for a in 0..2 {
            for psi in &self.homs {
                for lam in &lams {
                    out.push(BrauerElement {
                        lam: lam.clone(),
                        psi: psi.clone(),
                        a,
                    });
                }
            }
        }
        out
    }

    fn structure(&self, keep: impl Fn(&BrauerElement) -> bool, with_a: bool, with_psi: bool, jobs: usize) -> BrauerGroupStructure {
        let elems: Vec<BrauerElement> = self.elements().into_iter().filter(|e| keep(e)).collect();
        let orders = element_orders(&elems, &self.identity(), |x, y| self.mul_unchecked(x, y), jobs);
        let invariant_factors = invariant_factors_from_orders(&orders);
        let mut generators = Vec::new();
        if with_a {
            generators.push(NamedGenerator {
                name: "alpha(1)".into(),
                element: self.alpha(),
            });
        }
        if with_psi {
            for (k, psi) in self.hom_basis().into_iter().enumerate() {
                generators.push(NamedGenerator {
                    name: format!("sigma(psi{k})"),
                    element: self.sigma(&psi).expect("basis homomorphism"),
                });
            }
        }
        for i in 0..self.h2.rank() {
            let mut lam = vec![0; self.h2.rank()];
            lam[i] = 1;
            generators.push(NamedGenerator {
                name: format!("End(V_lam{i})"),
                element: self.end_lambda(&lam).expect("unit coordinate"),
            });
        }
        BrauerGroupStructure {
            order: elems.len() as u64,
            invariant_factors,
            generators,
        }
    }

    /// A basis of Hom(G, Z/2) over F_2, chosen greedily in enumeration order.
    pub fn hom_basis(&self) -> Vec<Vec<u8>> {
        let mut basis: Vec<Vec<u8>> = Vec::new();
        let mut span: Vec<Vec<u8>> = vec![self.homs[0].clone()];
        for h in self.homs.iter().skip(1) {
            if span.contains(h) {
                continue;
            }
            let extra: Vec<Vec<u8>> = span.iter().map(|s| s.iter().zip(h).map(|(x, y)| x ^ y).collect()).collect();
            span.extend(extra);
            basis.push(h.clone());
        }
        basis
    }

    pub fn grbr(&self, jobs: usize) -> BrauerGroupStructure {
        self.structure(|_| true, true, true, jobs)
    }

    pub fn grbr_prime(&self, jobs: usize) -> BrauerGroupStructure {
        self.structure(|e| e.a == 0, false, true, jobs)
    }

    pub fn grbr_doubleprime(&self, jobs: usize) -> BrauerGroupStructure {
        let zero = self.homs[0].clone();
        self.structure(move |e| e.a == 0 && e.psi == zero, false, false, jobs)
    }

    /// Whether the class of phi(g) phi(h)/2 vanishes in H^2(G, C*_phi).
    pub fn four_periodic(&self) -> Result<bool> {
        let c = phi_square_cochain(&self.base);
        Ok(self.h2.coordinates(&self.base, &c)?.iter().all(|&x| x == 0))
    }

    /// Componentwise restriction to the core G_0 inside GrBr_{G_0}(C).
    pub fn restrict_to_core(&self, core: &RiehmContext, x: &BrauerElement) -> Result<RiehmElement> {
        self.check(x)?;
        if core.field != RiehmField::C || core.group != self.base.core().as_group() {
            return Err(MagError::param("restriction targets the complex Riehm group of the core"));
        }
        let sub = self.base.core();
        let lam = self.h2.combination(&self.base, &x.lam)?;
        let restricted = lam.restrict(&self.base, &sub, &core.plain)?.recast(CoefficientModel::QmodZTrivial);
        let c = core.h2.coordinates(&core.plain, &restricted)?;
        let psi = sub.members.iter().map(|&g| x.psi[g]).collect();
        core.element(c, psi, x.a)
    }
}

/// phi(g) phi(h) / 2 as a twisted Q/Z 2-cochain.
pub fn phi_square_cochain(m: &MagneticGroup) -> Cochain {
    Cochain::from_fn(m, CoefficientModel::QmodZTwisted, 2, |t| {
        BigRational::new(BigInt::from(m.phi(t[0]) & m.phi(t[1])), BigInt::from(2))
    })
}

pub fn grbr(m: &MagneticGroup, budget: &Budget, jobs: usize) -> Result<BrauerGroupStructure> {
    Ok(BrauerContext::new(m, budget)?.grbr(jobs))
}

pub fn four_periodic(m: &MagneticGroup, budget: &Budget) -> Result<bool> {
    m.require_magnetic()?;
    let h2 = h2_units(m, budget)?;
    Ok(h2.coordinates(m, &phi_square_cochain(m))?.iter().all(|&x| x == 0))
}
