//! Equivariant graded Brauer groups of a finite group over R and C.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{element_orders, format_factors};
use crate::cohom::{cohomology, cup_z2, hom_to_z2, iota_into, Budget, CoefficientModel, CohomologyGroup};
use crate::error::{MagError, Result};
use crate::magcore::{invariant_factors_from_orders, FiniteGroup, MagneticGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RiehmField {
    R,
    C,
}

impl RiehmField {
    /// Order of the Brauer-Wall group of the field.
    /// Coefficients of the H^2 factor: Z/2 for R, C* = Q/Z for C.
    pub fn model(self) -> CoefficientModel {
        match self {
            RiehmField::R => CoefficientModel::ZmodTrivial(2),
            RiehmField::C => CoefficientModel::QmodZTrivial,
        }
    }

    pub fn wall_order(self) -> u8 {
        match self {
            RiehmField::R => 8,
            RiehmField::C => 2,
        }
    }
}

impl fmt::Display for RiehmField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RiehmField::R => "R",
            RiehmField::C => "C",
        })
    }
}

impl FromStr for RiehmField {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" | "r" | "real" => Ok(RiehmField::R),
            "C" | "c" | "complex" => Ok(RiehmField::C),
            other => Err(MagError::param(format!("unknown field `{other}`, expected R or C"))),
        }
    }
}

/// (c, psi, n) in H^2(G, k*) x Hom(G, Z/2) x GrBr(k).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RiehmElement {
    pub c: Vec<u64>,
    pub psi: Vec<u8>,
    pub n: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RiehmGroupStructure {
    pub field: RiehmField,
    pub order: u64,
    pub invariant_factors: Vec<u64>,
}

impl RiehmGroupStructure {
    pub fn to_json(&self) -> Value {
        json!({ "field": self.field.to_string(), "order": self.order, "invariant_factors": self.invariant_factors })
    }
}

impl fmt::Display for RiehmGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_factors(&self.invariant_factors))
    }
}

#[derive(Debug, Clone)]
pub struct RiehmContext {
    pub group: FiniteGroup,
    pub plain: MagneticGroup,
    pub field: RiehmField,
    pub h2: CohomologyGroup,
    pub homs: Vec<Vec<u8>>,
    hom_index: HashMap<Vec<u8>, usize>,
    twist: Vec<Vec<u64>>,
}

impl RiehmContext {
    /// For R the coefficients are Z/2, for C they are C* = Q/Z with trivial action.
    pub fn new(group: &FiniteGroup, field: RiehmField, budget: &Budget) -> Result<Self> {
        let plain = MagneticGroup::plain(group.clone());
        let h2 = cohomology(&plain, field.model(), 2, budget)?;
        Self::with_h2(group, field, h2)
    }

    pub fn with_h2(group: &FiniteGroup, field: RiehmField, h2: CohomologyGroup) -> Result<Self> {
        let plain = MagneticGroup::plain(group.clone());
        if h2.degree != 2 || h2.model != field.model() || h2.group_order != group.order {
            return Err(MagError::param("H^2 does not belong to this group and field"));
        }
        let homs = hom_to_z2(group);
        let hom_index = homs.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        let mut twist = Vec::with_capacity(homs.len() * homs.len());
        for p in &homs {
            for q in &homs {
                let cup = cup_z2(&plain, p, q)?;
                let c = match field {
                    RiehmField::R => cup,
                    RiehmField::C => iota_into(&plain, &cup, CoefficientModel::QmodZTrivial)?,
                };
                twist.push(h2.coordinates(&plain, &c)?);
            }
        }
        Ok(RiehmContext {
            group: group.clone(),
            plain,
            field,
            h2,
            homs,
            hom_index,
            twist,
        })
    }

    pub fn element(&self, c: Vec<u64>, psi: Vec<u8>, n: u8) -> Result<RiehmElement> {
        if c.len() != self.h2.rank() || c.iter().zip(&self.h2.invariant_factors).any(|(x, d)| x >= d) {
            return Err(MagError::param("H^2 coordinates out of range"));
        }
        if !self.hom_index.contains_key(&psi) {
            return Err(MagError::param("psi is not a homomorphism to Z/2"));
        }
        if n >= self.field.wall_order() {
            return Err(MagError::param("Brauer-Wall index out of range"));
        }
        Ok(RiehmElement { c, psi, n })
    }

    pub fn identity(&self) -> RiehmElement {
        RiehmElement {
            c: vec![0; self.h2.rank()],
            psi: self.homs[0].clone(),
            n: 0,
        }
    }

    /// (c0 + c1 + [psi0 psi1], psi0 + psi1, n0 + n1).
    pub fn mul(&self, x: &RiehmElement, y: &RiehmElement) -> RiehmElement {
        let (i, j) = (self.hom_index[&x.psi], self.hom_index[&y.psi]);
        let t = &self.twist[i * self.homs.len() + j];
        RiehmElement {
            c: self.h2.add_coords(&self.h2.add_coords(&x.c, &y.c), t),
            psi: x.psi.iter().zip(&y.psi).map(|(a, b)| a ^ b).collect(),
            n: (x.n + y.n) % self.field.wall_order(),
        }
    }

    pub fn elements(&self) -> Vec<RiehmElement> {
        let cs = self.h2.elements();
        let mut out = Vec::new();
        for n in 0..self.field.wall_order() {
            for psi in &self.homs {
                for c in &cs {
                    out.push(RiehmElement {
                        c: c.clone(),
                        psi: psi.clone(),
                        n,
                    });
                }
            }
        }
        out
    }

    pub fn structure(&self, jobs: usize) -> RiehmGroupStructure {
        let elems = self.elements();
        let orders = element_orders(&elems, &self.identity(), |x, y| self.mul(x, y), jobs);
        RiehmGroupStructure {
            field: self.field,
            order: elems.len() as u64,
            invariant_factors: invariant_factors_from_orders(&orders),
        }
    }
}

pub fn riehm_grbr(group: &FiniteGroup, field: RiehmField, budget: &Budget, jobs: usize) -> Result<RiehmGroupStructure> {
    Ok(RiehmContext::new(group, field, budget)?.structure(jobs))
}
