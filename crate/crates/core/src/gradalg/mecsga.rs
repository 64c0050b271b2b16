//! Graded algebras with an inner magnetic group action.

use super::GradedAlgebra;
use crate::error::{MagError, Result};
use crate::exactla::{Cyclotomic, Field};
use crate::magcore::MagneticGroup;

/// Algebra with g acting by x -> (-1)^{|X(g)||x|} X(g) conj^{phi(g)}(x) X(g)^{-1}.
#[derive(Debug, Clone)]
pub struct Mecsga {
    pub algebra: GradedAlgebra,
    pub base: MagneticGroup,
    pub implementers: Vec<Vec<Cyclotomic>>,
}

impl Mecsga {
    pub fn new(algebra: GradedAlgebra, base: MagneticGroup, implementers: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let m = Mecsga {
            algebra,
            base,
            implementers,
        };
        m.validate()?;
        Ok(m)
    }

    /// Every element acts trivially up to conjugation: X(g) = 1.
    pub fn trivial(algebra: GradedAlgebra, base: MagneticGroup) -> Result<Self> {
        let x = vec![algebra.unit.clone(); base.order()];
        Self::new(algebra, base, x)
    }

    fn validate(&self) -> Result<()> {
        let n = self.base.order();
        if self.implementers.len() != n {
            return Err(MagError::InvalidAction(format!(
                "{} implementing elements for a group of order {n}",
                self.implementers.len()
            )));
        }
        if (0..n).any(|g| self.base.phi(g) == 1) && !self.algebra.is_rational() {
            return Err(MagError::InvalidAction(
                "antilinear action needs structure constants fixed by conjugation".into(),
            ));
        }
        for (g, x) in self.implementers.iter().enumerate() {
            if x.len() != self.algebra.dim() {
                return Err(MagError::InvalidAction(format!("X({g}) has the wrong length")));
            }
            if self.algebra.degree_of(x).is_none() {
                return Err(MagError::InvalidAction(format!("X({g}) is not homogeneous")));
            }
        }
        // X(g) conj(X(g^-1)) = s X(e) with s != 0, so X(e) invertible makes every X(g) invertible
        let e = self.base.group.identity;
        let xe = &self.implementers[e];
        if self.algebra.as_scalar(xe).map_or(true, |s| s.is_zero()) && self.algebra.inverse(xe).is_err() {
            return Err(MagError::InvalidAction("X(e) is not invertible".into()));
        }
        for g in 0..n {
            for h in 0..n {
                self.discrepancy(g, h)?;
            }
        }
        Ok(())
    }

    pub fn degree(&self, g: usize) -> u8 {
        self.algebra.degree_of(&self.implementers[g]).unwrap_or(0)
    }

    /// The scalar s with X(g) conj^{phi(g)}(X(h)) = s X(gh).
    pub fn discrepancy(&self, g: usize, h: usize) -> Result<Cyclotomic> {
        let a = &self.algebra;
        let xh = &self.implementers[h];
        let twisted = if self.base.phi(g) == 1 { a.conj(xh) } else { xh.clone() };
        let lhs = a.mul(&self.implementers[g], &twisted);
        let gh = self.base.group.mul(g, h);
        match a.ratio(&lhs, &self.implementers[gh]) {
            Some(s) if !s.is_zero() => Ok(s),
            _ => Err(MagError::InvalidAction(format!(
                "X({g}) conj(X({h})) is not a scalar multiple of X({gh})"
            ))),
        }
    }

    /// Action of g on a homogeneous element.
    pub fn act(&self, g: usize, x: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let a = &self.algebra;
        let dx = a
            .degree_of(x)
            .ok_or_else(|| MagError::param("action is evaluated on homogeneous elements"))?;
        let xg = &self.implementers[g];
        let inner = if self.base.phi(g) == 1 { a.conj(x) } else { x.to_vec() };
        let y = a.mul(&a.mul(xg, &inner), &a.inverse(xg)?);
        Ok(if dx & self.degree(g) == 1 {
            a.scale(&Cyclotomic::int(-1), &y)
        } else {
            y
        })
    }

    /// Graded tensor product with X(g) = X1(g) (x) X2(g).
    pub fn graded_tensor(&self, o: &Mecsga) -> Result<Mecsga> {
        if self.base != o.base {
            return Err(MagError::param("tensor factors have different magnetic groups"));
        }
        let algebra = self.algebra.graded_tensor(&o.algebra);
        let implementers = self
            .implementers
            .iter()
            .zip(&o.implementers)
            .map(|(x, y)| x.iter().flat_map(|a| y.iter().map(move |b| a.mul(b))).collect())
            .collect();
        Mecsga::new(algebra, self.base.clone(), implementers)
    }
}
