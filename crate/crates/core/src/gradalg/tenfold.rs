//! Real graded division algebras and the Table 1 correspondence.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, BaseField, GradedAlgebra};
use crate::error::{MagError, Result};
use crate::exactla::{Cyclotomic, Field, SparseEchelon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TenfoldClass {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    C0,
    C1,
}

const ROWS: [(TenfoldClass, &str, i8, i8, u8); 10] = [
    (TenfoldClass::R0, "AI", 1, 0, 0),
    (TenfoldClass::R1, "BDI", 1, 1, 1),
    (TenfoldClass::R2, "D", 0, 1, 0),
    (TenfoldClass::R3, "DIII", -1, 1, 1),
    (TenfoldClass::R4, "AII", -1, 0, 0),
    (TenfoldClass::R5, "CII", -1, -1, 0),
    (TenfoldClass::R6, "C", 0, -1, 0),
    (TenfoldClass::R7, "CI", 1, -1, 1),
    (TenfoldClass::C0, "A", 0, 0, 0),
    (TenfoldClass::C1, "AIII", 0, 0, 1),
];

impl TenfoldClass {
    pub const ALL: [TenfoldClass; 10] = [
        TenfoldClass::R0,
        TenfoldClass::R1,
        TenfoldClass::R2,
        TenfoldClass::R3,
        TenfoldClass::R4,
        TenfoldClass::R5,
        TenfoldClass::R6,
        TenfoldClass::R7,
        TenfoldClass::C0,
        TenfoldClass::C1,
    ];

    fn row(self) -> &'static (TenfoldClass, &'static str, i8, i8, u8) {
        ROWS.iter().find(|r| r.0 == self).expect("every class has a row")
    }

    pub fn tag(self) -> &'static str {
        match self {
            TenfoldClass::R0 => "R0",
            TenfoldClass::R1 => "R1",
            TenfoldClass::R2 => "R2",
            TenfoldClass::R3 => "R3",
            TenfoldClass::R4 => "R4",
            TenfoldClass::R5 => "R5",
            TenfoldClass::R6 => "R6",
            TenfoldClass::R7 => "R7",
            TenfoldClass::C0 => "C0",
            TenfoldClass::C1 => "C1",
        }
    }

    pub fn az_label(self) -> &'static str {
        self.row().1
    }

    pub fn is_real(self) -> bool {
        !matches!(self, TenfoldClass::C0 | TenfoldClass::C1)
    }

    /// Brauer index: in Z/8 for real classes, Z/2 for complex ones.
    pub fn index(self) -> u8 {
        match self {
            TenfoldClass::C0 => 0,
            TenfoldClass::C1 => 1,
            r => r as u8,
        }
    }

    pub fn real(n: u64) -> TenfoldClass {
        TenfoldClass::ALL[(n % 8) as usize]
    }

    /// Name of the even part of the division algebra.
    pub fn even_part(self) -> &'static str {
        match self {
            TenfoldClass::R0 | TenfoldClass::R1 | TenfoldClass::R7 => "R",
            TenfoldClass::R3 | TenfoldClass::R4 | TenfoldClass::R5 => "H",
            _ => "C",
        }
    }

    /// The standard graded division algebra of the class over Q or Q(i).
    pub fn division_algebra(self) -> GradedAlgebra {
        match self {
            TenfoldClass::R0 => GradedAlgebra::ground(BaseField::Q),
            TenfoldClass::R1 => GradedAlgebra::clifford_real(1, 0).expect("small"),
            TenfoldClass::R2 => GradedAlgebra::clifford_real(2, 0).expect("small"),
            TenfoldClass::R3 => GradedAlgebra::clifford_real(3, 0).expect("small"),
            TenfoldClass::R4 => GradedAlgebra::quaternions(),
            TenfoldClass::R5 => GradedAlgebra::clifford_real(0, 3).expect("small"),
            TenfoldClass::R6 => GradedAlgebra::clifford_real(0, 2).expect("small"),
            TenfoldClass::R7 => GradedAlgebra::clifford_real(0, 1).expect("small"),
            TenfoldClass::C0 => GradedAlgebra::quadratic(BaseField::Q, -1),
            TenfoldClass::C1 => GradedAlgebra::quadratic(BaseField::Q, -1)
                .graded_tensor(&GradedAlgebra::clifford_real(1, 0).expect("small")),
        }
    }
}

impl fmt::Display for TenfoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TenfoldClass {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        ROWS.iter()
            .find(|r| r.0.tag().eq_ignore_ascii_case(t) || r.1.eq_ignore_ascii_case(t))
            .map(|r| r.0)
            .ok_or_else(|| MagError::param(format!("unknown tenfold class `{s}`")))
    }
}

/// (T, C, S) descriptors of a class.
pub fn az_row(c: TenfoldClass) -> (i8, i8, u8) {
    let r = c.row();
    (r.2, r.3, r.4)
}

pub fn az_lookup(t: i8, c: i8, s: u8) -> Result<TenfoldClass> {
    ROWS.iter()
        .find(|r| (r.2, r.3, r.4) == (t, c, s))
        .map(|r| r.0)
        .ok_or_else(|| MagError::InvalidSymmetryData(format!("no symmetry class has (T, C, S) = ({t}, {c}, {s})")))
}

pub fn clifford_class(p: usize, q: usize) -> u8 {
    ((p as i64 - q as i64).rem_euclid(8)) as u8
}

type Elem = Vec<Cyclotomic>;

struct Ctx<'a> {
    a: &'a GradedAlgebra,
}

impl<'a> Ctx<'a> {
    fn mul(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Elem {
        self.a.mul(x, y)
    }

    fn sub(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Elem {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }

    fn scalar(&self, x: &[Cyclotomic]) -> Option<BigRational> {
        self.a.as_scalar(x).and_then(|s| rat(&s))
    }

    fn unit_times(&self, q: &BigRational) -> Elem {
        self.a.scale(&Cyclotomic::rational(q.clone()), &self.a.unit)
    }

    fn label(&self, x: &[Cyclotomic]) -> String {
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| match rat(v) {
                Some(q) if q == BigRational::from_integer(1.into()) => self.a.labels[i].clone(),
                Some(q) => format!("{q}*{}", self.a.labels[i]),
                None => format!("({v:?})*{}", self.a.labels[i]),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn fail(&self, reason: &str, witness: &[Cyclotomic]) -> MagError {
        MagError::NotDivisionAlgebra {
            reason: reason.into(),
            witness: vec![self.label(witness)],
        }
    }

    /// Pure part y = b - alpha/2 of an element satisfying b^2 = alpha b + beta; returns (y, y^2).
    fn purify(&self, b: &[Cyclotomic]) -> Option<(Elem, BigRational)> {
        let b2 = self.mul(b, b);
        let rows: Vec<Vec<Cyclotomic>> = (0..b.len()).map(|k| vec![b[k].clone(), self.a.unit[k].clone()]).collect();
        let sol = crate::exactla::field::solve(&rows, &b2, 2)?;
        let alpha = rat(&sol[0])?;
        let half = alpha / BigRational::from_integer(2.into());
        let y = self.sub(b, &self.unit_times(&half));
        let y2 = self.scalar(&self.mul(&y, &y))?;
        Some((y, y2))
    }

    fn commutes(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    fn anticommutes(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> bool {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        xy.iter().zip(&yx).all(|(a, b)| a.add(b).is_zero())
    }
}

enum Even {
    R,
    C(Elem),
    H(Elem, Elem),
}

/// Classifies a real graded division algebra given over Q. With `assume_division`
/// unset, every homogeneous basis element is also checked for invertibility.
pub fn tenfold_classify(a: &GradedAlgebra, assume_division: bool) -> Result<TenfoldClass> {
    if a.field != BaseField::Q {
        return classify_complex(a);
    }
    if !a.is_rational() {
        return Err(MagError::param("real classification needs rational structure constants"));
    }
    let cx = Ctx { a };
    let even: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees[i] == 0).collect();
    let odd: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees[i] == 1).collect();
    if ![1, 2, 4].contains(&even.len()) || !(odd.is_empty() || odd.len() == even.len()) {
        return Err(MagError::NotDivisionAlgebra {
            reason: format!("graded dimensions ({}, {}) do not occur for division algebras", even.len(), odd.len()),
            witness: Vec::new(),
        });
    }
    let check: Vec<usize> = if assume_division { even.clone() } else { (0..a.dim()).collect() };
    for &i in &check {
        if !a.left_mul_matrix(&a.basis(i)).is_invertible() {
            return Err(cx.fail("homogeneous element is not invertible", &a.basis(i)));
        }
    }
    let even_kind = identify_even(&cx, &even)?;
    if odd.is_empty() {
        return Ok(match even_kind {
            Even::R => TenfoldClass::R0,
            Even::C(_) => TenfoldClass::C0,
            Even::H(..) => TenfoldClass::R4,
        });
    }
    match even_kind {
        Even::R => {
            let e = a.basis(odd[0]);
            let s = cx
                .scalar(&cx.mul(&e, &e))
                .ok_or_else(|| cx.fail("odd element squares to a non-scalar", &e))?;
            sign_class(&cx, &e, s, TenfoldClass::R1, TenfoldClass::R7)
        }
        Even::C(y) => {
            let e = a.basis(odd[0]);
            if cx.commutes(&e, &y) {
                let e2 = cx.mul(&e, &e);
                if a.degree_of(&e2) != Some(0) || !a.left_mul_matrix(&e2).is_invertible() {
                    return Err(cx.fail("odd element squares outside the even units", &e));
                }
                Ok(TenfoldClass::C1)
            } else if cx.anticommutes(&e, &y) {
                let s = cx
                    .scalar(&cx.mul(&e, &e))
                    .ok_or_else(|| cx.fail("odd element squares to a non-real scalar", &e))?;
                sign_class(&cx, &e, s, TenfoldClass::R2, TenfoldClass::R6)
            } else {
                Err(cx.fail("odd element acts on the even part by neither identity nor conjugation", &e))
            }
        }
        Even::H(u, v) => {
            // f in A_1 commuting with u and v
            let mut ech = SparseEchelon::<Cyclotomic>::new(odd.len());
            for g in [&u, &v] {
                let mut rows = vec![Vec::new(); a.dim()];
                for (c, &k) in odd.iter().enumerate() {
                    let b = a.basis(k);
                    let diff = cx.sub(&cx.mul(&b, g), &cx.mul(g, &b));
                    for (l, x) in diff.into_iter().enumerate() {
                        if !x.is_zero() {
                            rows[l].push((c, x));
                        }
                    }
                }
                for r in rows {
                    ech.insert(r);
                }
            }
            let sol = ech
                .nullspace()
                .into_iter()
                .next()
                .ok_or_else(|| cx.fail("no odd element commutes with the quaternions", &a.basis(odd[0])))?;
            let mut f = a.zero_elem();
            for (c, &k) in odd.iter().enumerate() {
                f[k] = sol[c].clone();
            }
            let s = cx
                .scalar(&cx.mul(&f, &f))
                .ok_or_else(|| cx.fail("commuting odd element squares to a non-scalar", &f))?;
            sign_class(&cx, &f, s, TenfoldClass::R5, TenfoldClass::R3)
        }
    }
}

fn sign_class(cx: &Ctx, e: &[Cyclotomic], s: BigRational, pos: TenfoldClass, neg: TenfoldClass) -> Result<TenfoldClass> {
    if Zero::is_zero(&s) {
        Err(cx.fail("odd element squares to zero", e))
    } else if s.is_positive() {
        Ok(pos)
    } else {
        Ok(neg)
    }
}

fn identify_even(cx: &Ctx, even: &[usize]) -> Result<Even> {
    let a = cx.a;
    let in_span = |vs: &[&Elem], x: &Elem| -> bool {
        let mut ech = SparseEchelon::<Cyclotomic>::new(a.dim());
        for v in vs {
            ech.insert(v.iter().cloned().enumerate());
        }
        !ech.insert(x.iter().cloned().enumerate())
    };
    let unit = a.unit.clone();
    match even.len() {
        1 => Ok(Even::R),
        2 => {
            let b = even
                .iter()
                .map(|&i| a.basis(i))
                .find(|b| !in_span(&[&unit], b))
                .ok_or_else(|| cx.fail("even part is not spanned by the unit and one element", &unit))?;
            let (y, y2) = cx
                .purify(&b)
                .ok_or_else(|| cx.fail("even element has no quadratic relation", &b))?;
            if !y2.is_negative() {
                return Err(cx.fail("even part is split or degenerate", &y));
            }
            Ok(Even::C(y))
        }
        _ => {
            let mut pures = Vec::new();
            for &i in even {
                let b = a.basis(i);
                if in_span(&[&unit], &b) {
                    continue;
                }
                let (y, y2) = cx
                    .purify(&b)
                    .ok_or_else(|| cx.fail("even element has no quadratic relation", &b))?;
                if !y2.is_negative() {
                    return Err(cx.fail("even element has a non-negative square", &y));
                }
                pures.push((y, y2));
            }
            if pures.len() < 2 {
                return Err(cx.fail("even part has too few pure elements", &unit));
            }
            let (u, u2) = pures[0].clone();
            for (v0, _) in pures.iter().skip(1) {
                let anti = cx.mul(&u, v0).iter().zip(cx.mul(v0, &u)).map(|(x, y)| x.add(&y)).collect::<Elem>();
                let Some(t) = cx.scalar(&anti) else {
                    return Err(cx.fail("even part is not a quaternion algebra", v0));
                };
                let coef = t / (BigRational::from_integer(2.into()) * &u2);
                let v = cx.sub(v0, &a.scale(&Cyclotomic::rational(coef), &u));
                if v.iter().all(Field::is_zero) {
                    continue;
                }
                let Some(v2) = cx.scalar(&cx.mul(&v, &v)) else {
                    return Err(cx.fail("even element squares to a non-scalar", &v));
                };
                if !v2.is_negative() || !cx.anticommutes(&u, &v) {
                    return Err(cx.fail("even part is not a division quaternion algebra", &v));
                }
                let uv = cx.mul(&u, &v);
                let mut ech = SparseEchelon::<Cyclotomic>::new(a.dim());
                for w in [&unit, &u, &v, &uv] {
                    ech.insert(w.iter().cloned().enumerate());
                }
                if ech.rank() != 4 {
                    return Err(cx.fail("even part is not a quaternion algebra", &uv));
                }
                return Ok(Even::H(u, v));
            }
            Err(cx.fail("even part is commutative", &u))
        }
    }
}

/// Complex graded division algebras: C or C[e] with e odd and central.
fn classify_complex(a: &GradedAlgebra) -> Result<TenfoldClass> {
    let cx = Ctx { a };
    let even: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees[i] == 0).collect();
    let odd: Vec<usize> = (0..a.dim()).filter(|&i| a.degrees[i] == 1).collect();
    if even.len() != 1 || odd.len() > 1 {
        return Err(MagError::NotDivisionAlgebra {
            reason: format!("graded dimensions ({}, {}) do not occur for complex division algebras", even.len(), odd.len()),
            witness: Vec::new(),
        });
    }
    match odd.first() {
        None => Ok(TenfoldClass::C0),
        Some(&k) => {
            let e = a.basis(k);
            match a.as_scalar(&cx.mul(&e, &e)) {
                Some(s) if !s.is_zero() => Ok(TenfoldClass::C1),
                _ => Err(cx.fail("odd element is not invertible", &e)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows_round_trip() {
        for c in TenfoldClass::ALL {
            let (t, cc, s) = az_row(c);
            assert_eq!(az_lookup(t, cc, s).unwrap(), c);
            assert_eq!(c.tag().parse::<TenfoldClass>().unwrap(), c);
            assert_eq!(c.az_label().parse::<TenfoldClass>().unwrap(), c);
        }
        assert_eq!(az_lookup(1, 0, 0).unwrap().az_label(), "AI");
        assert_eq!(az_lookup(0, 0, 0).unwrap(), TenfoldClass::C0);
        assert_eq!(az_lookup(-1, 1, 1).unwrap(), TenfoldClass::R3);
        assert!(matches!(az_lookup(1, 1, 0), Err(MagError::InvalidSymmetryData(_))));
        assert!(az_lookup(0, 1, 1).is_err());
    }

    #[test]
    fn clifford_class_values() {
        assert_eq!(clifford_class(0, 0), 0);
        assert_eq!(clifford_class(2, 0), 2);
        assert_eq!(clifford_class(0, 8), 0);
        assert_eq!(clifford_class(0, 1), 7);
        assert_eq!(clifford_class(1, 1), 0);
    }

    #[test]
    fn standard_division_algebras_classify() {
        for c in TenfoldClass::ALL {
            let a = c.division_algebra();
            assert!(a.associativity_violation().is_none(), "{c}");
            assert_eq!(tenfold_classify(&a, false).unwrap(), c);
        }
    }

    #[test]
    fn complex_field_algebras() {
        assert_eq!(tenfold_classify(&GradedAlgebra::ground(BaseField::Qi), true).unwrap(), TenfoldClass::C0);
        assert_eq!(
            tenfold_classify(&GradedAlgebra::clifford_complex(1).unwrap(), true).unwrap(),
            TenfoldClass::C1
        );
        assert!(tenfold_classify(&GradedAlgebra::clifford_complex(2).unwrap(), true).is_err());
    }

    #[test]
    fn non_division_algebras_are_rejected() {
        let m = GradedAlgebra::matrix_algebra(BaseField::Q, 1, 1);
        match tenfold_classify(&m, false) {
            Err(MagError::NotDivisionAlgebra { witness, .. }) => assert_eq!(witness.len(), 1),
            other => panic!("{other:?}"),
        }
        assert!(tenfold_classify(&GradedAlgebra::quadratic(BaseField::Q, 1), true).is_err());
        assert!(tenfold_classify(&GradedAlgebra::clifford_real(1, 1).unwrap(), false).is_err());
        assert!(tenfold_classify(&GradedAlgebra::clifford_real(4, 0).unwrap(), false).is_err());
    }
}
