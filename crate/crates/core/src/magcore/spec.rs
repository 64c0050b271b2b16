//! Group-spec and phi-spec mini-language.
//!
//! ```text
//! group := cyclic:N | dihedral:N | quaternion:8 | product(G,G)
//!        | semidirect(G,G,perm=[...]) | pullback(G,PHI,N) | table:@FILE
//! phi   := trivial | mod2 | id | proj2 | values:[b0,...]
//! ```

use serde::Deserialize;

use super::{FiniteGroup, MagneticGroup};
use crate::error::{MagError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Images of the generators of the second factor as permutations of the first.
    Semidirect(Box<GroupSpec>, Box<GroupSpec>, Vec<Vec<usize>>),
    Pullback(Box<GroupSpec>, PhiSpec, usize),
    Table(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiSpec {
    Trivial,
    Mod2,
    Proj2,
    Values(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Nested {
    Int(usize),
    List(Vec<Nested>),
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(MagError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected '{lit}'"))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        let len = rest.chars().take_while(char::is_ascii_digit).count();
        if len == 0 {
            return self.err("expected a nonnegative integer");
        }
        let v = rest[..len].parse().or_else(|_| self.err("integer too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn nested(&mut self) -> Result<Nested> {
        self.skip_ws();
        if self.eat("[") {
            let mut items = Vec::new();
            if !self.eat("]") {
                loop {
                    items.push(self.nested()?);
                    if self.eat("]") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Ok(Nested::List(items))
        } else {
            Ok(Nested::Int(self.int()?))
        }
    }

    fn group(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        if self.eat("cyclic:") {
            return Ok(GroupSpec::Cyclic(self.int()?));
        }
        if self.eat("dihedral:") {
            return Ok(GroupSpec::Dihedral(self.int()?));
        }
        if self.eat("quaternion:") {
            return Ok(GroupSpec::Quaternion(self.int()?));
        }
        if self.eat("product(") {
            let a = self.group()?;
            self.expect(",")?;
            let b = self.group()?;
            self.expect(")")?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        if self.eat("semidirect(") {
            let a = self.group()?;
            self.expect(",")?;
            let b = self.group()?;
            self.expect(",")?;
            self.expect("perm=")?;
            let at = self.pos;
            let perm = match self.nested()? {
                Nested::List(items) if items.iter().all(|x| matches!(x, Nested::Int(_))) => {
                    vec![items.iter().map(flat).collect()]
                }
                Nested::List(items) => {
                    let mut out = Vec::new();
                    for it in items {
                        match it {
                            Nested::List(inner) if inner.iter().all(|x| matches!(x, Nested::Int(_))) => {
                                out.push(inner.iter().map(flat).collect())
                            }
                            _ => {
                                return Err(MagError::Parse {
                                    pos: at,
                                    msg: "perm must be a list or a list of lists".into(),
                                })
                            }
                        }
                    }
                    out
                }
                Nested::Int(_) => {
                    return Err(MagError::Parse {
                        pos: at,
                        msg: "perm must be a list".into(),
                    })
                }
            };
            self.expect(")")?;
            return Ok(GroupSpec::Semidirect(Box::new(a), Box::new(b), perm));
        }
        if self.eat("pullback(") {
            let a = self.group()?;
            self.expect(",")?;
            let phi = self.phi()?;
            self.expect(",")?;
            let n = self.int()?;
            self.expect(")")?;
            return Ok(GroupSpec::Pullback(Box::new(a), phi, n));
        }
        if self.eat("table:@") {
            let rest = &self.s[self.pos..];
            let len = rest.find([',', ')']).unwrap_or(rest.len());
            let path = rest[..len].trim().to_string();
            if path.is_empty() {
                return self.err("expected a file path");
            }
            self.pos += len;
            return Ok(GroupSpec::Table(path));
        }
        self.err("expected a group spec (cyclic:, dihedral:, quaternion:, product(, semidirect(, pullback(, table:@)")
    }

    fn phi(&mut self) -> Result<PhiSpec> {
        self.skip_ws();
        if self.eat("trivial") {
            return Ok(PhiSpec::Trivial);
        }
        if self.eat("mod2") || self.eat("id") {
            return Ok(PhiSpec::Mod2);
        }
        if self.eat("proj2") {
            return Ok(PhiSpec::Proj2);
        }
        if self.eat("values:") {
            let at = self.pos;
            return match self.nested()? {
                Nested::List(items) => {
                    let mut bits = Vec::new();
                    for it in items {
                        match it {
                            Nested::Int(b) if b <= 1 => bits.push(b as u8),
                            _ => {
                                return Err(MagError::Parse {
                                    pos: at,
                                    msg: "phi values must be 0 or 1".into(),
                                })
                            }
                        }
                    }
                    Ok(PhiSpec::Values(bits))
                }
                Nested::Int(_) => Err(MagError::Parse {
                    pos: at,
                    msg: "expected a list of bits".into(),
                }),
            };
        }
        self.err("expected a phi spec (trivial, mod2, id, proj2, values:[...])")
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.s.len() {
            return self.err("unexpected trailing input");
        }
        Ok(())
    }
}

fn flat(n: &Nested) -> usize {
    match n {
        Nested::Int(v) => *v,
        Nested::List(_) => unreachable!(),
    }
}

pub fn parse_group(s: &str) -> Result<GroupSpec> {
    let mut p = Parser { s, pos: 0 };
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_phi(s: &str) -> Result<PhiSpec> {
    let mut p = Parser { s, pos: 0 };
    let g = p.phi()?;
    p.finish()?;
    Ok(g)
}

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    table: Vec<Vec<usize>>,
}

/// Parses the JSON document `{ "order": n, "table": [[...]] }`.
pub fn group_from_table_json(text: &str) -> Result<FiniteGroup> {
    let tf: TableFile = serde_json::from_str(text).map_err(|e| MagError::Parse {
        pos: e.column(),
        msg: format!("group table file: {e}"),
    })?;
    if tf.order != tf.table.len() {
        return Err(MagError::param(format!("order {} does not match table size {}", tf.order, tf.table.len())));
    }
    FiniteGroup::from_table(tf.table)
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
        GroupSpec::Quaternion(8) => Ok(FiniteGroup::quaternion8()),
        GroupSpec::Quaternion(n) => Err(MagError::param(format!("quaternion group of order {n} is not supported"))),
        GroupSpec::Product(a, b) => Ok(FiniteGroup::direct_product(&build_group(a)?, &build_group(b)?)),
        GroupSpec::Semidirect(a, b, perm) => {
            let (ga, gb) = (build_group(a)?, build_group(b)?);
            let act = FiniteGroup::action_from_generator_images(&ga, &gb, perm)?;
            FiniteGroup::semidirect(&ga, &gb, &act)
        }
        GroupSpec::Pullback(a, phi, n) => build_magnetic(a, phi)?.pullback_z2n(*n),
        GroupSpec::Table(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| MagError::param(format!("cannot read table file {path}: {e}")))?;
            group_from_table_json(&text)
        }
    }
}

pub fn build_magnetic(spec: &GroupSpec, phi: &PhiSpec) -> Result<MagneticGroup> {
    let g = build_group(spec)?;
    let bits = match phi {
        PhiSpec::Trivial => return Ok(MagneticGroup::plain(g)),
        PhiSpec::Mod2 => match spec {
            GroupSpec::Cyclic(n) if n % 2 == 0 => (0..*n).map(|k| (k % 2) as u8).collect(),
            _ => return Err(MagError::param("mod2 needs a cyclic group of even order")),
        },
        PhiSpec::Proj2 => match spec {
            GroupSpec::Product(_, b) => match b.as_ref() {
                GroupSpec::Cyclic(m) if m % 2 == 0 => (0..g.order).map(|x| ((x % m) % 2) as u8).collect(),
                _ => return Err(MagError::param("proj2 needs an even cyclic second factor")),
            },
            _ => return Err(MagError::param("proj2 needs a product group")),
        },
        PhiSpec::Values(v) => v.clone(),
    };
    MagneticGroup::new(g, bits)
}

/// Parses and builds a magnetic group from its two spec strings.
pub fn magnetic_from_strs(group: &str, phi: &str) -> Result<MagneticGroup> {
    build_magnetic(&parse_group(group)?, &parse_phi(phi)?)
}
