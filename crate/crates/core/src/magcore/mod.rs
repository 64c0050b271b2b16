//! Finite groups as dense Cayley tables and magnetic structures on them.

pub mod spec;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{MagError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub order: usize,
    /// table[g][h] = g*h
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub inverses: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(MagError::param("empty group table"));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(MagError::param(format!("row {g} has length {}, expected {n}", row.len())));
            }
            if !is_permutation(row) {
                return Err(MagError::param(format!("row {g} is not a permutation")));
            }
        }
        for h in 0..n {
            let col: Vec<usize> = (0..n).map(|g| table[g][h]).collect();
            if !is_permutation(&col) {
                return Err(MagError::param(format!("column {h} is not a permutation")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| MagError::param("table has no identity"))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n).find(|&h| table[g][h] == identity).expect("latin square");
        }
        let grp = FiniteGroup {
            order: n,
            table,
            identity,
            inverses,
            labels: None,
        };
        if let Some((g, h, k)) = grp.associativity_violation() {
            return Err(MagError::param(format!("table not associative at ({g}, {h}, {k})")));
        }
        Ok(grp)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        if labels.len() == self.order {
            self.labels = Some(labels);
        }
        self
    }

    pub fn label(&self, g: usize) -> String {
        self.labels.as_ref().map_or_else(|| g.to_string(), |l| l[g].clone())
    }

    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for g in 0..n {
            for h in 0..n {
                let gh = self.table[g][h];
                for k in 0..n {
                    if self.table[gh][k] != self.table[g][self.table[h][k]] {
                        return Some((g, h, k));
                    }
                }
            }
        }
        None
    }

    /// Checks every structural invariant of a Cayley table.
    pub fn validate(&self) -> Result<()> {
        let fresh = FiniteGroup::from_table(self.table.clone())?;
        if fresh.identity != self.identity || fresh.inverses != self.inverses || self.order != self.table.len() {
            return Err(MagError::param("identity or inverses inconsistent with table"));
        }
        Ok(())
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut x = self.identity;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    pub fn exponent(&self) -> u64 {
        use num_integer::Integer;
        (0..self.order).map(|g| self.element_order(g)).fold(1, |a, b| a.lcm(&b))
    }

    /// Multiset of element orders as (order, count).
    pub fn order_census(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for g in 0..self.order {
            *m.entry(self.element_order(g)).or_insert(0) += 1;
        }
        m
    }

    /// Invariant factors d1 | d2 | ... (each > 1), valid for abelian groups.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let orders: Vec<u64> = (0..self.order).map(|g| self.element_order(g)).collect();
        invariant_factors_from_orders(&orders)
    }

    /// Subgroup generated by `elems`, sorted.
    pub fn closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in elems {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&g| seen[g]).collect()
    }

    /// Greedy generating set: repeatedly add the smallest element outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        for g in 0..self.order {
            if !inside[g] {
                gens.push(g);
                for h in self.closure(&gens) {
                    inside[h] = true;
                }
            }
        }
        gens
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MagError::param("cyclic group needs n >= 1"));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        FiniteGroup::from_table(table)
    }

    /// Dihedral group of order 2n; element r^k s^j has index j*n + k.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MagError::param("dihedral group needs n >= 1"));
        }
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for x in 0..2 * n {
            let (i, a) = (x / n, x % n);
            for y in 0..2 * n {
                let (j, b) = (y / n, y % n);
                let rot = if i == 0 { (a + b) % n } else { (a + n - b) % n };
                table[x][y] = ((i + j) % 2) * n + rot;
            }
        }
        let labels = (0..2 * n)
            .map(|x| match (x / n, x % n) {
                (0, 0) => "1".to_string(),
                (0, k) => format!("r{k}"),
                (_, 0) => "s".to_string(),
                (_, k) => format!("r{k}s"),
            })
            .collect();
        Ok(FiniteGroup::from_table(table)?.with_labels(labels))
    }

    /// Quaternion group in the order 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion8() -> Self {
        // unit index u in {0:1, 1:i, 2:j, 3:k} with sign s -> 2u + s
        let mul_units = |a: usize, b: usize| -> (usize, bool) {
            match (a, b) {
                (0, x) | (x, 0) => (x, false),
                (x, y) if x == y => (0, true),
                (1, 2) => (3, false),
                (2, 1) => (3, true),
                (2, 3) => (1, false),
                (3, 2) => (1, true),
                (3, 1) => (2, false),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        };
        let mut table = vec![vec![0; 8]; 8];
        for x in 0..8 {
            for y in 0..8 {
                let (u, neg) = mul_units(x / 2, y / 2);
                let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                table[x][y] = 2 * u + sign as usize;
            }
        }
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::from_table(table).expect("quaternion table").with_labels(labels)
    }

    /// Direct product; element (a, b) has index a*|B| + b.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let trivial: Vec<Vec<usize>> = vec![(0..a.order).collect(); b.order];
        Self::semidirect(a, b, &trivial).expect("trivial action is valid")
    }

    /// A ⋊ B with (a0,b0)(a1,b1) = (a0 * action[b0](a1), b0 b1); index a*|B| + b.
    pub fn semidirect(a: &FiniteGroup, b: &FiniteGroup, action: &[Vec<usize>]) -> Result<FiniteGroup> {
        if action.len() != b.order {
            return Err(MagError::InvalidAction(format!(
                "action has {} permutations, group has {} elements",
                action.len(),
                b.order
            )));
        }
        for (y, p) in action.iter().enumerate() {
            if p.len() != a.order || !is_permutation(p) {
                return Err(MagError::InvalidAction(format!("image of {y} is not a permutation")));
            }
            for x in 0..a.order {
                for z in 0..a.order {
                    if p[a.mul(x, z)] != a.mul(p[x], p[z]) {
                        return Err(MagError::InvalidAction(format!("image of {y} is not an automorphism")));
                    }
                }
            }
        }
        for y in 0..b.order {
            for w in 0..b.order {
                let yw = b.mul(y, w);
                if (0..a.order).any(|x| action[yw][x] != action[y][action[w][x]]) {
                    return Err(MagError::InvalidAction(format!("action is not a homomorphism at ({y}, {w})")));
                }
            }
        }
        let (na, nb) = (a.order, b.order);
        let mut table = vec![vec![0; na * nb]; na * nb];
        for x in 0..na * nb {
            let (a0, b0) = (x / nb, x % nb);
            for y in 0..na * nb {
                let (a1, b1) = (y / nb, y % nb);
                table[x][y] = a.mul(a0, action[b0][a1]) * nb + b.mul(b0, b1);
            }
        }
        let mut g = FiniteGroup::from_table(table)?;
        if let (Some(la), Some(lb)) = (&a.labels, &b.labels) {
            g = g.with_labels((0..na * nb).map(|x| format!("({},{})", la[x / nb], lb[x % nb])).collect());
        }
        Ok(g)
    }

    /// Extends images of `generators()` of `b` to a full action table.
    pub fn action_from_generator_images(a: &FiniteGroup, b: &FiniteGroup, images: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
        let gens = b.generators();
        if images.len() != gens.len() {
            return Err(MagError::InvalidAction(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        for p in images {
            if p.len() != a.order || !is_permutation(p) {
                return Err(MagError::InvalidAction("generator image is not a permutation".into()));
            }
        }
        let mut act: Vec<Option<Vec<usize>>> = vec![None; b.order];
        act[b.identity] = Some((0..a.order).collect());
        let mut queue = VecDeque::from([b.identity]);
        while let Some(x) = queue.pop_front() {
            let px = act[x].clone().expect("visited");
            for (k, &s) in gens.iter().enumerate() {
                let y = b.mul(x, s);
                let py: Vec<usize> = (0..a.order).map(|z| px[images[k][z]]).collect();
                match &act[y] {
                    Some(old) if *old != py => {
                        return Err(MagError::InvalidAction("generator images do not define a homomorphism".into()))
                    }
                    Some(_) => {}
                    None => {
                        act[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(act.into_iter().map(|p| p.expect("generators span")).collect())
    }

    /// The inversion automorphism, valid when the group is abelian.
    pub fn inversion_permutation(&self) -> Vec<usize> {
        self.inverses.clone()
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    for &x in row {
        if x >= row.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Invariant factors of a finite abelian group from its list of element orders.
///
/// For each prime p, the counts c_k = #{x : x^{p^k} = 1} = p^{Σ min(k, e_i)}
/// determine the exponents e_i of the p-primary cyclic factors.
pub fn invariant_factors_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut primary: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(n) {
        let mut prev_log = 0u32;
        let mut counts_ge: Vec<u32> = Vec::new(); // counts_ge[k-1] = #{i : e_i >= k}
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let l = ilog(c, p);
            if l == prev_log {
                break;
            }
            counts_ge.push(l - prev_log);
            prev_log = l;
        }
        // exponents descending
        let mut parts = Vec::new();
        let r = counts_ge.first().copied().unwrap_or(0);
        for i in 0..r {
            let e = counts_ge.iter().filter(|&&c| c > i).count() as u32;
            parts.push(p.pow(e));
        }
        primary.push(parts);
    }
    let len = primary.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|i| primary.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.reverse();
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut c: u64, p: u64) -> u32 {
    let mut l = 0;
    while c > 1 {
        debug_assert!(c % p == 0);
        c /= p;
        l += 1;
    }
    l
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Magnetic,
    Plain,
}

/// A finite group with grading homomorphism phi: G -> Z/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagneticGroup {
    pub group: FiniteGroup,
    pub phi: Vec<u8>,
    pub mode: Mode,
}

impl MagneticGroup {
    /// Mode is magnetic when phi is surjective and plain when phi vanishes.
    pub fn new(group: FiniteGroup, phi: Vec<u8>) -> Result<Self> {
        check_hom_to_z2(&group, &phi)?;
        let mode = if phi.iter().any(|&b| b == 1) { Mode::Magnetic } else { Mode::Plain };
        Ok(MagneticGroup { group, phi, mode })
    }

    pub fn plain(group: FiniteGroup) -> Self {
        let phi = vec![0; group.order];
        MagneticGroup {
            group,
            phi,
            mode: Mode::Plain,
        }
    }

    /// (Z/n, k mod 2) for even n.
    pub fn cyclic_mod2(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(MagError::param("mod2 grading needs an even cyclic order"));
        }
        let g = FiniteGroup::cyclic(n)?;
        MagneticGroup::new(g, (0..n).map(|k| (k % 2) as u8).collect())
    }

    /// (A x Z/n, projection to the second factor mod 2) for even n.
    pub fn product_proj2(a: &FiniteGroup, n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(MagError::param("proj2 grading needs an even second factor"));
        }
        let b = FiniteGroup::cyclic(n)?;
        let g = FiniteGroup::direct_product(a, &b);
        let phi = (0..g.order).map(|x| ((x % n) % 2) as u8).collect();
        MagneticGroup::new(g, phi)
    }

    pub fn require_magnetic(&self) -> Result<()> {
        if self.mode != Mode::Magnetic {
            return Err(MagError::param("operation needs a surjective grading phi"));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order
    }

    #[inline]
    pub fn phi(&self, g: usize) -> u8 {
        self.phi[g]
    }

    /// Kernel of phi.
    pub fn core(&self) -> Subgroup {
        let members = (0..self.group.order).filter(|&g| self.phi[g] == 0).collect();
        Subgroup {
            parent: self.group.clone(),
            members,
        }
    }

    /// {(g, k) in G x Z/n : phi(g) = k mod 2}.
    pub fn pullback_z2n(&self, n: usize) -> Result<FiniteGroup> {
        Ok(self.pullback_with_projection(n)?.0)
    }

    /// Pullback group together with its projection onto G.
    pub fn pullback_with_projection(&self, n: usize) -> Result<(FiniteGroup, Vec<usize>)> {
        self.require_magnetic()?;
        if n == 0 || n % 2 != 0 {
            return Err(MagError::param(format!("pullback needs an even n, got {n}")));
        }
        let elems: Vec<(usize, usize)> = (0..self.group.order)
            .flat_map(|g| (0..n).filter(move |k| k % 2 == self.phi[g] as usize).map(move |k| (g, k)))
            .collect();
        let index: BTreeMap<(usize, usize), usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|&(g, k)| {
                elems
                    .iter()
                    .map(|&(h, l)| index[&(self.group.mul(g, h), (k + l) % n)])
                    .collect()
            })
            .collect();
        let proj = elems.iter().map(|&(g, _)| g).collect();
        Ok((FiniteGroup::from_table(table)?, proj))
    }
}

/// Checks that `phi` is a homomorphism G -> Z/2 with bit values.
pub fn check_hom_to_z2(group: &FiniteGroup, phi: &[u8]) -> Result<()> {
    if phi.len() != group.order {
        return Err(MagError::param(format!("phi has {} values, group has {} elements", phi.len(), group.order)));
    }
    if phi.iter().any(|&b| b > 1) {
        return Err(MagError::param("phi values must be 0 or 1"));
    }
    for g in 0..group.order {
        for h in 0..group.order {
            if phi[group.mul(g, h)] != phi[g] ^ phi[h] {
                return Err(MagError::param(format!("phi is not a homomorphism at ({g}, {h})")));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub parent: FiniteGroup,
    /// Sorted parent indices; position i embeds as members[i].
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn embedding(&self, pos: usize) -> usize {
        self.members[pos]
    }

    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn index(&self) -> usize {
        self.parent.order / self.members.len()
    }

    /// Induced group structure on member positions.
    pub fn as_group(&self) -> FiniteGroup {
        let table = self
            .members
            .iter()
            .map(|&g| {
                self.members
                    .iter()
                    .map(|&h| self.position(self.parent.mul(g, h)).expect("closed subgroup"))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("subgroup table")
    }
}
