//! Brute-force references used by the acceptance suite. Nothing here calls
//! the engine's cohomology, Brauer or classification code.

use magbrauer_core::exactla::Cyclotomic;
use magbrauer_core::gradalg::{BaseField, GradedAlgebra};
use num_integer::Integer;

/// All invariant-factor lists d1 | d2 | ... with product n.
pub fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in 2..=rest {
            if rest % d == 0 && d % min == 0 {
                // every later factor is a multiple of d
                let tail = rest / d;
                if tail != 1 && tail % d != 0 {
                    continue;
                }
                acc.push(d);
                go(tail, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Sorted element orders of Z/d1 x ... x Z/dk.
pub fn census_of(factors: &[u64]) -> Vec<u64> {
    let mut orders = vec![1u64];
    for &d in factors {
        let mut next = Vec::with_capacity(orders.len() * d as usize);
        for &o in &orders {
            for x in 0..d {
                let ox = d / x.gcd(&d);
                next.push(o.lcm(&ox));
            }
        }
        orders = next;
    }
    orders.sort_unstable();
    orders
}

/// The abelian group whose order census equals the given one.
pub fn abelian_type_from_orders(orders: &[u64]) -> Option<Vec<u64>> {
    let mut sorted = orders.to_vec();
    sorted.sort_unstable();
    let matches: Vec<Vec<u64>> = abelian_types(orders.len() as u64)
        .into_iter()
        .filter(|t| census_of(t) == sorted)
        .collect();
    (matches.len() == 1).then(|| matches[0].clone())
}

/// Generic order computation on an explicit finite group.
pub fn orders_of<E: Clone + PartialEq>(elems: &[E], id: &E, mul: impl Fn(&E, &E) -> E) -> Vec<u64> {
    elems
        .iter()
        .map(|x| {
            let mut p = x.clone();
            let mut k = 1;
            while p != *id {
                p = mul(&p, x);
                k += 1;
            }
            k
        })
        .collect()
}

/// Graded Brauer group of Z/n over R from raw Z/2 cochains: elements
/// (c, psi, k) with c a canonical cocycle representative, product twisted by psi u psi'.
pub fn riehm_real_cyclic_orders(n: usize) -> Vec<u64> {
    let add = |a: usize, b: usize| (a + b) % n;
    let free: Vec<(usize, usize)> = (1..n).flat_map(|g| (1..n).map(move |h| (g, h))).collect();
    let val = |bits: u64, g: usize, h: usize| -> u64 {
        if g == 0 || h == 0 {
            0
        } else {
            (bits >> ((g - 1) * (n - 1) + (h - 1))) & 1
        }
    };
    let is_cocycle = |bits: u64| {
        (0..n).all(|g| {
            (0..n).all(|h| (0..n).all(|k| (val(bits, h, k) + val(bits, g, add(h, k)) + val(bits, add(g, h), k) + val(bits, g, h)) % 2 == 0))
        })
    };
    let from_fn = |f: &dyn Fn(usize, usize) -> u64| -> u64 {
        free.iter().enumerate().fold(0, |acc, (i, &(g, h))| acc | ((f(g, h) & 1) << i))
    };
    let boundaries: Vec<u64> = (0..1u64 << (n - 1))
        .map(|a| {
            let av = |g: usize| if g == 0 { 0 } else { (a >> (g - 1)) & 1 };
            from_fn(&|g, h| av(h) + av(add(g, h)) + av(g))
        })
        .collect();
    let canon = |bits: u64| boundaries.iter().map(|b| bits ^ b).min().expect("nonempty");
    let mut classes: Vec<u64> = (0..1u64 << free.len()).filter(|&b| is_cocycle(b)).map(canon).collect();
    classes.sort_unstable();
    classes.dedup();
    let homs: Vec<u8> = if n % 2 == 0 { vec![0, 1] } else { vec![0] };
    let hom = |p: u8, g: usize| u64::from(p) * (g as u64 % 2);
    let mut elems = Vec::new();
    for &c in &classes {
        for &p in &homs {
            for k in 0..8u8 {
                elems.push((c, p, k));
            }
        }
    }
    let mul = |x: &(u64, u8, u8), y: &(u64, u8, u8)| {
        let cup = from_fn(&|g, h| hom(x.1, g) * hom(y.1, h));
        (canon(x.0 ^ y.0 ^ cup), x.1 ^ y.1, (x.2 + y.2) % 8)
    };
    orders_of(&elems, &(canon(0), 0, 0), mul)
}

/// Real algebra on the monomials of generators g_i with degree, square and
/// pairwise commutation signs; basis index is the bit set of the monomial.
pub fn sign_algebra(gens: &[(u8, i64)], anticommuting: &[(usize, usize)]) -> GradedAlgebra {
    let k = gens.len();
    let eps = |a: usize, b: usize| -> i64 {
        if anticommuting.contains(&(a, b)) || anticommuting.contains(&(b, a)) {
            -1
        } else {
            1
        }
    };
    let dim = 1usize << k;
    let mut sc = vec![vec![Vec::new(); dim]; dim];
    for (s, row) in sc.iter_mut().enumerate() {
        for (t, cell) in row.iter_mut().enumerate() {
            let mut mono = s;
            let mut sign = 1i64;
            for g in (0..k).filter(|g| t >> g & 1 == 1) {
                for m in (g + 1..k).filter(|m| mono >> m & 1 == 1) {
                    sign *= eps(m, g);
                }
                if mono >> g & 1 == 1 {
                    sign *= gens[g].1;
                    mono &= !(1 << g);
                } else {
                    mono |= 1 << g;
                }
            }
            *cell = vec![(mono, Cyclotomic::int(sign))];
        }
    }
    let degrees = (0..dim)
        .map(|s| (0..k).filter(|g| s >> g & 1 == 1).map(|g| gens[g].0).sum::<u8>() % 2)
        .collect();
    let mut unit = vec![Cyclotomic::int(0); dim];
    unit[0] = Cyclotomic::int(1);
    GradedAlgebra::new(BaseField::Q, degrees, sc, unit).expect("well-formed sign algebra")
}

/// Explicit magnetic group data for the brute-force searches.
pub struct RawGroup {
    pub table: Vec<Vec<usize>>,
    pub phi: Vec<u8>,
}

impl RawGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Cyclic Z/n with phi = k mod 2.
    pub fn cyclic_mod2(n: usize) -> RawGroup {
        RawGroup {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            phi: (0..n).map(|a| (a % 2) as u8).collect(),
        }
    }

    /// Z/2 x Z/2 with (a, b) at 2a + b and phi given on the two generators.
    pub fn klein(phi_a: u8, phi_b: u8) -> RawGroup {
        RawGroup {
            table: (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect(),
            phi: (0..4).map(|x| ((x >> 1) as u8 & phi_a) ^ (x as u8 & 1 & phi_b)).collect(),
        }
    }

    /// phi(g) alpha(h) - alpha(gh) + alpha(g), in Z/d.
    fn delta(&self, alpha: &[u64], d: u64, g: usize, h: usize) -> u64 {
        let ah = if self.phi[g] == 1 { (d - alpha[h]) % d } else { alpha[h] };
        (ah + d - alpha[self.table[g][h]] + alpha[g]) % d
    }

    /// Twisted cocycle identity for angles k/m; first violating triple.
    pub fn cocycle_defect(&self, m: u64, c: &[u64]) -> Option<(usize, usize, usize)> {
        let n = self.order();
        let v = |g: usize, h: usize| c[g * n + h] % m;
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let hk = if self.phi[g] == 1 { (m - v(h, k)) % m } else { v(h, k) };
                    let lhs = (hk + v(g, self.table[h][k])) % m;
                    let rhs = (v(self.table[g][h], k) + v(g, h)) % m;
                    if lhs != rhs {
                        return Some((g, h, k));
                    }
                }
            }
        }
        None
    }

    /// Normalized cocycles with values k/m, by exhaustion over the free entries.
    pub fn all_cocycles(&self, m: u64) -> Vec<Vec<u64>> {
        let n = self.order();
        let free: Vec<usize> = (1..n).flat_map(|g| (1..n).map(move |h| g * n + h)).collect();
        let total = m.pow(free.len() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = vec![0u64; n * n];
            let mut x = code;
            for &i in &free {
                c[i] = x % m;
                x /= m;
            }
            if self.cocycle_defect(m, &c).is_none() {
                out.push(c);
            }
        }
        out
    }

    /// Whether some normalized alpha: G -> Z/d has delta(alpha) = c, with c in units 1/d.
    pub fn coboundary_exists(&self, d: u64, c: &[u64]) -> bool {
        let n = self.order();
        let mut alpha = vec![0u64; n];
        // elements are assigned in index order; a pair is checked once g, h, gh are all set
        fn go(r: &RawGroup, d: u64, c: &[u64], alpha: &mut Vec<u64>, next: usize) -> bool {
            let n = r.order();
            let ok = |alpha: &[u64], upto: usize| {
                (0..upto).all(|g| {
                    (0..upto).all(|h| {
                        let gh = r.table[g][h];
                        gh >= upto || r.delta(alpha, d, g, h) == c[g * n + h] % d
                    })
                })
            };
            if next == n {
                return ok(alpha, n);
            }
            for a in 0..d {
                alpha[next] = a;
                if ok(alpha, next + 1) && go(r, d, c, alpha, next + 1) {
                    return true;
                }
            }
            false
        }
        // the identity sits at index 0 in every group built here
        if c[0] % d != 0 {
            return false;
        }
        go(self, d, c, &mut alpha, 1)
    }
}

/// Dimension over R of {X in M_d(C) : L_g conj^{phi(g)}(X) = X L_g}, for Gaussian-integer L_g.
pub fn real_commutant_dimension(mats: &[Vec<Vec<(i64, i64)>>], phi: &[u8]) -> usize {
    let d = mats[0].len();
    let nvar = 2 * d * d;
    let var = |i: usize, j: usize, part: usize| 2 * (i * d + j) + part;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (l, &p) in mats.iter().zip(phi) {
        for i in 0..d {
            for j in 0..d {
                // real and imaginary parts of (L conj^p(X) - X L)[i][j]
                let mut re = vec![0.0; nvar];
                let mut im = vec![0.0; nvar];
                for k in 0..d {
                    let (a, b) = l[i][k];
                    let s = if p == 1 { -1.0 } else { 1.0 };
                    // (a + bi)(x + s y i)
                    re[var(k, j, 0)] += a as f64;
                    re[var(k, j, 1)] -= s * b as f64;
                    im[var(k, j, 0)] += b as f64;
                    im[var(k, j, 1)] += s * a as f64;
                    let (c, e) = l[k][j];
                    // (x + yi)(c + ei)
                    re[var(i, k, 0)] -= c as f64;
                    re[var(i, k, 1)] += e as f64;
                    im[var(i, k, 0)] -= e as f64;
                    im[var(i, k, 1)] -= c as f64;
                }
                rows.push(re);
                rows.push(im);
            }
        }
    }
    nvar - rank(rows)
}

fn rank(mut rows: Vec<Vec<f64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).max_by(|&a, &b| rows[a][c].abs().total_cmp(&rows[b][c].abs())) else {
            break;
        };
        if rows[p][c].abs() < 1e-9 {
            continue;
        }
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][c] / rows[r][c];
                if f != 0.0 {
                    for j in c..cols {
                        rows[i][j] -= f * rows[r][j];
                    }
                }
            }
        }
        r += 1;
    }
    r
}
