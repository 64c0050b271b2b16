//! Exact arithmetic in cyclotomic fields Q(zeta_N), power basis modulo the
//! N-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{self, Field};
use crate::error::{MagError, Result};

#[derive(Debug)]
struct FieldData {
    deg: usize,
    /// powers[j] = coefficients of x^j reduced mod the cyclotomic polynomial, j < N
    powers: Vec<Vec<i64>>,
}

/// Integer coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] / lead;
        q[k] = c;
        for (i, d) in den.iter().enumerate() {
            r[k + i] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn field_data(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("cyclotomic cache").get(&n) {
        return d.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    if deg == 0 {
        cur = vec![];
    }
    for _ in 0..n {
        powers.push(if deg == 0 { vec![] } else { cur.clone() });
        if deg == 0 {
            continue;
        }
        // multiply by x, then fold the overflow coefficient back with the monic relation
        let top = cur[deg - 1];
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..deg {
            cur[i] -= top * phi[i];
        }
    }
    let data = Arc::new(FieldData { deg, powers });
    cache.lock().expect("cyclotomic cache").insert(n, data.clone());
    data
}

fn rzero() -> BigRational {
    <BigRational as Zero>::zero()
}

fn rone() -> BigRational {
    <BigRational as One>::one()
}

pub fn euler_phi(n: u32) -> usize {
    field_data(n).deg
}

/// Element of Q(zeta_n) in the power basis zeta^0 .. zeta^{phi(n)-1}.
#[derive(Clone, Serialize, Deserialize)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<BigRational>,
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl Cyclotomic {
    pub fn zero_in(n: u32) -> Self {
        Cyclotomic {
            n,
            c: vec![rzero(); field_data(n).deg],
        }
    }

    pub fn from_rational_in(n: u32, q: BigRational) -> Self {
        let mut z = Self::zero_in(n);
        z.c[0] = q;
        z
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_rational_in(1, q)
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// zeta_n^k
    pub fn zeta(n: u32, k: i64) -> Self {
        let fd = field_data(n);
        let j = k.rem_euclid(n as i64) as usize;
        Cyclotomic {
            n,
            c: fd.powers[j].iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(),
        }
    }

    pub fn i() -> Self {
        Self::zeta(4, 1)
    }

    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(MagError::param("conductor must be positive"));
        }
        let deg = field_data(n).deg;
        if coeffs.len() > deg {
            // accept longer vectors as polynomials in zeta and reduce
            let mut out = Self::zero_in(n);
            for (k, q) in coeffs.into_iter().enumerate() {
                out = out.add(&Self::zeta(n, k as i64).scale(&q));
            }
            return Ok(out);
        }
        let mut c = coeffs;
        c.resize(deg, rzero());
        Ok(Cyclotomic { n, c })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    /// Re-expresses the element over Q(zeta_m); requires n | m.
    pub fn promote(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "conductor {} does not divide {}", self.n, m);
        let fd = field_data(m);
        let step = (m / self.n) as usize;
        let mut out = vec![rzero(); fd.deg];
        for (k, q) in self.c.iter().enumerate() {
            if Zero::is_zero(q) {
                continue;
            }
            for (i, &v) in fd.powers[(k * step) % m as usize].iter().enumerate() {
                if v != 0 {
                    out[i] += q * BigInt::from(v);
                }
            }
        }
        Cyclotomic { n: m, c: out }
    }

    fn aligned(&self, o: &Self) -> (Self, Self) {
        let l = lcm(self.n, o.n);
        (self.promote(l), o.promote(l))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Complex conjugation zeta -> zeta^{N-1}.
    pub fn conj(&self) -> Self {
        let fd = field_data(self.n);
        let n = self.n as usize;
        let mut out = vec![rzero(); fd.deg];
        for (k, q) in self.c.iter().enumerate() {
            if Zero::is_zero(q) {
                continue;
            }
            for (i, &v) in fd.powers[(n - k) % n].iter().enumerate() {
                if v != 0 {
                    out[i] += q * BigInt::from(v);
                }
            }
        }
        Cyclotomic { n: self.n, c: out }
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.c.first().cloned().unwrap_or_else(rzero))
        } else {
            None
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::int(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if Field::is_zero(self) {
            return Err(MagError::DivisionByZero);
        }
        Ok(self.inv())
    }

    /// Numerical value at zeta = exp(2 pi i / N).
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, q) in self.c.iter().enumerate() {
            let v = q.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }

    /// When the element is a root of unity, returns (j, L) with value zeta_L^j,
    /// L = lcm(2, N), j < L.
    pub fn root_of_unity_exponent(&self) -> Option<(u64, u64)> {
        let l = lcm(2, self.n);
        let me = self.promote(l);
        (0..l as u64).find(|&j| Self::zeta(l, j as i64) == me).map(|j| (j, l as u64))
    }

    /// Gaussian rational text "a/b+c/d i" (either part optional).
    pub fn parse_gaussian(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(MagError::Parse { pos: 0, msg: "empty number".into() });
        }
        let mut split = None;
        for (i, ch) in t.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !t[..i].ends_with(['e', 'E']) {
                split = Some(i);
            }
        }
        let (re_s, im_s) = if t.ends_with('i') {
            match split {
                Some(i) => (&t[..i], &t[i..t.len() - 1]),
                None => ("0", &t[..t.len() - 1]),
            }
        } else {
            (t.as_str(), "0")
        };
        let im_s = match im_s {
            "" | "+" => "1",
            "-" => "-1",
            x => x,
        };
        let re = parse_rational(re_s)?;
        let im = parse_rational(im_s)?;
        Ok(Self::from_rational_in(4, re).add(&Self::i().scale(&im)))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim().trim_start_matches('+');
    let bad = || MagError::Parse { pos: 0, msg: format!("bad rational '{s}'") };
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(MagError::DivisionByZero);
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Field for Cyclotomic {
    fn zero() -> Self {
        Self::zero_in(1)
    }
    fn one() -> Self {
        Self::int(1)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.aligned(o);
        Cyclotomic {
            n: a.n,
            c: a.c.iter().zip(&b.c).map(|(x, y)| x - y).collect(),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.n == 1 && o.n == 1 {
            return Cyclotomic {
                n: 1,
                c: vec![&self.c[0] * &o.c[0]],
            };
        }
        let (a, b) = self.aligned(o);
        let fd = field_data(a.n);
        let n = a.n as usize;
        let mut out = vec![rzero(); fd.deg];
        for (i, x) in a.c.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if Zero::is_zero(y) {
                    continue;
                }
                let xy = x * y;
                for (k, &v) in fd.powers[(i + j) % n].iter().enumerate() {
                    if v != 0 {
                        out[k] += &xy * BigInt::from(v);
                    }
                }
            }
        }
        Cyclotomic { n: a.n, c: out }
    }
    fn neg(&self) -> Self {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
    fn inv(&self) -> Self {
        assert!(!Field::is_zero(self), "inverse of zero");
        if self.n <= 2 {
            return Cyclotomic {
                n: self.n,
                c: vec![self.c[0].recip()],
            };
        }
        // solve (self * y) = 1 as a rational linear system in the coefficients of y
        let deg = self.c.len();
        let cols: Vec<Cyclotomic> = (0..deg).map(|j| self.mul(&Self::zeta(self.n, j as i64))).collect();
        let rows: Vec<Vec<BigRational>> = (0..deg).map(|i| cols.iter().map(|c| c.c[i].clone()).collect()).collect();
        let mut rhs = vec![rzero(); deg];
        rhs[0] = rone();
        let y = field::solve(&rows, &rhs, deg).expect("nonzero cyclotomic is invertible");
        Cyclotomic { n: self.n, c: y }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        if self.n == o.n {
            return self.c == o.c;
        }
        let (a, b) = self.aligned(o);
        a.c == b.c
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 4 || self.n == 1 || self.n == 2 {
            let re = &self.c[0];
            let im = self.c.get(1).cloned().unwrap_or_else(rzero);
            return if Zero::is_zero(&im) {
                write!(f, "{}", rational_to_string(re))
            } else if Zero::is_zero(re) {
                write!(f, "{}i", rational_to_string(&im))
            } else if im.is_negative() {
                write!(f, "{}-{}i", rational_to_string(re), rational_to_string(&-im))
            } else {
                write!(f, "{}+{}i", rational_to_string(re), rational_to_string(&im))
            };
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, q)| !Zero::is_zero(*q))
            .map(|(k, q)| format!("{}*z{}^{}", rational_to_string(q), self.n, k))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
