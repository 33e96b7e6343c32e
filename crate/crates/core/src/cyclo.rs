//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored over the power basis `{zeta_n^i : 0 <= i < phi(n)}`
//! after reduction modulo the n-th cyclotomic polynomial, and the conductor
//! is always minimized, so structural equality is semantic equality.

use num::{BigInt, BigRational, One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {0} is not coprime to conductor {1}")]
    NotCoprime(i64, u64),
}

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Coefficients of Phi_n, low to high, monic, length phi(n)+1.
fn cyclotomic_poly_uncached(n: u64) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = int_poly_div_exact(&num, &phi_d);
    }
    num
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if let Some(p) = cyclo_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = cyclotomic_poly_uncached(n);
    cyclo_cache().lock().unwrap().insert(n, p.clone());
    p
}

/// Exact division of integer polynomials, low-to-high coefficients.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quo = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quo[i] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quo
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Remainder of a rational polynomial modulo the monic Phi_n; result has
/// exactly phi(n) coefficients.
fn reduce_mod_phi(mut coeffs: Vec<BigRational>, n: u64) -> Vec<BigRational> {
    let phi = euler_phi(n) as usize;
    let modulus = cyclotomic_poly(n);
    while coeffs.len() > phi {
        let deg = coeffs.len() - 1;
        let lead = coeffs.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = deg - phi;
        for j in 0..phi {
            let t = BigRational::from_integer(modulus[j].clone()) * &lead;
            coeffs[shift + j] -= t;
        }
    }
    coeffs.resize(phi, BigRational::zero());
    coeffs
}

/// An exact element of the cyclotomic field Q(zeta_conductor).
#[derive(Clone, PartialEq, Eq)]
pub struct Cyc {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyc {
    /// Builds an element from coefficients in powers of zeta_n (any length),
    /// reduces modulo Phi_n and minimizes the conductor.
    pub fn from_powers(n: u64, coeffs: Vec<BigRational>) -> Result<Cyc, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        let coeffs = reduce_mod_phi(coeffs, n);
        Ok(Cyc {
            conductor: n,
            coeffs,
        }
        .normalized())
    }

    pub fn zero() -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(q: BigRational) -> Cyc {
        Cyc {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(i: i64) -> Cyc {
        Cyc::from_rational(rat(i))
    }

    /// zeta_n^k.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Cyc, CycError> {
        if n == 0 {
            return Err(CycError::ZeroConductor);
        }
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Cyc::from_powers(n, coeffs)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor == 1 {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element over the power basis of Q(zeta_m) for n | m.
    /// Coefficients in the power basis of the m-th cyclotomic field, for any
    /// multiple m of the conductor; padded to length phi(m).
    pub fn coeffs_in(&self, m: u64) -> Option<Vec<BigRational>> {
        if m == 0 || m % self.conductor != 0 {
            return None;
        }
        let mut raw = self.embed_raw(m);
        raw.resize(euler_phi(m) as usize, BigRational::zero());
        Some(raw)
    }

    fn embed_raw(&self, m: u64) -> Vec<BigRational> {
        assert_eq!(m % self.conductor, 0);
        let step = (m / self.conductor) as usize;
        let mut raw = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[i * step] = c.clone();
        }
        reduce_mod_phi(raw, m)
    }

    /// Minimizes the conductor: finds the smallest divisor m of the conductor
    /// such that the element lies in Q(zeta_m) and rewrites it over that basis.
    fn normalized(self) -> Cyc {
        let n = self.conductor;
        for m in divisors(n) {
            if m == n {
                break;
            }
            if let Some(coeffs) = rewrite_in_subfield(&self.coeffs, n, m) {
                return Cyc {
                    conductor: m,
                    coeffs,
                };
            }
        }
        self
    }

    fn binop(&self, other: &Cyc, f: impl Fn(&[BigRational], &[BigRational], u64) -> Vec<BigRational>) -> Cyc {
        let m = num_integer::lcm(self.conductor, other.conductor);
        let a = self.embed_raw(m);
        let b = other.embed_raw(m);
        let coeffs = f(&a, &b, m);
        Cyc {
            conductor: m,
            coeffs: reduce_mod_phi(coeffs, m),
        }
        .normalized()
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        self.binop(other, |a, b, _| {
            a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
        })
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.binop(other, |a, b, _| {
            a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
        })
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        self.binop(other, |a, b, _| {
            let mut prod = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    prod[i + j] += x * y;
                }
            }
            prod
        })
    }

    pub fn scale(&self, q: &BigRational) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
        .normalized()
    }

    pub fn inv(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let n = self.conductor;
        let phi: Vec<BigRational> = cyclotomic_poly(n)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let inv = poly_mod_inverse(&self.coeffs, &phi).expect("element is a unit mod Phi_n");
        Ok(Cyc {
            conductor: n,
            coeffs: reduce_mod_phi(inv, n),
        }
        .normalized())
    }

    pub fn pow(&self, e: i64) -> Result<Cyc, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyc::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// The field automorphism zeta_n -> zeta_n^k, for gcd(k, n) = 1.
    pub fn galois_act(&self, k: i64) -> Result<Cyc, CycError> {
        let n = self.conductor;
        let kr = k.rem_euclid(n as i64) as u64;
        if num_integer::gcd(kr, n) != 1 {
            return Err(CycError::NotCoprime(k, n));
        }
        let mut raw = vec![BigRational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = (i as u64 * kr % n) as usize;
            raw[t] += c;
        }
        Ok(Cyc {
            conductor: n,
            coeffs: reduce_mod_phi(raw, n),
        }
        .normalized())
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyc {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois_act(-1).unwrap()
    }

    /// Detects +-zeta_n^k exactly: returns (order, exponent) with
    /// self = zeta_order^exponent, or None.
    pub fn is_root_of_unity(&self) -> Option<(u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let big = if n % 2 == 0 { n } else { 2 * n };
        if self.pow(big as i64).ok()? != Cyc::one() {
            return None;
        }
        let ord = divisors(big)
            .into_iter()
            .find(|&d| self.pow(d as i64).unwrap() == Cyc::one())?;
        let zeta = canonical_root(ord);
        let mut pw = Cyc::one();
        for j in 0..ord {
            if pw == *self {
                return Some((ord, j));
            }
            pw = pw.mul(&zeta);
        }
        None
    }

    /// Deterministic total order for stable sorting of character values.
    pub fn sort_key(&self) -> (u64, Vec<BigRational>) {
        (self.conductor, self.coeffs.clone())
    }
}

/// A primitive ord-th root of unity. For ord = 2m with m odd this is
/// -zeta_m^{(m+1)/2}, keeping the stored conductor odd.
pub fn canonical_root(ord: u64) -> Cyc {
    if ord == 1 {
        return Cyc::one();
    }
    if ord == 2 {
        return Cyc::from_integer(-1);
    }
    if ord % 2 == 0 && (ord / 2) % 2 == 1 {
        let m = ord / 2;
        return Cyc::root_of_unity(m, ((m + 1) / 2) as i64).unwrap().neg();
    }
    Cyc::root_of_unity(ord, 1).unwrap()
}

/// Solves for the coordinates of `coeffs` (over the zeta_n power basis) in the
/// zeta_m power basis, m | n. None if the element is not in Q(zeta_m).
fn rewrite_in_subfield(coeffs: &[BigRational], n: u64, m: u64) -> Option<Vec<BigRational>> {
    let phi_n = euler_phi(n) as usize;
    let phi_m = euler_phi(m) as usize;
    // columns: zeta_m^j = zeta_n^{j n/m} reduced mod Phi_n
    let step = (n / m) as usize;
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(phi_m);
    for j in 0..phi_m {
        let mut raw = vec![BigRational::zero(); j * step + 1];
        raw[j * step] = BigRational::one();
        cols.push(reduce_mod_phi(raw, n));
    }
    // solve cols * a = coeffs by Gaussian elimination on the augmented system
    let mut aug: Vec<Vec<BigRational>> = (0..phi_n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(coeffs[r].clone());
            row
        })
        .collect();
    let mut pivot_rows = Vec::new();
    let mut r0 = 0;
    for c in 0..phi_m {
        let Some(pr) = (r0..phi_n).find(|&r| !aug[r][c].is_zero()) else {
            return None; // columns are independent, so this cannot happen
        };
        aug.swap(r0, pr);
        let inv = aug[r0][c].recip();
        for x in aug[r0].iter_mut() {
            *x *= &inv;
        }
        for r in 0..phi_n {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for cc in 0..=phi_m {
                    let t = &aug[r0][cc] * &f;
                    aug[r][cc] -= t;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    // consistency: all non-pivot rows must have zero RHS
    for r in r0..phi_n {
        if !aug[r][phi_m].is_zero() {
            return None;
        }
    }
    Some((0..phi_m).map(|j| aug[pivot_rows[j]][phi_m].clone()).collect())
}

/// Inverse of `a` modulo the monic polynomial `m` over Q, via extended Euclid.
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    }
    fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        if num.len() <= dd {
            return (vec![BigRational::zero()], trim(rem));
        }
        let lead_inv = den[dd].recip();
        let mut quo = vec![BigRational::zero(); num.len() - dd];
        for i in (0..num.len() - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            quo[i] = c.clone();
            for j in 0..=dd {
                let t = &den[j] * &c;
                rem[i + j] -= t;
            }
        }
        (trim(quo), trim(rem))
    }
    fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut p = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                p[i + j] += x * y;
            }
        }
        trim(p)
    }
    fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut p = a.to_vec();
        p.resize(p.len().max(b.len()), BigRational::zero());
        for (i, y) in b.iter().enumerate() {
            p[i] -= y;
        }
        trim(p)
    }
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut t0: Vec<BigRational> = vec![BigRational::zero()];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    // r0 is the gcd; must be a nonzero constant
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let inv = r0[0].recip();
    Some(t0.into_iter().map(|c| c * &inv).collect())
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if i == 0 {
                    format!("{}", c)
                } else if c.is_one() {
                    format!("z{}^{}", self.conductor, i)
                } else if (-c).is_one() {
                    format!("-z{}^{}", self.conductor, i)
                } else {
                    format!("{}*z{}^{}", c, self.conductor, i)
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Cyc", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
