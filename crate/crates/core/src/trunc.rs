//! Truncated p-adic arithmetic: the valuation rings O_i/p^K of p-adic
//! cyclotomic fields in the power basis, the truncated group ring
//! (Z/p^K)[G] for a p-group G, and discrete logarithms on truncated local
//! unit groups through the maximal-ideal filtration.
//!
//! No p-adic logarithm anywhere: unit groups are handled as finite abelian
//! groups presented by polycyclic generators and integer relation rows.

use crate::cyclo::{euler_phi, Cyc};
use crate::group::GroupRef;
use crate::matint::{hnf_rows, in_row_span};
use num::bigint::BigUint;
use num::{BigInt, One, Zero};
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TruncError {
    #[error("element is not a unit in the truncated ring")]
    NotUnit,
    #[error("value has denominator divisible by p")]
    BadDenominator,
    #[error("conductor {0} does not divide p^m = {1}")]
    BadConductor(u64, u64),
    #[error("precision K must be at least 1")]
    BadPrecision,
}

pub fn mod_pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// The ring O/p^K for O the valuation ring of Q_p(zeta_{p^m}); elements are
/// coefficient vectors of length phi(p^m) over Z/p^K in the power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloModRing {
    pub p: u64,
    /// conductor exponent: the field is generated by a p^m-th root of unity
    pub m: u32,
    pub k: u32,
    /// p^K
    pub modulus: u64,
    /// p^m
    pub conductor: u64,
    /// degree phi(p^m)
    pub e: usize,
}

impl CycloModRing {
    pub fn new(p: u64, m: u32, k: u32) -> Result<CycloModRing, TruncError> {
        if k == 0 {
            return Err(TruncError::BadPrecision);
        }
        let conductor = p.pow(m);
        let e = if m == 0 { 1 } else { euler_phi(conductor) as usize };
        Ok(CycloModRing {
            p,
            m,
            k,
            modulus: p.pow(k),
            conductor,
            e,
        })
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.e]
    }

    pub fn scalar(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.modulus;
        v
    }

    pub fn one(&self) -> Vec<u64> {
        self.scalar(1)
    }

    pub fn zeta(&self) -> Vec<u64> {
        if self.m == 0 {
            return self.one();
        }
        let mut v = self.zero();
        if self.e == 1 {
            // p = 2 never happens here; e = 1 only for m = 0
            unreachable!("ramified ring has degree > 1");
        }
        v[1] = 1;
        v
    }

    /// The uniformizer: zeta - 1 in the ramified case, p for Q_p itself.
    pub fn pi(&self) -> Vec<u64> {
        if self.m == 0 {
            self.scalar(self.p % self.modulus)
        } else {
            let mut v = self.zeta();
            v[0] = self.modulus - 1;
            v
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.modulus - y % self.modulus) % self.modulus)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.modulus - x % self.modulus) % self.modulus).collect()
    }

    pub fn scalar_mul(&self, c: u64, a: &[u64]) -> Vec<u64> {
        let c = c % self.modulus;
        a.iter().map(|x| x * c % self.modulus).collect()
    }

    /// Reduces a raw polynomial (any length) modulo the p^m-th cyclotomic
    /// polynomial x^e + sum_{j<p-1} x^{j p^{m-1}} ... via
    /// x^e = -(x^{0} + x^{p^{m-1}} + ... + x^{(p-2) p^{m-1}}).
    pub fn reduce(&self, mut poly: Vec<u64>) -> Vec<u64> {
        if self.m == 0 {
            let mut out = self.zero();
            out[0] = poly.iter().fold(0u64, |a, &b| (a + b) % self.modulus);
            // degree-0 ring: higher powers of "zeta" are all 1
            return out;
        }
        let step = (self.conductor / self.p) as usize; // p^{m-1}
        for d in (self.e..poly.len()).rev() {
            let c = poly[d] % self.modulus;
            if c == 0 {
                continue;
            }
            poly[d] = 0;
            let neg = (self.modulus - c) % self.modulus;
            for j in 0..(self.p - 1) as usize {
                let t = d - self.e + j * step;
                poly[t] = (poly[t] + neg) % self.modulus;
            }
        }
        poly.truncate(self.e);
        poly.resize(self.e, 0);
        poly
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut poly = vec![0u64; 2 * self.e - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                poly[i + j] = (poly[i + j] + x * y) % self.modulus;
            }
        }
        self.reduce(poly)
    }

    pub fn pow_big(&self, a: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = self.mul(&acc, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow(&self, a: &[u64], e: u64) -> Vec<u64> {
        self.pow_big(a, &BigUint::from(e))
    }

    /// Residue in F_p = O/(pi): the uniformizer divides zeta - 1, so the
    /// residue is the coefficient sum mod p.
    pub fn residue(&self, a: &[u64]) -> u64 {
        a.iter().fold(0u64, |acc, &x| (acc + x) % self.p)
    }

    pub fn is_unit(&self, a: &[u64]) -> bool {
        self.residue(a) != 0
    }

    /// Order of the full unit group (O/p^K)^*: (p-1) p^{Ke-1}.
    pub fn unit_group_order(&self) -> BigUint {
        BigUint::from(self.p - 1) * BigUint::from(self.p).pow(self.k * self.e as u32 - 1)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>, TruncError> {
        if !self.is_unit(a) {
            return Err(TruncError::NotUnit);
        }
        let exp = self.unit_group_order() - BigUint::one();
        let r = self.pow_big(a, &exp);
        debug_assert_eq!(self.mul(a, &r), self.one());
        Ok(r)
    }

    /// Teichmueller representative of a scalar residue: iterate p-th powers
    /// of the scalar until stable.
    pub fn teichmuller_scalar(&self, c: u64) -> u64 {
        let mut x = c % self.modulus;
        loop {
            let y = mod_pow_u64(x, self.p, self.modulus);
            if y == x {
                return x;
            }
            x = y;
        }
    }

    /// Galois action zeta -> zeta^a for a coprime to p.
    pub fn galois(&self, x: &[u64], a: u64) -> Vec<u64> {
        if self.m == 0 {
            return x.to_vec();
        }
        assert!(a % self.p != 0);
        let mut poly = vec![0u64; self.conductor as usize];
        for (i, &c) in x.iter().enumerate() {
            let t = (i as u64 * a % self.conductor) as usize;
            poly[t] = (poly[t] + c) % self.modulus;
        }
        self.reduce(poly)
    }

    /// Embeds an exact cyclotomic number whose conductor divides p^m and
    /// whose denominators are prime to p.
    pub fn from_cyc(&self, c: &Cyc) -> Result<Vec<u64>, TruncError> {
        let coeffs = c
            .coeffs_in(self.conductor)
            .ok_or(TruncError::BadConductor(c.conductor(), self.conductor))?;
        let big_mod = BigInt::from(self.modulus);
        let mut out = Vec::with_capacity(self.e);
        for q in &coeffs {
            let den = q.denom();
            let num = q.numer();
            let den_red = den.mod_floor(&big_mod);
            let den_u = den_red.to_u64().unwrap();
            if den_u % self.p == 0 {
                return Err(TruncError::BadDenominator);
            }
            // invert the denominator in Z/p^K via the unit-group order
            let phi = self.modulus / self.p * (self.p - 1);
            let den_inv = mod_pow_u64(den_u, phi - 1, self.modulus);
            let num_red = num.mod_floor(&big_mod).to_u64().unwrap();
            out.push(num_red * den_inv % self.modulus);
        }
        Ok(out)
    }

    /// Drops an element to a lower precision ring of the same field.
    pub fn truncate_to(&self, target: &CycloModRing, x: &[u64]) -> Vec<u64> {
        assert_eq!(self.conductor, target.conductor);
        assert!(target.k <= self.k);
        x.iter().map(|&c| c % target.modulus).collect()
    }
}

/// Polycyclic presentation of (O/p^K)^*: a Teichmueller generator of the
/// residue-field part followed by one 1-unit generator per layer of the
/// maximal-ideal filtration, with greedy discrete logarithms via lattice
/// membership.
#[derive(Debug, Clone)]
pub struct ComponentLog {
    pub ring: CycloModRing,
    /// generators: [teich(w), 1 + beta_1, ..., 1 + beta_{Ke-1}]
    pub gens: Vec<Vec<u64>>,
    gens_inv: Vec<Vec<u64>>,
    /// relation rows over the generators; spans the full relation lattice
    pub relations: Vec<Vec<BigInt>>,
    /// lattices[j-1] = HNF basis of pi^j O + p^K Z^e, for j = 1..=Ke
    lattices: Vec<Vec<Vec<BigInt>>>,
    /// primitive root mod p used for the Teichmueller generator
    pub w: u64,
    dlog_table: Vec<u64>,
}

fn primitive_root_mod_p(p: u64) -> u64 {
    'cand: for w in 2..p {
        let mut x = w;
        for _ in 1..p - 1 {
            if x == 1 {
                continue 'cand;
            }
            x = x * w % p;
        }
        if x == 1 {
            return w;
        }
    }
    panic!("no primitive root found");
}

impl ComponentLog {
    pub fn new(ring: CycloModRing) -> ComponentLog {
        let p = ring.p;
        let e = ring.e;
        let ke = ring.k as usize * e;
        let w = primitive_root_mod_p(p);
        let mut dlog_table = vec![0u64; p as usize];
        let mut x = 1u64;
        for t in 0..p - 1 {
            dlog_table[x as usize] = t;
            x = x * w % p;
        }

        // beta_j = pi^{j mod e} p^{j div e}, valuation exactly j
        let pi = ring.pi();
        let mut pi_pows = vec![ring.one()];
        for _ in 1..e {
            let last = pi_pows.last().unwrap().clone();
            pi_pows.push(ring.mul(&last, &pi));
        }
        let beta = |j: usize| -> Vec<u64> {
            let scalar = mod_pow_u64(p, (j / e) as u64, ring.modulus);
            ring.scalar_mul(scalar, &pi_pows[j % e])
        };

        // lattice of pi^j O + p^K Z^e
        let mut lattices = Vec::with_capacity(ke);
        for j in 1..=ke {
            let pij = {
                let scalar = mod_pow_u64(p, (j / e) as u64, ring.modulus);
                ring.scalar_mul(scalar, &pi_pows[j % e])
            };
            let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(2 * e);
            let mut basis_el = pij;
            for i in 0..e {
                rows.push(basis_el.iter().map(|&c| BigInt::from(c)).collect());
                if i + 1 < e {
                    basis_el = ring.mul(&basis_el, &ring.zeta());
                }
            }
            for i in 0..e {
                let mut r = vec![BigInt::zero(); e];
                r[i] = BigInt::from(ring.modulus);
                rows.push(r);
            }
            lattices.push(hnf_rows(rows));
        }

        let mut gens = Vec::with_capacity(ke);
        let teich = ring.scalar(ring.teichmuller_scalar(w));
        gens.push(teich);
        for j in 1..ke {
            let mut g = beta(j);
            g[0] = (g[0] + 1) % ring.modulus;
            gens.push(g);
        }
        let gens_inv: Vec<Vec<u64>> = gens.iter().map(|g| ring.inv(g).unwrap()).collect();

        let mut log = ComponentLog {
            ring,
            gens,
            gens_inv,
            relations: Vec::new(),
            lattices,
            w,
            dlog_table,
        };
        // relation rows: teich order p-1; p * e_j = dl(gen_j^p)
        let mut relations = Vec::with_capacity(ke);
        let mut row0 = vec![BigInt::zero(); ke];
        row0[0] = BigInt::from(p - 1);
        relations.push(row0);
        for j in 1..ke {
            let gp = log.ring.pow(&log.gens[j], p);
            let dl = log.dl(&gp).expect("power of a unit is a unit");
            let mut row = vec![BigInt::zero(); ke];
            row[j] = BigInt::from(p);
            for (i, c) in dl.iter().enumerate() {
                row[i] -= BigInt::from(*c);
            }
            debug_assert!(row[..j].iter().all(Zero::is_zero));
            relations.push(row);
        }
        log.relations = relations;
        log
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    /// Greedy discrete logarithm: coordinates over the polycyclic generators.
    pub fn dl(&self, x: &[u64]) -> Option<Vec<u64>> {
        let ring = &self.ring;
        let p = ring.p;
        let r = ring.residue(x);
        if r == 0 {
            return None;
        }
        let ke = self.gens.len();
        let mut coords = Vec::with_capacity(ke);
        let t = self.dlog_table[r as usize];
        coords.push(t);
        let mut cur = ring.mul(x, &ring.pow(&self.gens_inv[0], t));
        for j in 1..ke {
            // cur = 1 + y with y of valuation >= j; find c with
            // y - c*beta_j of valuation >= j+1
            let mut y = cur.clone();
            y[0] = (y[0] + ring.modulus - 1) % ring.modulus;
            let beta_j = {
                // beta_j = gen_j - 1
                let mut b = self.gens[j].clone();
                b[0] = (b[0] + ring.modulus - 1) % ring.modulus;
                b
            };
            let next_lattice = &self.lattices[j]; // pi^{j+1} O + p^K
            let mut found = None;
            for c in 0..p {
                let cand = ring.sub(&y, &ring.scalar_mul(c, &beta_j));
                let v: Vec<BigInt> = cand.iter().map(|&u| BigInt::from(u)).collect();
                if in_row_span(next_lattice, &v) {
                    found = Some(c);
                    break;
                }
            }
            let c = found.expect("some layer coordinate always matches");
            coords.push(c);
            if c != 0 {
                cur = ring.mul(&cur, &ring.pow(&self.gens_inv[j], c));
            }
        }
        debug_assert_eq!(cur, ring.one());
        Some(coords)
    }

    pub fn element_from_coords(&self, coords: &[u64]) -> Vec<u64> {
        let mut acc = self.ring.one();
        for (g, &c) in self.gens.iter().zip(coords) {
            if c != 0 {
                acc = self.ring.mul(&acc, &self.ring.pow(g, c));
            }
        }
        acc
    }
}

/// The group ring (Z/p^K)[G] for a p-group G; elements are coefficient
/// vectors indexed by group element.
#[derive(Debug, Clone)]
pub struct GroupModRing {
    pub group: GroupRef,
    pub p: u64,
    pub k: u32,
    pub modulus: u64,
}

impl GroupModRing {
    pub fn new(group: GroupRef, p: u64, k: u32) -> Result<GroupModRing, TruncError> {
        if k == 0 {
            return Err(TruncError::BadPrecision);
        }
        Ok(GroupModRing {
            group,
            p,
            k,
            modulus: p.pow(k),
        })
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.group.order]
    }

    pub fn one(&self) -> Vec<u64> {
        self.basis(0)
    }

    pub fn basis(&self, g: usize) -> Vec<u64> {
        let mut v = self.zero();
        v[g] = 1;
        v
    }

    pub fn scalar(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.modulus;
        v
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.modulus).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let g = self.group.mul(i, j);
                out[g] = (out[g] + x * y) % self.modulus;
            }
        }
        out
    }

    pub fn pow_big(&self, a: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = self.mul(&acc, &base);
            }
            if i + 1 < bits {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn augmentation(&self, a: &[u64]) -> u64 {
        a.iter().fold(0u64, |acc, &x| (acc + x) % self.modulus)
    }

    /// (Z/p^K)[G] is local for a p-group G: units are exactly the elements
    /// with augmentation prime to p.
    pub fn is_unit(&self, a: &[u64]) -> bool {
        self.augmentation(a) % self.p != 0
    }

    pub fn unit_group_order(&self) -> BigUint {
        let n = self.group.order as u32;
        BigUint::from(self.p - 1) * BigUint::from(self.p).pow(self.k * n - 1)
    }

    pub fn inv(&self, a: &[u64]) -> Result<Vec<u64>, TruncError> {
        if !self.is_unit(a) {
            return Err(TruncError::NotUnit);
        }
        let exp = self.unit_group_order() - BigUint::one();
        let r = self.pow_big(a, &exp);
        debug_assert_eq!(self.mul(a, &r), self.one());
        Ok(r)
    }

    /// A generating set for the unit group: the Teichmueller lift of a
    /// primitive root mod p, the group elements, and 1 + x for x running
    /// through a basis of each layer of the maximal-ideal filtration
    /// m = (p, augmentation ideal).
    pub fn unit_generators(&self) -> Vec<Vec<u64>> {
        let n = self.group.order;
        let mut gens = Vec::new();
        let w = primitive_root_mod_p(self.p);
        let ring1 = CycloModRing::new(self.p, 0, self.k).unwrap();
        gens.push(self.scalar(ring1.teichmuller_scalar(w)));
        for g in 1..n {
            gens.push(self.basis(g));
        }

        // ideal generators of m: p*1 and (g - 1)
        let mut ideal_gens: Vec<Vec<u64>> = Vec::with_capacity(n);
        ideal_gens.push(self.scalar(self.p % self.modulus));
        for g in 1..n {
            let mut v = self.basis(g);
            v[0] = (v[0] + self.modulus - 1) % self.modulus;
            ideal_gens.push(v);
        }

        let to_big = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
        let pk_rows = |rows: &mut Vec<Vec<BigInt>>| {
            for i in 0..n {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::from(self.modulus);
                rows.push(r);
            }
        };

        // m^1
        let mut rows: Vec<Vec<BigInt>> = ideal_gens.iter().map(|v| to_big(v)).collect();
        pk_rows(&mut rows);
        let mut current = hnf_rows(rows);

        let mut layer_count = 0usize;
        loop {
            // next power: products of the current basis with the ideal gens
            let mut rows: Vec<Vec<BigInt>> = Vec::new();
            for b in &current {
                let bu: Vec<u64> = b
                    .iter()
                    .map(|x| x.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap())
                    .collect();
                for a in &ideal_gens {
                    rows.push(to_big(&self.mul(&bu, a)));
                }
            }
            pk_rows(&mut rows);
            let next = hnf_rows(rows);
            if next == current {
                break;
            }
            // greedy F_p-basis of current/next from the HNF rows of current
            let mut span = next.clone();
            for b in &current {
                if !in_row_span(&span, b) {
                    let bu: Vec<u64> = b
                        .iter()
                        .map(|x| x.mod_floor(&BigInt::from(self.modulus)).to_u64().unwrap())
                        .collect();
                    let mut u = bu.clone();
                    u[0] = (u[0] + 1) % self.modulus;
                    gens.push(u);
                    layer_count += 1;
                    let mut rows = span;
                    rows.push(b.clone());
                    span = hnf_rows(rows);
                }
            }
            debug_assert!(current.iter().all(|b| in_row_span(&span, b)));
            current = next;
        }
        debug_assert_eq!(layer_count, self.k as usize * n - 1);
        gens
    }
}
