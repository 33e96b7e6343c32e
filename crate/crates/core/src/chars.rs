//! Irreducible characters of odd-order groups, Adams operators, restriction,
//! kernels, and monomial matrix representations.
//!
//! Abelian tables come from the inductive extension construction on a chain of
//! cyclic steps; nonabelian tables use the modular (Dixon) method over a prime
//! q = 1 mod exp(G), lifted exactly to cyclotomic values.

use crate::cyclo::{canonical_root, Cyc};
use crate::group::{GroupRef, Subgroup};
use num::{BigInt, BigRational, One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CharError {
    #[error("group has even order {0}; the theory here is odd-order only")]
    EvenOrder(usize),
    #[error("group order {0} exceeds the supported bound 81")]
    TooLarge(usize),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("inner product is not rational")]
    NonRational,
    #[error("no inducing subgroup/linear-character pair found for character {0}")]
    NoMonomialPair(usize),
    #[error("adams operator with k={0} does not permute the irreducibles")]
    NotPermutation(i64),
    #[error("not a subgroup of the parent group")]
    NotSubgroup,
    #[error("internal character computation failure: {0}")]
    Internal(String),
}

/// A class function, one exact value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Cyc>,
}

impl ClassFunction {
    pub fn degree(&self) -> BigRational {
        self.values[0]
            .as_rational()
            .expect("degree is rational")
    }

    pub fn degree_usize(&self) -> usize {
        let d = self.degree();
        assert!(d.is_integer());
        let (s, digits) = d.to_integer().to_u64_digits();
        assert!(s != num::bigint::Sign::Minus);
        if digits.is_empty() {
            0
        } else {
            digits[0] as usize
        }
    }
}

/// A monomial matrix representation: entries are 0 or roots of unity.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub dim: usize,
    /// one matrix per group element
    pub mats: Vec<Vec<Vec<Cyc>>>,
}

#[derive(Debug)]
pub struct CharacterTable {
    pub group: GroupRef,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub irreducibles: Vec<ClassFunction>,
    monomial_cache: Mutex<HashMap<usize, Arc<MatrixRep>>>,
}

pub fn character_table(group: &GroupRef) -> Result<Arc<CharacterTable>, CharError> {
    if group.order % 2 == 0 {
        return Err(CharError::EvenOrder(group.order));
    }
    if group.order > 81 {
        return Err(CharError::TooLarge(group.order));
    }
    let classes = group.conjugacy_classes();
    let mut class_of = vec![0usize; group.order];
    for (i, c) in classes.iter().enumerate() {
        for &g in c {
            class_of[g] = i;
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let mut irreducibles = if group.is_abelian() {
        abelian_characters(group, &class_of, classes.len())
    } else {
        dixon_characters(group, &classes, &class_of, &reps)?
    };
    irreducibles.sort_by(|a, b| {
        let da = a.degree();
        let db = b.degree();
        da.cmp(&db).then_with(|| {
            let ka: Vec<_> = a.values.iter().map(Cyc::sort_key).collect();
            let kb: Vec<_> = b.values.iter().map(Cyc::sort_key).collect();
            ka.cmp(&kb)
        })
    });
    let table = CharacterTable {
        group: group.clone(),
        classes,
        class_of,
        reps,
        irreducibles,
        monomial_cache: Mutex::new(HashMap::new()),
    };
    table.check_complete()?;
    Ok(Arc::new(table))
}

impl CharacterTable {
    fn check_complete(&self) -> Result<(), CharError> {
        if self.irreducibles.len() != self.classes.len() {
            return Err(CharError::Internal(format!(
                "found {} irreducibles for {} classes",
                self.irreducibles.len(),
                self.classes.len()
            )));
        }
        let sum: BigRational = self
            .irreducibles
            .iter()
            .map(|c| {
                let d = c.degree();
                &d * &d
            })
            .sum();
        if sum != BigRational::from_integer(BigInt::from(self.group.order)) {
            return Err(CharError::Internal(
                "degree sum does not match the group order".into(),
            ));
        }
        Ok(())
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Value of a class function at a group element.
    pub fn value_at<'a>(&self, f: &'a ClassFunction, g: usize) -> &'a Cyc {
        &f.values[self.class_of[g]]
    }

    /// Exact inner product (1/|G|) sum_g f(g) conj(h(g)).
    pub fn inner_product(&self, f: &ClassFunction, h: &ClassFunction) -> Result<BigRational, CharError> {
        if f.values.len() != self.classes.len() || h.values.len() != self.classes.len() {
            return Err(CharError::GroupMismatch);
        }
        let mut acc = Cyc::zero();
        for (i, c) in self.classes.iter().enumerate() {
            let term = f.values[i].mul(&h.values[i].conj());
            acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(c.len()))));
        }
        let acc = acc.scale(&BigRational::new(BigInt::one(), BigInt::from(self.group.order)));
        acc.as_rational().ok_or(CharError::NonRational)
    }

    /// The k-th Adams operation: value at the class of g is f(g^k).
    pub fn adams(&self, f: &ClassFunction, k: i64) -> ClassFunction {
        let values = self
            .reps
            .iter()
            .map(|&r| f.values[self.class_of[self.group.pow(r, k)]].clone())
            .collect();
        ClassFunction { values }
    }

    /// The permutation of the irreducibles induced by adams(_, k); errors if
    /// some image is not in the table.
    pub fn adams_permutation(&self, k: i64) -> Result<Vec<usize>, CharError> {
        let mut perm = Vec::with_capacity(self.irreducibles.len());
        let mut seen = vec![false; self.irreducibles.len()];
        for chi in &self.irreducibles {
            let image = self.adams(chi, k);
            let Some(j) = self.irreducibles.iter().position(|c| *c == image) else {
                return Err(CharError::NotPermutation(k));
            };
            if seen[j] {
                return Err(CharError::NotPermutation(k));
            }
            seen[j] = true;
            perm.push(j);
        }
        Ok(perm)
    }

    /// Kernel of a character: elements where the value equals the degree.
    pub fn kernel(&self, f: &ClassFunction) -> Subgroup {
        let members = (0..self.group.order)
            .filter(|&g| *self.value_at(f, g) == f.values[0])
            .collect();
        Subgroup { members }
    }

    /// Decomposes a class function into irreducible multiplicities.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigRational>, CharError> {
        self.irreducibles
            .iter()
            .map(|chi| self.inner_product(f, chi))
            .collect()
    }

    pub fn trivial_index(&self) -> usize {
        self.irreducibles
            .iter()
            .position(|c| c.values.iter().all(|v| *v == Cyc::one()))
            .expect("table contains the trivial character")
    }

    /// A monomial matrix representation affording irreducible `idx`.
    pub fn monomial_rep(&self, idx: usize) -> Result<Arc<MatrixRep>, CharError> {
        if let Some(r) = self.monomial_cache.lock().unwrap().get(&idx) {
            return Ok(r.clone());
        }
        let rep = Arc::new(self.build_monomial_rep(idx)?);
        self.monomial_cache.lock().unwrap().insert(idx, rep.clone());
        Ok(rep)
    }

    fn build_monomial_rep(&self, idx: usize) -> Result<MatrixRep, CharError> {
        let chi = &self.irreducibles[idx];
        let d = chi.degree_usize();
        let g = &self.group;
        if d == 1 {
            let mats = (0..g.order)
                .map(|x| vec![vec![self.value_at(chi, x).clone()]])
                .collect();
            return Ok(MatrixRep { dim: 1, mats });
        }
        if g.order % d != 0 {
            return Err(CharError::NoMonomialPair(idx));
        }
        let target_order = g.order / d;
        let mut subgroups: Vec<Subgroup> = g
            .all_subgroups()
            .into_iter()
            .filter(|h| h.order() == target_order)
            .collect();
        subgroups.sort();
        for h in &subgroups {
            let sub = subgroup_chars(g, h)?;
            for (li, lam) in sub.table.irreducibles.iter().enumerate() {
                if lam.degree_usize() != 1 {
                    continue;
                }
                let induced = induced_character(self, &sub, lam);
                if induced != *chi {
                    continue;
                }
                let rep = build_induced_rep(self, &sub, li)?;
                // trace check against chi for every element
                for x in 0..g.order {
                    let tr = mat_trace(&rep.mats[x]);
                    if tr != *self.value_at(chi, x) {
                        return Err(CharError::Internal(format!(
                            "induced representation trace mismatch at element {}",
                            x
                        )));
                    }
                }
                return Ok(rep);
            }
        }
        Err(CharError::NoMonomialPair(idx))
    }
}

/// A subgroup materialized with its own character table.
pub struct SubgroupChars {
    pub group: GroupRef,
    /// subgroup element index -> parent element index
    pub embed: Vec<usize>,
    pub table: Arc<CharacterTable>,
}

pub fn subgroup_chars(parent: &GroupRef, sub: &Subgroup) -> Result<SubgroupChars, CharError> {
    if !parent.is_subgroup(sub) {
        return Err(CharError::NotSubgroup);
    }
    let (group, embed) = parent.subgroup_group(sub);
    let table = character_table(&group)?;
    Ok(SubgroupChars { group, embed, table })
}

/// Restriction of a class function on the parent to the subgroup.
pub fn restrict(parent: &CharacterTable, f: &ClassFunction, sub: &SubgroupChars) -> ClassFunction {
    let values = sub
        .table
        .reps
        .iter()
        .map(|&r| f.values[parent.class_of[sub.embed[r]]].clone())
        .collect();
    ClassFunction { values }
}

/// Character induced from a class function on the subgroup.
pub fn induced_character(
    parent: &CharacterTable,
    sub: &SubgroupChars,
    f: &ClassFunction,
) -> ClassFunction {
    let g = &parent.group;
    let mut parent_pos = vec![usize::MAX; g.order];
    for (i, &e) in sub.embed.iter().enumerate() {
        parent_pos[e] = i;
    }
    let h_order = BigRational::from_integer(BigInt::from(sub.group.order));
    let values = parent
        .reps
        .iter()
        .map(|&r| {
            let mut acc = Cyc::zero();
            for x in 0..g.order {
                let conj = g.mul(g.mul(g.inv(x), r), x);
                if parent_pos[conj] != usize::MAX {
                    acc = acc.add(sub.table.value_at(f, parent_pos[conj]));
                }
            }
            acc.scale(&h_order.recip())
        })
        .collect();
    ClassFunction { values }
}

/// Kernels of the irreducible characters, deduplicated.
pub fn xi_set(table: &CharacterTable) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = Vec::new();
    for chi in &table.irreducibles {
        let k = table.kernel(chi);
        if !out.contains(&k) {
            out.push(k);
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// abelian tables

fn abelian_characters(group: &GroupRef, class_of: &[usize], num_classes: usize) -> Vec<ClassFunction> {
    assert_eq!(num_classes, group.order);
    // chain of cyclic extensions; characters carried as full value vectors
    let mut members: Vec<usize> = vec![0];
    let mut in_h = vec![false; group.order];
    in_h[0] = true;
    let mut chars: Vec<Vec<Cyc>> = vec![{
        let mut v = vec![Cyc::zero(); group.order];
        v[0] = Cyc::one();
        v
    }];
    while members.len() < group.order {
        let g = (0..group.order).find(|&x| !in_h[x]).unwrap();
        // relative order of g over the current subgroup
        let mut m = 1u64;
        let mut pw = g;
        while !in_h[pw] {
            pw = group.mul(pw, g);
            m += 1;
        }
        let mut next_chars = Vec::with_capacity(chars.len() * m as usize);
        for chi in &chars {
            let at_gm = &chi[pw];
            let (ord, j) = at_gm
                .is_root_of_unity()
                .expect("character value is a root of unity");
            let big = m * ord;
            let zeta = canonical_root(big);
            for i in 0..m {
                let t = zeta.pow((j + ord * i) as i64).unwrap();
                let mut v = vec![Cyc::zero(); group.order];
                let mut tpow = Cyc::one();
                let mut ga = 0usize; // g^a
                for _ in 0..m {
                    for &h in &members {
                        v[group.mul(ga, h)] = tpow.mul(&chi[h]);
                    }
                    tpow = tpow.mul(&t);
                    ga = group.mul(ga, g);
                }
                next_chars.push(v);
            }
        }
        // extend the subgroup
        let mut new_members = Vec::with_capacity(members.len() * m as usize);
        let mut ga = 0usize;
        for _ in 0..m {
            for &h in &members {
                let x = group.mul(ga, h);
                new_members.push(x);
                in_h[x] = true;
            }
            ga = group.mul(ga, g);
        }
        members = new_members;
        chars = next_chars;
    }
    chars
        .into_iter()
        .map(|v| {
            let mut values = vec![Cyc::zero(); group.order];
            for (g, val) in v.into_iter().enumerate() {
                values[class_of[g]] = val;
            }
            ClassFunction { values }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Dixon's modular method

fn mod_pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, q: u64) -> u64 {
    mod_pow(a, q - 2, q)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(q: u64) -> u64 {
    let factors: Vec<u64> = crate::cyclo::divisors(q - 1)
        .into_iter()
        .filter(|&d| is_prime(d))
        .collect();
    (2..q)
        .find(|&w| factors.iter().all(|&f| mod_pow(w, (q - 1) / f, q) != 1))
        .expect("primitive root exists")
}

fn dixon_characters(
    group: &GroupRef,
    classes: &[Vec<usize>],
    class_of: &[usize],
    reps: &[usize],
) -> Result<Vec<ClassFunction>, CharError> {
    let r = classes.len();
    let n = group.order as u64;
    let e = group.exponent();
    let q = {
        let mut q = 2 * n + 1;
        // smallest prime q = 1 mod e with q > 2|G|
        while !(is_prime(q) && (q - 1) % e == 0) {
            q += 1;
        }
        q
    };
    let w = primitive_root(q);

    // class matrices over F_q: m[i][j][k] = #{ x in C_i : x^{-1} z_k in C_j }
    let mut class_mats: Vec<Vec<Vec<u64>>> = Vec::with_capacity(r);
    for ci in classes {
        let mut m = vec![vec![0u64; r]; r];
        for &x in ci {
            let xi = group.inv(x);
            for (k, &zk) in reps.iter().enumerate() {
                let j = class_of[group.mul(xi, zk)];
                m[j][k] = (m[j][k] + 1) % q;
            }
        }
        class_mats.push(m);
    }

    // split the full space into common eigenvectors
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for m in class_mats.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let a = restrict_matrix(m, &basis, q);
            let pieces = eigen_split(&a, q);
            for ker in pieces {
                // lift back: each kernel vector is in terms of the basis
                let lifted: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        let mut v = vec![0u64; r];
                        for (t, &ct) in c.iter().enumerate() {
                            for s in 0..r {
                                v[s] = (v[s] + ct * basis[t][s]) % q;
                            }
                        }
                        v
                    })
                    .collect();
                next.push(lifted);
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.len() != 1) {
        return Err(CharError::Internal("eigenspace splitting failed".into()));
    }

    let inv_class_of: Vec<usize> = reps.iter().map(|&z| class_of[group.inv(z)]).collect();
    let mut result = Vec::with_capacity(r);
    for space in spaces {
        let mut omega = space.into_iter().next().unwrap();
        let norm = mod_inv(omega[0], q);
        for x in omega.iter_mut() {
            *x = *x * norm % q;
        }
        // degree from the orthogonality relation
        let mut s = 0u64;
        for j in 0..r {
            let t = omega[j] * omega[inv_class_of[j]] % q;
            s = (s + t * mod_inv(classes[j].len() as u64 % q, q)) % q;
        }
        let d2 = n % q * mod_inv(s, q) % q;
        let deg = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|&d| d * d % q == d2)
            .ok_or_else(|| CharError::Internal("no valid degree".into()))?;
        let chi_q: Vec<u64> = (0..r)
            .map(|j| omega[j] * deg % q * mod_inv(classes[j].len() as u64 % q, q) % q)
            .collect();
        // exact lift via discrete fourier inversion over each element order
        let mut values = Vec::with_capacity(r);
        for (j, &rep) in reps.iter().enumerate() {
            let o = group.order_of(rep);
            let z = mod_pow(w, (q - 1) / o, q);
            let zinv = mod_inv(z, q);
            let oinv = mod_inv(o % q, q);
            let mut coeffs = vec![BigRational::zero(); o as usize];
            for (s, c) in coeffs.iter_mut().enumerate() {
                let mut acc = 0u64;
                let mut zk = 1u64; // z^{-s k}
                let step = mod_pow(zinv, s as u64, q);
                let mut pw = rep;
                for _k in 0..o {
                    // chi_q at class of rep^k; k runs 0..o with pw = rep^k
                    let term = chi_q[class_of[if _k == 0 { 0 } else { pw }]];
                    acc = (acc + term * zk) % q;
                    zk = zk * step % q;
                    if _k > 0 {
                        pw = group.mul(pw, rep);
                    }
                }
                let m = acc * oinv % q;
                if m > n {
                    return Err(CharError::Internal("bad multiplicity in lift".into()));
                }
                *c = BigRational::from_integer(BigInt::from(m));
            }
            let val = Cyc::from_powers(o, coeffs).unwrap();
            debug_assert_eq!(j, j);
            values.push(val);
        }
        result.push(ClassFunction { values });
    }
    Ok(result)
}

/// Expresses the action of `m` on the span of `basis` in that basis.
fn restrict_matrix(m: &[Vec<u64>], basis: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let r = basis[0].len();
    let d = basis.len();
    // images m * v_s
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| {
            (0..r)
                .map(|j| {
                    let mut acc = 0u64;
                    for (k, &vk) in v.iter().enumerate() {
                        acc = (acc + m[j][k] * vk) % q;
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // solve basis-matrix * a = image for each image
    let mut aug: Vec<Vec<u64>> = (0..r)
        .map(|row| {
            let mut line: Vec<u64> = basis.iter().map(|v| v[row]).collect();
            line.extend(images.iter().map(|im| im[row]));
            line
        })
        .collect();
    let cols = d + images.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..d {
        let Some(row) = (pr..r).find(|&i| aug[i][c] != 0) else {
            panic!("basis vectors are dependent");
        };
        aug.swap(pr, row);
        let inv = mod_inv(aug[pr][c], q);
        for x in aug[pr].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..r {
            if i != pr && aug[i][c] != 0 {
                let f = aug[i][c];
                for cc in 0..cols {
                    aug[i][cc] = (aug[i][cc] + (q - f) * aug[pr][cc]) % q;
                }
            }
        }
        pivots.push(pr);
        pr += 1;
    }
    let mut a = vec![vec![0u64; d]; d];
    for (s, _) in images.iter().enumerate() {
        for t in 0..d {
            a[t][s] = aug[pivots[t]][d + s];
        }
    }
    a
}

/// Splits a (diagonalizable) matrix over F_q into its eigenspaces; returns
/// a kernel basis per eigenvalue found.
fn eigen_split(a: &[Vec<u64>], q: u64) -> Vec<Vec<Vec<u64>>> {
    let d = a.len();
    let mut out = Vec::new();
    let mut covered = 0;
    for lam in 0..q {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            (a[i][j] + q - lam % q) % q
                        } else {
                            a[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = kernel_basis(&shifted, q);
        if !ker.is_empty() {
            covered += ker.len();
            out.push(ker);
        }
        if covered == d {
            break;
        }
    }
    out
}

fn kernel_basis(m: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = m[0].len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let mut pivot_col = vec![usize::MAX; rows];
    let mut pr = 0;
    for c in 0..cols {
        let Some(row) = (pr..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(pr, row);
        let inv = mod_inv(a[pr][c], q);
        for x in a[pr].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows {
            if i != pr && a[i][c] != 0 {
                let f = a[i][c];
                for cc in 0..cols {
                    a[i][cc] = (a[i][cc] + (q - f) * a[pr][cc]) % q;
                }
            }
        }
        pivot_col[pr] = c;
        pr += 1;
        if pr == rows {
            break;
        }
    }
    let pivots: Vec<usize> = pivot_col[..pr].to_vec();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; cols];
            v[fc] = 1;
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - a[prow][fc]) % q;
            }
            v
        })
        .collect()
}

// ---------------------------------------------------------------------------
// induced representations

fn build_induced_rep(
    parent: &CharacterTable,
    sub: &SubgroupChars,
    lambda_idx: usize,
) -> Result<MatrixRep, CharError> {
    let g = &parent.group;
    let lam = &sub.table.irreducibles[lambda_idx];
    let mut parent_pos = vec![usize::MAX; g.order];
    for (i, &e) in sub.embed.iter().enumerate() {
        parent_pos[e] = i;
    }
    // left coset representatives, smallest-first
    let mut coset_of = vec![usize::MAX; g.order];
    let mut coset_reps = Vec::new();
    for x in 0..g.order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = coset_reps.len();
        coset_reps.push(x);
        for &h in &sub.embed {
            coset_of[g.mul(x, h)] = idx;
        }
    }
    let dim = coset_reps.len();
    let mats = (0..g.order)
        .map(|x| {
            let mut m = vec![vec![Cyc::zero(); dim]; dim];
            for (j, &tj) in coset_reps.iter().enumerate() {
                let xt = g.mul(x, tj);
                let i = coset_of[xt];
                let h = g.mul(g.inv(coset_reps[i]), xt);
                let hp = parent_pos[h];
                assert!(hp != usize::MAX);
                m[i][j] = sub.table.value_at(lam, hp).clone();
            }
            m
        })
        .collect();
    Ok(MatrixRep { dim, mats })
}

pub fn mat_mul(a: &[Vec<Cyc>], b: &[Vec<Cyc>]) -> Vec<Vec<Cyc>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Cyc::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[t][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][t].mul(&b[t][j]));
            }
        }
    }
    out
}

pub fn mat_trace(a: &[Vec<Cyc>]) -> Cyc {
    let mut acc = Cyc::zero();
    for (i, row) in a.iter().enumerate() {
        acc = acc.add(&row[i]);
    }
    acc
}

/// Determinant over the cyclotomic field, by fraction-free-ish Gaussian
/// elimination with exact division.
pub fn mat_det(a: &[Vec<Cyc>]) -> Cyc {
    let n = a.len();
    let mut m: Vec<Vec<Cyc>> = a.to_vec();
    let mut det = Cyc::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Cyc::zero();
        };
        if pr != c {
            m.swap(pr, c);
            det = det.neg();
        }
        let pivot = m[c][c].clone();
        det = det.mul(&pivot);
        let pinv = pivot.inv().unwrap();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].mul(&pinv);
            for cc in c..n {
                let t = f.mul(&m[c][cc]);
                m[r][cc] = m[r][cc].sub(&t);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_group, cyclic_group, heisenberg_27};

    #[test]
    fn c3_table() {
        let g = cyclic_group(3);
        let t = character_table(&g).unwrap();
        assert_eq!(t.irreducibles.len(), 3);
        assert!(t.irreducibles.iter().all(|c| c.degree_usize() == 1));
        for c in &t.irreducibles {
            assert!(c.values.iter().all(|v| v.conductor() == 1 || v.conductor() == 3));
        }
    }

    #[test]
    fn c3c3_table() {
        let g = abelian_group("C3xC3", &[3, 3]).unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.irreducibles.len(), 9);
        assert!(t.irreducibles.iter().all(|c| c.degree_usize() == 1));
    }

    #[test]
    fn heisenberg_table() {
        let g = heisenberg_27();
        let t = character_table(&g).unwrap();
        assert_eq!(t.irreducibles.len(), 11);
        let mut degs: Vec<usize> = t.irreducibles.iter().map(|c| c.degree_usize()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3]);
    }

    #[test]
    fn orthogonality() {
        for g in [cyclic_group(9), heisenberg_27()] {
            let t = character_table(&g).unwrap();
            for (i, a) in t.irreducibles.iter().enumerate() {
                for (j, b) in t.irreducibles.iter().enumerate() {
                    let ip = t.inner_product(a, b).unwrap();
                    let expect = if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    assert_eq!(ip, expect);
                }
            }
        }
    }

    #[test]
    fn even_order_rejected() {
        let g = cyclic_group(4);
        assert!(matches!(character_table(&g), Err(CharError::EvenOrder(4))));
    }

    #[test]
    fn adams_basics() {
        let g = cyclic_group(3);
        let t = character_table(&g).unwrap();
        for chi in &t.irreducibles {
            assert_eq!(t.adams(chi, 1), *chi);
        }
        // on C_3 the nontrivial characters get swapped by adams 2
        let perm = t.adams_permutation(2).unwrap();
        assert_eq!(perm[t.trivial_index()], t.trivial_index());
        let he = heisenberg_27();
        let t = character_table(&he).unwrap();
        let perm = t.adams_permutation(2).unwrap();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..11).collect::<Vec<_>>());
        // degree-3 characters: adams image still irreducible of degree 3
        for (i, chi) in t.irreducibles.iter().enumerate() {
            if chi.degree_usize() == 3 {
                let im = &t.irreducibles[perm[i]];
                assert_eq!(im.degree_usize(), 3);
                assert_eq!(t.inner_product(im, im).unwrap(), BigRational::one());
            }
        }
    }

    #[test]
    fn adams_composition() {
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        for chi in &t.irreducibles {
            let a = t.adams(&t.adams(chi, 2), 2);
            assert_eq!(a, t.adams(chi, 4));
        }
    }

    #[test]
    fn restriction_examples() {
        let c9 = cyclic_group(9);
        let t = character_table(&c9).unwrap();
        let h = c9.generated_subgroup(&[3]);
        let sub = subgroup_chars(&c9, &h).unwrap();
        for chi in &t.irreducibles {
            let r = restrict(&t, chi, &sub);
            // restriction of a linear character is again linear of C_3
            assert!(sub.table.irreducibles.contains(&r));
        }
        // heisenberg degree-3 restricted to the center is 3 * faithful linear
        let he = heisenberg_27();
        let t = character_table(&he).unwrap();
        let z = he.center();
        let sub = subgroup_chars(&he, &z).unwrap();
        let chi3 = t
            .irreducibles
            .iter()
            .find(|c| c.degree_usize() == 3)
            .unwrap();
        let r = restrict(&t, chi3, &sub);
        let decomp = sub.table.decompose(&r).unwrap();
        let three = BigRational::from_integer(BigInt::from(3));
        let hits: Vec<&BigRational> = decomp.iter().filter(|m| !m.is_zero()).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(*hits[0], three);
        // the inner products with the central characters are 3 or 0
        for lam in &sub.table.irreducibles {
            let ip = sub.table.inner_product(&r, lam).unwrap();
            assert!(ip.is_zero() || ip == three);
        }
    }

    #[test]
    fn kernels() {
        let c9 = cyclic_group(9);
        let t = character_table(&c9).unwrap();
        let triv = &t.irreducibles[t.trivial_index()];
        assert_eq!(t.kernel(triv).order(), 9);
        let faithful = t
            .irreducibles
            .iter()
            .find(|c| t.kernel(c).order() == 1)
            .expect("C_9 has a faithful character");
        assert_eq!(t.kernel(faithful).order(), 1);
        let he = heisenberg_27();
        let t = character_table(&he).unwrap();
        let chi3 = t.irreducibles.iter().find(|c| c.degree_usize() == 3).unwrap();
        assert_eq!(t.kernel(chi3).order(), 1);
        // kernel is normal and restriction to it is degree * trivial
        let k = t.kernel(chi3);
        assert!(he.is_normal(&k));
    }

    #[test]
    fn xi_sets() {
        let c9 = cyclic_group(9);
        let t = character_table(&c9).unwrap();
        let xi = xi_set(&t);
        assert!(xi.iter().any(|s| s.order() == 1));
        let c3c3 = abelian_group("C3xC3", &[3, 3]).unwrap();
        let t = character_table(&c3c3).unwrap();
        let xi = xi_set(&t);
        assert_eq!(xi.len(), 5);
        let mut orders: Vec<usize> = xi.iter().map(Subgroup::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![3, 3, 3, 3, 9]);
        // for abelian groups: Xi = subgroups with cyclic quotient
        let expected: Vec<Subgroup> = c3c3
            .all_subgroups()
            .into_iter()
            .filter(|h| {
                let (q, _) = c3c3.quotient(h).unwrap();
                let qord = q.order as u64;
                (0..q.order).any(|x| q.order_of(x) == qord)
            })
            .collect();
        assert_eq!(xi, expected);
        let he = heisenberg_27();
        let t = character_table(&he).unwrap();
        let xi = xi_set(&t);
        assert!(xi.iter().any(|s| s.order() == 1));
    }

    #[test]
    fn monomial_reps() {
        let c9 = cyclic_group(9);
        let t = character_table(&c9).unwrap();
        for i in 0..9 {
            let rep = t.monomial_rep(i).unwrap();
            assert_eq!(rep.dim, 1);
        }
        let he = heisenberg_27();
        let t = character_table(&he).unwrap();
        let idx = t
            .irreducibles
            .iter()
            .position(|c| c.degree_usize() == 3)
            .unwrap();
        let rep = t.monomial_rep(idx).unwrap();
        assert_eq!(rep.dim, 3);
        // multiplicativity, exhaustive
        for a in 0..27 {
            for b in 0..27 {
                let prod = mat_mul(&rep.mats[a], &rep.mats[b]);
                assert_eq!(prod, rep.mats[he.mul(a, b)]);
            }
        }
        // monomial: each entry 0 or a root of unity
        for m in &rep.mats {
            for row in m {
                for e in row {
                    assert!(e.is_zero() || e.is_root_of_unity().is_some());
                }
            }
        }
    }
}
