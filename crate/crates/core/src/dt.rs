//! The torsion quotient DT(Z_p[G]) = Nrd(M^*)/Nrd(Z_p[G]^*) for small odd
//! p-groups, computed through truncated arithmetic: the center of the maximal
//! order is a product of truncated cyclotomic valuation rings, unit groups
//! become finite abelian groups via polycyclic discrete logarithms, and the
//! quotient structure falls out of a Smith normal form. Precision is raised
//! until the invariant factors stabilize for two consecutive levels.

use crate::chars::{character_table, CharError, CharacterTable};
use crate::cyclo::euler_phi;
use crate::group::{GroupError, GroupRef, QuotientMap};
use crate::matint::{
    hnf_rows, invert_unimodular, row_times_mat, smith_normal_form, Smith,
};
use crate::ram::{global_c, n_of, GlobalExtData, RamError};
use crate::trunc::{ComponentLog, CycloModRing, GroupModRing, TruncError};
use num::bigint::{BigUint, Sign};
use num::{BigInt, One, Zero};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DtError {
    #[error("group of order {0} is not a {1}-group")]
    NotPGroup(usize, u64),
    #[error("invariant factors did not stabilize within the precision cap {0}")]
    PrecisionExhausted(u32),
    #[error("element is not a unit tuple")]
    NotUnit,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("component tuple does not match this engine (precision or shape)")]
    Mismatch,
    #[error("brute-force budget exceeded: ring size {0} elements")]
    BudgetExceeded(f64),
    #[error("quotient engine stabilized above the parent precision")]
    QuotientPrecision,
    #[error("internal dt computation failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Trunc(#[from] TruncError),
    #[error(transparent)]
    Ram(#[from] RamError),
}

/// One simple component M_{n}(Q_p(zeta_{p^m})) of the p-adic group algebra.
#[derive(Debug, Clone)]
pub struct WedderburnComponent {
    /// the field is Q_p(zeta_{p^conductor_exp})
    pub conductor_exp: u32,
    pub matrix_size: usize,
    /// representative irreducible (smallest table index in the orbit)
    pub rep_char: usize,
    /// Galois orbit of irreducible character indices
    pub orbit: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct WedderburnData {
    pub p: u64,
    pub table: Arc<CharacterTable>,
    pub components: Vec<WedderburnComponent>,
    /// character index -> component index
    pub component_of: Vec<usize>,
}

fn p_log(order: usize, p: u64) -> Option<u32> {
    let mut n = order;
    let mut a = 0;
    while n % p as usize == 0 {
        n /= p as usize;
        a += 1;
    }
    (n == 1).then_some(a)
}

/// Conductor (a power of p) of the value field of a character.
fn char_conductor(table: &CharacterTable, idx: usize, p: u64) -> Result<u64, DtError> {
    let mut cond = 1u64;
    for v in &table.irreducibles[idx].values {
        cond = cond.lcm(&v.conductor());
    }
    if p_log(cond as usize, p).is_none() {
        return Err(DtError::Internal(format!(
            "character value conductor {} is not a power of {}",
            cond, p
        )));
    }
    Ok(cond)
}

pub fn wedderburn(group: &GroupRef, p: u64) -> Result<WedderburnData, DtError> {
    let Some(_) = p_log(group.order, p) else {
        return Err(DtError::NotPGroup(group.order, p));
    };
    let table = character_table(group)?;
    let r = table.irreducibles.len();
    let mut component_of = vec![usize::MAX; r];
    let mut components = Vec::new();
    for idx in 0..r {
        if component_of[idx] != usize::MAX {
            continue;
        }
        let cond = char_conductor(&table, idx, p)?;
        // orbit under zeta -> zeta^a
        let mut orbit = vec![idx];
        component_of[idx] = components.len();
        for a in 2..cond {
            if a.gcd(&cond) != 1 {
                continue;
            }
            let twisted: Vec<_> = table.irreducibles[idx]
                .values
                .iter()
                .map(|v| v.galois_act(a as i64).unwrap())
                .collect();
            let j = table
                .irreducibles
                .iter()
                .position(|c| c.values == twisted)
                .ok_or_else(|| DtError::Internal("galois twist left the table".into()))?;
            if component_of[j] == usize::MAX {
                component_of[j] = components.len();
                orbit.push(j);
            }
        }
        let expected = if cond == 1 { 1 } else { euler_phi(cond) as usize };
        if orbit.len() != expected {
            return Err(DtError::Internal("galois orbit has unexpected size".into()));
        }
        orbit.sort_unstable();
        components.push(WedderburnComponent {
            conductor_exp: p_log(cond as usize, p).unwrap(),
            matrix_size: table.irreducibles[idx].degree_usize(),
            rep_char: idx,
            orbit,
        });
    }
    // dimension identity
    let dim: usize = components
        .iter()
        .map(|c| c.matrix_size * c.matrix_size * euler_phi(p.pow(c.conductor_exp)) as usize)
        .sum();
    if dim != group.order {
        return Err(DtError::Internal("wedderburn dimension identity failed".into()));
    }
    if components[0].rep_char != table.trivial_index() || components[0].conductor_exp != 0 {
        // keep the trivial block first
        let t = component_of[table.trivial_index()];
        components.swap(0, t);
        for c in component_of.iter_mut() {
            if *c == 0 {
                *c = t;
            } else if *c == t {
                *c = 0;
            }
        }
    }
    Ok(WedderburnData {
        p,
        table,
        components,
        component_of,
    })
}

/// A tuple of units, one per Wedderburn component, at a fixed precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentUnits {
    pub k: u32,
    pub comps: Vec<Vec<u64>>,
}

/// How a component's reduced norm is evaluated on truncated group-ring
/// elements.
enum CompEval {
    /// exponent of zeta per group element (linear character)
    Linear { exps: Vec<usize> },
    /// monomial matrices embedded in a larger cyclotomic ring; the det is
    /// extracted back to the component ring via the power-basis stride
    Matrix {
        big: CycloModRing,
        stride: usize,
        mats: Vec<Vec<Vec<Vec<u64>>>>,
    },
}

pub struct DtEngine {
    pub group: GroupRef,
    pub p: u64,
    pub k: u32,
    pub wd: WedderburnData,
    pub rings: Vec<CycloModRing>,
    pub logs: Vec<ComponentLog>,
    evals: Vec<CompEval>,
    smith: Smith,
    /// start offset of each component's coordinates in the global vector
    offsets: Vec<usize>,
    num_coords: usize,
    /// columns of the smith diagonal with entry > 1
    factor_positions: Vec<usize>,
    pub invariant_factors: Vec<u64>,
    /// representative unit tuples generating the quotient, one per factor
    pub quotient_gens: Vec<ComponentUnits>,
}

fn det_small(ring: &CycloModRing, m: &[Vec<Vec<u64>>]) -> Vec<u64> {
    let n = m.len();
    assert!(n <= 4, "determinant only needed for small matrix blocks");
    let mut acc = ring.zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |perm, sign| {
        let mut term = ring.one();
        for (r, &c) in perm.iter().enumerate() {
            term = ring.mul(&term, &m[r][c]);
        }
        if sign {
            acc = ring.add(&acc, &term);
        } else {
            acc = ring.sub(&acc, &term);
        }
    });
    acc
}

fn permute(perm: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize], bool)) {
    let n = perm.len();
    if at == n {
        // parity by counting inversions
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        f(perm, inv % 2 == 0);
        return;
    }
    for i in at..n {
        perm.swap(at, i);
        permute(perm, at + 1, f);
        perm.swap(at, i);
    }
}

pub fn default_precision_cap(group: &GroupRef, p: u64) -> u32 {
    let n = p_log(group.order, p).unwrap_or(1);
    2 * (n + 2)
}

pub fn dt_compute(group: &GroupRef, p: u64, cap: Option<u32>) -> Result<DtEngine, DtError> {
    let cap = cap.unwrap_or_else(|| default_precision_cap(group, p));
    let mut prev: Option<Vec<u64>> = None;
    for k in 2..=cap {
        let engine = DtEngine::build(group, p, k)?;
        if let Some(pf) = &prev {
            if *pf == engine.invariant_factors {
                return Ok(engine);
            }
        }
        prev = Some(engine.invariant_factors.clone());
    }
    Err(DtError::PrecisionExhausted(cap))
}

/// Engine at a fixed truncation level, without the stabilization loop;
/// mainly for oracle comparisons at a prescribed precision.
pub fn dt_at_precision(group: &GroupRef, p: u64, k: u32) -> Result<DtEngine, DtError> {
    DtEngine::build(group, p, k)
}

impl DtEngine {
    fn build(group: &GroupRef, p: u64, k: u32) -> Result<DtEngine, DtError> {
        let wd = wedderburn(group, p)?;
        let table = wd.table.clone();
        let mut rings = Vec::new();
        let mut evals = Vec::new();
        for comp in &wd.components {
            let ring = CycloModRing::new(p, comp.conductor_exp, k)?;
            let chi = &table.irreducibles[comp.rep_char];
            let eval = if comp.matrix_size == 1 {
                let exps = (0..group.order)
                    .map(|g| {
                        let v = table.value_at(chi, g);
                        let (ord, j) = v.is_root_of_unity().expect("linear values are roots of unity");
                        assert_eq!(ring.conductor % ord, 0);
                        (j * (ring.conductor / ord)) as usize
                    })
                    .collect();
                CompEval::Linear { exps }
            } else {
                let rep = table.monomial_rep(comp.rep_char)?;
                let mut cond = ring.conductor;
                for mats in &rep.mats {
                    for row in mats {
                        for e in row {
                            cond = cond.lcm(&e.conductor());
                        }
                    }
                }
                let big_m = p_log(cond as usize, p)
                    .ok_or_else(|| DtError::Internal("entry conductor not a p-power".into()))?;
                let big = CycloModRing::new(p, big_m, k)?;
                let stride = (big.conductor / ring.conductor) as usize;
                let mats = rep
                    .mats
                    .iter()
                    .map(|mat| {
                        mat.iter()
                            .map(|row| {
                                row.iter().map(|e| big.from_cyc(e).unwrap()).collect()
                            })
                            .collect()
                    })
                    .collect();
                CompEval::Matrix { big, stride, mats }
            };
            rings.push(ring);
            evals.push(eval);
        }
        let logs: Vec<ComponentLog> = rings
            .par_iter()
            .map(|r| ComponentLog::new(r.clone()))
            .collect();
        let mut offsets = Vec::with_capacity(logs.len());
        let mut num_coords = 0usize;
        for log in &logs {
            offsets.push(num_coords);
            num_coords += log.num_gens();
        }

        let mut engine = DtEngine {
            group: group.clone(),
            p,
            k,
            wd,
            rings,
            logs,
            evals,
            smith: Smith {
                diag: Vec::new(),
                v: Vec::new(),
            },
            offsets,
            num_coords,
            factor_positions: Vec::new(),
            invariant_factors: Vec::new(),
            quotient_gens: Vec::new(),
        };

        // relation rows of A = prod of component unit groups (block diagonal)
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (ci, log) in engine.logs.iter().enumerate() {
            let off = engine.offsets[ci];
            for rel in &log.relations {
                let mut row = vec![BigInt::zero(); engine.num_coords];
                row[off..off + rel.len()].clone_from_slice(rel);
                rows.push(row);
            }
        }
        // B rows: discrete logs of reduced norms of group-ring unit generators
        let gmr = GroupModRing::new(group.clone(), p, k)?;
        let gens = gmr.unit_generators();
        let b_rows: Vec<Vec<BigInt>> = gens
            .par_iter()
            .map(|u| {
                let tuple = engine.nrd_truncated(u).expect("generators are units");
                engine.dl_tuple(&tuple).expect("norms of units are units")
            })
            .collect();
        rows.extend(b_rows);

        let reduced = hnf_rows(rows);
        let smith = smith_normal_form(&reduced);
        if smith.diag.iter().any(Zero::is_zero) {
            return Err(DtError::Internal("quotient is not finite".into()));
        }
        let factor_positions: Vec<usize> = smith
            .diag
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > BigInt::one())
            .map(|(i, _)| i)
            .collect();
        let invariant_factors: Vec<u64> = factor_positions
            .iter()
            .map(|&i| smith.diag[i].to_u64().expect("small invariant factor"))
            .collect();
        // representative tuples for the quotient generators
        let vinv = invert_unimodular(&smith.v);
        let quotient_gens: Vec<ComponentUnits> = factor_positions
            .iter()
            .map(|&pos| engine.tuple_from_coords(&vinv[pos]))
            .collect();
        engine.smith = smith;
        engine.factor_positions = factor_positions;
        engine.invariant_factors = invariant_factors;
        engine.quotient_gens = quotient_gens;
        Ok(engine)
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn one_tuple(&self) -> ComponentUnits {
        ComponentUnits {
            k: self.k,
            comps: self.rings.iter().map(CycloModRing::one).collect(),
        }
    }

    pub fn mul_tuple(&self, a: &ComponentUnits, b: &ComponentUnits) -> ComponentUnits {
        ComponentUnits {
            k: self.k,
            comps: self
                .rings
                .iter()
                .zip(a.comps.iter().zip(&b.comps))
                .map(|(r, (x, y))| r.mul(x, y))
                .collect(),
        }
    }

    pub fn pow_tuple(&self, a: &ComponentUnits, e: u64) -> ComponentUnits {
        ComponentUnits {
            k: self.k,
            comps: self
                .rings
                .iter()
                .zip(&a.comps)
                .map(|(r, x)| r.pow(x, e))
                .collect(),
        }
    }

    /// Reduced norm of a truncated group-ring element, one unit per
    /// Wedderburn component; errors if the element is not a unit.
    pub fn nrd_truncated(&self, y: &[u64]) -> Result<ComponentUnits, DtError> {
        let gmr = GroupModRing::new(self.group.clone(), self.p, self.k)?;
        if !gmr.is_unit(y) {
            return Err(DtError::NotUnit);
        }
        let comps = self
            .rings
            .iter()
            .zip(&self.evals)
            .map(|(ring, eval)| match eval {
                CompEval::Linear { exps } => {
                    let mut poly = vec![0u64; ring.conductor.max(1) as usize];
                    for (g, &c) in y.iter().enumerate() {
                        if c != 0 {
                            poly[exps[g]] = (poly[exps[g]] + c) % ring.modulus;
                        }
                    }
                    ring.reduce(poly)
                }
                CompEval::Matrix { big, stride, mats } => {
                    let n = mats[0].len();
                    let mut m = vec![vec![big.zero(); n]; n];
                    for (g, &c) in y.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for r in 0..n {
                            for s in 0..n {
                                let t = big.scalar_mul(c, &mats[g][r][s]);
                                m[r][s] = big.add(&m[r][s], &t);
                            }
                        }
                    }
                    let det = det_small(big, &m);
                    // extract to the component ring along the stride
                    let mut out = ring.zero();
                    for (i, &c) in det.iter().enumerate() {
                        if i % stride == 0 {
                            out[i / stride] = c;
                        } else {
                            assert_eq!(c, 0, "determinant left the component subring");
                        }
                    }
                    out
                }
            })
            .collect();
        let tuple = ComponentUnits { k: self.k, comps };
        // residue sanity: u_i^(p-1) = 1 in the residue field
        debug_assert!(tuple
            .comps
            .iter()
            .zip(&self.rings)
            .all(|(u, r)| crate::trunc::mod_pow_u64(r.residue(u), self.p - 1, self.p) == 1));
        Ok(tuple)
    }

    /// Concatenated discrete-log coordinates of a unit tuple.
    pub fn dl_tuple(&self, x: &ComponentUnits) -> Option<Vec<BigInt>> {
        if x.k != self.k || x.comps.len() != self.logs.len() {
            return None;
        }
        let mut out = Vec::with_capacity(self.num_coords);
        for (log, comp) in self.logs.iter().zip(&x.comps) {
            let dl = log.dl(comp)?;
            out.extend(dl.into_iter().map(BigInt::from));
        }
        Some(out)
    }

    /// Rebuilds a unit tuple from (possibly negative, possibly large) global
    /// coordinates.
    pub fn tuple_from_coords(&self, coords: &[BigInt]) -> ComponentUnits {
        let comps = self
            .logs
            .iter()
            .enumerate()
            .map(|(ci, log)| {
                let off = self.offsets[ci];
                let ring = &log.ring;
                let mut acc = ring.one();
                for (gi, c) in coords[off..off + log.num_gens()].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let base = if c.sign() == Sign::Minus {
                        ring.inv(&log.gens[gi]).unwrap()
                    } else {
                        log.gens[gi].clone()
                    };
                    let e: BigUint = c.magnitude().clone();
                    acc = ring.mul(&acc, &ring.pow_big(&base, &e));
                }
                acc
            })
            .collect();
        ComponentUnits { k: self.k, comps }
    }

    /// Coordinates of the class of x in the invariant-factor presentation.
    pub fn dt_class(&self, x: &ComponentUnits) -> Result<Vec<u64>, DtError> {
        let coords = self.dl_tuple(x).ok_or(DtError::Mismatch)?;
        let transformed = row_times_mat(&coords, &self.smith.v);
        Ok(self
            .factor_positions
            .iter()
            .map(|&i| {
                transformed[i]
                    .mod_floor(&self.smith.diag[i])
                    .to_u64()
                    .expect("reduced coordinate is small")
            })
            .collect())
    }

    pub fn dt_membership(&self, x: &ComponentUnits) -> Result<bool, DtError> {
        Ok(self.dt_class(x)?.iter().all(|&c| c == 0))
    }

    /// Uniform random unit tuple (Teichmueller part times truncated
    /// one-units, drawn coordinate-wise).
    pub fn random_tuple(&self, rng: &mut ChaCha8Rng) -> ComponentUnits {
        let comps = self
            .logs
            .iter()
            .map(|log| {
                let coords: Vec<u64> = (0..log.num_gens())
                    .map(|i| {
                        if i == 0 {
                            rng.gen_range(0..self.p - 1)
                        } else {
                            rng.gen_range(0..self.p)
                        }
                    })
                    .collect();
                log.element_from_coords(&coords)
            })
            .collect();
        ComponentUnits { k: self.k, comps }
    }

    /// Embeds an exact center element (values per irreducible character)
    /// into a component tuple; values must be p-integral units.
    pub fn tuple_from_center(
        &self,
        x: &crate::center::CenterElement,
    ) -> Result<ComponentUnits, DtError> {
        if x.comps.len() != self.wd.table.irreducibles.len() {
            return Err(DtError::Mismatch);
        }
        let comps = self
            .wd
            .components
            .iter()
            .zip(&self.rings)
            .map(|(comp, ring)| Ok(ring.from_cyc(&x.comps[comp.rep_char])?))
            .collect::<Result<Vec<_>, DtError>>()?;
        let tuple = ComponentUnits { k: self.k, comps };
        if tuple
            .comps
            .iter()
            .zip(&self.rings)
            .any(|(u, r)| !r.is_unit(u))
        {
            return Err(DtError::NotUnit);
        }
        Ok(tuple)
    }

    /// Pushes a tuple down to the quotient by a normal subgroup: keeps the
    /// components whose characters kill the subgroup, with the Galois twist
    /// matching the inflation of the quotient's representative characters.
    pub fn project_quotient(
        &self,
        x: &ComponentUnits,
        target: &DtEngine,
        map: &QuotientMap,
    ) -> Result<ComponentUnits, DtError> {
        if target.k > self.k {
            return Err(DtError::QuotientPrecision);
        }
        if x.k != self.k {
            return Err(DtError::Mismatch);
        }
        let ptable = &self.wd.table;
        let qtable = &target.wd.table;
        let comps = target
            .wd
            .components
            .iter()
            .zip(&target.rings)
            .map(|(qcomp, qring)| {
                let psi = &qtable.irreducibles[qcomp.rep_char];
                // inflation of psi to the parent group, as class values
                let infl: Vec<_> = ptable
                    .reps
                    .iter()
                    .map(|&r| qtable.value_at(psi, map.map[r]).clone())
                    .collect();
                let idx = ptable
                    .irreducibles
                    .iter()
                    .position(|c| c.values == infl)
                    .ok_or_else(|| DtError::Internal("inflated character not found".into()))?;
                let ci = self.wd.component_of[idx];
                let comp = &self.wd.components[ci];
                if comp.conductor_exp != qcomp.conductor_exp {
                    return Err(DtError::Internal("inflation changed the conductor".into()));
                }
                // find the twist a with galois_a(rep) = inflated character
                let cond = self.rings[ci].conductor;
                let rep = &ptable.irreducibles[comp.rep_char];
                let mut twist = None;
                for a in 1..cond.max(2) {
                    if a.gcd(&cond) != 1 {
                        continue;
                    }
                    let tw: Vec<_> = rep
                        .values
                        .iter()
                        .map(|v| v.galois_act(a as i64).unwrap())
                        .collect();
                    if tw == infl {
                        twist = Some(a);
                        break;
                    }
                }
                let a = twist.ok_or_else(|| {
                    DtError::Internal("no galois twist matches the inflation".into())
                })?;
                let u = self.rings[ci].galois(&x.comps[ci], a);
                Ok(self.rings[ci].truncate_to(qring, &u))
            })
            .collect::<Result<Vec<_>, DtError>>()?;
        Ok(ComponentUnits {
            k: target.k,
            comps,
        })
    }

    /// Residue congruence u_i = u_0^{n_i} in the residue field of the i-th
    /// maximal ideal.
    pub fn congruence_check(&self, x: &ComponentUnits, i: usize) -> bool {
        assert!(i >= 1);
        let u0 = self.rings[0].residue(&x.comps[0]);
        let ui = self.rings[i].residue(&x.comps[i]);
        let n_i = self.wd.components[i].matrix_size as u64;
        ui == crate::trunc::mod_pow_u64(u0, n_i, self.p)
    }
}

// ---------------------------------------------------------------------------
// verification drivers

#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub exponent: u64,
    pub lower: u64,
    pub upper: u64,
    pub invariant_factors: Vec<u64>,
    pub precision: u32,
    pub ok: bool,
}

pub fn verify_exponent_bound(engine: &DtEngine) -> BoundReport {
    let e = engine.exponent();
    let lower = engine.p - 1;
    let upper = (engine.p - 1) * engine.group.order as u64 / engine.p;
    BoundReport {
        exponent: e,
        lower,
        upper,
        invariant_factors: engine.invariant_factors.clone(),
        precision: engine.k,
        ok: e % lower == 0 && upper % e == 0,
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct KernelReport {
    pub samples: usize,
    pub kernel_hits: usize,
    pub power_failures: usize,
    pub congruence_failures: usize,
    pub seed: u64,
}

impl KernelReport {
    pub fn ok(&self) -> bool {
        self.power_failures == 0 && self.congruence_failures == 0
    }
}

/// Samples random norm tuples; whenever one dies in every quotient attached
/// to an irreducible-character kernel, its |G|/p-th power must be a norm
/// from the group ring and the residue congruences must hold.
pub fn verify_kernel_exponent(
    engine: &DtEngine,
    samples: usize,
    seed: u64,
) -> Result<KernelReport, DtError> {
    let group = &engine.group;
    let xi = crate::chars::xi_set(&engine.wd.table);
    // quotient engines for each kernel
    let mut quotients = Vec::new();
    for delta in &xi {
        let (q, map) = group.quotient(delta)?;
        let qe = dt_compute(&q, engine.p, None)?;
        if qe.k > engine.k {
            return Err(DtError::QuotientPrecision);
        }
        quotients.push((qe, map));
    }
    let n_over_p = group.order as u64 / engine.p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kernel_hits = 0;
    let mut power_failures = 0;
    let mut congruence_failures = 0;
    for _ in 0..samples {
        let x = engine.random_tuple(&mut rng);
        let mut in_kernel = true;
        for (qe, map) in &quotients {
            let px = engine.project_quotient(&x, qe, map)?;
            if !qe.dt_membership(&px)? {
                in_kernel = false;
                break;
            }
        }
        if !in_kernel {
            continue;
        }
        kernel_hits += 1;
        let xp = engine.pow_tuple(&x, n_over_p);
        if !engine.dt_membership(&xp)? {
            power_failures += 1;
        }
        for i in 1..engine.wd.components.len() {
            if !engine.congruence_check(&x, i) {
                congruence_failures += 1;
                break;
            }
        }
    }
    Ok(KernelReport {
        samples,
        kernel_hits,
        power_failures,
        congruence_failures,
        seed,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct GlobalReport {
    pub n: usize,
    pub power: u64,
    pub vacuous: bool,
    pub class_trivial: bool,
}

/// Annihilation of the global twisted characteristic:
/// (n/p)-th power of the global c has trivial class in DT.
pub fn verify_global_annihilation(g: &GlobalExtData) -> Result<GlobalReport, DtError> {
    let table = character_table(&g.group)?;
    let c = global_c(&table, g)?;
    let n = n_of(g)?;
    let engine = dt_compute(&g.group, g.places[0].residue_char, None)?;
    if c.is_one() {
        return Ok(GlobalReport {
            n,
            power: n as u64 / engine.p,
            vacuous: true,
            class_trivial: true,
        });
    }
    let power = n as u64 / engine.p;
    let tuple = engine.tuple_from_center(&c)?;
    let powered = engine.pow_tuple(&tuple, power);
    let class_trivial = engine.dt_membership(&powered)?;
    Ok(GlobalReport {
        n,
        power,
        vacuous: false,
        class_trivial,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OracleReport {
    pub ring_size: u64,
    pub unit_count: u64,
    pub distinct_norms: usize,
    pub all_in_generated: bool,
}

/// Independent oracle: enumerates the full unit group of (Z/p^K)[G] and
/// checks every reduced norm lands in the generator-built subgroup.
pub fn brute_force_units(engine: &DtEngine) -> Result<OracleReport, DtError> {
    let n = engine.group.order;
    let size = (engine.p as f64).powi((engine.k as usize * n) as i32);
    if size > 1.2e7 {
        return Err(DtError::BudgetExceeded(size));
    }
    let total = (0..engine.k as usize * n).fold(1u64, |a, _| a * engine.p);
    let gmr = GroupModRing::new(engine.group.clone(), engine.p, engine.k)?;
    let modulus = gmr.modulus;

    // enumerate coefficient vectors in parallel over the leading coefficient
    let results: Vec<(u64, std::collections::HashSet<Vec<Vec<u64>>>)> = (0..modulus)
        .into_par_iter()
        .map(|lead| {
            let mut units = 0u64;
            let mut norms = std::collections::HashSet::new();
            let mut y = vec![0u64; n];
            y[0] = lead;
            loop {
                if gmr.is_unit(&y) {
                    units += 1;
                    let t = engine.nrd_truncated(&y).expect("unit");
                    norms.insert(t.comps);
                }
                // increment positions 1..n in base modulus
                let mut pos = 1;
                loop {
                    if pos == n {
                        return (units, norms);
                    }
                    y[pos] += 1;
                    if y[pos] < modulus {
                        break;
                    }
                    y[pos] = 0;
                    pos += 1;
                }
            }
        })
        .collect();
    let unit_count: u64 = results.iter().map(|(u, _)| u).sum();
    let mut all_norms = std::collections::HashSet::new();
    for (_, s) in results {
        all_norms.extend(s);
    }
    let distinct = all_norms.len();
    let mut all_in = true;
    for comps in all_norms {
        let tuple = ComponentUnits {
            k: engine.k,
            comps,
        };
        if !engine.dt_membership(&tuple)? {
            all_in = false;
            break;
        }
    }
    let _ = total;
    Ok(OracleReport {
        ring_size: total,
        unit_count,
        distinct_norms: distinct,
        all_in_generated: all_in,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelian_group, cyclic_group, heisenberg_27, trivial_group};

    #[test]
    fn wedderburn_examples() {
        let wd = wedderburn(&cyclic_group(3), 3).unwrap();
        assert_eq!(wd.components.len(), 2);
        assert_eq!(wd.components[0].conductor_exp, 0);
        assert_eq!(wd.components[1].conductor_exp, 1);

        let wd = wedderburn(&cyclic_group(9), 3).unwrap();
        let dims: Vec<u32> = wd.components.iter().map(|c| c.conductor_exp).collect();
        assert_eq!(dims, vec![0, 1, 2]);

        let wd = wedderburn(&heisenberg_27(), 3).unwrap();
        assert_eq!(wd.components.len(), 6);
        let mut shape: Vec<(usize, u32)> = wd
            .components
            .iter()
            .map(|c| (c.matrix_size, c.conductor_exp))
            .collect();
        shape.sort_unstable();
        assert_eq!(shape, vec![(1, 0), (1, 1), (1, 1), (1, 1), (1, 1), (3, 1)]);

        assert!(matches!(
            wedderburn(&cyclic_group(15), 3),
            Err(DtError::NotPGroup(15, 3))
        ));
    }

    #[test]
    fn nrd_truncated_basics() {
        let engine = DtEngine::build(&cyclic_group(3), 3, 3).unwrap();
        let one = engine.nrd_truncated(&[1, 0, 0]).unwrap();
        assert_eq!(one, engine.one_tuple());
        // a group generator maps to (1, chi(g)) for the representative chi
        let g = engine.nrd_truncated(&[0, 1, 0]).unwrap();
        assert_eq!(g.comps[0], engine.rings[0].one());
        let chi = &engine.wd.table.irreducibles[engine.wd.components[1].rep_char];
        let expect = engine.rings[1]
            .from_cyc(engine.wd.table.value_at(chi, 1))
            .unwrap();
        assert_eq!(g.comps[1], expect);
        // multiplicative on a sample
        let x = [1u64, 3, 0];
        let y = [2u64, 0, 9];
        let gmr = GroupModRing::new(cyclic_group(3), 3, 3).unwrap();
        let xy = gmr.mul(&x, &y);
        let nx = engine.nrd_truncated(&x).unwrap();
        let ny = engine.nrd_truncated(&y).unwrap();
        assert_eq!(engine.mul_tuple(&nx, &ny), engine.nrd_truncated(&xy).unwrap());
    }

    #[test]
    fn dt_c3_is_z2() {
        let engine = dt_compute(&cyclic_group(3), 3, None).unwrap();
        assert_eq!(engine.invariant_factors, vec![2]);
        // norms of units have trivial class
        let t = engine.nrd_truncated(&[1, 3, 6]).unwrap();
        assert!(engine.dt_membership(&t).unwrap());
        // a non-square scalar in the trivial component gives the nontrivial class
        let mut x = engine.one_tuple();
        x.comps[0] = engine.rings[0].scalar(engine.rings[0].teichmuller_scalar(2));
        assert!(!engine.dt_membership(&x).unwrap());
        let sq = engine.pow_tuple(&x, 2);
        assert!(engine.dt_membership(&sq).unwrap());
    }

    #[test]
    fn dt_trivial_group() {
        let engine = dt_compute(&trivial_group(), 3, None).unwrap();
        assert!(engine.invariant_factors.is_empty());
        assert_eq!(engine.exponent(), 1);
    }

    #[test]
    fn dt_c5_is_z4() {
        let engine = dt_compute(&cyclic_group(5), 5, None).unwrap();
        assert_eq!(engine.invariant_factors, vec![4]);
    }

    #[test]
    fn bounds_c9() {
        let engine = dt_compute(&cyclic_group(9), 3, None).unwrap();
        let report = verify_exponent_bound(&engine);
        assert!(report.ok, "bounds failed: {:?}", report);
    }

    #[test]
    fn quotient_projection_c9() {
        let g9 = cyclic_group(9);
        let engine = dt_compute(&g9, 3, None).unwrap();
        let delta = g9.generated_subgroup(&[3]);
        let (q, map) = g9.quotient(&delta).unwrap();
        let qe = dt_compute(&q, 3, None).unwrap();
        // projection respects multiplication on random tuples
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = engine.random_tuple(&mut rng);
            let b = engine.random_tuple(&mut rng);
            let pa = engine.project_quotient(&a, &qe, &map).unwrap();
            let pb = engine.project_quotient(&b, &qe, &map).unwrap();
            let pab = engine
                .project_quotient(&engine.mul_tuple(&a, &b), &qe, &map)
                .unwrap();
            assert_eq!(qe.mul_tuple(&pa, &pb), pab);
        }
        // norms project to norms: class dies in the quotient
        let t = engine.nrd_truncated(&[1, 3, 0, 0, 9, 0, 0, 0, 3]).unwrap();
        let pt = engine.project_quotient(&t, &qe, &map).unwrap();
        assert!(qe.dt_membership(&pt).unwrap());
    }

    #[test]
    fn kernel_exponent_c3c3_smoke() {
        let g = abelian_group("C3xC3", &[3, 3]).unwrap();
        let engine = dt_compute(&g, 3, None).unwrap();
        let report = verify_kernel_exponent(&engine, 25, 42).unwrap();
        assert!(report.ok(), "{:?}", report);
    }

    #[test]
    fn oracle_c3_small_precision() {
        let engine = DtEngine::build(&cyclic_group(3), 3, 2).unwrap();
        let report = brute_force_units(&engine).unwrap();
        assert_eq!(report.ring_size, 729);
        assert_eq!(report.unit_count, 486);
        assert!(report.all_in_generated);
    }

    #[test]
    fn congruence_examples() {
        let engine = dt_compute(&cyclic_group(3), 3, None).unwrap();
        let one = engine.one_tuple();
        for i in 1..engine.wd.components.len() {
            assert!(engine.congruence_check(&one, i));
        }
        // a norm satisfies the congruences
        let t = engine.nrd_truncated(&[2, 3, 3]).unwrap();
        for i in 1..engine.wd.components.len() {
            assert!(engine.congruence_check(&t, i));
        }
        // deliberately broken tuple fails
        let mut bad = engine.one_tuple();
        bad.comps[1] = engine.rings[1].scalar(2);
        assert!(!engine.congruence_check(&bad, 1));
    }
}
