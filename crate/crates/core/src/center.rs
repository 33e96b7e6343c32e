//! Group-ring elements over the cyclotomic field and the center of the
//! rational group algebra, represented through character components.
//!
//! A center element is stored as one cyclotomic value per irreducible
//! character; multiplication is componentwise. Reduced norms of group-ring
//! elements land here: linear characters evaluate directly, higher-degree
//! ones go through a monomial matrix representation and a determinant.

use crate::chars::{mat_det, restrict, subgroup_chars, CharError, CharacterTable, SubgroupChars};
use crate::cyclo::{Cyc, CycError};
use crate::group::{GroupRef, Subgroup};
use num::{BigInt, BigRational, One, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CenterError {
    #[error("operands belong to different groups")]
    Mismatch,
    #[error("component {0} is zero; element is not a unit")]
    NotUnit(usize),
    #[error("restriction multiplicity is not a nonnegative integer")]
    BadMultiplicity,
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// An element of the group algebra over the cyclotomic numbers,
/// coefficient-indexed by group element.
#[derive(Debug, Clone)]
pub struct GroupRingElement {
    pub group: GroupRef,
    pub coeffs: Vec<Cyc>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl GroupRingElement {
    pub fn zero(group: &GroupRef) -> Self {
        GroupRingElement {
            group: group.clone(),
            coeffs: vec![Cyc::zero(); group.order],
        }
    }

    pub fn one(group: &GroupRef) -> Self {
        Self::basis(group, 0)
    }

    /// The basis element corresponding to a single group element.
    pub fn basis(group: &GroupRef, g: usize) -> Self {
        let mut coeffs = vec![Cyc::zero(); group.order];
        coeffs[g] = Cyc::one();
        GroupRingElement {
            group: group.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.group.order, other.group.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.group.order, other.group.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.group.order, other.group.order);
        let mut coeffs = vec![Cyc::zero(); self.group.order];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let g = self.group.mul(a, b);
                coeffs[g] = coeffs[g].add(&ca.mul(cb));
            }
        }
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }
}

/// The central primitive idempotent attached to irreducible `idx`.
pub fn idempotent_char(table: &CharacterTable, idx: usize) -> GroupRingElement {
    let chi = &table.irreducibles[idx];
    let g = &table.group;
    let factor = chi.degree() / BigRational::from_integer(BigInt::from(g.order));
    let coeffs = (0..g.order)
        .map(|x| table.value_at(chi, g.inv(x)).scale(&factor))
        .collect();
    GroupRingElement {
        group: g.clone(),
        coeffs,
    }
}

/// The averaging idempotent of a subgroup: |D|^{-1} sum of its elements.
pub fn idempotent_subgroup(group: &GroupRef, d: &Subgroup) -> GroupRingElement {
    let factor = BigRational::new(BigInt::one(), BigInt::from(d.order()));
    let mut coeffs = vec![Cyc::zero(); group.order];
    for &x in &d.members {
        coeffs[x] = Cyc::from_rational(factor.clone());
    }
    GroupRingElement {
        group: group.clone(),
        coeffs,
    }
}

/// An element of the center of the group algebra, stored as one value per
/// irreducible character of the (fixed, shared) character table.
#[derive(Debug, Clone)]
pub struct CenterElement {
    pub table: Arc<CharacterTable>,
    pub comps: Vec<Cyc>,
}

impl PartialEq for CenterElement {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps
    }
}

impl CenterElement {
    pub fn one(table: &Arc<CharacterTable>) -> Self {
        CenterElement {
            table: table.clone(),
            comps: vec![Cyc::one(); table.irreducibles.len()],
        }
    }

    pub fn is_one(&self) -> bool {
        self.comps.iter().all(|c| *c == Cyc::one())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CenterError> {
        if !Arc::ptr_eq(&self.table, &other.table) && self.comps.len() != other.comps.len() {
            return Err(CenterError::Mismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(CenterElement {
            table: self.table.clone(),
            comps,
        })
    }

    pub fn inv(&self) -> Result<Self, CenterError> {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| c.inv().map_err(|_| CenterError::NotUnit(i)))
            .collect::<Result<_, _>>()?;
        Ok(CenterElement {
            table: self.table.clone(),
            comps,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, CenterError> {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| c.pow(e).map_err(|_| CenterError::NotUnit(i)))
            .collect::<Result<_, _>>()?;
        Ok(CenterElement {
            table: self.table.clone(),
            comps,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.comps
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    serde_json::json!({
                        "character": i,
                        "value": c,
                    })
                })
                .collect(),
        )
    }
}

/// Reduced norm of a group-ring element, one component per irreducible.
pub fn nrd(table: &Arc<CharacterTable>, x: &GroupRingElement) -> Result<CenterElement, CenterError> {
    if x.group.order != table.group.order {
        return Err(CenterError::Mismatch);
    }
    let mut comps = Vec::with_capacity(table.irreducibles.len());
    for (i, chi) in table.irreducibles.iter().enumerate() {
        let d = chi.degree_usize();
        if d == 1 {
            let mut acc = Cyc::zero();
            for (g, c) in x.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&c.mul(table.value_at(chi, g)));
                }
            }
            comps.push(acc);
        } else {
            let rep = table.monomial_rep(i)?;
            let mut m = vec![vec![Cyc::zero(); d]; d];
            for (g, c) in x.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for r in 0..d {
                    for s in 0..d {
                        if !rep.mats[g][r][s].is_zero() {
                            m[r][s] = m[r][s].add(&c.mul(&rep.mats[g][r][s]));
                        }
                    }
                }
            }
            comps.push(mat_det(&m));
        }
    }
    Ok(CenterElement {
        table: table.clone(),
        comps,
    })
}

/// The twist x -> x^m * (adams_k x)^n, componentwise through the permutation
/// of irreducibles induced by the k-th Adams operation.
pub fn twist(x: &CenterElement, m: i64, n: i64, k: i64) -> Result<CenterElement, CenterError> {
    let perm = x.table.adams_permutation(k)?;
    let comps = x
        .comps
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let a = c.pow(m).map_err(|_| CenterError::NotUnit(i))?;
            let b = x.comps[perm[i]]
                .pow(n)
                .map_err(|_| CenterError::NotUnit(perm[i]))?;
            Ok(a.mul(&b))
        })
        .collect::<Result<_, CenterError>>()?;
    Ok(CenterElement {
        table: x.table.clone(),
        comps,
    })
}

/// Pushes a center element of a subgroup up to the parent: the component at
/// an irreducible chi of the parent is the product over irreducibles phi of
/// the subgroup of x_phi to the multiplicity of phi in the restriction of chi.
pub fn induce_center(
    parent: &Arc<CharacterTable>,
    sub: &SubgroupChars,
    x: &CenterElement,
) -> Result<CenterElement, CenterError> {
    if x.comps.len() != sub.table.irreducibles.len() {
        return Err(CenterError::Mismatch);
    }
    let mut comps = Vec::with_capacity(parent.irreducibles.len());
    for chi in &parent.irreducibles {
        let res = restrict(parent, chi, sub);
        let mut acc = Cyc::one();
        for (j, phi) in sub.table.irreducibles.iter().enumerate() {
            let mult = sub.table.inner_product(&res, phi)?;
            if mult.is_zero() {
                continue;
            }
            if !mult.is_integer() || mult < BigRational::zero() {
                return Err(CenterError::BadMultiplicity);
            }
            let m: i64 = mult
                .to_integer()
                .try_into()
                .map_err(|_| CenterError::BadMultiplicity)?;
            let p = x.comps[j].pow(m).map_err(|_| CenterError::NotUnit(j))?;
            acc = acc.mul(&p);
        }
        comps.push(acc);
    }
    Ok(CenterElement {
        table: parent.clone(),
        comps,
    })
}

/// Convenience: subgroup context plus center machinery in one step.
pub fn subgroup_context(parent: &GroupRef, sub: &Subgroup) -> Result<SubgroupChars, CenterError> {
    Ok(subgroup_chars(parent, sub)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::character_table;
    use crate::group::{cyclic_group, heisenberg_27};

    fn sample_unit(g: &GroupRef, shift: i64) -> GroupRingElement {
        // 1 + c*g_1 with |c| > 1: every character component 1 + c*zeta is
        // nonzero, so the reduced norm is invertible
        let mut x = GroupRingElement::one(g);
        if g.order > 1 {
            x.coeffs[1] = Cyc::from_integer(shift + 2);
        }
        x
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        for i in 0..9 {
            let ei = idempotent_char(&t, i);
            assert_eq!(ei.mul(&ei), ei);
            for j in 0..9 {
                if i != j {
                    let ej = idempotent_char(&t, j);
                    assert_eq!(ei.mul(&ej), GroupRingElement::zero(&g));
                }
            }
        }
    }

    #[test]
    fn idempotent_sum_is_one() {
        for g in [cyclic_group(9), heisenberg_27()] {
            let t = character_table(&g).unwrap();
            let mut s = GroupRingElement::zero(&g);
            for i in 0..t.irreducibles.len() {
                s = s.add(&idempotent_char(&t, i));
            }
            assert_eq!(s, GroupRingElement::one(&g));
        }
    }

    #[test]
    fn subgroup_idempotent() {
        let g = cyclic_group(9);
        let h = g.generated_subgroup(&[3]);
        let e = idempotent_subgroup(&g, &h);
        assert_eq!(e.mul(&e), e);
        // h * e = e for h in the subgroup
        let b = GroupRingElement::basis(&g, 3);
        assert_eq!(b.mul(&e), e);
    }

    #[test]
    fn nrd_multiplicative() {
        for g in [cyclic_group(9), heisenberg_27()] {
            let t = character_table(&g).unwrap();
            let x = sample_unit(&g, 1);
            let y = sample_unit(&g, 2);
            let nx = nrd(&t, &x).unwrap();
            let ny = nrd(&t, &y).unwrap();
            let nxy = nrd(&t, &x.mul(&y)).unwrap();
            assert_eq!(nx.mul(&ny).unwrap(), nxy);
        }
    }

    #[test]
    fn nrd_of_group_element() {
        // nrd of a group element g has components chi(g) for linear chi and
        // det of the monomial matrix for the rest; all roots of unity
        let g = heisenberg_27();
        let t = character_table(&g).unwrap();
        for x in 0..g.order {
            let n = nrd(&t, &GroupRingElement::basis(&g, x)).unwrap();
            for c in &n.comps {
                assert!(c.is_root_of_unity().is_some());
            }
        }
    }

    #[test]
    fn twist_laws() {
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        let x = nrd(&t, &sample_unit(&g, 1)).unwrap();
        // m=1, n=0 is the identity twist
        assert_eq!(twist(&x, 1, 0, 2).unwrap(), x);
        // twisting the identity element gives the identity
        let one = CenterElement::one(&t);
        assert_eq!(twist(&one, 5, -3, 2).unwrap(), one);
        // (1, -1)-twist of x times the (1, -1)-twist applied to adams-permuted
        // components multiplies back to a coherent value: check via inverse
        let tw = twist(&x, 1, -1, 2).unwrap();
        let back = twist(&tw, 1, 1, 2);
        assert!(back.is_ok());
    }

    #[test]
    fn induce_from_trivial_subgroup() {
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        let triv = g.generated_subgroup(&[]);
        let sub = subgroup_context(&g, &triv).unwrap();
        let mut x = CenterElement::one(&sub.table);
        x.comps[0] = Cyc::from_integer(2);
        // restriction of each linear character to {1} is the trivial character
        let ind = induce_center(&t, &sub, &x).unwrap();
        assert!(ind.comps.iter().all(|c| *c == Cyc::from_integer(2)));
    }

    #[test]
    fn induce_transitivity_c27() {
        let g27 = cyclic_group(27);
        let t27 = character_table(&g27).unwrap();
        // chain C_3 < C_9 < C_27
        let h9 = g27.generated_subgroup(&[3]);
        let sub9 = subgroup_context(&g27, &h9).unwrap();
        let h3_in_9 = sub9.group.generated_subgroup(&[{
            // element of order 3 inside the materialized C_9
            (0..sub9.group.order)
                .find(|&x| sub9.group.order_of(x) == 3)
                .unwrap()
        }]);
        let sub3_of_9 = subgroup_context(&sub9.group, &h3_in_9).unwrap();
        // the same C_3 directly inside C_27
        let h3 = g27.generated_subgroup(&[9]);
        let sub3 = subgroup_context(&g27, &h3).unwrap();

        // a center element of the C_3 level built from a unit
        let x3 = nrd(&sub3.table, &sample_unit(&sub3.group, 1)).unwrap();
        let x3_alt = nrd(&sub3_of_9.table, &sample_unit(&sub3_of_9.group, 1)).unwrap();
        let via_9 = induce_center(
            &t27,
            &sub9,
            &induce_center(&sub9.table, &sub3_of_9, &x3_alt).unwrap(),
        )
        .unwrap();
        let direct = induce_center(&t27, &sub3, &x3).unwrap();
        assert_eq!(via_9, direct);
    }
}
