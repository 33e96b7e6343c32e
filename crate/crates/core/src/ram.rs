//! Ramification data of local Galois extensions, the unramified
//! characteristic y, the twisted unramified characteristic c (computed two
//! ways and cross-checked), and the global assembly over wild places.
//!
//! Number fields are never modeled: a "place" is exactly its group-theoretic
//! datum (group, ramification filtration, Frobenius lift, residue
//! characteristic).

use crate::center::{
    idempotent_subgroup, induce_center, nrd, CenterElement, CenterError, GroupRingElement,
};
use crate::chars::{character_table, subgroup_chars, CharError, CharacterTable, SubgroupChars};
use crate::cyclo::Cyc;
use crate::group::{load_group, GroupDoc, GroupError, GroupRef, Subgroup};
use serde::Deserialize;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RamError {
    #[error("{0} is not a subgroup")]
    NotSubgroup(&'static str),
    #[error("{0} is not normal in the group")]
    NotNormal(&'static str),
    #[error("ramification filtration is not a descending chain")]
    BadFiltration,
    #[error("the quotient by inertia is not cyclic with the Frobenius image as generator")]
    FrobeniusNotGenerator,
    #[error("residue characteristic {0} is not an odd prime")]
    BadResidueChar(u64),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("datum is not weakly ramified (second ramification group nontrivial)")]
    NotWeaklyRamified,
    #[error("validation checks failed: {0}")]
    ValidationFailed(String),
    #[error("wild place {0} is tame (trivial wild inertia); tame places must not be listed")]
    TamePlace(usize),
    #[error("global datum lists no wild places")]
    NoWildPlaces,
    #[error("twist formula and closed-form reduced norm disagree")]
    ClosedFormMismatch,
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Center(#[from] CenterError),
}

/// Local ramification datum: group, inertia filtration, Frobenius lift,
/// residue characteristic.
#[derive(Debug, Clone)]
pub struct LocalRamData {
    pub group: GroupRef,
    /// inertia subgroup (0-th ramification group)
    pub inertia: Subgroup,
    /// wild inertia (1st ramification group)
    pub ram1: Subgroup,
    /// 2nd ramification group; trivial iff weakly ramified
    pub ram2: Subgroup,
    /// a lift of the canonical generator of group/inertia
    pub frobenius: usize,
    pub residue_char: u64,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.ok).map(|c| c.name).collect()
    }
}

fn is_prime_u64(n: u64) -> bool {
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

fn is_power_of(mut n: usize, p: u64) -> bool {
    while n % p as usize == 0 {
        n /= p as usize;
    }
    n == 1
}

impl LocalRamData {
    pub fn weakly_ramified(&self) -> bool {
        self.ram2.order() == 1
    }

    pub fn wild(&self) -> bool {
        self.ram1.order() > 1
    }

    /// Index of inertia, i.e. the residue degree |group/inertia|.
    pub fn inertia_index(&self) -> usize {
        self.group.order / self.inertia.order()
    }

    /// Structural validation (hard errors) followed by the claim checks
    /// (listed one by one in the report).
    pub fn validate(&self) -> Result<ValidationReport, RamError> {
        let g = &self.group;
        if self.frobenius >= g.order {
            return Err(RamError::BadIndex(self.frobenius));
        }
        for (name, sub) in [
            ("inertia", &self.inertia),
            ("ram1", &self.ram1),
            ("ram2", &self.ram2),
        ] {
            if !g.is_subgroup(sub) {
                return Err(RamError::NotSubgroup(name));
            }
            if !g.is_normal(sub) {
                return Err(RamError::NotNormal(name));
            }
        }
        if !self.ram2.is_subset_of(&self.ram1) || !self.ram1.is_subset_of(&self.inertia) {
            return Err(RamError::BadFiltration);
        }
        if !is_prime_u64(self.residue_char) || self.residue_char == 2 {
            return Err(RamError::BadResidueChar(self.residue_char));
        }
        // group/inertia must be cyclic, generated by the Frobenius image:
        // the least t > 0 with frobenius^t in inertia must be the full index
        let index = self.inertia_index();
        let mut t = 1usize;
        let mut pw = self.frobenius;
        while !self.inertia.contains(pw) {
            pw = g.mul(pw, self.frobenius);
            t += 1;
        }
        if t != index {
            return Err(RamError::FrobeniusNotGenerator);
        }

        let ell = self.residue_char;
        let mut checks = Vec::new();
        checks.push(Check {
            name: "wild-inertia-is-ell-group",
            ok: is_power_of(self.ram1.order(), ell),
        });
        checks.push(Check {
            name: "tame-index-coprime-to-ell",
            ok: (self.inertia.order() / self.ram1.order()) as u64 % ell != 0,
        });
        let weak_exponent_ok = if self.weakly_ramified() && self.ram1.order() > 1 {
            let (h, _) = g.subgroup_group(&self.ram1);
            h.is_abelian() && h.exponent() == ell
        } else {
            true
        };
        checks.push(Check {
            name: "weak-wild-inertia-abelian-exponent-ell",
            ok: weak_exponent_ok,
        });
        // abelian inertia with trivial second ramification group is an
        // ell-group or cyclic of order coprime to ell
        let (inertia_grp, _) = g.subgroup_group(&self.inertia);
        let abelian_inertia_ok = if inertia_grp.is_abelian() && self.weakly_ramified() {
            let n = self.inertia.order();
            is_power_of(n, ell)
                || (n as u64 % ell != 0
                    && (0..inertia_grp.order).any(|x| inertia_grp.order_of(x) as usize == n))
        } else {
            true
        };
        checks.push(Check {
            name: "abelian-inertia-structure",
            ok: abelian_inertia_ok,
        });
        Ok(ValidationReport { checks })
    }

    pub fn validate_strict(&self) -> Result<(), RamError> {
        let report = self.validate()?;
        if !report.ok() {
            return Err(RamError::ValidationFailed(report.failed().join(", ")));
        }
        Ok(())
    }
}

/// True iff the character is unramified for the datum: inertia lies in its
/// kernel, so it factors through the cyclic quotient by inertia.
pub fn is_unramified_char(
    table: &CharacterTable,
    chi_idx: usize,
    d: &LocalRamData,
) -> bool {
    let ker = table.kernel(&table.irreducibles[chi_idx]);
    d.inertia.is_subset_of(&ker)
}

/// Value of the unramified characteristic at one irreducible:
/// 1 for ramified characters, (-1)^deg * chi(frobenius) for unramified ones.
pub fn unram_char_value(table: &CharacterTable, chi_idx: usize, d: &LocalRamData) -> Cyc {
    if !is_unramified_char(table, chi_idx, d) {
        return Cyc::one();
    }
    let chi = &table.irreducibles[chi_idx];
    let v = table.value_at(chi, d.frobenius).clone();
    if chi.degree_usize() % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// The equivariant unramified characteristic as a center element.
pub fn equivariant_y(table: &Arc<CharacterTable>, d: &LocalRamData) -> CenterElement {
    let comps = (0..table.irreducibles.len())
        .map(|i| unram_char_value(table, i, d))
        .collect();
    CenterElement {
        table: table.clone(),
        comps,
    }
}

/// The twisted unramified characteristic, computed both as the Adams-2 twist
/// of y and as the reduced norm of the closed-form group-ring element
/// (1 - e) + frobenius^{-1} e, where e averages the inertia subgroup.
/// The two routes must agree; disagreement is a hard error.
pub fn twisted_c(table: &Arc<CharacterTable>, d: &LocalRamData) -> Result<CenterElement, RamError> {
    d.validate_strict()?;
    if !d.weakly_ramified() {
        return Err(RamError::NotWeaklyRamified);
    }
    let y = equivariant_y(table, d);
    let via_twist = crate::center::twist(&y, 1, -1, 2)?;

    let g = &d.group;
    let e = idempotent_subgroup(g, &d.inertia);
    let one = GroupRingElement::one(g);
    let sig_inv = GroupRingElement::basis(g, g.inv(d.frobenius));
    let closed = one.sub(&e).add(&sig_inv.mul(&e));
    let via_nrd = nrd(table, &closed)?;

    if via_twist != via_nrd {
        return Err(RamError::ClosedFormMismatch);
    }
    Ok(via_twist)
}

/// Least m >= 1 with the m-th power of the twisted characteristic trivial;
/// always divides the inertia index.
pub fn annihilation_exponent(
    table: &Arc<CharacterTable>,
    d: &LocalRamData,
) -> Result<u64, RamError> {
    let c = twisted_c(table, d)?;
    let index = d.inertia_index() as u64;
    let mut acc = c.clone();
    for m in 1..=index {
        if acc.is_one() {
            assert_eq!(index % m, 0, "annihilation exponent must divide the inertia index");
            return Ok(m);
        }
        acc = acc.mul(&c)?;
    }
    Err(RamError::Malformed(
        "twisted characteristic not annihilated by the inertia index".into(),
    ))
}

/// One wild place of a global datum: a decomposition subgroup of the ambient
/// group together with a local datum living on it.
#[derive(Debug, Clone)]
pub struct WildPlace {
    pub residue_char: u64,
    pub decomposition: Subgroup,
    /// local datum on the materialized decomposition subgroup
    pub local: LocalRamData,
}

#[derive(Debug, Clone)]
pub struct GlobalExtData {
    pub group: GroupRef,
    pub places: Vec<WildPlace>,
}

impl GlobalExtData {
    pub fn validate(&self) -> Result<(), RamError> {
        for (i, place) in self.places.iter().enumerate() {
            if !self.group.is_subgroup(&place.decomposition) {
                return Err(RamError::NotSubgroup("decomposition"));
            }
            if place.local.group.order != place.decomposition.order() {
                return Err(RamError::Malformed(format!(
                    "place {}: local datum group does not match its decomposition subgroup",
                    i
                )));
            }
            if place.local.residue_char != place.residue_char {
                return Err(RamError::Malformed(format!(
                    "place {}: residue characteristic mismatch",
                    i
                )));
            }
            if !place.local.wild() {
                return Err(RamError::TamePlace(i));
            }
            place.local.validate_strict()?;
            if !place.local.weakly_ramified() {
                return Err(RamError::NotWeaklyRamified);
            }
        }
        Ok(())
    }
}

/// Global twisted characteristic: product over wild places of the induced
/// local twisted characteristics. Empty place list gives the identity.
pub fn global_c(
    table: &Arc<CharacterTable>,
    g: &GlobalExtData,
) -> Result<CenterElement, RamError> {
    g.validate()?;
    let mut acc = CenterElement::one(table);
    for place in &g.places {
        let sub = subgroup_chars(&g.group, &place.decomposition)?;
        let local = twisted_c(&sub.table, &place.local)?;
        let induced = induce_center(table, &sub, &local)?;
        acc = acc.mul(&induced)?;
    }
    Ok(acc)
}

/// Largest decomposition subgroup order among the wild places.
pub fn n_of(g: &GlobalExtData) -> Result<usize, RamError> {
    g.places
        .iter()
        .map(|p| p.decomposition.order())
        .max()
        .ok_or(RamError::NoWildPlaces)
}

// ---------------------------------------------------------------------------
// file formats

#[derive(Debug, Deserialize)]
pub struct LocalDoc {
    #[serde(default)]
    pub group: Option<GroupDoc>,
    pub inertia: Vec<usize>,
    pub ram1: Vec<usize>,
    pub ram2: Vec<usize>,
    pub frobenius: usize,
    pub residue_char: u64,
}

#[derive(Debug, Deserialize)]
pub struct PlaceDoc {
    pub residue_char: u64,
    pub decomposition: Vec<usize>,
    pub local: LocalDoc,
}

#[derive(Debug, Deserialize)]
pub struct GlobalDoc {
    pub group: GroupDoc,
    pub wild_places: Vec<PlaceDoc>,
}

fn subgroup_from_indices(group: &GroupRef, indices: &[usize], what: &'static str) -> Result<Subgroup, RamError> {
    let mut members: Vec<usize> = indices.to_vec();
    for &i in &members {
        if i >= group.order {
            return Err(RamError::BadIndex(i));
        }
    }
    members.sort_unstable();
    members.dedup();
    if !members.contains(&0) {
        members.insert(0, 0);
        members.dedup();
    }
    let sub = Subgroup { members };
    if !group.is_subgroup(&sub) {
        return Err(RamError::NotSubgroup(what));
    }
    Ok(sub)
}

/// Builds a local datum whose indices refer to `group` directly.
pub fn local_on_group(group: &GroupRef, doc: &LocalDoc) -> Result<LocalRamData, RamError> {
    if doc.frobenius >= group.order {
        return Err(RamError::BadIndex(doc.frobenius));
    }
    Ok(LocalRamData {
        group: group.clone(),
        inertia: subgroup_from_indices(group, &doc.inertia, "inertia")?,
        ram1: subgroup_from_indices(group, &doc.ram1, "ram1")?,
        ram2: subgroup_from_indices(group, &doc.ram2, "ram2")?,
        frobenius: doc.frobenius,
        residue_char: doc.residue_char,
    })
}

pub fn load_local(doc: &LocalDoc) -> Result<LocalRamData, RamError> {
    let gd = doc
        .group
        .as_ref()
        .ok_or_else(|| RamError::Malformed("standalone local datum needs a group".into()))?;
    let group = load_group(gd)?;
    local_on_group(&group, doc)
}

pub fn load_local_json(json: &str) -> Result<LocalRamData, RamError> {
    let doc: LocalDoc =
        serde_json::from_str(json).map_err(|e| RamError::Malformed(e.to_string()))?;
    load_local(&doc)
}

pub fn load_global(doc: &GlobalDoc) -> Result<GlobalExtData, RamError> {
    let group = load_group(&doc.group)?;
    let mut places = Vec::with_capacity(doc.wild_places.len());
    for (pi, place) in doc.wild_places.iter().enumerate() {
        let decomposition = subgroup_from_indices(&group, &place.decomposition, "decomposition")?;
        let (sub_group, embed) = group.subgroup_group(&decomposition);
        // local indices are positions in the place's decomposition list;
        // translate through the parent element to the materialized index
        let mut pos_of_parent = vec![usize::MAX; group.order];
        for (i, &e) in embed.iter().enumerate() {
            pos_of_parent[e] = i;
        }
        let translate = |idx: usize| -> Result<usize, RamError> {
            let parent = *place
                .decomposition
                .get(idx)
                .ok_or(RamError::BadIndex(idx))?;
            let pos = pos_of_parent[parent];
            if pos == usize::MAX {
                return Err(RamError::Malformed(format!(
                    "place {}: index {} not in the decomposition subgroup",
                    pi, idx
                )));
            }
            Ok(pos)
        };
        let translate_all = |v: &[usize]| -> Result<Vec<usize>, RamError> {
            v.iter().map(|&i| translate(i)).collect()
        };
        let local_doc = LocalDoc {
            group: None,
            inertia: translate_all(&place.local.inertia)?,
            ram1: translate_all(&place.local.ram1)?,
            ram2: translate_all(&place.local.ram2)?,
            frobenius: translate(place.local.frobenius)?,
            residue_char: place.local.residue_char,
        };
        let local = local_on_group(&sub_group, &local_doc)?;
        places.push(WildPlace {
            residue_char: place.residue_char,
            decomposition,
            local,
        });
    }
    let data = GlobalExtData { group, places };
    data.validate()?;
    Ok(data)
}

pub fn load_global_json(json: &str) -> Result<GlobalExtData, RamError> {
    let doc: GlobalDoc =
        serde_json::from_str(json).map_err(|e| RamError::Malformed(e.to_string()))?;
    load_global(&doc)
}

/// All local data on the group that pass strict validation with the given
/// residue characteristic: normal inertia subgroups with cyclic quotient
/// (of exponent dividing ell when wild), paired with every admissible
/// Frobenius lift. Deterministic order, suitable for seeded sampling.
pub fn admissible_local_data(group: &GroupRef, ell: u64) -> Vec<LocalRamData> {
    let mut out = Vec::new();
    for delta in group.normal_subgroups() {
        for sigma in 0..group.order {
            let d = LocalRamData {
                group: group.clone(),
                inertia: delta.clone(),
                ram1: delta.clone(),
                ram2: Subgroup::trivial(),
                frobenius: sigma,
                residue_char: ell,
            };
            if d.validate_strict().is_ok() {
                out.push(d);
            }
        }
    }
    out
}

// convenience: tables for a datum's group
pub fn table_of(d: &LocalRamData) -> Result<Arc<CharacterTable>, RamError> {
    Ok(character_table(&d.group)?)
}

pub fn subgroup_of_place(
    g: &GlobalExtData,
    place: &WildPlace,
) -> Result<SubgroupChars, RamError> {
    Ok(subgroup_chars(&g.group, &place.decomposition)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;

    fn c9_wild_datum() -> LocalRamData {
        let g = cyclic_group(9);
        LocalRamData {
            inertia: g.generated_subgroup(&[3]),
            ram1: g.generated_subgroup(&[3]),
            ram2: Subgroup::trivial(),
            frobenius: 1,
            residue_char: 3,
            group: g,
        }
    }

    fn totally_ramified(n: u64, ell: u64) -> LocalRamData {
        let g = cyclic_group(n);
        LocalRamData {
            inertia: Subgroup::full(g.order),
            ram1: g.generated_subgroup(&[(g.order / ell as usize).min(g.order - 1)]),
            ram2: Subgroup::trivial(),
            frobenius: 0,
            residue_char: ell,
            group: g,
        }
    }

    fn unramified(n: u64, ell: u64) -> LocalRamData {
        let g = cyclic_group(n);
        LocalRamData {
            inertia: Subgroup::trivial(),
            ram1: Subgroup::trivial(),
            ram2: Subgroup::trivial(),
            frobenius: 1,
            residue_char: ell,
            group: g,
        }
    }

    #[test]
    fn validator_accepts_and_rejects() {
        assert!(c9_wild_datum().validate().unwrap().ok());
        assert!(unramified(9, 5).validate().unwrap().ok());
        // fully wild C_9 has wild inertia of exponent 9: rejected under
        // trivial second ramification group
        let g = cyclic_group(9);
        let bad = LocalRamData {
            inertia: Subgroup::full(9),
            ram1: Subgroup::full(9),
            ram2: Subgroup::trivial(),
            frobenius: 0,
            residue_char: 3,
            group: g,
        };
        let report = bad.validate().unwrap();
        assert!(!report.ok());
        assert!(report
            .failed()
            .contains(&"weak-wild-inertia-abelian-exponent-ell"));
        // bad frobenius: non-generating lift
        let g = cyclic_group(9);
        let bad = LocalRamData {
            inertia: g.generated_subgroup(&[]),
            ram1: Subgroup::trivial(),
            ram2: Subgroup::trivial(),
            frobenius: 3,
            residue_char: 5,
            group: g,
        };
        assert!(matches!(
            bad.validate(),
            Err(RamError::FrobeniusNotGenerator)
        ));
    }

    #[test]
    fn unram_values() {
        let d = totally_ramified(3, 3);
        let t = table_of(&d).unwrap();
        let y = equivariant_y(&t, &d);
        // only the trivial character is unramified: -1 there, 1 elsewhere
        for (i, c) in y.comps.iter().enumerate() {
            if i == t.trivial_index() {
                assert_eq!(*c, Cyc::from_integer(-1));
            } else {
                assert_eq!(*c, Cyc::one());
            }
        }
        // unramified C_3: components are minus the character values at sigma
        let d = unramified(3, 5);
        let t = table_of(&d).unwrap();
        let y = equivariant_y(&t, &d);
        for (i, chi) in t.irreducibles.iter().enumerate() {
            assert_eq!(y.comps[i], t.value_at(chi, 1).neg());
        }
    }

    #[test]
    fn twisted_c_examples() {
        // totally ramified: closed form is 1, c is all-ones
        let d = totally_ramified(3, 3);
        let t = table_of(&d).unwrap();
        let c = twisted_c(&t, &d).unwrap();
        assert!(c.is_one());
        assert_eq!(annihilation_exponent(&t, &d).unwrap(), 1);

        // wildly but weakly ramified C_9: exponent divides 3, nontrivial
        let d = c9_wild_datum();
        let t = table_of(&d).unwrap();
        let c = twisted_c(&t, &d).unwrap();
        assert!(!c.is_one());
        assert!(c.pow(3).unwrap().is_one());
        let m = annihilation_exponent(&t, &d).unwrap();
        assert!(m == 3);

        // unramified with sigma of order 9: exponent 9
        let d = unramified(9, 5);
        let t = table_of(&d).unwrap();
        assert_eq!(annihilation_exponent(&t, &d).unwrap(), 9);
    }

    #[test]
    fn frobenius_lift_independence() {
        let d = c9_wild_datum();
        let t = table_of(&d).unwrap();
        let c = twisted_c(&t, &d).unwrap();
        for &delta in &d.inertia.members {
            let mut d2 = d.clone();
            d2.frobenius = d.group.mul(d.frobenius, delta);
            let c2 = twisted_c(&t, &d2).unwrap();
            assert_eq!(c, c2);
        }
    }

    #[test]
    fn global_assembly() {
        // single wild place with full decomposition group equals the local c
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        let local = c9_wild_datum();
        let data = GlobalExtData {
            group: g.clone(),
            places: vec![WildPlace {
                residue_char: 3,
                decomposition: Subgroup::full(9),
                local: local.clone(),
            }],
        };
        let gc = global_c(&t, &data).unwrap();
        let lc = twisted_c(&t, &local).unwrap();
        assert_eq!(gc, lc);
        assert_eq!(n_of(&data).unwrap(), 9);

        // empty list: identity for the product, error for n
        let empty = GlobalExtData {
            group: g.clone(),
            places: vec![],
        };
        assert!(global_c(&t, &empty).unwrap().is_one());
        assert!(matches!(n_of(&empty), Err(RamError::NoWildPlaces)));

        // a tame place is rejected
        let tame = GlobalExtData {
            group: g.clone(),
            places: vec![WildPlace {
                residue_char: 5,
                decomposition: Subgroup::full(9),
                local: unramified(9, 5),
            }],
        };
        assert!(matches!(global_c(&t, &tame), Err(RamError::TamePlace(0))));
    }

    #[test]
    fn place_reorder_invariance() {
        let g = cyclic_group(9);
        let t = character_table(&g).unwrap();
        let h3 = g.generated_subgroup(&[3]);
        let (sub, _) = g.subgroup_group(&h3);
        let local_small = LocalRamData {
            inertia: Subgroup::full(3),
            ram1: Subgroup::full(3),
            ram2: Subgroup::trivial(),
            frobenius: 0,
            residue_char: 3,
            group: sub,
        };
        let p1 = WildPlace {
            residue_char: 3,
            decomposition: Subgroup::full(9),
            local: c9_wild_datum(),
        };
        let p2 = WildPlace {
            residue_char: 3,
            decomposition: h3.clone(),
            local: local_small,
        };
        let a = GlobalExtData {
            group: g.clone(),
            places: vec![p1.clone(), p2.clone()],
        };
        let b = GlobalExtData {
            group: g.clone(),
            places: vec![p2, p1],
        };
        assert_eq!(global_c(&t, &a).unwrap(), global_c(&t, &b).unwrap());
    }

    #[test]
    fn json_loading() {
        let local = r#"{
            "group": {"abelian": [9], "name": "C9"},
            "inertia": [0, 3, 6],
            "ram1": [0, 3, 6],
            "ram2": [0],
            "frobenius": 1,
            "residue_char": 3
        }"#;
        let d = load_local_json(local).unwrap();
        assert!(d.validate().unwrap().ok());
        assert!(d.weakly_ramified() && d.wild());

        let global = r#"{
            "group": {"abelian": [9], "name": "C9"},
            "wild_places": [{
                "residue_char": 3,
                "decomposition": [0, 1, 2, 3, 4, 5, 6, 7, 8],
                "local": {
                    "inertia": [0, 3, 6],
                    "ram1": [0, 3, 6],
                    "ram2": [0],
                    "frobenius": 1,
                    "residue_char": 3
                }
            }]
        }"#;
        let g = load_global_json(global).unwrap();
        assert_eq!(n_of(&g).unwrap(), 9);
        let t = character_table(&g.group).unwrap();
        let c = global_c(&t, &g).unwrap();
        assert!(c.pow(3).unwrap().is_one());
    }
}
