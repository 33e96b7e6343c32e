//! Finite groups as explicit multiplication tables, with the subgroup,
//! quotient and conjugacy machinery the rest of the crate consumes.
//!
//! Element index 0 is always the identity; loaders re-index if needed.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

pub type GroupRef = Arc<FiniteGroup>;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("multiplication table is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element found")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("table is not a latin square")]
    NotLatin,
    #[error("unknown builtin group '{0}'")]
    UnknownBuiltin(String),
    #[error("malformed group document: {0}")]
    Malformed(String),
    #[error("abelian invariant factors must all be >= 1")]
    BadInvariants,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup members are not closed under the group law")]
    NotClosed,
    #[error("group order {0} is even; only odd-order groups are supported")]
    EvenOrder(u64),
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteGroup {
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
}

/// A subgroup, stored as a sorted index set into its parent group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct QuotientMap {
    pub kernel: Subgroup,
    pub target: GroupRef,
    /// element index in the source -> element index in the target
    pub map: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a raw multiplication table and re-indexes so that the
    /// identity sits at index 0.
    pub fn from_table(
        name: impl Into<String>,
        elements: Vec<String>,
        mul: Vec<Vec<usize>>,
    ) -> Result<FiniteGroup, GroupError> {
        let n = elements.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(GroupError::Malformed("mul table shape mismatch".into()));
        }
        if mul
            .iter()
            .flatten()
            .any(|&x| x >= n)
        {
            return Err(GroupError::Malformed("mul index out of range".into()));
        }
        // locate the identity
        let id = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let (elements, mul) = if id == 0 {
            (elements, mul)
        } else {
            // swap identity into slot 0
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(0, id);
            let mut inv_perm = vec![0; n];
            for (i, &p) in perm.iter().enumerate() {
                inv_perm[p] = i;
            }
            let new_elements: Vec<String> = perm.iter().map(|&p| elements[p].clone()).collect();
            let mut new_mul = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    new_mul[i][j] = inv_perm[mul[perm[i]][perm[j]]];
                }
            }
            (new_elements, new_mul)
        };
        // latin square check
        for i in 0..n {
            let row: BTreeSet<usize> = mul[i].iter().copied().collect();
            let col: BTreeSet<usize> = (0..n).map(|j| mul[j][i]).collect();
            if row.len() != n || col.len() != n {
                return Err(GroupError::NotLatin);
            }
        }
        // associativity, exhaustive
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == 0 && mul[h][g] == 0)
                .ok_or(GroupError::NoInverse(g))?;
        }
        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            elements,
            mul,
            inv,
        })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let g = if k < 0 { self.inv[g] } else { g };
        let mut k = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(sq, sq);
            }
        }
        acc
    }

    pub fn order_of(&self, g: usize) -> u64 {
        let mut x = g;
        let mut o = 1u64;
        while x != 0 {
            x = self.mul(x, g);
            o += 1;
        }
        o
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1, |e, g| num_integer::lcm(e, self.order_of(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subgroup {
        let members = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup { members }
    }

    /// Conjugacy classes, each sorted, ordered by smallest member; the class
    /// of the identity comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for x in 0..self.order {
                class.insert(self.mul(self.mul(x, g), self.inv(x)));
            }
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// Closure of a generating set.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut members: BTreeSet<usize> = BTreeSet::new();
        members.insert(0);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if members.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        Subgroup {
            members: members.into_iter().collect(),
        }
    }

    /// Every subgroup. Seeds with all 1- and 2-generated subgroups, then
    /// closes under join; sufficient at this scale.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        set.insert(vec![0]);
        for a in 1..self.order {
            set.insert(self.generated_subgroup(&[a]).members);
            for b in a + 1..self.order {
                set.insert(self.generated_subgroup(&[a, b]).members);
            }
        }
        loop {
            let current: Vec<Vec<usize>> = set.iter().cloned().collect();
            let before = set.len();
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let mut gens = current[i].clone();
                    gens.extend_from_slice(&current[j]);
                    set.insert(self.generated_subgroup(&gens).members);
                }
            }
            if set.len() == before {
                break;
            }
        }
        set.into_iter().map(|members| Subgroup { members }).collect()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let set: BTreeSet<usize> = h.members.iter().copied().collect();
        h.members.iter().all(|&m| {
            (0..self.order).all(|g| set.contains(&self.mul(self.mul(g, m), self.inv(g))))
        })
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups()
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect()
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        let set: BTreeSet<usize> = h.members.iter().copied().collect();
        set.contains(&0)
            && h.members.iter().all(|&a| {
                set.contains(&self.inv(a)) && h.members.iter().all(|&b| set.contains(&self.mul(a, b)))
            })
    }

    /// Quotient by a normal subgroup. Coset of the identity is indexed 0;
    /// remaining cosets are ordered by their smallest member.
    pub fn quotient(self: &Arc<Self>, n: &Subgroup) -> Result<(GroupRef, QuotientMap), GroupError> {
        if !self.is_subgroup(n) {
            return Err(GroupError::NotClosed);
        }
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut coset_reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = coset_reps.len();
            coset_reps.push(g);
            for &m in &n.members {
                coset_of[self.mul(g, m)] = idx;
            }
        }
        let q = coset_reps.len();
        let mut mul = vec![vec![0usize; q]; q];
        for (i, &a) in coset_reps.iter().enumerate() {
            for (j, &b) in coset_reps.iter().enumerate() {
                mul[i][j] = coset_of[self.mul(a, b)];
            }
        }
        let elements: Vec<String> = coset_reps
            .iter()
            .map(|&r| format!("{}N", self.elements[r]))
            .collect();
        let target = Arc::new(FiniteGroup::from_table(
            format!("{}/N{}", self.name, n.members.len()),
            elements,
            mul,
        )?);
        Ok((
            target.clone(),
            QuotientMap {
                kernel: n.clone(),
                target,
                map: coset_of,
            },
        ))
    }

    /// Materializes a subgroup as a group in its own right, together with the
    /// map from subgroup indices back to parent indices.
    pub fn subgroup_group(&self, h: &Subgroup) -> (GroupRef, Vec<usize>) {
        let k = h.members.len();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &m) in h.members.iter().enumerate() {
            pos[m] = i;
        }
        let mut mul = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                mul[i][j] = pos[self.mul(h.members[i], h.members[j])];
            }
        }
        let elements = h.members.iter().map(|&m| self.elements[m].clone()).collect();
        let g = FiniteGroup::from_table(format!("{}<{}>", self.name, k), elements, mul)
            .expect("subgroup table is a group");
        (Arc::new(g), h.members.clone())
    }
}

impl Subgroup {
    pub fn trivial() -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn full(order: usize) -> Subgroup {
        Subgroup {
            members: (0..order).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

/// JSON group document: a full table, abelian invariant factors, or a builtin.
#[derive(Debug, Clone, Deserialize)]
pub struct GroupDoc {
    pub name: Option<String>,
    pub order: Option<usize>,
    pub elements: Option<Vec<String>>,
    pub mul: Option<Vec<Vec<usize>>>,
    pub abelian: Option<Vec<u64>>,
    pub builtin: Option<String>,
}

pub fn load_group(doc: &GroupDoc) -> Result<GroupRef, GroupError> {
    if let Some(name) = &doc.builtin {
        return match name.as_str() {
            "heisenberg-27" => Ok(heisenberg_27()),
            other => Err(GroupError::UnknownBuiltin(other.to_string())),
        };
    }
    if let Some(invs) = &doc.abelian {
        let name = doc
            .name
            .clone()
            .unwrap_or_else(|| format!("C{}", invs.iter().map(u64::to_string).collect::<Vec<_>>().join("x")));
        return abelian_group(&name, invs);
    }
    match (&doc.elements, &doc.mul) {
        (Some(elements), Some(mul)) => {
            if let Some(order) = doc.order {
                if order != elements.len() {
                    return Err(GroupError::Malformed("order field disagrees with elements".into()));
                }
            }
            let name = doc.name.clone().unwrap_or_else(|| "G".to_string());
            Ok(Arc::new(FiniteGroup::from_table(name, elements.clone(), mul.clone())?))
        }
        _ => Err(GroupError::Malformed(
            "expected one of: builtin, abelian, or elements+mul".into(),
        )),
    }
}

pub fn load_group_json(json: &str) -> Result<GroupRef, GroupError> {
    let doc: GroupDoc =
        serde_json::from_str(json).map_err(|e| GroupError::Malformed(e.to_string()))?;
    load_group(&doc)
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian_group(name: &str, invariants: &[u64]) -> Result<GroupRef, GroupError> {
    if invariants.iter().any(|&d| d == 0) {
        return Err(GroupError::BadInvariants);
    }
    let order: u64 = invariants.iter().product();
    let order = order as usize;
    let k = invariants.len();
    // mixed-radix encoding of tuples
    let decode = |mut idx: usize| -> Vec<u64> {
        let mut t = vec![0u64; k];
        for i in (0..k).rev() {
            t[i] = (idx as u64) % invariants[i];
            idx /= invariants[i] as usize;
        }
        t
    };
    let encode = |t: &[u64]| -> usize {
        let mut idx = 0usize;
        for i in 0..k {
            idx = idx * invariants[i] as usize + t[i] as usize;
        }
        idx
    };
    let mut mul = vec![vec![0usize; order]; order];
    for a in 0..order {
        let ta = decode(a);
        for b in 0..order {
            let tb = decode(b);
            let tc: Vec<u64> = (0..k).map(|i| (ta[i] + tb[i]) % invariants[i]).collect();
            mul[a][b] = encode(&tc);
        }
    }
    let elements = (0..order)
        .map(|a| {
            let t = decode(a);
            format!(
                "({})",
                t.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    Ok(Arc::new(FiniteGroup::from_table(name, elements, mul)?))
}

pub fn cyclic_group(n: u64) -> GroupRef {
    abelian_group(&format!("C{}", n), &[n]).unwrap()
}

pub fn trivial_group() -> GroupRef {
    abelian_group("1", &[1]).unwrap()
}

/// The Heisenberg group of order 27: upper unitriangular 3x3 matrices over F_3.
/// Nonabelian, exponent 3, center of order 3.
pub fn heisenberg_27() -> GroupRef {
    let decode = |idx: usize| -> (u64, u64, u64) {
        let a = (idx / 9) as u64;
        let b = (idx / 3 % 3) as u64;
        let c = (idx % 3) as u64;
        (a, b, c)
    };
    let encode = |a: u64, b: u64, c: u64| -> usize { (a * 9 + b * 3 + c) as usize };
    let mut mul = vec![vec![0usize; 27]; 27];
    for x in 0..27 {
        let (a, b, c) = decode(x);
        for y in 0..27 {
            let (a2, b2, c2) = decode(y);
            mul[x][y] = encode((a + a2) % 3, (b + b2) % 3, (c + c2 + a * b2) % 3);
        }
    }
    let elements = (0..27)
        .map(|x| {
            let (a, b, c) = decode(x);
            format!("({},{},{})", a, b, c)
        })
        .collect();
    Arc::new(FiniteGroup::from_table("heisenberg-27", elements, mul).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_law() {
        let g = cyclic_group(3);
        assert_eq!(g.order, 3);
        let x = 1;
        assert_eq!(g.mul(g.mul(x, x), x), 0);
    }

    #[test]
    fn abelian_exponent() {
        let g = abelian_group("C3xC3", &[3, 3]).unwrap();
        assert_eq!(g.order, 9);
        assert_eq!(g.exponent(), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_structure() {
        let g = heisenberg_27();
        assert_eq!(g.order, 27);
        assert!(!g.is_abelian());
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.center().order(), 3);
    }

    #[test]
    fn conjugacy_classes_examples() {
        let c9 = cyclic_group(9);
        assert_eq!(c9.conjugacy_classes().len(), 9);
        let he = heisenberg_27();
        let classes = he.conjugacy_classes();
        assert_eq!(classes.len(), 11);
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
        let triv = cyclic_group(1);
        assert_eq!(triv.conjugacy_classes().len(), 1);
    }

    #[test]
    fn normal_subgroup_counts() {
        let c3 = cyclic_group(3);
        assert_eq!(c3.normal_subgroups().len(), 2);
        let c3c3 = abelian_group("C3xC3", &[3, 3]).unwrap();
        let subs = c3c3.all_subgroups();
        assert_eq!(subs.len(), 6);
        assert_eq!(c3c3.normal_subgroups().len(), 6);
        let he = heisenberg_27();
        let ns = he.normal_subgroups();
        assert!(ns.iter().any(|s| s.members == he.center().members));
    }

    #[test]
    fn quotients() {
        let c9 = cyclic_group(9);
        let n = c9.generated_subgroup(&[3]);
        assert_eq!(n.order(), 3);
        let (q, qm) = c9.quotient(&n).unwrap();
        assert_eq!(q.order, 3);
        assert_eq!(qm.map[0], 0);
        assert_eq!(c9.order, n.order() * q.order);

        let he = heisenberg_27();
        let (q, _) = he.quotient(&he.center()).unwrap();
        assert_eq!(q.order, 9);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 3);

        let (q, _) = c9.quotient(&Subgroup::trivial()).unwrap();
        assert_eq!(q.order, 9);
        assert_eq!(q.exponent(), 9);
    }

    #[test]
    fn loader_forms() {
        let g = load_group_json(r#"{"builtin": "heisenberg-27"}"#).unwrap();
        assert_eq!(g.order, 27);
        let g = load_group_json(r#"{"name": "C3", "abelian": [3]}"#).unwrap();
        assert_eq!(g.order, 3);
        assert!(load_group_json(r#"{"builtin": "nope"}"#).is_err());
        // a malformed table: not associative / not latin
        let bad = r#"{"name":"bad","order":3,"elements":["e","a","b"],
                      "mul":[[0,1,2],[1,0,0],[2,0,0]]}"#;
        assert!(load_group_json(bad).is_err());
    }

    #[test]
    fn identity_reindexing() {
        // identity at index 2 gets moved to slot 0
        let mul = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = FiniteGroup::from_table(
            "c3-shifted",
            vec!["a".into(), "b".into(), "e".into()],
            mul,
        )
        .unwrap();
        assert_eq!(g.elements[0], "e");
        assert_eq!(g.mul(0, 1), 1);
    }
}
