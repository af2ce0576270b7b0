//! Finite groups as multiplication tables, subgroup handling, exhaustive
//! exact-factorization search and character duals of abelian groups.

use serde::Deserialize;
use thiserror::Error;

pub mod characters;
pub mod presets;

pub use characters::CharacterGroup;
pub use presets::preset;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("table is not a Latin square: element {value} repeats in {axis} {index}")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        value: usize,
    },
    #[error("associativity fails at triple ({i}, {j}, {k}): ({i}·{j})·{k} ≠ {i}·({j}·{k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("table shape is inconsistent with the declared order {0}")]
    BadShape(usize),
    #[error("table entry out of range at ({i}, {j}): {value}")]
    EntryOutOfRange { i: usize, j: usize, value: usize },
    #[error("element names must be distinct and match the order")]
    BadNames,
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("group is not abelian (witness: elements {0} and {1})")]
    NotAbelian(usize, usize),
    #[error("unknown subgroup selector '{0}'")]
    UnknownSelector(String),
    #[error("invalid group JSON: {0}")]
    BadJson(String),
}

/// Multiplication-table group. `table[i][j]` is the index of `eᵢ·eⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    order: usize,
    element_names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct GroupJson {
    name: String,
    order: usize,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a raw table: Latin square, associativity (O(n³)), identity
    /// and inverses. Errors name the offending indices.
    pub fn from_table(
        name: impl Into<String>,
        element_names: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 || table.iter().any(|row| row.len() != order) {
            return Err(GroupError::BadShape(order));
        }
        {
            let mut sorted = element_names.clone();
            sorted.sort();
            sorted.dedup();
            if element_names.len() != order || sorted.len() != order {
                return Err(GroupError::BadNames);
            }
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { i, j, value: v });
                }
            }
        }
        for i in 0..order {
            let mut seen = vec![false; order];
            for j in 0..order {
                let v = table[i][j];
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { axis: "row", index: i, value: v });
                }
                seen[v] = true;
            }
        }
        for j in 0..order {
            let mut seen = vec![false; order];
            for i in 0..order {
                let v = table[i][j];
                if seen[v] {
                    return Err(GroupError::NotLatinSquare { axis: "column", index: j, value: v });
                }
                seen[v] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NonAssociative { i, j, k });
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; order];
        for i in 0..order {
            let inv = (0..order)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or(GroupError::NoInverse(i))?;
            inverses[i] = inv;
        }
        Ok(FiniteGroup {
            name: name.into(),
            order,
            element_names,
            table,
            identity,
            inverses,
        })
    }

    /// Loads and validates the JSON schema
    /// `{"name", "order", "elements", "table"}`.
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        let raw: GroupJson =
            serde_json::from_str(text).map_err(|e| GroupError::BadJson(e.to_string()))?;
        if raw.order != raw.table.len() || raw.elements.len() != raw.order {
            return Err(GroupError::BadShape(raw.order));
        }
        Self::from_table(raw.name, raw.elements, raw.table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian_violation().is_none()
    }

    fn abelian_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.order {
            for j in (i + 1)..self.order {
                if self.table[i][j] != self.table[j][i] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Closure of a generating set under products.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut stack: Vec<usize> = vec![self.identity];
        for &g in generators {
            if !member[g] {
                member[g] = true;
                stack.push(g);
            }
        }
        // worklist closure: multiply every known member against every other
        let mut changed = true;
        while changed {
            changed = false;
            let current: Vec<usize> = (0..self.order).filter(|&x| member[x]).collect();
            for &a in &current {
                for &b in &current {
                    let p = self.mul(a, b);
                    if !member[p] {
                        member[p] = true;
                        changed = true;
                    }
                }
            }
        }
        let _ = stack;
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// All subgroups as sorted member lists, found by closing every known
    /// subgroup under one extra generator until nothing new appears.
    /// Feasible for the shipped orders (≤ 48).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        use std::collections::BTreeSet;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![self.identity]);
        let mut frontier: Vec<Vec<usize>> = vec![vec![self.identity]];
        while let Some(h) = frontier.pop() {
            for x in 0..self.order {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let bigger = self.generated_subgroup(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Whether a (validated) member list is normal in the whole group.
    pub fn is_normal(&self, members: &[usize]) -> bool {
        for g in 0..self.order {
            for &h in members {
                let conj = self.mul(self.mul(g, h), self.inv(g));
                if members.binary_search(&conj).is_err() {
                    return false;
                }
            }
        }
        true
    }
}

/// Subgroup given by its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure, identity and inverses within the parent group.
    pub fn new(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.binary_search(&parent.identity()).is_err() {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(GroupError::NotASubgroup(format!(
                    "inverse of {} missing",
                    parent.element_name(a)
                )));
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup(format!(
                        "product {}·{} escapes the subset",
                        parent.element_name(a),
                        parent.element_name(b)
                    )));
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Position of a parent element within this subgroup's indexing.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_abelian(&self, parent: &FiniteGroup) -> bool {
        self.members.iter().all(|&a| {
            self.members
                .iter()
                .all(|&b| parent.mul(a, b) == parent.mul(b, a))
        })
    }

    /// Extracts the subgroup as a standalone group, preserving element names.
    pub fn as_group(&self, parent: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        let table: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| {
                self.members
                    .iter()
                    .map(|&b| self.local_index(parent.mul(a, b)).expect("closure"))
                    .collect()
            })
            .collect();
        let names = self
            .members
            .iter()
            .map(|&a| parent.element_name(a).to_string())
            .collect();
        FiniteGroup::from_table(name, names, table).expect("subgroup table is a valid group")
    }
}

/// A pair of subgroups realizing `G = G₁G₂` with trivial intersection and
/// unique decomposition; the pairing map is `(g, h) ↦ g·h⁻¹`.
#[derive(Debug, Clone)]
pub struct ExactFactorization {
    pub group: FiniteGroup,
    pub g1: Subgroup,
    pub g2: Subgroup,
}

impl ExactFactorization {
    pub fn new(group: FiniteGroup, g1: Subgroup, g2: Subgroup) -> Result<Self, GroupError> {
        let fact = ExactFactorization { group, g1, g2 };
        if !fact.is_exact() {
            return Err(GroupError::NotASubgroup(
                "subgroup pair is not an exact factorization".into(),
            ));
        }
        Ok(fact)
    }

    /// Exhaustively verifies that `(g, h) ↦ g·h⁻¹` is a bijection
    /// `G₁×G₂ → G`.
    pub fn is_exact(&self) -> bool {
        if self.g1.order() * self.g2.order() != self.group.order() {
            return false;
        }
        let mut hit = vec![false; self.group.order()];
        for &g in &self.g1.members {
            for &h in &self.g2.members {
                let p = self.group.mul(g, self.group.inv(h));
                if hit[p] {
                    return false;
                }
                hit[p] = true;
            }
        }
        hit.iter().all(|&b| b)
    }

    pub fn describe(&self) -> String {
        format!(
            "{}: G1 = {{{}}}, G2 = {{{}}}",
            self.group.name,
            self.g1
                .members
                .iter()
                .map(|&i| self.group.element_name(i))
                .collect::<Vec<_>>()
                .join(", "),
            self.g2
                .members
                .iter()
                .map(|&i| self.group.element_name(i))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// All ordered subgroup pairs forming exact factorizations, optionally
/// restricted to abelian G₁. Results are ordered by the subgroup member
/// lists so output is deterministic.
pub fn exact_factorizations(
    group: &FiniteGroup,
    require_g1_abelian: bool,
) -> Vec<ExactFactorization> {
    let subs = group.subgroups();
    let mut out = Vec::new();
    for m1 in &subs {
        let g1 = Subgroup { members: m1.clone() };
        if require_g1_abelian && !g1.is_abelian(group) {
            continue;
        }
        for m2 in &subs {
            if m1.len() * m2.len() != group.order() {
                continue;
            }
            let intersection = m1.iter().filter(|x| m2.binary_search(x).is_ok()).count();
            if intersection != 1 {
                continue;
            }
            let g2 = Subgroup { members: m2.clone() };
            let fact = ExactFactorization {
                group: group.clone(),
                g1: g1.clone(),
                g2,
            };
            if fact.is_exact() {
                out.push(fact);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group_loads() {
        let g = FiniteGroup::from_table("trivial", vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn cyclic_four_has_expected_inverses() {
        let g = preset("cyclic4").unwrap();
        assert_eq!(g.order(), 4);
        let inv: Vec<usize> = (0..4).map(|i| g.inv(i)).collect();
        assert_eq!(inv, vec![0, 3, 2, 1]);
    }

    #[test]
    fn transposed_entry_is_rejected_with_indices() {
        // transposing one entry of a noncommuting pair always breaks the
        // Latin property of the touched row
        let g = preset("sym3").unwrap();
        let (i, j) = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .find(|&(a, b)| g.mul(a, b) != g.mul(b, a))
            .unwrap();
        let mut table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| g.mul(a, b)).collect()).collect();
        table[i][j] = g.mul(j, i);
        let err = FiniteGroup::from_table("mutated", g.element_names().to_vec(), table).unwrap_err();
        match err {
            GroupError::NotLatinSquare { .. } => {}
            other => panic!("expected Latin-square rejection, got {other}"),
        }
    }

    #[test]
    fn latin_loop_without_associativity_names_the_triple() {
        // swap the 2x2 subsquare of Z/6 at rows {1,4} × cols {1,4}; this
        // keeps the Latin property and the identity but breaks associativity
        let g = preset("cyclic6").unwrap();
        let mut table: Vec<Vec<usize>> = (0..6).map(|a| (0..6).map(|b| g.mul(a, b)).collect()).collect();
        assert_eq!(table[1][1], 2);
        assert_eq!(table[4][4], 2);
        assert_eq!(table[1][4], 5);
        assert_eq!(table[4][1], 5);
        table[1][1] = 5;
        table[1][4] = 2;
        table[4][1] = 2;
        table[4][4] = 5;
        let err =
            FiniteGroup::from_table("loop", g.element_names().to_vec(), table.clone()).unwrap_err();
        match err {
            GroupError::NonAssociative { i, j, k } => {
                let m = |a: usize, b: usize| table[a][b];
                assert_ne!(m(m(i, j), k), m(i, m(j, k)), "reported triple must violate");
            }
            other => panic!("expected associativity rejection, got {other}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "name": "klein",
            "order": 4,
            "elements": ["e", "a", "b", "c"],
            "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]
        }"#;
        let g = FiniteGroup::from_json(text).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.element_by_name("c"), Some(3));
    }

    #[test]
    fn cyclic6_factorizations() {
        let g = preset("cyclic6").unwrap();
        let facts = exact_factorizations(&g, false);
        assert_eq!(facts.len(), 4);
        let has = |o1: usize, o2: usize| {
            facts
                .iter()
                .any(|f| f.g1.order() == o1 && f.g2.order() == o2)
        };
        assert!(has(1, 6));
        assert!(has(6, 1));
        assert!(has(2, 3));
        assert!(has(3, 2));
    }

    #[test]
    fn sym3_factorizations_include_alternating_pairs() {
        let g = preset("sym3").unwrap();
        let facts = exact_factorizations(&g, false);
        assert_eq!(facts.len(), 8); // 2 trivial + 3 transposition subgroups × 2 orders
        let a3 = g.generated_subgroup(&[g.element_by_name("(123)").unwrap()]);
        let mut t12 = vec![g.identity(), g.element_by_name("(12)").unwrap()];
        t12.sort_unstable();
        assert!(facts.iter().any(|f| f.g1.members == a3 && f.g2.members == t12));
        assert!(facts.iter().any(|f| f.g2.members == a3 && f.g1.members == t12));
    }

    #[test]
    fn factorization_listing_is_symmetric() {
        for name in ["sym3", "sym4", "cyclic6"] {
            let g = preset(name).unwrap();
            let facts = exact_factorizations(&g, false);
            for f in &facts {
                assert!(
                    facts
                        .iter()
                        .any(|r| r.g1.members == f.g2.members && r.g2.members == f.g1.members),
                    "missing mirror of a factorization of {name}"
                );
            }
        }
    }

    #[test]
    fn sym4_has_thirty_subgroups_and_the_cyclic_stabilizer_pair() {
        let g = preset("sym4").unwrap();
        assert_eq!(g.subgroups().len(), 30);
        let facts = exact_factorizations(&g, true);
        let four_cycle = g.element_by_name("(1234)").unwrap();
        let z4 = g.generated_subgroup(&[four_cycle]);
        let found = facts.iter().find(|f| f.g1.members == z4).expect("Z/4 pair");
        assert_eq!(found.g2.order(), 6);
        // both factors non-normal
        assert!(!g.is_normal(&found.g1.members));
        assert!(!g.is_normal(&found.g2.members));
    }

    #[test]
    fn every_factorization_passes_the_bijection_invariant() {
        for name in ["sym3", "sym4", "cyclic6", "dihedral4"] {
            let g = preset(name).unwrap();
            for f in exact_factorizations(&g, false) {
                assert!(f.is_exact());
            }
        }
    }
}
