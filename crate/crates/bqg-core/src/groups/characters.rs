//! Character duals of finite abelian groups.
//!
//! The group is decomposed into an internal direct product of cyclic factors
//! (peel an element of maximal order, then find a complement through the
//! subgroup lattice), and characters are indexed by exponent tuples against
//! that basis.

use super::{FiniteGroup, GroupError, Subgroup};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Full character table of an abelian group H with the pairing
/// `⟨h, ĝ⟩ = ĝ(h)`; rows are characters, columns parent elements of H.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    /// Cyclic factor orders m₁ ≥ m₂ ≥ …
    factor_orders: Vec<usize>,
    /// Exponent tuple of each element of H against the cyclic basis.
    coordinates: Vec<Vec<usize>>,
    /// pairing[ĝ][h]
    table: Vec<Vec<Complex64>>,
    names: Vec<String>,
}

impl CharacterGroup {
    /// Characters of the whole (abelian) group.
    pub fn new(group: &FiniteGroup) -> Result<Self, GroupError> {
        let all = Subgroup {
            members: (0..group.order()).collect(),
        };
        Self::of_subgroup(group, &all)
    }

    /// Characters of an abelian subgroup, indexed by the subgroup's local
    /// element order.
    pub fn of_subgroup(parent: &FiniteGroup, sub: &Subgroup) -> Result<Self, GroupError> {
        for &a in &sub.members {
            for &b in &sub.members {
                if parent.mul(a, b) != parent.mul(b, a) {
                    return Err(GroupError::NotAbelian(a, b));
                }
            }
        }
        let basis = cyclic_basis(parent, &sub.members);
        let factor_orders: Vec<usize> = basis.iter().map(|&(_, m)| m).collect();
        let n = sub.order();

        // coordinates of every element against the basis, by exhaustive products
        let mut coordinates = vec![Vec::new(); n];
        let mut tuple = vec![0usize; basis.len()];
        loop {
            let mut x = parent.identity();
            for (&(g, _), &e) in basis.iter().zip(&tuple) {
                for _ in 0..e {
                    x = parent.mul(x, g);
                }
            }
            let local = sub.local_index(x).expect("basis generates the subgroup");
            coordinates[local] = tuple.clone();
            if !increment(&mut tuple, &factor_orders) {
                break;
            }
        }

        let char_space = coordinates.clone();
        let mut table = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        for a in &char_space {
            let row: Vec<Complex64> = coordinates
                .iter()
                .map(|e| {
                    let phase: f64 = a
                        .iter()
                        .zip(e)
                        .zip(&factor_orders)
                        .map(|((&ai, &ei), &m)| TAU * (ai * ei % m) as f64 / m as f64)
                        .sum();
                    Complex64::from_polar(1.0, phase)
                })
                .collect();
            table.push(row);
            names.push(format!(
                "χ({})",
                a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            ));
        }
        Ok(CharacterGroup {
            factor_orders,
            coordinates,
            table,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn factor_orders(&self) -> &[usize] {
        &self.factor_orders
    }

    /// `⟨h, ĝ⟩` with both sides in local indices.
    pub fn pairing(&self, h: usize, ghat: usize) -> Complex64 {
        self.table[ghat][h]
    }

    pub fn character_name(&self, ghat: usize) -> &str {
        &self.names[ghat]
    }

    /// Index of the pointwise product of two characters.
    pub fn product(&self, a: usize, b: usize) -> usize {
        let tuple: Vec<usize> = self
            .char_tuple(a)
            .iter()
            .zip(self.char_tuple(b))
            .zip(&self.factor_orders)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        self.index_of_tuple(&tuple)
    }

    /// Index of the inverse (conjugate) character.
    pub fn inverse(&self, a: usize) -> usize {
        let tuple: Vec<usize> = self
            .char_tuple(a)
            .iter()
            .zip(&self.factor_orders)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        self.index_of_tuple(&tuple)
    }

    /// Multiplicative order of a character under pointwise product.
    pub fn character_order(&self, a: usize) -> usize {
        self.char_tuple(a)
            .iter()
            .zip(&self.factor_orders)
            .map(|(&x, &m)| {
                if x == 0 {
                    1
                } else {
                    m / gcd(x, m)
                }
            })
            .fold(1, lcm)
    }

    fn char_tuple(&self, a: usize) -> &[usize] {
        &self.coordinates[a]
    }

    fn index_of_tuple(&self, tuple: &[usize]) -> usize {
        self.coordinates
            .iter()
            .position(|c| c == tuple)
            .expect("tuple enumerated")
    }

    /// Σ_h ⟨h,ĝ⟩·conj(⟨h,ĝ′⟩) − |H|·[ĝ=ĝ′], largest magnitude over all pairs.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.order();
        let mut worst: f64 = 0.0;
        for g1 in 0..n {
            for g2 in 0..n {
                let sum: Complex64 = (0..n)
                    .map(|h| self.pairing(h, g1) * self.pairing(h, g2).conj())
                    .sum();
                let expect = if g1 == g2 { n as f64 } else { 0.0 };
                worst = worst.max((sum - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

fn increment(tuple: &mut [usize], bounds: &[usize]) -> bool {
    for i in (0..tuple.len()).rev() {
        tuple[i] += 1;
        if tuple[i] < bounds[i] {
            return true;
        }
        tuple[i] = 0;
    }
    false
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Internal direct-product basis of an abelian subgroup: peel a maximal-order
/// element, locate a complement among the subgroups of the remaining lattice,
/// recurse. Returns (generator, order) pairs with decreasing orders.
fn cyclic_basis(parent: &FiniteGroup, members: &[usize]) -> Vec<(usize, usize)> {
    if members.len() == 1 {
        return Vec::new();
    }
    let g = *members
        .iter()
        .max_by_key(|&&x| parent.element_order(x))
        .expect("nonempty");
    let m = parent.element_order(g);
    let cyclic = parent.generated_subgroup(&[g]);
    if cyclic.len() == members.len() {
        return vec![(g, m)];
    }
    // complement exists because a maximal-order cyclic subgroup of a finite
    // abelian group is a direct summand; search the sub-lattice for it
    let sub = Subgroup {
        members: members.to_vec(),
    };
    let sub_group = sub.as_group(parent, "tmp");
    for candidate in sub_group.subgroups() {
        if candidate.len() * cyclic.len() != members.len() {
            continue;
        }
        let cand_parent: Vec<usize> = candidate.iter().map(|&i| sub.members[i]).collect();
        let meets_trivially = cand_parent
            .iter()
            .filter(|x| cyclic.binary_search(x).is_ok())
            .count()
            == 1;
        if meets_trivially {
            let mut rest = cyclic_basis(parent, &cand_parent);
            let mut out = vec![(g, m)];
            out.append(&mut rest);
            return out;
        }
    }
    unreachable!("finite abelian groups always split off a maximal cyclic factor")
}
