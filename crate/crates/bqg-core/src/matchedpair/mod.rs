//! Mutual actions α, β of a matched pair: complete lookup tables derived
//! from a finite exact factorization, and closed forms for the two
//! continuous presets.

use crate::groups::{ExactFactorization, FiniteGroup};
use thiserror::Error;

pub mod analytic;
pub mod rn;

pub use analytic::{AnalyticMatchedPair, AnalyticPreset, Chart, SampledCompatReport};
pub use rn::RnDerivative;

#[derive(Debug, Error)]
pub enum MatchedPairError {
    #[error("unknown analytic preset '{0}'")]
    UnknownPreset(String),
    #[error("degenerate sampler: all {0} tuples left the domain")]
    DegenerateSampler(usize),
    #[error("evaluation outside the domain at {0}")]
    OutsideDomain(String),
}

/// One violated identity, with the tuple that witnessed it.
#[derive(Debug, Clone)]
pub struct RelationViolation {
    pub relation: &'static str,
    pub tuple: String,
}

/// Outcome of the exhaustive relation check on a finite pair.
#[derive(Debug, Clone, Default)]
pub struct CompatReport {
    pub checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl CompatReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The actions α: G₁×G₂→G₂ and β: G₂×G₁→G₁ of a finite matched pair, as
/// complete lookup tables over local subgroup indices.
#[derive(Debug, Clone)]
pub struct FiniteMatchedPair {
    fact: ExactFactorization,
    /// G₁ and G₂ as standalone groups (local indexing).
    g1: FiniteGroup,
    g2: FiniteGroup,
    /// `alpha[g][h] = α_g(h)` (all indices local).
    alpha: Vec<Vec<usize>>,
    /// `beta[g][h] = β_h(g)` (all indices local).
    beta: Vec<Vec<usize>>,
}

impl FiniteMatchedPair {
    /// Solves `j(α_g(h))·i(β_h(g)) = i(g)·j(h)` for every pair by inverting
    /// the factorization bijection once (`j(h) = h⁻¹`, so the right side is
    /// `g·h⁻¹` and the left side is `α_g(h)⁻¹·β_h(g)` in the parent group).
    pub fn derive(fact: ExactFactorization) -> Self {
        let group = &fact.group;
        let n1 = fact.g1.order();
        let n2 = fact.g2.order();
        // invert (a, b) ↦ a⁻¹·b over G₂×G₁
        let mut rev: Vec<Option<(usize, usize)>> = vec![None; group.order()];
        for (a_loc, &a) in fact.g2.members.iter().enumerate() {
            for (b_loc, &b) in fact.g1.members.iter().enumerate() {
                let q = group.mul(group.inv(a), b);
                assert!(
                    rev[q].is_none(),
                    "factorization bijection collision at {}",
                    group.element_name(q)
                );
                rev[q] = Some((a_loc, b_loc));
            }
        }
        let mut alpha = vec![vec![0; n2]; n1];
        let mut beta = vec![vec![0; n2]; n1];
        for (g_loc, &g) in fact.g1.members.iter().enumerate() {
            for (h_loc, &h) in fact.g2.members.iter().enumerate() {
                let p = group.mul(g, group.inv(h));
                let (a_loc, b_loc) = rev[p].expect("factorization covers the group");
                alpha[g_loc][h_loc] = a_loc;
                beta[g_loc][h_loc] = b_loc;
            }
        }
        let g1 = fact.g1.as_group(group, format!("{}-G1", group.name));
        let g2 = fact.g2.as_group(group, format!("{}-G2", group.name));
        let pair = FiniteMatchedPair { fact, g1, g2, alpha, beta };
        let report = pair.verify_compatibility();
        assert!(
            report.pass(),
            "derived actions violate a matched-pair relation: {:?}",
            report.violations.first()
        );
        pair
    }

    /// Wraps raw tables without verification; intended for mutation tests.
    pub fn with_tables_unchecked(
        fact: ExactFactorization,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
    ) -> Self {
        let g1 = fact.g1.as_group(&fact.group, format!("{}-G1", fact.group.name));
        let g2 = fact.g2.as_group(&fact.group, format!("{}-G2", fact.group.name));
        FiniteMatchedPair { fact, g1, g2, alpha, beta }
    }

    pub fn factorization(&self) -> &ExactFactorization {
        &self.fact
    }

    /// G₁ as a standalone group over local indices.
    pub fn g1(&self) -> &FiniteGroup {
        &self.g1
    }

    pub fn g2(&self) -> &FiniteGroup {
        &self.g2
    }

    /// α_g(h), local indices.
    pub fn alpha(&self, g: usize, h: usize) -> usize {
        self.alpha[g][h]
    }

    /// β_h(g), local indices (subscript first).
    pub fn beta(&self, h: usize, g: usize) -> usize {
        self.beta[g][h]
    }

    pub fn alpha_tables(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta_tables(&self) -> &[Vec<usize>] {
        &self.beta
    }

    /// Exhaustive check of the defining relation, the four compatibility
    /// relations and the unit conditions.
    pub fn verify_compatibility(&self) -> CompatReport {
        let mut report = CompatReport::default();
        let n1 = self.g1.order();
        let n2 = self.g2.order();
        let g1n = |i: usize| self.g1.element_name(i);
        let g2n = |i: usize| self.g2.element_name(i);

        // defining relation in the parent group: α_g(h)⁻¹·β_h(g) = g·h⁻¹
        let parent = &self.fact.group;
        for g in 0..n1 {
            for h in 0..n2 {
                let a = self.fact.g2.members[self.alpha(g, h)];
                let b = self.fact.g1.members[self.beta(h, g)];
                let lhs = parent.mul(parent.inv(a), b);
                let rhs = parent.mul(self.fact.g1.members[g], parent.inv(self.fact.g2.members[h]));
                if lhs != rhs {
                    report.violations.push(RelationViolation {
                        relation: "defining",
                        tuple: format!("(g={}, h={})", g1n(g), g2n(h)),
                    });
                }
                report.checked += 1;
            }
        }

        for g in 0..n1 {
            if self.alpha(g, self.g2.identity()) != self.g2.identity() {
                report.violations.push(RelationViolation {
                    relation: "unit α_g(1)=1",
                    tuple: format!("(g={})", g1n(g)),
                });
            }
            report.checked += 1;
        }
        for h in 0..n2 {
            if self.beta(h, self.g1.identity()) != self.g1.identity() {
                report.violations.push(RelationViolation {
                    relation: "unit β_h(1)=1",
                    tuple: format!("(h={})", g2n(h)),
                });
            }
            report.checked += 1;
        }

        // α_{gs}(h) = α_g(α_s(h)) and β_h(gs) = β_{α_s(h)}(g)·β_h(s)
        for g in 0..n1 {
            for s in 0..n1 {
                let gs = self.g1.mul(g, s);
                for h in 0..n2 {
                    if self.alpha(gs, h) != self.alpha(g, self.alpha(s, h)) {
                        report.violations.push(RelationViolation {
                            relation: "α_{gs}(h) = α_g(α_s(h))",
                            tuple: format!("(g={}, s={}, h={})", g1n(g), g1n(s), g2n(h)),
                        });
                    }
                    let lhs = self.beta(h, gs);
                    let rhs = self
                        .g1
                        .mul(self.beta(self.alpha(s, h), g), self.beta(h, s));
                    if lhs != rhs {
                        report.violations.push(RelationViolation {
                            relation: "β_h(gs) = β_{α_s(h)}(g)·β_h(s)",
                            tuple: format!("(g={}, s={}, h={})", g1n(g), g1n(s), g2n(h)),
                        });
                    }
                    report.checked += 2;
                }
            }
        }

        // β_{ht}(g) = β_h(β_t(g)) and α_g(ht) = α_{β_t(g)}(h)·α_g(t)
        for h in 0..n2 {
            for t in 0..n2 {
                let ht = self.g2.mul(h, t);
                for g in 0..n1 {
                    if self.beta(ht, g) != self.beta(h, self.beta(t, g)) {
                        report.violations.push(RelationViolation {
                            relation: "β_{ht}(g) = β_h(β_t(g))",
                            tuple: format!("(h={}, t={}, g={})", g2n(h), g2n(t), g1n(g)),
                        });
                    }
                    let lhs = self.alpha(g, ht);
                    let rhs = self
                        .g2
                        .mul(self.alpha(self.beta(t, g), h), self.alpha(g, t));
                    if lhs != rhs {
                        report.violations.push(RelationViolation {
                            relation: "α_g(ht) = α_{β_t(g)}(h)·α_g(t)",
                            tuple: format!("(h={}, t={}, g={})", g2n(h), g2n(t), g1n(g)),
                        });
                    }
                    report.checked += 2;
                }
            }
        }
        report
    }

    /// A tuple moved by α, or `None` when α is trivial.
    pub fn alpha_witness(&self) -> Option<(usize, usize)> {
        (0..self.g1.order()).find_map(|g| {
            (0..self.g2.order())
                .find(|&h| self.alpha(g, h) != h)
                .map(|h| (g, h))
        })
    }

    /// A pair (h, g) moved by β, or `None` when β is trivial.
    pub fn beta_witness(&self) -> Option<(usize, usize)> {
        (0..self.g2.order()).find_map(|h| {
            (0..self.g1.order())
                .find(|&g| self.beta(h, g) != g)
                .map(|g| (h, g))
        })
    }

    pub fn alpha_is_trivial(&self) -> bool {
        self.alpha_witness().is_none()
    }

    pub fn beta_is_trivial(&self) -> bool {
        self.beta_witness().is_none()
    }

    pub fn describe_beta_witness(&self) -> Option<String> {
        self.beta_witness().map(|(h, g)| {
            format!(
                "β_{}({}) = {}",
                self.g2.element_name(h),
                self.g1.element_name(g),
                self.g1.element_name(self.beta(h, g))
            )
        })
    }

    pub fn describe_alpha_witness(&self) -> Option<String> {
        self.alpha_witness().map(|(g, h)| {
            format!(
                "α_{}({}) = {}",
                self.g1.element_name(g),
                self.g2.element_name(h),
                self.g2.element_name(self.alpha(g, h))
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presets::{cyclic, direct_product, preset, resolve_subgroup};
    use crate::groups::{exact_factorizations, ExactFactorization, Subgroup};

    pub(crate) fn pair_from(group_name: &str, g1_sel: &str, g2_sel: &str) -> FiniteMatchedPair {
        let g = preset(group_name).unwrap();
        let g1 = resolve_subgroup(&g, g1_sel).unwrap();
        let g2 = resolve_subgroup(&g, g2_sel).unwrap();
        FiniteMatchedPair::derive(ExactFactorization::new(g, g1, g2).unwrap())
    }

    fn direct_product_pair() -> FiniteMatchedPair {
        let a = cyclic(2);
        let b = cyclic(3);
        let g = direct_product(&a, &b);
        let g1: Vec<usize> = (0..g.order())
            .filter(|&i| g.element_name(i).ends_with(",0)"))
            .collect();
        let g2: Vec<usize> = (0..g.order())
            .filter(|&i| g.element_name(i).starts_with("(0,"))
            .collect();
        let g1 = Subgroup::new(&g, g1).unwrap();
        let g2 = Subgroup::new(&g, g2).unwrap();
        FiniteMatchedPair::derive(ExactFactorization::new(g, g1, g2).unwrap())
    }

    #[test]
    fn direct_product_has_trivial_actions() {
        let mp = direct_product_pair();
        assert!(mp.alpha_is_trivial());
        assert!(mp.beta_is_trivial());
        assert!(mp.verify_compatibility().pass());
    }

    #[test]
    fn sym3_alternating_pair_gives_conjugation_beta() {
        let mp = pair_from("sym3", "A3", "(12)");
        // independent route: solve the defining relation by brute-force scan
        // over all candidate (a, b) pairs for every (g, h)
        let parent = &mp.factorization().group;
        let g1m = mp.factorization().g1.members.clone();
        let g2m = mp.factorization().g2.members.clone();
        for (gl, &g) in g1m.iter().enumerate() {
            for (hl, &h) in g2m.iter().enumerate() {
                let rhs = parent.mul(g, parent.inv(h));
                let mut solutions = Vec::new();
                for (al, &a) in g2m.iter().enumerate() {
                    for (bl, &b) in g1m.iter().enumerate() {
                        if parent.mul(parent.inv(a), b) == rhs {
                            solutions.push((al, bl));
                        }
                    }
                }
                assert_eq!(solutions.len(), 1, "defining relation must pin (a,b) uniquely");
                assert_eq!(mp.alpha(gl, hl), solutions[0].0);
                assert_eq!(mp.beta(hl, gl), solutions[0].1);
            }
        }
        assert!(mp.alpha_is_trivial());
        // β_h(g) = h·g·h⁻¹ on this pair
        for (hl, &h) in g2m.iter().enumerate() {
            for (gl, &g) in g1m.iter().enumerate() {
                let conj = parent.mul(parent.mul(h, g), parent.inv(h));
                assert_eq!(g1m[mp.beta(hl, gl)], conj);
            }
        }
        assert!(!mp.beta_is_trivial());
    }

    #[test]
    fn sym4_pair_has_both_actions_nontrivial() {
        let mp = pair_from("sym4", "(1234)", "stab4");
        assert!(mp.verify_compatibility().pass());
        let (g, h) = mp.alpha_witness().expect("α moves something");
        assert_ne!(mp.alpha(g, h), h);
        let (h2, g2) = mp.beta_witness().expect("β moves something");
        assert_ne!(mp.beta(h2, g2), g2);
    }

    #[test]
    fn corrupted_alpha_entry_is_named() {
        let mp = pair_from("sym4", "(1234)", "stab4");
        let mut alpha = mp.alpha_tables().to_vec();
        alpha[1].swap(0, 1);
        let corrupt = FiniteMatchedPair::with_tables_unchecked(
            mp.factorization().clone(),
            alpha,
            mp.beta_tables().to_vec(),
        );
        let report = corrupt.verify_compatibility();
        assert!(!report.pass());
        assert!(!report.violations[0].tuple.is_empty());
    }

    #[test]
    fn normal_factor_trivializes_the_opposite_action() {
        // G₁ normal ⇒ α trivial; G₂ normal ⇒ β trivial
        let mp_a3_first = pair_from("sym3", "A3", "(12)");
        assert!(mp_a3_first
            .factorization()
            .group
            .is_normal(&mp_a3_first.factorization().g1.members));
        assert!(mp_a3_first.alpha_is_trivial());

        let mp_a3_second = pair_from("sym3", "(12)", "A3");
        assert!(mp_a3_second
            .factorization()
            .group
            .is_normal(&mp_a3_second.factorization().g2.members));
        assert!(mp_a3_second.beta_is_trivial());
    }

    #[test]
    fn all_factorizations_of_presets_verify() {
        for name in ["sym3", "cyclic6", "dihedral4"] {
            let g = preset(name).unwrap();
            for fact in exact_factorizations(&g, false) {
                let mp = FiniteMatchedPair::derive(fact);
                assert!(mp.verify_compatibility().pass());
            }
        }
    }
}
