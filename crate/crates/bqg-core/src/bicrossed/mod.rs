//! The bicrossed-product quantum group of a finite matched pair: its
//! multiplicative unitary, comultiplication, slice algebras, Haar weight
//! and dual.
//!
//! The multiplicative unitary is the point transformation
//! `T(g,s,h,t) = (β_u(h)·g, s, h, u)` with `u = α_g(s)⁻¹·t` read through
//! `(Wξ)(x) = ξ(T(x))`, so the pentagon identity and every conjugation by W
//! compose index maps exactly; floating point enters only in span ranks
//! and weight contractions.

use crate::linalg::{
    span_equal, LinalgError, OperatorSpace, PointPerm, ProductSpace, SparseMatrix,
};
use crate::matchedpair::FiniteMatchedPair;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Pentagon verdict with the first offending point, if any.
#[derive(Debug, Clone)]
pub struct PentagonReport {
    pub points: usize,
    pub first_mismatch: Option<Vec<usize>>,
}

impl PentagonReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// The permutation unitary of a finite matched pair on ℓ²(G₁×G₂)⊗ℓ²(G₁×G₂).
#[derive(Debug, Clone)]
pub struct MultiplicativeUnitary {
    pair: FiniteMatchedPair,
    perm: PointPerm,
    n1: usize,
    n2: usize,
}

impl MultiplicativeUnitary {
    pub fn build(pair: FiniteMatchedPair) -> Self {
        let n1 = pair.g1().order();
        let n2 = pair.g2().order();
        let space = ProductSpace::new(vec![n1, n2, n1, n2]);
        let g2 = pair.g2();
        let g1 = pair.g1();
        let map = (0..space.total())
            .map(|x| {
                let m = space.unflatten(x);
                let (g, s, h, t) = (m[0], m[1], m[2], m[3]);
                let u = g2.mul(g2.inv(pair.alpha(g, s)), t);
                let g_out = g1.mul(pair.beta(u, h), g);
                space.flatten(&[g_out, s, h, u])
            })
            .collect();
        let perm = PointPerm::from_map(map).expect("the point transformation is a bijection");
        MultiplicativeUnitary { pair, perm, n1, n2 }
    }

    /// Dimension of one tensor factor, |G₁|·|G₂|.
    pub fn h_dim(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn pair(&self) -> &FiniteMatchedPair {
        &self.pair
    }

    pub fn perm(&self) -> &PointPerm {
        &self.perm
    }

    /// Replaces the index map; used by mutation tests.
    pub fn with_perm_unchecked(mut self, perm: PointPerm) -> Self {
        assert_eq!(perm.dim(), self.perm.dim());
        self.perm = perm;
        self
    }

    /// Exact unitarity: the index map composed with its inverse is the
    /// identity on every point.
    pub fn is_unitary(&self) -> bool {
        self.perm.op_mul(&self.perm.inverse()).is_identity()
    }

    /// W embedded on two legs of the triple space.
    pub fn leg_embed(&self, legs: [usize; 2]) -> PointPerm {
        let n = self.h_dim();
        PointPerm::embed_legs(
            &ProductSpace::new(vec![n, n]),
            &ProductSpace::new(vec![n, n, n]),
            &legs,
            &self.perm,
        )
    }

    /// W₂₃W₁₂ = W₁₂W₁₃W₂₃ compared pointwise on the triple space.
    pub fn check_pentagon(&self) -> PentagonReport {
        Self::pentagon_of(&self.perm, self.h_dim())
    }

    fn pentagon_of(perm: &PointPerm, n: usize) -> PentagonReport {
        let embed = |legs: [usize; 2]| {
            PointPerm::embed_legs(
                &ProductSpace::new(vec![n, n]),
                &ProductSpace::new(vec![n, n, n]),
                &legs,
                perm,
            )
        };
        let w12 = embed([0, 1]);
        let w13 = embed([0, 2]);
        let w23 = embed([1, 2]);
        let lhs = w23.op_mul(&w12);
        let rhs = w12.op_mul(&w13).op_mul(&w23);
        let space = ProductSpace::new(vec![n, n, n]);
        PentagonReport {
            points: lhs.dim(),
            first_mismatch: lhs.first_mismatch(&rhs).map(|x| space.unflatten(x)),
        }
    }

    /// The dual unitary Ŵ = ΣW*Σ as an index map.
    pub fn dual_perm(&self) -> PointPerm {
        let n = self.h_dim();
        let sigma = PointPerm::flip(n, n);
        sigma.op_mul(&self.perm.inverse()).op_mul(&sigma)
    }

    /// Pentagon for Ŵ.
    pub fn check_dual_pentagon(&self) -> PentagonReport {
        Self::pentagon_of(&self.dual_perm(), self.h_dim())
    }

    /// Δ(x) = W*(1⊗x)W on sparse operators.
    pub fn comult(&self, x: &SparseMatrix) -> SparseMatrix {
        let n = self.h_dim();
        assert_eq!(x.rows(), n, "operand must act on ℓ²(G₁×G₂)");
        self.perm.conjugate_sparse(&x.tensor_with_identity(n, true))
    }

    /// Δ of a permutation operator, still as an index map.
    pub fn comult_perm(&self, x: &PointPerm) -> PointPerm {
        let n = self.h_dim();
        assert_eq!(x.dim(), n);
        let mid = PointPerm::embed_legs(
            &ProductSpace::new(vec![n]),
            &ProductSpace::new(vec![n, n]),
            &[1],
            x,
        );
        self.perm.inverse().op_mul(&mid).op_mul(&self.perm)
    }

    /// Δ̂(â) = σ(W(â⊗1)W*) on sparse operators.
    pub fn dual_comult(&self, x: &SparseMatrix) -> SparseMatrix {
        let n = self.h_dim();
        assert_eq!(x.rows(), n);
        let inner = self
            .perm
            .inverse()
            .conjugate_sparse(&x.tensor_with_identity(n, false));
        PointPerm::flip(n, n).conjugate_sparse(&inner)
    }

    /// ‖(id⊗Δ)X − (Δ⊗id)X‖_max for X = Δ(a), the coassociativity defect
    /// at a generator a.
    pub fn coassociativity_defect(&self, a: &SparseMatrix) -> f64 {
        Self::coassociativity_defect_of(&self.perm, a, self.h_dim())
    }

    fn coassociativity_defect_of(perm: &PointPerm, a: &SparseMatrix, n: usize) -> f64 {
        let delta_a = perm.conjugate_sparse(&a.tensor_with_identity(n, true));
        let pair_space = ProductSpace::new(vec![n, n]);
        let triple = ProductSpace::new(vec![n, n, n]);
        let embed = |legs: [usize; 2]| PointPerm::embed_legs(&pair_space, &triple, &legs, perm);
        // (id⊗Δ)(X) = W₂₃* X₁₃ W₂₃ and (Δ⊗id)(X) = W₁₂* X₂₃ W₁₂
        let x13 = delta_a.insert_middle_leg(n, n, n);
        let lhs = embed([1, 2]).conjugate_sparse(&x13);
        let x23 = delta_a.tensor_with_identity(n, true);
        let rhs = embed([0, 1]).conjugate_sparse(&x23);
        lhs.sub(&rhs).max_abs()
    }

    /// Coassociativity defect of the dual comultiplication at â ∈ Â.
    pub fn dual_coassociativity_defect(&self, a_hat: &SparseMatrix) -> f64 {
        Self::coassociativity_defect_of(&self.dual_perm(), a_hat, self.h_dim())
    }
}

/// The bicrossed-product algebra on ℓ²(G₁×G₂): multiplication operators of
/// functions on G₂ (pulled back through α) composed with the translations
/// of G₁ on the first leg.
#[derive(Debug, Clone)]
pub struct BicrossedAlgebra {
    w: MultiplicativeUnitary,
    tol: f64,
}

impl BicrossedAlgebra {
    pub fn new(w: MultiplicativeUnitary, tol: f64) -> Self {
        BicrossedAlgebra { w, tol }
    }

    pub fn unitary(&self) -> &MultiplicativeUnitary {
        &self.w
    }

    pub fn pair(&self) -> &FiniteMatchedPair {
        self.w.pair()
    }

    pub fn dim(&self) -> usize {
        self.w.h_dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn n1(&self) -> usize {
        self.pair().g1().order()
    }

    fn n2(&self) -> usize {
        self.pair().g2().order()
    }

    fn hs(&self) -> ProductSpace {
        ProductSpace::new(vec![self.n1(), self.n2()])
    }

    /// Multiplication operator of the indicator of s ∈ G₂ pulled back
    /// through α: diagonal `[α_g(t) = s]` over the (g, t) basis.
    pub fn alpha_rep(&self, s: usize) -> SparseMatrix {
        let hs = self.hs();
        let pair = self.pair();
        SparseMatrix::from_entries(
            hs.total(),
            hs.total(),
            (0..hs.total()).filter_map(|x| {
                let m = hs.unflatten(x);
                (pair.alpha(m[0], m[1]) == s).then_some((x, x, Complex64::new(1.0, 0.0)))
            }),
        )
    }

    /// Translation of G₁ on the first leg, `ξ(g, t) ↦ ξ(z·g, t)`.
    pub fn lambda_rep(&self, z: usize) -> SparseMatrix {
        self.lambda_perm(z).to_sparse()
    }

    pub fn lambda_perm(&self, z: usize) -> PointPerm {
        let hs = self.hs();
        let g1 = self.pair().g1();
        PointPerm::from_fn(hs.total(), |x| {
            let m = hs.unflatten(x);
            hs.flatten(&[g1.mul(z, m[0]), m[1]])
        })
        .expect("translations are bijections")
    }

    /// Right-handed translation `ξ(g, t) ↦ ξ(g·z, t)`; the flavor entering
    /// the action's Δ(λ_z⊗1) construction (equal to [`Self::lambda_perm`]
    /// on abelian G₁).
    pub fn pair_translation_perm(&self, z: usize) -> PointPerm {
        let hs = self.hs();
        let g1 = self.pair().g1();
        PointPerm::from_fn(hs.total(), |x| {
            let m = hs.unflatten(x);
            hs.flatten(&[g1.mul(m[0], z), m[1]])
        })
        .expect("translations are bijections")
    }

    /// The spanning family α(δ_s)·(λ_z⊗1); linearly independent for every
    /// matched pair since the supports over s partition each translation.
    pub fn basis_element(&self, s: usize, z: usize) -> SparseMatrix {
        self.alpha_rep(s).mul(&self.lambda_rep(z))
    }

    pub fn basis(&self) -> Vec<SparseMatrix> {
        (0..self.n2())
            .flat_map(|s| (0..self.n1()).map(move |z| (s, z)))
            .map(|(s, z)| self.basis_element(s, z))
            .collect()
    }

    /// The presented algebra as an operator span.
    pub fn presentation_space(&self) -> OperatorSpace {
        OperatorSpace::from_sparse_generators(self.basis(), self.tol)
            .expect("presentation family is nonempty")
    }

    /// Dual-side spanning family: diagonal `[β_t(h) = x]` composed with the
    /// translation `ξ(h, t) ↦ ξ(h, v·t)`.
    pub fn dual_basis_element(&self, x: usize, v: usize) -> SparseMatrix {
        let hs = self.hs();
        let pair = self.pair();
        let g2 = self.pair().g2();
        let diag = SparseMatrix::from_entries(
            hs.total(),
            hs.total(),
            (0..hs.total()).filter_map(|i| {
                let m = hs.unflatten(i);
                (pair.beta(m[1], m[0]) == x).then_some((i, i, Complex64::new(1.0, 0.0)))
            }),
        );
        let trans = PointPerm::from_fn(hs.total(), |i| {
            let m = hs.unflatten(i);
            hs.flatten(&[m[0], g2.mul(v, m[1])])
        })
        .expect("translations are bijections");
        diag.mul(&trans.to_sparse())
    }

    pub fn dual_presentation_space(&self) -> OperatorSpace {
        let gens: Vec<SparseMatrix> = (0..self.n1())
            .flat_map(|x| (0..self.n2()).map(move |v| (x, v)))
            .map(|(x, v)| self.dual_basis_element(x, v))
            .collect();
        OperatorSpace::from_sparse_generators(gens, self.tol).expect("dual family is nonempty")
    }

    /// Slice spaces of W: A from the second-leg functionals, Â from the
    /// first-leg ones.
    pub fn slice_algebras(&self) -> (OperatorSpace, OperatorSpace) {
        let n = self.dim();
        let w_sparse = self.w.perm().to_sparse();
        let collect = |first: bool| -> Vec<SparseMatrix> {
            (0..n)
                .into_par_iter()
                .flat_map_iter(|u| {
                    let w = &w_sparse;
                    (0..n).map(move |v| {
                        if first {
                            w.slice_first_leg(n, n, u, v)
                        } else {
                            w.slice_second_leg(n, n, u, v)
                        }
                    })
                })
                .filter(|m| m.nnz() > 0)
                .collect()
        };
        let a = OperatorSpace::from_sparse_generators(collect(false), self.tol)
            .expect("A slices are nonempty");
        let a_hat = OperatorSpace::from_sparse_generators(collect(true), self.tol)
            .expect("Ahat slices are nonempty");
        (a, a_hat)
    }

    /// Agreement of the sliced A with its presented form.
    pub fn slice_presentation_agreement(
        &self,
    ) -> Result<crate::linalg::SpanEquality, LinalgError> {
        let (a, _) = self.slice_algebras();
        span_equal(&a, &self.presentation_space(), self.tol)
    }

    /// Cancellation spans Δ(a)(1⊗b) and Δ(a)(b⊗1) over the basis, each
    /// compared against A⊗A.
    pub fn check_cancellation(&self) -> CancellationReport {
        let basis = self.basis();
        let n = self.dim();
        let deltas: Vec<SparseMatrix> = basis.par_iter().map(|a| self.w.comult(a)).collect();
        let right_gens: Vec<SparseMatrix> = deltas
            .par_iter()
            .flat_map_iter(|da| {
                basis
                    .iter()
                    .map(move |b| da.mul(&b.tensor_with_identity(n, true)))
            })
            .collect();
        let left_gens: Vec<SparseMatrix> = deltas
            .par_iter()
            .flat_map_iter(|da| {
                basis
                    .iter()
                    .map(move |b| da.mul(&b.tensor_with_identity(n, false)))
            })
            .collect();
        let tensor_gens: Vec<SparseMatrix> = basis
            .par_iter()
            .flat_map_iter(|a| basis.iter().map(move |b| a.kron(b)))
            .collect();
        let target =
            OperatorSpace::from_sparse_generators(tensor_gens, self.tol).expect("A⊗A nonempty");
        let right = OperatorSpace::from_sparse_generators(right_gens, self.tol).expect("nonempty");
        let left = OperatorSpace::from_sparse_generators(left_gens, self.tol).expect("nonempty");
        let right_eq = span_equal(&right, &target, self.tol).expect("same ambient");
        let left_eq = span_equal(&left, &target, self.tol).expect("same ambient");
        CancellationReport {
            expected_rank: target.rank(),
            right_rank: right.rank(),
            left_rank: left.rank(),
            right_residual: right_eq.max_residual,
            left_residual: left_eq.max_residual,
            pass: right_eq.equal && left_eq.equal,
        }
    }

    /// The Haar weight in counting normalization: on the spanning family,
    /// φ(α(δ_s)(λ_z⊗1)) = [z = e]; as a functional on A this is trace/|G₁|.
    pub fn haar_weight(&self) -> HaarWeight {
        HaarWeight { n1: self.n1() }
    }

    /// Worst invariance defect over the spanning family:
    /// max of ‖(id⊗φ)Δ(a) − φ(a)·1‖_max and the (φ⊗id) twin.
    pub fn haar_invariance_defect(&self) -> f64 {
        let phi = self.haar_weight();
        let n = self.dim();
        self.basis()
            .par_iter()
            .map(|a| {
                let da = self.w.comult(a);
                let value = phi.apply(a);
                let left = da.contract_second_leg(n, n, phi.scale());
                let right = da.contract_first_leg(n, n, phi.scale());
                let mut expect = crate::linalg::ComplexMatrix::zeros(n, n);
                for i in 0..n {
                    expect[(i, i)] = value;
                }
                left.sub(&expect)
                    .max_abs()
                    .max(right.sub(&expect).max_abs())
            })
            .reduce(|| 0.0, f64::max)
    }

    /// min φ(a*a) over seeded random combinations of the basis.
    pub fn haar_positivity_min(&self, samples: usize, seed: u64) -> f64 {
        let phi = self.haar_weight();
        let basis = self.basis();
        let mut worst = f64::INFINITY;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut acc = SparseMatrix::zeros(self.dim(), self.dim());
            for b in &basis {
                let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                acc = acc.add(&b.scale(c));
            }
            let val = phi.apply(&acc.adjoint().mul(&acc)).re;
            worst = worst.min(val);
        }
        worst
    }
}

/// The invariant weight, normalized so that φ(α(δ_s)(λ_z⊗1)) = [z=e].
#[derive(Debug, Clone, Copy)]
pub struct HaarWeight {
    n1: usize,
}

impl HaarWeight {
    pub fn scale(&self) -> f64 {
        1.0 / self.n1 as f64
    }

    /// φ on elements of A (trace against the counting normalization).
    pub fn apply(&self, m: &SparseMatrix) -> Complex64 {
        let tr: Complex64 = m
            .iter()
            .filter(|&(r, c, _)| r == c)
            .map(|(_, _, v)| v)
            .sum();
        tr * self.scale()
    }
}

#[derive(Debug, Clone)]
pub struct CancellationReport {
    pub expected_rank: usize,
    pub right_rank: usize,
    pub left_rank: usize,
    pub right_residual: f64,
    pub left_residual: f64,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presets::{cyclic, direct_product, preset, resolve_subgroup};
    use crate::groups::{ExactFactorization, Subgroup};
    use crate::linalg::ComplexMatrix;

    fn pair_from(group_name: &str, g1_sel: &str, g2_sel: &str) -> FiniteMatchedPair {
        let g = preset(group_name).unwrap();
        let g1 = resolve_subgroup(&g, g1_sel).unwrap();
        let g2 = resolve_subgroup(&g, g2_sel).unwrap();
        FiniteMatchedPair::derive(ExactFactorization::new(g, g1, g2).unwrap())
    }

    fn product_pair(a: usize, b: usize) -> FiniteMatchedPair {
        let left = cyclic(a);
        let right = cyclic(b);
        let g = direct_product(&left, &right);
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

    fn trivial_pair() -> FiniteMatchedPair {
        let g = preset("trivial").unwrap();
        let s = Subgroup::new(&g, vec![0]).unwrap();
        FiniteMatchedPair::derive(ExactFactorization::new(g, s.clone(), s).unwrap())
    }

    #[test]
    fn trivial_pair_gives_identity_unitary() {
        let w = MultiplicativeUnitary::build(trivial_pair());
        assert!(w.perm().is_identity());
        assert!(w.check_pentagon().pass());
    }

    #[test]
    fn direct_product_w_splits_into_leg_factors() {
        // with both actions trivial the point map reduces to
        // (g,s,h,t) ↦ (hg, s, h, s⁻¹t)
        let mp = product_pair(2, 2);
        let w = MultiplicativeUnitary::build(mp.clone());
        let space = ProductSpace::new(vec![2, 2, 2, 2]);
        for x in 0..space.total() {
            let m = space.unflatten(x);
            let (g, s, h, t) = (m[0], m[1], m[2], m[3]);
            let expect =
                space.flatten(&[mp.g1().mul(h, g), s, h, mp.g2().mul(mp.g2().inv(s), t)]);
            assert_eq!(w.perm().apply(x), expect);
        }
        assert!(w.check_pentagon().pass());
    }

    #[test]
    fn unitarity_exact_and_dense_for_a_small_pair() {
        let w = MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)"));
        assert!(w.is_unitary());
        let dense = w.perm().to_dense();
        let prod = dense.adjoint().mul(&dense);
        assert!(prod.approx_eq(&ComplexMatrix::identity(36), 0.0));
    }

    #[test]
    fn pentagon_passes_on_sym3_and_sym4() {
        for (name, g1, g2) in [
            ("sym3", "A3", "(12)"),
            ("sym3", "(12)", "A3"),
            ("sym4", "(1234)", "stab4"),
        ] {
            let w = MultiplicativeUnitary::build(pair_from(name, g1, g2));
            let report = w.check_pentagon();
            assert!(
                report.pass(),
                "{name} pentagon failed at {:?}",
                report.first_mismatch
            );
            assert_eq!(report.points, w.h_dim().pow(3));
        }
    }

    #[test]
    fn pentagon_matches_dense_composition_on_cyclic6() {
        // oracle: materialize the three leg embeddings and multiply matrices
        let w = MultiplicativeUnitary::build(pair_from("cyclic6", "2", "3"));
        let w12 = w.leg_embed([0, 1]).to_dense();
        let w13 = w.leg_embed([0, 2]).to_dense();
        let w23 = w.leg_embed([1, 2]).to_dense();
        let lhs = w23.mul(&w12);
        let rhs = w12.mul(&w13).mul(&w23);
        assert!(lhs.approx_eq(&rhs, 0.0));
        assert!(w.check_pentagon().pass());
        assert_eq!(w.h_dim(), 6);
    }

    #[test]
    fn transposed_unitary_fails_pentagon_with_witness() {
        let w = MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)"));
        let mut map = w.perm().map().to_vec();
        map.swap(0, 7);
        let broken = w.clone().with_perm_unchecked(PointPerm::from_map(map).unwrap());
        let report = broken.check_pentagon();
        assert!(!report.pass());
        assert!(report.first_mismatch.is_some());
    }

    #[test]
    fn comultiplication_is_a_unital_star_homomorphism() {
        let alg = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        let w = alg.unitary();
        let n = alg.dim();
        let id = SparseMatrix::identity(n);
        assert!(w.comult(&id).sub(&SparseMatrix::identity(n * n)).max_abs() == 0.0);
        // multiplicativity and *-compatibility on random basis combinations
        let basis = alg.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..8 {
            let mut pick = |rng: &mut ChaCha8Rng| {
                let mut acc = SparseMatrix::zeros(n, n);
                for b in &basis {
                    let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                    acc = acc.add(&b.scale(c));
                }
                acc
            };
            let x = pick(&mut rng);
            let y = pick(&mut rng);
            let lhs = w.comult(&x.mul(&y));
            let rhs = w.comult(&x).mul(&w.comult(&y));
            assert!(lhs.sub(&rhs).max_abs() <= 1e-10);
            let star = w.comult(&x.adjoint());
            assert!(star.sub(&w.comult(&x).adjoint()).max_abs() <= 1e-12);
        }
    }

    #[test]
    fn comultiplication_is_coassociative_on_the_basis() {
        for pair in [pair_from("sym3", "A3", "(12)"), product_pair(2, 3)] {
            let alg = BicrossedAlgebra::new(MultiplicativeUnitary::build(pair), 1e-9);
            for a in alg.basis() {
                assert_eq!(alg.unitary().coassociativity_defect(&a), 0.0);
            }
        }
    }

    #[test]
    fn comult_perm_agrees_with_sparse_comult() {
        let alg = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        for z in 0..alg.pair().g1().order() {
            let via_perm = alg.unitary().comult_perm(&alg.lambda_perm(z)).to_sparse();
            let via_sparse = alg.unitary().comult(&alg.lambda_rep(z));
            assert!(via_perm.sub(&via_sparse).max_abs() == 0.0);
        }
    }

    #[test]
    fn slice_ranks_and_presentation_agree() {
        // trivial pair: scalars
        let triv = BicrossedAlgebra::new(MultiplicativeUnitary::build(trivial_pair()), 1e-9);
        let (a, ahat) = triv.slice_algebras();
        assert_eq!(a.rank(), 1);
        assert_eq!(ahat.rank(), 1);

        // direct product Z/2×Z/3: rank 6
        let prod = BicrossedAlgebra::new(MultiplicativeUnitary::build(product_pair(2, 3)), 1e-9);
        let (a, ahat) = prod.slice_algebras();
        assert_eq!(a.rank(), 6);
        assert_eq!(ahat.rank(), 6);
        let agree = prod.slice_presentation_agreement().unwrap();
        assert!(agree.equal, "residual {}", agree.max_residual);

        // sym3 pair
        let s3 = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        let agree = s3.slice_presentation_agreement().unwrap();
        assert!(
            agree.equal && agree.rank_left == 6,
            "rank {} residual {}",
            agree.rank_left,
            agree.max_residual
        );
        let dual_eq =
            span_equal(&s3.slice_algebras().1, &s3.dual_presentation_space(), 1e-9).unwrap();
        assert!(dual_eq.equal, "dual residual {}", dual_eq.max_residual);
    }

    #[test]
    fn presentation_family_is_linearly_independent() {
        for pair in [pair_from("sym3", "A3", "(12)"), product_pair(2, 3)] {
            let alg = BicrossedAlgebra::new(MultiplicativeUnitary::build(pair), 1e-9);
            let space = alg.presentation_space();
            assert_eq!(space.rank(), alg.dim());
            assert!(space.is_star_closed(1e-9));
            assert!(space.contains_identity(1e-9));
        }
    }

    #[test]
    fn cancellation_ranks_on_sym3() {
        let alg = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        let report = alg.check_cancellation();
        assert!(report.pass, "cancellation: {report:?}");
        assert_eq!(report.expected_rank, 36);
        assert_eq!(report.right_rank, 36);
        assert_eq!(report.left_rank, 36);
    }

    #[test]
    fn haar_weight_values_and_invariance() {
        let alg = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        let phi = alg.haar_weight();
        // φ(1) = |G₂| by linearity over the s-partition at z = e
        let id = SparseMatrix::identity(alg.dim());
        assert!((phi.apply(&id).re - alg.pair().g2().order() as f64).abs() < 1e-12);
        // φ vanishes off the identity translation
        for z in 1..alg.pair().g1().order() {
            for s in 0..alg.pair().g2().order() {
                assert_eq!(phi.apply(&alg.basis_element(s, z)).norm(), 0.0);
            }
        }
        for s in 0..alg.pair().g2().order() {
            let e = alg.pair().g1().identity();
            assert!((phi.apply(&alg.basis_element(s, e)).re - 1.0).abs() < 1e-12);
        }
        assert!(alg.haar_invariance_defect() <= 1e-9);
        assert!(alg.haar_positivity_min(1000, 3) >= -1e-10);
    }

    #[test]
    fn dual_unitary_satisfies_pentagon_and_dual_coassociativity() {
        for pair in [pair_from("sym3", "A3", "(12)"), product_pair(2, 3)] {
            let alg = BicrossedAlgebra::new(MultiplicativeUnitary::build(pair), 1e-9);
            assert!(alg.unitary().check_dual_pentagon().pass());
            let (_, ahat) = alg.slice_algebras();
            assert!(ahat.is_star_closed(1e-9));
            assert!(ahat.contains_identity(1e-9));
            for k in 0..ahat.rank() {
                let gen = ahat.basis_matrix(k);
                assert!(alg.unitary().dual_coassociativity_defect(&gen) <= 1e-10);
            }
        }
    }

    #[test]
    fn trivial_pair_dual_is_identity() {
        let w = MultiplicativeUnitary::build(trivial_pair());
        assert!(w.dual_perm().is_identity());
    }

    #[test]
    fn commutativity_tracks_action_triviality() {
        // A commutative ⟺ α trivial (G₁ abelian here); Â ⟺ β trivial
        let cases = [
            (pair_from("sym3", "A3", "(12)"), true, false),
            (pair_from("sym3", "(12)", "A3"), false, true),
            (product_pair(2, 3), true, true),
        ];
        for (pair, a_comm, ahat_comm) in cases {
            let alg = BicrossedAlgebra::new(MultiplicativeUnitary::build(pair), 1e-9);
            let (a, ahat) = alg.slice_algebras();
            assert_eq!(a.max_generator_commutator() <= 1e-10, a_comm);
            assert_eq!(ahat.max_generator_commutator() <= 1e-10, ahat_comm);
            assert_eq!(alg.pair().alpha_is_trivial(), a_comm);
            assert_eq!(alg.pair().beta_is_trivial(), ahat_comm);
        }
    }

    #[test]
    fn dual_comult_matches_dual_unitary_conjugation() {
        // Δ̂(â) = σ(W(â⊗1)W*) = Ŵ*(1⊗â)Ŵ
        let alg = BicrossedAlgebra::new(
            MultiplicativeUnitary::build(pair_from("sym3", "A3", "(12)")),
            1e-9,
        );
        let n = alg.dim();
        let dual = alg.unitary().dual_perm();
        for x in 0..alg.pair().g1().order().min(3) {
            let a_hat = alg.dual_basis_element(x, 0);
            let lhs = alg.unitary().dual_comult(&a_hat);
            let rhs = dual.conjugate_sparse(&a_hat.tensor_with_identity(n, true));
            assert!(lhs.sub(&rhs).max_abs() == 0.0);
        }
    }
}
