//! Finite-dimensional stand-in for closed linear spans of operators.
//!
//! An [`OperatorSpace`] holds a generating family of (sparse) matrices and
//! the eigendecomposition of their Frobenius Gram matrix. Singular values of
//! the vectorized generator family are the square roots of the Gram
//! eigenvalues, which keeps rank and projection work at `k×k` scale even when
//! the ambient space is large. Membership residuals are computed by explicit
//! accumulation of the residual vector (with one refinement pass), not by
//! subtracting squared norms, so exact members come out at machine scale.

use super::{ComplexMatrix, LinalgError, SparseMatrix};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

/// Eigenvalues of the Gram matrix below `k·ε·λ_max` are numerical noise and
/// carry no rank information: the Gram route squares the singular spectrum,
/// so `tol` values below `√(k·ε)` are capped at that resolution. The spans
/// verified here are integer-structured with nonzero singular values of
/// order one, far above the cap.
fn gram_noise_floor(k: usize) -> f64 {
    (k.max(16) as f64) * f64::EPSILON
}

#[derive(Debug, Clone)]
pub struct OperatorSpace {
    ambient_dim: usize,
    generators: Vec<SparseMatrix>,
    tol: f64,
    /// Gram eigenvalues, descending, clamped at zero.
    eigvals: Vec<f64>,
    eigvecs: DMatrix<Complex64>,
    rank: usize,
}

/// Outcome of a two-sided span comparison.
#[derive(Debug, Clone, Copy)]
pub struct SpanEquality {
    pub equal: bool,
    pub max_residual: f64,
    pub rank_left: usize,
    pub rank_right: usize,
}

impl OperatorSpace {
    pub fn from_sparse_generators(
        gens: Vec<SparseMatrix>,
        tol: f64,
    ) -> Result<Self, LinalgError> {
        if gens.is_empty() {
            return Err(LinalgError::EmptyGenerators);
        }
        let ambient_dim = gens[0].rows();
        for g in &gens {
            if g.rows() != ambient_dim || g.cols() != ambient_dim {
                return Err(LinalgError::DimensionMismatch(
                    "generators must be square and of equal size".into(),
                ));
            }
        }
        let generators: Vec<SparseMatrix> =
            gens.into_iter().filter(|g| g.nnz() > 0).collect();
        if generators.is_empty() {
            // span of zero matrices
            return Ok(OperatorSpace {
                ambient_dim,
                generators,
                tol,
                eigvals: Vec::new(),
                eigvecs: DMatrix::zeros(0, 0),
                rank: 0,
            });
        }
        let k = generators.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (i..k).map(move |j| (i, j)))
            .collect();
        let inner: Vec<Complex64> = pairs
            .par_iter()
            .map(|&(i, j)| generators[i].frobenius_inner(&generators[j]))
            .collect();
        let mut gram = DMatrix::zeros(k, k);
        for (&(i, j), &v) in pairs.iter().zip(&inner) {
            gram[(i, j)] = v;
            gram[(j, i)] = v.conj();
        }
        let eig = gram.symmetric_eigen();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .unwrap()
        });
        let eigvals: Vec<f64> = order
            .iter()
            .map(|&i| eig.eigenvalues[i].max(0.0))
            .collect();
        let eigvecs = DMatrix::from_fn(k, k, |r, c| eig.eigenvectors[(r, order[c])]);
        let lam_max = eigvals.first().copied().unwrap_or(0.0);
        let cut = (tol * tol * lam_max).max(gram_noise_floor(k) * lam_max);
        let rank = eigvals.iter().filter(|&&l| l > cut).count();
        Ok(OperatorSpace {
            ambient_dim,
            generators,
            tol,
            eigvals,
            eigvecs,
            rank,
        })
    }

    pub fn from_dense_generators(
        gens: &[ComplexMatrix],
        tol: f64,
    ) -> Result<Self, LinalgError> {
        if gens.is_empty() {
            return Err(LinalgError::EmptyGenerators);
        }
        Self::from_sparse_generators(gens.iter().map(SparseMatrix::from_dense).collect(), tol)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn generators(&self) -> &[SparseMatrix] {
        &self.generators
    }

    /// Singular values of the vectorized generator family, descending.
    pub fn singular_values(&self) -> Vec<f64> {
        self.eigvals.iter().map(|l| l.sqrt()).collect()
    }

    /// Materializes the i-th orthonormal basis matrix (a left singular
    /// vector of the generator family).
    pub fn basis_matrix(&self, i: usize) -> SparseMatrix {
        assert!(i < self.rank);
        let sigma = self.eigvals[i].sqrt();
        let mut acc = SparseMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for (j, g) in self.generators.iter().enumerate() {
            let coeff = self.eigvecs[(j, i)] / sigma;
            if coeff.norm_sqr() > 0.0 {
                acc = acc.add(&g.scale(coeff));
            }
        }
        acc
    }

    /// Least-squares coefficients of `m` against the generators through the
    /// Gram pseudo-inverse (top `rank` eigenpairs).
    fn project_coeffs(&self, b: &DVector<Complex64>) -> DVector<Complex64> {
        let k = self.generators.len();
        let mut c = DVector::zeros(k);
        for i in 0..self.rank {
            let col = self.eigvecs.column(i);
            let vb: Complex64 = col.iter().zip(b.iter()).map(|(v, b)| v.conj() * b).sum();
            let scaled = vb / Complex64::new(self.eigvals[i], 0.0);
            for j in 0..k {
                c[j] += col[j] * scaled;
            }
        }
        c
    }

    fn residual_matrix(&self, m: &SparseMatrix, coeffs: &DVector<Complex64>) -> SparseMatrix {
        let mut triples: Vec<(usize, usize, Complex64)> = m.iter().collect();
        for (j, g) in self.generators.iter().enumerate() {
            let c = coeffs[j];
            if c.norm_sqr() > 0.0 {
                triples.extend(g.iter().map(|(r, cl, v)| (r, cl, -c * v)));
            }
        }
        SparseMatrix::from_entries(self.ambient_dim, self.ambient_dim, triples)
    }

    /// Frobenius distance from `m` to the span.
    pub fn residual_of(&self, m: &SparseMatrix) -> f64 {
        assert_eq!(m.rows(), self.ambient_dim);
        if self.generators.is_empty() {
            return m.frobenius_norm();
        }
        let b = DVector::from_fn(self.generators.len(), |j, _| {
            self.generators[j].frobenius_inner(m)
        });
        let mut coeffs = self.project_coeffs(&b);
        let r1 = self.residual_matrix(m, &coeffs);
        // one refinement pass soaks up pseudo-inverse roundoff
        let b2 = DVector::from_fn(self.generators.len(), |j, _| {
            self.generators[j].frobenius_inner(&r1)
        });
        coeffs += self.project_coeffs(&b2);
        self.residual_matrix(m, &coeffs).frobenius_norm()
    }

    /// Residual normalized by ‖m‖; zero matrices are in every span.
    pub fn relative_residual_of(&self, m: &SparseMatrix) -> f64 {
        let norm = m.frobenius_norm();
        if norm == 0.0 {
            0.0
        } else {
            self.residual_of(m) / norm
        }
    }

    /// True when `m` lies within `tol` (relative) of the span.
    pub fn contains(&self, m: &SparseMatrix, tol: f64) -> bool {
        self.relative_residual_of(m) <= tol
    }

    /// Checks that products and adjoints of generators stay inside the span.
    pub fn is_star_closed(&self, tol: f64) -> bool {
        let prods_ok = self
            .generators
            .par_iter()
            .enumerate()
            .all(|(i, a)| {
                self.generators[i..]
                    .iter()
                    .all(|b| self.contains(&a.mul(b), tol) && self.contains(&b.mul(a), tol))
            });
        prods_ok && self.generators.par_iter().all(|a| self.contains(&a.adjoint(), tol))
    }

    pub fn contains_identity(&self, tol: f64) -> bool {
        self.contains(&SparseMatrix::identity(self.ambient_dim), tol)
    }

    /// Largest pairwise commutator magnitude over the generators.
    pub fn max_generator_commutator(&self) -> f64 {
        let k = self.generators.len();
        (0..k)
            .into_par_iter()
            .map(|i| {
                (i + 1..k)
                    .map(|j| self.generators[i].commutator_max_abs(&self.generators[j]))
                    .fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max)
    }
}

/// Orthonormal span of vectorized matrices; rank decided by singular values
/// below `tol·σ_max`.
pub fn span_basis(gens: &[ComplexMatrix], tol: f64) -> Result<OperatorSpace, LinalgError> {
    OperatorSpace::from_dense_generators(gens, tol)
}

/// Two-sided span comparison; reports the worst projection residual of any
/// generator of one space against the other.
pub fn span_equal(
    s1: &OperatorSpace,
    s2: &OperatorSpace,
    tol: f64,
) -> Result<SpanEquality, LinalgError> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(LinalgError::AmbientMismatch(s1.ambient_dim, s2.ambient_dim));
    }
    let worst_into = |from: &OperatorSpace, into: &OperatorSpace| -> f64 {
        from.generators
            .par_iter()
            .map(|g| into.relative_residual_of(g))
            .reduce(|| 0.0, f64::max)
    };
    let max_residual = worst_into(s1, s2).max(worst_into(s2, s1));
    Ok(SpanEquality {
        equal: s1.rank == s2.rank && max_residual <= tol,
        max_residual,
        rank_left: s1.rank,
        rank_right: s2.rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit(n: usize, i: usize, j: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        m[(i, j)] = c(1.0, 0.0);
        m
    }

    #[test]
    fn scalar_multiples_collapse_to_rank_one() {
        let i = ComplexMatrix::identity(3);
        let s = span_basis(&[i.clone(), i.scale(c(2.0, 0.0))], 1e-9).unwrap();
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn dependent_triple_has_rank_two() {
        let e11 = unit(2, 0, 0);
        let e22 = unit(2, 1, 1);
        let sum = e11.add(&e22);
        let s = span_basis(&[e11, e22, sum], 1e-9).unwrap();
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn matrix_units_span_everything() {
        let n = 3;
        let gens: Vec<ComplexMatrix> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| unit(n, i, j))
            .collect();
        let s = span_basis(&gens, 1e-9).unwrap();
        assert_eq!(s.rank(), n * n);
    }

    #[test]
    fn span_basis_is_idempotent() {
        let gens = vec![
            unit(2, 0, 0),
            unit(2, 0, 0).add(&unit(2, 1, 0).scale(c(0.0, 2.0))),
            unit(2, 1, 1),
        ];
        let s = span_basis(&gens, 1e-9).unwrap();
        let basis: Vec<ComplexMatrix> = (0..s.rank()).map(|i| s.basis_matrix(i).to_dense()).collect();
        let s2 = span_basis(&basis, 1e-9).unwrap();
        assert_eq!(s.rank(), s2.rank());
        // basis orthonormality within tolerance
        for i in 0..s.rank() {
            for j in 0..s.rank() {
                let ip = basis[i].frobenius_inner(&basis[j]);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn identical_spans_have_zero_residual() {
        let gens = vec![unit(2, 0, 1), unit(2, 1, 0)];
        let s1 = span_basis(&gens, 1e-9).unwrap();
        let s2 = span_basis(&gens, 1e-9).unwrap();
        let eq = span_equal(&s1, &s2, 1e-9).unwrap();
        assert!(eq.equal);
        assert!(eq.max_residual <= 1e-12);
    }

    #[test]
    fn disjoint_units_are_not_equal() {
        let s1 = span_basis(&[unit(2, 0, 0)], 1e-9).unwrap();
        let s2 = span_basis(&[unit(2, 1, 1)], 1e-9).unwrap();
        let eq = span_equal(&s1, &s2, 1e-9).unwrap();
        assert!(!eq.equal);
        assert!(eq.max_residual > 0.5);
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let s1 = span_basis(&[unit(2, 0, 0)], 1e-9).unwrap();
        let s2 = span_basis(&[unit(3, 0, 0)], 1e-9).unwrap();
        assert!(span_equal(&s1, &s2, 1e-9).is_err());
    }

    #[test]
    fn shift_powers_match_numerically_computed_commutant() {
        // X = cyclic shift on C³; the span of its powers must equal the
        // commutant of X, computed here independently as the nullspace of
        // M ↦ XM − MX via SVD of the 9×9 commutation matrix.
        let n = 3;
        let x = {
            let mut m = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                m[(i, (i + 1) % n)] = c(1.0, 0.0);
            }
            m
        };
        let powers = vec![ComplexMatrix::identity(n), x.clone(), x.mul(&x)];
        let s1 = span_basis(&powers, 1e-9).unwrap();

        let mut comm = DMatrix::<Complex64>::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let mut v = c(0.0, 0.0);
                        if b == j {
                            v += x[(i, a)];
                        }
                        if a == i {
                            v -= x[(b, j)];
                        }
                        comm[(i * n + j, a * n + b)] = v;
                    }
                }
            }
        }
        let svd = comm.svd(true, true);
        let vt = svd.v_t.unwrap();
        let smax = svd.singular_values.max();
        let null_gens: Vec<ComplexMatrix> = svd
            .singular_values
            .iter()
            .enumerate()
            .filter(|(_, s)| **s <= 1e-10 * smax)
            .map(|(k, _)| {
                ComplexMatrix::from_fn(n, n, |i, j| vt[(k, i * n + j)].conj())
            })
            .collect();
        assert_eq!(null_gens.len(), 3);
        let s2 = span_basis(&null_gens, 1e-9).unwrap();
        let eq = span_equal(&s1, &s2, 1e-9).unwrap();
        assert!(eq.equal, "max residual {}", eq.max_residual);
        assert_eq!(s1.rank(), 3);
    }
}
