//! Coordinate-list sparse matrices.
//!
//! Every operator built from the finite presets (multiplication operators,
//! group translations, slices of a permutation unitary, and their products)
//! is a partial permutation matrix, so nnz stays at or below the matrix
//! dimension. Entries are kept sorted by (row, col) and consolidated.

use super::ComplexMatrix;
use num_complex::Complex64;

const DROP_EPS: f64 = 0.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect(),
        }
    }

    /// Builds from arbitrary (row, col, value) triples; duplicates are summed,
    /// exact zeros dropped.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        it: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut entries: Vec<(usize, usize, Complex64)> = it.into_iter().collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut out: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            debug_assert!(r < rows && c < cols);
            match out.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => out.push((r, c, v)),
            }
        }
        out.retain(|&(_, _, v)| v.norm_sqr() > DROP_EPS);
        SparseMatrix { rows, cols, entries: out }
    }

    pub fn from_dense(m: &ComplexMatrix) -> Self {
        Self::from_entries(
            m.rows(),
            m.cols(),
            (0..m.rows()).flat_map(|i| {
                (0..m.cols()).filter_map(move |j| {
                    let v = m[(i, j)];
                    (v.norm_sqr() != 0.0).then_some((i, j, v))
                })
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.rows, self.cols);
        for &(r, c, v) in &self.entries {
            m[(r, c)] += v;
        }
        m
    }

    pub fn adjoint(&self) -> SparseMatrix {
        Self::from_entries(
            self.cols,
            self.rows,
            self.entries.iter().map(|&(r, c, v)| (c, r, v.conj())),
        )
    }

    pub fn scale(&self, s: Complex64) -> SparseMatrix {
        Self::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * s)),
        )
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_entries(
            self.rows,
            self.cols,
            self.entries.iter().chain(&rhs.entries).copied(),
        )
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        // group rhs entries by row for merge
        let mut row_start = vec![usize::MAX; rhs.rows + 1];
        for (idx, &(r, _, _)) in rhs.entries.iter().enumerate() {
            if row_start[r] == usize::MAX {
                row_start[r] = idx;
            }
        }
        row_start[rhs.rows] = rhs.entries.len();
        for r in (0..rhs.rows).rev() {
            if row_start[r] == usize::MAX {
                row_start[r] = row_start[r + 1];
            }
        }
        let triples = self.entries.iter().flat_map(|&(i, k, v)| {
            rhs.entries[row_start[k]..row_start[k + 1]]
                .iter()
                .map(move |&(_, j, w)| (i, j, v * w))
        });
        Self::from_entries(self.rows, rhs.cols, triples)
    }

    /// Frobenius pairing ⟨A, B⟩ = Σ conj(a) b over matching positions.
    pub fn frobenius_inner(&self, rhs: &SparseMatrix) -> Complex64 {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let (mut i, mut j) = (0, 0);
        let mut acc = Complex64::new(0.0, 0.0);
        while i < self.entries.len() && j < rhs.entries.len() {
            let a = &self.entries[i];
            let b = &rhs.entries[j];
            match (a.0, a.1).cmp(&(b.0, b.1)) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += a.2.conj() * b.2;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(_, _, v)| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(_, _, v)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Kronecker product on the row-major product indexing.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let triples = self.entries.iter().flat_map(|&(i, j, v)| {
            rhs.entries
                .iter()
                .map(move |&(k, l, w)| (i * rhs.rows + k, j * rhs.cols + l, v * w))
        });
        Self::from_entries(self.rows * rhs.rows, self.cols * rhs.cols, triples)
    }

    /// Embeds a square operator on one leg-pair of a doubled space: given
    /// `m` on H and the identity on the other copy, returns 1⊗m or m⊗1.
    pub fn tensor_with_identity(&self, id_dim: usize, identity_first: bool) -> SparseMatrix {
        assert_eq!(self.rows, self.cols);
        if identity_first {
            SparseMatrix::identity(id_dim).kron(self)
        } else {
            self.kron(&SparseMatrix::identity(id_dim))
        }
    }

    /// Inserts an identity leg between the two legs of an operator on
    /// H₁⊗H₂, giving its (1,3)-embedding on H₁⊗H_mid⊗H₂.
    pub fn insert_middle_leg(&self, d1: usize, d2: usize, id_dim: usize) -> SparseMatrix {
        assert_eq!(self.rows, d1 * d2);
        assert_eq!(self.cols, d1 * d2);
        let out_dim = d1 * id_dim * d2;
        let triples = self.entries.iter().flat_map(|&(r, c, v)| {
            let (r1, r2) = (r / d2, r % d2);
            let (c1, c2) = (c / d2, c % d2);
            (0..id_dim).map(move |y| (((r1 * id_dim) + y) * d2 + r2, ((c1 * id_dim) + y) * d2 + c2, v))
        });
        Self::from_entries(out_dim, out_dim, triples)
    }

    /// Functional slice against the matrix unit ω_{uv} on the *second* leg:
    /// `out[p, q] = M[(p,u), (q,v)]` for M on H₁⊗H₂.
    pub fn slice_second_leg(&self, d1: usize, d2: usize, u: usize, v: usize) -> SparseMatrix {
        assert_eq!(self.rows, d1 * d2);
        assert_eq!(self.cols, d1 * d2);
        Self::from_entries(
            d1,
            d1,
            self.entries.iter().filter_map(|&(r, c, val)| {
                (r % d2 == u && c % d2 == v).then(|| (r / d2, c / d2, val))
            }),
        )
    }

    /// Functional slice against the matrix unit ω_{uv} on the *first* leg:
    /// `out[p, q] = M[(u,p), (v,q)]`.
    pub fn slice_first_leg(&self, d1: usize, d2: usize, u: usize, v: usize) -> SparseMatrix {
        assert_eq!(self.rows, d1 * d2);
        assert_eq!(self.cols, d1 * d2);
        Self::from_entries(
            d2,
            d2,
            self.entries.iter().filter_map(|&(r, c, val)| {
                (r / d2 == u && c / d2 == v).then(|| (r % d2, c % d2, val))
            }),
        )
    }

    /// Partial trace over the second leg, scaled: `out[i,j] = w·Σ_t M[(i,t),(j,t)]`.
    pub fn contract_second_leg(&self, d1: usize, d2: usize, w: f64) -> ComplexMatrix {
        assert_eq!(self.rows, d1 * d2);
        let mut out = ComplexMatrix::zeros(d1, d1);
        for &(r, c, v) in &self.entries {
            if r % d2 == c % d2 {
                out[(r / d2, c / d2)] += v * w;
            }
        }
        out
    }

    /// Partial trace over the first leg, scaled.
    pub fn contract_first_leg(&self, d1: usize, d2: usize, w: f64) -> ComplexMatrix {
        assert_eq!(self.rows, d1 * d2);
        let mut out = ComplexMatrix::zeros(d2, d2);
        for &(r, c, v) in &self.entries {
            if r / d2 == c / d2 {
                out[(r % d2, c % d2)] += v * w;
            }
        }
        out
    }

    pub fn commutator_max_abs(&self, rhs: &SparseMatrix) -> f64 {
        self.mul(rhs).sub(&rhs.mul(self)).max_abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn mul_matches_dense() {
        let a = SparseMatrix::from_entries(3, 3, [(0, 1, c(2.0, 1.0)), (1, 2, c(-1.0, 0.0)), (2, 0, c(0.0, 1.0))]);
        let b = SparseMatrix::from_entries(3, 3, [(1, 1, c(1.0, 1.0)), (2, 0, c(3.0, 0.0)), (0, 2, c(0.5, 0.0))]);
        let lhs = a.mul(&b).to_dense();
        let rhs = a.to_dense().mul(&b.to_dense());
        assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn adjoint_and_inner_match_dense() {
        let a = SparseMatrix::from_entries(2, 3, [(0, 1, c(2.0, 1.0)), (1, 0, c(-1.0, 0.5))]);
        assert!(a.adjoint().to_dense().approx_eq(&a.to_dense().adjoint(), 0.0));
        let b = SparseMatrix::from_entries(2, 3, [(0, 1, c(1.0, -1.0)), (1, 2, c(2.0, 0.0))]);
        let lhs = a.frobenius_inner(&b);
        let rhs = a.to_dense().frobenius_inner(&b.to_dense());
        assert!((lhs - rhs).norm() < 1e-15);
    }

    #[test]
    fn kron_matches_dense() {
        let a = SparseMatrix::from_entries(2, 2, [(0, 1, c(1.0, 0.0)), (1, 0, c(2.0, 0.0))]);
        let b = SparseMatrix::from_entries(2, 2, [(0, 0, c(0.0, 1.0)), (1, 1, c(1.0, 1.0))]);
        let lhs = a.kron(&b).to_dense();
        let rhs = super::super::kron(&a.to_dense(), &b.to_dense());
        assert!(lhs.approx_eq(&rhs, 0.0));
    }

    #[test]
    fn slices_extract_expected_entries() {
        // M = A ⊗ B: (id⊗ω_{uv})M = B[u,v]·A, (ω_{uv}⊗id)M = A[u,v]·B
        let a = SparseMatrix::from_entries(2, 2, [(0, 0, c(1.0, 0.0)), (0, 1, c(2.0, 0.0)), (1, 1, c(3.0, 0.0))]);
        let b = SparseMatrix::from_entries(3, 3, [(0, 2, c(1.5, 0.0)), (1, 1, c(-1.0, 0.0))]);
        let m = a.kron(&b);
        let s = m.slice_second_leg(2, 3, 0, 2);
        assert!(s.to_dense().approx_eq(&a.to_dense().scale(c(1.5, 0.0)), 1e-15));
        let f = m.slice_first_leg(2, 3, 0, 1);
        assert!(f.to_dense().approx_eq(&b.to_dense().scale(c(2.0, 0.0)), 1e-15));
    }

    #[test]
    fn middle_leg_insertion_matches_flip_conjugated_kron() {
        // X on H₂⊗H₃, middle identity of dim 2: compare against the dense
        // route kron(X, I) conjugated into the (1,3) position
        let x = SparseMatrix::from_entries(6, 6, [(0, 5, c(1.0, 2.0)), (4, 2, c(-1.0, 0.0))]);
        let lifted = x.insert_middle_leg(2, 3, 2);
        let dense = lifted.to_dense();
        let x_dense = x.to_dense();
        // entries: lifted[(a,y,b),(a',y,b')] = x[(a,b),(a',b')]
        for a in 0..2 {
            for b in 0..3 {
                for ap in 0..2 {
                    for bp in 0..3 {
                        for y in 0..2 {
                            for yp in 0..2 {
                                let r = (a * 2 + y) * 3 + b;
                                let cc = (ap * 2 + yp) * 3 + bp;
                                let expect = if y == yp { x_dense[(a * 3 + b, ap * 3 + bp)] } else { c(0.0, 0.0) };
                                assert_eq!(dense[(r, cc)], expect);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn contraction_is_scaled_partial_trace() {
        let a = SparseMatrix::from_entries(2, 2, [(0, 1, c(1.0, 0.0)), (1, 1, c(2.0, 0.0))]);
        let b = SparseMatrix::identity(3);
        let m = a.kron(&b);
        let tr = m.contract_second_leg(2, 3, 0.5);
        // tr_2(A⊗I₃)·0.5 = 1.5·A
        assert!(tr.approx_eq(&a.to_dense().scale(c(1.5, 0.0)), 1e-15));
    }
}
