//! Exact permutation operators as index maps.
//!
//! A point map `T` on a finite index set induces the unitary `P_T` with
//! `(P_T ξ)(x) = ξ(T(x))`, i.e. `P_T[x, y] = [y = T(x)]`. Products of such
//! operators compose index maps with no floating point:
//! `P_S · P_T = P_{T∘S}` (the right factor acts on the vector first, so its
//! map is applied last when reading through).

use super::{ComplexMatrix, SparseMatrix};
use num_complex::Complex64;

/// Row-major flattening of a product index set (last leg fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    pub dims: Vec<usize>,
}

impl ProductSpace {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d > 0));
        ProductSpace { dims }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn flatten(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.dims.len());
        let mut idx = 0;
        for (d, &i) in self.dims.iter().zip(multi) {
            debug_assert!(i < *d);
            idx = idx * d + i;
        }
        idx
    }

    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    }
}

/// Unitary permutation operator `(Uξ)(x) = ξ(map[x])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointPerm {
    map: Vec<usize>,
}

impl PointPerm {
    /// Builds from an explicit index map, verifying bijectivity by exhaustion.
    pub fn from_map(map: Vec<usize>) -> Result<Self, usize> {
        let n = map.len();
        let mut seen = vec![false; n];
        for (x, &y) in map.iter().enumerate() {
            if y >= n || seen[y] {
                return Err(x);
            }
            seen[y] = true;
        }
        Ok(PointPerm { map })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self, usize> {
        Self::from_map((0..n).map(f).collect())
    }

    pub fn identity(n: usize) -> Self {
        PointPerm { map: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Operator product `self · rhs` (rhs acts on vectors first).
    pub fn op_mul(&self, rhs: &PointPerm) -> PointPerm {
        assert_eq!(self.dim(), rhs.dim());
        PointPerm {
            map: self.map.iter().map(|&x| rhs.map[x]).collect(),
        }
    }

    /// Adjoint = inverse.
    pub fn inverse(&self) -> PointPerm {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        PointPerm { map: inv }
    }

    /// First index where the two operators disagree.
    pub fn first_mismatch(&self, other: &PointPerm) -> Option<usize> {
        self.map
            .iter()
            .zip(&other.map)
            .position(|(a, b)| a != b)
    }

    /// Embeds a point map acting on the selected legs of a product space,
    /// identity on the rest. `legs` lists, in order, the legs (0-based) that
    /// the operand's own legs occupy.
    pub fn embed_legs(
        op_space: &ProductSpace,
        full: &ProductSpace,
        legs: &[usize],
        op: &PointPerm,
    ) -> PointPerm {
        assert_eq!(op_space.total(), op.dim());
        assert_eq!(op_space.dims.len(), legs.len());
        for (k, &l) in legs.iter().enumerate() {
            assert_eq!(op_space.dims[k], full.dims[l], "leg dimension mismatch");
        }
        let n = full.total();
        let mut map = Vec::with_capacity(n);
        let mut sub = vec![0usize; legs.len()];
        for x in 0..n {
            let mut multi = full.unflatten(x);
            for (k, &l) in legs.iter().enumerate() {
                sub[k] = multi[l];
            }
            let image = op_space.unflatten(op.apply(op_space.flatten(&sub)));
            for (k, &l) in legs.iter().enumerate() {
                multi[l] = image[k];
            }
            map.push(full.flatten(&multi));
        }
        PointPerm { map }
    }

    /// Tensor flip `Σ: H₁⊗H₂ → H₂⊗H₁`, `(Σξ)(y, x) = ξ(x, y)`; rows are
    /// indexed in the flipped ordering, columns in the original one.
    pub fn flip(d1: usize, d2: usize) -> PointPerm {
        let row_space = ProductSpace::new(vec![d2, d1]);
        let col_space = ProductSpace::new(vec![d1, d2]);
        let map = (0..d1 * d2)
            .map(|x| {
                let m = row_space.unflatten(x);
                col_space.flatten(&[m[1], m[0]])
            })
            .collect();
        PointPerm { map }
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n, n);
        for (x, &y) in self.map.iter().enumerate() {
            m[(x, y)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_entries(
            self.dim(),
            self.dim(),
            self.map
                .iter()
                .enumerate()
                .map(|(x, &y)| (x, y, Complex64::new(1.0, 0.0))),
        )
    }

    /// Conjugation `self* · m · self` of a sparse operator, entrywise exact:
    /// the entry at `(a, b)` moves to `(map⁻¹... ` — concretely, the result
    /// has `out[T(a), T(b)] = m[a, b]` for `T` the inverse index map read
    /// through `(P_T ξ)(x) = ξ(T(x))` semantics.
    pub fn conjugate_sparse(&self, m: &SparseMatrix) -> SparseMatrix {
        // (P_T* M P_T)[u, v] = M[T⁻¹(u), T⁻¹(v)], i.e. entry (a, b) lands at (T(a), T(b)).
        assert_eq!(m.rows(), self.dim());
        assert_eq!(m.cols(), self.dim());
        SparseMatrix::from_entries(
            m.rows(),
            m.cols(),
            m.iter().map(|(a, b, v)| (self.map[a], self.map[b], v)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_matches_dense_product() {
        let p = PointPerm::from_map(vec![2, 0, 3, 1]).unwrap();
        let q = PointPerm::from_map(vec![1, 3, 0, 2]).unwrap();
        let lhs = p.op_mul(&q).to_dense();
        let rhs = p.to_dense().mul(&q.to_dense());
        assert!(lhs.approx_eq(&rhs, 0.0));
    }

    #[test]
    fn inverse_is_adjoint() {
        let p = PointPerm::from_map(vec![3, 1, 0, 2]).unwrap();
        assert!(p
            .inverse()
            .to_dense()
            .approx_eq(&p.to_dense().adjoint(), 0.0));
        assert!(p.op_mul(&p.inverse()).is_identity());
    }

    #[test]
    fn flip_squares_to_identity() {
        let s = PointPerm::flip(3, 3);
        assert!(s.op_mul(&s).is_identity());
    }

    #[test]
    fn flip_matches_dense_flip_operator() {
        let s = PointPerm::flip(2, 3);
        let dense = super::super::flip_operator(&super::super::TensorShape::new(vec![2, 3])).unwrap();
        assert!(s.to_dense().approx_eq(&dense, 0.0));
    }

    #[test]
    fn embed_legs_matches_kron() {
        let op = PointPerm::from_map(vec![1, 0]).unwrap();
        let full = ProductSpace::new(vec![2, 3]);
        let emb = PointPerm::embed_legs(&ProductSpace::new(vec![2]), &full, &[0], &op);
        let dense = super::super::kron(&op.to_dense(), &ComplexMatrix::identity(3));
        assert!(emb.to_dense().approx_eq(&dense, 0.0));

        let emb2 = PointPerm::embed_legs(&ProductSpace::new(vec![3]), &ProductSpace::new(vec![2, 3]), &[1], &PointPerm::from_map(vec![2, 0, 1]).unwrap());
        let dense2 = super::super::kron(&ComplexMatrix::identity(2), &PointPerm::from_map(vec![2, 0, 1]).unwrap().to_dense());
        assert!(emb2.to_dense().approx_eq(&dense2, 0.0));
    }

    #[test]
    fn conjugate_sparse_matches_dense() {
        let p = PointPerm::from_map(vec![2, 0, 1]).unwrap();
        let m = SparseMatrix::from_entries(
            3,
            3,
            [(0usize, 1usize, Complex64::new(1.5, -0.5)), (2, 2, Complex64::new(0.0, 2.0))],
        );
        let lhs = p.conjugate_sparse(&m).to_dense();
        let rhs = p
            .to_dense()
            .adjoint()
            .mul(&m.to_dense())
            .mul(&p.to_dense());
        assert!(lhs.approx_eq(&rhs, 1e-15));
    }

    #[test]
    fn bijectivity_violation_reported() {
        assert!(PointPerm::from_map(vec![0, 0, 1]).is_err());
        assert!(PointPerm::from_map(vec![0, 3]).is_err());
    }
}
