//! Dense complex linear algebra: Kronecker products, tensor-flip and
//! leg-numbering operators, span/rank computations and discrete Fourier
//! transforms over finite abelian groups.
//!
//! Operators that are known to be permutations are kept as exact index maps
//! (see [`perm`]); dense matrices are materialized only where floating-point
//! span/rank work is unavoidable.

use num_complex::Complex64;
use thiserror::Error;

pub mod dft;
pub mod perm;
pub mod span;
pub mod sparse;

pub use dft::dft_unitary;
pub use perm::{PointPerm, ProductSpace};
pub use span::{span_basis, span_equal, OperatorSpace, SpanEquality};
pub use sparse::SparseMatrix;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("flip operator needs exactly two legs, got {0}")]
    WrongLegCount(usize),
    #[error("embed_leg supports three-leg shapes with leg pairs {{1,2}}, {{2,3}}, {{1,3}}; got {0}")]
    BadLegSelection(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

/// Ordered leg dimensions annotating a tensor-product space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorShape {
    pub dims: Vec<usize>,
}

impl TensorShape {
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(dims.iter().all(|&d| d > 0), "leg dimensions must be positive");
        TensorShape { dims }
    }

    /// Total dimension of the product space.
    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Complex64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        ComplexMatrix { rows, cols, entries }
    }

    pub fn diag(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Frobenius pairing ⟨A, B⟩ = Σ conj(a_ij) b_ij.
    pub fn frobenius_inner(&self, rhs: &ComplexMatrix) -> Complex64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// ‖U*U − I‖_max ≤ tol.
    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let prod = self.adjoint().mul(self);
        prod.sub(&ComplexMatrix::identity(self.rows)).max_abs() <= tol
    }

    pub fn approx_eq(&self, rhs: &ComplexMatrix, tol: f64) -> bool {
        (self.rows, self.cols) == (rhs.rows, rhs.cols) && self.sub(rhs).max_abs() <= tol
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out[(i * b.rows() + k, j * b.cols() + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Permutation matrix Σ with Σ(x⊗y) = y⊗x on a two-leg shape.
pub fn flip_operator(shape: &TensorShape) -> Result<ComplexMatrix, LinalgError> {
    if shape.dims.len() != 2 {
        return Err(LinalgError::WrongLegCount(shape.dims.len()));
    }
    let (d1, d2) = (shape.dims[0], shape.dims[1]);
    let n = d1 * d2;
    let mut m = ComplexMatrix::zeros(n, n);
    for a in 0..d1 {
        for b in 0..d2 {
            // e_a ⊗ e_b  ↦  e_b ⊗ e_a
            m[(b * d1 + a, a * d2 + b)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(m)
}

/// Which pair of legs an operator occupies on a three-leg space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegPair {
    OneTwo,
    TwoThree,
    OneThree,
}

/// Embeds `t` on the selected legs of a three-leg space, acting as the
/// identity on the remaining leg. `t₁₃` is realized as `Σ₂₃ t₁₂ Σ₂₃`.
pub fn embed_leg(
    t: &ComplexMatrix,
    shape: &TensorShape,
    legs: LegPair,
) -> Result<ComplexMatrix, LinalgError> {
    if shape.dims.len() != 3 {
        return Err(LinalgError::BadLegSelection(format!(
            "shape has {} legs",
            shape.dims.len()
        )));
    }
    let (d1, d2, d3) = (shape.dims[0], shape.dims[1], shape.dims[2]);
    let check = |need: usize| -> Result<(), LinalgError> {
        if t.rows() != need || t.cols() != need {
            Err(LinalgError::DimensionMismatch(format!(
                "operator is {}x{}, selected legs give {}",
                t.rows(),
                t.cols(),
                need
            )))
        } else {
            Ok(())
        }
    };
    match legs {
        LegPair::OneTwo => {
            check(d1 * d2)?;
            Ok(kron(t, &ComplexMatrix::identity(d3)))
        }
        LegPair::TwoThree => {
            check(d2 * d3)?;
            Ok(kron(&ComplexMatrix::identity(d1), t))
        }
        LegPair::OneThree => {
            check(d1 * d3)?;
            // conjugate t₁₂ on (1,3,2) by the flip of legs 2 and 3
            let t12 = kron(t, &ComplexMatrix::identity(d2));
            let flip23 = kron(
                &ComplexMatrix::identity(d1),
                &flip_operator(&TensorShape::new(vec![d2, d3]))?,
            );
            // Σ₂₃ maps H₁⊗H₂⊗H₃ → H₁⊗H₃⊗H₂; t₁₂ on the permuted space, then back
            let flip32 = kron(
                &ComplexMatrix::identity(d1),
                &flip_operator(&TensorShape::new(vec![d3, d2]))?,
            );
            Ok(flip32.mul(&t12).mul(&flip23))
        }
    }
}
