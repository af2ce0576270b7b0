//! Discrete Fourier transform of a finite abelian group.

use super::ComplexMatrix;
use crate::groups::CharacterGroup;
#[cfg(test)]
use num_complex::Complex64;

/// The unitary `F[ĝ, h] = |H|^{-1/2}·⟨h, ĝ⟩`. Conjugation by `F`
/// diagonalizes the translation operators of H.
pub fn dft_unitary(chars: &CharacterGroup) -> ComplexMatrix {
    let n = chars.order();
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, n, |ghat, h| chars.pairing(h, ghat) * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presets::cyclic;
    use crate::linalg::PointPerm;

    #[test]
    fn order_one_group_gives_the_scalar_one() {
        let ch = CharacterGroup::new(&cyclic(1)).unwrap();
        let f = dft_unitary(&ch);
        assert_eq!(f.rows(), 1);
        assert!((f[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn z2_gives_the_normalized_sign_matrix() {
        let ch = CharacterGroup::new(&cyclic(2)).unwrap();
        let f = dft_unitary(&ch);
        let s = 1.0 / 2.0_f64.sqrt();
        let expect = ComplexMatrix::from_rows(
            2,
            2,
            vec![
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ],
        );
        // character enumeration starts with the trivial character; rows may
        // only differ by the sign pattern, which for Z/2 is forced
        assert!(f.approx_eq(&expect, 1e-12));
    }

    #[test]
    fn z4_translations_diagonalize() {
        let g = cyclic(4);
        let ch = CharacterGroup::new(&g).unwrap();
        let f = dft_unitary(&ch);
        assert!(f.is_unitary(1e-12));
        for z in 0..4 {
            // translation (λ_z ξ)(h) = ξ(h·z)
            let lam = PointPerm::from_fn(4, |h| g.mul(h, z)).unwrap().to_dense();
            let diag = f.mul(&lam).mul(&f.adjoint());
            let mut off = 0.0_f64;
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        off = off.max(diag[(i, j)].norm());
                    }
                }
            }
            assert!(off <= 1e-12, "off-diagonal mass {off} for z={z}");
        }
    }
}
