//! Conjugation bridge between the Lorentz picture SO+(1,7,C) and the 8x8
//! quadric group, A <-> T^{-1} A T with T = p_tilde * p_check.
//!
//! The bridge is a fixed conjugation, so it is an exact group homomorphism;
//! all error comes from the two constant matrices, whose entries are
//! 0, +-1, +-i, +-1/sqrt(2), +-i/sqrt(2).

use crate::consts::{minkowski, p_check, p_tilde, s8};
use crate::loops::LoopMat;
use crate::mat::CMat;

/// Precomputed change-of-basis matrices.
pub struct Bridge {
    t: CMat,
    t_inv: CMat,
}

impl Default for Bridge {
    fn default() -> Self {
        Self::new()
    }
}

impl Bridge {
    pub fn new() -> Self {
        let t = &p_tilde() * &p_check();
        // p_check is a real involution and p_tilde is unitary, so
        // T^{-1} = p_check * p_tilde^H exactly.
        let t_inv = &p_check() * &p_tilde().adjoint();
        debug_assert!((&t * &t_inv).residual_from_identity() < 1e-14);
        Self { t, t_inv }
    }

    /// Lorentz picture -> 8x8 quadric picture.
    pub fn to_g8(&self, a: &CMat) -> CMat {
        &(&self.t_inv * a) * &self.t
    }

    /// Quadric picture -> Lorentz picture.
    pub fn from_g8(&self, b: &CMat) -> CMat {
        &(&self.t * b) * &self.t_inv
    }

    pub fn to_g8_loop(&self, a: &LoopMat) -> LoopMat {
        a.conjugate_by(&self.t_inv, &self.t)
    }

    pub fn from_g8_loop(&self, b: &LoopMat) -> LoopMat {
        b.conjugate_by(&self.t, &self.t_inv)
    }
}

/// || A^t I_{1,7} A - I_{1,7} ||_max: membership residual for SO(1,7).
pub fn so17_residual(a: &CMat) -> f64 {
    let g = minkowski(8);
    (&(&(&a.transpose() * &g) * a) - &g).norm_max()
}

/// Residual of the transported reality condition: for real A in SO+(1,7),
/// the image satisfies S8 conj(B) S8 = B.
pub fn g8_reality_residual(b: &CMat) -> f64 {
    let s = s8();
    (&(&(&s * &b.conj()) * &s) - b).norm_max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{d0_twist, d_lorentz};
    use crate::mat::{C64, ONE};

    fn random_mat(dim: usize, seed: &mut u64) -> CMat {
        let mut next = || {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut m = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = C64::new(next(), next());
            }
        }
        m
    }

    #[test]
    fn identity_maps_to_identity() {
        let b = Bridge::new();
        assert!(b.to_g8(&CMat::identity(8)).residual_from_identity() < 1e-14);
        assert!(b.from_g8(&CMat::identity(8)).residual_from_identity() < 1e-14);
    }

    #[test]
    fn involution_matrix_maps_to_d0() {
        let b = Bridge::new();
        let img = b.to_g8(&d_lorentz());
        assert!((&img - &d0_twist()).norm_max() < 1e-14);
    }

    #[test]
    fn round_trip_random() {
        let b = Bridge::new();
        let mut seed = 42;
        for _ in 0..10 {
            let a = random_mat(8, &mut seed);
            let back = b.from_g8(&b.to_g8(&a));
            assert!((&back - &a).norm_max() < 1e-13);
        }
    }

    #[test]
    fn bridge_is_a_homomorphism() {
        let b = Bridge::new();
        let mut seed = 17;
        let x = random_mat(8, &mut seed);
        let y = random_mat(8, &mut seed);
        let lhs = b.to_g8(&(&x * &y));
        let rhs = &b.to_g8(&x) * &b.to_g8(&y);
        assert!((&lhs - &rhs).norm_max() < 1e-12);
    }

    #[test]
    fn so17_residual_examples() {
        assert!(so17_residual(&CMat::identity(8)) < 1e-15);
        let mut d = CMat::identity(8);
        d[(0, 0)] = -ONE;
        d[(1, 1)] = -ONE;
        assert!(so17_residual(&d) < 1e-15);
        let mut seed = 9;
        assert!(so17_residual(&random_mat(8, &mut seed)) > 1e-3);
    }

    #[test]
    fn reality_transport() {
        // Real orthogonal block rotations lie in SO+(1,7); their images are
        // fixed by the transported conjugation.
        let b = Bridge::new();
        let mut a = CMat::identity(8);
        let th = 0.7f64;
        a[(1, 1)] = C64::new(th.cos(), 0.0);
        a[(1, 2)] = C64::new(-th.sin(), 0.0);
        a[(2, 1)] = C64::new(th.sin(), 0.0);
        a[(2, 2)] = C64::new(th.cos(), 0.0);
        assert!(so17_residual(&a) < 1e-14);
        let img = b.to_g8(&a);
        assert!(g8_reality_residual(&img) < 1e-13);
    }
}
