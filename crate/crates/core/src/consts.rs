//! Fixed matrices of the 8x8 model: the quadric-form matrix J8, the real-form
//! conjugation S8, the twisting involution D0, and the 2+4+2 block grading.
//!
//! All of them are signed permutation matrices; they are rebuilt on demand
//! (construction cost is negligible next to any operation using them).

use crate::mat::{CMat, C64, I, ONE};

/// Antidiagonal matrix J_n with (J_n)_{k,l} = 1 when k + l = n - 1 (0-based).
pub fn antidiag(n: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        m[(k, n - 1 - k)] = ONE;
    }
    m
}

pub fn j2() -> CMat {
    antidiag(2)
}

pub fn j4() -> CMat {
    antidiag(4)
}

pub fn j8() -> CMat {
    antidiag(8)
}

/// 4x4 permutation swapping outer indices 1 and 4, fixing 2 and 3.
pub fn s4() -> CMat {
    CMat::from_real(
        4,
        4,
        &[
            0.0, 0.0, 0.0, 1.0, //
            0.0, 1.0, 0.0, 0.0, //
            0.0, 0.0, 1.0, 0.0, //
            1.0, 0.0, 0.0, 0.0,
        ],
    )
}

/// jc4 = s4 * j4: permutation swapping indices 2 and 3 (1-based), fixing 1, 4.
pub fn jc4() -> CMat {
    &s4() * &j4()
}

/// Real-form conjugation matrix: blocks [[0,0,J2],[0,S4,0],[J2,0,0]].
pub fn s8() -> CMat {
    let mut m = CMat::zeros(8, 8);
    m.set_block(0, 6, &j2());
    m.set_block(2, 2, &s4());
    m.set_block(6, 0, &j2());
    m
}

/// jc8 = s8 * j8 = j8 * s8 = diag-blocks(I2, jc4, I2).
pub fn jc8() -> CMat {
    let mut m = CMat::zeros(8, 8);
    m.set_block(0, 0, &CMat::identity(2));
    m.set_block(2, 2, &jc4());
    m.set_block(6, 6, &CMat::identity(2));
    m
}

/// Twisting involution in the 8x8 model: diag(1,1,-1,-1,-1,-1,1,1).
pub fn d0_twist() -> CMat {
    CMat::diag(&[
        ONE, ONE, -ONE, -ONE, -ONE, -ONE, ONE, ONE,
    ])
}

/// Symmetric-space involution matrix on the Lorentz side: diag(-I4, I4).
pub fn d_lorentz() -> CMat {
    CMat::diag(&[-ONE, -ONE, -ONE, -ONE, ONE, ONE, ONE, ONE])
}

/// Minkowski form I_{1,n-1} = diag(-1, 1, ..., 1) of size n.
pub fn minkowski(n: usize) -> CMat {
    let mut m = CMat::identity(n);
    m[(0, 0)] = -ONE;
    m
}

/// Block permutation with J2 blocks swapping the pairs (1,2) and (3,4).
pub fn p_check() -> CMat {
    let mut m = CMat::zeros(8, 8);
    m.set_block(0, 2, &j2());
    m.set_block(2, 0, &j2());
    m.set_block(4, 6, &j2());
    m.set_block(6, 4, &j2());
    m
}

/// The 1/sqrt(2) change-of-basis matrix pairing real coordinates into
/// isotropic ones.
pub fn p_tilde() -> CMat {
    let s = C64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let mut m = CMat::zeros(8, 8);
    let one = ONE;
    let mi = -I; // -i
    m[(0, 0)] = one;
    m[(0, 7)] = -one;
    m[(1, 0)] = one;
    m[(1, 7)] = one;
    m[(2, 1)] = mi;
    m[(2, 6)] = I;
    m[(3, 1)] = one;
    m[(3, 6)] = one;
    m[(4, 2)] = mi;
    m[(4, 5)] = I;
    m[(5, 2)] = one;
    m[(5, 5)] = one;
    m[(6, 3)] = mi;
    m[(6, 4)] = I;
    m[(7, 3)] = one;
    m[(7, 4)] = one;
    m.scale(s)
}

/// Sizes of the 2+4+2 grading.
pub const BLOCK_SIZES: [usize; 3] = [2, 4, 2];

/// Row/column offsets of the 2+4+2 grading.
pub const BLOCK_OFFSETS: [usize; 3] = [0, 2, 6];
