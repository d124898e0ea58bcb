//! Maurer-Cartan data of the extended frame: extraction by finite
//! differences, the bridge back to the Lorentz picture, flatness of the
//! loop family, and the closed bracket pattern of the normal-block algebra.

use crate::bridge::Bridge;
use crate::consts::{j2, minkowski, s4, BLOCK_OFFSETS, BLOCK_SIZES};
use crate::error::{CoreError, Result};
use crate::fd::dz_dzbar_mat;
use crate::loops::{loop_inv_g8, loop_mul, LoopMat};
use crate::mat::{commutator, C64, CMat, I, ONE};
use crate::potential::sharp2x4;

/// Default relative FD step for Maurer-Cartan extraction.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Maurer-Cartan data at a point.
#[derive(Clone, Debug)]
pub struct MCForm {
    /// Diagonal blocks of the degree-0 part in the 8x8 picture.
    pub a1: CMat,
    pub a0: CMat,
    pub a4: CMat,
    /// (1,2) block of the degree minus-one part (2x4).
    pub b_block: CMat,
    /// Lorentz-picture blocks of the same data.
    pub lorentz_a1: CMat,
    pub lorentz_a2: CMat,
    pub b1: CMat,
    /// Mass of the holomorphic derivative outside degrees {-1, 0}.
    pub structure_residual: f64,
    /// Mass of the degree minus-one part outside the two off-diagonal
    /// blocks (strict upper-triangularity of the p-part).
    pub offdiag_residual: f64,
}

/// Loop-valued Maurer-Cartan derivative alpha(d/dz) = F^{-1} dF/dz by
/// central differences of the frame map.
pub fn mc_alpha_z(
    frame_at: &dyn Fn(C64) -> Result<LoopMat>,
    z: C64,
    h: f64,
) -> Result<(LoopMat, LoopMat)> {
    let center = frame_at(z).map_err(|e| stencil_err(z, e))?;
    let ex = C64::new(h, 0.0);
    let ey = C64::new(0.0, h);
    let eval = |w: C64| frame_at(w).map_err(|e| stencil_err(z, e));
    let fxp = eval(z + ex)?;
    let fxm = eval(z - ex)?;
    let fyp = eval(z + ey)?;
    let fym = eval(z - ey)?;
    let s = C64::new(0.5 / h, 0.0);
    let dx = fxp.sub(&fxm).scale(s);
    let dy = fyp.sub(&fym).scale(s);
    let half = C64::new(0.5, 0.0);
    let df_dz = dx.sub(&dy.scale(I)).scale(half);
    let df_dzbar = dx.add(&dy.scale(I)).scale(half);
    let inv = loop_inv_g8(&center);
    Ok((loop_mul(&inv, &df_dz)?, loop_mul(&inv, &df_dzbar)?))
}

fn stencil_err(z: C64, e: CoreError) -> CoreError {
    match e {
        CoreError::OutsideBigCell { .. } | CoreError::PoleOfPotential { .. } => {
            CoreError::StencilCrossesBigCellBoundary {
                z,
                reason: e.to_string(),
            }
        }
        other => other,
    }
}

/// Extract the Maurer-Cartan blocks at z.
pub fn mc_form(frame_at: &dyn Fn(C64) -> Result<LoopMat>, z: C64, h: f64) -> Result<MCForm> {
    let (alpha_z, _) = mc_alpha_z(frame_at, z, h)?;
    let bridge = Bridge::new();

    let deg0 = alpha_z.coeff(0);
    let degm1 = alpha_z.coeff(-1);
    let structure_residual = alpha_z
        .support()
        .into_iter()
        .filter(|d| *d != 0 && *d != -1)
        .map(|d| alpha_z.coeff(d).norm_max())
        .fold(0.0, f64::max);

    let a1 = deg0.block(0, 0, 2, 2);
    let a0 = deg0.block(2, 2, 4, 4);
    let a4 = deg0.block(6, 6, 2, 2);
    let b_block = degm1.block(0, 2, 2, 4);

    // Everything of degree -1 outside blocks (1,2) and (2,3).
    let mut offdiag_residual = 0.0f64;
    for bi in 0..3 {
        for bj in 0..3 {
            if (bi, bj) == (0, 1) || (bi, bj) == (1, 2) {
                continue;
            }
            let blk = degm1.block(
                BLOCK_OFFSETS[bi],
                BLOCK_OFFSETS[bj],
                BLOCK_SIZES[bi],
                BLOCK_SIZES[bj],
            );
            offdiag_residual = offdiag_residual.max(blk.norm_max());
        }
    }

    let so_deg0 = bridge.from_g8(&deg0);
    let so_degm1 = bridge.from_g8(&degm1);
    let lorentz_a1 = so_deg0.block(0, 0, 4, 4);
    let lorentz_a2 = so_deg0.block(4, 4, 4, 4);
    let b1 = so_degm1.block(0, 4, 4, 4);

    Ok(MCForm {
        a1,
        a0,
        a4,
        b_block,
        lorentz_a1,
        lorentz_a2,
        b1,
        structure_residual,
        offdiag_residual,
    })
}

impl MCForm {
    /// so(1,3) relation for the top Lorentz block.
    pub fn a1_relation_residual(&self) -> f64 {
        let g = minkowski(4);
        (&(&(&self.lorentz_a1.transpose() * &g) + &(&g * &self.lorentz_a1))
            - &CMat::zeros(4, 4))
            .norm_max()
    }

    /// Antisymmetry of the normal block.
    pub fn a2_relation_residual(&self) -> f64 {
        (&self.lorentz_a2 + &self.lorentz_a2.transpose()).norm_max()
    }

    /// Distance of the normal block from the closed bracket pattern.
    pub fn a2_pattern_residual(&self) -> f64 {
        k2_pattern_residual(&self.lorentz_a2)
    }

    /// Isotropy of the off-diagonal Lorentz block.
    pub fn b1_isotropy_residual(&self) -> f64 {
        let g = minkowski(4);
        (&(&self.b1.transpose() * &g) * &self.b1).norm_max()
    }
}

/// Column-pattern residual of B1 = (h1, i h1, h3, i h3):
/// ||col2 - i col1|| + ||col4 - i col3||.
pub fn b1_pattern_residual(b1: &CMat) -> f64 {
    assert_eq!((b1.rows(), b1.cols()), (4, 4));
    let mut s1 = 0.0f64;
    let mut s2 = 0.0f64;
    for i in 0..4 {
        s1 += (b1[(i, 1)] - I * b1[(i, 0)]).norm_sqr();
        s2 += (b1[(i, 3)] - I * b1[(i, 2)]).norm_sqr();
    }
    s1.sqrt() + s2.sqrt()
}

/// Flatness residual of the loop family at a fixed circle point:
/// || d/dz B - d/dzbar A + [A, B] ||_max with
/// A = lambda^{-1} alpha_p'(d/dz) + alpha_k(d/dz) and
/// B = alpha_k(d/dzbar) + lambda alpha_p''(d/dzbar).
pub fn flatness_residual(
    frame_at: &dyn Fn(C64) -> Result<LoopMat>,
    z: C64,
    lambda: C64,
    h: f64,
) -> Result<f64> {
    let family_at = |w: C64| -> Result<(CMat, CMat)> {
        let (az, azbar) = mc_alpha_z(frame_at, w, h)?;
        let a = &az.coeff(-1).scale(ONE / lambda) + &az.coeff(0);
        let b = &azbar.coeff(0) + &azbar.coeff(1).scale(lambda);
        Ok((a, b))
    };
    let a_fun = |w: C64| -> Result<CMat> { Ok(family_at(w)?.0) };
    let b_fun = |w: C64| -> Result<CMat> { Ok(family_at(w)?.1) };
    let (a, b) = family_at(z)?;
    let (_, da_dzbar) = dz_dzbar_mat(&a_fun, z, h)?;
    let (db_dz, _) = dz_dzbar_mat(&b_fun, z, h)?;
    let resid = &(&db_dz - &da_dzbar) + &commutator(&a, &b);
    Ok(resid.norm_max())
}

/// The closed 4x4 antisymmetric pattern
///   [[0, -b12, -b13, -b14], [b12, 0, b14, -b13],
///    [b13, -b14, 0, -b34], [b14, b13, b34, 0]].
pub fn k2_pattern(b12: C64, b13: C64, b14: C64, b34: C64) -> CMat {
    let z = crate::mat::ZERO;
    CMat::from_rows(&[
        &[z, -b12, -b13, -b14],
        &[b12, z, b14, -b13],
        &[b13, -b14, z, -b34],
        &[b14, b13, b34, z],
    ])
}

/// Parameters of a pattern matrix, when it is one.
pub fn k2_params(m: &CMat) -> Result<(C64, C64, C64, C64)> {
    if k2_pattern_residual(m) > 1e-9 * (1.0 + m.norm_max()) {
        return Err(CoreError::PatternViolation(
            "matrix is not in the closed normal-block pattern".into(),
        ));
    }
    Ok((m[(1, 0)], m[(2, 0)], m[(3, 0)], m[(3, 2)]))
}

/// Max-norm distance from the pattern (projection residual).
pub fn k2_pattern_residual(m: &CMat) -> f64 {
    assert_eq!((m.rows(), m.cols()), (4, 4));
    let p = k2_pattern(m[(1, 0)], m[(2, 0)], m[(3, 0)], m[(3, 2)]);
    (m - &p).norm_max()
}

/// Verify the bracket of two pattern matrices against the closed formulas
///   b12' = 2 (b13~ b14 - b13 b14~),
///   b13' = (b12 - b34) b14~ - (b12~ - b34~) b14,
///   b14' = (b34 - b12) b13~ - (b34~ - b12~) b13,
///   b34' = -b12',
/// and check closure. Returns true when the direct commutator matches the
/// formula and stays in the pattern.
pub fn k2_closure_check(a: &CMat, a_tilde: &CMat) -> Result<bool> {
    let (b12, b13, b14, b34) = k2_params(a)?;
    let (t12, t13, t14, t34) = k2_params(a_tilde)?;
    let direct = commutator(a, a_tilde);
    let c12 = 2.0 * (t13 * b14 - b13 * t14);
    let c13 = (b12 - b34) * t14 - (t12 - t34) * b14;
    let c14 = (b34 - b12) * t13 - (t34 - t12) * b13;
    let c34 = -c12;
    let formula = k2_pattern(c12, c13, c14, c34);
    let scale = 1.0 + a.norm_max() * a_tilde.norm_max();
    Ok((&direct - &formula).norm_max() < 1e-10 * scale
        && k2_pattern_residual(&direct) < 1e-10 * scale)
}

/// Residuals of the closed diagonal-block formulas: the degree-0 blocks of
/// the Maurer-Cartan derivative equal
///   a1 = -l1 fcheck s4 u^sharp J2 l1^{-1} - l1_z l1^{-1},
///   a0 = -l0 (fcheck^sharp J2 ubar s4 - s4 ubar^sharp J2 fcheck) l0^{-1}
///        - l0_z l0^{-1},
///   a4 =  l4 J2 ubar s4 fcheck^sharp l4^{-1} - l4_z l4^{-1},
/// with the factor derivatives taken by finite differences of the
/// factorization in the same gauge.
pub struct DiagFormulaResiduals {
    pub a1: f64,
    pub a0: f64,
    pub a4: f64,
    /// Residual of the degree minus-one block against l1 fcheck l0^{-1}.
    pub b_block: f64,
}

pub fn mc_diag_formula_residuals(
    fc: &crate::potential::FcheckData,
    z: C64,
    h: f64,
    gauge: crate::iwasawa::MiddleGauge,
) -> Result<DiagFormulaResiduals> {
    use crate::iwasawa::{factor_l0, solve_w0};

    let frame_at =
        |w: C64| -> Result<LoopMat> { Ok(crate::iwasawa::extended_frame_at(fc, w, gauge)?.0) };
    let mc = mc_form(&frame_at, z, h)?;

    let w0 = solve_w0(fc, z)?;
    let l0b = factor_l0(&w0, z, gauge)?;
    let fcheck = fc.fcheck_at(z)?;
    let fsharp = sharp2x4(&fcheck);
    let ubar = w0.u.conj();
    let ubar_sharp = sharp2x4(&w0.u).conj();
    let j2m = j2();
    let s4m = s4();

    let l1_at = |w: C64| -> Result<CMat> {
        let w0 = solve_w0(fc, w)?;
        Ok(factor_l0(&w0, w, gauge)?.l1)
    };
    let l0_at = |w: C64| -> Result<CMat> {
        let w0 = solve_w0(fc, w)?;
        Ok(factor_l0(&w0, w, gauge)?.l0)
    };
    let l4_at = |w: C64| -> Result<CMat> {
        let w0 = solve_w0(fc, w)?;
        Ok(factor_l0(&w0, w, gauge)?.l4)
    };
    let (l1_z, _) = dz_dzbar_mat(&l1_at, z, h)?;
    let (l0_z, _) = dz_dzbar_mat(&l0_at, z, h)?;
    let (l4_z, _) = dz_dzbar_mat(&l4_at, z, h)?;

    let l1_inv = l0b.l1.inverse().unwrap();
    let l0_inv = l0b.l0.inverse().unwrap();
    let l4_inv = l0b.l4.inverse().unwrap();

    let a1_formula = &(&(&(&(&l0b.l1 * &fcheck) * &s4m) * &ubar_sharp) * &j2m)
        .scale(-ONE)
        * &l1_inv;
    let a1_formula = &a1_formula - &(&l1_z * &l1_inv);

    let inner = &(&(&(&fsharp * &j2m) * &ubar) * &s4m)
        - &(&(&(&s4m * &ubar_sharp) * &j2m) * &fcheck);
    let a0_formula = &(&(&l0b.l0 * &inner) * &l0_inv).scale(-ONE) - &(&l0_z * &l0_inv);

    let a4_formula =
        &(&(&(&(&l0b.l4 * &j2m) * &ubar) * &s4m) * &(&fsharp * &l4_inv)) - &(&l4_z * &l4_inv);

    let b_formula = &(&l0b.l1 * &fcheck) * &l0_inv;

    Ok(DiagFormulaResiduals {
        a1: (&mc.a1 - &a1_formula).norm_max(),
        a0: (&mc.a0 - &a0_formula).norm_max(),
        a4: (&mc.a4 - &a4_formula).norm_max(),
        b_block: (&mc.b_block - &b_formula).norm_max(),
    })
}
