//! The explicit loop factorization: from the meromorphic frame H to the
//! real-form extended frame.
//!
//! Writing tau(H)^{-1} H = W W0 tau(W)^{-1} with W unipotent and W0 block
//! diagonal, the blocks (a, q, d, u) satisfy a triangular system that is
//! solved in the order d -> u -> q -> a; the fifth equation is a consequence
//! and is verified, never imposed. W0 = tau(L0)^{-1} L0 then yields the
//! block-triangular positive factor L0 and the extended frame
//! F = H tau(W) L0^{-1}.
//!
//! Everything before the triangular factors is polynomial in (z, zbar) over
//! powers of det(d) and can run on the exact backend; square roots enter
//! only through L0.

use crate::consts::{j2, jc4};
use crate::error::{CoreError, Result};
use crate::exact::{econsts, BiPoly, EMat};
use crate::loops::{loop_mul, tau, LoopMat};
use crate::mat::{C64, CMat, ONE, ZERO};
use crate::potential::{sharp2x4, ExactParts, FcheckData};

/// Residual bound for the factor equations at unit scale.
pub const FACTOR_TOL: f64 = 1e-11;

/// Condition-number cutoff on d beyond which the point is declared outside
/// the big cell.
pub const BIG_CELL_COND_CUTOFF: f64 = 1e12;

/// The block-diagonal middle term and the unipotent blocks.
#[derive(Clone, Debug)]
pub struct W0Blocks {
    /// 2x2 top block.
    pub a: CMat,
    /// 4x4 middle block.
    pub q: CMat,
    /// 2x2 bottom block; its invertibility is the big-cell condition.
    pub d: CMat,
    /// 2x4 block of the unipotent factor.
    pub u: CMat,
    /// 2x2 corner of the unipotent factor, g d^{-1}.
    pub g_check: CMat,
    /// Residual of the consequence equation u q - g ubar^{sharp t} jc4 = f.
    pub consequence_residual: f64,
}

/// Upper-triangular factors of W0 = tau(L0)^{-1} L0, positive diagonals.
#[derive(Clone, Debug)]
pub struct L0Blocks {
    pub l1: CMat,
    pub l0: CMat,
    pub l4: CMat,
}

/// sharp on a 4x2 matrix: the inverse reshuffle of `sharp2x4`.
/// For K = X^sharp (4x2), X = (J4 K J2)^t recovers the 2x4 matrix.
pub fn unsharp4x2(k: &CMat) -> CMat {
    assert_eq!((k.rows(), k.cols()), (4, 2));
    let mut x = CMat::zeros(2, 4);
    for i in 0..2 {
        for j in 0..4 {
            x[(i, j)] = k[(3 - j, 1 - i)];
        }
    }
    x
}

/// Numeric data entering the middle-term solve.
struct PointData {
    f: CMat,
    g: CMat,
    fsharp: CMat,
}

fn point_data(fc: &FcheckData, z: C64) -> Result<PointData> {
    let f = fc.f_at(z)?;
    let g = fc.g_at(z)?;
    let fsharp = sharp2x4(&f);
    Ok(PointData { f, g, fsharp })
}

/// Solve the middle-term system at z (numeric backend).
pub fn solve_w0(fc: &FcheckData, z: C64) -> Result<W0Blocks> {
    let PointData { f, g, fsharp } = point_data(fc, z)?;
    solve_w0_from_parts(&f, &g, &fsharp, z)
}

/// Solve the system from evaluated (f, g); exposed so the exact backend can
/// share the verification path.
pub fn solve_w0_from_parts(f: &CMat, g: &CMat, fsharp: &CMat, z: C64) -> Result<W0Blocks> {
    let jc4m = jc4();
    let fbar_t = f.conj().transpose(); // 4x2
    let fbar_tsharp = fsharp.conj().transpose(); // 2x4
    let gbar_t = g.adjoint();

    // d = I2 + fbar^{t sharp} jc4 f^sharp + gbar^t g
    let d = &(&CMat::identity(2) + &(&(&fbar_tsharp * &jc4m) * fsharp)) + &(&gbar_t * g);
    let smin = d.smallest_singular_value();
    let smax = d.largest_singular_value();
    if smin.is_nan() || smin <= 0.0 || smax / smin > BIG_CELL_COND_CUTOFF {
        return Err(CoreError::OutsideBigCell {
            z,
            reason: format!("d has condition number {:.3e}", smax / smin.max(1e-300)),
        });
    }
    let d_inv = d.inverse().ok_or_else(|| CoreError::OutsideBigCell {
        z,
        reason: "d numerically singular".into(),
    })?;

    // u^sharp d = f^sharp - jc4 fbar^t g
    let usharp = &(fsharp - &(&(&jc4m * &fbar_t) * g)) * &d_inv;
    let u = unsharp4x2(&usharp);

    // q = I4 + jc4 fbar^t f - u^sharp d ubar^{sharp t} jc4
    let ubar_sharp_t = usharp.conj().transpose();
    let q = &(&CMat::identity(4) + &(&(&jc4m * &fbar_t) * f))
        - &(&(&(&usharp * &d) * &ubar_sharp_t) * &jc4m);

    // a = I2 - u q jc4 ubar^t - g (dbar^t)^{-1} gbar^t
    let ubar_t = u.conj().transpose();
    let dbar_t_inv = d
        .conj()
        .transpose()
        .inverse()
        .ok_or_else(|| CoreError::OutsideBigCell {
            z,
            reason: "dbar^t numerically singular".into(),
        })?;
    let a = &(&CMat::identity(2) - &(&(&(&u * &q) * &jc4m) * &ubar_t))
        - &(&(g * &dbar_t_inv) * &gbar_t);

    let g_check = g * &d_inv;

    // Consequence: u q - g ubar^{sharp t} jc4 = f, verified, not imposed.
    let consequence = &(&(&u * &q) - &(&(g * &ubar_sharp_t) * &jc4m)) - f;
    let scale = 1.0 + f.norm_max().max(q.norm_max());
    let consequence_residual = consequence.norm_max() / scale;

    Ok(W0Blocks {
        a,
        q,
        d,
        u,
        g_check,
        consequence_residual,
    })
}

impl W0Blocks {
    /// Residuals of the five middle-term equations plus the corner relation
    /// g_check d = g; all should vanish at the working precision.
    pub fn equation_residuals(&self, fc: &FcheckData, z: C64) -> Result<[f64; 6]> {
        let PointData { f, g, fsharp } = point_data(fc, z)?;
        let jc4m = jc4();
        let fbar_t = f.conj().transpose();
        let fbar_tsharp = fsharp.conj().transpose();
        let gbar_t = g.adjoint();
        let usharp = sharp2x4(&self.u);
        let ubar_sharp_t = usharp.conj().transpose();
        let ubar_t = self.u.conj().transpose();

        let e_a = &(&self.d - &CMat::identity(2))
            - &(&(&(&fbar_tsharp * &jc4m) * &fsharp) + &(&gbar_t * &g));
        let e_b = &(&usharp * &self.d) - &(&fsharp - &(&(&jc4m * &fbar_t) * &g));
        let e_c = &(&self.q + &(&(&(&usharp * &self.d) * &ubar_sharp_t) * &jc4m))
            - &(&CMat::identity(4) + &(&(&jc4m * &fbar_t) * &f));
        let dbar_t_inv = self.d.conj().transpose().inverse().unwrap();
        let e_d = &(&(&self.a + &(&(&(&self.u * &self.q) * &jc4m) * &ubar_t))
            + &(&(&g * &dbar_t_inv) * &gbar_t))
            - &CMat::identity(2);
        let e_e = &(&(&self.u * &self.q) - &(&(&g * &ubar_sharp_t) * &jc4m)) - &f;
        let e_g = &(&self.g_check * &self.d) - &g;
        Ok([
            e_a.norm_max(),
            e_b.norm_max(),
            e_c.norm_max(),
            e_d.norm_max(),
            e_e.norm_max(),
            e_g.norm_max(),
        ])
    }

    /// Identity forced by membership of the middle term in the 8x8 quadric
    /// group: a = (J2 d^{-1} J2)^t.
    pub fn a_membership_residual(&self) -> f64 {
        let j2m = j2();
        let want = (&(&j2m * &self.d.inverse().unwrap()) * &j2m).transpose();
        (&self.a - &want).norm_max()
    }

    /// Assemble W0 as an 8x8 matrix.
    pub fn w0_matrix(&self) -> CMat {
        let mut m = CMat::zeros(8, 8);
        m.set_block(0, 0, &self.a);
        m.set_block(2, 2, &self.q);
        m.set_block(6, 6, &self.d);
        m
    }

    /// The unipotent factor W = I + lambda^{-1} W1 + lambda^{-2} W2.
    pub fn w_loop(&self) -> LoopMat {
        let usharp = sharp2x4(&self.u);
        let mut w1 = CMat::zeros(8, 8);
        w1.set_block(0, 2, &self.u);
        w1.set_block(2, 6, &usharp.scale(-ONE));
        let mut w2 = CMat::zeros(8, 8);
        w2.set_block(0, 6, &self.g_check);
        let mut w = LoopMat::identity(8);
        w.set_coeff(-1, w1).expect("degree in range");
        w.set_coeff(-2, w2).expect("degree in range");
        w
    }
}

/// Middle-block gauge for the triangular factor. The factorization
/// W0 = tau(L0)^{-1} L0 determines the 4x4 factor only up to the real
/// one-parameter torus diag(1, t, 1/t, 1); both conventions below appear in
/// closed-form references. Geometry downstream is gauge invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MiddleGauge {
    /// Forward elimination with unit second pivot (l0_22 = 1).
    #[default]
    Unit,
    /// Rebalanced by t = sqrt(det d): l0_22 = sqrt(det d).
    DetWeighted,
}

/// Upper Cholesky factor U (positive diagonal) with U^H U = m, for a 2x2
/// Hermitian positive definite matrix.
fn chol_upper_2x2(m: &CMat, z: C64) -> Result<CMat> {
    let m11 = m[(0, 0)];
    if m11.re <= 0.0 || m11.im.abs() > 1e-9 * (1.0 + m11.re.abs()) {
        return Err(CoreError::OutsideBigCell {
            z,
            reason: format!("pivot not positive real: {m11}"),
        });
    }
    let u11 = C64::new(m11.re.sqrt(), 0.0);
    let u12 = m[(0, 1)] / u11;
    let rest = m[(1, 1)] - u12.conj() * u12;
    if rest.re <= 0.0 || rest.im.abs() > 1e-9 * (1.0 + rest.re.abs()) {
        return Err(CoreError::OutsideBigCell {
            z,
            reason: format!("second pivot not positive real: {rest}"),
        });
    }
    let u22 = C64::new(rest.re.sqrt(), 0.0);
    let mut u = CMat::zeros(2, 2);
    u[(0, 0)] = u11;
    u[(0, 1)] = u12;
    u[(1, 1)] = u22;
    Ok(u)
}

/// Invert an upper-triangular matrix by back substitution.
fn inv_upper(u: &CMat) -> CMat {
    let n = u.rows();
    let mut inv = CMat::zeros(n, n);
    for j in (0..n).rev() {
        for i in (0..=j).rev() {
            if i == j {
                inv[(i, j)] = ONE / u[(i, i)];
            } else {
                let mut s = ZERO;
                for k in i + 1..=j {
                    s += u[(i, k)] * inv[(k, j)];
                }
                inv[(i, j)] = -s / u[(i, i)];
            }
        }
    }
    inv
}

/// Factor W0 = tau(L0)^{-1} L0 into upper-triangular blocks with positive
/// real diagonals.
///
/// d is factored by Cholesky; the top factor is forced by the corner
/// identity blocks of the conjugation, l1 = J2 (l4^t)^{-1} J2. The middle
/// factor solves q = jc4 l0^H jc4 l0 by forward elimination against the
/// (2<->3)-permuted conjugate-transpose structure.
pub fn factor_l0(w0: &W0Blocks, z: C64, gauge: MiddleGauge) -> Result<L0Blocks> {
    let l4 = chol_upper_2x2(&w0.d, z)?;
    let j2m = j2();
    // l1 = J2 (l4^t)^{-1} J2: upper triangular again, positive diagonal.
    let l1 = &(&j2m * &inv_upper(&l4).transpose()) * &j2m;

    let q = &w0.q;
    let scale = q.norm_max().max(1.0);
    let pivot_ok = |p: C64, what: &str| -> Result<f64> {
        if p.re <= 1e-14 * scale || p.im.abs() > 1e-8 * (1.0 + p.re.abs()) {
            Err(CoreError::OutsideBigCell {
                z,
                reason: format!("{what} pivot not positive real: {p}"),
            })
        } else {
            Ok(p.re)
        }
    };

    // Row 1 from q_{1k} = conj(l11) l_{1k}.
    let p1 = pivot_ok(q[(0, 0)], "q11")?;
    let l11 = C64::new(p1.sqrt(), 0.0);
    let l12 = q[(0, 1)] / l11;
    let l13 = q[(0, 2)] / l11;
    let l14 = q[(0, 3)] / l11;

    // Second pivot: q_{22} - conj(l13) l12 = conj(l33) l22; identically 1
    // for a middle term coming from the quadric group, so the unit gauge
    // takes l22 = sqrt(pivot).
    let p2 = pivot_ok(q[(1, 1)] - l13.conj() * l12, "q22")?;
    let l22 = C64::new(p2.sqrt(), 0.0);
    let l33 = ONE / l22;
    let l44 = ONE / l11;
    // q_{34} = conj(l12) l14 + conj(l22) l34.
    let l34 = (q[(2, 3)] - l12.conj() * l14) / l22.conj();
    // q_{43} = conj(l14) l13 + conj(l24) l33.
    let l24 = ((q[(3, 2)] - l14.conj() * l13) / l33).conj();

    let mut l0 = CMat::zeros(4, 4);
    l0[(0, 0)] = l11;
    l0[(0, 1)] = l12;
    l0[(0, 2)] = l13;
    l0[(0, 3)] = l14;
    l0[(1, 1)] = l22;
    l0[(1, 3)] = l24;
    l0[(2, 2)] = l33;
    l0[(2, 3)] = l34;
    l0[(3, 3)] = l44;

    if gauge == MiddleGauge::DetWeighted {
        let t = w0.d.det().re.sqrt();
        let g = CMat::diag(&[ONE, C64::new(t, 0.0), ONE / t, ONE]);
        l0 = &g * &l0;
    }

    let blocks = L0Blocks { l1, l0, l4 };
    let resid = blocks.factorization_residuals(w0);
    let worst = resid.iter().cloned().fold(0.0, f64::max);
    // Backward-error scale: the products being reconstructed are quadratic
    // in the factors, which grow as the leading pivot degenerates.
    let factor_scale = blocks
        .l0
        .norm_max()
        .powi(2)
        .max(blocks.l1.norm_max().powi(2))
        .max(blocks.l4.norm_max().powi(2))
        .max(scale)
        .max(w0.d.norm_max());
    if worst > FACTOR_TOL * factor_scale {
        return Err(CoreError::OutsideBigCell {
            z,
            reason: format!("factor residual {worst:.3e} exceeds tolerance"),
        });
    }
    Ok(blocks)
}

impl L0Blocks {
    /// Residuals of a = l1^H l1, q = jc4 l0^H jc4 l0, d = l4^H l4.
    pub fn factorization_residuals(&self, w0: &W0Blocks) -> [f64; 3] {
        let jc4m = jc4();
        let ra = (&(&self.l1.adjoint() * &self.l1) - &w0.a).norm_max();
        let rq = (&(&(&(&jc4m * &self.l0.adjoint()) * &jc4m) * &self.l0) - &w0.q).norm_max();
        let rd = (&(&self.l4.adjoint() * &self.l4) - &w0.d).norm_max();
        [ra, rq, rd]
    }

    /// Residual of the defining relation W0 = tau(L0)^{-1} L0 as a whole.
    pub fn defining_residual(&self, w0: &W0Blocks) -> f64 {
        let l0 = LoopMat::constant(self.matrix());
        let t = tau(&l0).eval(ONE);
        let lhs = &t.inverse().expect("triangular") * &self.matrix();
        (&lhs - &w0.w0_matrix()).norm_max()
    }

    /// Assemble L0 as an 8x8 matrix.
    pub fn matrix(&self) -> CMat {
        let mut m = CMat::zeros(8, 8);
        m.set_block(0, 0, &self.l1);
        m.set_block(2, 2, &self.l0);
        m.set_block(6, 6, &self.l4);
        m
    }

    /// L0^{-1}, blockwise by back substitution.
    pub fn matrix_inv(&self) -> CMat {
        let mut m = CMat::zeros(8, 8);
        m.set_block(0, 0, &inv_upper(&self.l1));
        m.set_block(2, 2, &inv_upper(&self.l0));
        m.set_block(6, 6, &inv_upper(&self.l4));
        m
    }

    /// Apply the real middle-torus gauge diag(1, t, 1/t, 1), t > 0.
    pub fn regauged(&self, t: f64) -> L0Blocks {
        assert!(t > 0.0);
        let g = CMat::diag(&[ONE, C64::new(t, 0.0), C64::new(1.0 / t, 0.0), ONE]);
        L0Blocks {
            l1: self.l1.clone(),
            l0: &g * &self.l0,
            l4: self.l4.clone(),
        }
    }
}

/// The extended frame F = H tau(W) L0^{-1}, a loop with support in [-2, 2].
pub fn extended_frame(h: &LoopMat, w0: &W0Blocks, l0: &L0Blocks) -> Result<LoopMat> {
    let w = w0.w_loop();
    let tw = tau(&w);
    let l0_inv = LoopMat::constant(l0.matrix_inv());
    loop_mul(&loop_mul(h, &tw)?, &l0_inv)
}

/// Smallest singular value of d at z; zero signals the boundary of the
/// factorization domain.
pub fn big_cell_margin(fc: &FcheckData, z: C64) -> Result<f64> {
    let PointData { f: _, g, fsharp } = point_data(fc, z)?;
    let jc4m = jc4();
    let fbar_tsharp = fsharp.conj().transpose();
    let gbar_t = g.adjoint();
    let d = &(&CMat::identity(2) + &(&(&fbar_tsharp * &jc4m) * &fsharp)) + &(&gbar_t * &g);
    Ok(d.smallest_singular_value())
}

/// Exact-backend middle term: everything is polynomial in (z, zbar) over
/// powers of det(d).
pub struct ExactW0 {
    /// 2x2, polynomial.
    pub d: EMat,
    /// det d, a real polynomial.
    pub det_d: BiPoly,
    /// u^sharp * det_d (4x2, polynomial).
    pub usharp_num: EMat,
    /// q * det_d (4x4, polynomial).
    pub q_num: EMat,
    /// a * det_d^3 (2x2, polynomial).
    pub a_num: EMat,
    /// f, g, fsharp carried along for residual checks.
    pub f: EMat,
    pub g: EMat,
    pub fsharp: EMat,
}

/// sharp of an exact 2x4 matrix.
fn sharp2x4_exact(x: &EMat) -> EMat {
    assert_eq!((x.rows(), x.cols()), (2, 4));
    let mut out = EMat::zeros(4, 2);
    for i in 0..4 {
        for j in 0..2 {
            out[(i, j)] = x[(1 - j, 3 - i)].clone();
        }
    }
    out
}

fn unsharp4x2_exact(k: &EMat) -> EMat {
    assert_eq!((k.rows(), k.cols()), (4, 2));
    let mut x = EMat::zeros(2, 4);
    for i in 0..2 {
        for j in 0..4 {
            x[(i, j)] = k[(3 - j, 1 - i)].clone();
        }
    }
    x
}

pub fn solve_w0_exact(parts: &ExactParts) -> ExactW0 {
    let jc4m = econsts::jc4();
    let f = parts.f.clone();
    let g = parts.g.clone();
    let fsharp = sharp2x4_exact(&f);
    let fbar_t = f.conj_bar().transpose();
    let fbar_tsharp = fsharp.conj_bar().transpose();
    let gbar_t = g.conj_bar().transpose();

    let d = &(&EMat::identity(2) + &(&(&fbar_tsharp * &jc4m) * &fsharp)) + &(&gbar_t * &g);
    let det_d = d.det2();
    let adj_d = d.adjugate2();

    // u^sharp = (f^sharp - jc4 fbar^t g) adj(d) / det_d
    let usharp_num = &(&fsharp - &(&(&jc4m * &fbar_t) * &g)) * &adj_d;

    // q = I + jc4 fbar^t f - u^sharp d ubar^{sharp t} jc4
    //   = [det_d (I + jc4 fbar^t f) - M adj(d) conj(M)^t jc4] / det_d
    // with M = f^sharp - jc4 fbar^t g (so u^sharp d = M).
    let m = &fsharp - &(&(&jc4m * &fbar_t) * &g);
    let mbar_t = m.conj_bar().transpose();
    let adj_d_bar_t = adj_d.conj_bar().transpose();
    let q_base = &EMat::identity(4) + &(&(&jc4m * &fbar_t) * &f);
    let q_num = &q_base.scale(&det_d) - &(&(&(&m * &adj_d_bar_t) * &mbar_t) * &jc4m);

    // a = I - u q jc4 ubar^t - g (dbar^t)^{-1} gbar^t, over det_d^3.
    let u_num = unsharp4x2_exact(&usharp_num);
    let ubar_t_num = u_num.conj_bar().transpose();
    let dbar_t = d.conj_bar().transpose();
    let adj_dbar_t = dbar_t.adjugate2();
    // det(dbar^t) = conj_bar(det d) = det d since det d is real.
    let a_num = &(&EMat::identity(2).scale(&(&(&det_d * &det_d) * &det_d))
        - &(&(&(&u_num * &q_num) * &jc4m) * &ubar_t_num))
        - &(&(&g * &adj_dbar_t) * &gbar_t).scale(&(&det_d * &det_d));

    ExactW0 {
        d,
        det_d,
        usharp_num,
        q_num,
        a_num,
        f,
        g,
        fsharp,
    }
}

impl ExactW0 {
    /// The consequence equation as an exact polynomial identity:
    /// u q - g ubar^{sharp t} jc4 - f = 0 after clearing det_d^2.
    pub fn consequence_identity(&self) -> EMat {
        let jc4m = econsts::jc4();
        let u_num = unsharp4x2_exact(&self.usharp_num);
        let uq = &u_num * &self.q_num; // scale det_d^2
        let gu = &(&self.g * &self.usharp_num.conj_bar().transpose()) * &jc4m; // scale det_d
        let f_scaled = self.f.scale(&(&self.det_d * &self.det_d));
        &(&uq - &gu.scale(&self.det_d)) - &f_scaled
    }

    /// Exact evaluation to numeric blocks at z.
    pub fn eval(&self, z: C64) -> Result<W0Blocks> {
        let dd = self.det_d.eval_c64(z);
        if dd.norm() < 1e-300 {
            return Err(CoreError::OutsideBigCell {
                z,
                reason: "det d vanishes".into(),
            });
        }
        let d = self.d.eval_c64(z);
        let q = self.q_num.eval_c64(z).scale(ONE / dd);
        let a = self.a_num.eval_c64(z).scale(ONE / (dd * dd * dd));
        let usharp = self.usharp_num.eval_c64(z).scale(ONE / dd);
        let u = unsharp4x2(&usharp);
        let g = self.g.eval_c64(z);
        let g_check = &g * &d.inverse().ok_or_else(|| CoreError::OutsideBigCell {
            z,
            reason: "d singular".into(),
        })?;
        Ok(W0Blocks {
            a,
            q,
            d,
            u,
            g_check,
            consequence_residual: 0.0,
        })
    }
}

/// Convenience: the full chain potential -> frame at z, numeric backend.
pub fn extended_frame_at(
    fc: &FcheckData,
    z: C64,
    gauge: MiddleGauge,
) -> Result<(LoopMat, W0Blocks, L0Blocks)> {
    let h = crate::potential::meromorphic_frame(fc, z)?;
    let w0 = solve_w0(fc, z)?;
    let l0 = factor_l0(&w0, z, gauge)?;
    let f = extended_frame(&h, &w0, &l0)?;
    Ok((f, w0, l0))
}
