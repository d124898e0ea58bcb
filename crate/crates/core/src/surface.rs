//! Surface reconstruction from the extended frame: the lift-coefficient
//! equation, the column recombination of the frame, the lightcone lift and
//! its projection to the unit sphere, and the induced metric density.

use crate::bridge::Bridge;
use crate::error::{CoreError, Result};
use crate::fd::vec_dz;
use crate::mat::{C64, CMat, I};

/// Relative singular-value gap below which the column pair of B1 is treated
/// as rank one.
pub const RANK_GAP: f64 = 1e-8;

/// Residual bound the returned lift coefficients must satisfy.
pub const RHO_TOL: f64 = 1e-8;

/// Frame norm beyond which the lift is renormalized before projecting.
pub const BLOWUP_NORM: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoBranch {
    Rank1Primal,
    Rank1Dual,
    Rank2Unique,
}

/// One root of the lift-coefficient equation.
#[derive(Clone, Copy, Debug)]
pub struct RhoSolution {
    pub rho1: C64,
    pub branch: RhoBranch,
    pub rank_estimate: usize,
    /// Max residual of the two scalar equations at the root.
    pub residual: f64,
}

/// The two scalar equations the lift coefficient must satisfy, one per
/// pattern column h of B1:
///   (1+|r|^2) h_1 - (1-|r|^2) h_2 - 2 Re(r) h_3 - 2 Im(r) h_4 = 0.
pub fn rho_equation(h: &[C64; 4], rho: C64) -> C64 {
    let n = rho.norm_sqr();
    (1.0 + n) * h[0] - (1.0 - n) * h[1] - 2.0 * rho.re * h[2] - 2.0 * rho.im * h[3]
}

/// Max equation residual over both columns, relative to the natural scale
/// of the equation's terms: the coefficients grow like 1 + |rho|^2, so a
/// backward-stable root keeps this quotient at rounding level regardless of
/// the gauge-dependent magnitude of the coefficient.
pub fn rho_residual(b1: &CMat, rho: C64) -> f64 {
    let h1 = pattern_column(b1, 0);
    let h3 = pattern_column(b1, 2);
    let scale =
        col_norm(&h1).max(col_norm(&h3)).max(1e-300) * (1.0 + rho.norm_sqr());
    (rho_equation(&h1, rho).norm() / scale).max(rho_equation(&h3, rho).norm() / scale)
}

fn pattern_column(b1: &CMat, j: usize) -> [C64; 4] {
    [b1[(0, j)], b1[(1, j)], b1[(2, j)], b1[(3, j)]]
}

fn col_norm(h: &[C64; 4]) -> f64 {
    h.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Gauss-Newton polish of a root of the two-column equation system.
fn polish(h1: &[C64; 4], h3: &[C64; 4], mut rho: C64) -> C64 {
    for _ in 0..20 {
        // Residual vector (4 real entries) and its 4x2 Jacobian.
        let e1 = rho_equation(h1, rho);
        let e2 = rho_equation(h3, rho);
        let d_dx = |h: &[C64; 4]| 2.0 * rho.re * (h[0] + h[1]) - 2.0 * h[2];
        let d_dy = |h: &[C64; 4]| 2.0 * rho.im * (h[0] + h[1]) - 2.0 * h[3];
        let j = [
            [d_dx(h1).re, d_dy(h1).re],
            [d_dx(h1).im, d_dy(h1).im],
            [d_dx(h3).re, d_dy(h3).re],
            [d_dx(h3).im, d_dy(h3).im],
        ];
        let r = [e1.re, e1.im, e2.re, e2.im];
        // Normal equations of the 4x2 least-squares step.
        let mut jtj = [[0.0f64; 2]; 2];
        let mut jtr = [0.0f64; 2];
        for k in 0..4 {
            for a in 0..2 {
                for b in 0..2 {
                    jtj[a][b] += j[k][a] * j[k][b];
                }
                jtr[a] += j[k][a] * r[k];
            }
        }
        let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
        if det.abs() < 1e-300 {
            break;
        }
        let dx = (jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / det;
        let dy = (jtj[0][0] * jtr[1] - jtj[1][0] * jtr[0]) / det;
        let step = C64::new(dx, dy);
        rho -= step;
        if step.norm() < 1e-15 * (1.0 + rho.norm()) {
            break;
        }
    }
    rho
}

/// Solve the lift-coefficient equation from the pattern block B1.
///
/// The isotropic column pair (h1, h3) spans either a full isotropic plane
/// (rank 2: unique root) or a line (rank 1: two roots forming a dual pair,
/// possibly coincident). Roots are found by decomposing against the two
/// ruled families of the isotropy quadric and polished by Gauss-Newton;
/// every returned root satisfies the equations to `RHO_TOL`.
pub fn solve_rho1(b1: &CMat) -> Result<Vec<RhoSolution>> {
    let h1 = pattern_column(b1, 0);
    let h3 = pattern_column(b1, 2);
    let n1 = col_norm(&h1);
    let n3 = col_norm(&h3);
    let scale = n1.max(n3);
    if scale < 1e-12 {
        return Err(CoreError::DegenerateB1);
    }

    // Rank from the singular values of the 4x2 column matrix.
    let mut cols = CMat::zeros(4, 2);
    for i in 0..4 {
        cols[(i, 0)] = h1[i];
        cols[(i, 1)] = h3[i];
    }
    let smin = cols.smallest_singular_value();
    let smax = cols.largest_singular_value();
    let rank = if smin <= RANK_GAP * smax { 1 } else { 2 };

    let finish = |rho: C64, branch: RhoBranch, rank: usize| -> Result<RhoSolution> {
        let rho = polish(&h1, &h3, rho);
        let residual = rho_residual(b1, rho);
        if !rho.is_finite() || residual > RHO_TOL {
            return Err(CoreError::DegenerateB1);
        }
        Ok(RhoSolution {
            rho1: rho,
            branch,
            rank_estimate: rank,
            residual,
        })
    };

    if rank == 2 {
        // The direction v in span{h1, h3} with v_1 + v_2 = 0 lies on one of
        // the two rulings; isotropy forces v_4 = +- i v_3.
        let p = h1[0] + h1[1];
        let q = h3[0] + h3[1];
        let (alpha, beta) = (q, -p);
        let v: Vec<C64> = (0..4).map(|k| alpha * h1[k] + beta * h3[k]).collect();
        let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vn < 1e-12 * scale * scale {
            return Err(CoreError::DegenerateB1);
        }
        if v[2].norm() < 1e-10 * vn {
            // v proportional to (1,-1,0,0): the equation system has no
            // finite root along this direction.
            return Err(CoreError::DegenerateB1);
        }
        let ratio = v[0] / v[2];
        let plus = (v[3] - I * v[2]).norm();
        let minus = (v[3] + I * v[2]).norm();
        let rho = if plus <= minus { ratio } else { ratio.conj() };
        return Ok(vec![finish(rho, RhoBranch::Rank2Unique, 2)?]);
    }

    // Rank 1: work with the dominant column.
    let h = if n1 >= n3 { h1 } else { h3 };
    let hn = col_norm(&h);
    let p = h[0] + h[1];
    if p.norm() > 1e-10 * hn {
        // Generic ruled-surface parametrization:
        // h = c (1 + r1 r2, 1 - r1 r2, r1 + r2, -i (r1 - r2)).
        let s = 2.0 * h[2] / p;
        let d = 2.0 * I * h[3] / p;
        let r1 = 0.5 * (s + d);
        let r2 = 0.5 * (s - d);
        let primal = finish(r1, RhoBranch::Rank1Primal, 1)?;
        let dual = finish(r2.conj(), RhoBranch::Rank1Dual, 1)?;
        return Ok(vec![primal, dual]);
    }
    // Line of the form (r, -r, 1, +-i): a single root, reported on both
    // branches.
    if h[2].norm() < 1e-10 * hn {
        return Err(CoreError::DegenerateB1);
    }
    let ratio = h[0] / h[2];
    let plus = (h[3] - I * h[2]).norm();
    let minus = (h[3] + I * h[2]).norm();
    let rho = if plus <= minus { ratio } else { ratio.conj() };
    let primal = finish(rho, RhoBranch::Rank1Primal, 1)?;
    let dual = finish(rho, RhoBranch::Rank1Dual, 1)?;
    Ok(vec![primal, dual])
}

/// The recombined frame columns: an 8x4 complex matrix built from columns
/// 3..6 of the 8x8 frame value. Columns are (phi1+phi2, phi1-phi2,
/// phi3 - i phi4, phi3 + i phi4) of the Lorentz-picture frame.
pub fn phi_hat_columns(frame_value: &CMat) -> CMat {
    assert_eq!((frame_value.rows(), frame_value.cols()), (8, 8));
    // 1-based row/column indices of the 8x8 frame value.
    let p = |j: usize, l: usize| frame_value[(j - 1, l - 1)];
    let rows: [[C64; 4]; 8] = [
        [
            p(4, 4) - p(5, 4),
            -(p(4, 5) - p(5, 5)),
            -I * (p(4, 6) - p(5, 6)),
            I * (p(4, 3) - p(5, 3)),
        ],
        [
            p(4, 4) + p(5, 4),
            -(p(4, 5) + p(5, 5)),
            -I * (p(4, 6) + p(5, 6)),
            I * (p(4, 3) + p(5, 3)),
        ],
        [
            -I * (p(3, 4) - p(6, 4)),
            I * (p(3, 5) - p(6, 5)),
            -(p(3, 6) - p(6, 6)),
            p(3, 3) - p(6, 3),
        ],
        [
            p(3, 4) + p(6, 4),
            -(p(3, 5) + p(6, 5)),
            -I * (p(3, 6) + p(6, 6)),
            I * (p(3, 3) + p(6, 3)),
        ],
        [
            -I * (p(2, 4) - p(7, 4)),
            I * (p(2, 5) - p(7, 5)),
            -(p(2, 6) - p(7, 6)),
            p(2, 3) - p(7, 3),
        ],
        [
            p(2, 4) + p(7, 4),
            -(p(2, 5) + p(7, 5)),
            -I * (p(2, 6) + p(7, 6)),
            I * (p(2, 3) + p(7, 3)),
        ],
        [
            -I * (p(1, 4) - p(8, 4)),
            I * (p(1, 5) - p(8, 5)),
            -(p(1, 6) - p(8, 6)),
            p(1, 3) - p(8, 3),
        ],
        [
            p(1, 4) + p(8, 4),
            -(p(1, 5) + p(8, 5)),
            -I * (p(1, 6) + p(8, 6)),
            I * (p(1, 3) + p(8, 3)),
        ],
    ];
    let mut m = CMat::zeros(8, 4);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}

/// Same recombination computed from the Lorentz-picture frame columns;
/// used as a cross-check of the transcription above.
pub fn phi_hat_columns_via_bridge(frame_value: &CMat) -> CMat {
    let f = Bridge::new().from_g8(frame_value);
    let mut m = CMat::zeros(8, 4);
    for i in 0..8 {
        m[(i, 0)] = f[(i, 0)] + f[(i, 1)];
        m[(i, 1)] = f[(i, 0)] - f[(i, 1)];
        m[(i, 2)] = f[(i, 2)] - I * f[(i, 3)];
        m[(i, 3)] = f[(i, 2)] + I * f[(i, 3)];
    }
    m
}

/// Validated real form of the recombined columns.
pub struct SurfaceColumns {
    /// phi1 + phi2.
    pub e_plus: [f64; 8],
    /// phi1 - phi2.
    pub e_minus: [f64; 8],
    /// phi3.
    pub phi3: [f64; 8],
    /// phi4.
    pub phi4: [f64; 8],
    /// Max imaginary mass / conjugation defect over the columns.
    pub reality_residual: f64,
}

/// Split the recombined columns into real vectors, measuring how far the
/// input is from the real form: the first two columns must be real and the
/// last two mutually conjugate.
pub fn surface_columns(phi_hat: &CMat) -> SurfaceColumns {
    let mut e_plus = [0.0; 8];
    let mut e_minus = [0.0; 8];
    let mut phi3 = [0.0; 8];
    let mut phi4 = [0.0; 8];
    let mut defect = 0.0f64;
    for i in 0..8 {
        e_plus[i] = phi_hat[(i, 0)].re;
        e_minus[i] = phi_hat[(i, 1)].re;
        defect = defect.max(phi_hat[(i, 0)].im.abs());
        defect = defect.max(phi_hat[(i, 1)].im.abs());
        // col3 = phi3 - i phi4, col4 = phi3 + i phi4.
        phi3[i] = 0.5 * (phi_hat[(i, 2)] + phi_hat[(i, 3)]).re;
        phi4[i] = 0.5 * (phi_hat[(i, 3)] - phi_hat[(i, 2)]).im;
        defect = defect.max((phi_hat[(i, 3)] - phi_hat[(i, 2)].conj()).norm());
    }
    SurfaceColumns {
        e_plus,
        e_minus,
        phi3,
        phi4,
        reality_residual: defect,
    }
}

/// Outcome of assembling the lightcone lift.
pub struct Lift {
    pub y: [f64; 8],
    /// True when the raw lift exceeded `BLOWUP_NORM` and was renormalized.
    pub renormalized: bool,
}

/// The lightcone lift
///   Y = (1+|r|^2) phi1 + (1-|r|^2) phi2 + 2 Re(r) phi3 + 2 Im(r) phi4,
/// with unit overall scale and the sign fixed by Y_0 > 0.
pub fn canonical_lift(cols: &SurfaceColumns, rho: C64) -> Result<Lift> {
    let n = rho.norm_sqr();
    let mut y = [0.0f64; 8];
    for i in 0..8 {
        y[i] = cols.e_plus[i]
            + n * cols.e_minus[i]
            + 2.0 * rho.re * cols.phi3[i]
            + 2.0 * rho.im * cols.phi4[i];
    }
    let max = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if max < 1e-12 {
        return Err(CoreError::NullOutput { norm: max });
    }
    let mut renormalized = false;
    if max > BLOWUP_NORM {
        for v in &mut y {
            *v /= max;
        }
        renormalized = true;
    }
    if y[0] < 0.0 {
        for v in &mut y {
            *v = -*v;
        }
    }
    Ok(Lift { y, renormalized })
}

/// Lorentzian self-pairing <Y, Y> with signature (-,+,...,+), normalized by
/// the squared Euclidean norm.
pub fn lightcone_residual(y: &[f64; 8]) -> f64 {
    let q: f64 = -y[0] * y[0] + y[1..].iter().map(|v| v * v).sum::<f64>();
    let n: f64 = y.iter().map(|v| v * v).sum();
    (q / n.max(1e-300)).abs()
}

/// Projection to the unit sphere: x = (Y_1, ..., Y_7) / Y_0.
pub fn project_to_sphere(y: &[f64; 8]) -> Result<[f64; 7]> {
    let scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if y[0].abs() < 1e-12 * scale.max(1.0) {
        return Err(CoreError::ProjectionDividesByZero { y0: y[0].abs() });
    }
    let mut x = [0.0f64; 7];
    for i in 0..7 {
        x[i] = y[i + 1] / y[0];
    }
    Ok(x)
}

/// |dx/dz|^2 summed over components, by central differences of a
/// sphere-valued map.
pub fn metric_density(
    surface: &dyn Fn(C64) -> Result<[f64; 7]>,
    z: C64,
    h: f64,
) -> Result<f64> {
    let eval = |w: C64| -> Result<Vec<f64>> { Ok(surface(w)?.to_vec()) };
    let dz = vec_dz(&eval, z, h)?;
    Ok(dz.iter().map(|c| c.norm_sqr()).sum())
}

/// Chordal distance between two sphere points, minimized over the sign of
/// the second (lift scale and antipodal lift are gauge).
pub fn chordal_distance(a: &[f64; 7], b: &[f64; 7]) -> f64 {
    let mut dp = 0.0;
    let mut dm = 0.0;
    for k in 0..7 {
        dp += (a[k] - b[k]).powi(2);
        dm += (a[k] + b[k]).powi(2);
    }
    dp.sqrt().min(dm.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{ONE, ZERO};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Brute-force root finding for the lift equation: coarse grid plus
    /// repeated refinement, independent of the closed-form route.
    fn brute_force_roots(b1: &CMat) -> Vec<C64> {
        let objective = |r: C64| rho_residual(b1, r);
        let mut found: Vec<C64> = vec![];
        let coarse = 30;
        for ix in 0..=coarse {
            for iy in 0..=coarse {
                let mut r = C64::new(
                    -3.0 + 6.0 * ix as f64 / coarse as f64,
                    -3.0 + 6.0 * iy as f64 / coarse as f64,
                );
                let mut width = 6.0 / coarse as f64;
                // Local refinement to 1e-10, with a step budget so starts
                // drifting along shallow valleys give up instead of walking
                // forever.
                let mut budget = 200;
                while width > 1e-11 && budget > 0 {
                    budget -= 1;
                    let mut best = (objective(r), r);
                    for dx in [-1.0, 0.0, 1.0] {
                        for dy in [-1.0, 0.0, 1.0] {
                            let cand = r + C64::new(dx * width / 2.0, dy * width / 2.0);
                            let v = objective(cand);
                            if v < best.0 {
                                best = (v, cand);
                            }
                        }
                    }
                    if (best.1 - r).norm() < 1e-16 {
                        width /= 2.0;
                    }
                    r = best.1;
                }
                if objective(r) < 1e-8 && !found.iter().any(|f| (f - r).norm() < 1e-6) {
                    found.push(r);
                }
            }
        }
        found
    }

    fn b1_from_columns(h1: [C64; 4], h3: [C64; 4]) -> CMat {
        let mut m = CMat::zeros(4, 4);
        for i in 0..4 {
            m[(i, 0)] = h1[i];
            m[(i, 1)] = I * h1[i];
            m[(i, 2)] = h3[i];
            m[(i, 3)] = I * h3[i];
        }
        m
    }

    fn ruled_u(r1: C64, r2: C64) -> [C64; 4] {
        [
            ONE + r1 * r2,
            ONE - r1 * r2,
            r1 + r2,
            -I * (r1 - r2),
        ]
    }

    fn ruled_w(r1: C64) -> [C64; 4] {
        [r1, -r1, ONE, I]
    }

    #[test]
    fn rank1_branches_match_parameters() {
        // r1 = 1, r2 = i: branches {1, conj(i)} = {1, -i}.
        let h = ruled_u(ONE, c(0.0, 1.0));
        let b1 = b1_from_columns(h, [ZERO; 4]);
        let sols = solve_rho1(&b1).unwrap();
        assert_eq!(sols.len(), 2);
        assert!((sols[0].rho1 - ONE).norm() < 1e-10);
        assert!((sols[1].rho1 - c(0.0, -1.0)).norm() < 1e-10);
        assert!(sols.iter().all(|s| s.rank_estimate == 1));
        assert!(sols.iter().all(|s| s.residual <= RHO_TOL));
    }

    #[test]
    fn rank1_coincident_branches() {
        // h = (1, 1, 0, 0): r1 = r2 = 0, both branches zero.
        let b1 = b1_from_columns([ONE, ONE, ZERO, ZERO], [ZERO; 4]);
        let sols = solve_rho1(&b1).unwrap();
        assert_eq!(sols.len(), 2);
        for s in sols {
            assert!(s.rho1.norm() < 1e-12);
        }
    }

    #[test]
    fn rank2_unique_root() {
        // Plane spanned by u(r1, r2) and w(r1): unique root r1.
        let r1 = c(0.3, -0.7);
        let r2 = c(-1.1, 0.2);
        let b1 = b1_from_columns(ruled_u(r1, r2), ruled_w(r1));
        let sols = solve_rho1(&b1).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].branch, RhoBranch::Rank2Unique);
        assert!((sols[0].rho1 - r1).norm() < 1e-9);
    }

    #[test]
    fn roots_agree_with_brute_force() {
        let cases = vec![
            b1_from_columns(ruled_u(c(0.5, 0.5), c(-0.25, 1.0)), [ZERO; 4]),
            b1_from_columns(ruled_u(c(0.2, -0.4), c(0.9, 0.1)), ruled_w(c(0.2, -0.4))),
        ];
        for b1 in cases {
            let sols = solve_rho1(&b1).unwrap();
            let brute = brute_force_roots(&b1);
            assert!(!brute.is_empty());
            for s in &sols {
                assert!(
                    brute.iter().any(|r| (r - s.rho1).norm() < 1e-6),
                    "root {} missing from brute force {:?}",
                    s.rho1,
                    brute
                );
            }
        }
    }

    #[test]
    fn degenerate_b1_rejected() {
        let b1 = CMat::zeros(4, 4);
        assert!(matches!(solve_rho1(&b1), Err(CoreError::DegenerateB1)));
    }

    #[test]
    fn phi_columns_identity_frame() {
        let id = CMat::identity(8);
        let table = phi_hat_columns(&id);
        let via = phi_hat_columns_via_bridge(&id);
        assert!((&table - &via).norm_max() < 1e-13);
        // phi_hat_3 at the identity is e3 - i e4.
        assert!((table[(2, 2)] - ONE).norm() < 1e-14);
        assert!((table[(3, 2)] + I).norm() < 1e-14);
    }

    #[test]
    fn phi_columns_agree_with_bridge_on_random_input() {
        let mut seed = 2024u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut f = CMat::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                f[(i, j)] = c(next(), next());
            }
        }
        let table = phi_hat_columns(&f);
        let via = phi_hat_columns_via_bridge(&f);
        assert!((&table - &via).norm_max() < 1e-12);
    }

    #[test]
    fn lift_collapses_for_zero_rho() {
        let cols = SurfaceColumns {
            e_plus: [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            e_minus: [0.5; 8],
            phi3: [0.25; 8],
            phi4: [0.125; 8],
            reality_residual: 0.0,
        };
        let lift = canonical_lift(&cols, ZERO).unwrap();
        assert_eq!(lift.y[0], 1.0);
        assert_eq!(lift.y[1], 1.0);
        assert!(!lift.renormalized);
    }

    #[test]
    fn null_lift_rejected() {
        let cols = SurfaceColumns {
            e_plus: [0.0; 8],
            e_minus: [0.0; 8],
            phi3: [0.0; 8],
            phi4: [0.0; 8],
            reality_residual: 0.0,
        };
        assert!(matches!(
            canonical_lift(&cols, ZERO),
            Err(CoreError::NullOutput { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let y = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let x = project_to_sphere(&y).unwrap();
        assert_eq!(x[0], 1.0);
        assert!(x[1..].iter().all(|v| *v == 0.0));

        let y = [2.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let x = project_to_sphere(&y).unwrap();
        assert_eq!(x, [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

        let y = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert!(matches!(
            project_to_sphere(&y),
            Err(CoreError::ProjectionDividesByZero { .. })
        ));
    }

    #[test]
    fn scale_invariance_of_projection() {
        let y = [3.0, 1.0, 2.0, -1.0, 0.5, 0.0, 1.5, -0.5];
        let x1 = project_to_sphere(&y).unwrap();
        let mut y2 = y;
        for v in &mut y2 {
            *v *= 17.25;
        }
        let x2 = project_to_sphere(&y2).unwrap();
        for k in 0..7 {
            assert!((x1[k] - x2[k]).abs() < 1e-12);
        }
    }
}
