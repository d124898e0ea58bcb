//! Normalized-potential ingestion and the meromorphic frame.
//!
//! A potential is given by eight rational functions h_ij arranged in the
//! column pattern (h1, i h1, h2, i h2) of a 4x4 block. Ingestion translates
//! it to a 2x4 matrix fcheck whose image in the 8x8 picture is strictly
//! upper triangular in the 2+4+2 grading, integrates fcheck twice, and
//! produces the frame H = I + lambda^{-1} H1 + lambda^{-2} H2.

use crate::consts::minkowski;
use crate::error::{CoreError, Result};
use crate::exact::{BiPoly, EMat, GRat};
use crate::loops::LoopMat;
use crate::mat::{C64, CMat, I, ONE, ZERO};
use crate::ratfn::{RationalFn, UPoly};

/// Distance to the nearest denominator root below which evaluation is
/// refused rather than regularized.
pub const POLE_EPS: f64 = 1e-6;

/// The eight rational functions of a column-patterned potential.
///
/// `h[i][j]` is h_{(i+1)(j+1)} for i in 0..4, j in 0..2.
#[derive(Clone)]
pub struct PotentialSpec {
    pub h: [[RationalFn; 2]; 4],
    pub base_point: GRat,
}

impl PotentialSpec {
    pub fn new(h: [[RationalFn; 2]; 4], base_point: GRat) -> Result<Self> {
        let spec = Self { h, base_point };
        spec.validate()?;
        Ok(spec)
    }

    /// The 4x4 block (h1, i h1, h2, i h2) evaluated at z.
    pub fn b1_hat_at(&self, z: C64) -> Result<CMat> {
        self.check_pole(z)?;
        let mut m = CMat::zeros(4, 4);
        for i in 0..4 {
            let a = self.h[i][0].eval_c64(z);
            let b = self.h[i][1].eval_c64(z);
            m[(i, 0)] = a;
            m[(i, 1)] = I * a;
            m[(i, 2)] = b;
            m[(i, 3)] = I * b;
        }
        Ok(m)
    }

    fn check_pole(&self, z: C64) -> Result<()> {
        for row in &self.h {
            for h in row {
                if h.pole_distance(z) < POLE_EPS {
                    return Err(CoreError::PoleOfPotential { z, eps: POLE_EPS });
                }
            }
        }
        Ok(())
    }

    /// Isotropy of the column span: the two pattern columns must be
    /// null and orthogonal for the Minkowski form diag(-1,1,1,1).
    /// Equivalently the translated fcheck satisfies fcheck J4 fcheck^t = 0.
    /// Without this the downstream lift equation has no solution.
    fn validate(&self) -> Result<()> {
        let col = |j: usize| -> [RationalFn; 4] {
            [
                self.h[0][j].clone(),
                self.h[1][j].clone(),
                self.h[2][j].clone(),
                self.h[3][j].clone(),
            ]
        };
        let pair = |u: &[RationalFn; 4], v: &[RationalFn; 4]| -> RationalFn {
            let mut acc = u[0].mul(&v[0]).neg();
            for k in 1..4 {
                acc = acc.add(&u[k].mul(&v[k]));
            }
            acc
        };
        let c1 = col(0);
        let c2 = col(1);
        for (name, q) in [
            ("<h1,h1>", pair(&c1, &c1)),
            ("<h2,h2>", pair(&c2, &c2)),
            ("<h1,h2>", pair(&c1, &c2)),
        ] {
            if !q.is_zero() {
                return Err(CoreError::PatternViolation(format!(
                    "potential columns are not isotropic: {} != 0",
                    name
                )));
            }
        }
        Ok(())
    }
}

/// fcheck and its two antiderivatives: f vanishing at the base point, and
/// g = -int f fcheck^sharp.
#[derive(Clone)]
pub struct FcheckData {
    pub fcheck: [[RationalFn; 4]; 2],
    pub f: [[RationalFn; 4]; 2],
    pub g: [[RationalFn; 2]; 2],
    pub base_point: GRat,
}

/// Translate the 4x4 pattern block into the 2x4 matrix fcheck.
pub fn b1_to_fcheck(spec: &PotentialSpec) -> [[RationalFn; 4]; 2] {
    let h = &spec.h;
    let i_ = RationalFn::from_poly(UPoly::constant(GRat::i()));
    let row = |a: &RationalFn, b: &RationalFn, c: &RationalFn, d: &RationalFn| {
        // (-c - i d, i(a - b), -i(a + b), c - i d)
        [
            c.neg().add(&i_.mul(d).neg()),
            i_.mul(&a.add(&b.neg())),
            i_.mul(&a.add(b)).neg(),
            c.add(&i_.mul(d).neg()),
        ]
    };
    [
        row(&h[0][1], &h[1][1], &h[2][1], &h[3][1]),
        row(&h[0][0], &h[1][0], &h[2][0], &h[3][0]),
    ]
}

/// sharp of a 2x4 rational matrix: J4 X^t J2, a 4x2 matrix.
/// Entrywise: sharp[i][j] = X[1-j][3-i].
fn sharp_ratfn(x: &[[RationalFn; 4]; 2]) -> [[RationalFn; 2]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| x[1 - j][3 - i].clone()))
}

/// Integrate fcheck to (f, g). Fails when an entry has a simple pole with
/// nonzero residue or a pole at the base point.
pub fn integrate_potential(
    fcheck: &[[RationalFn; 4]; 2],
    base_point: &GRat,
) -> Result<FcheckData> {
    let mut f: [[RationalFn; 4]; 2] = Default::default();
    for i in 0..2 {
        for j in 0..4 {
            f[i][j] = fcheck[i][j].antiderivative(base_point, (i + 1, j + 1))?;
        }
    }
    // g = -int f * fcheck^sharp, a 2x2 matrix.
    let fs = sharp_ratfn(fcheck);
    let mut g: [[RationalFn; 2]; 2] = Default::default();
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = RationalFn::zero();
            for k in 0..4 {
                acc = acc.add(&f[a][k].mul(&fs[k][b]));
            }
            g[a][b] = acc.neg().antiderivative(base_point, (a + 5, b + 5))?;
        }
    }
    Ok(FcheckData {
        fcheck: fcheck.clone(),
        f,
        g,
        base_point: base_point.clone(),
    })
}

fn eval_mat<const R: usize, const C: usize>(
    m: &[[RationalFn; C]; R],
    z: C64,
) -> CMat {
    let mut out = CMat::zeros(R, C);
    for i in 0..R {
        for j in 0..C {
            out[(i, j)] = m[i][j].eval_c64(z);
        }
    }
    out
}

impl FcheckData {
    pub fn fcheck_at(&self, z: C64) -> Result<CMat> {
        self.check_pole(z)?;
        Ok(eval_mat(&self.fcheck, z))
    }

    pub fn f_at(&self, z: C64) -> Result<CMat> {
        self.check_pole(z)?;
        Ok(eval_mat(&self.f, z))
    }

    pub fn g_at(&self, z: C64) -> Result<CMat> {
        self.check_pole(z)?;
        Ok(eval_mat(&self.g, z))
    }

    pub fn check_pole(&self, z: C64) -> Result<()> {
        let dist = self
            .fcheck
            .iter()
            .flatten()
            .chain(self.f.iter().flatten())
            .map(|r| r.pole_distance(z))
            .chain(self.g.iter().flatten().map(|r| r.pole_distance(z)))
            .fold(f64::INFINITY, f64::min);
        if dist < POLE_EPS {
            return Err(CoreError::PoleOfPotential { z, eps: POLE_EPS });
        }
        Ok(())
    }

    /// All entries polynomial (the exact backend requires this).
    pub fn is_polynomial(&self) -> bool {
        self.fcheck
            .iter()
            .flatten()
            .chain(self.f.iter().flatten())
            .all(RationalFn::is_polynomial)
            && self.g.iter().flatten().all(RationalFn::is_polynomial)
    }

    /// Exact bivariate images of (fcheck, f, g); requires polynomial entries.
    pub fn exact_parts(&self) -> Result<ExactParts> {
        let conv = |r: &RationalFn, what: &str| -> Result<BiPoly> {
            r.as_poly()
                .map(|p| p.to_bipoly())
                .ok_or_else(|| CoreError::NotPolynomial(what.to_string()))
        };
        let mut fcheck = EMat::zeros(2, 4);
        let mut f = EMat::zeros(2, 4);
        for i in 0..2 {
            for j in 0..4 {
                fcheck[(i, j)] = conv(&self.fcheck[i][j], "fcheck")?;
                f[(i, j)] = conv(&self.f[i][j], "f")?;
            }
        }
        let mut g = EMat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                g[(i, j)] = conv(&self.g[i][j], "g")?;
            }
        }
        Ok(ExactParts { fcheck, f, g })
    }
}

/// Polynomial (fcheck, f, g) in the exact backend.
pub struct ExactParts {
    pub fcheck: EMat,
    pub f: EMat,
    pub g: EMat,
}

/// sharp of a numeric 2x4 matrix: J4 X^t J2.
pub fn sharp2x4(x: &CMat) -> CMat {
    assert_eq!((x.rows(), x.cols()), (2, 4));
    let mut out = CMat::zeros(4, 2);
    for i in 0..4 {
        for j in 0..2 {
            out[(i, j)] = x[(1 - j, 3 - i)];
        }
    }
    out
}

/// Assemble the strictly-upper-triangular image of the potential at z:
/// blocks (1,2) = fcheck, (2,3) = -fcheck^sharp.
pub fn potential_g8_at(fc: &FcheckData, z: C64) -> Result<CMat> {
    let fcheck = fc.fcheck_at(z)?;
    let mut x = CMat::zeros(8, 8);
    x.set_block(0, 2, &fcheck);
    x.set_block(2, 6, &sharp2x4(&fcheck).scale(-ONE));
    Ok(x)
}

/// The frame H(z) = I + lambda^{-1} H1 + lambda^{-2} H2 solving
/// H^{-1} dH = lambda^{-1} * potential image, H(base) = I.
pub fn meromorphic_frame(fc: &FcheckData, z: C64) -> Result<LoopMat> {
    let f = fc.f_at(z)?;
    let g = fc.g_at(z)?;
    let mut h1 = CMat::zeros(8, 8);
    h1.set_block(0, 2, &f);
    h1.set_block(2, 6, &sharp2x4(&f).scale(-ONE));
    let mut h2 = CMat::zeros(8, 8);
    h2.set_block(0, 6, &g);
    let mut h = LoopMat::identity(8);
    h.set_coeff(-1, h1)?;
    h.set_coeff(-2, h2)?;
    Ok(h)
}

/// Holomorphic-part transport: from the diagonal part delta0 and the
/// off-diagonal part delta1 of a Maurer-Cartan form, produce the normalized
/// potential samples eta_{-1}(z) = F0(z) delta1(z) F0(z)^{-1}, where F0
/// solves F0^{-1} F0' = delta0 with F0(0) = I.
///
/// F0 is integrated along the ray from 0 to each grid point with a
/// fixed-step classical Runge-Kutta scheme (one-step, fourth order).
pub fn normalized_potential_transport(
    delta0: &dyn Fn(C64) -> CMat,
    delta1: &dyn Fn(C64) -> CMat,
    grid: &[C64],
) -> Result<Vec<CMat>> {
    let mut out = Vec::with_capacity(grid.len());
    for &z in grid {
        let f0 = integrate_holomorphic_frame(delta0, z)?;
        let f0_inv = f0.inverse().ok_or_else(|| {
            CoreError::IntegrationDivergence(format!("frame singular at z = {z}"))
        })?;
        out.push(&(&f0 * &delta1(z)) * &f0_inv);
    }
    Ok(out)
}

/// Solve F' = F * delta0(z) * zdot along the ray t -> t z, F(0) = I.
pub fn integrate_holomorphic_frame(delta0: &dyn Fn(C64) -> CMat, z: C64) -> Result<CMat> {
    let n = delta0(ZERO).rows();
    let mut f = CMat::identity(n);
    if z.norm() == 0.0 {
        return Ok(f);
    }
    let steps = (z.norm() / 0.02).ceil().max(16.0) as usize;
    let dt = 1.0 / steps as f64;
    let rhs = |t: f64, f: &CMat| -> CMat {
        (f * &delta0(z * t)).scale(z * dt)
    };
    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = rhs(t, &f);
        let k2 = rhs(t + 0.5 * dt, &(&f + &k1.scale(C64::new(0.5, 0.0))));
        let k3 = rhs(t + 0.5 * dt, &(&f + &k2.scale(C64::new(0.5, 0.0))));
        let k4 = rhs(t + dt, &(&f + &k3));
        let incr = &(&k1 + &k2.scale(C64::new(2.0, 0.0)))
            + &(&k3.scale(C64::new(2.0, 0.0)) + &k4);
        f = &f + &incr.scale(C64::new(1.0 / 6.0, 0.0));
        if !f.norm_max().is_finite() || f.norm_max() > 1e12 {
            return Err(CoreError::IntegrationDivergence(format!(
                "norm blew up at step {k} of {steps} toward z = {z}"
            )));
        }
    }
    Ok(f)
}

/// Isotropy diagnostic at z: || B1_hat^t I_{1,3} B1_hat ||_max.
pub fn potential_isotropy_residual(spec: &PotentialSpec, z: C64) -> Result<f64> {
    let b = spec.b1_hat_at(z)?;
    let m = minkowski(4);
    Ok((&(&b.transpose() * &m) * &b).norm_max())
}

/// Structural check: the image of the potential in the 8x8 picture is
/// strictly block-upper-triangular in the 2+4+2 grading.
pub fn potential_nilpotency_residual(fc: &FcheckData, z: C64) -> Result<f64> {
    let x = potential_g8_at(fc, z)?;
    let mut residual = 0.0f64;
    // Everything outside blocks (1,2) and (2,3) must vanish.
    for i in 0..8 {
        for j in 0..8 {
            let in_12 = i < 2 && (2..6).contains(&j);
            let in_23 = (2..6).contains(&i) && j >= 6;
            if !(in_12 || in_23) {
                residual = residual.max(x[(i, j)].norm());
            }
        }
    }
    Ok(residual)
}

/// Column-pattern residual of a 4x4 block: columns 2 and 4 must be i times
/// columns 1 and 3.
pub fn column_pattern_residual(b: &CMat) -> f64 {
    let mut r = 0.0f64;
    for i in 0..4 {
        r = r.max((b[(i, 1)] - I * b[(i, 0)]).norm());
        r = r.max((b[(i, 3)] - I * b[(i, 2)]).norm());
    }
    r
}

/// Shorthand used by tests and the golden cases: build and fully integrate
/// a potential from polynomial coefficient lists for the h_ij.
pub fn potential_from_coeffs(h: [[&[GRat]; 2]; 4]) -> Result<(PotentialSpec, FcheckData)> {
    let spec = PotentialSpec::new(
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                RationalFn::from_poly(UPoly::from_coeffs(h[i][j].to_vec()))
            })
        }),
        GRat::zero(),
    )?;
    let fcheck = b1_to_fcheck(&spec);
    let fc = integrate_potential(&fcheck, &spec.base_point)?;
    Ok((spec, fc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_ratio;
    use crate::golden_inputs::{sphere_case_potential, minimal_case_potential};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn fcheck_translation_sphere_case() {
        let (spec, _) = sphere_case_potential().unwrap();
        let fcheck = b1_to_fcheck(&spec);
        let z = c(0.7, -0.3);
        let got = eval_mat(&fcheck, z);
        let want = CMat::from_rows(&[
            &[ZERO, ZERO, -ONE, -z],
            &[c(2.0, 0.0), -z * 2.0, ZERO, ZERO],
        ]);
        assert!((&got - &want).norm_max() < 1e-14);
    }

    #[test]
    fn fcheck_translation_zero_and_minimal() {
        let zero = RationalFn::zero;
        let spec = PotentialSpec::new(
            std::array::from_fn(|_| std::array::from_fn(|_| zero())),
            GRat::zero(),
        )
        .unwrap();
        let fcheck = b1_to_fcheck(&spec);
        assert!(fcheck.iter().flatten().all(RationalFn::is_zero));

        // f2 = z^2, f4 = z: fcheck = [[0,0,0,0],[0, f2', 0, f4']].
        let (spec, _) = minimal_case_potential().unwrap();
        let fcheck = b1_to_fcheck(&spec);
        let z = c(1.3, 0.4);
        let got = eval_mat(&fcheck, z);
        let want = CMat::from_rows(&[
            &[ZERO, ZERO, ZERO, ZERO],
            &[ZERO, z * 2.0, ZERO, ONE],
        ]);
        assert!((&got - &want).norm_max() < 1e-13);
    }

    #[test]
    fn integration_sphere_case() {
        let (_, fc) = sphere_case_potential().unwrap();
        let z = c(0.5, 0.25);
        let f = fc.f_at(z).unwrap();
        let want_f = CMat::from_rows(&[
            &[ZERO, ZERO, -z, -z * z * 0.5],
            &[z * 2.0, -z * z, ZERO, ZERO],
        ]);
        assert!((&f - &want_f).norm_max() < 1e-14);
        let g = fc.g_at(z).unwrap();
        let z3 = z * z * z / 3.0;
        let want_g = CMat::from_rows(&[&[-z3, ZERO], &[ZERO, z3]]);
        assert!((&g - &want_g).norm_max() < 1e-14);
    }

    #[test]
    fn integration_minimal_gives_zero_g() {
        let (_, fc) = minimal_case_potential().unwrap();
        let z = c(0.8, -0.6);
        let f = fc.f_at(z).unwrap();
        let want_f = CMat::from_rows(&[
            &[ZERO, ZERO, ZERO, ZERO],
            &[ZERO, z * z, ZERO, z],
        ]);
        assert!((&f - &want_f).norm_max() < 1e-13);
        assert!(fc.g_at(z).unwrap().norm_max() < 1e-15);
    }

    #[test]
    fn zero_fcheck_integrates_to_zero() {
        let fcheck: [[RationalFn; 4]; 2] = Default::default();
        let fc = integrate_potential(&fcheck, &GRat::zero()).unwrap();
        assert!(fc.f_at(ZERO).unwrap().norm_max() == 0.0);
        assert!(fc.g_at(ZERO).unwrap().norm_max() == 0.0);
    }

    #[test]
    fn frame_is_identity_at_base() {
        let (_, fc) = sphere_case_potential().unwrap();
        let h = meromorphic_frame(&fc, ZERO).unwrap();
        assert!(h.sub(&LoopMat::identity(8)).norm_max() < 1e-15);
    }

    #[test]
    fn frame_sphere_case_at_one() {
        let (_, fc) = sphere_case_potential().unwrap();
        let h = meromorphic_frame(&fc, ONE).unwrap();
        let f = h.coeff(-1).block(0, 2, 2, 4);
        let want = CMat::from_rows(&[
            &[ZERO, ZERO, -ONE, c(-0.5, 0.0)],
            &[c(2.0, 0.0), -ONE, ZERO, ZERO],
        ]);
        assert!((&f - &want).norm_max() < 1e-14);
        let g = h.coeff(-2).block(0, 6, 2, 2);
        let want_g = CMat::from_rows(&[
            &[c(-1.0 / 3.0, 0.0), ZERO],
            &[ZERO, c(1.0 / 3.0, 0.0)],
        ]);
        assert!((&g - &want_g).norm_max() < 1e-14);
    }

    #[test]
    fn frame_solves_its_ode() {
        // Central-difference check of H^{-1} H_z = lambda^{-1} P(eta) at a
        // generic point, holomorphic step.
        let (_, fc) = sphere_case_potential().unwrap();
        let z = c(0.4, 0.3);
        let h = 1e-5;
        let hp = meromorphic_frame(&fc, z + c(h, 0.0)).unwrap();
        let hm = meromorphic_frame(&fc, z - c(h, 0.0)).unwrap();
        let hz = hp.sub(&hm).scale(c(0.5 / h, 0.0));
        let lhs_m1 = hz.coeff(-1);
        let lhs_m2 = hz.coeff(-2);
        // H * lambda^{-1} X has coefficients at -1 and -2.
        let x = potential_g8_at(&fc, z).unwrap();
        let h0 = meromorphic_frame(&fc, z).unwrap();
        let rhs_m1 = x.clone();
        let rhs_m2 = &h0.coeff(-1) * &x;
        assert!((&lhs_m1 - &rhs_m1).norm_max() < 1e-6);
        assert!((&lhs_m2 - &rhs_m2).norm_max() < 1e-6);
    }

    #[test]
    fn pole_guard_fires() {
        // h31 = 1/(z-1) (simple pole) is not integrable; use a double pole
        // instead and check the pole guard.
        let one_minus_z_sq = UPoly::from_coeffs(vec![
            GRat::from_int(1),
            GRat::from_int(-2),
            GRat::from_int(1),
        ]);
        let h31 = RationalFn::new(UPoly::constant(GRat::from_int(1)), one_minus_z_sq);
        let h41 = RationalFn::from_poly(UPoly::constant(GRat::i())).mul(&h31);
        // Columns (h31, h41) chosen so that h^t I h = h31^2 + h41^2 = 0.
        let zero = RationalFn::zero;
        let spec = PotentialSpec::new(
            [
                [zero(), zero()],
                [zero(), zero()],
                [h31, zero()],
                [h41, zero()],
            ],
            GRat::zero(),
        )
        .unwrap();
        let fcheck = b1_to_fcheck(&spec);
        let fc = integrate_potential(&fcheck, &GRat::zero()).unwrap();
        let err = fc.f_at(c(1.0, 1e-9));
        assert!(matches!(err, Err(CoreError::PoleOfPotential { .. })));
    }

    #[test]
    fn nonisotropic_potential_rejected() {
        let zero = RationalFn::zero;
        let one = RationalFn::from_poly(UPoly::constant(GRat::one()));
        let err = PotentialSpec::new(
            [
                [one, zero()],
                [zero(), zero()],
                [zero(), zero()],
                [zero(), zero()],
            ],
            GRat::zero(),
        );
        assert!(matches!(err, Err(CoreError::PatternViolation(_))));
    }

    #[test]
    fn potential_diagnostics() {
        let (spec, fc) = sphere_case_potential().unwrap();
        let z = c(0.3, 0.5);
        assert!(potential_isotropy_residual(&spec, z).unwrap() < 1e-13);
        assert!(potential_nilpotency_residual(&fc, z).unwrap() == 0.0);
        assert!(column_pattern_residual(&spec.b1_hat_at(z).unwrap()) < 1e-14);
    }

    #[test]
    fn potential_transport_examples() {
        // delta0 = 0: eta_{-1} = delta1.
        let d0 = |_: C64| CMat::zeros(2, 2);
        let d1 = |z: C64| {
            let mut m = CMat::zeros(2, 2);
            m[(0, 1)] = z;
            m
        };
        let grid = vec![c(0.5, 0.2), c(-0.3, 0.7)];
        let eta = normalized_potential_transport(&d0, &d1, &grid).unwrap();
        for (e, &z) in eta.iter().zip(&grid) {
            assert!((e - &d1(z)).norm_max() < 1e-12);
        }

        // Commuting constant case: conjugation acts trivially.
        let d0c = |_: C64| CMat::diag(&[c(0.3, 0.1), c(0.3, 0.1)]);
        let d1c = |_: C64| {
            let mut m = CMat::zeros(2, 2);
            m[(1, 0)] = c(2.0, -1.0);
            m
        };
        let eta = normalized_potential_transport(&d0c, &d1c, &grid).unwrap();
        for e in &eta {
            assert!((e - &d1c(ZERO)).norm_max() < 1e-10);
        }

        // Nilpotent 2x2: N = [[0,1],[0,0]], delta1 = [[0,0],[1,0]]:
        // eta_{-1}(z) = e^{zN} delta1 e^{-zN} = [[z, -z^2],[1, -z]].
        let d0n = |_: C64| {
            let mut m = CMat::zeros(2, 2);
            m[(0, 1)] = ONE;
            m
        };
        let d1n = |_: C64| {
            let mut m = CMat::zeros(2, 2);
            m[(1, 0)] = ONE;
            m
        };
        let eta = normalized_potential_transport(&d0n, &d1n, &grid).unwrap();
        for (e, &z) in eta.iter().zip(&grid) {
            let want = CMat::from_rows(&[&[z, -z * z], &[ONE, -z]]);
            assert!((e - &want).norm_max() < 1e-10);
        }
    }

    #[test]
    fn base_point_shift() {
        // Nonzero base point: f vanishes there instead of at 0.
        let (spec, _) = sphere_case_potential().unwrap();
        let base = GRat::new(q_ratio(1, 2), q_ratio(0, 1));
        let spec = PotentialSpec::new(spec.h, base.clone()).unwrap();
        let fcheck = b1_to_fcheck(&spec);
        let fc = integrate_potential(&fcheck, &spec.base_point).unwrap();
        assert!(fc.f_at(base.to_c64()).unwrap().norm_max() < 1e-15);
        assert!(fc.g_at(base.to_c64()).unwrap().norm_max() < 1e-15);
    }
}
