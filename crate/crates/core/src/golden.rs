//! Golden cases and verification suites.
//!
//! Each golden case pairs a built-in potential with an independent
//! closed-form evaluator for the resulting surface. The evaluators are
//! written in bare complex arithmetic, sharing no matrix helpers with the
//! pipeline, so agreement is a genuine two-route check.

use crate::error::Result;
use crate::fd::{step_for, vec_derivs};
use crate::golden_inputs::{sphere_case_potential, minimal_case_potential};
use crate::loops::{g8_residual, loop_inv_g8, loop_mul, reality_residual, twist_residual};
use crate::mat::C64;
use crate::pipeline::{BranchPolicy, Mode, Pipeline};
use crate::surface::chordal_distance;

/// Closed form of the sphere-valued example: the associated family
/// x(z, lambda) on the unit 6-sphere.
pub fn closed_form_sphere_case(z: C64, lambda: C64) -> [f64; 7] {
    let r2 = z.norm_sqr();
    let r4 = r2 * r2;
    let r6 = r4 * r2;
    let r8 = r4 * r4;
    let denom = 1.0 + r2 + 5.0 * r4 / 4.0 + 4.0 * r6 / 9.0 + r8 / 36.0;
    let i = C64::new(0.0, 1.0);
    let li = 1.0 / lambda; // lambda^{-1} = conj(lambda) on the circle
    let zb = z.conj();
    let lb = lambda;
    let x1 = 1.0 - r2 - 3.0 * r4 / 4.0 + 4.0 * r6 / 9.0 - r8 / 36.0;
    let x2 = (-i * (z - zb) * (1.0 + r6 / 9.0)).re;
    let x3 = ((z + zb) * (1.0 + r6 / 9.0)).re;
    let x4 = (-i * (li * z * z - lb * zb * zb) * (1.0 - r4 / 12.0)).re;
    let x5 = ((li * z * z + lb * zb * zb) * (1.0 - r4 / 12.0)).re;
    let x6 = (-i * (r2 / 2.0) * (li * z - lb * zb) * (1.0 + 4.0 * r2 / 3.0)).re;
    let x7 = ((r2 / 2.0) * (li * z + lb * zb) * (1.0 + 4.0 * r2 / 3.0)).re;
    [
        x1 / denom,
        x2 / denom,
        x3 / denom,
        x4 / denom,
        x5 / denom,
        x6 / denom,
        x7 / denom,
    ]
}

/// Closed form of the isotropic-minimal example with f2 = z^2, f4 = z: the
/// homogeneous lightcone lift Y(z, lambda) in R^{1,7}.
pub fn closed_form_minimal_lift(z: C64, lambda: C64) -> [f64; 8] {
    let i = C64::new(0.0, 1.0);
    let f2 = z * z;
    let f4 = z;
    let d2 = 2.0 * z; // f2'
    let d4 = C64::new(1.0, 0.0); // f4'
    let li = 1.0 / lambda;
    let lb = lambda;
    let q = d2 / d4; // f2'/f4'
    let qb = q.conj();
    let y1 = 1.0 + f2.norm_sqr() - (f2.conj() * f4 * q).re * 2.0
        + q.norm_sqr() * (1.0 + f4.norm_sqr());
    let y2 = 1.0 - f2.norm_sqr() + (f2.conj() * f4 * q).re * 2.0
        - q.norm_sqr() * (1.0 + f4.norm_sqr());
    let y3 = (-i * q + i * qb).re;
    let y4 = (-q - qb).re;
    let y5 = (-i * (li * f2 - lb * f2.conj()) + i * li * q * f4 - i * lb * qb * f4.conj()).re;
    let y6 = ((li * f2 + lb * f2.conj()) - li * q * f4 - lb * qb * f4.conj()).re;
    [y1, y2, y3, y4, y5, y6, 0.0, 0.0]
}

/// Sphere point of the minimal-case lift.
pub fn closed_form_minimal_sphere(z: C64, lambda: C64) -> [f64; 7] {
    let y = closed_form_minimal_lift(z, lambda);
    let mut x = [0.0f64; 7];
    for k in 0..7 {
        x[k] = y[k + 1] / y[0];
    }
    x
}

/// A named golden case.
pub struct GoldenCase {
    pub name: &'static str,
    pub closed_form: fn(C64, C64) -> [f64; 7],
    pub tolerance: f64,
}

pub const SPHERE_CASE: GoldenCase = GoldenCase {
    name: "sphere-s6",
    closed_form: closed_form_sphere_case,
    tolerance: 1e-8,
};

pub const MINIMAL_CASE: GoldenCase = GoldenCase {
    name: "minimal-r4",
    closed_form: closed_form_minimal_sphere,
    tolerance: 1e-8,
};

pub fn pipeline_for(case: &GoldenCase, mode: Mode) -> Result<Pipeline> {
    let (_, fc) = match case.name {
        "sphere-s6" => sphere_case_potential()?,
        "minimal-r4" => minimal_case_potential()?,
        other => panic!("unknown golden case {other}"),
    };
    Pipeline::new(fc, mode)
}

/// Positive radius of the frame blow-up circle of the sphere case: the root
/// of 1 + 4 r^2 - 2 r^6 / 9 = 0, found by bisection.
pub fn blowup_radius() -> f64 {
    let f = |r: f64| 1.0 + 4.0 * r * r - 2.0 * r.powi(6) / 9.0;
    let mut lo = 1.0;
    let mut hi = 4.0;
    assert!(f(lo) > 0.0 && f(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The default verification grid: a polar grid avoiding the blow-up circle
/// by a 0.05 band (the default radii stay well inside it).
pub fn default_grid() -> Vec<C64> {
    let radii = [0.2, 0.5, 1.0, 1.5, 1.95];
    let args = [0.0, std::f64::consts::FRAC_PI_2, std::f64::consts::PI, 1.5 * std::f64::consts::PI];
    let rc = blowup_radius();
    let mut grid = vec![];
    for &r in &radii {
        if (r - rc).abs() < 0.05 {
            continue;
        }
        for &a in &args {
            grid.push(C64::from_polar(r, a));
        }
    }
    grid
}

/// One line of a verification report.
#[derive(Clone, Debug)]
pub struct CheckLine {
    pub suite: &'static str,
    pub label: String,
    pub value: f64,
    pub tolerance: f64,
}

impl CheckLine {
    pub fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

/// Max projective distance between the pipeline surface and the closed
/// form over a grid and a set of circle points.
pub fn golden_residual(
    pipeline: &Pipeline,
    case: &GoldenCase,
    grid: &[C64],
    lambdas: &[C64],
) -> Result<Vec<CheckLine>> {
    let mut out = vec![];
    for &z in grid {
        for &lam in lambdas {
            let x = pipeline.surface_point(z, lam, BranchPolicy::Primal)?;
            let want = (case.closed_form)(z, lam);
            out.push(CheckLine {
                suite: "golden",
                label: format!("{} z={:.3}{:+.3}i lambda={:.2}{:+.2}i", case.name, z.re, z.im, lam.re, lam.im),
                value: chordal_distance(&x, &want),
                tolerance: case.tolerance,
            });
        }
    }
    Ok(out)
}

/// Isotropy residuals of the unit lift: |<Y_z, Y_z>|, |<Y_z, Y_zz>|,
/// |<Y_zz, Y_zz>| with the Lorentz pairing, by finite differences.
pub fn isotropy_residuals(
    pipeline: &Pipeline,
    z: C64,
    lambda: C64,
    h_rel: f64,
) -> Result<[f64; 3]> {
    let eval = |w: C64| -> Result<Vec<f64>> {
        Ok(pipeline.unit_lift(w, lambda, BranchPolicy::Primal)?.to_vec())
    };
    let d = vec_derivs(&eval, z, step_for(z, h_rel))?;
    let pair = |a: &[C64], b: &[C64]| -> f64 {
        let mut acc = -a[0] * b[0];
        for k in 1..8 {
            acc += a[k] * b[k];
        }
        acc.norm()
    };
    Ok([
        pair(&d.y_z, &d.y_z),
        pair(&d.y_z, &d.y_zz),
        pair(&d.y_zz, &d.y_zz),
    ])
}

pub fn isotropy_suite(
    pipeline: &Pipeline,
    grid: &[C64],
    lambda: C64,
    h_rel: f64,
    tol: f64,
) -> Result<Vec<CheckLine>> {
    let mut out = vec![];
    for &z in grid {
        let r = isotropy_residuals(pipeline, z, lambda, h_rel)?;
        for (k, name) in ["<Yz,Yz>", "<Yz,Yzz>", "<Yzz,Yzz>"].iter().enumerate() {
            out.push(CheckLine {
                suite: "isotropy",
                label: format!("{} z={:.3}{:+.3}i", name, z.re, z.im),
                value: r[k],
                tolerance: tol,
            });
        }
    }
    Ok(out)
}

/// Reality, twisting, quadric membership, and positivity of the plus
/// factor, over a grid.
pub fn reality_twist_suite(
    pipeline: &Pipeline,
    grid: &[C64],
    lambdas: &[C64],
    tol: f64,
) -> Result<Vec<CheckLine>> {
    let mut out = vec![];
    for &z in grid {
        let f = pipeline.frame_at(z)?;
        let scale = f.norm_max().max(1.0);
        out.push(CheckLine {
            suite: "reality-twist",
            label: format!("tau-fixed z={:.3}{:+.3}i", z.re, z.im),
            value: reality_residual(&f) / scale,
            tolerance: tol,
        });
        out.push(CheckLine {
            suite: "reality-twist",
            label: format!("twisted z={:.3}{:+.3}i", z.re, z.im),
            value: twist_residual(&f) / scale,
            tolerance: tol,
        });
        for &lam in lambdas {
            out.push(CheckLine {
                suite: "reality-twist",
                label: format!(
                    "quadric z={:.3}{:+.3}i lambda={:.2}{:+.2}i",
                    z.re, z.im, lam.re, lam.im
                ),
                value: g8_residual(&f.eval(lam)) / (scale * scale),
                tolerance: tol,
            });
        }
        let h = pipeline.meromorphic_frame_at(z)?;
        let plus = loop_mul(&loop_inv_g8(&f), &h)?;
        out.push(CheckLine {
            suite: "reality-twist",
            label: format!("plus-factor z={:.3}{:+.3}i", z.re, z.im),
            value: plus.mass_outside(0, 4) / plus.norm_max().max(1.0),
            tolerance: tol,
        });
    }
    Ok(out)
}

/// Residuals of the middle-term equations over a grid.
pub fn middle_term_suite(pipeline: &Pipeline, grid: &[C64], tol: f64) -> Result<Vec<CheckLine>> {
    let mut out = vec![];
    for &z in grid {
        let w0 = pipeline.w0_at(z)?;
        let res = w0.equation_residuals(pipeline.fc(), z)?;
        let scale = w0.q.norm_max().max(1.0);
        for (r, name) in res.iter().zip(["d", "u", "q", "a", "consequence", "corner"]) {
            out.push(CheckLine {
                suite: "middle-term",
                label: format!("{} z={:.3}{:+.3}i", name, z.re, z.im),
                value: r / scale,
                tolerance: tol,
            });
        }
    }
    Ok(out)
}

/// Metric density is independent of the circle parameter.
pub fn lambda_isometry_suite(
    pipeline: &Pipeline,
    grid: &[C64],
    lambdas: &[C64],
    h_rel: f64,
    tol: f64,
) -> Result<Vec<CheckLine>> {
    let mut out = vec![];
    for &z in grid {
        let base = pipeline.metric_density(z, lambdas[0], BranchPolicy::Primal, h_rel)?;
        for &lam in &lambdas[1..] {
            let m = pipeline.metric_density(z, lam, BranchPolicy::Primal, h_rel)?;
            out.push(CheckLine {
                suite: "lambda-isometry",
                label: format!(
                    "z={:.3}{:+.3}i lambda={:.2}{:+.2}i",
                    z.re, z.im, lam.re, lam.im
                ),
                value: (m - base).abs() / base.max(1.0),
                tolerance: tol,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::ONE;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closed_forms_are_self_consistent() {
        // Sphere case lands on the unit sphere.
        for z in [c(0.0, 0.0), c(0.7, -0.2), c(1.4, 1.1)] {
            for lam in [ONE, c(0.0, 1.0)] {
                let x = closed_form_sphere_case(z, lam);
                let n: f64 = x.iter().map(|v| v * v).sum();
                assert!((n - 1.0).abs() < 1e-12, "norm {n} at {z}");
            }
        }
        // Minimal case is lightlike.
        for z in [c(0.5, 0.5), c(1.0, 0.0), c(-0.3, 0.8)] {
            for lam in [ONE, c(0.0, 1.0)] {
                let y = closed_form_minimal_lift(z, lam);
                let q = -y[0] * y[0] + y[1..].iter().map(|v| v * v).sum::<f64>();
                assert!(q.abs() < 1e-10 * y[0] * y[0], "pairing {q} at {z}");
            }
        }
    }

    #[test]
    fn closed_form_values_at_markers() {
        // z = 0: x = (1, 0, ..., 0).
        let x = closed_form_sphere_case(c(0.0, 0.0), ONE);
        assert!((x[0] - 1.0).abs() < 1e-15);
        assert!(x[1..].iter().all(|v| v.abs() < 1e-15));

        // Minimal case at z = 1, lambda = 1: Y = (6, -4, 0, -4, 0, -2, 0, 0).
        let y = closed_form_minimal_lift(ONE, ONE);
        let want = [6.0, -4.0, 0.0, -4.0, 0.0, -2.0, 0.0, 0.0];
        for (a, b) in y.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{y:?}");
        }
        // Lightlike identity: -36 + 16 + 16 + 4 = 0.
        assert_eq!(-36.0 + 16.0 + 16.0 + 4.0, 0.0);
    }

    #[test]
    fn blowup_radius_bracket() {
        let r = blowup_radius();
        assert!(r > 2.05 && r < 2.10, "radius {r}");
        let f = 1.0 + 4.0 * r * r - 2.0 * r.powi(6) / 9.0;
        assert!(f.abs() < 1e-9);
    }

    #[test]
    fn default_grid_avoids_blowup_band() {
        let rc = blowup_radius();
        for z in default_grid() {
            assert!((z.norm() - rc).abs() >= 0.05);
        }
        assert_eq!(default_grid().len(), 20);
    }
}
