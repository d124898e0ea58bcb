//! End-to-end orchestration: potential -> extended frame -> surface sample.
//!
//! A `Pipeline` owns the integrated potential data and a backend choice.
//! The exact backend carries the middle term as bivariate polynomials over
//! powers of det(d) and only drops to floating point for the triangular
//! factors; the numeric backend evaluates everything in f64 directly.

use crate::error::{CoreError, Result};
use crate::fd::step_for;
use crate::frame::{b1_pattern_residual, mc_form, MCForm, DEFAULT_FD_STEP};
use crate::iwasawa::{
    big_cell_margin, extended_frame, factor_l0, solve_w0, solve_w0_exact, ExactW0, L0Blocks,
    MiddleGauge, W0Blocks,
};
use crate::loops::LoopMat;
use crate::mat::{C64, CMat, ONE};
use crate::potential::{meromorphic_frame, FcheckData};
use crate::surface::{
    canonical_lift, chordal_distance, lightcone_residual, metric_density, phi_hat_columns,
    project_to_sphere, solve_rho1, surface_columns, RhoBranch, RhoSolution,
};

/// Arithmetic backend for the middle-term solve.
pub enum Backend {
    Numeric,
    Exact(Box<ExactState>),
}

/// Exact-mode state: the middle term as polynomials, plus polynomial
/// (f, g) used to assemble the meromorphic frame without rounding.
pub struct ExactState {
    pub w0: ExactW0,
}

/// Which lift branches a sample request should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BranchPolicy {
    Primal,
    Dual,
    #[default]
    Both,
}

/// Mode selector mirrored by the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exact when the potential is polynomial, numeric otherwise.
    #[default]
    Auto,
    Exact,
    Numeric,
}

/// One output record of the surface construction.
#[derive(Clone, Debug)]
pub struct SurfaceSample {
    pub z: C64,
    pub lambda: C64,
    pub branch: RhoBranch,
    pub rank_estimate: usize,
    pub rho1: C64,
    pub y: [f64; 8],
    pub x: [f64; 7],
    pub big_cell_margin: f64,
    /// Named residuals: lightcone defect, sphere-norm defect, lift-equation
    /// residual, pattern residual of B1, reality defect of the columns.
    pub lightcone_residual: f64,
    pub sphere_residual: f64,
    pub rho_residual: f64,
    pub b1_pattern_residual: f64,
    pub reality_residual: f64,
    /// True when the raw lift exceeded the blow-up threshold and was
    /// renormalized before projection.
    pub renormalized: bool,
}

pub struct Pipeline {
    fc: FcheckData,
    backend: Backend,
    pub gauge: MiddleGauge,
    /// Relative FD step used for Maurer-Cartan extraction.
    pub fd_step: f64,
}

impl Pipeline {
    pub fn new(fc: FcheckData, mode: Mode) -> Result<Self> {
        let backend = match mode {
            Mode::Numeric => Backend::Numeric,
            Mode::Exact => {
                let parts = fc.exact_parts()?;
                Backend::Exact(Box::new(ExactState {
                    w0: solve_w0_exact(&parts),
                }))
            }
            Mode::Auto => {
                if fc.is_polynomial() {
                    let parts = fc.exact_parts()?;
                    Backend::Exact(Box::new(ExactState {
                        w0: solve_w0_exact(&parts),
                    }))
                } else {
                    Backend::Numeric
                }
            }
        };
        Ok(Self {
            fc,
            backend,
            gauge: MiddleGauge::default(),
            fd_step: DEFAULT_FD_STEP,
        })
    }

    pub fn fc(&self) -> &FcheckData {
        &self.fc
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.backend, Backend::Exact(_))
    }

    pub fn exact_w0(&self) -> Option<&ExactW0> {
        match &self.backend {
            Backend::Exact(state) => Some(&state.w0),
            Backend::Numeric => None,
        }
    }

    pub fn w0_at(&self, z: C64) -> Result<W0Blocks> {
        match &self.backend {
            Backend::Numeric => solve_w0(&self.fc, z),
            Backend::Exact(state) => {
                self.fc.check_pole(z)?;
                state.w0.eval(z)
            }
        }
    }

    pub fn factors_at(&self, z: C64) -> Result<(W0Blocks, L0Blocks)> {
        let w0 = self.w0_at(z)?;
        let l0 = factor_l0(&w0, z, self.gauge)?;
        Ok((w0, l0))
    }

    /// The extended frame at z, as a loop with support in [-2, 2].
    pub fn frame_at(&self, z: C64) -> Result<LoopMat> {
        let h = meromorphic_frame(&self.fc, z)?;
        let (w0, l0) = self.factors_at(z)?;
        extended_frame(&h, &w0, &l0)
    }

    pub fn meromorphic_frame_at(&self, z: C64) -> Result<LoopMat> {
        meromorphic_frame(&self.fc, z)
    }

    pub fn big_cell_margin(&self, z: C64) -> Result<f64> {
        big_cell_margin(&self.fc, z)
    }

    /// Maurer-Cartan data at z by central differences of the frame.
    pub fn mc_at(&self, z: C64) -> Result<MCForm> {
        let f = |w: C64| self.frame_at(w);
        mc_form(&f, z, step_for(z, self.fd_step))
    }

    /// The off-diagonal pattern block at z, computed algebraically: the
    /// degree minus-one part of the frame derivative is l1 fcheck l0^{-1}
    /// in the 8x8 picture, so no differencing is needed. The FD route in
    /// `mc_at` cross-checks this in the verification suites.
    pub fn b1_at(&self, z: C64) -> Result<CMat> {
        let (_, l0) = self.factors_at(z)?;
        self.b1_from_factors(&l0, z)
    }

    fn b1_from_factors(&self, l0: &L0Blocks, z: C64) -> Result<CMat> {
        let fcheck = self.fc.fcheck_at(z)?;
        let l0_inv = l0
            .l0
            .inverse()
            .ok_or(CoreError::OutsideBigCell {
                z,
                reason: "middle factor singular".into(),
            })?;
        let b = &(&l0.l1 * &fcheck) * &l0_inv;
        let mut x = CMat::zeros(8, 8);
        x.set_block(0, 2, &b);
        x.set_block(2, 6, &crate::potential::sharp2x4(&b).scale(-ONE));
        let so = crate::bridge::Bridge::new().from_g8(&x);
        Ok(so.block(0, 4, 4, 4))
    }

    /// Lift-coefficient roots at z (algebraic pattern block).
    pub fn rho_at(&self, z: C64) -> Result<Vec<RhoSolution>> {
        let b1 = self.b1_at(z)?;
        solve_rho1(&b1)
    }

    /// Select branches according to policy. Rank-2 points always produce a
    /// single sample regardless of policy.
    fn select<'a>(
        sols: &'a [RhoSolution],
        policy: BranchPolicy,
    ) -> Vec<&'a RhoSolution> {
        if sols.len() == 1 {
            return vec![&sols[0]];
        }
        match policy {
            BranchPolicy::Primal => vec![&sols[0]],
            BranchPolicy::Dual => vec![&sols[1]],
            BranchPolicy::Both => sols.iter().collect(),
        }
    }

    /// Full surface samples at (z, lambda).
    pub fn samples(&self, z: C64, lambda: C64, policy: BranchPolicy) -> Result<Vec<SurfaceSample>> {
        debug_assert!((lambda.norm() - 1.0).abs() < 1e-12);
        let h = meromorphic_frame(&self.fc, z)?;
        let (w0, l0) = self.factors_at(z)?;
        let b1 = self.b1_from_factors(&l0, z)?;
        let sols = solve_rho1(&b1)?;
        let frame = extended_frame(&h, &w0, &l0)?;
        let value = frame.eval(lambda);
        let phi = phi_hat_columns(&value);
        let cols = surface_columns(&phi);
        let margin = self.big_cell_margin(z)?;
        let pattern = b1_pattern_residual(&b1);

        let mut out = vec![];
        for sol in Self::select(&sols, policy) {
            let lift = canonical_lift(&cols, sol.rho1)?;
            let x = project_to_sphere(&lift.y)?;
            let sphere_residual =
                (x.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs();
            out.push(SurfaceSample {
                z,
                lambda,
                branch: sol.branch,
                rank_estimate: sol.rank_estimate,
                rho1: sol.rho1,
                y: lift.y,
                x,
                big_cell_margin: margin,
                lightcone_residual: lightcone_residual(&lift.y),
                sphere_residual,
                rho_residual: sol.residual,
                b1_pattern_residual: pattern,
                reality_residual: cols.reality_residual,
                renormalized: lift.renormalized,
            });
        }
        Ok(out)
    }

    /// Sphere point for a fixed branch; the closure form used by FD-based
    /// diagnostics. Branch selection is positional, so the map is smooth
    /// wherever the rank classification is locally constant.
    pub fn surface_point(&self, z: C64, lambda: C64, branch: BranchPolicy) -> Result<[f64; 7]> {
        let policy = match branch {
            BranchPolicy::Both => BranchPolicy::Primal,
            other => other,
        };
        let samples = self.samples(z, lambda, policy)?;
        Ok(samples[0].x)
    }

    /// Normalized lightcone lift for a fixed branch (unit Euclidean norm,
    /// positive first component); smooth input for isotropy stencils.
    pub fn unit_lift(&self, z: C64, lambda: C64, branch: BranchPolicy) -> Result<[f64; 8]> {
        let policy = match branch {
            BranchPolicy::Both => BranchPolicy::Primal,
            other => other,
        };
        let samples = self.samples(z, lambda, policy)?;
        let mut y = samples[0].y;
        let n = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut y {
            *v /= n;
        }
        Ok(y)
    }

    /// Induced metric density |dx/dz|^2 at (z, lambda) by central
    /// differences with relative step h_rel.
    pub fn metric_density(
        &self,
        z: C64,
        lambda: C64,
        branch: BranchPolicy,
        h_rel: f64,
    ) -> Result<f64> {
        let surface = |w: C64| self.surface_point(w, lambda, branch);
        metric_density(&surface, z, step_for(z, h_rel))
    }

    /// Projective distance of the pipeline surface from a reference map.
    pub fn distance_to(
        &self,
        reference: &dyn Fn(C64, C64) -> [f64; 7],
        z: C64,
        lambda: C64,
        branch: BranchPolicy,
    ) -> Result<f64> {
        let x = self.surface_point(z, lambda, branch)?;
        Ok(chordal_distance(&x, &reference(z, lambda)))
    }
}

/// Exit classification used by the CLI when a grid evaluation partially
/// fails: per-sample errors are recorded as flags, not panics.
pub fn describe_error(e: &CoreError) -> &'static str {
    match e {
        CoreError::OutsideBigCell { .. } => "outside_big_cell",
        CoreError::PoleOfPotential { .. } => "pole_of_potential",
        CoreError::DegenerateB1 => "degenerate_b1",
        CoreError::NullOutput { .. } => "null_output",
        CoreError::ProjectionDividesByZero { .. } => "projection_divide_by_zero",
        CoreError::StencilCrossesBigCellBoundary { .. } => "stencil_crosses_boundary",
        _ => "error",
    }
}

/// Frame used when comparing against the printed closed-form frame table:
/// converts the pipeline frame to the gauge with l0_22 = sqrt(det d).
pub fn frame_at_det_gauge(fc: &FcheckData, z: C64) -> Result<LoopMat> {
    let h = meromorphic_frame(fc, z)?;
    let w0 = solve_w0(fc, z)?;
    let l0 = factor_l0(&w0, z, MiddleGauge::DetWeighted)?;
    extended_frame(&h, &w0, &l0)
}
