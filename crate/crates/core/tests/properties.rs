//! Property tests of the algebraic invariants, plus a few cross-module
//! checks that belong to no single unit suite.

use isowill_core::bridge::{so17_residual, Bridge};
use isowill_core::exact::{q_ratio, BiPoly, GRat};
use isowill_core::golden::{
    closed_form_minimal_sphere, default_grid, pipeline_for, MINIMAL_CASE, SPHERE_CASE,
};
use isowill_core::loops::{g8_residual, loop_mul, reality_residual, tau, LoopMat};
use isowill_core::mat::{C64, CMat};
use isowill_core::pipeline::{BranchPolicy, Mode};
use isowill_core::ratfn::{RationalFn, UPoly};
use isowill_core::surface::{rho_residual, solve_rho1};
use proptest::prelude::*;

fn grat_strategy() -> impl Strategy<Value = GRat> {
    let q = (-30i64..30, 1i64..8).prop_map(|(n, d)| q_ratio(n, d));
    (q.clone(), q).prop_map(|(re, im)| GRat::new(re, im))
}

fn bipoly_strategy() -> impl Strategy<Value = BiPoly> {
    proptest::collection::vec((grat_strategy(), 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
        let mut p = BiPoly::zero();
        for (c, a, b) in terms {
            p = &p + &BiPoly::monomial(c, a, b);
        }
        p
    })
}

fn upoly_strategy() -> impl Strategy<Value = UPoly> {
    proptest::collection::vec(grat_strategy(), 0..6).prop_map(UPoly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bipoly_ring_laws(a in bipoly_strategy(), b in bipoly_strategy(), c in bipoly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn bipoly_bar_is_an_anti_involution(a in bipoly_strategy(), b in bipoly_strategy()) {
        prop_assert_eq!(a.conj_bar().conj_bar(), a.clone());
        prop_assert_eq!((&a * &b).conj_bar(), &a.conj_bar() * &b.conj_bar());
    }

    #[test]
    fn derivative_of_antiderivative_is_identity(p in upoly_strategy()) {
        let f = RationalFn::from_poly(p.clone());
        let int = f.antiderivative(&GRat::zero(), (1, 1)).unwrap();
        let back = int.derivative();
        let z = GRat::new(q_ratio(3, 7), q_ratio(-2, 5));
        prop_assert_eq!(back.eval(&z), f.eval(&z));
        prop_assert!(int.eval(&GRat::zero()).is_zero());
    }

    #[test]
    fn lift_equation_roots_verify(
        re1 in -2.0f64..2.0, im1 in -2.0f64..2.0,
        re2 in -2.0f64..2.0, im2 in -2.0f64..2.0,
    ) {
        // Rank-one column built from the ruled parametrization; both
        // returned roots must satisfy the equations.
        let r1 = C64::new(re1, im1);
        let r2 = C64::new(re2, im2);
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let h = [one + r1 * r2, one - r1 * r2, r1 + r2, -i * (r1 - r2)];
        let mut b1 = CMat::zeros(4, 4);
        for (k, v) in h.iter().enumerate() {
            b1[(k, 0)] = *v;
            b1[(k, 1)] = i * *v;
        }
        if let Ok(sols) = solve_rho1(&b1) {
            for s in sols {
                prop_assert!(rho_residual(&b1, s.rho1) <= 1e-8);
            }
        }
    }
}

/// Deterministic pseudo-random loop with the layout of pipeline loops.
fn random_loop(seed: &mut u64) -> LoopMat {
    let mut next = || {
        *seed = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let mut l = LoopMat::zero(8);
    for d in -2..=2i32 {
        let mut m = CMat::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                m[(i, j)] = C64::new(next(), next());
            }
        }
        l.set_coeff(d, m).unwrap();
    }
    l
}

#[test]
fn conjugated_frame_product_has_the_block_ladder() {
    // tau(H)^{-1} H is block-graded: degree 0 carries (I, I + jc4 fbar^t f,
    // d) on the diagonal, degree -1 carries f and jc4 fbar^t g - f^sharp,
    // degree -2 carries g, and the positive degrees carry the conjugate
    // ladder with gbar^t in the lower-left corner at degree +2.
    use isowill_core::consts::jc4;
    use isowill_core::loops::tau_inv;
    use isowill_core::potential::{meromorphic_frame, sharp2x4};

    let (_, fc) = isowill_core::golden_inputs::sphere_case_potential().unwrap();
    let z = C64::new(0.7, -0.4);
    let h = meromorphic_frame(&fc, z).unwrap();
    let prod = loop_mul(&tau_inv(&h), &h).unwrap();

    let f = fc.f_at(z).unwrap();
    let g = fc.g_at(z).unwrap();
    let fsharp = sharp2x4(&f);
    let fbar_t = f.conj().transpose();
    let jc4m = jc4();

    let c0 = prod.coeff(0);
    assert!(c0.block(0, 0, 2, 2).residual_from_identity() < 1e-13);
    let mid = &CMat::identity(4) + &(&(&jc4m * &fbar_t) * &f);
    assert!((&c0.block(2, 2, 4, 4) - &mid).norm_max() < 1e-13);
    let d = &(&CMat::identity(2) + &(&(&fsharp.conj().transpose() * &jc4m) * &fsharp))
        + &(&g.adjoint() * &g);
    assert!((&c0.block(6, 6, 2, 2) - &d).norm_max() < 1e-13);

    let cm1 = prod.coeff(-1);
    assert!((&cm1.block(0, 2, 2, 4) - &f).norm_max() < 1e-13);
    let want_23 = &(&(&jc4m * &fbar_t) * &g) - &fsharp;
    assert!((&cm1.block(2, 6, 4, 2) - &want_23).norm_max() < 1e-13);

    assert!((&prod.coeff(-2).block(0, 6, 2, 2) - &g).norm_max() < 1e-13);
    // Lower-left corner at degree +2 is gbar^t.
    assert!(
        (&prod.coeff(2).block(6, 0, 2, 2) - &g.conj().transpose()).norm_max() < 1e-13
    );
    assert!((&prod.coeff(1).block(2, 0, 4, 2) - &(&jc4m * &fbar_t)).norm_max() < 1e-13);
}

#[test]
fn unipotent_inverses_of_pipeline_loops() {
    use isowill_core::loops::loop_inv_unipotent;

    let (_, fc) = isowill_core::golden_inputs::sphere_case_potential().unwrap();
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let z = C64::new(1.0, 0.0);

    // The frame H: its inverse has the closed form
    // I - l^{-1} H1 - l^{-2} (H2 - H1^2).
    let h = isowill_core::potential::meromorphic_frame(&fc, z).unwrap();
    let hinv = loop_inv_unipotent(&h).unwrap();
    assert!(
        loop_mul(&h, &hinv)
            .unwrap()
            .sub(&LoopMat::identity(8))
            .norm_max()
            < 1e-12
    );
    let h1 = h.coeff(-1);
    let h2 = h.coeff(-2);
    assert!((&hinv.coeff(-1) + &h1).norm_max() < 1e-13);
    let want = &(&h1 * &h1) - &h2;
    assert!((&hinv.coeff(-2) - &want).norm_max() < 1e-13);

    // The unipotent factor W at z = 1 round-trips as well.
    let w0 = p.w0_at(z).unwrap();
    let w = w0.w_loop();
    let winv = loop_inv_unipotent(&w).unwrap();
    let resid = loop_mul(&w, &winv)
        .unwrap()
        .sub(&LoopMat::identity(8))
        .norm_max();
    assert!(resid < 1e-12, "round-trip residual {resid:e}");
}

#[test]
fn pipeline_loops_are_twisted() {
    // Every loop in the chain commutes with the involution matrix after a
    // sign flip of the circle parameter.
    use isowill_core::loops::twist_residual;
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let z = C64::new(0.8, 0.3);
    let h = p.meromorphic_frame_at(z).unwrap();
    let w = p.w0_at(z).unwrap().w_loop();
    let f = p.frame_at(z).unwrap();
    for l in [h, w, f] {
        assert!(twist_residual(&l) < 1e-12 * l.norm_max().max(1.0));
    }
}

#[test]
fn tau_respects_products_of_generic_loops() {
    let mut seed = 0xfeed;
    for _ in 0..5 {
        let mut a = LoopMat::identity(8);
        a.set_coeff(-1, random_loop(&mut seed).coeff(0)).unwrap();
        let mut b = LoopMat::identity(8);
        b.set_coeff(1, random_loop(&mut seed).coeff(0)).unwrap();
        let lhs = tau(&loop_mul(&a, &b).unwrap());
        let rhs = loop_mul(&tau(&a), &tau(&b)).unwrap();
        assert!(lhs.sub(&rhs).norm_max() < 1e-12);
    }
}

#[test]
fn quadric_membership_closed_under_products() {
    // Frame values are group elements; products of them must stay at the
    // rounding floor of the membership residual.
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let f1 = p.frame_at(C64::new(0.4, 0.2)).unwrap().eval(C64::new(0.0, 1.0));
    let f2 = p.frame_at(C64::new(-0.3, 0.7)).unwrap().eval(C64::new(1.0, 0.0));
    let prod = &f1 * &f2;
    let scale = prod.norm_max().powi(2);
    assert!(g8_residual(&prod) < 1e-12 * scale.max(1.0));
}

#[test]
fn lorentz_membership_of_bridged_frames() {
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let bridge = Bridge::new();
    for z in [C64::new(0.5, 0.1), C64::new(-0.9, 0.6)] {
        for lam in [C64::new(1.0, 0.0), C64::new(0.0, 1.0)] {
            let f = bridge.from_g8(&p.frame_at(z).unwrap().eval(lam));
            let scale = f.norm_max().powi(2).max(1.0);
            assert!(so17_residual(&f) < 1e-9 * scale);
        }
    }
}

#[test]
fn reality_suite_detects_injected_noise() {
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let f = p.frame_at(C64::new(0.6, -0.4)).unwrap();
    assert!(reality_residual(&f) < 1e-10 * f.norm_max());
    let mut noisy = f.clone();
    let mut m = noisy.coeff(1);
    m[(0, 3)] += C64::new(1e-3, 0.0);
    noisy.set_coeff(1, m).unwrap();
    assert!(reality_residual(&noisy) >= 1e-4);
}

#[test]
fn sample_reality_residual_small_across_grid() {
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    for &z in default_grid().iter() {
        let s = &p.samples(z, C64::new(0.0, 1.0), BranchPolicy::Primal).unwrap()[0];
        assert!(s.reality_residual < 1e-9, "at {z}: {}", s.reality_residual);
    }
}

#[test]
fn minimal_metric_matches_closed_form_differencing() {
    let p = pipeline_for(&MINIMAL_CASE, Mode::Exact).unwrap();
    let z = C64::new(1.0, 0.0);
    let lam = C64::new(1.0, 0.0);
    let got = p.metric_density(z, lam, BranchPolicy::Primal, 1e-5).unwrap();
    let reference = |w: C64| -> isowill_core::Result<[f64; 7]> {
        Ok(closed_form_minimal_sphere(w, lam))
    };
    let want = isowill_core::surface::metric_density(&reference, z, 1e-5).unwrap();
    assert!(got > 0.0);
    assert!((got - want).abs() < 1e-8 * want.max(1.0));
}

#[test]
fn sphere_case_lift_coefficient_matches_closed_form() {
    // In the det-weighted gauge the unique lift coefficient of the sphere
    // case is i * conj(rho) with rho = z (1 + 2 r^2 - r^6 / 18) / det d.
    use isowill_core::golden_inputs::sphere_case_potential;
    use isowill_core::iwasawa::MiddleGauge;
    use isowill_core::pipeline::Pipeline;
    let (_, fc) = sphere_case_potential().unwrap();
    let mut p = Pipeline::new(fc, Mode::Exact).unwrap();
    p.gauge = MiddleGauge::DetWeighted;
    for z in [C64::new(0.5, 0.3), C64::new(-1.2, 0.8)] {
        let r2 = z.norm_sqr();
        let det = (1.0 + 4.0 * r2 + r2 * r2 / 4.0 + r2.powi(3) / 9.0)
            * (1.0 + r2.powi(3) / 9.0);
        let rho = z * (1.0 + 2.0 * r2 - r2.powi(3) / 18.0) / det;
        let want = C64::new(0.0, 1.0) * rho.conj();
        let sols = p.rho_at(z).unwrap();
        assert_eq!(sols.len(), 1);
        assert!((sols[0].rho1 - want).norm() < 1e-12, "at {z}");
    }
}

#[test]
fn pattern_residual_flags_non_pattern_blocks() {
    use isowill_core::frame::b1_pattern_residual;
    // A real diagonal block is nowhere near the (h1, i h1, h3, i h3) shape.
    let mut b = CMat::zeros(4, 4);
    for k in 0..4 {
        b[(k, k)] = C64::new(1.0, 0.0);
    }
    assert!(b1_pattern_residual(&b) > 1.0);
    assert!(b1_pattern_residual(&CMat::zeros(4, 4)) == 0.0);
}

#[test]
fn surface_stays_accurate_near_the_frame_blowup_circle() {
    // The triangular factor degenerates on the circle where the leading
    // pivot of the middle term vanishes, but the surface extends smoothly
    // across it: just inside, the pipeline still matches the closed form;
    // essentially on it, the factorization reports the pivot failure
    // instead of emitting garbage.
    use isowill_core::golden::{blowup_radius, closed_form_sphere_case};
    use isowill_core::surface::chordal_distance;
    let p = pipeline_for(&SPHERE_CASE, Mode::Exact).unwrap();
    let rc = blowup_radius();
    let lam = C64::new(1.0, 0.0);
    // Rounding amplification grows like the inverse square of the pivot,
    // hence the widening tolerance on approach.
    for (dr, tol) in [(5e-2, 1e-11), (1e-2, 1e-9)] {
        let z = C64::from_polar(rc - dr, 0.8);
        let s = &p.samples(z, lam, BranchPolicy::Primal).unwrap()[0];
        let want = closed_form_sphere_case(z, lam);
        let d = chordal_distance(&s.x, &want);
        assert!(d < tol, "distance {d:e} at dr = {dr:e}");
    }
    // Inside the band where the factor can no longer be certified at the
    // stated tolerance, the point is reported, not silently computed.
    for dr in [1e-3, 0.0] {
        let z = C64::from_polar(rc - dr, 0.8);
        assert!(matches!(
            p.samples(z, lam, BranchPolicy::Primal),
            Err(isowill_core::CoreError::OutsideBigCell { .. })
        ));
    }
}

#[test]
fn big_cell_margin_reports_poles_separately() {
    // A pole of the potential is its own failure mode, not a vanishing
    // margin.
    use isowill_core::potential::{integrate_potential, PotentialSpec};
    let one_minus_z_sq = UPoly::from_coeffs(vec![
        GRat::from_int(1),
        GRat::from_int(-2),
        GRat::from_int(1),
    ]);
    let h31 = RationalFn::new(UPoly::constant(GRat::from_int(1)), one_minus_z_sq);
    let h41 = RationalFn::from_poly(UPoly::constant(GRat::i())).mul(&h31);
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
    let fcheck = isowill_core::potential::b1_to_fcheck(&spec);
    let fc = integrate_potential(&fcheck, &GRat::zero()).unwrap();
    let near_pole = C64::new(1.0, 1e-8);
    assert!(matches!(
        isowill_core::iwasawa::big_cell_margin(&fc, near_pole),
        Err(isowill_core::CoreError::PoleOfPotential { .. })
    ));
    // Away from the pole the margin is finite and at least one.
    let margin = isowill_core::iwasawa::big_cell_margin(&fc, C64::new(0.3, 0.1)).unwrap();
    assert!(margin >= 1.0);
}

#[test]
fn holomorphic_frame_integration_diverges_loudly() {
    use isowill_core::potential::integrate_holomorphic_frame;
    // Exponential blow-up along the ray trips the divergence guard.
    let d0 = |_: C64| {
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = C64::new(80.0, 0.0);
        m[(1, 1)] = C64::new(80.0, 0.0);
        m
    };
    let err = integrate_holomorphic_frame(&d0, C64::new(1.0, 0.0));
    assert!(matches!(
        err,
        Err(isowill_core::CoreError::IntegrationDivergence(_))
    ));
}
