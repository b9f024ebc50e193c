use cavity_core::bogoliubov::{linear_coefficients, Coefficients, LinearCoefficients, Method};
use cavity_core::modes::{BoundaryCondition, CavityConfig, SolverOptions};
use cavity_core::numerics::CMatrix;
use cavity_core::trajectory::*;
use proptest::prelude::*;

const FAMILIES: [BoundaryCondition; 3] = [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::DiracMit];

fn base(bc: BoundaryCondition, m: f64) -> CavityConfig {
    CavityConfig::new(bc, 1.0, m, 0.0).unwrap()
}

fn segments(pairs: &[(f64, f64)]) -> AccelerationProfile {
    AccelerationProfile::from_dimensionless_segments(pairs, 1.0)
}

fn beta(r: &EvolutionResult) -> &CMatrix {
    match r.coefficients() {
        Coefficients::Bosonic { beta, .. } => beta,
        _ => panic!("bosonic expected"),
    }
}

fn composition_gap(c: &CavityConfig, p: &AccelerationProfile, ingredients: Method) -> f64 {
    let opts = SolverOptions::default();
    let a = evolve_segments(c, p, 6, ingredients, &opts).unwrap();
    let b = evolve_fourier(c, p, 6, &opts).unwrap();
    max_entry_difference(a.coefficients(), b.coefficients())
}

fn scaled(pairs: &[(f64, f64)], s: f64) -> AccelerationProfile {
    segments(&pairs.iter().map(|&(d, h)| (d, h * s)).collect::<Vec<_>>())
}

#[test]
fn zero_profile_is_free_evolution() {
    let opts = SolverOptions::default();
    for bc in FAMILIES {
        let c = base(bc, 1.0);
        let seg = segments(&[(0.8, 0.0), (1.7, 0.0)]);
        let smp = AccelerationProfile::sample(|_| 0.0, 0.0, 2.5, 50);
        for r in [
            evolve_fourier(&c, &seg, 6, &opts).unwrap(),
            evolve_fourier(&c, &smp, 6, &opts).unwrap(),
            evolve_segments(&c, &seg, 6, Method::Quadrature, &opts).unwrap(),
            evolve_segments(&c, &seg, 6, Method::PerturbativeLinear, &opts).unwrap(),
        ] {
            if let Coefficients::Bosonic { beta, .. } = r.coefficients() {
                assert!(beta.as_slice().iter().all(|z| z.re == 0.0 && z.im == 0.0));
            }
            assert!(r.deviation_from_free() < 1e-14, "{bc:?} {:?}", r.method);
            assert_eq!(r.duration, 2.5);
            assert!(r.check_identities().within_budget);
        }
    }
}

#[test]
fn empty_duration_is_identity() {
    for bc in FAMILIES {
        let r = evolve_segments(&base(bc, 1.0), &segments(&[(0.0, 0.3)]), 4, Method::Quadrature, &SolverOptions::default()).unwrap();
        let id = match r.coefficients() {
            Coefficients::Bosonic { .. } => Coefficients::Bosonic { alpha: CMatrix::identity(4), beta: CMatrix::zeros(4, 4) },
            Coefficients::Fermionic { .. } => Coefficients::Fermionic { a: CMatrix::identity(4) },
        };
        assert_eq!(max_entry_difference(r.coefficients(), &id), 0.0);
    }
}

#[test]
fn top_hat_matches_analytic_integral() {
    let (h, t) = (0.03, 1.7);
    let c = base(BoundaryCondition::Dirichlet, 1.0);
    let data = linear_coefficients(&c, 6).unwrap();
    let LinearCoefficients::Bosonic { beta_hat, .. } = &data.coefficients else { panic!() };
    let w = &data.row_frequencies;
    let opts = SolverOptions::default();
    let exact = evolve_fourier(&c, &segments(&[(t, h)]), 6, &opts).unwrap();
    let sampled = evolve_fourier(&c, &AccelerationProfile::sample(|_| h, 0.0, t, 9), 6, &opts).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let expected = beta_hat[(i, j)].norm() * h * (2.0 * ((w[i] + w[j]) * t / 2.0).sin()).abs();
            assert!((beta(&exact)[(i, j)].norm() - expected).abs() < 1e-15);
            assert!((beta(&sampled)[(i, j)].norm() - expected).abs() < 1e-11);
        }
    }
}

#[test]
fn resonant_drive_grows_linearly() {
    let c = base(BoundaryCondition::Dirichlet, 1.0);
    let w = linear_coefficients(&c, 2).unwrap().row_frequencies;
    let drive = w[0] + w[1];
    let period = 2.0 * std::f64::consts::PI / drive;
    let amp = |cycles: usize| {
        let t = cycles as f64 * period;
        let p = AccelerationProfile::sample(|tau| 0.05 * (drive * tau).sin(), 0.0, t, 64 * cycles + 1);
        beta(&evolve_fourier(&c, &p, 2, &SolverOptions::default()).unwrap())[(0, 1)].norm()
    };
    let (a5, a10, a20) = (amp(5), amp(10), amp(20));
    assert!((a10 / a5 - 2.0).abs() < 1e-3, "{a5} {a10}");
    assert!((a20 / a10 - 2.0).abs() < 1e-3, "{a10} {a20}");
}

#[test]
fn single_segment_agrees_with_fourier_to_second_order() {
    for bc in FAMILIES {
        for m in [0.1, 1.0, 10.0] {
            let c = base(bc, m);
            for ingredients in [Method::Quadrature, Method::PerturbativeLinear] {
                let d1 = composition_gap(&c, &segments(&[(1.3, 0.02)]), ingredients);
                let d2 = composition_gap(&c, &segments(&[(1.3, 0.01)]), ingredients);
                assert!((d1 / d2 - 4.0).abs() < 0.2, "{bc:?} M={m} {ingredients:?}: {d1} {d2}");
            }
        }
    }
}

#[test]
fn mirror_segments_follow_the_two_step_fourier_sum() {
    let c = base(BoundaryCondition::Neumann, 1.0);
    let opts = SolverOptions::default();
    let gap = |h: f64| {
        let p = segments(&[(0.9, h), (0.9, -h)]);
        let a = evolve_segments(&c, &p, 6, Method::Quadrature, &opts).unwrap();
        let b = evolve_fourier(&c, &p, 6, &opts).unwrap();
        let (ba, bb) = (beta(&a), beta(&b));
        let mut worst: f64 = 0.0;
        for (x, y) in ba.as_slice().iter().zip(bb.as_slice()) {
            worst = worst.max((x.norm() - y.norm()).abs());
        }
        (worst, bb.max_abs())
    };
    let (g1, size) = gap(0.02);
    let (g2, _) = gap(0.01);
    assert!(size > 1e-3);
    assert!((g1 / g2 - 4.0).abs() < 0.4, "{g1} {g2}");
}

#[test]
fn reversed_run_undoes_profile_to_second_order() {
    let pairs = [(0.7, 0.05), (0.4, -0.03), (1.1, 0.0), (0.5, 0.02)];
    let opts = SolverOptions::default();
    for bc in FAMILIES {
        let c = base(bc, 1.0);
        let dev = |s: f64| {
            let p = scaled(&pairs, s);
            let f = evolve_segments(&c, &p, 6, Method::Quadrature, &opts).unwrap();
            let r = evolve_segments_reversed(&c, &p, 6, Method::Quadrature, &opts).unwrap();
            let t = f.then(&r).unwrap();
            assert_eq!(t.duration, 0.0);
            assert!(t.check_identities().within_budget);
            t.deviation_from_free()
        };
        let (d1, d2) = (dev(1.0), dev(0.5));
        assert!((d1 / d2 - 4.0).abs() < 0.4, "{bc:?} {d1} {d2}");
    }
}

#[test]
fn evolution_identities_within_budget() {
    let opts = SolverOptions::default();
    let p = segments(&[(0.5, 0.2), (0.3, 0.0), (0.6, -0.4)]);
    let smooth = AccelerationProfile::sample(|t| 0.3 * (-(t - 2.0) * (t - 2.0)).exp(), 0.0, 4.0, 200);
    for bc in FAMILIES {
        let c = base(bc, 2.0);
        for r in [
            evolve_segments(&c, &p, 8, Method::Quadrature, &opts).unwrap(),
            evolve_segments(&c, &p, 8, Method::PerturbativeLinear, &opts).unwrap(),
            evolve_fourier(&c, &p, 8, &opts).unwrap(),
            evolve_fourier(&c, &smooth, 8, &opts).unwrap(),
        ] {
            let rep = r.check_identities();
            assert!(rep.within_budget, "{bc:?} {:?} {rep:?}", r.method);
        }
    }
}

#[test]
fn profile_validation() {
    let c = base(BoundaryCondition::Dirichlet, 1.0);
    let opts = SolverOptions::default();
    assert!(evolve_fourier(&c, &segments(&[(1.0, 2.0)]), 4, &opts).is_err());
    assert!(evolve_segments(&c, &segments(&[(1.0, -2.5)]), 4, Method::Quadrature, &opts).is_err());
    assert!(evolve_segments(&c, &segments(&[(-1.0, 0.1)]), 4, Method::Quadrature, &opts).is_err());
    assert!(evolve_fourier(&c, &segments(&[]), 4, &opts).is_err());
    let bad = AccelerationProfile::from_dimensionless_samples(&[0.0, 1.0, 0.5], &[0.0, 0.1, 0.0], 1.0);
    assert!(evolve_fourier(&c, &bad, 4, &opts).is_err());
    let ragged = AccelerationProfile::from_dimensionless_samples(&[0.0, 1.0], &[0.0], 1.0);
    assert!(evolve_fourier(&c, &ragged, 4, &opts).is_err());
    let smooth = AccelerationProfile::sample(|t| t, 0.0, 1.0, 5);
    assert!(evolve_segments(&c, &smooth, 4, Method::Quadrature, &opts).is_err());
}

#[test]
fn units_follow_cavity_length() {
    let opts = SolverOptions::default();
    let unit = evolve_fourier(&base(BoundaryCondition::Dirichlet, 1.0), &segments(&[(1.2, 0.04)]), 4, &opts).unwrap();
    let c3 = CavityConfig::new(BoundaryCondition::Dirichlet, 3.0, 1.0 / 3.0, 0.0).unwrap();
    let p3 = AccelerationProfile::from_dimensionless_segments(&[(1.2, 0.04)], 3.0);
    let long = evolve_fourier(&c3, &p3, 4, &opts).unwrap();
    assert!(max_entry_difference(unit.coefficients(), long.coefficients()) < 1e-13);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn random_profiles_compose_like_fourier(
        pairs in prop::collection::vec((0.1f64..1.5, -0.05f64..0.05), 1..=4),
        family in 0usize..3,
    ) {
        let c = base(FAMILIES[family], 1.0);
        let d1 = composition_gap(&c, &scaled(&pairs, 1.0), Method::Quadrature);
        let d2 = composition_gap(&c, &scaled(&pairs, 0.5), Method::Quadrature);
        let variation = scaled(&pairs, 1.0).variation(1.0);
        prop_assert!(d1 <= 8.0 * variation * variation + 1e-12, "{} vs variation {}", d1, variation);
        if d1 > 1e-9 {
            prop_assert!((d1 / d2 - 4.0).abs() < 0.5, "{} {}", d1, d2);
        }
    }

    #[test]
    fn fourier_is_linear_in_amplitude(scale in 0.1f64..1.0, family in 0usize..3) {
        let c = base(FAMILIES[family], 1.5);
        let opts = SolverOptions::default();
        let p1 = AccelerationProfile::sample(|t| 0.1 * (3.0 * t).sin(), 0.0, 2.0, 80);
        let p2 = AccelerationProfile::sample(|t| 0.1 * scale * (3.0 * t).sin(), 0.0, 2.0, 80);
        let r1 = evolve_fourier(&c, &p1, 4, &opts).unwrap();
        let r2 = evolve_fourier(&c, &p2, 4, &opts).unwrap();
        let free = r1.free_phases();
        let lin = |r: &EvolutionResult| max_entry_difference(r.coefficients(), &free);
        prop_assert!((lin(&r2) - scale * lin(&r1)).abs() < 1e-11);
    }
}
