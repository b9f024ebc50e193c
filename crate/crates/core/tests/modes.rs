use cavity_core::modes::{
    bessel_eigencondition, maxwell_reduction, rindler_root_count, spectrum, BoundaryCondition, CavityConfig, Family, FieldValue, Frame,
    ModeSet, Polarisation, RindlerBackend, SolverOptions,
};
use cavity_core::numerics::quad::{integrate, QuadOptions};
use cavity_core::Complex64;
use std::f64::consts::PI;

fn opts(backend: RindlerBackend) -> SolverOptions {
    SolverOptions { backend, ..SolverOptions::default() }
}

fn cfg(bc: BoundaryCondition, m: f64, h: f64) -> CavityConfig {
    CavityConfig::new(bc, 1.0, m, h).unwrap()
}

#[test]
fn massless_dirichlet_rindler_frequencies_are_exact() {
    for &h in &[0.3, -0.7, 1.5] {
        let c = cfg(BoundaryCondition::Dirichlet, 0.0, h);
        let s = spectrum(&c, Frame::Rindler, 5, &opts(RindlerBackend::Ode)).unwrap();
        let span = (c.chi1() / c.chi0()).ln();
        for e in &s.entries {
            let exact = e.label as f64 * PI / span;
            assert!((e.frequency - exact).abs() < 1e-11 * exact, "h={h} n={} {} vs {exact}", e.label, e.frequency);
        }
    }
}

#[test]
fn minkowski_dirac_first_root() {
    let c = cfg(BoundaryCondition::DiracMit, 1.0, 0.0);
    let s = spectrum(&c, Frame::Minkowski, 4, &SolverOptions::default()).unwrap();
    let zero = s.entries.iter().find(|e| e.label == 0).unwrap();
    assert!((zero.frequency - (1.0f64 + 2.028_757_838_110_434f64.powi(2)).sqrt()).abs() < 1e-12);
    let m1 = s.entries.iter().find(|e| e.label == -1).unwrap();
    assert!((m1.frequency + zero.frequency).abs() < 1e-12);
}

#[test]
fn bessel_and_ode_backends_agree() {
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::DiracMit] {
        for &h in &[0.5, -0.5] {
            let c = cfg(bc, 1.0, h);
            let a = spectrum(&c, Frame::Rindler, 4, &opts(RindlerBackend::Ode)).unwrap();
            let b = spectrum(&c, Frame::Rindler, 4, &opts(RindlerBackend::Bessel)).unwrap();
            for (x, y) in a.entries.iter().zip(&b.entries) {
                assert_eq!(x.label, y.label);
                assert!((x.frequency - y.frequency).abs() < 1e-9 * x.frequency.abs(), "{bc:?} {x:?} {y:?}");
            }
            let (za, zb) = a.wall_positions();
            for e in &a.entries {
                for k in 1..8 {
                    let z = za + (zb - za) * k as f64 / 8.0;
                    let u = a.evaluate(e.label, 0.0, z).unwrap();
                    let v = b.evaluate(e.label, 0.0, z).unwrap();
                    let d = match (u, v) {
                        (FieldValue::Scalar(p), FieldValue::Scalar(q)) => (p - q).norm(),
                        (FieldValue::Spinor(p), FieldValue::Spinor(q)) => (p[0] - q[0]).norm() + (p[1] - q[1]).norm(),
                        _ => unreachable!(),
                    };
                    assert!(d < 1e-8, "{bc:?} h={h} label {} z={z}: {d}", e.label);
                }
            }
        }
    }
}

#[test]
fn dirac_rindler_spectrum_is_symmetric() {
    let c = cfg(BoundaryCondition::DiracMit, 1.0, 0.5);
    let s = spectrum(&c, Frame::Rindler, 3, &opts(RindlerBackend::Ode)).unwrap();
    let (x0, x1) = (c.chi0(), c.chi1());
    for e in &s.entries {
        let r = bessel_eigencondition(Family::Dirac, -e.frequency, x0, x1, 1e-12).unwrap();
        assert!(r.abs() < 1e-9, "{r}");
        let partner = s.entries.iter().find(|f| f.label == -e.label - 1).unwrap();
        assert!((partner.frequency + e.frequency).abs() < 1e-9 * e.frequency.abs());
    }
}

#[test]
fn leftward_spectrum_matches_rightward() {
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::DiracMit] {
        let r = spectrum(&cfg(bc, 2.0, 0.4), Frame::Rindler, 4, &opts(RindlerBackend::Ode)).unwrap();
        let l = spectrum(&cfg(bc, 2.0, -0.4), Frame::Rindler, 4, &opts(RindlerBackend::Ode)).unwrap();
        for (a, b) in r.entries.iter().zip(&l.entries) {
            assert!((a.frequency - b.frequency).abs() < 1e-10 * a.frequency.abs());
        }
    }
}

fn gram_error(s: &cavity_core::modes::ModeSpectrum) -> f64 {
    let (za, zb) = s.wall_positions();
    let q = QuadOptions::with_tol(1e-12);
    let n = s.entries.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (s.entries[i], s.entries[j]);
            let val = integrate(
                |z| match (s.evaluate(ei.label, 0.0, z).unwrap(), s.evaluate(ej.label, 0.0, z).unwrap()) {
                    (FieldValue::Scalar(a), FieldValue::Scalar(b)) => {
                        let weight = match s.frame {
                            Frame::Minkowski => ei.frequency + ej.frequency,
                            Frame::Rindler => (ei.frequency + ej.frequency) / z.abs(),
                        };
                        weight * (a.conj() * b).re
                    }
                    (FieldValue::Spinor(a), FieldValue::Spinor(b)) => (a[0].conj() * b[0] + a[1].conj() * b[1]).re,
                    _ => unreachable!(),
                },
                za,
                zb,
                &q,
            )
            .unwrap()
            .value;
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((val - expect).abs());
        }
    }
    worst
}

#[test]
fn modes_are_orthonormal() {
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann, BoundaryCondition::DiracMit] {
        for frame in [Frame::Minkowski, Frame::Rindler] {
            let s = spectrum(&cfg(bc, 1.5, -0.3), frame, 4, &SolverOptions::default()).unwrap();
            let e = gram_error(&s);
            assert!(e < 1e-9, "{bc:?} {frame:?}: {e}");
        }
    }
}

#[test]
fn wall_conditions_hold() {
    for &h in &[0.3, -0.3] {
        let d = spectrum(&cfg(BoundaryCondition::Dirichlet, 1.0, h), Frame::Rindler, 4, &SolverOptions::default()).unwrap();
        let (za, zb) = d.wall_positions();
        for e in &d.entries {
            for z in [za, zb] {
                if let FieldValue::Scalar(v) = d.evaluate(e.label, 0.0, z).unwrap() {
                    assert!(v.norm() < 1e-8);
                }
            }
            // slope convention at the reference wall
            let FieldValue::Scalar(v) = d.evaluate(e.label, 0.0, za + 1e-4).unwrap() else { unreachable!() };
            assert!(v.re > 0.0);
        }
        let f = spectrum(&cfg(BoundaryCondition::DiracMit, 1.0, h), Frame::Rindler, 3, &SolverOptions::default()).unwrap();
        let (za, zb) = f.wall_positions();
        for e in &f.entries {
            let FieldValue::Spinor([a, b]) = f.evaluate(e.label, 0.0, za).unwrap() else { unreachable!() };
            assert!((b - Complex64::i() * a).norm() < 1e-8 && a.im.abs() < 1e-12 && a.re > 0.0);
            let FieldValue::Spinor([a, b]) = f.evaluate(e.label, 0.0, zb).unwrap() else { unreachable!() };
            assert!((b + Complex64::i() * a).norm() < 1e-8);
        }
    }
}

#[test]
fn root_count_matches_inertial_prediction() {
    for bc in [BoundaryCondition::Dirichlet, BoundaryCondition::Neumann] {
        for &h in &[0.05, 0.2, -0.1] {
            let c = cfg(bc, 3.0, h);
            let s = spectrum(&c, Frame::Rindler, 8, &SolverOptions::default()).unwrap();
            // halfway between the 6th and 7th accelerated root
            let cut = 0.5 * (s.entries[5].frequency + s.entries[6].frequency);
            assert_eq!(rindler_root_count(&c, cut).unwrap(), 6);
            let inertial = spectrum(&c, Frame::Minkowski, 12, &SolverOptions::default()).unwrap();
            let predicted = inertial.entries.iter().filter(|e| e.frequency < cut * h.abs()).count();
            assert_eq!(predicted, 6, "{bc:?} h={h}");
        }
    }
}

#[test]
fn maxwell_sectors_reduce_to_scalars() {
    let c = maxwell_reduction(1.0, 2.0, 1.0, 1, 1, Polarisation::II).unwrap();
    assert_eq!(c.bc, BoundaryCondition::MaxwellPolII);
    assert!((c.mass - PI * (1.0f64 + 0.25).sqrt()).abs() < 1e-14);
    assert!(maxwell_reduction(1.0, 1.0, 1.0, 0, 3, Polarisation::II).is_err());
    assert!(maxwell_reduction(1.0, 1.0, 1.0, 0, 0, Polarisation::I).is_err());
    let c1 = maxwell_reduction(1.0, 1.0, 1.0, 1, 0, Polarisation::I).unwrap();
    assert!((c1.mass - PI).abs() < 1e-15 && c1.bc == BoundaryCondition::MaxwellPolI);
    let acc = c.with_h(0.2).unwrap();
    let s = spectrum(&acc, Frame::Rindler, 3, &SolverOptions::default()).unwrap();
    let n = spectrum(&cfg(BoundaryCondition::Neumann, c.mass, 0.2), Frame::Rindler, 3, &SolverOptions::default()).unwrap();
    for (a, b) in s.entries.iter().zip(&n.entries) {
        assert!((a.frequency - b.frequency).abs() < 1e-12 * a.frequency);
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    assert!(CavityConfig::new(BoundaryCondition::Dirichlet, 1.0, 1.0, 2.0).is_err());
    assert!(CavityConfig::new(BoundaryCondition::Neumann, 1.0, 0.0, 0.1).is_err());
    assert!(CavityConfig::new(BoundaryCondition::DiracMit, 1.0, 1e-7, 0.1).is_err());
    let c = cfg(BoundaryCondition::Dirichlet, 1.0, 0.0);
    assert!(spectrum(&c, Frame::Rindler, 2, &SolverOptions::default()).is_err());
}

#[test]
fn auto_backend_falls_back_outside_series_range() {
    let c = cfg(BoundaryCondition::Dirichlet, 10.0, 0.02);
    let s = spectrum(&c, Frame::Rindler, 3, &SolverOptions::default()).unwrap();
    assert_eq!(s.backend, Some(RindlerBackend::Ode));
    assert!(matches!(s.modes, ModeSet::Rindler(_)));
    let c = cfg(BoundaryCondition::Dirichlet, 1.0, 0.5);
    let s = spectrum(&c, Frame::Rindler, 3, &SolverOptions::default()).unwrap();
    assert_eq!(s.backend, Some(RindlerBackend::Bessel));
}
