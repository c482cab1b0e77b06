use num_complex::Complex64 as C;
use proptest::prelude::*;
use std::f64::consts::PI;

use entangle_core::frames::{Atom, Family};
use entangle_core::spectral::{
    fourier_residue, kossakowski, rates_for, Component, DipoleConfig, Source, SpectralTensor,
};
use entangle_core::wightman::Axis;
use entangle_core::Error;

const ONE: Atom = Atom::One;
const TWO: Atom = Atom::Two;

fn same_atom_vacuum(w: f64) -> f64 {
    w.powi(3) / (3.0 * PI)
}

/// Cross-to-self spectral ratio for static dipoles parallel to the
/// separation, 3(sin x − x cos x)/x³.
fn parallel_ratio(x: f64) -> f64 {
    3.0 * (x.sin() - x * x.cos()) / x.powi(3)
}

/// Same for dipoles perpendicular to the separation,
/// (3/2)[(1/x − 1/x³) sin x + cos x / x²].
fn perpendicular_ratio(x: f64) -> f64 {
    1.5 * ((1.0 / x - 1.0 / x.powi(3)) * x.sin() + x.cos() / (x * x))
}

fn cold(l: f64) -> Source {
    Source::Thermal {
        t: 0.01,
        l,
        images: 200,
    }
}

#[test]
fn cold_static_pair_reproduces_dipole_interference() {
    for l in [0.3, 1.0, 2.5, 7.0] {
        let s = cold(l);
        let self_zz = fourier_residue(&Component::new(s, ONE, ONE, Axis::Z, Axis::Z), 1.0).unwrap();
        assert!((self_zz.re - same_atom_vacuum(1.0)).abs() < 1e-10);
        for (ax, want) in [
            (Axis::Z, parallel_ratio(l)),
            (Axis::Rho, perpendicular_ratio(l)),
            (Axis::Phi, perpendicular_ratio(l)),
        ] {
            let g = fourier_residue(&Component::new(s, ONE, TWO, ax, ax), 1.0).unwrap();
            assert!(
                (g.re / self_zz.re - want).abs() < 1e-8,
                "L={l} {ax:?}: {} vs {want}",
                g.re / self_zz.re
            );
            assert!(g.im.abs() < 1e-10);
        }
    }
}

#[test]
fn slow_uniform_pair_approaches_static_interference() {
    let l = 1.3;
    let s = Source::Uniform { a: 0.01, l };
    let self_zz = fourier_residue(&Component::new(s, ONE, ONE, Axis::Z, Axis::Z), 1.0).unwrap().re;
    for (ax, want) in [
        (Axis::Z, parallel_ratio(l)),
        (Axis::Rho, perpendicular_ratio(l)),
        (Axis::Phi, perpendicular_ratio(l)),
    ] {
        let g = fourier_residue(&Component::new(s, ONE, TWO, ax, ax), 1.0).unwrap().re;
        assert!((g / self_zz - want).abs() < 1e-3, "{ax:?}: {} vs {want}", g / self_zz);
    }
}

#[test]
fn thermal_spectrum_is_planckian() {
    for t in [0.05, 0.1, 0.3, 1.0] {
        let s = Source::Thermal { t, l: 1.0, images: 200 };
        let c = Component::new(s, ONE, ONE, Axis::Rho, Axis::Rho);
        let n = 1.0 / ((1.0 / t).exp() - 1.0);
        let up = fourier_residue(&c, 1.0).unwrap().re;
        let down = fourier_residue(&c, -1.0).unwrap().re;
        assert!((up / same_atom_vacuum(1.0) - (1.0 + n)).abs() < 1e-6, "T={t}");
        assert!((down / same_atom_vacuum(1.0) - n).abs() < 1e-6, "T={t}");
    }
}

#[test]
fn uniform_acceleration_is_isotropic_and_planckian() {
    for a in [0.25, 0.5, 1.0, 2.0] {
        let s = Source::Uniform { a, l: 1.0 };
        let want = (1.0 + a * a) / (1.0 - (-2.0 * PI / a).exp());
        for ax in Axis::ALL {
            let g = fourier_residue(&Component::new(s, ONE, ONE, ax, ax), 1.0).unwrap();
            assert!((g.re / same_atom_vacuum(1.0) - want).abs() < 1e-6, "a={a} {ax:?}");
        }
    }
}

#[test]
fn vanishing_acceleration_leaves_only_spontaneous_decay() {
    for fam in Family::ALL {
        let r = rates_for(Source::for_family(fam, 0.05, 1e3), &DipoleConfig::axes(Axis::Z, Axis::Z))
            .unwrap();
        assert!(((r.a1 - r.b1) / r.a1).abs() < 1e-6, "{fam:?} {r:?}");
        assert!(r.a3.abs() < 1e-2 * r.a1, "{fam:?} {r:?}");
    }
}

#[test]
fn spectral_tensor_has_both_signs() {
    let t = SpectralTensor::compute(Source::Circular { a: 1.0, l: 1.0 }, 1.0).unwrap();
    let up = t.get(ONE, ONE, Axis::Z, Axis::Z, true);
    let down = t.get(ONE, ONE, Axis::Z, Axis::Z, false);
    assert!(up.re > down.re && down.re > 0.0);
}

#[test]
fn unit_norm_required_for_dipoles() {
    assert!(DipoleConfig::real([1.0, 1.0, 0.0], [0.0, 0.0, 1.0]).is_err());
    let s = 0.5f64.sqrt();
    assert!(DipoleConfig::real([s, s, 0.0], [0.0, 0.0, 1.0]).is_ok());
}

#[test]
fn circular_mixed_z_phi_cross_rates_are_rejected() {
    let e = rates_for(Source::Circular { a: 1.0, l: 1.0 }, &DipoleConfig::axes(Axis::Phi, Axis::Z))
        .unwrap_err();
    assert!(matches!(e, Error::ComplexCrossRates { .. }));
    assert!(e.is_config());
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn same_atom_spectra_are_non_negative(
        a in 0.2f64..3.0,
        fam in prop::sample::select(Family::ALL.to_vec()),
        ax in prop::sample::select(Axis::ALL.to_vec()),
        w in prop::sample::select(vec![1.0, -1.0]),
    ) {
        let c = Component::new(Source::for_family(fam, a, 1.0), ONE, ONE, ax, ax);
        let g = fourier_residue(&c, w).unwrap();
        prop_assert!(g.re >= -1e-12);
        prop_assert!(g.im.abs() < 1e-9 * g.re.abs().max(1.0));
    }

    #[test]
    fn kossakowski_matrix_is_positive_for_static_and_uniform(
        a in 0.2f64..3.0,
        l in 0.2f64..3.0,
        uniform in any::<bool>(),
        d1 in prop::array::uniform3(-1.0f64..1.0),
        d2 in prop::array::uniform3(-1.0f64..1.0),
    ) {
        prop_assume!(d1.iter().map(|x| x * x).sum::<f64>() > 0.05);
        prop_assume!(d2.iter().map(|x| x * x).sum::<f64>() > 0.05);
        let fam = if uniform { Family::Uniform } else { Family::Thermal };
        let dip = DipoleConfig::real(unit(d1), unit(d2)).unwrap();
        let r = rates_for(Source::for_family(fam, a, l), &dip).unwrap();
        let k = kossakowski(&r);
        prop_assert!(k.hermiticity_defect() == 0.0);
        prop_assert!(k.min_eigenvalue() >= -1e-10, "{}", k.min_eigenvalue());
    }

    #[test]
    fn exchange_symmetric_for_equal_dipoles(
        a in 0.2f64..3.0,
        l in 0.2f64..3.0,
        fam in prop::sample::select(Family::ALL.to_vec()),
        ax in prop::sample::select(Axis::ALL.to_vec()),
    ) {
        let r = rates_for(Source::for_family(fam, a, l), &DipoleConfig::axes(ax, ax)).unwrap();
        prop_assert!(r.is_exchange_symmetric(1e-12));
        prop_assert!(r.a1 >= r.b1.abs() - 1e-10);
    }
}

#[test]
fn complex_lag_evaluation_is_finite_off_axis() {
    let c = Component::new(Source::Uniform { a: 1.0, l: 1.0 }, ONE, TWO, Axis::Rho, Axis::Z);
    let v = c.eval(C::new(0.7, -0.3));
    assert!(v.re.is_finite() && v.im.is_finite());
}
