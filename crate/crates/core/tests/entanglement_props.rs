use num_complex::Complex64 as C;
use proptest::prelude::*;

use entangle_core::entanglement::{
    concurrence_series, concurrence_wootters, concurrence_x, detect_events, detect_events_series,
    DEFAULT_THRESHOLD,
};
use entangle_core::lindblad::{evolve, initial_state, InitialState, IntegratorControls, XState};
use entangle_core::spectral::RateCoefficients;

/// Concurrence of an X state read off in the product basis:
/// 2·max(0, |ρ₂₃| − √(ρ₁₁ρ₄₄), |ρ₁₄| − √(ρ₂₂ρ₃₃)).
fn product_basis_formula(x: &XState) -> f64 {
    let m = x.to_product_matrix();
    let k1 = m[(1, 2)].norm() - (m[(0, 0)].re * m[(3, 3)].re).max(0.0).sqrt();
    let k2 = m[(0, 3)].norm() - (m[(1, 1)].re * m[(2, 2)].re).max(0.0).sqrt();
    (2.0 * k1.max(k2)).max(0.0)
}

/// Valid X states: positive 2×2 blocks {GG, EE; GE} and {AA, SS; AS}.
fn x_state() -> impl Strategy<Value = XState> {
    (
        prop::array::uniform4(0.01f64..1.0),
        0.0f64..0.99,
        0.0f64..std::f64::consts::TAU,
        0.0f64..0.99,
        0.0f64..std::f64::consts::TAU,
    )
        .prop_map(|(p, r1, t1, r2, t2)| {
            let s: f64 = p.iter().sum();
            let p = p.map(|x| x / s);
            let ge = C::from_polar(r1 * (p[0] * p[1]).sqrt(), t1);
            let as_ = C::from_polar(r2 * (p[2] * p[3]).sqrt(), t2);
            XState {
                rho_gg: p[0],
                rho_ee: p[1],
                rho_aa: p[2],
                rho_ss: p[3],
                rho_as: as_,
                rho_sa: as_.conj(),
                rho_ge: ge,
                rho_eg: ge.conj(),
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_product_basis_formula(x in x_state()) {
        let c = concurrence_x(&x).unwrap();
        prop_assert!((c - product_basis_formula(&x)).abs() < 1e-12);
    }

    #[test]
    fn matches_wootters(x in x_state()) {
        let c = concurrence_x(&x).unwrap();
        let w = concurrence_wootters(&x.to_product_matrix()).unwrap();
        prop_assert!((c - w).abs() < 1e-10, "{} vs {}", c, w);
    }

    #[test]
    fn bounded(x in x_state()) {
        let c = concurrence_x(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn psi_weight_gap(p in 0.001f64..0.999) {
        let c = concurrence_x(&initial_state(InitialState::Psi(p)).unwrap()).unwrap();
        prop_assert!((c - (1.0 - 2.0 * p).abs()).abs() < 1e-12);
    }

    #[test]
    fn revival_intervals_are_ordered_and_disjoint(v in prop::collection::vec(-0.2f64..0.3, 5..80)) {
        let taus: Vec<f64> = (0..v.len()).map(|k| k as f64 * 0.1).collect();
        let c: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
        let ev = detect_events_series(&taus, &c, DEFAULT_THRESHOLD);
        for w in ev.revivals.windows(2) {
            prop_assert!(w[0].1 <= w[1].0);
        }
        for r in &ev.revivals {
            prop_assert!(r.0 <= r.1);
            prop_assert!(ev.death.unwrap() <= r.0);
        }
        prop_assert!((0.0..=1.0).contains(&ev.max_concurrence));
    }
}

#[test]
fn unit_concurrence_only_for_pure_states() {
    let mixed = XState {
        rho_aa: 0.9,
        rho_gg: 0.1,
        ..Default::default()
    };
    assert!(concurrence_x(&mixed).unwrap() < 1.0);
    let pure = initial_state(InitialState::A).unwrap();
    assert_eq!(concurrence_x(&pure).unwrap(), 1.0);
}

#[test]
fn product_excited_ground_is_separable() {
    // |10⟩ = (|S⟩ + |A⟩)/√2 gives ρ_AA = ρ_SS = ρ_AS = ½
    let x = XState {
        rho_aa: 0.5,
        rho_ss: 0.5,
        rho_as: C::new(0.5, 0.0),
        rho_sa: C::new(0.5, 0.0),
        ..Default::default()
    };
    assert!(concurrence_x(&x).unwrap().abs() < 1e-15);
    assert!(concurrence_wootters(&x.to_product_matrix()).unwrap() < 1e-7);
}

#[test]
fn wootters_rejects_non_positive_input() {
    let x = XState {
        rho_gg: 1.5,
        rho_ee: -0.5,
        ..Default::default()
    };
    assert!(concurrence_wootters(&x.to_product_matrix()).is_err());
}

#[test]
fn sudden_death_then_revival_series() {
    let taus: Vec<f64> = (0..7).map(|k| k as f64).collect();
    let ev = detect_events_series(&taus, &[0.5, 0.2, 0.0, 0.1, 0.0, 0.0, 0.0], DEFAULT_THRESHOLD);
    assert!((ev.death.unwrap() - 1.0 - 0.2 / 0.2).abs() < 1e-4);
    assert_eq!(ev.revivals.len(), 1);
    assert!(ev.birth.is_none());
}

#[test]
fn concurrence_is_continuous_along_trajectories() {
    let r = RateCoefficients {
        a1: 0.7,
        a2: 0.7,
        a3: 0.4,
        a4: 0.4,
        b1: 0.6,
        b2: 0.6,
        b3: 0.35,
        b4: 0.35,
    };
    for init in [InitialState::S, InitialState::A, InitialState::E, InitialState::Psi(0.25)] {
        let t = evolve(&initial_state(init).unwrap(), &r, 20.0, &IntegratorControls::default()).unwrap();
        let c = concurrence_series(&t).unwrap();
        let bound = 10.0 * (r.a1 + r.a2) * (t.taus[1] - t.taus[0]);
        for w in c.windows(2) {
            assert!((w[1] - w[0]).abs() <= bound);
        }
        let ev = detect_events(&t, DEFAULT_THRESHOLD).unwrap();
        assert!(ev.max_concurrence <= 1.0);
    }
}
