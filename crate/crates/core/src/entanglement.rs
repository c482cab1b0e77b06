//! Concurrence and entanglement event detection.

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lindblad::{StateTrajectory, XState};

type C = Complex64;

const RADICAND_TOL: f64 = 1e-12;

fn clamped_sqrt(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x.sqrt())
    } else if x >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::InvalidState(format!("negative radicand {x:e} in concurrence")))
    }
}

/// Concurrence of an X state, max{0, K₁, K₂} with
/// K₁ = √[(ρ_AA − ρ_SS)² − (ρ_AS − ρ_SA)²] − 2√(ρ_GG ρ_EE) and
/// K₂ = 2|ρ_GE| − √[(ρ_AA + ρ_SS)² − (ρ_AS + ρ_SA)²].
pub fn concurrence_x(rho: &XState) -> Result<f64> {
    let d = rho.rho_as - rho.rho_sa;
    let s = rho.rho_as + rho.rho_sa;
    // For Hermitian states both radicands are real.
    let r1 = (C::new(rho.rho_aa - rho.rho_ss, 0.0).powu(2) - d * d).re;
    let r2 = (C::new(rho.rho_aa + rho.rho_ss, 0.0).powu(2) - s * s).re;
    let k1 = clamped_sqrt(r1)? - 2.0 * clamped_sqrt(rho.rho_gg * rho.rho_ee)?;
    let k2 = 2.0 * rho.rho_ge.norm() - clamped_sqrt(r2)?;
    Ok(k1.max(k2).clamp(0.0, 1.0))
}

/// Wootters concurrence of a general two-qubit density matrix in the
/// product basis.
///
/// The square roots of the eigenvalues of ρρ̃ are the singular values of
/// √ρ·(σ_y⊗σ_y)·√ρ*, which avoids taking square roots of tiny eigenvalues of
/// a non-normal matrix.
pub fn concurrence_wootters(rho: &Matrix4<C>) -> Result<f64> {
    let herm = (rho - rho.adjoint()).norm();
    let tr = rho.trace().re;
    if herm > 1e-10 || !(tr > 0.0) {
        return Err(Error::InvalidState("not a density matrix".into()));
    }
    let eig = ((rho + rho.adjoint()) * C::new(0.5, 0.0)).symmetric_eigen();
    let floor = 1e-14 * tr;
    if eig.eigenvalues.iter().any(|&l| l < -1e-10 * tr) {
        return Err(Error::InvalidState("density matrix is not positive".into()));
    }
    let roots = eig
        .eigenvalues
        .map(|l| C::new(if l < floor { 0.0 } else { l.sqrt() }, 0.0));
    let sqrt_rho = &eig.eigenvectors * Matrix4::from_diagonal(&roots) * eig.eigenvectors.adjoint();
    let z = C::new(0.0, 0.0);
    let o = C::new(1.0, 0.0);
    // σ_y ⊗ σ_y is real: anti-diagonal (−1, 1, 1, −1).
    let mut yy = Matrix4::from_element(z);
    yy[(0, 3)] = -o;
    yy[(1, 2)] = o;
    yy[(2, 1)] = o;
    yy[(3, 0)] = -o;
    let m = sqrt_rho * yy * sqrt_rho.conjugate();
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok((sv[0] - sv[1] - sv[2] - sv[3]).max(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntanglementEvents {
    #[serde(rename = "death_time")]
    pub death: Option<f64>,
    #[serde(rename = "birth_time")]
    pub birth: Option<f64>,
    /// Positive excursions after a death; an excursion still open at the
    /// end of the trajectory closes at the last sample.
    pub revivals: Vec<(f64, f64)>,
    pub max_concurrence: f64,
    pub arg_max_tau: f64,
    /// Whether the concurrence ever exceeds its initial value.
    pub enhanced: bool,
}

pub const DEFAULT_THRESHOLD: f64 = 1e-6;

fn crossing(t0: f64, c0: f64, t1: f64, c1: f64, level: f64) -> f64 {
    if c1 == c0 {
        t1
    } else {
        t0 + (level - c0) * (t1 - t0) / (c1 - c0)
    }
}

/// Scan a concurrence series for sudden death, birth and revivals.
pub fn detect_events_series(taus: &[f64], conc: &[f64], threshold: f64) -> EntanglementEvents {
    let mut death = None;
    let mut birth = None;
    let mut revivals: Vec<(f64, f64)> = Vec::new();
    let mut open: Option<f64> = None;
    let c0 = conc.first().copied().unwrap_or(0.0);
    let mut alive = c0 > threshold;
    let mut ever_dead = false;
    let (mut best, mut arg) = (c0, taus.first().copied().unwrap_or(0.0));
    for k in 1..conc.len() {
        let (t0, t1, a, b) = (taus[k - 1], taus[k], conc[k - 1], conc[k]);
        if b > best {
            best = b;
            arg = t1;
        }
        let now = b > threshold;
        if alive && !now {
            ever_dead = true;
            let t = crossing(t0, a, t1, b, threshold);
            if death.is_none() {
                death = Some(t);
            }
            if let Some(st) = open.take() {
                revivals.push((st, t));
            }
        } else if !alive && now {
            let t = crossing(t0, a, t1, b, threshold);
            if c0 <= threshold && !ever_dead && birth.is_none() {
                birth = Some(t);
            } else if ever_dead {
                open = Some(t);
            }
        }
        alive = now;
    }
    if let (Some(st), Some(&end)) = (open, taus.last()) {
        revivals.push((st, end));
    }
    EntanglementEvents {
        death,
        birth,
        revivals,
        max_concurrence: best,
        arg_max_tau: arg,
        enhanced: best > c0 + threshold,
    }
}

pub fn concurrence_series(traj: &StateTrajectory) -> Result<Vec<f64>> {
    traj.states.iter().map(concurrence_x).collect()
}

pub fn detect_events(traj: &StateTrajectory, threshold: f64) -> Result<EntanglementEvents> {
    Ok(detect_events_series(&traj.taus, &concurrence_series(traj)?, threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{initial_state, InitialState};

    #[test]
    fn pure_bell_states_are_maximal() {
        for s in [InitialState::A, InitialState::S, InitialState::BellGE] {
            let r = initial_state(s).unwrap();
            assert!((concurrence_x(&r).unwrap() - 1.0).abs() < 1e-14);
            assert!((concurrence_wootters(&r.to_product_matrix()).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn product_states_vanish() {
        for s in [InitialState::E, InitialState::G] {
            assert_eq!(concurrence_x(&initial_state(s).unwrap()).unwrap(), 0.0);
        }
    }

    #[test]
    fn superposition_collapses_to_weight_gap() {
        // √p|A⟩ + √(1−p)|S⟩ with real amplitudes is |1 − 2p| entangled
        let r = initial_state(InitialState::Psi(0.25)).unwrap();
        assert!((concurrence_x(&r).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn event_scan() {
        let taus: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let c = [0.0, 0.0, 0.1, 0.2, 0.0, 0.0, 0.05, 0.0, 0.0, 0.0, 0.0];
        let ev = detect_events_series(&taus, &c, 1e-6);
        assert!((ev.birth.unwrap() - 1.0).abs() < 1e-4);
        assert!((ev.death.unwrap() - 4.0).abs() < 1e-4);
        assert_eq!(ev.revivals.len(), 1);
        assert!((ev.revivals[0].0 - 5.0).abs() < 1e-4 && (ev.revivals[0].1 - 7.0).abs() < 1e-4);
        assert_eq!(ev.max_concurrence, 0.2);
        assert_eq!(ev.arg_max_tau, 3.0);
        assert!(ev.enhanced);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let r = XState {
            rho_gg: 0.25,
            rho_ee: 0.25,
            rho_aa: 0.25,
            rho_ss: 0.25,
            ..Default::default()
        };
        assert_eq!(concurrence_x(&r).unwrap(), 0.0);
    }

    #[test]
    fn negative_radicand_is_rejected() {
        let r = XState {
            rho_gg: -0.5,
            rho_ee: 0.5,
            rho_aa: 1.0,
            ..Default::default()
        };
        assert!(concurrence_x(&r).is_err());
    }

    #[test]
    fn monotone_decay_has_death_only() {
        let taus: Vec<f64> = (0..=4).map(|k| k as f64).collect();
        let ev = detect_events_series(&taus, &[1.0, 0.5, 0.1, 0.0, 0.0], 1e-6);
        assert!(ev.death.is_some() && ev.birth.is_none() && ev.revivals.is_empty());
        assert!(!ev.enhanced);
    }
}
