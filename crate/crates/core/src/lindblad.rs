//! Coupled-basis master equation for the X-state block and its integration.

use nalgebra::{Matrix4, SMatrix, SVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::spectral::RateCoefficients;

type C = Complex64;

/// Density-matrix entries in the basis {|G⟩, |A⟩, |S⟩, |E⟩} that the
/// dissipator couples; everything else stays zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XState {
    pub rho_gg: f64,
    pub rho_ee: f64,
    pub rho_aa: f64,
    pub rho_ss: f64,
    pub rho_as: C,
    pub rho_sa: C,
    pub rho_ge: C,
    pub rho_eg: C,
}

pub const STATE_DIM: usize = 12;
pub type StateVector = SVector<f64, STATE_DIM>;

impl XState {
    pub fn trace(&self) -> f64 {
        self.rho_gg + self.rho_ee + self.rho_aa + self.rho_ss
    }

    /// Largest violation of ρ_AS = ρ_SA* and ρ_GE = ρ_EG*.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.rho_as - self.rho_sa.conj())
            .norm()
            .max((self.rho_ge - self.rho_eg.conj()).norm())
    }

    pub fn to_vector(&self) -> StateVector {
        StateVector::from_column_slice(&[
            self.rho_gg,
            self.rho_ee,
            self.rho_aa,
            self.rho_ss,
            self.rho_as.re,
            self.rho_as.im,
            self.rho_sa.re,
            self.rho_sa.im,
            self.rho_ge.re,
            self.rho_ge.im,
            self.rho_eg.re,
            self.rho_eg.im,
        ])
    }

    pub fn from_vector(v: &StateVector) -> Self {
        XState {
            rho_gg: v[0],
            rho_ee: v[1],
            rho_aa: v[2],
            rho_ss: v[3],
            rho_as: C::new(v[4], v[5]),
            rho_sa: C::new(v[6], v[7]),
            rho_ge: C::new(v[8], v[9]),
            rho_eg: C::new(v[10], v[11]),
        }
    }

    pub fn scaled_add(&self, k: f64, other: &XState) -> XState {
        XState::from_vector(&(self.to_vector() + other.to_vector() * k))
    }

    /// 4×4 matrix in the product basis |00⟩, |01⟩, |10⟩, |11⟩ (first label
    /// atom 1, 1 = excited).
    pub fn to_product_matrix(&self) -> Matrix4<C> {
        let r = FRAC_1_SQRT_2;
        let z = C::new(0.0, 0.0);
        let ket = |v: [f64; 4]| v.map(|x| C::new(x, 0.0));
        let g = ket([1.0, 0.0, 0.0, 0.0]);
        let e = ket([0.0, 0.0, 0.0, 1.0]);
        let a = ket([0.0, -r, r, 0.0]);
        let s = ket([0.0, r, r, 0.0]);
        let terms: [(&[C; 4], &[C; 4], C); 8] = [
            (&g, &g, C::new(self.rho_gg, 0.0)),
            (&e, &e, C::new(self.rho_ee, 0.0)),
            (&a, &a, C::new(self.rho_aa, 0.0)),
            (&s, &s, C::new(self.rho_ss, 0.0)),
            (&a, &s, self.rho_as),
            (&s, &a, self.rho_sa),
            (&g, &e, self.rho_ge),
            (&e, &g, self.rho_eg),
        ];
        let mut m = Matrix4::from_element(z);
        for (bra_l, ket_r, w) in terms {
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += w * bra_l[i] * ket_r[j].conj();
                }
            }
        }
        m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.to_product_matrix();
        let h = (m + m.adjoint()) * C::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Check trace, Hermiticity and positivity at the given tolerance.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if (self.trace() - 1.0).abs() > tol {
            return Err(Error::InvalidState(format!("trace {}", self.trace())));
        }
        if self.hermiticity_defect() > tol {
            return Err(Error::InvalidState("not Hermitian".into()));
        }
        let m = self.min_eigenvalue();
        if m < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {m}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InitialState {
    #[serde(rename = "S")]
    S,
    #[serde(rename = "A")]
    A,
    #[serde(rename = "E")]
    E,
    #[serde(rename = "G")]
    G,
    #[serde(rename = "bell_ge")]
    BellGE,
    /// √p|A⟩ + √(1−p)|S⟩.
    #[serde(rename = "psi")]
    Psi(f64),
}

impl InitialState {
    pub fn label(&self) -> String {
        match self {
            InitialState::S => "S".into(),
            InitialState::A => "A".into(),
            InitialState::E => "E".into(),
            InitialState::G => "G".into(),
            InitialState::BellGE => "bell_ge".into(),
            InitialState::Psi(p) => format!("psi{p}"),
        }
    }
}

pub fn initial_state(spec: InitialState) -> Result<XState> {
    let mut s = XState::default();
    match spec {
        InitialState::S => s.rho_ss = 1.0,
        InitialState::A => s.rho_aa = 1.0,
        InitialState::E => s.rho_ee = 1.0,
        InitialState::G => s.rho_gg = 1.0,
        InitialState::BellGE => {
            s.rho_gg = 0.5;
            s.rho_ee = 0.5;
            s.rho_ge = C::new(0.5, 0.0);
            s.rho_eg = C::new(0.5, 0.0);
        }
        InitialState::Psi(p) => {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "superposition weight must lie in (0, 1), got {p}"
                )));
            }
            let c = (p * (1.0 - p)).sqrt();
            s.rho_aa = p;
            s.rho_ss = 1.0 - p;
            s.rho_as = C::new(c, 0.0);
            s.rho_sa = C::new(c, 0.0);
        }
    }
    Ok(s)
}

/// Right-hand side of the coupled-basis equations.
///
/// Coefficients are grouped into exchange-symmetric and antisymmetric parts
/// so that symmetric rates give bitwise-identical equations for ρ_AS and ρ_SA.
pub fn derivative(rho: &XState, r: &RateCoefficients) -> XState {
    let p = r.a1 + r.a2;
    let q = r.b1 + r.b2;
    let ax = r.a3 + r.a4;
    let bx = r.b3 + r.b4;
    let da = r.a1 - r.a2;
    let db = r.b1 - r.b2;
    let xa = r.a3 - r.a4;
    let xb = r.b3 - r.b4;

    let (gg, ee, aa, ss) = (rho.rho_gg, rho.rho_ee, rho.rho_aa, rho.rho_ss);
    let (ras, rsa) = (rho.rho_as, rho.rho_sa);

    let d_gg = -2.0 * (p - q) * gg
        + ((p - ax) + (q - bx)) * aa
        + ((p + ax) + (q + bx)) * ss
        + (ras * ((da + db) - (xa + xb)) + rsa * ((da + db) + (xa + xb))).re;
    let d_ee = -2.0 * (p + q) * ee
        + ((p - ax) - (q - bx)) * aa
        + ((p + ax) - (q + bx)) * ss
        + (ras * ((db - da) + (xa - xb)) + rsa * ((db - da) - (xa - xb))).re;
    let d_aa = -2.0 * (p - ax) * aa
        + ((p - ax) - (q - bx)) * gg
        + ((p - ax) + (q - bx)) * ee
        + (ras * (xb - db) + rsa * (-db - xb)).re;
    let d_ss = -2.0 * (p + ax) * ss
        + ((p + ax) - (q + bx)) * gg
        + ((p + ax) + (q + bx)) * ee
        + (ras * (xb - db) + rsa * (-db - xb)).re;
    let pops = aa + ss;
    let d_as = C::new(((da - db) - (xa - xb)) * gg + (-(da + db) + (xa + xb)) * ee + (-db - xb) * pops, 0.0)
        - ras * (2.0 * p);
    let d_sa = C::new(((da - db) + (xa - xb)) * gg + (-(da + db) - (xa + xb)) * ee + (-db + xb) * pops, 0.0)
        - rsa * (2.0 * p);
    XState {
        rho_gg: d_gg,
        rho_ee: d_ee,
        rho_aa: d_aa,
        rho_ss: d_ss,
        rho_as: d_as,
        rho_sa: d_sa,
        rho_ge: rho.rho_ge * (-2.0 * p),
        rho_eg: rho.rho_eg * (-2.0 * p),
    }
}

/// The real 12×12 generator in the [`XState::to_vector`] layout.
pub fn generator_matrix(r: &RateCoefficients) -> SMatrix<f64, STATE_DIM, STATE_DIM> {
    let mut m = SMatrix::<f64, STATE_DIM, STATE_DIM>::zeros();
    for k in 0..STATE_DIM {
        let mut e = StateVector::zeros();
        e[k] = 1.0;
        let d = derivative(&XState::from_vector(&e), r).to_vector();
        m.set_column(k, &d);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IntegratorControls {
    pub rtol: f64,
    pub atol: f64,
    /// Spacing of emitted samples; defaults to τ_max/2000.
    pub sample_interval: Option<f64>,
}

impl Default for IntegratorControls {
    fn default() -> Self {
        IntegratorControls {
            rtol: 1e-10,
            atol: 1e-12,
            sample_interval: None,
        }
    }
}

pub const DEFAULT_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct IntegratorStats {
    pub steps: usize,
    pub rejected: usize,
    /// Largest accepted normalized error estimate.
    pub max_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateTrajectory {
    pub taus: Vec<f64>,
    pub states: Vec<XState>,
    pub stats: IntegratorStats,
}

impl StateTrajectory {
    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }
}

/// Default horizon 12/Γ_eff with Γ_eff = 2(A₁ + A₂).
pub fn default_tau_max(r: &RateCoefficients) -> f64 {
    12.0 / (2.0 * (r.a1 + r.a2))
}

pub fn sample_times(tau_max: f64, interval: Option<f64>) -> Result<Vec<f64>> {
    if !(tau_max > 0.0 && tau_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tau_max must be positive and finite, got {tau_max}"
        )));
    }
    let dt = interval.unwrap_or(tau_max / DEFAULT_SAMPLES as f64);
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("invalid sample interval {dt}")));
    }
    let n = (tau_max / dt - 1e-9).ceil().max(1.0) as usize;
    Ok((0..=n).map(|k| tau_max * k as f64 / n as f64).collect())
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

struct Step {
    y: StateVector,
    k_last: StateVector,
    err: f64,
}

fn dp_step(
    f: &dyn Fn(&StateVector) -> StateVector,
    y: &StateVector,
    k1: &StateVector,
    h: f64,
    c: &IntegratorControls,
) -> Step {
    let k2 = f(&(y + k1 * (h * A21)));
    let k3 = f(&(y + (k1 * A31 + k2 * A32) * h));
    let k4 = f(&(y + (k1 * A41 + k2 * A42 + k3 * A43) * h));
    let k5 = f(&(y + (k1 * A51 + k2 * A52 + k3 * A53 + k4 * A54) * h));
    let k6 = f(&(y + (k1 * A61 + k2 * A62 + k3 * A63 + k4 * A64 + k5 * A65) * h));
    let y_new = y + (k1 * B1 + k3 * B3 + k4 * B4 + k5 * B5 + k6 * B6) * h;
    let k7 = f(&y_new);
    let e = (k1 * E1 + k3 * E3 + k4 * E4 + k5 * E5 + k6 * E6 + k7 * E7) * h;
    let mut err = 0.0f64;
    for i in 0..STATE_DIM {
        let sc = c.atol + c.rtol * y[i].abs().max(y_new[i].abs());
        err = err.max(e[i].abs() / sc);
    }
    Step {
        y: y_new,
        k_last: k7,
        err,
    }
}

/// Adaptive Dormand–Prince integration sampled at uniform times.
pub fn evolve(
    rho0: &XState,
    rates: &RateCoefficients,
    tau_max: f64,
    controls: &IntegratorControls,
) -> Result<StateTrajectory> {
    let times = sample_times(tau_max, controls.sample_interval)?;
    if !(controls.rtol > 0.0 && controls.atol > 0.0) {
        return Err(Error::InvalidParameter("tolerances must be positive".into()));
    }
    let f = |y: &StateVector| derivative(&XState::from_vector(y), rates).to_vector();
    let mut y = rho0.to_vector();
    let mut k1 = f(&y);
    let mut t = 0.0;
    let scale = rates.a().iter().chain(rates.b().iter()).map(|x| x.abs()).sum::<f64>();
    let mut h = if scale > 0.0 { 0.01 / scale } else { tau_max };
    let mut stats = IntegratorStats::default();
    let mut states = vec![*rho0];
    for &target in &times[1..] {
        while t < target {
            let remaining = target - t;
            let clipped = remaining <= h;
            let step = if clipped { remaining } else { h };
            if step < 1e-14 * t.max(1.0) && !clipped {
                return Err(Error::StepSizeUnderflow { tau: t });
            }
            let s = dp_step(&f, &y, &k1, step, controls);
            if !s.err.is_finite() {
                return Err(Error::StepSizeUnderflow { tau: t });
            }
            let factor = if s.err == 0.0 {
                5.0
            } else {
                (0.9 * s.err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if s.err <= 1.0 {
                t = if clipped { target } else { t + step };
                y = s.y;
                k1 = s.k_last;
                stats.steps += 1;
                stats.max_error = stats.max_error.max(s.err);
                if !clipped || factor < 1.0 {
                    h = step * factor;
                }
            } else {
                stats.rejected += 1;
                h = step * factor;
                if h < 1e-14 * t.max(1.0) {
                    return Err(Error::StepSizeUnderflow { tau: t });
                }
            }
        }
        states.push(XState::from_vector(&y));
    }
    Ok(StateTrajectory {
        taus: times,
        states,
        stats,
    })
}

/// Exact propagation by the matrix exponential of the generator.
pub fn evolve_expm(
    rho0: &XState,
    rates: &RateCoefficients,
    tau_max: f64,
    interval: Option<f64>,
) -> Result<StateTrajectory> {
    let times = sample_times(tau_max, interval)?;
    let m = generator_matrix(rates);
    let dt = times[1] - times[0];
    let u = (m * dt).exp();
    let mut y = rho0.to_vector();
    let mut states = vec![*rho0];
    for _ in 1..times.len() {
        y = u * y;
        states.push(XState::from_vector(&y));
    }
    Ok(StateTrajectory {
        taus: times,
        states,
        stats: IntegratorStats::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_rates() -> RateCoefficients {
        RateCoefficients {
            a1: 0.5,
            a2: 0.5,
            a3: 0.2,
            a4: 0.2,
            b1: 0.45,
            b2: 0.45,
            b3: 0.15,
            b4: 0.15,
        }
    }

    #[test]
    fn singlet_product_matrix() {
        let m = initial_state(InitialState::A).unwrap().to_product_matrix();
        assert!((m[(1, 1)].re - 0.5).abs() < 1e-15);
        assert!((m[(2, 2)].re - 0.5).abs() < 1e-15);
        assert!((m[(1, 2)].re + 0.5).abs() < 1e-15);
        assert!((m[(2, 1)].re + 0.5).abs() < 1e-15);
        assert!((m.trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn psi_quarter_entries_and_rank() {
        let s = initial_state(InitialState::Psi(0.25)).unwrap();
        assert_eq!(s.rho_aa, 0.25);
        assert_eq!(s.rho_ss, 0.75);
        assert!((s.rho_as.re - 3f64.sqrt() / 4.0).abs() < 1e-15);
        let h = s.to_product_matrix();
        let ev = h.symmetric_eigenvalues();
        let max = ev.iter().copied().fold(f64::MIN, f64::max);
        assert!((max - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_ge_entries() {
        let s = initial_state(InitialState::BellGE).unwrap();
        assert_eq!((s.rho_gg, s.rho_ee, s.rho_ge.re), (0.5, 0.5, 0.5));
    }

    #[test]
    fn rejects_bad_weight() {
        assert!(initial_state(InitialState::Psi(1.0)).is_err());
        assert!(initial_state(InitialState::Psi(-0.1)).is_err());
    }

    #[test]
    fn decoupled_singlet_and_triplet_decay_alike() {
        let r = sample_rates().with_cross_zeroed();
        let da = derivative(&initial_state(InitialState::A).unwrap(), &r);
        let ds = derivative(&initial_state(InitialState::S).unwrap(), &r);
        assert!((da.rho_aa + 2.0 * (r.a1 + r.a2)).abs() < 1e-15);
        assert_eq!(da.rho_aa, ds.rho_ss);
    }

    #[test]
    fn zero_rates_freeze_state() {
        let s = initial_state(InitialState::Psi(0.3)).unwrap();
        let tr = evolve(&s, &RateCoefficients::default(), 5.0, &IntegratorControls::default())
            .unwrap();
        assert!(tr.states.iter().all(|x| *x == s));
    }

    #[test]
    fn coherence_channel_is_exponential() {
        let r = sample_rates();
        let s = initial_state(InitialState::BellGE).unwrap();
        let tr = evolve(&s, &r, 10.0, &IntegratorControls::default()).unwrap();
        for (t, x) in tr.taus.iter().zip(&tr.states) {
            let exact = 0.5 * (-2.0 * (r.a1 + r.a2) * t).exp();
            assert!((x.rho_ge.re - exact).abs() < 1e-8);
        }
    }

    #[test]
    fn rk_matches_matrix_exponential() {
        let r = sample_rates();
        let s = initial_state(InitialState::Psi(0.25)).unwrap();
        let a = evolve(&s, &r, 8.0, &IntegratorControls::default()).unwrap();
        let b = evolve_expm(&s, &r, 8.0, None).unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            assert!((x.to_vector() - y.to_vector()).amax() < 1e-8);
        }
    }

    #[test]
    fn symmetric_rates_keep_exact_hermiticity() {
        let r = sample_rates();
        let s = initial_state(InitialState::Psi(0.7)).unwrap();
        let tr = evolve(&s, &r, 6.0, &IntegratorControls::default()).unwrap();
        assert!(tr.states.iter().all(|x| x.hermiticity_defect() == 0.0));
    }

    #[test]
    fn sample_grid() {
        let t = sample_times(1.0, Some(0.3)).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(*t.last().unwrap(), 1.0);
        assert!(sample_times(0.0, None).is_err());
    }
}
