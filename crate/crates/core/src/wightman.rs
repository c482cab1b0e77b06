//! Electric-field two-point functions ⟨E_i(τ) E_j(τ′)⟩ in the comoving frame.
//!
//! All evaluators accept a complex proper-time lag; the Wightman ordering
//! corresponds to evaluating at `u − iε` with ε → 0⁺.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};
use crate::frames::{tetrad_c, worldline_c, Atom, Family, KinematicParams, SpacetimeEvent, ETA};
use crate::poly::{Poly, Rational};

type C = Complex64;

/// Comoving spatial axis. `Rho`/`Phi` double as `x`/`y` for the uniform and
/// thermal families, where the acceleration points along x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "rho", alias = "x")]
    Rho,
    #[serde(rename = "phi", alias = "y")]
    Phi,
    #[serde(rename = "z")]
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::Rho, Axis::Phi, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::Rho => 0,
            Axis::Phi => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(k: usize) -> Axis {
        Axis::ALL[k]
    }

    /// Name in the coordinate convention of `family`.
    pub fn label(self, family: Family) -> &'static str {
        match (self, family) {
            (Axis::Rho, Family::Circular) => "rho",
            (Axis::Phi, Family::Circular) => "phi",
            (Axis::Rho, _) => "x",
            (Axis::Phi, _) => "y",
            (Axis::Z, _) => "z",
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s {
            "rho" | "x" => Some(Axis::Rho),
            "phi" | "y" => Some(Axis::Phi),
            "z" => Some(Axis::Z),
            _ => None,
        }
    }
}

/// Scalar two-point function 1/(4π²σ²) of the vector potential, with
/// Δt → Δt − iε.
pub fn potential_2pt(dx: f64, dy: f64, dz: f64, dt: f64, eps: f64) -> C {
    let t = C::new(dt, -eps);
    let s = C::new(dx * dx + dy * dy + dz * dz, 0.0) - t * t;
    1.0 / (4.0 * PI * PI * s)
}

/// Second derivatives ∂_μ∂_ν of the scalar two-point function at separation Δ.
fn hessian(delta: &[C; 4]) -> [[C; 4]; 4] {
    let s: C = (0..4).map(|k| delta[k] * delta[k] * ETA[k]).sum();
    let lower: [C; 4] = std::array::from_fn(|k| delta[k] * ETA[k]);
    let s2 = s * s;
    let s3 = s2 * s;
    let norm = 1.0 / (4.0 * PI * PI);
    let mut d = [[C::new(0.0, 0.0); 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            let mut v = lower[mu] * lower[nu] * 8.0 / s3;
            if mu == nu {
                v -= 2.0 * ETA[mu] / s2;
            }
            d[mu][nu] = v * norm;
        }
    }
    d
}

/// Lab-frame ⟨E_m E_n⟩ at complex separation Δ = x − x′.
pub(crate) fn lab_electric_c(m: usize, n: usize, delta: &[C; 4]) -> C {
    let d = hessian(delta);
    let diag = if m == n { d[0][0] } else { C::new(0.0, 0.0) };
    d[m + 1][n + 1] - diag
}

/// Lab-frame electric correlator between two events, Δt regulated by −iε.
pub fn lab_electric_2pt(
    m: Axis,
    n: Axis,
    e1: &SpacetimeEvent,
    e2: &SpacetimeEvent,
    eps: f64,
) -> C {
    let delta = [
        C::new(e1.t - e2.t, -eps),
        C::new(e1.x - e2.x, 0.0),
        C::new(e1.y - e2.y, 0.0),
        C::new(e1.z - e2.z, 0.0),
    ];
    lab_electric_c(m.index(), n.index(), &delta)
}

fn dot(a: &[C; 4], m: &[[C; 4]; 4], b: &[C; 4]) -> C {
    let mut s = C::new(0.0, 0.0);
    for mu in 0..4 {
        for nu in 0..4 {
            s += a[mu] * m[mu][nu] * b[nu];
        }
    }
    s
}

fn eta_dot(a: &[C; 4], b: &[C; 4]) -> C {
    (0..4).map(|k| a[k] * b[k] * ETA[k]).sum()
}

/// Full comoving correlator block ⟨E_i(τ₀+u) E_j(τ₀)⟩ by transforming the
/// lab field-strength correlator with the two tetrads.
pub(crate) fn boost_chain_c(
    params: &KinematicParams,
    alpha: Atom,
    beta: Atom,
    tau0: f64,
    u: C,
) -> Result<[[C; 3]; 3]> {
    let t1 = u + tau0;
    let t2 = C::new(tau0, 0.0);
    let x1 = worldline_c(params, alpha, t1)?;
    let x2 = worldline_c(params, beta, t2)?;
    let delta: [C; 4] = std::array::from_fn(|k| x1[k] - x2[k]);
    let d = hessian(&delta);
    let f1 = tetrad_c(params, t1)?;
    let f2 = tetrad_c(params, t2)?;
    let (u1, u2) = (&f1[0], &f2[0]);
    let uu = eta_dot(u1, u2);
    let du2: [C; 4] = std::array::from_fn(|mu| (0..4).map(|nu| d[mu][nu] * u2[nu]).sum());
    let d1u: [C; 4] = std::array::from_fn(|nu| (0..4).map(|mu| u1[mu] * d[mu][nu]).sum());
    let udu: C = (0..4).map(|k| d1u[k] * u2[k]).sum();
    let mut out = [[C::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        let e = &f1[i + 1];
        let edu: C = (0..4).map(|k| e[k] * du2[k]).sum();
        let ue2 = eta_dot(e, u2);
        for j in 0..3 {
            let ep = &f2[j + 1];
            let ede = dot(e, &d, ep);
            let ude: C = (0..4).map(|k| d1u[k] * ep[k]).sum();
            out[i][j] = -ede * uu + edu * eta_dot(u1, ep) + ude * ue2 - udu * eta_dot(e, ep);
        }
    }
    Ok(out)
}

fn check_regulator(u: f64, eps: f64) -> Result<()> {
    ensure_finite(u, "lag")?;
    ensure_finite(eps, "regulator")?;
    if eps <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "regulator must be positive, got {eps}"
        )));
    }
    if eps < 1e-10 * u.abs() {
        return Err(Error::IllConditioned { eps, lag: u });
    }
    Ok(())
}

/// Comoving correlator assembled numerically from the lab field tensor.
pub fn boost_chain_2pt(
    i: Axis,
    j: Axis,
    alpha: Atom,
    beta: Atom,
    u: f64,
    params: &KinematicParams,
    eps: f64,
) -> Result<C> {
    boost_chain_2pt_at(i, j, alpha, beta, u, params, eps, -0.5 * u)
}

/// As [`boost_chain_2pt`] with an explicit base proper time τ′.
#[allow(clippy::too_many_arguments)]
pub fn boost_chain_2pt_at(
    i: Axis,
    j: Axis,
    alpha: Atom,
    beta: Atom,
    u: f64,
    params: &KinematicParams,
    eps: f64,
    tau0: f64,
) -> Result<C> {
    check_regulator(u, eps)?;
    ensure_finite(tau0, "base proper time")?;
    let g = boost_chain_c(params, alpha, beta, tau0, C::new(u, -eps))?;
    Ok(g[i.index()][j.index()])
}

/// Closed forms for circular orbits at finite speed, evaluated at complex lag.
pub fn circular_2pt_general(
    i: Axis,
    j: Axis,
    alpha: Atom,
    beta: Atom,
    u: C,
    params: &KinematicParams,
) -> Result<C> {
    if params.family != Family::Circular || params.v.is_none() {
        return Err(Error::InvalidParameter(
            "finite-speed circular parameters required".into(),
        ));
    }
    let g = params.gamma();
    let r = params.radius();
    let om = params.angular_velocity();
    let l = params.l;
    let (g2, r2, om2) = (g * g, r * r, om * om);
    let r4 = r2 * r2;
    let h = u * (g * om);
    let (c, s) = (h.cos(), h.sin());
    let u2 = u * u;
    let pi2 = PI * PI;
    let (i, j) = (i.index(), j.index());
    if alpha == beta {
        let ds = u2 * g2 + c * (2.0 * r2) - 2.0 * r2;
        let den = ds.powu(3) * pi2;
        let val = match (i, j) {
            (2, 2) => {
                (u2 * g2 + 2.0 * r2 + 2.0 * r4 * om2
                    + ((u2 * (g2 * om2) - 2.0 - 2.0 * r2 * om2) * c - h * s * 4.0) * r2)
                    * g2
            }
            (0, 0) => {
                ((u2 * g2 - 2.0 * (r2 + r4 * om2)) * c
                    + (u2 * (g2 * om2) + 2.0 + 2.0 * r2 * om2 - h * s * 4.0) * r2)
                    * g2
            }
            (1, 1) => (u2 * g2 + 2.0 * r2) * c - 2.0 * r2,
            (0, 1) => u * g2 * ((c - 1.0) * (2.0 * r2 * om) + u * s * g),
            (1, 0) => -u * g2 * ((c - 1.0) * (2.0 * r2 * om) + u * s * g),
            _ => return Ok(C::new(0.0, 0.0)),
        };
        Ok(val / den)
    } else {
        let l2 = l * l;
        let dc = -(u2 * g2) - c * (2.0 * r2) + (l2 + 2.0 * r2);
        let den = dc.powu(3) * pi2;
        let sg = if alpha == Atom::One { 1.0 } else { -1.0 };
        let half = h / 2.0;
        let rz = || {
            half.sin() * (h * half.cos() - half.sin() * (1.0 + r2 * om2)) * (4.0 * l * r * g2)
        };
        let rp = || -(c - 1.0) * h * (2.0 * g * r2) - s * (u2 * g2 + l2) * g;
        let zp = || (h * c - s) * (2.0 * l * r * g);
        let val = match (i, j) {
            (2, 2) => {
                (-(u2 * g2) + l2 - 2.0 * r2 - 2.0 * r4 * om2
                    + c * (2.0 - (u2 * g2 + l2 - 2.0 * r2) * om2) * r2
                    + h * s * (4.0 * r2))
                    * g2
            }
            (0, 0) => {
                ((-(u2 * g2) - l2 + 2.0 * (r2 + r4 * om2)) * c
                    + (-(u2 * g2) * om2 - 2.0 + (l2 - 2.0 * r2) * om2 + h * s * 4.0) * r2)
                    * g2
            }
            (1, 1) => -((u2 * g2 + l2 + 2.0 * r2) * c - 2.0 * r2),
            (0, 2) => rz() * sg,
            (2, 0) => -rz() * sg,
            (0, 1) => rp(),
            (1, 0) => -rp(),
            (2, 1) | (1, 2) => zp() * sg,
            _ => unreachable!(),
        };
        Ok(val / den)
    }
}

const ULTRA_SAME_FACTOR: f64 = 12.0;

/// Ultrarelativistic circular correlator component as an explicit rational
/// function of the lag.
pub fn ultra_component(i: Axis, j: Axis, alpha: Atom, beta: Atom, a: f64, l: f64) -> Rational {
    let pi2 = PI * PI;
    let a2 = a * a;
    let a4 = a2 * a2;
    let l2 = l * l;
    let p = |c: Vec<f64>, k: f64| Poly::new(c.into_iter().map(|x| x * k / pi2).collect());
    let (i, j) = (i.index(), j.index());
    if alpha == beta {
        let w = Poly::new(vec![ULTRA_SAME_FACTOR, 0.0, a2]);
        let den4 = vec![(Poly::x(), 4), (w.clone(), 3)];
        let den3 = vec![(Poly::x(), 3), (w, 3)];
        let rho_phi = || p(vec![12.0, 0.0, -a2], 144.0 * a);
        match (i, j) {
            (2, 2) => Rational {
                num: p(vec![72.0, 0.0, 6.0 * a2, 0.0, a4], 24.0),
                den: den4,
            },
            (0, 0) => Rational {
                num: p(vec![72.0, 0.0, -30.0 * a2, 0.0, a4], 24.0),
                den: den4,
            },
            (1, 1) => Rational {
                num: p(vec![12.0, 0.0, -5.0 * a2], 144.0),
                den: den4,
            },
            (0, 1) => Rational {
                num: rho_phi(),
                den: den3,
            },
            (1, 0) => Rational {
                num: rho_phi().scale(-1.0),
                den: den3,
            },
            _ => Rational::zero(),
        }
    } else {
        let q = Poly::new(vec![-12.0 * l2, 0.0, 12.0, 0.0, a2]);
        let den = vec![(q, 3)];
        let sg = if alpha == Atom::One { 1.0 } else { -1.0 };
        let num = match (i, j) {
            (2, 2) => p(
                vec![-72.0 * l2, 0.0, 72.0 - 36.0 * l2 * a2, 0.0, 6.0 * a2, 0.0, a4],
                24.0,
            ),
            (0, 0) => p(
                vec![72.0 * l2, 0.0, 72.0 - 36.0 * l2 * a2, 0.0, -30.0 * a2, 0.0, a4],
                24.0,
            ),
            (1, 1) => p(vec![12.0 * l2, 0.0, 12.0, 0.0, -5.0 * a2], 144.0),
            (0, 2) => p(vec![0.0, 0.0, -6.0, 0.0, a2], 288.0 * a * l * sg),
            (2, 0) => p(vec![0.0, 0.0, -6.0, 0.0, a2], -288.0 * a * l * sg),
            (0, 1) => p(vec![0.0, 12.0 * l2, 0.0, 12.0, 0.0, -a2], 144.0 * a),
            (1, 0) => p(vec![0.0, 12.0 * l2, 0.0, 12.0, 0.0, -a2], -144.0 * a),
            (2, 1) | (1, 2) => p(vec![0.0, 0.0, 0.0, 1.0], 1152.0 * l * a2 * sg),
            _ => unreachable!(),
        };
        Rational { num, den }
    }
}

/// Ultrarelativistic circular correlator at complex lag.
pub fn circular_2pt_ultra(i: Axis, j: Axis, alpha: Atom, beta: Atom, u: C, a: f64, l: f64) -> C {
    ultra_component(i, j, alpha, beta, a, l).eval(u)
}

/// Static-atom vacuum correlator at complex lag.
pub(crate) fn static_vacuum_c(i: usize, j: usize, alpha: Atom, beta: Atom, l: f64, u: C) -> C {
    let dz = match (alpha, beta) {
        (Atom::One, Atom::Two) => -l,
        (Atom::Two, Atom::One) => l,
        _ => 0.0,
    };
    let delta = [u, C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(dz, 0.0)];
    lab_electric_c(i, j, &delta)
}

/// Image sum for static atoms at temperature `t`, at complex lag.
pub(crate) fn thermal_c(
    i: usize,
    j: usize,
    alpha: Atom,
    beta: Atom,
    l: f64,
    t: f64,
    n: usize,
    u: C,
) -> (C, f64) {
    let f = |s: C| static_vacuum_c(i, j, alpha, beta, l, s);
    if t == 0.0 {
        return (f(u), 0.0);
    }
    let b = 1.0 / t;
    let mut sum = f(u);
    for k in 1..=n {
        let shift = C::new(0.0, k as f64 * b);
        sum += f(u - shift) + f(u + shift);
    }
    let shift = C::new(0.0, n as f64 * b);
    let last = f(u - shift).norm() + f(u + shift).norm();
    (sum, last * n as f64 / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalValue {
    pub value: C,
    pub tail_bound: f64,
}

pub const DEFAULT_IMAGES: usize = 200;
const THERMAL_TAIL_TOL: f64 = 1e-6;

/// Thermal correlator of static atoms as a truncated image sum.
#[allow(clippy::too_many_arguments)]
pub fn thermal_2pt(
    i: Axis,
    j: Axis,
    alpha: Atom,
    beta: Atom,
    u: f64,
    t: f64,
    l: f64,
    eps: f64,
    n: usize,
) -> Result<ThermalValue> {
    check_regulator(u, eps)?;
    ensure_finite(t, "temperature")?;
    if t < 0.0 || n == 0 {
        return Err(Error::InvalidParameter(
            "temperature must be non-negative and N at least 1".into(),
        ));
    }
    let (value, tail) = thermal_c(i.index(), j.index(), alpha, beta, l, t, n, C::new(u, -eps));
    if tail > THERMAL_TAIL_TOL * value.norm().max(f64::MIN_POSITIVE) && tail > 1e-300 {
        return Err(Error::TruncationTooSmall { tail, n });
    }
    Ok(ThermalValue {
        value,
        tail_bound: tail,
    })
}

/// Closed-form comoving correlator of two uniformly accelerated atoms at
/// complex lag, in the (x, y, z) frame with acceleration along x.
pub fn uniform_2pt(i: Axis, j: Axis, alpha: Atom, beta: Atom, u: C, a: f64, l: f64) -> C {
    let h = alpha.height(l) - beta.height(l);
    let s = (u * (0.5 * a)).sinh();
    let s2 = s * s;
    let ah2 = a * a * h * h;
    let n = (s * 2.0 - a * h) * (s * 2.0 + a * h);
    let pre = a.powi(4) / (PI * PI * n * n * n);
    let num = match (i, j) {
        (Axis::Rho, Axis::Rho) => s2 * 4.0 + ah2,
        (Axis::Phi, Axis::Phi) => s2 * 4.0 + ah2 + s2 * (2.0 * ah2),
        (Axis::Z, Axis::Z) => s2 * 4.0 - ah2 - s2 * (2.0 * ah2),
        (Axis::Rho, Axis::Z) => s2 * (-4.0 * a * h),
        (Axis::Z, Axis::Rho) => s2 * (4.0 * a * h),
        _ => return C::new(0.0, 0.0),
    };
    pre * num
}
