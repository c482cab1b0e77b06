//! Worldlines and the boost/rotation transforms into the comoving frame.

use nalgebra::{Matrix3, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};

type C = Complex64;

/// Minkowski metric, signature (−,+,+,+).
pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Circular,
    Uniform,
    #[serde(alias = "static_thermal", alias = "static")]
    Thermal,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Circular, Family::Uniform, Family::Thermal];

    pub fn name(self) -> &'static str {
        match self {
            Family::Circular => "circular",
            Family::Uniform => "uniform",
            Family::Thermal => "thermal",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    One,
    Two,
}

impl Atom {
    pub const BOTH: [Atom; 2] = [Atom::One, Atom::Two];

    pub fn index(self) -> usize {
        match self {
            Atom::One => 0,
            Atom::Two => 1,
        }
    }

    pub(crate) fn height(self, l: f64) -> f64 {
        match self {
            Atom::One => 0.0,
            Atom::Two => l,
        }
    }
}

/// Trajectory family plus the kinematic parameters of the atom pair.
///
/// For [`Family::Circular`] a speed `v = None` denotes the ultrarelativistic
/// limit v → 1 at fixed proper acceleration; such parameters have no finite
/// worldline but are accepted by the spectral layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicParams {
    pub family: Family,
    pub a: f64,
    pub v: Option<f64>,
    pub l: f64,
    pub temperature: Option<f64>,
}

impl KinematicParams {
    pub fn circular(a: f64, v: f64, l: f64) -> Result<Self> {
        let p = KinematicParams {
            family: Family::Circular,
            a,
            v: Some(v),
            l,
            temperature: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn circular_ultra(a: f64, l: f64) -> Result<Self> {
        let p = KinematicParams {
            family: Family::Circular,
            a,
            v: None,
            l,
            temperature: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn uniform(a: f64, l: f64) -> Result<Self> {
        let p = KinematicParams {
            family: Family::Uniform,
            a,
            v: None,
            l,
            temperature: None,
        };
        p.validate()?;
        Ok(p)
    }

    /// Static atoms in a bath at temperature `t` (zero means vacuum).
    pub fn thermal(t: f64, l: f64) -> Result<Self> {
        let p = KinematicParams {
            family: Family::Thermal,
            a: 2.0 * PI * t,
            v: None,
            l,
            temperature: Some(t),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.a, "acceleration")?;
        ensure_finite(self.l, "separation")?;
        if self.l < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "separation must be non-negative, got {}",
                self.l
            )));
        }
        match self.family {
            Family::Circular | Family::Uniform => {
                if self.a <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "acceleration must be positive, got {}",
                        self.a
                    )));
                }
                if let Some(v) = self.v {
                    ensure_finite(v, "speed")?;
                    if !(v > 0.0 && v < 1.0) {
                        return Err(Error::InvalidParameter(format!(
                            "speed must lie in (0, 1), got {v}"
                        )));
                    }
                }
            }
            Family::Thermal => {
                let t = self.temperature.unwrap_or(self.a / (2.0 * PI));
                ensure_finite(t, "temperature")?;
                if t < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "temperature must be non-negative, got {t}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Lorentz factor; infinite in the ultrarelativistic limit.
    pub fn gamma(&self) -> f64 {
        match (self.family, self.v) {
            (Family::Circular, Some(v)) => 1.0 / (1.0 - v * v).sqrt(),
            (Family::Circular, None) => f64::INFINITY,
            _ => 1.0,
        }
    }

    /// Orbit radius R = γ²v²/a.
    pub fn radius(&self) -> f64 {
        match (self.family, self.v) {
            (Family::Circular, Some(v)) => self.gamma().powi(2) * v * v / self.a,
            _ => f64::INFINITY,
        }
    }

    /// Lab-frame angular velocity Ω = v/R.
    pub fn angular_velocity(&self) -> f64 {
        match (self.family, self.v) {
            (Family::Circular, Some(v)) => v / self.radius(),
            _ => 0.0,
        }
    }

    pub fn unruh_temperature(&self) -> f64 {
        self.a / (2.0 * PI)
    }

    /// Bath temperature for the thermal family.
    pub fn temperature(&self) -> f64 {
        self.temperature.unwrap_or_else(|| self.unruh_temperature())
    }

    fn speed(&self) -> Result<f64> {
        self.v.ok_or_else(|| {
            Error::InvalidParameter("the ultrarelativistic limit has no finite worldline".into())
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpacetimeEvent {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl SpacetimeEvent {
    pub fn as_array(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }
}

pub fn worldline(params: &KinematicParams, atom: Atom, tau: f64) -> Result<SpacetimeEvent> {
    ensure_finite(tau, "proper time")?;
    let e = worldline_c(params, atom, C::new(tau, 0.0))?;
    Ok(SpacetimeEvent {
        t: e[0].re,
        x: e[1].re,
        y: e[2].re,
        z: e[3].re,
    })
}

/// Worldline continued to complex proper time.
pub(crate) fn worldline_c(params: &KinematicParams, atom: Atom, tau: C) -> Result<[C; 4]> {
    let z = C::new(atom.height(params.l), 0.0);
    Ok(match params.family {
        Family::Circular => {
            params.speed()?;
            let g = params.gamma();
            let r = params.radius();
            let th = tau * (g * params.angular_velocity());
            [tau * g, th.cos() * r, th.sin() * r, z]
        }
        Family::Uniform => {
            let a = params.a;
            [(tau * a).sinh() / a, (tau * a).cosh() / a, C::new(0.0, 0.0), z]
        }
        Family::Thermal => [tau, C::new(0.0, 0.0), C::new(0.0, 0.0), z],
    })
}

/// Boost matrix Λ taking lab components to the instantaneous rest frame.
pub fn boost_matrix(params: &KinematicParams, tau: f64) -> Result<Matrix4<f64>> {
    ensure_finite(tau, "proper time")?;
    match params.family {
        Family::Circular => {
            let v = params.speed()?;
            let g = params.gamma();
            let th = params.angular_velocity() * g * tau;
            let (nx, ny) = (-th.sin(), th.cos());
            let gb = g * v;
            Ok(Matrix4::new(
                g,
                -gb * nx,
                -gb * ny,
                0.0,
                -gb * nx,
                1.0 + (g - 1.0) * nx * nx,
                (g - 1.0) * nx * ny,
                0.0,
                -gb * ny,
                (g - 1.0) * ny * nx,
                1.0 + (g - 1.0) * ny * ny,
                0.0,
                0.0,
                0.0,
                0.0,
                1.0,
            ))
        }
        Family::Uniform => {
            let (c, s) = ((params.a * tau).cosh(), (params.a * tau).sinh());
            Ok(Matrix4::new(
                c, -s, 0.0, 0.0, -s, c, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0,
            ))
        }
        Family::Thermal => Err(Error::InvalidParameter(
            "static atoms have no boost".into(),
        )),
    }
}

/// Rotation S by the orbital angle Ωγτ.
pub fn rotation_matrix(params: &KinematicParams, tau: f64) -> Result<Matrix3<f64>> {
    ensure_finite(tau, "proper time")?;
    if params.family != Family::Circular {
        return Err(Error::InvalidParameter(
            "rotation matrix is defined for circular orbits only".into(),
        ));
    }
    params.speed()?;
    let th = params.angular_velocity() * params.gamma() * tau;
    let (c, s) = (th.cos(), th.sin());
    Ok(Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
}

/// Comoving tetrad at complex proper time: row 0 is the four-velocity,
/// rows 1..3 the spatial axes (ρ, φ, z) or (x, y, z), all with lab
/// contravariant components.
pub(crate) fn tetrad_c(params: &KinematicParams, tau: C) -> Result<[[C; 4]; 4]> {
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    Ok(match params.family {
        Family::Circular => {
            let v = params.speed()?;
            let g = params.gamma();
            let th = tau * (params.angular_velocity() * g);
            let (c, s) = (th.cos(), th.sin());
            let (nx, ny) = (-s, c);
            let gb = g * v;
            let row0 = [C::new(g, 0.0), nx * gb, ny * gb, zero];
            let row1 = [nx * gb, nx * nx * (g - 1.0) + 1.0, nx * ny * (g - 1.0), zero];
            let row2 = [ny * gb, nx * ny * (g - 1.0), ny * ny * (g - 1.0) + 1.0, zero];
            let mut e1 = [zero; 4];
            let mut e2 = [zero; 4];
            for k in 0..4 {
                e1[k] = c * row1[k] + s * row2[k];
                e2[k] = -s * row1[k] + c * row2[k];
            }
            [row0, e1, e2, [zero, zero, zero, one]]
        }
        Family::Uniform => {
            let (c, s) = ((tau * params.a).cosh(), (tau * params.a).sinh());
            [
                [c, s, zero, zero],
                [s, c, zero, zero],
                [zero, zero, one, zero],
                [zero, zero, zero, one],
            ]
        }
        Family::Thermal => [
            [one, zero, zero, zero],
            [zero, one, zero, zero],
            [zero, zero, one, zero],
            [zero, zero, zero, one],
        ],
    })
}
