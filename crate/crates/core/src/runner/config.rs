//! JSON scenario configuration.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::frames::Family;
use crate::lindblad::{IntegratorControls, InitialState};
use crate::spectral::{DipoleConfig, Source};
use crate::wightman::{Axis, DEFAULT_IMAGES};

pub const SCHEMA_VERSION: u32 = 1;

/// A dipole direction: an axis name or a real unit vector in the comoving
/// (ρ, φ, z) or (x, y, z) basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Polarization {
    Axis(Axis),
    Vector([f64; 3]),
}

impl Polarization {
    pub fn vector(&self) -> [f64; 3] {
        match *self {
            Polarization::Axis(a) => {
                let mut v = [0.0; 3];
                v[a.index()] = 1.0;
                v
            }
            Polarization::Vector(v) => v,
        }
    }

    pub fn label(&self, family: Family) -> String {
        match self {
            Polarization::Axis(a) => a.label(family).to_string(),
            Polarization::Vector(v) => format!("[{},{},{}]", v[0], v[1], v[2]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Range { min: f64, max: f64, count: usize },
    Values { values: Vec<f64> },
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match self {
            Grid::Range { min, max, count } => match *count {
                0 => Vec::new(),
                1 => vec![*min],
                n => (0..n)
                    .map(|k| min + (max - min) * k as f64 / (n - 1) as f64)
                    .collect(),
            },
            Grid::Values { values } => values.clone(),
        };
        if pts.is_empty() {
            return Err(Error::Config("sweep grid is empty".into()));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("sweep grid has non-finite values".into()));
        }
        if pts.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("sweep grid must be strictly increasing".into()));
        }
        Ok(pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    Separation,
    Accel,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Separation => "L",
            SweepAxis::Accel => "a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<Grid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accel: Option<Grid>,
}

impl Sweep {
    pub fn axis(&self) -> Result<(SweepAxis, &Grid)> {
        match (&self.separation, &self.accel) {
            (Some(g), None) => Ok((SweepAxis::Separation, g)),
            (None, Some(g)) => Ok((SweepAxis::Accel, g)),
            (Some(_), Some(_)) => Err(Error::Config("only one sweep axis may be set".into())),
            (None, None) => Err(Error::Config("sweep has no axis".into())),
        }
    }
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub name: String,
    pub family: Family,
    /// Proper acceleration in units of ω; for the thermal family it sets the
    /// bath temperature a/2π unless `temperature` is given.
    #[serde(default)]
    pub accel: Option<f64>,
    #[serde(default)]
    pub temperature: Option<f64>,
    pub separation: f64,
    pub polarization: [Polarization; 2],
    pub initial: InitialState,
    #[serde(default)]
    pub tau_max: Option<f64>,
    #[serde(default)]
    pub integrator: IntegratorControls,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchConfig {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub scenarios: Vec<ScenarioConfig>,
}

/// Parse a single scenario or a batch `{"scenarios": [...]}`.
pub fn parse_config(text: &str) -> Result<Vec<ScenarioConfig>> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let list = if value.get("scenarios").is_some() {
        let b: BatchConfig = serde_json::from_value(value)?;
        if b.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {}",
                b.schema_version
            )));
        }
        b.scenarios
    } else {
        vec![serde_json::from_value::<ScenarioConfig>(value)?]
    };
    for c in &list {
        c.validate()?;
    }
    Ok(list)
}

pub fn load_config(path: &Path) -> Result<Vec<ScenarioConfig>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} must be positive and finite, got {x}")))
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c))
        {
            return Err(Error::Config(format!(
                "scenario name `{}` must be non-empty and use [A-Za-z0-9._-]",
                self.name
            )));
        }
        match (self.family, self.accel, self.temperature) {
            (Family::Thermal, _, Some(t)) => {
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(Error::Config(format!("temperature must be >= 0, got {t}")));
                }
                if let Some(a) = self.accel {
                    positive(a, "accel")?;
                }
            }
            (_, Some(a), None) => positive(a, "accel")?,
            (Family::Thermal, None, None) => {
                return Err(Error::Config("thermal family needs accel or temperature".into()))
            }
            (_, None, _) => return Err(Error::Config("accel is required".into())),
            (_, Some(_), Some(_)) => {
                return Err(Error::Config(
                    "temperature is only meaningful for the thermal family".into(),
                ))
            }
        }
        positive(self.separation, "separation")?;
        for p in &self.polarization {
            let v = p.vector();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::Config(format!("polarization {v:?} is not a unit vector")));
            }
        }
        if let InitialState::Psi(p) = self.initial {
            if !(p > 0.0 && p < 1.0) {
                return Err(Error::Config(format!("psi weight must lie in (0, 1), got {p}")));
            }
        }
        if let Some(t) = self.tau_max {
            positive(t, "tau_max")?;
        }
        let c = &self.integrator;
        positive(c.rtol, "rtol")?;
        positive(c.atol, "atol")?;
        if let Some(dt) = c.sample_interval {
            positive(dt, "sample_interval")?;
        }
        if let Some(s) = &self.sweep {
            let (axis, grid) = s.axis()?;
            let pts = grid.points()?;
            if pts[0] <= 0.0 {
                return Err(Error::Config(format!("{} grid must be positive", axis.name())));
            }
            if axis == SweepAxis::Accel && self.temperature.is_some() {
                return Err(Error::Config(
                    "an accel sweep cannot be combined with an explicit temperature".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn accel_value(&self) -> f64 {
        match (self.accel, self.temperature) {
            (_, Some(t)) => 2.0 * PI * t,
            (Some(a), None) => a,
            (None, None) => f64::NAN,
        }
    }

    pub fn source(&self) -> Source {
        match (self.family, self.temperature) {
            (Family::Thermal, Some(t)) => Source::Thermal {
                t,
                l: self.separation,
                images: DEFAULT_IMAGES,
            },
            (f, _) => Source::for_family(f, self.accel_value(), self.separation),
        }
    }

    pub fn dipoles(&self) -> Result<DipoleConfig> {
        DipoleConfig::real(self.polarization[0].vector(), self.polarization[1].vector())
    }

    /// The same scenario at one sweep value, without the sweep.
    pub fn at_point(&self, axis: SweepAxis, value: f64, index: usize) -> ScenarioConfig {
        let mut c = self.clone();
        c.sweep = None;
        c.name = format!("{}-{}{:03}", self.name, axis.name(), index);
        match axis {
            SweepAxis::Separation => c.separation = value,
            SweepAxis::Accel => c.accel = Some(value),
        }
        c
    }

    pub fn pol_labels(&self) -> (String, String) {
        (
            self.polarization[0].label(self.family),
            self.polarization[1].label(self.family),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "schema_version": 1, "name": "t", "family": "circular", "accel": 1.0,
        "separation": 1.0, "polarization": ["z", "phi"], "initial": "S"
    }"#;

    #[test]
    fn parses_minimal() {
        let c = parse_config(BASE).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].polarization[1], Polarization::Axis(Axis::Phi));
        assert_eq!(c[0].integrator, IntegratorControls::default());
    }

    #[test]
    fn cartesian_aliases_map_to_comoving_axes() {
        let t = BASE.replace(r#"["z", "phi"]"#, r#"["x", "y"]"#);
        let c = parse_config(&t).unwrap();
        assert_eq!(c[0].polarization[0], Polarization::Axis(Axis::Rho));
        assert_eq!(c[0].polarization[1], Polarization::Axis(Axis::Phi));
    }

    #[test]
    fn psi_and_vector_forms() {
        let t = BASE
            .replace(r#""S""#, r#"{"psi": 0.25}"#)
            .replace(r#"["z", "phi"]"#, r#"[[0.6, 0.0, 0.8], "z"]"#);
        let c = parse_config(&t).unwrap();
        assert_eq!(c[0].initial, InitialState::Psi(0.25));
        assert_eq!(c[0].polarization[0].vector(), [0.6, 0.0, 0.8]);
    }

    #[test]
    fn both_sweep_axes_rejected() {
        let t = BASE.replace(
            r#""initial": "S""#,
            r#""initial": "E", "sweep": {"separation": {"min": 0.1, "max": 1.0, "count": 3},
                "accel": {"values": [0.5, 1.0]}}"#,
        );
        let e = parse_config(&t).unwrap_err();
        assert!(e.is_config());
    }

    #[test]
    fn grids_must_increase() {
        assert!(Grid::Values { values: vec![1.0, 0.5] }.points().is_err());
        assert!(Grid::Range { min: 0.0, max: 1.0, count: 0 }.points().is_err());
        let g = Grid::Range { min: 0.0, max: 1.0, count: 5 }.points().unwrap();
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn validation_errors() {
        for (from, to) in [
            (r#""accel": 1.0"#, r#""accel": -1.0"#),
            (r#""separation": 1.0"#, r#""separation": 0.0"#),
            (r#""schema_version": 1"#, r#""schema_version": 7"#),
            (r#"["z", "phi"]"#, r#"[[1.0, 1.0, 0.0], "z"]"#),
            (r#""S""#, r#"{"psi": 1.5}"#),
            (r#""name": "t""#, r#""name": "a/b""#),
        ] {
            let t = BASE.replace(from, to);
            let e = parse_config(&t).unwrap_err();
            assert!(e.is_config(), "{to}");
        }
    }

    #[test]
    fn unknown_field_is_rejected() {
        let t = BASE.replace(r#""initial": "S""#, r#""initial": "S", "colour": 3"#);
        assert!(parse_config(&t).is_err());
    }

    #[test]
    fn thermal_with_explicit_temperature() {
        let t = BASE
            .replace(r#""circular""#, r#""thermal""#)
            .replace(r#""accel": 1.0"#, r#""temperature": 0.2"#);
        let c = parse_config(&t).unwrap();
        match c[0].source() {
            Source::Thermal { t, .. } => assert_eq!(t, 0.2),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn batch_form() {
        let t = format!(r#"{{"schema_version": 1, "scenarios": [{BASE}, {BASE}]}}"#);
        assert_eq!(parse_config(&t).unwrap().len(), 2);
        let empty = r#"{"schema_version": 1, "scenarios": []}"#;
        assert!(parse_config(empty).unwrap().is_empty());
    }
}
