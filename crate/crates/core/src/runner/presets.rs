//! Named scenario sets, one per figure panel.
//!
//! Time is measured in 1/Γ₀. Panel shapes, orderings and event counts are
//! the reproduction targets; absolute τ values depend on that convention.

use crate::frames::Family;
use crate::lindblad::{IntegratorControls, InitialState};
use crate::wightman::Axis;

use super::config::{Grid, Polarization, ScenarioConfig, Sweep, SCHEMA_VERSION};

pub const PRESETS: &[(&str, &str)] = &[
    ("fig1-left", "|S>, zz, L = 1, a in {1/4, 1, 2}, all families"),
    ("fig1-right", "|A>, zz, L = 1, a in {1/4, 1, 2}, all families"),
    ("fig2-left", "|S>, phi-phi, L = 1, a in {1/4, 1, 2}, all families"),
    ("fig2-right", "|A>, phi-phi, L = 1, a in {1/4, 1, 2}, all families"),
    ("fig3-left", "|E>, zz, L = 1/2, a in {1/5, 1/2, 6/5}, all families"),
    ("fig3-right", "|E>, phi-phi, L = 1/2, a in {1/5, 1/2, 6/5}, all families"),
    ("fig4-left", "|E>, zz, a = 2/3, max concurrence against L"),
    ("fig4-middle", "|E>, phi-phi, a = 2/3, max concurrence against L"),
    ("fig4-right", "|E>, rho-z, a = 2/3, max concurrence against L"),
    ("fig5-left", "|E>, zz, L = 1/2, max concurrence against a"),
    ("fig5-middle", "|E>, phi-phi, L = 1/2, max concurrence against a"),
    ("fig5-right", "|E>, rho-z, L = 1/2, max concurrence against a"),
    ("fig6-left", "(|A> + sqrt3|S>)/2, zz, a = 1/2, L = 1"),
    ("fig6-right", "(sqrt3|A> + |S>)/2, zz, a = 1/2, L = 1"),
    ("fig7-left", "(|A> + sqrt3|S>)/2, phi-phi, a = 1/2, L = 1"),
    ("fig7-right", "(sqrt3|A> + |S>)/2, phi-phi, a = 1/2, L = 1"),
];

/// Long horizon used where sudden death of the slowest runs must be seen.
pub const LONG_TAU_MAX: f64 = 200.0;
pub const LONG_SAMPLE_INTERVAL: f64 = 0.01;

pub const L_GRID: Grid = Grid::Range {
    min: 0.05,
    max: 3.0,
    count: 60,
};
pub const A_GRID: Grid = Grid::Range {
    min: 0.05,
    max: 3.0,
    count: 60,
};

fn fmt_value(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

#[allow(clippy::too_many_arguments)]
fn scenario(
    prefix: &str,
    family: Family,
    a: f64,
    l: f64,
    pol: (Axis, Axis),
    initial: InitialState,
    tau_max: Option<f64>,
    integrator: IntegratorControls,
) -> ScenarioConfig {
    ScenarioConfig {
        schema_version: SCHEMA_VERSION,
        name: format!("{prefix}-{}-a{}", family.name(), fmt_value(a)),
        family,
        accel: Some(a),
        temperature: None,
        separation: l,
        polarization: [Polarization::Axis(pol.0), Polarization::Axis(pol.1)],
        initial,
        tau_max,
        integrator,
        sweep: None,
        output_dir: None,
    }
}

fn dynamics(
    prefix: &str,
    accels: &[f64],
    l: f64,
    pol: Axis,
    initial: InitialState,
    long: bool,
) -> Vec<ScenarioConfig> {
    let (tau_max, integrator) = if long {
        (
            Some(LONG_TAU_MAX),
            IntegratorControls {
                sample_interval: Some(LONG_SAMPLE_INTERVAL),
                ..Default::default()
            },
        )
    } else {
        (None, IntegratorControls::default())
    };
    let mut out = Vec::new();
    for family in Family::ALL {
        for &a in accels {
            out.push(scenario(prefix, family, a, l, (pol, pol), initial, tau_max, integrator));
        }
    }
    out
}

fn sweeps(prefix: &str, a: f64, l: f64, pol: (Axis, Axis), sweep: Sweep) -> Vec<ScenarioConfig> {
    Family::ALL
        .iter()
        .map(|&family| {
            let mut c = scenario(
                prefix,
                family,
                a,
                l,
                pol,
                InitialState::E,
                None,
                IntegratorControls::default(),
            );
            c.name = format!("{prefix}-{}", family.name());
            c.sweep = Some(sweep.clone());
            c
        })
        .collect()
}

/// Scenarios of a named preset.
pub fn preset(name: &str) -> Option<Vec<ScenarioConfig>> {
    use Axis::{Phi, Rho, Z};
    use InitialState::{Psi, A, E, S};
    let fig12 = [0.25, 1.0, 2.0];
    let fig3 = [0.2, 0.5, 1.2];
    let l_sweep = Sweep {
        separation: Some(L_GRID),
        accel: None,
    };
    let a_sweep = Sweep {
        separation: None,
        accel: Some(A_GRID),
    };
    let v = match name {
        "fig1-left" => dynamics(name, &fig12, 1.0, Z, S, true),
        "fig1-right" => dynamics(name, &fig12, 1.0, Z, A, true),
        "fig2-left" => dynamics(name, &fig12, 1.0, Phi, S, true),
        "fig2-right" => dynamics(name, &fig12, 1.0, Phi, A, true),
        "fig3-left" => dynamics(name, &fig3, 0.5, Z, E, false),
        "fig3-right" => dynamics(name, &fig3, 0.5, Phi, E, false),
        "fig4-left" => sweeps(name, 2.0 / 3.0, 1.0, (Z, Z), l_sweep),
        "fig4-middle" => sweeps(name, 2.0 / 3.0, 1.0, (Phi, Phi), l_sweep),
        "fig4-right" => sweeps(name, 2.0 / 3.0, 1.0, (Rho, Z), l_sweep),
        "fig5-left" => sweeps(name, 1.0, 0.5, (Z, Z), a_sweep),
        "fig5-middle" => sweeps(name, 1.0, 0.5, (Phi, Phi), a_sweep),
        "fig5-right" => sweeps(name, 1.0, 0.5, (Rho, Z), a_sweep),
        "fig6-left" => dynamics(name, &[0.5], 1.0, Z, Psi(0.25), false),
        "fig6-right" => dynamics(name, &[0.5], 1.0, Z, Psi(0.75), false),
        "fig7-left" => dynamics(name, &[0.5], 1.0, Phi, Psi(0.25), false),
        "fig7-right" => dynamics(name, &[0.5], 1.0, Phi, Psi(0.75), false),
        _ => return None,
    };
    Some(v)
}
