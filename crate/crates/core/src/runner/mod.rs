//! Scenario execution, sweeps and batch aggregation.

pub mod config;
pub mod output;
pub mod presets;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::entanglement::{concurrence_series, detect_events_series, EntanglementEvents, DEFAULT_THRESHOLD};
use crate::error::{Error, Result};
use crate::lindblad::{default_tau_max, evolve, initial_state, StateTrajectory};
use crate::spectral::{rates_for, RateCoefficients};

pub use config::{
    load_config, parse_config, BatchConfig, Grid, Polarization, ScenarioConfig, Sweep, SweepAxis,
    SCHEMA_VERSION,
};
pub use presets::{preset, PRESETS};

/// Maximum concurrence above which a sweep point counts as entangled.
pub const WINDOW_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone)]
pub struct ScenarioResult {
    pub config: ScenarioConfig,
    pub rates: RateCoefficients,
    pub trajectory: StateTrajectory,
    pub concurrence: Vec<f64>,
    pub events: EntanglementEvents,
}

/// Rates, evolution and events for one configuration, without I/O.
pub fn simulate(config: &ScenarioConfig) -> Result<ScenarioResult> {
    let go = || -> Result<ScenarioResult> {
        config.validate()?;
        let rates = rates_for(config.source(), &config.dipoles()?)?;
        let rho0 = initial_state(config.initial)?;
        let tau_max = config.tau_max.unwrap_or_else(|| default_tau_max(&rates));
        let trajectory = evolve(&rho0, &rates, tau_max, &config.integrator)?;
        let concurrence = concurrence_series(&trajectory)?;
        let events = detect_events_series(&trajectory.taus, &concurrence, DEFAULT_THRESHOLD);
        Ok(ScenarioResult {
            config: config.clone(),
            rates,
            trajectory,
            concurrence,
            events,
        })
    };
    go().map_err(|e| e.in_scenario(&config.name))
}

fn out_dir(config: &ScenarioConfig, fallback: &Path) -> PathBuf {
    config
        .output_dir
        .clone()
        .unwrap_or_else(|| fallback.to_path_buf())
}

pub fn write_scenario(result: &ScenarioResult, dir: &Path) -> Result<()> {
    let name = &result.config.name;
    output::write(
        &dir.join(format!("{name}.csv")),
        &output::trajectory_csv(&result.trajectory, &result.concurrence),
    )?;
    output::write(
        &dir.join(format!("{name}.events.json")),
        &output::events_json(&result.events)?,
    )?;
    let c = &result.config;
    let (p1, p2) = c.pol_labels();
    let rates = format!(
        "{}\n{}\n",
        output::RATES_HEADER,
        output::rates_row(c.family.name(), c.accel_value(), c.separation, (&p1, &p2), &result.rates)
    );
    output::write(&dir.join(format!("{name}.rates.csv")), &rates)
}

/// Simulate and write `<name>.csv`, `<name>.events.json` and
/// `<name>.rates.csv`.
pub fn run_scenario(config: &ScenarioConfig, default_dir: &Path) -> Result<ScenarioResult> {
    let r = simulate(config)?;
    write_scenario(&r, &out_dir(config, default_dir)).map_err(|e| e.in_scenario(&config.name))?;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub axis_value: f64,
    pub max_concurrence: f64,
    pub arg_max_tau: f64,
    pub entangled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepWindow {
    pub axis: String,
    pub threshold: f64,
    /// First and last grid values with max concurrence above threshold.
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
    pub window: SweepWindow,
}

impl SweepResult {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.max_concurrence).collect()
    }

    pub fn csv(&self) -> String {
        let mut s = String::from(output::SWEEP_HEADER);
        s.push('\n');
        for p in &self.points {
            s.push_str(&format!(
                "{},{},{},{}\n",
                output::num(p.axis_value),
                output::num(p.max_concurrence),
                output::num(p.arg_max_tau),
                p.entangled
            ));
        }
        s
    }
}

fn sweep_from_events(axis: SweepAxis, grid: &[f64], events: &[EntanglementEvents]) -> SweepResult {
    let points: Vec<SweepPoint> = grid
        .iter()
        .zip(events)
        .map(|(&x, e)| SweepPoint {
            axis_value: x,
            max_concurrence: e.max_concurrence,
            arg_max_tau: e.arg_max_tau,
            entangled: e.max_concurrence > WINDOW_THRESHOLD,
        })
        .collect();
    let inside: Vec<f64> = points
        .iter()
        .filter(|p| p.entangled)
        .map(|p| p.axis_value)
        .collect();
    SweepResult {
        axis,
        window: SweepWindow {
            axis: axis.name().to_string(),
            threshold: WINDOW_THRESHOLD,
            lower: inside.first().copied(),
            upper: inside.last().copied(),
        },
        points,
    }
}

/// Sweep points for a configuration that carries a sweep.
pub fn sweep_points(config: &ScenarioConfig) -> Result<(SweepAxis, Vec<f64>, Vec<ScenarioConfig>)> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Config(format!("scenario `{}` has no sweep", config.name)))?;
    let (axis, grid) = sweep.axis()?;
    let values = grid.points()?;
    let configs = values
        .iter()
        .enumerate()
        .map(|(k, &v)| config.at_point(axis, v, k))
        .collect();
    Ok((axis, values, configs))
}

/// Maximum concurrence over each grid point of the sweep, evaluated in
/// parallel on the current rayon pool.
pub fn sweep_max_concurrence(config: &ScenarioConfig) -> Result<SweepResult> {
    config.validate()?;
    let (axis, values, configs) = sweep_points(config)?;
    let events: Vec<EntanglementEvents> = configs
        .par_iter()
        .map(|c| simulate(c).map(|r| r.events))
        .collect::<Result<_>>()?;
    Ok(sweep_from_events(axis, &values, &events))
}

pub fn write_sweep(name: &str, sweep: &SweepResult, dir: &Path) -> Result<()> {
    output::write(&dir.join(format!("{name}.sweep.csv")), &sweep.csv())?;
    let mut w = serde_json::to_string_pretty(&sweep.window)?;
    w.push('\n');
    output::write(&dir.join(format!("{name}.window.json")), &w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub family: String,
    pub a: f64,
    pub l: f64,
    pub pol1: String,
    pub pol2: String,
    pub initial: String,
    pub events: Option<EntanglementEvents>,
    /// `ok` or the error message.
    pub status: String,
}

impl SummaryRow {
    fn new(config: &ScenarioConfig, outcome: &Result<ScenarioResult>) -> Self {
        let (pol1, pol2) = config.pol_labels();
        let (events, status) = match outcome {
            Ok(r) => (Some(r.events.clone()), "ok".to_string()),
            Err(e) => (None, format!("error: {e}")),
        };
        SummaryRow {
            family: config.family.name().to_string(),
            a: config.accel_value(),
            l: config.separation,
            pol1,
            pol2,
            initial: config.initial.label(),
            events,
            status,
        }
    }

    pub fn csv(&self) -> String {
        let head = format!(
            "{},{},{},{},{},{}",
            self.family,
            output::num(self.a),
            output::num(self.l),
            output::field(&self.pol1),
            output::field(&self.pol2),
            self.initial
        );
        let body = match &self.events {
            Some(e) => format!(
                "{},{},{},{},{},{}",
                output::num(e.max_concurrence),
                output::num(e.arg_max_tau),
                output::opt_num(e.death),
                output::opt_num(e.birth),
                e.revivals.len(),
                e.enhanced
            ),
            None => ",,,,,".to_string(),
        };
        format!("{head},{body},{}", output::field(&self.status))
    }
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut s = String::from(output::SUMMARY_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv());
        s.push('\n');
    }
    s
}

#[derive(Debug)]
pub struct BatchReport {
    pub rows: Vec<SummaryRow>,
    pub failures: Vec<Error>,
}

impl BatchReport {
    pub fn summary(&self) -> String {
        summary_csv(&self.rows)
    }
}

enum Job {
    Single(ScenarioConfig),
    Sweep {
        parent: ScenarioConfig,
        axis: SweepAxis,
        values: Vec<f64>,
        points: Vec<ScenarioConfig>,
    },
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))
}

/// Run independent scenarios on a pool of `workers` threads and aggregate one
/// summary row per run; sweeps contribute one row per grid point. Failures
/// are recorded in their row and do not stop the batch. The output is
/// identical for any worker count.
pub fn parallel_grid(configs: &[ScenarioConfig], workers: usize) -> Result<Vec<(ScenarioConfig, Result<ScenarioResult>)>> {
    let pool = pool(workers)?;
    Ok(pool.install(|| {
        configs
            .par_iter()
            .map(|c| (c.clone(), simulate(c)))
            .collect()
    }))
}

/// Execute a batch and write every artifact plus `summary.csv` under
/// `default_dir` (or each scenario's own `output_dir`).
pub fn run_batch(configs: &[ScenarioConfig], workers: usize, default_dir: &Path) -> Result<BatchReport> {
    let mut jobs = Vec::new();
    for c in configs {
        c.validate().map_err(|e| e.in_scenario(&c.name))?;
        if c.sweep.is_some() {
            let (axis, values, points) = sweep_points(c).map_err(|e| e.in_scenario(&c.name))?;
            jobs.push(Job::Sweep {
                parent: c.clone(),
                axis,
                values,
                points,
            });
        } else {
            jobs.push(Job::Single(c.clone()));
        }
    }
    let flat: Vec<ScenarioConfig> = jobs
        .iter()
        .flat_map(|j| match j {
            Job::Single(c) => vec![c.clone()],
            Job::Sweep { points, .. } => points.clone(),
        })
        .collect();
    let mut results = parallel_grid(&flat, workers)?.into_iter();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for job in jobs {
        match job {
            Job::Single(c) => {
                let (c2, r) = results.next().expect("one result per job");
                rows.push(SummaryRow::new(&c2, &r));
                match r {
                    Ok(res) => {
                        if let Err(e) = write_scenario(&res, &out_dir(&c, default_dir)) {
                            failures.push(e.in_scenario(&c.name));
                        }
                    }
                    Err(e) => failures.push(e),
                }
            }
            Job::Sweep {
                parent,
                axis,
                values,
                points,
            } => {
                let mut events = Vec::new();
                let mut failed = false;
                for _ in &points {
                    let (c2, r) = results.next().expect("one result per sweep point");
                    rows.push(SummaryRow::new(&c2, &r));
                    match r {
                        Ok(res) => events.push(res.events),
                        Err(e) => {
                            failed = true;
                            failures.push(e);
                        }
                    }
                }
                if !failed {
                    let sweep = sweep_from_events(axis, &values, &events);
                    if let Err(e) = write_sweep(&parent.name, &sweep, &out_dir(&parent, default_dir)) {
                        failures.push(e.in_scenario(&parent.name));
                    }
                }
            }
        }
    }
    let report = BatchReport { rows, failures };
    output::write(&default_dir.join("summary.csv"), &report.summary())?;
    Ok(report)
}
