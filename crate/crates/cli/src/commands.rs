//! Command implementations shared by the binary and the tests.
//!
//! Every command is deterministic given the config and seeds; re-running
//! overwrites its output files byte-identically.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use msar_core::drift;
use msar_core::eval::write_series_csv;
use msar_core::metrics::write_pos_curve_csv;
use msar_core::mission::write_trajectory_csv;
use msar_core::sensor::{self, Task, ViewGeometry};
use msar_core::{
    area_series, evaluate_mission, init_ensemble, optimal_altitude, poc, pos_curve,
    simulate_with_snapshots, EvalResult, FreeSpaceVerdict,
};

use crate::config::ToolConfig;
use crate::CliError;

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub runs: Option<usize>,
}

impl Overrides {
    fn apply(&self, config: &ToolConfig) -> ToolConfig {
        let mut config = config.clone();
        if let Some(seed) = self.seed {
            config.run.master_seed = seed;
        }
        if let Some(runs) = self.runs {
            config.run.m_runs = runs;
        }
        config
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn prefixed(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(suffix);
    prefix.with_file_name(name)
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Io(format!("JSON encoding failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// `pod-curve`: detection / recognition / identification probability versus
/// altitude, CSV columns `altitude_m,p_detection,p_recognition,p_identification`.
pub fn cmd_pod_curve(
    config: &ToolConfig,
    h_min: f64,
    h_max: f64,
    samples: usize,
    out: &Path,
) -> Result<(), CliError> {
    if !(h_min > 0.0 && h_min < h_max) {
        return Err(CliError::Config(format!(
            "altitude range must satisfy 0 < h_min < h_max, got [{h_min}, {h_max}]"
        )));
    }
    if samples < 2 {
        return Err(CliError::Config(format!(
            "pod-curve needs at least 2 samples, got {samples}"
        )));
    }
    let camera = config.build_camera()?;
    let target = config.build_target()?;
    let mut csv = Vec::new();
    writeln!(csv, "altitude_m,p_detection,p_recognition,p_identification").unwrap();
    let step = (h_max - h_min) / (samples - 1) as f64;
    for i in 0..samples {
        let h = if i == samples - 1 { h_max } else { h_min + i as f64 * step };
        let view = ViewGeometry::nadir(h).map_err(|e| CliError::Config(e.to_string()))?;
        let p = |task| {
            sensor::pod_at_altitude(&camera, &target, &view, task)
                .map_err(|e| CliError::Config(e.to_string()))
        };
        writeln!(
            csv,
            "{},{},{},{}",
            h,
            p(Task::Detection)?,
            p(Task::Recognition)?,
            p(Task::Identification)?
        )
        .unwrap();
    }
    write_file(out, &csv)
}

/// Summary returned by [`cmd_drift`].
#[derive(Debug, Clone, Serialize)]
pub struct DriftSummary {
    pub duration_s: f64,
    pub particle_count: usize,
    pub final_width_m: f64,
    pub final_height_m: f64,
    pub final_center_m: [f64; 2],
}

/// `drift`: run the leeway simulation, writing `<prefix>_particles.csv`
/// (snapshots roughly every tenth of the duration) and `<prefix>_area.csv`
/// (bounding area per step).
pub fn cmd_drift(
    config: &ToolConfig,
    duration: Option<f64>,
    overrides: Overrides,
    out_prefix: &Path,
) -> Result<DriftSummary, CliError> {
    let config = overrides.apply(config);
    let duration = duration.unwrap_or(config.search.drift_lead_s);
    if !(duration > 0.0) {
        return Err(CliError::Config(format!(
            "drift duration must be positive, got {duration}"
        )));
    }
    let uncertainty = config.build_uncertainty()?;
    let environment = config.build_environment()?;
    let ensemble = init_ensemble(&uncertainty, config.run.particle_count, config.run.master_seed)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let snapshots = simulate_with_snapshots(&ensemble, &environment, duration, config.run.drift_dt_s)
        .map_err(|e| CliError::Config(e.to_string()))?;

    // particle snapshots at ~10 evenly spaced times, always including the
    // initial and final states
    let stride = ((snapshots.len() - 1) / 10).max(1);
    let mut kept = Vec::new();
    for (i, snap) in snapshots.iter().enumerate() {
        if i % stride == 0 || i == snapshots.len() - 1 {
            kept.push(snap.clone());
        }
    }
    let mut particles_csv = Vec::new();
    drift::write_snapshots_csv(&mut particles_csv, &kept)
        .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&prefixed(out_prefix, "_particles.csv"), &particles_csv)?;

    let series = area_series(&snapshots, config.search.area_quantile)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut area_csv = Vec::new();
    drift::write_area_series_csv(&mut area_csv, &series)
        .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&prefixed(out_prefix, "_area.csv"), &area_csv)?;

    let (_, last_area) = series.last().expect("non-empty snapshot series");
    Ok(DriftSummary {
        duration_s: duration,
        particle_count: config.run.particle_count,
        final_width_m: last_area.width(),
        final_height_m: last_area.height(),
        final_center_m: [last_area.center().x, last_area.center().y],
    })
}

/// JSON report written by [`cmd_optimal_altitude`].
#[derive(Debug, Clone, Serialize)]
pub struct OptimalAltitudeReport {
    pub h_star_m: f64,
    pub pos_star: f64,
    pub tied: bool,
    pub pod_at_h_star: f64,
    pub poc_at_h_star: f64,
    pub gsd_h_m_per_px: f64,
    pub pixels_on_target: f64,
    pub max_coverage_speed_mps: f64,
    pub area_width_m: f64,
    pub area_height_m: f64,
}

/// `optimal-altitude`: POS-maximizing altitude plus the full POS curve,
/// writing `<prefix>.json` and `<prefix>_curve.csv`.
pub fn cmd_optimal_altitude(
    config: &ToolConfig,
    h_min: Option<f64>,
    h_max: Option<f64>,
    out_prefix: &Path,
) -> Result<OptimalAltitudeReport, CliError> {
    let h_min = h_min.unwrap_or(config.mission.h_min_m);
    let h_max = h_max.unwrap_or(config.mission.h_max_m);
    if !(h_min > 0.0 && h_min < h_max) {
        return Err(CliError::Config(format!(
            "altitude range must satisfy 0 < h_min < h_max, got [{h_min}, {h_max}]"
        )));
    }
    let camera = config.build_camera()?;
    let target = config.build_target()?;
    let area = config.resolve_search_area()?;
    let best = optimal_altitude(
        &camera,
        &target,
        &area,
        h_min,
        h_max,
        config.mission.altitude_tolerance_m,
    )
    .map_err(|e| CliError::Config(e.to_string()))?;

    let curve = pos_curve(&camera, &target, &area, h_min, h_max, 512)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut curve_csv = Vec::new();
    write_pos_curve_csv(&mut curve_csv, &curve).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&prefixed(out_prefix, "_curve.csv"), &curve_csv)?;

    let view = ViewGeometry::nadir(best.altitude).map_err(|e| CliError::Config(e.to_string()))?;
    let gsd_h = sensor::gsd(&camera, &view, sensor::Axis::Horizontal)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let footprint = sensor::footprint(&camera, &view).map_err(|e| CliError::Config(e.to_string()))?;
    let report = OptimalAltitudeReport {
        h_star_m: best.altitude,
        pos_star: best.pos,
        tied: best.tied,
        pod_at_h_star: sensor::pod_at_altitude(&camera, &target, &view, Task::Detection)
            .map_err(|e| CliError::Config(e.to_string()))?,
        poc_at_h_star: poc(footprint, &area).map_err(|e| CliError::Config(e.to_string()))?,
        gsd_h_m_per_px: gsd_h,
        pixels_on_target: sensor::pixels_on_target(&target, gsd_h)
            .map_err(|e| CliError::Config(e.to_string()))?,
        max_coverage_speed_mps: sensor::max_coverage_speed(&camera, &view)
            .map_err(|e| CliError::Config(e.to_string()))?,
        area_width_m: area.width(),
        area_height_m: area.height(),
    };
    write_file(&prefixed(out_prefix, ".json"), &to_pretty_json(&report)?)?;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioEcho {
    pub pattern: String,
    pub n_targets: usize,
    pub altitude_m: f64,
    pub speed_mps: f64,
    pub area_width_m: f64,
    pub area_height_m: f64,
    pub t0_s: f64,
    pub tf_s: f64,
    pub detection_interval_s: f64,
    pub survival_time_s: Option<f64>,
    pub rescue_delay_s: f64,
    pub drift_lead_s: f64,
    pub master_seed: u64,
    pub m_runs: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstraintEcho {
    pub free_space_pass: bool,
    pub free_space_violation: Option<FreeSpaceViolationEcho>,
    pub dynamics_pass: bool,
    pub max_dynamics_residual: f64,
    pub energy_pass: bool,
    pub energy_used_j: f64,
    pub energy_budget_j: f64,
    pub all_pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeSpaceViolationEcho {
    pub time_s: f64,
    pub x_m: f64,
    pub y_m: f64,
    pub obstacle_index: usize,
}

/// JSON report written by [`cmd_evaluate`].
#[derive(Debug, Clone, Serialize)]
pub struct EvaluateReport {
    pub scenario: ScenarioEcho,
    pub objective_j_s: f64,
    pub objective_j_stderr_s: f64,
    pub expected_saved_final: f64,
    pub constraints: ConstraintEcho,
}

fn constraint_echo(result: &EvalResult) -> ConstraintEcho {
    let violation = match result.verdicts.free_space {
        FreeSpaceVerdict::Pass => None,
        FreeSpaceVerdict::Violation {
            time,
            position,
            obstacle_index,
        } => Some(FreeSpaceViolationEcho {
            time_s: time,
            x_m: position.x,
            y_m: position.y,
            obstacle_index,
        }),
    };
    ConstraintEcho {
        free_space_pass: result.verdicts.free_space.passed(),
        free_space_violation: violation,
        dynamics_pass: result.verdicts.dynamics.pass,
        max_dynamics_residual: result.verdicts.dynamics.max_position_residual,
        energy_pass: result.verdicts.energy.pass,
        energy_used_j: result.verdicts.energy.used,
        energy_budget_j: result.verdicts.energy.budget,
        all_pass: result.verdicts.all_pass(),
    }
}

/// `evaluate`: Monte Carlo estimate of the rescue objective for the
/// configured mission, writing `<prefix>.json`, `<prefix>_series.csv`,
/// `<prefix>_trajectory.csv` and `<prefix>_trajectory_meta.json`.
///
/// Constraint violations are reported in the JSON (and via exit code 2),
/// never silently dropped.
pub fn cmd_evaluate(
    config: &ToolConfig,
    overrides: Overrides,
    out_prefix: &Path,
) -> Result<EvaluateReport, CliError> {
    let config = overrides.apply(config);
    let resolved = config.resolve()?;
    let scenario = &resolved.scenario;
    let result = evaluate_mission(scenario, config.run.m_runs)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let mut series_csv = Vec::new();
    write_series_csv(&mut series_csv, &result.series).map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&prefixed(out_prefix, "_series.csv"), &series_csv)?;

    let mut traj_csv = Vec::new();
    write_trajectory_csv(&mut traj_csv, &scenario.trajectory)
        .map_err(|e| CliError::Io(e.to_string()))?;
    write_file(&prefixed(out_prefix, "_trajectory.csv"), &traj_csv)?;
    write_file(
        &prefixed(out_prefix, "_trajectory_meta.json"),
        &to_pretty_json(&scenario.trajectory.meta())?,
    )?;

    let report = EvaluateReport {
        scenario: ScenarioEcho {
            pattern: config.mission.pattern.clone(),
            n_targets: scenario.n_targets,
            altitude_m: resolved.altitude,
            speed_mps: config.mission.speed_mps,
            area_width_m: resolved.area.width(),
            area_height_m: resolved.area.height(),
            t0_s: scenario.t0,
            tf_s: scenario.tf,
            detection_interval_s: scenario.detection_interval,
            survival_time_s: scenario.survival_time,
            rescue_delay_s: config.mission.rescue_delay_s,
            drift_lead_s: scenario.drift_lead,
            master_seed: scenario.master_seed,
            m_runs: result.m_runs,
        },
        objective_j_s: result.objective_j,
        objective_j_stderr_s: result.objective_j_stderr,
        expected_saved_final: *result.series.mean.last().unwrap_or(&0.0),
        constraints: constraint_echo(&result),
    };
    write_file(&prefixed(out_prefix, ".json"), &to_pretty_json(&report)?)?;
    Ok(report)
}

/// One row of the comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct CompareRow {
    pub rank: usize,
    pub config: String,
    pub objective_j_s: f64,
    pub objective_j_stderr_s: f64,
    pub expected_saved_final: f64,
    pub constraints_pass: bool,
}

/// `compare`: evaluate several configs (sharing any seed/runs overrides) and
/// write a ranking table CSV sorted ascending by objective J.
pub fn cmd_compare(
    configs: &[(String, ToolConfig)],
    overrides: Overrides,
    out: &Path,
) -> Result<Vec<CompareRow>, CliError> {
    if configs.is_empty() {
        return Err(CliError::Config("compare needs at least one config".into()));
    }
    let mut rows = Vec::with_capacity(configs.len());
    for (name, config) in configs {
        let config = overrides.apply(config);
        let resolved = config.resolve()?;
        let result = evaluate_mission(&resolved.scenario, config.run.m_runs)
            .map_err(|e| CliError::Config(format!("{name}: {e}")))?;
        rows.push(CompareRow {
            rank: 0,
            config: name.clone(),
            objective_j_s: result.objective_j,
            objective_j_stderr_s: result.objective_j_stderr,
            expected_saved_final: *result.series.mean.last().unwrap_or(&0.0),
            constraints_pass: result.verdicts.all_pass(),
        });
    }
    rows.sort_by(|a, b| a.objective_j_s.total_cmp(&b.objective_j_s));
    for (i, row) in rows.iter_mut().enumerate() {
        row.rank = i + 1;
    }

    let mut csv = Vec::new();
    writeln!(
        csv,
        "rank,config,objective_j_s,objective_j_stderr_s,expected_saved_final,constraints_pass"
    )
    .unwrap();
    for row in &rows {
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            row.rank,
            row.config,
            row.objective_j_s,
            row.objective_j_stderr_s,
            row.expected_saved_final,
            row.constraints_pass
        )
        .unwrap();
    }
    write_file(out, &csv)?;
    Ok(rows)
}
