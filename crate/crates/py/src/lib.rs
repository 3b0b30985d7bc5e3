//! Python bindings for the MSAR planning toolkit.
//!
//! Exposes the sensing model, the altitude optimizer, the drift kernel and
//! config-driven mission evaluation. Build with
//! `cargo build -p msar-py --release` and import the resulting shared
//! library as `msar` (see `python/smoke_test.py`).

use std::path::Path;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use msar_cli::ToolConfig;
use msar_core::sensor::{self, Axis, Task, ViewGeometry};
use msar_core::{
    bounding_area, evaluate_mission, init_ensemble, optimal_altitude as core_optimal_altitude,
    pos_curve as core_pos_curve, simulate, EnvironmentConditions, FreeSpaceVerdict,
    InitialUncertainty, SearchArea, Vec2,
};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_task(task: &str) -> PyResult<Task> {
    match task {
        "detection" => Ok(Task::Detection),
        "recognition" => Ok(Task::Recognition),
        "identification" => Ok(Task::Identification),
        other => Err(PyValueError::new_err(format!(
            "task must be \"detection\", \"recognition\" or \"identification\", got {other:?}"
        ))),
    }
}

/// Thermal camera geometry and framerate. Fields of view are degrees here
/// (radians internally).
#[pyclass(name = "CameraSpec")]
#[derive(Clone)]
struct PyCameraSpec {
    inner: sensor::CameraSpec,
}

#[pymethods]
impl PyCameraSpec {
    #[new]
    #[pyo3(signature = (fov_h_deg, fov_v_deg, px_h, px_v, framerate_hz=50.0, emissivity=0.98))]
    fn new(
        fov_h_deg: f64,
        fov_v_deg: f64,
        px_h: u32,
        px_v: u32,
        framerate_hz: f64,
        emissivity: f64,
    ) -> PyResult<Self> {
        Ok(PyCameraSpec {
            inner: sensor::CameraSpec::with_fov_degrees(
                fov_h_deg,
                fov_v_deg,
                px_h,
                px_v,
                framerate_hz,
                emissivity,
            )
            .map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "CameraSpec(fov_h_deg={:.3}, fov_v_deg={:.3}, px_h={}, px_v={}, framerate_hz={}, emissivity={})",
            self.inner.fov_h.to_degrees(),
            self.inner.fov_v.to_degrees(),
            self.inner.px_h,
            self.inner.px_v,
            self.inner.framerate,
            self.inner.emissivity_setting,
        )
    }
}

/// Person-in-water dimensions and Johnson n50 thresholds.
#[pyclass(name = "TargetModel")]
#[derive(Clone)]
struct PyTargetModel {
    inner: sensor::TargetModel,
}

#[pymethods]
impl PyTargetModel {
    #[new]
    #[pyo3(signature = (width_m=0.5, height_m=0.5, d_c_m=None, n50_detection=0.75, n50_recognition=3.0, n50_identification=6.0))]
    fn new(
        width_m: f64,
        height_m: f64,
        d_c_m: Option<f64>,
        n50_detection: f64,
        n50_recognition: f64,
        n50_identification: f64,
    ) -> PyResult<Self> {
        let d_c = d_c_m.unwrap_or_else(|| (width_m * height_m).sqrt());
        Ok(PyTargetModel {
            inner: sensor::TargetModel::new(
                width_m,
                height_m,
                d_c,
                n50_detection,
                n50_recognition,
                n50_identification,
            )
            .map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "TargetModel(width_m={}, height_m={}, d_c_m={}, n50=({}, {}, {}))",
            self.inner.width,
            self.inner.height,
            self.inner.d_c,
            self.inner.n50_detection,
            self.inner.n50_recognition,
            self.inner.n50_identification,
        )
    }
}

/// Johnson target transfer probability for `n` cycles against `n50`.
#[pyfunction]
fn johnson_probability(n: f64, n50: f64) -> PyResult<f64> {
    sensor::johnson_probability(n, n50).map_err(value_err)
}

/// Ground sample distance (m/px) at nadir for the given axis
/// ("horizontal" or "vertical").
#[pyfunction]
#[pyo3(signature = (camera, altitude_m, axis="horizontal"))]
fn gsd(camera: &PyCameraSpec, altitude_m: f64, axis: &str) -> PyResult<f64> {
    let axis = match axis {
        "horizontal" => Axis::Horizontal,
        "vertical" => Axis::Vertical,
        other => {
            return Err(PyValueError::new_err(format!(
                "axis must be \"horizontal\" or \"vertical\", got {other:?}"
            )))
        }
    };
    let view = ViewGeometry::nadir(altitude_m).map_err(value_err)?;
    sensor::gsd(&camera.inner, &view, axis).map_err(value_err)
}

/// Probability of completing the given task at a nadir altitude.
#[pyfunction]
#[pyo3(signature = (camera, target, altitude_m, task="detection"))]
fn pod_at_altitude(
    camera: &PyCameraSpec,
    target: &PyTargetModel,
    altitude_m: f64,
    task: &str,
) -> PyResult<f64> {
    let view = ViewGeometry::nadir(altitude_m).map_err(value_err)?;
    sensor::pod_at_altitude(&camera.inner, &target.inner, &view, parse_task(task)?)
        .map_err(value_err)
}

/// Ground footprint (FS_H, FS_V) in meters at a nadir altitude.
#[pyfunction]
fn footprint(camera: &PyCameraSpec, altitude_m: f64) -> PyResult<(f64, f64)> {
    let view = ViewGeometry::nadir(altitude_m).map_err(value_err)?;
    sensor::footprint(&camera.inner, &view).map_err(value_err)
}

/// Linear pixels spanned by the target at the given GSD.
#[pyfunction]
fn pixels_on_target(target: &PyTargetModel, gsd_m_per_px: f64) -> PyResult<f64> {
    sensor::pixels_on_target(&target.inner, gsd_m_per_px).map_err(value_err)
}

/// Framerate-limited upper bound on search speed for gap-free coverage.
#[pyfunction]
fn max_coverage_speed(camera: &PyCameraSpec, altitude_m: f64) -> PyResult<f64> {
    let view = ViewGeometry::nadir(altitude_m).map_err(value_err)?;
    sensor::max_coverage_speed(&camera.inner, &view).map_err(value_err)
}

/// Detection/recognition/identification probabilities on an altitude grid;
/// returns rows of (altitude_m, p_detection, p_recognition, p_identification).
#[pyfunction]
#[pyo3(signature = (camera, target, h_min=10.0, h_max=1000.0, samples=100))]
fn pod_curve(
    camera: &PyCameraSpec,
    target: &PyTargetModel,
    h_min: f64,
    h_max: f64,
    samples: usize,
) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    if !(h_min > 0.0 && h_min < h_max) || samples < 2 {
        return Err(PyValueError::new_err(
            "need 0 < h_min < h_max and at least 2 samples",
        ));
    }
    let step = (h_max - h_min) / (samples - 1) as f64;
    let mut rows = Vec::with_capacity(samples);
    for i in 0..samples {
        let h = if i == samples - 1 { h_max } else { h_min + i as f64 * step };
        let view = ViewGeometry::nadir(h).map_err(value_err)?;
        let p = |task| {
            sensor::pod_at_altitude(&camera.inner, &target.inner, &view, task).map_err(value_err)
        };
        rows.push((
            h,
            p(Task::Detection)?,
            p(Task::Recognition)?,
            p(Task::Identification)?,
        ));
    }
    Ok(rows)
}

/// POC/POD/POS over an altitude grid for a centered search area; returns
/// rows of (altitude_m, poc, pod, pos).
#[pyfunction]
#[pyo3(signature = (camera, target, area_width_m, area_height_m, h_min=10.0, h_max=1000.0, samples=256))]
fn pos_curve(
    camera: &PyCameraSpec,
    target: &PyTargetModel,
    area_width_m: f64,
    area_height_m: f64,
    h_min: f64,
    h_max: f64,
    samples: usize,
) -> PyResult<Vec<(f64, f64, f64, f64)>> {
    let area = SearchArea::from_center(Vec2::ZERO, area_width_m, area_height_m).map_err(value_err)?;
    let curve = core_pos_curve(&camera.inner, &target.inner, &area, h_min, h_max, samples)
        .map_err(value_err)?;
    Ok(curve
        .samples
        .iter()
        .map(|s| (s.altitude, s.poc, s.pod, s.pos))
        .collect())
}

/// POS-maximizing nadir altitude for a centered search area. Returns a dict
/// with altitude_m, pos, tied, pod and poc.
#[pyfunction]
#[pyo3(signature = (camera, target, area_width_m, area_height_m, h_min=10.0, h_max=1000.0, tolerance_m=0.1))]
#[allow(clippy::too_many_arguments)]
fn optimal_altitude<'py>(
    py: Python<'py>,
    camera: &PyCameraSpec,
    target: &PyTargetModel,
    area_width_m: f64,
    area_height_m: f64,
    h_min: f64,
    h_max: f64,
    tolerance_m: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let area = SearchArea::from_center(Vec2::ZERO, area_width_m, area_height_m).map_err(value_err)?;
    let best = core_optimal_altitude(&camera.inner, &target.inner, &area, h_min, h_max, tolerance_m)
        .map_err(value_err)?;
    let view = ViewGeometry::nadir(best.altitude).map_err(value_err)?;
    let fs = sensor::footprint(&camera.inner, &view).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("altitude_m", best.altitude)?;
    dict.set_item("pos", best.pos)?;
    dict.set_item("tied", best.tied)?;
    dict.set_item(
        "pod",
        sensor::pod_at_altitude(&camera.inner, &target.inner, &view, Task::Detection)
            .map_err(value_err)?,
    )?;
    dict.set_item("poc", msar_core::poc(fs, &area).map_err(value_err)?)?;
    Ok(dict)
}

/// Run the particle leeway drift simulation and return the bounding area.
///
/// `shape` is "square" (size_m = side) or "disk" (size_m = radius).
#[pyfunction]
#[pyo3(signature = (shape="square", size_m=800.0, count=10_000, seed=42,
    wind=(10.0, 0.0), current=(0.5, 0.0), leeway_fraction=0.02,
    diffusion_m2_per_s=2.5, duration_s=1200.0, dt_s=10.0, quantile=1.0))]
#[allow(clippy::too_many_arguments)]
fn simulate_drift<'py>(
    py: Python<'py>,
    shape: &str,
    size_m: f64,
    count: usize,
    seed: u64,
    wind: (f64, f64),
    current: (f64, f64),
    leeway_fraction: f64,
    diffusion_m2_per_s: f64,
    duration_s: f64,
    dt_s: f64,
    quantile: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let uncertainty = match shape {
        "square" => InitialUncertainty::square(Vec2::ZERO, size_m),
        "disk" => InitialUncertainty::disk(Vec2::ZERO, size_m),
        other => {
            return Err(PyValueError::new_err(format!(
                "shape must be \"square\" or \"disk\", got {other:?}"
            )))
        }
    }
    .map_err(value_err)?;
    let environment = EnvironmentConditions::new(
        Vec2::new(current.0, current.1),
        Vec2::new(wind.0, wind.1),
        leeway_fraction,
        diffusion_m2_per_s,
    )
    .map_err(value_err)?;
    let ensemble = init_ensemble(&uncertainty, count, seed).map_err(value_err)?;
    let end = simulate(&ensemble, &environment, duration_s, dt_s).map_err(value_err)?;
    let area = bounding_area(&end, quantile).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("time_s", end.time)?;
    dict.set_item("count", end.count())?;
    dict.set_item("width_m", area.width())?;
    dict.set_item("height_m", area.height())?;
    dict.set_item("center_m", (area.center().x, area.center().y))?;
    dict.set_item("centroid_m", (end.centroid().x, end.centroid().y))?;
    Ok(dict)
}

/// Evaluate the mission described by a TOML config file (same format as the
/// `msar` CLI). Returns a dict with the objective, its standard error, the
/// constraint verdicts and the expected-saved series.
#[pyfunction]
#[pyo3(signature = (config_path, seed=None, runs=None))]
fn evaluate_config<'py>(
    py: Python<'py>,
    config_path: &str,
    seed: Option<u64>,
    runs: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let mut config = ToolConfig::load(Path::new(config_path)).map_err(value_err)?;
    if let Some(seed) = seed {
        config.run.master_seed = seed;
    }
    if let Some(runs) = runs {
        config.run.m_runs = runs;
    }
    let resolved = config.resolve().map_err(value_err)?;
    let result = evaluate_mission(&resolved.scenario, config.run.m_runs)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;

    let dict = PyDict::new(py);
    dict.set_item("objective_j_s", result.objective_j)?;
    dict.set_item("objective_j_stderr_s", result.objective_j_stderr)?;
    dict.set_item("m_runs", result.m_runs)?;
    dict.set_item("master_seed", result.master_seed)?;
    dict.set_item("altitude_m", resolved.altitude)?;
    dict.set_item("area_width_m", resolved.area.width())?;
    dict.set_item("area_height_m", resolved.area.height())?;
    dict.set_item("t0_s", resolved.scenario.t0)?;
    dict.set_item("tf_s", resolved.scenario.tf)?;
    dict.set_item("n_targets", resolved.scenario.n_targets)?;
    dict.set_item(
        "expected_saved_final",
        *result.series.mean.last().unwrap_or(&0.0),
    )?;

    let constraints = PyDict::new(py);
    constraints.set_item("free_space_pass", result.verdicts.free_space.passed())?;
    if let FreeSpaceVerdict::Violation {
        time,
        position,
        obstacle_index,
    } = result.verdicts.free_space
    {
        constraints.set_item("free_space_violation", (time, position.x, position.y, obstacle_index))?;
    }
    constraints.set_item("dynamics_pass", result.verdicts.dynamics.pass)?;
    constraints.set_item("energy_pass", result.verdicts.energy.pass)?;
    constraints.set_item("energy_used_j", result.verdicts.energy.used)?;
    constraints.set_item("all_pass", result.verdicts.all_pass())?;
    dict.set_item("constraints", constraints)?;

    let series = PyDict::new(py);
    series.set_item("time_s", result.series.times.clone())?;
    series.set_item("expected_saved", result.series.mean.clone())?;
    series.set_item("stderr", result.series.stderr.clone())?;
    dict.set_item("series", series)?;
    Ok(dict)
}

#[pymodule]
fn msar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCameraSpec>()?;
    m.add_class::<PyTargetModel>()?;
    m.add_function(wrap_pyfunction!(johnson_probability, m)?)?;
    m.add_function(wrap_pyfunction!(gsd, m)?)?;
    m.add_function(wrap_pyfunction!(pod_at_altitude, m)?)?;
    m.add_function(wrap_pyfunction!(footprint, m)?)?;
    m.add_function(wrap_pyfunction!(pixels_on_target, m)?)?;
    m.add_function(wrap_pyfunction!(max_coverage_speed, m)?)?;
    m.add_function(wrap_pyfunction!(pod_curve, m)?)?;
    m.add_function(wrap_pyfunction!(pos_curve, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_altitude, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_drift, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_config, m)?)?;
    Ok(())
}
