//! Monte Carlo mission evaluation.
//!
//! Estimates `E[N_saved(t)]` for a candidate trajectory by simulating target
//! drift, footprint coverage and stochastic detection, then integrates the
//! time-weighted rescue objective
//!
//! ```text
//! J = (1/N) * integral over [t0, tf] of (N - E[N_saved(t)]) dt
//! ```
//!
//! together with the free-space, dynamics and energy constraint verdicts.
//!
//! Randomness is hierarchical: `master_seed -> run -> target -> draw`, so
//! runs execute in parallel without affecting results and paired-seed
//! comparisons across scenarios are meaningful.

use std::io::{self, Write};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drift::{sample_in_shape, DriftError, EnvironmentConditions, InitialUncertainty};
use crate::geometry::Vec2;
use crate::mission::{
    check_dynamics_residual, check_energy, check_free_space, DynamicsReport, EnergyModel,
    EnergyVerdict, FreeSpaceVerdict, MissionError, ObstacleRegion, Trajectory, VehicleLimits,
    DEFAULT_FREE_SPACE_RESOLUTION,
};
use crate::rng::{domain, substream};
use crate::sensor::{footprint, pod_at_altitude, CameraSpec, SensorError, TargetModel, Task, ViewGeometry};

/// Upper bound on the number of time-series grid points kept in memory.
const MAX_SERIES_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("scenario needs at least one target")]
    NoTargets,
    #[error("time horizon must satisfy tf > t0, got [{t0}, {tf}]")]
    BadTimeHorizon { t0: f64, tf: f64 },
    #[error("detection interval must be positive, got {0}")]
    DetectionIntervalNotPositive(f64),
    #[error("survival time must be positive when present, got {0}")]
    SurvivalNotPositive(f64),
    #[error("rescue delay must be non-negative, got {0}")]
    RescueDelayNegative(f64),
    #[error("drift lead time must be non-negative, got {0}")]
    DriftLeadNegative(f64),
    #[error("drift time step must be positive, got {0}")]
    DriftDtNotPositive(f64),
    #[error("trajectory [{traj_start}, {traj_end}] does not cover the search horizon [{t0}, {tf}]")]
    TrajectoryDoesNotCoverHorizon {
        traj_start: f64,
        traj_end: f64,
        t0: f64,
        tf: f64,
    },
    #[error("Monte Carlo estimation needs at least 2 runs, got {0}")]
    TooFewRuns(usize),
    #[error("series is empty")]
    EmptySeries,
    #[error("series times and values differ in length ({times} vs {values})")]
    SeriesLengthMismatch { times: usize, values: usize },
    #[error("series times must be non-decreasing")]
    SeriesTimesDecreasing,
    #[error("series [{first}, {last}] does not cover the horizon [{t0}, {tf}]")]
    SeriesDoesNotCoverHorizon {
        first: f64,
        last: f64,
        t0: f64,
        tf: f64,
    },
    #[error("series value {0} outside [0, n_targets]")]
    SeriesValueOutOfRange(f64),
    #[error(transparent)]
    Sensor(#[from] SensorError),
    #[error(transparent)]
    Drift(#[from] DriftError),
    #[error(transparent)]
    Mission(#[from] MissionError),
}

/// When a detected person counts as saved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RescueModel {
    /// Saved at the moment of detection.
    Instant,
    /// Saved a fixed dispatch delay after detection, seconds.
    Delay { delay: f64 },
}

impl RescueModel {
    fn delay(&self) -> f64 {
        match self {
            RescueModel::Instant => 0.0,
            RescueModel::Delay { delay } => *delay,
        }
    }
}

/// Full description of one evaluable search mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionScenario {
    /// Number of people in the water.
    pub n_targets: usize,
    /// Position uncertainty at the accident time.
    pub uncertainty: InitialUncertainty,
    pub environment: EnvironmentConditions,
    pub camera: CameraSpec,
    pub target_model: TargetModel,
    pub trajectory: Trajectory,
    pub limits: VehicleLimits,
    pub obstacles: ObstacleRegion,
    pub energy: EnergyModel,
    /// Decorrelation time between independent detection looks, seconds.
    pub detection_interval: f64,
    /// Time after the accident at which an unsaved target is lost.
    pub survival_time: Option<f64>,
    pub rescue_model: RescueModel,
    /// Search start, seconds.
    pub t0: f64,
    /// Search end, seconds.
    pub tf: f64,
    pub master_seed: u64,
    /// Drift time between the accident and the search start, seconds.
    pub drift_lead: f64,
    /// Kernel step for the lead-in drift phase, seconds.
    pub drift_dt: f64,
}

impl MissionScenario {
    pub fn validate(&self) -> Result<(), EvalError> {
        if self.n_targets == 0 {
            return Err(EvalError::NoTargets);
        }
        if !(self.tf > self.t0) {
            return Err(EvalError::BadTimeHorizon {
                t0: self.t0,
                tf: self.tf,
            });
        }
        if !(self.detection_interval > 0.0) {
            return Err(EvalError::DetectionIntervalNotPositive(self.detection_interval));
        }
        if let Some(s) = self.survival_time {
            if !(s > 0.0) {
                return Err(EvalError::SurvivalNotPositive(s));
            }
        }
        if self.rescue_model.delay() < 0.0 {
            return Err(EvalError::RescueDelayNegative(self.rescue_model.delay()));
        }
        if !(self.drift_lead >= 0.0) {
            return Err(EvalError::DriftLeadNegative(self.drift_lead));
        }
        if !(self.drift_dt > 0.0) {
            return Err(EvalError::DriftDtNotPositive(self.drift_dt));
        }
        let traj_start = self.trajectory.start_time();
        let traj_end = self.trajectory.end_time();
        if traj_start > self.t0 + 1e-9 || traj_end < self.tf - 1e-9 {
            return Err(EvalError::TrajectoryDoesNotCoverHorizon {
                traj_start,
                traj_end,
                t0: self.t0,
                tf: self.tf,
            });
        }
        Ok(())
    }

    /// The accident happened `drift_lead` seconds before the search starts.
    fn accident_time(&self) -> f64 {
        self.t0 - self.drift_lead
    }

    /// Latest time a detection may still happen.
    fn detection_deadline(&self) -> f64 {
        match self.survival_time {
            Some(s) => self.tf.min(self.accident_time() + s),
            None => self.tf,
        }
    }
}

/// Outcome of a single Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub run_index: u64,
    /// Detection time per target, if detected before the deadline.
    pub detection_time: Vec<Option<f64>>,
    /// Save time per target; `None` when the target was never saved (not
    /// detected, rescue arrived past the horizon, or survival exceeded).
    pub save_time: Vec<Option<f64>>,
}

impl RunResult {
    /// Number of targets saved up to (and including) time `t`.
    pub fn saved_by(&self, t: f64) -> usize {
        self.save_time
            .iter()
            .filter(|s| matches!(s, Some(ts) if *ts <= t))
            .count()
    }
}

/// Pointwise Monte Carlo estimate of `E[N_saved(t)]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedSeries {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
}

/// Constraint verdicts bundled with every evaluation; a failed constraint
/// never suppresses the objective value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintVerdicts {
    pub free_space: FreeSpaceVerdict,
    pub dynamics: DynamicsReport,
    pub energy: EnergyVerdict,
}

impl ConstraintVerdicts {
    pub fn all_pass(&self) -> bool {
        self.free_space.passed() && self.dynamics.pass && self.energy.pass
    }
}

/// Full evaluation result for a candidate trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub series: SavedSeries,
    /// Objective J, seconds (normalized per-person integral of people still
    /// missing over the horizon).
    pub objective_j: f64,
    pub objective_j_stderr: f64,
    pub verdicts: ConstraintVerdicts,
    pub m_runs: usize,
    pub master_seed: u64,
}

/// Oriented-footprint containment test: `fs_v` extends along the heading,
/// `fs_h` across it. Boundary is closed.
fn in_footprint(vehicle: &crate::mission::Configuration, target: Vec2, fs_h: f64, fs_v: f64) -> bool {
    let d = target - vehicle.position();
    let (sin_psi, cos_psi) = vehicle.psi.sin_cos();
    let along = d.x * cos_psi + d.y * sin_psi;
    let across = -d.x * sin_psi + d.y * cos_psi;
    along.abs() <= fs_v / 2.0 && across.abs() <= fs_h / 2.0
}

struct TargetSim {
    pos: Vec2,
    detected: Option<f64>,
    save_time: Option<f64>,
    next_allowed: f64,
    drift_rng: rand_chacha::ChaCha8Rng,
}

/// Simulate one mission run: sample target positions, drift them with the
/// leeway kernel, and draw a Bernoulli detection at each opportunity (first
/// simulation step inside the footprint, then every `detection_interval`
/// while covered). Deterministic given `(master_seed, run_index)`.
pub fn simulate_run(scenario: &MissionScenario, run_index: u64) -> Result<RunResult, EvalError> {
    scenario.validate()?;
    let view = ViewGeometry::nadir(scenario.trajectory.altitude)?;
    let pod = pod_at_altitude(&scenario.camera, &scenario.target_model, &view, Task::Detection)?;
    let (fs_h, fs_v) = footprint(&scenario.camera, &view)?;
    let drift_velocity = scenario.environment.drift_velocity();
    let noise = |dt: f64| (2.0 * scenario.environment.diffusion * dt).sqrt();
    let deadline = scenario.detection_deadline();
    let rescue_delay = scenario.rescue_model.delay();
    let survival_deadline = scenario
        .survival_time
        .map(|s| scenario.accident_time() + s);

    // place targets at the accident and drift them to the search start
    let mut targets: Vec<TargetSim> = (0..scenario.n_targets)
        .map(|i| {
            let mut place_rng =
                substream(scenario.master_seed, domain::TARGET_PLACEMENT, run_index, i as u64);
            let mut target = TargetSim {
                pos: sample_in_shape(&scenario.uncertainty, &mut place_rng),
                detected: None,
                save_time: None,
                next_allowed: f64::NEG_INFINITY,
                drift_rng: substream(
                    scenario.master_seed,
                    domain::TARGET_DRIFT,
                    run_index,
                    i as u64,
                ),
            };
            if scenario.drift_lead > 0.0 {
                let n_full = (scenario.drift_lead / scenario.drift_dt).floor() as usize;
                let remainder = scenario.drift_lead - n_full as f64 * scenario.drift_dt;
                for _ in 0..n_full {
                    advance(&mut target, drift_velocity, noise(scenario.drift_dt), scenario.drift_dt);
                }
                if remainder > 1e-12 {
                    advance(&mut target, drift_velocity, noise(remainder), remainder);
                }
            }
            target
        })
        .collect();

    let mut detect_rngs: Vec<rand_chacha::ChaCha8Rng> = (0..scenario.n_targets)
        .map(|i| substream(scenario.master_seed, domain::DETECTION, run_index, i as u64))
        .collect();

    let samples = &scenario.trajectory.samples;
    for k in 0..samples.len() {
        let t = samples[k].time;
        if t < scenario.t0 - 1e-12 {
            continue;
        }
        if t > scenario.tf + 1e-12 || t > deadline + 1e-12 {
            break;
        }
        let pose = samples[k].config;
        let mut all_detected = true;
        for (i, target) in targets.iter_mut().enumerate() {
            if target.detected.is_some() {
                continue;
            }
            all_detected = false;
            if t >= target.next_allowed && in_footprint(&pose, target.pos, fs_h, fs_v) {
                target.next_allowed = t + scenario.detection_interval;
                let draw: f64 = detect_rngs[i].random();
                if draw < pod {
                    target.detected = Some(t);
                    let saved_at = t + rescue_delay;
                    let within_horizon = saved_at <= scenario.tf;
                    let survives = survival_deadline.is_none_or(|d| saved_at <= d);
                    if within_horizon && survives {
                        target.save_time = Some(saved_at);
                    }
                }
            }
        }
        if all_detected {
            break;
        }
        // drift undetected targets to the next sample time
        if k + 1 < samples.len() {
            let dt = samples[k + 1].time - t;
            let scale = noise(dt);
            for target in targets.iter_mut() {
                if target.detected.is_none() {
                    advance(target, drift_velocity, scale, dt);
                }
            }
        }
    }

    Ok(RunResult {
        run_index,
        detection_time: targets.iter().map(|t| t.detected).collect(),
        save_time: targets.iter().map(|t| t.save_time).collect(),
    })
}

fn advance(target: &mut TargetSim, velocity: Vec2, noise_scale: f64, dt: f64) {
    target.pos += velocity * dt;
    if noise_scale > 0.0 {
        use rand_distr::{Distribution, StandardNormal};
        let ex: f64 = StandardNormal.sample(&mut target.drift_rng);
        let ey: f64 = StandardNormal.sample(&mut target.drift_rng);
        target.pos += Vec2::new(ex, ey) * noise_scale;
    }
}

/// Time grid for the saved series: the trajectory's sample grid restricted
/// to the horizon and coarsened to at most [`MAX_SERIES_POINTS`].
fn series_grid(scenario: &MissionScenario) -> Vec<f64> {
    let times: Vec<f64> = scenario
        .trajectory
        .samples
        .iter()
        .map(|s| s.time)
        .filter(|t| *t >= scenario.t0 - 1e-12 && *t <= scenario.tf + 1e-12)
        .collect();
    let stride = (times.len() / MAX_SERIES_POINTS).max(1);
    let mut grid: Vec<f64> = times.iter().copied().step_by(stride).collect();
    if grid.is_empty() || *grid.first().unwrap() > scenario.t0 {
        grid.insert(0, scenario.t0);
    }
    if *grid.last().unwrap() < scenario.tf {
        grid.push(scenario.tf);
    }
    grid
}

fn run_all(scenario: &MissionScenario, m_runs: usize) -> Result<Vec<RunResult>, EvalError> {
    if m_runs < 2 {
        return Err(EvalError::TooFewRuns(m_runs));
    }
    scenario.validate()?;
    // parallel execution; collection preserves run-index order so the
    // sequential reduction below is schedule-independent
    (0..m_runs as u64)
        .into_par_iter()
        .map(|r| simulate_run(scenario, r))
        .collect()
}

fn series_from_runs(grid: &[f64], runs: &[RunResult]) -> SavedSeries {
    let m = runs.len();
    let mut mean = Vec::with_capacity(grid.len());
    let mut stderr = Vec::with_capacity(grid.len());
    for &t in grid {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for run in runs {
            let saved = run.saved_by(t) as f64;
            sum += saved;
            sum_sq += saved * saved;
        }
        let mu = sum / m as f64;
        let var = ((sum_sq - sum * sum / m as f64) / (m as f64 - 1.0)).max(0.0);
        mean.push(mu);
        stderr.push((var / m as f64).sqrt());
    }
    SavedSeries {
        times: grid.to_vec(),
        mean,
        stderr,
    }
}

/// Monte Carlo estimate of `E[N_saved(t)]` with pointwise standard errors
/// over `m_runs` independent runs.
pub fn expected_saved_series(
    scenario: &MissionScenario,
    m_runs: usize,
) -> Result<SavedSeries, EvalError> {
    let runs = run_all(scenario, m_runs)?;
    Ok(series_from_runs(&series_grid(scenario), &runs))
}

/// Trapezoidal integral of `(N - E[N_saved(t)]) / N` over `[t0, tf]` on the
/// series grid.
///
/// Duplicate time points represent jumps exactly; the result lies in
/// `[0, tf - t0]`.
pub fn objective_j(
    times: &[f64],
    expected_saved: &[f64],
    n_targets: usize,
    t0: f64,
    tf: f64,
) -> Result<f64, EvalError> {
    if times.is_empty() {
        return Err(EvalError::EmptySeries);
    }
    if times.len() != expected_saved.len() {
        return Err(EvalError::SeriesLengthMismatch {
            times: times.len(),
            values: expected_saved.len(),
        });
    }
    if n_targets == 0 {
        return Err(EvalError::NoTargets);
    }
    if !(tf > t0) {
        return Err(EvalError::BadTimeHorizon { t0, tf });
    }
    if times.windows(2).any(|p| p[1] < p[0]) {
        return Err(EvalError::SeriesTimesDecreasing);
    }
    let (first, last) = (times[0], times[times.len() - 1]);
    if first > t0 + 1e-9 || last < tf - 1e-9 {
        return Err(EvalError::SeriesDoesNotCoverHorizon { first, last, t0, tf });
    }
    let n = n_targets as f64;
    for &v in expected_saved {
        if !(-1e-9..=n + 1e-9).contains(&v) {
            return Err(EvalError::SeriesValueOutOfRange(v));
        }
    }

    let mut integral = 0.0;
    for i in 0..times.len() - 1 {
        let (ta, tb) = (times[i], times[i + 1]);
        let (va, vb) = (expected_saved[i], expected_saved[i + 1]);
        if tb <= t0 || ta >= tf || tb == ta {
            continue;
        }
        let lo = ta.max(t0);
        let hi = tb.min(tf);
        let v_lo = va + (vb - va) * ((lo - ta) / (tb - ta));
        let v_hi = va + (vb - va) * ((hi - ta) / (tb - ta));
        integral += ((n - v_lo) + (n - v_hi)) / 2.0 * (hi - lo);
    }
    Ok(integral / n)
}

/// Evaluate a mission end to end: saved series, objective J with its
/// standard error, and the free-space / dynamics / energy verdicts.
pub fn evaluate_mission(
    scenario: &MissionScenario,
    m_runs: usize,
) -> Result<EvalResult, EvalError> {
    let runs = run_all(scenario, m_runs)?;
    let grid = series_grid(scenario);
    let series = series_from_runs(&grid, &runs);

    let j = objective_j(&series.times, &series.mean, scenario.n_targets, scenario.t0, scenario.tf)?;
    // per-run objective spread for the standard error
    let mut per_run = Vec::with_capacity(runs.len());
    for run in &runs {
        let counts: Vec<f64> = grid.iter().map(|&t| run.saved_by(t) as f64).collect();
        per_run.push(objective_j(&grid, &counts, scenario.n_targets, scenario.t0, scenario.tf)?);
    }
    let m = per_run.len() as f64;
    let mean_j: f64 = per_run.iter().sum::<f64>() / m;
    let var_j = per_run.iter().map(|x| (x - mean_j).powi(2)).sum::<f64>() / (m - 1.0);
    let stderr_j = (var_j / m).sqrt();

    let verdicts = ConstraintVerdicts {
        free_space: check_free_space(
            &scenario.trajectory,
            &scenario.obstacles,
            DEFAULT_FREE_SPACE_RESOLUTION,
        )?,
        dynamics: check_dynamics_residual(&scenario.trajectory, &scenario.limits),
        energy: check_energy(&scenario.energy, scenario.t0, scenario.tf)?,
    };

    Ok(EvalResult {
        series,
        objective_j: j,
        objective_j_stderr: stderr_j,
        verdicts,
        m_runs,
        master_seed: scenario.master_seed,
    })
}

/// Write the saved series as CSV with columns `time_s,expected_saved,stderr`.
pub fn write_series_csv<W: Write>(out: &mut W, series: &SavedSeries) -> io::Result<()> {
    writeln!(out, "time_s,expected_saved,stderr")?;
    for i in 0..series.times.len() {
        writeln!(out, "{},{},{}", series.times[i], series.mean[i], series.stderr[i])?;
    }
    Ok(())
}
