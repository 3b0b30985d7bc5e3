//! Vehicle configurations, unicycle dynamics, search-pattern generation and
//! the mission constraints (free space, dynamics consistency, energy).
//!
//! The workspace is planar: altitude is held constant per trajectory (the
//! altitude optimizer picks it), so a configuration is `q = [x, y, psi]`.

mod energy;
mod obstacles;
mod path;
mod patterns;

pub use energy::{check_energy, energy_used, EnergyModel, EnergyVerdict, PowerProfile, PowerSegment};
pub use obstacles::{
    check_free_space, FreeSpaceVerdict, Obstacle, ObstacleRegion, TimedObstacle,
    DEFAULT_FREE_SPACE_RESOLUTION,
};
pub use patterns::{
    generate_expanding_square, generate_lawnmower, generate_sector_search, swept_coverage_fraction,
};

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{wrap_angle, Vec2};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MissionError {
    #[error("time step must be positive, got {0}")]
    StepNotPositive(f64),
    #[error("control (u={u}, omega={omega}) outside limits (u_max={u_max}, omega_max={omega_max})")]
    ControlOutOfBounds {
        u: f64,
        omega: f64,
        u_max: f64,
        omega_max: f64,
    },
    #[error("control sequence is empty")]
    EmptyControlSequence,
    #[error("control segment duration must be positive, got {0}")]
    SegmentDurationNotPositive(f64),
    #[error("speed must be positive, got {0}")]
    SpeedNotPositive(f64),
    #[error("altitude must be positive, got {0}")]
    AltitudeNotPositive(f64),
    #[error("track spacing must be positive, got {0}")]
    SpacingNotPositive(f64),
    #[error("leg increment must be positive, got {0}")]
    LegIncrementNotPositive(f64),
    #[error("pattern radius must be positive, got {0}")]
    RadiusNotPositive(f64),
    #[error("pattern needs at least one leg/cycle")]
    EmptyPattern,
    #[error("turn infeasible under omega_max: leg {leg_index} of length {leg_length} cannot fit turn arcs of radius {turn_radius}")]
    InfeasibleTurn {
        leg_index: usize,
        leg_length: f64,
        turn_radius: f64,
    },
    #[error("yaw-rate limit omega_max must be positive to turn, got {0}")]
    OmegaMaxNotPositive(f64),
    #[error("trajectory needs at least 2 samples")]
    TrajectoryTooShort,
    #[error("trajectory times must be strictly increasing (sample {index})")]
    TimesNotIncreasing { index: usize },
    #[error("power must be non-negative, got {0}")]
    PowerNegative(f64),
    #[error("energy budget must be positive, got {0}")]
    BudgetNotPositive(f64),
    #[error("power profile segment invalid: t_start {t_start} >= t_end {t_end}")]
    BadPowerSegment { t_start: f64, t_end: f64 },
    #[error("power profile segments overlap near t = {0}")]
    OverlappingPowerSegments(f64),
    #[error("power profile has a gap at t = {0}")]
    ProfileGap(f64),
    #[error("time interval must satisfy tf > t0, got [{t0}, {tf}]")]
    BadTimeInterval { t0: f64, tf: f64 },
    #[error("disc radius must be positive, got {0}")]
    ObstacleRadiusNotPositive(f64),
    #[error("polygon must be convex with at least 3 non-collinear vertices")]
    BadPolygon,
    #[error("free-space check resolution must be positive, got {0}")]
    ResolutionNotPositive(f64),
    #[error("trajectory CSV parse error at line {line}: {message}")]
    TrajectoryParse { line: usize, message: String },
}

/// Planar vehicle configuration `q = [x, y, psi]`, heading wrapped to
/// `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub x: f64,
    pub y: f64,
    pub psi: f64,
}

impl Configuration {
    pub fn new(x: f64, y: f64, psi: f64) -> Self {
        Configuration {
            x,
            y,
            psi: wrap_angle(psi),
        }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Forward speed and yaw rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlInput {
    /// Forward speed, m/s (non-negative).
    pub u: f64,
    /// Yaw rate, rad/s.
    pub omega: f64,
}

/// Configured vehicle envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleLimits {
    pub u_max: f64,
    pub omega_max: f64,
}

impl VehicleLimits {
    pub fn contains(&self, ctrl: &ControlInput) -> bool {
        ctrl.u >= 0.0 && ctrl.u <= self.u_max && ctrl.omega.abs() <= self.omega_max
    }

    /// Minimum turn radius at the given speed.
    pub fn turn_radius(&self, speed: f64) -> Result<f64, MissionError> {
        if !(self.omega_max > 0.0) {
            return Err(MissionError::OmegaMaxNotPositive(self.omega_max));
        }
        Ok(speed / self.omega_max)
    }
}

/// One timestamped configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub time: f64,
    pub config: Configuration,
}

/// A candidate search trajectory: timestamped configurations at a constant
/// altitude with a nominal speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    /// Constant search altitude, meters.
    pub altitude: f64,
    /// Nominal forward speed, m/s.
    pub speed: f64,
}

/// Sidecar metadata record accompanying a trajectory CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub altitude_m: f64,
    pub speed_mps: f64,
}

impl Trajectory {
    pub fn new(
        samples: Vec<TrajectorySample>,
        altitude: f64,
        speed: f64,
    ) -> Result<Self, MissionError> {
        if samples.len() < 2 {
            return Err(MissionError::TrajectoryTooShort);
        }
        for (i, pair) in samples.windows(2).enumerate() {
            if !(pair[1].time > pair[0].time) {
                return Err(MissionError::TimesNotIncreasing { index: i + 1 });
            }
        }
        if !(altitude > 0.0) {
            return Err(MissionError::AltitudeNotPositive(altitude));
        }
        Ok(Trajectory {
            samples,
            altitude,
            speed,
        })
    }

    pub fn start_time(&self) -> f64 {
        self.samples.first().map(|s| s.time).unwrap_or(0.0)
    }

    pub fn end_time(&self) -> f64 {
        self.samples.last().map(|s| s.time).unwrap_or(0.0)
    }

    pub fn meta(&self) -> TrajectoryMeta {
        TrajectoryMeta {
            altitude_m: self.altitude,
            speed_mps: self.speed,
        }
    }
}

/// One explicit-Euler step of the unicycle model
/// `q_dot = [u cos psi, u sin psi, omega]`.
pub fn unicycle_step(
    q: &Configuration,
    ctrl: &ControlInput,
    dt: f64,
) -> Result<Configuration, MissionError> {
    if !(dt > 0.0) {
        return Err(MissionError::StepNotPositive(dt));
    }
    Ok(Configuration::new(
        q.x + ctrl.u * q.psi.cos() * dt,
        q.y + ctrl.u * q.psi.sin() * dt,
        q.psi + ctrl.omega * dt,
    ))
}

/// Integrate a timed control sequence with explicit Euler steps of length
/// `dt` (shorter final step per segment when the duration is not a
/// multiple).
///
/// `controls` are `(input, duration)` segments applied back to back from
/// `t0`; every input must respect `limits`.
pub fn integrate_trajectory(
    q0: &Configuration,
    controls: &[(ControlInput, f64)],
    t0: f64,
    dt: f64,
    altitude: f64,
    limits: &VehicleLimits,
) -> Result<Trajectory, MissionError> {
    if controls.is_empty() {
        return Err(MissionError::EmptyControlSequence);
    }
    if !(dt > 0.0) {
        return Err(MissionError::StepNotPositive(dt));
    }
    if !(altitude > 0.0) {
        return Err(MissionError::AltitudeNotPositive(altitude));
    }
    let mut nominal_speed: f64 = 0.0;
    for (ctrl, duration) in controls {
        if !(*duration > 0.0) {
            return Err(MissionError::SegmentDurationNotPositive(*duration));
        }
        if !limits.contains(ctrl) {
            return Err(MissionError::ControlOutOfBounds {
                u: ctrl.u,
                omega: ctrl.omega,
                u_max: limits.u_max,
                omega_max: limits.omega_max,
            });
        }
        nominal_speed = nominal_speed.max(ctrl.u);
    }

    let mut samples = vec![TrajectorySample {
        time: t0,
        config: *q0,
    }];
    let mut t = t0;
    let mut q = *q0;
    for (ctrl, duration) in controls {
        let n_full = (duration / dt).floor() as usize;
        let remainder = duration - n_full as f64 * dt;
        for _ in 0..n_full {
            q = unicycle_step(&q, ctrl, dt)?;
            t += dt;
            samples.push(TrajectorySample { time: t, config: q });
        }
        if remainder > dt * 1e-9 {
            q = unicycle_step(&q, ctrl, remainder)?;
            t += remainder;
            samples.push(TrajectorySample { time: t, config: q });
        }
    }
    Trajectory::new(samples, altitude, nominal_speed)
}

/// Discrete consistency report of a trajectory against the unicycle model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicsReport {
    /// Largest norm of `dp/dt - |dp|/dt * [cos psi_k, sin psi_k]`, i.e. the
    /// side-slip of each displacement relative to the stored heading.
    pub max_position_residual: f64,
    /// Largest implied forward speed `|dp| / dt`.
    pub max_speed: f64,
    /// Largest implied yaw rate `|wrap(dpsi)| / dt`.
    pub max_yaw_rate: f64,
    /// Largest sample interval.
    pub max_dt: f64,
    /// First-order residual bound `u_max * omega_max * max_dt`.
    pub residual_bound: f64,
    pub pass: bool,
}

/// Check first-order consistency of a sampled trajectory with the unicycle
/// dynamics and the vehicle envelope.
///
/// The yaw rate of step `k` is taken as the one a follower would command,
/// `wrap(psi_{k+1} - psi_k) / dt`, so the heading component of the residual
/// is zero by construction and the position component measures side-slip.
pub fn check_dynamics_residual(traj: &Trajectory, limits: &VehicleLimits) -> DynamicsReport {
    let mut max_position_residual: f64 = 0.0;
    let mut max_speed: f64 = 0.0;
    let mut max_yaw_rate: f64 = 0.0;
    let mut max_dt: f64 = 0.0;
    for pair in traj.samples.windows(2) {
        let dt = pair[1].time - pair[0].time;
        let dp = pair[1].config.position() - pair[0].config.position();
        let speed = dp.norm() / dt;
        let yaw_rate = wrap_angle(pair[1].config.psi - pair[0].config.psi).abs() / dt;
        let psi = pair[0].config.psi;
        let residual =
            (dp * (1.0 / dt) - Vec2::new(psi.cos(), psi.sin()) * speed).norm();
        max_position_residual = max_position_residual.max(residual);
        max_speed = max_speed.max(speed);
        max_yaw_rate = max_yaw_rate.max(yaw_rate);
        max_dt = max_dt.max(dt);
    }
    let residual_bound = limits.u_max * limits.omega_max * max_dt + 1e-12;
    let tol = 1.0 + 1e-9;
    let pass = max_position_residual <= residual_bound
        && max_speed <= limits.u_max * tol + 1e-12
        && max_yaw_rate <= limits.omega_max * tol + 1e-9;
    DynamicsReport {
        max_position_residual,
        max_speed,
        max_yaw_rate,
        max_dt,
        residual_bound,
        pass,
    }
}

/// Write a trajectory as CSV with columns `time_s,x_m,y_m,psi_rad`.
/// Altitude and speed travel in the sidecar [`TrajectoryMeta`] record.
pub fn write_trajectory_csv<W: Write>(out: &mut W, traj: &Trajectory) -> io::Result<()> {
    writeln!(out, "time_s,x_m,y_m,psi_rad")?;
    for s in &traj.samples {
        writeln!(out, "{},{},{},{}", s.time, s.config.x, s.config.y, s.config.psi)?;
    }
    Ok(())
}

/// Parse a trajectory from the CSV schema written by
/// [`write_trajectory_csv`] plus its sidecar metadata.
pub fn read_trajectory_csv(text: &str, meta: &TrajectoryMeta) -> Result<Trajectory, MissionError> {
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 {
            continue; // header
        }
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(MissionError::TrajectoryParse {
                line: lineno + 1,
                message: format!("expected 4 fields, got {}", fields.len()),
            });
        }
        let mut values = [0.0f64; 4];
        for (i, f) in fields.iter().enumerate() {
            values[i] = f.trim().parse().map_err(|e| MissionError::TrajectoryParse {
                line: lineno + 1,
                message: format!("bad number {f:?}: {e}"),
            })?;
        }
        samples.push(TrajectorySample {
            time: values[0],
            config: Configuration::new(values[1], values[2], values[3]),
        });
    }
    Trajectory::new(samples, meta.altitude_m, meta.speed_mps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn limits() -> VehicleLimits {
        VehicleLimits {
            u_max: 20.0,
            omega_max: 2.0,
        }
    }

    #[test]
    fn unicycle_straight_line_step() {
        let q = Configuration::new(0.0, 0.0, 0.0);
        let next = unicycle_step(&q, &ControlInput { u: 10.0, omega: 0.0 }, 0.1).unwrap();
        assert_eq!((next.x, next.y, next.psi), (1.0, 0.0, 0.0));
    }

    #[test]
    fn unicycle_pure_rotation_step() {
        let q = Configuration::new(0.0, 0.0, 0.0);
        let next = unicycle_step(&q, &ControlInput { u: 0.0, omega: PI / 2.0 }, 1.0).unwrap();
        assert_eq!((next.x, next.y), (0.0, 0.0));
        assert!((next.psi - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn unicycle_rejects_bad_dt() {
        let q = Configuration::new(0.0, 0.0, 0.0);
        let ctrl = ControlInput { u: 1.0, omega: 0.0 };
        assert!(unicycle_step(&q, &ctrl, 0.0).is_err());
        assert!(unicycle_step(&q, &ctrl, -0.1).is_err());
    }

    #[test]
    fn euler_circle_closes_to_first_order() {
        // analytic oracle: u = 1, omega = 1 for 2*pi seconds is a unit circle
        let q0 = Configuration::new(0.0, 0.0, 0.0);
        let traj = integrate_trajectory(
            &q0,
            &[(ControlInput { u: 1.0, omega: 1.0 }, 2.0 * PI)],
            0.0,
            1e-4,
            100.0,
            &limits(),
        )
        .unwrap();
        let end = traj.samples.last().unwrap().config;
        let err = (end.position() - q0.position()).norm();
        assert!(err < 1e-3, "closure error {err}");
    }

    #[test]
    fn integrate_straight_segment_has_exact_length() {
        let q0 = Configuration::new(0.0, 0.0, 0.0);
        let traj = integrate_trajectory(
            &q0,
            &[(ControlInput { u: 4.0, omega: 0.0 }, 25.0)],
            0.0,
            0.05,
            100.0,
            &limits(),
        )
        .unwrap();
        let end = traj.samples.last().unwrap();
        assert!((end.config.x - 100.0).abs() < 1e-9);
        assert_eq!(end.config.y, 0.0);
        assert!((end.time - 25.0).abs() < 1e-9);
        assert_eq!(traj.speed, 4.0);
    }

    #[test]
    fn integrate_leg_pair_produces_parallel_tracks() {
        // straight, half-turn, straight: a lawnmower leg pair offset by the
        // turn diameter 2 u / omega
        let u = 5.0;
        let omega = 0.5;
        let q0 = Configuration::new(0.0, 0.0, 0.0);
        let dt = 1e-4;
        let traj = integrate_trajectory(
            &q0,
            &[
                (ControlInput { u, omega: 0.0 }, 20.0),
                (ControlInput { u, omega }, PI / omega),
                (ControlInput { u, omega: 0.0 }, 20.0),
            ],
            0.0,
            dt,
            100.0,
            &limits(),
        )
        .unwrap();
        let end = traj.samples.last().unwrap().config;
        // heading flipped
        assert!((wrap_angle(end.psi - PI)).abs() < 1e-3);
        // lateral offset equals the turn diameter, longitudinal back at start
        assert!((end.y - 2.0 * u / omega).abs() < 0.05, "y = {}", end.y);
        assert!(end.x.abs() < 0.05, "x = {}", end.x);
    }

    #[test]
    fn integrate_rejects_bad_sequences() {
        let q0 = Configuration::new(0.0, 0.0, 0.0);
        assert!(matches!(
            integrate_trajectory(&q0, &[], 0.0, 0.1, 100.0, &limits()),
            Err(MissionError::EmptyControlSequence)
        ));
        assert!(matches!(
            integrate_trajectory(
                &q0,
                &[(ControlInput { u: 1.0, omega: 0.0 }, 0.0)],
                0.0,
                0.1,
                100.0,
                &limits()
            ),
            Err(MissionError::SegmentDurationNotPositive(_))
        ));
        assert!(matches!(
            integrate_trajectory(
                &q0,
                &[(ControlInput { u: 100.0, omega: 0.0 }, 1.0)],
                0.0,
                0.1,
                100.0,
                &limits()
            ),
            Err(MissionError::ControlOutOfBounds { .. })
        ));
    }

    #[test]
    fn euler_trajectories_have_zero_position_residual() {
        let q0 = Configuration::new(1.0, -2.0, 0.3);
        let traj = integrate_trajectory(
            &q0,
            &[
                (ControlInput { u: 5.0, omega: 0.2 }, 10.0),
                (ControlInput { u: 3.0, omega: -0.5 }, 5.0),
            ],
            0.0,
            0.05,
            100.0,
            &limits(),
        )
        .unwrap();
        let report = check_dynamics_residual(&traj, &limits());
        assert!(report.pass, "{report:?}");
        // Euler places each new position exactly along the previous heading
        assert!(report.max_position_residual < 1e-9);
        assert!(report.max_speed <= 5.0 + 1e-9);
        assert!(report.max_yaw_rate <= 0.5 + 1e-9);
    }

    #[test]
    fn trajectory_requires_increasing_times() {
        let mk = |t: f64| TrajectorySample {
            time: t,
            config: Configuration::new(0.0, 0.0, 0.0),
        };
        assert!(Trajectory::new(vec![mk(0.0)], 100.0, 1.0).is_err());
        assert!(Trajectory::new(vec![mk(0.0), mk(0.0)], 100.0, 1.0).is_err());
        assert!(Trajectory::new(vec![mk(0.0), mk(1.0), mk(0.5)], 100.0, 1.0).is_err());
        assert!(Trajectory::new(vec![mk(0.0), mk(1.0)], 100.0, 1.0).is_ok());
    }

    #[test]
    fn trajectory_csv_round_trip() {
        let q0 = Configuration::new(0.0, 0.0, 0.5);
        let traj = integrate_trajectory(
            &q0,
            &[(ControlInput { u: 5.0, omega: 0.1 }, 10.0)],
            0.0,
            0.5,
            250.0,
            &limits(),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &traj).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("time_s,x_m,y_m,psi_rad\n"));
        let parsed = read_trajectory_csv(&text, &traj.meta()).unwrap();
        assert_eq!(parsed.samples.len(), traj.samples.len());
        assert_eq!(parsed.altitude, traj.altitude);
        for (a, b) in parsed.samples.iter().zip(&traj.samples) {
            assert!((a.time - b.time).abs() < 1e-12);
            assert!((a.config.x - b.config.x).abs() < 1e-12);
            assert!((a.config.y - b.config.y).abs() < 1e-12);
            assert!((a.config.psi - b.config.psi).abs() < 1e-12);
        }
    }

    #[test]
    fn trajectory_csv_rejects_malformed_lines() {
        let meta = TrajectoryMeta {
            altitude_m: 100.0,
            speed_mps: 5.0,
        };
        let bad = "time_s,x_m,y_m,psi_rad\n0,0,0\n";
        assert!(matches!(
            read_trajectory_csv(bad, &meta),
            Err(MissionError::TrajectoryParse { line: 2, .. })
        ));
        let bad = "time_s,x_m,y_m,psi_rad\n0,zero,0,0\n1,0,0,0\n";
        assert!(read_trajectory_csv(bad, &meta).is_err());
    }
}
