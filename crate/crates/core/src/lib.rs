//! Sensing-aware planning toolkit for maritime search and rescue (MSAR).
//!
//! The crate models the full chain from thermal-camera geometry to mission
//! evaluation:
//!
//! - [`sensor`] — ground sample distance, cycles on target and detection
//!   probability for a nadir-pointing thermal camera (Johnson's Criteria).
//! - [`drift`] — particle leeway simulation that grows the initial accident
//!   uncertainty into a search area.
//! - [`metrics`] — probability of containment / success and the
//!   POS-maximizing search altitude.
//! - [`mission`] — unicycle dynamics, search patterns (lawnmower, expanding
//!   square, sector), free-space and energy constraints.
//! - [`eval`] — seeded Monte Carlo estimation of the expected number of
//!   people saved over time and the time-integrated rescue objective.
//!
//! All simulations are deterministic given their seeds; parallel execution
//! does not change results.

// Validation intentionally writes `!(x > 0.0)` so NaN fails the check too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod drift;
pub mod eval;
pub mod geometry;
pub mod metrics;
pub mod mission;
mod rng;
pub mod sensor;

pub use drift::{
    area_series, bounding_area, init_ensemble, simulate, simulate_with_snapshots, step,
    DriftError, EnvironmentConditions, InitialUncertainty, ParticleEnsemble, SearchArea,
    UncertaintyShape,
};
pub use eval::{
    evaluate_mission, expected_saved_series, objective_j, simulate_run, ConstraintVerdicts,
    EvalError, EvalResult, MissionScenario, RescueModel, RunResult, SavedSeries,
};
pub use geometry::Vec2;
pub use metrics::{
    optimal_altitude, poc, pos, pos_curve, MetricsError, OptimalAltitude, PosCurve, PosSample,
};
pub use mission::{
    check_dynamics_residual, check_energy, check_free_space, energy_used, generate_expanding_square,
    generate_lawnmower, generate_sector_search, integrate_trajectory, swept_coverage_fraction,
    unicycle_step, Configuration, ControlInput, DynamicsReport, EnergyModel, EnergyVerdict,
    FreeSpaceVerdict, MissionError, Obstacle, ObstacleRegion, PowerProfile, PowerSegment,
    TimedObstacle, Trajectory, TrajectoryMeta, TrajectorySample, VehicleLimits,
};
pub use sensor::{
    cycles_on_target, footprint, gsd, johnson_log_odds, johnson_probability, max_coverage_speed,
    pixels_on_target, pod_at_altitude, pod_at_altitude_with_axis, Axis, CameraSpec, GsdAxisMode,
    SensorError, TargetModel, Task, ViewGeometry,
};
