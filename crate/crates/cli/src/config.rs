//! Tool configuration: a single TOML file with nested blocks.
//!
//! Angles are degrees in the file and radians in memory; everything else is
//! SI. Every invariant of the underlying models is enforced at load time
//! with a field-path error message, before any computation starts.

use std::path::Path;

use serde::Deserialize;

use msar_core::{
    bounding_area, generate_expanding_square, generate_lawnmower, generate_sector_search,
    init_ensemble, optimal_altitude, simulate, CameraSpec, EnergyModel, EnvironmentConditions,
    InitialUncertainty, MissionScenario, Obstacle, ObstacleRegion, RescueModel, SearchArea,
    TargetModel, TimedObstacle, Trajectory, Vec2, VehicleLimits, ViewGeometry,
};
use msar_core::sensor;

use crate::CliError;

fn invalid(path: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {message}"))
}

/// A number or the literal string `"auto"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AltitudeSpec {
    Auto,
    Fixed(f64),
}

impl<'de> Deserialize<'de> for AltitudeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Ok(AltitudeSpec::Fixed(v)),
            Raw::Text(s) if s == "auto" => Ok(AltitudeSpec::Auto),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a number of meters or \"auto\", got {s:?}"
            ))),
        }
    }
}

/// A number of meters or the literal string `"footprint"` (use the
/// across-track footprint extent at the resolved altitude).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SpacingSpec {
    #[default]
    Footprint,
    Meters(f64),
}

impl<'de> Deserialize<'de> for SpacingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(v) => Ok(SpacingSpec::Meters(v)),
            Raw::Text(s) if s == "footprint" => Ok(SpacingSpec::Footprint),
            Raw::Text(s) => Err(serde::de::Error::custom(format!(
                "expected a number of meters or \"footprint\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraConfig {
    pub fov_h_deg: f64,
    pub fov_v_deg: f64,
    pub px_h: u32,
    pub px_v: u32,
    pub framerate_hz: f64,
    #[serde(default = "default_emissivity")]
    pub emissivity: f64,
}

fn default_emissivity() -> f64 {
    0.98
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub width_m: f64,
    pub height_m: f64,
    /// Characteristic dimension; defaults to sqrt(width * height).
    pub d_c_m: Option<f64>,
    #[serde(default = "default_n50_detection")]
    pub n50_detection: f64,
    #[serde(default = "default_n50_recognition")]
    pub n50_recognition: f64,
    #[serde(default = "default_n50_identification")]
    pub n50_identification: f64,
}

fn default_n50_detection() -> f64 {
    0.75
}
fn default_n50_recognition() -> f64 {
    3.0
}
fn default_n50_identification() -> f64 {
    6.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentConfig {
    pub wind_mps: [f64; 2],
    pub current_mps: [f64; 2],
    pub leeway_fraction: f64,
    pub diffusion_m2_per_s: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UncertaintyConfig {
    /// `"square"` or `"disk"`.
    pub shape: String,
    pub side_m: Option<f64>,
    pub radius_m: Option<f64>,
    #[serde(default)]
    pub center_m: [f64; 2],
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    /// Explicit search area; derived from the drift simulation when absent.
    pub width_m: Option<f64>,
    pub height_m: Option<f64>,
    pub center_m: Option<[f64; 2]>,
    /// Drift time between the accident and the search start.
    #[serde(default = "default_drift_lead")]
    pub drift_lead_s: f64,
    /// Quantile for the derived bounding box (1.0 = exact min/max box).
    #[serde(default = "default_area_quantile")]
    pub area_quantile: f64,
}

fn default_drift_lead() -> f64 {
    1200.0
}
fn default_area_quantile() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MissionConfig {
    /// `"lawnmower"`, `"expanding_square"` or `"sector"`.
    pub pattern: String,
    pub speed_mps: f64,
    pub altitude_m: AltitudeSpec,
    #[serde(default = "default_h_min")]
    pub h_min_m: f64,
    #[serde(default = "default_h_max")]
    pub h_max_m: f64,
    #[serde(default = "default_altitude_tolerance")]
    pub altitude_tolerance_m: f64,
    /// Lawnmower track spacing; `"footprint"` ties it to FS_H.
    #[serde(default)]
    pub track_spacing: SpacingSpec,
    /// Lawnmower leg orientation: `"auto"` (legs parallel to the dominant
    /// drift axis, the standard drift-compensated choice), `"north_south"`
    /// or `"east_west"`.
    #[serde(default = "default_track_orientation")]
    pub track_orientation: String,
    /// Expanding-square leg increment; `"footprint"` ties it to FS_H.
    #[serde(default)]
    pub leg_increment: SpacingSpec,
    #[serde(default = "default_n_legs")]
    pub n_legs: usize,
    /// Sector-search radius; defaults to half the smaller area side.
    pub radius_m: Option<f64>,
    #[serde(default = "default_n_cycles")]
    pub n_cycles: usize,
    #[serde(default)]
    pub t0_s: f64,
    /// Search end; capped by the trajectory end and energy depletion.
    pub tf_s: Option<f64>,
    pub power_w: f64,
    pub e_total_j: f64,
    /// Decorrelation time between looks; defaults to the footprint transit
    /// time FS_V / speed.
    pub detection_interval_s: Option<f64>,
    pub survival_time_s: Option<f64>,
    #[serde(default)]
    pub rescue_delay_s: f64,
    pub n_targets: usize,
    pub u_max_mps: f64,
    pub omega_max_radps: f64,
}

fn default_track_orientation() -> String {
    "auto".to_string()
}

fn default_h_min() -> f64 {
    10.0
}
fn default_h_max() -> f64 {
    1000.0
}
fn default_altitude_tolerance() -> f64 {
    0.1
}
fn default_n_legs() -> usize {
    10
}
fn default_n_cycles() -> usize {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_seed")]
    pub master_seed: u64,
    #[serde(default = "default_particles")]
    pub particle_count: usize,
    #[serde(default = "default_m_runs")]
    pub m_runs: usize,
    #[serde(default = "default_drift_dt")]
    pub drift_dt_s: f64,
    #[serde(default = "default_traj_dt")]
    pub trajectory_dt_s: f64,
}

fn default_seed() -> u64 {
    42
}
fn default_particles() -> usize {
    10_000
}
fn default_m_runs() -> usize {
    200
}
fn default_drift_dt() -> f64 {
    10.0
}
fn default_traj_dt() -> f64 {
    0.5
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            master_seed: default_seed(),
            particle_count: default_particles(),
            m_runs: default_m_runs(),
            drift_dt_s: default_drift_dt(),
            trajectory_dt_s: default_traj_dt(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleConfig {
    /// `"disc"` or `"polygon"`.
    pub kind: String,
    pub center_m: Option<[f64; 2]>,
    pub radius_m: Option<f64>,
    pub vertices_m: Option<Vec<[f64; 2]>>,
    pub active_s: Option<[f64; 2]>,
}

/// The whole tool configuration.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolConfig {
    pub camera: CameraConfig,
    pub target: TargetConfig,
    pub environment: EnvironmentConfig,
    pub uncertainty: UncertaintyConfig,
    #[serde(default)]
    pub search: SearchConfig,
    pub mission: MissionConfig,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub obstacle: Vec<ObstacleConfig>,
}

impl ToolConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, CliError> {
        let config: ToolConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Io(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::from_toml_str(&text)
    }

    /// Enforce every model invariant with a field-path message.
    pub fn validate(&self) -> Result<(), CliError> {
        let c = &self.camera;
        for (value, path) in [(c.fov_h_deg, "camera.fov_h_deg"), (c.fov_v_deg, "camera.fov_v_deg")] {
            if !(value > 0.0 && value < 180.0) {
                return Err(invalid(path, "must lie in (0, 180) degrees"));
            }
        }
        if c.px_h == 0 {
            return Err(invalid("camera.px_h", "must be at least 1"));
        }
        if c.px_v == 0 {
            return Err(invalid("camera.px_v", "must be at least 1"));
        }
        if !(c.framerate_hz > 0.0) {
            return Err(invalid("camera.framerate_hz", "must be positive"));
        }
        if !(c.emissivity > 0.0 && c.emissivity <= 1.0) {
            return Err(invalid("camera.emissivity", "must lie in (0, 1]"));
        }

        let t = &self.target;
        if !(t.width_m > 0.0) {
            return Err(invalid("target.width_m", "must be positive"));
        }
        if !(t.height_m > 0.0) {
            return Err(invalid("target.height_m", "must be positive"));
        }
        if let Some(d_c) = t.d_c_m {
            if !(d_c > 0.0) {
                return Err(invalid("target.d_c_m", "must be positive"));
            }
        }
        if !(t.n50_detection > 0.0 && t.n50_detection < t.n50_recognition
            && t.n50_recognition < t.n50_identification)
        {
            return Err(invalid(
                "target.n50_detection",
                "n50 values must satisfy 0 < detection < recognition < identification",
            ));
        }

        let e = &self.environment;
        if !(0.0..=0.1).contains(&e.leeway_fraction) {
            return Err(invalid(
                "environment.leeway_fraction",
                "must lie in [0, 0.1] for a person in water",
            ));
        }
        if !(e.diffusion_m2_per_s >= 0.0) {
            return Err(invalid("environment.diffusion_m2_per_s", "must be non-negative"));
        }

        let u = &self.uncertainty;
        match u.shape.as_str() {
            "square" => match u.side_m {
                Some(side) if side > 0.0 => {}
                Some(_) => return Err(invalid("uncertainty.side_m", "must be positive")),
                None => {
                    return Err(invalid(
                        "uncertainty.side_m",
                        "required for shape = \"square\"",
                    ))
                }
            },
            "disk" => match u.radius_m {
                Some(r) if r > 0.0 => {}
                Some(_) => return Err(invalid("uncertainty.radius_m", "must be positive")),
                None => {
                    return Err(invalid(
                        "uncertainty.radius_m",
                        "required for shape = \"disk\"",
                    ))
                }
            },
            other => {
                return Err(invalid(
                    "uncertainty.shape",
                    format!("must be \"square\" or \"disk\", got {other:?}"),
                ))
            }
        }

        let s = &self.search;
        if s.width_m.is_some() != s.height_m.is_some() {
            return Err(invalid(
                "search.width_m",
                "width_m and height_m must be given together",
            ));
        }
        if let (Some(w), Some(h)) = (s.width_m, s.height_m) {
            if !(w > 0.0 && h > 0.0) {
                return Err(invalid("search.width_m", "area sides must be positive"));
            }
        }
        if !(s.drift_lead_s >= 0.0) {
            return Err(invalid("search.drift_lead_s", "must be non-negative"));
        }
        if !(s.area_quantile > 0.0 && s.area_quantile <= 1.0) {
            return Err(invalid("search.area_quantile", "must lie in (0, 1]"));
        }

        let m = &self.mission;
        if !matches!(m.pattern.as_str(), "lawnmower" | "expanding_square" | "sector") {
            return Err(invalid(
                "mission.pattern",
                format!(
                    "must be \"lawnmower\", \"expanding_square\" or \"sector\", got {:?}",
                    m.pattern
                ),
            ));
        }
        if !(m.speed_mps > 0.0) {
            return Err(invalid("mission.speed_mps", "must be positive"));
        }
        if !(m.u_max_mps > 0.0) {
            return Err(invalid("mission.u_max_mps", "must be positive"));
        }
        if m.speed_mps > m.u_max_mps {
            return Err(invalid("mission.speed_mps", "must not exceed mission.u_max_mps"));
        }
        if !(m.omega_max_radps > 0.0) {
            return Err(invalid("mission.omega_max_radps", "must be positive"));
        }
        if let AltitudeSpec::Fixed(h) = m.altitude_m {
            if !(h > 0.0) {
                return Err(invalid("mission.altitude_m", "must be positive"));
            }
        }
        if !(m.h_min_m > 0.0 && m.h_min_m < m.h_max_m) {
            return Err(invalid("mission.h_min_m", "must satisfy 0 < h_min_m < h_max_m"));
        }
        if !(m.altitude_tolerance_m > 0.0) {
            return Err(invalid("mission.altitude_tolerance_m", "must be positive"));
        }
        if let SpacingSpec::Meters(v) = m.track_spacing {
            if !(v > 0.0) {
                return Err(invalid("mission.track_spacing", "must be positive"));
            }
        }
        if !matches!(m.track_orientation.as_str(), "auto" | "north_south" | "east_west") {
            return Err(invalid(
                "mission.track_orientation",
                format!(
                    "must be \"auto\", \"north_south\" or \"east_west\", got {:?}",
                    m.track_orientation
                ),
            ));
        }
        if let SpacingSpec::Meters(v) = m.leg_increment {
            if !(v > 0.0) {
                return Err(invalid("mission.leg_increment", "must be positive"));
            }
        }
        if m.pattern == "expanding_square" && m.n_legs == 0 {
            return Err(invalid("mission.n_legs", "must be at least 1"));
        }
        if m.pattern == "sector" {
            if m.n_cycles == 0 {
                return Err(invalid("mission.n_cycles", "must be at least 1"));
            }
            if let Some(r) = m.radius_m {
                if !(r > 0.0) {
                    return Err(invalid("mission.radius_m", "must be positive"));
                }
            }
        }
        if let Some(tf) = m.tf_s {
            if !(tf > m.t0_s) {
                return Err(invalid("mission.tf_s", "must exceed mission.t0_s"));
            }
        }
        if !(m.power_w >= 0.0) {
            return Err(invalid("mission.power_w", "must be non-negative"));
        }
        if !(m.e_total_j > 0.0) {
            return Err(invalid("mission.e_total_j", "must be positive"));
        }
        if let Some(di) = m.detection_interval_s {
            if !(di > 0.0) {
                return Err(invalid("mission.detection_interval_s", "must be positive"));
            }
        }
        if let Some(st) = m.survival_time_s {
            if !(st > 0.0) {
                return Err(invalid("mission.survival_time_s", "must be positive"));
            }
        }
        if !(m.rescue_delay_s >= 0.0) {
            return Err(invalid("mission.rescue_delay_s", "must be non-negative"));
        }
        if m.n_targets == 0 {
            return Err(invalid("mission.n_targets", "must be at least 1"));
        }

        let r = &self.run;
        if r.particle_count == 0 {
            return Err(invalid("run.particle_count", "must be at least 1"));
        }
        if r.m_runs < 2 {
            return Err(invalid("run.m_runs", "must be at least 2"));
        }
        if !(r.drift_dt_s > 0.0) {
            return Err(invalid("run.drift_dt_s", "must be positive"));
        }
        if !(r.trajectory_dt_s > 0.0) {
            return Err(invalid("run.trajectory_dt_s", "must be positive"));
        }

        for (i, o) in self.obstacle.iter().enumerate() {
            let path = format!("obstacle[{i}]");
            match o.kind.as_str() {
                "disc" => {
                    if o.center_m.is_none() {
                        return Err(invalid(&format!("{path}.center_m"), "required for a disc"));
                    }
                    match o.radius_m {
                        Some(r) if r > 0.0 => {}
                        _ => {
                            return Err(invalid(
                                &format!("{path}.radius_m"),
                                "required and positive for a disc",
                            ))
                        }
                    }
                }
                "polygon" => match &o.vertices_m {
                    Some(v) if v.len() >= 3 => {}
                    _ => {
                        return Err(invalid(
                            &format!("{path}.vertices_m"),
                            "a polygon needs at least 3 vertices",
                        ))
                    }
                },
                other => {
                    return Err(invalid(
                        &format!("{path}.kind"),
                        format!("must be \"disc\" or \"polygon\", got {other:?}"),
                    ))
                }
            }
            if let Some([start, end]) = o.active_s {
                if !(end > start) {
                    return Err(invalid(
                        &format!("{path}.active_s"),
                        "window end must exceed its start",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn build_camera(&self) -> Result<CameraSpec, CliError> {
        CameraSpec::with_fov_degrees(
            self.camera.fov_h_deg,
            self.camera.fov_v_deg,
            self.camera.px_h,
            self.camera.px_v,
            self.camera.framerate_hz,
            self.camera.emissivity,
        )
        .map_err(|e| invalid("camera", e))
    }

    pub fn build_target(&self) -> Result<TargetModel, CliError> {
        let d_c = self
            .target
            .d_c_m
            .unwrap_or_else(|| (self.target.width_m * self.target.height_m).sqrt());
        TargetModel::new(
            self.target.width_m,
            self.target.height_m,
            d_c,
            self.target.n50_detection,
            self.target.n50_recognition,
            self.target.n50_identification,
        )
        .map_err(|e| invalid("target", e))
    }

    pub fn build_environment(&self) -> Result<EnvironmentConditions, CliError> {
        EnvironmentConditions::new(
            Vec2::new(self.environment.current_mps[0], self.environment.current_mps[1]),
            Vec2::new(self.environment.wind_mps[0], self.environment.wind_mps[1]),
            self.environment.leeway_fraction,
            self.environment.diffusion_m2_per_s,
        )
        .map_err(|e| invalid("environment", e))
    }

    pub fn build_uncertainty(&self) -> Result<InitialUncertainty, CliError> {
        let center = Vec2::new(self.uncertainty.center_m[0], self.uncertainty.center_m[1]);
        match self.uncertainty.shape.as_str() {
            "square" => InitialUncertainty::square(center, self.uncertainty.side_m.unwrap()),
            _ => InitialUncertainty::disk(center, self.uncertainty.radius_m.unwrap()),
        }
        .map_err(|e| invalid("uncertainty", e))
    }

    pub fn build_limits(&self) -> VehicleLimits {
        VehicleLimits {
            u_max: self.mission.u_max_mps,
            omega_max: self.mission.omega_max_radps,
        }
    }

    pub fn build_energy(&self) -> Result<EnergyModel, CliError> {
        EnergyModel::constant(self.mission.power_w, self.mission.e_total_j)
            .map_err(|e| invalid("mission.power_w", e))
    }

    pub fn build_obstacles(&self) -> Result<ObstacleRegion, CliError> {
        let mut obstacles = Vec::with_capacity(self.obstacle.len());
        for (i, o) in self.obstacle.iter().enumerate() {
            let shape = match o.kind.as_str() {
                "disc" => {
                    let c = o.center_m.unwrap();
                    Obstacle::disc(Vec2::new(c[0], c[1]), o.radius_m.unwrap())
                }
                _ => Obstacle::convex_polygon(
                    o.vertices_m
                        .as_ref()
                        .unwrap()
                        .iter()
                        .map(|v| Vec2::new(v[0], v[1]))
                        .collect(),
                ),
            }
            .map_err(|e| invalid(&format!("obstacle[{i}]"), e))?;
            obstacles.push(TimedObstacle {
                shape,
                active: o.active_s.map(|[a, b]| (a, b)),
            });
        }
        Ok(ObstacleRegion { obstacles })
    }

    /// Derive or read the search area.
    pub fn resolve_search_area(&self) -> Result<SearchArea, CliError> {
        if let (Some(w), Some(h)) = (self.search.width_m, self.search.height_m) {
            let center = self
                .search
                .center_m
                .map(|c| Vec2::new(c[0], c[1]))
                .unwrap_or(Vec2::new(
                    self.uncertainty.center_m[0],
                    self.uncertainty.center_m[1],
                ));
            return SearchArea::from_center(center, w, h)
                .map_err(|e| invalid("search.width_m", e));
        }
        let uncertainty = self.build_uncertainty()?;
        let environment = self.build_environment()?;
        let ensemble = init_ensemble(&uncertainty, self.run.particle_count, self.run.master_seed)
            .map_err(|e| invalid("run.particle_count", e))?;
        let drifted = if self.search.drift_lead_s > 0.0 {
            simulate(&ensemble, &environment, self.search.drift_lead_s, self.run.drift_dt_s)
                .map_err(|e| invalid("search.drift_lead_s", e))?
        } else {
            ensemble
        };
        bounding_area(&drifted, self.search.area_quantile)
            .map_err(|e| invalid("search.area_quantile", e))
    }

    /// Fixed altitude or the POS-maximizing one over the configured range.
    pub fn resolve_altitude(&self, area: &SearchArea) -> Result<f64, CliError> {
        match self.mission.altitude_m {
            AltitudeSpec::Fixed(h) => Ok(h),
            AltitudeSpec::Auto => {
                let camera = self.build_camera()?;
                let target = self.build_target()?;
                let best = optimal_altitude(
                    &camera,
                    &target,
                    area,
                    self.mission.h_min_m,
                    self.mission.h_max_m,
                    self.mission.altitude_tolerance_m,
                )
                .map_err(|e| invalid("mission.altitude_m", e))?;
                Ok(best.altitude)
            }
        }
    }

    fn spacing_meters(&self, spec: SpacingSpec, fs_h: f64) -> f64 {
        match spec {
            SpacingSpec::Footprint => fs_h,
            SpacingSpec::Meters(v) => v,
        }
    }

    /// Build the full mission scenario: search area, altitude, pattern
    /// trajectory, horizon and energy.
    pub fn resolve(&self) -> Result<ResolvedMission, CliError> {
        let camera = self.build_camera()?;
        let target = self.build_target()?;
        let environment = self.build_environment()?;
        let uncertainty = self.build_uncertainty()?;
        let limits = self.build_limits();
        let energy = self.build_energy()?;
        let obstacles = self.build_obstacles()?;
        let area = self.resolve_search_area()?;
        let altitude = self.resolve_altitude(&area)?;

        let view = ViewGeometry::nadir(altitude).map_err(|e| invalid("mission.altitude_m", e))?;
        let (fs_h, fs_v) =
            sensor::footprint(&camera, &view).map_err(|e| invalid("camera", e))?;

        let dt = self.run.trajectory_dt_s;
        let speed = self.mission.speed_mps;
        let trajectory = match self.mission.pattern.as_str() {
            "lawnmower" => {
                let spacing = self.spacing_meters(self.mission.track_spacing, fs_h);
                let east_west = match self.mission.track_orientation.as_str() {
                    "north_south" => false,
                    "east_west" => true,
                    // legs parallel to the dominant drift axis, so the fast
                    // vehicle overtakes the drift along the track instead of
                    // racing it across tracks
                    _ => {
                        let v = environment.drift_velocity();
                        v.x.abs() > v.y.abs()
                    }
                };
                if east_west {
                    let transposed =
                        SearchArea::from_center(area.center(), area.height(), area.width())
                            .map_err(|e| invalid("search.width_m", e))?;
                    generate_lawnmower(&transposed, spacing, speed, altitude, &limits, dt)
                        .map(|t| transpose_about_center(t, area.center()))
                } else {
                    generate_lawnmower(&area, spacing, speed, altitude, &limits, dt)
                }
            }
            "expanding_square" => {
                let increment = self.spacing_meters(self.mission.leg_increment, fs_h);
                generate_expanding_square(
                    area.center(),
                    increment,
                    self.mission.n_legs,
                    speed,
                    altitude,
                    &limits,
                    dt,
                )
            }
            _ => {
                let radius = self
                    .mission
                    .radius_m
                    .unwrap_or_else(|| area.width().min(area.height()) / 2.0);
                generate_sector_search(
                    area.center(),
                    radius,
                    self.mission.n_cycles,
                    speed,
                    altitude,
                    &limits,
                    dt,
                )
            }
        }
        .map_err(|e| invalid("mission.pattern", e))?;
        let trajectory = shift_trajectory(trajectory, self.mission.t0_s);

        // the search ends at the earliest of the configured horizon, the end
        // of the pattern, and energy depletion
        let t0 = self.mission.t0_s;
        let mut tf = self.mission.tf_s.unwrap_or(f64::INFINITY);
        tf = tf.min(trajectory.end_time());
        if let Some(depleted) = energy.depletion_time(t0) {
            tf = tf.min(depleted);
        }
        if !(tf > t0) {
            return Err(invalid("mission.tf_s", "resolved horizon is empty"));
        }

        let detection_interval = self
            .mission
            .detection_interval_s
            .unwrap_or(fs_v / speed);
        let rescue_model = if self.mission.rescue_delay_s > 0.0 {
            RescueModel::Delay {
                delay: self.mission.rescue_delay_s,
            }
        } else {
            RescueModel::Instant
        };

        let scenario = MissionScenario {
            n_targets: self.mission.n_targets,
            uncertainty,
            environment,
            camera,
            target_model: target,
            trajectory,
            limits,
            obstacles,
            energy,
            detection_interval,
            survival_time: self.mission.survival_time_s,
            rescue_model,
            t0,
            tf,
            master_seed: self.run.master_seed,
            drift_lead: self.search.drift_lead_s,
            drift_dt: self.run.drift_dt_s,
        };
        scenario.validate().map_err(|e| invalid("mission", e))?;

        Ok(ResolvedMission {
            scenario,
            area,
            altitude,
            fs_h,
            fs_v,
        })
    }
}

fn shift_trajectory(mut traj: Trajectory, offset: f64) -> Trajectory {
    if offset != 0.0 {
        for s in &mut traj.samples {
            s.time += offset;
        }
    }
    traj
}

/// Mirror a trajectory about the 45-degree diagonal through `center`,
/// swapping the roles of the x and y axes (north-south legs become
/// east-west legs). A mirrored trajectory keeps speeds and turn rates.
fn transpose_about_center(mut traj: Trajectory, center: Vec2) -> Trajectory {
    for s in &mut traj.samples {
        let dx = s.config.x - center.x;
        let dy = s.config.y - center.y;
        s.config.x = center.x + dy;
        s.config.y = center.y + dx;
        s.config.psi = msar_core::geometry::wrap_angle(std::f64::consts::FRAC_PI_2 - s.config.psi);
    }
    traj
}

/// A fully resolved mission ready for evaluation.
#[derive(Debug, Clone)]
pub struct ResolvedMission {
    pub scenario: MissionScenario,
    pub area: SearchArea,
    pub altitude: f64,
    pub fs_h: f64,
    pub fs_v: f64,
}
