//! Thermal-camera detection model.
//!
//! Maps camera geometry and altitude to ground sample distance (GSD),
//! cycles on target and task probabilities via Johnson's Criteria. The
//! camera is assumed to point at nadir for probability computations; the
//! vertical GSD formula supports a tilt angle for footprint geometry only.
//!
//! All angles are radians internally. Configuration layers convert from
//! degrees on ingest.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Literature rule of thumb: a person should span at least this many pixels
/// for reliable thermal detection. Secondary sanity check only; the primary
/// criterion is [`johnson_probability`].
pub const DETECTION_PIXEL_RULE: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SensorError {
    #[error("camera field of view must lie in (0, pi) rad, got {0}")]
    FovOutOfRange(f64),
    #[error("camera pixel count must be >= 1")]
    PixelCountZero,
    #[error("camera framerate must be positive, got {0}")]
    FramerateNotPositive(f64),
    #[error("emissivity setting must lie in (0, 1], got {0}")]
    EmissivityOutOfRange(f64),
    #[error("target dimension must be positive, got {0}")]
    TargetDimensionNotPositive(f64),
    #[error("n50 thresholds must satisfy 0 < detection < recognition < identification, got ({0}, {1}, {2})")]
    N50Unordered(f64, f64, f64),
    #[error("altitude must be positive, got {0}")]
    AltitudeNotPositive(f64),
    #[error("tilt must lie in [0, pi/2), got {0}")]
    TiltOutOfRange(f64),
    #[error("cycle count must be non-negative, got {0}")]
    CyclesNegative(f64),
    #[error("n50 must be positive, got {0}")]
    N50NotPositive(f64),
    #[error("GSD must be positive, got {0}")]
    GsdNotPositive(f64),
    #[error("characteristic dimension must be positive, got {0}")]
    CharacteristicDimensionNotPositive(f64),
    #[error("detection probabilities are only defined at nadir (tilt = 0), got tilt {0}")]
    PodRequiresNadir(f64),
}

/// Lens and detector geometry plus framerate.
///
/// `emissivity_setting` is the value the camera would be configured with;
/// it is carried as metadata and never enters any computation here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CameraSpec {
    /// Horizontal field of view, radians.
    pub fov_h: f64,
    /// Vertical field of view, radians.
    pub fov_v: f64,
    /// Horizontal sensor size in pixels.
    pub px_h: u32,
    /// Vertical sensor size in pixels.
    pub px_v: u32,
    /// Frames per second.
    pub framerate: f64,
    /// Configured emissivity, dimensionless in (0, 1]. Informational only.
    pub emissivity_setting: f64,
}

impl CameraSpec {
    pub fn new(
        fov_h: f64,
        fov_v: f64,
        px_h: u32,
        px_v: u32,
        framerate: f64,
        emissivity_setting: f64,
    ) -> Result<Self, SensorError> {
        for fov in [fov_h, fov_v] {
            if !(fov > 0.0 && fov < std::f64::consts::PI) {
                return Err(SensorError::FovOutOfRange(fov));
            }
        }
        if px_h == 0 || px_v == 0 {
            return Err(SensorError::PixelCountZero);
        }
        if !(framerate > 0.0) {
            return Err(SensorError::FramerateNotPositive(framerate));
        }
        if !(emissivity_setting > 0.0 && emissivity_setting <= 1.0) {
            return Err(SensorError::EmissivityOutOfRange(emissivity_setting));
        }
        Ok(CameraSpec {
            fov_h,
            fov_v,
            px_h,
            px_v,
            framerate,
            emissivity_setting,
        })
    }

    /// Convenience constructor taking the fields of view in degrees.
    pub fn with_fov_degrees(
        fov_h_deg: f64,
        fov_v_deg: f64,
        px_h: u32,
        px_v: u32,
        framerate: f64,
        emissivity_setting: f64,
    ) -> Result<Self, SensorError> {
        CameraSpec::new(
            fov_h_deg.to_radians(),
            fov_v_deg.to_radians(),
            px_h,
            px_v,
            framerate,
            emissivity_setting,
        )
    }
}

/// Person-in-water dimensions and Johnson n50 task thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetModel {
    /// Apparent width, meters.
    pub width: f64,
    /// Apparent height, meters.
    pub height: f64,
    /// Characteristic dimension d_c, meters.
    pub d_c: f64,
    /// Cycles for 50% detection performance.
    pub n50_detection: f64,
    /// Cycles for 50% recognition performance.
    pub n50_recognition: f64,
    /// Cycles for 50% identification performance.
    pub n50_identification: f64,
}

impl TargetModel {
    pub fn new(
        width: f64,
        height: f64,
        d_c: f64,
        n50_detection: f64,
        n50_recognition: f64,
        n50_identification: f64,
    ) -> Result<Self, SensorError> {
        for dim in [width, height, d_c] {
            if !(dim > 0.0) {
                return Err(SensorError::TargetDimensionNotPositive(dim));
            }
        }
        if !(n50_detection > 0.0 && n50_detection < n50_recognition && n50_recognition < n50_identification) {
            return Err(SensorError::N50Unordered(
                n50_detection,
                n50_recognition,
                n50_identification,
            ));
        }
        Ok(TargetModel {
            width,
            height,
            d_c,
            n50_detection,
            n50_recognition,
            n50_identification,
        })
    }

    /// Default person-in-water model: 0.5 x 0.5 m apparent size, d_c 0.5 m,
    /// n50 thresholds 0.75 / 3.0 / 6.0 cycles.
    pub fn person_in_water() -> Self {
        TargetModel::new(0.5, 0.5, 0.5, 0.75, 3.0, 6.0).expect("constants satisfy invariants")
    }

    pub fn n50_for(&self, task: Task) -> f64 {
        match task {
            Task::Detection => self.n50_detection,
            Task::Recognition => self.n50_recognition,
            Task::Identification => self.n50_identification,
        }
    }
}

/// Camera placement relative to the sea surface.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViewGeometry {
    /// Altitude above the sea surface, meters.
    pub altitude: f64,
    /// Viewing angle from nadir, radians. Zero means pointing straight down.
    pub tilt: f64,
}

impl ViewGeometry {
    pub fn new(altitude: f64, tilt: f64) -> Result<Self, SensorError> {
        if !(altitude > 0.0) {
            return Err(SensorError::AltitudeNotPositive(altitude));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&tilt) {
            return Err(SensorError::TiltOutOfRange(tilt));
        }
        Ok(ViewGeometry { altitude, tilt })
    }

    /// Nadir view at the given altitude.
    pub fn nadir(altitude: f64) -> Result<Self, SensorError> {
        ViewGeometry::new(altitude, 0.0)
    }
}

/// Image axis selector for per-axis quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Johnson task level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Task {
    Detection,
    Recognition,
    Identification,
}

/// Which GSD feeds the cycle count in [`pod_at_altitude`].
///
/// At nadir with square pixels the two axes are nearly equal; the horizontal
/// axis is the default, the geometric mean is available as an option.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GsdAxisMode {
    Horizontal,
    GeometricMean,
}

/// Ground sample distance in meters per pixel along the requested axis.
///
/// `GSD_H = 2R tan(FOV_H / (2 PX_H))` and
/// `GSD_V = (2R / cos tilt) tan(FOV_V / (2 PX_V))`, with `R` the slant range
/// to the footprint center: `altitude / cos(tilt)`, which reduces to the
/// altitude at nadir.
pub fn gsd(camera: &CameraSpec, view: &ViewGeometry, axis: Axis) -> Result<f64, SensorError> {
    if !(view.altitude > 0.0) {
        return Err(SensorError::AltitudeNotPositive(view.altitude));
    }
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&view.tilt) {
        return Err(SensorError::TiltOutOfRange(view.tilt));
    }
    let slant_range = view.altitude / view.tilt.cos();
    let value = match axis {
        Axis::Horizontal => {
            2.0 * slant_range * (camera.fov_h / (2.0 * camera.px_h as f64)).tan()
        }
        Axis::Vertical => {
            (2.0 * slant_range / view.tilt.cos())
                * (camera.fov_v / (2.0 * camera.px_v as f64)).tan()
        }
    };
    Ok(value)
}

/// Number of cycles across a target: `n = d_c / (2 GSD)`.
pub fn cycles_on_target(d_c: f64, gsd: f64) -> Result<f64, SensorError> {
    if !(d_c > 0.0) {
        return Err(SensorError::CharacteristicDimensionNotPositive(d_c));
    }
    if !(gsd > 0.0) {
        return Err(SensorError::GsdNotPositive(gsd));
    }
    Ok(d_c / (2.0 * gsd))
}

/// Log-odds of the Johnson target transfer probability function:
/// `E * ln(n / n50)` with `E = 2.7 + 0.7 * (n / n50)`.
///
/// [`johnson_probability`] is the logistic transform of this value. The
/// log-odds never saturate in double precision, so they are the right
/// quantity for strict monotonicity checks where the probability itself
/// rounds to exactly 0 or 1.
pub fn johnson_log_odds(n: f64, n50: f64) -> Result<f64, SensorError> {
    if !(n >= 0.0) {
        return Err(SensorError::CyclesNegative(n));
    }
    if !(n50 > 0.0) {
        return Err(SensorError::N50NotPositive(n50));
    }
    if n == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let x = n / n50;
    let exponent = 2.7 + 0.7 * x;
    Ok(exponent * x.ln())
}

/// Johnson's Criteria task probability for `n` resolvable cycles against a
/// 50%-performance threshold `n50`.
///
/// Target transfer probability function `P = x^E / (1 + x^E)` with
/// `x = n / n50` and the shared exponent `E = 2.7 + 0.7 x`, evaluated in log
/// space. `P(0) = 0`, `P(n50) = 0.5`, `P -> 1` as `n -> inf`, strictly
/// increasing in `n`.
pub fn johnson_probability(n: f64, n50: f64) -> Result<f64, SensorError> {
    let log_odds = johnson_log_odds(n, n50)?;
    if log_odds == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok(1.0 / (1.0 + (-log_odds).exp()))
}

/// Task probability at a given nadir view, composing GSD, cycles on target
/// and the Johnson probability with the task's n50.
pub fn pod_at_altitude(
    camera: &CameraSpec,
    target: &TargetModel,
    view: &ViewGeometry,
    task: Task,
) -> Result<f64, SensorError> {
    pod_at_altitude_with_axis(camera, target, view, task, GsdAxisMode::Horizontal)
}

/// [`pod_at_altitude`] with an explicit choice of which GSD feeds the cycle
/// count.
pub fn pod_at_altitude_with_axis(
    camera: &CameraSpec,
    target: &TargetModel,
    view: &ViewGeometry,
    task: Task,
    mode: GsdAxisMode,
) -> Result<f64, SensorError> {
    if view.tilt != 0.0 {
        return Err(SensorError::PodRequiresNadir(view.tilt));
    }
    let sample_distance = match mode {
        GsdAxisMode::Horizontal => gsd(camera, view, Axis::Horizontal)?,
        GsdAxisMode::GeometricMean => {
            (gsd(camera, view, Axis::Horizontal)? * gsd(camera, view, Axis::Vertical)?).sqrt()
        }
    };
    let n = cycles_on_target(target.d_c, sample_distance)?;
    johnson_probability(n, target.n50_for(task))
}

/// Linear pixel extent of the target at the given GSD: `width / GSD`.
///
/// Compare against [`DETECTION_PIXEL_RULE`] as a secondary sanity check on a
/// chosen altitude.
pub fn pixels_on_target(target: &TargetModel, gsd: f64) -> Result<f64, SensorError> {
    if !(gsd > 0.0) {
        return Err(SensorError::GsdNotPositive(gsd));
    }
    Ok(target.width / gsd)
}

/// Ground footprint of the full frame, `(FS_H, FS_V)` in meters:
/// `FS_dir = GSD_dir * PX_dir`.
pub fn footprint(camera: &CameraSpec, view: &ViewGeometry) -> Result<(f64, f64), SensorError> {
    let fs_h = gsd(camera, view, Axis::Horizontal)? * camera.px_h as f64;
    let fs_v = gsd(camera, view, Axis::Vertical)? * camera.px_v as f64;
    Ok((fs_h, fs_v))
}

/// Theoretical upper bound on search speed for gap-free ground coverage:
/// the along-track footprint extent (FS_V) times the framerate.
///
/// This is a loose bound; practical search speed is far more tightly
/// constrained by the airframe and by detection decorrelation.
pub fn max_coverage_speed(camera: &CameraSpec, view: &ViewGeometry) -> Result<f64, SensorError> {
    let (_, fs_v) = footprint(camera, view)?;
    Ok(fs_v * camera.framerate)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example_camera() -> CameraSpec {
        CameraSpec::with_fov_degrees(25.0, 20.0, 640, 512, 50.0, 0.98).unwrap()
    }

    fn nadir(altitude: f64) -> ViewGeometry {
        ViewGeometry::nadir(altitude).unwrap()
    }

    // Independent oracle: direct evaluation of the printed formulas.
    fn gsd_oracle(fov: f64, px: u32, range: f64) -> f64 {
        2.0 * range * (fov / (2.0 * px as f64)).tan()
    }

    fn ttpf_oracle(n: f64, n50: f64) -> f64 {
        let x = n / n50;
        let e = 2.7 + 0.7 * x;
        x.powf(e) / (1.0 + x.powf(e))
    }

    #[test]
    fn gsd_matches_formula_oracle() {
        let cam = example_camera();
        let g_h = gsd(&cam, &nadir(100.0), Axis::Horizontal).unwrap();
        assert!((g_h - gsd_oracle(25f64.to_radians(), 640, 100.0)).abs() < 1e-15);
        assert!((g_h - 0.06817692654680095).abs() < 1e-12);

        let g_v = gsd(&cam, &nadir(400.0), Axis::Vertical).unwrap();
        assert!((g_v - gsd_oracle(20f64.to_radians(), 512, 400.0)).abs() < 1e-15);
        assert!((g_v - 0.2727077061872038).abs() < 1e-12);
    }

    #[test]
    fn gsd_is_linear_in_altitude() {
        let cam = example_camera();
        let g1 = gsd(&cam, &nadir(123.0), Axis::Horizontal).unwrap();
        let g2 = gsd(&cam, &nadir(246.0), Axis::Horizontal).unwrap();
        assert!((g2 / g1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn gsd_rejects_bad_view() {
        let cam = example_camera();
        assert!(ViewGeometry::new(100.0, std::f64::consts::FRAC_PI_2).is_err());
        assert!(ViewGeometry::new(0.0, 0.0).is_err());
        // direct struct with out-of-range tilt is rejected by gsd itself
        let bad = ViewGeometry {
            altitude: 100.0,
            tilt: 1.6,
        };
        assert!(matches!(
            gsd(&cam, &bad, Axis::Horizontal),
            Err(SensorError::TiltOutOfRange(_))
        ));
    }

    #[test]
    fn cycles_on_target_examples() {
        assert_eq!(cycles_on_target(0.5, 0.25).unwrap(), 1.0);
        let n = cycles_on_target(0.5, 0.06817692654680095).unwrap();
        assert!((n - 3.6669297468020092).abs() < 1e-12);
        let n = cycles_on_target(0.5, 0.2727077061872038).unwrap();
        assert!((n - 0.9167324367005023).abs() < 1e-10);
        assert!(cycles_on_target(0.0, 0.25).is_err());
        assert!(cycles_on_target(0.5, 0.0).is_err());
        assert!(cycles_on_target(0.5, -1.0).is_err());
    }

    #[test]
    fn johnson_probability_examples() {
        assert_eq!(johnson_probability(0.0, 0.75).unwrap(), 0.0);
        assert_eq!(johnson_probability(0.75, 0.75).unwrap(), 0.5);
        let p = johnson_probability(1.5, 0.75).unwrap();
        assert!((p - ttpf_oracle(1.5, 0.75)).abs() < 1e-12);
        assert!((p - 0.9448986491668007).abs() < 1e-12);
        assert!(johnson_probability(-0.1, 0.75).is_err());
        assert!(johnson_probability(1.0, 0.0).is_err());
    }

    #[test]
    fn johnson_midpoint_is_exact_across_n50_sweep() {
        for n50 in [0.1, 0.75, 3.0, 6.0, 10.0] {
            let p = johnson_probability(n50, n50).unwrap();
            assert!((p - 0.5).abs() <= 1e-12, "P(n50={n50}) = {p}");
        }
    }

    #[test]
    fn johnson_probability_is_increasing_and_bounded() {
        // Log-odds carry strictness through the regions where the
        // probability itself saturates to 1.0 in double precision.
        let mut prev_p = -1.0;
        let mut prev_lo = f64::NEG_INFINITY;
        for i in 0..1000 {
            let n = 1e-3 + i as f64 * 0.05;
            let p = johnson_probability(n, 0.75).unwrap();
            let lo = johnson_log_odds(n, 0.75).unwrap();
            assert!((0.0..=1.0).contains(&p));
            assert!(p >= prev_p);
            assert!(lo > prev_lo, "log-odds not strictly increasing at n={n}");
            prev_p = p;
            prev_lo = lo;
        }
    }

    #[test]
    fn pod_examples_match_chained_oracle() {
        let cam = example_camera();
        let target = TargetModel::person_in_water();
        let p100 = pod_at_altitude(&cam, &target, &nadir(100.0), Task::Detection).unwrap();
        assert!((p100 - 0.9999397279417674).abs() < 1e-12);
        let p400 = pod_at_altitude(&cam, &target, &nadir(400.0), Task::Detection).unwrap();
        assert!((p400 - 0.671232161673832).abs() < 1e-12);
        let p400_id = pod_at_altitude(&cam, &target, &nadir(400.0), Task::Identification).unwrap();
        assert!(p400_id < p400);
    }

    #[test]
    fn pod_is_strictly_decreasing_in_altitude() {
        let cam = example_camera();
        let target = TargetModel::person_in_water();
        let mut prev = f64::INFINITY;
        for i in 0..1000 {
            let h = 10.0 + i as f64 * (990.0 / 999.0);
            // strictness via log-odds, which do not saturate
            let g = gsd(&cam, &nadir(h), Axis::Horizontal).unwrap();
            let n = cycles_on_target(target.d_c, g).unwrap();
            let lo = johnson_log_odds(n, target.n50_detection).unwrap();
            assert!(lo < prev, "log-odds not strictly decreasing at h={h}");
            prev = lo;
        }
    }

    #[test]
    fn task_ordering_holds_pointwise() {
        let cam = example_camera();
        let target = TargetModel::person_in_water();
        for i in 0..200 {
            let h = 10.0 + i as f64 * 5.0;
            let view = nadir(h);
            let det = pod_at_altitude(&cam, &target, &view, Task::Detection).unwrap();
            let rec = pod_at_altitude(&cam, &target, &view, Task::Recognition).unwrap();
            let id = pod_at_altitude(&cam, &target, &view, Task::Identification).unwrap();
            assert!(det >= rec && rec >= id, "ordering violated at h={h}");
        }
    }

    #[test]
    fn pod_rejects_tilted_views() {
        let cam = example_camera();
        let target = TargetModel::person_in_water();
        let view = ViewGeometry::new(100.0, 0.2).unwrap();
        assert!(matches!(
            pod_at_altitude(&cam, &target, &view, Task::Detection),
            Err(SensorError::PodRequiresNadir(_))
        ));
    }

    #[test]
    fn pixels_on_target_examples() {
        let target = TargetModel::person_in_water();
        assert_eq!(pixels_on_target(&target, 0.1).unwrap(), 5.0);
        let px = pixels_on_target(&target, 0.06817692654680095).unwrap();
        assert!((px - 7.3338594936040185).abs() < 1e-10);
        assert_eq!(pixels_on_target(&target, 0.5).unwrap(), 1.0);
        assert!(pixels_on_target(&target, 0.0).is_err());
    }

    #[test]
    fn footprint_examples_and_identity() {
        let cam = example_camera();
        let (fs_h, fs_v) = footprint(&cam, &nadir(400.0)).unwrap();
        assert!((fs_h - 174.53293195981044).abs() < 1e-9);
        assert!((fs_v - 139.62634556784835).abs() < 1e-9);

        // exact identity FS = GSD * PX
        let g_h = gsd(&cam, &nadir(400.0), Axis::Horizontal).unwrap();
        let g_v = gsd(&cam, &nadir(400.0), Axis::Vertical).unwrap();
        assert_eq!(fs_h, g_h * 640.0);
        assert_eq!(fs_v, g_v * 512.0);

        // linearity: 100 m footprint is exactly a quarter of the 400 m one
        let (q_h, q_v) = footprint(&cam, &nadir(100.0)).unwrap();
        assert!((q_h * 4.0 - fs_h).abs() < 1e-9);
        assert!((q_v * 4.0 - fs_v).abs() < 1e-9);

        // degenerate single-pixel camera: footprint equals per-pixel GSD
        let tiny = CameraSpec::with_fov_degrees(25.0, 20.0, 1, 1, 50.0, 0.98).unwrap();
        let (t_h, t_v) = footprint(&tiny, &nadir(250.0)).unwrap();
        assert_eq!(t_h, gsd(&tiny, &nadir(250.0), Axis::Horizontal).unwrap());
        assert_eq!(t_v, gsd(&tiny, &nadir(250.0), Axis::Vertical).unwrap());
    }

    #[test]
    fn max_coverage_speed_examples() {
        let cam = example_camera();
        let v = max_coverage_speed(&cam, &nadir(400.0)).unwrap();
        assert!((v - 6981.317278392417).abs() < 1e-6);

        let one_hz = CameraSpec::new(cam.fov_h, cam.fov_v, cam.px_h, cam.px_v, 1.0, 0.98).unwrap();
        let (_, fs_v) = footprint(&one_hz, &nadir(400.0)).unwrap();
        assert_eq!(max_coverage_speed(&one_hz, &nadir(400.0)).unwrap(), fs_v);

        let half = max_coverage_speed(&cam, &nadir(200.0)).unwrap();
        assert!((half * 2.0 - v).abs() < 1e-9);
    }

    #[test]
    fn constructors_reject_invariant_violations() {
        assert!(CameraSpec::new(0.0, 0.3, 640, 512, 50.0, 0.98).is_err());
        assert!(CameraSpec::new(0.4, 3.2, 640, 512, 50.0, 0.98).is_err());
        assert!(CameraSpec::new(0.4, 0.3, 0, 512, 50.0, 0.98).is_err());
        assert!(CameraSpec::new(0.4, 0.3, 640, 512, 0.0, 0.98).is_err());
        assert!(CameraSpec::new(0.4, 0.3, 640, 512, 50.0, 0.0).is_err());
        assert!(CameraSpec::new(0.4, 0.3, 640, 512, 50.0, 1.1).is_err());
        assert!(TargetModel::new(0.5, 0.5, 0.5, 3.0, 0.75, 6.0).is_err());
        assert!(TargetModel::new(-0.5, 0.5, 0.5, 0.75, 3.0, 6.0).is_err());
    }
}
