//! Search-theory metrics: probability of containment (POC), probability of
//! success (POS = POC * POD), POS-versus-altitude curves and the altitude
//! that maximizes POS.
//!
//! POC here is instantaneous (single frame) under a uniform target prior:
//! the observed ground area divided by the search area, clamped to 1.
//! Mission-level success over time lives in [`crate::eval`].

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drift::SearchArea;
use crate::sensor::{self, CameraSpec, SensorError, TargetModel, Task, ViewGeometry};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("footprint extents must be positive, got ({0}, {1})")]
    FootprintNotPositive(f64, f64),
    #[error("search area dimensions must be positive, got ({0}, {1})")]
    AreaNotPositive(f64, f64),
    #[error("probability out of range [0, 1]: {0}")]
    ProbabilityOutOfRange(f64),
    #[error("altitude range must satisfy 0 < h_min < h_max, got [{0}, {1}]")]
    BadAltitudeRange(f64, f64),
    #[error("altitude curve needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("tolerance must be positive, got {0}")]
    ToleranceNotPositive(f64),
    #[error(transparent)]
    Sensor(#[from] SensorError),
}

/// One altitude sample of the POS curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosSample {
    pub altitude: f64,
    pub poc: f64,
    pub pod: f64,
    pub pos: f64,
}

/// POC/POD/POS sampled on a uniform altitude grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosCurve {
    pub samples: Vec<PosSample>,
    pub h_min: f64,
    pub h_max: f64,
    pub step: f64,
}

/// Result of the altitude optimization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalAltitude {
    /// POS-maximizing altitude, meters.
    pub altitude: f64,
    /// POS attained there.
    pub pos: f64,
    /// True when several coarse-grid samples tie for the maximum; the lowest
    /// altitude wins in that case (better resolution at equal POS).
    pub tied: bool,
}

/// Instantaneous probability of containment for one camera frame:
/// `min(1, footprint area / search area)` under a uniform target prior.
pub fn poc(footprint: (f64, f64), area: &SearchArea) -> Result<f64, MetricsError> {
    let (fs_h, fs_v) = footprint;
    if !(fs_h > 0.0 && fs_v > 0.0) {
        return Err(MetricsError::FootprintNotPositive(fs_h, fs_v));
    }
    let (w, h) = (area.width(), area.height());
    if !(w > 0.0 && h > 0.0) {
        return Err(MetricsError::AreaNotPositive(w, h));
    }
    Ok(((fs_h * fs_v) / (w * h)).min(1.0))
}

/// Probability of success: `POS = POC * POD`.
pub fn pos(poc: f64, pod: f64) -> Result<f64, MetricsError> {
    for p in [poc, pod] {
        if !(0.0..=1.0).contains(&p) {
            return Err(MetricsError::ProbabilityOutOfRange(p));
        }
    }
    Ok(poc * pod)
}

fn pos_at(
    camera: &CameraSpec,
    target: &TargetModel,
    area: &SearchArea,
    altitude: f64,
) -> Result<PosSample, MetricsError> {
    let view = ViewGeometry::nadir(altitude)?;
    let fs = sensor::footprint(camera, &view)?;
    let poc = poc(fs, area)?;
    let pod = sensor::pod_at_altitude(camera, target, &view, Task::Detection)?;
    Ok(PosSample {
        altitude,
        poc,
        pod,
        pos: poc * pod,
    })
}

/// Sample POC, POD (detection task) and POS on a uniform altitude grid.
pub fn pos_curve(
    camera: &CameraSpec,
    target: &TargetModel,
    area: &SearchArea,
    h_min: f64,
    h_max: f64,
    n_samples: usize,
) -> Result<PosCurve, MetricsError> {
    if !(h_min > 0.0 && h_min < h_max) {
        return Err(MetricsError::BadAltitudeRange(h_min, h_max));
    }
    if n_samples < 3 {
        return Err(MetricsError::TooFewSamples(n_samples));
    }
    let step = (h_max - h_min) / (n_samples - 1) as f64;
    let mut samples = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let h = if i == n_samples - 1 {
            h_max
        } else {
            h_min + i as f64 * step
        };
        samples.push(pos_at(camera, target, area, h)?);
    }
    Ok(PosCurve {
        samples,
        h_min,
        h_max,
        step,
    })
}

/// Golden-section maximization of `f` on `[a, b]` down to an interval of
/// width `tol`. Flat stretches resolve toward the left (lower) end.
fn golden_section_max(
    f: impl Fn(f64) -> Result<f64, MetricsError>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64), MetricsError> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Minimum number of coarse scan points used to bracket the global maximum
/// before golden-section refinement.
const COARSE_SCAN_POINTS: usize = 512;

/// Altitude maximizing POS on `[h_min, h_max]`, to `tolerance` meters.
///
/// A coarse grid scan brackets the best sample (unimodality is not assumed;
/// clamped-POC plateaus are possible), then golden-section search refines
/// inside the bracket. Ties on the coarse grid are flagged and resolved
/// toward the lowest altitude.
pub fn optimal_altitude(
    camera: &CameraSpec,
    target: &TargetModel,
    area: &SearchArea,
    h_min: f64,
    h_max: f64,
    tolerance: f64,
) -> Result<OptimalAltitude, MetricsError> {
    if !(h_min > 0.0 && h_min < h_max) {
        return Err(MetricsError::BadAltitudeRange(h_min, h_max));
    }
    if !(tolerance > 0.0) {
        return Err(MetricsError::ToleranceNotPositive(tolerance));
    }
    let n = COARSE_SCAN_POINTS;
    let step = (h_max - h_min) / (n - 1) as f64;
    let mut best_idx = 0usize;
    let mut best_pos = f64::NEG_INFINITY;
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        let h = if i == n - 1 { h_max } else { h_min + i as f64 * step };
        let sample = pos_at(camera, target, area, h)?;
        if sample.pos > best_pos {
            best_pos = sample.pos;
            best_idx = i;
        }
        grid.push(sample);
    }
    let tied = grid.iter().filter(|s| s.pos == best_pos).count() > 1;

    let lo = grid[best_idx.saturating_sub(1)].altitude;
    let hi = grid[(best_idx + 1).min(n - 1)].altitude;
    let objective = |h: f64| Ok(pos_at(camera, target, area, h)?.pos);
    let (h_refined, pos_refined) = golden_section_max(objective, lo, hi, tolerance)?;

    // Keep the better of the refined point and the exact coarse sample;
    // on equal POS the lower altitude wins.
    let coarse_better = best_pos > pos_refined
        || (best_pos == pos_refined && grid[best_idx].altitude <= h_refined);
    let (altitude, pos) = if coarse_better {
        (grid[best_idx].altitude, best_pos)
    } else {
        (h_refined, pos_refined)
    };
    Ok(OptimalAltitude {
        altitude,
        pos,
        tied,
    })
}

/// Write a POS curve as CSV with columns `altitude_m,poc,pod,pos`.
pub fn write_pos_curve_csv<W: Write>(out: &mut W, curve: &PosCurve) -> io::Result<()> {
    writeln!(out, "altitude_m,poc,pod,pos")?;
    for s in &curve.samples {
        writeln!(out, "{},{},{},{}", s.altitude, s.poc, s.pod, s.pos)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;

    fn example_camera() -> CameraSpec {
        CameraSpec::with_fov_degrees(25.0, 20.0, 640, 512, 50.0, 0.98).unwrap()
    }

    fn area_1200() -> SearchArea {
        SearchArea::from_center(Vec2::ZERO, 1200.0, 1200.0).unwrap()
    }

    #[test]
    fn poc_matches_ratio_oracle() {
        let p = poc((174.53293195981044, 139.62634556784835), &area_1200()).unwrap();
        assert!((p - 0.0169231912991599).abs() < 1e-12);
    }

    #[test]
    fn poc_clamps_to_one() {
        assert_eq!(poc((2000.0, 2000.0), &area_1200()).unwrap(), 1.0);
    }

    #[test]
    fn poc_vanishes_with_footprint() {
        let p = poc((1e-12, 1e-12), &area_1200()).unwrap();
        assert!(p > 0.0 && p < 1e-28);
        assert!(poc((0.0, 10.0), &area_1200()).is_err());
        assert!(poc((10.0, -1.0), &area_1200()).is_err());
    }

    #[test]
    fn pos_examples() {
        let p = pos(0.0169231912991599, 0.671232161673832).unwrap();
        assert!((p - 0.0169231912991599 * 0.671232161673832).abs() < 1e-15);
        assert!((p - 0.011359).abs() < 1e-4);
        assert_eq!(pos(1.0, 0.37).unwrap(), 0.37);
        assert_eq!(pos(0.0, 0.99).unwrap(), 0.0);
        assert!(pos(-0.1, 0.5).is_err());
        assert!(pos(0.5, 1.1).is_err());
    }

    #[test]
    fn pos_curve_is_monotone_and_consistent() {
        let curve = pos_curve(
            &example_camera(),
            &TargetModel::person_in_water(),
            &area_1200(),
            10.0,
            1000.0,
            200,
        )
        .unwrap();
        assert_eq!(curve.samples.len(), 200);
        for pair in curve.samples.windows(2) {
            assert!(pair[1].altitude > pair[0].altitude);
            assert!(pair[1].poc >= pair[0].poc, "POC not non-decreasing");
            assert!(pair[1].pod <= pair[0].pod, "POD not non-increasing");
        }
        for s in &curve.samples {
            assert!((s.pos - s.poc * s.pod).abs() <= 1e-12);
            assert!(s.pos <= s.poc.min(s.pod));
            assert!((0.0..=1.0).contains(&s.pos));
        }
    }

    #[test]
    fn pos_curve_rejects_bad_inputs() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        assert!(pos_curve(&cam, &t, &area_1200(), 0.0, 100.0, 10).is_err());
        assert!(pos_curve(&cam, &t, &area_1200(), 100.0, 100.0, 10).is_err());
        assert!(pos_curve(&cam, &t, &area_1200(), 10.0, 100.0, 2).is_err());
    }

    #[test]
    fn coarse_curve_argmax_matches_finer_grid() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let argmax = |curve: &PosCurve| {
            curve
                .samples
                .iter()
                .max_by(|a, b| a.pos.total_cmp(&b.pos))
                .unwrap()
                .altitude
        };
        let coarse = pos_curve(&cam, &t, &area_1200(), 10.0, 1000.0, 4096).unwrap();
        let fine = pos_curve(&cam, &t, &area_1200(), 10.0, 1000.0, 40960).unwrap();
        assert!((argmax(&coarse) - argmax(&fine)).abs() <= coarse.step);
    }

    #[test]
    fn optimal_altitude_matches_brute_force_grid() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let area = area_1200();
        let best = optimal_altitude(&cam, &t, &area, 10.0, 1000.0, 0.1).unwrap();

        // exhaustive oracle on a dense grid
        let n = 200_000;
        let mut brute_h = 10.0;
        let mut brute_pos = f64::NEG_INFINITY;
        for i in 0..n {
            let h = 10.0 + i as f64 * (990.0 / (n - 1) as f64);
            let p = pos_at(&cam, &t, &area, h).unwrap().pos;
            if p > brute_pos {
                brute_pos = p;
                brute_h = h;
            }
        }
        assert!(
            (best.altitude - brute_h).abs() <= 0.1,
            "optimizer {} vs brute force {}",
            best.altitude,
            brute_h
        );
        assert!(best.pos >= brute_pos - 1e-12);
        assert!(!best.tied);
    }

    #[test]
    fn optimizer_dominates_dense_validation_grid() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let area = area_1200();
        let best = optimal_altitude(&cam, &t, &area, 10.0, 1000.0, 0.05).unwrap();
        for i in 0..4096 {
            let h = 10.0 + i as f64 * (990.0 / 4095.0);
            let p = pos_at(&cam, &t, &area, h).unwrap().pos;
            assert!(
                best.pos >= p - 1e-12,
                "POS({h}) = {p} exceeds optimizer value {}",
                best.pos
            );
        }
    }

    #[test]
    fn optimal_altitude_clamped_area_returns_h_min() {
        // footprint exceeds this area from h_min on, so POC is 1 everywhere
        // and POS = POD, which is strictly decreasing
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let area = SearchArea::from_center(Vec2::ZERO, 3.0, 3.0).unwrap();
        let best = optimal_altitude(&cam, &t, &area, 10.0, 1000.0, 0.01).unwrap();
        assert_eq!(best.altitude, 10.0);
    }

    #[test]
    fn optimal_altitude_narrow_bracket_returns_endpoint() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let best = optimal_altitude(&cam, &t, &area_1200(), 500.0, 500.001, 0.1).unwrap();
        assert!((500.0..=500.001).contains(&best.altitude));
    }

    #[test]
    fn optimal_altitude_rejects_bad_inputs() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        assert!(optimal_altitude(&cam, &t, &area_1200(), 100.0, 10.0, 0.1).is_err());
        assert!(optimal_altitude(&cam, &t, &area_1200(), 10.0, 100.0, 0.0).is_err());
    }

    #[test]
    fn doubling_area_sides_quarters_unclamped_poc() {
        let cam = example_camera();
        let t = TargetModel::person_in_water();
        let small = area_1200();
        let big = SearchArea::from_center(Vec2::ZERO, 2400.0, 2400.0).unwrap();
        for i in 0..50 {
            let h = 20.0 + i as f64 * 19.0;
            let ps = pos_at(&cam, &t, &small, h).unwrap();
            let pb = pos_at(&cam, &t, &big, h).unwrap();
            if ps.poc < 1.0 {
                assert!((ps.poc / pb.poc - 4.0).abs() < 1e-9, "h = {h}");
                assert!((ps.pos / pb.pos - 4.0).abs() < 1e-9, "h = {h}");
            }
        }
        // argmax unchanged while no clamping is active on the scanned range
        let b_small = optimal_altitude(&cam, &t, &small, 10.0, 1000.0, 0.05).unwrap();
        let b_big = optimal_altitude(&cam, &t, &big, 10.0, 1000.0, 0.05).unwrap();
        assert!((b_small.altitude - b_big.altitude).abs() <= 0.1);
    }

    #[test]
    fn pos_curve_csv_schema() {
        let curve = PosCurve {
            samples: vec![PosSample {
                altitude: 100.0,
                poc: 0.25,
                pod: 0.5,
                pos: 0.125,
            }],
            h_min: 100.0,
            h_max: 100.0,
            step: 0.0,
        };
        let mut buf = Vec::new();
        write_pos_curve_csv(&mut buf, &curve).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "altitude_m,poc,pod,pos\n100,0.25,0.5,0.125\n"
        );
    }
}
