//! Standard SAR search-pattern generators.
//!
//! All patterns are built from straight legs joined by constant-rate turn
//! arcs, sampled at a fixed time step. Identical inputs produce bitwise
//! identical trajectories.

use std::f64::consts::PI;

use crate::drift::SearchArea;
use crate::geometry::Vec2;
use crate::mission::path::{filleted_path, PathElement, PiecewisePath};
use crate::mission::{Configuration, MissionError, Trajectory, VehicleLimits};

fn validate_speed(speed: f64, limits: &VehicleLimits) -> Result<(), MissionError> {
    if !(speed > 0.0) {
        return Err(MissionError::SpeedNotPositive(speed));
    }
    if speed > limits.u_max {
        return Err(MissionError::ControlOutOfBounds {
            u: speed,
            omega: 0.0,
            u_max: limits.u_max,
            omega_max: limits.omega_max,
        });
    }
    Ok(())
}

/// Parallel-track (lawnmower) coverage of an axis-aligned search area.
///
/// Tracks run south-north along the y-axis and progress west to east with an
/// effective spacing of `width / n_tracks <= track_spacing`. Adjacent tracks
/// are joined by semicircular turns of radius `spacing / 2`, so the
/// trajectory stays within the area inflated by the turn radius. An area
/// narrower than one spacing degenerates to a single centered track.
pub fn generate_lawnmower(
    area: &SearchArea,
    track_spacing: f64,
    speed: f64,
    altitude: f64,
    limits: &VehicleLimits,
    dt: f64,
) -> Result<Trajectory, MissionError> {
    if !(track_spacing > 0.0) {
        return Err(MissionError::SpacingNotPositive(track_spacing));
    }
    validate_speed(speed, limits)?;

    let width = area.width();
    let height = area.height();
    let n_tracks = ((width / track_spacing).ceil() as usize).max(1);

    if n_tracks == 1 {
        let x = area.min.x + width / 2.0;
        let path = PiecewisePath::new(
            Configuration::new(x, area.min.y, PI / 2.0),
            vec![PathElement::Straight { len: height }],
        );
        return path.sample(speed, dt, 0.0, altitude);
    }

    let spacing = width / n_tracks as f64;
    let turn_radius = spacing / 2.0;
    // semicircle of radius spacing/2 requires omega = speed / radius
    let required_omega = speed / turn_radius;
    if required_omega > limits.omega_max {
        return Err(MissionError::InfeasibleTurn {
            leg_index: 0,
            leg_length: spacing,
            turn_radius: limits.turn_radius(speed)?,
        });
    }

    let mut elements = Vec::with_capacity(2 * n_tracks - 1);
    for i in 0..n_tracks {
        elements.push(PathElement::Straight { len: height });
        if i + 1 < n_tracks {
            // northbound legs turn clockwise (east), southbound counter-clockwise
            let angle = if i % 2 == 0 { -PI } else { PI };
            elements.push(PathElement::Arc {
                radius: turn_radius,
                angle,
            });
        }
    }
    let start = Configuration::new(area.min.x + spacing / 2.0, area.min.y, PI / 2.0);
    PiecewisePath::new(start, elements).sample(speed, dt, 0.0, altitude)
}

/// Expanding-square search from a point datum.
///
/// Starts at `center` heading north and spirals clockwise; the k-th pair of
/// legs is `k * leg_increment` long. Corners are 90-degree fillet arcs at
/// the minimum turn radius `speed / omega_max`.
pub fn generate_expanding_square(
    center: Vec2,
    leg_increment: f64,
    n_legs: usize,
    speed: f64,
    altitude: f64,
    limits: &VehicleLimits,
    dt: f64,
) -> Result<Trajectory, MissionError> {
    if !(leg_increment > 0.0) {
        return Err(MissionError::LegIncrementNotPositive(leg_increment));
    }
    if n_legs == 0 {
        return Err(MissionError::EmptyPattern);
    }
    validate_speed(speed, limits)?;
    let turn_radius = limits.turn_radius(speed)?;

    let legs: Vec<f64> = (1..=n_legs)
        .map(|k| k.div_ceil(2) as f64 * leg_increment)
        .collect();
    let deflections = vec![-PI / 2.0; n_legs - 1];
    let start = Configuration::new(center.x, center.y, PI / 2.0);
    filleted_path(start, &legs, &deflections, turn_radius)?.sample(speed, dt, 0.0, altitude)
}

/// Sector search around a point datum.
///
/// Each cycle flies three diameter legs of length `2 * radius` through the
/// datum, 120 degrees apart, joined by chords along the circle; successive
/// cycles are rotated by 30 degrees. Turns are fillet arcs at the minimum
/// turn radius.
pub fn generate_sector_search(
    center: Vec2,
    radius: f64,
    n_cycles: usize,
    speed: f64,
    altitude: f64,
    limits: &VehicleLimits,
    dt: f64,
) -> Result<Trajectory, MissionError> {
    if !(radius > 0.0) {
        return Err(MissionError::RadiusNotPositive(radius));
    }
    if n_cycles == 0 {
        return Err(MissionError::EmptyPattern);
    }
    validate_speed(speed, limits)?;
    let turn_radius = limits.turn_radius(speed)?;

    let diameter = 2.0 * radius;
    let chord = radius;
    // chord rotating the pattern by 30 degrees between cycles
    let transition = 2.0 * radius * (PI / 12.0).sin();

    let mut legs = Vec::new();
    let mut deflections = Vec::new();
    for cycle in 0..n_cycles {
        for j in 0..3 {
            legs.push(diameter);
            let last_leg_of_cycle = j == 2;
            if !last_leg_of_cycle {
                deflections.push(-2.0 * PI / 3.0);
                legs.push(chord);
                deflections.push(-2.0 * PI / 3.0);
            } else if cycle + 1 < n_cycles {
                deflections.push(-7.0 * PI / 12.0); // 105 degrees
                legs.push(transition);
                deflections.push(-7.0 * PI / 12.0);
            }
        }
    }
    // first diameter starts on the circle west of the datum, heading east
    let start = Configuration::new(center.x - radius, center.y, 0.0);
    filleted_path(start, &legs, &deflections, turn_radius)?.sample(speed, dt, 0.0, altitude)
}

/// Fraction of `area` covered by sweeping the camera footprint
/// (`fs_h` across track, `fs_v` along track) along the trajectory,
/// rasterized at `cell_size` meters.
///
/// Cells count as covered when their center falls inside the footprint at
/// some stamped pose. Poses are stamped densely enough (less than half a
/// footprint of motion, a couple of degrees of rotation) that consecutive
/// stamps overlap.
pub fn swept_coverage_fraction(
    traj: &Trajectory,
    fs_h: f64,
    fs_v: f64,
    area: &SearchArea,
    cell_size: f64,
) -> f64 {
    let nx = (area.width() / cell_size).ceil() as usize;
    let ny = (area.height() / cell_size).ceil() as usize;
    if nx == 0 || ny == 0 || traj.samples.is_empty() {
        return 0.0;
    }
    let mut covered = vec![false; nx * ny];

    let half_h = fs_h / 2.0;
    let half_v = fs_v / 2.0;
    let stamp_radius = half_h.hypot(half_v);

    let mut stamp = |pose: &Configuration| {
        let (sin_psi, cos_psi) = pose.psi.sin_cos();
        let ix_lo = (((pose.x - stamp_radius) - area.min.x) / cell_size).floor().max(0.0) as usize;
        let iy_lo = (((pose.y - stamp_radius) - area.min.y) / cell_size).floor().max(0.0) as usize;
        let ix_hi = ((((pose.x + stamp_radius) - area.min.x) / cell_size).ceil() as usize).min(nx);
        let iy_hi = ((((pose.y + stamp_radius) - area.min.y) / cell_size).ceil() as usize).min(ny);
        for iy in iy_lo..iy_hi {
            let cy = area.min.y + (iy as f64 + 0.5) * cell_size;
            for ix in ix_lo..ix_hi {
                if covered[iy * nx + ix] {
                    continue;
                }
                let cx = area.min.x + (ix as f64 + 0.5) * cell_size;
                let dx = cx - pose.x;
                let dy = cy - pose.y;
                let along = dx * cos_psi + dy * sin_psi;
                let across = -dx * sin_psi + dy * cos_psi;
                if along.abs() <= half_v && across.abs() <= half_h {
                    covered[iy * nx + ix] = true;
                }
            }
        }
    };

    let mut last: Option<Configuration> = None;
    let move_threshold = (half_v * 0.9).max(cell_size);
    for (i, sample) in traj.samples.iter().enumerate() {
        let pose = sample.config;
        let due = match last {
            None => true,
            Some(prev) => {
                let moved = (pose.position() - prev.position()).norm();
                let turned = (pose.psi - prev.psi).abs();
                moved >= move_threshold || turned >= 0.03 || i + 1 == traj.samples.len()
            }
        };
        if due {
            stamp(&pose);
            last = Some(pose);
        }
    }

    let hit = covered.iter().filter(|c| **c).count();
    hit as f64 / (nx * ny) as f64
}
