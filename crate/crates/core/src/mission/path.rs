//! Exact arc-length parameterization of straight/arc paths.
//!
//! Pattern generators describe their geometry as a sequence of straight legs
//! and constant-rate turn arcs, then sample it at a fixed time step. Poses
//! come from the closed-form constant-control unicycle solution, so sampled
//! trajectories satisfy the discrete dynamics residual to first order and
//! never violate the speed bound (a chord is never longer than its arc).

use crate::mission::{Configuration, MissionError, Trajectory, TrajectorySample};

#[derive(Debug, Clone, Copy)]
pub(crate) enum PathElement {
    Straight {
        len: f64,
    },
    /// Circular arc; `angle` is the signed heading change (positive =
    /// counter-clockwise), `radius > 0`.
    Arc {
        radius: f64,
        angle: f64,
    },
}

impl PathElement {
    fn length(&self) -> f64 {
        match *self {
            PathElement::Straight { len } => len,
            PathElement::Arc { radius, angle } => radius * angle.abs(),
        }
    }

    /// Exact pose after traveling `ds` along the element from `q`.
    fn propagate(&self, q: &Configuration, ds: f64) -> Configuration {
        match *self {
            PathElement::Straight { .. } => Configuration::new(
                q.x + ds * q.psi.cos(),
                q.y + ds * q.psi.sin(),
                q.psi,
            ),
            PathElement::Arc { radius, angle } => {
                let beta = angle.signum() * ds / radius;
                let k = angle.signum() * radius; // u / omega
                Configuration::new(
                    q.x + k * ((q.psi + beta).sin() - q.psi.sin()),
                    q.y - k * ((q.psi + beta).cos() - q.psi.cos()),
                    q.psi + beta,
                )
            }
        }
    }
}

#[derive(Debug)]
pub(crate) struct PiecewisePath {
    start: Configuration,
    elements: Vec<PathElement>,
    /// Exact pose at the start of each element.
    element_starts: Vec<Configuration>,
    /// Cumulative length at the start of each element.
    cumulative: Vec<f64>,
    total_length: f64,
}

impl PiecewisePath {
    pub(crate) fn new(start: Configuration, elements: Vec<PathElement>) -> Self {
        let mut element_starts = Vec::with_capacity(elements.len());
        let mut cumulative = Vec::with_capacity(elements.len());
        let mut pose = start;
        let mut s = 0.0;
        for elem in &elements {
            element_starts.push(pose);
            cumulative.push(s);
            pose = elem.propagate(&pose, elem.length());
            s += elem.length();
        }
        PiecewisePath {
            start,
            elements,
            element_starts,
            cumulative,
            total_length: s,
        }
    }

    pub(crate) fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Exact pose at arc length `s` (clamped to the path).
    pub(crate) fn pose_at(&self, s: f64) -> Configuration {
        if self.elements.is_empty() || s <= 0.0 {
            return self.start;
        }
        let s = s.min(self.total_length);
        // last element whose start is <= s
        let idx = match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).expect("finite lengths"))
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        let elem = &self.elements[idx];
        let local = (s - self.cumulative[idx]).min(elem.length());
        elem.propagate(&self.element_starts[idx], local)
    }

    /// Sample the path at constant `speed` on a uniform `dt` grid starting
    /// at `t0`; the exact endpoint is appended when it falls off-grid.
    pub(crate) fn sample(
        &self,
        speed: f64,
        dt: f64,
        t0: f64,
        altitude: f64,
    ) -> Result<Trajectory, MissionError> {
        if !(speed > 0.0) {
            return Err(MissionError::SpeedNotPositive(speed));
        }
        if !(dt > 0.0) {
            return Err(MissionError::StepNotPositive(dt));
        }
        let duration = self.total_length() / speed;
        let n_full = (duration / dt).floor() as usize;
        let mut samples = Vec::with_capacity(n_full + 2);
        for k in 0..=n_full {
            let t = k as f64 * dt;
            samples.push(TrajectorySample {
                time: t0 + t,
                config: self.pose_at(speed * t),
            });
        }
        if duration - n_full as f64 * dt > dt * 1e-9 {
            samples.push(TrajectorySample {
                time: t0 + duration,
                config: self.pose_at(self.total_length),
            });
        }
        Trajectory::new(samples, altitude, speed)
    }
}

/// Build a path from a turtle description: `legs[i]` straight distances with
/// `deflections[i]` signed heading changes between them, rounded with fillet
/// arcs of `turn_radius`.
///
/// Each fillet consumes `turn_radius * tan(|deflection| / 2)` from both
/// adjacent legs; a leg too short for its fillets is an infeasible turn.
pub(crate) fn filleted_path(
    start: Configuration,
    legs: &[f64],
    deflections: &[f64],
    turn_radius: f64,
) -> Result<PiecewisePath, MissionError> {
    assert_eq!(
        legs.len(),
        deflections.len() + 1,
        "turtle path needs one more leg than deflections"
    );
    let tangent = |d: f64| turn_radius * (d.abs() / 2.0).tan();
    let mut elements = Vec::with_capacity(legs.len() + deflections.len());
    for (i, &leg) in legs.iter().enumerate() {
        let cut_before = if i > 0 { tangent(deflections[i - 1]) } else { 0.0 };
        let cut_after = if i < deflections.len() {
            tangent(deflections[i])
        } else {
            0.0
        };
        let len = leg - cut_before - cut_after;
        if len < -1e-9 {
            return Err(MissionError::InfeasibleTurn {
                leg_index: i,
                leg_length: leg,
                turn_radius,
            });
        }
        if len > 0.0 {
            elements.push(PathElement::Straight { len });
        }
        if i < deflections.len() {
            elements.push(PathElement::Arc {
                radius: turn_radius,
                angle: deflections[i],
            });
        }
    }
    Ok(PiecewisePath::new(start, elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::wrap_angle;
    use std::f64::consts::PI;

    #[test]
    fn straight_element_propagates_along_heading() {
        let path = PiecewisePath::new(
            Configuration::new(1.0, 2.0, PI / 2.0),
            vec![PathElement::Straight { len: 10.0 }],
        );
        let end = path.pose_at(10.0);
        assert!((end.x - 1.0).abs() < 1e-12);
        assert!((end.y - 12.0).abs() < 1e-12);
    }

    #[test]
    fn ccw_quarter_arc_matches_analytic_circle() {
        let path = PiecewisePath::new(
            Configuration::new(0.0, 0.0, 0.0),
            vec![PathElement::Arc {
                radius: 1.0,
                angle: PI / 2.0,
            }],
        );
        let end = path.pose_at(path.total_length());
        assert!((end.x - 1.0).abs() < 1e-12);
        assert!((end.y - 1.0).abs() < 1e-12);
        assert!((end.psi - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cw_semicircle_offsets_by_diameter() {
        let path = PiecewisePath::new(
            Configuration::new(0.0, 0.0, PI / 2.0),
            vec![PathElement::Arc {
                radius: 5.0,
                angle: -PI,
            }],
        );
        let end = path.pose_at(path.total_length());
        assert!((end.x - 10.0).abs() < 1e-12);
        assert!(end.y.abs() < 1e-12);
        assert!((wrap_angle(end.psi + PI / 2.0)).abs() < 1e-12);
    }

    #[test]
    fn sampling_respects_chord_speed_bound() {
        let path = PiecewisePath::new(
            Configuration::new(0.0, 0.0, 0.0),
            vec![
                PathElement::Straight { len: 7.3 },
                PathElement::Arc {
                    radius: 3.0,
                    angle: -PI,
                },
                PathElement::Straight { len: 4.0 },
            ],
        );
        let traj = path.sample(2.0, 0.05, 0.0, 100.0).unwrap();
        for pair in traj.samples.windows(2) {
            let dist = (pair[1].config.position() - pair[0].config.position()).norm();
            let dt = pair[1].time - pair[0].time;
            assert!(dist <= 2.0 * dt + 1e-12);
        }
        // endpoint is exact
        let end = traj.samples.last().unwrap();
        let expected = path.pose_at(path.total_length());
        assert!((end.config.x - expected.x).abs() < 1e-12);
        assert!((end.config.y - expected.y).abs() < 1e-12);
    }

    #[test]
    fn fillet_cuts_corners_but_preserves_leg_lines() {
        // right-angle corner at (10, 0); fillet radius 2 starts the arc at
        // (8, 0) and ends it at (10, 2)
        let path = filleted_path(
            Configuration::new(0.0, 0.0, 0.0),
            &[10.0, 10.0],
            &[PI / 2.0],
            2.0,
        )
        .unwrap();
        let arc_start = path.pose_at(8.0);
        assert!((arc_start.x - 8.0).abs() < 1e-12);
        assert!(arc_start.y.abs() < 1e-12);
        let end = path.pose_at(path.total_length());
        assert!((end.x - 10.0).abs() < 1e-12);
        assert!((end.y - 10.0).abs() < 1e-12);
        assert!((end.psi - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn fillet_rejects_legs_shorter_than_tangents() {
        let err = filleted_path(
            Configuration::new(0.0, 0.0, 0.0),
            &[1.0, 1.0, 1.0],
            &[PI / 2.0, PI / 2.0],
            2.0,
        )
        .unwrap_err();
        assert!(matches!(err, MissionError::InfeasibleTurn { .. }));
    }
}
