//! Static obstacle shapes and the free-space constraint check.
//!
//! Obstacle sets are closed: touching the boundary counts as a collision,
//! which is the conservative convention for safety-critical planning.

use serde::{Deserialize, Serialize};

use crate::geometry::Vec2;
use crate::mission::{MissionError, Trajectory};

/// Segment subdivision resolution (meters) used by default when checking
/// trajectories against obstacles.
pub const DEFAULT_FREE_SPACE_RESOLUTION: f64 = 1.0;

/// A convex planar obstacle shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Obstacle {
    Disc { center: Vec2, radius: f64 },
    /// Convex polygon, stored counter-clockwise.
    Polygon { vertices: Vec<Vec2> },
}

impl Obstacle {
    pub fn disc(center: Vec2, radius: f64) -> Result<Self, MissionError> {
        if !(radius > 0.0) {
            return Err(MissionError::ObstacleRadiusNotPositive(radius));
        }
        Ok(Obstacle::Disc { center, radius })
    }

    /// Build a convex polygon; vertices may be given in either winding order
    /// but must form a strictly convex shape with at least 3 vertices.
    pub fn convex_polygon(mut vertices: Vec<Vec2>) -> Result<Self, MissionError> {
        if vertices.len() < 3 {
            return Err(MissionError::BadPolygon);
        }
        let n = vertices.len();
        let mut orientation = 0.0f64;
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b - a).cross(c - b);
            if cross == 0.0 {
                return Err(MissionError::BadPolygon); // collinear vertices
            }
            if orientation == 0.0 {
                orientation = cross;
            } else if orientation.signum() != cross.signum() {
                return Err(MissionError::BadPolygon); // not convex
            }
        }
        if orientation < 0.0 {
            vertices.reverse();
        }
        Ok(Obstacle::Polygon { vertices })
    }

    /// Closed containment test.
    pub fn contains(&self, p: Vec2) -> bool {
        match self {
            Obstacle::Disc { center, radius } => (p - *center).norm() <= *radius,
            Obstacle::Polygon { vertices } => {
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    (b - a).cross(p - a) >= 0.0
                })
            }
        }
    }

    /// Earliest parameter `s` in `[0, 1]` where the segment `a -> b` touches
    /// the closed shape, if any.
    fn earliest_hit(&self, a: Vec2, b: Vec2) -> Option<f64> {
        match self {
            Obstacle::Disc { center, radius } => {
                segment_disc_entry(a, b, *center, *radius)
            }
            Obstacle::Polygon { vertices } => {
                if self.contains(a) {
                    return Some(0.0);
                }
                let n = vertices.len();
                let mut best: Option<f64> = None;
                for i in 0..n {
                    let p = vertices[i];
                    let q = vertices[(i + 1) % n];
                    if let Some(s) = segment_segment_entry(a, b, p, q) {
                        best = Some(best.map_or(s, |cur: f64| cur.min(s)));
                    }
                }
                best
            }
        }
    }
}

/// Earliest `s` where `a + s (b - a)` lies within the closed disc.
fn segment_disc_entry(a: Vec2, b: Vec2, center: Vec2, radius: f64) -> Option<f64> {
    let rel = a - center;
    if rel.norm() <= radius {
        return Some(0.0);
    }
    let d = b - a;
    let dd = d.dot(d);
    if dd == 0.0 {
        return None;
    }
    // |rel + s d|^2 = r^2
    let half_b = rel.dot(d);
    let c = rel.dot(rel) - radius * radius;
    let disc = half_b * half_b - dd * c;
    if disc < 0.0 {
        return None;
    }
    let s = (-half_b - disc.sqrt()) / dd;
    (0.0..=1.0).contains(&s).then_some(s)
}

/// Earliest `s` where segment `a -> b` touches segment `p -> q` (closed,
/// tangency and collinear overlap included).
fn segment_segment_entry(a: Vec2, b: Vec2, p: Vec2, q: Vec2) -> Option<f64> {
    let d = b - a;
    let e = q - p;
    let denom = d.cross(e);
    let ap = p - a;
    if denom.abs() > 1e-12 {
        let s = ap.cross(e) / denom;
        let t = ap.cross(d) / denom;
        if (0.0..=1.0).contains(&s) && (0.0..=1.0).contains(&t) {
            return Some(s);
        }
        return None;
    }
    // parallel: only collinear segments can touch
    if ap.cross(d).abs() > 1e-9 {
        return None;
    }
    let dd = d.dot(d);
    if dd == 0.0 {
        return None;
    }
    let s_p = (p - a).dot(d) / dd;
    let s_q = (q - a).dot(d) / dd;
    let (lo, hi) = (s_p.min(s_q), s_p.max(s_q));
    if hi < 0.0 || lo > 1.0 {
        return None;
    }
    Some(lo.max(0.0))
}

/// A convex shape with an optional active time window `[start, end]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimedObstacle {
    pub shape: Obstacle,
    /// Obstacle exists only during this closed interval when present.
    pub active: Option<(f64, f64)>,
}

impl TimedObstacle {
    pub fn always(shape: Obstacle) -> Self {
        TimedObstacle {
            shape,
            active: None,
        }
    }

    fn active_during(&self, t0: f64, t1: f64) -> bool {
        match self.active {
            None => true,
            Some((start, end)) => t1 >= start && t0 <= end,
        }
    }
}

/// The obstacle region O(t): a set of static convex shapes with optional
/// activity windows.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ObstacleRegion {
    pub obstacles: Vec<TimedObstacle>,
}

impl ObstacleRegion {
    pub fn empty() -> Self {
        ObstacleRegion::default()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }
}

/// Outcome of the free-space check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FreeSpaceVerdict {
    Pass,
    Violation {
        time: f64,
        position: Vec2,
        obstacle_index: usize,
    },
}

impl FreeSpaceVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FreeSpaceVerdict::Pass)
    }
}

/// Check that a trajectory stays in free space.
///
/// Every trajectory segment is subdivided so that no check gap exceeds
/// `resolution` meters; each sub-segment is tested exactly against every
/// obstacle active during its time span (so tangent contact is detected).
/// Returns the first violation in time order.
pub fn check_free_space(
    traj: &Trajectory,
    obstacles: &ObstacleRegion,
    resolution: f64,
) -> Result<FreeSpaceVerdict, MissionError> {
    if !(resolution > 0.0) {
        return Err(MissionError::ResolutionNotPositive(resolution));
    }
    if obstacles.is_empty() {
        return Ok(FreeSpaceVerdict::Pass);
    }
    for pair in traj.samples.windows(2) {
        let (t0, p0) = (pair[0].time, pair[0].config.position());
        let (t1, p1) = (pair[1].time, pair[1].config.position());
        let length = (p1 - p0).norm();
        let n_sub = ((length / resolution).ceil() as usize).max(1);
        for j in 0..n_sub {
            let f0 = j as f64 / n_sub as f64;
            let f1 = (j + 1) as f64 / n_sub as f64;
            let a = p0 + (p1 - p0) * f0;
            let b = p0 + (p1 - p0) * f1;
            let ta = t0 + (t1 - t0) * f0;
            let tb = t0 + (t1 - t0) * f1;
            let mut first: Option<(f64, usize)> = None;
            for (idx, obstacle) in obstacles.obstacles.iter().enumerate() {
                if !obstacle.active_during(ta, tb) {
                    continue;
                }
                if let Some(s) = obstacle.shape.earliest_hit(a, b) {
                    if first.is_none_or(|(cur, _)| s < cur) {
                        first = Some((s, idx));
                    }
                }
            }
            if let Some((s, obstacle_index)) = first {
                return Ok(FreeSpaceVerdict::Violation {
                    time: ta + (tb - ta) * s,
                    position: a + (b - a) * s,
                    obstacle_index,
                });
            }
        }
    }
    Ok(FreeSpaceVerdict::Pass)
}
