//! Particle leeway drift simulation.
//!
//! Grows the initial accident-position uncertainty into a drift-expanded
//! search area. A self-contained Euler–Maruyama kernel with constant forcing
//! stands in for a full met-ocean drift package:
//!
//! ```text
//! x <- x + (current + leeway_fraction * wind) * dt + sqrt(2 * D * dt) * eta
//! ```
//!
//! with `eta` a standard 2-D Gaussian. Noise substreams are derived per
//! `(seed, step, particle)`, so runs are bit-reproducible regardless of
//! execution order.

use std::io::{self, Write};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Vec2;
use crate::rng::{domain, substream};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DriftError {
    #[error("leeway fraction must lie in [0, 0.1] for a person in water, got {0}")]
    LeewayOutOfRange(f64),
    #[error("diffusivity must be non-negative, got {0}")]
    DiffusionNegative(f64),
    #[error("uncertainty extent must be positive, got {0}")]
    ExtentNotPositive(f64),
    #[error("ensemble must contain at least one particle")]
    EmptyEnsemble,
    #[error("time step must be positive, got {0}")]
    StepNotPositive(f64),
    #[error("duration must be at least one time step (duration {duration}, dt {dt})")]
    DurationTooShort { duration: f64, dt: f64 },
    #[error("quantile must lie in (0, 1], got {0}")]
    QuantileOutOfRange(f64),
    #[error("degenerate search area: width {width}, height {height} (both must be positive)")]
    DegenerateArea { width: f64, height: f64 },
}

/// Constant met-ocean forcing felt by a drifting person in water.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentConditions {
    /// Surface current, m/s.
    pub current: Vec2,
    /// Wind at the surface, m/s.
    pub wind: Vec2,
    /// Fraction of the wind speed imparted to the drifter, in [0, 0.1].
    pub leeway_fraction: f64,
    /// Horizontal diffusivity, m^2/s.
    pub diffusion: f64,
}

impl EnvironmentConditions {
    pub fn new(
        current: Vec2,
        wind: Vec2,
        leeway_fraction: f64,
        diffusion: f64,
    ) -> Result<Self, DriftError> {
        if !(0.0..=0.1).contains(&leeway_fraction) {
            return Err(DriftError::LeewayOutOfRange(leeway_fraction));
        }
        if !(diffusion >= 0.0) {
            return Err(DriftError::DiffusionNegative(diffusion));
        }
        Ok(EnvironmentConditions {
            current,
            wind,
            leeway_fraction,
            diffusion,
        })
    }

    /// No wind, no current, no diffusion.
    pub fn calm() -> Self {
        EnvironmentConditions {
            current: Vec2::ZERO,
            wind: Vec2::ZERO,
            leeway_fraction: 0.0,
            diffusion: 0.0,
        }
    }

    /// Deterministic drift velocity: `current + leeway_fraction * wind`.
    pub fn drift_velocity(&self) -> Vec2 {
        self.current + self.wind * self.leeway_fraction
    }
}

/// Shape of the initial position uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum UncertaintyShape {
    /// Axis-aligned square with the given side length, meters.
    Square { side: f64 },
    /// Disk with the given radius, meters.
    Disk { radius: f64 },
}

/// Initial accident-position uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialUncertainty {
    pub center: Vec2,
    pub shape: UncertaintyShape,
}

impl InitialUncertainty {
    pub fn square(center: Vec2, side: f64) -> Result<Self, DriftError> {
        if !(side > 0.0) {
            return Err(DriftError::ExtentNotPositive(side));
        }
        Ok(InitialUncertainty {
            center,
            shape: UncertaintyShape::Square { side },
        })
    }

    pub fn disk(center: Vec2, radius: f64) -> Result<Self, DriftError> {
        if !(radius > 0.0) {
            return Err(DriftError::ExtentNotPositive(radius));
        }
        Ok(InitialUncertainty {
            center,
            shape: UncertaintyShape::Disk { radius },
        })
    }

    /// Whether a point lies inside the shape (closed boundary).
    pub fn contains(&self, p: Vec2) -> bool {
        let d = p - self.center;
        match self.shape {
            UncertaintyShape::Square { side } => {
                d.x.abs() <= side / 2.0 && d.y.abs() <= side / 2.0
            }
            UncertaintyShape::Disk { radius } => d.norm() <= radius,
        }
    }
}

/// Timestamped positions of drift particles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParticleEnsemble {
    pub positions: Vec<Vec2>,
    /// Seconds since the accident.
    pub time: f64,
    /// Seed the ensemble (and all its noise substreams) derives from.
    pub seed: u64,
    /// Number of steps taken so far; indexes the per-step noise substreams.
    pub steps_taken: u64,
}

impl ParticleEnsemble {
    pub fn count(&self) -> usize {
        self.positions.len()
    }

    /// Mean particle position.
    pub fn centroid(&self) -> Vec2 {
        let mut sum = Vec2::ZERO;
        for p in &self.positions {
            sum += *p;
        }
        sum * (1.0 / self.positions.len().max(1) as f64)
    }

    /// Per-axis sample variance (denominator n).
    pub fn variance(&self) -> Vec2 {
        let c = self.centroid();
        let mut acc = Vec2::ZERO;
        for p in &self.positions {
            let d = *p - c;
            acc.x += d.x * d.x;
            acc.y += d.y * d.y;
        }
        acc * (1.0 / self.positions.len().max(1) as f64)
    }
}

/// Axis-aligned rectangular search area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchArea {
    pub min: Vec2,
    pub max: Vec2,
}

impl SearchArea {
    pub fn new(min: Vec2, max: Vec2) -> Result<Self, DriftError> {
        let width = max.x - min.x;
        let height = max.y - min.y;
        if !(width > 0.0 && height > 0.0) {
            return Err(DriftError::DegenerateArea { width, height });
        }
        Ok(SearchArea { min, max })
    }

    pub fn from_center(center: Vec2, width: f64, height: f64) -> Result<Self, DriftError> {
        SearchArea::new(
            center - Vec2::new(width / 2.0, height / 2.0),
            center + Vec2::new(width / 2.0, height / 2.0),
        )
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn center(&self) -> Vec2 {
        (self.min + self.max) * 0.5
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

/// Draw one position uniformly over the uncertainty shape. Consumes exactly
/// two uniforms from `rng`.
pub(crate) fn sample_in_shape<R: Rng>(uncertainty: &InitialUncertainty, rng: &mut R) -> Vec2 {
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    match uncertainty.shape {
        UncertaintyShape::Square { side } => {
            uncertainty.center + Vec2::new((u - 0.5) * side, (v - 0.5) * side)
        }
        UncertaintyShape::Disk { radius } => {
            // polar sampling: r = R sqrt(u) is uniform over the disk
            let r = radius * u.sqrt();
            let theta = 2.0 * std::f64::consts::PI * v;
            uncertainty.center + Vec2::new(r * theta.cos(), r * theta.sin())
        }
    }
}

/// Sample `count` particles uniformly over the uncertainty shape.
///
/// Deterministic given `seed`; the ensemble starts at time zero.
pub fn init_ensemble(
    uncertainty: &InitialUncertainty,
    count: usize,
    seed: u64,
) -> Result<ParticleEnsemble, DriftError> {
    if count == 0 {
        return Err(DriftError::EmptyEnsemble);
    }
    let mut rng = substream(seed, domain::DRIFT_INIT, 0, 0);
    let mut positions = Vec::with_capacity(count);
    for _ in 0..count {
        positions.push(sample_in_shape(uncertainty, &mut rng));
    }
    Ok(ParticleEnsemble {
        positions,
        time: 0.0,
        seed,
        steps_taken: 0,
    })
}

/// Advance the ensemble by one Euler–Maruyama step of length `dt`.
pub fn step(
    ensemble: &ParticleEnsemble,
    env: &EnvironmentConditions,
    dt: f64,
) -> Result<ParticleEnsemble, DriftError> {
    if !(dt > 0.0) {
        return Err(DriftError::StepNotPositive(dt));
    }
    let advection = env.drift_velocity() * dt;
    let noise_scale = (2.0 * env.diffusion * dt).sqrt();
    let mut positions = Vec::with_capacity(ensemble.positions.len());
    for (i, p) in ensemble.positions.iter().enumerate() {
        let mut next = *p + advection;
        if noise_scale > 0.0 {
            let mut rng = substream(
                ensemble.seed,
                domain::DRIFT_STEP,
                ensemble.steps_taken,
                i as u64,
            );
            let ex: f64 = StandardNormal.sample(&mut rng);
            let ey: f64 = StandardNormal.sample(&mut rng);
            next += Vec2::new(ex, ey) * noise_scale;
        }
        positions.push(next);
    }
    Ok(ParticleEnsemble {
        positions,
        time: ensemble.time + dt,
        seed: ensemble.seed,
        steps_taken: ensemble.steps_taken + 1,
    })
}

fn step_count(duration: f64, dt: f64) -> Result<usize, DriftError> {
    if !(dt > 0.0) {
        return Err(DriftError::StepNotPositive(dt));
    }
    if !(duration >= dt) {
        return Err(DriftError::DurationTooShort { duration, dt });
    }
    Ok((duration / dt).ceil() as usize)
}

/// Run `ceil(duration / dt)` steps and return only the final state.
pub fn simulate(
    ensemble: &ParticleEnsemble,
    env: &EnvironmentConditions,
    duration: f64,
    dt: f64,
) -> Result<ParticleEnsemble, DriftError> {
    let n = step_count(duration, dt)?;
    let mut state = ensemble.clone();
    for _ in 0..n {
        state = step(&state, env, dt)?;
    }
    Ok(state)
}

/// Run `ceil(duration / dt)` steps, returning the initial state and every
/// intermediate state (final state last).
pub fn simulate_with_snapshots(
    ensemble: &ParticleEnsemble,
    env: &EnvironmentConditions,
    duration: f64,
    dt: f64,
) -> Result<Vec<ParticleEnsemble>, DriftError> {
    let n = step_count(duration, dt)?;
    let mut snapshots = Vec::with_capacity(n + 1);
    snapshots.push(ensemble.clone());
    for _ in 0..n {
        let next = step(snapshots.last().expect("non-empty"), env, dt)?;
        snapshots.push(next);
    }
    Ok(snapshots)
}

/// Linear-interpolation quantile of pre-sorted values (type 7).
fn sorted_quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Axis-aligned bounding box of the ensemble.
///
/// `quantile = 1.0` returns the exact min/max box. A quantile `q < 1`
/// returns the box containing the central `q` fraction per axis (symmetric
/// trimming), which rejects stray outliers.
pub fn bounding_area(
    ensemble: &ParticleEnsemble,
    quantile: f64,
) -> Result<SearchArea, DriftError> {
    if ensemble.positions.is_empty() {
        return Err(DriftError::EmptyEnsemble);
    }
    if !(quantile > 0.0 && quantile <= 1.0) {
        return Err(DriftError::QuantileOutOfRange(quantile));
    }
    let (min, max) = if quantile == 1.0 {
        let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &ensemble.positions {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        (min, max)
    } else {
        let mut xs: Vec<f64> = ensemble.positions.iter().map(|p| p.x).collect();
        let mut ys: Vec<f64> = ensemble.positions.iter().map(|p| p.y).collect();
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
        let lo_q = (1.0 - quantile) / 2.0;
        let hi_q = (1.0 + quantile) / 2.0;
        (
            Vec2::new(sorted_quantile(&xs, lo_q), sorted_quantile(&ys, lo_q)),
            Vec2::new(sorted_quantile(&xs, hi_q), sorted_quantile(&ys, hi_q)),
        )
    };
    SearchArea::new(min, max)
}

/// Bounding-area time series over a snapshot sequence.
pub fn area_series(
    snapshots: &[ParticleEnsemble],
    quantile: f64,
) -> Result<Vec<(f64, SearchArea)>, DriftError> {
    snapshots
        .iter()
        .map(|s| Ok((s.time, bounding_area(s, quantile)?)))
        .collect()
}

/// Write particle snapshots as CSV with columns `time_s,particle_id,x_m,y_m`.
pub fn write_snapshots_csv<W: Write>(
    out: &mut W,
    snapshots: &[ParticleEnsemble],
) -> io::Result<()> {
    writeln!(out, "time_s,particle_id,x_m,y_m")?;
    for snap in snapshots {
        for (i, p) in snap.positions.iter().enumerate() {
            writeln!(out, "{},{},{},{}", snap.time, i, p.x, p.y)?;
        }
    }
    Ok(())
}

/// Write a bounding-area series as CSV with columns `time_s,width_m,height_m`.
pub fn write_area_series_csv<W: Write>(
    out: &mut W,
    series: &[(f64, SearchArea)],
) -> io::Result<()> {
    writeln!(out, "time_s,width_m,height_m")?;
    for (t, area) in series {
        writeln!(out, "{},{},{}", t, area.width(), area.height())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_800() -> InitialUncertainty {
        InitialUncertainty::square(Vec2::ZERO, 800.0).unwrap()
    }

    #[test]
    fn init_square_contains_all_particles() {
        let ens = init_ensemble(&square_800(), 10_000, 42).unwrap();
        assert_eq!(ens.count(), 10_000);
        assert_eq!(ens.time, 0.0);
        for p in &ens.positions {
            assert!(p.x.abs() <= 400.0 && p.y.abs() <= 400.0);
        }
    }

    #[test]
    fn init_disk_contains_single_particle() {
        let unc = InitialUncertainty::disk(Vec2::new(100.0, -50.0), 400.0).unwrap();
        let ens = init_ensemble(&unc, 1, 7).unwrap();
        assert_eq!(ens.count(), 1);
        assert!((ens.positions[0] - unc.center).norm() <= 400.0);
    }

    #[test]
    fn init_square_variance_matches_uniform_moments() {
        // analytic oracle: Var of U(-side/2, side/2) is side^2 / 12
        let ens = init_ensemble(&square_800(), 10_000, 42).unwrap();
        let expected = 800.0_f64.powi(2) / 12.0;
        let var = ens.variance();
        assert!((var.x - expected).abs() / expected < 0.05, "var.x = {}", var.x);
        assert!((var.y - expected).abs() / expected < 0.05, "var.y = {}", var.y);
    }

    #[test]
    fn init_rejects_zero_count() {
        assert!(matches!(
            init_ensemble(&square_800(), 0, 42),
            Err(DriftError::EmptyEnsemble)
        ));
    }

    #[test]
    fn init_is_deterministic() {
        let a = init_ensemble(&square_800(), 1000, 42).unwrap();
        let b = init_ensemble(&square_800(), 1000, 42).unwrap();
        assert_eq!(a.positions, b.positions);
        let c = init_ensemble(&square_800(), 1000, 43).unwrap();
        assert_ne!(a.positions, c.positions);
    }

    #[test]
    fn step_pure_advection_is_exact() {
        let env =
            EnvironmentConditions::new(Vec2::new(0.5, 0.0), Vec2::ZERO, 0.0, 0.0).unwrap();
        let ens = init_ensemble(&square_800(), 100, 1).unwrap();
        let next = step(&ens, &env, 60.0).unwrap();
        assert_eq!(next.time, 60.0);
        for (before, after) in ens.positions.iter().zip(&next.positions) {
            assert!((after.x - before.x - 30.0).abs() < 1e-9);
            assert_eq!(after.y, before.y);
        }
    }

    #[test]
    fn leeway_displacement_matches_analytic_value() {
        // 2% of a 10 m/s wind for 1200 s -> 240 m downwind
        let env =
            EnvironmentConditions::new(Vec2::ZERO, Vec2::new(10.0, 0.0), 0.02, 0.0).unwrap();
        let ens = init_ensemble(&square_800(), 10, 1).unwrap();
        let end = simulate(&ens, &env, 1200.0, 10.0).unwrap();
        for (before, after) in ens.positions.iter().zip(&end.positions) {
            assert!(((after.x - before.x) - 240.0).abs() < 1e-9);
            assert_eq!(after.y, before.y);
        }
    }

    #[test]
    fn zero_forcing_is_identity() {
        let ens = init_ensemble(&square_800(), 50, 9).unwrap();
        let next = step(&ens, &EnvironmentConditions::calm(), 10.0).unwrap();
        assert_eq!(ens.positions, next.positions);
        let end = simulate(&ens, &EnvironmentConditions::calm(), 1200.0, 10.0).unwrap();
        let a0 = bounding_area(&ens, 1.0).unwrap();
        let a1 = bounding_area(&end, 1.0).unwrap();
        assert_eq!(a0, a1);
    }

    #[test]
    fn step_rejects_non_positive_dt() {
        let ens = init_ensemble(&square_800(), 10, 1).unwrap();
        assert!(step(&ens, &EnvironmentConditions::calm(), 0.0).is_err());
        assert!(step(&ens, &EnvironmentConditions::calm(), -1.0).is_err());
        assert!(simulate(&ens, &EnvironmentConditions::calm(), 5.0, 10.0).is_err());
    }

    #[test]
    fn simulate_advection_displaces_centroid() {
        let env =
            EnvironmentConditions::new(Vec2::new(0.5, 0.5), Vec2::ZERO, 0.0, 0.0).unwrap();
        let ens = init_ensemble(&square_800(), 1000, 3).unwrap();
        let end = simulate(&ens, &env, 1200.0, 10.0).unwrap();
        let d = end.centroid() - ens.centroid();
        assert!((d.x - 600.0).abs() < 1e-9);
        assert!((d.y - 600.0).abs() < 1e-9);
    }

    #[test]
    fn diffusion_variance_growth_matches_brownian_oracle() {
        // variance growth oracle: Var(t) - Var(0) = 2 D t per axis; a point
        // source isolates the Brownian term from the initial spread
        let env = EnvironmentConditions::new(Vec2::ZERO, Vec2::ZERO, 0.0, 1.0).unwrap();
        let point = InitialUncertainty::square(Vec2::ZERO, 1e-9).unwrap();
        let ens = init_ensemble(&point, 10_000, 42).unwrap();
        let end = simulate(&ens, &env, 1200.0, 10.0).unwrap();
        let grow_x = end.variance().x - ens.variance().x;
        let grow_y = end.variance().y - ens.variance().y;
        let expected = 2.0 * 1.0 * 1200.0;
        assert!((grow_x - expected).abs() / expected < 0.05, "grow_x = {grow_x}");
        assert!((grow_y - expected).abs() / expected < 0.05, "grow_y = {grow_y}");
    }

    #[test]
    fn simulate_is_reproducible_from_seed() {
        let env = EnvironmentConditions::new(
            Vec2::new(0.5, 0.0),
            Vec2::new(10.0, 0.0),
            0.02,
            2.0,
        )
        .unwrap();
        let ens = init_ensemble(&square_800(), 500, 42).unwrap();
        let a = simulate(&ens, &env, 1200.0, 10.0).unwrap();
        let b = simulate(&ens, &env, 1200.0, 10.0).unwrap();
        assert_eq!(a.positions, b.positions);
        assert_eq!(a.time, b.time);
    }

    #[test]
    fn bounding_area_of_square_corners_is_exact() {
        let ens = ParticleEnsemble {
            positions: vec![
                Vec2::new(-400.0, -400.0),
                Vec2::new(400.0, -400.0),
                Vec2::new(400.0, 400.0),
                Vec2::new(-400.0, 400.0),
            ],
            time: 0.0,
            seed: 0,
            steps_taken: 0,
        };
        let area = bounding_area(&ens, 1.0).unwrap();
        assert_eq!(area.width(), 800.0);
        assert_eq!(area.height(), 800.0);
    }

    #[test]
    fn bounding_area_of_uniform_sample_is_slightly_inside() {
        // order statistics: E[range] = side * (n-1)/(n+1), so [790, 800]
        let ens = init_ensemble(&square_800(), 10_000, 42).unwrap();
        let area = bounding_area(&ens, 1.0).unwrap();
        assert!(area.width() >= 790.0 && area.width() <= 800.0, "{}", area.width());
        assert!(area.height() >= 790.0 && area.height() <= 800.0, "{}", area.height());
    }

    #[test]
    fn bounding_area_quantile_trims_symmetrically() {
        let ens = init_ensemble(&square_800(), 10_000, 42).unwrap();
        let full = bounding_area(&ens, 1.0).unwrap();
        let trimmed = bounding_area(&ens, 0.9).unwrap();
        assert!(trimmed.width() < full.width());
        assert!(trimmed.height() < full.height());
        // central 90% of U(-400, 400) spans about 720 m
        assert!((trimmed.width() - 720.0).abs() < 20.0);
    }

    #[test]
    fn bounding_area_rejects_degenerate_and_bad_quantile() {
        let single = ParticleEnsemble {
            positions: vec![Vec2::ZERO],
            time: 0.0,
            seed: 0,
            steps_taken: 0,
        };
        assert!(matches!(
            bounding_area(&single, 1.0),
            Err(DriftError::DegenerateArea { .. })
        ));
        let empty = ParticleEnsemble {
            positions: vec![],
            time: 0.0,
            seed: 0,
            steps_taken: 0,
        };
        assert!(matches!(
            bounding_area(&empty, 1.0),
            Err(DriftError::EmptyEnsemble)
        ));
        let ens = init_ensemble(&square_800(), 10, 1).unwrap();
        assert!(bounding_area(&ens, 0.0).is_err());
        assert!(bounding_area(&ens, 1.5).is_err());
    }

    #[test]
    fn snapshot_csv_schema() {
        let ens = ParticleEnsemble {
            positions: vec![Vec2::new(1.5, -2.0), Vec2::new(0.25, 3.0)],
            time: 10.0,
            seed: 0,
            steps_taken: 1,
        };
        let mut buf = Vec::new();
        write_snapshots_csv(&mut buf, std::slice::from_ref(&ens)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "time_s,particle_id,x_m,y_m\n10,0,1.5,-2\n10,1,0.25,3\n"
        );
    }

    #[test]
    fn area_series_csv_schema() {
        let area = SearchArea::from_center(Vec2::ZERO, 100.0, 50.0).unwrap();
        let mut buf = Vec::new();
        write_area_series_csv(&mut buf, &[(0.0, area), (10.0, area)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "time_s,width_m,height_m\n0,100,50\n10,100,50\n");
    }

    #[test]
    fn environment_rejects_out_of_range_parameters() {
        assert!(EnvironmentConditions::new(Vec2::ZERO, Vec2::ZERO, 0.2, 0.0).is_err());
        assert!(EnvironmentConditions::new(Vec2::ZERO, Vec2::ZERO, -0.01, 0.0).is_err());
        assert!(EnvironmentConditions::new(Vec2::ZERO, Vec2::ZERO, 0.02, -1.0).is_err());
        assert!(InitialUncertainty::square(Vec2::ZERO, 0.0).is_err());
        assert!(InitialUncertainty::disk(Vec2::ZERO, -5.0).is_err());
    }
}
