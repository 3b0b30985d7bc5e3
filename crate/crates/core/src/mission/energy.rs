//! Energy budget: power profile integration and the budget constraint.

use serde::{Deserialize, Serialize};

use crate::mission::MissionError;

/// Power consumption over time, W.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PowerProfile {
    Constant(f64),
    /// Piecewise-constant segments, sorted and non-overlapping.
    Piecewise(Vec<PowerSegment>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSegment {
    pub t_start: f64,
    pub t_end: f64,
    pub watts: f64,
}

/// Power profile plus total energy budget (battery/fuel), J.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyModel {
    pub profile: PowerProfile,
    pub e_total: f64,
}

impl EnergyModel {
    pub fn constant(watts: f64, e_total: f64) -> Result<Self, MissionError> {
        if !(watts >= 0.0) {
            return Err(MissionError::PowerNegative(watts));
        }
        if !(e_total > 0.0) {
            return Err(MissionError::BudgetNotPositive(e_total));
        }
        Ok(EnergyModel {
            profile: PowerProfile::Constant(watts),
            e_total,
        })
    }

    pub fn piecewise(mut segments: Vec<PowerSegment>, e_total: f64) -> Result<Self, MissionError> {
        if !(e_total > 0.0) {
            return Err(MissionError::BudgetNotPositive(e_total));
        }
        segments.sort_by(|a, b| a.t_start.total_cmp(&b.t_start));
        for seg in &segments {
            if !(seg.watts >= 0.0) {
                return Err(MissionError::PowerNegative(seg.watts));
            }
            if !(seg.t_end > seg.t_start) {
                return Err(MissionError::BadPowerSegment {
                    t_start: seg.t_start,
                    t_end: seg.t_end,
                });
            }
        }
        for pair in segments.windows(2) {
            if pair[1].t_start < pair[0].t_end - 1e-12 {
                return Err(MissionError::OverlappingPowerSegments(pair[1].t_start));
            }
        }
        Ok(EnergyModel {
            profile: PowerProfile::Piecewise(segments),
            e_total,
        })
    }

    /// Time at which the budget is exhausted under this profile starting at
    /// `t0`, if it ever is.
    pub fn depletion_time(&self, t0: f64) -> Option<f64> {
        match &self.profile {
            PowerProfile::Constant(w) => {
                if *w <= 0.0 {
                    None
                } else {
                    Some(t0 + self.e_total / w)
                }
            }
            PowerProfile::Piecewise(segments) => {
                let mut remaining = self.e_total;
                for seg in segments {
                    let start = seg.t_start.max(t0);
                    if start >= seg.t_end {
                        continue;
                    }
                    let used = seg.watts * (seg.t_end - start);
                    if used >= remaining && seg.watts > 0.0 {
                        return Some(start + remaining / seg.watts);
                    }
                    remaining -= used;
                }
                None
            }
        }
    }
}

/// Exact integral of the power profile over `[t0, tf]`, J.
///
/// Piecewise profiles must cover the whole interval.
pub fn energy_used(energy: &EnergyModel, t0: f64, tf: f64) -> Result<f64, MissionError> {
    if !(tf > t0) {
        return Err(MissionError::BadTimeInterval { t0, tf });
    }
    match &energy.profile {
        PowerProfile::Constant(w) => Ok(w * (tf - t0)),
        PowerProfile::Piecewise(segments) => {
            let mut cursor = t0;
            let mut total = 0.0;
            for seg in segments {
                if seg.t_end <= cursor {
                    continue;
                }
                if cursor >= tf {
                    break;
                }
                if seg.t_start > cursor + 1e-12 {
                    return Err(MissionError::ProfileGap(cursor));
                }
                let lo = cursor.max(seg.t_start);
                let hi = seg.t_end.min(tf);
                total += seg.watts * (hi - lo);
                cursor = hi;
            }
            if cursor < tf - 1e-12 {
                return Err(MissionError::ProfileGap(cursor));
            }
            Ok(total)
        }
    }
}

/// Energy constraint verdict: `integral P dt <= e_total` (equality passes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyVerdict {
    pub used: f64,
    pub budget: f64,
    pub pass: bool,
}

pub fn check_energy(energy: &EnergyModel, t0: f64, tf: f64) -> Result<EnergyVerdict, MissionError> {
    let used = energy_used(energy, t0, tf)?;
    Ok(EnergyVerdict {
        used,
        budget: energy.e_total,
        pass: used <= energy.e_total,
    })
}
