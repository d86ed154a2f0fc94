//! Temperature at which a detector stops reporting entanglement, by bisection.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{evaluate_point_with, Axis, Detectors, EvalOptions, PointParams};
use crate::criteria::LogBase;
use crate::error::{Error, Result};
use crate::spin::HamiltonianParams;

/// Bracket width at which bisection stops.
pub const THRESHOLD_TOL: f64 = 1e-4;

/// A detector reads "entangled" when its value exceeds this.
pub const DETECTION_LEVEL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    Negativity,
    Realignment,
}

impl Detector {
    pub fn name(self) -> &'static str {
        match self {
            Detector::Negativity => "negativity",
            Detector::Realignment => "realignment",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negativity" | "N" | "n" => Ok(Detector::Negativity),
            "realignment" | "R" | "r" => Ok(Detector::Realignment),
            other => Err(Error::InvalidArgument(format!(
                "unknown detector '{other}' (expected negativity or realignment)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdOptions {
    pub tolerance: f64,
    pub detection_level: f64,
    pub log_base: LogBase,
}

impl Default for ThresholdOptions {
    fn default() -> Self {
        ThresholdOptions { tolerance: THRESHOLD_TOL, detection_level: DETECTION_LEVEL, log_base: LogBase::E }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub detector: Detector,
    /// Midpoint of the final bracket.
    pub t_c: f64,
    /// Final bracket: entangled at `t_lo`, not at `t_hi`.
    pub t_lo: f64,
    pub t_hi: f64,
    pub tolerance: f64,
    pub iterations: usize,
}

/// `N` for negativity, `R` for realignment.
pub fn detector_value(
    p: &HamiltonianParams,
    temperature: f64,
    detector: Detector,
    log_base: LogBase,
) -> Result<f64> {
    let detectors = match detector {
        Detector::Negativity => Detectors::NEGATIVITY,
        Detector::Realignment => Detectors::REALIGNMENT,
    };
    let options = EvalOptions { detectors, log_base, ..EvalOptions::default() };
    let rec = evaluate_point_with(&PointParams { hamiltonian: *p, temperature }, &options)?;
    Ok(match detector {
        Detector::Negativity => rec.negativity,
        Detector::Realignment => rec.r_value,
    }
    .expect("selected detector is evaluated"))
}

pub fn threshold_temperature(
    p: &HamiltonianParams,
    detector: Detector,
    t_lo: f64,
    t_hi: f64,
) -> Result<ThresholdResult> {
    threshold_temperature_with(p, detector, t_lo, t_hi, &ThresholdOptions::default())
}

/// Bisects on `detector(T) > detection_level` until the bracket is no wider
/// than `tolerance`. The bracket must be verified: entangled at `t_lo` and not
/// at `t_hi`. Monotonic decay is not assumed, so with several crossings inside
/// the bracket the result is one of them.
pub fn threshold_temperature_with(
    p: &HamiltonianParams,
    detector: Detector,
    t_lo: f64,
    t_hi: f64,
    options: &ThresholdOptions,
) -> Result<ThresholdResult> {
    if !(t_lo > 0.0 && t_lo < t_hi && t_hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "threshold bracket needs 0 < t_lo < t_hi, got [{t_lo}, {t_hi}]"
        )));
    }
    if !(options.tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance must be positive, got {}",
            options.tolerance
        )));
    }
    let value = |t: f64| detector_value(p, t, detector, options.log_base);
    let (value_lo, value_hi) = (value(t_lo)?, value(t_hi)?);
    let level = options.detection_level;
    if !(value_lo > level && value_hi <= level) {
        return Err(Error::NotBracketed { t_lo, t_hi, value_lo, value_hi });
    }

    let (mut lo, mut hi) = (t_lo, t_hi);
    let mut iterations = 0;
    while hi - lo > options.tolerance {
        let mid = 0.5 * (lo + hi);
        if value(mid)? > level {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(ThresholdResult {
        detector,
        t_c: 0.5 * (lo + hi),
        t_lo: lo,
        t_hi: hi,
        tolerance: options.tolerance,
        iterations,
    })
}

/// Largest threshold temperature over a grid of Hamiltonian parameters.
#[derive(Debug, Clone)]
pub struct ThresholdScan {
    /// `(params, result)` of the grid point with the highest `t_c`, if any
    /// point was bracketed.
    pub max: Option<(HamiltonianParams, ThresholdResult)>,
    /// Points entangled at `t_lo` and not at `t_hi`.
    pub bracketed: usize,
    /// Points not entangled even at `t_lo`.
    pub never_entangled: usize,
    /// Points still entangled at `t_hi`.
    pub still_entangled: usize,
}

/// Runs [`threshold_temperature_with`] at every point of a grid over two
/// Hamiltonian parameters (temperature cannot be an axis).
pub fn threshold_scan(
    base: &HamiltonianParams,
    axis1: &Axis,
    axis2: &Axis,
    detector: Detector,
    t_lo: f64,
    t_hi: f64,
    options: &ThresholdOptions,
) -> Result<ThresholdScan> {
    axis1.validate()?;
    axis2.validate()?;
    if axis1.param == axis2.param || [axis1.param, axis2.param].contains(&super::Param::T) {
        return Err(Error::InvalidSweep("threshold scan needs two distinct non-temperature axes".into()));
    }
    let n2 = axis2.steps;
    let outcomes = (0..axis1.steps * n2)
        .into_par_iter()
        .map(|idx| {
            let point = PointParams { hamiltonian: *base, temperature: 1.0 }
                .with(axis1.param, axis1.value(idx / n2))
                .with(axis2.param, axis2.value(idx % n2))
                .hamiltonian;
            match threshold_temperature_with(&point, detector, t_lo, t_hi, options) {
                Ok(r) => Ok((point, Ok(r))),
                Err(Error::NotBracketed { value_lo, .. }) => {
                    Ok((point, Err(value_lo > options.detection_level)))
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Vec<_>>();

    let mut scan = ThresholdScan { max: None, bracketed: 0, never_entangled: 0, still_entangled: 0 };
    for outcome in outcomes {
        match outcome? {
            (point, Ok(r)) => {
                scan.bracketed += 1;
                if scan.max.as_ref().is_none_or(|(_, best)| r.t_c > best.t_c) {
                    scan.max = Some((point, r));
                }
            }
            (_, Err(true)) => scan.still_entangled += 1,
            (_, Err(false)) => scan.never_entangled += 1,
        }
    }
    Ok(scan)
}
