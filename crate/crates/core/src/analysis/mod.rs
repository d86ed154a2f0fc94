//! Point evaluation, grid sweeps, threshold temperatures, sign-region
//! classification and peak extraction.

mod peaks;
mod region;
mod threshold;

pub use peaks::{count_peaks, peak_report, Peak, PeakReport};
pub use region::{classify_region, RegionLabel};
pub use threshold::{
    detector_value, threshold_scan, threshold_temperature, threshold_temperature_with, Detector,
    ThresholdOptions, ThresholdResult, ThresholdScan, DETECTION_LEVEL, THRESHOLD_TOL,
};

use std::fmt;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::criteria::{DensityMatrix, LogBase, Thresholds};
use crate::error::{Error, Result};
use crate::spin::{build_hamiltonian, HamiltonianParams};
use crate::thermal::gibbs_state;

/// Hamiltonian couplings plus temperature: one point of parameter space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointParams {
    pub hamiltonian: HamiltonianParams,
    pub temperature: f64,
}

impl PointParams {
    pub fn new(j: f64, k: f64, delta: f64, b: f64, temperature: f64) -> Self {
        PointParams { hamiltonian: HamiltonianParams::new(j, k, delta, b), temperature }
    }

    pub fn get(&self, param: Param) -> f64 {
        match param {
            Param::J => self.hamiltonian.j,
            Param::K => self.hamiltonian.k,
            Param::Delta => self.hamiltonian.delta,
            Param::B => self.hamiltonian.b,
            Param::T => self.temperature,
        }
    }

    pub fn set(&mut self, param: Param, value: f64) {
        match param {
            Param::J => self.hamiltonian.j = value,
            Param::K => self.hamiltonian.k = value,
            Param::Delta => self.hamiltonian.delta = value,
            Param::B => self.hamiltonian.b = value,
            Param::T => self.temperature = value,
        }
    }

    pub fn with(mut self, param: Param, value: f64) -> Self {
        self.set(param, value);
        self
    }
}

/// A sweepable parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    J,
    K,
    Delta,
    B,
    T,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::J, Param::K, Param::Delta, Param::B, Param::T];

    pub fn name(self) -> &'static str {
        match self {
            Param::J => "J",
            Param::K => "K",
            Param::Delta => "Delta",
            Param::B => "B",
            Param::T => "T",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J" | "j" => Ok(Param::J),
            "K" | "k" => Ok(Param::K),
            "Delta" | "delta" | "D" => Ok(Param::Delta),
            "B" | "b" => Ok(Param::B),
            "T" | "t" => Ok(Param::T),
            other => Err(Error::InvalidSweep(format!(
                "unknown parameter '{other}' (expected J, K, Delta, B or T)"
            ))),
        }
    }
}

/// Evenly spaced values of one parameter, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, steps: usize) -> Result<Self> {
        let axis = Axis { param, min, max, steps };
        axis.validate()?;
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidSweep(format!("axis {} has a non-finite bound", self.param)));
        }
        if !(self.min < self.max) {
            return Err(Error::InvalidSweep(format!(
                "axis {} needs min < max, got {}..{}",
                self.param, self.min, self.max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "axis {} needs at least 2 steps, got {}",
                self.param, self.steps
            )));
        }
        Ok(())
    }

    /// Grid value `i`. Endpoints are exact, and an axis symmetric about zero
    /// yields values that are exact negatives of each other.
    pub fn value(&self, i: usize) -> f64 {
        let last = self.steps - 1;
        if i == 0 {
            self.min
        } else if i == last {
            self.max
        } else {
            (self.min * (last - i) as f64 + self.max * i as f64) / last as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }

    /// Grid spacing.
    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.steps - 1) as f64
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.param, self.min, self.max, self.steps)
    }
}

/// Parses `name:min:max:steps`, e.g. `Delta:-3:3:61`.
impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::InvalidSweep(format!("axis '{s}' must look like name:min:max:steps")));
        }
        let num = |x: &str| -> Result<f64> {
            x.trim().parse().map_err(|_| Error::InvalidSweep(format!("axis '{s}': '{x}' is not a number")))
        };
        let steps = parts[3]
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSweep(format!("axis '{s}': bad step count '{}'", parts[3])))?;
        Axis::new(parts[0].trim().parse()?, num(parts[1])?, num(parts[2])?, steps)
    }
}

/// Which detectors to evaluate at each point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Detectors {
    pub negativity: bool,
    pub realignment: bool,
}

impl Detectors {
    pub const BOTH: Detectors = Detectors { negativity: true, realignment: true };
    pub const NEGATIVITY: Detectors = Detectors { negativity: true, realignment: false };
    pub const REALIGNMENT: Detectors = Detectors { negativity: false, realignment: true };
}

impl Default for Detectors {
    fn default() -> Self {
        Detectors::BOTH
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalOptions {
    pub detectors: Detectors,
    pub log_base: LogBase,
    pub thresholds: Thresholds,
}

/// Detector readings at one parameter point; fields of disabled detectors are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecord {
    pub params: PointParams,
    pub negativity: Option<f64>,
    pub trace_norm: Option<f64>,
    pub r_value: Option<f64>,
    pub pt_min_eigenvalue: Option<f64>,
}

impl PointRecord {
    pub fn entangled_by_negativity(&self) -> Option<bool> {
        self.negativity.map(|n| n > 0.0)
    }

    pub fn entangled_by_realignment(&self, thresholds: &Thresholds) -> Option<bool> {
        self.r_value.map(|r| r > thresholds.positive_r)
    }
}

/// Hamiltonian → Gibbs state → both detectors.
pub fn evaluate_point(p: &HamiltonianParams, temperature: f64, log_base: LogBase) -> Result<PointRecord> {
    let options = EvalOptions { log_base, ..EvalOptions::default() };
    evaluate_point_with(&PointParams { hamiltonian: *p, temperature }, &options)
}

pub fn evaluate_point_with(point: &PointParams, options: &EvalOptions) -> Result<PointRecord> {
    let state = gibbs_state(&build_hamiltonian(&point.hamiltonian), point.temperature)?;
    let rho = DensityMatrix::new(&state.rho)?;
    let mut record = PointRecord {
        params: *point,
        negativity: None,
        trace_norm: None,
        r_value: None,
        pt_min_eigenvalue: None,
    };
    if options.detectors.negativity {
        let n = rho.negativity(&options.thresholds)?;
        record.negativity = Some(n.negativity);
        record.pt_min_eigenvalue = Some(n.min_pt_eigenvalue());
    }
    if options.detectors.realignment {
        let r = rho.realignment(options.log_base, &options.thresholds)?;
        record.trace_norm = Some(r.trace_norm);
        record.r_value = Some(r.r_value);
    }
    Ok(record)
}

/// A one- or two-axis grid over parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Values of the parameters that are not swept.
    pub fixed: PointParams,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub options: EvalOptions,
}

impl SweepSpec {
    pub fn new(fixed: PointParams, axis1: Axis, axis2: Option<Axis>) -> Self {
        SweepSpec { fixed, axis1, axis2, options: EvalOptions::default() }
    }

    pub fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        if let Some(a2) = &self.axis2 {
            a2.validate()?;
            if a2.param == self.axis1.param {
                return Err(Error::InvalidSweep(format!(
                    "both axes sweep {}; swept parameters must be distinct",
                    a2.param
                )));
            }
        }
        if !self.options.detectors.negativity && !self.options.detectors.realignment {
            return Err(Error::InvalidSweep("no detector selected".into()));
        }
        Ok(())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.steps, self.axis2.map_or(1, |a| a.steps))
    }

    pub fn len(&self) -> usize {
        let (a, b) = self.shape();
        a * b
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Parameters at grid index `(i, j)`.
    pub fn point(&self, i: usize, j: usize) -> PointParams {
        let mut p = self.fixed.with(self.axis1.param, self.axis1.value(i));
        if let Some(a2) = &self.axis2 {
            p.set(a2.param, a2.value(j));
        }
        p
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    /// Row-major over `axis1 × axis2`.
    pub records: Vec<PointRecord>,
    pub timestamp_unix: u64,
}

impl SweepResult {
    pub fn shape(&self) -> (usize, usize) {
        self.spec.shape()
    }

    pub fn record(&self, i: usize, j: usize) -> &PointRecord {
        &self.records[i * self.shape().1 + j]
    }

    pub fn log_base(&self) -> LogBase {
        self.spec.options.log_base
    }

    pub fn thresholds(&self) -> Thresholds {
        self.spec.options.thresholds
    }
}

/// Evaluates every grid point on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let (_, n2) = spec.shape();
    let records = (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / n2, idx % n2);
            evaluate_point_with(&spec.point(i, j), &spec.options).map_err(|e| Error::Point {
                i,
                j,
                source: Box::new(e),
            })
        })
        .collect::<Vec<Result<PointRecord>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let timestamp_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    Ok(SweepResult { spec: spec.clone(), records, timestamp_unix })
}

/// [`run_sweep`] on a dedicated pool of `threads` workers. Output does not
/// depend on `threads`.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: usize) -> Result<SweepResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start thread pool: {e}")))?;
    pool.install(|| run_sweep(spec))
}
