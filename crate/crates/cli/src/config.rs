use std::path::{Path, PathBuf};
use std::str::FromStr;

use qutrit_thermal::analysis::{Axis, Detector, Detectors, Param, PointParams, ThresholdOptions};
use qutrit_thermal::criteria::{LogBase, Thresholds};
use qutrit_thermal::spin::{HamiltonianParams, SpectrumCase};

use crate::args::{CriterionArgs, ModelArgs, PointArgs, SpectrumArgs, SweepArgs, ThresholdArgs};
use crate::CliError;

/// Every key a config file may hold. They are the long flag names.
pub const KNOWN_KEYS: &[&str] = &[
    "J",
    "K",
    "Delta",
    "B",
    "T",
    "log-base",
    "pt-threshold",
    "r-threshold",
    "axis1",
    "axis2",
    "detectors",
    "output",
    "parallelism",
    "case",
    "lo",
    "hi",
    "detector",
    "tolerance",
    "detection-level",
    "scan",
    "scan-axis1",
    "scan-axis2",
];

pub const DEFAULT_J: f64 = -1.0;
pub const DEFAULT_K: f64 = 0.0;
pub const DEFAULT_DELTA: f64 = -1.0;
pub const DEFAULT_B: f64 = 0.0;
pub const DEFAULT_T: f64 = 0.2;
pub const DEFAULT_AXIS1: &str = "B:-3:3:61";
pub const DEFAULT_AXIS2: &str = "Delta:-3:3:61";
pub const DEFAULT_OUTPUT: &str = "sweep.csv";
pub const DEFAULT_LO: f64 = 0.05;
pub const DEFAULT_HI: f64 = 3.0;

/// Values loaded from `--config`; empty when no file was given.
#[derive(Debug, Default)]
pub struct FileConfig {
    table: toml::Table,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("--config: cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(msg) => CliError::usage(format!("--config {}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::usage(e.to_string()))?;
        if let Some(key) = table.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(CliError::usage(format!("unknown key '{key}'")));
        }
        Ok(FileConfig { table })
    }

    fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Float(x)) => Ok(Some(*x)),
            Some(toml::Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(v) => Err(wrong_type(key, "a number", v)),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(i)) if *i >= 0 => Ok(Some(*i as usize)),
            Some(v) => Err(wrong_type(key, "a non-negative integer", v)),
        }
    }

    /// Strings; bare numbers are accepted too so that `log-base = 10` works.
    fn string(&self, key: &str) -> Result<Option<String>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s.clone())),
            Some(toml::Value::Integer(i)) => Ok(Some(i.to_string())),
            Some(toml::Value::Float(x)) => Ok(Some(x.to_string())),
            Some(v) => Err(wrong_type(key, "a string", v)),
        }
    }

    fn bool(&self, key: &str) -> Result<Option<bool>, CliError> {
        match self.table.get(key) {
            None => Ok(None),
            Some(toml::Value::Boolean(b)) => Ok(Some(*b)),
            Some(v) => Err(wrong_type(key, "a boolean", v)),
        }
    }
}

fn wrong_type(key: &str, want: &str, got: &toml::Value) -> CliError {
    CliError::usage(format!("--{key}: expected {want} in config file, got {}", got.type_str()))
}

fn pick_f64(flag: Option<f64>, file: &FileConfig, key: &str, default: f64) -> Result<f64, CliError> {
    Ok(match flag {
        Some(x) => x,
        None => file.f64(key)?.unwrap_or(default),
    })
}

fn pick_string(flag: Option<String>, file: &FileConfig, key: &str) -> Result<Option<String>, CliError> {
    match flag {
        Some(s) => Ok(Some(s)),
        None => file.string(key),
    }
}

fn finite(x: f64, key: &str) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{key} must be finite, got {x}")))
    }
}

fn positive(x: f64, key: &str) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{key} must be positive and finite, got {x}")))
    }
}

fn non_negative(x: f64, key: &str) -> Result<f64, CliError> {
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{key} must be non-negative and finite, got {x}")))
    }
}

fn resolve_model(args: &ModelArgs, file: &FileConfig) -> Result<HamiltonianParams, CliError> {
    Ok(HamiltonianParams::new(
        finite(pick_f64(args.j, file, "J", DEFAULT_J)?, "J")?,
        finite(pick_f64(args.k, file, "K", DEFAULT_K)?, "K")?,
        finite(pick_f64(args.delta, file, "Delta", DEFAULT_DELTA)?, "Delta")?,
        finite(pick_f64(args.b, file, "B", DEFAULT_B)?, "B")?,
    ))
}

fn resolve_log_base(flag: Option<String>, file: &FileConfig) -> Result<LogBase, CliError> {
    match pick_string(flag, file, "log-base")? {
        None => Ok(LogBase::E),
        Some(s) => LogBase::from_str(&s)
            .map_err(|_| CliError::usage(format!("--log-base must be e, 2, 10 or a number > 1, got '{s}'"))),
    }
}

fn resolve_thresholds(args: &CriterionArgs, file: &FileConfig) -> Result<Thresholds, CliError> {
    let d = Thresholds::default();
    Ok(Thresholds {
        negative_eigenvalue: non_negative(
            pick_f64(args.pt_threshold, file, "pt-threshold", d.negative_eigenvalue)?,
            "pt-threshold",
        )?,
        positive_r: non_negative(
            pick_f64(args.r_threshold, file, "r-threshold", d.positive_r)?,
            "r-threshold",
        )?,
    })
}

fn parse_axis(text: &str, key: &str) -> Result<Axis, CliError> {
    let axis = Axis::from_str(text).map_err(|e| CliError::usage(format!("--{key}: {e}")))?;
    if axis.param == Param::T && !(axis.min > 0.0) {
        return Err(CliError::usage(format!("--{key}: temperatures must be positive, got {text}")));
    }
    Ok(axis)
}

/// Resolved settings shared by `point` and `sweep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointConfig {
    pub params: PointParams,
    pub log_base: LogBase,
    pub thresholds: Thresholds,
}

impl PointConfig {
    pub fn resolve(args: &PointArgs, file: &FileConfig) -> Result<Self, CliError> {
        let hamiltonian = resolve_model(&args.model, file)?;
        let temperature = positive(pick_f64(args.t, file, "T", DEFAULT_T)?, "T")?;
        Ok(PointConfig {
            params: PointParams { hamiltonian, temperature },
            log_base: resolve_log_base(args.criteria.log_base.clone(), file)?,
            thresholds: resolve_thresholds(&args.criteria, file)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub point: PointConfig,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub detectors: Detectors,
    pub output: PathBuf,
    /// `None` uses the global thread pool.
    pub parallelism: Option<usize>,
}

impl SweepConfig {
    pub fn resolve(args: &SweepArgs, file: &FileConfig) -> Result<Self, CliError> {
        let point = PointConfig::resolve(&args.point, file)?;
        let axis1_text =
            pick_string(args.axis1.clone(), file, "axis1")?.unwrap_or_else(|| DEFAULT_AXIS1.into());
        let axis1 = parse_axis(&axis1_text, "axis1")?;
        let axis2_text =
            pick_string(args.axis2.clone(), file, "axis2")?.unwrap_or_else(|| DEFAULT_AXIS2.into());
        let axis2 = if axis2_text.trim().eq_ignore_ascii_case("none") {
            None
        } else {
            Some(parse_axis(&axis2_text, "axis2")?)
        };
        if let Some(a2) = axis2 {
            if a2.param == axis1.param {
                return Err(CliError::usage(format!(
                    "--axis1 and --axis2 both sweep {}; pick two different parameters",
                    a2.param
                )));
            }
        }
        let detectors = match pick_string(args.detectors.clone(), file, "detectors")? {
            None => Detectors::BOTH,
            Some(list) => parse_detectors(&list)?,
        };
        let output = match &args.output {
            Some(p) => p.clone(),
            None => PathBuf::from(file.string("output")?.unwrap_or_else(|| DEFAULT_OUTPUT.into())),
        };
        let parallelism = match args.parallelism {
            Some(n) => Some(n),
            None => file.usize("parallelism")?,
        };
        if parallelism == Some(0) {
            return Err(CliError::usage("--parallelism must be at least 1"));
        }
        Ok(SweepConfig { point, axis1, axis2, detectors, output, parallelism })
    }
}

fn parse_detectors(list: &str) -> Result<Detectors, CliError> {
    let mut d = Detectors { negativity: false, realignment: false };
    for name in list.split(',').map(str::trim) {
        match name {
            "both" | "all" => d = Detectors::BOTH,
            "negativity" | "N" => d.negativity = true,
            "realignment" | "R" => d.realignment = true,
            _ => {
                return Err(CliError::usage(format!(
                    "--detectors: unknown detector '{name}' (expected negativity, realignment or both)"
                )))
            }
        }
    }
    if !(d.negativity || d.realignment) {
        return Err(CliError::usage("--detectors selects nothing"));
    }
    Ok(d)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumConfig {
    pub params: HamiltonianParams,
    pub case: SpectrumCase,
    pub log_base: LogBase,
}

impl SpectrumConfig {
    pub fn resolve(args: &SpectrumArgs, file: &FileConfig) -> Result<Self, CliError> {
        let params = resolve_model(&args.model, file)?;
        let case = match pick_string(args.case.clone(), file, "case")?.as_deref().map(str::trim) {
            None | Some("auto") => {
                if params.k == 0.0 {
                    SpectrumCase::Case1
                } else {
                    SpectrumCase::Case2
                }
            }
            Some("1") => {
                if params.k != 0.0 {
                    return Err(CliError::usage(format!(
                        "--case 1 describes K = 0 only, got --K {}",
                        params.k
                    )));
                }
                SpectrumCase::Case1
            }
            Some("2") => SpectrumCase::Case2,
            Some(other) => {
                return Err(CliError::usage(format!("--case must be 1, 2 or auto, got '{other}'")))
            }
        };
        let log_base = resolve_log_base(args.log_base.clone(), file)?;
        Ok(SpectrumConfig { params, case, log_base })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdConfig {
    pub params: HamiltonianParams,
    pub lo: f64,
    pub hi: f64,
    pub detectors: Vec<Detector>,
    pub options: ThresholdOptions,
    pub scan: Option<(Axis, Axis)>,
}

impl ThresholdConfig {
    pub fn resolve(args: &ThresholdArgs, file: &FileConfig) -> Result<Self, CliError> {
        let params = resolve_model(&args.model, file)?;
        let lo = positive(pick_f64(args.lo, file, "lo", DEFAULT_LO)?, "lo")?;
        let hi = positive(pick_f64(args.hi, file, "hi", DEFAULT_HI)?, "hi")?;
        if lo >= hi {
            return Err(CliError::usage(format!("--lo ({lo}) must be below --hi ({hi})")));
        }
        let detectors = match pick_string(args.detector.clone(), file, "detector")?.as_deref().map(str::trim)
        {
            None => vec![Detector::Negativity],
            Some("both") => vec![Detector::Negativity, Detector::Realignment],
            Some(name) => vec![Detector::from_str(name).map_err(|_| {
                CliError::usage(format!("--detector must be negativity, realignment or both, got '{name}'"))
            })?],
        };
        let d = ThresholdOptions::default();
        let options = ThresholdOptions {
            tolerance: positive(pick_f64(args.tolerance, file, "tolerance", d.tolerance)?, "tolerance")?,
            detection_level: non_negative(
                pick_f64(args.detection_level, file, "detection-level", d.detection_level)?,
                "detection-level",
            )?,
            log_base: resolve_log_base(args.log_base.clone(), file)?,
        };
        let scan = args.scan || file.bool("scan")?.unwrap_or(false);
        let scan = if scan {
            let a1 = pick_string(args.scan_axis1.clone(), file, "scan-axis1")?
                .unwrap_or_else(|| DEFAULT_AXIS1.into());
            let a2 = pick_string(args.scan_axis2.clone(), file, "scan-axis2")?
                .unwrap_or_else(|| DEFAULT_AXIS2.into());
            let (a1, a2) = (parse_axis(&a1, "scan-axis1")?, parse_axis(&a2, "scan-axis2")?);
            for (a, key) in [(a1, "scan-axis1"), (a2, "scan-axis2")] {
                if a.param == Param::T {
                    return Err(CliError::usage(format!("--{key} cannot sweep T")));
                }
            }
            if a1.param == a2.param {
                return Err(CliError::usage(format!(
                    "--scan-axis1 and --scan-axis2 both sweep {}",
                    a1.param
                )));
            }
            Some((a1, a2))
        } else {
            None
        };
        Ok(ThresholdConfig { params, lo, hi, detectors, options, scan })
    }
}
