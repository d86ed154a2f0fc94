use std::fs::File;
use std::io::BufWriter;

use serde_json::{json, Map, Value};

use qutrit_thermal::analysis::{
    classify_region, evaluate_point_with, peak_report, run_sweep, run_sweep_with_threads, threshold_scan,
    threshold_temperature_with, Detectors, EvalOptions, Peak, PointParams, PointRecord, SweepSpec,
};
use qutrit_thermal::criteria::{LogBase, Thresholds};
use qutrit_thermal::spin::{
    analytic_spectrum_case1, analytic_spectrum_case2, compare_with_numeric, DerivedQuantities,
    HamiltonianParams, SpectrumCase, RESIDUAL_FLAG_TOL,
};
use qutrit_thermal::Error;

use crate::config::{PointConfig, SpectrumConfig, SweepConfig, ThresholdConfig};
use crate::output::{fmt_f64, table, write_csv};
use crate::{CliError, EXIT_NOT_BRACKETED, EXIT_OK};

/// Gap between the grid-maximum threshold and the single-point threshold above
/// which the two are reported as disagreeing.
pub const SCAN_DISAGREEMENT: f64 = 0.02;

/// What a command hands back for printing: one JSON line for stdout, a
/// human-readable block for stderr, and the exit code.
#[derive(Debug)]
pub struct Report {
    pub summary: Value,
    pub table: String,
    pub code: i32,
}

fn log_base_name(b: LogBase) -> String {
    b.name()
}

fn thresholds_json(t: &Thresholds) -> Value {
    json!({ "pt_negative": t.negative_eigenvalue, "r_positive": t.positive_r })
}

fn hamiltonian_json(h: &HamiltonianParams, into: &mut Map<String, Value>) {
    into.insert("J".into(), json!(h.j));
    into.insert("K".into(), json!(h.k));
    into.insert("Delta".into(), json!(h.delta));
    into.insert("B".into(), json!(h.b));
}

fn params_json(p: &PointParams) -> Map<String, Value> {
    let mut m = Map::new();
    hamiltonian_json(&p.hamiltonian, &mut m);
    m.insert("T".into(), json!(p.temperature));
    m
}

fn record_json(rec: &PointRecord, thresholds: &Thresholds) -> Map<String, Value> {
    let mut m = params_json(&rec.params);
    m.insert("negativity".into(), json!(rec.negativity));
    m.insert("trace_norm".into(), json!(rec.trace_norm));
    m.insert("R".into(), json!(rec.r_value));
    m.insert("pt_min_eig".into(), json!(rec.pt_min_eigenvalue));
    m.insert("entangled_by_N".into(), json!(rec.entangled_by_negativity()));
    m.insert("entangled_by_R".into(), json!(rec.entangled_by_realignment(thresholds)));
    m
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_else(|| "-".into())
}

fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_else(|| "-".into())
}

pub fn point(cfg: &PointConfig) -> Result<Report, CliError> {
    let options =
        EvalOptions { detectors: Detectors::BOTH, log_base: cfg.log_base, thresholds: cfg.thresholds };
    let rec = evaluate_point_with(&cfg.params, &options)?;
    let region = classify_region(&cfg.params.hamiltonian);

    let mut summary = Map::new();
    summary.insert("command".into(), json!("point"));
    summary.extend(record_json(&rec, &cfg.thresholds));
    summary.insert("region".into(), json!(region.to_string()));
    summary.insert("log_base".into(), json!(log_base_name(cfg.log_base)));
    summary.insert("thresholds".into(), thresholds_json(&cfg.thresholds));

    let h = &cfg.params.hamiltonian;
    let rows = vec![
        vec!["J".into(), fmt_f64(h.j)],
        vec!["K".into(), fmt_f64(h.k)],
        vec!["Delta".into(), fmt_f64(h.delta)],
        vec!["B".into(), fmt_f64(h.b)],
        vec!["T".into(), fmt_f64(cfg.params.temperature)],
        vec!["region".into(), region.to_string()],
        vec!["negativity".into(), opt(rec.negativity)],
        vec!["trace_norm".into(), opt(rec.trace_norm)],
        vec![format!("R (log base {})", log_base_name(cfg.log_base)), opt(rec.r_value)],
        vec!["pt_min_eig".into(), opt(rec.pt_min_eigenvalue)],
        vec!["entangled_by_N".into(), opt_bool(rec.entangled_by_negativity())],
        vec!["entangled_by_R".into(), opt_bool(rec.entangled_by_realignment(&cfg.thresholds))],
    ];
    Ok(Report { summary: Value::Object(summary), table: table(&["quantity", "value"], &rows), code: EXIT_OK })
}

fn peak_json(peak: &Option<Peak>) -> Value {
    match peak {
        None => Value::Null,
        Some(p) => {
            let mut m = params_json(&p.params);
            m.insert("value".into(), json!(p.value));
            m.insert("index".into(), json!([p.index.0, p.index.1]));
            m.insert("resolution".into(), json!([p.resolution.0, p.resolution.1]));
            m.insert("region".into(), json!(classify_region(&p.params.hamiltonian).to_string()));
            Value::Object(m)
        }
    }
}

fn peak_row(name: &str, peak: &Option<Peak>) -> Vec<String> {
    match peak {
        None => vec![name.into(), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), "-".into()],
        Some(p) => {
            let h = &p.params.hamiltonian;
            vec![
                name.into(),
                fmt_f64(p.value),
                fmt_f64(h.j),
                fmt_f64(h.k),
                fmt_f64(h.delta),
                fmt_f64(h.b),
                fmt_f64(p.params.temperature),
            ]
        }
    }
}

pub fn sweep(cfg: &SweepConfig) -> Result<Report, CliError> {
    let mut spec = SweepSpec::new(cfg.point.params, cfg.axis1, cfg.axis2);
    spec.options = EvalOptions {
        detectors: cfg.detectors,
        log_base: cfg.point.log_base,
        thresholds: cfg.point.thresholds,
    };
    spec.validate()?;
    let result = match cfg.parallelism {
        Some(n) => run_sweep_with_threads(&spec, n)?,
        None => run_sweep(&spec)?,
    };

    let file = File::create(&cfg.output)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", cfg.output.display())))?;
    write_csv(&result, BufWriter::new(file))
        .map_err(|e| CliError::Io(format!("writing {}: {e}", cfg.output.display())))?;

    let peaks = peak_report(&result);
    let summary = json!({
        "command": "sweep",
        "output": cfg.output.display().to_string(),
        "rows": result.records.len(),
        "axis1": cfg.axis1.to_string(),
        "axis2": cfg.axis2.map(|a| a.to_string()),
        "fixed": params_json(&cfg.point.params),
        "detectors": {
            "negativity": cfg.detectors.negativity,
            "realignment": cfg.detectors.realignment,
        },
        "max_negativity": peak_json(&peaks.negativity),
        "max_R": peak_json(&peaks.realignment),
        "log_base": log_base_name(cfg.point.log_base),
        "thresholds": thresholds_json(&cfg.point.thresholds),
        "parallelism": cfg.parallelism,
        "timestamp_unix": result.timestamp_unix,
    });

    let mut text = format!(
        "wrote {} rows to {} (axis1 {}, axis2 {})\n",
        result.records.len(),
        cfg.output.display(),
        cfg.axis1,
        cfg.axis2.map(|a| a.to_string()).unwrap_or_else(|| "none".into()),
    );
    text.push_str(&table(
        &["grid maximum", "value", "J", "K", "Delta", "B", "T"],
        &[peak_row("negativity", &peaks.negativity), peak_row("R", &peaks.realignment)],
    ));
    Ok(Report { summary, table: text, code: EXIT_OK })
}

fn derived_json(d: &DerivedQuantities) -> Value {
    match *d {
        DerivedQuantities::Case1 { xi_plus, xi_minus, eta_plus, eta_minus } => json!({
            "xi_plus": xi_plus, "xi_minus": xi_minus, "eta_plus": eta_plus, "eta_minus": eta_minus,
        }),
        DerivedQuantities::Case2 { alpha, zeta_plus, zeta_minus } => json!({
            "alpha": alpha, "zeta_plus": zeta_plus, "zeta_minus": zeta_minus,
        }),
    }
}

pub fn spectrum(cfg: &SpectrumConfig) -> Result<Report, CliError> {
    let analytic = match cfg.case {
        SpectrumCase::Case1 => analytic_spectrum_case1(&cfg.params)?,
        SpectrumCase::Case2 => analytic_spectrum_case2(&cfg.params)?,
    };
    let cmp = compare_with_numeric(&analytic)?;
    let case_number = match cmp.case {
        SpectrumCase::Case1 => 1,
        SpectrumCase::Case2 => 2,
    };
    let flagged: Vec<&str> = cmp.rows.iter().filter(|r| r.flagged).map(|r| r.label).collect();

    let mut summary = Map::new();
    summary.insert("command".into(), json!("spectrum"));
    hamiltonian_json(&cfg.params, &mut summary);
    summary.insert("case".into(), json!(case_number));
    summary.insert(
        "rows".into(),
        Value::Array(
            cmp.rows
                .iter()
                .map(|r| {
                    json!({
                        "label": r.label,
                        "formula": r.formula,
                        "analytic": r.analytic,
                        "rayleigh": r.rayleigh,
                        "nearest_numeric": r.nearest_numeric,
                        "residual": r.residual,
                        "flagged": r.flagged,
                    })
                })
                .collect(),
        ),
    );
    summary.insert("numeric".into(), json!(cmp.numeric));
    summary.insert("multiset_deviation".into(), json!(cmp.multiset_deviation));
    summary.insert("derived".into(), derived_json(&analytic.derived));
    summary.insert("degenerate_coupling".into(), json!(cmp.degenerate_coupling));
    summary.insert("flagged".into(), json!(flagged));
    summary.insert("residual_flag_tol".into(), json!(RESIDUAL_FLAG_TOL));
    summary.insert("log_base".into(), json!(log_base_name(cfg.log_base)));

    let rows: Vec<Vec<String>> = cmp
        .rows
        .iter()
        .map(|r| {
            vec![
                if r.flagged { "!!".into() } else { String::new() },
                r.label.into(),
                r.formula.into(),
                fmt_f64(r.analytic),
                fmt_f64(r.rayleigh),
                fmt_f64(r.nearest_numeric),
                fmt_f64(r.residual),
            ]
        })
        .collect();
    let mut text = format!("closed-form case {case_number}\n");
    text.push_str(&table(
        &["", "state", "formula", "analytic", "<v|H|v>", "nearest numeric", "residual"],
        &rows,
    ));
    let numeric: Vec<String> = cmp.numeric.iter().map(|&x| fmt_f64(x)).collect();
    text.push_str(&format!("numeric spectrum: {}\n", numeric.join(", ")));
    if cmp.degenerate_coupling {
        text.push_str("note: |J - K*Delta| is ~0; central-pair vectors taken from the numeric spectrum\n");
    }
    if !flagged.is_empty() {
        text.push_str(&format!(
            "!! {} eigenpair(s) with residual above {}: {}\n",
            flagged.len(),
            fmt_f64(RESIDUAL_FLAG_TOL),
            flagged.join(", ")
        ));
    }
    Ok(Report { summary: Value::Object(summary), table: text, code: EXIT_OK })
}

pub fn threshold(cfg: &ThresholdConfig) -> Result<Report, CliError> {
    let mut results = Vec::new();
    let mut rows = Vec::new();
    let mut notes = String::new();
    let mut code = EXIT_OK;
    let mut point_tc = Vec::new();

    for &detector in &cfg.detectors {
        match threshold_temperature_with(&cfg.params, detector, cfg.lo, cfg.hi, &cfg.options) {
            Ok(r) => {
                results.push(json!({
                    "detector": detector.name(),
                    "status": "ok",
                    "t_c": r.t_c,
                    "t_lo": r.t_lo,
                    "t_hi": r.t_hi,
                    "tolerance": r.tolerance,
                    "iterations": r.iterations,
                }));
                rows.push(vec![
                    detector.name().into(),
                    fmt_f64(r.t_c),
                    format!("[{}, {}]", fmt_f64(r.t_lo), fmt_f64(r.t_hi)),
                    r.iterations.to_string(),
                ]);
                point_tc.push(Some(r.t_c));
            }
            Err(Error::NotBracketed { t_lo, t_hi, value_lo, value_hi }) => {
                code = EXIT_NOT_BRACKETED;
                results.push(json!({
                    "detector": detector.name(),
                    "status": "not_bracketed",
                    "t_lo": t_lo,
                    "t_hi": t_hi,
                    "value_lo": value_lo,
                    "value_hi": value_hi,
                }));
                rows.push(vec![detector.name().into(), "not bracketed".into(), String::new(), String::new()]);
                notes.push_str(&format!(
                    "error: {detector} is not bracketed: value {} at T = {} and {} at T = {} \
                     (need > {} at --lo and <= {} at --hi)\n",
                    fmt_f64(value_lo),
                    fmt_f64(t_lo),
                    fmt_f64(value_hi),
                    fmt_f64(t_hi),
                    fmt_f64(cfg.options.detection_level),
                    fmt_f64(cfg.options.detection_level),
                ));
                point_tc.push(None);
            }
            Err(e) => return Err(e.into()),
        }
    }

    let mut scans = Vec::new();
    if let Some((a1, a2)) = cfg.scan {
        for (&detector, tc) in cfg.detectors.iter().zip(&point_tc) {
            let scan = threshold_scan(&cfg.params, &a1, &a2, detector, cfg.lo, cfg.hi, &cfg.options)?;
            let (max_json, disagree) = match &scan.max {
                None => (Value::Null, None),
                Some((p, r)) => {
                    let mut m = Map::new();
                    hamiltonian_json(p, &mut m);
                    m.insert("t_c".into(), json!(r.t_c));
                    let disagree = tc.map(|tc| (r.t_c - tc).abs() > SCAN_DISAGREEMENT);
                    notes.push_str(&format!(
                        "{detector}: grid maximum T_c = {} at J = {}, K = {}, Delta = {}, B = {}{}\n",
                        fmt_f64(r.t_c),
                        fmt_f64(p.j),
                        fmt_f64(p.k),
                        fmt_f64(p.delta),
                        fmt_f64(p.b),
                        if disagree == Some(true) {
                            "  !! differs from the point value by more than 0.02"
                        } else {
                            ""
                        },
                    ));
                    (Value::Object(m), disagree)
                }
            };
            scans.push(json!({
                "detector": detector.name(),
                "axis1": a1.to_string(),
                "axis2": a2.to_string(),
                "max": max_json,
                "bracketed": scan.bracketed,
                "never_entangled": scan.never_entangled,
                "still_entangled": scan.still_entangled,
                "disagrees_with_point": disagree,
            }));
        }
    }

    let mut summary = Map::new();
    summary.insert("command".into(), json!("threshold"));
    hamiltonian_json(&cfg.params, &mut summary);
    summary.insert("lo".into(), json!(cfg.lo));
    summary.insert("hi".into(), json!(cfg.hi));
    summary.insert("tolerance".into(), json!(cfg.options.tolerance));
    summary.insert("detection_level".into(), json!(cfg.options.detection_level));
    summary.insert("results".into(), Value::Array(results));
    if cfg.scan.is_some() {
        summary.insert("scan".into(), Value::Array(scans));
    }
    summary.insert("log_base".into(), json!(log_base_name(cfg.options.log_base)));

    let mut text = table(&["detector", "T_c", "final bracket", "iterations"], &rows);
    text.push_str(&notes);
    Ok(Report { summary: Value::Object(summary), table: text, code })
}
