use super::{PointParams, SweepResult};

/// A grid maximum. `resolution` is the grid spacing along each axis, i.e. the
/// uncertainty of `params` as a location of the true maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub value: f64,
    pub index: (usize, usize),
    pub params: PointParams,
    pub resolution: (f64, Option<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    /// Largest negativity; `None` when negativity was not evaluated.
    pub negativity: Option<Peak>,
    /// Largest `R`; `None` when realignment was not evaluated.
    pub realignment: Option<Peak>,
}

/// Exact grid argmax of `N` and `R`; ties go to the lowest grid index.
pub fn peak_report(result: &SweepResult) -> PeakReport {
    let (_, n2) = result.shape();
    let resolution = (result.spec.axis1.step(), result.spec.axis2.map(|a| a.step()));
    let best = |field: fn(&super::PointRecord) -> Option<f64>| -> Option<Peak> {
        let mut best: Option<Peak> = None;
        for (idx, rec) in result.records.iter().enumerate() {
            let Some(value) = field(rec) else { continue };
            if best.is_none_or(|b| value > b.value) {
                best = Some(Peak { value, index: (idx / n2, idx % n2), params: rec.params, resolution });
            }
        }
        best
    };
    PeakReport { negativity: best(|r| r.negativity), realignment: best(|r| r.r_value) }
}

/// Indices of the peaks of `series` after a centered moving average over
/// `window` samples.
///
/// A peak must exceed `min_height` and rise at least `min_prominence` above the
/// higher of its two flanking valleys. A flank runs to the nearest taller
/// sample, or to the end of the series; an empty flank (the peak sits on the
/// series edge) has no depth, so edge samples never count. On a flat top only
/// the first sample counts.
pub fn count_peaks(series: &[f64], window: usize, min_height: f64, min_prominence: f64) -> Vec<usize> {
    let n = series.len();
    let half = window.max(1) / 2;
    let smooth: Vec<f64> = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            series[lo..hi].iter().sum::<f64>() / (hi - lo) as f64
        })
        .collect();

    (0..n)
        .filter(|&i| {
            let h = smooth[i];
            if h <= min_height {
                return false;
            }
            // Equal samples block on the left and not on the right, so a flat
            // top is credited to its first sample.
            let left_min = smooth[..i].iter().rev().take_while(|&&v| v < h).fold(h, |m, &v| m.min(v));
            let left_min = if i == 0 { h } else { left_min };
            let right_min = smooth[i + 1..].iter().take_while(|&&v| v <= h).fold(h, |m, &v| m.min(v));
            let right_min = if i + 1 == n { h } else { right_min };
            let prominence = h - left_min.max(right_min);
            prominence > 0.0 && prominence >= min_prominence
        })
        .collect()
}
