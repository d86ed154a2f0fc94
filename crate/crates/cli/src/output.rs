use std::io::Write;

use qutrit_thermal::analysis::{PointRecord, SweepResult};

pub const CSV_HEADER: [&str; 9] =
    ["J", "K", "Delta", "B", "T", "negativity", "trace_norm", "R", "pt_min_eig"];

/// Shortest decimal that parses back to the same `f64`. Zero is always written
/// unsigned.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    ryu::Buffer::new().format(x).to_owned()
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn csv_row(rec: &PointRecord) -> [String; 9] {
    let h = &rec.params.hamiltonian;
    [
        fmt_f64(h.j),
        fmt_f64(h.k),
        fmt_f64(h.delta),
        fmt_f64(h.b),
        fmt_f64(rec.params.temperature),
        fmt_opt(rec.negativity),
        fmt_opt(rec.trace_norm),
        fmt_opt(rec.r_value),
        fmt_opt(rec.pt_min_eigenvalue),
    ]
}

/// Header plus one row per grid point in the sweep's row-major order. Columns
/// of detectors that were not evaluated are left empty.
pub fn write_csv<W: Write>(result: &SweepResult, out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in &result.records {
        w.write_record(csv_row(rec))?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned text table with a header rule.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut s = line(&mut header.iter().copied());
    s.push('\n');
    s.push_str(&"-".repeat(widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1)));
    s.push('\n');
    for row in rows {
        s.push_str(&line(&mut row.iter().map(String::as_str)));
        s.push('\n');
    }
    s
}
