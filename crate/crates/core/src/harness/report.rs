use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::bench::BenchRecord;
use crate::error::{CdoError, Result};

/// Mean solve time of one `(|V|, p, rule)` group over its finished runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub rule: String,
    pub num_nodes: usize,
    pub p: f64,
    pub mean_time_ms: f64,
    pub runs: usize,
    pub timeouts: usize,
}

/// Groups records by rule, node count and p (in that order).
pub fn summarize(records: &[BenchRecord]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(String, usize, u64), (f64, usize, usize)> = BTreeMap::new();
    for r in records {
        let key = (r.rule.clone(), r.num_nodes, (r.p * 1000.0).round() as u64);
        let entry = groups.entry(key).or_default();
        if r.timed_out {
            entry.2 += 1;
        } else {
            entry.0 += r.wall_time_ms;
            entry.1 += 1;
        }
    }
    groups
        .into_iter()
        .map(|((rule, num_nodes, p), (total, runs, timeouts))| SummaryRow {
            rule,
            num_nodes,
            p: p as f64 / 1000.0,
            mean_time_ms: if runs == 0 { f64::NAN } else { total / runs as f64 },
            runs,
            timeouts,
        })
        .collect()
}

fn write_rows<T: Serialize>(rows: &[T], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| CdoError::Format(e.to_string()))
}

pub fn write_records_csv(records: &[BenchRecord], out: impl Write) -> Result<()> {
    write_rows(records, out)
}

pub fn write_summary_csv(rows: &[SummaryRow], out: impl Write) -> Result<()> {
    write_rows(rows, out)
}

const PANEL_W: f64 = 320.0;
const PANEL_H: f64 = 240.0;
const MARGIN: f64 = 50.0;
const COLOURS: [&str; 6] = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02"];

/// Line chart of mean time against p, one panel per rule and one line per
/// node count, with a base-2 logarithmic time axis.
pub fn summary_svg(rows: &[SummaryRow]) -> String {
    let finite: Vec<&SummaryRow> = rows.iter().filter(|r| r.mean_time_ms > 0.0).collect();
    let mut rules: Vec<&str> = Vec::new();
    for r in rows {
        if !rules.contains(&r.rule.as_str()) {
            rules.push(&r.rule);
        }
    }
    let logs: Vec<f64> = finite.iter().map(|r| r.mean_time_ms.log2()).collect();
    let y_lo = logs.iter().copied().fold(f64::INFINITY, f64::min).floor();
    let y_hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max).ceil();
    let (y_lo, y_hi) = if y_lo.is_finite() && y_hi > y_lo { (y_lo, y_hi) } else { (0.0, 1.0) };
    let ps: Vec<f64> = finite.iter().map(|r| r.p).collect();
    let x_lo = ps.iter().copied().fold(f64::INFINITY, f64::min);
    let x_hi = ps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (x_lo, x_hi) = if x_lo.is_finite() && x_hi > x_lo { (x_lo, x_hi) } else { (0.0, 1.0) };

    let width = MARGIN + rules.len().max(1) as f64 * (PANEL_W + MARGIN);
    let height = PANEL_H + 2.0 * MARGIN + 20.0;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#
    );
    for (k, rule) in rules.iter().enumerate() {
        let left = MARGIN + k as f64 * (PANEL_W + MARGIN);
        let top = MARGIN;
        let x = |p: f64| left + (p - x_lo) / (x_hi - x_lo) * PANEL_W;
        let y = |ms: f64| top + PANEL_H - (ms.log2() - y_lo) / (y_hi - y_lo) * PANEL_H;
        let _ = writeln!(
            svg,
            r#"<rect x="{left}" y="{top}" width="{PANEL_W}" height="{PANEL_H}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{rule}</text>"#,
            left + PANEL_W / 2.0,
            top - 8.0
        );
        let mut e = y_lo;
        while e <= y_hi {
            let yy = top + PANEL_H - (e - y_lo) / (y_hi - y_lo) * PANEL_H;
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" text-anchor="end">2^{e}</text>"#,
                left - 4.0,
                yy + 4.0
            );
            e += ((y_hi - y_lo) / 6.0).ceil().max(1.0);
        }
        for p in [x_lo, x_hi] {
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" text-anchor="middle">p={p}</text>"#,
                x(p),
                top + PANEL_H + 14.0
            );
        }
        let mut by_nodes: BTreeMap<usize, Vec<&SummaryRow>> = BTreeMap::new();
        for r in finite.iter().filter(|r| r.rule == *rule) {
            by_nodes.entry(r.num_nodes).or_default().push(r);
        }
        for (c, (nodes, mut pts)) in by_nodes.into_iter().enumerate() {
            pts.sort_by(|a, b| a.p.total_cmp(&b.p));
            let points: Vec<String> = pts
                .iter()
                .map(|r| format!("{:.1},{:.1}", x(r.p), y(r.mean_time_ms)))
                .collect();
            let colour = COLOURS[c % COLOURS.len()];
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
                points.join(" ")
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" fill="{colour}">|V|={nodes}</text>"#,
                left + 6.0 + 50.0 * c as f64,
                top + PANEL_H + 32.0
            );
        }
    }
    svg.push_str("</svg>\n");
    svg
}
