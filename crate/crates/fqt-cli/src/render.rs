//! Report rendering: a 4-decimal table for humans, full-precision
//! JSON for machines, and a flat CSV of the per-group rows.

use clap::ValueEnum;
use fqt_core::analysis::{AnalysisReport, Baselines, GroupAnalysis};
use fqt_core::regression::LinearFit;
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Output encodings for rendered results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Aligned columns, numbers at 4 decimals.
    Table,
    /// Stable keys, full double precision, absent values as null.
    Json,
    /// Per-group rows only, full precision.
    Csv,
}

fn fmt4(value: f64) -> String {
    format!("{value:.4}")
}

fn fmt4_opt(value: Option<f64>) -> String {
    value.map(fmt4).unwrap_or_else(|| "-".to_string())
}

fn line_equation(fit: &LinearFit, variable: &str) -> String {
    let sign = if fit.intercept < 0.0 { '-' } else { '+' };
    format!(
        "y = {:.4}*{variable} {sign} {:.4}",
        fit.slope,
        fit.intercept.abs()
    )
}

fn json_number(value: f64) -> Value {
    serde_json::Number::from_f64(value).map_or(Value::Null, Value::Number)
}

fn json_opt(value: Option<f64>) -> Value {
    value.map_or(Value::Null, json_number)
}

fn flags_label(group: &GroupAnalysis) -> String {
    if group.flags.is_empty() {
        "-".to_string()
    } else {
        group
            .flags
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn group_json(group: &GroupAnalysis) -> Value {
    json!({
        "name": group.group_name,
        "a_mu": json_number(group.a_mu),
        "a_x": json_number(group.a_x),
        "contribution_mu": json_number(group.contribution_mu),
        "intersection_mu": json_opt(group.intersection.map(|p| p.mu)),
        "intersection_y": json_opt(group.intersection.map(|p| p.y)),
        "threshold_x": json_opt(group.threshold_x),
        "flags": group.flags.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

fn fit_json(fit: &LinearFit) -> Value {
    json!({ "slope": json_number(fit.slope), "intercept": json_number(fit.intercept) })
}

const GROUP_COLUMNS: [&str; 8] = [
    "name",
    "a_mu",
    "a_x",
    "contribution_mu",
    "intersection_mu",
    "intersection_y",
    "threshold_x",
    "flags",
];

fn group_cells(group: &GroupAnalysis, precise: bool) -> [String; 8] {
    let num = |v: f64| {
        if precise {
            v.to_string()
        } else {
            fmt4(v)
        }
    };
    let opt = |v: Option<f64>| {
        if precise {
            v.map(|v| v.to_string()).unwrap_or_default()
        } else {
            fmt4_opt(v)
        }
    };
    [
        group.group_name.clone(),
        num(group.a_mu),
        num(group.a_x),
        num(group.contribution_mu),
        opt(group.intersection.map(|p| p.mu)),
        opt(group.intersection.map(|p| p.y)),
        opt(group.threshold_x),
        if precise && group.flags.is_empty() {
            String::new()
        } else {
            flags_label(group)
        },
    ]
}

fn table_of(rows: &[[String; 8]]) -> String {
    let mut widths = GROUP_COLUMNS.map(str::len);
    for row in rows {
        for (width, cell) in widths.iter_mut().zip(row) {
            *width = (*width).max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = GROUP_COLUMNS
        .iter()
        .zip(widths)
        .map(|(name, width)| format!("{name:<width$}"))
        .collect();
    out.push_str(header.join("  ").trim_end());
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(cell, width)| format!("{cell:<width$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_of(rows: &[[String; 8]]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(GROUP_COLUMNS).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Renders a full analysis report.
pub fn render_report(report: &AnalysisReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "baseline_x:  {}",
                line_equation(&report.baseline_x, "x")
            );
            let _ = writeln!(
                out,
                "baseline_mu: {}",
                line_equation(&report.baseline_mu, "mu")
            );
            out.push('\n');
            let rows: Vec<[String; 8]> = report
                .groups
                .iter()
                .map(|g| group_cells(g, false))
                .collect();
            out.push_str(&table_of(&rows));
            out.push('\n');
            let _ = writeln!(out, "ranking:  {}", report.ranking.join(" > "));
            let _ = writeln!(
                out,
                "dominant: {}",
                report.dominant.as_deref().unwrap_or("-")
            );
            out
        }
        OutputFormat::Json => {
            let value = json!({
                "baseline_x": fit_json(&report.baseline_x),
                "baseline_mu": fit_json(&report.baseline_mu),
                "groups": report.groups.iter().map(group_json).collect::<Vec<_>>(),
                "ranking": report.ranking,
                "dominant": report.dominant.as_deref().map_or(Value::Null, Value::from),
            });
            format!("{value:#}\n")
        }
        OutputFormat::Csv => {
            let rows: Vec<[String; 8]> =
                report.groups.iter().map(|g| group_cells(g, true)).collect();
            csv_of(&rows)
        }
    }
}

/// Renders the baseline pair alone.
pub fn render_baselines(baselines: &Baselines, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            format!(
                "baseline_x:  {}\nbaseline_mu: {}\n",
                line_equation(baselines.raw(), "x"),
                line_equation(baselines.membership(), "mu")
            )
        }
        OutputFormat::Json => {
            let value = json!({
                "baseline_x": fit_json(baselines.raw()),
                "baseline_mu": fit_json(baselines.membership()),
            });
            format!("{value:#}\n")
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer
                .write_record(["unit", "slope", "intercept"])
                .expect("in-memory write");
            for (unit, fit) in [
                ("raw-x", baselines.raw()),
                ("membership", baselines.membership()),
            ] {
                writer
                    .write_record([
                        unit.to_string(),
                        fit.slope.to_string(),
                        fit.intercept.to_string(),
                    ])
                    .expect("in-memory write");
            }
            String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 output")
        }
    }
}

/// Renders `(x, degree)` pairs from the membership command.
pub fn render_memberships(pairs: &[(f64, f64)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::from("x        mu\n");
            for &(x, mu) in pairs {
                let _ = writeln!(out, "{:<7}  {}", trim_float(x), fmt4(mu));
            }
            out
        }
        OutputFormat::Json => {
            let value = Value::Array(
                pairs
                    .iter()
                    .map(|&(x, mu)| json!({ "x": json_number(x), "mu": json_number(mu) }))
                    .collect(),
            );
            format!("{value:#}\n")
        }
        OutputFormat::Csv => {
            let mut out = String::from("x,mu\n");
            for &(x, mu) in pairs {
                let _ = writeln!(out, "{x},{mu}");
            }
            out
        }
    }
}

fn trim_float(value: f64) -> String {
    value.to_string()
}
