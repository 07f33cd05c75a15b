//! Rendering: confusion matrices in the rows-actual/columns-predicted
//! layout, accuracy/MAE lines, comparison tables, and the versioned JSON
//! report document.

use serde_json::json;

use crate::eval::{ComparisonTable, EvalReport};
use eyestate_core::metrics::ConfusionMatrix;

pub const JSON_SCHEMA: u32 = 1;

pub fn render_confusion(cm: &ConfusionMatrix) -> String {
    let c = cm.counts();
    let w = c
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max("Closed".len());
    let mut out = String::new();
    out.push_str(&format!(
        "{:>14}  {:>w$}  {:>w$}\n",
        "predicted:", "Open", "Closed"
    ));
    out.push_str(&format!(
        "{:>14}  {:>w$}  {:>w$}\n",
        "actual Open:", c[0][0], c[0][1]
    ));
    out.push_str(&format!(
        "{:>14}  {:>w$}  {:>w$}\n",
        "actual Closed:", c[1][0], c[1][1]
    ));
    out
}

pub fn render_report_text(report: &EvalReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "spec: {}  (n={}, {} folds, seed {})\n",
        report.spec, report.n, report.folds, report.seed
    ));
    out.push_str(&render_confusion(&report.confusion));
    out.push_str(&format!(
        "accuracy: {:.2}%  mae: {:.4}\n",
        report.accuracy * 100.0,
        report.mae
    ));
    out
}

pub fn render_report_csv(report: &EvalReport) -> String {
    format!(
        "spec,accuracy_pct,mae\n{},{:.4},{:.4}\n",
        report.spec,
        report.accuracy * 100.0,
        report.mae
    )
}

/// The persisted document: schema-versioned, deterministic apart from the
/// timing block.
pub fn report_json(report: &EvalReport) -> serde_json::Value {
    json!({
        "schema": JSON_SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "spec": report.spec,
        "dataset_digest": report.dataset_digest,
        "n": report.n,
        "seed": report.seed,
        "folds": report.folds,
        "accuracy": report.accuracy,
        "mae": report.mae,
        "confusion": report.confusion.counts(),
        "per_fold": report.per_fold.iter().map(|f| json!({
            "accuracy": f.accuracy,
            "mae": f.mae,
            "confusion": f.confusion.counts(),
        })).collect::<Vec<_>>(),
        "timing": {
            "fit_seconds": report.fit_seconds,
            "predict_seconds": report.predict_seconds,
        },
    })
}

pub fn render_table_text(table: &ComparisonTable) -> String {
    let spec_width = table
        .rows
        .iter()
        .map(|r| r.spec.len())
        .max()
        .unwrap_or(4)
        .max("spec".len());
    let mut out = format!("{:<spec_width$}  {:>12}  {:>8}\n", "spec", "accuracy (%)", "MAE");
    for (i, row) in table.rows.iter().enumerate() {
        let marker = if i == table.best { " *" } else { "" };
        out.push_str(&format!(
            "{:<spec_width$}  {:>12.2}  {:>8.4}{marker}\n",
            row.spec, row.accuracy_pct, row.mae
        ));
    }
    out
}

pub fn render_table_csv(table: &ComparisonTable) -> String {
    let mut out = String::from("spec,accuracy_pct,mae\n");
    for row in &table.rows {
        let spec = if row.spec.contains(',') {
            format!("\"{}\"", row.spec)
        } else {
            row.spec.clone()
        };
        out.push_str(&format!("{spec},{:.4},{:.4}\n", row.accuracy_pct, row.mae));
    }
    out
}

pub fn table_json(table: &ComparisonTable, reports: &[EvalReport]) -> serde_json::Value {
    json!({
        "schema": JSON_SCHEMA,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "dataset_digest": table.dataset_digest,
        "best": table.best,
        "rows": table.rows,
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    })
}
