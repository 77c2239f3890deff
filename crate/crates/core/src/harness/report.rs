//! CSV and markdown emitters. Both render the same cell strings, so the two
//! formats always carry identical values.

use std::str::FromStr;

use crate::bounds::BoundReport;
use crate::error::Error;
use crate::harness::registry::PaperCheckReport;
use crate::harness::suite::SuiteReport;
use crate::numradius::RadiusEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::InvalidArgument(format!("unknown report format `{other}`"))),
        }
    }
}

/// Ten significant digits; plain decimal notation for moderate magnitudes.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..10).contains(&mag) {
        let decimals = (9 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.9e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn markdown(&self) -> String {
        let cell = |s: &String| s.replace('|', "\\|");
        let mut out = format!("### {}\n\n", self.title);
        let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
        out.push_str(&line(self.headers.iter().map(cell).collect()));
        out.push_str(&line(self.headers.iter().map(|_| "---".to_string()).collect()));
        for r in &self.rows {
            out.push_str(&line(r.iter().map(cell).collect()));
        }
        out
    }
}

/// Renders tables in order; CSV sections are separated by a blank line.
pub fn render(tables: &[Table], format: ReportFormat) -> String {
    let parts: Vec<String> = tables
        .iter()
        .map(|t| match format {
            ReportFormat::Csv => t.csv(),
            ReportFormat::Markdown => t.markdown(),
        })
        .collect();
    parts.join("\n")
}

fn yes_no(b: bool) -> String {
    b.to_string()
}

pub fn bound_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new("Bounds", &["bound_id", "lhs", "rhs", "slack", "holds"]);
    for r in reports {
        t.push(vec![
            r.label(),
            fmt_num(r.lhs),
            fmt_num(r.rhs),
            fmt_num(r.slack),
            yes_no(r.holds),
        ]);
    }
    t
}

pub fn components_table(reports: &[BoundReport]) -> Table {
    let mut t = Table::new("Components", &["bound_id", "component", "value"]);
    for r in reports {
        for (k, v) in &r.components {
            t.push(vec![r.label(), k.clone(), fmt_num(*v)]);
        }
    }
    t
}

pub fn radius_table(name: &str, est: &RadiusEstimate) -> Table {
    let mut t = Table::new(
        "Numerical radius",
        &[
            "matrix",
            "lower",
            "upper",
            "width",
            "theta_star",
            "evaluations",
            "converged",
        ],
    );
    t.push(vec![
        name.into(),
        fmt_num(est.lower),
        fmt_num(est.upper),
        fmt_num(est.width()),
        fmt_num(est.theta_star),
        est.evaluations.to_string(),
        yes_no(est.converged),
    ]);
    t
}

pub fn paper_check_tables(report: &PaperCheckReport) -> Vec<Table> {
    let mut rows = Table::new(
        "Worked examples",
        &[
            "example",
            "quantity",
            "printed",
            "computed",
            "delta",
            "tolerance",
            "status",
            "verdict",
        ],
    );
    for r in &report.rows {
        rows.push(vec![
            r.example.clone(),
            r.quantity.clone(),
            fmt_num(r.printed),
            fmt_num(r.computed),
            fmt_num(r.delta),
            fmt_num(r.tolerance),
            r.status.as_str().into(),
            r.verdict.as_str().into(),
        ]);
    }
    let mut notes = Table::new(
        "Discrepancies",
        &["example", "quantity", "printed", "recomputed", "inequality_holds"],
    );
    for r in report.discrepancies() {
        notes.push(vec![
            r.example.clone(),
            r.quantity.clone(),
            fmt_num(r.printed),
            fmt_num(r.computed),
            yes_no(r.bound_holds),
        ]);
    }
    vec![rows, notes]
}

pub fn suite_tables(report: &SuiteReport) -> Vec<Table> {
    let c = &report.config;
    let mut cfg = Table::new(
        "Configuration",
        &["trials", "dims", "tuple", "seed", "radius_tol", "slack_tol"],
    );
    cfg.push(vec![
        c.trials.to_string(),
        format!("{}-{}", c.dim_range.0, c.dim_range.1),
        format!("{}-{}", c.tuple_range.0, c.tuple_range.1),
        c.seed.to_string(),
        fmt_num(c.tolerances.radius_tol),
        fmt_num(c.tolerances.slack_tol),
    ]);
    let mut summary = Table::new(
        "Soundness",
        &[
            "bound_id",
            "evaluations",
            "violations",
            "errors",
            "near_misses",
            "worst_normalized_slack",
            "worst_trial",
        ],
    );
    for s in &report.summaries {
        summary.push(vec![
            s.bound.to_string(),
            s.evaluations.to_string(),
            s.violations.to_string(),
            s.errors.to_string(),
            s.near_misses.to_string(),
            if s.worst_trial.is_some() {
                fmt_num(s.worst_normalized_slack)
            } else {
                String::new()
            },
            s.worst_trial.map(|t| t.to_string()).unwrap_or_default(),
        ]);
    }
    let mut near = Table::new(
        "Near misses",
        &[
            "bound_id",
            "trial",
            "trial_seed",
            "dim",
            "n",
            "normalized_slack",
            "holds",
        ],
    );
    for m in &report.near_misses {
        near.push(vec![
            m.bound.to_string(),
            m.trial.to_string(),
            m.seed.to_string(),
            m.dim.to_string(),
            m.n.to_string(),
            fmt_num(m.normalized_slack),
            yes_no(m.holds),
        ]);
    }
    let mut tables = vec![cfg, summary, near];
    if !report.errors.is_empty() {
        let mut errs = Table::new("Errors", &["bound_id", "trial", "message"]);
        for e in &report.errors {
            errs.push(vec![e.bound.to_string(), e.trial.to_string(), e.message.clone()]);
        }
        tables.push(errs);
    }
    tables
}

/// Plain-text one-line summary for stderr.
pub fn suite_headline(report: &SuiteReport) -> String {
    format!(
        "{} trials, {} violations, {} errors",
        report.config.trials,
        report.violations(),
        report.error_count()
    )
}
