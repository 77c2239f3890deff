//! Worked examples with printed reference values and the checker that
//! recomputes them.

use crate::bounds::{evaluate_on_tuple, BoundId, BoundReport};
use crate::error::{Error, Result};
use crate::harness::io::{parse_matrices, NamedMatrices};
use crate::linalg::ComplexMatrix;
use crate::tolerance::ToleranceConfig;

/// Matrix file shipped with the crate; names are `<example-id>/<operand>`.
pub const REGISTRY_JSON: &str = include_str!("../../data/worked_examples.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectationStatus {
    /// Must reproduce the printed value within tolerance.
    Verify,
    /// Printed value is known to be doubtful; recompute and report only.
    RecomputeFlagged,
}

impl ExpectationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ExpectationStatus::Verify => "verify",
            ExpectationStatus::RecomputeFlagged => "recompute-flagged",
        }
    }
}

/// A printed value attached to a computable quantity.
///
/// `quantity` is `<bound-id>.lhs`, `<bound-id>.rhs`, `<bound-id>.slack` or
/// `<bound-id>.<component label>`; single-operand bounds are evaluated on the
/// sum of the example's operands.
#[derive(Debug, Clone, PartialEq)]
pub struct Expectation {
    pub quantity: String,
    pub printed: f64,
    pub tolerance: f64,
    pub status: ExpectationStatus,
}

impl Expectation {
    /// Rounded decimal as printed; tolerance is half a unit in its last place.
    pub fn rounded(quantity: &str, printed: &str) -> Self {
        let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len());
        Self {
            quantity: quantity.to_string(),
            printed: printed.parse().expect("decimal literal"),
            tolerance: 0.5 * 10f64.powi(-(decimals as i32)),
            status: ExpectationStatus::Verify,
        }
    }

    pub fn exact(quantity: &str, value: f64, tolerance: f64) -> Self {
        Self {
            quantity: quantity.to_string(),
            printed: value,
            tolerance,
            status: ExpectationStatus::Verify,
        }
    }

    pub fn flagged(quantity: &str, printed: &str) -> Self {
        Self {
            status: ExpectationStatus::RecomputeFlagged,
            ..Self::rounded(quantity, printed)
        }
    }

    /// Splits the label into the bound and the quantity selector.
    pub fn target(&self) -> Result<(BoundId, &str)> {
        let (id, what) = self
            .quantity
            .split_once('.')
            .ok_or_else(|| Error::InvalidArgument(format!("malformed quantity label `{}`", self.quantity)))?;
        Ok((id.parse()?, what))
    }
}

#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub id: &'static str,
    pub title: &'static str,
    pub operands: Vec<(String, ComplexMatrix)>,
    pub expectations: Vec<Expectation>,
}

pub fn registry_matrices() -> NamedMatrices {
    parse_matrices(REGISTRY_JSON).expect("bundled registry parses")
}

/// All worked examples, operands taken from the bundled matrix file.
pub fn worked_examples() -> Vec<WorkedExample> {
    use Expectation as E;
    let table: Vec<(&'static str, &'static str, Vec<Expectation>)> = vec![
        (
            "rem-2.3",
            "sharp two-term radius bound",
            vec![
                E::exact("B5.lhs", 40.0, 1e-9),
                E::exact("B5.rhs", 40.0, 1e-9),
                E::exact("B5.w(T1*(T1+T2))", 24.0, 1e-9),
                E::exact("B5.w(T2*(T1+T2))", 16.0, 1e-9),
                E::rounded("BASE-TRI.rhs", "59.4117"),
                E::rounded("BASE-2W.rhs", "91.2676"),
            ],
        ),
        (
            "eq-ned-001",
            "real part bound",
            vec![
                E::exact("B6.lhs", 4.0, 1e-9),
                E::rounded("B6.rhs", "5.31843"),
                E::rounded("BASE-EQ11-HI.lhs", "11.3143"),
            ],
        ),
        (
            "eq-ned-01",
            "Cartesian radius bound, sharp case",
            vec![
                E::exact("B7.lhs", 25.0, 1e-8),
                E::exact("B7.rhs", 25.0, 1e-8),
                E::exact("B7.w(Re(T) T)", 15.0, 1e-8),
                E::exact("B7.w(Im(T) T)", 10.0, 1e-8),
            ],
        ),
        (
            "eq-ned-02",
            "off-diagonal block bound",
            vec![
                E::rounded("B8.lhs", "5.15604"),
                E::flagged("B8.rhs", "2.25"),
                E::rounded("BASE-EQ15.rhs", "6.66228"),
            ],
        ),
        (
            "cor-4-sharp",
            "two-term absolute value bound, sharp case",
            vec![
                E::exact("B10.lhs", 16.0, 1e-8),
                E::exact("B10.rhs", 16.0, 1e-8),
                E::rounded("BASE-TRI.rhs", "26.2462"),
            ],
        ),
        (
            "cor-block-two",
            "off-diagonal block bound via absolute values",
            vec![
                E::rounded("B11.lhs", "12.0635"),
                E::rounded("B11.rhs", "13.1313"),
                E::rounded("BASE-EQ15.rhs", "19.2498"),
            ],
        ),
    ];
    let matrices = registry_matrices();
    table
        .into_iter()
        .map(|(id, title, expectations)| {
            let prefix = format!("{id}/");
            let operands = matrices
                .iter()
                .filter_map(|(k, m)| k.strip_prefix(&prefix).map(|short| (short.to_string(), m.clone())))
                .collect();
            WorkedExample {
                id,
                title,
                operands,
                expectations,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Flagged value that the recomputation contradicts.
    Discrepancy,
    /// Flagged value that the recomputation happens to confirm.
    Confirmed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Discrepancy => "discrepancy",
            Verdict::Confirmed => "confirmed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaperCheckRow {
    pub example: String,
    pub quantity: String,
    pub printed: f64,
    pub computed: f64,
    pub delta: f64,
    pub tolerance: f64,
    pub status: ExpectationStatus,
    pub verdict: Verdict,
    /// Whether the recomputed inequality itself holds.
    pub bound_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PaperCheckReport {
    pub rows: Vec<PaperCheckRow>,
}

impl PaperCheckReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail).count()
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &PaperCheckRow> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Discrepancy)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn row(&self, example: &str, quantity: &str) -> Option<&PaperCheckRow> {
        self.rows
            .iter()
            .find(|r| r.example == example && r.quantity == quantity)
    }
}

fn select_quantity(report: &BoundReport, what: &str) -> Result<f64> {
    match what {
        "lhs" => Ok(report.lhs),
        "rhs" => Ok(report.rhs),
        "slack" => Ok(report.slack),
        label => report
            .component(label)
            .ok_or_else(|| Error::InvalidArgument(format!("{} has no component `{label}`", report.bound))),
    }
}

/// Recomputes every expectation of one example.
pub fn check_example(example: &WorkedExample, cfg: &ToleranceConfig) -> Result<Vec<PaperCheckRow>> {
    let operands: Vec<ComplexMatrix> = example.operands.iter().map(|(_, m)| m.clone()).collect();
    let mut cache: Vec<BoundReport> = Vec::new();
    let mut rows = Vec::with_capacity(example.expectations.len());
    for e in &example.expectations {
        let (bound, what) = e.target()?;
        let report = match cache.iter().find(|r| r.bound == bound) {
            Some(r) => r.clone(),
            None => {
                let r = evaluate_on_tuple(bound, &operands, cfg)?;
                cache.push(r.clone());
                r
            }
        };
        let computed = select_quantity(&report, what)?;
        let delta = (computed - e.printed).abs();
        let within = delta <= e.tolerance;
        let verdict = match (e.status, within) {
            (ExpectationStatus::Verify, true) => Verdict::Pass,
            (ExpectationStatus::Verify, false) => Verdict::Fail,
            (ExpectationStatus::RecomputeFlagged, true) => Verdict::Confirmed,
            (ExpectationStatus::RecomputeFlagged, false) => Verdict::Discrepancy,
        };
        rows.push(PaperCheckRow {
            example: example.id.to_string(),
            quantity: e.quantity.clone(),
            printed: e.printed,
            computed,
            delta,
            tolerance: e.tolerance,
            status: e.status,
            verdict,
            bound_holds: report.holds,
        });
    }
    Ok(rows)
}

/// Recomputes every registry expectation.
pub fn run_paper_checks(cfg: &ToleranceConfig) -> Result<PaperCheckReport> {
    let mut rows = Vec::new();
    for ex in worked_examples() {
        rows.extend(check_example(&ex, cfg)?);
    }
    Ok(PaperCheckReport { rows })
}
