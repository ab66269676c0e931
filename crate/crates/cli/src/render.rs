//! Serializable documents for each subcommand plus their table and CSV
//! renderings. CSV row order is fixed:
//! `lambda, case, theorem_constant, andras_even, andras_odd, winner`.

use crate::output::{csv_document, sig15, sig15_opt, text_table};
use hus_core::{BuiltinExample, CaseLabel, CompareRow, HusReason, HusVerdict, VerifyReport, Winner};
use serde::{Deserialize, Serialize};

pub const ROW_HEADER: [&str; 6] =
    ["lambda", "case", "theorem_constant", "andras_even", "andras_odd", "winner"];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassifyDoc {
    pub lambda: f64,
    pub case: String,
    pub lambda_plus: Option<f64>,
    pub lambda_minus: Option<f64>,
    pub product: f64,
    pub discriminant: f64,
}

impl ClassifyDoc {
    pub fn from_label(lambda: f64, label: &CaseLabel) -> Self {
        ClassifyDoc {
            lambda,
            case: label.tag.to_string(),
            lambda_plus: label.thresholds.lambda_plus,
            lambda_minus: label.thresholds.lambda_minus,
            product: label.thresholds.product,
            discriminant: label.thresholds.discriminant,
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("case: {}\n", self.case);
        out.push_str(&format!("lambda: {}\n", sig15(self.lambda)));
        out.push_str(&format!("product: {}\n", sig15(self.product)));
        out.push_str(&format!("discriminant: {}\n", sig15(self.discriminant)));
        if let (Some(lp), Some(lm)) = (self.lambda_plus, self.lambda_minus) {
            out.push_str(&format!("lambda_plus: {}\n", sig15(lp)));
            out.push_str(&format!("lambda_minus: {}\n", sig15(lm)));
        }
        out
    }

    pub fn csv(&self) -> String {
        csv_document(
            &["lambda", "case", "lambda_plus", "lambda_minus", "product", "discriminant"],
            &[vec![
                sig15(self.lambda),
                self.case.clone(),
                sig15_opt(self.lambda_plus),
                sig15_opt(self.lambda_minus),
                sig15(self.product),
                sig15(self.discriminant),
            ]],
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConstantDoc {
    pub lambda: f64,
    pub case: String,
    pub constant: Option<f64>,
    pub minimal: bool,
    pub reason: String,
}

fn reason_str(reason: HusReason) -> &'static str {
    match reason {
        HusReason::HasConstant => "has_constant",
        HusReason::NoHus => "no_hus",
        HusReason::NotRegressive => "not_regressive",
    }
}

impl ConstantDoc {
    pub fn from_verdict(lambda: f64, verdict: &HusVerdict) -> Self {
        ConstantDoc {
            lambda,
            case: verdict.case.tag.to_string(),
            constant: verdict.constant,
            minimal: verdict.minimal,
            reason: reason_str(verdict.reason).to_string(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("case: {}\n", self.case);
        out.push_str(&format!("lambda: {}\n", sig15(self.lambda)));
        match self.constant {
            Some(c) => out.push_str(&format!("constant: {}\n", sig15(c))),
            None => out.push_str("constant: none\n"),
        }
        out.push_str(&format!("minimal: {}\n", self.minimal));
        out.push_str(&format!("reason: {}\n", self.reason));
        out
    }

    pub fn csv(&self) -> String {
        csv_document(
            &["lambda", "case", "constant", "minimal", "reason"],
            &[vec![
                sig15(self.lambda),
                self.case.clone(),
                sig15_opt(self.constant),
                self.minimal.to_string(),
                self.reason.clone(),
            ]],
        )
    }
}

/// One comparison row in the fixed column order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RowDoc {
    pub lambda: f64,
    pub case: String,
    pub theorem_constant: Option<f64>,
    pub andras_even: Option<f64>,
    pub andras_odd: Option<f64>,
    pub winner: String,
}

impl RowDoc {
    pub fn new(row: &CompareRow) -> Self {
        RowDoc {
            lambda: row.lambda,
            case: row.case.to_string(),
            theorem_constant: row.theorem_constant,
            andras_even: row.andras_even,
            andras_odd: row.andras_odd,
            winner: row.winner.to_string(),
        }
    }

    fn cells(&self) -> Vec<String> {
        vec![
            sig15(self.lambda),
            self.case.clone(),
            sig15_opt(self.theorem_constant),
            sig15_opt(self.andras_even),
            sig15_opt(self.andras_odd),
            self.winner.clone(),
        ]
    }
}

fn rows_table(rows: &[RowDoc]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(RowDoc::cells).collect();
    text_table(&ROW_HEADER, &cells)
}

fn rows_csv(rows: &[RowDoc]) -> String {
    let cells: Vec<Vec<String>> = rows.iter().map(RowDoc::cells).collect();
    csv_document(&ROW_HEADER, &cells)
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompareDoc {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<RowDoc>,
}

impl CompareDoc {
    pub fn table(&self) -> String {
        rows_table(&self.rows)
    }

    pub fn csv(&self) -> String {
        rows_csv(&self.rows)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepDoc {
    pub alpha: f64,
    pub beta: f64,
    pub rows: Vec<RowDoc>,
}

impl SweepDoc {
    pub fn table(&self) -> String {
        rows_table(&self.rows)
    }

    pub fn csv(&self) -> String {
        rows_csv(&self.rows)
    }
}

/// A built-in reference row: computed values next to the published ones.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExampleRowDoc {
    pub alpha: f64,
    pub beta: f64,
    #[serde(flatten)]
    pub row: RowDoc,
    pub expected_theorem: f64,
    pub expected_even: f64,
    pub expected_odd: f64,
    pub expected_winner: String,
    pub delta_theorem: Option<f64>,
    pub delta_even: Option<f64>,
    pub delta_odd: Option<f64>,
}

fn winner_str(w: Winner) -> String {
    w.to_string()
}

impl ExampleRowDoc {
    pub fn new(ex: &BuiltinExample, row: &CompareRow) -> Self {
        let row = RowDoc::new(row);
        ExampleRowDoc {
            alpha: ex.alpha,
            beta: ex.beta,
            delta_theorem: row.theorem_constant.map(|c| c - ex.expected_theorem),
            delta_even: row.andras_even.map(|c| c - ex.expected_even),
            delta_odd: row.andras_odd.map(|c| c - ex.expected_odd),
            row,
            expected_theorem: ex.expected_theorem,
            expected_even: ex.expected_even,
            expected_odd: ex.expected_odd,
            expected_winner: winner_str(ex.expected_winner),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ExamplesDoc {
    pub rows: Vec<ExampleRowDoc>,
}

const EXAMPLE_HEADER: [&str; 15] = [
    "alpha",
    "beta",
    "lambda",
    "case",
    "theorem_constant",
    "andras_even",
    "andras_odd",
    "winner",
    "expected_theorem",
    "expected_even",
    "expected_odd",
    "expected_winner",
    "delta_theorem",
    "delta_even",
    "delta_odd",
];

impl ExamplesDoc {
    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut cells = vec![sig15(r.alpha), sig15(r.beta)];
                cells.extend(r.row.cells());
                cells.push(sig15(r.expected_theorem));
                cells.push(sig15(r.expected_even));
                cells.push(sig15(r.expected_odd));
                cells.push(r.expected_winner.clone());
                cells.push(sig15_opt(r.delta_theorem));
                cells.push(sig15_opt(r.delta_even));
                cells.push(sig15_opt(r.delta_odd));
                cells
            })
            .collect()
    }

    pub fn table(&self) -> String {
        text_table(&EXAMPLE_HEADER, &self.cells())
    }

    pub fn csv(&self) -> String {
        csv_document(&EXAMPLE_HEADER, &self.cells())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifyDoc {
    pub lambda: f64,
    pub n_points: usize,
    pub case: String,
    pub claimed_constant: Option<f64>,
    pub empirical_lower_bound: f64,
    pub margin: f64,
    pub pass: bool,
}

impl VerifyDoc {
    pub fn new(lambda: f64, n_points: usize, report: &VerifyReport) -> Self {
        VerifyDoc {
            lambda,
            n_points,
            case: report.case.to_string(),
            claimed_constant: report.claimed_constant,
            empirical_lower_bound: report.empirical_lower_bound,
            margin: report.margin,
            pass: report.pass,
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("case: {}\n", self.case);
        out.push_str(&format!("lambda: {}\n", sig15(self.lambda)));
        out.push_str(&format!("n_points: {}\n", self.n_points));
        match self.claimed_constant {
            Some(c) => out.push_str(&format!("claimed_constant: {}\n", sig15(c))),
            None => out.push_str("claimed_constant: none\n"),
        }
        out.push_str(&format!(
            "empirical_lower_bound: {}\n",
            sig15(self.empirical_lower_bound)
        ));
        out.push_str(&format!("margin: {}\n", sig15(self.margin)));
        out.push_str(&format!("pass: {}\n", self.pass));
        out
    }

    pub fn csv(&self) -> String {
        csv_document(
            &["lambda", "n_points", "case", "claimed_constant", "empirical_lower_bound", "margin", "pass"],
            &[vec![
                sig15(self.lambda),
                self.n_points.to_string(),
                self.case.clone(),
                sig15_opt(self.claimed_constant),
                sig15(self.empirical_lower_bound),
                sig15(self.margin),
                self.pass.to_string(),
            ]],
        )
    }
}
