//! Linear least-squares fits of element properties over a basis of
//! quantum-number functions.
//!
//! A property `P(Z)` is modelled as `sum_k c_k f_k(q(Z))`, where `q(Z)` is the
//! quartet of element `Z` and the `f_k` form an [`IntegrityBasis`]. The fit
//! runs over a period (fixed `n`), a family (fixed column) or an explicit set
//! of elements, and the resulting model predicts elements without data.

mod basis;
mod solver;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use basis::{default_basis, BasisFunction, IntegrityBasis, DEFAULT_BASIS};

use crate::quartet::{quartet_of, Quartet};
use crate::registry::PropertyDataset;
use crate::table::ColumnId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("scope {0} selects no element with data")]
    EmptyScope(String),

    #[error("underdetermined fit: {rows} data rows for {columns} basis columns (enable rank-deficient mode to fit anyway)")]
    Underdetermined { rows: usize, columns: usize },

    #[error("singular design matrix: {}", format_dependencies(.0))]
    Conditioning(Vec<ColumnDependency>),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid fit option: {0}")]
    InvalidOption(String),

    #[error("atomic number must be at least 1")]
    InvalidZ,
}

/// A basis column that is a linear combination of earlier ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnDependency {
    pub column: String,
    pub depends_on: Vec<String>,
}

fn format_dependencies(deps: &[ColumnDependency]) -> String {
    deps.iter()
        .map(|d| {
            if d.depends_on.is_empty() {
                format!("column {:?} is identically zero on the scope", d.column)
            } else {
                format!("column {:?} is a combination of {:?}", d.column, d.depends_on)
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Which elements enter a fit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FitScope {
    /// A row of the table.
    Period { n: u32 },
    /// A column of the table.
    Family { column: ColumnId },
    /// An explicit list of atomic numbers.
    Set { zs: Vec<u64> },
}

impl FitScope {
    pub fn contains(&self, z: u64, q: &Quartet) -> bool {
        match self {
            FitScope::Period { n } => q.n() == *n,
            FitScope::Family { column } => column.contains(q),
            FitScope::Set { zs } => zs.contains(&z),
        }
    }
}

impl fmt::Display for FitScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitScope::Period { n } => write!(f, "period n={n}"),
            FitScope::Family { column } => write!(f, "family ({column})"),
            FitScope::Set { zs } => {
                let zs: Vec<String> = zs.iter().map(u64::to_string).collect();
                write!(f, "set {{{}}}", zs.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Fit even when columns are dependent or outnumber the rows; dependent
    /// columns are dropped (coefficient 0).
    pub allow_rank_deficient: bool,
    /// Ridge parameter λ ≥ 0 added as `λ |c|²` to the objective.
    pub ridge: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { allow_rank_deficient: false, ridge: 0.0 }
    }
}

/// Row-major design matrix with its targets, rows in ascending Z.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    pub rows: Vec<Vec<f64>>,
    pub target: Vec<f64>,
    pub zs: Vec<u64>,
}

impl DesignMatrix {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

pub fn design_matrix(
    scope: &FitScope,
    basis: &IntegrityBasis,
    data: &PropertyDataset,
) -> Result<DesignMatrix, FitError> {
    let mut m = DesignMatrix { rows: Vec::new(), target: Vec::new(), zs: Vec::new() };
    for (&z, &value) in &data.values {
        let q = quartet_of(z).map_err(|_| FitError::InvalidZ)?;
        if scope.contains(z, &q) {
            m.rows.push(basis.evaluate(&q));
            m.target.push(value);
            m.zs.push(z);
        }
    }
    if m.rows.is_empty() {
        return Err(FitError::EmptyScope(scope.to_string()));
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub rss: f64,
    pub max_abs_residual: f64,
    /// Data rows minus fitted (non-dropped) columns.
    pub dof: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElementResidual {
    pub z: u64,
    pub observed: f64,
    pub fitted: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitModel {
    pub property: String,
    pub unit: String,
    pub basis: IntegrityBasis,
    pub coefficients: Vec<f64>,
    pub scope: FitScope,
    pub diagnostics: Diagnostics,
    pub residuals: Vec<ElementResidual>,
    /// Columns dropped in rank-deficient mode.
    pub dropped: Vec<String>,
    pub ridge: f64,
}

pub fn fit(scope: &FitScope, basis: &IntegrityBasis, data: &PropertyDataset) -> Result<FitModel, FitError> {
    fit_with(scope, basis, data, &FitOptions::default())
}

pub fn fit_with(
    scope: &FitScope,
    basis: &IntegrityBasis,
    data: &PropertyDataset,
    options: &FitOptions,
) -> Result<FitModel, FitError> {
    if !(options.ridge >= 0.0 && options.ridge.is_finite()) {
        return Err(FitError::InvalidOption(format!("ridge must be finite and non-negative, got {}", options.ridge)));
    }
    let design = design_matrix(scope, basis, data)?;
    let (rows, k) = (design.rows.len(), basis.len());
    let ridge = options.ridge > 0.0;
    if rows < k && !ridge && !options.allow_rank_deficient {
        return Err(FitError::Underdetermined { rows, columns: k });
    }

    let mut columns: Vec<Vec<f64>> = (0..k).map(|c| design.column(c)).collect();
    let mut target = design.target.clone();
    if ridge {
        // Tikhonov rows: sqrt(λ) e_c appended under the data.
        let s = options.ridge.sqrt();
        for (c, col) in columns.iter_mut().enumerate() {
            col.extend((0..k).map(|r| if r == c { s } else { 0.0 }));
        }
        target.extend(std::iter::repeat_n(0.0, k));
    }

    let solution = solver::least_squares(&columns, &target);
    let names = basis.names();
    if !solution.dependent.is_empty() && !options.allow_rank_deficient {
        let deps = solution
            .dependent
            .iter()
            .map(|d| ColumnDependency {
                column: names[d.column].clone(),
                depends_on: d.on.iter().map(|&c| names[c].clone()).collect(),
            })
            .collect();
        return Err(FitError::Conditioning(deps));
    }
    let dropped: Vec<String> = solution.dependent.iter().map(|d| names[d.column].clone()).collect();

    let coefficients = solution.coefficients;
    let residuals: Vec<ElementResidual> = design
        .rows
        .iter()
        .zip(&design.target)
        .zip(&design.zs)
        .map(|((row, &observed), &z)| {
            let fitted = dot(row, &coefficients);
            ElementResidual { z, observed, fitted, residual: observed - fitted }
        })
        .collect();
    let rss = residuals.iter().map(|r| r.residual * r.residual).sum();
    let max_abs_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.residual.abs()));
    let dof = rows as i64 - (k - dropped.len()) as i64;

    Ok(FitModel {
        property: data.property_name.clone(),
        unit: data.unit.clone(),
        basis: basis.clone(),
        coefficients,
        scope: scope.clone(),
        diagnostics: Diagnostics { rss, max_abs_residual, dof },
        residuals,
        dropped,
        ridge: options.ridge,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl FitModel {
    pub fn predict_quartet(&self, q: &Quartet) -> f64 {
        dot(&self.basis.evaluate(q), &self.coefficients)
    }

    /// Model value at element `z`, whatever its observation status.
    pub fn predict(&self, z: u64) -> Result<f64, FitError> {
        let q = quartet_of(z).map_err(|_| FitError::InvalidZ)?;
        Ok(self.predict_quartet(&q))
    }

    pub fn to_report(&self) -> FitReport {
        FitReport {
            property: self.property.clone(),
            unit: self.unit.clone(),
            scope: self.scope.clone(),
            basis: self.basis.names(),
            coefficients: self.coefficients.clone(),
            rss: self.diagnostics.rss,
            max_abs_residual: self.diagnostics.max_abs_residual,
            dof: self.diagnostics.dof,
            ridge: self.ridge,
            dropped: self.dropped.clone(),
            residuals: self.residuals.clone(),
        }
    }

    /// Rebuilds a model from its serialized report. Custom basis functions
    /// cannot be restored.
    pub fn from_report(report: FitReport) -> Result<Self, FitError> {
        let basis = IntegrityBasis::parse(&report.basis)?;
        if report.coefficients.len() != basis.len() {
            return Err(FitError::InvalidBasis(format!(
                "{} coefficients for {} basis functions",
                report.coefficients.len(),
                basis.len()
            )));
        }
        Ok(FitModel {
            property: report.property,
            unit: report.unit,
            basis,
            coefficients: report.coefficients,
            scope: report.scope,
            diagnostics: Diagnostics { rss: report.rss, max_abs_residual: report.max_abs_residual, dof: report.dof },
            residuals: report.residuals,
            dropped: report.dropped,
            ridge: report.ridge,
        })
    }
}

impl FitModel {
    /// Reads a model saved with [`FitModel::write_json`].
    pub fn read_json<R: std::io::Read>(reader: R) -> crate::Result<Self> {
        let report: FitReport = serde_json::from_reader(reader)?;
        Ok(FitModel::from_report(report)?)
    }

    pub fn write_json<W: std::io::Write>(&self, writer: W) -> crate::Result<()> {
        serde_json::to_writer_pretty(writer, &self.to_report())?;
        Ok(())
    }
}

/// JSON form of a fitted model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub property: String,
    pub unit: String,
    pub scope: FitScope,
    pub basis: Vec<String>,
    pub coefficients: Vec<f64>,
    pub rss: f64,
    pub max_abs_residual: f64,
    pub dof: i64,
    #[serde(default)]
    pub ridge: f64,
    #[serde(default)]
    pub dropped: Vec<String>,
    pub residuals: Vec<ElementResidual>,
}
