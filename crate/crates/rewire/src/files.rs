//! JSON code files and schedule files.

use rewire_core::bits::BitVec;
use rewire_core::code::ValidationReport;
use rewire_core::compiler::StepAudit;
use rewire_core::{
    Code, Distance, GF2Matrix, LogicalAction, LogicalPair, MeasureStep, PauliOperator, Schedule, StabilizerCode,
    SubsystemCode,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed JSON: {0}")]
    Syntax(serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{field}[{index}]: {error}")]
    Pauli {
        field: &'static str,
        index: usize,
        error: rewire_core::PauliError,
    },
    #[error("invalid code: {0}")]
    Invalid(ValidationReport),
}

impl From<serde_json::Error> for FileError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            FileError::Schema(e.to_string())
        } else {
            FileError::Syntax(e)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDocument {
    pub name: String,
    pub n: usize,
    pub stabilizers: Vec<String>,
    pub logical_x: Vec<String>,
    pub logical_z: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge_x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge_z: Option<Vec<String>>,
    /// Indices of stabilizers that came from gauge fixing.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gauge_fixed: Vec<usize>,
}

fn parse_list(field: &'static str, items: &[String]) -> Result<Vec<PauliOperator>, FileError> {
    items
        .iter()
        .enumerate()
        .map(|(index, s)| s.parse().map_err(|error| FileError::Pauli { field, index, error }))
        .collect()
}

fn pairs(
    x_field: &'static str,
    xs: &[String],
    z_field: &'static str,
    zs: &[String],
) -> Result<Vec<LogicalPair>, FileError> {
    if xs.len() != zs.len() {
        return Err(FileError::Schema(format!(
            "{x_field} has {} entries but {z_field} has {}",
            xs.len(),
            zs.len()
        )));
    }
    let xs = parse_list(x_field, xs)?;
    let zs = parse_list(z_field, zs)?;
    Ok(xs.into_iter().zip(zs).map(|(x, z)| LogicalPair::new(x, z)).collect())
}

fn render(ops: &[PauliOperator]) -> Vec<String> {
    ops.iter().map(ToString::to_string).collect()
}

impl CodeDocument {
    /// Builds the code without validating it.
    pub fn to_code(&self) -> Result<Code, FileError> {
        let generators = parse_list("stabilizers", &self.stabilizers)?;
        let logicals = pairs("logical_x", &self.logical_x, "logical_z", &self.logical_z)?;
        let mut base = StabilizerCode::new(self.name.clone(), self.n, generators, logicals);
        base.gauge_fixed = self.gauge_fixed.clone();
        match (&self.gauge_x, &self.gauge_z) {
            (None, None) => Ok(Code::Stabilizer(base)),
            (Some(gx), Some(gz)) => Ok(Code::Subsystem(SubsystemCode {
                base,
                gauge_pairs: pairs("gauge_x", gx, "gauge_z", gz)?,
            })),
            _ => Err(FileError::Schema("gauge_x and gauge_z must appear together".into())),
        }
    }

    pub fn from_code(code: &Code) -> Self {
        let base = code.base();
        let (gauge_x, gauge_z) = match code {
            Code::Stabilizer(_) => (None, None),
            Code::Subsystem(s) => (
                Some(s.gauge_pairs.iter().map(|p| p.x.to_string()).collect()),
                Some(s.gauge_pairs.iter().map(|p| p.z.to_string()).collect()),
            ),
        };
        Self {
            name: base.name.clone(),
            n: base.n,
            stabilizers: render(&base.generators),
            logical_x: base.logicals.iter().map(|l| l.x.to_string()).collect(),
            logical_z: base.logicals.iter().map(|l| l.z.to_string()).collect(),
            gauge_x,
            gauge_z,
            gauge_fixed: base.gauge_fixed.clone(),
        }
    }
}

/// Parses a code file without validating it.
pub fn parse_code(text: &str) -> Result<Code, FileError> {
    serde_json::from_str::<CodeDocument>(text)?.to_code()
}

/// Parses and validates a code file.
pub fn load_code(text: &str) -> Result<Code, FileError> {
    let code = parse_code(text)?;
    let report = code.validate();
    if !report.is_valid() {
        return Err(FileError::Invalid(report));
    }
    Ok(code)
}

pub fn save_code(code: &Code) -> String {
    let mut text = serde_json::to_string_pretty(&CodeDocument::from_code(code)).expect("plain data");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeRef {
    pub name: String,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDocument {
    pub measure: String,
    pub correct_on_minus: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceDocument {
    Exact(usize),
    AtLeast(usize),
}

impl From<Distance> for DistanceDocument {
    fn from(d: Distance) -> Self {
        match d {
            Distance::Exact(v) => DistanceDocument::Exact(v),
            Distance::AtLeast(v) => DistanceDocument::AtLeast(v),
        }
    }
}

impl From<DistanceDocument> for Distance {
    fn from(d: DistanceDocument) -> Self {
        match d {
            DistanceDocument::Exact(v) => Distance::Exact(v),
            DistanceDocument::AtLeast(v) => Distance::AtLeast(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditDocument {
    pub generators: Vec<String>,
    pub distance: DistanceDocument,
    pub css: bool,
}

/// Symplectic matrix in the interleaved `(x_1, z_1, …)` layout, one string of
/// `0`/`1` per row, and one sign bit per image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDocument {
    pub symplectic: Vec<String>,
    pub signs: Vec<bool>,
}

impl ActionDocument {
    pub fn from_action(action: &LogicalAction) -> Self {
        let m = action.symplectic();
        Self {
            symplectic: m
                .rows()
                .iter()
                .map(|row| (0..row.len()).map(|i| if row.get(i) { '1' } else { '0' }).collect())
                .collect(),
            signs: action.signs(),
        }
    }

    pub fn to_action(&self) -> Result<LogicalAction, FileError> {
        let size = self.symplectic.len();
        let rows = self
            .symplectic
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(FileError::Schema(format!("symplectic entry {other:?} is not 0 or 1"))),
                    })
                    .collect::<Result<Vec<bool>, _>>()
                    .and_then(|bits| {
                        if bits.len() == size {
                            Ok(BitVec::from_bools(bits))
                        } else {
                            Err(FileError::Schema("symplectic matrix is not square".into()))
                        }
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = GF2Matrix::from_rows(size, rows).map_err(|e| FileError::Schema(e.to_string()))?;
        LogicalAction::from_symplectic(&matrix, &self.signs)
            .map_err(|e| FileError::Schema(format!("claimed_action: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDocument {
    pub code: CodeRef,
    pub steps: Vec<StepDocument>,
    pub pauli_fixup: String,
    pub claimed_action: ActionDocument,
    pub audit: Vec<AuditDocument>,
}

impl ScheduleDocument {
    pub fn from_schedule(s: &Schedule) -> Self {
        Self {
            code: CodeRef {
                name: s.code_name.clone(),
                hash: s.code_hash.clone(),
            },
            steps: s
                .steps
                .iter()
                .map(|step| StepDocument {
                    measure: step.measure.to_string(),
                    correct_on_minus: step.correct_on_minus.to_string(),
                })
                .collect(),
            pauli_fixup: s.pauli_fixup.to_string(),
            claimed_action: ActionDocument::from_action(&s.claimed_action),
            audit: s
                .audit
                .iter()
                .map(|a| AuditDocument {
                    generators: render(&a.generators),
                    distance: a.distance.into(),
                    css: a.css,
                })
                .collect(),
        }
    }

    pub fn to_schedule(&self) -> Result<Schedule, FileError> {
        let parse = |field: &'static str, index: usize, text: &str| -> Result<PauliOperator, FileError> {
            text.parse().map_err(|error| FileError::Pauli { field, index, error })
        };
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                Ok(MeasureStep {
                    measure: parse("steps.measure", i, &s.measure)?,
                    correct_on_minus: parse("steps.correct_on_minus", i, &s.correct_on_minus)?,
                })
            })
            .collect::<Result<Vec<_>, FileError>>()?;
        let audit = self
            .audit
            .iter()
            .map(|a| {
                Ok(StepAudit {
                    generators: parse_list("audit.generators", &a.generators)?,
                    distance: a.distance.into(),
                    css: a.css,
                })
            })
            .collect::<Result<Vec<_>, FileError>>()?;
        Ok(Schedule {
            code_name: self.code.name.clone(),
            code_hash: self.code.hash.clone(),
            steps,
            pauli_fixup: parse("pauli_fixup", 0, &self.pauli_fixup)?,
            claimed_action: self.claimed_action.to_action()?,
            audit,
        })
    }
}

pub fn parse_schedule(text: &str) -> Result<Schedule, FileError> {
    serde_json::from_str::<ScheduleDocument>(text)?.to_schedule()
}

pub fn save_schedule(schedule: &Schedule) -> String {
    let mut text = serde_json::to_string_pretty(&ScheduleDocument::from_schedule(schedule)).expect("plain data");
    text.push('\n');
    text
}
