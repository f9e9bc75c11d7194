use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::action::{LogicalAction, SqrtAxis, SqrtVariant};
use crate::pauli::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("`{gate}` takes {expected} qubit index(es), found {found}")]
    Arity {
        gate: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` is not a qubit index")]
    BadIndex(String),
    #[error("qubit index {index} out of range for {k} logical qubit(s)")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("CNOT control and target are both qubit {0}")]
    SelfTarget(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    SX(usize),
    SXdg(usize),
    SY(usize),
    SYdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "Sdg",
            Gate::SX(_) => "SX",
            Gate::SXdg(_) => "SXdg",
            Gate::SY(_) => "SY",
            Gate::SYdg(_) => "SYdg",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Cnot(..) => "CNOT",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot(c, t) => alloc::vec![c, t],
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::SX(q)
            | Gate::SXdg(q)
            | Gate::SY(q)
            | Gate::SYdg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q) => alloc::vec![q],
        }
    }

    /// The exact logical action of the gate on `k` qubits.
    pub fn action(&self, k: usize) -> LogicalAction {
        use Letter::*;
        use SqrtVariant::{Root, TimesPauli};
        match *self {
            Gate::H(q) => LogicalAction::single_qubit(k, q, (Z, false), (X, false)),
            Gate::S(q) => LogicalAction::sqrt(k, q, SqrtAxis::Z, Root),
            Gate::Sdg(q) => LogicalAction::sqrt(k, q, SqrtAxis::Z, TimesPauli),
            Gate::SX(q) => LogicalAction::sqrt(k, q, SqrtAxis::X, Root),
            Gate::SXdg(q) => LogicalAction::sqrt(k, q, SqrtAxis::X, TimesPauli),
            Gate::SY(q) => LogicalAction::sqrt(k, q, SqrtAxis::Y, Root),
            Gate::SYdg(q) => LogicalAction::sqrt(k, q, SqrtAxis::Y, TimesPauli),
            Gate::X(q) => LogicalAction::single_qubit(k, q, (X, false), (Z, true)),
            Gate::Y(q) => LogicalAction::single_qubit(k, q, (X, true), (Z, true)),
            Gate::Z(q) => LogicalAction::single_qubit(k, q, (X, true), (Z, false)),
            Gate::Cnot(c, t) => LogicalAction::cnot(k, c, t),
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::SX(q) => Gate::SXdg(q),
            Gate::SXdg(q) => Gate::SX(q),
            Gate::SY(q) => Gate::SYdg(q),
            Gate::SYdg(q) => Gate::SY(q),
            other => other,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cnot(c, t) => write!(f, "CNOT {c} {t}"),
            _ => write!(f, "{} {}", self.name(), self.qubits()[0]),
        }
    }
}

/// A validated gate list on `k` logical qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GateProgram {
    pub k: usize,
    pub gates: Vec<Gate>,
}

impl GateProgram {
    pub fn new(k: usize, gates: Vec<Gate>) -> Result<Self, ProgramError> {
        for gate in &gates {
            for q in gate.qubits() {
                if q >= k {
                    return Err(ProgramError::IndexOutOfRange { index: q, k });
                }
            }
            if let Gate::Cnot(c, t) = *gate {
                if c == t {
                    return Err(ProgramError::SelfTarget(c));
                }
            }
        }
        Ok(Self { k, gates })
    }

    /// Gates applied left to right.
    pub fn action(&self) -> LogicalAction {
        self.gates
            .iter()
            .fold(LogicalAction::identity(self.k), |acc, g| acc.then(&g.action(self.k)))
    }
}

impl fmt::Display for GateProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn parse_gate(stmt: &str) -> Result<Gate, ProgramError> {
    let mut tokens = stmt.split_whitespace();
    let name = tokens.next().expect("caller skips blank statements");
    let indices = tokens
        .map(|t| usize::from_str(t).map_err(|_| ProgramError::BadIndex(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let one: fn(usize) -> Gate = match name.to_ascii_uppercase().as_str() {
        "CNOT" | "CX" => {
            return match indices[..] {
                [c, t] => Ok(Gate::Cnot(c, t)),
                _ => Err(ProgramError::Arity {
                    gate: name.to_string(),
                    expected: 2,
                    found: indices.len(),
                }),
            }
        }
        "H" => Gate::H,
        "S" => Gate::S,
        "SDG" => Gate::Sdg,
        "SX" => Gate::SX,
        "SXDG" => Gate::SXdg,
        "SY" => Gate::SY,
        "SYDG" => Gate::SYdg,
        "X" => Gate::X,
        "Y" => Gate::Y,
        "Z" => Gate::Z,
        _ => return Err(ProgramError::UnknownGate(name.to_string())),
    };
    match indices[..] {
        [q] => Ok(one(q)),
        _ => Err(ProgramError::Arity {
            gate: name.to_string(),
            expected: 1,
            found: indices.len(),
        }),
    }
}

/// Parses `GATE idx (idx)?` statements separated by `;` or newlines.
pub fn parse_program(text: &str, k: usize) -> Result<GateProgram, ProgramError> {
    let gates = text
        .split([';', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_gate)
        .collect::<Result<Vec<_>, _>>()?;
    GateProgram::new(k, gates)
}
