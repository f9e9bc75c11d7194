use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::schedule::Schedule;
use crate::action::LogicalAction;
use crate::code::{distance_of_group, Distance, StabilizerCode};
use crate::pauli::PauliOperator;
use crate::rewiring::{
    enumerate_branches, extract_logical_action, CommutationTargets, RewiringError, RewiringPair, TableauState,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("schedule references code hash {schedule}, but the given code hashes to {code}")]
    HashMismatch { code: String, schedule: String },
    #[error("expected action acts on {expected} logical qubit(s), code encodes {code}")]
    QubitMismatch { expected: usize, code: usize },
    #[error("{what} acts on {found} qubits, code has {n}")]
    Dimension { what: String, found: usize, n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Replay all eight outcome patterns of every triple.
    pub branches: bool,
    pub check_audit: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            branches: false,
            check_audit: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    IncompleteTriple {
        steps: usize,
    },
    StepStructure {
        step: usize,
        detail: String,
    },
    Simulation {
        step: usize,
        error: RewiringError,
    },
    GroupNotRestored {
        triple: usize,
    },
    FixupNotLogical,
    ActionMismatch {
        expected: LogicalAction,
        found: LogicalAction,
    },
    ClaimMismatch {
        expected: LogicalAction,
        claimed: LogicalAction,
    },
    AuditLength {
        expected: usize,
        found: usize,
    },
    AuditGenerators {
        step: usize,
    },
    AuditCss {
        step: usize,
    },
    AuditDistance {
        step: usize,
        recorded: Distance,
        recomputed: Distance,
    },
    CssInvariant {
        triple: usize,
    },
    BranchDivergence {
        triple: usize,
        outcomes: Vec<bool>,
    },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::IncompleteTriple { steps } => {
                write!(f, "{steps} steps do not split into rewiring triples")
            }
            Discrepancy::StepStructure { step, detail } => write!(f, "step {step}: {detail}"),
            Discrepancy::Simulation { step, error } => write!(f, "step {step}: {error}"),
            Discrepancy::GroupNotRestored { triple } => {
                write!(f, "rewiring {triple} does not restore the stabilizer group")
            }
            Discrepancy::FixupNotLogical => f.write_str("Pauli fix-up does not commute with the stabilizer group"),
            Discrepancy::ActionMismatch { expected, found } => {
                write!(f, "action mismatch: expected {expected}, simulated {found}")
            }
            Discrepancy::ClaimMismatch { expected, claimed } => {
                write!(f, "claimed action {claimed} differs from expected {expected}")
            }
            Discrepancy::AuditLength { expected, found } => {
                write!(f, "audit has {found} entries for {expected} steps")
            }
            Discrepancy::AuditGenerators { step } => write!(f, "step {step}: audit generator set differs"),
            Discrepancy::AuditCss { step } => write!(f, "step {step}: audit CSS flag differs"),
            Discrepancy::AuditDistance {
                step,
                recorded,
                recomputed,
            } => {
                write!(f, "step {step}: audit distance {recorded}, recomputed {recomputed}")
            }
            Discrepancy::CssInvariant { triple } => {
                write!(f, "rewiring {triple} on a CSS code measures only CSS-type observables")
            }
            Discrepancy::BranchDivergence { triple, outcomes } => {
                let signs: String = outcomes.iter().map(|&m| if m { '-' } else { '+' }).collect();
                write!(f, "rewiring {triple}: outcome branch {signs} diverges")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Re-simulated action, when simulation got through every step.
    pub action: Option<LogicalAction>,
    pub discrepancies: Vec<Discrepancy>,
    pub branches_checked: usize,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn same_up_to_sign(a: &PauliOperator, b: &PauliOperator) -> bool {
    a.unsigned() == b.unsigned()
}

fn check_dimensions(code: &StabilizerCode, schedule: &Schedule) -> Result<(), VerifyError> {
    let n = code.n;
    let mut ops: Vec<(String, &PauliOperator)> = Vec::new();
    for (i, step) in schedule.steps.iter().enumerate() {
        ops.push((alloc::format!("step {i} measurement"), &step.measure));
        ops.push((alloc::format!("step {i} correction"), &step.correct_on_minus));
    }
    ops.push(("Pauli fix-up".to_string(), &schedule.pauli_fixup));
    for (i, audit) in schedule.audit.iter().enumerate() {
        for g in &audit.generators {
            ops.push((alloc::format!("step {i} audit generator"), g));
        }
    }
    for (what, op) in ops {
        if op.num_qubits() != n {
            return Err(VerifyError::Dimension {
                what,
                found: op.num_qubits(),
                n,
            });
        }
    }
    Ok(())
}

/// Re-simulates `schedule` on `code` and compares the result with
/// `expected`, the stored claim, the audit and the CSS-breaking invariant.
pub fn verify_schedule(
    code: &StabilizerCode,
    schedule: &Schedule,
    expected: &LogicalAction,
    options: &VerifyOptions,
) -> Result<Verdict, VerifyError> {
    let hash = code.content_hash();
    if hash != schedule.code_hash {
        return Err(VerifyError::HashMismatch {
            code: hash,
            schedule: schedule.code_hash.clone(),
        });
    }
    if expected.k() != code.k() {
        return Err(VerifyError::QubitMismatch {
            expected: expected.k(),
            code: code.k(),
        });
    }
    check_dimensions(code, schedule)?;

    let mut found = Vec::new();
    let mut branches_checked = 0;
    let origin = TableauState::from_code(code);
    let group = origin.group();
    let mut state = origin.clone();
    let mut generator_history: Vec<Vec<PauliOperator>> = Vec::new();
    let mut simulated = true;

    if !schedule.steps.len().is_multiple_of(3) {
        found.push(Discrepancy::IncompleteTriple {
            steps: schedule.steps.len(),
        });
    }
    'triples: for (t, triple) in schedule.triples().enumerate() {
        let base = 3 * t;
        let (s1, s2, s3) = (&triple[0], &triple[1], &triple[2]);
        let links = [
            (
                base,
                &s1.correct_on_minus,
                &s3.measure,
                "correction must be the replaced generator",
            ),
            (
                base + 1,
                &s2.correct_on_minus,
                &s1.measure,
                "correction must be the first observable",
            ),
            (
                base + 2,
                &s3.correct_on_minus,
                &s2.measure,
                "correction must be the second observable",
            ),
        ];
        for (step, correction, partner, detail) in links {
            if !same_up_to_sign(correction, partner) {
                found.push(Discrepancy::StepStructure {
                    step,
                    detail: detail.to_string(),
                });
            }
        }
        match state.generators.iter().position(|g| *g == s3.measure) {
            None => found.push(Discrepancy::StepStructure {
                step: base + 2,
                detail: "final measurement is not a current generator".to_string(),
            }),
            Some(m) => {
                // Pair conditions refer to the code's own logical representatives;
                // tracked logicals can pick up factors of g_m.
                let targets = CommutationTargets(
                    origin
                        .logicals
                        .iter()
                        .map(|l| (s2.measure.anticommutes(&l.x), s2.measure.anticommutes(&l.z)))
                        .collect(),
                );
                let pair = RewiringPair {
                    m,
                    g: s1.measure.clone(),
                    g_prime: s2.measure.clone(),
                    targets,
                };
                if let Err(error) = pair.check(&state.generators, &origin.logicals) {
                    let step = match error {
                        RewiringError::PairCondition { condition, .. } if condition >= 3 => base + 1,
                        _ => base,
                    };
                    found.push(Discrepancy::StepStructure {
                        step,
                        detail: error.to_string(),
                    });
                } else if options.branches {
                    match enumerate_branches(&state, triple) {
                        Ok(report) => {
                            branches_checked += report.branches.len();
                            if let Some(bad) = report.first_divergent() {
                                found.push(Discrepancy::BranchDivergence {
                                    triple: t,
                                    outcomes: bad.outcomes.clone(),
                                });
                            }
                        }
                        Err(error) => found.push(Discrepancy::Simulation { step: base, error }),
                    }
                }
            }
        }
        if code.is_css() && triple.iter().all(|s| s.measure.is_css_type()) {
            found.push(Discrepancy::CssInvariant { triple: t });
        }
        for (i, step) in triple.iter().enumerate() {
            match state.measure_and_correct(&step.measure, &step.correct_on_minus) {
                Ok(next) => {
                    state = next;
                    generator_history.push(state.generators.clone());
                }
                Err(error) => {
                    found.push(Discrepancy::Simulation { step: base + i, error });
                    simulated = false;
                    break 'triples;
                }
            }
        }
        if state.group() != group {
            found.push(Discrepancy::GroupNotRestored { triple: t });
            simulated = false;
            break;
        }
    }

    let mut action = None;
    if simulated && schedule.steps.len().is_multiple_of(3) {
        state.apply_pauli(&schedule.pauli_fixup);
        if state.group() != group {
            found.push(Discrepancy::FixupNotLogical);
        } else {
            match extract_logical_action(&code.logicals, &state.logicals, &group) {
                Ok(a) => {
                    if a != *expected {
                        found.push(Discrepancy::ActionMismatch {
                            expected: expected.clone(),
                            found: a.clone(),
                        });
                    }
                    action = Some(a);
                }
                Err(error) => found.push(Discrepancy::Simulation {
                    step: schedule.steps.len(),
                    error,
                }),
            }
        }
    }
    if schedule.claimed_action != *expected {
        found.push(Discrepancy::ClaimMismatch {
            expected: expected.clone(),
            claimed: schedule.claimed_action.clone(),
        });
    }

    if options.check_audit {
        if schedule.audit.len() != schedule.steps.len() {
            found.push(Discrepancy::AuditLength {
                expected: schedule.steps.len(),
                found: schedule.audit.len(),
            });
        } else {
            for (step, audit) in schedule.audit.iter().enumerate() {
                if generator_history.get(step).is_some_and(|g| *g != audit.generators) {
                    found.push(Discrepancy::AuditGenerators { step });
                }
                if audit.css != audit.generators.iter().all(PauliOperator::is_css_type) {
                    found.push(Discrepancy::AuditCss { step });
                }
                let recomputed = distance_of_group(code.n, &audit.generators, &[], audit.search_weight());
                if recomputed != audit.distance {
                    found.push(Discrepancy::AuditDistance {
                        step,
                        recorded: audit.distance,
                        recomputed,
                    });
                }
            }
        }
    }

    Ok(Verdict {
        action,
        discrepancies: found,
        branches_checked,
    })
}
