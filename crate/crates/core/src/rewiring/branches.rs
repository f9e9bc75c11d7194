//! Outcome-by-outcome replay of measure-and-correct sequences.
//!
//! Unlike [`TableauState::measure_and_correct`], the measurement here is the
//! general stabilizer rule (first anticommuting generator is the pivot) and
//! corrections are applied as physical Paulis, so nothing is assumed about
//! which outcome occurred.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{extract_logical_action, MeasureStep, RewiringError, RewiringPair, TableauState};
use crate::action::LogicalAction;
use crate::code::LogicalPair;
use crate::group::StabilizerGroup;
use crate::pauli::PauliOperator;

impl TableauState {
    /// Measures `obs`; `minus` selects the `-1` outcome. Returns the pivot.
    pub fn measure(&mut self, obs: &PauliOperator, minus: bool) -> Result<usize, RewiringError> {
        let pivot = self
            .generators
            .iter()
            .position(|g| g.anticommutes(obs))
            .ok_or_else(|| RewiringError::DeterministicOutcome(obs.to_string()))?;
        let pivot_op = self.generators[pivot].clone();
        for (j, g) in self.generators.iter_mut().enumerate() {
            if j != pivot && g.anticommutes(obs) {
                *g = &pivot_op * g;
            }
        }
        for l in &mut self.logicals {
            for h in [&mut l.x, &mut l.z] {
                if h.anticommutes(obs) {
                    *h = &pivot_op * h;
                }
            }
        }
        self.generators[pivot] = if minus { obs.negated() } else { obs.clone() };
        Ok(pivot)
    }

    /// Conjugates the state by the Pauli `p`.
    pub fn apply_pauli(&mut self, p: &PauliOperator) {
        let flip = |h: &mut PauliOperator| {
            if h.anticommutes(p) {
                *h = h.negated();
            }
        };
        self.generators.iter_mut().for_each(flip);
        for LogicalPair { x, z } in &mut self.logicals {
            flip(x);
            flip(z);
        }
    }
}

/// Replays `steps` with the given outcomes (`true` = `-1`), applying each
/// step's correction on `-1`.
pub fn run_branch(
    state: &TableauState,
    steps: &[MeasureStep],
    outcomes: &[bool],
) -> Result<TableauState, RewiringError> {
    assert_eq!(steps.len(), outcomes.len(), "one outcome per step");
    let mut s = state.clone();
    for (step, &minus) in steps.iter().zip(outcomes) {
        s.measure(&step.measure, minus)?;
        if minus {
            s.apply_pauli(&step.correct_on_minus);
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchOutcome {
    /// `true` marks a `-1` outcome.
    pub outcomes: Vec<bool>,
    pub group_restored: bool,
    pub action: Option<LogicalAction>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    /// The all-`+1` branch.
    pub reference: LogicalAction,
    pub branches: Vec<BranchOutcome>,
}

impl BranchReport {
    pub fn all_agree(&self) -> bool {
        self.first_divergent().is_none()
    }

    pub fn first_divergent(&self) -> Option<&BranchOutcome> {
        self.branches
            .iter()
            .find(|b| !b.group_restored || b.action.as_ref() != Some(&self.reference))
    }
}

/// Runs all `2^len` outcome patterns of `steps` from `state`. Each branch
/// must return to `state`'s stabilizer group with the same logical action
/// as the all-`+1` branch.
pub fn enumerate_branches(state: &TableauState, steps: &[MeasureStep]) -> Result<BranchReport, RewiringError> {
    assert!(steps.len() < 32, "too many steps to enumerate");
    let group = state.group();
    let evaluate = |outcomes: Vec<bool>| -> Result<BranchOutcome, RewiringError> {
        let fin = run_branch(state, steps, &outcomes)?;
        let group_restored = StabilizerGroup::new(state.n, &fin.generators) == group;
        let action = if group_restored {
            extract_logical_action(&state.logicals, &fin.logicals, &group).ok()
        } else {
            None
        };
        Ok(BranchOutcome {
            outcomes,
            group_restored,
            action,
        })
    };
    let reference = evaluate(alloc::vec![false; steps.len()])?;
    let reference = match (reference.group_restored, reference.action) {
        (true, Some(a)) => a,
        (false, _) => return Err(RewiringError::GroupNotRestored),
        (true, None) => return Err(RewiringError::LogicalLeaked(0)),
    };
    let branches = (0u32..1 << steps.len())
        .map(|mask| evaluate((0..steps.len()).map(|i| mask >> i & 1 == 1).collect()))
        .collect::<Result<_, _>>()?;
    Ok(BranchReport { reference, branches })
}

/// All eight outcome triples of one elementary rewiring.
pub fn simulate_all_branches(state: &TableauState, pair: &RewiringPair) -> Result<BranchReport, RewiringError> {
    pair.check(&state.generators, &state.logicals)?;
    enumerate_branches(state, &pair.steps(&state.generators[pair.m]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use crate::pauli::pauli;
    use crate::rewiring::{synthesize_pair, CommutationTargets};

    #[test]
    fn toy2_branches_agree_with_update_path() {
        let state = TableauState::from_code(&catalog::toy2());
        let pair = RewiringPair {
            m: 0,
            g: pauli("+IX"),
            g_prime: pauli("+YZ"),
            targets: CommutationTargets::single(1, 0, false, true),
        };
        let report = simulate_all_branches(&state, &pair).unwrap();
        assert_eq!(report.branches.len(), 8);
        assert!(report.all_agree());
        let (_, action) = state.elementary_rewiring(&pair).unwrap();
        assert_eq!(report.reference, action);
    }

    #[test]
    fn dropping_middle_correction_diverges() {
        let code = catalog::steane();
        let state = TableauState::from_code(&code);
        let pair = synthesize_pair(&code, 5, &CommutationTargets::single(1, 0, true, true)).unwrap();
        let mut steps = pair.steps(&code.generators[5]);
        assert!(enumerate_branches(&state, &steps).unwrap().all_agree());
        steps[1].correct_on_minus = PauliOperator::identity(7);
        let report = enumerate_branches(&state, &steps).unwrap();
        let bad = report.first_divergent().unwrap();
        assert!(bad.outcomes[1]);
    }

    #[test]
    fn minus_outcome_without_correction_flips_sign() {
        let mut state = TableauState::from_code(&catalog::toy2());
        state.measure(&pauli("+IX"), true).unwrap();
        assert_eq!(state.generators, [pauli("-IX")]);
        state.apply_pauli(&pauli("+ZZ"));
        assert_eq!(state.generators, [pauli("+IX")]);
        assert!(matches!(
            state.measure(&pauli("+IX"), false),
            Err(RewiringError::DeterministicOutcome(_))
        ));
    }
}
