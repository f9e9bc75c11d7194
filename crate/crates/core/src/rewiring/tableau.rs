use alloc::string::ToString;
use alloc::vec::Vec;

use super::{MeasureStep, RewiringError, RewiringPair};
use crate::action::LogicalAction;
use crate::bits::BitVec;
use crate::code::{LogicalPair, StabilizerCode};
use crate::group::StabilizerGroup;
use crate::pauli::PauliOperator;

/// Signed generators plus tracked logical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableauState {
    pub n: usize,
    pub generators: Vec<PauliOperator>,
    pub logicals: Vec<LogicalPair>,
}

impl TableauState {
    pub fn from_code(code: &StabilizerCode) -> Self {
        Self {
            n: code.n,
            generators: code.generators.clone(),
            logicals: code.logicals.clone(),
        }
    }

    pub fn k(&self) -> usize {
        self.logicals.len()
    }

    pub fn group(&self) -> StabilizerGroup {
        StabilizerGroup::new(self.n, &self.generators)
    }

    /// Measures `measured` with outcome `+1` where the only generator it
    /// anticommutes with is `correction` (matched up to sign). That generator
    /// is replaced by `measured`; each logical `h` anticommuting with
    /// `measured` becomes `g_c · h`, using the signed current generator.
    pub fn measure_and_correct(
        &self,
        measured: &PauliOperator,
        correction: &PauliOperator,
    ) -> Result<Self, RewiringError> {
        let target = correction.unsigned();
        let index = self
            .generators
            .iter()
            .position(|g| g.unsigned() == target)
            .ok_or_else(|| RewiringError::CorrectionNotGenerator(correction.to_string()))?;
        if !measured.anticommutes(&self.generators[index]) {
            return Err(RewiringError::CorrectionCommutes);
        }
        if let Some(j) = self
            .generators
            .iter()
            .enumerate()
            .position(|(j, g)| j != index && measured.anticommutes(g))
        {
            return Err(RewiringError::SecondAnticommuting(j));
        }
        let replaced = &self.generators[index];
        let fix = |h: &PauliOperator| {
            if measured.anticommutes(h) {
                replaced * h
            } else {
                h.clone()
            }
        };
        let logicals = self
            .logicals
            .iter()
            .map(|l| LogicalPair::new(fix(&l.x), fix(&l.z)))
            .collect();
        let mut generators = self.generators.clone();
        generators[index] = measured.clone();
        Ok(Self {
            n: self.n,
            generators,
            logicals,
        })
    }

    /// Applies [`Self::measure_and_correct`] for each step in order.
    pub fn run_steps(&self, steps: &[MeasureStep]) -> Result<Self, RewiringError> {
        steps.iter().try_fold(self.clone(), |state, step| {
            state.measure_and_correct(&step.measure, &step.correct_on_minus)
        })
    }

    /// Runs the three steps of `pair` and returns the new state with the
    /// induced logical action.
    pub fn elementary_rewiring(&self, pair: &RewiringPair) -> Result<(Self, LogicalAction), RewiringError> {
        pair.check(&self.generators, &self.logicals)?;
        let steps = pair.steps(&self.generators[pair.m]);
        let next = self.run_steps(&steps)?;
        let group = self.group();
        if next.group() != group {
            return Err(RewiringError::GroupNotRestored);
        }
        let action = extract_logical_action(&self.logicals, &next.logicals, &group)?;
        Ok((next, action))
    }
}

/// `i^{phase(q)} ∏ X̄_j^{x_j} ∏ Z̄_j^{z_j}` for a logical Pauli `q`.
pub fn physical_representative(logicals: &[LogicalPair], q: &PauliOperator) -> PauliOperator {
    assert_eq!(q.num_qubits(), logicals.len(), "logical Pauli size mismatch");
    let n = logicals.first().map_or(0, |l| l.x.num_qubits());
    let mut out = PauliOperator::identity(n).times_i_pow(q.phase());
    for j in q.x().ones() {
        out = &out * &logicals[j].x;
    }
    for j in q.z().ones() {
        out = &out * &logicals[j].z;
    }
    out
}

/// Expresses each final logical in terms of the initial ones. Images are
/// taken in the order `X̄_1, Z̄_1, …`; each must equal `±` the canonical
/// representative times an element of `group`.
pub fn extract_logical_action(
    initial: &[LogicalPair],
    fin: &[LogicalPair],
    group: &StabilizerGroup,
) -> Result<LogicalAction, RewiringError> {
    let k = initial.len();
    let mut images = Vec::with_capacity(2 * k);
    for (c, f) in fin.iter().flat_map(|l| [&l.x, &l.z]).enumerate() {
        if !group.commutes_with(f) {
            return Err(RewiringError::LogicalLeaked(c / 2));
        }
        let x = BitVec::from_bools(initial.iter().map(|l| f.anticommutes(&l.z)));
        let z = BitVec::from_bools(initial.iter().map(|l| f.anticommutes(&l.x)));
        let q = PauliOperator::positive_from_vectors(x, z).expect("same length");
        let rest = f * &physical_representative(initial, &q);
        let element = group
            .element_with_support(&rest.symplectic())
            .ok_or(RewiringError::LogicalLeaked(c / 2))?;
        match (rest.phase() + 4 - element.phase()) % 4 {
            0 => images.push(q),
            2 => images.push(q.negated()),
            _ => return Err(RewiringError::PhaseConvention(c / 2)),
        }
    }
    Ok(LogicalAction::from_images(k, images)?)
}
