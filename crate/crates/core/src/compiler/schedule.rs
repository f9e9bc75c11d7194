use alloc::string::String;
use alloc::vec::Vec;

use crate::action::LogicalAction;
use crate::code::Distance;
use crate::pauli::PauliOperator;
use crate::rewiring::MeasureStep;

/// Code state recorded after one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepAudit {
    pub generators: Vec<PauliOperator>,
    pub distance: Distance,
    pub css: bool,
}

impl StepAudit {
    pub fn of(
        n: usize,
        generators: &[PauliOperator],
        max_weight: usize,
        mut distance: impl FnMut(usize, &[PauliOperator], usize) -> Distance,
    ) -> Self {
        Self {
            generators: generators.to_vec(),
            distance: distance(n, generators, max_weight),
            css: generators.iter().all(PauliOperator::is_css_type),
        }
    }

    /// Search bound that reproduces `distance`.
    pub fn search_weight(&self) -> usize {
        match self.distance {
            Distance::Exact(d) => d,
            Distance::AtLeast(d) => d.saturating_sub(1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub code_name: String,
    pub code_hash: String,
    pub steps: Vec<MeasureStep>,
    /// Physical Pauli applied after the last step.
    pub pauli_fixup: PauliOperator,
    pub claimed_action: LogicalAction,
    pub audit: Vec<StepAudit>,
}

impl Schedule {
    /// Steps grouped as rewiring triples; a trailing partial group is dropped.
    pub fn triples(&self) -> impl Iterator<Item = &[MeasureStep]> {
        self.steps.chunks_exact(3)
    }

    pub fn num_rewirings(&self) -> usize {
        self.steps.len() / 3
    }
}
