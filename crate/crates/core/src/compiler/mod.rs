//! Lowering logical Clifford programs to rewiring schedules.

use alloc::boxed::Box;
use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::action::{ActionError, LogicalAction, SqrtAxis, SqrtVariant};
use crate::bits::BitVec;
use crate::code::{distance_of_group, Distance, StabilizerCode};
use crate::group::StabilizerGroup;
use crate::pauli::PauliOperator;
use crate::rewiring::{
    find_first_observable, find_second_observable, observable_from_solution, physical_representative,
    CommutationTargets, MeasureStep, RewiringError, RewiringPair, TableauState,
};

mod decompose;
mod program;
mod schedule;
mod verify;

pub use decompose::decompose_clifford;
pub use program::{parse_program, Gate, GateProgram, ProgramError};
pub use schedule::{Schedule, StepAudit};
pub use verify::{verify_schedule, Discrepancy, Verdict, VerifyError, VerifyOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Rewiring(#[from] RewiringError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("program acts on {program} logical qubit(s), code encodes {code}")]
    QubitMismatch { program: usize, code: usize },
    #[error("invalid generator policy: {0}")]
    GmPolicy(String),
    #[error("distance constraint unsatisfiable within budget: need {required}, best found {best} after {candidates} candidate(s)")]
    DistanceUnsatisfiable {
        required: usize,
        best: usize,
        best_pair: Option<Box<RewiringPair>>,
        candidates: usize,
    },
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// Which generator a rewiring replaces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum GmPolicy {
    /// The last generator.
    #[default]
    Last,
    /// A fixed generator index (0-based).
    Index(usize),
    /// One of the generators promoted by gauge fixing, tried in order.
    Gauge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompileOptions {
    /// Every intermediate code must have at least this distance.
    pub min_distance: Option<usize>,
    pub gm_policy: GmPolicy,
    /// Candidate observables examined per rewiring before giving up.
    pub search_budget: usize,
    /// Largest weight the audit searches when recording distances.
    pub audit_max_weight: usize,
}

impl Default for CompileOptions {
    fn default() -> Self {
        Self {
            min_distance: None,
            gm_policy: GmPolicy::Last,
            search_budget: 4096,
            audit_max_weight: 3,
        }
    }
}

impl CompileOptions {
    fn audit_weight(&self) -> usize {
        self.audit_max_weight
            .max(self.min_distance.map_or(0, |d| d.saturating_sub(1)))
    }
}

/// Rewirings for one gate plus the logical Pauli that makes the result exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateLowering {
    pub gate: Gate,
    pub rewirings: Vec<RewiringPair>,
    /// Action of the rewirings alone.
    pub induced: LogicalAction,
    /// Logical Pauli (sign `+`) applied after the rewirings.
    pub fixup: PauliOperator,
}

/// Distances of generator sets, keyed by their unsigned canonical form.
#[derive(Default)]
struct DistanceCache {
    entries: BTreeMap<(Vec<BitVec>, usize), Distance>,
}

impl DistanceCache {
    fn get(&mut self, n: usize, generators: &[PauliOperator], max_weight: usize) -> Distance {
        let key: Vec<BitVec> = StabilizerGroup::new(n, generators)
            .canonical_generators()
            .map(PauliOperator::symplectic)
            .collect();
        *self
            .entries
            .entry((key, max_weight))
            .or_insert_with(|| distance_of_group(n, generators, &[], max_weight))
    }
}

fn replaced(generators: &[PauliOperator], m: usize, with: &PauliOperator) -> Vec<PauliOperator> {
    let mut out = generators.to_vec();
    out[m] = with.clone();
    out
}

/// Generator candidates and commutation targets.
type PairKey = (Vec<usize>, Vec<(bool, bool)>);

struct Compiler<'a> {
    code: &'a StabilizerCode,
    options: &'a CompileOptions,
    state: TableauState,
    distances: DistanceCache,
    pairs: BTreeMap<PairKey, RewiringPair>,
}

impl<'a> Compiler<'a> {
    fn new(code: &'a StabilizerCode, options: &'a CompileOptions) -> Self {
        Self {
            code,
            options,
            state: TableauState::from_code(code),
            distances: DistanceCache::default(),
            pairs: BTreeMap::new(),
        }
    }

    fn gm_candidates(&self) -> Result<Vec<usize>, CompileError> {
        let count = self.code.generators.len();
        if count == 0 {
            return Err(RewiringError::NoGenerators.into());
        }
        match self.options.gm_policy {
            GmPolicy::Last => Ok(alloc::vec![count - 1]),
            GmPolicy::Index(m) if m < count => Ok(alloc::vec![m]),
            GmPolicy::Index(m) => Err(CompileError::GmPolicy(format!(
                "index {m} out of range for {count} generators"
            ))),
            GmPolicy::Gauge if self.code.gauge_fixed.is_empty() => {
                Err(CompileError::GmPolicy("code has no gauge-fixing generators".into()))
            }
            GmPolicy::Gauge => Ok(self.code.gauge_fixed.clone()),
        }
    }

    /// First pair in (generator, α, β) order whose intermediate codes meet
    /// the distance requirement.
    fn find_pair(&mut self, targets: &CommutationTargets) -> Result<RewiringPair, CompileError> {
        let candidates = self.gm_candidates()?;
        let key = (candidates, targets.0.clone());
        if let Some(pair) = self.pairs.get(&key) {
            return Ok(pair.clone());
        }
        let pair = self.search(&key.0, targets)?;
        self.pairs.insert(key, pair.clone());
        Ok(pair)
    }

    fn search(&mut self, candidates: &[usize], targets: &CommutationTargets) -> Result<RewiringPair, CompileError> {
        let n = self.code.n;
        let generators = &self.code.generators;
        let mut examined = 0usize;
        let mut best: Option<(usize, RewiringPair)> = None;
        for &m in candidates {
            let first = find_first_observable(self.code, m)?;
            for alpha in first.iter_by_weight() {
                let g = observable_from_solution(&alpha);
                let d1 = match self.options.min_distance {
                    None => usize::MAX,
                    Some(d) => {
                        examined += 1;
                        self.distances.get(n, &replaced(generators, m, &g), d - 1).lower_bound()
                    }
                };
                if let Some(required) = self.options.min_distance {
                    if d1 < required {
                        if best.as_ref().is_none_or(|(b, _)| d1 > *b) {
                            let second = find_second_observable(self.code, m, &g, targets)?;
                            let pair = RewiringPair {
                                m,
                                g: g.clone(),
                                g_prime: observable_from_solution(&second.particular),
                                targets: targets.clone(),
                            };
                            best = Some((d1, pair));
                        }
                        if examined >= self.options.search_budget {
                            return Err(unsatisfiable(required, best, examined));
                        }
                        continue;
                    }
                }
                let second = find_second_observable(self.code, m, &g, targets)?;
                for beta in second.iter_by_weight() {
                    let pair = RewiringPair {
                        m,
                        g: g.clone(),
                        g_prime: observable_from_solution(&beta),
                        targets: targets.clone(),
                    };
                    let Some(required) = self.options.min_distance else {
                        pair.check(generators, &self.code.logicals)?;
                        return Ok(pair);
                    };
                    examined += 1;
                    let d2 = self
                        .distances
                        .get(n, &replaced(generators, m, &pair.g_prime), required - 1)
                        .lower_bound();
                    if d2 >= required {
                        pair.check(generators, &self.code.logicals)?;
                        return Ok(pair);
                    }
                    let score = d1.min(d2);
                    if best.as_ref().is_none_or(|(b, _)| score > *b) {
                        best = Some((score, pair));
                    }
                    if examined >= self.options.search_budget {
                        return Err(unsatisfiable(required, best, examined));
                    }
                }
            }
        }
        let required = self.options.min_distance.unwrap_or(0);
        Err(unsatisfiable(required, best, examined))
    }

    fn action_of(&self, pair: &RewiringPair) -> Result<LogicalAction, CompileError> {
        Ok(self.state.elementary_rewiring(pair)?.1)
    }

    /// `pair` or `(g, -g')`, whichever `accept`s its action first.
    fn choose_sign(
        &self,
        pair: RewiringPair,
        accept: impl Fn(&LogicalAction) -> bool,
    ) -> Result<(RewiringPair, LogicalAction), CompileError> {
        let action = self.action_of(&pair)?;
        if accept(&action) {
            return Ok((pair, action));
        }
        let flipped = pair.with_negated_g_prime();
        let flipped_action = self.action_of(&flipped)?;
        if accept(&flipped_action) {
            Ok((flipped, flipped_action))
        } else {
            Ok((pair, action))
        }
    }

    fn lower(&mut self, gate: Gate) -> Result<GateLowering, CompileError> {
        let k = self.code.k();
        let target = gate.action(k);
        let mut rewirings = Vec::new();
        let mut induced = LogicalAction::identity(k);
        let sqrt = |q: usize, axis: SqrtAxis, variant: SqrtVariant| (q, axis, variant);
        let single = match gate {
            Gate::S(q) => Some(sqrt(q, SqrtAxis::Z, SqrtVariant::Root)),
            Gate::Sdg(q) => Some(sqrt(q, SqrtAxis::Z, SqrtVariant::TimesPauli)),
            Gate::SX(q) => Some(sqrt(q, SqrtAxis::X, SqrtVariant::Root)),
            Gate::SXdg(q) => Some(sqrt(q, SqrtAxis::X, SqrtVariant::TimesPauli)),
            Gate::SY(q) | Gate::H(q) => Some(sqrt(q, SqrtAxis::Y, SqrtVariant::Root)),
            Gate::SYdg(q) => Some(sqrt(q, SqrtAxis::Y, SqrtVariant::TimesPauli)),
            _ => None,
        };
        if let Some((q, axis, variant)) = single {
            let (a, b) = match axis {
                SqrtAxis::Z => (true, false),
                SqrtAxis::X => (false, true),
                SqrtAxis::Y => (true, true),
            };
            let pair = self.find_pair(&CommutationTargets::single(k, q, a, b))?;
            let want = LogicalAction::sqrt(k, q, axis, variant);
            let (pair, action) = self.choose_sign(pair, |act| *act == want)?;
            rewirings.push(pair);
            induced = action;
        } else if let Gate::Cnot(c, t) = gate {
            let entangle = self.find_pair(&CommutationTargets::cnot(k, c, t))?;
            let first = self.action_of(&entangle)?;
            let on_control = self.find_pair(&CommutationTargets::single(k, c, true, false))?;
            let (on_control, second) = self.choose_sign(on_control, |act| !first.then(act).image_x(c).is_negative())?;
            let so_far = first.then(&second);
            let on_target = self.find_pair(&CommutationTargets::single(k, t, false, true))?;
            let (on_target, third) = self.choose_sign(on_target, |act| !so_far.then(act).image_z(t).is_negative())?;
            induced = so_far.then(&third);
            rewirings = alloc::vec![entangle, on_control, on_target];
        }
        let fixup = induced
            .pauli_correction_to(&target)
            .map_err(|e| CompileError::Internal(format!("rewirings for {gate} have the wrong symplectic part: {e}")))?;
        Ok(GateLowering {
            gate,
            rewirings,
            induced,
            fixup,
        })
    }
}

fn unsatisfiable(required: usize, best: Option<(usize, RewiringPair)>, candidates: usize) -> CompileError {
    let (best, best_pair) = match best {
        Some((d, p)) => (d, Some(Box::new(p))),
        None => (0, None),
    };
    CompileError::DistanceUnsatisfiable {
        required,
        best,
        best_pair,
        candidates,
    }
}

fn check_program(code: &StabilizerCode, program: &GateProgram) -> Result<(), CompileError> {
    if program.k != code.k() {
        return Err(CompileError::QubitMismatch {
            program: program.k,
            code: code.k(),
        });
    }
    Ok(())
}

/// Lowers a single gate.
pub fn compile_gate(code: &StabilizerCode, gate: Gate, options: &CompileOptions) -> Result<GateLowering, CompileError> {
    check_program(code, &GateProgram::new(code.k(), alloc::vec![gate])?)?;
    Compiler::new(code, options).lower(gate)
}

/// Lowers a program to a schedule whose steps form consecutive rewiring
/// triples, followed by one physical Pauli fix-up.
pub fn compile_program(
    code: &StabilizerCode,
    program: &GateProgram,
    options: &CompileOptions,
) -> Result<Schedule, CompileError> {
    check_program(code, program)?;
    if options.min_distance == Some(0) {
        return Err(CompileError::Internal("minimum distance must be positive".into()));
    }
    let mut compiler = Compiler::new(code, options);
    let mut lowered: BTreeMap<Gate, GateLowering> = BTreeMap::new();
    let mut induced = LogicalAction::identity(code.k());
    let mut steps = Vec::new();
    for &gate in &program.gates {
        let lowering = match lowered.entry(gate) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(compiler.lower(gate)?),
        };
        for pair in &lowering.rewirings {
            steps.extend(pair.steps(&code.generators[pair.m]));
        }
        induced = induced.then(&lowering.induced);
    }
    let claimed_action = program.action();
    let fixup = induced
        .pauli_correction_to(&claimed_action)
        .map_err(|e| CompileError::Internal(format!("composed rewirings have the wrong symplectic part: {e}")))?;
    let audit = audit_steps(code, &steps, options.audit_weight(), &mut compiler.distances)?;
    Ok(Schedule {
        code_name: code.name.clone(),
        code_hash: code.content_hash(),
        steps,
        pauli_fixup: physical_representative(&code.logicals, &fixup),
        claimed_action,
        audit,
    })
}

/// Generator set, distance and CSS flag after each step.
fn audit_steps(
    code: &StabilizerCode,
    steps: &[MeasureStep],
    max_weight: usize,
    cache: &mut DistanceCache,
) -> Result<Vec<StepAudit>, CompileError> {
    let mut state = TableauState::from_code(code);
    let mut out = Vec::with_capacity(steps.len());
    for step in steps {
        state = state.measure_and_correct(&step.measure, &step.correct_on_minus)?;
        out.push(StepAudit::of(code.n, &state.generators, max_weight, |n, g, w| {
            cache.get(n, g, w)
        }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::catalog;
    use crate::pauli::pauli;
    use alloc::vec;

    fn options() -> CompileOptions {
        CompileOptions::default()
    }

    #[test]
    fn s_on_five_qubit_is_exact() {
        let code = catalog::five_qubit();
        let lowering = compile_gate(&code, Gate::S(0), &options()).unwrap();
        assert_eq!(lowering.rewirings.len(), 1);
        assert_eq!(lowering.induced, Gate::S(0).action(1));
        assert!(lowering.fixup.is_identity_up_to_phase());
    }

    #[test]
    fn every_root_gate_is_exact_without_fixup() {
        for code in [catalog::five_qubit(), catalog::steane(), catalog::toy2()] {
            for gate in [
                Gate::S(0),
                Gate::Sdg(0),
                Gate::SX(0),
                Gate::SXdg(0),
                Gate::SY(0),
                Gate::SYdg(0),
            ] {
                let lowering = compile_gate(&code, gate, &options()).unwrap();
                assert_eq!(lowering.induced, gate.action(1), "{} {gate}", code.name);
            }
        }
    }

    #[test]
    fn hadamard_on_steane() {
        let code = catalog::steane();
        let schedule = compile_program(&code, &parse_program("H 0", 1).unwrap(), &options()).unwrap();
        assert_eq!(schedule.steps.len(), 3);
        assert_eq!(schedule.claimed_action.image_x(0), &pauli("+Z"));
        assert_eq!(schedule.claimed_action.image_z(0), &pauli("+X"));
    }

    #[test]
    fn cnot_on_four_two_two() {
        let code = catalog::four_two_two();
        let lowering = compile_gate(&code, Gate::Cnot(0, 1), &options()).unwrap();
        assert_eq!(lowering.rewirings.len(), 3);
        let exact = lowering.induced.then_pauli(&lowering.fixup);
        assert_eq!(exact.image_x(0), &pauli("+XX"));
        assert_eq!(exact.image_z(1), &pauli("+ZZ"));
        assert_eq!(exact.image_z(0), &pauli("+ZI"));
        assert_eq!(exact.image_x(1), &pauli("+IX"));
        let schedule = compile_program(&code, &parse_program("CNOT 0 1", 2).unwrap(), &options()).unwrap();
        assert_eq!(schedule.steps.len(), 9);
    }

    #[test]
    fn paulis_need_no_rewiring() {
        let code = catalog::steane();
        let schedule = compile_program(&code, &parse_program("Y 0", 1).unwrap(), &options()).unwrap();
        assert!(schedule.steps.is_empty());
        assert_eq!(schedule.pauli_fixup.unsigned(), pauli("+YYYYYYY").unsigned());
    }

    #[test]
    fn involutions_compose_to_identity() {
        let steane = catalog::steane();
        let s = compile_program(&steane, &parse_program("H 0; H 0", 1).unwrap(), &options()).unwrap();
        assert_eq!(s.claimed_action, LogicalAction::identity(1));
        let five = catalog::five_qubit();
        let s = compile_program(&five, &parse_program("S 0; S 0; S 0; S 0", 1).unwrap(), &options()).unwrap();
        assert_eq!(s.claimed_action, LogicalAction::identity(1));
        assert_eq!(s.steps.len(), 12);
    }

    #[test]
    fn qrm_sqrt_y_with_gauge_generator() {
        let code = catalog::qrm15();
        let opts = CompileOptions {
            min_distance: Some(3),
            gm_policy: GmPolicy::Gauge,
            ..options()
        };
        let schedule = compile_program(&code, &parse_program("SY 0", 1).unwrap(), &opts).unwrap();
        assert_eq!(schedule.steps.len(), 3);
        assert!(code
            .gauge_fixed
            .iter()
            .any(|&m| code.generators[m] == schedule.steps[2].measure));
        for audit in &schedule.audit {
            assert!(audit.distance.satisfies(3), "{:?}", audit.distance);
        }
    }

    #[test]
    fn unsatisfiable_distance_reports_best() {
        let code = catalog::toy2();
        let opts = CompileOptions {
            min_distance: Some(5),
            ..options()
        };
        let err = compile_program(&code, &parse_program("S 0", 1).unwrap(), &opts).unwrap_err();
        match err {
            CompileError::DistanceUnsatisfiable {
                required,
                best,
                best_pair,
                ..
            } => {
                assert_eq!(required, 5);
                assert_eq!(best, 1);
                assert!(best_pair.is_some());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(format!(
            "{}",
            compile_program(&code, &parse_program("S 0", 1).unwrap(), &opts).unwrap_err()
        )
        .starts_with("distance constraint unsatisfiable within budget"));
    }

    #[test]
    fn policy_errors() {
        let code = catalog::steane();
        let gauge = CompileOptions {
            gm_policy: GmPolicy::Gauge,
            ..options()
        };
        assert!(matches!(
            compile_gate(&code, Gate::S(0), &gauge),
            Err(CompileError::GmPolicy(_))
        ));
        let index = CompileOptions {
            gm_policy: GmPolicy::Index(6),
            ..options()
        };
        assert!(matches!(
            compile_gate(&code, Gate::S(0), &index),
            Err(CompileError::GmPolicy(_))
        ));
        assert!(matches!(
            compile_program(&code, &GateProgram::new(2, vec![Gate::H(1)]).unwrap(), &options()),
            Err(CompileError::QubitMismatch { .. })
        ));
    }
}
