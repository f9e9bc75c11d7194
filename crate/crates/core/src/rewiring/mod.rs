//! Code rewiring: pair synthesis, tableau updates, elementary
//! rewirings and the logical actions they induce.
//!
//! An elementary rewiring around generator `g_m` runs
//!
//! 1. measure `g`, apply `g_m` on `-1`;
//! 2. measure `g'`, apply `g` on `-1`;
//! 3. measure `g_m`, apply `g'` on `-1`;
//!
//! so the replaced generator cycles `g_m ↦ g ↦ g' ↦ g_m`.
//!
//! The deterministic simulation path takes the `+1` outcome everywhere;
//! [`branches`] replays every outcome combination with explicit corrections.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::action::{ActionError, SqrtAxis, SqrtVariant};
use crate::bits::BitVec;
use crate::code::{LogicalPair, StabilizerCode};
use crate::gf2::{build_lambda, AffineSolutionSpace};
use crate::pauli::PauliOperator;

pub mod branches;
mod tableau;

pub use branches::{enumerate_branches, run_branch, simulate_all_branches, BranchReport};
pub use tableau::{extract_logical_action, physical_representative, TableauState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewiringError {
    #[error("generator index {m} out of range for {count} generators")]
    GeneratorIndex { m: usize, count: usize },
    #[error("code has no stabilizer generators to rewire")]
    NoGenerators,
    #[error("expected {expected} commutation targets, found {found}")]
    TargetsLength { expected: usize, found: usize },
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("rewiring pair violates condition {condition}: {detail}")]
    PairCondition { condition: u8, detail: String },
    #[error("measurement not anticommuting with designated correction")]
    CorrectionCommutes,
    #[error("measurement anticommutes with a second generator (index {0})")]
    SecondAnticommuting(usize),
    #[error("correction {0} is not a current generator")]
    CorrectionNotGenerator(String),
    #[error("measurement {0} commutes with every generator, outcome is deterministic")]
    DeterministicOutcome(String),
    #[error("logical {0} leaked outside code")]
    LogicalLeaked(usize),
    #[error("phase convention violation on logical {0}")]
    PhaseConvention(usize),
    #[error("stabilizer group not restored after rewiring")]
    GroupNotRestored,
    #[error("pair does not induce a √t-type action")]
    NotSqrtType,
    #[error("pair induces a √{found:?}-type action, not √{wanted:?}")]
    WrongAxis { wanted: SqrtAxis, found: SqrtAxis },
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Required `(c(g', X̄_j), c(g', Z̄_j))` for each logical qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CommutationTargets(pub Vec<(bool, bool)>);

impl CommutationTargets {
    pub fn identity(k: usize) -> Self {
        Self(vec![(false, false); k])
    }

    /// `(a, b)` on qubit `q`, zero elsewhere.
    pub fn single(k: usize, q: usize, a: bool, b: bool) -> Self {
        let mut t = Self::identity(k);
        t.0[q] = (a, b);
        t
    }

    /// `a_c = b_t = 1`, everything else zero.
    pub fn cnot(k: usize, control: usize, target: usize) -> Self {
        let mut t = Self::identity(k);
        t.0[control].0 = true;
        t.0[target].1 = true;
        t
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The only logical qubit with a nonzero target, if there is exactly one.
    pub fn single_support(&self) -> Option<usize> {
        let mut hits = self.0.iter().enumerate().filter(|(_, &(a, b))| a || b);
        let first = hits.next()?.0;
        hits.next().is_none().then_some(first)
    }
}

/// One measure-and-correct step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MeasureStep {
    pub measure: PauliOperator,
    pub correct_on_minus: PauliOperator,
}

impl fmt::Display for MeasureStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "measure {} / correct {}", self.measure, self.correct_on_minus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewiringPair {
    /// Index of the replaced generator `g_m` (0-based).
    pub m: usize,
    pub g: PauliOperator,
    pub g_prime: PauliOperator,
    pub targets: CommutationTargets,
}

impl RewiringPair {
    /// The pair `(g, -g')`, which has the same commutation pattern.
    pub fn with_negated_g_prime(&self) -> Self {
        Self {
            g_prime: self.g_prime.negated(),
            ..self.clone()
        }
    }

    /// The three measure-and-correct steps around `g_m`.
    pub fn steps(&self, g_m: &PauliOperator) -> [MeasureStep; 3] {
        [
            MeasureStep {
                measure: self.g.clone(),
                correct_on_minus: g_m.clone(),
            },
            MeasureStep {
                measure: self.g_prime.clone(),
                correct_on_minus: self.g.clone(),
            },
            MeasureStep {
                measure: g_m.clone(),
                correct_on_minus: self.g_prime.clone(),
            },
        ]
    }

    /// Checks the five rewiring-pair conditions against `generators` and
    /// `logicals`, returning the first one that fails.
    pub fn check(&self, generators: &[PauliOperator], logicals: &[LogicalPair]) -> Result<(), RewiringError> {
        if self.m >= generators.len() {
            return Err(RewiringError::GeneratorIndex {
                m: self.m,
                count: generators.len(),
            });
        }
        if self.targets.len() != logicals.len() {
            return Err(RewiringError::TargetsLength {
                expected: logicals.len(),
                found: self.targets.len(),
            });
        }
        let fail = |condition: u8, detail: String| Err(RewiringError::PairCondition { condition, detail });
        for (label, (condition, op)) in [("g", (1u8, &self.g)), ("g'", (3u8, &self.g_prime))] {
            if !op.is_hermitian() {
                return fail(condition, format!("{label} = {op} is not Hermitian"));
            }
            for (j, gen) in generators.iter().enumerate() {
                let expected = j == self.m;
                if op.anticommutes(gen) != expected {
                    return fail(
                        condition,
                        format!(
                            "c({label}, g_{j}) = {} but must be {}",
                            u8::from(!expected),
                            u8::from(expected)
                        ),
                    );
                }
            }
        }
        for (j, l) in logicals.iter().enumerate() {
            if self.g.anticommutes(&l.x) || self.g.anticommutes(&l.z) {
                return fail(2, format!("g anticommutes with logical qubit {j}"));
            }
        }
        if !self.g.anticommutes(&self.g_prime) {
            return fail(4, "c(g, g') = 0".into());
        }
        for (j, (l, &(a, b))) in logicals.iter().zip(&self.targets.0).enumerate() {
            if self.g_prime.anticommutes(&l.x) != a || self.g_prime.anticommutes(&l.z) != b {
                return fail(
                    5,
                    format!(
                        "c(g', logical {j}) does not match target ({}, {})",
                        u8::from(a),
                        u8::from(b)
                    ),
                );
            }
        }
        Ok(())
    }
}

/// Solutions `(α_Z ; α_X)` of `Λ(M, L_X, L_Z) · (α_Z ; α_X) = e_m`.
pub fn find_first_observable(code: &StabilizerCode, m: usize) -> Result<AffineSolutionSpace, RewiringError> {
    check_index(code, m)?;
    let lambda = build_lambda(&code.check_matrix(), None, &code.logical_rows())
        .map_err(|e| RewiringError::Internal(format!("{e}")))?;
    let rhs = BitVec::unit(lambda.num_rows(), m);
    lambda
        .solve_affine(&rhs)
        .map_err(|e| RewiringError::Internal(format!("{e}")))?
        .ok_or_else(|| RewiringError::Internal("first-observable system has no solution".into()))
}

/// Solutions `(β_Z ; β_X)` of
/// `Λ(M, α, L_X, L_Z) · (β_Z ; β_X) = (e_m, 1, a_1, b_1, …, a_k, b_k)`.
pub fn find_second_observable(
    code: &StabilizerCode,
    m: usize,
    g: &PauliOperator,
    targets: &CommutationTargets,
) -> Result<AffineSolutionSpace, RewiringError> {
    check_index(code, m)?;
    if targets.len() != code.k() {
        return Err(RewiringError::TargetsLength {
            expected: code.k(),
            found: targets.len(),
        });
    }
    let lambda = build_lambda(&code.check_matrix(), Some((g.x(), g.z())), &code.logical_rows())
        .map_err(|e| RewiringError::Internal(format!("{e}")))?;
    let mut rhs = BitVec::unit(lambda.num_rows(), m);
    let alpha_row = code.generators.len();
    rhs.set(alpha_row, true);
    for (j, &(a, b)) in targets.0.iter().enumerate() {
        rhs.set(alpha_row + 1 + 2 * j, a);
        rhs.set(alpha_row + 2 + 2 * j, b);
    }
    lambda
        .solve_affine(&rhs)
        .map_err(|e| RewiringError::Internal(format!("{e}")))?
        .ok_or_else(|| RewiringError::Internal("second-observable system has no solution".into()))
}

/// Turns a solution vector `(β_Z ; β_X)` into `i^{β_X·β_Z} X_{β_X} Z_{β_Z}`.
pub fn observable_from_solution(solution: &BitVec) -> PauliOperator {
    let n = solution.len() / 2;
    let beta_z = solution.slice(0, n);
    let beta_x = solution.slice(n, 2 * n);
    PauliOperator::hermitian_from_vectors(&beta_x, &beta_z).expect("halves have equal length")
}

/// Synthesizes a rewiring pair from the particular solutions of both systems.
pub fn synthesize_pair(
    code: &StabilizerCode,
    m: usize,
    targets: &CommutationTargets,
) -> Result<RewiringPair, RewiringError> {
    let first = find_first_observable(code, m)?;
    let g = observable_from_solution(&first.particular);
    let second = find_second_observable(code, m, &g, targets)?;
    let pair = RewiringPair {
        m,
        g,
        g_prime: observable_from_solution(&second.particular),
        targets: targets.clone(),
    };
    pair.check(&code.generators, &code.logicals)?;
    Ok(pair)
}

/// Returns the pair, or `(g, -g')`, whichever induces exactly the requested
/// `√t` or `t·√t`. Verified by re-simulation.
pub fn fix_sign(
    code: &StabilizerCode,
    pair: &RewiringPair,
    desired: (SqrtAxis, SqrtVariant),
) -> Result<RewiringPair, RewiringError> {
    let q = pair.targets.single_support().ok_or(RewiringError::NotSqrtType)?;
    let state = TableauState::from_code(code);
    let (_, action) = state.elementary_rewiring(pair)?;
    let (axis, variant) = action.sqrt_variant(q).ok_or(RewiringError::NotSqrtType)?;
    if axis != desired.0 {
        return Err(RewiringError::WrongAxis {
            wanted: desired.0,
            found: axis,
        });
    }
    if variant == desired.1 {
        return Ok(pair.clone());
    }
    let flipped = pair.with_negated_g_prime();
    let (_, action) = state.elementary_rewiring(&flipped)?;
    if action.sqrt_variant(q) != Some(desired) {
        return Err(RewiringError::Internal(
            "negating g' did not toggle the √t variant".into(),
        ));
    }
    Ok(flipped)
}

fn check_index(code: &StabilizerCode, m: usize) -> Result<(), RewiringError> {
    if code.generators.is_empty() {
        return Err(RewiringError::NoGenerators);
    }
    if m >= code.generators.len() {
        return Err(RewiringError::GeneratorIndex {
            m,
            count: code.generators.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{InducedType, LogicalAction};
    use crate::code::catalog;
    use crate::pauli::pauli;

    fn toy2_pair() -> RewiringPair {
        RewiringPair {
            m: 0,
            g: pauli("+IX"),
            g_prime: pauli("+YZ"),
            targets: CommutationTargets::single(1, 0, false, true),
        }
    }

    /// Every two-qubit Hermitian Pauli with sign `+`.
    fn all_two_qubit() -> Vec<PauliOperator> {
        let mut out = Vec::new();
        for bits in 0..16u8 {
            let x = BitVec::from_bools([bits & 1 != 0, bits & 2 != 0]);
            let z = BitVec::from_bools([bits & 4 != 0, bits & 8 != 0]);
            out.push(PauliOperator::positive_from_vectors(x, z).unwrap());
        }
        out
    }

    #[test]
    fn toy2_first_observable_matches_brute_force() {
        let code = catalog::toy2();
        let space = find_first_observable(&code, 0).unwrap();
        let mut from_solver: Vec<_> = space.iter().map(|s| observable_from_solution(&s).unsigned()).collect();
        from_solver.sort();
        let l = &code.logicals[0];
        let mut brute: Vec<_> = all_two_qubit()
            .into_iter()
            .filter(|p| p.anticommutes(&code.generators[0]) && p.commutes(&l.x) && p.commutes(&l.z))
            .collect();
        brute.sort();
        assert_eq!(from_solver, brute);
        assert!(brute.contains(&pauli("+IX")));
        assert!(brute.contains(&pauli("+ZY")));
    }

    #[test]
    fn toy2_second_observable_contains_yz() {
        let code = catalog::toy2();
        let targets = CommutationTargets::single(1, 0, false, true);
        let space = find_second_observable(&code, 0, &pauli("+IX"), &targets).unwrap();
        let members: Vec<_> = space.iter().map(|s| observable_from_solution(&s)).collect();
        assert!(members.contains(&pauli("+YZ")), "{members:?}");
        let brute: Vec<_> = all_two_qubit()
            .into_iter()
            .filter(|p| {
                p.anticommutes(&pauli("ZZ"))
                    && p.anticommutes(&pauli("IX"))
                    && p.commutes(&pauli("XX"))
                    && p.anticommutes(&pauli("ZI"))
            })
            .collect();
        assert_eq!(brute, vec![pauli("+YZ")]);
        assert_eq!(members.len(), 1);
    }

    #[test]
    fn solutions_satisfy_first_two_conditions() {
        for (code, m) in [(catalog::steane(), 5), (catalog::five_qubit(), 3)] {
            let space = find_first_observable(&code, m).unwrap();
            for sol in space.iter().take(64) {
                let g = observable_from_solution(&sol);
                assert!(g.is_hermitian());
                for (j, gen) in code.generators.iter().enumerate() {
                    assert_eq!(g.anticommutes(gen), j == m);
                }
                for l in &code.logicals {
                    assert!(g.commutes(&l.x) && g.commutes(&l.z));
                }
            }
        }
    }

    #[test]
    fn steane_targets_11_anticommute() {
        let code = catalog::steane();
        let pair = synthesize_pair(&code, 5, &CommutationTargets::single(1, 0, true, true)).unwrap();
        assert!(pair.g.anticommutes(&pair.g_prime));
    }

    #[test]
    fn identity_targets_give_identity() {
        for code in [
            catalog::toy2(),
            catalog::five_qubit(),
            catalog::steane(),
            catalog::four_two_two(),
        ] {
            let m = code.generators.len() - 1;
            let pair = synthesize_pair(&code, m, &CommutationTargets::identity(code.k())).unwrap();
            let (_, action) = TableauState::from_code(&code).elementary_rewiring(&pair).unwrap();
            assert_eq!(action, LogicalAction::identity(code.k()), "{}", code.name);
        }
    }

    #[test]
    fn bad_index_and_empty_code() {
        assert_eq!(
            find_first_observable(&catalog::toy2(), 1),
            Err(RewiringError::GeneratorIndex { m: 1, count: 1 })
        );
        assert_eq!(
            find_first_observable(&catalog::trivial_qubit(), 0),
            Err(RewiringError::NoGenerators)
        );
    }

    #[test]
    fn check_names_failing_condition() {
        let code = catalog::toy2();
        assert!(toy2_pair().check(&code.generators, &code.logicals).is_ok());
        let mut bad = toy2_pair();
        bad.targets = CommutationTargets::single(1, 0, true, true);
        assert!(matches!(
            bad.check(&code.generators, &code.logicals),
            Err(RewiringError::PairCondition { condition: 5, .. })
        ));
        let mut bad = toy2_pair();
        bad.g = pauli("+ZI");
        assert!(matches!(
            bad.check(&code.generators, &code.logicals),
            Err(RewiringError::PairCondition { condition: 1, .. })
        ));
    }

    #[test]
    fn fix_sign_on_toy2() {
        let code = catalog::toy2();
        let pair = toy2_pair();
        // Z̄ ↦ -Ȳ is √X itself.
        let same = fix_sign(&code, &pair, (SqrtAxis::X, SqrtVariant::Root)).unwrap();
        assert_eq!(same, pair);
        let flipped = fix_sign(&code, &pair, (SqrtAxis::X, SqrtVariant::TimesPauli)).unwrap();
        assert_eq!(flipped, pair.with_negated_g_prime());
        let (_, action) = TableauState::from_code(&code).elementary_rewiring(&flipped).unwrap();
        assert_eq!(action.image_z(0), &pauli("+Y"));
        assert_eq!(flipped.with_negated_g_prime(), pair);
        assert!(matches!(
            fix_sign(&code, &pair, (SqrtAxis::Z, SqrtVariant::Root)),
            Err(RewiringError::WrongAxis { .. })
        ));
    }

    #[test]
    fn fix_sign_rejects_identity() {
        let code = catalog::steane();
        let pair = synthesize_pair(&code, 5, &CommutationTargets::identity(1)).unwrap();
        assert_eq!(
            fix_sign(&code, &pair, (SqrtAxis::X, SqrtVariant::Root)),
            Err(RewiringError::NotSqrtType)
        );
    }

    #[test]
    fn table_rows_on_small_codes() {
        for code in [catalog::toy2(), catalog::five_qubit(), catalog::steane()] {
            for (a, b, expected) in [
                (false, false, InducedType::Identity),
                (false, true, InducedType::Sqrt(SqrtAxis::X)),
                (true, false, InducedType::Sqrt(SqrtAxis::Z)),
                (true, true, InducedType::Sqrt(SqrtAxis::Y)),
            ] {
                let m = code.generators.len() - 1;
                let pair = synthesize_pair(&code, m, &CommutationTargets::single(1, 0, a, b)).unwrap();
                let (_, action) = TableauState::from_code(&code).elementary_rewiring(&pair).unwrap();
                assert_eq!(action.induced_type(0), expected, "{} ({a},{b})", code.name);
            }
        }
    }
}
