//! Brute-force statevector checks for small codes.
//!
//! Qubit `q` is bit `q` of a basis index, and a Pauli acts as
//! `P|b⟩ = i^p (-1)^{|z ∧ b|} |b ⊕ x⟩`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use thiserror::Error;

use crate::action::LogicalAction;
use crate::bits::BitVec;
use crate::code::StabilizerCode;
use crate::compiler::Schedule;
use crate::pauli::PauliOperator;

/// Norms, orthogonality and outcome probabilities.
pub const STATE_TOLERANCE: f64 = 1e-10;
/// Operator agreement.
pub const OPERATOR_TOLERANCE: f64 = 1e-8;
/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the dense limit of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("no computational seed survives projection onto the code space")]
    NoCodeState,
    #[error("logical basis is not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("step {step}: outcome probability {probability} is not 1/2")]
    Probability { step: usize, probability: f64 },
    #[error("output leaves the code space (missing weight {0:e})")]
    LeftCodespace(f64),
    #[error("image of logical operator {0} is not a signed Pauli")]
    NotClifford(usize),
    #[error("rewiring {triple}: closed-form unitary deviates from the channel by {deviation:e}")]
    ClosedForm { triple: usize, deviation: f64 },
}

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

fn mask(bits: &BitVec) -> usize {
    bits.ones().fold(0, |m, q| m | 1 << q)
}

/// A `2^n` amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl DenseState {
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n, amps }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, c: Complex64) -> DenseState {
        DenseState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &DenseState) -> DenseState {
        DenseState {
            n: self.n,
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn normalized(&self) -> DenseState {
        self.scaled(Complex64::new(1.0 / libm::sqrt(self.norm_sqr()), 0.0))
    }

    pub fn apply(&self, p: &PauliOperator) -> DenseState {
        assert_eq!(p.num_qubits(), self.n, "Pauli size mismatch");
        let (x, z) = (mask(p.x()), mask(p.z()));
        let phase = I_POW[p.phase() as usize];
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (z & b).count_ones() % 2 == 1 { -phase } else { phase };
            amps[b ^ x] = a * sign;
        }
        DenseState { n: self.n, amps }
    }

    /// `(I + s·P)/2 |ψ⟩` with `s = -1` when `minus`.
    pub fn project(&self, p: &PauliOperator, minus: bool) -> DenseState {
        let s = if minus { -0.5 } else { 0.5 };
        self.scaled(Complex64::new(0.5, 0.0))
            .add(&self.apply(p).scaled(Complex64::new(s, 0.0)))
    }
}

/// Logical basis `|x̄⟩ = ∏ X̄_j^{x_j} |0̄⟩`, where `|0̄⟩` is the first
/// computational seed with nonzero projection onto every generator and
/// every `Z̄_j`. Entry `x` has logical qubit `j` in bit `j`.
pub fn codespace_basis(code: &StabilizerCode) -> Result<Vec<DenseState>, OracleError> {
    let n = code.n;
    if n > MAX_QUBITS {
        return Err(OracleError::TooManyQubits { n, max: MAX_QUBITS });
    }
    let fixed: Vec<&PauliOperator> = code
        .generators
        .iter()
        .chain(code.logicals.iter().map(|l| &l.z))
        .collect();
    let zero = (0..1usize << n)
        .find_map(|seed| {
            let projected = fixed
                .iter()
                .fold(DenseState::basis(n, seed), |s, p| s.project(p, false));
            (projected.norm_sqr() > STATE_TOLERANCE).then(|| projected.normalized())
        })
        .ok_or(OracleError::NoCodeState)?;
    let k = code.k();
    let basis: Vec<DenseState> = (0..1usize << k)
        .map(|x| {
            (0..k)
                .filter(|j| x >> j & 1 == 1)
                .fold(zero.clone(), |s, j| s.apply(&code.logicals[j].x))
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b) - Complex64::new(want, 0.0)).norm());
        }
        for g in &code.generators {
            worst = worst.max(libm::sqrt(
                a.apply(g).add(&a.scaled(Complex64::new(-1.0, 0.0))).norm_sqr(),
            ));
        }
    }
    if worst > STATE_TOLERANCE {
        return Err(OracleError::NotOrthonormal(worst));
    }
    Ok(basis)
}

/// Runs every step on each state with the outcome chosen by `outcome(step)`
/// (`true` = `-1`), checking that each outcome has probability ½, then
/// applies the Pauli fix-up. Projections are rescaled by `√2`.
pub fn apply_schedule(
    states: &[DenseState],
    schedule: &Schedule,
    mut outcome: impl FnMut(usize) -> bool,
) -> Result<Vec<DenseState>, OracleError> {
    let mut states = states.to_vec();
    let root2 = Complex64::new(core::f64::consts::SQRT_2, 0.0);
    for (i, step) in schedule.steps.iter().enumerate() {
        let minus = outcome(i);
        for s in &mut states {
            let projected = s.project(&step.measure, minus);
            let probability = projected.norm_sqr() / s.norm_sqr();
            if (probability - 0.5).abs() > STATE_TOLERANCE {
                return Err(OracleError::Probability { step: i, probability });
            }
            let mut next = projected.scaled(root2);
            if minus {
                next = next.apply(&step.correct_on_minus);
            }
            *s = next;
        }
    }
    Ok(states.iter().map(|s| s.apply(&schedule.pauli_fixup)).collect())
}

/// Dense matrix of a `k`-qubit Pauli in the computational basis.
fn logical_matrix(p: &PauliOperator) -> Matrix {
    let dim = 1 << p.num_qubits();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let image = DenseState::basis(p.num_qubits(), col).apply(p);
        for (row, v) in m.iter_mut().zip(image.amps) {
            row[col] = v;
        }
    }
    m
}

type Matrix = Vec<Vec<Complex64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    (0..dim)
        .map(|r| (0..dim).map(|c| (0..dim).map(|t| a[r][t] * b[t][c]).sum()).collect())
        .collect()
}

fn adjoint(a: &Matrix) -> Matrix {
    let dim = a.len();
    (0..dim).map(|r| (0..dim).map(|c| a[c][r].conj()).collect()).collect()
}

/// Logical action of the map `|x̄⟩ ↦ outputs[x]`, found by conjugating each
/// logical basis operator and matching against every signed `k`-qubit Pauli.
pub fn action_from_outputs(basis: &[DenseState], outputs: &[DenseState]) -> Result<LogicalAction, OracleError> {
    let dim = basis.len();
    let k = dim.trailing_zeros() as usize;
    // w[y][x] = ⟨ȳ| W |x̄⟩
    let mut w = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (x, out) in outputs.iter().enumerate() {
        let mut captured = 0.0;
        for (y, b) in basis.iter().enumerate() {
            w[y][x] = b.inner(out);
            captured += w[y][x].norm_sqr();
        }
        let leak = (out.norm_sqr() - captured).abs();
        if leak > OPERATOR_TOLERANCE {
            return Err(OracleError::LeftCodespace(leak));
        }
    }
    let w_dag = adjoint(&w);
    let candidates: Vec<(PauliOperator, Matrix)> = (0..1usize << (2 * k))
        .map(|bits| {
            let x = BitVec::from_bools((0..k).map(|j| bits >> j & 1 == 1));
            let z = BitVec::from_bools((0..k).map(|j| bits >> (k + j) & 1 == 1));
            let p = PauliOperator::positive_from_vectors(x, z).expect("same length");
            let m = logical_matrix(&p);
            (p, m)
        })
        .collect();
    let identity = LogicalAction::identity(k);
    let mut images = Vec::with_capacity(2 * k);
    for (index, basis_op) in identity.images().iter().enumerate() {
        let conj = mat_mul(&mat_mul(&w, &logical_matrix(basis_op)), &w_dag);
        let image = candidates.iter().find_map(|(p, m)| {
            let overlap: Complex64 = (0..dim)
                .flat_map(|r| (0..dim).map(move |c| (r, c)))
                .map(|(r, c)| m[c][r] * conj[r][c])
                .sum::<Complex64>()
                / dim as f64;
            if (overlap - Complex64::new(1.0, 0.0)).norm() < OPERATOR_TOLERANCE {
                Some(p.clone())
            } else if (overlap + Complex64::new(1.0, 0.0)).norm() < OPERATOR_TOLERANCE {
                Some(p.negated())
            } else {
                None
            }
        });
        images.push(image.ok_or(OracleError::NotClifford(index))?);
    }
    LogicalAction::from_images(k, images).map_err(|_| OracleError::NotClifford(0))
}

/// Logical action of `schedule` with outcomes from `outcome(step)`.
pub fn oracle_action(
    code: &StabilizerCode,
    schedule: &Schedule,
    outcome: impl FnMut(usize) -> bool,
) -> Result<LogicalAction, OracleError> {
    let basis = codespace_basis(code)?;
    let outputs = apply_schedule(&basis, schedule, outcome)?;
    action_from_outputs(&basis, &outputs)
}

/// `(I + a·b)/√2 |ψ⟩`.
fn apply_closed_form(s: &DenseState, a: &PauliOperator, b: &PauliOperator) -> DenseState {
    let scale = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
    s.add(&s.apply(b).apply(a)).scaled(scale)
}

/// For every rewiring triple, compares the measured-and-corrected channel
/// (outcomes from `outcome(step)`) with `U₃U₂U₁`, `U = (I + g·g_c)/√2` for
/// measured `g` and correction `g_c`, on the current code space, up to one
/// global phase per triple.
pub fn check_closed_form(
    code: &StabilizerCode,
    schedule: &Schedule,
    mut outcome: impl FnMut(usize) -> bool,
) -> Result<f64, OracleError> {
    let mut states = codespace_basis(code)?;
    let mut worst: f64 = 0.0;
    for (t, triple) in schedule.triples().enumerate() {
        let sub = Schedule {
            steps: triple.to_vec(),
            pauli_fixup: PauliOperator::identity(code.n),
            ..schedule.clone()
        };
        let channel = apply_schedule(&states, &sub, |i| outcome(3 * t + i))?;
        let closed: Vec<DenseState> = states
            .iter()
            .map(|s| {
                triple.iter().fold(s.clone(), |acc, step| {
                    apply_closed_form(&acc, &step.measure, &step.correct_on_minus)
                })
            })
            .collect();
        let phase = closed[0].inner(&channel[0]);
        let deviation = closed
            .iter()
            .zip(&channel)
            .map(|(c, m)| libm::sqrt(c.scaled(phase).add(&m.scaled(Complex64::new(-1.0, 0.0))).norm_sqr()))
            .fold(0.0, f64::max);
        if deviation > OPERATOR_TOLERANCE {
            return Err(OracleError::ClosedForm { triple: t, deviation });
        }
        worst = worst.max(deviation);
        states = channel;
    }
    Ok(worst)
}
