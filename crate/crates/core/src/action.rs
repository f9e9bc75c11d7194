//! Logical Clifford actions: how a logical operation conjugates the logical
//! Pauli basis.
//!
//! An action on `k` logical qubits is stored as the `2k` images of
//! `X̄_1, Z̄_1, …, X̄_k, Z̄_k`, each a Hermitian Pauli on `k` qubits whose
//! rendered sign is `±`. Images follow `W P W†`, so `S` maps `X̄ ↦ +Ȳ`.
//!
//! Symplectic vectors of logical Paulis use the interleaved layout
//! `(x_1, z_1, …, x_k, z_k)`; column `c` of [`LogicalAction::symplectic`] is
//! the image of basis element `c`.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bits::BitVec;
use crate::gf2::GF2Matrix;
use crate::pauli::{Letter, PauliOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("expected {expected} images, found {found}")]
    ImageCount { expected: usize, found: usize },
    #[error("image {0} has phase ±i")]
    PhaseConvention(usize),
    #[error("image {index} acts on {found} qubits, expected {expected}")]
    ImageSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("action is not symplectic")]
    NotSymplectic,
    #[error("actions have different symplectic parts")]
    SymplecticMismatch,
    #[error("actions act on {0} and {1} logical qubits")]
    QubitMismatch(usize, usize),
}

/// Axis of a `√t`-type operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SqrtAxis {
    X,
    Y,
    Z,
}

/// `Root` is `√t`; `TimesPauli` is `t·√t`, equal to `√t†` up to global phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SqrtVariant {
    Root,
    TimesPauli,
}

/// One-qubit action types from the rewiring classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InducedType {
    Identity,
    Sqrt(SqrtAxis),
    /// Anything outside the four table rows.
    Other,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LogicalAction {
    images: Vec<PauliOperator>,
}

fn basis_op(k: usize, index: usize) -> PauliOperator {
    let letter = if index.is_multiple_of(2) { Letter::X } else { Letter::Z };
    PauliOperator::single(k, index / 2, letter)
}

/// Interleaved symplectic vector `(x_1, z_1, …)` of a logical Pauli.
pub fn interleaved(p: &PauliOperator) -> BitVec {
    BitVec::from_bools((0..p.num_qubits()).flat_map(|j| [p.x().get(j), p.z().get(j)]))
}

/// Inverse of [`interleaved`], sign `+`.
pub fn from_interleaved(v: &BitVec) -> PauliOperator {
    let k = v.len() / 2;
    let x = BitVec::from_bools((0..k).map(|j| v.get(2 * j)));
    let z = BitVec::from_bools((0..k).map(|j| v.get(2 * j + 1)));
    PauliOperator::positive_from_vectors(x, z).expect("same length")
}

/// The standard pairing `J` in the interleaved layout.
pub fn symplectic_form(k: usize) -> GF2Matrix {
    let mut j = GF2Matrix::zeros(2 * k, 2 * k);
    for q in 0..k {
        j.set(2 * q, 2 * q + 1, true);
        j.set(2 * q + 1, 2 * q, true);
    }
    j
}

impl LogicalAction {
    pub fn identity(k: usize) -> Self {
        Self {
            images: (0..2 * k).map(|i| basis_op(k, i)).collect(),
        }
    }

    pub fn from_images(k: usize, images: Vec<PauliOperator>) -> Result<Self, ActionError> {
        if images.len() != 2 * k {
            return Err(ActionError::ImageCount {
                expected: 2 * k,
                found: images.len(),
            });
        }
        for (index, img) in images.iter().enumerate() {
            if img.num_qubits() != k {
                return Err(ActionError::ImageSize {
                    index,
                    expected: k,
                    found: img.num_qubits(),
                });
            }
            if !img.is_hermitian() {
                return Err(ActionError::PhaseConvention(index));
            }
        }
        Ok(Self { images })
    }

    /// Rebuilds an action from its symplectic matrix and sign bits.
    pub fn from_symplectic(matrix: &GF2Matrix, signs: &[bool]) -> Result<Self, ActionError> {
        let size = matrix.num_rows();
        if matrix.num_cols() != size || !size.is_multiple_of(2) || signs.len() != size {
            return Err(ActionError::ImageCount {
                expected: size,
                found: signs.len(),
            });
        }
        let t = matrix.transpose();
        let images = t
            .rows()
            .iter()
            .zip(signs)
            .map(|(col, &neg)| {
                let p = from_interleaved(col);
                if neg {
                    p.negated()
                } else {
                    p
                }
            })
            .collect();
        let action = Self::from_images(size / 2, images)?;
        if !action.is_symplectic() {
            return Err(ActionError::NotSymplectic);
        }
        Ok(action)
    }

    pub fn k(&self) -> usize {
        self.images.len() / 2
    }

    pub fn images(&self) -> &[PauliOperator] {
        &self.images
    }

    pub fn image_x(&self, j: usize) -> &PauliOperator {
        &self.images[2 * j]
    }

    pub fn image_z(&self, j: usize) -> &PauliOperator {
        &self.images[2 * j + 1]
    }

    /// `2k × 2k` matrix whose column `c` is the image of basis element `c`.
    pub fn symplectic(&self) -> GF2Matrix {
        let cols: Vec<BitVec> = self.images.iter().map(interleaved).collect();
        GF2Matrix::from_rows(2 * self.k(), cols)
            .expect("images are 2k long")
            .transpose()
    }

    /// `true` for each image carrying a minus sign.
    pub fn signs(&self) -> Vec<bool> {
        self.images.iter().map(PauliOperator::is_negative).collect()
    }

    /// `AᵀJA = J` over GF(2).
    pub fn is_symplectic(&self) -> bool {
        let a = self.symplectic();
        let j = symplectic_form(self.k());
        let lhs = a
            .transpose()
            .mul(&j)
            .and_then(|m| m.mul(&a))
            .expect("square matrices of equal size");
        lhs == j
    }

    /// Image of an arbitrary logical Pauli, phase included.
    pub fn apply(&self, p: &PauliOperator) -> PauliOperator {
        assert_eq!(p.num_qubits(), self.k(), "logical Pauli size mismatch");
        let mut out = PauliOperator::identity(self.k()).times_i_pow(p.phase());
        for j in p.x().ones() {
            out = &out * self.image_x(j);
        }
        for j in p.z().ones() {
            out = &out * self.image_z(j);
        }
        out
    }

    /// The action of performing `self` and then `next`.
    pub fn then(&self, next: &LogicalAction) -> LogicalAction {
        assert_eq!(self.k(), next.k(), "logical qubit count mismatch");
        LogicalAction {
            images: self.images.iter().map(|img| next.apply(img)).collect(),
        }
    }

    /// Follows `self` with the logical Pauli `p` (signs flip on anticommuting
    /// images).
    pub fn then_pauli(&self, p: &PauliOperator) -> LogicalAction {
        LogicalAction {
            images: self
                .images
                .iter()
                .map(|img| {
                    if img.anticommutes(p) {
                        img.negated()
                    } else {
                        img.clone()
                    }
                })
                .collect(),
        }
    }

    /// The logical Pauli `P` (sign `+`) with `self.then_pauli(P) == target`.
    pub fn pauli_correction_to(&self, target: &LogicalAction) -> Result<PauliOperator, ActionError> {
        if self.k() != target.k() {
            return Err(ActionError::QubitMismatch(self.k(), target.k()));
        }
        if self.symplectic() != target.symplectic() {
            return Err(ActionError::SymplecticMismatch);
        }
        let k = self.k();
        // Row c: c(P, image_c) = Ω(image_c, v) written against v in interleaved layout.
        let j = symplectic_form(k);
        let rows: Vec<BitVec> = self
            .images
            .iter()
            .map(|img| j.mul_vec(&interleaved(img)).expect("2k vector"))
            .collect();
        let system = GF2Matrix::from_rows(2 * k, rows).expect("2k columns");
        let rhs = BitVec::from_bools(
            self.images
                .iter()
                .zip(&target.images)
                .map(|(a, b)| a.is_negative() != b.is_negative()),
        );
        let solution = system
            .solve_affine(&rhs)
            .expect("sizes match")
            .ok_or(ActionError::NotSymplectic)?;
        Ok(from_interleaved(&solution.particular))
    }

    /// Table-row classification of the action on logical qubit `q`, provided
    /// every other logical qubit is fixed exactly.
    pub fn induced_type(&self, q: usize) -> InducedType {
        let k = self.k();
        for j in (0..k).filter(|&j| j != q) {
            if self.image_x(j) != &basis_op(k, 2 * j) || self.image_z(j) != &basis_op(k, 2 * j + 1) {
                return InducedType::Other;
            }
        }
        let local = |p: &PauliOperator| -> Option<Letter> {
            let mut rest = p.clone();
            rest.set_letter(q, Letter::I);
            rest.is_identity_up_to_phase().then(|| p.letter(q))
        };
        match (local(self.image_x(q)), local(self.image_z(q))) {
            (Some(Letter::X), Some(Letter::Z)) => InducedType::Identity,
            (Some(Letter::X), Some(Letter::Y)) => InducedType::Sqrt(SqrtAxis::X),
            (Some(Letter::Y), Some(Letter::Z)) => InducedType::Sqrt(SqrtAxis::Z),
            (Some(Letter::Z), Some(Letter::X)) => InducedType::Sqrt(SqrtAxis::Y),
            _ => InducedType::Other,
        }
    }

    /// For a `√t`-type action on qubit `q`, whether it is `√t` or `t·√t`.
    pub fn sqrt_variant(&self, q: usize) -> Option<(SqrtAxis, SqrtVariant)> {
        let InducedType::Sqrt(axis) = self.induced_type(q) else {
            return None;
        };
        [SqrtVariant::Root, SqrtVariant::TimesPauli]
            .into_iter()
            .find(|&v| *self == LogicalAction::sqrt(self.k(), q, axis, v))
            .map(|v| (axis, v))
    }

    /// Exact one-qubit action on qubit `q`: images of `X̄_q` and `Z̄_q` given
    /// as (letter, negative) pairs.
    pub fn single_qubit(k: usize, q: usize, x_image: (Letter, bool), z_image: (Letter, bool)) -> Self {
        let mut action = Self::identity(k);
        let make = |(letter, neg): (Letter, bool)| {
            let p = PauliOperator::single(k, q, letter);
            if neg {
                p.negated()
            } else {
                p
            }
        };
        action.images[2 * q] = make(x_image);
        action.images[2 * q + 1] = make(z_image);
        action
    }

    /// `√t` or `t·√t` on qubit `q`.
    pub fn sqrt(k: usize, q: usize, axis: SqrtAxis, variant: SqrtVariant) -> Self {
        let dagger = variant == SqrtVariant::TimesPauli;
        match axis {
            // √X: Z ↦ -Y
            SqrtAxis::X => Self::single_qubit(k, q, (Letter::X, false), (Letter::Y, !dagger)),
            // √Z = S: X ↦ +Y
            SqrtAxis::Z => Self::single_qubit(k, q, (Letter::Y, dagger), (Letter::Z, false)),
            // √Y: X ↦ -Z, Z ↦ +X
            SqrtAxis::Y => Self::single_qubit(k, q, (Letter::Z, !dagger), (Letter::X, dagger)),
        }
    }

    /// `CNOT(control → target)`.
    pub fn cnot(k: usize, control: usize, target: usize) -> Self {
        let mut action = Self::identity(k);
        action.images[2 * control] = &basis_op(k, 2 * control) * &basis_op(k, 2 * target);
        action.images[2 * target + 1] = &basis_op(k, 2 * control + 1) * &basis_op(k, 2 * target + 1);
        action
    }
}

impl fmt::Display for LogicalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.k() {
            if j > 0 {
                f.write_str(", ")?;
            }
            write!(f, "X{j} ↦ {}, Z{j} ↦ {}", self.image_x(j), self.image_z(j))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LogicalAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogicalAction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;
    use alloc::vec;

    #[test]
    fn identity_round_trips_through_matrix() {
        let id = LogicalAction::identity(2);
        assert_eq!(id.symplectic(), GF2Matrix::identity(4));
        assert_eq!(id.signs(), vec![false; 4]);
        assert_eq!(
            LogicalAction::from_symplectic(&id.symplectic(), &id.signs()).unwrap(),
            id
        );
    }

    #[test]
    fn sqrt_images() {
        let sx = LogicalAction::sqrt(1, 0, SqrtAxis::X, SqrtVariant::Root);
        assert_eq!(sx.image_z(0), &pauli("-Y"));
        let s = LogicalAction::sqrt(1, 0, SqrtAxis::Z, SqrtVariant::Root);
        assert_eq!(s.image_x(0), &pauli("+Y"));
        let sy = LogicalAction::sqrt(1, 0, SqrtAxis::Y, SqrtVariant::Root);
        assert_eq!(sy.image_x(0), &pauli("-Z"));
        assert_eq!(sy.image_z(0), &pauli("+X"));
        for axis in [SqrtAxis::X, SqrtAxis::Y, SqrtAxis::Z] {
            let a = LogicalAction::sqrt(1, 0, axis, SqrtVariant::Root);
            assert!(a.is_symplectic());
            assert_eq!(a.sqrt_variant(0), Some((axis, SqrtVariant::Root)));
            let d = LogicalAction::sqrt(1, 0, axis, SqrtVariant::TimesPauli);
            assert_eq!(d.sqrt_variant(0), Some((axis, SqrtVariant::TimesPauli)));
            // √t · √t† = I
            assert_eq!(a.then(&d), LogicalAction::identity(1));
        }
    }

    #[test]
    fn cnot_composes_to_identity() {
        let c = LogicalAction::cnot(2, 0, 1);
        assert!(c.is_symplectic());
        assert_eq!(c.then(&c), LogicalAction::identity(2));
        assert_eq!(c.image_x(0), &pauli("XX"));
        assert_eq!(c.image_z(1), &pauli("ZZ"));
    }

    #[test]
    fn y_image_under_s_then_s() {
        // S² = Z: X ↦ -X.
        let s = LogicalAction::sqrt(1, 0, SqrtAxis::Z, SqrtVariant::Root);
        let z = s.then(&s);
        assert_eq!(z.image_x(0), &pauli("-X"));
        assert_eq!(z.image_z(0), &pauli("+Z"));
    }

    #[test]
    fn pauli_correction_fixes_signs() {
        let sy = LogicalAction::sqrt(1, 0, SqrtAxis::Y, SqrtVariant::Root);
        let h = LogicalAction::single_qubit(1, 0, (Letter::Z, false), (Letter::X, false));
        let p = sy.pauli_correction_to(&h).unwrap();
        assert_eq!(sy.then_pauli(&p), h);
        let s = LogicalAction::sqrt(1, 0, SqrtAxis::Z, SqrtVariant::Root);
        assert_eq!(s.pauli_correction_to(&h), Err(ActionError::SymplecticMismatch));
    }

    #[test]
    fn non_symplectic_rejected() {
        let m = GF2Matrix::from_u8_rows(&[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(
            LogicalAction::from_symplectic(&m, &[false, false]),
            Err(ActionError::NotSymplectic)
        );
    }

    #[test]
    fn classification_table_rows() {
        assert_eq!(LogicalAction::identity(1).induced_type(0), InducedType::Identity);
        let swapish = LogicalAction::single_qubit(1, 0, (Letter::Z, false), (Letter::X, false));
        assert_eq!(swapish.induced_type(0), InducedType::Sqrt(SqrtAxis::Y));
        // H has the √Y shape but is neither √Y nor Y·√Y.
        assert_eq!(swapish.sqrt_variant(0), None);
        let cz = LogicalAction::cnot(2, 0, 1);
        assert_eq!(cz.induced_type(0), InducedType::Other);
    }
}
