//! n-qubit Pauli operators in symplectic form with an exact global phase.
//!
//! An operator is stored as `i^phase · X^x · Z^z`, the X-part acting after the
//! Z-part on each qubit. Under this convention the single-qubit `Y` is
//! `i·X·Z`, so the string `"+Y"` has `phase = 1` and `x = z = (1)`.
//!
//! Strings put qubit 0 leftmost and carry an optional sign prefix
//! (`+`, `-`, `+i`, `-i`). The sign of a rendered string is the phase that
//! remains once every `X·Z` pair has been rewritten as `-i·Y`.

use alloc::string::String;
use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use thiserror::Error;

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("empty Pauli string")]
    Empty,
    #[error("invalid character {found:?} at position {position}")]
    InvalidChar { position: usize, found: char },
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
}

/// A single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NONTRIVIAL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliOperator {
    phase: u8,
    x: BitVec,
    z: BitVec,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    /// Raw constructor: `i^phase · X^x · Z^z`.
    pub fn from_parts(phase: u8, x: BitVec, z: BitVec) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::DimensionMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { phase: phase % 4, x, z })
    }

    /// `letter` on qubit `q`, identity elsewhere, sign `+`.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    /// Builds `i^{α_X·α_Z} X_{α_X} Z_{α_Z}` with the inner product taken over
    /// GF(2). The result always squares to `+I`.
    pub fn hermitian_from_vectors(alpha_x: &BitVec, alpha_z: &BitVec) -> Result<Self, PauliError> {
        if alpha_x.len() != alpha_z.len() {
            return Err(PauliError::DimensionMismatch {
                left: alpha_x.len(),
                right: alpha_z.len(),
            });
        }
        let phase = u8::from(alpha_x.dot(alpha_z));
        Self::from_parts(phase, alpha_x.clone(), alpha_z.clone())
    }

    /// The Hermitian operator with the given support whose rendered sign is `+`.
    pub fn positive_from_vectors(x: BitVec, z: BitVec) -> Result<Self, PauliError> {
        let y = (x.overlap(&z) % 4) as u8;
        Self::from_parts(y, x, z)
    }

    /// Splits a symplectic row `(x | z)` of length `2n` into an operator with
    /// rendered sign `+`.
    pub fn from_symplectic(row: &BitVec) -> Self {
        let n = row.len() / 2;
        Self::positive_from_vectors(row.slice(0, n), row.slice(n, 2 * n)).expect("halves have equal length")
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    /// Exponent of `i` in the internal `i^phase X^x Z^z` form.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    #[inline]
    pub fn x(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z(&self) -> &BitVec {
        &self.z
    }

    /// Exponent of `i` in front of the rendered letter string (0 `+`, 1 `+i`,
    /// 2 `-`, 3 `-i`).
    pub fn sign_exponent(&self) -> u8 {
        let y = (self.x.overlap(&self.z) % 4) as u8;
        (self.phase + 4 - y) % 4
    }

    /// True when the operator is Hermitian, i.e. its rendered sign is `±1`.
    pub fn is_hermitian(&self) -> bool {
        self.sign_exponent().is_multiple_of(2)
    }

    /// True when the rendered sign is `-`.
    pub fn is_negative(&self) -> bool {
        self.sign_exponent() == 2
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Overwrites qubit `q` with `letter`, keeping the rendered sign.
    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        let sign = self.sign_exponent();
        let (x, z) = letter.bits();
        self.x.set(q, x);
        self.z.set(q, z);
        let y = (self.x.overlap(&self.z) % 4) as u8;
        self.phase = (sign + y) % 4;
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.phase = (out.phase + 2) % 4;
        out
    }

    /// Multiplies the operator by `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        let mut out = self.clone();
        out.phase = (out.phase + k) % 4;
        out
    }

    /// Same support, rendered sign `+`.
    pub fn unsigned(&self) -> Self {
        Self::positive_from_vectors(self.x.clone(), self.z.clone()).expect("same length")
    }

    /// Exact product `self · other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<Self, PauliError> {
        self.check_dims(other)?;
        // Z^{z1} X^{x2} = (-1)^{z1·x2} X^{x2} Z^{z1}
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        Ok(Self {
            phase: (self.phase + other.phase + swap) % 4,
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// `c(self, other)`: `true` iff the operators anticommute.
    ///
    /// Panics on a qubit-count mismatch; use [`Self::try_anticommutes`] for a
    /// checked variant.
    pub fn anticommutes(&self, other: &PauliOperator) -> bool {
        self.try_anticommutes(other).expect("Pauli dimension mismatch")
    }

    pub fn try_anticommutes(&self, other: &PauliOperator) -> Result<bool, PauliError> {
        self.check_dims(other)?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    pub fn commutes(&self, other: &PauliOperator) -> bool {
        !self.anticommutes(other)
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Pure X-type or pure Z-type (identity counts as both).
    pub fn is_css_type(&self) -> bool {
        self.x.is_zero() || self.z.is_zero()
    }

    /// The row `(x | z)` of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn letters(&self) -> String {
        (0..self.num_qubits()).map(|q| self.letter(q).as_char()).collect()
    }

    fn check_dims(&self, other: &PauliOperator) -> Result<(), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::DimensionMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }
}

impl Mul for &PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        self.multiply(rhs).expect("Pauli dimension mismatch")
    }
}

impl FromStr for PauliOperator {
    type Err = PauliError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (sign, body, offset) = if let Some(rest) = text.strip_prefix("+i") {
            (1u8, rest, 2)
        } else if let Some(rest) = text.strip_prefix("-i") {
            (3, rest, 2)
        } else if let Some(rest) = text.strip_prefix('+') {
            (0, rest, 1)
        } else if let Some(rest) = text.strip_prefix('-') {
            (2, rest, 1)
        } else {
            (0, text, 0)
        };
        if body.is_empty() {
            return Err(PauliError::Empty);
        }
        let n = body.chars().count();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (q, ch) in body.chars().enumerate() {
            let letter = match ch {
                'I' => Letter::I,
                'X' => Letter::X,
                'Y' => Letter::Y,
                'Z' => Letter::Z,
                found => {
                    return Err(PauliError::InvalidChar {
                        position: offset + q,
                        found,
                    })
                }
            };
            let (bx, bz) = letter.bits();
            x.set(q, bx);
            z.set(q, bz);
        }
        let y = (x.overlap(&z) % 4) as u8;
        Self::from_parts((sign + y) % 4, x, z)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign_exponent() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(sign)?;
        f.write_str(&self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

/// Convenience parser for literals known to be valid.
pub fn pauli(text: &str) -> PauliOperator {
    text.parse()
        .unwrap_or_else(|e| panic!("invalid Pauli literal {text:?}: {e}"))
}
