use alloc::vec::Vec;

use super::program::{Gate, GateProgram};
use crate::action::{ActionError, LogicalAction};
use crate::pauli::Letter;

struct Sweep {
    k: usize,
    current: LogicalAction,
    applied: Vec<Gate>,
}

impl Sweep {
    fn push(&mut self, gate: Gate) {
        self.current = self.current.then(&gate.action(self.k));
        self.applied.push(gate);
    }

    fn letter(&self, image: usize, q: usize) -> Letter {
        self.current.images()[image].letter(q)
    }

    /// Turns the letter of `image` on each qubit `q ≥ from` into `want`
    /// with single-qubit H/S gates.
    fn align(&mut self, image: usize, from: usize, want: Letter) {
        for q in from..self.k {
            let gates: &[Gate] = match (self.letter(image, q), want) {
                (Letter::I, _) => &[],
                (a, b) if a == b => &[],
                (Letter::Z, Letter::X) | (Letter::X, Letter::Z) => &[Gate::H(q)],
                (Letter::Y, Letter::X) => &[Gate::S(q)],
                (Letter::Y, Letter::Z) => &[Gate::S(q), Gate::H(q)],
                _ => unreachable!("only X and Z are targeted"),
            };
            for &g in gates {
                self.push(g);
            }
        }
    }
}

/// A program over `{H, S, CNOT}` plus trailing Paulis whose action equals
/// `action` exactly.
pub fn decompose_clifford(action: &LogicalAction) -> Result<GateProgram, ActionError> {
    if !action.is_symplectic() {
        return Err(ActionError::NotSymplectic);
    }
    let k = action.k();
    let mut sweep = Sweep {
        k,
        current: action.clone(),
        applied: Vec::new(),
    };
    for j in 0..k {
        let (xj, zj) = (2 * j, 2 * j + 1);
        // Image of X_j becomes X_j.
        sweep.align(xj, j, Letter::X);
        if sweep.letter(xj, j) == Letter::I {
            let l = (j + 1..k)
                .find(|&l| sweep.letter(xj, l) != Letter::I)
                .expect("symplectic image has support beyond finished qubits");
            sweep.push(Gate::Cnot(l, j));
        }
        for l in j + 1..k {
            if sweep.letter(xj, l) != Letter::I {
                sweep.push(Gate::Cnot(j, l));
            }
        }
        // Image of Z_j anticommutes with X_j, so it carries Y or Z on j.
        if sweep.letter(zj, j) == Letter::Y {
            for g in [Gate::H(j), Gate::S(j), Gate::H(j)] {
                sweep.push(g);
            }
        }
        sweep.align(zj, j + 1, Letter::Z);
        for l in j + 1..k {
            if sweep.letter(zj, l) != Letter::I {
                sweep.push(Gate::Cnot(l, j));
            }
        }
    }
    // action · G = P (a Pauli), so action = P · G⁻¹.
    let mut gates: Vec<Gate> = sweep.applied.iter().rev().map(Gate::inverse).collect();
    let without_fixup = GateProgram {
        k,
        gates: gates.clone(),
    }
    .action();
    let fixup = without_fixup.pauli_correction_to(action)?;
    for q in 0..k {
        match fixup.letter(q) {
            Letter::I => {}
            Letter::X => gates.push(Gate::X(q)),
            Letter::Y => gates.push(Gate::Y(q)),
            Letter::Z => gates.push(Gate::Z(q)),
        }
    }
    Ok(GateProgram { k, gates })
}
