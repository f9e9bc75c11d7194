//! Built-in codes.
//!
//! The Reed-Muller family indexes qubit `q` by the nonzero 4-bit string
//! `v = q + 1`; bit `i` of `v` is `v_i`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Code, GaugeChoice, LogicalPair, StabilizerCode, SubsystemCode};
use crate::bits::BitVec;
use crate::gf2::GF2Matrix;
use crate::pauli::{pauli, PauliOperator};

/// Catalog names accepted by [`by_name`], in listing order.
pub const NAMES: [&str; 6] = ["toy2", "ff4", "five", "steane", "qrm15", "qrm15-parent"];

/// Alternative spellings accepted by [`by_name`].
const ALIASES: [(&str, &str); 6] = [
    ("[[4,2,2]]", "ff4"),
    ("[[5,1,3]]", "five"),
    ("[[7,1,3]]", "steane"),
    ("[[15,1,3]]", "qrm15"),
    ("[[15,7,3]]", "qrm15-parent"),
    ("qrm4", "qrm15"),
];

pub fn by_name(name: &str) -> Option<Code> {
    let name = ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, canonical)| canonical);
    Some(match name {
        "toy2" => Code::Stabilizer(toy2()),
        "ff4" => Code::Stabilizer(four_two_two()),
        "five" => Code::Stabilizer(five_qubit()),
        "steane" => Code::Stabilizer(steane()),
        "qrm15" => Code::Stabilizer(qrm15()),
        "qrm15-parent" => Code::Subsystem(qrm15_parent()),
        _ => return None,
    })
}

fn paulis(texts: &[&str]) -> Vec<PauliOperator> {
    texts.iter().map(|t| pauli(t)).collect()
}

/// `⟨ZZ⟩` with `X_L = XX`, `Z_L = ZI`; distance 1. Worked-example code.
pub fn toy2() -> StabilizerCode {
    StabilizerCode::new(
        "toy2",
        2,
        paulis(&["+ZZ"]),
        vec![LogicalPair::new(pauli("+XX"), pauli("+ZI"))],
    )
}

/// The `[[4,2,2]]` code.
pub fn four_two_two() -> StabilizerCode {
    StabilizerCode::new(
        "ff4",
        4,
        paulis(&["+XXXX", "+ZZZZ"]),
        vec![
            LogicalPair::new(pauli("+XXII"), pauli("+ZIZI")),
            LogicalPair::new(pauli("+XIXI"), pauli("+ZZII")),
        ],
    )
}

/// The `[[5,1,3]]` code: cyclic shifts of `XZZXI`.
pub fn five_qubit() -> StabilizerCode {
    StabilizerCode::new(
        "five",
        5,
        paulis(&["+XZZXI", "+IXZZX", "+XIXZZ", "+ZXIXZ"]),
        vec![LogicalPair::new(pauli("+XXXXX"), pauli("+ZZZZZ"))],
    )
}

fn support_op(n: usize, support: impl Fn(usize) -> bool, letter: char) -> PauliOperator {
    let text: String = (0..n).map(|q| if support(q) { letter } else { 'I' }).collect();
    pauli(&text)
}

/// Steane `[[7,1,3]]`: CSS from the `[7,4]` Hamming code, qubit `q` in check
/// `i` when bit `i` of `q + 1` is set.
pub fn steane() -> StabilizerCode {
    let mut generators = Vec::new();
    for letter in ['X', 'Z'] {
        for i in 0..3 {
            generators.push(support_op(7, |q| (q + 1) >> i & 1 == 1, letter));
        }
    }
    StabilizerCode::new(
        "steane",
        7,
        generators,
        vec![LogicalPair::new(pauli("+XXXXXXX"), pauli("+ZZZZZZZ"))],
    )
}

fn rm_bit(q: usize, i: usize) -> bool {
    (q + 1) >> i & 1 == 1
}

/// Weight-4 Z-type gauge operators on `{v : v_i = v_j = 1}`, `i < j`.
fn rm_z_gauges() -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            out.push(support_op(15, |q| rm_bit(q, i) && rm_bit(q, j), 'Z'));
        }
    }
    out
}

/// `[[15,7,3]]` parent: four weight-8 X checks and four weight-8 Z checks,
/// one logical qubit `(X^{⊗15}, Z^{⊗15})`, and six gauge qubits whose Z
/// members are [`rm_z_gauges`]. The X partners are solved for over GF(2).
pub fn qrm15_parent() -> SubsystemCode {
    let mut generators = Vec::new();
    for letter in ['X', 'Z'] {
        for i in 0..4 {
            generators.push(support_op(15, |q| rm_bit(q, i), letter));
        }
    }
    let z_gauges = rm_z_gauges();
    let logical = LogicalPair::new(pauli(&"X".repeat(15)), pauli(&"Z".repeat(15)));

    // Constraints on the X support of each partner: even overlap with every
    // Z check and with Z_L, overlap δ_{jl} with Z gauge l.
    let mut constraints: Vec<BitVec> = generators[4..].iter().map(|g| g.z().clone()).collect();
    constraints.push(logical.z.z().clone());
    constraints.extend(z_gauges.iter().map(|g| g.z().clone()));
    let system = GF2Matrix::from_rows(15, constraints).expect("all rows have 15 columns");
    let gauge_pairs = z_gauges
        .iter()
        .enumerate()
        .map(|(j, z)| {
            let rhs = BitVec::unit(system.num_rows(), 5 + j);
            let support = system
                .solve_affine(&rhs)
                .expect("rhs length matches")
                .expect("Reed-Muller gauge partner exists")
                .particular;
            let x = PauliOperator::positive_from_vectors(support, BitVec::zeros(15)).expect("same length");
            LogicalPair::new(x, z.clone())
        })
        .collect();

    SubsystemCode {
        base: StabilizerCode::new("qrm15-parent", 15, generators, vec![logical]),
        gauge_pairs,
    }
}

/// QRM(4) `[[15,1,3]]`, obtained by fixing all six Z gauges of the parent.
pub fn qrm15() -> StabilizerCode {
    let mut code = qrm15_parent()
        .gauge_fix(&[GaugeChoice::Z; 6])
        .expect("Z-fixing the Reed-Muller parent is valid");
    code.name = "qrm15".into();
    code
}

/// QRM(4) written down directly: X checks on `{v_i = 1}`, Z checks on
/// `{v_i = 1}` and `{v_i = v_j = 1}`. No gauge-fixing provenance.
pub fn qrm15_direct() -> StabilizerCode {
    let mut generators = Vec::new();
    for letter in ['X', 'Z'] {
        for i in 0..4 {
            generators.push(support_op(15, |q| rm_bit(q, i), letter));
        }
    }
    generators.extend(rm_z_gauges());
    StabilizerCode::new(
        "qrm15-direct",
        15,
        generators,
        vec![LogicalPair::new(pauli(&"X".repeat(15)), pauli(&"Z".repeat(15)))],
    )
}

/// One bare qubit: no stabilizers, `k = 1`, distance 1.
pub fn trivial_qubit() -> StabilizerCode {
    StabilizerCode::new(
        "trivial",
        1,
        Vec::new(),
        vec![LogicalPair::new(pauli("+X"), pauli("+Z"))],
    )
}
