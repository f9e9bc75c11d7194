//! Signed abelian Pauli groups in canonical (fully reduced echelon) form.

use alloc::vec::Vec;

use crate::bits::BitVec;
use crate::pauli::PauliOperator;

/// The group generated by a list of commuting Hermitian Paulis, kept as a
/// reduced echelon basis on the symplectic rows `(x | z)`. Every basis element
/// is an actual product of the input generators, so phases are exact.
///
/// Two generator lists span the same signed group iff their canonical bases
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    basis: Vec<(usize, PauliOperator)>,
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: &[PauliOperator]) -> Self {
        let mut group = Self { n, basis: Vec::new() };
        for g in generators {
            group.insert(g.clone());
        }
        group.basis.sort_by_key(|(pivot, _)| *pivot);
        group
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn canonical_generators(&self) -> impl Iterator<Item = &PauliOperator> {
        self.basis.iter().map(|(_, p)| p)
    }

    fn insert(&mut self, p: PauliOperator) {
        let (reduced, _) = self.reduce(&p);
        let Some(pivot) = reduced.symplectic().first_one() else {
            return;
        };
        for (_, row) in &mut self.basis {
            if row.symplectic().get(pivot) {
                *row = &*row * &reduced;
            }
        }
        self.basis.push((pivot, reduced));
    }

    /// Multiplies `p` by basis elements until no pivot bit remains set.
    /// Returns the remainder and the group element that was divided out, so
    /// that `p = element · remainder` up to the sign bookkeeping captured in
    /// the remainder's phase.
    fn reduce(&self, p: &PauliOperator) -> (PauliOperator, PauliOperator) {
        let mut rest = p.clone();
        let mut element = PauliOperator::identity(p.num_qubits());
        for (pivot, row) in &self.basis {
            if rest.symplectic().get(*pivot) {
                rest = row * &rest;
                element = &element * row;
            }
        }
        (rest, element)
    }

    /// If `support` (a `(x | z)` row) is the support of a group element,
    /// returns that element with its exact sign.
    pub fn element_with_support(&self, support: &BitVec) -> Option<PauliOperator> {
        let probe = PauliOperator::from_symplectic(support);
        let (rest, element) = self.reduce(&probe);
        rest.is_identity_up_to_phase().then_some(element)
    }

    /// True when `p`'s support lies in the group, ignoring sign.
    pub fn contains_up_to_sign(&self, p: &PauliOperator) -> bool {
        self.element_with_support(&p.symplectic()).is_some()
    }

    /// True when `p` itself (sign included) is a group element.
    pub fn contains(&self, p: &PauliOperator) -> bool {
        self.element_with_support(&p.symplectic()).is_some_and(|e| e == *p)
    }

    pub fn commutes_with(&self, p: &PauliOperator) -> bool {
        self.basis.iter().all(|(_, g)| g.commutes(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;
    #[test]
    fn canonical_form_ignores_generator_basis() {
        let a = StabilizerGroup::new(4, &[pauli("XXXX"), pauli("ZZZZ")]);
        let b = StabilizerGroup::new(4, &[pauli("ZZZZ"), &pauli("XXXX") * &pauli("ZZZZ")]);
        assert_eq!(a, b);
        let c = StabilizerGroup::new(4, &[pauli("-XXXX"), pauli("ZZZZ")]);
        assert_ne!(a, c);
    }

    #[test]
    fn dependent_generators_are_dropped() {
        let g = StabilizerGroup::new(3, &[pauli("ZZI"), pauli("IZZ"), pauli("ZIZ")]);
        assert_eq!(g.rank(), 2);
    }

    #[test]
    fn element_signs_are_exact() {
        let g = StabilizerGroup::new(2, &[pauli("XX"), pauli("ZZ")]);
        // XX · ZZ = (XZ)⊗(XZ) = (-iY)(-iY) = -YY
        assert!(g.contains(&pauli("-YY")));
        assert!(!g.contains(&pauli("+YY")));
        assert!(g.contains_up_to_sign(&pauli("+YY")));
        assert_eq!(g.element_with_support(&pauli("YY").symplectic()), Some(pauli("-YY")));
        assert_eq!(g.element_with_support(&pauli("XI").symplectic()), None);
    }
}
