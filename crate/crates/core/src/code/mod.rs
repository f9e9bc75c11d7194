//! Stabilizer and subsystem codes: representation, validation, gauge fixing,
//! and brute-force distance.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf2::{GF2Matrix, RowReducer};
use crate::pauli::PauliOperator;

pub mod catalog;
mod distance;

pub use distance::{distance_of_group, Distance, DistanceSearch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("gauge selection has {found} entries but the code has {available} gauge qubits")]
    TooManyGaugeChoices { found: usize, available: usize },
    #[error("gauge fixing needs at least one non-skip choice")]
    NothingFixed,
    #[error("invalid code: {0}")]
    Invalid(ValidationReport),
}

/// A logical (or gauge) qubit: an anticommuting pair of representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalPair {
    pub x: PauliOperator,
    pub z: PauliOperator,
}

impl LogicalPair {
    pub fn new(x: PauliOperator, z: PauliOperator) -> Self {
        Self { x, z }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCode {
    pub name: String,
    pub n: usize,
    pub generators: Vec<PauliOperator>,
    pub logicals: Vec<LogicalPair>,
    /// Indices of generators introduced by fixing gauge qubits of a parent
    /// subsystem code. Empty for codes not built by [`SubsystemCode::gauge_fix`].
    pub gauge_fixed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemCode {
    pub base: StabilizerCode,
    pub gauge_pairs: Vec<LogicalPair>,
}

/// Either kind of code, as found in code files and the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Code {
    Stabilizer(StabilizerCode),
    Subsystem(SubsystemCode),
}

/// Which member of a gauge pair to promote to a stabilizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaugeChoice {
    X,
    Z,
    Skip,
}

/// Names a single operator inside a code for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorRef {
    Generator(usize),
    LogicalX(usize),
    LogicalZ(usize),
    GaugeX(usize),
    GaugeZ(usize),
}

impl fmt::Display for OperatorRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorRef::Generator(i) => write!(f, "stabilizer[{i}]"),
            OperatorRef::LogicalX(j) => write!(f, "logical_x[{j}]"),
            OperatorRef::LogicalZ(j) => write!(f, "logical_z[{j}]"),
            OperatorRef::GaugeX(j) => write!(f, "gauge_x[{j}]"),
            OperatorRef::GaugeZ(j) => write!(f, "gauge_z[{j}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    QubitCount {
        op: OperatorRef,
        expected: usize,
        found: usize,
    },
    NotHermitian(OperatorRef),
    GeneratorsAnticommute(usize, usize),
    DependentGenerators {
        rank: usize,
        count: usize,
    },
    /// `c(a, b)` was `found` where the code structure requires `expected`.
    Commutation {
        a: OperatorRef,
        b: OperatorRef,
        expected: bool,
        found: bool,
    },
    QubitBudget {
        generators: usize,
        logical: usize,
        gauge: usize,
        n: usize,
    },
    GaugeFixedIndex(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::QubitCount { op, expected, found } => {
                write!(f, "{op} acts on {found} qubits, expected {expected}")
            }
            Violation::NotHermitian(op) => write!(f, "{op} has phase ±i"),
            Violation::GeneratorsAnticommute(i, j) => {
                write!(f, "stabilizer[{i}] and stabilizer[{j}] anticommute")
            }
            Violation::DependentGenerators { rank, count } => {
                write!(f, "stabilizers are dependent: rank {rank} of {count}")
            }
            Violation::Commutation { a, b, expected, found } => write!(
                f,
                "c({a}, {b}) = {} but must be {}",
                u8::from(*found),
                u8::from(*expected)
            ),
            Violation::QubitBudget {
                generators,
                logical,
                gauge,
                n,
            } => write!(
                f,
                "{generators} stabilizers + {logical} logical + {gauge} gauge qubits != n = {n}"
            ),
            Violation::GaugeFixedIndex(i) => write!(f, "gauge_fixed index {i} is not a stabilizer"),
        }
    }
}

/// Outcome of one validation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: &'static str,
    pub violations: Vec<Violation>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.checks.iter().flat_map(|c| c.violations.iter())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.violations() {
            if !first {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if first {
            f.write_str("valid")?;
        }
        Ok(())
    }
}

impl StabilizerCode {
    pub fn new(name: impl Into<String>, n: usize, generators: Vec<PauliOperator>, logicals: Vec<LogicalPair>) -> Self {
        Self {
            name: name.into(),
            n,
            generators,
            logicals,
            gauge_fixed: Vec::new(),
        }
    }

    /// Number of logical qubits.
    pub fn k(&self) -> usize {
        self.logicals.len()
    }

    /// The check matrix `(M_X | M_Z)`.
    pub fn check_matrix(&self) -> GF2Matrix {
        GF2Matrix::from_rows(
            2 * self.n,
            self.generators.iter().map(PauliOperator::symplectic).collect(),
        )
        .expect("generator widths checked by validate")
    }

    /// Logical rows `(L_X^{(j)}, L_Z^{(j)})` in symplectic form.
    pub fn logical_rows(&self) -> Vec<(crate::bits::BitVec, crate::bits::BitVec)> {
        self.logicals
            .iter()
            .map(|l| (l.x.symplectic(), l.z.symplectic()))
            .collect()
    }

    /// True when every generator is purely X-type or purely Z-type.
    pub fn is_css(&self) -> bool {
        self.generators.iter().all(PauliOperator::is_css_type)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_parts(self, &[])
    }

    /// Brute-force distance up to `max_weight`.
    pub fn distance(&self, max_weight: usize) -> Distance {
        distance_of_group(self.n, &self.generators, &[], max_weight)
    }

    /// SHA-256 over a canonical text rendering of the code content (the name
    /// is not included).
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(format!("n={}\n", self.n).as_bytes());
        for g in &self.generators {
            hasher.update(format!("S {g}\n").as_bytes());
        }
        for l in &self.logicals {
            hasher.update(format!("L {} {}\n", l.x, l.z).as_bytes());
        }
        for i in &self.gauge_fixed {
            hasher.update(format!("F {i}\n").as_bytes());
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl SubsystemCode {
    pub fn num_gauge(&self) -> usize {
        self.gauge_pairs.len()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_parts(&self.base, &self.gauge_pairs)
    }

    /// Dressed distance: minimum weight of an operator commuting with the
    /// stabilizers but outside the stabilizer-plus-gauge group.
    pub fn dressed_distance(&self, max_weight: usize) -> Distance {
        let gauges: Vec<PauliOperator> = self
            .gauge_pairs
            .iter()
            .flat_map(|p| [p.x.clone(), p.z.clone()])
            .collect();
        distance_of_group(self.base.n, &self.base.generators, &gauges, max_weight)
    }

    /// Promotes the chosen member of each gauge pair to a stabilizer. Skipped
    /// pairs become logical qubits of the result, after the existing ones.
    /// Missing trailing choices count as `Skip`.
    pub fn gauge_fix(&self, choices: &[GaugeChoice]) -> Result<StabilizerCode, CodeError> {
        if choices.len() > self.gauge_pairs.len() {
            return Err(CodeError::TooManyGaugeChoices {
                found: choices.len(),
                available: self.gauge_pairs.len(),
            });
        }
        if choices.iter().all(|c| *c == GaugeChoice::Skip) {
            return Err(CodeError::NothingFixed);
        }
        let mut code = self.base.clone();
        let mut promoted = Vec::new();
        for (j, pair) in self.gauge_pairs.iter().enumerate() {
            match choices.get(j).copied().unwrap_or(GaugeChoice::Skip) {
                GaugeChoice::X => {
                    code.gauge_fixed.push(code.generators.len());
                    code.generators.push(pair.x.clone());
                }
                GaugeChoice::Z => {
                    code.gauge_fixed.push(code.generators.len());
                    code.generators.push(pair.z.clone());
                }
                GaugeChoice::Skip => promoted.push(pair.clone()),
            }
        }
        code.logicals.extend(promoted);
        let report = code.validate();
        if !report.is_valid() {
            return Err(CodeError::Invalid(report));
        }
        Ok(code)
    }
}

impl Code {
    pub fn name(&self) -> &str {
        &self.base().name
    }

    pub fn base(&self) -> &StabilizerCode {
        match self {
            Code::Stabilizer(c) => c,
            Code::Subsystem(s) => &s.base,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            Code::Stabilizer(c) => c.validate(),
            Code::Subsystem(s) => s.validate(),
        }
    }

    /// Distance for stabilizer codes, dressed distance for subsystem codes.
    pub fn distance(&self, max_weight: usize) -> Distance {
        match self {
            Code::Stabilizer(c) => c.distance(max_weight),
            Code::Subsystem(s) => s.dressed_distance(max_weight),
        }
    }
}

fn validate_parts(code: &StabilizerCode, gauges: &[LogicalPair]) -> ValidationReport {
    let n = code.n;
    let mut checks = Vec::new();

    let mut shape = Vec::new();
    let mut named: Vec<(OperatorRef, &PauliOperator)> = Vec::new();
    for (i, g) in code.generators.iter().enumerate() {
        named.push((OperatorRef::Generator(i), g));
    }
    for (j, l) in code.logicals.iter().enumerate() {
        named.push((OperatorRef::LogicalX(j), &l.x));
        named.push((OperatorRef::LogicalZ(j), &l.z));
    }
    for (j, l) in gauges.iter().enumerate() {
        named.push((OperatorRef::GaugeX(j), &l.x));
        named.push((OperatorRef::GaugeZ(j), &l.z));
    }
    for (op, p) in &named {
        if p.num_qubits() != n {
            shape.push(Violation::QubitCount {
                op: *op,
                expected: n,
                found: p.num_qubits(),
            });
        }
    }
    let budget = code.generators.len() + code.logicals.len() + gauges.len();
    if budget != n {
        shape.push(Violation::QubitBudget {
            generators: code.generators.len(),
            logical: code.logicals.len(),
            gauge: gauges.len(),
            n,
        });
    }
    for &i in &code.gauge_fixed {
        if i >= code.generators.len() {
            shape.push(Violation::GaugeFixedIndex(i));
        }
    }
    let shape_ok = named.iter().all(|(_, p)| p.num_qubits() == n);
    checks.push(CheckResult {
        check: "shape",
        violations: shape,
    });
    if !shape_ok {
        // Commutation checks are meaningless across mismatched sizes.
        return ValidationReport { checks };
    }

    checks.push(CheckResult {
        check: "hermitian",
        violations: named
            .iter()
            .filter(|(_, p)| !p.is_hermitian())
            .map(|(op, _)| Violation::NotHermitian(*op))
            .collect(),
    });

    let mut commuting = Vec::new();
    for i in 0..code.generators.len() {
        for j in i + 1..code.generators.len() {
            if code.generators[i].anticommutes(&code.generators[j]) {
                commuting.push(Violation::GeneratorsAnticommute(i, j));
            }
        }
    }
    checks.push(CheckResult {
        check: "stabilizers commute",
        violations: commuting,
    });

    let rank = RowReducer::new(code.generators.iter().map(PauliOperator::symplectic)).rank();
    checks.push(CheckResult {
        check: "stabilizers independent",
        violations: if rank == code.generators.len() {
            Vec::new()
        } else {
            alloc::vec![Violation::DependentGenerators {
                rank,
                count: code.generators.len(),
            }]
        },
    });

    // Every logical and gauge operator commutes with the stabilizers.
    let mut normalizer = Vec::new();
    for (op, p) in named.iter().skip(code.generators.len()) {
        for (i, g) in code.generators.iter().enumerate() {
            if p.anticommutes(g) {
                normalizer.push(Violation::Commutation {
                    a: *op,
                    b: OperatorRef::Generator(i),
                    expected: false,
                    found: true,
                });
            }
        }
    }
    checks.push(CheckResult {
        check: "logicals commute with stabilizers",
        violations: normalizer,
    });

    // Logical and gauge pairs together form a symplectic basis.
    let pairs: Vec<(usize, OperatorRef, &PauliOperator)> = named
        .iter()
        .skip(code.generators.len())
        .enumerate()
        .map(|(idx, (op, p))| (idx / 2, *op, *p))
        .collect();
    let mut pairing = Vec::new();
    for (i, (qa, a, pa)) in pairs.iter().enumerate() {
        for (qb, b, pb) in pairs.iter().skip(i + 1) {
            let is_x = |r: &OperatorRef| matches!(r, OperatorRef::LogicalX(_) | OperatorRef::GaugeX(_));
            let expected = qa == qb && is_x(a) != is_x(b);
            let found = pa.anticommutes(pb);
            if found != expected {
                pairing.push(Violation::Commutation {
                    a: *a,
                    b: *b,
                    expected,
                    found,
                });
            }
        }
    }
    checks.push(CheckResult {
        check: "logical pairing",
        violations: pairing,
    });

    ValidationReport { checks }
}

impl fmt::Display for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [[{}, {}]]", self.name, self.n, self.k())
    }
}

/// Renders generator lists compactly for reports.
pub fn render_generators(gens: &[PauliOperator]) -> Vec<String> {
    gens.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli;
    use alloc::vec;

    fn toy2() -> StabilizerCode {
        StabilizerCode::new(
            "toy2",
            2,
            vec![pauli("+ZZ")],
            vec![LogicalPair::new(pauli("+XX"), pauli("+ZI"))],
        )
    }

    #[test]
    fn toy2_is_valid() {
        assert!(toy2().validate().is_valid());
    }

    #[test]
    fn logical_z_replaced_by_stabilizer_fails_pairing() {
        let mut code = catalog::steane();
        code.logicals[0].z = code.generators[5].clone();
        let report = code.validate();
        assert!(!report.is_valid());
        assert!(report.violations().any(|v| matches!(
            v,
            Violation::Commutation {
                a: OperatorRef::LogicalX(0),
                b: OperatorRef::LogicalZ(0),
                expected: true,
                found: false
            }
        )));
    }

    #[test]
    fn anticommuting_generators_named() {
        let code = StabilizerCode::new(
            "bad",
            2,
            vec![pauli("XI")],
            vec![LogicalPair::new(pauli("ZI"), pauli("IZ"))],
        );
        let report = code.validate();
        assert!(!report.is_valid());
        let text = report.to_string();
        assert!(text.contains("logical_x[0]"), "{text}");
    }

    #[test]
    fn non_hermitian_generator_rejected() {
        let mut code = toy2();
        code.generators[0] = pauli("+iZZ");
        assert!(report_has(&code.validate(), |v| matches!(
            v,
            Violation::NotHermitian(OperatorRef::Generator(0))
        )));
    }

    #[test]
    fn dependent_generators_rejected() {
        let code = StabilizerCode::new(
            "dep",
            3,
            vec![pauli("ZZI"), pauli("ZZI")],
            vec![LogicalPair::new(pauli("XXX"), pauli("ZII"))],
        );
        assert!(report_has(&code.validate(), |v| matches!(
            v,
            Violation::DependentGenerators { rank: 1, count: 2 }
        )));
    }

    #[test]
    fn wrong_length_reported_without_panicking() {
        let mut code = toy2();
        code.logicals[0].x = pauli("XXX");
        assert!(report_has(&code.validate(), |v| matches!(
            v,
            Violation::QubitCount { found: 3, .. }
        )));
    }

    fn report_has(report: &ValidationReport, pred: impl Fn(&Violation) -> bool) -> bool {
        report.violations().any(pred)
    }

    #[test]
    fn toy_subsystem_x_fix() {
        let ff4 = catalog::four_two_two();
        let sub = SubsystemCode {
            base: StabilizerCode {
                logicals: vec![ff4.logicals[0].clone()],
                ..ff4.clone()
            },
            gauge_pairs: vec![ff4.logicals[1].clone()],
        };
        assert!(sub.validate().is_valid());
        let fixed = sub.gauge_fix(&[GaugeChoice::X]).unwrap();
        assert_eq!(fixed.k(), 1);
        assert_eq!(fixed.gauge_fixed, vec![2]);
        assert!(fixed.validate().is_valid());
    }

    #[test]
    fn gauge_fix_errors() {
        let parent = catalog::qrm15_parent();
        assert_eq!(
            parent.gauge_fix(&[GaugeChoice::Skip; 7]),
            Err(CodeError::TooManyGaugeChoices { found: 7, available: 6 })
        );
        assert_eq!(parent.gauge_fix(&[GaugeChoice::Skip; 2]), Err(CodeError::NothingFixed));
    }

    #[test]
    fn skip_all_but_one_gives_k2() {
        let parent = catalog::qrm15_parent();
        let code = parent.gauge_fix(&[GaugeChoice::Z]).unwrap();
        assert_eq!(code.k(), 6);
        let mut choices = [GaugeChoice::Z; 6];
        choices[3] = GaugeChoice::Skip;
        let code = parent.gauge_fix(&choices).unwrap();
        assert_eq!((code.n, code.k()), (15, 2));
        assert!(code.validate().is_valid());
        assert_eq!(code.distance(3), Distance::Exact(3));
    }

    #[test]
    fn content_hash_tracks_content_not_name() {
        let a = toy2();
        let mut b = toy2();
        b.name = "other".into();
        assert_eq!(a.content_hash(), b.content_hash());
        b.generators[0] = pauli("-ZZ");
        assert_ne!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash().len(), 64);
    }
}
