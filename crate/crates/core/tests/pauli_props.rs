//! Pauli arithmetic against explicit complex matrices.

use num_complex::Complex64;
use proptest::prelude::*;
use rewire_core::bits::BitVec;
use rewire_core::pauli::pauli;
use rewire_core::PauliOperator;

type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn letter_matrix(letter: char) -> Matrix {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    match letter {
        'I' => vec![vec![l, o], vec![o, l]],
        'X' => vec![vec![o, l], vec![l, o]],
        'Y' => vec![vec![o, c(0.0, -1.0)], vec![c(0.0, 1.0), o]],
        'Z' => vec![vec![l, o], vec![o, -l]],
        _ => unreachable!(),
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

fn scale(a: &Matrix, s: Complex64) -> Matrix {
    a.iter().map(|row| row.iter().map(|v| v * s).collect()).collect()
}

fn close(a: &Matrix, b: &Matrix) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < 1e-12)
}

/// Matrix of the rendered string, built from textbook 2×2 matrices.
fn matrix_of(p: &PauliOperator) -> Matrix {
    let text = p.to_string();
    let (sign, body) = if let Some(rest) = text.strip_prefix("+i") {
        (c(0.0, 1.0), rest)
    } else if let Some(rest) = text.strip_prefix("-i") {
        (c(0.0, -1.0), rest)
    } else if let Some(rest) = text.strip_prefix('+') {
        (c(1.0, 0.0), rest)
    } else {
        (c(-1.0, 0.0), text.strip_prefix('-').unwrap())
    };
    let m = body.chars().map(letter_matrix).reduce(|acc, m| kron(&acc, &m)).unwrap();
    scale(&m, sign)
}

fn all_paulis(n: usize) -> Vec<PauliOperator> {
    (0..1usize << (2 * n))
        .flat_map(|bits| {
            let x = BitVec::from_bools((0..n).map(|q| bits >> q & 1 == 1));
            let z = BitVec::from_bools((0..n).map(|q| bits >> (n + q) & 1 == 1));
            (0..4u8).map(move |phase| PauliOperator::from_parts(phase, x.clone(), z.clone()).unwrap())
        })
        .collect()
}

fn arb_pauli(n: usize) -> impl Strategy<Value = PauliOperator> {
    (
        0u8..4,
        proptest::collection::vec(any::<bool>(), n),
        proptest::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(phase, x, z)| {
            PauliOperator::from_parts(phase, BitVec::from_bools(x), BitVec::from_bools(z)).unwrap()
        })
}

fn arb_triple() -> impl Strategy<Value = (PauliOperator, PauliOperator, PauliOperator)> {
    (1usize..=8).prop_flat_map(|n| (arb_pauli(n), arb_pauli(n), arb_pauli(n)))
}

#[test]
fn exhaustive_matrix_agreement_up_to_two_qubits() {
    for n in 1..=2 {
        let ops = all_paulis(n);
        for p in &ops {
            for q in &ops {
                let product = p * q;
                assert!(
                    close(&matrix_of(&product), &mul(&matrix_of(p), &matrix_of(q))),
                    "{p} * {q}"
                );
                let pq = mul(&matrix_of(p), &matrix_of(q));
                let qp = mul(&matrix_of(q), &matrix_of(p));
                assert_eq!(close(&pq, &scale(&qp, c(-1.0, 0.0))), p.anticommutes(q), "{p}, {q}");
            }
        }
    }
}

#[test]
fn spec_commutation_examples_match_matrices() {
    let g = pauli("+IX");
    for (other, expected) in [("+ZZ", true), ("+XX", false), ("+ZI", false)] {
        let h = pauli(other);
        assert_eq!(g.anticommutes(&h), expected);
        let gh = mul(&matrix_of(&g), &matrix_of(&h));
        let hg = mul(&matrix_of(&h), &matrix_of(&g));
        assert_eq!(close(&gh, &scale(&hg, c(-1.0, 0.0))), expected);
    }
    let yz = PauliOperator::hermitian_from_vectors(&BitVec::from_u8s(&[1, 0]), &BitVec::from_u8s(&[1, 1])).unwrap();
    assert_eq!(yz, pauli("+YZ"));
    let xz = kron(&mul(&letter_matrix('X'), &letter_matrix('Z')), &letter_matrix('Z'));
    assert!(close(&matrix_of(&yz), &scale(&xz, c(0.0, 1.0))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn commutation_is_bilinear((p, q, r) in arb_triple()) {
        prop_assert_eq!((&p * &q).anticommutes(&r), p.anticommutes(&r) ^ q.anticommutes(&r));
    }

    #[test]
    fn multiplication_is_associative((p, q, r) in arb_triple()) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
    }

    #[test]
    fn swapped_product_differs_by_commutation_phase((p, q, _r) in arb_triple()) {
        let twist = if p.anticommutes(&q) { 2 } else { 0 };
        prop_assert_eq!(&q * &p, (&p * &q).times_i_pow(twist));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn three_qubit_products_match_matrices(p in arb_pauli(3), q in arb_pauli(3)) {
        prop_assert!(close(&matrix_of(&(&p * &q)), &mul(&matrix_of(&p), &matrix_of(&q))));
    }

    #[test]
    fn hermitian_constructor_squares_to_identity(
        (x, z) in (1usize..=10).prop_flat_map(|n| (
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec(any::<bool>(), n),
        ))
    ) {
        let n = x.len();
        let g = PauliOperator::hermitian_from_vectors(&BitVec::from_bools(x), &BitVec::from_bools(z)).unwrap();
        prop_assert!(g.is_hermitian());
        prop_assert_eq!(&g * &g, PauliOperator::identity(n));
    }

    #[test]
    fn render_parse_round_trip(p in (1usize..=8).prop_flat_map(arb_pauli)) {
        let back: PauliOperator = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
