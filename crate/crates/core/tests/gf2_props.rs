use proptest::prelude::*;
use rewire_core::bits::BitVec;
use rewire_core::code::catalog;
use rewire_core::gf2::build_lambda;
use rewire_core::rewiring::find_first_observable;
use rewire_core::GF2Matrix;

fn arb_system() -> impl Strategy<Value = (GF2Matrix, BitVec)> {
    (1usize..=7, 1usize..=9).prop_flat_map(|(rows, cols)| {
        (
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), rows),
            proptest::collection::vec(any::<bool>(), rows),
        )
            .prop_map(move |(entries, rhs)| {
                let rows = entries.into_iter().map(BitVec::from_bools).collect();
                (GF2Matrix::from_rows(cols, rows).unwrap(), BitVec::from_bools(rhs))
            })
    })
}

fn all_vectors(len: usize) -> impl Iterator<Item = BitVec> {
    (0..1u32 << len).map(move |v| BitVec::from_bools((0..len).map(|i| v >> i & 1 == 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn solution_space_is_exactly_the_solution_set((m, rhs) in arb_system()) {
        let brute: Vec<BitVec> = all_vectors(m.num_cols())
            .filter(|v| m.mul_vec(v).unwrap() == rhs)
            .collect();
        match m.solve_affine(&rhs).unwrap() {
            None => prop_assert!(brute.is_empty()),
            Some(space) => {
                prop_assert_eq!(space.dimension(), m.num_cols() - m.rank());
                let mut members: Vec<BitVec> = space.iter().collect();
                for v in &members {
                    prop_assert_eq!(&m.mul_vec(v).unwrap(), &rhs);
                }
                members.sort();
                members.dedup();
                prop_assert_eq!(members.len(), brute.len());
            }
        }
    }

    #[test]
    fn rank_bounds_and_idempotent_reduction((m, _rhs) in arb_system()) {
        prop_assert!(m.rank() <= m.num_rows().min(m.num_cols()));
        let (once, pivots) = m.rref();
        let (twice, again) = once.rref();
        prop_assert_eq!(once, twice);
        prop_assert_eq!(pivots, again);
    }

    #[test]
    fn weight_order_covers_the_space((m, rhs) in arb_system()) {
        if let Some(space) = m.solve_affine(&rhs).unwrap() {
            let mut a: Vec<BitVec> = space.iter().collect();
            let mut b: Vec<BitVec> = space.iter_by_weight().collect();
            prop_assert_eq!(&b[0], &space.particular);
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn steane_lambda_ranks() {
    let code = catalog::steane();
    let lambda = build_lambda(&code.check_matrix(), None, &code.logical_rows()).unwrap();
    assert_eq!((lambda.num_rows(), lambda.num_cols()), (8, 14));
    assert_eq!(lambda.rank(), 8);

    let space = find_first_observable(&code, 5).unwrap();
    assert_eq!(space.dimension(), 14 - 8);
    let g = rewire_core::rewiring::observable_from_solution(&space.particular);
    let with_alpha = build_lambda(&code.check_matrix(), Some((g.x(), g.z())), &code.logical_rows()).unwrap();
    assert_eq!(with_alpha.num_rows(), 9);
    assert_eq!(with_alpha.rank(), 9);
}

#[test]
fn toy2_lambda_is_full_rank() {
    let code = catalog::toy2();
    let lambda = build_lambda(&code.check_matrix(), None, &code.logical_rows()).unwrap();
    assert_eq!((lambda.num_rows(), lambda.num_cols(), lambda.rank()), (3, 4, 3));
}

#[test]
fn lambda_rows_pair_symplectically() {
    // Row · (β_Z ; β_X) must equal the commutation bit with the candidate.
    let code = catalog::five_qubit();
    let lambda = build_lambda(&code.check_matrix(), None, &code.logical_rows()).unwrap();
    let row_ops: Vec<_> = code
        .generators
        .iter()
        .chain(code.logicals.iter().flat_map(|l| [&l.x, &l.z]))
        .collect();
    for candidate in ["+XIIII", "+IZIYI", "+YYZXI"] {
        let p = rewire_core::pauli::pauli(candidate);
        let column = p.z().concat(p.x());
        let product = lambda.mul_vec(&column).unwrap();
        for (i, op) in row_ops.iter().enumerate() {
            assert_eq!(product.get(i), op.anticommutes(&p), "{candidate} row {i}");
        }
    }
}
