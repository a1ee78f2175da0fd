use hochhom::exactlin::{alternating_sum, kernel_basis, rank, ratio, ChainComplex, Grading, RatMatrix};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec((-3i64..=3, 1i64..=3), rows * cols).prop_map(move |xs| {
        let triplets = xs
            .into_iter()
            .enumerate()
            .filter(|(_, (n, _))| *n != 0)
            .map(|(k, (n, d))| (k / cols, k % cols, ratio(n, d)))
            .collect::<Vec<_>>();
        RatMatrix::from_triplets(rows, cols, triplets).unwrap()
    })
}

fn shaped() -> impl Strategy<Value = RatMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in shaped()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        for v in k.basis() {
            prop_assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn rank_of_transpose(m in shaped()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_is_subadditive_under_products(a in matrix(4, 5), b in matrix(5, 3)) {
        let ab = a.mul(&b);
        prop_assert!(rank(&ab) <= rank(&a).min(rank(&b)));
    }

    /// Any `d_1 ∘ d_2 = 0` pair, built by factoring through a kernel, has
    /// homology with the same Euler characteristic as its chains.
    #[test]
    fn euler_characteristic_of_short_complexes(d1 in matrix(3, 5), mix in matrix(4, 4)) {
        let k = kernel_basis(&d1);
        let cols: Vec<_> = (0..4)
            .map(|j| {
                let mut acc = Vec::new();
                for (i, v) in k.basis().iter().enumerate().take(4) {
                    let c = mix.get(i, j);
                    acc = hochhom::exactlin::add_scaled(&acc, v, &c);
                }
                acc
            })
            .collect();
        let d2 = RatMatrix::from_columns(5, cols).unwrap();
        let c = ChainComplex::new(
            Grading::Homological,
            vec![3, 5, 4],
            vec![RatMatrix::zeros(0, 3), d1, d2],
        )
        .unwrap();
        prop_assert_eq!(alternating_sum(&c.homology_dims()), alternating_sum(c.dims()));
    }
}
