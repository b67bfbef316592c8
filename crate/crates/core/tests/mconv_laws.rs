use proptest::prelude::*;
use qmc_core::linalg::Intertwiner;
use qmc_core::mconv::{
    check_star, check_starstar, isomorphism, middle_convolution, middle_convolution_with, Complement,
    FuchsianSystem,
};
use qmc_core::scalar::{int, rat};
use qmc_core::{RatMatrix, Rational};

fn system(m: usize, poles: &[i64], entries: &[i64], q: Rational) -> FuchsianSystem {
    let n = poles.len();
    let residues = (0..n)
        .map(|i| RatMatrix::from_fn(m, m, |r, c| int(entries[i * m * m + r * m + c])))
        .collect();
    FuchsianSystem::new(poles.iter().map(|&t| int(t)).collect(), residues, q).unwrap()
}

fn arb_system() -> impl Strategy<Value = FuchsianSystem> {
    (1usize..=2, 2usize..=3, 2i64..=6)
        .prop_flat_map(|(m, n, qd)| {
            (
                Just(m),
                proptest::sample::subsequence((-4i64..=4).filter(|t| *t != 0).collect::<Vec<_>>(), n),
                proptest::collection::vec(-3i64..=3, m * m * n),
                Just(qd),
            )
        })
        .prop_map(|(m, poles, entries, qd)| system(m, &poles, &entries, rat(1, qd)))
        .prop_filter("(*) and (**)", |s| check_star(s) && check_starstar(s))
}

fn arb_multiplier() -> impl Strategy<Value = Rational> {
    (1i64..=7, 1i64..=7, any::<bool>())
        .prop_map(|(a, b, neg)| if neg { -rat(a, b) } else { rat(a, b) })
        .prop_filter("not one", |r| *r != int(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn composition_is_multiplicative(sys in arb_system(), a in arb_multiplier(), b in arb_multiplier()) {
        prop_assume!(&a * &b != int(1));
        let step = middle_convolution(&sys, &a).unwrap().system;
        let twice = middle_convolution(&step, &b).unwrap().system;
        let once = middle_convolution(&sys, &(&a * &b)).unwrap().system;
        prop_assert!(matches!(isomorphism(&once, &twice), Intertwiner::Found(_)));
    }

    #[test]
    fn inverse_multiplier_undoes(sys in arb_system(), a in arb_multiplier()) {
        let step = middle_convolution(&sys, &a).unwrap().system;
        let back = middle_convolution(&step, &(int(1) / &a)).unwrap().system;
        prop_assert!(matches!(isomorphism(&sys, &back), Intertwiner::Found(_)));
    }

    #[test]
    fn unit_multiplier_is_identity(sys in arb_system()) {
        let out = middle_convolution(&sys, &int(1)).unwrap().system;
        prop_assert!(matches!(isomorphism(&sys, &out), Intertwiner::Found(_)));
    }

    #[test]
    fn star_conditions_survive(sys in arb_system(), a in arb_multiplier()) {
        let out = middle_convolution(&sys, &a).unwrap().system;
        prop_assert!(check_star(&out) && check_starstar(&out));
    }

    #[test]
    fn quotient_is_basis_independent(sys in arb_system(), a in arb_multiplier()) {
        let s = middle_convolution_with(&sys, &a, Complement::Standard).unwrap();
        let r = middle_convolution_with(&sys, &a, Complement::Reversed).unwrap();
        prop_assert!(matches!(isomorphism(&s.system, &r.system), Intertwiner::Found(_)));
    }
}
