mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matrix_mutation_is_an_involution(input in matrix_and_vertex()) {
        check_matrix_involution(input)?;
    }

    #[test]
    fn division_by_a_factor_is_exact(p in laurent(), q in laurent()) {
        check_division((p, q))?;
    }

    #[test]
    fn large_products_and_quotients(p in large_laurent(), q in large_laurent()) {
        check_large_product((p, q))?;
    }

    #[test]
    fn tau_minus_is_an_involution(input in graph_and_gamma()) {
        check_tau_involution(input)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn seed_mutation_is_an_involution(input in matrix_and_vertex()) {
        check_seed_involution(input)?;
    }

    #[test]
    fn hom_minus_ext_is_the_euler_form(input in quiver_pair()) {
        check_euler_form(input)?;
    }

    #[test]
    fn sigma_dimension_matches_reflection(input in decorated_sample()) {
        check_sigma_dimension(input)?;
    }
}
