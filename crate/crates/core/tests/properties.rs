//! Randomized property tests, 1000 cases each.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn resultant_vanishes_iff_common_factor(case in resultant_gcd_strategy()) {
        prop_resultant_gcd(case)?;
    }

    #[test]
    fn sturm_count_matches_isolation(q in arb_univariate()) {
        prop_sturm_vs_isolation(q)?;
    }

    #[test]
    fn compare_is_a_total_order(case in total_order_strategy()) {
        prop_total_order(case)?;
    }

    #[test]
    fn sotd_is_additive_and_renaming_invariant(case in sotd_strategy()) {
        prop_sotd(case)?;
    }

    #[test]
    fn ndrr_ignores_scaling_and_basis(case in ndrr_strategy()) {
        prop_ndrr(case)?;
    }

    #[test]
    fn greedy_order_respects_blocks(case in greedy_strategy()) {
        prop_greedy_blocks(case)?;
    }
}
