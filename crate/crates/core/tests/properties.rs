//! Randomized algebraic identities: Gröbner uniqueness and confluence,
//! colon and saturation laws, linkage, and resolution Euler characteristics.

mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(GB_CASES))]
    #[test]
    fn gb_is_confluent_and_unique(spec in ideal_spec(4), seed in any::<u64>()) {
        gb_confluence_and_uniqueness(&spec, seed)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(COLON_CASES))]
    #[test]
    fn colon_and_saturation_laws(spec in ideal_spec(3), seed in any::<u64>(), df in 1u32..=2, dg in 1u32..=2) {
        colon_saturation_identities(&spec, seed, df, dg)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(LINK_CASES))]
    #[test]
    fn line_links_back_with_additive_degree(seed in any::<u64>(), d1 in 2u32..=3, d2 in 2u32..=3) {
        line_link(seed, d1, d2)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(RESOLUTION_CASES))]
    #[test]
    fn resolution_euler_characteristic_is_hilbert_numerator(spec in nonlinear_spec(4), seed in any::<u64>()) {
        resolution_euler(&spec, seed)?;
    }
}
