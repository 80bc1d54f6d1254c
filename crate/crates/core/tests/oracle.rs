mod common;

use common::{oracle_dims, size_patterns};
use presentcert::homology::{h2_dims, ungraded};
use presentcert::nilpotent::{build_u, BlockPattern};
use proptest::prelude::*;

#[test]
fn oracle_matches_1331() {
    let o = oracle_dims(&[1, 3, 3, 1]);
    assert_eq!((o.dim_u, o.rank_d2, o.rank_d3, o.h1, o.h2), (22, 7, 125, 15, 99));
}

#[test]
fn library_matches_oracle_on_small_patterns() {
    for sizes in size_patterns(18) {
        let o = oracle_dims(&sizes);
        let d = ungraded(&build_u(&BlockPattern::standard(&sizes).unwrap()));
        assert_eq!((d.dim_u, d.rank_d2, d.rank_d3), (o.dim_u, o.rank_d2, o.rank_d3), "{sizes:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn graded_homology_matches_oracle(sizes in prop::collection::vec(1usize..4, 2..5)) {
        let u = build_u(&BlockPattern::standard(&sizes).unwrap());
        prop_assume!(u.dim() <= 22);
        let o = oracle_dims(&sizes);
        let g = h2_dims(&u);
        prop_assert_eq!((g.h1_dim, g.h2_dim), (o.h1, o.h2));
    }
}
