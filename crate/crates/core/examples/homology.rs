//! H1 and H2 of the unipotent radical, graded and ungraded.
//!
//!     cargo run --example homology -- 2 3 3 2
use presentcert::homology::{h2_dims, ungraded};
use presentcert::nilpotent::{build_u, BlockPattern};

fn main() {
    let sizes: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let sizes = if sizes.is_empty() { vec![1, 3, 3, 1] } else { sizes };
    let pattern = BlockPattern::standard(&sizes).expect("at least two positive block sizes");
    let u = build_u(&pattern);

    let graded = h2_dims(&u);
    println!("{pattern}: dim u = {}", u.dim());
    println!("graded:   H1 = {}, H2 = {} over {} weight slices", graded.h1_dim, graded.h2_dim, graded.per_weight.len());

    let d = ungraded(&u);
    println!("ungraded: rank d2 = {}, rank d3 = {}, H1 = {}, H2 = {}", d.rank_d2, d.rank_d3, d.h1, d.h2);
    assert_eq!((d.h1, d.h2), (graded.h1_dim, graded.h2_dim));
}
