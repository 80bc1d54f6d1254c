//! Torus weights of the basis of u, and which of them vanish modulo P.
use presentcert::nilpotent::{build_u, BlockPattern};
use presentcert::torus::{is_zero_mod_p, weight_table, WeightLattice};

fn main() {
    let pattern = BlockPattern::standard(&[1, 3, 3, 1]).unwrap();
    let u = build_u(&pattern);
    let lat = WeightLattice::for_pattern(&pattern);
    for (e, w) in u.basis().iter().zip(weight_table(&u)) {
        let zero = if is_zero_mod_p(&w, &lat) { "  (in P)" } else { "" };
        println!(
            "e({}.{}, {}.{})  {}{zero}",
            e.i_block, e.row, e.j_block, e.col,
            lat.describe(&w)
        );
    }
}
