//! alpha = conjugation by diag(pI, I, I, I) on G(Z[1/p]) induces a surjective,
//! non-injective endomorphism of the quotient by the integral centre.
use presentcert::arithgrp::verify_nonhopf;
use presentcert::nilpotent::BlockPattern;

fn main() {
    let pattern = BlockPattern::standard(&[1, 3, 3, 1]).unwrap();
    for p in [2, 3, 5] {
        let r = verify_nonhopf(&pattern, p, 1000, 42).unwrap();
        println!("p = {p}: verified = {}", r.verified());
        println!("  [Z : alpha(Z)] = {}, kernel cosets = {}", r.center_index, r.kernel_size);
        if let Some(w) = &r.kernel_witness {
            println!("  kernel witness (corner entry) = {}", w.representative().entry(0, 7));
        }
    }
}
