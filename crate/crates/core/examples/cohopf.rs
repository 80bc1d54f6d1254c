//! (s, A) -> (s, kA) embeds SL_n(Z) x| Mat_{n x m}(Z) into itself with index k^(nm).
use presentcert::arithgrp::cohopf_embed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (k, n, m) in [(1, 3, 2), (2, 3, 1), (3, 3, 2), (2, 3, 3)] {
        let r = cohopf_embed(k, n, m, 200, &mut rng).unwrap();
        println!("k = {k}, n = {n}, m = {m}: index {}, proper {}, verified {}", r.index, r.proper, r.verified());
    }
}
