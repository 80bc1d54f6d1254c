//! Which phi_g : (s, A) -> (s, A g) are inner on SL_n(Z) x| Mat_{n x m}(Z)?
use presentcert::arithgrp::{is_inner, ZMatrix};

fn main() {
    let gs: [(&str, [i64; 4]); 4] =
        [("I", [1, 0, 0, 1]), ("-I", [-1, 0, 0, -1]), ("[[1,1],[0,1]]", [1, 1, 0, 1]), ("[[0,1],[1,0]]", [0, 1, 1, 0])];
    for n in [3, 4] {
        for (name, g) in &gs {
            let g = ZMatrix::square_from_flat(g).unwrap();
            match is_inner(&g, n, 2).unwrap() {
                Some(w) => println!("n = {n}, g = {name}: inner, conjugate by ({} I, {:?})", w.epsilon, w.m),
                None => println!("n = {n}, g = {name}: outer"),
            }
        }
    }
}
