use num_bigint::BigInt;
use presentcert::abelscheck::{check, Verdict};
use presentcert::arithgrp::{
    alpha, alpha_inv, coset_reduce, induced_endo, random_element, CenterElement, GammaElement,
};
use presentcert::homology::wedge::{pairs, triples};
use presentcert::homology::{d2_apply, d3_apply};
use presentcert::nilpotent::{build_u, BlockPattern};
use presentcert::torus::weight_table;
use proptest::prelude::*;

fn sizes() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..4, 2..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn boundaries_preserve_weights(sizes in sizes()) {
        let u = build_u(&BlockPattern::standard(&sizes).unwrap());
        prop_assume!(u.dim() <= 24);
        let w = weight_table(&u);
        let all_pairs: Vec<(usize, usize)> = pairs(u.dim()).collect();
        for (a, b) in pairs(u.dim()) {
            for (c, _) in d2_apply(&u, a, b).iter() {
                prop_assert_eq!(&w[*c], &(&w[a] + &w[b]));
            }
        }
        for (a, b, c) in triples(u.dim()) {
            let wt = &(&w[a] + &w[b]) + &w[c];
            for (k, _) in d3_apply(&u, a, b, c).iter() {
                let (x, y) = all_pairs[*k];
                prop_assert_eq!(&(&w[x] + &w[y]), &wt);
            }
        }
    }

    #[test]
    fn certified_reports_have_no_witnesses(sizes in sizes()) {
        let r = check(&BlockPattern::standard(&sizes).unwrap());
        if r.verdict == Verdict::Certified {
            prop_assert!(r.cond_ii.offending_blocks.is_empty());
            prop_assert!(r.cond_iii.offending_pair.is_none());
            prop_assert!(r.cond_iv.offending_weight.is_none());
        } else {
            prop_assert!(matches!(r.verdict, Verdict::NotEstablished(ref c) if !c.is_empty()));
        }
    }

    #[test]
    fn alpha_is_an_automorphism(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let pat = BlockPattern::standard(&[1, 3, 3, 1]).unwrap();
        let g = random_element(&pat, p, seed, 8);
        let h = random_element(&pat, p, seed.wrapping_add(1), 8);
        prop_assert_eq!(alpha(&g.mul(&h).unwrap()).unwrap(), alpha(&g).unwrap().mul(&alpha(&h).unwrap()).unwrap());
        prop_assert_eq!(alpha_inv(&alpha(&g).unwrap()).unwrap(), g.clone());
        prop_assert!(g.mul(&g.inv()).unwrap().is_identity());
    }

    #[test]
    fn cosets_agree_iff_elements_differ_by_the_centre(seed in any::<u64>(), shift in prop::collection::vec(-4i64..5, 2)) {
        let pat = BlockPattern::standard(&[2, 3, 3, 1]).unwrap();
        let g = random_element(&pat, 2, seed, 8);
        let z = CenterElement { entries: shift.iter().map(|&x| BigInt::from(x)).collect() }.to_gamma(&pat, 2).unwrap();
        let c = coset_reduce(&g).unwrap();
        prop_assert_eq!(&c, &coset_reduce(&g.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(induced_endo(&c).unwrap(), induced_endo(&coset_reduce(&z.mul(&g).unwrap()).unwrap()).unwrap());
        // a non-integral corner shift changes the coset
        let half = GammaElement::from_rats(&pat, 2, &{
            let mut rows = presentcert::exactla::QMatrix::identity(pat.total_size()).to_dense_rows();
            rows[0][pat.total_size() - 1] = presentcert::exactla::Rat::new(1, 2);
            rows
        }).unwrap();
        prop_assert_ne!(c, coset_reduce(&g.mul(&half).unwrap()).unwrap());
    }
}

#[test]
fn four_block_patterns_with_large_sl_blocks_are_certified() {
    for n1 in 1..=4 {
        for n2 in 3..=4 {
            for n3 in 3..=4 {
                for n4 in 1..=4 {
                    let p = BlockPattern::standard(&[n1, n2, n3, n4]).unwrap();
                    assert!(check(&p).verdict.is_certified(), "{p}");
                }
            }
        }
    }
}
