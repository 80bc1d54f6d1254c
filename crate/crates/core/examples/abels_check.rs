//! The four conditions of the compact presentability criterion on a few patterns.
use presentcert::abelscheck::check;
use presentcert::nilpotent::{BlockKind, BlockPattern};

fn main() {
    let mut patterns: Vec<BlockPattern> = [&[1, 3, 3, 1][..], &[1, 3, 4, 1], &[2, 3, 3, 2], &[1, 2, 2, 1], &[1, 3, 1]]
        .iter()
        .map(|s| BlockPattern::standard(s).unwrap())
        .collect();
    patterns.push(BlockPattern::new(vec![2, 2, 2], vec![BlockKind::Identity; 3], None).unwrap());

    for p in &patterns {
        let r = check(p);
        print!("{p:<12} kinds {:?}: {}", p.kinds(), r.verdict);
        if let Some((a, b)) = &r.cond_iii.offending_pair {
            print!("  (0 on the segment {a} -- {b})");
        }
        if !r.cond_ii.offending_blocks.is_empty() {
            print!("  (SL_2 blocks {:?})", r.cond_ii.offending_blocks);
        }
        println!();
    }
}
