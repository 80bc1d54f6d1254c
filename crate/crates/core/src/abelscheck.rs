//! Abels' sufficient criterion for compact presentability of `G(Q_p)`,
//! evaluated on a block pattern.
//!
//! 1. `G` is `Q_p`-split: always true for these patterns.
//! 2. No simple quotient of `Q_p`-rank one: fails exactly on `SL_2` blocks.
//! 3. `0` is not on a segment joining two weights of `H1(u)`. Checked for
//!    every pair of weights, dominant or not.
//! 4. `0` is not a weight of `H2(u)` at all (strong form).
//!
//! Forms 3 and 4 are stronger than the dominant-weight conditions, so a
//! `Certified` verdict is sound. `NotEstablished` only means the criterion
//! could not be applied; it never claims the group is not compactly presented.

use std::fmt;

use crate::homology::{h1, h2_dims};
use crate::nilpotent::{build_u, BlockKind, BlockPattern};
use crate::torus::{is_zero_mod_p, segment_contains_zero, Weight, WeightLattice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Split,
    NoRankOneQuotient,
    H1Segments,
    H2ZeroWeight,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Split => "i",
            Condition::NoRankOneQuotient => "ii",
            Condition::H1Segments => "iii",
            Condition::H2ZeroWeight => "iv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    NotEstablished(Vec<Condition>),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Certified => f.write_str("certified"),
            Verdict::NotEstablished(_) => f.write_str("not_established"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneCheck {
    /// Indices of `SL` blocks of size 2.
    pub offending_blocks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentCheck {
    /// Distinct `H1` weights, sorted.
    pub weights: Vec<Weight>,
    /// First pair (in sorted order) whose segment meets `P`.
    pub offending_pair: Option<(Weight, Weight)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroWeightCheck {
    /// Distinct `H2` weights, sorted.
    pub weights: Vec<Weight>,
    /// First `H2` weight lying in `P`.
    pub offending_weight: Option<Weight>,
    pub note: Option<&'static str>,
}

pub const STRONG_FORM_NOTE: &str = "full dominant-weight form not evaluated";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub pattern: BlockPattern,
    pub h1_dim: usize,
    pub h2_dim: usize,
    pub cond_ii: RankOneCheck,
    pub cond_iii: SegmentCheck,
    pub cond_iv: ZeroWeightCheck,
    pub verdict: Verdict,
}

impl ConditionReport {
    pub fn passes(&self, c: Condition) -> bool {
        match c {
            Condition::Split => true,
            Condition::NoRankOneQuotient => self.cond_ii.offending_blocks.is_empty(),
            Condition::H1Segments => self.cond_iii.offending_pair.is_none(),
            Condition::H2ZeroWeight => self.cond_iv.offending_weight.is_none(),
        }
    }
}

fn distinct(mut ws: Vec<Weight>) -> Vec<Weight> {
    ws.sort();
    ws.dedup();
    ws
}

pub fn check(pattern: &BlockPattern) -> ConditionReport {
    let u = build_u(pattern);
    let lat = WeightLattice::for_pattern(pattern);

    let offending_blocks = pattern
        .sizes()
        .iter()
        .zip(pattern.kinds())
        .enumerate()
        .filter(|(_, (&n, &k))| k == BlockKind::SL && n == 2)
        .map(|(b, _)| b)
        .collect();

    let (h1_dim, h1_weights) = h1(&u);
    let h1_weights = distinct(h1_weights);
    let mut offending_pair = None;
    'outer: for (i, a) in h1_weights.iter().enumerate() {
        for b in &h1_weights[i..] {
            if segment_contains_zero(a, b, &lat) {
                offending_pair = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }

    let hom = h2_dims(&u);
    let h2_weights = distinct(hom.h2_weights);
    let offending_weight = h2_weights.iter().find(|w| is_zero_mod_p(w, &lat)).cloned();
    let note = offending_weight.as_ref().map(|_| STRONG_FORM_NOTE);

    let mut report = ConditionReport {
        pattern: pattern.clone(),
        h1_dim,
        h2_dim: hom.h2_dim,
        cond_ii: RankOneCheck { offending_blocks },
        cond_iii: SegmentCheck { weights: h1_weights, offending_pair },
        cond_iv: ZeroWeightCheck { weights: h2_weights, offending_weight, note },
        verdict: Verdict::Certified,
    };
    let failed: Vec<Condition> = [
        Condition::Split,
        Condition::NoRankOneQuotient,
        Condition::H1Segments,
        Condition::H2ZeroWeight,
    ]
    .into_iter()
    .filter(|&c| !report.passes(c))
    .collect();
    if !failed.is_empty() {
        report.verdict = Verdict::NotEstablished(failed);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(sizes: &[usize]) -> ConditionReport {
        check(&BlockPattern::standard(sizes).unwrap())
    }

    #[test]
    fn case_1331_is_certified() {
        let r = run(&[1, 3, 3, 1]);
        assert_eq!(r.verdict, Verdict::Certified);
        assert!(r.cond_ii.offending_blocks.is_empty());
        assert!(r.cond_iii.offending_pair.is_none());
        assert!(r.cond_iv.offending_weight.is_none() && r.cond_iv.note.is_none());
    }

    #[test]
    fn sl2_blocks_fail_condition_ii() {
        let r = run(&[1, 2, 2, 1]);
        assert_eq!(r.cond_ii.offending_blocks, vec![1, 2]);
        match r.verdict {
            Verdict::NotEstablished(c) => assert!(c.contains(&Condition::NoRankOneQuotient)),
            Verdict::Certified => panic!("SL_2 blocks must not certify"),
        }
    }

    #[test]
    fn three_blocks_fail_on_antipodal_weights() {
        let r = run(&[1, 3, 1]);
        assert_eq!(
            r.cond_iii.offending_pair,
            Some((Weight(vec![-1, 0, 0]), Weight(vec![1, 0, 0])))
        );
        assert!(matches!(r.verdict, Verdict::NotEstablished(ref c) if c.contains(&Condition::H1Segments)));
    }

    #[test]
    fn all_identity_is_not_established() {
        let p = BlockPattern::new(vec![2, 2, 2], vec![BlockKind::Identity; 3], None).unwrap();
        assert!(!check(&p).verdict.is_certified());
        assert!(!run(&[2, 3]).verdict.is_certified());
    }
}
