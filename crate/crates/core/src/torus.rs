//! Weights of the diagonal torus of the `SL` blocks.
//!
//! A weight is an integer vector in `M = Z^d`, one coordinate per row of each
//! `SL` block. Conjugating `e_pq` by a diagonal matrix scales it by
//! `t_p / t_q`, so its weight is `+1` at `p` and `-1` at `q` (coordinates of
//! identity blocks do not exist). Characters of the torus of `SL` only see
//! `M / P`, where `P` is spanned by the all-ones vector of each block.

use std::fmt;
use std::ops::Add;

use crate::exactla::{solve_affine, QMatrix, Rat};
use crate::nilpotent::{BlockKind, BlockPattern, NilLie, UBasisVector};

/// An integer weight vector in `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(d: usize) -> Weight {
        Weight(vec![0; d])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "weights of different lattices");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", c.join(","))
    }
}

/// `M = Z^d` together with the block-sum vectors spanning `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightLattice {
    d: usize,
    p_basis: Vec<Vec<i64>>,
    /// First coordinate of each block, `None` for identity blocks.
    offsets: Vec<Option<usize>>,
}

impl WeightLattice {
    pub fn for_pattern(pattern: &BlockPattern) -> WeightLattice {
        let mut offsets = Vec::with_capacity(pattern.num_blocks());
        let mut d = 0;
        for (&n, &kind) in pattern.sizes().iter().zip(pattern.kinds()) {
            match kind {
                BlockKind::SL => {
                    offsets.push(Some(d));
                    d += n;
                }
                BlockKind::Identity => offsets.push(None),
            }
        }
        let p_basis = pattern
            .sizes()
            .iter()
            .zip(&offsets)
            .filter_map(|(&n, off)| {
                off.map(|o| {
                    let mut v = vec![0; d];
                    v[o..o + n].iter_mut().for_each(|x| *x = 1);
                    v
                })
            })
            .collect();
        WeightLattice { d, p_basis, offsets }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p_basis(&self) -> &[Vec<i64>] {
        &self.p_basis
    }

    /// Coordinate of row `local` in `block`, if that block is `SL`.
    pub fn coordinate(&self, block: usize, local: usize) -> Option<usize> {
        self.offsets[block].map(|o| o + local)
    }

    /// Readable name of a coordinate, as `block.row` (blocks from 0).
    pub fn coordinate_label(&self, coord: usize) -> String {
        let (block, off) = self
            .offsets
            .iter()
            .enumerate()
            .filter_map(|(b, o)| o.filter(|&o| o <= coord).map(|o| (b, o)))
            .next_back()
            .expect("coordinate out of range");
        format!("t{}.{}", block, coord - off)
    }

    /// Signed sum of coordinate labels, e.g. `-t1.0+t2.2`.
    pub fn describe(&self, w: &Weight) -> String {
        let mut out = String::new();
        for (c, &x) in w.0.iter().enumerate().filter(|(_, x)| **x != 0) {
            let sign = if x < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if x.abs() == 1 { String::new() } else { x.abs().to_string() };
            out.push_str(&format!("{sign}{mag}{}", self.coordinate_label(c)));
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

pub fn weight_of(v: &UBasisVector, lat: &WeightLattice) -> Weight {
    let mut w = Weight::zero(lat.d());
    if let Some(c) = lat.coordinate(v.i_block, v.row) {
        w.0[c] += 1;
    }
    if let Some(c) = lat.coordinate(v.j_block, v.col) {
        w.0[c] -= 1;
    }
    w
}

/// Weight of every basis vector of `u`, by basis index.
pub fn weight_table(u: &NilLie) -> Vec<Weight> {
    let lat = WeightLattice::for_pattern(u.pattern());
    u.basis().iter().map(|v| weight_of(v, &lat)).collect()
}

fn p_matrix_columns(lat: &WeightLattice) -> Vec<Vec<Rat>> {
    (0..lat.d())
        .map(|r| lat.p_basis().iter().map(|s| Rat::from_int(s[r])).collect())
        .collect()
}

/// Whether `w` lies in `P ⊗ Q`. Because the block-sum vectors have disjoint
/// supports and are primitive, this is the same as lying in `P`.
pub fn is_zero_mod_p(w: &Weight, lat: &WeightLattice) -> bool {
    assert_eq!(w.0.len(), lat.d(), "weight of the wrong lattice");
    let m = if lat.d() == 0 {
        QMatrix::zeros(0, lat.p_basis().len())
    } else {
        QMatrix::from_rows(p_matrix_columns(lat))
    };
    let rhs: Vec<Rat> = w.0.iter().map(|&x| Rat::from_int(x)).collect();
    !solve_affine(&m, &rhs).expect("consistent dimensions").is_empty()
}

/// Whether some point `(1-t)·w1 + t·w2`, `t ∈ [0,1]`, lies in `P ⊗ Q`.
///
/// Solves `t·(w2 - w1) - Σ c_b s_b = -w1` in the unknowns `(t, c)`. The set of
/// feasible `t` is empty, a single value, or all of `Q`.
pub fn segment_contains_zero(w1: &Weight, w2: &Weight, lat: &WeightLattice) -> bool {
    assert_eq!(w1.0.len(), lat.d(), "weight of the wrong lattice");
    assert_eq!(w2.0.len(), lat.d(), "weight of the wrong lattice");
    let b = lat.p_basis().len();
    let rows: Vec<Vec<Rat>> = (0..lat.d())
        .map(|r| {
            let mut row = vec![Rat::from_int(w2.0[r] - w1.0[r])];
            row.extend(lat.p_basis().iter().map(|s| Rat::from_int(-s[r])));
            row
        })
        .collect();
    let m = if rows.is_empty() { QMatrix::zeros(0, 1 + b) } else { QMatrix::from_rows(rows) };
    let rhs: Vec<Rat> = w1.0.iter().map(|&x| Rat::from_int(-x)).collect();
    match solve_affine(&m, &rhs).expect("consistent dimensions").coordinate_range(0) {
        None => false,
        Some(None) => true,
        Some(Some(t)) => t >= Rat::ZERO && t <= Rat::ONE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotent::build_u;
    use proptest::prelude::*;

    fn case_1331() -> (NilLie, WeightLattice) {
        let p = BlockPattern::standard(&[1, 3, 3, 1]).unwrap();
        (build_u(&p), WeightLattice::for_pattern(&p))
    }

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn lattice_shape() {
        let (_, lat) = case_1331();
        assert_eq!(lat.d(), 6);
        assert_eq!(lat.p_basis(), &[vec![1, 1, 1, 0, 0, 0], vec![0, 0, 0, 1, 1, 1]]);
        assert_eq!(lat.describe(&w(&[-1, 0, 0, 0, 1, 0])), "-t1.0+t2.1");
    }

    #[test]
    fn weights_of_matrix_units() {
        let (u, lat) = case_1331();
        let table = weight_table(&u);
        // e_{1,j2} -> -u_j ; e_{j2,k3} -> u_j - v_k ; e_{k3,l4} -> v_k ; e_{1,4} -> 0
        let x = u.index_in_blocks(0, 0, 1, 1).unwrap();
        assert_eq!(table[x], w(&[0, -1, 0, 0, 0, 0]));
        let y = u.index_in_blocks(1, 1, 2, 2).unwrap();
        assert_eq!(table[y], w(&[0, 1, 0, 0, 0, -1]));
        let z = u.index_in_blocks(2, 0, 3, 0).unwrap();
        assert_eq!(table[z], w(&[0, 0, 0, 1, 0, 0]));
        let c = u.index_in_blocks(0, 0, 3, 0).unwrap();
        assert!(table[c].is_zero());
        assert_eq!(table.len(), 22);
        assert_eq!(table.iter().filter(|w| w.is_zero()).count(), 1);
        assert_eq!(weight_of(&u.basis()[x], &lat), table[x]);
        // wedge e_{1,j2} ∧ e_{j2,k3} has weight -v_k
        let pair = &table[u.index_in_blocks(0, 0, 1, 1).unwrap()] + &table[y];
        assert_eq!(pair, w(&[0, 0, 0, 0, 0, -1]));
        assert!((&table[c] + &table[c]).is_zero());
    }

    #[test]
    fn weights_are_additive_under_bracket() {
        for sizes in [&[1, 3, 3, 1][..], &[2, 2, 1, 3], &[1, 2, 2]] {
            let u = build_u(&BlockPattern::standard(sizes).unwrap());
            let t = weight_table(&u);
            for a in 0..u.dim() {
                for b in 0..u.dim() {
                    if let Some((c, _)) = u.bracket(a, b) {
                        assert_eq!(t[c], &t[a] + &t[b]);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_mod_p_examples() {
        let (_, lat) = case_1331();
        assert!(is_zero_mod_p(&Weight::zero(6), &lat));
        assert!(!is_zero_mod_p(&w(&[-1, -1, 0, 0, 0, 0]), &lat));
        assert!(is_zero_mod_p(&w(&[2, 2, 2, -1, -1, -1]), &lat));
        let small = WeightLattice::for_pattern(&BlockPattern::standard(&[1, 2, 3, 1]).unwrap());
        assert!(is_zero_mod_p(&w(&[-1, -1, 0, 0, 0]), &small));
    }

    #[test]
    fn segment_examples() {
        let (_, lat) = case_1331();
        let u1 = w(&[1, 0, 0, 0, 0, 0]);
        let neg_u1 = w(&[-1, 0, 0, 0, 0, 0]);
        assert!(segment_contains_zero(&neg_u1, &u1, &lat));
        assert!(!segment_contains_zero(&neg_u1, &w(&[1, 0, 0, -1, 0, 0]), &lat));
        let small = WeightLattice::for_pattern(&BlockPattern::standard(&[1, 2, 3, 1]).unwrap());
        assert!(segment_contains_zero(&w(&[-1, 0, 0, 0, 0]), &w(&[0, -1, 0, 0, 0]), &small));
    }

    #[test]
    fn no_sl_blocks_means_everything_is_zero() {
        let lat = WeightLattice::for_pattern(&BlockPattern::standard(&[2, 3]).unwrap());
        assert_eq!(lat.d(), 0);
        assert!(is_zero_mod_p(&Weight::zero(0), &lat));
        assert!(segment_contains_zero(&Weight::zero(0), &Weight::zero(0), &lat));
    }

    fn arb_weight() -> impl Strategy<Value = Weight> {
        proptest::collection::vec(-2i64..3, 6).prop_map(Weight)
    }

    proptest! {
        #[test]
        fn segment_is_symmetric_and_reduces_to_point(a in arb_weight(), b in arb_weight()) {
            let (_, lat) = case_1331();
            prop_assert_eq!(segment_contains_zero(&a, &b, &lat), segment_contains_zero(&b, &a, &lat));
            prop_assert_eq!(segment_contains_zero(&a, &a, &lat), is_zero_mod_p(&a, &lat));
        }

        #[test]
        fn p_membership_matches_block_constancy(a in arb_weight(), x in -3i64..4, y in -3i64..4) {
            let (_, lat) = case_1331();
            let in_p = Weight(vec![x, x, x, y, y, y]);
            prop_assert!(is_zero_mod_p(&in_p, &lat));
            let constant = a.0[0..3].iter().all(|&c| c == a.0[0]) && a.0[3..6].iter().all(|&c| c == a.0[3]);
            prop_assert_eq!(is_zero_mod_p(&a, &lat), constant);
        }
    }
}
