use crate::exactla::{QMatrix, Rat, SparseVec};
use crate::nilpotent::NilLie;

use super::wedge::{pair_count, pairs, triples, wedge2};

/// `d2(e_a ∧ e_b) = -[e_a, e_b]` in `u` coordinates.
pub fn d2_apply(u: &NilLie, a: usize, b: usize) -> SparseVec {
    match u.bracket(a, b) {
        Some((c, s)) => SparseVec::from_entries(vec![(c, Rat::from_int(-(s as i64)))]),
        None => SparseVec::new(),
    }
}

/// `d3(x1 ∧ x2 ∧ x3) = x3 ∧ [x1,x2] + x2 ∧ [x3,x1] + x1 ∧ [x2,x3]` on basis
/// vectors given in any order, in `Λ²u` coordinates.
pub fn d3_apply(u: &NilLie, x1: usize, x2: usize, x3: usize) -> SparseVec {
    let n = u.dim();
    let mut terms = Vec::with_capacity(3);
    for (outer, l, r) in [(x3, x1, x2), (x2, x3, x1), (x1, x2, x3)] {
        if let Some((c, s)) = u.bracket(l, r) {
            if let Some((idx, sign)) = wedge2(n, outer, c) {
                terms.push((idx, Rat::from_int((s * sign) as i64)));
            }
        }
    }
    SparseVec::from_entries(terms)
}

/// The two boundary maps as exact matrices on the lexicographic wedge bases.
#[derive(Debug, Clone)]
pub struct BoundaryMaps {
    /// `dim u × C(dim u, 2)`.
    pub d2: QMatrix,
    /// `C(dim u, 2) × C(dim u, 3)`.
    pub d3: QMatrix,
}

pub fn d2_matrix(u: &NilLie) -> QMatrix {
    let n = u.dim();
    QMatrix::from_sparse_columns(n, pairs(n).map(|(a, b)| d2_apply(u, a, b)).collect())
}

pub fn d3_matrix(u: &NilLie) -> QMatrix {
    let n = u.dim();
    QMatrix::from_sparse_columns(pair_count(n), triples(n).map(|(a, b, c)| d3_apply(u, a, b, c)).collect())
}

pub fn boundary_maps(u: &NilLie) -> BoundaryMaps {
    BoundaryMaps { d2: d2_matrix(u), d3: d3_matrix(u) }
}

/// `d3` applied to an arbitrary wedge of three basis vectors equals the
/// signed column of the sorted triple.
#[cfg(test)]
fn d3_is_alternating(u: &NilLie, x: usize, y: usize, z: usize) -> bool {
    match super::wedge::sort3(x, y, z) {
        None => d3_apply(u, x, y, z).is_empty(),
        Some(((a, b, c), s)) => d3_apply(u, x, y, z) == d3_apply(u, a, b, c).scaled(&Rat::from_int(s as i64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rank;
    use crate::homology::wedge::pair_index;
    use crate::nilpotent::{build_u, BlockPattern};

    fn case_1331() -> NilLie {
        build_u(&BlockPattern::standard(&[1, 3, 3, 1]).unwrap())
    }

    #[test]
    fn d2_columns() {
        let u = case_1331();
        let n = u.dim();
        let d2 = d2_matrix(&u);
        assert_eq!((d2.rows(), d2.cols()), (22, 231));
        let x = u.index_in_blocks(0, 0, 1, 2).unwrap();
        let y = u.index_in_blocks(1, 2, 2, 1).unwrap();
        let z = u.index_in_blocks(0, 0, 2, 1).unwrap();
        assert_eq!(d2.get(z, pair_index(n, x, y)), Rat::from_int(-1));
        assert_eq!(d2.row_vectors().iter().map(|r| r.len()).sum::<usize>(), u.nonzero_brackets());
        // commuting pair
        let a = u.index_in_blocks(0, 0, 1, 0).unwrap();
        let b = u.index_in_blocks(0, 0, 1, 1).unwrap();
        assert!((0..n).all(|r| d2.get(r, pair_index(n, a, b)).is_zero()));
        assert_eq!(rank(&d2), 7);
    }

    #[test]
    fn d3_defining_formulas() {
        let u = case_1331();
        let n = u.dim();
        let e = |i, r, j, c| u.index_in_blocks(i, r, j, c).unwrap();
        let w = |x: usize, y: usize| {
            let (idx, s) = wedge2(n, x, y).unwrap();
            SparseVec::from_entries(vec![(idx, Rat::from_int(s as i64))])
        };
        // d3(e_{i1 j2} ∧ e_{j2 k3} ∧ e_{k3 l4}) = -e_{i1 k3} ∧ e_{k3 l4} + e_{i1 j2} ∧ e_{j2 l4}
        for j in 0..3 {
            for k in 0..3 {
                let got = d3_apply(&u, e(0, 0, 1, j), e(1, j, 2, k), e(2, k, 3, 0));
                let mut expect = w(e(0, 0, 1, j), e(1, j, 3, 0));
                expect.axpy(&Rat::from_int(-1), &w(e(0, 0, 2, k), e(2, k, 3, 0)));
                assert_eq!(got, expect);
            }
        }
        // d3(e_{i1 m2} ∧ e_{k2 l3} ∧ e_{m2 j4}) = e_{i1 j4} ∧ e_{k2 l3} for m ≠ k
        for m in 0..3 {
            for k in (0..3).filter(|&k| k != m) {
                for l in 0..3 {
                    let got = d3_apply(&u, e(0, 0, 1, m), e(1, k, 2, l), e(1, m, 3, 0));
                    assert_eq!(got, w(e(0, 0, 3, 0), e(1, k, 2, l)));
                }
            }
        }
    }

    #[test]
    fn d3_is_alternating_on_small_algebra() {
        let u = build_u(&BlockPattern::standard(&[1, 2, 2, 1]).unwrap());
        for x in 0..u.dim() {
            for y in 0..u.dim() {
                for z in 0..u.dim() {
                    assert!(d3_is_alternating(&u, x, y, z));
                }
            }
        }
    }

    #[test]
    fn chain_property_on_case_1331() {
        let u = case_1331();
        let maps = boundary_maps(&u);
        assert_eq!(maps.d3.cols(), 1540);
        assert!(maps.d2.mul(&maps.d3).unwrap().is_zero());
        // b (53) plus the cross pieces of family 1 (72)
        assert_eq!(rank(&maps.d3), 125);
    }
}
