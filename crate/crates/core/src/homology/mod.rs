//! Chevalley–Eilenberg homology `H1(u)`, `H2(u)` and the explicit
//! description of `Ker d2` for the four-block shape.
//!
//! The default path works weight slice by weight slice ([`h2`]); the
//! ungraded computation on the full matrices ([`ungraded`]) is kept as a
//! cross-check.

mod boundary;
mod families;
mod graded;
pub mod wedge;

use std::collections::BTreeMap;

pub use boundary::{boundary_maps, d2_apply, d2_matrix, d3_apply, d3_matrix, BoundaryMaps};
pub use families::{kerd2_families, verify_structure, FamilySpans, StructureReport};
pub use graded::SliceResult;

use crate::exactla::{rank_of, SparseVec};
use crate::nilpotent::NilLie;
use crate::torus::{weight_table, Weight};

use wedge::{pair_count, pairs, triple_count, triples};

/// Graded `H1` and `H2` of `u`.
#[derive(Debug, Clone)]
pub struct HomologyResult {
    pub h1_dim: usize,
    pub h2_dim: usize,
    /// Sorted multiset: each weight repeated by its multiplicity.
    pub h1_weights: Vec<Weight>,
    pub h2_weights: Vec<Weight>,
    /// Per-weight slice data, in lexicographic weight order.
    pub per_weight: BTreeMap<Weight, SliceResult>,
}

impl HomologyResult {
    fn from_slices(per_weight: BTreeMap<Weight, SliceResult>) -> HomologyResult {
        let expand = |f: fn(&SliceResult) -> usize| -> Vec<Weight> {
            per_weight.iter().flat_map(|(w, s)| std::iter::repeat_n(w.clone(), f(s))).collect()
        };
        HomologyResult {
            h1_dim: per_weight.values().map(|s| s.h1).sum(),
            h2_dim: per_weight.values().map(|s| s.h2).sum(),
            h1_weights: expand(|s| s.h1),
            h2_weights: expand(|s| s.h2),
            per_weight,
        }
    }

    /// Cycles representing a basis of `H2`, in `Λ²u` coordinates.
    pub fn h2_representatives(&self) -> impl Iterator<Item = (&Weight, &SparseVec)> {
        self.per_weight.iter().flat_map(|(w, s)| s.h2_representatives.iter().map(move |z| (w, z)))
    }
}

/// `H1(u) = u / [u,u]`: its dimension and weight multiset.
///
/// For the `(Identity, SL, SL, Identity)` shape the weights are read off the
/// coordinate complement `u_12 ⊕ u_23 ⊕ u_34`; otherwise off a pivot-based
/// complement inside each weight slice.
pub fn h1(u: &NilLie) -> (usize, Vec<Weight>) {
    let slices = graded::solve_all(u, false, true);
    let dim: usize = slices.values().map(|s| s.h1).sum();
    let mut weights: Vec<Weight> = if u.pattern().is_four_block_shape() {
        let table = weight_table(u);
        h1_complement(u).into_iter().map(|a| table[a].clone()).collect()
    } else {
        slices.iter().flat_map(|(w, s)| std::iter::repeat_n(w.clone(), s.h1)).collect()
    };
    weights.sort();
    debug_assert_eq!(weights.len(), dim);
    (dim, weights)
}

/// Basis indices of a weight-homogeneous complement of `[u,u]`.
pub fn h1_complement(u: &NilLie) -> Vec<usize> {
    if u.pattern().is_four_block_shape() {
        let mut out: Vec<usize> = (0..3).flat_map(|i| u.block_indices(i, i + 1)).collect();
        out.sort_unstable();
        out
    } else {
        let mut out: Vec<usize> =
            graded::solve_all(u, false, true).into_values().flat_map(|s| s.h1_representatives).collect();
        out.sort_unstable();
        out
    }
}

/// Graded `H1` and `H2`, one weight slice at a time, with representatives.
pub fn h2(u: &NilLie) -> HomologyResult {
    HomologyResult::from_slices(graded::solve_all(u, true, true))
}

/// Same dimensions as [`h2`] without building representative cycles.
pub fn h2_dims(u: &NilLie) -> HomologyResult {
    HomologyResult::from_slices(graded::solve_all(u, true, false))
}

/// Dimension bookkeeping from the full, ungraded boundary matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UngradedDims {
    pub dim_u: usize,
    pub dim_wedge2: usize,
    pub dim_wedge3: usize,
    pub rank_d2: usize,
    pub rank_d3: usize,
    pub dim_ker_d2: usize,
    pub h1: usize,
    pub h2: usize,
}

/// Ungraded computation: ranks of `d2` and `d3` on all of `Λ²u`, `Λ³u`.
pub fn ungraded(u: &NilLie) -> UngradedDims {
    let n = u.dim();
    let rank_d2 = rank_of(n, pairs(n).map(|(a, b)| d2_apply(u, a, b)));
    let rank_d3 = rank_of(pair_count(n), triples(n).map(|(a, b, c)| d3_apply(u, a, b, c)));
    let dim_ker_d2 = pair_count(n) - rank_d2;
    UngradedDims {
        dim_u: n,
        dim_wedge2: pair_count(n),
        dim_wedge3: triple_count(n),
        rank_d2,
        rank_d3,
        dim_ker_d2,
        h1: n - rank_d2,
        h2: dim_ker_d2 - rank_d3,
    }
}
