//! Weight-sliced homology.
//!
//! The torus acts on every `Λ^k u` and both boundary maps preserve weights,
//! so the complex splits into one small complex per weight. Each slice is
//! reduced independently; slices run in parallel and are merged in weight
//! order.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactla::{kernel_basis, Echelon, QMatrix, SparseVec};
use crate::nilpotent::NilLie;
use crate::torus::{weight_table, Weight};

use super::boundary::{d2_apply, d3_apply};
use super::wedge::{pair_index, pairs, triples};

/// Everything living in one weight slice.
#[derive(Debug, Clone, Default)]
pub(crate) struct SliceInput {
    /// u basis indices of this weight.
    pub u: Vec<usize>,
    /// `(a, b)` basis pairs of this weight.
    pub pairs: Vec<(usize, usize)>,
    pub triples: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceResult {
    pub dim_u: usize,
    pub dim_wedge2: usize,
    pub dim_wedge3: usize,
    pub rank_d2: usize,
    pub rank_d3: usize,
    pub h1: usize,
    pub h2: usize,
    /// u basis indices spanning a complement of `[u,u]` in this slice.
    pub h1_representatives: Vec<usize>,
    /// Cycles in `Λ²u` coordinates whose classes form a basis of `H2` here.
    pub h2_representatives: Vec<SparseVec>,
}

pub(crate) fn group_by_weight(u: &NilLie, with_triples: bool) -> BTreeMap<Weight, SliceInput> {
    let table = weight_table(u);
    let n = u.dim();
    let mut slices: HashMap<Weight, SliceInput> = HashMap::new();
    for (a, w) in table.iter().enumerate() {
        slices.entry(w.clone()).or_default().u.push(a);
    }
    for (a, b) in pairs(n) {
        slices.entry(&table[a] + &table[b]).or_default().pairs.push((a, b));
    }
    if with_triples {
        for (a, b, c) in triples(n) {
            let w = &(&table[a] + &table[b]) + &table[c];
            // slices with no pairs carry no H2 and no d3 target
            if let Some(s) = slices.get_mut(&w) {
                s.triples.push((a, b, c));
            }
        }
    }
    slices.into_iter().collect()
}

fn local_index(global: &[usize]) -> HashMap<usize, usize> {
    global.iter().enumerate().map(|(k, &g)| (g, k)).collect()
}

pub(crate) fn solve_slice(u: &NilLie, s: &SliceInput, witnesses: bool) -> SliceResult {
    let n = u.dim();
    let u_local = local_index(&s.u);
    let pair_globals: Vec<usize> = s.pairs.iter().map(|&(a, b)| pair_index(n, a, b)).collect();
    let pair_local = local_index(&pair_globals);

    // rows of d2 restricted: one vector per pair column, in local u coordinates
    let d2_cols: Vec<SparseVec> =
        s.pairs.iter().map(|&(a, b)| d2_apply(u, a, b).remap(|c| u_local.get(&c).copied())).collect();
    let mut image_d2 = Echelon::reduced(s.u.len());
    image_d2.extend(d2_cols.iter().cloned());
    let rank_d2 = image_d2.rank();

    let mut image_d3 = Echelon::rank_only(s.pairs.len());
    for &(a, b, c) in &s.triples {
        image_d3.insert(d3_apply(u, a, b, c).remap(|p| pair_local.get(&p).copied()));
    }
    let rank_d3 = image_d3.rank();

    let dim_ker = s.pairs.len() - rank_d2;
    let mut res = SliceResult {
        dim_u: s.u.len(),
        dim_wedge2: s.pairs.len(),
        dim_wedge3: s.triples.len(),
        rank_d2,
        rank_d3,
        h1: s.u.len() - rank_d2,
        h2: dim_ker - rank_d3,
        h1_representatives: Vec::new(),
        h2_representatives: Vec::new(),
    };
    if witnesses {
        let pivots = image_d2.pivots();
        res.h1_representatives =
            (0..s.u.len()).filter(|c| pivots.binary_search(c).is_err()).map(|c| s.u[c]).collect();
        if res.h2 > 0 {
            let d2_local = QMatrix::from_sparse_columns(s.u.len(), d2_cols);
            for z in kernel_basis(&d2_local).basis_vectors() {
                if image_d3.insert(z.clone()) {
                    res.h2_representatives.push(z.remap(|k| Some(pair_globals[k])));
                }
            }
            debug_assert_eq!(res.h2_representatives.len(), res.h2);
        }
    }
    res
}

/// Solves every slice, in parallel, keyed by weight.
pub(crate) fn solve_all(u: &NilLie, with_triples: bool, witnesses: bool) -> BTreeMap<Weight, SliceResult> {
    let slices: Vec<(Weight, SliceInput)> = group_by_weight(u, with_triples).into_iter().collect();
    slices.into_par_iter().map(|(w, s)| (w, solve_slice(u, &s, witnesses))).collect()
}
