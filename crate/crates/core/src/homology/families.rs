//! Explicit generators of `Ker d2` for the `(Identity, SL, SL, Identity)`
//! shape, split into the boundaries `b` and a complement `h`.
//!
//! Blocks are 0..4 here; `u_ij` below uses the same numbering. The six
//! families are:
//!
//! 1. commuting block wedges `u01∧u01, u12∧u12, u23∧u23, u02∧u12, u12∧u13,
//!    u01∧u02, u13∧u23, u01∧u23`;
//! 2. `u03∧u`, `u02∧u02`, `u13∧u13`, `u02∧u13`;
//! 3. `e_{0i,1j} ∧ e_{1k,2l}` and `e_{1i,2j} ∧ e_{2k,3l}` with `j ≠ k`;
//! 4. `e_{0i,1j} ∧ e_{1k,3l}` and `e_{0i,2j} ∧ e_{2k,3l}` with `j ≠ k`;
//! 5. zero-sum combinations `Σ_j α_j e_{0i,1j} ∧ e_{1j,2k}` and
//!    `Σ_j α_j e_{1i,2j} ∧ e_{2j,3k}`;
//! 6. zero-sum combinations `Σ_j α_j e_{0i,1j} ∧ e_{1j,3k} + Σ_j β_j e_{0i,2j} ∧ e_{2j,3k}`.
//!
//! `b` is spanned by families 2, 4, 6 and `h` by 1, 3, 5.
//!
//! The second constraint of family 3 is `j ≠ k` (the indices whose equality
//! would make the bracket nonzero).
//!
//! `b` is not all of `Im d3`. Triples such as `e_{0a,1b} ∧ e_{0a,1b'} ∧ e_{1b',2c}`
//! with `b ≠ b'` have boundary `±e_{0a,1b} ∧ e_{0a,2c}`, a family-1 element.
//! The extra boundaries fill the four cross pieces
//! `u01∧u02, u02∧u12, u12∧u13, u13∧u23` of family 1 (when the middle blocks
//! have size at least 2), so `Im d3 = b ⊕ c` with `c` their span and
//! `H2 ≅ h / c`.

use crate::exactla::{direct_sum_check, image_basis, kernel_basis, subspace_equal, Rat, SparseVec, Subspace};
use crate::nilpotent::{NilLie, PatternError};

use super::boundary::{d2_matrix, d3_matrix};
use super::wedge::{pair_count, wedge2};

/// The six family spans inside `Λ²u`, with `b` and `h`.
#[derive(Debug, Clone)]
pub struct FamilySpans {
    /// Families 1..=6 at positions 0..6.
    pub families: [Subspace; 6],
    /// Generators of each family, in `Λ²u` coordinates.
    pub generators: [Vec<SparseVec>; 6],
    pub b: Subspace,
    pub h: Subspace,
    /// Boundaries inside `h`: the cross pieces `u01∧u02, u02∧u12, u12∧u13, u13∧u23`.
    pub c: Subspace,
}

struct Gen<'a> {
    u: &'a NilLie,
}

impl Gen<'_> {
    fn e(&self, i: usize, r: usize, j: usize, c: usize) -> usize {
        self.u.index_in_blocks(i, r, j, c).expect("index within pattern")
    }

    fn size(&self, b: usize) -> usize {
        self.u.pattern().sizes()[b]
    }

    fn wedge(&self, x: usize, y: usize) -> SparseVec {
        let (idx, s) = wedge2(self.u.dim(), x, y).expect("distinct basis vectors");
        SparseVec::from_entries(vec![(idx, Rat::from_int(s as i64))])
    }

    fn block(&self, i: usize, j: usize) -> Vec<usize> {
        self.u.block_indices(i, j).collect()
    }

    /// All wedges inside one block pair.
    fn same(&self, i: usize, j: usize) -> Vec<SparseVec> {
        let v = self.block(i, j);
        let mut out = Vec::new();
        for (k, &x) in v.iter().enumerate() {
            for &y in &v[k + 1..] {
                out.push(self.wedge(x, y));
            }
        }
        out
    }

    /// All wedges between two distinct block pairs.
    fn cross(&self, p: (usize, usize), q: (usize, usize)) -> Vec<SparseVec> {
        let (a, b) = (self.block(p.0, p.1), self.block(q.0, q.1));
        a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.wedge(x, y)).collect()
    }

    /// `e_{si,mj} ∧ e_{mk,tl}` with `j ≠ k`.
    fn off_index(&self, s: usize, m: usize, t: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for i in 0..self.size(s) {
            for j in 0..self.size(m) {
                for k in (0..self.size(m)).filter(|&k| k != j) {
                    for l in 0..self.size(t) {
                        out.push(self.wedge(self.e(s, i, m, j), self.e(m, k, t, l)));
                    }
                }
            }
        }
        out
    }

    /// Differences `T_m - T_0` of the composable products `e_{si,mj} ∧ e_{mj,tk}`
    /// over every middle block in `mids`, for each fixed `(i, k)`.
    fn zero_sum(&self, s: usize, mids: &[usize], t: usize) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for i in 0..self.size(s) {
            for k in 0..self.size(t) {
                let terms: Vec<SparseVec> = mids
                    .iter()
                    .flat_map(|&m| (0..self.size(m)).map(move |j| (m, j)))
                    .map(|(m, j)| self.wedge(self.e(s, i, m, j), self.e(m, j, t, k)))
                    .collect();
                for t in &terms[1..] {
                    let mut g = t.clone();
                    g.axpy(&Rat::from_int(-1), &terms[0]);
                    out.push(g);
                }
            }
        }
        out
    }
}

pub fn kerd2_families(u: &NilLie) -> Result<FamilySpans, PatternError> {
    if !u.pattern().is_four_block_shape() {
        return Err(PatternError::UnsupportedShape(format!(
            "kernel families need (id, sl, sl, id), got {} with kinds {:?}",
            u.pattern(),
            u.pattern().kinds()
        )));
    }
    let g = Gen { u };
    let f1: Vec<SparseVec> = [
        g.same(0, 1),
        g.same(1, 2),
        g.same(2, 3),
        g.cross((0, 2), (1, 2)),
        g.cross((1, 2), (1, 3)),
        g.cross((0, 1), (0, 2)),
        g.cross((1, 3), (2, 3)),
        g.cross((0, 1), (2, 3)),
    ]
    .concat();
    let center = g.block(0, 3);
    let mut f2: Vec<SparseVec> = Vec::new();
    for &z in &center {
        f2.extend((0..u.dim()).filter(|&y| y != z).map(|y| g.wedge(z, y)));
    }
    f2.extend(g.same(0, 2));
    f2.extend(g.same(1, 3));
    f2.extend(g.cross((0, 2), (1, 3)));
    let f3 = [g.off_index(0, 1, 2), g.off_index(1, 2, 3)].concat();
    let f4 = [g.off_index(0, 1, 3), g.off_index(0, 2, 3)].concat();
    let f5 = [g.zero_sum(0, &[1], 2), g.zero_sum(1, &[2], 3)].concat();
    let f6 = g.zero_sum(0, &[1, 2], 3);

    let ambient = pair_count(u.dim());
    let generators = [f1, f2, f3, f4, f5, f6];
    let families = generators.clone().map(|gs| Subspace::span(ambient, gs));
    let pick = |ix: [usize; 3]| Subspace::span(ambient, ix.iter().flat_map(|&k| generators[k].iter().cloned()));
    let c = Subspace::span(
        ambient,
        [g.cross((0, 1), (0, 2)), g.cross((0, 2), (1, 2)), g.cross((1, 2), (1, 3)), g.cross((1, 3), (2, 3))].concat(),
    );
    Ok(FamilySpans { b: pick([1, 3, 5]), h: pick([0, 2, 4]), c, families, generators })
}

/// Outcome of checking the explicit description of `Ker d2` and `Im d3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    /// `span(families 1..6) = Ker d2`.
    pub families_span_kernel: bool,
    /// `b ⊆ Im d3`.
    pub b_in_image_d3: bool,
    /// `Im d3 = b`. False whenever `c ≠ 0`.
    pub image_d3_equals_b: bool,
    /// `b ∩ h = 0` and `b + h = Ker d2`.
    pub kernel_is_b_direct_sum_h: bool,
    /// `c ⊆ h` and `Im d3 = b ⊕ c`.
    pub image_d3_is_b_plus_c: bool,
    pub dim_ker_d2: usize,
    pub dim_im_d3: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    pub dim_c: usize,
    pub family_dims: [usize; 6],
}

impl StructureReport {
    /// The decomposition `Ker d2 = b ⊕ h`, `Im d3 = b ⊕ c`, `c ⊆ h` holds, so
    /// `dim H2 = dim h - dim c`.
    pub fn decomposition_holds(&self) -> bool {
        self.families_span_kernel && self.b_in_image_d3 && self.kernel_is_b_direct_sum_h && self.image_d3_is_b_plus_c
    }

    pub fn h2_dim(&self) -> usize {
        self.dim_ker_d2 - self.dim_im_d3
    }
}

pub fn verify_structure(u: &NilLie) -> Result<StructureReport, PatternError> {
    let fam = kerd2_families(u)?;
    let ker = kernel_basis(&d2_matrix(u));
    let im = image_basis(&d3_matrix(u));
    let ambient = ker.ambient_dim();
    let all = Subspace::span(ambient, fam.generators.iter().flatten().cloned());
    let same = "same ambient space";
    let sum = fam.b.sum(&fam.h).expect(same);
    let b_plus_c = fam.b.sum(&fam.c).expect(same);
    Ok(StructureReport {
        families_span_kernel: subspace_equal(&all, &ker).expect(same),
        b_in_image_d3: fam.b.is_subspace_of(&im).expect(same),
        image_d3_equals_b: subspace_equal(&im, &fam.b).expect(same),
        kernel_is_b_direct_sum_h: direct_sum_check(&fam.b, &fam.h).expect(same)
            && subspace_equal(&sum, &ker).expect(same),
        image_d3_is_b_plus_c: fam.c.is_subspace_of(&fam.h).expect(same)
            && direct_sum_check(&fam.b, &fam.c).expect(same)
            && subspace_equal(&b_plus_c, &im).expect(same),
        dim_ker_d2: ker.dim(),
        dim_im_d3: im.dim(),
        dim_b: fam.b.dim(),
        dim_h: fam.h.dim(),
        dim_c: fam.c.dim(),
        family_dims: fam.families.clone().map(|f| f.dim()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::d2_apply;
    use crate::homology::wedge::pairs;
    use crate::nilpotent::{build_u, BlockPattern};

    #[test]
    fn rejects_other_shapes() {
        let u = build_u(&BlockPattern::standard(&[1, 3, 1]).unwrap());
        assert!(matches!(kerd2_families(&u), Err(PatternError::UnsupportedShape(_))));
        assert!(verify_structure(&u).is_err());
    }

    #[test]
    fn family_dimensions_on_case_1331() {
        let u = build_u(&BlockPattern::standard(&[1, 3, 3, 1]).unwrap());
        let f = kerd2_families(&u).unwrap();
        // 3+36+3+27+27+9+9+9 ; 21+3+3+9 ; 18+18 ; 6+6 ; 6+6 ; 5
        assert_eq!(f.families.clone().map(|s| s.dim()), [123, 36, 36, 12, 12, 5]);
        assert_eq!((f.b.dim(), f.h.dim()), (53, 171));
        // 9 + 27 + 27 + 9
        assert_eq!(f.c.dim(), 72);
    }

    #[test]
    fn decomposition_on_1331() {
        let u = build_u(&BlockPattern::standard(&[1, 3, 3, 1]).unwrap());
        let r = verify_structure(&u).unwrap();
        assert!(r.decomposition_holds(), "{r:?}");
        assert!(!r.image_d3_equals_b);
        assert_eq!((r.dim_ker_d2, r.dim_im_d3, r.h2_dim()), (224, 125, 99));
    }

    #[test]
    fn explicit_extra_boundary() {
        // d3(e_{0,1a} ∧ e_{0,1b} ∧ e_{1b,2c}) = e_{0,1a} ∧ e_{0,2c} for a ≠ b
        let u = build_u(&BlockPattern::standard(&[1, 3, 3, 1]).unwrap());
        let e = |i, r, j, c| u.index_in_blocks(i, r, j, c).unwrap();
        let (x, y, z) = (e(0, 0, 1, 0), e(0, 0, 1, 1), e(1, 1, 2, 2));
        let got = crate::homology::d3_apply(&u, x, y, z);
        let (idx, s) = wedge2(u.dim(), x, e(0, 0, 2, 2)).unwrap();
        assert_eq!(got, SparseVec::from_entries(vec![(idx, Rat::from_int(s as i64))]));
    }

    #[test]
    fn every_generator_is_a_cycle() {
        let u = build_u(&BlockPattern::standard(&[2, 3, 3, 1]).unwrap());
        let n = u.dim();
        let all_pairs: Vec<(usize, usize)> = pairs(n).collect();
        let f = kerd2_families(&u).unwrap();
        for g in f.generators.iter().flatten() {
            let mut image = SparseVec::new();
            for (p, c) in g.iter() {
                let (a, b) = all_pairs[*p];
                image.axpy(c, &d2_apply(&u, a, b));
            }
            assert!(image.is_empty());
        }
    }
}
