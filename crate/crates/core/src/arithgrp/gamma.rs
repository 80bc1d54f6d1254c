use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{PLocal, QMatrix, Rat};
use crate::nilpotent::{BlockKind, BlockPattern};

use super::GroupError;

/// A matrix of `Γ = G(Z[1/p])`: block upper triangular, identity diagonal
/// blocks where the pattern says `Identity`, determinant one where it says `SL`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GammaElement {
    pattern: BlockPattern,
    p: u64,
    n: usize,
    entries: Vec<PLocal>,
}

impl GammaElement {
    pub fn identity(pattern: &BlockPattern, p: u64) -> GammaElement {
        let n = pattern.total_size();
        let mut entries = vec![PLocal::zero(p); n * n];
        for i in 0..n {
            entries[i * n + i] = PLocal::one(p);
        }
        GammaElement { pattern: pattern.clone(), p, n, entries }
    }

    /// Checks membership in `Γ` and builds the element.
    pub fn from_rats(pattern: &BlockPattern, p: u64, rows: &[Vec<Rat>]) -> Result<GammaElement, GroupError> {
        let n = pattern.total_size();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::ShapeMismatch(format!("expected {n}x{n} entries")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            for x in r {
                entries.push(PLocal::from_rat(x, p).ok_or_else(|| GroupError::NotInRing(x.to_string(), p))?);
            }
        }
        let g = GammaElement { pattern: pattern.clone(), p, n, entries };
        g.check_invariants()?;
        Ok(g)
    }

    /// `I + λ·e_{row,col}` for a position strictly above the block diagonal
    /// or off the diagonal inside an `SL` block.
    pub fn elementary(
        pattern: &BlockPattern,
        p: u64,
        row: usize,
        col: usize,
        lambda: PLocal,
    ) -> Result<GammaElement, GroupError> {
        let mut g = GammaElement::identity(pattern, p);
        let n = g.n;
        if row >= n || col >= n || row == col {
            return Err(GroupError::ShapeMismatch(format!("no elementary matrix at ({row}, {col})")));
        }
        g.entries[row * n + col] = &g.entries[row * n + col] + &lambda;
        g.check_invariants()?;
        Ok(g)
    }

    pub fn pattern(&self) -> &BlockPattern {
        &self.pattern
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, r: usize, c: usize) -> &PLocal {
        &self.entries[r * self.n + c]
    }

    fn block_ranges(&self, b: usize) -> std::ops::Range<usize> {
        let o = self.pattern.offset(b);
        o..o + self.pattern.sizes()[b]
    }

    /// Entries of block `(i, j)` as rationals.
    pub fn block(&self, i: usize, j: usize) -> Vec<Vec<Rat>> {
        self.block_ranges(i)
            .map(|r| self.block_ranges(j).map(|c| self.entry(r, c).to_rat()).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == GammaElement::identity(&self.pattern, self.p)
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_rows((0..self.n).map(|r| (0..self.n).map(|c| self.entry(r, c).to_rat()).collect()).collect())
    }

    pub fn check_invariants(&self) -> Result<(), GroupError> {
        let k = self.pattern.num_blocks();
        for i in 0..k {
            for j in 0..i {
                if self.block(i, j).iter().flatten().any(|x| !x.is_zero()) {
                    return Err(GroupError::Invariant(format!("block ({i}, {j}) below the diagonal is nonzero")));
                }
            }
            let diag = self.block(i, i);
            match self.pattern.kinds()[i] {
                BlockKind::Identity => {
                    if QMatrix::from_rows(diag) != QMatrix::identity(self.pattern.sizes()[i]) {
                        return Err(GroupError::Invariant(format!("identity block {i} is not the identity")));
                    }
                }
                BlockKind::SL => {
                    let det = QMatrix::from_rows(diag).determinant().expect("square block");
                    if !det.is_one() {
                        return Err(GroupError::Invariant(format!("SL block {i} has determinant {det}")));
                    }
                }
            }
        }
        Ok(())
    }

    fn same_group(&self, other: &GammaElement) -> Result<(), GroupError> {
        if self.pattern.sizes() != other.pattern.sizes()
            || self.pattern.kinds() != other.pattern.kinds()
            || self.p != other.p
        {
            return Err(GroupError::ShapeMismatch(format!(
                "{} over Z[1/{}] vs {} over Z[1/{}]",
                self.pattern, self.p, other.pattern, other.p
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &GammaElement) -> Result<GammaElement, GroupError> {
        self.same_group(other)?;
        let n = self.n;
        let mut entries = vec![PLocal::zero(self.p); n * n];
        for r in 0..n {
            for k in r..n {
                let a = self.entry(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in k..n {
                    let b = other.entry(k, c);
                    if !b.is_zero() {
                        entries[r * n + c] = &entries[r * n + c] + &(a * b);
                    }
                }
            }
        }
        let g = GammaElement { pattern: self.pattern.clone(), p: self.p, n, entries };
        debug_assert!(g.check_invariants().is_ok());
        Ok(g)
    }

    /// Exact inverse; its entries are checked to stay in `Z[1/p]`.
    pub fn inv(&self) -> GammaElement {
        let inv = self.to_qmatrix().inverse().expect("square").expect("determinant one");
        GammaElement::from_rats(&self.pattern, self.p, &inv.to_dense_rows())
            .expect("inverse of an element of Γ lies in Γ")
    }

    fn map_first_row_blocks(&self, f: impl Fn(&PLocal) -> PLocal) -> GammaElement {
        let mut g = self.clone();
        let n1 = self.pattern.sizes()[0];
        for r in 0..n1 {
            for c in n1..self.n {
                g.entries[r * self.n + c] = f(self.entry(r, c));
            }
        }
        g
    }

    fn require_identity_first(&self) -> Result<(), GroupError> {
        if self.pattern.kinds()[0] != BlockKind::Identity {
            return Err(GroupError::UnsupportedShape("first block must be identity".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for GammaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Γ{} over Z[1/{}] [", self.pattern, self.p)?;
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Conjugation by `diag(p·I, I, ..., I)`: every block `(0, j)`, `j > 0`, is
/// multiplied by `p`.
pub fn alpha(g: &GammaElement) -> Result<GammaElement, GroupError> {
    g.require_identity_first()?;
    Ok(g.map_first_row_blocks(PLocal::mul_p))
}

/// Inverse of [`alpha`]: the first block row is divided by `p`.
pub fn alpha_inv(g: &GammaElement) -> Result<GammaElement, GroupError> {
    g.require_identity_first()?;
    Ok(g.map_first_row_blocks(PLocal::div_p))
}

/// `diag(p·I_{n1}, I, ..., I)` as a rational matrix.
pub fn conjugator(pattern: &BlockPattern, p: u64) -> QMatrix {
    let n = pattern.total_size();
    let n1 = pattern.sizes()[0];
    QMatrix::from_rows(
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| match (r == c, r < n1) {
                        (true, true) => Rat::from_int(p as i64),
                        (true, false) => Rat::ONE,
                        _ => Rat::ZERO,
                    })
                    .collect()
            })
            .collect(),
    )
}

/// An element of the integral centre `Z`: identity except for an integer
/// `(0, K-1)` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterElement {
    /// Row-major `n_1 × n_K` integer block.
    pub entries: Vec<BigInt>,
}

impl CenterElement {
    pub fn to_gamma(&self, pattern: &BlockPattern, p: u64) -> Result<GammaElement, GroupError> {
        let (n1, nk) = corner_dims(pattern);
        if self.entries.len() != n1 * nk {
            return Err(GroupError::ShapeMismatch(format!("centre block needs {} entries", n1 * nk)));
        }
        let mut g = GammaElement::identity(pattern, p);
        let off = pattern.offset(pattern.num_blocks() - 1);
        for r in 0..n1 {
            for c in 0..nk {
                g.entries[r * g.n + off + c] = PLocal::from_bigint(self.entries[r * nk + c].clone(), p);
            }
        }
        Ok(g)
    }
}

fn corner_dims(pattern: &BlockPattern) -> (usize, usize) {
    (pattern.sizes()[0], pattern.sizes()[pattern.num_blocks() - 1])
}

/// A coset `g·Z` held by its canonical representative, whose `(0, K-1)`
/// block entries lie in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    rep: GammaElement,
}

impl Coset {
    pub fn representative(&self) -> &GammaElement {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }
}

fn require_quotient_shape(pattern: &BlockPattern) -> Result<(), GroupError> {
    if !pattern.has_identity_ends() {
        return Err(GroupError::UnsupportedShape(format!(
            "quotient by the centre needs kinds (id, sl, ..., sl, id), got {:?}",
            pattern.kinds()
        )));
    }
    Ok(())
}

/// Right multiplication by a centre element shifts the `(0, K-1)` block by an
/// integer matrix and fixes everything else, so reducing that block mod 1
/// picks a unique representative.
pub fn coset_reduce(g: &GammaElement) -> Result<Coset, GroupError> {
    require_quotient_shape(&g.pattern)?;
    let mut rep = g.clone();
    let n1 = g.pattern.sizes()[0];
    let off = g.pattern.offset(g.pattern.num_blocks() - 1);
    for r in 0..n1 {
        for c in off..g.n {
            rep.entries[r * g.n + c] = g.entry(r, c).fractional_part();
        }
    }
    Ok(Coset { rep })
}

/// The endomorphism of `Γ/Z` induced by [`alpha`].
pub fn induced_endo(c: &Coset) -> Result<Coset, GroupError> {
    coset_reduce(&alpha(&c.rep)?)
}

/// Upper bound on how many kernel cosets [`kernel_elements`] will list.
pub const MAX_KERNEL_ENUMERATION: u64 = 1 << 20;

/// Cosets of centre elements with `(0, K-1)` entries in `{0, 1/p, ..., (p-1)/p}`:
/// the kernel `α^{-1}(Z)/Z` of [`induced_endo`].
pub fn kernel_elements(pattern: &BlockPattern, p: u64) -> Result<Vec<Coset>, GroupError> {
    require_quotient_shape(pattern)?;
    let (n1, nk) = corner_dims(pattern);
    let cells = (n1 * nk) as u32;
    let count = p.checked_pow(cells).filter(|&c| c <= MAX_KERNEL_ENUMERATION).ok_or_else(|| {
        GroupError::InvalidParameter(format!("p^{cells} kernel cosets is too many to enumerate"))
    })?;
    let base = GammaElement::identity(pattern, p);
    let off = pattern.offset(pattern.num_blocks() - 1);
    let mut out = Vec::with_capacity(count as usize);
    for code in 0..count {
        let mut g = base.clone();
        let mut rest = code;
        for cell in 0..cells as usize {
            let digit = rest % p;
            rest /= p;
            let (r, c) = (cell / nk, cell % nk);
            g.entries[r * g.n + off + c] = PLocal::from_parts(BigInt::from(digit), 1, p);
        }
        out.push(coset_reduce(&g)?);
    }
    Ok(out)
}

/// Positions of the elementary generators used by [`random_element`]:
/// everything above the block diagonal plus off-diagonal slots of `SL` blocks.
pub fn generator_positions(pattern: &BlockPattern) -> Vec<(usize, usize)> {
    let n = pattern.total_size();
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let ((bi, _), (bj, _)) = (pattern.locate(r), pattern.locate(c));
            if bi < bj || (bi == bj && r != c && pattern.kinds()[bi] == BlockKind::SL) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Product of `word_length` random elementary matrices `I + λ e_pq` with
/// `λ ∈ {±1, ±1/p, ±p}`. Deterministic in `seed`.
pub fn random_element(pattern: &BlockPattern, p: u64, seed: u64, word_length: usize) -> GammaElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_element_with(pattern, p, &mut rng, word_length)
}

pub fn random_element_with(pattern: &BlockPattern, p: u64, rng: &mut impl Rng, word_length: usize) -> GammaElement {
    let positions = generator_positions(pattern);
    let mut g = GammaElement::identity(pattern, p);
    if positions.is_empty() {
        return g;
    }
    for _ in 0..word_length {
        let (r, c) = positions[rng.gen_range(0..positions.len())];
        let magnitude = match rng.gen_range(0..3) {
            0 => PLocal::one(p),
            1 => PLocal::one(p).div_p(),
            _ => PLocal::from_int(p as i64, p),
        };
        let lambda = if rng.gen_bool(0.5) { -&magnitude } else { magnitude };
        let e = GammaElement::elementary(pattern, p, r, c, lambda).expect("generator positions are valid");
        g = g.mul(&e).expect("same group");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pattern_1331(p: u64) -> BlockPattern {
        BlockPattern::standard(&[1, 3, 3, 1]).unwrap().with_prime(p).unwrap()
    }

    fn corner(pattern: &BlockPattern, p: u64, x: Rat) -> GammaElement {
        let n = pattern.total_size();
        let mut rows = QMatrix::identity(n).to_dense_rows();
        rows[0][n - 1] = x;
        GammaElement::from_rats(pattern, p, &rows).unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        let pat = pattern_1331(2);
        let n = pat.total_size();
        let mut rows = QMatrix::identity(n).to_dense_rows();
        rows[4][1] = Rat::ONE; // block (2, 1)
        assert!(matches!(GammaElement::from_rats(&pat, 2, &rows), Err(GroupError::Invariant(_))));
        let mut rows = QMatrix::identity(n).to_dense_rows();
        rows[1][1] = Rat::from_int(2); // det 2 in an SL block
        assert!(matches!(GammaElement::from_rats(&pat, 2, &rows), Err(GroupError::Invariant(_))));
        let mut rows = QMatrix::identity(n).to_dense_rows();
        rows[0][1] = Rat::new(1, 3);
        assert!(matches!(GammaElement::from_rats(&pat, 2, &rows), Err(GroupError::NotInRing(..))));
    }

    #[test]
    fn central_translations_add() {
        let pat = pattern_1331(2);
        let a = corner(&pat, 2, Rat::new(3, 2));
        let b = corner(&pat, 2, Rat::new(-1, 4));
        assert_eq!(a.mul(&b).unwrap(), corner(&pat, 2, Rat::new(5, 4)));
    }

    #[test]
    fn inverse_of_first_row_block() {
        // (0,1) block X with SL block B: inverse has (0,1) block -X·B^{-1}
        let pat = pattern_1331(3);
        let g = random_element(&pat, 3, 11, 12);
        let inv = g.inv();
        assert!(g.mul(&inv).unwrap().is_identity());
        let x = QMatrix::from_rows(g.block(0, 1));
        let b_inv = QMatrix::from_rows(g.block(1, 1)).inverse().unwrap().unwrap();
        let expect = x.mul(&b_inv).unwrap().to_dense_rows();
        let got = inv.block(0, 1);
        for (er, gr) in expect.iter().zip(&got) {
            for (e, g) in er.iter().zip(gr) {
                assert_eq!(&-e, g);
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let pat = pattern_1331(2);
        let id = GammaElement::identity(&pat, 2);
        assert_eq!(alpha(&id).unwrap(), id);
        assert_eq!(alpha_inv(&id).unwrap(), id);
        let x = corner(&pat, 2, Rat::new(1, 2));
        assert_eq!(alpha(&x).unwrap(), corner(&pat, 2, Rat::ONE));
        assert_eq!(alpha_inv(&corner(&pat, 2, Rat::ONE)).unwrap(), x);
    }

    #[test]
    fn alpha_is_conjugation() {
        let pat = pattern_1331(3);
        let u = conjugator(&pat, 3);
        let u_inv = u.inverse().unwrap().unwrap();
        for seed in 0..20 {
            let g = random_element(&pat, 3, seed, 10);
            let conj = u.mul(&g.to_qmatrix()).unwrap().mul(&u_inv).unwrap();
            assert_eq!(alpha(&g).unwrap().to_qmatrix(), conj);
        }
    }

    #[test]
    fn alpha_requires_identity_first_block() {
        let pat = BlockPattern::new(vec![2, 2], vec![BlockKind::SL, BlockKind::Identity], Some(2)).unwrap();
        let g = GammaElement::identity(&pat, 2);
        assert!(alpha(&g).is_err());
        assert!(coset_reduce(&g).is_err());
    }

    #[test]
    fn coset_reduction_examples() {
        let pat = pattern_1331(2);
        assert!(coset_reduce(&corner(&pat, 2, Rat::from_int(5))).unwrap().is_identity());
        let c = coset_reduce(&corner(&pat, 2, Rat::new(3, 2))).unwrap();
        assert_eq!(c.representative().entry(0, 7).to_rat(), Rat::new(1, 2));
        let c = coset_reduce(&corner(&pat, 2, Rat::new(-1, 4))).unwrap();
        assert_eq!(c.representative().entry(0, 7).to_rat(), Rat::new(3, 4));
    }

    #[test]
    fn induced_endo_examples() {
        let pat = pattern_1331(2);
        let id = coset_reduce(&GammaElement::identity(&pat, 2)).unwrap();
        assert_eq!(induced_endo(&id).unwrap(), id);
        let w = coset_reduce(&corner(&pat, 2, Rat::new(1, 2))).unwrap();
        assert!(!w.is_identity());
        assert!(induced_endo(&w).unwrap().is_identity());
    }

    #[test]
    fn kernel_counts() {
        assert_eq!(kernel_elements(&pattern_1331(2), 2).unwrap().len(), 2);
        assert_eq!(kernel_elements(&pattern_1331(3), 3).unwrap().len(), 3);
        let pat = BlockPattern::standard(&[2, 3, 3, 1]).unwrap();
        assert_eq!(kernel_elements(&pat, 2).unwrap().len(), 4);
    }

    #[test]
    fn random_elements_are_deterministic_and_valid() {
        let pat = pattern_1331(2);
        assert!(random_element(&pat, 2, 5, 0).is_identity());
        assert_eq!(random_element(&pat, 2, 5, 9), random_element(&pat, 2, 5, 9));
        for seed in 0..1000 {
            random_element(&pat, 2, seed, 6).check_invariants().unwrap();
        }
    }
}
