//! The nilpotent Lie algebra of a block unipotent radical.
//!
//! Blocks are numbered from 0. A basis vector of `u` is a matrix unit `e_pq`
//! whose row index lies in block `i` and column index in block `j > i`.

use std::collections::HashMap;
use std::fmt;

use crate::exactla::{Rat, SparseVec, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BlockKind {
    /// Diagonal block fixed to the identity.
    Identity,
    /// Diagonal block ranging over `SL_n`.
    SL,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Identity => "id",
            BlockKind::SL => "sl",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("a block pattern needs at least 2 blocks, got {0}")]
    TooFewBlocks(usize),
    #[error("block {0} has size 0")]
    EmptyBlock(usize),
    #[error("{sizes} block sizes but {kinds} kinds")]
    KindArity { sizes: usize, kinds: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid block pair ({0}, {1})")]
    InvalidBlockPair(usize, usize),
    #[error("unsupported pattern shape: {0}")]
    UnsupportedShape(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Block sizes, diagonal kinds, and an optional prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPattern {
    sizes: Vec<usize>,
    kinds: Vec<BlockKind>,
    prime: Option<u64>,
}

impl BlockPattern {
    pub fn new(
        sizes: Vec<usize>,
        kinds: Vec<BlockKind>,
        prime: Option<u64>,
    ) -> Result<BlockPattern, PatternError> {
        if sizes.len() < 2 {
            return Err(PatternError::TooFewBlocks(sizes.len()));
        }
        if let Some(b) = sizes.iter().position(|&n| n == 0) {
            return Err(PatternError::EmptyBlock(b));
        }
        if sizes.len() != kinds.len() {
            return Err(PatternError::KindArity { sizes: sizes.len(), kinds: kinds.len() });
        }
        if let Some(p) = prime.filter(|&p| !is_prime(p)) {
            return Err(PatternError::NotPrime(p));
        }
        Ok(BlockPattern { sizes, kinds, prime })
    }

    /// Identity first and last block, `SL` in between. With two blocks both
    /// are identity.
    pub fn standard(sizes: &[usize]) -> Result<BlockPattern, PatternError> {
        let k = sizes.len();
        let kinds = (0..k)
            .map(|b| if b == 0 || b + 1 == k { BlockKind::Identity } else { BlockKind::SL })
            .collect();
        BlockPattern::new(sizes.to_vec(), kinds, None)
    }

    pub fn with_prime(mut self, p: u64) -> Result<BlockPattern, PatternError> {
        if !is_prime(p) {
            return Err(PatternError::NotPrime(p));
        }
        self.prime = Some(p);
        Ok(self)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn kinds(&self) -> &[BlockKind] {
        &self.kinds
    }

    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    /// Side length of the full matrix.
    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Global index of the first row/column of `block`.
    pub fn offset(&self, block: usize) -> usize {
        self.sizes[..block].iter().sum()
    }

    /// `(block, local index)` of a global row/column index.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let mut rest = global;
        for (b, &n) in self.sizes.iter().enumerate() {
            if rest < n {
                return (b, rest);
            }
            rest -= n;
        }
        panic!("index {global} outside a {}x{} pattern", self.total_size(), self.total_size());
    }

    /// `Σ_{i<j} n_i n_j`.
    pub fn u_dim(&self) -> usize {
        let s = self.total_size();
        (s * s - self.sizes.iter().map(|n| n * n).sum::<usize>()) / 2
    }

    /// True for the `(Identity, SL, SL, Identity)` shape.
    pub fn is_four_block_shape(&self) -> bool {
        use BlockKind::*;
        self.kinds == [Identity, SL, SL, Identity]
    }

    /// True for `(Identity, SL, ..., SL, Identity)` with at least two blocks.
    pub fn has_identity_ends(&self) -> bool {
        let k = self.kinds.len();
        self.kinds[0] == BlockKind::Identity
            && self.kinds[k - 1] == BlockKind::Identity
            && self.kinds[1..k - 1].iter().all(|&x| x == BlockKind::SL)
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sizes.iter().map(|n| n.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The matrix unit `e_pq` with row in block `i_block`, column in block `j_block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UBasisVector {
    pub i_block: usize,
    pub j_block: usize,
    pub row: usize,
    pub col: usize,
}

impl UBasisVector {
    pub fn global_row(&self, pattern: &BlockPattern) -> usize {
        pattern.offset(self.i_block) + self.row
    }

    pub fn global_col(&self, pattern: &BlockPattern) -> usize {
        pattern.offset(self.j_block) + self.col
    }
}

impl fmt::Display for UBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{}.{},{}.{}]", self.i_block, self.row, self.j_block, self.col)
    }
}

/// `u` with its basis and structure constants.
#[derive(Debug, Clone)]
pub struct NilLie {
    pattern: BlockPattern,
    basis: Vec<UBasisVector>,
    by_entry: HashMap<(usize, usize), usize>,
    /// Nonzero brackets `[e_a, e_b]` for `a < b`. Matrix-unit commutators are
    /// a single basis vector with sign ±1.
    brackets: HashMap<(usize, usize), (usize, i8)>,
}

/// Builds `u` for a block pattern: basis in lexicographic
/// `(i_block, j_block, row, col)` order, bracket the matrix commutator.
pub fn build_u(pattern: &BlockPattern) -> NilLie {
    let k = pattern.num_blocks();
    let sizes = pattern.sizes();
    let mut basis = Vec::with_capacity(pattern.u_dim());
    for i in 0..k {
        for j in i + 1..k {
            for row in 0..sizes[i] {
                for col in 0..sizes[j] {
                    basis.push(UBasisVector { i_block: i, j_block: j, row, col });
                }
            }
        }
    }
    let by_entry: HashMap<(usize, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(a, v)| ((v.global_row(pattern), v.global_col(pattern)), a))
        .collect();
    let mut brackets = HashMap::new();
    for a in 0..basis.len() {
        let (p, q) = (basis[a].global_row(pattern), basis[a].global_col(pattern));
        for b in a + 1..basis.len() {
            let (r, s) = (basis[b].global_row(pattern), basis[b].global_col(pattern));
            // [e_pq, e_rs] = δ_qr e_ps − δ_sp e_rq; both terms cannot fire at once
            // because that would force p < q = r < s = p.
            if q == r {
                brackets.insert((a, b), (by_entry[&(p, s)], 1));
            } else if s == p {
                brackets.insert((a, b), (by_entry[&(r, q)], -1));
            }
        }
    }
    let u = NilLie { pattern: pattern.clone(), basis, by_entry, brackets };
    debug_assert!(u.dim() > 40 || u.jacobi_violation().is_none(), "Jacobi identity fails");
    u
}

impl NilLie {
    pub fn pattern(&self) -> &BlockPattern {
        &self.pattern
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[UBasisVector] {
        &self.basis
    }

    /// Basis index of the matrix unit at global position `(p, q)`.
    pub fn index_of(&self, p: usize, q: usize) -> Option<usize> {
        self.by_entry.get(&(p, q)).copied()
    }

    /// Basis index of `e_{(i_block,row),(j_block,col)}`.
    pub fn index_in_blocks(&self, i_block: usize, row: usize, j_block: usize, col: usize) -> Option<usize> {
        let k = self.pattern.num_blocks();
        if i_block >= k || j_block >= k || row >= self.pattern.sizes()[i_block] || col >= self.pattern.sizes()[j_block] {
            return None;
        }
        self.index_of(self.pattern.offset(i_block) + row, self.pattern.offset(j_block) + col)
    }

    /// `[e_a, e_b]` as `(basis index, ±1)`, or `None` when it vanishes.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i8)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => self.brackets.get(&(a, b)).copied(),
            std::cmp::Ordering::Greater => self.brackets.get(&(b, a)).map(|&(c, s)| (c, -s)),
        }
    }

    /// Number of nonzero structure constants `[e_a, e_b]` with `a < b`.
    pub fn nonzero_brackets(&self) -> usize {
        self.brackets.len()
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                if let Some((c, s)) = self.bracket(*a, *b) {
                    terms.push((c, xa * yb * Rat::from_int(s as i64)));
                }
            }
        }
        SparseVec::from_entries(terms)
    }

    /// First basis triple violating `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let e = SparseVec::unit;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let mut s = self.bracket_vec(&e(a), &self.bracket_vec(&e(b), &e(c)));
                    s.axpy(&Rat::ONE, &self.bracket_vec(&e(b), &self.bracket_vec(&e(c), &e(a))));
                    s.axpy(&Rat::ONE, &self.bracket_vec(&e(c), &self.bracket_vec(&e(a), &e(b))));
                    if !s.is_empty() {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// `[u, u]`, spanned by all basis brackets.
    pub fn derived_subalgebra(&self) -> Subspace {
        Subspace::span(self.dim(), self.brackets.values().map(|&(c, _)| SparseVec::unit(c)))
    }

    /// Coordinate span of the basis vectors in block pair `(i, j)`.
    pub fn block_span(&self, i: usize, j: usize) -> Result<Subspace, PatternError> {
        if i >= j || j >= self.pattern.num_blocks() {
            return Err(PatternError::InvalidBlockPair(i, j));
        }
        Ok(Subspace::span(self.dim(), self.block_indices(i, j).map(SparseVec::unit)))
    }

    /// Basis indices of block pair `(i, j)`, in order.
    pub fn block_indices(&self, i: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.basis.iter().enumerate().filter(move |(_, v)| v.i_block == i && v.j_block == j).map(|(a, _)| a)
    }
}
