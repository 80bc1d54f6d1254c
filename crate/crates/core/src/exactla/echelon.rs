//! Row reduction, subspaces, and affine solving.
//!
//! Everything funnels through [`Echelon`], an incrementally built row basis.
//! In reduced mode every pivot column is cleared from all other rows as soon
//! as the pivot appears, so the finished basis sorted by pivot is the unique
//! reduced row echelon form of the span. In rank-only mode that
//! back-substitution is skipped.

use super::{LinAlgError, QMatrix, Rat, SparseVec};

const NO_PIVOT: usize = usize::MAX;

/// An echelon basis of a subspace of `Q^dim`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    reduced: bool,
    rows: Vec<SparseVec>,
    pivot_row: Vec<usize>,
}

impl Echelon {
    /// Basis kept in reduced row echelon form.
    pub fn reduced(dim: usize) -> Echelon {
        Echelon { dim, reduced: true, rows: Vec::new(), pivot_row: vec![NO_PIVOT; dim] }
    }

    /// Basis kept only in row echelon form; cheaper when only the rank or
    /// membership is needed.
    pub fn rank_only(dim: usize) -> Echelon {
        Echelon { reduced: false, ..Echelon::reduced(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts multiples of basis rows until no pivot column of `v` is
    /// nonzero. The result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut from = 0usize;
        loop {
            let hit = v
                .entries()
                .iter()
                .skip(from)
                .position(|(c, _)| self.pivot_row[*c] != NO_PIVOT)
                .map(|k| k + from);
            let Some(k) = hit else { break };
            let (c, coeff) = v.entries()[k].clone();
            v.axpy(&-coeff, &self.rows[self.pivot_row[c]]);
            // entries before position k are untouched non-pivot columns
            from = v.entries().iter().position(|(i, _)| *i > c).unwrap_or(v.len());
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    ///
    /// Panics if `v` has an index outside `0..dim`.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        assert!(v.max_index().is_none_or(|m| m < self.dim), "vector exceeds ambient dimension");
        let mut r = self.reduce(v);
        let Some((c, lead)) = r.leading().cloned() else {
            return false;
        };
        if !lead.is_one() {
            r.scale(&lead.recip());
        }
        if self.reduced {
            for row in &mut self.rows {
                let f = row.get(c);
                if !f.is_zero() {
                    row.axpy(&-f, &r);
                }
            }
        }
        self.pivot_row[c] = self.rows.len();
        self.rows.push(r);
        true
    }

    pub fn extend<I: IntoIterator<Item = SparseVec>>(&mut self, vs: I) {
        for v in vs {
            self.insert(v);
        }
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_row[c] != NO_PIVOT).collect()
    }

    /// Basis rows ordered by pivot column.
    pub fn sorted_rows(&self) -> Vec<SparseVec> {
        self.pivots().into_iter().map(|c| self.rows[self.pivot_row[c]].clone()).collect()
    }

    /// Canonical subspace. Only available for a reduced basis.
    pub fn to_subspace(&self) -> Subspace {
        assert!(self.reduced, "canonical form requires a reduced echelon basis");
        Subspace {
            ambient_dim: self.dim,
            pivots: self.pivots(),
            basis: QMatrix::from_sparse_rows(self.dim, self.sorted_rows()),
        }
    }
}

/// Canonical reduced row echelon form of `m` (zero rows at the bottom) and
/// its pivot columns.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    let mut e = Echelon::reduced(m.cols());
    e.extend(m.row_vectors());
    let mut rows = e.sorted_rows();
    rows.resize(m.rows(), SparseVec::new());
    (QMatrix::from_sparse_rows(m.cols(), rows), e.pivots())
}

pub fn rank(m: &QMatrix) -> usize {
    let mut e = Echelon::rank_only(m.cols());
    e.extend(m.row_vectors());
    e.rank()
}

/// Rank of the column span of vectors living in `Q^dim`.
pub fn rank_of<I: IntoIterator<Item = SparseVec>>(dim: usize, vs: I) -> usize {
    let mut e = Echelon::rank_only(dim);
    e.extend(vs);
    e.rank()
}

/// A subspace of `Q^ambient_dim` held by its reduced row echelon basis.
/// Two subspaces are equal iff their canonical bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Subspace {
        Echelon::reduced(ambient_dim).to_subspace()
    }

    pub fn full(ambient_dim: usize) -> Subspace {
        Subspace::span(ambient_dim, (0..ambient_dim).map(SparseVec::unit))
    }

    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vs: I) -> Subspace {
        let mut e = Echelon::reduced(ambient_dim);
        e.extend(vs);
        e.to_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<SparseVec> {
        self.basis.row_vectors()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::reduced(self.ambient_dim);
        for (k, row) in self.basis_vectors().into_iter().enumerate() {
            e.pivot_row[self.pivots[k]] = k;
            e.rows.push(row);
        }
        e
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon().contains(v)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        e.extend(other.basis_vectors());
        Ok(e.to_subspace())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        let e = other.echelon();
        Ok(self.basis_vectors().iter().all(|v| e.contains(v)))
    }
}

/// Null space of `m`.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    let n = m.cols();
    let mut e = Echelon::reduced(n);
    e.extend(m.row_vectors());
    let pivots = e.pivots();
    let rows = e.sorted_rows();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    // Free column f gives e_f - sum_i R[i][f] e_{pivot_i}.
    let mut gens: Vec<Vec<(usize, Rat)>> =
        (0..n).map(|f| if is_pivot[f] { Vec::new() } else { vec![(f, Rat::ONE)] }).collect();
    for (row, &pc) in rows.iter().zip(&pivots) {
        for (f, v) in row.iter() {
            if *f != pc {
                gens[*f].push((pc, -v));
            }
        }
    }
    Subspace::span(
        n,
        gens.into_iter().enumerate().filter(|(f, _)| !is_pivot[*f]).map(|(_, g)| SparseVec::from_entries(g)),
    )
}

/// Column span of `m`.
pub fn image_basis(m: &QMatrix) -> Subspace {
    Subspace::span(m.rows(), m.column_vectors())
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> Result<bool, LinAlgError> {
    a.check_ambient(b)?;
    Ok(a == b)
}

/// `a ∩ b = 0`, equivalently `dim(a + b) = dim a + dim b`.
pub fn direct_sum_check(a: &Subspace, b: &Subspace) -> Result<bool, LinAlgError> {
    Ok(a.sum(b)?.dim() == a.dim() + b.dim())
}

/// Solution set of `m · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Empty,
    Point(Vec<Rat>),
    /// `particular + span(directions)` with at least one direction.
    Affine { particular: Vec<Rat>, directions: Vec<Vec<Rat>> },
}

impl AffineSolution {
    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSolution::Empty)
    }

    /// Range of coordinate `i` over the solution set: `None` if empty,
    /// `Some(Some(v))` if fixed at `v`, `Some(None)` if it takes every rational value.
    pub fn coordinate_range(&self, i: usize) -> Option<Option<Rat>> {
        match self {
            AffineSolution::Empty => None,
            AffineSolution::Point(x) => Some(Some(x[i].clone())),
            AffineSolution::Affine { particular, directions } => {
                if directions.iter().any(|d| !d[i].is_zero()) {
                    Some(None)
                } else {
                    Some(Some(particular[i].clone()))
                }
            }
        }
    }
}

pub fn solve_affine(m: &QMatrix, rhs: &[Rat]) -> Result<AffineSolution, LinAlgError> {
    if rhs.len() != m.rows() {
        return Err(LinAlgError::DimensionMismatch { left: m.rows(), right: rhs.len() });
    }
    let n = m.cols();
    let augmented: Vec<SparseVec> = m
        .row_vectors()
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.axpy(b, &SparseVec::unit(n));
            row
        })
        .collect();
    let mut e = Echelon::reduced(n + 1);
    e.extend(augmented);
    let pivots = e.pivots();
    if pivots.last() == Some(&n) {
        return Ok(AffineSolution::Empty);
    }
    let mut particular = vec![Rat::ZERO; n];
    for (row, &pc) in e.sorted_rows().iter().zip(&pivots) {
        particular[pc] = row.get(n);
    }
    let directions: Vec<Vec<Rat>> =
        kernel_basis(m).basis_vectors().iter().map(|v| v.to_dense(n)).collect();
    if directions.is_empty() {
        Ok(AffineSolution::Point(particular))
    } else {
        Ok(AffineSolution::Affine { particular, directions })
    }
}
