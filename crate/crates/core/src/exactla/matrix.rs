use std::fmt;

use super::{LinAlgError, Rat, SparseVec};

/// Fraction of nonzero entries above which a matrix is stored densely.
pub const DENSE_THRESHOLD: f64 = 0.25;

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    Sparse(Vec<SparseVec>),
    Dense(Vec<Rat>),
}

/// A rational matrix, stored row-sparse unless more than a quarter of the
/// entries are nonzero.
#[derive(Clone)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, storage: Storage::Sparse(vec![SparseVec::new(); rows]) }
    }

    pub fn identity(n: usize) -> QMatrix {
        QMatrix::from_sparse_rows(n, (0..n).map(SparseVec::unit).collect())
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> QMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        QMatrix::from_sparse_rows(cols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter().map(|r| r.as_ref().iter().map(|&x| Rat::from_int(x)).collect()).collect(),
        )
    }

    /// Panics if an entry lies outside `cols`.
    pub fn from_sparse_rows(cols: usize, rows: Vec<SparseVec>) -> QMatrix {
        assert!(rows.iter().all(|r| r.max_index().is_none_or(|m| m < cols)), "entry out of range");
        let nrows = rows.len();
        let mut m = QMatrix { rows: nrows, cols, storage: Storage::Sparse(rows) };
        m.settle_storage();
        m
    }

    pub fn from_sparse_columns(rows: usize, columns: Vec<SparseVec>) -> QMatrix {
        let cols = columns.len();
        let mut buckets: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col.entries() {
                assert!(*r < rows, "entry out of range");
                buckets[*r].push((c, v.clone()));
            }
        }
        QMatrix::from_sparse_rows(cols, buckets.into_iter().map(SparseVec::from_entries).collect())
    }

    fn settle_storage(&mut self) {
        let cells = self.rows * self.cols;
        if cells == 0 {
            return;
        }
        let density = self.nnz() as f64 / cells as f64;
        let want_dense = density > DENSE_THRESHOLD;
        match (&self.storage, want_dense) {
            (Storage::Sparse(rows), true) => {
                let mut data = Vec::with_capacity(cells);
                for r in rows {
                    data.extend(r.to_dense(self.cols));
                }
                self.storage = Storage::Dense(data);
            }
            (Storage::Dense(_), false) => {
                let rows = (0..self.rows).map(|r| self.row(r)).collect();
                self.storage = Storage::Sparse(rows);
            }
            _ => {}
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.storage, Storage::Dense(_))
    }

    pub fn nnz(&self) -> usize {
        match &self.storage {
            Storage::Sparse(rows) => rows.iter().map(|r| r.len()).sum(),
            Storage::Dense(data) => data.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        match &self.storage {
            Storage::Sparse(rows) => rows[r].get(c),
            Storage::Dense(data) => data[r * self.cols + c].clone(),
        }
    }

    pub fn row(&self, r: usize) -> SparseVec {
        match &self.storage {
            Storage::Sparse(rows) => rows[r].clone(),
            Storage::Dense(data) => SparseVec::from_dense(&data[r * self.cols..(r + 1) * self.cols]),
        }
    }

    pub fn row_vectors(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column_vectors(&self) -> Vec<SparseVec> {
        self.transpose().row_vectors()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_dense(self.cols)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_sparse_columns(self.cols, self.row_vectors())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let rhs = other.row_vectors();
        let rows = (0..self.rows)
            .map(|r| {
                let mut acc = SparseVec::new();
                for (k, v) in self.row(r).iter() {
                    acc.axpy(v, &rhs[*k]);
                }
                acc
            })
            .collect();
        Ok(QMatrix::from_sparse_rows(other.cols, rows))
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>, LinAlgError> {
        if x.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { left: self.cols, right: x.len() });
        }
        Ok((0..self.rows).map(|r| self.row(r).dot_dense(x)).collect())
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rat, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_dense_rows();
        let mut det = Rat::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(Rat::ZERO);
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            let inv = piv.recip();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= &t;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Result<Option<QMatrix>, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.to_dense_rows();
        let mut inv = QMatrix::identity(n).to_dense_rows();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(None);
            };
            a.swap(p, c);
            inv.swap(p, c);
            let s = a[c][c].recip();
            for k in 0..n {
                a[c][k] *= &s;
                inv[c][k] *= &s;
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let f = a[r][c].clone();
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= &t;
                    let t = &f * &inv[c][k];
                    inv[r][k] -= &t;
                }
            }
        }
        Ok(Some(QMatrix::from_rows(inv)))
    }
}

impl PartialEq for QMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|r| self.row(r) == other.row(r))
    }
}

impl Eq for QMatrix {}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        if self.rows * self.cols <= 400 {
            for r in self.to_dense_rows() {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        } else {
            writeln!(f, "  .. {} nonzeros ..", self.nnz())?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_switches_on_density() {
        let sparse = QMatrix::from_int_rows(&[[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        assert!(!sparse.is_dense());
        let dense = QMatrix::from_int_rows(&[[1, 2], [0, 3]]);
        assert!(dense.is_dense());
        assert_eq!(dense.get(1, 1), Rat::from_int(3));
        assert_eq!(dense.transpose().get(1, 0), Rat::from_int(2));
    }

    #[test]
    fn product_and_inverse() {
        let a = QMatrix::from_int_rows(&[[2, 1], [1, 1]]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(2));
        assert_eq!(a.determinant().unwrap(), Rat::ONE);
        assert!(QMatrix::from_int_rows(&[[1, 2], [2, 4]]).inverse().unwrap().is_none());
        assert!(a.mul(&QMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn determinant_with_row_swap() {
        let a = QMatrix::from_int_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 5]]);
        assert_eq!(a.determinant().unwrap(), Rat::from_int(-5));
    }
}
