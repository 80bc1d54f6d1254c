//! `SL_n(Z) ⋉ Mat_{n×m}(Z)`: `SL_n` acts on the left of the abelian part,
//! `GL_m(Z)` on the right. Embedded in `GL_{n+m}` as `[[s, A], [0, I]]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::exactla::{kernel_basis, solve_affine, AffineSolution, QMatrix, Rat, SparseVec};

use super::GroupError;

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ZMatrix {
        ZMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ZMatrix {
        let mut m = ZMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, c: i64) -> ZMatrix {
        ZMatrix::identity(n).scaled(&BigInt::from(c))
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<ZMatrix, GroupError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(GroupError::ShapeMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().map(|&x| BigInt::from(x))).collect();
        Ok(ZMatrix { rows: rows.len(), cols, data })
    }

    /// Square matrix from `n*n` row-major entries.
    pub fn square_from_flat(entries: &[i64]) -> Result<ZMatrix, GroupError> {
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() || n == 0 {
            return Err(GroupError::ShapeMismatch(format!("{} entries do not form a square matrix", entries.len())));
        }
        let rows: Vec<&[i64]> = entries.chunks(n).collect();
        ZMatrix::from_rows(&rows)
    }

    /// `I + e_{ij}`.
    pub fn elementary(n: usize, i: usize, j: usize, c: i64) -> ZMatrix {
        let mut m = ZMatrix::identity(n);
        m.data[i * n + j] += c;
        m
    }

    /// The unit matrix `e_{ij}` of shape `rows × cols`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> ZMatrix {
        let mut m = ZMatrix::zeros(rows, cols);
        m.data[i * cols + j] = BigInt::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &ZMatrix) -> Result<ZMatrix, GroupError> {
        if self.cols != other.rows {
            return Err(GroupError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ZMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ZMatrix) -> Result<ZMatrix, GroupError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(GroupError::ShapeMismatch("sum of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(ZMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scaled(&self, c: &BigInt) -> ZMatrix {
        ZMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> ZMatrix {
        self.scaled(&BigInt::from(-1))
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_rows(
            (0..self.rows)
                .map(|r| (0..self.cols).map(|c| Rat::from_bigint(self.get(r, c).clone())).collect())
                .collect(),
        )
    }

    fn from_qmatrix(q: &QMatrix) -> Option<ZMatrix> {
        let mut data = Vec::with_capacity(q.rows() * q.cols());
        for row in q.to_dense_rows() {
            for x in row {
                if !x.is_integer() {
                    return None;
                }
                data.push(x.numer());
            }
        }
        Some(ZMatrix { rows: q.rows(), cols: q.cols(), data })
    }

    pub fn determinant(&self) -> Result<BigInt, GroupError> {
        let d = self
            .to_qmatrix()
            .determinant()
            .map_err(|_| GroupError::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)))?;
        Ok(d.numer())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().is_ok_and(|d| d.abs().is_one())
    }

    pub fn inverse(&self) -> Result<ZMatrix, GroupError> {
        if !self.is_unimodular() {
            return Err(GroupError::NotUnimodular);
        }
        let inv = self.to_qmatrix().inverse().expect("square").expect("invertible");
        Ok(ZMatrix::from_qmatrix(&inv).expect("unimodular inverse is integral"))
    }
}

impl fmt::Debug for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `(s, A)` with `s ∈ SL_n(Z)`, `A ∈ Mat_{n×m}(Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SDElement {
    s: ZMatrix,
    a: ZMatrix,
}

impl SDElement {
    pub fn new(s: ZMatrix, a: ZMatrix) -> Result<SDElement, GroupError> {
        if s.rows != s.cols || a.rows != s.rows {
            return Err(GroupError::ShapeMismatch(format!(
                "s is {}x{}, A is {}x{}",
                s.rows, s.cols, a.rows, a.cols
            )));
        }
        if !s.determinant()?.is_one() {
            return Err(GroupError::Invariant("s must have determinant 1".into()));
        }
        Ok(SDElement { s, a })
    }

    pub fn identity(n: usize, m: usize) -> SDElement {
        SDElement { s: ZMatrix::identity(n), a: ZMatrix::zeros(n, m) }
    }

    pub fn s(&self) -> &ZMatrix {
        &self.s
    }

    pub fn a(&self) -> &ZMatrix {
        &self.a
    }

    /// `(n, m)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.s.rows, self.a.cols)
    }

    pub fn is_identity(&self) -> bool {
        let (n, m) = self.shape();
        *self == SDElement::identity(n, m)
    }

    pub fn inv(&self) -> SDElement {
        let s_inv = self.s.inverse().expect("det 1");
        let a = s_inv.mul(&self.a).expect("shapes agree").neg();
        SDElement { s: s_inv, a }
    }

    /// `[[s, A], [0, I_m]]`.
    pub fn embed(&self) -> ZMatrix {
        let (n, m) = self.shape();
        let mut out = ZMatrix::identity(n + m);
        for r in 0..n {
            for c in 0..n {
                out.data[r * (n + m) + c] = self.s.get(r, c).clone();
            }
            for c in 0..m {
                out.data[r * (n + m) + n + c] = self.a.get(r, c).clone();
            }
        }
        out
    }

    /// A random word in the generators `(I + ±e_ij, 0)` and `(I, ±e_ij)`.
    pub fn random(n: usize, m: usize, rng: &mut impl Rng, word_length: usize) -> SDElement {
        let mut x = SDElement::identity(n, m);
        for _ in 0..word_length {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let g = if n >= 2 && rng.gen_bool(0.5) {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                SDElement { s: ZMatrix::elementary(n, i, j, sign), a: ZMatrix::zeros(n, m) }
            } else {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..m));
                SDElement { s: ZMatrix::identity(n), a: ZMatrix::unit(n, m, i, j).scaled(&BigInt::from(sign)) }
            };
            x = sd_mul(&x, &g).expect("same shape");
        }
        x
    }
}

/// `(s1, A1)·(s2, A2) = (s1 s2, A1 + s1 A2)`.
pub fn sd_mul(x: &SDElement, y: &SDElement) -> Result<SDElement, GroupError> {
    if x.shape() != y.shape() {
        return Err(GroupError::ShapeMismatch(format!("{:?} vs {:?}", x.shape(), y.shape())));
    }
    Ok(SDElement { s: x.s.mul(&y.s)?, a: x.a.add(&x.s.mul(&y.a)?)? })
}

/// The automorphism `(s, A) ↦ (s, A·g)` for `g ∈ GL_m(Z)`.
pub fn phi_g(x: &SDElement, g: &ZMatrix) -> Result<SDElement, GroupError> {
    if !g.is_unimodular() {
        return Err(GroupError::NotUnimodular);
    }
    if g.rows != x.shape().1 {
        return Err(GroupError::ShapeMismatch(format!("g is {}x{}, m = {}", g.rows, g.cols, x.shape().1)));
    }
    Ok(SDElement { s: x.s.clone(), a: x.a.mul(g)? })
}

/// Conjugation `y·x·y⁻¹`.
pub fn conjugate(y: &SDElement, x: &SDElement) -> Result<SDElement, GroupError> {
    sd_mul(&sd_mul(y, x)?, &y.inv())
}

/// `phi_g` agrees with conjugation by `(ε·I_n, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerWitness {
    pub epsilon: i64,
    pub m: ZMatrix,
}

impl InnerWitness {
    pub fn element(&self) -> SDElement {
        let n = self.m.rows;
        SDElement { s: ZMatrix::scalar(n, self.epsilon), a: self.m.clone() }
    }
}

/// Row-major flattening index of `(r, c)` in an `rows × cols` matrix unknown.
fn var(cols: usize, r: usize, c: usize) -> usize {
    r * cols + c
}

/// Centralizer in `Mat_n(Q)` of the generators `I + e_ij`, `i ≠ j`: the
/// kernel of `X ↦ (e_ij X - X e_ij)` stacked over all generators.
fn centralizer_equations(n: usize) -> QMatrix {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            // (e_ij X)_{rc} = δ_ri X_jc ; (X e_ij)_{rc} = X_ri δ_jc
            for r in 0..n {
                for c in 0..n {
                    let mut entries = Vec::new();
                    if r == i {
                        entries.push((var(n, j, c), Rat::ONE));
                    }
                    if c == j {
                        entries.push((var(n, r, i), Rat::from_int(-1)));
                    }
                    let v = SparseVec::from_entries(entries);
                    if !v.is_empty() {
                        rows.push(v);
                    }
                }
            }
        }
    }
    QMatrix::from_sparse_rows(n * n, rows)
}

/// Admissible scalars `ε` with `ε·I_n` in the centralizer of `SL_n(Z)` and
/// `det(ε·I_n) = ε^n = 1`.
fn central_scalars(n: usize) -> Result<Vec<i64>, GroupError> {
    let cent = kernel_basis(&centralizer_equations(n));
    let identity = SparseVec::from_entries((0..n).map(|i| (var(n, i, i), Rat::ONE)).collect());
    if !cent.contains(&identity) || (n >= 2 && cent.dim() != 1) {
        return Err(GroupError::Invariant(format!("unexpected centralizer of dimension {}", cent.dim())));
    }
    Ok([1i64, -1].into_iter().filter(|&e| e.pow(n as u32) == 1).collect())
}

/// Decides whether `phi_g` is inner on `SL_n(Z) ⋉ Mat_{n×m}(Z)`.
///
/// Conjugation by `(s0, M)` with `s0 = ε·I` sends `(s, A)` to
/// `(s, M + εA - sM)`; equating with `(s, A·g)` on the generators gives the
/// linear system `(I - s')M = 0` for `s' = I + e_ij` and `εA = A·g` for every
/// unit matrix `A`. Each admissible `ε` is tried with an exact solve.
pub fn is_inner(g: &ZMatrix, n: usize, m: usize) -> Result<Option<InnerWitness>, GroupError> {
    if g.rows != m || g.cols != m {
        return Err(GroupError::ShapeMismatch(format!("g is {}x{}, expected {m}x{m}", g.rows, g.cols)));
    }
    if !g.is_unimodular() {
        return Err(GroupError::NotUnimodular);
    }
    if n == 0 || m == 0 {
        return Err(GroupError::InvalidParameter("n and m must be positive".into()));
    }
    let unknowns = n * m;
    for eps in central_scalars(n)? {
        let mut rows: Vec<SparseVec> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        // (I - s')M = -e_ij M: row r = i of the product is -M_{j,·}
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for c in 0..m {
                    rows.push(SparseVec::from_entries(vec![(var(m, j, c), Rat::ONE)]));
                    rhs.push(Rat::ZERO);
                }
            }
        }
        // 0·M = A·g - εA for every unit matrix A
        for i in 0..n {
            for j in 0..m {
                let a = ZMatrix::unit(n, m, i, j);
                let diff = a.mul(g)?.add(&a.scaled(&BigInt::from(-eps)))?;
                for x in diff.entries() {
                    rows.push(SparseVec::new());
                    rhs.push(Rat::from_bigint(x.clone()));
                }
            }
        }
        let system = QMatrix::from_sparse_rows(unknowns, rows);
        let particular = match solve_affine(&system, &rhs).expect("consistent shapes") {
            AffineSolution::Empty => continue,
            AffineSolution::Point(x) => x,
            AffineSolution::Affine { particular, .. } => particular,
        };
        if particular.iter().all(Rat::is_integer) {
            let mm = QMatrix::from_rows(particular.chunks(m).map(<[Rat]>::to_vec).collect());
            let mm = ZMatrix::from_qmatrix(&mm).expect("checked integral");
            return Ok(Some(InnerWitness { epsilon: eps, m: mm }));
        }
    }
    Ok(None)
}

/// What [`cohopf_embed`] established about `(s, A) ↦ (s, k·A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohopfReport {
    pub k: i64,
    pub n: usize,
    pub m: usize,
    pub samples: usize,
    pub homomorphism: bool,
    pub injective: bool,
    /// `[Mat : k·Mat]`, from the determinant of `A ↦ kA` on `Z^{nm}`.
    pub index: BigInt,
    /// `(I, e_11)` lies outside the image when `k ≥ 2`.
    pub proper: bool,
}

impl CohopfReport {
    pub fn verified(&self) -> bool {
        let expected = BigInt::from(self.k).pow((self.n * self.m) as u32);
        self.homomorphism && self.injective && self.index == expected && self.proper == (self.k >= 2)
    }
}

pub fn scale_abelian(x: &SDElement, k: i64) -> SDElement {
    SDElement { s: x.s.clone(), a: x.a.scaled(&BigInt::from(k)) }
}

/// Checks that `(s, A) ↦ (s, k·A)` embeds the group as a subgroup of index
/// `k^{nm}`; the algebraic identities are tested on `samples` random pairs.
pub fn cohopf_embed(
    k: i64,
    n: usize,
    m: usize,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CohopfReport, GroupError> {
    if k <= 0 {
        return Err(GroupError::InvalidParameter(format!("k must be positive, got {k}")));
    }
    if n == 0 || m == 0 {
        return Err(GroupError::InvalidParameter("n and m must be positive".into()));
    }
    let mut homomorphism = true;
    let mut injective = true;
    for _ in 0..samples {
        let x = SDElement::random(n, m, rng, 8);
        let y = SDElement::random(n, m, rng, 8);
        let lhs = scale_abelian(&sd_mul(&x, &y)?, k);
        let rhs = sd_mul(&scale_abelian(&x, k), &scale_abelian(&y, k))?;
        homomorphism &= lhs == rhs;
        // ψ(x) = ψ(y) ⇒ x = y, and ψ(x) = 1 ⇔ x = 1
        injective &= (scale_abelian(&x, k) == scale_abelian(&y, k)) == (x == y);
        injective &= scale_abelian(&x, k).is_identity() == x.is_identity();
    }
    let nm = n * m;
    let lattice_map = ZMatrix::scalar(nm, k);
    let index = lattice_map.determinant()?.abs();
    let witness = SDElement { s: ZMatrix::identity(n), a: ZMatrix::unit(n, m, 0, 0) };
    let proper = witness.a.entries().iter().any(|x| x % k != BigInt::zero());
    Ok(CohopfReport { k, n, m, samples, homomorphism, injective, index, proper })
}
