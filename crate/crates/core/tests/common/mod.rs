//! Independent oracle: builds `u` from explicit `N×N` matrix units, brackets
//! them by multiplying integer matrices, assembles `d2`/`d3` from the
//! defining formulas and takes ranks by dense elimination mod a 61-bit prime.
//! Shares no code with the library's bracket, boundary or rank routines.
#![allow(dead_code)]

use std::collections::HashMap;

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    r
}

fn reduce(x: i64) -> u64 {
    x.rem_euclid(P as i64) as u64
}

/// Rank mod `P` of a matrix given by sparse columns over `rows` rows.
pub fn rank_mod_p(rows: usize, cols: &[Vec<(usize, i64)>]) -> usize {
    // eliminate on the transpose: one dense row per column vector
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for c in cols {
        let mut v = vec![0u64; rows];
        for &(i, x) in c {
            v[i] = (v[i] + reduce(x)) % P;
        }
        for (piv, b) in &basis {
            let f = v[*piv];
            if f != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + P - mulmod(f, *bi)) % P;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = powmod(v[piv], P - 2);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv);
            }
            basis.push((piv, v));
        }
    }
    basis.len()
}

/// `u` for block sizes `sizes`, as a list of matrix-unit positions `(p, q)`
/// with `p` in an earlier block than `q`.
pub struct OracleLie {
    pub n: usize,
    pub units: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl OracleLie {
    pub fn new(sizes: &[usize]) -> OracleLie {
        let mut block_of = Vec::new();
        for (b, &s) in sizes.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, s));
        }
        let n = block_of.len();
        let units: Vec<(usize, usize)> =
            (0..n).flat_map(|p| (0..n).map(move |q| (p, q))).filter(|&(p, q)| block_of[p] < block_of[q]).collect();
        let index = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        OracleLie { n, units, index }
    }

    pub fn dim(&self) -> usize {
        self.units.len()
    }

    fn matrix(&self, a: usize) -> Vec<i64> {
        let mut m = vec![0; self.n * self.n];
        let (p, q) = self.units[a];
        m[p * self.n + q] = 1;
        m
    }

    fn mat_mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                if x[i * n + k] != 0 {
                    for j in 0..n {
                        out[i * n + j] += x[i * n + k] * y[k * n + j];
                    }
                }
            }
        }
        out
    }

    /// `[x_a, x_b]` in `u` coordinates, by multiplying matrices.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let (x, y) = (self.matrix(a), self.matrix(b));
        let xy = self.mat_mul(&x, &y);
        let yx = self.mat_mul(&y, &x);
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = xy[i * self.n + j] - yx[i * self.n + j];
                if c != 0 {
                    out.push((self.index[&(i, j)], c));
                }
            }
        }
        out
    }

    fn pair_index(&self, a: usize, b: usize) -> (usize, i64) {
        let d = self.dim();
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        // position of (lo, hi) in lexicographic order of pairs
        (lo * d - lo * (lo + 1) / 2 + (hi - lo - 1), s)
    }

    fn wedge_into(&self, out: &mut Vec<(usize, i64)>, a: usize, v: &[(usize, i64)], coeff: i64) {
        for &(c, x) in v {
            if c != a {
                let (i, s) = self.pair_index(a, c);
                out.push((i, s * x * coeff));
            }
        }
    }

    pub fn d2_columns(&self) -> Vec<Vec<(usize, i64)>> {
        let d = self.dim();
        let mut cols = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                cols.push(self.bracket(a, b).into_iter().map(|(i, x)| (i, -x)).collect());
            }
        }
        cols
    }

    /// `d3(x1∧x2∧x3) = x3∧[x1,x2] + x2∧[x3,x1] + x1∧[x2,x3]`.
    pub fn d3_columns(&self) -> Vec<Vec<(usize, i64)>> {
        let d = self.dim();
        let mut cols = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let mut col = Vec::new();
                    self.wedge_into(&mut col, c, &self.bracket(a, b), 1);
                    self.wedge_into(&mut col, b, &self.bracket(c, a), 1);
                    self.wedge_into(&mut col, a, &self.bracket(b, c), 1);
                    cols.push(col);
                }
            }
        }
        cols
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleDims {
    pub dim_u: usize,
    pub rank_d2: usize,
    pub rank_d3: usize,
    pub h1: usize,
    pub h2: usize,
}

pub fn oracle_dims(sizes: &[usize]) -> OracleDims {
    let u = OracleLie::new(sizes);
    let d = u.dim();
    let rank_d2 = rank_mod_p(d, &u.d2_columns());
    let rank_d3 = rank_mod_p(d * d.saturating_sub(1) / 2, &u.d3_columns());
    OracleDims { dim_u: d, rank_d2, rank_d3, h1: d - rank_d2, h2: d * d.saturating_sub(1) / 2 - rank_d2 - rank_d3 }
}

/// All block-size tuples with 2 to 4 blocks, sizes in `1..=4`, `dim u ≤ max_dim`.
pub fn size_patterns(max_dim: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 2..=4u32 {
        for code in 0..4usize.pow(k) {
            let sizes: Vec<usize> = (0..k).map(|i| code / 4usize.pow(i) % 4 + 1).collect();
            let total: usize = sizes.iter().sum();
            let diag: usize = sizes.iter().map(|s| s * s).sum();
            if (total * total - diag) / 2 <= max_dim {
                out.push(sizes);
            }
        }
    }
    out
}
