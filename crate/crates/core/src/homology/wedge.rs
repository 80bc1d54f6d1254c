//! Lexicographic bases of `Λ²u` and `Λ³u`.
//!
//! `e_a ∧ e_b` with `a < b` is the positive basis element; products in any
//! other order are sorted with the sign of the permutation.

/// Number of pairs `a < b` drawn from `0..n`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn triple_count(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Position of `e_a ∧ e_b` (`a < b < n`) in the lexicographic basis of `Λ²`.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

/// Position of `e_a ∧ e_b ∧ e_c` (`a < b < c < n`) in the basis of `Λ³`.
pub fn triple_index(n: usize, a: usize, b: usize, c: usize) -> usize {
    debug_assert!(a < b && b < c && c < n);
    let before: usize = (0..a).map(|x| pair_count(n - 1 - x)).sum();
    before + pair_index(n - a - 1, b - a - 1, c - a - 1)
}

/// `e_x ∧ e_y` as `(pair index, sign)`, or `None` when `x == y`.
pub fn wedge2(n: usize, x: usize, y: usize) -> Option<(usize, i8)> {
    match x.cmp(&y) {
        std::cmp::Ordering::Less => Some((pair_index(n, x, y), 1)),
        std::cmp::Ordering::Greater => Some((pair_index(n, y, x), -1)),
        std::cmp::Ordering::Equal => None,
    }
}

/// Sorts a triple, returning it with the permutation sign, or `None` on a repeat.
pub fn sort3(x: usize, y: usize, z: usize) -> Option<((usize, usize, usize), i8)> {
    if x == y || y == z || x == z {
        return None;
    }
    let mut v = [x, y, z];
    let mut sign = 1i8;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    Some(((v[0], v[1], v[2]), sign))
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
}
