use std::cmp::Ordering;

use super::Rat;

/// A sparse rational vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from unordered `(index, value)` pairs, summing repeats.
    pub fn from_entries(mut entries: Vec<(usize, Rat)>) -> SparseVec {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Rat)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    pub fn from_dense(values: &[Rat]) -> SparseVec {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(index: usize) -> SparseVec {
        SparseVec { entries: vec![(index, Rat::ONE)] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Rat)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(usize, Rat)> {
        self.entries.first()
    }

    pub fn get(&self, index: usize) -> Rat {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::ZERO; len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn scale(&mut self, c: &Rat) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for (_, v) in &mut self.entries {
            *v *= c;
        }
    }

    pub fn scaled(&self, c: &Rat) -> SparseVec {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: &Rat, other: &SparseVec) {
        if c.is_zero() || other.is_empty() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) => i.cmp(j),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, c * y));
                }
                Ordering::Equal => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = x + c * y;
                    if !s.is_zero() {
                        out.push((i, s));
                    }
                }
            }
        }
        self.entries = out;
    }

    pub fn dot_dense(&self, dense: &[Rat]) -> Rat {
        self.entries.iter().map(|(i, v)| v * &dense[*i]).sum()
    }

    /// Re-indexes through `map`; entries mapped to `None` are dropped.
    pub fn remap(&self, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_entries(
            self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))).collect(),
        )
    }
}

impl FromIterator<(usize, Rat)> for SparseVec {
    fn from_iter<T: IntoIterator<Item = (usize, Rat)>>(iter: T) -> Self {
        SparseVec::from_entries(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(i, v)| (i, Rat::from_int(v))).collect()
    }

    #[test]
    fn from_entries_merges_and_drops_zeros() {
        let v = sv(&[(3, 1), (1, 2), (3, -1), (0, 0)]);
        assert_eq!(v, sv(&[(1, 2)]));
    }

    #[test]
    fn axpy_cancels() {
        let mut a = sv(&[(0, 1), (2, 3)]);
        a.axpy(&Rat::from_int(-3), &sv(&[(2, 1), (5, 1)]));
        assert_eq!(a, sv(&[(0, 1), (5, -3)]));
    }
}
