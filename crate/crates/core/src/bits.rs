//! Dense bit-packed n-ary relations over an indexed finite domain.
//!
//! The public structures of this crate keep their relations as sorted sets of
//! named tuples; everything that loops over tuple spaces (axiom checks,
//! reconstructions, model search) converts to these first.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rel3 {
    pub n: usize,
    words: Vec<u64>,
}

impl Rel3 {
    pub fn new(n: usize) -> Self {
        Rel3 {
            n,
            words: vec![0; (n * n * n + 63) / 64],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        let b = self.idx(i, j, k);
        self.words[b >> 6] & (1 << (b & 63)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize) {
        let b = self.idx(i, j, k);
        self.words[b >> 6] |= 1 << (b & 63);
    }

    pub fn iter(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).filter_map(move |k| self.get(i, j, k).then_some([i, j, k])))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rel4 {
    pub n: usize,
    words: Vec<u64>,
}

impl Rel4 {
    pub fn new(n: usize) -> Self {
        Rel4 {
            n,
            words: vec![0; (n * n * n * n + 63) / 64],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> bool {
        let b = self.idx(i, j, k, l);
        self.words[b >> 6] & (1 << (b & 63)) != 0
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize) {
        let b = self.idx(i, j, k, l);
        self.words[b >> 6] |= 1 << (b & 63);
    }

    /// Inserts the whole orbit of `(i, j, k, l)` under the symmetries of the
    /// separation relation: both pairs may be flipped and the two pairs swapped.
    pub fn set_sym(&mut self, i: usize, j: usize, k: usize, l: usize) {
        for &(a, b, c, d) in &[
            (i, j, k, l),
            (j, i, k, l),
            (i, j, l, k),
            (j, i, l, k),
            (k, l, i, j),
            (l, k, i, j),
            (k, l, j, i),
            (l, k, j, i),
        ] {
            self.set(a, b, c, d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel3_roundtrip() {
        let mut r = Rel3::new(3);
        r.set(0, 1, 2);
        r.set(2, 2, 2);
        assert!(r.get(0, 1, 2));
        assert!(!r.get(1, 0, 2));
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![[0, 1, 2], [2, 2, 2]]);
    }

    #[test]
    fn rel4_symmetry_orbit() {
        let mut s = Rel4::new(4);
        s.set_sym(0, 1, 2, 3);
        assert!(s.get(1, 0, 3, 2));
        assert!(s.get(2, 3, 0, 1));
        assert!(!s.get(0, 2, 1, 3));
    }
}
