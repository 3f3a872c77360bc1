//! Linear algebra over GF(2) on bit-packed rows.

use std::fmt;

use crate::{Error, Result};

/// Dense bit vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i);
        }
        v
    }

    /// Builds a vector from a support list. Duplicates cancel in pairs.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in support {
            if i >= len {
                return Err(Error::IndexOutOfRange { index: i, len });
            }
            v.toggle(i);
        }
        Ok(v)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len={})", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len={})", self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len={})", self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len={})", self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    /// Support in increasing order.
    pub fn support(&self) -> Vec<usize> {
        self.ones_iter().collect()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn and(&self, other: &BitVector) -> BitVector {
        let mut v = self.clone();
        v.and_assign(other);
        v
    }

    /// Size of the common support.
    pub fn overlap(&self, other: &BitVector) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn overlap_parity(&self, other: &BitVector) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn intersects(&self, other: &BitVector) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({}; {:?})", self.len, self.support())
    }
}

/// Matrix over GF(2) stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch { expected: cols, found: r.len() });
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from per-row support lists.
    pub fn from_supports<S: AsRef<[usize]>>(cols: usize, supports: &[S]) -> Result<Self> {
        let rows = supports
            .iter()
            .map(|s| BitVector::from_support(cols, s.as_ref().iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cols, rows })
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.rows.iter().map(BitVector::weight).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for c in r.ones_iter() {
                w[c] += 1;
            }
        }
        w
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = BinaryMatrix::zeros(self.cols, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            for c in r.ones_iter() {
                t.rows[c].set(i);
            }
        }
        t
    }

    /// `self · otherᵀ`, i.e. pairwise overlap parities of rows.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.cols });
        }
        let mut out = BinaryMatrix::zeros(self.rows.len(), other.rows.len());
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.overlap_parity(b) {
                    out.rows[i].set(j);
                }
            }
        }
        Ok(out)
    }

    /// Ordinary product `self · other`.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.cols != other.rows.len() {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows.len() });
        }
        let mut out = BinaryMatrix::zeros(self.rows.len(), other.cols);
        for (i, a) in self.rows.iter().enumerate() {
            for k in a.ones_iter() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: XOR of the rows selected by `coeffs`.
    pub fn combine_rows(&self, coeffs: &BitVector) -> Result<BitVector> {
        if coeffs.len() != self.rows.len() {
            return Err(Error::LengthMismatch { expected: self.rows.len(), found: coeffs.len() });
        }
        let mut acc = BitVector::zeros(self.cols);
        for i in coeffs.ones_iter() {
            acc.xor_assign(&self.rows[i]);
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn rank(&self) -> usize {
        RowBasis::from_rows(self.cols, &self.rows).rank()
    }

    pub fn in_row_space(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: v.len() });
        }
        Ok(RowBasis::from_rows(self.cols, &self.rows).contains(v))
    }

    /// Basis of `{v : M·v = 0}`, one vector per free column of the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::zeros(self.cols);
            v.set(f);
            for (r, &p) in pivots.iter().enumerate() {
                if rref[r].get(f) {
                    v.set(p);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<BinaryMatrix> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let mut a = self.rows.clone();
        let mut inv = BinaryMatrix::identity(n).rows;
        for c in 0..n {
            let p = (c..n).find(|&i| a[i].get(c))?;
            a.swap(c, p);
            inv.swap(c, p);
            for i in 0..n {
                if i != c && a[i].get(c) {
                    let (ra, ri) = (a[c].clone(), inv[c].clone());
                    a[i].xor_assign(&ra);
                    inv[i].xor_assign(&ri);
                }
            }
        }
        Some(BinaryMatrix { cols: n, rows: inv })
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns, lowest column first.
    pub fn rref(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (rows, pivots)
    }
}

/// Incremental echelon basis keyed by lowest set bit.
#[derive(Clone, Debug)]
pub struct RowBasis {
    cols: usize,
    pivots: Vec<Option<BitVector>>,
    rank: usize,
}

impl RowBasis {
    pub fn new(cols: usize) -> Self {
        Self { cols, pivots: vec![None; cols], rank: 0 }
    }

    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut b = Self::new(cols);
        for r in rows {
            b.insert(r.clone());
        }
        b
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Residue of `v` after elimination against the basis.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut BitVector) -> Option<usize> {
        let mut from = 0;
        loop {
            let lead = next_one(v, from)?;
            match &self.pivots[lead] {
                Some(p) => v.xor_assign(p),
                None => return Some(lead),
            }
            from = lead + 1;
        }
    }

    /// Adds `v`; returns true if it was independent of the current span.
    pub fn insert(&mut self, mut v: BitVector) -> bool {
        match self.reduce_in_place(&mut v) {
            Some(lead) => {
                self.pivots[lead] = Some(v);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut v = v.clone();
        self.reduce_in_place(&mut v).is_none()
    }
}

fn next_one(v: &BitVector, from: usize) -> Option<usize> {
    let words = v.words();
    let mut k = from / 64;
    if k >= words.len() {
        return None;
    }
    let mut w = words[k] & (!0u64 << (from % 64));
    loop {
        if w != 0 {
            return Some(k * 64 + w.trailing_zeros() as usize);
        }
        k += 1;
        if k >= words.len() {
            return None;
        }
        w = words[k];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_identity_ranks() {
        assert_eq!(BinaryMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(BinaryMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn parity_row_kernel() {
        let m = BinaryMatrix::from_supports(4, &[vec![0, 1, 2, 3]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 3);
        for v in &k {
            assert!(!m.row(0).overlap_parity(v));
        }
    }

    #[test]
    fn row_space_membership() {
        let m = BinaryMatrix::identity(3);
        let v = BitVector::from_support(3, [0, 1]).unwrap();
        assert!(m.in_row_space(&v).unwrap());
        assert!(m.in_row_space(&BitVector::zeros(3)).unwrap());
        assert!(m.in_row_space(&BitVector::zeros(4)).is_err());
    }

    #[test]
    fn identity_has_empty_kernel() {
        assert!(BinaryMatrix::identity(5).kernel_basis().is_empty());
    }

    #[test]
    fn ones_iter_crosses_words() {
        let v = BitVector::from_support(200, [0, 63, 64, 130, 199]).unwrap();
        assert_eq!(v.support(), vec![0, 63, 64, 130, 199]);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.weight(), 5);
    }
}
