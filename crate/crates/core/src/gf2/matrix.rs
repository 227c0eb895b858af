// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::ops::{Add, Mul};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vector::{words_for, BinVector, WORD};
use super::Gf2Error;

/// Row-major bit-packed binary matrix. Bits past `cols` in each row are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from `0`/`1` row strings; panics on anything else.
    /// Intended for literals in code and tests; see [`super::parse_matrix`] for input files.
    pub fn from_rows(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix literal");
            for (j, c) in r.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => panic!("invalid matrix literal character {:?}", c as char),
                }
            }
        }
        m
    }

    pub fn from_row_vectors(rows: &[BinVector], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.set_row(i, r);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[BinVector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in c.ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    /// Permutation matrix sending basis vector `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }

    /// The qubit-order reversal permutation.
    pub fn reversal(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| i + j + 1 == n)
    }

    /// Rejection-sampled uniform element of GL(n, 2).
    ///
    /// Entries are drawn i.i.d. from a ChaCha8 stream seeded with `seed`, and the
    /// draw is repeated until the matrix has full rank. Each attempt succeeds
    /// with probability above 0.288, so the loop finishes after a handful of
    /// draws and the result is uniform over the group.
    pub fn random_invertible(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "random_invertible needs n >= 1");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_invertible_with(n, &mut rng)
    }

    pub fn random_invertible_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random_with(n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn random_with<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        for w in m.data.iter_mut() {
            *w = rng.gen();
        }
        m.clear_padding();
        m
    }

    fn clear_padding(&mut self) {
        let rem = self.cols % WORD;
        if rem == 0 || self.stride == 0 {
            return;
        }
        let mask = (1u64 << rem) - 1;
        for i in 0..self.rows {
            self.data[i * self.stride + self.stride - 1] &= mask;
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        let mask = 1u64 << (j % WORD);
        let w = &mut self.data[i * self.stride + j / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BinVector {
        BinVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn column(&self, j: usize) -> BinVector {
        BinVector::from_bits((0..self.rows).map(|i| self.get(i, j)))
    }

    pub fn set_row(&mut self, i: usize, v: &BinVector) {
        assert_eq!(v.len(), self.cols);
        let s = self.stride;
        self.data[i * s..(i + 1) * s].copy_from_slice(v.words());
    }

    /// `row[dst] ^= row[src]`
    #[inline]
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Column indices of the ones in row `i`.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * WORD + b)
                }
            })
        })
    }

    /// All `(row, col)` positions holding a one, row-major.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |i| self.row_ones(i).map(move |j| (i, j)))
    }

    pub fn mul(&self, other: &BinMatrix) -> Result<BinMatrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in self.row_ones(i) {
                for (d, x) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= x;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &BinVector) -> BinVector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        BinVector::from_bits((0..self.rows).map(|i| {
            self.row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                & 1
                == 1
        }))
    }

    /// Row vector times matrix: `v^T * self`.
    pub fn vec_mul(&self, v: &BinVector) -> BinVector {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        let mut acc = vec![0u64; self.stride];
        for i in v.ones() {
            for (a, x) in acc.iter_mut().zip(self.row_words(i)) {
                *a ^= x;
            }
        }
        BinVector::from_words(self.cols, acc)
    }

    pub fn add(&self, other: &BinMatrix) -> Result<BinMatrix, Gf2Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Gf2Error::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> BinMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Row-reduces a copy and returns the number of pivots.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for j in 0..self.cols {
            let Some(p) = (rank..m.rows).find(|&i| m.get(i, j)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for i in (rank + 1)..m.rows {
                if m.get(i, j) {
                    m.xor_row_into(rank, i);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<BinMatrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for j in 0..n {
            let Some(p) = (j..n).find(|&i| a.get(i, j)) else {
                return Err(Gf2Error::Singular);
            };
            a.swap_rows(j, p);
            inv.swap_rows(j, p);
            for i in 0..n {
                if i != j && a.get(i, j) {
                    a.xor_row_into(j, i);
                    inv.xor_row_into(j, i);
                }
            }
        }
        Ok(inv)
    }

    /// Flip along the anti-diagonal: `out(i, j) = self(n-1-j, n-1-i)`.
    pub fn anti_transpose(&self) -> Result<BinMatrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for (i, j) in self.ones() {
            out.set(n - 1 - j, n - 1 - i, true);
        }
        Ok(out)
    }

    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> BinMatrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self.get(row0 + i, col0 + j))
    }

    /// Assembles `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &BinMatrix, b: &BinMatrix, c: &BinMatrix, d: &BinMatrix) -> BinMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let (top, left) = (a.rows, a.cols);
        let mut m = Self::zeros(a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, left), (c, top, 0), (d, top, left)] {
            for (i, j) in blk.ones() {
                m.set(r0 + i, c0 + j, true);
            }
        }
        m
    }

    /// Block-diagonal direct sum `a ⊕ b`.
    pub fn direct_sum(a: &BinMatrix, b: &BinMatrix) -> BinMatrix {
        Self::from_blocks(
            a,
            &Self::zeros(a.rows, b.cols),
            &Self::zeros(b.rows, a.cols),
            b,
        )
    }
}

impl Mul for &BinMatrix {
    type Output = BinMatrix;

    fn mul(self, rhs: &BinMatrix) -> BinMatrix {
        BinMatrix::mul(self, rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &BinMatrix {
    type Output = BinMatrix;

    fn add(self, rhs: &BinMatrix) -> BinMatrix {
        BinMatrix::add(self, rhs).expect("matrix sum dimension mismatch")
    }
}

impl fmt::Display for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
