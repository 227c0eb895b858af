// SPDX-License-Identifier: Apache-2.0

use std::fmt;

pub(crate) const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Bit-packed vector over GF(2). Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinVector {
    len: usize,
    data: Vec<u64>,
}

impl BinVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            data: vec![0; words_for(len)],
        }
    }

    /// Standard basis vector `e_index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub(crate) fn from_words(len: usize, mut data: Vec<u64>) -> Self {
        data.resize(words_for(len), 0);
        let rem = len % WORD;
        if rem != 0 {
            if let Some(last) = data.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
        Self { len, data }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.data[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.data[i / WORD] |= mask;
        } else {
            self.data[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len);
        self.data[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// In-place XOR with another vector of the same length.
    pub fn xor_assign(&mut self, other: &BinVector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &BinVector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.data
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.iter().enumerate().flat_map(|(k, &w)| {
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

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.data
    }
}

impl fmt::Display for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinVector[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_stays_clear() {
        let v = BinVector::from_words(3, vec![u64::MAX]);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.to_string(), "111");
    }

    #[test]
    fn ones_iterates_set_bits() {
        let mut v = BinVector::zeros(130);
        for i in [0, 63, 64, 129] {
            v.set(i, true);
        }
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(v.first_one(), Some(0));
    }

    #[test]
    fn dot_is_parity_of_overlap() {
        let a = BinVector::from_bits([true, true, false, true]);
        let b = BinVector::from_bits([true, false, true, true]);
        assert!(!a.dot(&b));
    }
}
