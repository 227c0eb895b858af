// SPDX-License-Identifier: Apache-2.0

//! Dense polynomials over GF(2), bit `i` holding the coefficient of `x^i`.

use std::cmp::Ordering;
use std::fmt;

use super::matrix::BinMatrix;
use super::vector::BinVector;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(degree: usize) -> Self {
        let mut p = Self::zero();
        p.set_coeff(degree, true);
        p
    }

    /// From the exponents with nonzero coefficient, e.g. `[3, 1, 0]` for `x^3 + x + 1`.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.words.resize(p.words.len().max(e / 64 + 1), 0);
            p.words[e / 64] ^= 1 << (e % 64);
        }
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.words
            .last()
            .map(|w| (self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if value {
            if self.words.len() <= i / 64 {
                self.words.resize(i / 64 + 1, 0);
            }
            self.words[i / 64] |= 1 << (i % 64);
        } else if i / 64 < self.words.len() {
            self.words[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Self { words };
        p.trim();
        p
    }

    fn shifted_xor(&mut self, other: &Gf2Poly, shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (k, &w) in other.words.iter().enumerate() {
            self.words[k + ws] ^= w << bs;
            if bs != 0 {
                self.words[k + ws + 1] ^= w >> (64 - bs);
            }
        }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        let mut out = Self::zero();
        let Some(d) = self.degree() else {
            return out;
        };
        for i in 0..=d {
            if self.coeff(i) {
                out.shifted_xor(other, i);
            }
        }
        out.trim();
        out
    }

    /// Euclidean division; panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Gf2Poly) -> (Gf2Poly, Gf2Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quot.set_coeff(shift, true);
            rem.shifted_xor(divisor, shift);
            rem.trim();
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Gf2Poly) -> Gf2Poly {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Gf2Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &Gf2Poly) -> Gf2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn lcm(&self, other: &Gf2Poly) -> Gf2Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        self.div_rem(&self.gcd(other)).0.mul(other)
    }

    pub fn pow(&self, e: usize) -> Gf2Poly {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Evaluates `p(A) v` by Horner's rule.
    pub fn apply(&self, a: &BinMatrix, v: &BinVector) -> BinVector {
        let mut acc = BinVector::zeros(v.len());
        let Some(d) = self.degree() else {
            return acc;
        };
        for i in (0..=d).rev() {
            acc = a.mul_vec(&acc);
            if self.coeff(i) {
                acc.xor_assign(v);
            }
        }
        acc
    }

    /// Companion matrix: ones on the subdiagonal, last column holding the
    /// low-order coefficients. Panics on the zero polynomial.
    pub fn companion(&self) -> BinMatrix {
        let d = self.degree().expect("companion of zero polynomial");
        let mut c = BinMatrix::zeros(d, d);
        for j in 0..d.saturating_sub(1) {
            c.set(j + 1, j, true);
        }
        for i in 0..d {
            if self.coeff(i) {
                c.set(i, d - 1, true);
            }
        }
        c
    }

    /// Cheap irreducibility test by trial division; fine for the small degrees used here.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let mut cand = Self::zero();
        for bits in 2u64..(1u64 << (d / 2 + 1)) {
            cand.words = vec![bits];
            if cand.degree().is_some_and(|cd| cd >= 1 && 2 * cd <= d) && cand.divides(self) {
                return false;
            }
        }
        true
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=d).rev().filter(|&i| self.coeff(i)) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}
