// SPDX-License-Identifier: Apache-2.0

//! Stabilizer tableaux. Row `i < n` is the image of `X_i`, row `n + i` the
//! image of `Z_i`, each stored as `(x | z)` bits plus a sign; `x_j = z_j = 1`
//! denotes the Hermitian `Y_j`. Global phase is not tracked.

use std::fmt::Write as _;

use super::clifford1q::{Clifford1Q, Elementary};
use super::CircuitError;
use crate::gf2::{BinMatrix, BinVector};

/// `i^phase` times the Hermitian Pauli named by `(x, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PauliString {
    pub x: BinVector,
    pub z: BinVector,
    pub phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BinVector::zeros(n),
            z: BinVector::zeros(n),
            phase: 0,
        }
    }

    /// `self <- self * other`
    pub fn mul_assign(&mut self, other: &PauliString) {
        let mut plus = 0u32;
        let mut minus = 0u32;
        for (((&x1, &z1), &x2), &z2) in self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words())
            .zip(other.z.words())
        {
            let p = (x1 & z1 & z2 & !x2) | (x1 & !z1 & z2 & x2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & z1 & x2 & !z2) | (x1 & !z1 & z2 & !x2) | (!x1 & z1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
        }
        let g = (plus as i64 - minus as i64).rem_euclid(4) as u8;
        self.phase = (self.phase + other.phase + g) % 4;
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic inner product: true when the two anticommute.
    pub fn anticommutes(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordTableau {
    n: usize,
    xs: Vec<BinVector>,
    zs: Vec<BinVector>,
    signs: BinVector,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        let xs = (0..2 * n)
            .map(|r| if r < n { BinVector::unit(n, r) } else { BinVector::zeros(n) })
            .collect();
        let zs = (0..2 * n)
            .map(|r| if r >= n { BinVector::unit(n, r - n) } else { BinVector::zeros(n) })
            .collect();
        Self {
            n,
            xs,
            zs,
            signs: BinVector::zeros(2 * n),
        }
    }

    /// Tableau of the linear reversible map `|x> -> |A x>`:
    /// `[[A^T, 0], [0, A^{-1}]]` with all signs positive.
    pub fn from_linear(a: &BinMatrix) -> Result<Self, CircuitError> {
        let inv = a.inverse()?;
        let n = a.rows();
        let at = a.transpose();
        let mut t = Self::identity(n);
        for i in 0..n {
            t.xs[i] = at.row(i);
            t.zs[n + i] = inv.row(i);
        }
        Ok(t)
    }

    /// Builds from a `2n x 2n` symplectic matrix and `2n` sign bits.
    pub fn from_parts(symplectic: &BinMatrix, signs: &BinVector) -> Result<Self, CircuitError> {
        let m = symplectic.rows();
        if symplectic.cols() != m || m % 2 != 0 || signs.len() != m {
            return Err(CircuitError::Tableau(format!(
                "expected a 2n x 2n matrix and 2n signs, got {}x{} and {}",
                symplectic.rows(),
                symplectic.cols(),
                signs.len()
            )));
        }
        let n = m / 2;
        let mut t = Self::identity(n);
        for r in 0..m {
            t.xs[r] = BinVector::from_bits((0..n).map(|j| symplectic.get(r, j)));
            t.zs[r] = BinVector::from_bits((0..n).map(|j| symplectic.get(r, n + j)));
        }
        t.signs = signs.clone();
        if !t.is_symplectic() {
            return Err(CircuitError::Tableau("matrix is not symplectic".into()));
        }
        Ok(t)
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn symplectic(&self) -> BinMatrix {
        let n = self.n;
        BinMatrix::from_fn(2 * n, 2 * n, |r, c| {
            if c < n {
                self.xs[r].get(c)
            } else {
                self.zs[r].get(c - n)
            }
        })
    }

    pub fn signs(&self) -> &BinVector {
        &self.signs
    }

    pub(crate) fn row(&self, r: usize) -> PauliString {
        PauliString {
            x: self.xs[r].clone(),
            z: self.zs[r].clone(),
            phase: if self.signs.get(r) { 2 } else { 0 },
        }
    }

    /// Rows pairwise satisfy the canonical commutation relations.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let rows: Vec<PauliString> = (0..2 * n).map(|r| self.row(r)).collect();
        for a in 0..2 * n {
            for b in a..2 * n {
                let expect = b == a + n && a < n;
                if rows[a].anticommutes(&rows[b]) != expect {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply_h(&mut self, q: usize) {
        for r in 0..2 * self.n {
            let (x, z) = (self.xs[r].get(q), self.zs[r].get(q));
            if x && z {
                self.signs.toggle(r);
            }
            self.xs[r].set(q, z);
            self.zs[r].set(q, x);
        }
    }

    pub fn apply_s(&mut self, q: usize) {
        for r in 0..2 * self.n {
            let (x, z) = (self.xs[r].get(q), self.zs[r].get(q));
            if x && z {
                self.signs.toggle(r);
            }
            self.zs[r].set(q, z ^ x);
        }
    }

    pub fn apply_cnot(&mut self, a: usize, b: usize) {
        for r in 0..2 * self.n {
            let (xa, za) = (self.xs[r].get(a), self.zs[r].get(a));
            let (xb, zb) = (self.xs[r].get(b), self.zs[r].get(b));
            if xa && zb && !(xb ^ za) {
                self.signs.toggle(r);
            }
            self.xs[r].set(b, xb ^ xa);
            self.zs[r].set(a, za ^ zb);
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        self.apply_h(b);
        self.apply_cnot(a, b);
        self.apply_h(b);
    }

    pub fn apply_cy(&mut self, c: usize, t: usize) {
        for _ in 0..3 {
            self.apply_s(t);
        }
        self.apply_cnot(c, t);
        self.apply_s(t);
    }

    pub fn apply_single(&mut self, q: usize, op: &Clifford1Q) {
        for e in op.word() {
            match e {
                Elementary::H => self.apply_h(q),
                Elementary::S => self.apply_s(q),
            }
        }
    }

    /// Follows `self` by the Pauli `X^x Z^z`, which only flips signs.
    pub fn then_pauli(&mut self, x: &BinVector, z: &BinVector) {
        let q = PauliString {
            x: x.clone(),
            z: z.clone(),
            phase: 0,
        };
        for r in 0..2 * self.n {
            if self.row(r).anticommutes(&q) {
                self.signs.toggle(r);
            }
        }
    }

    /// Image of a Pauli under this Clifford.
    pub(crate) fn conjugate(&self, p: &PauliString) -> PauliString {
        let n = self.n;
        let ycount: u32 = p
            .x
            .words()
            .iter()
            .zip(p.z.words())
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        let mut acc = PauliString::identity(n);
        acc.phase = ((p.phase as u32 + ycount) % 4) as u8;
        for j in 0..n {
            if p.x.get(j) {
                acc.mul_assign(&self.row(j));
            }
            if p.z.get(j) {
                acc.mul_assign(&self.row(n + j));
            }
        }
        acc
    }

    /// The Clifford "apply `self`, then `after`".
    pub fn then(&self, after: &CliffordTableau) -> Result<CliffordTableau, CircuitError> {
        if self.n != after.n {
            return Err(CircuitError::WidthMismatch {
                left: self.n,
                right: after.n,
            });
        }
        let mut out = Self::identity(self.n);
        for r in 0..2 * self.n {
            let img = after.conjugate(&self.row(r));
            debug_assert!(img.phase % 2 == 0, "image of a Hermitian Pauli is Hermitian");
            out.xs[r] = img.x;
            out.zs[r] = img.z;
            out.signs.set(r, img.phase == 2);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n;
        // symplectic inverse is Omega M^T Omega
        let m = self.symplectic();
        let inv = BinMatrix::from_fn(2 * n, 2 * n, |r, c| m.get((c + n) % (2 * n), (r + n) % (2 * n)));
        let mut w = Self::from_parts(&inv, &BinVector::zeros(2 * n)).expect("inverse is symplectic");
        let residual = self.then(&w).expect("same width");
        // residual is a Pauli; cancel it
        let x = BinVector::from_bits((0..n).map(|j| residual.signs.get(n + j)));
        let z = BinVector::from_bits((0..n).map(|j| residual.signs.get(j)));
        w.then_pauli(&x, &z);
        w
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// `QUBITS n`, then `2n` rows of `2n` bits, then one row of `2n` sign bits.
pub fn format_tableau(t: &CliffordTableau) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "QUBITS {}", t.n);
    s.push_str(&t.symplectic().to_string());
    let _ = writeln!(s, "{}", t.signs);
    s
}

pub fn parse_tableau(text: &str) -> Result<CliffordTableau, CircuitError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |line: usize, message: String| CircuitError::Parse { line, message };
    let (ln, head) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty tableau".into()))?;
    let n: usize = head
        .strip_prefix("QUBITS")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, format!("expected QUBITS <n>, got {head:?}")))?;
    let mut rows = Vec::with_capacity(2 * n + 1);
    for _ in 0..=2 * n {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(ln, format!("expected {} bit rows", 2 * n + 1)))?;
        if l.len() != 2 * n || l.chars().any(|c| c != '0' && c != '1') {
            return Err(parse_err(ln, format!("expected {} bits, got {l:?}", 2 * n)));
        }
        rows.push(BinVector::from_bits(l.chars().map(|c| c == '1')));
    }
    if let Some((ln, l)) = lines.next() {
        return Err(parse_err(ln, format!("trailing content {l:?}")));
    }
    let signs = rows.pop().unwrap();
    let m = BinMatrix::from_row_vectors(&rows, 2 * n);
    CliffordTableau::from_parts(&m, &signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_tableau(n: usize, rng: &mut ChaCha8Rng) -> CliffordTableau {
        let mut t = CliffordTableau::identity(n);
        for _ in 0..10 * n * n + 10 {
            match rng.gen_range(0..3) {
                0 => t.apply_h(rng.gen_range(0..n)),
                1 => t.apply_s(rng.gen_range(0..n)),
                _ if n > 1 => {
                    let a = rng.gen_range(0..n);
                    let b = (a + rng.gen_range(1..n)) % n;
                    t.apply_cnot(a, b);
                }
                _ => {}
            }
        }
        t
    }

    #[test]
    fn hadamard_exchanges_x_and_z() {
        let mut t = CliffordTableau::identity(1);
        t.apply_h(0);
        assert_eq!(t.symplectic(), BinMatrix::from_rows(&["01", "10"]));
        assert!(t.signs().is_zero());
    }

    #[test]
    fn s_squared_is_z() {
        let mut t = CliffordTableau::identity(1);
        t.apply_s(0);
        t.apply_s(0);
        assert!(t.symplectic().is_identity());
        assert_eq!(t.signs(), &BinVector::from_bits([true, false]));
    }

    #[test]
    fn linear_tableau_matches_cnot() {
        let mut t = CliffordTableau::identity(2);
        t.apply_cnot(0, 1);
        let a = BinMatrix::from_rows(&["10", "11"]);
        assert_eq!(t, CliffordTableau::from_linear(&a).unwrap());
    }

    #[test]
    fn composition_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for _ in 0..10 {
                let a = random_tableau(n, &mut rng);
                let b = random_tableau(n, &mut rng);
                assert!(a.is_symplectic());
                assert!(a.then(&a.inverse()).unwrap().is_identity());
                assert!(a.inverse().then(&a).unwrap().is_identity());
                // composing tableaux agrees with replaying gates
                let ab = a.then(&b).unwrap();
                assert!(ab.is_symplectic());
                let mut replay = a.clone();
                replay.apply_h(0);
                let mut h = CliffordTableau::identity(n);
                h.apply_h(0);
                assert_eq!(replay, a.then(&h).unwrap());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t = random_tableau(4, &mut rng);
        let s = format_tableau(&t);
        assert_eq!(parse_tableau(&s).unwrap(), t);
        assert!(parse_tableau("QUBITS 1\n10\n10\n00\n").is_err());
    }
}
