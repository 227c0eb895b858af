// SPDX-License-Identifier: Apache-2.0

//! Counting bounds on commutative depth and size, in exact integer arithmetic,
//! and an exhaustive minimum-depth search for small linear groups.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::circuit::{Gate, Layer, LayeredCircuit};
use crate::gf2::BinMatrix;

/// Largest width accepted by [`exhaustive_min_depth`].
pub const MAX_SEARCH_WIDTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("width {0} is too large for exhaustive search (max {MAX_SEARCH_WIDTH})")]
    TooLarge(usize),
    #[error("width must be at least 1")]
    ZeroWidth,
    #[error("depth must be at least 1")]
    ZeroDepth,
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|GL(n, 2)| = prod_{i<n} (2^n - 2^i)`.
pub fn count_invertible(n: usize) -> BigUint {
    (0..n).map(|i| pow2(n) - pow2(i)).product()
}

/// Order of the Clifford group on `n` qubits modulo global phase:
/// `2^(n^2 + 2n) prod_{j=1..n} (4^j - 1)`.
pub fn clifford_count(n: usize) -> BigUint {
    let prod: BigUint = (1..=n).map(|j| pow2(2 * j) - 1u32).product();
    pow2(n * n + 2 * n) * prod
}

/// Exponent `n^2/4 + n` of the bound on distinct single CNOT layers.
pub fn layer_exponent(n: usize) -> BigRational {
    BigRational::new(BigInt::from(n * n + 4 * n), BigInt::from(4))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The counting bound proves some operation needs more than this depth.
    Insufficient,
    /// The counting bound does not rule this depth out.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Insufficient => "insufficient",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// Compares `d * 2^(d n^2/4 + d n)` circuits of depth `d` against `|GL(n, 2)|`.
/// Depth 0 realizes only the identity. Fourth powers keep the exponent integral.
pub fn linear_depth_feasibility(n: usize, d: usize) -> Verdict {
    let gl = count_invertible(n);
    let insufficient = if d == 0 {
        BigUint::one() < gl
    } else {
        BigUint::from(d).pow(4) * pow2(d * n * n + 4 * d * n) < gl.pow(4)
    };
    if insufficient {
        Verdict::Insufficient
    } else {
        Verdict::Inconclusive
    }
}

/// Exact count bound for single layers of generalized CNOT and single-qubit
/// Clifford gates: each of `n - i` active qubits carries one of three Paulis and
/// each active pair an optional gate; each of `i` idle qubits one of 24 gates.
pub fn clifford_layer_bound(n: usize) -> BigUint {
    (0..=n)
        .map(|i| {
            let k = n - i;
            binomial(n, i)
                * BigUint::from(3u32).pow(k as u32)
                * pow2(k * k.saturating_sub(1) / 2)
                * BigUint::from(24u32).pow(i as u32)
        })
        .sum()
}

/// Compares the number of Clifford circuits of depth at most `d` against the
/// Clifford group order.
pub fn clifford_depth_feasibility(n: usize, d: usize) -> Verdict {
    let layer = clifford_layer_bound(n);
    let mut circuits = BigUint::zero();
    let mut term = BigUint::one();
    for _ in 0..=d {
        circuits += &term;
        term *= &layer;
    }
    if circuits < clifford_count(n) {
        Verdict::Insufficient
    } else {
        Verdict::Inconclusive
    }
}

/// `n^2 / (2 (1 + log2 d))`: exact when `d` is a power of two, and always its
/// integer floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeThreshold {
    pub exact: Option<BigRational>,
    pub floor: BigUint,
}

/// `s <= n^2 / (2 (1 + log2 d))`, tested as `d^(2s) <= 2^(n^2 - 2s)`.
fn below_threshold(n: usize, d: usize, s: usize) -> bool {
    if s == 0 {
        return true;
    }
    if n * n < 2 * s {
        return false;
    }
    BigUint::from(d).pow(2 * s as u32) <= pow2(n * n - 2 * s)
}

pub fn size_threshold(n: usize, d: usize) -> Result<SizeThreshold, BoundsError> {
    if d == 0 {
        return Err(BoundsError::ZeroDepth);
    }
    let exact = d.is_power_of_two().then(|| {
        let log = d.trailing_zeros() as usize;
        BigRational::new(BigInt::from(n * n), BigInt::from(2 * (1 + log)))
    });
    let (mut lo, mut hi) = (0usize, n * n / 2);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if below_threshold(n, d, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(SizeThreshold {
        exact,
        floor: BigUint::from(lo),
    })
}

/// Whether `(d, s)` lies in the region `d <= n/5`, `s <= n^2/(2(1 + log2 d))`
/// where some Clifford operation has no circuit of that depth and size.
pub fn size_bound_check(n: usize, d: usize, s: usize) -> Result<bool, BoundsError> {
    if d == 0 {
        return Err(BoundsError::ZeroDepth);
    }
    Ok(5 * d <= n && below_threshold(n, d, s))
}

/// Smallest `n <= max_n` at which `verdict(n, d)` is insufficient.
pub fn smallest_insufficient(
    d: usize,
    max_n: usize,
    verdict: impl Fn(usize, usize) -> Verdict,
) -> Option<usize> {
    (1..=max_n).find(|&n| verdict(n, d) == Verdict::Insufficient)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub gl_count: BigUint,
    pub layer_exponent: BigRational,
    pub clifford_count: BigUint,
    pub clifford_layer_bound: BigUint,
    pub depth: Option<(usize, Verdict, Verdict)>,
    pub size: Option<(usize, SizeThreshold, bool)>,
}

/// `d` and `s` are optional; `s` needs `d`.
pub fn bounds_report(n: usize, d: Option<usize>, s: Option<usize>) -> Result<BoundsReport, BoundsError> {
    if n == 0 {
        return Err(BoundsError::ZeroWidth);
    }
    let depth = d.map(|d| (d, linear_depth_feasibility(n, d), clifford_depth_feasibility(n, d)));
    let size = match (d, s) {
        (Some(d), Some(s)) => Some((s, size_threshold(n, d)?, size_bound_check(n, d, s)?)),
        _ => None,
    };
    Ok(BoundsReport {
        n,
        gl_count: count_invertible(n),
        layer_exponent: layer_exponent(n),
        clifford_count: clifford_count(n),
        clifford_layer_bound: clifford_layer_bound(n),
        depth,
        size,
    })
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "gl_count={}", self.gl_count)?;
        writeln!(f, "layer_count_bound=2^({})", self.layer_exponent)?;
        writeln!(f, "clifford_count={}", self.clifford_count)?;
        writeln!(f, "clifford_layer_bound={}", self.clifford_layer_bound)?;
        writeln!(f, "clifford_layer_bound_bits={}", self.clifford_layer_bound.bits())?;
        if let Some((d, lin, cliff)) = &self.depth {
            writeln!(f, "d={d}")?;
            writeln!(f, "depth_d_circuit_bound={d}*2^({})", &self.layer_exponent * BigInt::from(*d))?;
            writeln!(f, "linear_depth_verdict={lin}")?;
            writeln!(f, "clifford_depth_verdict={cliff}")?;
        }
        if let Some((s, threshold, inside)) = &self.size {
            writeln!(f, "s={s}")?;
            match &threshold.exact {
                Some(t) => writeln!(f, "size_threshold={t}")?,
                None => writeln!(f, "size_threshold=irrational")?,
            }
            writeln!(f, "size_threshold_floor={}", threshold.floor)?;
            writeln!(f, "size_region={}", if *inside { "inside" } else { "outside" })?;
        }
        Ok(())
    }
}

/// One layer of commuting CNOTs: disjoint control and target sets.
#[derive(Clone, Debug)]
struct LayerMove {
    gates: Vec<(usize, usize)>,
    /// `masks[t]`: controls feeding target `t`
    masks: Vec<u8>,
}

fn layer_moves(n: usize) -> Vec<LayerMove> {
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut out = Vec::new();
    // role per qubit: 0 idle, 1 control, 2 target
    for code in 0..3usize.pow(n as u32) {
        let roles: Vec<usize> = (0..n).map(|q| code / 3usize.pow(q as u32) % 3).collect();
        let controls: Vec<usize> = (0..n).filter(|&q| roles[q] == 1).collect();
        let targets: Vec<usize> = (0..n).filter(|&q| roles[q] == 2).collect();
        let cells: Vec<(usize, usize)> = targets
            .iter()
            .flat_map(|&t| controls.iter().map(move |&c| (c, t)))
            .collect();
        for pick in 0..1usize << cells.len() {
            let gates: Vec<(usize, usize)> = (0..cells.len())
                .filter(|&b| pick >> b & 1 == 1)
                .map(|b| cells[b])
                .collect();
            let mut masks = vec![0u8; n];
            for &(c, t) in &gates {
                masks[t] |= 1 << c;
            }
            if seen.insert(masks.clone(), ()).is_none() {
                out.push(LayerMove { gates, masks });
            }
        }
    }
    out
}

fn encode(rows: &[u8]) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (r as u32) << (4 * i))
}

fn decode(n: usize, key: u32) -> Vec<u8> {
    (0..n).map(|i| (key >> (4 * i) & 0xf) as u8).collect()
}

/// Minimum commutative depth of every element of `GL(n, 2)` as a CNOT circuit.
#[derive(Clone, Debug)]
pub struct DepthHistogram {
    pub n: usize,
    /// `counts[d]`: elements of minimum depth exactly `d`
    pub counts: Vec<u64>,
    moves: Vec<LayerMove>,
    parent: HashMap<u32, (u32, usize)>,
}

impl DepthHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// A minimum-depth circuit for `m`.
    pub fn witness(&self, m: &BinMatrix) -> Option<LayeredCircuit> {
        let rows: Vec<u8> = (0..self.n)
            .map(|i| (0..self.n).filter(|&j| m.get(i, j)).fold(0u8, |a, j| a | 1 << j))
            .collect();
        let mut key = encode(&rows);
        let mut layers = Vec::new();
        while let Some(&(prev, mv)) = self.parent.get(&key) {
            if prev == key {
                break;
            }
            let gates = self.moves[mv].gates.iter().map(|&(c, t)| Gate::cnot(c, t)).collect();
            layers.push(Layer::new(gates));
            key = prev;
        }
        if !self.parent.contains_key(&key) {
            return None;
        }
        layers.reverse();
        LayeredCircuit::from_layers(self.n, layers).ok()
    }

    /// Every element of the group, as a matrix.
    pub fn elements(&self) -> impl Iterator<Item = BinMatrix> + '_ {
        self.parent.keys().map(move |&k| {
            let rows = decode(self.n, k);
            BinMatrix::from_fn(self.n, self.n, |i, j| rows[i] >> j & 1 == 1)
        })
    }
}

impl fmt::Display for DepthHistogram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for (d, c) in self.counts.iter().enumerate() {
            writeln!(f, "depth={d} count={c}")?;
        }
        writeln!(f, "total={}", self.total())
    }
}

/// Breadth-first search over single commuting CNOT layers, deduplicated by
/// the matrix each layer realizes.
pub fn exhaustive_min_depth(n: usize) -> Result<DepthHistogram, BoundsError> {
    if n == 0 {
        return Err(BoundsError::ZeroWidth);
    }
    if n > MAX_SEARCH_WIDTH {
        return Err(BoundsError::TooLarge(n));
    }
    let moves = layer_moves(n);
    let start: Vec<u8> = (0..n).map(|i| 1 << i).collect();
    let start_key = encode(&start);
    let mut parent = HashMap::from([(start_key, (start_key, 0))]);
    let mut frontier = vec![start_key];
    let mut counts = vec![1u64];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &key in &frontier {
            let rows = decode(n, key);
            for (idx, mv) in moves.iter().enumerate() {
                // the layer acts after the current map: row t += rows of its controls
                let mut out = rows.clone();
                for t in 0..n {
                    for c in 0..n {
                        if mv.masks[t] >> c & 1 == 1 {
                            out[t] ^= rows[c];
                        }
                    }
                }
                let k = encode(&out);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(k) {
                    e.insert((key, idx));
                    next.push(k);
                }
            }
        }
        if !next.is_empty() {
            counts.push(next.len() as u64);
        }
        next.sort_unstable();
        frontier = next;
    }
    Ok(DepthHistogram {
        n,
        counts,
        moves,
        parent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::to_linear_matrix;

    #[test]
    fn small_counts() {
        assert_eq!(count_invertible(1), BigUint::from(1u32));
        assert_eq!(count_invertible(2), BigUint::from(6u32));
        assert_eq!(count_invertible(3), BigUint::from(168u32));
        assert_eq!(count_invertible(4), BigUint::from(20160u32));
        assert_eq!(clifford_count(1), BigUint::from(24u32));
        assert_eq!(clifford_count(2), BigUint::from(11520u32));
    }

    #[test]
    fn clifford_count_exponent_is_stable() {
        // log2 |C_n| - (2n^2 + 3n) tends to log2 prod (1 - 4^-j), about -0.55
        for n in 1..=64 {
            let bits = clifford_count(n).bits() as i64;
            let main = (2 * n * n + 3 * n) as i64;
            assert!((bits - main).abs() <= 1, "n = {n}");
        }
    }

    #[test]
    fn linear_feasibility() {
        for n in 2..10 {
            assert_eq!(linear_depth_feasibility(n, 0), Verdict::Insufficient);
        }
        assert_eq!(linear_depth_feasibility(1, 0), Verdict::Inconclusive);
        assert_eq!(linear_depth_feasibility(4, 3), Verdict::Inconclusive);
        let first = smallest_insufficient(3, 64, linear_depth_feasibility).unwrap();
        assert!((first..=64).all(|n| linear_depth_feasibility(n, 3) == Verdict::Insufficient));
    }

    #[test]
    fn thresholds() {
        for n in [4, 10, 20] {
            let t = size_threshold(n, 1).unwrap();
            assert_eq!(t.exact.unwrap(), BigRational::new(BigInt::from(n * n), BigInt::from(2)));
            assert_eq!(t.floor, BigUint::from(n * n / 2));
            let t = size_threshold(n, 2).unwrap();
            assert_eq!(t.exact.unwrap(), BigRational::new(BigInt::from(n * n), BigInt::from(4)));
        }
        // 400 / (2 (1 + log2 3)) = 77.37...
        assert_eq!(size_threshold(20, 3).unwrap().floor, BigUint::from(77u32));
        assert!(size_threshold(20, 3).unwrap().exact.is_none());
        assert!(size_bound_check(20, 4, 60).unwrap());
        assert!(!size_bound_check(20, 4, 67).unwrap());
        assert!(!size_bound_check(20, 5, 10).unwrap());
    }

    #[test]
    fn clifford_layers() {
        // n = 1: three Paulis for an active qubit with no partner, or 24 gates
        assert_eq!(clifford_layer_bound(1), BigUint::from(27u32));
        assert_eq!(clifford_depth_feasibility(1, 0), Verdict::Insufficient);
    }

    #[test]
    fn search_small() {
        let h = exhaustive_min_depth(2).unwrap();
        assert_eq!(h.counts, vec![1, 2, 2, 1]);
        let h = exhaustive_min_depth(3).unwrap();
        assert_eq!(h.total(), 168);
        for m in h.elements() {
            let w = h.witness(&m).unwrap();
            assert_eq!(to_linear_matrix(&w).unwrap(), m);
        }
        assert_eq!(exhaustive_min_depth(5).unwrap_err(), BoundsError::TooLarge(5));
    }
}
