// SPDX-License-Identifier: Apache-2.0

//! Prefix-sum circuits `|x_1, ..., x_n> -> |x_1, x_1+x_2, ..., x_1+...+x_n>`.
//!
//! The main construction splits a pruned Ladner-Fischer circuit into its
//! up-sweep `L` and down-sweep `R` (so `P = R L`), computes `P (+) P` on two
//! halves with `M (+) M^{-1}` gadgets in commutative depth 15, and finishes
//! with one fan-out layer.

use thiserror::Error;

use crate::circuit::{
    to_linear_matrix, validate_layer, CircuitError, Gate, Layer, LayeredCircuit,
};
use crate::gf2::BinMatrix;
use crate::program::{compile, gadget_ops, Orientation, ProgramError, Reg, RegOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrefixError {
    #[error("n = {n} is too small (need at least {min})")]
    TooSmall { n: usize, min: usize },
    #[error("n = {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("n = {0} is not of the form 2^k - 1")]
    NotMersenne(usize),
    #[error("cannot prune {t} qubits from each end of a {n}-qubit circuit")]
    InvalidPruning { n: usize, t: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("weight recurrence for {what} fails at k = {k}: expected {expected}, found {found}")]
    RecurrenceMismatch {
        k: u32,
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

fn mersenne_exponent(n: usize) -> Option<u32> {
    (n + 1).is_power_of_two().then(|| (n + 1).trailing_zeros())
}

/// Lower-triangular all-ones `n x n` matrix.
pub fn prefix_matrix(n: usize) -> BinMatrix {
    BinMatrix::from_fn(n, n, |i, j| j <= i)
}

/// `n - 1` layers, each a single `CNOT(i, i + 1)`.
pub fn staircase_circuit(n: usize) -> Result<LayeredCircuit, PrefixError> {
    if n < 2 {
        return Err(PrefixError::TooSmall { n, min: 2 });
    }
    let layers = (0..n - 1).map(|i| Layer::new(vec![Gate::cnot(i, i + 1)])).collect();
    Ok(LayeredCircuit::from_layers(n, layers)?)
}

/// Up-sweep layers of the Ladner-Fischer tree on `n = 2^k` qubits.
fn lf_up(n: usize, k: u32) -> Vec<Layer> {
    (1..=k)
        .map(|t| {
            let step = 1usize << t;
            let half = step / 2;
            // 1-based: CNOT(j - 2^{t-1}, j) for j a multiple of 2^t
            Layer::new(
                (1..=n / step)
                    .map(|i| i * step)
                    .map(|j| Gate::cnot(j - half - 1, j - 1))
                    .collect(),
            )
        })
        .collect()
}

/// Down-sweep layers of the Ladner-Fischer tree on `n = 2^k` qubits.
fn lf_down(n: usize, k: u32) -> Vec<Layer> {
    (1..k)
        .rev()
        .map(|t| {
            let step = 1usize << t;
            let half = step / 2;
            // 1-based: CNOT(j, j + 2^{t-1}) for j a multiple of 2^t
            Layer::new(
                (1..=n / step)
                    .map(|i| i * step)
                    .filter(|&j| j + half <= n)
                    .map(|j| Gate::cnot(j - 1, j + half - 1))
                    .collect(),
            )
        })
        .collect()
}

/// Ladner-Fischer prefix circuit on `n = 2^k` qubits: a binary up-sweep tree
/// rooted at the last qubit, then down-sweep trees of depth `k-1, ..., 1`.
pub fn ladner_fischer(n: usize) -> Result<LayeredCircuit, PrefixError> {
    if n < 2 {
        return Err(PrefixError::TooSmall { n, min: 2 });
    }
    if !n.is_power_of_two() {
        return Err(PrefixError::NotPowerOfTwo(n));
    }
    let k = n.trailing_zeros();
    let mut layers = lf_up(n, k);
    layers.extend(lf_down(n, k));
    Ok(LayeredCircuit::from_layers(n, layers)?)
}

/// Up-sweep (`L`) and down-sweep (`R`) halves of a pruned Ladner-Fischer
/// circuit, with `R L = P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LRPair {
    pub n: usize,
    pub l_circuit: LayeredCircuit,
    pub r_circuit: LayeredCircuit,
    pub l_matrix: BinMatrix,
    pub r_matrix: BinMatrix,
}

impl LRPair {
    fn from_circuits(l_circuit: LayeredCircuit, r_circuit: LayeredCircuit) -> Self {
        let l_matrix = to_linear_matrix(&l_circuit).expect("CNOT-only");
        let r_matrix = to_linear_matrix(&r_circuit).expect("CNOT-only");
        Self {
            n: l_circuit.width(),
            l_circuit,
            r_circuit,
            l_matrix,
            r_matrix,
        }
    }

    /// Drops `t` qubits from each end, together with every gate touching them.
    pub fn symmetric_prune(&self, t: usize) -> Result<LRPair, PrefixError> {
        if 2 * t >= self.n {
            return Err(PrefixError::InvalidPruning { n: self.n, t });
        }
        let keep = t..self.n - t;
        let prune = |c: &LayeredCircuit| {
            let layers = c
                .layers()
                .iter()
                .map(|l| {
                    Layer::new(
                        l.gates
                            .iter()
                            .filter(|g| g.qubits().iter().all(|q| keep.contains(q)))
                            .map(|g| g.map_qubits(|q| q - t))
                            .collect(),
                    )
                })
                .filter(|l| !l.is_empty())
                .collect();
            LayeredCircuit::from_layers(self.n - 2 * t, layers)
        };
        Ok(Self::from_circuits(prune(&self.l_circuit)?, prune(&self.r_circuit)?))
    }
}

/// Ladner-Fischer on `n + 1 = 2^k` qubits with the last qubit removed, split
/// into its up-sweep and down-sweep.
pub fn pruned_lf(n: usize) -> Result<LRPair, PrefixError> {
    let k = mersenne_exponent(n).filter(|&k| k >= 1).ok_or(PrefixError::NotMersenne(n))?;
    let big = n + 1;
    let drop_last = |layers: Vec<Layer>| -> Result<LayeredCircuit, CircuitError> {
        let layers = layers
            .into_iter()
            .map(|l| Layer::new(l.gates.into_iter().filter(|g| !g.qubits().contains(&n)).collect()))
            .filter(|l| !l.is_empty())
            .collect();
        LayeredCircuit::from_layers(n, layers)
    };
    Ok(LRPair::from_circuits(drop_last(lf_up(big, k))?, drop_last(lf_down(big, k))?))
}

/// L/R pair for any odd `m`: the smallest enclosing `2^K - 1` pair, pruned
/// symmetrically.
pub fn lr_pair_for(m: usize) -> Result<LRPair, PrefixError> {
    if m % 2 == 0 {
        return Err(PrefixError::NotMersenne(m));
    }
    let big = (m + 1).next_power_of_two() - 1;
    pruned_lf(big)?.symmetric_prune((big - m) / 2)
}

/// `L_1 = [1]`, `L_{2n+1} = [[L_n, 0, 0], [1...1, 1, 0], [0, 0, L_n]]`.
pub fn build_l_matrix(n: usize) -> Result<BinMatrix, PrefixError> {
    build_recursive(n, |_| true)
}

/// Same shape as `L` with middle row `b_h ... b_1`, `b_j = 1` iff `j` is a power of two.
pub fn build_linv_matrix(n: usize) -> Result<BinMatrix, PrefixError> {
    build_recursive(n, |j| j.is_power_of_two())
}

/// Anti-transpose of `L`.
pub fn build_r_matrix(n: usize) -> Result<BinMatrix, PrefixError> {
    Ok(build_l_matrix(n)?.anti_transpose().expect("square"))
}

fn build_recursive(n: usize, middle: impl Fn(usize) -> bool + Copy) -> Result<BinMatrix, PrefixError> {
    mersenne_exponent(n).filter(|&k| k >= 1).ok_or(PrefixError::NotMersenne(n))?;
    if n == 1 {
        return Ok(BinMatrix::identity(1));
    }
    let h = (n - 1) / 2;
    let inner = build_recursive(h, middle)?;
    let mut m = BinMatrix::zeros(n, n);
    for (i, j) in inner.ones() {
        m.set(i, j, true);
        m.set(h + 1 + i, h + 1 + j, true);
    }
    for c in 0..h {
        // column c (0-based) carries b_{h - c}
        m.set(h, c, middle(h - c));
    }
    m.set(h, h, true);
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRow {
    pub k: u32,
    pub n: usize,
    pub weight_l: usize,
    pub weight_linv: usize,
}

/// Checks `d_{2n+1} = 2 d_n + n + 1` (with `d_1 = 1`) for `L` and
/// `w(L^{-1}_{2n+1}) = 2 w(L^{-1}_n) + 1 + #{powers of two <= n}` for
/// `k = 1..=kmax`, and returns the table.
pub fn weight_recurrences(kmax: u32) -> Result<Vec<WeightRow>, PrefixError> {
    let mut rows: Vec<WeightRow> = Vec::new();
    for k in 1..=kmax {
        let n = (1usize << k) - 1;
        let weight_l = build_l_matrix(n)?.weight();
        let weight_linv = build_linv_matrix(n)?.weight();
        let (expect_l, expect_linv) = match rows.last() {
            None => (1, 1),
            Some(prev) => {
                let h = prev.n;
                let powers = h.ilog2() as usize + 1;
                (2 * prev.weight_l + h + 1, 2 * prev.weight_linv + 1 + powers)
            }
        };
        for (what, expected, found) in [("L", expect_l, weight_l), ("L^-1", expect_linv, weight_linv)] {
            if expected != found {
                return Err(PrefixError::RecurrenceMismatch {
                    k,
                    what,
                    expected,
                    found,
                });
            }
        }
        rows.push(WeightRow {
            k,
            n,
            weight_l,
            weight_linv,
        });
    }
    Ok(rows)
}

/// The three cross-register addition layers of the `M (+) M^{-1}` gadget on
/// registers `0..n` (top) and `n..2n` (bottom).
///
/// Forward: bottom `+= M top`, top `+= M^{-1} bottom`, bottom `+= M top`,
/// followed by a pending register swap; the result is `M (+) M^{-1}`.
/// Reversed: the swap comes first, so the layers run with the registers'
/// roles exchanged; the result is `M^{-1} (+) M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub orientation: Orientation,
    pub layers: [Layer; 3],
}

pub fn gadget_m_minv(m: &BinMatrix, orientation: Orientation) -> Result<Gadget, PrefixError> {
    let inv = m.inverse().map_err(|_| PrefixError::Singular)?;
    let n = m.rows();
    let layered = compile_exact(n, &gadget_ops(m, &inv, orientation))?;
    let layers: [Layer; 3] = layered.try_into().map_err(|_| PrefixError::Singular)?;
    Ok(Gadget { orientation, layers })
}

/// One layer per addition, empty ones kept; the wire map is left open.
fn compile_exact(n: usize, ops: &[RegOp]) -> Result<Vec<Layer>, PrefixError> {
    let mut phys: [Vec<usize>; 2] = [(0..n).collect(), (n..2 * n).collect()];
    let mut out = Vec::new();
    for op in ops {
        match op {
            RegOp::Add { src, dst, matrix } => {
                let (s, d) = (*src as usize, *dst as usize);
                out.push(crate::circuit::linear_addition_layer(matrix, &phys[s], &phys[d])?);
            }
            RegOp::Swap => phys.swap(0, 1),
            _ => unreachable!("gadgets only add and swap"),
        }
    }
    Ok(out)
}

/// Register program computing `P (+) P` from an L/R pair: the `I (+) P` half
/// followed by the `P (+) I` half, with the adjacent `R` and `L` additions at
/// the junction merged into one `R + L` layer.
pub fn p_plus_p_ops(pair: &LRPair) -> Result<Vec<RegOp>, PrefixError> {
    let (l, r) = (&pair.l_matrix, &pair.r_matrix);
    let l_inv = l.inverse().map_err(|_| PrefixError::Singular)?;
    let r_inv = r.inverse().map_err(|_| PrefixError::Singular)?;
    let (t, u) = (Reg::Top, Reg::Bottom);
    let mut ops = vec![RegOp::Hadamard(u), RegOp::Reverse(u)];
    ops.extend(gadget_ops(r, &r_inv, Orientation::Forward));
    ops.extend([RegOp::Reverse(u), RegOp::Hadamard(u)]);
    ops.extend(gadget_ops(r, &r_inv, Orientation::Reversed));
    ops.extend(gadget_ops(l, &l_inv, Orientation::Forward));
    ops.extend([RegOp::Hadamard(t), RegOp::Reverse(t)]);
    ops.extend(gadget_ops(l, &l_inv, Orientation::Reversed));
    ops.extend([RegOp::Reverse(t), RegOp::Hadamard(t)]);
    Ok(ops)
}

fn p_plus_p_from_pair(pair: &LRPair) -> Result<LayeredCircuit, PrefixError> {
    Ok(compile(pair.n, &p_plus_p_ops(pair)?)?.compact())
}

/// `P (+) P` on two registers of `n = 2^k - 1` qubits (`k >= 2`), using only
/// CNOT and H gates, in commutative depth at most 15.
pub fn synth_p_plus_p(n: usize) -> Result<LayeredCircuit, PrefixError> {
    match mersenne_exponent(n) {
        Some(k) if k >= 2 => p_plus_p_from_pair(&pruned_lf(n)?),
        _ => Err(PrefixError::NotMersenne(n)),
    }
}

/// Inserts `gate` into `layer` if the layer stays commuting, else reports failure.
fn try_insert(layer: &mut Layer, gate: Gate) -> bool {
    layer.gates.push(gate);
    if validate_layer(layer) {
        true
    } else {
        layer.gates.pop();
        false
    }
}

/// Prefix sum on `n >= 2` qubits: commutative depth at most 16 for even `n`,
/// 17 for odd `n`.
pub fn synth_prefix(n: usize) -> Result<LayeredCircuit, PrefixError> {
    match n {
        0 | 1 => Err(PrefixError::TooSmall { n, min: 2 }),
        2 | 4 => staircase_circuit(n),
        _ if n % 2 == 1 => {
            let inner = synth_prefix(n - 1)?;
            let mut layers = inner.layers().to_vec();
            layers.push(Layer::new(vec![Gate::cnot(n - 2, n - 1)]));
            Ok(LayeredCircuit::from_layers(n, layers)?.compact())
        }
        _ if n % 4 == 2 => {
            let m = n / 2;
            let core = p_plus_p_from_pair(&lr_pair_for(m)?)?;
            let mut layers = core.layers().to_vec();
            layers.push(Layer::new((m..n).map(|q| Gate::cnot(m - 1, q)).collect()));
            Ok(LayeredCircuit::from_layers(n, layers)?.compact())
        }
        _ => {
            // two extra qubits around the 2m-qubit core, m odd
            let m = n / 2 - 1;
            let core = p_plus_p_from_pair(&lr_pair_for(m)?)?;
            let mut layers: Vec<Layer> = core
                .layers()
                .iter()
                .map(|l| Layer::new(l.gates.iter().map(|g| g.map_qubits(|q| q + 1)).collect()))
                .collect();
            let head = Gate::cnot(0, 1);
            if !try_insert(&mut layers[0], head) {
                layers.insert(0, Layer::new(vec![head]));
            }
            let tail = Gate::cnot(n - 2, n - 1);
            if !try_insert(layers.last_mut().expect("core is nonempty"), tail) {
                layers.push(Layer::new(vec![tail]));
            }
            layers.push(Layer::new((m + 1..n).map(|q| Gate::cnot(m, q)).collect()));
            Ok(LayeredCircuit::from_layers(n, layers)?.compact())
        }
    }
}
