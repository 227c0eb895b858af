// SPDX-License-Identifier: Apache-2.0

//! Clifford synthesis through the layer sequence
//! single-qubit, CNOT, CZ, single-qubit, CZ, single-qubit (in time order).
//!
//! With `J` a set of qubits whose Hadamard makes the X-parts of the images of
//! `Z_1..Z_n` independent (every stabilizer state is locally equivalent to a
//! graph state), the tableau `T` followed by `H_J` has the form
//! `Lin(A); C(G1); H; C(G2)` where `C(G)` is a CZ pattern plus diagonal phases.
//! A trailing Pauli fixes the signs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{
    to_tableau, CircuitError, Clifford1Q, CliffordTableau, Gate, Layer, LayeredCircuit,
};
use crate::gf2::{solve, BinMatrix, BinVector};
use crate::linsynth::{synth_linear, LinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffError {
    #[error("tableau is not symplectic")]
    InvalidTableau,
    #[error("odd width {0}: pad with one idle qubit to synthesize")]
    OddWidth(usize),
    #[error("decomposition does not reproduce the tableau")]
    Recomposition,
    #[error(transparent)]
    Linear(#[from] LinError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixLayerForm {
    pub s1: Vec<Clifford1Q>,
    pub lin: BinMatrix,
    pub cz1: Vec<(usize, usize)>,
    pub s2: Vec<Clifford1Q>,
    pub cz2: Vec<(usize, usize)>,
    pub s3: Vec<Clifford1Q>,
}

impl SixLayerForm {
    pub fn width(&self) -> usize {
        self.lin.rows()
    }

    pub fn recompose(&self) -> Result<CliffordTableau, CliffError> {
        let n = self.width();
        let mut t = CliffordTableau::identity(n);
        for (q, op) in self.s1.iter().enumerate() {
            t.apply_single(q, op);
        }
        t = t.then(&CliffordTableau::from_linear(&self.lin)?)?;
        for &(a, b) in &self.cz1 {
            t.apply_cz(a, b);
        }
        for (q, op) in self.s2.iter().enumerate() {
            t.apply_single(q, op);
        }
        for &(a, b) in &self.cz2 {
            t.apply_cz(a, b);
        }
        for (q, op) in self.s3.iter().enumerate() {
            t.apply_single(q, op);
        }
        Ok(t)
    }
}

/// Qubits to Hadamard so that the X-block of the `Z_i` images becomes invertible.
fn graph_hadamards(t: &CliffordTableau) -> Vec<usize> {
    let n = t.width();
    let sym = t.symplectic();
    let mut rows = sym.submatrix(n, 0, n, 2 * n);
    // echelon form with X columns first: rows pivoting in the Z half have empty X-part
    let mut next = 0;
    for col in 0..2 * n {
        let Some(p) = (next..n).find(|&r| rows.get(r, col)) else {
            continue;
        };
        rows.swap_rows(p, next);
        for r in 0..n {
            if r != next && rows.get(r, col) {
                rows.xor_row_into(next, r);
            }
        }
        next += 1;
        if next == n {
            break;
        }
    }
    // pivot columns in the Z half
    let mut out = Vec::new();
    for r in 0..n {
        if let Some(c) = (0..2 * n).find(|&c| rows.get(r, c)) {
            if c >= n {
                out.push(c - n);
            }
        }
    }
    out
}

fn upper_pairs(g: &BinMatrix) -> Vec<(usize, usize)> {
    let n = g.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if g.get(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Splits `t` into the six-layer form. The result is checked by recomposition.
pub fn decompose_clifford(t: &CliffordTableau) -> Result<SixLayerForm, CliffError> {
    if !t.is_symplectic() {
        return Err(CliffError::InvalidTableau);
    }
    let n = t.width();
    let hs = graph_hadamards(t);
    let mut shifted = t.clone();
    for &q in &hs {
        shifted.apply_h(q);
    }
    let sym = shifted.symplectic();
    let e = sym.submatrix(0, 0, n, n);
    let g = sym.submatrix(n, 0, n, n);
    let hh = sym.submatrix(n, n, n, n);
    let a = g.inverse().map_err(|_| CliffError::Recomposition)?;
    let g1 = &g.transpose() * &e;
    let g2 = &a * &hh;
    debug_assert_eq!(g1, g1.transpose());
    debug_assert_eq!(g2, g2.transpose());

    let phase = |on: bool| if on { Clifford1Q::S } else { Clifford1Q::IDENTITY };
    let mut form = SixLayerForm {
        s1: vec![Clifford1Q::IDENTITY; n],
        lin: a,
        cz1: upper_pairs(&g1),
        s2: (0..n)
            .map(|q| phase(g1.get(q, q)).then(&Clifford1Q::H).then(&phase(g2.get(q, q))))
            .collect(),
        cz2: upper_pairs(&g2),
        s3: (0..n)
            .map(|q| if hs.contains(&q) { Clifford1Q::H } else { Clifford1Q::IDENTITY })
            .collect(),
    };

    // trailing Pauli X^px Z^pz flips exactly the rows it anticommutes with
    let got = form.recompose()?;
    let mut delta = got.signs().clone();
    delta.xor_assign(t.signs());
    let q = solve(&got.symplectic(), &delta).ok_or(CliffError::Recomposition)?;
    for (j, op) in form.s3.iter_mut().enumerate() {
        let pauli = match (q.get(n + j), q.get(j)) {
            (false, false) => continue,
            (true, false) => Clifford1Q::X,
            (false, true) => Clifford1Q::Z,
            (true, true) => Clifford1Q::Y,
        };
        *op = op.then(&pauli);
    }

    if form.cz2.is_empty() {
        for (s2, s3) in form.s2.iter_mut().zip(form.s3.iter_mut()) {
            *s3 = s2.then(s3);
            *s2 = Clifford1Q::IDENTITY;
        }
    }
    if form.recompose()? != *t {
        return Err(CliffError::Recomposition);
    }
    Ok(form)
}

fn single_layer(ops: &[Clifford1Q]) -> Layer {
    Layer::new(
        ops.iter()
            .enumerate()
            .filter(|(_, op)| !op.is_identity())
            .map(|(q, op)| Gate::sq(q, *op))
            .collect(),
    )
}

fn cz_layer(pairs: &[(usize, usize)]) -> Layer {
    Layer::new(pairs.iter().map(|&(a, b)| Gate::cz(a, b)).collect())
}

/// Circuit for `t` of commutative depth at most 16 on an even number of qubits.
/// `seed` drives the linear synthesis search.
pub fn synth_clifford(t: &CliffordTableau, seed: u64) -> Result<LayeredCircuit, CliffError> {
    let n = t.width();
    if n % 2 == 1 {
        return Err(CliffError::OddWidth(n));
    }
    let form = decompose_clifford(t)?;
    let mut out = LayeredCircuit::new(n);
    let push = |out: &mut LayeredCircuit, layer: Layer| -> Result<(), CircuitError> {
        if layer.is_empty() {
            Ok(())
        } else {
            out.push_layer(layer)
        }
    };
    push(&mut out, single_layer(&form.s1))?;
    if !form.lin.is_identity() {
        out.append(&synth_linear(&form.lin, seed)?)?;
    }
    push(&mut out, cz_layer(&form.cz1))?;
    push(&mut out, single_layer(&form.s2))?;
    push(&mut out, cz_layer(&form.cz2))?;
    push(&mut out, single_layer(&form.s3))?;
    if to_tableau(&out) != *t {
        return Err(CliffError::Recomposition);
    }
    Ok(out)
}

/// A random Clifford on `n` qubits from alternating rounds of uniformly random
/// single-qubit Cliffords and CNOTs on a random pairing, followed by a uniformly
/// random Pauli. Deterministic per seed.
pub fn random_clifford_tableau(n: usize, seed: u64) -> CliffordTableau {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = CliffordTableau::identity(n);
    let all = Clifford1Q::all();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..2 * n + 8 {
        for q in 0..n {
            t.apply_single(q, &all[rng.gen_range(0..all.len())]);
        }
        order.shuffle(&mut rng);
        for pair in order.chunks_exact(2) {
            if rng.gen() {
                t.apply_cnot(pair[0], pair[1]);
            }
        }
    }
    let x = BinVector::from_bits((0..n).map(|_| rng.gen()));
    let z = BinVector::from_bits((0..n).map(|_| rng.gen()));
    t.then_pauli(&x, &z);
    t
}
