// SPDX-License-Identifier: Apache-2.0

//! Arbitrary invertible linear maps on `2m` qubits in commutative depth 11.
//!
//! `M` is first adjusted by one CNOT layer so its top-left block `A` is
//! invertible. A Schur factorization then gives
//!
//! ```text
//! M = [I 0; CA^-1 I] (A (+) A^-1) (P^-1 (+) P) (PQ^-1 (+) QP^-1) (Q (+) Q^-1) [I A^-1B; 0 I]
//! ```
//!
//! where `A S = P Q P^-1 Q^-1` with `S` the Schur complement. Each direct sum
//! is a three-layer gadget; neighbouring gadget layers with the same
//! orientation merge, leaving ten layers.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{exhaustive_min_depth, DepthHistogram, MAX_SEARCH_WIDTH};
use crate::circuit::{linear_addition_layer, CircuitError, Gate, Layer, LayeredCircuit};
use crate::gf2::{characteristic_polynomial, conjugator, null_space, solve, BinMatrix, BinVector};
use crate::program::{compile, gadget_ops, Orientation, ProgramError, Reg, RegOp};

/// Default bound on commutator search attempts.
pub const DEFAULT_MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("matrix is not invertible")]
    Singular,
    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("odd width {0}: pad with one idle qubit to synthesize")]
    OddWidth(usize),
    #[error("commutator decomposition needs dimension at least 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("top-left block is singular")]
    UpperBlockSingular,
    #[error("split point {m} must be below the width {n}")]
    BadSplit { m: usize, n: usize },
    #[error("no commutator decomposition found in {0} attempts")]
    SearchExhausted(usize),
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

fn blocks(m_full: &BinMatrix, m: usize) -> [BinMatrix; 4] {
    let n = m_full.rows();
    [
        m_full.submatrix(0, 0, m, m),
        m_full.submatrix(0, m, m, n - m),
        m_full.submatrix(m, 0, n - m, m),
        m_full.submatrix(m, m, n - m, n - m),
    ]
}

/// `X` with `A' + B'X` invertible, and the layer `bottom += X top` that
/// realizes `[[I, 0], [X, I]]`. Since that block matrix is an involution,
/// `M = M' [[I, 0], [X, I]]` with `M' = M [[I, 0], [X, I]]`.
pub fn make_upper_block_invertible(
    mat: &BinMatrix,
    m: usize,
) -> Result<(BinMatrix, Layer), LinError> {
    if !mat.is_square() {
        return Err(LinError::NotSquare(mat.rows(), mat.cols()));
    }
    let n = mat.rows();
    if m >= n {
        return Err(LinError::BadSplit { m, n });
    }
    if mat.rank() != n {
        return Err(LinError::Singular);
    }
    // greedy basis of the column space of [A' B'], A' columns first
    let top = mat.submatrix(0, 0, m, n);
    let mut basis: Vec<BinVector> = Vec::new();
    let mut chosen_b = Vec::new();
    let mut dependent_a = Vec::new();
    let independent = |v: BinVector, basis: &mut Vec<BinVector>| -> bool {
        let mut trial = basis.clone();
        trial.push(v.clone());
        let ok = BinMatrix::from_columns(&trial, m).rank() == trial.len();
        if ok {
            basis.push(v);
        }
        ok
    };
    for j in 0..m {
        if !independent(top.column(j), &mut basis) {
            dependent_a.push(j);
        }
    }
    for j in m..n {
        if basis.len() == m {
            break;
        }
        if independent(top.column(j), &mut basis) {
            chosen_b.push(j - m);
        }
    }
    debug_assert_eq!(chosen_b.len(), dependent_a.len());
    let mut x = BinMatrix::zeros(n - m, m);
    for (&b, &a) in chosen_b.iter().zip(&dependent_a) {
        x.set(b, a, true);
    }
    let top_reg: Vec<usize> = (0..m).collect();
    let bottom_reg: Vec<usize> = (m..n).collect();
    let layer = linear_addition_layer(&x, &top_reg, &bottom_reg)?;
    Ok((x, layer))
}

/// `[[A, B], [C, D]] = [[I, 0], [CA^-1, I]] (A (+) S) [[I, A^-1 B], [0, I]]`
/// with `S = D + C A^-1 B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurDecomposition {
    pub a: BinMatrix,
    pub b: BinMatrix,
    pub c: BinMatrix,
    pub d: BinMatrix,
    pub a_inv: BinMatrix,
    pub s: BinMatrix,
    pub ca_inv: BinMatrix,
    pub a_inv_b: BinMatrix,
}

impl SchurDecomposition {
    /// Multiplies the three factors back together.
    pub fn reassemble(&self) -> BinMatrix {
        let (m, k) = (self.a.rows(), self.d.rows());
        let lower = BinMatrix::from_blocks(
            &BinMatrix::identity(m),
            &BinMatrix::zeros(m, k),
            &self.ca_inv,
            &BinMatrix::identity(k),
        );
        let middle = BinMatrix::direct_sum(&self.a, &self.s);
        let upper = BinMatrix::from_blocks(
            &BinMatrix::identity(m),
            &self.a_inv_b,
            &BinMatrix::zeros(k, m),
            &BinMatrix::identity(k),
        );
        &(&lower * &middle) * &upper
    }
}

pub fn schur(mat: &BinMatrix, m: usize) -> Result<SchurDecomposition, LinError> {
    if !mat.is_square() {
        return Err(LinError::NotSquare(mat.rows(), mat.cols()));
    }
    if m == 0 || m >= mat.rows() {
        return Err(LinError::BadSplit { m, n: mat.rows() });
    }
    let [a, b, c, d] = blocks(mat, m);
    let a_inv = a.inverse().map_err(|_| LinError::UpperBlockSingular)?;
    let ca_inv = &c * &a_inv;
    let a_inv_b = &a_inv * &b;
    let s = &d + &(&ca_inv * &b);
    Ok(SchurDecomposition {
        a,
        b,
        c,
        d,
        a_inv,
        s,
        ca_inv,
        a_inv_b,
    })
}

/// `W = P Q P^-1 Q^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorPair {
    pub p: BinMatrix,
    pub q: BinMatrix,
}

impl CommutatorPair {
    pub fn product(&self) -> BinMatrix {
        let pi = self.p.inverse().expect("P is invertible");
        let qi = self.q.inverse().expect("Q is invertible");
        &(&(&self.p * &self.q) * &pi) * &qi
    }
}

fn shift_matrix(m: usize) -> BinMatrix {
    BinMatrix::from_fn(m, m, |i, j| i == j + 1)
}

fn with_last_column(base: &BinMatrix, col: &BinVector) -> BinMatrix {
    let m = base.rows();
    let mut q = base.clone();
    for i in 0..m {
        q.set(i, m - 1, col.get(i));
    }
    q
}

/// Looks for a companion matrix `Q` with `W Q` similar to `Q`.
///
/// For `Q = S + c e^T` (shift plus last column `c`), the characteristic
/// polynomial of `W Q = W S + (W c) e^T` is affine in `c`, so requiring it to
/// equal that of `Q` is a linear system. A solution with `c_0 = 1` gives an
/// invertible `Q`; similarity is then confirmed through rational canonical forms.
fn companion_candidates(w: &BinMatrix, rng: &mut ChaCha8Rng, budget: usize) -> Option<CommutatorPair> {
    use rand::Rng;
    let m = w.rows();
    let s = shift_matrix(m);
    let ws = w * &s;
    let h0 = characteristic_polynomial(&ws).ok()?;
    let mut d = BinMatrix::zeros(m, m);
    for i in 0..m {
        let hi = characteristic_polynomial(&with_last_column(&ws, &{
            let mut u = ws.column(m - 1);
            u.toggle(i);
            u
        }))
        .ok()?
        .add(&h0);
        for k in 0..m {
            d.set(k, i, hi.coeff(k));
        }
    }
    let g0 = BinVector::from_bits((0..m).map(|k| h0.coeff(k)));
    let system = &(&d * w) + &BinMatrix::identity(m);
    let particular = solve(&system, &g0)?;
    let kernel = null_space(&system);

    let tries = if kernel.len() <= 6 { 1usize << kernel.len() } else { budget.max(1) };
    for t in 0..tries.min(budget.max(1)) {
        let mut c = particular.clone();
        for (bit, v) in kernel.iter().enumerate() {
            let take = if kernel.len() <= 6 { (t >> bit) & 1 == 1 } else { rng.gen() };
            if take {
                c.xor_assign(v);
            }
        }
        if !c.get(0) {
            continue;
        }
        let q = with_last_column(&s, &c);
        let wq = w * &q;
        if let Ok(Some(p)) = conjugator(&q, &wq) {
            return Some(CommutatorPair { p, q });
        }
    }
    None
}

/// Writes `W` as `P Q P^-1 Q^-1` (every invertible matrix over GF(2) has
/// determinant 1, so this exists for dimension at least 3). The search is
/// deterministic given `seed` and gives up after `max_attempts` tries.
pub fn commutator_decompose(
    w: &BinMatrix,
    seed: u64,
    max_attempts: usize,
) -> Result<CommutatorPair, LinError> {
    if !w.is_square() {
        return Err(LinError::NotSquare(w.rows(), w.cols()));
    }
    let m = w.rows();
    if m < 3 {
        return Err(LinError::UnsupportedDimension(m));
    }
    if w.rank() != m {
        return Err(LinError::Singular);
    }
    if w.is_identity() {
        return Ok(CommutatorPair {
            p: BinMatrix::identity(m),
            q: BinMatrix::identity(m),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while attempts < max_attempts {
        attempts += 1;
        // attempt 1 uses W as given, later ones a random conjugate G W G^-1
        let g = if attempts == 1 {
            BinMatrix::identity(m)
        } else {
            BinMatrix::random_invertible_with(m, &mut rng)
        };
        let g_inv = g.inverse().expect("invertible");
        let conj = &(&g * w) * &g_inv;
        if let Some(pair) = companion_candidates(&conj, &mut rng, 64) {
            let found = CommutatorPair {
                p: &(&g_inv * &pair.p) * &g,
                q: &(&g_inv * &pair.q) * &g,
            };
            debug_assert_eq!(&found.product(), w);
            return Ok(found);
        }
        // also try an unstructured Q
        attempts += 1;
        let q = BinMatrix::random_invertible_with(m, &mut rng);
        if let Ok(Some(p)) = conjugator(&q, &(w * &q)) {
            return Ok(CommutatorPair { p, q });
        }
    }
    Err(LinError::SearchExhausted(max_attempts))
}

/// The register program for a `2m x 2m` matrix with invertible top-left block.
pub fn depth10_ops(mat: &BinMatrix, seed: u64) -> Result<Vec<RegOp>, LinError> {
    let n = mat.rows();
    let m = n / 2;
    let sch = schur(mat, m)?;
    let w = &sch.a * &sch.s;
    let pair = commutator_decompose(&w, seed, DEFAULT_MAX_ATTEMPTS)?;
    let inv = |x: &BinMatrix| x.inverse().expect("invertible");
    let (p, q) = (&pair.p, &pair.q);
    let (p_inv, q_inv) = (inv(p), inv(q));
    let pq_inv = p * &q_inv;

    let mut ops = vec![RegOp::Add {
        src: Reg::Bottom,
        dst: Reg::Top,
        matrix: sch.a_inv_b.clone(),
    }];
    ops.extend(gadget_ops(&q_inv, q, Orientation::Reversed));
    ops.extend(gadget_ops(&pq_inv, &inv(&pq_inv), Orientation::Forward));
    ops.extend(gadget_ops(p, &p_inv, Orientation::Reversed));
    ops.extend(gadget_ops(&sch.a, &sch.a_inv, Orientation::Forward));
    ops.push(RegOp::Add {
        src: Reg::Top,
        dst: Reg::Bottom,
        matrix: sch.ca_inv.clone(),
    });
    Ok(ops)
}

fn check_even_invertible(mat: &BinMatrix) -> Result<usize, LinError> {
    if !mat.is_square() {
        return Err(LinError::NotSquare(mat.rows(), mat.cols()));
    }
    let n = mat.rows();
    if mat.rank() != n {
        return Err(LinError::Singular);
    }
    if n % 2 == 1 || n == 0 {
        return Err(LinError::OddWidth(n));
    }
    Ok(n / 2)
}

/// CNOT circuit of commutative depth at most 10 for `M` on `2m` qubits,
/// `m >= 3`, whose top-left `m x m` block is invertible.
pub fn synth_linear_depth10(mat: &BinMatrix, seed: u64) -> Result<LayeredCircuit, LinError> {
    let m = check_even_invertible(mat)?;
    if m < 3 {
        return Err(LinError::UnsupportedDimension(m));
    }
    Ok(compile(m, &depth10_ops(mat, seed)?)?)
}

/// Baseline CNOT circuit for `M` by Gaussian elimination.
pub fn synth_linear_gaussian(mat: &BinMatrix) -> Result<LayeredCircuit, LinError> {
    if !mat.is_square() {
        return Err(LinError::NotSquare(mat.rows(), mat.cols()));
    }
    let n = mat.rows();
    let mut a = mat.clone();
    let mut ops: Vec<(usize, usize)> = Vec::new();
    let mut row_add = |a: &mut BinMatrix, src: usize, dst: usize| {
        a.xor_row_into(src, dst);
        ops.push((src, dst));
    };
    for col in 0..n {
        if !a.get(col, col) {
            let p = (col + 1..n).find(|&r| a.get(r, col)).ok_or(LinError::Singular)?;
            row_add(&mut a, p, col);
        }
        for r in 0..n {
            if r != col && a.get(r, col) {
                row_add(&mut a, col, r);
            }
        }
    }
    // E_k ... E_1 M = I, so M = E_1 ... E_k: apply the row operations in reverse
    let layers = ops
        .into_iter()
        .rev()
        .map(|(src, dst)| Layer::new(vec![Gate::cnot(src, dst)]))
        .collect();
    Ok(LayeredCircuit::from_layers(n, layers)?.compact())
}

/// Minimum-depth CNOT circuit for an invertible `M` on at most
/// [`MAX_SEARCH_WIDTH`] qubits, from a cached exhaustive search.
pub fn synth_linear_small(mat: &BinMatrix) -> Result<LayeredCircuit, LinError> {
    static TABLES: [OnceLock<DepthHistogram>; MAX_SEARCH_WIDTH + 1] =
        [const { OnceLock::new() }; MAX_SEARCH_WIDTH + 1];
    if !mat.is_square() {
        return Err(LinError::NotSquare(mat.rows(), mat.cols()));
    }
    let n = mat.rows();
    if n == 0 || n > MAX_SEARCH_WIDTH {
        return Err(LinError::UnsupportedDimension(n));
    }
    let table = TABLES[n].get_or_init(|| exhaustive_min_depth(n).expect("width is in range"));
    table.witness(mat).ok_or(LinError::Singular)
}

/// CNOT circuit for an invertible `M` on an even number of qubits: commutative
/// depth at most 11. Widths 2 and 4 use minimum-depth circuits (at most 4 layers).
pub fn synth_linear(mat: &BinMatrix, seed: u64) -> Result<LayeredCircuit, LinError> {
    let m = check_even_invertible(mat)?;
    if m < 3 {
        return synth_linear_small(mat);
    }
    let (x, layer) = make_upper_block_invertible(mat, m)?;
    let fix = BinMatrix::from_blocks(
        &BinMatrix::identity(m),
        &BinMatrix::zeros(m, m),
        &x,
        &BinMatrix::identity(m),
    );
    let adjusted = mat * &fix;
    let core = compile(m, &depth10_ops(&adjusted, seed)?)?;
    let mut out = LayeredCircuit::new(2 * m);
    if !layer.is_empty() {
        out.push_layer(layer)?;
    }
    out.append(&core)?;
    Ok(out)
}
