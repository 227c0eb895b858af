// SPDX-License-Identifier: Apache-2.0

//! Two-register linear programs compiled to layered circuits.
//!
//! Register swaps and bit reversals are not emitted as gates. The compiler
//! keeps a logical-to-physical wire map, rewrites later operations through it,
//! and requires the map to be the identity again at the end.

use thiserror::Error;

use crate::circuit::{
    linear_addition_layer, merge_adjacent_additions, CircuitError, Gate, Layer, LayeredCircuit,
};
use crate::gf2::BinMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reg {
    Top,
    Bottom,
}

impl Reg {
    fn idx(self) -> usize {
        match self {
            Reg::Top => 0,
            Reg::Bottom => 1,
        }
    }

    pub fn other(self) -> Reg {
        match self {
            Reg::Top => Reg::Bottom,
            Reg::Bottom => Reg::Top,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegOp {
    /// `dst += matrix * src`
    Add { src: Reg, dst: Reg, matrix: BinMatrix },
    /// Exchange the registers' contents.
    Swap,
    /// `H` on every qubit of the register.
    Hadamard(Reg),
    /// Reverse the qubit order within the register.
    Reverse(Reg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Three additions, then the swap: computes `M (+) M^{-1}`.
    Forward,
    /// The swap, then three additions: computes `M^{-1} (+) M`.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProgramError {
    #[error("matrix of shape {0:?} does not act on registers of size {1}")]
    Shape((usize, usize), usize),
    #[error("program leaves its registers permuted")]
    UnresolvedPermutation,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// The three additions and the swap realizing `M (+) M^{-1}` or its mirror.
pub fn gadget_ops(m: &BinMatrix, m_inv: &BinMatrix, orientation: Orientation) -> Vec<RegOp> {
    let adds = [
        RegOp::Add {
            src: Reg::Top,
            dst: Reg::Bottom,
            matrix: m.clone(),
        },
        RegOp::Add {
            src: Reg::Bottom,
            dst: Reg::Top,
            matrix: m_inv.clone(),
        },
        RegOp::Add {
            src: Reg::Top,
            dst: Reg::Bottom,
            matrix: m.clone(),
        },
    ];
    match orientation {
        Orientation::Forward => adds.into_iter().chain([RegOp::Swap]).collect(),
        Orientation::Reversed => [RegOp::Swap].into_iter().chain(adds).collect(),
    }
}

/// Compiles `ops` on two registers of `m` qubits each (top on wires `0..m`,
/// bottom on `m..2m`). Adjacent additions between the same physical wire sets
/// are merged into one layer.
pub fn compile(m: usize, ops: &[RegOp]) -> Result<LayeredCircuit, ProgramError> {
    let mut phys: [Vec<usize>; 2] = [(0..m).collect(), (m..2 * m).collect()];
    let mut layers: Vec<(Layer, bool)> = Vec::new();
    for op in ops {
        match op {
            RegOp::Add { src, dst, matrix } => {
                if matrix.rows() != m || matrix.cols() != m {
                    return Err(ProgramError::Shape((matrix.rows(), matrix.cols()), m));
                }
                let layer = linear_addition_layer(matrix, &phys[src.idx()], &phys[dst.idx()])?;
                match layers.last_mut() {
                    Some((prev, true)) => match merge_adjacent_additions(prev, &layer) {
                        Ok(merged) => *prev = merged,
                        Err(CircuitError::OrientationMismatch(_)) => layers.push((layer, true)),
                        Err(e) => return Err(e.into()),
                    },
                    _ => layers.push((layer, true)),
                }
            }
            RegOp::Swap => phys.swap(0, 1),
            RegOp::Hadamard(r) => {
                let gates = phys[r.idx()].iter().map(|&q| Gate::h(q)).collect();
                layers.push((Layer::new(gates), false));
            }
            RegOp::Reverse(r) => phys[r.idx()].reverse(),
        }
    }
    if phys[0] != (0..m).collect::<Vec<_>>() || phys[1] != (m..2 * m).collect::<Vec<_>>() {
        return Err(ProgramError::UnresolvedPermutation);
    }
    let layers = layers
        .into_iter()
        .map(|(l, _)| l)
        .filter(|l| !l.is_empty())
        .collect();
    Ok(LayeredCircuit::from_layers(2 * m, layers)?)
}
