// SPDX-License-Identifier: Apache-2.0

//! Layered Clifford circuits: commutation, simulation, and text I/O.

mod clifford1q;
mod gate;
mod tableau;
mod text;

use thiserror::Error;

use crate::gf2::Gf2Error;

pub use clifford1q::{Clifford1Q, Elementary, Pauli, SignedPauli};
pub use gate::{
    gates_commute, linear_addition_layer, merge_adjacent_additions, relabel_wires,
    to_linear_matrix, to_tableau, validate_layer, Gate, Layer, LayeredCircuit,
};
pub use tableau::{format_tableau, parse_tableau, CliffordTableau};
pub use text::{parse_circuit, serialize_circuit, CIRCUIT_HEADER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("qubit {qubit} out of range for width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("two-qubit gate uses qubit {0} twice")]
    RepeatedQubit(usize),
    #[error("layer {0} contains non-commuting gates")]
    NonCommutingLayer(usize),
    #[error("gate `{0}` is not a CNOT")]
    NonLinearGate(String),
    #[error("registers overlap at qubit {0}")]
    OverlappingRegisters(usize),
    #[error("qubit {0} is a control in one addition and a target in the other")]
    OrientationMismatch(usize),
    #[error("matrix {matrix:?} does not fit registers of sizes {registers:?}")]
    RegisterShape {
        matrix: (usize, usize),
        registers: (usize, usize),
    },
    #[error("not a permutation of the circuit's qubits")]
    InvalidPermutation,
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}
