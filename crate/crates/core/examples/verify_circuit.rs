// SPDX-License-Identifier: Apache-2.0

//! Layer commutation rules, the circuit text format, and exact verification.
//!
//! Run with `cargo run --release --example verify_circuit`.

use ccdepth::circuit::{
    gates_commute, parse_circuit, serialize_circuit, to_linear_matrix, validate_layer, Clifford1Q,
    Gate,
};
use ccdepth::prefixsynth::{prefix_matrix, staircase_circuit};

fn main() {
    let pairs = [
        (Gate::cnot(0, 1), Gate::cnot(0, 2)),
        (Gate::cnot(0, 1), Gate::cnot(2, 1)),
        (Gate::cnot(0, 1), Gate::cnot(1, 2)),
        (Gate::cz(0, 1), Gate::cnot(1, 2)),
        (Gate::cnot(0, 1), Gate::sq(0, Clifford1Q::S)),
        (Gate::cnot(0, 1), Gate::sq(1, Clifford1Q::S)),
        (Gate::cy(0, 1), Gate::sq(1, Clifford1Q::Y)),
    ];
    for (a, b) in pairs {
        println!("{a:<10} | {b:<12} commute: {}", gates_commute(&a, &b));
    }

    // the staircase computes prefix sums in depth n - 1
    let c = staircase_circuit(5).unwrap();
    let text = serialize_circuit(&c);
    print!("\n{text}");
    let back = parse_circuit(&text).unwrap();
    assert_eq!(back, c);
    assert!(back.layers().iter().all(validate_layer));
    assert_eq!(to_linear_matrix(&back).unwrap(), prefix_matrix(5));
    println!("verified: depth {}", back.depth());

    // fan-out from one control is a single commuting layer
    let fan = parse_circuit("QUBITS 4\nLAYER\nCNOT 0 1\nCNOT 0 2\nCNOT 0 3\n").unwrap();
    println!("fan-out layer valid: {}", validate_layer(&fan.layers()[0]));
    let chain = parse_circuit("QUBITS 3\nLAYER\nCNOT 0 1\nCNOT 1 2\n").unwrap();
    println!("chained CNOT layer valid: {}", validate_layer(&chain.layers()[0]));
}
