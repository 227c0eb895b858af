// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;

use super::clifford1q::Clifford1Q;
use super::gate::{Gate, Layer, LayeredCircuit};
use super::CircuitError;

pub const CIRCUIT_HEADER: &str = "# ccdepth v1";

pub fn serialize_circuit(c: &LayeredCircuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{CIRCUIT_HEADER}");
    let _ = writeln!(s, "QUBITS {}", c.width());
    for layer in c.layers() {
        s.push_str("LAYER\n");
        for g in &layer.gates {
            let _ = writeln!(s, "{g}");
        }
    }
    s
}

fn err(line: usize, message: impl Into<String>) -> CircuitError {
    CircuitError::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the circuit text format. Lines starting with `#` are comments.
/// Indices are range-checked; commutation within a layer is not.
pub fn parse_circuit(text: &str) -> Result<LayeredCircuit, CircuitError> {
    let mut width: Option<usize> = None;
    let mut layers: Vec<Layer> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let index = |t: &str| -> Result<usize, CircuitError> {
            t.parse()
                .map_err(|_| err(ln, format!("bad qubit index {t:?}")))
        };
        match toks[0] {
            "QUBITS" => {
                if width.is_some() {
                    return Err(err(ln, "duplicate QUBITS line"));
                }
                let [_, n] = toks.as_slice() else {
                    return Err(err(ln, "expected QUBITS <n>"));
                };
                width = Some(n.parse().map_err(|_| err(ln, format!("bad qubit count {n:?}")))?);
            }
            "LAYER" => {
                if width.is_none() {
                    return Err(err(ln, "LAYER before QUBITS"));
                }
                if toks.len() != 1 {
                    return Err(err(ln, "LAYER takes no arguments"));
                }
                layers.push(Layer::default());
            }
            kind => {
                let n = width.ok_or_else(|| err(ln, "gate before QUBITS"))?;
                let layer = layers
                    .last_mut()
                    .ok_or_else(|| err(ln, "gate before the first LAYER"))?;
                let gate = match (kind, toks.as_slice()) {
                    ("CNOT", [_, a, b]) => Gate::cnot(index(a)?, index(b)?),
                    ("CZ", [_, a, b]) => Gate::cz(index(a)?, index(b)?),
                    ("CY", [_, a, b]) => Gate::cy(index(a)?, index(b)?),
                    ("SQ", [_, q, x, z]) => {
                        let op: Clifford1Q = format!("{x} {z}").parse().map_err(|e| err(ln, e))?;
                        Gate::sq(index(q)?, op)
                    }
                    ("CNOT" | "CZ" | "CY" | "SQ", _) => {
                        return Err(err(ln, format!("wrong number of arguments for {kind}")))
                    }
                    _ => return Err(err(ln, format!("unknown keyword {kind:?}"))),
                };
                gate.check(n).map_err(|e| err(ln, e.to_string()))?;
                layer.gates.push(gate);
            }
        }
    }
    let width = width.ok_or_else(|| err(text.lines().count().max(1), "missing QUBITS line"))?;
    LayeredCircuit::from_layers(width, layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate::validate_layer;

    #[test]
    fn round_trip_is_byte_stable() {
        let c = LayeredCircuit::from_layers(
            3,
            vec![
                Layer::new(vec![Gate::cnot(0, 1), Gate::h(2)]),
                Layer::default(),
                Layer::new(vec![Gate::cz(1, 2), Gate::cy(0, 2), Gate::s(1)]),
            ],
        )
        .unwrap();
        let s = serialize_circuit(&c);
        let back = parse_circuit(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(serialize_circuit(&back), s);
        assert!(s.contains("SQ 2 X:+Z Z:+X"));
    }

    #[test]
    fn index_out_of_range_reports_line() {
        let e = parse_circuit("# ccdepth v1\nQUBITS 2\nLAYER\nCNOT 0 2\n").unwrap_err();
        assert!(matches!(e, CircuitError::Parse { line: 4, .. }), "{e}");
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "LAYER\n",
            "QUBITS 2\nCNOT 0 1\n",
            "QUBITS 2\nLAYER\nCNOT 0\n",
            "QUBITS 2\nLAYER\nCNOT 1 1\n",
            "QUBITS 2\nLAYER\nSWAP 0 1\n",
            "QUBITS 2\nLAYER\nSQ 0 X:+X Z:+X\n",
            "",
        ] {
            assert!(parse_circuit(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn non_commuting_layer_parses_but_fails_validation() {
        let c = parse_circuit("QUBITS 3\nLAYER\nCNOT 0 1\nCNOT 1 2\n").unwrap();
        assert!(!validate_layer(&c.layers()[0]));
        assert!(c.validate().is_err());
    }
}
