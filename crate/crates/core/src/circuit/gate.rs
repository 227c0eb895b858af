// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt;

use super::clifford1q::{Clifford1Q, Pauli};
use super::tableau::CliffordTableau;
use super::CircuitError;
use crate::gf2::BinMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
    Cy { control: usize, target: usize },
    Sq { qubit: usize, op: Clifford1Q },
}

/// How a gate acts on one of its qubits, for commutation purposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Role {
    /// Controlled gates are `(I + P_a + P_b - P_a P_b) / 2` for commuting local Paulis.
    Controlled(Pauli),
    Single(Clifford1Q),
}

fn roles_commute(a: Role, b: Role) -> bool {
    match (a, b) {
        (Role::Controlled(p), Role::Controlled(q)) => p == q,
        (Role::Controlled(p), Role::Single(c)) | (Role::Single(c), Role::Controlled(p)) => {
            c.fixes(p)
        }
        (Role::Single(c), Role::Single(d)) => c.commutes_with(&d),
    }
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Cnot { control, target }
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate::Cz(a, b)
    }

    pub fn cy(control: usize, target: usize) -> Self {
        Gate::Cy { control, target }
    }

    pub fn sq(qubit: usize, op: Clifford1Q) -> Self {
        Gate::Sq { qubit, op }
    }

    pub fn h(qubit: usize) -> Self {
        Gate::sq(qubit, Clifford1Q::H)
    }

    pub fn s(qubit: usize) -> Self {
        Gate::sq(qubit, Clifford1Q::S)
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cnot { control, target } | Gate::Cy { control, target } => vec![control, target],
            Gate::Cz(a, b) => vec![a, b],
            Gate::Sq { qubit, .. } => vec![qubit],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        !matches!(self, Gate::Sq { .. })
    }

    fn roles(&self) -> Vec<(usize, Role)> {
        use Role::Controlled as C;
        match *self {
            Gate::Cnot { control, target } => vec![(control, C(Pauli::Z)), (target, C(Pauli::X))],
            Gate::Cz(a, b) => vec![(a, C(Pauli::Z)), (b, C(Pauli::Z))],
            Gate::Cy { control, target } => vec![(control, C(Pauli::Z)), (target, C(Pauli::Y))],
            Gate::Sq { qubit, op } => vec![(qubit, Role::Single(op))],
        }
    }

    /// Same gate with every qubit index mapped through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::Cnot { control, target } => Gate::cnot(f(control), f(target)),
            Gate::Cz(a, b) => Gate::cz(f(a), f(b)),
            Gate::Cy { control, target } => Gate::cy(f(control), f(target)),
            Gate::Sq { qubit, op } => Gate::sq(f(qubit), op),
        }
    }

    pub(crate) fn check(&self, width: usize) -> Result<(), CircuitError> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= width) {
            return Err(CircuitError::QubitOutOfRange { qubit: q, width });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CircuitError::RepeatedQubit(qs[0]));
        }
        Ok(())
    }

    pub fn apply_to(&self, t: &mut CliffordTableau) {
        match *self {
            Gate::Cnot { control, target } => t.apply_cnot(control, target),
            Gate::Cz(a, b) => t.apply_cz(a, b),
            Gate::Cy { control, target } => t.apply_cy(control, target),
            Gate::Sq { qubit, op } => t.apply_single(qubit, &op),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Cy { control, target } => write!(f, "CY {control} {target}"),
            Gate::Sq { qubit, op } => write!(f, "SQ {qubit} {op}"),
        }
    }
}

/// Exact commutation test. Two gates commute iff, on every shared qubit, their
/// local actions commute: equal Paulis for controlled gates, `C P C^dagger = +P`
/// between a single-qubit Clifford and a controlled gate, parallel rotation
/// axes between two single-qubit Cliffords.
pub fn gates_commute(g1: &Gate, g2: &Gate) -> bool {
    let r2 = g2.roles();
    g1.roles().into_iter().all(|(q, a)| {
        r2.iter()
            .filter(|(q2, _)| *q2 == q)
            .all(|&(_, b)| roles_commute(a, b))
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Layer {
    pub gates: Vec<Gate>,
}

impl Layer {
    pub fn new(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    fn role_sets(&self) -> Vec<(usize, BTreeSet<Role>)> {
        let mut per_qubit: std::collections::BTreeMap<usize, BTreeSet<Role>> = Default::default();
        for g in &self.gates {
            for (q, r) in g.roles() {
                per_qubit.entry(q).or_default().insert(r);
            }
        }
        per_qubit.into_iter().collect()
    }
}

fn roles_pairwise_commute<'a>(roles: impl Iterator<Item = &'a Role> + Clone) -> bool {
    roles
        .clone()
        .enumerate()
        .all(|(i, &a)| roles.clone().skip(i + 1).all(|&b| roles_commute(a, b)))
}

/// All gate pairs commute. Runs per qubit on the distinct local roles, which is
/// equivalent to the pairwise check because commutation is decided qubit by qubit.
pub fn validate_layer(layer: &Layer) -> bool {
    layer
        .role_sets()
        .iter()
        .all(|(_, roles)| roles_pairwise_commute(roles.iter()))
}

/// Every gate of `a` commutes with every gate of `b`.
fn layers_commute(a: &Layer, b: &Layer) -> bool {
    let rb: std::collections::BTreeMap<usize, BTreeSet<Role>> = b.role_sets().into_iter().collect();
    a.role_sets().iter().all(|(q, ra)| {
        rb.get(q)
            .is_none_or(|rb| ra.iter().all(|&x| rb.iter().all(|&y| roles_commute(x, y))))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LayeredCircuit {
    width: usize,
    layers: Vec<Layer>,
}

impl LayeredCircuit {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            layers: Vec::new(),
        }
    }

    /// Checks that every gate index is in range; does not check commutation.
    pub fn from_layers(width: usize, layers: Vec<Layer>) -> Result<Self, CircuitError> {
        let c = Self { width, layers };
        for g in c.gates() {
            g.check(width)?;
        }
        Ok(c)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn push_layer(&mut self, layer: Layer) -> Result<(), CircuitError> {
        for g in &layer.gates {
            g.check(self.width)?;
        }
        self.layers.push(layer);
        Ok(())
    }

    /// Appends the layers of `other` after those of `self`.
    pub fn append(&mut self, other: &LayeredCircuit) -> Result<(), CircuitError> {
        if other.width != self.width {
            return Err(CircuitError::WidthMismatch {
                left: self.width,
                right: other.width,
            });
        }
        self.layers.extend(other.layers.iter().cloned());
        Ok(())
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> {
        self.layers.iter().flat_map(|l| l.gates.iter())
    }

    /// Commutative depth: the number of layers, single-qubit-only layers included.
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// `(two-qubit gate count, total gate count)`.
    pub fn size(&self) -> (usize, usize) {
        let total = self.gates().count();
        (self.gates().filter(|g| g.is_two_qubit()).count(), total)
    }

    /// Every layer passes [`validate_layer`]; returns the first offending layer index.
    pub fn validate(&self) -> Result<(), CircuitError> {
        for g in self.gates() {
            g.check(self.width)?;
        }
        match self.layers.iter().position(|l| !validate_layer(l)) {
            Some(i) => Err(CircuitError::NonCommutingLayer(i)),
            None => Ok(()),
        }
    }

    pub fn is_cnot_only(&self) -> bool {
        self.gates().all(|g| matches!(g, Gate::Cnot { .. }))
    }

    /// Drops empty layers and greedily merges each layer into its predecessor
    /// when all their gates commute. Semantics are unchanged.
    pub fn compact(&self) -> LayeredCircuit {
        let mut out: Vec<Layer> = Vec::new();
        for layer in self.layers.iter().filter(|l| !l.is_empty()) {
            match out.last_mut() {
                Some(prev) if layers_commute(prev, layer) => {
                    prev.gates.extend(layer.gates.iter().copied());
                }
                _ => out.push(layer.clone()),
            }
        }
        LayeredCircuit {
            width: self.width,
            layers: out,
        }
    }

    /// Same circuit in reverse with every gate inverted.
    pub fn inverse(&self) -> LayeredCircuit {
        let layers = self
            .layers
            .iter()
            .rev()
            .map(|l| {
                Layer::new(
                    l.gates
                        .iter()
                        .map(|g| match *g {
                            Gate::Sq { qubit, op } => Gate::sq(qubit, op.inverse()),
                            other => other,
                        })
                        .collect(),
                )
            })
            .collect();
        LayeredCircuit {
            width: self.width,
            layers,
        }
    }
}

/// Matrix `M` of the reversible map `|x> -> |Mx>` computed by a CNOT circuit.
pub fn to_linear_matrix(c: &LayeredCircuit) -> Result<BinMatrix, CircuitError> {
    let mut m = BinMatrix::identity(c.width());
    for g in c.gates() {
        match *g {
            Gate::Cnot { control, target } => m.xor_row_into(control, target),
            other => return Err(CircuitError::NonLinearGate(other.to_string())),
        }
    }
    Ok(m)
}

pub fn to_tableau(c: &LayeredCircuit) -> CliffordTableau {
    let mut t = CliffordTableau::identity(c.width());
    for g in c.gates() {
        g.apply_to(&mut t);
    }
    t
}

/// One layer adding `M` times the control register into the target register:
/// a CNOT from `control_reg[j]` to `target_reg[i]` for every `M(i, j) = 1`.
pub fn linear_addition_layer(
    m: &BinMatrix,
    control_reg: &[usize],
    target_reg: &[usize],
) -> Result<Layer, CircuitError> {
    if m.rows() != target_reg.len() || m.cols() != control_reg.len() {
        return Err(CircuitError::RegisterShape {
            matrix: (m.rows(), m.cols()),
            registers: (target_reg.len(), control_reg.len()),
        });
    }
    let controls: BTreeSet<usize> = control_reg.iter().copied().collect();
    if let Some(&q) = target_reg.iter().find(|q| controls.contains(q)) {
        return Err(CircuitError::OverlappingRegisters(q));
    }
    Ok(Layer::new(
        m.ones()
            .map(|(i, j)| Gate::cnot(control_reg[j], target_reg[i]))
            .collect(),
    ))
}

/// Merges two CNOT layers with compatible orientation (no qubit is a control
/// in one and a target in the other) into one layer computing the sum of both
/// additions; gates present in both cancel.
pub fn merge_adjacent_additions(l1: &Layer, l2: &Layer) -> Result<Layer, CircuitError> {
    let mut controls = BTreeSet::new();
    let mut targets = BTreeSet::new();
    for g in l1.gates.iter().chain(&l2.gates) {
        match *g {
            Gate::Cnot { control, target } => {
                controls.insert(control);
                targets.insert(target);
            }
            other => return Err(CircuitError::NonLinearGate(other.to_string())),
        }
    }
    if let Some(&q) = controls.intersection(&targets).next() {
        return Err(CircuitError::OrientationMismatch(q));
    }
    let mut out: Vec<Gate> = Vec::new();
    for g in l1.gates.iter().chain(&l2.gates) {
        match out.iter().position(|h| h == g) {
            Some(p) => {
                out.remove(p);
            }
            None => out.push(*g),
        }
    }
    Ok(Layer::new(out))
}

/// Maps qubit `q` to `perm[q]` in every gate.
pub fn relabel_wires(c: &LayeredCircuit, perm: &[usize]) -> Result<LayeredCircuit, CircuitError> {
    let n = c.width();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(CircuitError::InvalidPermutation);
    }
    Ok(LayeredCircuit {
        width: n,
        layers: c
            .layers
            .iter()
            .map(|l| Layer::new(l.gates.iter().map(|g| g.map_qubits(|q| perm[q])).collect()))
            .collect(),
    })
}
