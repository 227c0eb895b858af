// SPDX-License-Identifier: Apache-2.0

//! Dense complex unitaries on a few qubits, as an oracle for gate semantics.
//! Qubit `q` is bit `q` of the basis index.

#![allow(dead_code)]

use ccdepth::circuit::{Clifford1Q, Elementary, Gate};
use num_complex::Complex64 as C;

pub type Mat = Vec<Vec<C>>;

pub fn eye(d: usize) -> Mat {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) }).collect())
        .collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = vec![vec![C::new(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Mat) -> Mat {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn close(a: &Mat, b: &Mat) -> bool {
    a.iter()
        .zip(b)
        .all(|(r, s)| r.iter().zip(s).all(|(x, y)| (x - y).norm() < 1e-9))
}

/// Embeds a one-qubit operator on qubit `q` (bit `q` of the basis index).
pub fn embed1(n: usize, q: usize, u: [[C; 2]; 2]) -> Mat {
    let d = 1 << n;
    let mut out = vec![vec![C::new(0.0, 0.0); d]; d];
    for col in 0..d {
        let b = (col >> q) & 1;
        for a in 0..2 {
            let row = (col & !(1 << q)) | (a << q);
            out[row][col] += u[a][b];
        }
    }
    out
}

pub fn h1() -> [[C; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [[C::new(s, 0.0), C::new(s, 0.0)], [C::new(s, 0.0), C::new(-s, 0.0)]]
}

pub fn s1() -> [[C; 2]; 2] {
    [[C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(0.0, 1.0)]]
}

pub fn unitary(n: usize, g: &Gate) -> Mat {
    let d = 1 << n;
    match *g {
        Gate::Cnot { control, target } => {
            let mut out = vec![vec![C::new(0.0, 0.0); d]; d];
            for col in 0..d {
                let row = col ^ (((col >> control) & 1) << target);
                out[row][col] = C::new(1.0, 0.0);
            }
            out
        }
        Gate::Cz(a, b) => {
            let mut out = eye(d);
            for (i, row) in out.iter_mut().enumerate() {
                if (i >> a) & 1 == 1 && (i >> b) & 1 == 1 {
                    row[i] = C::new(-1.0, 0.0);
                }
            }
            out
        }
        Gate::Cy { control, target } => {
            let s = embed1(n, target, s1());
            let cx = unitary(n, &Gate::cnot(control, target));
            mul(&mul(&s, &cx), &dagger(&s))
        }
        Gate::Sq { qubit, op } => op.word().iter().fold(eye(d), |acc, e| {
            let m = match e {
                Elementary::H => embed1(n, qubit, h1()),
                Elementary::S => embed1(n, qubit, s1()),
            };
            mul(&m, &acc)
        }),
    }
}

pub fn all_gates(n: usize) -> Vec<Gate> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(Gate::cnot(a, b));
                out.push(Gate::cy(a, b));
                if a < b {
                    out.push(Gate::cz(a, b));
                }
            }
        }
        for op in Clifford1Q::all() {
            out.push(Gate::sq(a, *op));
        }
    }
    out
}

pub fn pauli_matrix(n: usize, x: &[bool], z: &[bool], negative: bool) -> Mat {
    let xm = [[C::new(0.0, 0.0), C::new(1.0, 0.0)], [C::new(1.0, 0.0), C::new(0.0, 0.0)]];
    let zm = [[C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(-1.0, 0.0)]];
    let ym = [[C::new(0.0, 0.0), C::new(0.0, -1.0)], [C::new(0.0, 1.0), C::new(0.0, 0.0)]];
    let mut m = eye(1 << n);
    for q in 0..n {
        let p = match (x[q], z[q]) {
            (true, false) => xm,
            (true, true) => ym,
            (false, true) => zm,
            (false, false) => continue,
        };
        m = mul(&embed1(n, q, p), &m);
    }
    if negative {
        for row in &mut m {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
    }
    m
}

