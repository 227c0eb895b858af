// SPDX-License-Identifier: Apache-2.0

//! The up-sweep / down-sweep split of a Ladner-Fischer prefix circuit and the
//! P (+) P construction built from it.
//!
//! Run with `cargo run --release --example lr_decomposition [k]`.

use ccdepth::circuit::{to_tableau, CliffordTableau};
use ccdepth::gf2::BinMatrix;
use ccdepth::prefixsynth::{
    build_l_matrix, build_linv_matrix, prefix_matrix, pruned_lf, synth_p_plus_p, weight_recurrences,
};

fn main() {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let n = (1usize << k) - 1;

    let pair = pruned_lf(n).expect("n = 2^k - 1");
    println!("L ({n} x {n}), from the up-sweep circuit:\n{}", pair.l_matrix);
    println!("L^-1:\n{}", build_linv_matrix(n).unwrap());
    assert_eq!(pair.l_matrix, build_l_matrix(n).unwrap());
    assert_eq!(pair.r_matrix, pair.l_matrix.anti_transpose().unwrap());
    assert_eq!(&pair.r_matrix * &pair.l_matrix, prefix_matrix(n));
    println!("R is the anti-transpose of L, and R L = P");

    println!("\n{:>3} {:>6} {:>10} {:>10}", "k", "n", "|L|", "|L^-1|");
    for row in weight_recurrences(10).unwrap() {
        println!("{:>3} {:>6} {:>10} {:>10}", row.k, row.n, row.weight_l, row.weight_linv);
    }

    let c = synth_p_plus_p(n).unwrap();
    let p = prefix_matrix(n);
    assert_eq!(to_tableau(&c), CliffordTableau::from_linear(&BinMatrix::direct_sum(&p, &p)).unwrap());
    println!("\nP (+) P on {} qubits: commutative depth {}, {} two-qubit gates", 2 * n, c.depth(), c.size().0);
}
