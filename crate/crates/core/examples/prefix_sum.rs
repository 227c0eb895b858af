// SPDX-License-Identifier: Apache-2.0

//! Prefix-sum circuits in constant commutative depth.
//!
//! Run with `cargo run --release --example prefix_sum [max_k]`.

use std::time::Instant;

use ccdepth::circuit::{to_tableau, CliffordTableau};
use ccdepth::prefixsynth::{ladner_fischer, prefix_matrix, synth_prefix};

fn main() {
    let max_k: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);

    println!("{:>6} {:>6} {:>10} {:>10} {:>8} {:>10}", "n", "depth", "2q gates", "LF depth", "ratio", "ms");
    for k in 2..=max_k {
        let n = 2 * ((1usize << k) - 1);
        let start = Instant::now();
        let c = synth_prefix(n).expect("n >= 2");
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let (two_qubit, _) = c.size();
        let ratio = two_qubit as f64 / (n as f64 * (n as f64).log2());
        let lf = ladner_fischer((n + 2).next_power_of_two()).unwrap().depth();
        println!("{n:>6} {:>6} {two_qubit:>10} {lf:>10} {ratio:>8.3} {ms:>10.1}", c.depth());
    }

    // spot-check one instance against the exact tableau
    let n = 14;
    let c = synth_prefix(n).unwrap();
    assert_eq!(to_tableau(&c), CliffordTableau::from_linear(&prefix_matrix(n)).unwrap());
    println!("n = {n}: verified against the prefix-sum tableau");
}
