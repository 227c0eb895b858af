// SPDX-License-Identifier: Apache-2.0

//! Any invertible linear map on 2m qubits in commutative depth 11.
//!
//! Run with `cargo run --release --example linear_map [width] [seed]`.

use std::time::Instant;

use ccdepth::circuit::{to_linear_matrix, validate_layer};
use ccdepth::gf2::BinMatrix;
use ccdepth::linsynth::{make_upper_block_invertible, synth_linear, synth_linear_gaussian};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(32);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let m = BinMatrix::random_invertible(n, seed);
    let (x, _) = make_upper_block_invertible(&m, n / 2).expect("invertible");
    println!("width {n}, seed {seed}: upper-block fix uses {} CNOTs", x.weight());

    let start = Instant::now();
    let c = synth_linear(&m, seed).expect("even width, invertible");
    let ms = start.elapsed().as_secs_f64() * 1e3;
    assert_eq!(to_linear_matrix(&c).unwrap(), m);
    assert!(c.layers().iter().all(validate_layer));

    println!("{:>6} {:>8}", "layer", "CNOTs");
    for (i, layer) in c.layers().iter().enumerate() {
        println!("{i:>6} {:>8}", layer.len());
    }
    println!("commutative depth {} ({} CNOTs) in {ms:.1} ms", c.depth(), c.size().0);

    let g = synth_linear_gaussian(&m).unwrap();
    println!("Gaussian elimination baseline: depth {} ({} CNOTs)", g.depth(), g.size().0);
}
