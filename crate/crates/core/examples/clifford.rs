// SPDX-License-Identifier: Apache-2.0

//! Clifford circuits in commutative depth 16 without ancillas.
//!
//! Run with `cargo run --release --example clifford [width] [seed]`.

use ccdepth::circuit::{format_tableau, to_tableau};
use ccdepth::cliffsynth::{decompose_clifford, random_clifford_tableau, synth_clifford};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(8);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let t = random_clifford_tableau(n, seed);
    print!("{}", format_tableau(&t));

    let form = decompose_clifford(&t).expect("symplectic");
    let active = |ops: &[ccdepth::circuit::Clifford1Q]| ops.iter().filter(|o| !o.is_identity()).count();
    println!("single-qubit layer 1: {} gates", active(&form.s1));
    println!("linear block weight:  {}", form.lin.weight());
    println!("CZ layer 1:           {} gates", form.cz1.len());
    println!("single-qubit layer 2: {} gates", active(&form.s2));
    println!("CZ layer 2:           {} gates", form.cz2.len());
    println!("single-qubit layer 3: {} gates", active(&form.s3));
    assert_eq!(form.recompose().unwrap(), t);

    let c = synth_clifford(&t, seed).expect("even width");
    assert_eq!(to_tableau(&c), t);
    let (two, total) = c.size();
    println!("circuit: commutative depth {}, {two} two-qubit gates, {total} gates", c.depth());

    let mut worst = 0;
    for s in 0..50 {
        let t = random_clifford_tableau(n, 1000 + s);
        worst = worst.max(synth_clifford(&t, s).unwrap().depth());
    }
    println!("worst depth over 50 more samples: {worst}");
}
