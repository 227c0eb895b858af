// SPDX-License-Identifier: Apache-2.0

//! Writing an invertible binary matrix as a group commutator P Q P^-1 Q^-1.
//!
//! Run with `cargo run --release --example commutator [dim] [seed]`.

use ccdepth::gf2::{frobenius_form, BinMatrix};
use ccdepth::linsynth::{commutator_decompose, DEFAULT_MAX_ATTEMPTS};

fn main() {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let w = BinMatrix::random_invertible(m, seed);
    println!("W =\n{w}");
    let pair = commutator_decompose(&w, seed, DEFAULT_MAX_ATTEMPTS).expect("dimension >= 3");
    println!("P =\n{}", pair.p);
    println!("Q =\n{}", pair.q);
    assert_eq!(pair.product(), w);

    // P conjugates Q to W Q, so both share one rational canonical form
    let fq = frobenius_form(&pair.q).unwrap();
    let fwq = frobenius_form(&(&w * &pair.q)).unwrap();
    assert_eq!(fq.form, fwq.form);
    let factors: Vec<String> = fq.invariant_factors.iter().map(|p| p.to_string()).collect();
    println!("invariant factors of Q and WQ: {}", factors.join(", "));

    // exhaustive check over GL(3, 2)
    let mut count = 0;
    for bits in 0u32..512 {
        let w = BinMatrix::from_fn(3, 3, |i, j| bits >> (3 * i + j) & 1 == 1);
        if w.rank() == 3 {
            assert_eq!(commutator_decompose(&w, 0, DEFAULT_MAX_ATTEMPTS).unwrap().product(), w);
            count += 1;
        }
    }
    println!("all {count} elements of GL(3, 2) decompose");
}
