// SPDX-License-Identifier: Apache-2.0

//! Counting bounds and the exact minimum-depth picture for small widths.
//!
//! Run with `cargo run --release --example lower_bounds`.

use ccdepth::bounds::{
    bounds_report, clifford_depth_feasibility, exhaustive_min_depth, linear_depth_feasibility,
    smallest_insufficient,
};
use ccdepth::circuit::to_linear_matrix;

fn main() {
    for d in 1..=4 {
        let lin = smallest_insufficient(d, 256, linear_depth_feasibility);
        let cliff = smallest_insufficient(d, 256, clifford_depth_feasibility);
        println!("depth {d}: counting rules it out for linear maps from n = {lin:?}, Cliffords from n = {cliff:?}");
    }
    println!();
    print!("{}", bounds_report(20, Some(4), Some(60)).unwrap());

    for n in 2..=4 {
        let h = exhaustive_min_depth(n).unwrap();
        println!("\nminimum commutative depth over GL({n}, 2):");
        print!("{h}");
        // a hardest element and its witness
        let hardest = h
            .elements()
            .find(|m| h.witness(m).unwrap().depth() == h.counts.len() - 1)
            .unwrap();
        let w = h.witness(&hardest).unwrap();
        assert_eq!(to_linear_matrix(&w).unwrap(), hardest);
        println!("e.g.\n{hardest}needs {} layers", w.depth());
    }
}
