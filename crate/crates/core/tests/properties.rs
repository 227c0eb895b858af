// SPDX-License-Identifier: Apache-2.0

use ccdepth::bounds::{
    count_invertible, linear_depth_feasibility, size_bound_check, size_threshold, Verdict,
};
use ccdepth::circuit::{
    parse_circuit, serialize_circuit, to_linear_matrix, to_tableau, validate_layer, CliffordTableau,
    Gate, Layer, LayeredCircuit,
};
use ccdepth::cliffsynth::{decompose_clifford, random_clifford_tableau, synth_clifford};
use ccdepth::gf2::{characteristic_polynomial, frobenius_form, BinMatrix};
use ccdepth::linsynth::{make_upper_block_invertible, schur, synth_linear};
use ccdepth::prefixsynth::{prefix_matrix, synth_prefix};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gate(n: usize, rng: &mut ChaCha8Rng) -> Gate {
    let a = rng.gen_range(0..n);
    let b = (a + rng.gen_range(1..n)) % n;
    match rng.gen_range(0..5) {
        0 => Gate::cnot(a, b),
        1 => Gate::cz(a, b),
        2 => Gate::cy(a, b),
        3 => Gate::h(a),
        _ => Gate::s(a),
    }
}

/// Random circuit whose layers are built greedily from commuting gates.
fn random_circuit(n: usize, layers: usize, seed: u64) -> LayeredCircuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..layers {
        let mut layer = Layer::new(Vec::new());
        for _ in 0..rng.gen_range(1..=n) {
            let g = random_gate(n, &mut rng);
            layer.gates.push(g);
            if !validate_layer(&layer) {
                layer.gates.pop();
            }
        }
        out.push(layer);
    }
    LayeredCircuit::from_layers(n, out).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_is_two_sided(n in 1usize..40, seed: u64) {
        let m = BinMatrix::random_invertible(n, seed);
        let inv = m.inverse().unwrap();
        prop_assert!((&m * &inv).is_identity());
        prop_assert!((&inv * &m).is_identity());
    }

    #[test]
    fn anti_transpose_is_reversal_conjugated_transpose(n in 1usize..30, seed: u64) {
        let m = BinMatrix::random_invertible(n, seed);
        let b = BinMatrix::reversal(n);
        prop_assert_eq!(m.anti_transpose().unwrap(), &(&b * &m.transpose()) * &b);
    }

    #[test]
    fn frobenius_form_is_a_similarity(n in 1usize..14, seed: u64) {
        let m = BinMatrix::random_invertible(n, seed);
        let f = frobenius_form(&m).unwrap();
        let t_inv = f.transform.inverse().unwrap();
        prop_assert_eq!(&(&f.transform * &m) * &t_inv, f.form);
        let product = f.invariant_factors.iter().fold(ccdepth::gf2::Gf2Poly::one(), |acc, p| acc.mul(p));
        prop_assert_eq!(product, characteristic_polynomial(&m).unwrap());
    }

    #[test]
    fn circuit_text_round_trips(n in 2usize..8, layers in 0usize..10, seed: u64) {
        let c = random_circuit(n, layers, seed);
        let text = serialize_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(serialize_circuit(&back), text);
    }

    #[test]
    fn compaction_keeps_semantics(n in 2usize..7, layers in 0usize..12, seed: u64) {
        let c = random_circuit(n, layers, seed);
        let compact = c.compact();
        prop_assert!(compact.depth() <= c.depth());
        prop_assert!(compact.layers().iter().all(|l| !l.is_empty() && validate_layer(l)));
        prop_assert_eq!(to_tableau(&compact), to_tableau(&c));
    }

    #[test]
    fn circuit_inverse_cancels(n in 2usize..7, layers in 0usize..10, seed: u64) {
        let c = random_circuit(n, layers, seed);
        let mut both = c.clone();
        both.append(&c.inverse()).unwrap();
        prop_assert!(to_tableau(&both).is_identity());
    }

    #[test]
    fn tableau_then_inverse_is_identity(n in 1usize..10, seed: u64) {
        let t = random_clifford_tableau(n, seed);
        prop_assert!(t.is_symplectic());
        prop_assert!(t.then(&t.inverse()).unwrap().is_identity());
    }

    #[test]
    fn prefix_synthesis_is_exact(n in 2usize..90) {
        let c = synth_prefix(n).unwrap();
        let bound = if n % 2 == 0 { 16 } else { 17 };
        prop_assert!(c.depth() <= bound);
        prop_assert!(c.layers().iter().all(validate_layer));
        prop_assert_eq!(to_tableau(&c), CliffordTableau::from_linear(&prefix_matrix(n)).unwrap());
    }

    #[test]
    fn upper_block_fix_and_schur(m in 1usize..16, seed: u64) {
        let mat = BinMatrix::random_invertible(2 * m, seed);
        let (x, layer) = make_upper_block_invertible(&mat, m).unwrap();
        prop_assert_eq!(layer.len(), x.weight());
        let fix = BinMatrix::from_blocks(
            &BinMatrix::identity(m),
            &BinMatrix::zeros(m, m),
            &x,
            &BinMatrix::identity(m),
        );
        let adjusted = &mat * &fix;
        let s = schur(&adjusted, m).unwrap();
        prop_assert_eq!(s.reassemble(), adjusted);
    }

    #[test]
    fn linear_synthesis_is_exact(m in 1usize..16, seed: u64) {
        let mat = BinMatrix::random_invertible(2 * m, seed);
        let c = synth_linear(&mat, seed).unwrap();
        prop_assert!(c.depth() <= 11);
        prop_assert!(c.is_cnot_only());
        prop_assert!(c.layers().iter().all(validate_layer));
        prop_assert_eq!(to_linear_matrix(&c).unwrap(), mat);
    }

    #[test]
    fn clifford_synthesis_is_exact(m in 1usize..6, seed: u64) {
        let t = random_clifford_tableau(2 * m, seed);
        prop_assert_eq!(decompose_clifford(&t).unwrap().recompose().unwrap(), t.clone());
        let c = synth_clifford(&t, seed).unwrap();
        prop_assert!(c.depth() <= 16);
        prop_assert!(c.layers().iter().all(validate_layer));
        prop_assert_eq!(to_tableau(&c), t);
    }

    #[test]
    fn feasibility_is_monotone_in_width(n in 1usize..64, d in 0usize..6) {
        if linear_depth_feasibility(n, d) == Verdict::Insufficient {
            prop_assert_eq!(linear_depth_feasibility(n + 1, d), Verdict::Insufficient);
        }
    }

    #[test]
    fn size_threshold_floor_is_tight(n in 5usize..60, d in 1usize..12) {
        prop_assume!(5 * d <= n);
        let floor: usize = size_threshold(n, d).unwrap().floor.try_into().unwrap();
        prop_assert!(size_bound_check(n, d, floor).unwrap());
        prop_assert!(!size_bound_check(n, d, floor + 1).unwrap());
    }

    #[test]
    fn gl_count_grows(n in 1usize..40) {
        // |GL(n+1)| = |GL(n)| * 2^n * (2^(n+1) - 1)
        let expect = count_invertible(n) * (BigUint::from(1u8) << n) * ((BigUint::from(1u8) << (n + 1)) - 1u8);
        prop_assert_eq!(count_invertible(n + 1), expect);
    }
}
