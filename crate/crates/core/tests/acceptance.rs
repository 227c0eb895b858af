// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate: one PASS/FAIL line per criterion. Semantics are exact
//! (tolerance zero); each criterion also has a pinned runtime budget.

mod common;

use std::collections::{HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ccdepth::bounds::{
    clifford_count, count_invertible, exhaustive_min_depth, linear_depth_feasibility,
    smallest_insufficient, Verdict,
};
use ccdepth::circuit::{
    format_tableau, gates_commute, to_linear_matrix, to_tableau, validate_layer, Clifford1Q,
    CliffordTableau, LayeredCircuit,
};
use ccdepth::cliffsynth::{decompose_clifford, random_clifford_tableau, synth_clifford};
use ccdepth::gf2::{format_matrix, BinMatrix};
use ccdepth::linsynth::{commutator_decompose, synth_linear, DEFAULT_MAX_ATTEMPTS};
use ccdepth::prefixsynth::{
    build_l_matrix, build_linv_matrix, prefix_matrix, pruned_lf, synth_p_plus_p, synth_prefix,
};
use common::{all_gates, close, mul, unitary};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tableau_equal(c: &LayeredCircuit, m: &BinMatrix) -> bool {
    to_tableau(c) == CliffordTableau::from_linear(m).expect("invertible")
}

fn all_valid(c: &LayeredCircuit) -> bool {
    c.layers().iter().all(validate_layer)
}

const PREFIX_RATIO_SLACK: f64 = 1.25;

fn prefix_depth_size() -> Check {
    let ratio = |c: &LayeredCircuit, n: usize| c.size().0 as f64 / (n as f64 * (n as f64).log2());
    let mut base = None;
    let mut worst = 0.0f64;
    for n in [6, 14, 30, 62, 126, 254] {
        let c = synth_prefix(n).map_err(|e| e.to_string())?;
        ensure(c.depth() <= 16, || format!("n={n}: depth {}", c.depth()))?;
        ensure(all_valid(&c), || format!("n={n}: invalid layer"))?;
        ensure(tableau_equal(&c, &prefix_matrix(n)), || format!("n={n}: semantics"))?;
        let r = ratio(&c, n);
        if n == 14 {
            base = Some(r);
        } else if let Some(b) = base {
            worst = worst.max(r / b);
        }
    }
    ensure(worst <= PREFIX_RATIO_SLACK, || format!("size ratio grew by {worst:.3}x"))?;
    for n in [7, 15, 31] {
        let c = synth_prefix(n).map_err(|e| e.to_string())?;
        ensure(c.depth() <= 17, || format!("n={n}: depth {}", c.depth()))?;
        ensure(all_valid(&c) && tableau_equal(&c, &prefix_matrix(n)), || format!("n={n}: semantics"))?;
    }
    Ok(format!("depth <= 16 (odd <= 17); max size ratio vs n=14: {worst:.3}x <= {PREFIX_RATIO_SLACK}x"))
}

fn p_plus_p_depth() -> Check {
    let mut max_depth = 0;
    for k in 2..=8u32 {
        let n = (1usize << k) - 1;
        let c = synth_p_plus_p(n).map_err(|e| e.to_string())?;
        let p = prefix_matrix(n);
        ensure(c.depth() <= 15, || format!("n={n}: depth {}", c.depth()))?;
        ensure(all_valid(&c), || format!("n={n}: invalid layer"))?;
        ensure(tableau_equal(&c, &BinMatrix::direct_sum(&p, &p)), || format!("n={n}: semantics"))?;
        max_depth = max_depth.max(c.depth());
    }
    Ok(format!("max depth {max_depth} <= 15 for n = 3..255"))
}

const L15: &str = "\
100000000000000
110000000000000
001000000000000
111100000000000
000010000000000
000011000000000
000000100000000
111111110000000
000000001000000
000000001100000
000000000010000
000000001111000
000000000000100
000000000000110
000000000000001
";

const LINV15: &str = "\
100000000000000
110000000000000
001000000000000
011100000000000
000010000000000
000011000000000
000000100000000
000101110000000
000000001000000
000000001100000
000000000010000
000000000111000
000000000000100
000000000000110
000000000000001
";

fn lr_matrices() -> Check {
    let l = build_l_matrix(15).map_err(|e| e.to_string())?;
    let linv = build_linv_matrix(15).map_err(|e| e.to_string())?;
    ensure(format_matrix(&l) == L15, || format!("L15 differs:\n{}", format_matrix(&l)))?;
    ensure(format_matrix(&linv) == LINV15, || format!("L15^-1 differs:\n{}", format_matrix(&linv)))?;
    // d_1 = 1, d_{2n+1} = 2 d_n + n + 1
    let (mut n, mut d) = (1usize, 1usize);
    while n < 15 {
        d = 2 * d + n + 1;
        n = 2 * n + 1;
    }
    ensure(l.weight() == d && d == 32, || format!("weight {} vs recurrence {d}", l.weight()))?;
    for k in 1..=8u32 {
        let n = (1usize << k) - 1;
        let l = build_l_matrix(n).map_err(|e| e.to_string())?;
        let linv = build_linv_matrix(n).map_err(|e| e.to_string())?;
        ensure((&l * &linv).is_identity(), || format!("n={n}: L L^-1 != I"))?;
        let pair = pruned_lf(n).map_err(|e| e.to_string())?;
        ensure(pair.l_matrix == l, || format!("n={n}: up-sweep circuit differs from L"))?;
        ensure(pair.r_matrix == l.anti_transpose().expect("square"), || {
            format!("n={n}: down-sweep circuit is not the anti-transpose of L")
        })?;
    }
    Ok("L15 and L15^-1 byte-equal; weight 32; k = 1..8 consistent".into())
}

fn linear_depth() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut max_depth = 0;
    for n in [6, 8, 10, 20, 40, 64] {
        for _ in 0..200 {
            let m = BinMatrix::random_invertible_with(n, &mut rng);
            let seed = rng.gen();
            let c = synth_linear(&m, seed).map_err(|e| format!("n={n}: {e}"))?;
            ensure(c.depth() <= 11, || format!("n={n}: depth {}", c.depth()))?;
            ensure(all_valid(&c), || format!("n={n}: invalid layer"))?;
            ensure(to_linear_matrix(&c).map_err(|e| e.to_string())? == m, || format!("n={n}: semantics"))?;
            max_depth = max_depth.max(c.depth());
        }
    }
    let reassembles = |w: &BinMatrix, seed: u64| -> Result<(), String> {
        let pair = commutator_decompose(w, seed, DEFAULT_MAX_ATTEMPTS).map_err(|e| e.to_string())?;
        let pi = pair.p.inverse().map_err(|e| e.to_string())?;
        let qi = pair.q.inverse().map_err(|e| e.to_string())?;
        ensure(&(&(&pair.p * &pair.q) * &pi) * &qi == *w, || format!("reassembly failed for\n{w}"))
    };
    let mut gl3 = 0;
    for bits in 0u32..512 {
        let w = BinMatrix::from_fn(3, 3, |i, j| bits >> (3 * i + j) & 1 == 1);
        if w.rank() == 3 {
            reassembles(&w, 0)?;
            gl3 += 1;
        }
    }
    ensure(gl3 == 168, || format!("enumerated {gl3} elements of GL(3,2)"))?;
    for _ in 0..200 {
        let m = rng.gen_range(4..=32);
        reassembles(&BinMatrix::random_invertible_with(m, &mut rng), rng.gen())?;
    }
    Ok(format!("1200 matrices, max depth {max_depth} <= 11; 168 + 200 commutators"))
}

fn clifford_depth() -> Check {
    let mut max_depth = 0;
    for n in [4, 6, 8, 10] {
        for seed in 0..100 {
            let t = random_clifford_tableau(n, 1000 * n as u64 + seed);
            let c = synth_clifford(&t, seed).map_err(|e| format!("n={n}: {e}"))?;
            ensure(c.width() == n, || format!("n={n}: width {}", c.width()))?;
            ensure(c.depth() <= 16, || format!("n={n}: depth {}", c.depth()))?;
            ensure(all_valid(&c), || format!("n={n}: invalid layer"))?;
            ensure(to_tableau(&c) == t, || format!("n={n} seed={seed}: semantics"))?;
            max_depth = max_depth.max(c.depth());
        }
    }
    for n in 2..=10 {
        for seed in 0..100 {
            let t = random_clifford_tableau(n, 7 * n as u64 + 50_000 + seed);
            let form = decompose_clifford(&t).map_err(|e| e.to_string())?;
            ensure(form.recompose().map_err(|e| e.to_string())? == t, || {
                format!("n={n} seed={seed}: recomposition")
            })?;
        }
    }
    Ok(format!("400 syntheses, max depth {max_depth} <= 16; 900 recompositions"))
}

fn brute_force_gl(n: usize) -> u64 {
    (0u32..1 << (n * n))
        .filter(|bits| BinMatrix::from_fn(n, n, |i, j| bits >> (n * i + j) & 1 == 1).rank() == n)
        .count() as u64
}

fn clifford_closure_size(n: usize) -> usize {
    let start = CliffordTableau::identity(n);
    let mut seen = HashSet::from([format_tableau(&start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let mut next = Vec::new();
        for q in 0..n {
            let mut h = t.clone();
            h.apply_h(q);
            let mut s = t.clone();
            s.apply_s(q);
            next.extend([h, s]);
            for p in 0..n {
                if p != q {
                    let mut cx = t.clone();
                    cx.apply_cnot(q, p);
                    next.push(cx);
                }
            }
        }
        for u in next {
            if seen.insert(format_tableau(&u)) {
                queue.push_back(u);
            }
        }
    }
    seen.len()
}

fn counting() -> Check {
    for n in 2..=4 {
        let brute = brute_force_gl(n);
        ensure(count_invertible(n) == BigUint::from(brute), || format!("GL({n},2): {brute}"))?;
    }
    let one = Clifford1Q::all().len();
    ensure(clifford_count(1) == BigUint::from(one), || format!("C_1 enumeration: {one}"))?;
    let two = clifford_closure_size(2);
    ensure(clifford_count(2) == BigUint::from(two), || format!("C_2 closure: {two}"))?;
    Ok(format!("GL(2..4,2) = 6, 168, 20160; |C_1| = {one}; |C_2| = {two}"))
}

fn commutation_oracle() -> Check {
    let gates = all_gates(3);
    let us: Vec<_> = gates.iter().map(|g| unitary(3, g)).collect();
    let mut pairs = 0;
    for i in 0..gates.len() {
        for j in i..gates.len() {
            let exact = close(&mul(&us[i], &us[j]), &mul(&us[j], &us[i]));
            ensure(gates_commute(&gates[i], &gates[j]) == exact, || {
                format!("{} vs {}", gates[i], gates[j])
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} gate pairs on 3 qubits agree"))
}

fn lower_bound_substitutes() -> Check {
    let first = smallest_insufficient(3, 64, linear_depth_feasibility)
        .ok_or("depth-3 bound never applies for n <= 64")?;
    ensure((first..=64).all(|n| linear_depth_feasibility(n, 3) == Verdict::Insufficient), || {
        "feasibility is not monotone".into()
    })?;
    let h3 = exhaustive_min_depth(3).map_err(|e| e.to_string())?;
    ensure(h3.total() == 168, || format!("n=3 histogram sums to {}", h3.total()))?;
    let mut depth_seen = vec![0u64; h3.counts.len()];
    for m in h3.elements() {
        let w = h3.witness(&m).ok_or("missing witness")?;
        ensure(all_valid(&w), || "witness has an invalid layer".into())?;
        ensure(to_linear_matrix(&w).map_err(|e| e.to_string())? == m, || format!("witness replay for\n{m}"))?;
        depth_seen[w.depth()] += 1;
    }
    ensure(depth_seen == h3.counts, || "witness depths disagree with the histogram".into())?;
    let h4 = exhaustive_min_depth(4).map_err(|e| e.to_string())?;
    ensure(h4.total() == 20160, || format!("n=4 histogram sums to {}", h4.total()))?;
    Ok(format!(
        "depth-3 bound applies from n={first}; n=3 histogram {:?}; n=4 histogram {:?}",
        h3.counts, h4.counts
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("prefix depth and size", Duration::from_secs(2), prefix_depth_size),
        ("P(+)P depth", Duration::from_secs(1), p_plus_p_depth),
        ("L and L^-1 matrices", Duration::from_secs(1), lr_matrices),
        ("linear depth 11", Duration::from_secs(30), linear_depth),
        ("Clifford depth 16", Duration::from_secs(60), clifford_depth),
        ("counting formulas", Duration::from_secs(30), counting),
        ("commutation oracle", Duration::from_secs(10), commutation_oracle),
        ("lower-bound substitutes", Duration::from_secs(120), lower_bound_substitutes),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {}. {name} [{:.2}s / {}s]: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
