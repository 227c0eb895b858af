// SPDX-License-Identifier: Apache-2.0

//! Rational canonical form over GF(2) and the conjugacy test built on it.
//!
//! The decomposition splits the space into cyclic subspaces one at a time. A
//! vector whose local minimal polynomial equals the minimal polynomial of the
//! operator generates the first block; an invariant complement is cut out as
//! the joint kernel of `phi, phi A, ..., phi A^{d-1}` where `phi` is the dual
//! functional picking the top Krylov coordinate. The procedure then recurses
//! on the operator restricted to that complement, so the generated minimal
//! polynomials come out in descending divisibility order.

use super::matrix::BinMatrix;
use super::poly::Gf2Poly;
use super::solve::{null_space, solve, SpanTracker};
use super::vector::BinVector;
use super::Gf2Error;

/// `form == transform * A * transform^{-1}`, with `form` the block diagonal of
/// companion matrices of `invariant_factors` (ascending, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub form: BinMatrix,
    pub transform: BinMatrix,
    pub invariant_factors: Vec<Gf2Poly>,
}

/// Minimal polynomial of `v` with respect to `a`.
pub fn local_minimal_polynomial(a: &BinMatrix, v: &BinVector) -> Gf2Poly {
    let n = a.rows();
    let mut span = SpanTracker::new(n + 1);
    let mut cur = v.clone();
    for k in 0..=n {
        match span.insert(cur.clone(), BinVector::unit(n + 1, k)) {
            Ok(()) => cur = a.mul_vec(&cur),
            Err(tag) => {
                let mut p = Gf2Poly::zero();
                for i in tag.ones() {
                    p.set_coeff(i, true);
                }
                return p;
            }
        }
    }
    unreachable!("Krylov sequence longer than the dimension")
}

pub fn minimal_polynomial(a: &BinMatrix) -> Gf2Poly {
    (0..a.rows()).fold(Gf2Poly::one(), |acc, i| {
        acc.lcm(&local_minimal_polynomial(a, &BinVector::unit(a.rows(), i)))
    })
}

fn coprime_base(polys: &[Gf2Poly]) -> Vec<Gf2Poly> {
    let mut base: Vec<Gf2Poly> = polys
        .iter()
        .filter(|p| p.degree().is_some_and(|d| d > 0))
        .cloned()
        .collect();
    'outer: loop {
        for i in 0..base.len() {
            for j in (i + 1)..base.len() {
                let g = base[i].gcd(&base[j]);
                if g.is_one() {
                    continue;
                }
                let (bi, bj) = (base[i].div_rem(&g).0, base[j].div_rem(&g).0);
                base.swap_remove(j);
                base.swap_remove(i);
                base.extend([bi, bj, g].into_iter().filter(|p| !p.is_one()));
                continue 'outer;
            }
        }
        return base;
    }
}

fn multiplicity(b: &Gf2Poly, p: &Gf2Poly) -> usize {
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let (q, r) = p.div_rem(b);
        if !r.is_zero() {
            return k;
        }
        p = q;
        k += 1;
    }
}

/// Given vectors with local minimal polynomials `p` and `q`, produce a vector
/// whose local minimal polynomial is `lcm(p, q)`.
fn combine(
    a: &BinMatrix,
    (u, p): (&BinVector, &Gf2Poly),
    (w, q): (&BinVector, &Gf2Poly),
) -> (BinVector, Gf2Poly) {
    let mut p_part = Gf2Poly::one();
    let mut q_part = Gf2Poly::one();
    for b in coprime_base(&[p.clone(), q.clone()]) {
        let (ep, eq) = (multiplicity(&b, p), multiplicity(&b, q));
        if ep >= eq {
            p_part = p_part.mul(&b.pow(ep));
        } else {
            q_part = q_part.mul(&b.pow(eq));
        }
    }
    let mut v = p.div_rem(&p_part).0.apply(a, u);
    v.xor_assign(&q.div_rem(&q_part).0.apply(a, w));
    (v, p_part.mul(&q_part))
}

/// A vector whose local minimal polynomial is the minimal polynomial of `a`.
fn maximal_vector(a: &BinMatrix) -> (BinVector, Gf2Poly) {
    let n = a.rows();
    let mut v = BinVector::unit(n, 0);
    let mut p = local_minimal_polynomial(a, &v);
    for i in 1..n {
        if p.degree() == Some(n) {
            break;
        }
        let e = BinVector::unit(n, i);
        let q = local_minimal_polynomial(a, &e);
        if q.divides(&p) {
            continue;
        }
        (v, p) = combine(a, (&v, &p), (&e, &q));
    }
    (v, p)
}

fn krylov(a: &BinMatrix, v: &BinVector, len: usize) -> Vec<BinVector> {
    let mut out = Vec::with_capacity(len);
    let mut cur = v.clone();
    for _ in 0..len {
        let next = a.mul_vec(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// Cyclic generators with their minimal polynomials, largest block first.
fn cyclic_decomposition(a: &BinMatrix) -> Vec<(Gf2Poly, BinVector)> {
    let r = a.rows();
    if r == 0 {
        return Vec::new();
    }
    let (v, mu) = maximal_vector(a);
    let d = mu.degree().expect("minimal polynomial is nonzero");
    if d == r {
        return vec![(mu, v)];
    }

    let kry = krylov(a, &v, d);
    // phi(A^i v) = [i == d-1]
    let kt = BinMatrix::from_row_vectors(&kry, r);
    let phi = solve(&kt, &BinVector::unit(d, d - 1)).expect("Krylov vectors are independent");
    let mut functionals = Vec::with_capacity(d);
    let mut row = phi;
    for _ in 0..d {
        let next = a.vec_mul(&row);
        functionals.push(row);
        row = next;
    }
    let complement = null_space(&BinMatrix::from_row_vectors(&functionals, r));
    debug_assert_eq!(complement.len(), r - d);

    // Matrix of `a` restricted to the complement, in the complement's basis.
    let k = complement.len();
    let mut coords = SpanTracker::new(k);
    for (j, w) in complement.iter().enumerate() {
        coords
            .insert(w.clone(), BinVector::unit(k, j))
            .expect("null-space basis is independent");
    }
    let mut restricted = BinMatrix::zeros(k, k);
    for (j, w) in complement.iter().enumerate() {
        let (rest, tag) = coords.reduce(a.mul_vec(w), BinVector::zeros(k));
        debug_assert!(rest.is_zero(), "complement is not invariant");
        for i in tag.ones() {
            restricted.set(i, j, true);
        }
    }

    let mut blocks = vec![(mu, v)];
    for (f, u) in cyclic_decomposition(&restricted) {
        let mut lifted = BinVector::zeros(r);
        for i in u.ones() {
            lifted.xor_assign(&complement[i]);
        }
        blocks.push((f, lifted));
    }
    blocks
}

pub fn frobenius_form(a: &BinMatrix) -> Result<FrobeniusForm, Gf2Error> {
    if !a.is_square() {
        return Err(Gf2Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut blocks = cyclic_decomposition(a);
    blocks.reverse();

    let mut basis = Vec::with_capacity(n);
    let mut form = BinMatrix::zeros(n, n);
    let mut offset = 0;
    for (f, v) in &blocks {
        let d = f.degree().unwrap();
        basis.extend(krylov(a, v, d));
        for (i, j) in f.companion().ones() {
            form.set(offset + i, offset + j, true);
        }
        offset += d;
    }
    let change = BinMatrix::from_columns(&basis, n);
    let transform = change.inverse().expect("cyclic bases span the space");
    Ok(FrobeniusForm {
        form,
        transform,
        invariant_factors: blocks.into_iter().map(|(f, _)| f).collect(),
    })
}

/// `T` with `T a T^{-1} = b`, or `None` when the matrices are not similar.
pub fn conjugator(a: &BinMatrix, b: &BinMatrix) -> Result<Option<BinMatrix>, Gf2Error> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Gf2Error::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let fa = frobenius_form(a)?;
    let fb = frobenius_form(b)?;
    if fa.form != fb.form {
        return Ok(None);
    }
    let tb_inv = fb.transform.inverse().expect("transform is invertible");
    Ok(Some(&tb_inv * &fa.transform))
}

/// Characteristic polynomial via similarity reduction to upper Hessenberg form.
pub fn characteristic_polynomial(a: &BinMatrix) -> Result<Gf2Poly, Gf2Error> {
    if !a.is_square() {
        return Err(Gf2Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let Some(p) = ((k + 1)..n).find(|&i| h.get(i, k)) else {
            continue;
        };
        if p != k + 1 {
            h.swap_rows(p, k + 1);
            for i in 0..n {
                let (x, y) = (h.get(i, p), h.get(i, k + 1));
                h.set(i, p, y);
                h.set(i, k + 1, x);
            }
        }
        for j in (k + 2)..n {
            if h.get(j, k) {
                // row_j += row_{k+1}, then col_{k+1} += col_j keeps similarity
                h.xor_row_into(k + 1, j);
                for i in 0..n {
                    if h.get(i, j) {
                        h.toggle(i, k + 1);
                    }
                }
            }
        }
    }

    // p_m = (x + h_mm) p_{m-1} + sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
    let mut ps = vec![Gf2Poly::one()];
    for m in 0..n {
        let mut next = Gf2Poly::x().mul(&ps[m]);
        if h.get(m, m) {
            next = next.add(&ps[m]);
        }
        let mut chain = true;
        for i in (0..m).rev() {
            chain &= h.get(i + 1, i);
            if !chain {
                break;
            }
            if h.get(i, m) {
                next = next.add(&ps[i]);
            }
        }
        ps.push(next);
    }
    Ok(ps.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn check(a: &BinMatrix) -> FrobeniusForm {
        let ff = frobenius_form(a).unwrap();
        let t_inv = ff.transform.inverse().unwrap();
        assert_eq!(&(&ff.transform * a) * &t_inv, ff.form);
        for w in ff.invariant_factors.windows(2) {
            assert!(w[0].divides(&w[1]), "{} does not divide {}", w[0], w[1]);
        }
        ff
    }

    #[test]
    fn identity_is_canonical() {
        let ff = check(&BinMatrix::identity(3));
        assert!(ff.form.is_identity());
        assert_eq!(ff.invariant_factors.len(), 3);
    }

    #[test]
    fn companion_is_its_own_form() {
        let c = Gf2Poly::from_exponents(&[3, 1, 0]).companion();
        let ff = check(&c);
        assert_eq!(ff.form, c);
        assert!(ff.transform.is_identity());
    }

    #[test]
    fn random_matrices_satisfy_postcondition() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=12 {
            for _ in 0..30 {
                check(&BinMatrix::random_invertible_with(n, &mut rng));
                check(&BinMatrix::random_with(n, n, &mut rng));
            }
        }
        check(&BinMatrix::random_invertible(5, 99));
    }

    #[test]
    fn structured_matrices() {
        // repeated and mixed invariant factors
        let j2 = BinMatrix::from_rows(&["11", "01"]);
        let blocks = [
            BinMatrix::identity(2),
            j2.clone(),
            j2.clone(),
            Gf2Poly::from_exponents(&[2, 1, 0]).companion(),
            BinMatrix::zeros(1, 1),
        ];
        let mut m = BinMatrix::zeros(0, 0);
        for b in &blocks {
            m = BinMatrix::direct_sum(&m, b);
        }
        let g = BinMatrix::random_invertible(m.rows(), 4);
        let conj = &(&g * &m) * &g.inverse().unwrap();
        let f1 = check(&m);
        let f2 = check(&conj);
        assert_eq!(f1.form, f2.form);
    }

    #[test]
    fn conjugator_examples() {
        let a = BinMatrix::random_invertible(6, 8);
        let t = conjugator(&a, &a).unwrap().unwrap();
        assert_eq!(&(&t * &a) * &t.inverse().unwrap(), a);

        assert_eq!(conjugator(&a, &BinMatrix::identity(6)).unwrap(), None);

        let g = BinMatrix::random_invertible(6, 9);
        let b = &(&g * &a) * &g.inverse().unwrap();
        let t = conjugator(&a, &b).unwrap().unwrap();
        assert_eq!(&(&t * &a) * &t.inverse().unwrap(), b);
    }

    #[test]
    fn charpoly_matches_invariant_factor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in 1..=16 {
            for _ in 0..20 {
                let a = BinMatrix::random_with(n, n, &mut rng);
                let ff = frobenius_form(&a).unwrap();
                let prod = ff
                    .invariant_factors
                    .iter()
                    .fold(Gf2Poly::one(), |acc, f| acc.mul(f));
                assert_eq!(characteristic_polynomial(&a).unwrap(), prod);
            }
        }
    }

    #[test]
    fn minimal_polynomial_annihilates() {
        let a = BinMatrix::random_invertible(9, 2);
        let mu = minimal_polynomial(&a);
        for i in 0..9 {
            assert!(mu.apply(&a, &BinVector::unit(9, i)).is_zero());
        }
    }
}
