// SPDX-License-Identifier: Apache-2.0

use super::matrix::BinMatrix;
use super::vector::BinVector;

/// Incremental echelon basis that remembers, for each stored vector, which
/// inserted inputs were combined to produce it.
#[derive(Clone, Debug)]
pub(crate) struct SpanTracker {
    tags: usize,
    rows: Vec<(BinVector, usize, BinVector)>,
}

impl SpanTracker {
    pub(crate) fn new(tags: usize) -> Self {
        Self {
            tags,
            rows: Vec::new(),
        }
    }

    /// Reduces `v` (carrying combination `tag`) against the stored rows.
    pub(crate) fn reduce(&self, mut v: BinVector, mut tag: BinVector) -> (BinVector, BinVector) {
        for (row, pivot, row_tag) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        (v, tag)
    }

    /// Inserts `v` if it is independent of the stored rows. On dependence the
    /// returned tag describes the vanishing combination.
    pub(crate) fn insert(&mut self, v: BinVector, tag: BinVector) -> Result<(), BinVector> {
        debug_assert_eq!(tag.len(), self.tags);
        let (v, tag) = self.reduce(v, tag);
        match v.first_one() {
            None => Err(tag),
            Some(p) => {
                self.rows.push((v, p, tag));
                Ok(())
            }
        }
    }
}

/// Some solution `x` of `m x = rhs`, if the system is consistent.
pub fn solve(m: &BinMatrix, rhs: &BinVector) -> Option<BinVector> {
    assert_eq!(m.rows(), rhs.len());
    let (rows, cols) = (m.rows(), m.cols());
    let mut aug = BinMatrix::from_fn(rows, cols + 1, |i, j| {
        if j < cols {
            m.get(i, j)
        } else {
            rhs.get(i)
        }
    });
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        let Some(p) = (r..rows).find(|&i| aug.get(i, j)) else {
            continue;
        };
        aug.swap_rows(r, p);
        for i in 0..rows {
            if i != r && aug.get(i, j) {
                aug.xor_row_into(r, i);
            }
        }
        pivots.push(j);
        r += 1;
    }
    if (r..rows).any(|i| aug.get(i, cols)) {
        return None;
    }
    let mut x = BinVector::zeros(cols);
    for (i, &j) in pivots.iter().enumerate() {
        x.set(j, aug.get(i, cols));
    }
    Some(x)
}

/// Basis of `{x : m x = 0}`.
pub fn null_space(m: &BinMatrix) -> Vec<BinVector> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        let Some(p) = (r..rows).find(|&i| a.get(i, j)) else {
            continue;
        };
        a.swap_rows(r, p);
        for i in 0..rows {
            if i != r && a.get(i, j) {
                a.xor_row_into(r, i);
            }
        }
        pivot_cols.push(j);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut is_pivot = vec![false; cols];
    for &j in &pivot_cols {
        is_pivot[j] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BinVector::unit(cols, f);
            for (i, &j) in pivot_cols.iter().enumerate() {
                if a.get(i, f) {
                    v.set(j, true);
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = BinMatrix::from_rows(&["110", "011"]);
        let rhs = BinVector::from_bits([true, false]);
        let x = solve(&m, &rhs).unwrap();
        assert_eq!(m.mul_vec(&x), rhs);

        let singular = BinMatrix::from_rows(&["11", "11"]);
        assert!(solve(&singular, &BinVector::from_bits([true, false])).is_none());
    }

    #[test]
    fn null_space_dimension_and_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = BinMatrix::random_with(5, 9, &mut rng);
            let ns = null_space(&m);
            assert_eq!(ns.len(), 9 - m.rank());
            for v in &ns {
                assert!(m.mul_vec(v).is_zero());
            }
            let basis = BinMatrix::from_columns(&ns, 9);
            assert_eq!(basis.rank(), ns.len());
        }
    }
}
