//! Dictionary orders on index tuples, the coordinate-count sequence used
//! when assembling invariant matrices, and the dictionary-order products
//! that govern composition.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dense product too large: n + sum of hole exponents is {0}, limit {1}")]
    ProductTooLarge(usize, usize),
}

/// Hard cap on n + k₁ + ⋯ + kₙ for the dense dictionary-order product of
/// matrices; beyond this the output would not fit desk-scale memory.
pub const MAX_PRODUCT_EXPONENT: usize = 12;

/// The i-th tuple (1-based) of the dictionary order on
/// {1..bounds[0]} × ⋯ × {1..bounds[n-1]}.
pub fn unrank(i: usize, bounds: &[usize]) -> Result<Vec<usize>, CombinatoricsError> {
    let total: usize = bounds.iter().product();
    if i == 0 || i > total {
        return Err(CombinatoricsError::IndexOutOfRange { index: i, max: total });
    }
    let mut rem = i - 1;
    let mut tuple = vec![1; bounds.len()];
    for j in (0..bounds.len()).rev() {
        tuple[j] = rem % bounds[j] + 1;
        rem /= bounds[j];
    }
    Ok(tuple)
}

/// Inverse of [`unrank`]: the 1-based position of a tuple in dictionary order.
pub fn rank(tuple: &[usize], bounds: &[usize]) -> Result<usize, CombinatoricsError> {
    if tuple.len() != bounds.len() {
        return Err(CombinatoricsError::DimensionMismatch(format!(
            "tuple has {} entries, bounds has {}",
            tuple.len(),
            bounds.len()
        )));
    }
    let mut r = 0usize;
    for (&t, &b) in tuple.iter().zip(bounds) {
        if t == 0 || t > b {
            return Err(CombinatoricsError::IndexOutOfRange { index: t, max: b });
        }
        r = r * b + (t - 1);
    }
    Ok(r + 1)
}

/// The sequence t₁,…,t_{2^n} where t_k counts the coordinates equal to 2
/// in the k-th tuple of the dictionary order on {1,2}^n. Satisfies the
/// recursion a₀ = (0), a_k = (a_{k−1}, a_{k−1} + 1).
pub fn t_sequence(n: usize) -> Vec<u32> {
    let mut seq = vec![0u32];
    for _ in 0..n {
        let shifted: Vec<u32> = seq.iter().map(|t| t + 1).collect();
        seq.extend(shifted);
    }
    seq
}

/// Dictionary-order product of column vectors: the component at rank m is
/// the product over j of vectors[j][α_{mj}], with α_m the m-th tuple in
/// dictionary order on the vector lengths. For all lengths 2 this is the
/// left-to-right Kronecker product.
pub fn xi(vectors: &[Vec<i64>]) -> Result<Vec<i64>, CombinatoricsError> {
    if vectors.is_empty() {
        return Err(CombinatoricsError::DimensionMismatch("xi needs at least one vector".into()));
    }
    for v in vectors {
        if v.is_empty() {
            return Err(CombinatoricsError::DimensionMismatch("xi got an empty vector".into()));
        }
    }
    let mut out = vec![1i64];
    for v in vectors {
        let mut next = Vec::with_capacity(out.len() * v.len());
        for &acc in &out {
            for &x in v {
                next.push(acc.checked_mul(x).expect("integer overflow in dictionary-order product"));
            }
        }
        out = next;
    }
    Ok(out)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| -v).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, CombinatoricsError> {
        if self.cols != other.rows {
            return Err(CombinatoricsError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let term = a
                        .checked_mul(other.get(k, c))
                        .expect("integer overflow in matrix product");
                    let cur = out.get(r, c);
                    out.set(r, c, cur.checked_add(term).expect("integer overflow in matrix product"));
                }
            }
        }
        Ok(out)
    }
}

/// Dictionary-order product of n two-row matrices, matrix j of shape
/// 2 × 2^{k_j}. The result has 2^n rows and 2^{k₁+⋯+kₙ} columns; its
/// (i, m) entry is the product over j of B_j[α_{ij}, β_{mj}], where α_i
/// runs over the dictionary order on {1,2}^n and β_m over the dictionary
/// order on the column counts.
pub fn eta(matrices: &[&IntMatrix]) -> Result<IntMatrix, CombinatoricsError> {
    let n = matrices.len();
    if n == 0 {
        return Err(CombinatoricsError::DimensionMismatch("eta needs at least one matrix".into()));
    }
    let mut col_bounds = Vec::with_capacity(n);
    let mut exponent_sum = 0usize;
    for (j, m) in matrices.iter().enumerate() {
        if m.rows != 2 {
            return Err(CombinatoricsError::DimensionMismatch(format!(
                "matrix {} has {} rows, expected 2",
                j + 1,
                m.rows
            )));
        }
        if m.cols == 0 || !m.cols.is_power_of_two() {
            return Err(CombinatoricsError::DimensionMismatch(format!(
                "matrix {} has {} columns, expected a power of two",
                j + 1,
                m.cols
            )));
        }
        exponent_sum += m.cols.trailing_zeros() as usize;
        col_bounds.push(m.cols);
    }
    if n + exponent_sum > MAX_PRODUCT_EXPONENT {
        return Err(CombinatoricsError::ProductTooLarge(n + exponent_sum, MAX_PRODUCT_EXPONENT));
    }

    let out_rows = 1usize << n;
    let out_cols: usize = col_bounds.iter().product();
    let row_bounds = vec![2usize; n];
    let mut out = IntMatrix::zeros(out_rows, out_cols);
    for i in 1..=out_rows {
        let alpha = unrank(i, &row_bounds)?;
        for m in 1..=out_cols {
            let beta = unrank(m, &col_bounds)?;
            let mut prod = 1i64;
            for j in 0..n {
                prod = prod
                    .checked_mul(matrices[j].get(alpha[j] - 1, beta[j] - 1))
                    .expect("integer overflow in dictionary-order product");
            }
            out.set(i - 1, m - 1, prod);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force dictionary order by nested iteration, used as the
    /// oracle for unrank.
    fn enumerate(bounds: &[usize]) -> Vec<Vec<usize>> {
        let mut all = vec![vec![]];
        for &b in bounds {
            let mut next = Vec::new();
            for t in &all {
                for v in 1..=b {
                    let mut t2 = t.clone();
                    t2.push(v);
                    next.push(t2);
                }
            }
            all = next;
        }
        all
    }

    #[test]
    fn unrank_least_and_greatest() {
        assert_eq!(unrank(1, &[2, 2]).unwrap(), vec![1, 1]);
        assert_eq!(unrank(4, &[2, 2]).unwrap(), vec![2, 2]);
    }

    #[test]
    fn unrank_matches_enumeration() {
        // Expected value frozen from the 8-tuple enumeration of bounds (2,4).
        assert_eq!(unrank(3, &[2, 4]).unwrap(), vec![1, 3]);
        let all = enumerate(&[2, 4]);
        assert_eq!(all[2], vec![1, 3]);
        for (idx, t) in all.iter().enumerate() {
            assert_eq!(&unrank(idx + 1, &[2, 4]).unwrap(), t);
        }
    }

    #[test]
    fn unrank_out_of_range() {
        assert!(unrank(0, &[2, 2]).is_err());
        assert!(unrank(5, &[2, 2]).is_err());
    }

    #[test]
    fn rank_unrank_inverse_exhaustive() {
        for bounds in [vec![2; 6], vec![3, 4, 5], vec![2, 4, 8, 2], vec![7], vec![2; 12]] {
            let total: usize = bounds.iter().product();
            assert!(total <= 4096);
            for i in 1..=total {
                let t = unrank(i, &bounds).unwrap();
                assert_eq!(rank(&t, &bounds).unwrap(), i);
            }
        }
    }

    #[test]
    fn t_sequence_small() {
        assert_eq!(t_sequence(0), vec![0]);
        assert_eq!(t_sequence(2), vec![0, 1, 1, 2]);
    }

    #[test]
    fn t_sequence_n5() {
        let expected: Vec<u32> = [
            0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 1, 2, 2, 3, 2, 3, 3, 4, 2, 3, 3, 4,
            3, 4, 4, 5,
        ]
        .into();
        assert_eq!(t_sequence(5), expected);
        assert_eq!(*t_sequence(5).last().unwrap(), 5);
    }

    #[test]
    fn t_sequence_counts_twos() {
        for n in 0..=6 {
            let seq = t_sequence(n);
            let bounds = vec![2usize; n];
            for (k, &t) in seq.iter().enumerate() {
                let tuple = unrank(k + 1, &bounds).unwrap();
                let twos = tuple.iter().filter(|&&v| v == 2).count() as u32;
                assert_eq!(t, twos);
            }
        }
    }

    #[test]
    fn xi_examples() {
        assert_eq!(
            xi(&[vec![2, 3], vec![5, 7]]).unwrap(),
            vec![10, 14, 15, 21] // p1p2, p1q2, q1p2, q1q2
        );
        let e1 = xi(&[vec![1, 0], vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(e1, vec![1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(xi(&[vec![1, 1], vec![1, 1]]).unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn xi_is_multilinear() {
        let a = vec![2, -1];
        let b = vec![3, 4];
        let c = vec![1, 5];
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = xi(&[sum, c.clone()]).unwrap();
        let xa = xi(&[a, c.clone()]).unwrap();
        let xb = xi(&[b, c]).unwrap();
        let rhs: Vec<i64> = xa.iter().zip(&xb).map(|(x, y)| x + y).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_two_factor_block_layout() {
        let b1 = IntMatrix::from_rows(vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]]);
        let b2 = IntMatrix::from_rows(vec![vec![9, 10], vec![11, 12]]);
        let got = eta(&[&b1, &b2]).unwrap();
        // Oracle: rows ordered (1,1),(1,2),(2,1),(2,2); columns pair each
        // column of b1 with each column of b2 in dictionary order.
        let mut expected = IntMatrix::zeros(4, 8);
        for (r, (r1, r2)) in [(1, 1), (1, 2), (2, 1), (2, 2)].into_iter().enumerate() {
            for c1 in 0..4 {
                for c2 in 0..2 {
                    expected.set(r, c1 * 2 + c2, b1.get(r1 - 1, c1) * b2.get(r2 - 1, c2));
                }
            }
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn eta_identity_selection() {
        let id = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        let got = eta(&[&id, &id]).unwrap();
        let mut expected = IntMatrix::zeros(4, 4);
        for i in 0..4 {
            expected.set(i, i, 1);
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn eta_single_factor_is_identity_on_input() {
        let b = IntMatrix::from_rows(vec![vec![3, -1, 0, 7], vec![2, 2, 5, -4]]);
        assert_eq!(eta(&[&b]).unwrap(), b);
    }

    #[test]
    fn eta_size_guard() {
        let wide = IntMatrix::zeros(2, 1 << 10);
        let id = IntMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]);
        assert!(matches!(
            eta(&[&wide, &id]),
            Err(CombinatoricsError::ProductTooLarge(13, MAX_PRODUCT_EXPONENT))
        ));
    }

    proptest! {
        /// Applying the matrix product and then filling with vectors agrees
        /// with filling each factor first: eta(B₁..Bₙ)·xi(w₁..wₙ) equals
        /// xi(B₁w₁,…,Bₙwₙ).
        #[test]
        fn eta_then_xi_associativity(
            entries1 in proptest::collection::vec(-4i64..=4, 8),
            entries2 in proptest::collection::vec(-4i64..=4, 4),
            w1 in proptest::collection::vec(-3i64..=3, 4),
            w2 in proptest::collection::vec(-3i64..=3, 2),
        ) {
            let b1 = IntMatrix::from_rows(vec![entries1[..4].to_vec(), entries1[4..].to_vec()]);
            let b2 = IntMatrix::from_rows(vec![entries2[..2].to_vec(), entries2[2..].to_vec()]);
            let big = eta(&[&b1, &b2]).unwrap();
            let filler = xi(&[w1.clone(), w2.clone()]).unwrap();
            let lhs = big.mul(&IntMatrix::from_rows(filler.iter().map(|&v| vec![v]).collect())).unwrap();

            let apply = |b: &IntMatrix, w: &[i64]| -> Vec<i64> {
                (0..2).map(|r| b.row(r).iter().zip(w).map(|(x, y)| x * y).sum()).collect()
            };
            let rhs = xi(&[apply(&b1, &w1), apply(&b2, &w2)]).unwrap();
            prop_assert_eq!(lhs.entries().to_vec(), rhs);
        }

        #[test]
        fn rank_unrank_roundtrip_random(bounds in proptest::collection::vec(1usize..=5, 1..=5)) {
            let total: usize = bounds.iter().product();
            for i in 1..=total.min(64) {
                let t = unrank(i, &bounds).unwrap();
                prop_assert_eq!(rank(&t, &bounds).unwrap(), i);
            }
        }
    }
}
