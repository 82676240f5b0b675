use std::fmt;

use rand::RngCore;

use super::BitVector;
use crate::error::{check_len, Error, Result};

/// Dense binary matrix with rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            check_len(cols, row.len())?;
            for (j, &b) in row.iter().enumerate() {
                if b > 1 {
                    return Err(Error::invalid("rows", format!("entry ({i},{j}) is {b}")));
                }
                m.set(i, j, b);
            }
        }
        Ok(m)
    }

    /// Uniformly random matrix.
    pub fn random<R: RngCore + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(rows, cols);
        let tail = cols % 64;
        for r in 0..rows {
            for w in 0..m.stride {
                let mut word = rng.next_u64();
                if w == m.stride - 1 && tail != 0 {
                    word &= (1u64 << tail) - 1;
                }
                m.words[r * m.stride + w] = word;
            }
        }
        m
    }

    /// Uniformly random invertible matrix, by rejection sampling.
    ///
    /// More than 28.8% of square GF(2) matrices are invertible, so the expected
    /// number of draws is below 4.
    pub fn random_invertible<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dim", "must be at least 1"));
        }
        loop {
            let m = Self::random(dim, dim, rng);
            if m.rank() == dim {
                return Ok(m);
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        ((self.words[r * self.stride + c / 64] >> (c % 64)) & 1) as u8
    }

    pub fn set(&mut self, r: usize, c: usize, bit: u8) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        let w = &mut self.words[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        if bit & 1 == 1 {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.words[r * self.stride..(r + 1) * self.stride]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let (s, d) = (src * self.stride, dst * self.stride);
        for w in 0..self.stride {
            let v = self.words[s + w];
            self.words[d + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.stride {
                self.words.swap(a * self.stride + w, b * self.stride + w);
            }
        }
    }

    /// Product with packed vector words; `v` must have `self.cols` bits.
    pub(crate) fn mul_words(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rows.div_ceil(64)];
        for r in 0..self.rows {
            let parity = self
                .row_words(r)
                .iter()
                .zip(v)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            out[r / 64] |= (parity as u64) << (r % 64);
        }
        out
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        check_len(self.cols, v.len())?;
        Ok(BitVector::from_words(
            &self.mul_words(&v.to_words()),
            self.rows,
        ))
    }

    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, rhs.rows)?;
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) == 1 {
                    for w in 0..out.stride {
                        out.words[r * out.stride + w] ^= rhs.words[k * rhs.stride + w];
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) == 1 {
                    t.set(c, r, 1);
                }
            }
        }
        t
    }

    /// Rank over GF(2) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(self.cols).len()
    }

    /// Row-reduces the leftmost `limit` columns in place; returns pivot columns.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit.min(self.cols) {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col) == 1) else {
                continue;
            };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) == 1 {
                    self.xor_row_into(row, r);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Inverse over GF(2) by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<BitMatrix> {
        check_len(self.rows, self.cols)?;
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let rank = aug.eliminate(n).len();
        if rank < n {
            return Err(Error::SingularMatrix { rank, dim: n });
        }
        let mut inv = BitMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Copies the listed columns, in order, into a new matrix.
    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }
}

/// `m · v` over GF(2).
pub fn mat_vec_mul(m: &BitMatrix, v: &BitVector) -> Result<BitVector> {
    m.mul_vec(v)
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{domain, StreamKey};

    #[test]
    fn identity_times_vector() {
        let v = BitVector::from_lsb([1, 0, 1]);
        assert_eq!(mat_vec_mul(&BitMatrix::identity(3), &v).unwrap(), v);
    }

    #[test]
    fn zero_matrix_annihilates() {
        let v = BitVector::from_lsb([1, 1]);
        assert_eq!(
            mat_vec_mul(&BitMatrix::zeros(2, 2), &v).unwrap(),
            BitVector::zeros(2)
        );
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let v = BitVector::zeros(4);
        assert_eq!(
            BitMatrix::identity(3).mul_vec(&v),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 4
            })
        );
    }

    #[test]
    fn upper_unitriangular_2x2_is_self_inverse() {
        let m = BitMatrix::from_rows(&[[1u8, 1], [0, 1]]).unwrap();
        // [[1,1],[0,1]]^2 = [[1,0],[0,1]] over GF(2).
        assert_eq!(m.mul(&m).unwrap(), BitMatrix::identity(2));
        assert_eq!(m.invert().unwrap(), m);
    }

    #[test]
    fn identity_inverts_to_identity() {
        for k in [1, 5, 64, 130] {
            assert_eq!(
                BitMatrix::identity(k).invert().unwrap(),
                BitMatrix::identity(k)
            );
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = BitMatrix::from_rows(&[[1u8, 1], [1, 1]]).unwrap();
        assert_eq!(m.invert(), Err(Error::SingularMatrix { rank: 1, dim: 2 }));
    }

    #[test]
    fn random_invertible_contract() {
        let key = StreamKey::new(11, domain::TEST, 0);
        let one = BitMatrix::random_invertible(1, &mut key.trial(0)).unwrap();
        assert_eq!(one, BitMatrix::identity(1));

        let s = BitMatrix::random_invertible(64, &mut key.trial(1)).unwrap();
        assert_eq!(rank_oracle(&s), 64);
        assert_eq!(
            s,
            BitMatrix::random_invertible(64, &mut key.trial(1)).unwrap()
        );

        let inv = s.invert().unwrap();
        let v = BitVector::random(64, &mut key.trial(2));
        assert_eq!(inv.mul_vec(&s.mul_vec(&v).unwrap()).unwrap(), v);
    }

    /// Rank by elimination on unpacked `Vec<Vec<u8>>` rows, independent of the packed path.
    fn rank_oracle(m: &BitMatrix) -> usize {
        let mut rows: Vec<Vec<u8>> = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) {
                rows.swap(rank, p);
                for r in 0..rows.len() {
                    if r != rank && rows[r][col] == 1 {
                        let pivot = rows[rank].clone();
                        rows[r].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn transpose_and_select_columns() {
        let m = BitMatrix::from_rows(&[[1u8, 0, 1], [0, 1, 1]]).unwrap();
        assert_eq!(
            m.transpose(),
            BitMatrix::from_rows(&[[1u8, 0], [0, 1], [1, 1]]).unwrap()
        );
        assert_eq!(
            m.select_columns(&[2, 0]),
            BitMatrix::from_rows(&[[1u8, 1], [1, 0]]).unwrap()
        );
    }

    proptest::proptest! {
        #[test]
        fn inverse_times_matrix_is_identity(dim in 1usize..=64, seed in 0u64..1000) {
            let mut rng = StreamKey::new(seed, domain::TEST, dim as u64).trial(0);
            let m = BitMatrix::random_invertible(dim, &mut rng).unwrap();
            let inv = m.invert().unwrap();
            proptest::prop_assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(dim));
            proptest::prop_assert_eq!(inv.mul(&m).unwrap(), BitMatrix::identity(dim));
        }

        #[test]
        fn multiplication_is_linear(rows in 1usize..40, cols in 1usize..90, seed in 0u64..1000) {
            let mut rng = StreamKey::new(seed, domain::TEST, 1).trial(0);
            let m = BitMatrix::random(rows, cols, &mut rng);
            let a = BitVector::random(cols, &mut rng);
            let b = BitVector::random(cols, &mut rng);
            let lhs = m.mul_vec(&a.xor(&b).unwrap()).unwrap();
            let rhs = m.mul_vec(&a).unwrap().xor(&m.mul_vec(&b).unwrap()).unwrap();
            proptest::prop_assert_eq!(lhs, rhs);
        }
    }
}
