//! Exact dense linear algebra over any [`Scalar`] ring.
//!
//! Rank, echelon form and nullspaces require unit pivots, which is automatic
//! over a field; determinants use division-free Laplace expansion so they are
//! valid over the dual numbers as well (matrices here are tiny).

use crate::scalar::Scalar;

/// Dense row-major matrix over a scalar ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> std::fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<K: Scalar> Matrix<K> {
    pub fn new(rows: usize, cols: usize, data: Vec<K>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix dimensions inconsistent");
        Matrix { rows, cols, data }
    }

    /// All-zero matrix; `sample` supplies the ring.
    pub fn zeros(rows: usize, cols: usize, sample: &K) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![sample.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, sample: &K) -> Self {
        let mut m = Self::zeros(n, n, sample);
        for i in 0..n {
            *m.at_mut(i, i) = sample.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Self {
        let r = rows.len();
        assert!(r > 0, "need at least one row");
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &K {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut K {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[K] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let zero = self.data[0].zero_like();
        let mut out = Self::zeros(self.rows, other.cols, &zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(other.at(k, j));
                    let cur = out.at(i, j).add(&t);
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K]) -> Vec<K> {
        assert_eq!(self.cols, v.len());
        let zero = self.data[0].zero_like();
        (0..self.rows)
            .map(|i| {
                let mut acc = zero.clone();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivot searches accept unit entries only, so over a field this is the
    /// usual RREF; over `k[e]` it succeeds whenever elimination never needs
    /// to divide by a nilpotent (callers here only eliminate over fields).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = (r..m.rows).find(|&i| m.at(i, c).is_unit());
            let Some(pi) = pivot_row else {
                debug_assert!(
                    (r..m.rows).all(|i| m.at(i, c).is_zero()),
                    "nonzero non-unit entries below pivot: elimination over a non-field"
                );
                continue;
            };
            m.swap_rows(r, pi);
            let inv = m.at(r, c).inv().expect("pivot is a unit");
            for j in c..m.cols {
                *m.at_mut(r, j) = m.at(r, j).mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let t = factor.mul(m.at(r, j));
                    *m.at_mut(i, j) = m.at(i, j).sub(&t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Echelonized basis of `{v : M v = 0}`; dimension is `cols - rank`.
    pub fn nullspace(&self) -> Vec<Vec<K>> {
        let zero = self.data[0].zero_like();
        let one = self.data[0].one_like();
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r.at(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b` over a field, if any.
    pub fn solve(&self, b: &[K]) -> Option<Vec<K>> {
        assert_eq!(self.rows, b.len());
        let zero = self.data[0].zero_like();
        let mut aug = Matrix::zeros(self.rows, self.cols + 1, &zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![zero; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Division-free determinant by Laplace expansion along the first row.
    /// Exponential in the size, which is fine for the Moore matrices used
    /// here (at most 6x6).
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix");
        assert!(self.rows <= 8, "Laplace determinant limited to tiny matrices");
        let cols: Vec<usize> = (0..self.cols).collect();
        self.det_rec(0, &cols)
    }

    fn det_rec(&self, row: usize, cols: &[usize]) -> K {
        let zero = self.data[0].zero_like();
        if cols.len() == 1 {
            return self.at(row, cols[0]).clone();
        }
        let mut acc = zero;
        for (k, &c) in cols.iter().enumerate() {
            let a = self.at(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&cc| cc != c)
                .collect();
            let minor = self.det_rec(row + 1, &rest);
            let term = a.mul(&minor);
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Inverse of a square matrix with unit pivots.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let zero = self.data[0].zero_like();
        let mut aug = Matrix::zeros(self.rows, 2 * self.cols, &zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols + i) = zero.one_like();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < self.cols || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut inv = Matrix::zeros(self.rows, self.cols, &zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *inv.at_mut(i, j) = r.at(i, self.cols + j).clone();
            }
        }
        Some(inv)
    }
}

/// Rank of the span of a list of vectors.
pub fn span_rank<K: Scalar>(vectors: &[Vec<K>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

/// True iff `v` lies in the span of `basis`.
pub fn in_span<K: Scalar>(basis: &[Vec<K>], v: &[K]) -> bool {
    let mut all = basis.to_vec();
    let before = span_rank(&all);
    all.push(v.to_vec());
    span_rank(&all) == before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, FieldElement};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn felt(field: &crate::ffield::Field, v: u64) -> FieldElement {
        FieldElement::from_int(field, v)
    }

    #[test]
    fn nullspace_of_zero_and_identity() {
        let f = make_field(3, 1).unwrap();
        let zero = FieldElement::zero(&f);
        let m = Matrix::zeros(2, 3, &zero);
        assert_eq!(m.nullspace().len(), 3);
        let id = Matrix::identity(3, &zero);
        assert!(id.nullspace().is_empty());
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let f = make_field(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..5);
            let data: Vec<FieldElement> = (0..rows * cols)
                .map(|_| FieldElement::from_index(&f, rng.gen_range(0..9)))
                .collect();
            let m = Matrix::new(rows, cols, data);
            assert_eq!(m.rank() + m.nullspace().len(), cols);
            for v in m.nullspace() {
                for out in m.mul_vec(&v) {
                    assert!(out.is_zero());
                }
            }
        }
    }

    #[test]
    fn determinant_matches_rank_deficiency() {
        let f = make_field(5, 1).unwrap();
        let m = Matrix::from_rows(vec![
            vec![felt(&f, 1), felt(&f, 2)],
            vec![felt(&f, 3), felt(&f, 4)],
        ]);
        // det = 4 - 6 = -2 = 3 mod 5
        assert_eq!(m.det(), felt(&f, 3));
        let singular = Matrix::from_rows(vec![
            vec![felt(&f, 1), felt(&f, 2)],
            vec![felt(&f, 2), felt(&f, 4)],
        ]);
        assert!(singular.det().is_zero());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = make_field(7, 1).unwrap();
        let m = Matrix::from_rows(vec![
            vec![felt(&f, 2), felt(&f, 1), felt(&f, 0)],
            vec![felt(&f, 0), felt(&f, 3), felt(&f, 5)],
            vec![felt(&f, 1), felt(&f, 0), felt(&f, 1)],
        ]);
        let inv = m.inverse().unwrap();
        let zero = felt(&f, 0);
        assert_eq!(m.matmul(&inv), Matrix::identity(3, &zero));
    }

    #[test]
    fn solve_consistent_system() {
        let f = make_field(3, 1).unwrap();
        let m = Matrix::from_rows(vec![
            vec![felt(&f, 1), felt(&f, 2)],
            vec![felt(&f, 2), felt(&f, 1)],
        ]);
        let b = vec![felt(&f, 1), felt(&f, 2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }
}
