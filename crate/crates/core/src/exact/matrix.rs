//! Dense matrices over an exact field, with Gaussian elimination.

use super::scalar::ExactField;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T: ExactField> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<T>,
}

impl<T: ExactField> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix<T> {
        Matrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = T::one();
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Matrix<T> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(other.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.sub(b);
        }
        out
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.mul(s);
        }
        out
    }

    pub fn neg(&self) -> Matrix<T> {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Matrix<T> {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant by fraction-producing Gaussian elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { return T::zero() };
            if p != col {
                for j in 0..n {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(col, j).clone();
                    *m.at_mut(col, j) = tmp;
                }
                det = det.neg();
            }
            let pv = m.at(col, col).clone();
            det = det.mul(&pv);
            for r in col + 1..n {
                let factor = m.at(r, col).div(&pv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let t = factor.mul(m.at(col, j));
                    *m.at_mut(r, j) = m.at(r, j).sub(&t);
                }
            }
        }
        det
    }

    /// Rank via row reduction.
    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Returns (RREF, pivot columns).
    fn row_reduce(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m.at(p, j).clone();
                    *m.at_mut(p, j) = m.at(r, j).clone();
                    *m.at_mut(r, j) = tmp;
                }
            }
            let pv = m.at(r, col).clone();
            for j in col..m.cols {
                *m.at_mut(r, j) = m.at(r, j).div(&pv);
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, col).is_zero() {
                    let factor = m.at(i, col).clone();
                    for j in col..m.cols {
                        let t = factor.mul(m.at(r, j));
                        *m.at_mut(i, j) = m.at(i, j).sub(&t);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the kernel `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (rref, pivots) = self.row_reduce();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.at(ri, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Exact solution set of `Ax = b`: `None` if inconsistent, otherwise one
    /// particular solution plus a kernel basis.
    pub fn solve(&self, b: &[T]) -> Option<(Vec<T>, Vec<Vec<T>>)> {
        assert_eq!(self.rows, b.len());
        // Augment and reduce.
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (rref, pivots) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column: inconsistent
        }
        let mut x = vec![T::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.at(ri, self.cols).clone();
        }
        Some((x, self.kernel()))
    }
}
