//! Dense exact matrices over a single [`Field`].
//!
//! Elimination always takes the first nonzero entry of the current column as
//! pivot, so kernels and echelon forms are deterministic.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    /// Row-major constructor; every entry must lie in `field`.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Row-major integer entries mapped into `field`.
    pub fn from_i64s(field: Field, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(field, rows, cols, data.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        let m = Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone());
        Self::new(field, m.rows, m.cols, m.data)
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Panics if `v` is from another field.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn square_size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare(self.rows, self.cols))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, x)| &acc + &(a * x))
            })
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.transpose().mul_vec(v)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<Scalar> {
        let n = self.square_size()?;
        Ok((0..n).fold(self.field.zero(), |acc, i| &acc + self.get(i, i)))
    }

    pub fn pow(&self, e: u32) -> Result<Matrix> {
        let n = self.square_size()?;
        (0..e).try_fold(Matrix::identity(self.field, n), |acc, _| acc.mul(self))
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row count".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column count".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let sub = &factor * m.get(r, j);
                    let idx = i * m.cols + j;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of the right null space. Each basis vector has a 1 in
    /// one free column and zeros in the other free columns.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![self.field.zero(); self.cols];
                v[fc] = self.field.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                v
            })
            .collect();
        (pivots.len(), basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.square_size()?;
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(r.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> Result<Scalar> {
        let n = self.square_size()?;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in c + 1..n {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = &factor * m.get(c, j);
                    let idx = i * n + j;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
        }
        Ok(det)
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let rhs = Matrix::from_columns(self.field, self.rows, &[b.to_vec()])?;
        let (r, pivots) = self.hstack(&rhs)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// `T^-1 * self * T`.
    pub fn conjugate_by(&self, t: &Matrix) -> Result<Matrix> {
        t.inverse()?.mul(self)?.mul(t)
    }

    /// Block-diagonal matrix with the given square blocks in order.
    pub fn block_diagonal(blocks: &[Matrix]) -> Result<Matrix> {
        let first = blocks.first().ok_or(Error::EmptyInput("no blocks"))?;
        let field = first.field;
        let mut n = 0;
        for b in blocks {
            first.check_field(b)?;
            n += b.square_size()?;
        }
        let mut out = Matrix::zeros(field, n, n);
        let mut at = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(at + i) * n + at + j] = b.get(i, j).clone();
                }
            }
            at += b.rows;
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.mul(b)
}

pub fn mat_inverse(a: &Matrix) -> Result<Matrix> {
    a.inverse()
}

pub fn mat_rank_kernel(a: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    a.rank_kernel()
}

pub fn block_diagonal(blocks: &[Matrix]) -> Result<Matrix> {
    Matrix::block_diagonal(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn identity_inverts_to_itself() {
        for n in 1..5 {
            let id = Matrix::identity(q(), n);
            assert_eq!(mat_inverse(&id).unwrap(), id);
        }
    }

    #[test]
    fn zero_matrix_kernel() {
        let (rank, basis) = mat_rank_kernel(&Matrix::zeros(q(), 3, 3));
        assert_eq!(rank, 0);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn rank_one_kernel() {
        let a = Matrix::from_i64s(q(), 2, 2, &[1, 2, 2, 4]).unwrap();
        let (rank, basis) = a.rank_kernel();
        assert_eq!(rank, 1);
        assert_eq!(basis, vec![vec![q().from_i64(-2), q().one()]]);
        assert!(a.mul_vec(&basis[0]).unwrap().iter().all(Scalar::is_zero));
    }

    #[test]
    fn singular_and_shape_errors() {
        let a = Matrix::from_i64s(q(), 2, 2, &[1, 2, 2, 4]).unwrap();
        assert_eq!(a.inverse(), Err(Error::SingularMatrix));
        let r = Matrix::zeros(q(), 2, 3);
        assert_eq!(r.inverse(), Err(Error::NonSquare(2, 3)));
        assert!(matches!(r.mul(&r), Err(Error::DimensionMismatch(_))));
        assert!(matches!(
            Matrix::from_i64s(q(), 2, 2, &[1, 2, 3]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn block_diagonal_layout() {
        let b = Matrix::from_i64s(q(), 2, 2, &[1, 2, 3, 4]).unwrap();
        assert_eq!(block_diagonal(std::slice::from_ref(&b)).unwrap(), b);
        let d = block_diagonal(&[
            Matrix::from_i64s(q(), 1, 1, &[1]).unwrap(),
            Matrix::from_i64s(q(), 1, 1, &[2]).unwrap(),
        ])
        .unwrap();
        assert_eq!(d, Matrix::from_i64s(q(), 2, 2, &[1, 0, 0, 2]).unwrap());

        // blocks of sizes 5,3,2,2 start at rows 0,5,8,10
        let blocks: Vec<Matrix> = [5usize, 3, 2, 2]
            .iter()
            .enumerate()
            .map(|(k, &s)| Matrix::from_fn(q(), s, s, |_, _| q().from_i64(k as i64 + 1)))
            .collect();
        let big = block_diagonal(&blocks).unwrap();
        assert_eq!(big.rows(), 12);
        for (k, anchor) in [0usize, 5, 8, 10].into_iter().enumerate() {
            assert_eq!(big[(anchor, anchor)], q().from_i64(k as i64 + 1));
            if anchor > 0 {
                assert!(big[(anchor, anchor - 1)].is_zero());
            }
        }
        let nonzero = big.entries().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 25 + 9 + 4 + 4);

        let mixed = block_diagonal(&[b, Matrix::identity(Field::prime(3).unwrap(), 1)]);
        assert!(matches!(mixed, Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn determinant_and_solve() {
        let a = Matrix::from_i64s(q(), 3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 1]).unwrap();
        // 2(3-2) - 0 + 1(1-3) = 0
        assert!(a.det().unwrap().is_zero());
        let b = Matrix::from_i64s(q(), 2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(b.det().unwrap(), q().from_i64(-1));
        let x = b.solve(&[q().from_i64(3), q().from_i64(5)]).unwrap().unwrap();
        assert_eq!(x, vec![q().from_i64(5), q().from_i64(3)]);
        let z = Matrix::zeros(q(), 2, 2);
        assert_eq!(z.solve(&[q().one(), q().zero()]).unwrap(), None);
    }

    fn arb_matrix(max_n: usize) -> impl Strategy<Value = Matrix> {
        let fields = prop_oneof![
            Just(q()),
            Just(Field::prime(2).unwrap()),
            Just(Field::prime(5).unwrap()),
            Just(Field::prime(13).unwrap())
        ];
        (fields, 1..=max_n, 1..=max_n).prop_flat_map(|(f, r, c)| {
            prop::collection::vec(-4i64..5, r * c)
                .prop_map(move |d| Matrix::from_i64s(f, r, c, &d).unwrap())
        })
    }

    fn arb_square(max_n: usize) -> impl Strategy<Value = Matrix> {
        let fields = prop_oneof![Just(q()), Just(Field::prime(2).unwrap()), Just(Field::prime(13).unwrap())];
        (fields, 1..=max_n).prop_flat_map(|(f, n)| {
            prop::collection::vec(-4i64..5, n * n).prop_map(move |d| Matrix::from_i64s(f, n, n, &d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn inverse_is_exact(a in arb_square(7)) {
            if let Ok(inv) = a.inverse() {
                let n = a.rows();
                prop_assert_eq!(inv.mul(&a).unwrap(), Matrix::identity(a.field(), n));
                prop_assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(a.field(), n));
                prop_assert!(!a.det().unwrap().is_zero());
            } else {
                prop_assert!(a.det().unwrap().is_zero());
            }
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in arb_matrix(7)) {
            let (rank, basis) = a.rank_kernel();
            prop_assert_eq!(rank + basis.len(), a.cols());
            for v in &basis {
                prop_assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
            let k = Matrix::from_columns(a.field(), a.cols(), &basis).unwrap();
            prop_assert_eq!(k.rank(), basis.len());
        }
    }
}
