//! Dense exact matrices and the elimination kernel used everywhere else.
//!
//! Pivoting is deterministic: the first nonzero entry, scanning columns left to
//! right and rows top to bottom. Kernel bases and particular solutions are
//! therefore reproducible across runs and platforms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::solve`]: one solution plus a basis of the homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Matrix,
    pub kernel: Matrix,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let ncols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(x.field().to_string(), field.to_string()));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Integer literal matrix; handy in tests and for structure constants.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), ncols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Builds a `len × columns.len()` matrix from column vectors.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<Scalar>]) -> Matrix {
        Matrix::from_fn(field, len, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "flat data has the wrong length");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[r * self.cols + c] = x;
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Scalar]>::to_vec).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    fn check_field(&self, rhs: &Matrix) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        Ok(())
    }

    /// Horizontal concatenation; all blocks need the same row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.put_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks need the same column count.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.put_block(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(field: Field, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.put_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the null space; one column per free variable.
    pub fn kernel_basis(&self) -> Matrix {
        let Echelon { reduced, pivots } = self.echelon();
        kernel_from_echelon(&reduced, &pivots, self.cols)
    }

    /// Solves `self · X = rhs`. `Ok(None)` means the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Solution>> {
        self.check_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, rhs.rows
            )));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self, rhs]);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut particular = Matrix::zeros(self.field, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular.set(p, j, reduced.get(i, self.cols + j).clone());
            }
        }
        let kernel = kernel_from_echelon(&reduced, &pivots, self.cols);
        Ok(Some(Solution { particular, kernel }))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let sol = self.solve(&Matrix::identity(self.field, self.rows)).ok()??;
        (sol.kernel.cols == 0).then_some(sol.particular)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of the pivot columns: a maximal independent set chosen left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Basis of the column space, taken from the original columns.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    /// Greedily picks the columns of `candidates` that are independent modulo
    /// the column space of `self`, scanning left to right.
    pub fn complement_columns(&self, candidates: &Matrix) -> Vec<usize> {
        assert_eq!(self.rows, candidates.rows);
        let joined = Matrix::hstack(self.field, self.rows, &[self, candidates]);
        joined
            .independent_columns()
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect()
    }

    /// Coordinates of `v` in the basis given by the (independent) columns of `self`.
    pub fn coordinates(&self, v: &Matrix) -> Option<Matrix> {
        self.solve(v).ok().flatten().map(|s| s.particular)
    }
}

fn kernel_from_echelon(reduced: &Matrix, pivots: &[usize], ncols: usize) -> Matrix {
    let field = reduced.field;
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(field, ncols, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, field.one());
        for (i, &p) in pivots.iter().enumerate() {
            k.set(p, j, -reduced.get(i, f));
        }
    }
    k
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self + &(-rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(Q, 2).rank(), 2);
        assert_eq!(Matrix::zeros(Q, 0, 3).rank(), 0);
        assert_eq!(Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel_basis().cols(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 2).kernel_basis(), Matrix::identity(Q, 2));

        let f5 = Field::prime(5).unwrap();
        let k = Matrix::from_ints(f5, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.shape(), (2, 1));
        // x + y = 0 mod 5 with y = 1 gives x = 4.
        assert_eq!(k, Matrix::from_ints(f5, &[&[4], &[1]]));
    }

    #[test]
    fn zero_sized_kernels() {
        // Maps out of the zero space have empty kernels; maps into it kill everything.
        assert_eq!(Matrix::zeros(Q, 3, 0).kernel_basis().shape(), (0, 0));
        assert_eq!(Matrix::zeros(Q, 0, 3).kernel_basis(), Matrix::identity(Q, 3));
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_ints(Q, &[&[3, -1], &[0, 7]]);
        let sol = Matrix::identity(Q, 2).solve(&b).unwrap().unwrap();
        assert_eq!(sol.particular, b);
        assert_eq!(sol.kernel.cols(), 0);

        let none = Matrix::zeros(Q, 1, 1).solve(&Matrix::from_ints(Q, &[&[1]])).unwrap();
        assert!(none.is_none());

        let half = Matrix::from_ints(Q, &[&[2]]).solve(&Matrix::from_ints(Q, &[&[1]]));
        let half = half.unwrap().unwrap().particular;
        assert_eq!(half.get(0, 0).to_string(), "1/2");

        assert!(Matrix::identity(Q, 2).solve(&Matrix::zeros(Q, 3, 1)).is_err());
    }

    #[test]
    fn inverse_and_complement() {
        let a = Matrix::from_ints(Q, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(Q, 2));
        assert!(Matrix::from_ints(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());

        let span = Matrix::from_ints(Q, &[&[1], &[1], &[0]]);
        let picks = span.complement_columns(&Matrix::identity(Q, 3));
        assert_eq!(picks, vec![0, 2]);
    }
}
