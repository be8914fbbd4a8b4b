use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::linalg::{FieldSpec, Scalar};

/// A dense matrix over a [`FieldSpec`], stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch(format!("entry {bad} does not lie in {field}")));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer entries (row-major), reducing into the field.
    pub fn from_ints(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&n| field.from_int(n)).collect(),
        }
    }

    /// Builds a matrix whose rows are the given vectors; `cols` is needed for
    /// the empty case.
    pub fn from_rows(field: FieldSpec, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Matrix::from_rows(field, rows, columns).transpose()
    }

    pub fn field(&self) -> FieldSpec {
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

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        debug_assert!(self.field.contains(&value));
        self.data[r * self.cols + c] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| self.field.is_zero(s))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(&out.data[idx], a, &other.data[k * other.cols + j]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self[(r, c)].clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other[(r, c)].clone());
            }
        }
        out
    }

    /// Reduced row echelon form together with pivot columns and rank.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !f.is_zero(&m[(r, col)])) else {
                continue;
            };
            m.swap_rows(found, prow);
            let inv = f.inv(&m[(prow, col)]).expect("nonzero pivot");
            for c in col..m.cols {
                let idx = prow * m.cols + c;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = f.neg(&m[(r, col)]);
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let src = m.data[prow * m.cols + c].clone();
                    let idx = r * m.cols + c;
                    m.data[idx] = f.mul_add(&m.data[idx], &factor, &src);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column, in
    /// increasing order of the free column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(&matrix[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side of length {} for a {}x{} system",
                rhs.len(),
                self.rows,
                self.cols
            )));
        }
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self[(r, c)].clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn rref_of_empty_matrix() {
        let m = Matrix::zeros(q(), 0, 0);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_of_identity_over_f2() {
        let id = Matrix::identity(f2(), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_of_rank_one_rational_matrix() {
        // Row 2 is twice row 1, so the echelon form is [[1,2],[0,0]].
        let m = Matrix::from_ints(q(), 2, 2, &[1, 2, 2, 4]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix, Matrix::from_ints(q(), 2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn nullspace_edge_cases() {
        assert!(Matrix::identity(q(), 4).nullspace_basis().is_empty());
        assert_eq!(Matrix::zeros(q(), 2, 3).nullspace_basis().len(), 3);
    }

    #[test]
    fn nullspace_of_row_over_f2() {
        // Of the four vectors of F_2^2, (0,0) and (1,1) are killed by [1 1].
        let m = Matrix::from_ints(f2(), 1, 2, &[1, 1]);
        let basis = m.nullspace_basis();
        assert_eq!(basis, vec![vec![Scalar::Fp(1), Scalar::Fp(1)]]);
    }

    #[test]
    fn solve_cases() {
        let id = Matrix::identity(q(), 2);
        let rhs = vec![q().from_int(3), q().from_int(-7)];
        assert_eq!(id.solve(&rhs).unwrap(), Some(rhs.clone()));

        let zero = Matrix::zeros(q(), 2, 2);
        assert_eq!(zero.solve(&rhs).unwrap(), None);

        let two = Matrix::from_ints(q(), 1, 1, &[2]);
        let x = two.solve(&[q().one()]).unwrap().unwrap();
        assert_eq!(x, vec![Scalar::Q(BigRational::new(1.into(), 2.into()))]);

        assert!(two.solve(&rhs).is_err());
    }

    #[test]
    fn matrix_product_and_transpose() {
        let a = Matrix::from_ints(q(), 2, 3, &[1, 2, 3, 4, 5, 6]);
        let b = a.transpose();
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_ints(q(), 2, 2, &[14, 32, 32, 77]));
        let f3 = FieldSpec::prime(3).unwrap();
        let c = Matrix::from_ints(f3, 1, 1, &[2]);
        assert_eq!(c.mul(&c), Matrix::from_ints(f3, 1, 1, &[1]));
    }

    #[test]
    fn rejects_foreign_entries() {
        let err = Matrix::new(f2(), 1, 1, vec![Scalar::Fp(5)]);
        assert!(err.is_err());
        let err = Matrix::new(q(), 1, 2, vec![q().one()]);
        assert!(err.is_err());
    }
}
