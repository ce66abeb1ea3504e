//! Dense matrices over a [`Ring`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadMatrixShape(format!("rows of a {n}x{cols} matrix differ in length")));
        }
        let data = rows.into_iter().flatten().map(|e| ring.canonical(&e)).collect();
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, ring: &Ring, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not chain");
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = ring.mul(a, &other[(k, j)]);
                    out[(i, j)] = ring.add(&out[(i, j)], &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ring: &Ring, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(ring.zero(), |acc, (a, b)| ring.add(&acc, &ring.mul(a, b)))
            })
            .collect()
    }

    /// Columns side by side: `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn from_cols(ring: &Ring, rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(ring, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn is_identity(&self, ring: &Ring) -> bool {
        self.rows == self.cols && *self == Matrix::identity(ring, self.rows)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row_a ← row_a + c·row_b`
    pub fn add_row_multiple(&mut self, ring: &Ring, a: usize, b: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = ring.add(&self[(a, j)], &ring.mul(c, &self[(b, j)]));
            self[(a, j)] = v;
        }
    }

    /// `col_a ← col_a + c·col_b`
    pub fn add_col_multiple(&mut self, ring: &Ring, a: usize, b: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = ring.add(&self[(i, a)], &ring.mul(c, &self[(i, b)]));
            self[(i, a)] = v;
        }
    }

    /// `(row_a, row_b) ← (p·row_a + q·row_b, r·row_a + s·row_b)`
    pub fn mix_rows(&mut self, ring: &Ring, a: usize, b: usize, [p, q, r, s]: [&Elem; 4]) {
        for j in 0..self.cols {
            let (x, y) = (self[(a, j)].clone(), self[(b, j)].clone());
            self[(a, j)] = ring.add(&ring.mul(p, &x), &ring.mul(q, &y));
            self[(b, j)] = ring.add(&ring.mul(r, &x), &ring.mul(s, &y));
        }
    }

    /// `(col_a, col_b) ← (p·col_a + q·col_b, r·col_a + s·col_b)`
    pub fn mix_cols(&mut self, ring: &Ring, a: usize, b: usize, [p, q, r, s]: [&Elem; 4]) {
        for i in 0..self.rows {
            let (x, y) = (self[(i, a)].clone(), self[(i, b)].clone());
            self[(i, a)] = ring.add(&ring.mul(p, &x), &ring.mul(q, &y));
            self[(i, b)] = ring.add(&ring.mul(r, &x), &ring.mul(s, &y));
        }
    }

    pub fn scale_row(&mut self, ring: &Ring, a: usize, c: &Elem) {
        for j in 0..self.cols {
            self[(a, j)] = ring.mul(c, &self[(a, j)]);
        }
    }

    pub fn scale_col(&mut self, ring: &Ring, a: usize, c: &Elem) {
        for i in 0..self.rows {
            self[(i, a)] = ring.mul(c, &self[(i, a)]);
        }
    }

    pub fn display_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.to_string()).collect()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Elem;

    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }
}
