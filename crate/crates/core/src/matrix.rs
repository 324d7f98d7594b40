//! Dense matrices over a [`FieldSpec`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Gf};

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<Gf>,
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Arc<FieldSpec>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<FieldSpec>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Gf::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<FieldSpec>, rows: Vec<Vec<Gf>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&a| !field.contains(a)) {
            return Err(Error::WrongField);
        }
        let n = rows.len();
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from raw element indices.
    pub fn from_u32(field: Arc<FieldSpec>, rows: &[&[u32]]) -> Result<Matrix> {
        Self::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&x| Gf(x)).collect()).collect(),
        )
    }

    /// An empty matrix with a fixed column count.
    pub fn empty(field: Arc<FieldSpec>, cols: usize) -> Matrix {
        Matrix::zeros(field, 0, cols)
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Gf]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Gf> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(Arc::clone(&self.field), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Entry-wise image under `f`, landing in `target`.
    pub fn map_into(&self, target: Arc<FieldSpec>, f: impl Fn(Gf) -> Gf) -> Matrix {
        Matrix {
            field: target,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if *self.field != *other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(Arc::clone(f), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Gf]) -> Vec<Gf> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        self.row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Gf::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Gauss–Jordan elimination. Pivots are taken in column order, using the
    /// first row at or below the current one with a nonzero entry.
    pub fn rref(&self) -> Rref {
        let f = Arc::clone(&self.field);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
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
        self.rref().rank
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Matrix {
        let Rref { matrix, rank, .. } = self.rref();
        Matrix {
            field: matrix.field,
            rows: rank,
            cols: matrix.cols,
            data: matrix.data[..rank * matrix.cols].to_vec(),
        }
    }

    /// Rows spanning the right null space `{v : M v^T = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(Arc::clone(f), free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, Gf::ONE);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, f.neg(matrix.get(i, fc)));
            }
        }
        out
    }

    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool> {
        if *self.field != *other.field {
            return Err(Error::MixedFields);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} columns vs {} columns",
                self.cols, other.cols
            )));
        }
        let a = self.row_basis();
        let b = other.row_basis();
        Ok(a.rows == b.rows && a.data == b.data)
    }

    /// Inverse of a square matrix, if it is nonsingular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(Arc::clone(&self.field), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Gf::ONE);
        }
        let red = aug.rref();
        if red.pivots.iter().copied().take(n).ne(0..n) || red.rank < n {
            return None;
        }
        let mut inv = Matrix::zeros(Arc::clone(&self.field), n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix.get(r, n + c));
            }
        }
        Some(inv)
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for row in self.row_iter() {
            let r: Vec<u32> = row.iter().map(|g| g.0).collect();
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}
