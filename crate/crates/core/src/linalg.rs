//! Dense matrices over a finite field, stored as raw canonical indices.

use std::fmt;

use crate::field::{FieldElement, FiniteField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<u32>),
    /// Consistent, with a solution space of the given dimension.
    Underdetermined(usize),
    Inconsistent,
}

impl Matrix {
    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rows of raw values; all rows must have length `cols`.
    pub fn from_rows(field: &FiniteField, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            field: field.clone(),
            rows: n,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn element(&self, r: usize, c: usize) -> FieldElement {
        self.field
            .element(self.get(r, c) as u64)
            .expect("stored values are in range")
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| f.add_raw(acc, f.mul_raw(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add_raw(out.get(i, j), f.mul_raw(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `row[dst] -= factor * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, factor: u32) {
        if factor == 0 {
            return;
        }
        let f = self.field.clone();
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s != 0 {
                let v = f.sub_raw(self.get(dst, c), f.mul_raw(factor, s));
                self.set(dst, c, v);
            }
        }
    }

    fn scale_row(&mut self, r: usize, factor: u32) {
        let f = self.field.clone();
        for c in 0..self.cols {
            let v = f.mul_raw(self.get(r, c), factor);
            self.set(r, c, v);
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

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.field.inv_raw(m.get(row, col));
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    m.row_axpy(r, row, factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Independent rows spanning the row space (the nonzero rows of the RREF).
    pub fn row_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Matrix::from_rows(&self.field, self.cols, rows)
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u32; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg_raw(r.get(i, fc));
                }
                v
            })
            .collect();
        Matrix::from_rows(f, self.cols, basis)
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[u32]) -> Solution {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        if pivots.len() < self.cols {
            return Solution::Underdetermined(self.cols - pivots.len());
        }
        let x = (0..self.cols).map(|i| red.get(i, self.cols)).collect();
        Solution::Unique(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(red.select_columns(&cols))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Echelon basis that supports pushing and popping vectors in stack order,
/// for depth-first searches over column subsets.
#[derive(Clone)]
pub struct IncrementalBasis {
    field: FiniteField,
    /// `(pivot index, vector normalized to 1 at the pivot)`; `None` marks a
    /// pushed vector that was dependent.
    stack: Vec<Option<(usize, Vec<u32>)>>,
    scratch: Vec<u32>,
}

impl IncrementalBasis {
    pub fn new(field: &FiniteField, dim: usize) -> Self {
        IncrementalBasis {
            field: field.clone(),
            stack: Vec::new(),
            scratch: vec![0; dim],
        }
    }

    /// Reduces `v` against the current basis; returns true when `v` is
    /// independent of it. The vector is recorded either way so that
    /// [`IncrementalBasis::pop`] stays symmetric.
    pub fn push(&mut self, v: &[u32]) -> bool {
        let f = &self.field;
        self.scratch.copy_from_slice(v);
        for (pivot, b) in self.stack.iter().flatten() {
            let factor = self.scratch[*pivot];
            if factor != 0 {
                for (s, &bv) in self.scratch.iter_mut().zip(b) {
                    if bv != 0 {
                        *s = f.sub_raw(*s, f.mul_raw(factor, bv));
                    }
                }
            }
        }
        match self.scratch.iter().position(|&x| x != 0) {
            Some(pivot) => {
                let inv = f.inv_raw(self.scratch[pivot]);
                let normalized = self.scratch.iter().map(|&x| f.mul_raw(x, inv)).collect();
                self.stack.push(Some((pivot, normalized)));
                true
            }
            None => {
                self.stack.push(None);
                false
            }
        }
    }

    /// Like `push`, but leaves the basis untouched.
    pub fn is_independent(&mut self, v: &[u32]) -> bool {
        let independent = self.push(v);
        self.stack.pop();
        independent
    }

    pub fn pop(&mut self) {
        self.stack.pop();
    }

    pub fn rank(&self) -> usize {
        self.stack.iter().flatten().count()
    }
}
