//! Dense matrices over an exact field, with echelon-form linear algebra.

use serde_json::Value;

use crate::field::{Field, FieldError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Rank together with a kernel basis in reduced column-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel<E> {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<E>>,
}

/// Result of solving `A X = B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F: Field> {
    Consistent {
        particular: Matrix<F>,
        kernel_basis: Vec<Vec<F::Elem>>,
    },
    NoSolution,
}

impl<F: Field> Solution<F> {
    pub fn particular(&self) -> Option<&Matrix<F>> {
        match self {
            Solution::Consistent { particular, .. } => Some(particular),
            Solution::NoSolution => None,
        }
    }
}

/// Row-reduced form of a matrix plus its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &F, n: usize, c: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_data(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix::from_data(field, r, cols, data)
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix rows");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix::from_data(field, rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
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
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        let c = self.cols;
        self.data[i * c + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix<F>, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Matrix<F> {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Matrix::from_data(&self.field, self.rows, self.cols, data)
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Matrix<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix::from_data(&self.field, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_data(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix<F>) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, other);
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Adds `block` into the region with top-left corner `(r0, c0)`.
    pub fn paste_add(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = self.field.add(self.get(r0 + i, c0 + j), block.get(i, j));
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut out = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (oi, &i) in rows.iter().enumerate() {
            for (oj, &j) in cols.iter().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> F::Elem {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = self.field.add(&acc, self.get(i, i));
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> Matrix<F> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Gauss-Jordan elimination.
    pub fn echelon(&self) -> Echelon<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if f.is_zero(rv) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    pub fn rank_kernel(&self) -> RankKernel<F::Elem> {
        let ech = self.echelon();
        let kernel_basis = kernel_from_echelon(&ech, self.cols);
        RankKernel {
            rank: ech.pivots.len(),
            kernel_basis,
        }
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel(&self) -> Matrix<F> {
        let k = self.rank_kernel().kernel_basis;
        Matrix::from_columns(&self.field, self.cols, &k)
    }

    /// Indices of a maximal set of linearly independent columns (the pivot columns).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Basis of the column space, as columns of the original matrix.
    pub fn image(&self) -> Matrix<F> {
        let piv = self.pivot_columns();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, &piv)
    }

    /// Solves `A X = B` for every column of `B` at once.
    pub fn solve_all(&self, b: &Matrix<F>) -> Solution<F> {
        assert_eq!(self.rows, b.rows, "solve_all row mismatch");
        let f = &self.field;
        let aug = self.hstack(b);
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&c| c >= self.cols) {
            return Solution::NoSolution;
        }
        let mut particular = Matrix::zeros(f, self.cols, b.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(c, j, ech.reduced.get(r, self.cols + j).clone());
            }
        }
        let a_part = Echelon {
            reduced: ech.reduced.submatrix(0..self.rows, 0..self.cols),
            pivots: ech.pivots.clone(),
        };
        Solution::Consistent {
            particular,
            kernel_basis: kernel_from_echelon(&a_part, self.cols),
        }
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        match self.solve_all(&Matrix::identity(&self.field, self.rows)) {
            Solution::Consistent { particular, kernel_basis } if kernel_basis.is_empty() => Some(particular),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|v| self.field.to_json(v)).collect()))
                .collect(),
        )
    }

    /// Reads a list of rows; an empty list needs the expected shape to recover the column count.
    pub fn from_json(field: &F, v: &Value, rows: usize, cols: usize) -> Result<Self, FieldError> {
        let bad = || FieldError::BadElement(format!("matrix of shape {rows}x{cols} expected, got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        if arr.len() != rows {
            return Err(bad());
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in arr {
            let r = row.as_array().ok_or_else(bad)?;
            if r.len() != cols {
                return Err(bad());
            }
            for e in r {
                data.push(field.from_json(e)?);
            }
        }
        Ok(Matrix::from_data(field, rows, cols, data))
    }
}

fn kernel_from_echelon<F: Field>(ech: &Echelon<F>, cols: usize) -> Vec<Vec<F::Elem>> {
    let f = ech.reduced.field();
    let mut is_pivot = vec![None; cols];
    for (r, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..cols)
        .filter(|&j| is_pivot[j].is_none())
        .map(|j| {
            let mut v = vec![f.zero(); cols];
            v[j] = f.one();
            for (r, &c) in ech.pivots.iter().enumerate() {
                v[c] = f.neg(ech.reduced.get(r, j));
            }
            v
        })
        .collect()
}

/// Rank of a list of vectors of common length.
pub fn rank_of_vectors<F: Field>(field: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, len, vectors).rank()
}

/// Tracks a growing subspace in echelon form; supports membership tests.
#[derive(Clone, Debug)]
pub struct SpanTracker<F: Field> {
    field: F,
    len: usize,
    // Rows kept reduced; `pivots[i]` is the pivot column of `rows[i]`.
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> SpanTracker<F> {
    pub fn new(field: &F, len: usize) -> Self {
        SpanTracker {
            field: field.clone(),
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let f = self.field.clone();
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[p]).expect("nonzero");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&w) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }
}
