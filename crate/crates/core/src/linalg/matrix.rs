use std::fmt;

use super::{FieldSpec, LinalgError, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor for tests and catalog data.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == c), "ragged integer matrix");
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_i64(x))).collect();
        Matrix { field, rows: rows.len(), cols: c, data }
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(field: FieldSpec, v: Vec<Scalar>) -> Self {
        Matrix { field, rows: v.len(), cols: 1, data: v }
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

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.data[r * self.cols + c] = x;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j { x.is_one() } else { x.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: (self.cols, rhs.cols),
                found: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    out.data[i * rhs.cols + j].add_mul_assign(a, b);
                }
            }
        }
        Ok(out)
    }

    /// Panics on shape mismatch; shapes are internal invariants at every call site.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul_assign(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// self += s·rhs
    pub fn add_scaled(&mut self, s: &Scalar, rhs: &Matrix) {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            a.add_mul_assign(s, b);
        }
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "hstack rows");
        let cols = self.cols + rhs.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(rhs.row(i));
        }
        Matrix { field: self.field, rows: self.rows, cols, data }
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "vstack cols");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let columns: Vec<_> = cols.iter().map(|&c| self.column(c)).collect();
        Matrix::from_columns(self.field, self.rows, &columns)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            acc.add_assign_ref(self.get(i, i));
        }
        acc
    }

    /// Reduced row echelon form; the pivot in each column is the first nonzero entry
    /// at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { matrix: m, pivots }
    }

    /// Row-reduces in place, choosing pivots only among the first `pivot_cols` columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inv().expect("nonzero pivot");
            for j in c..cols {
                let x = &self.data[r * cols + j] * &inv;
                self.data[r * cols + j] = x;
            }
            let pivot_row: Vec<Scalar> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if factor.is_zero() {
                    continue;
                }
                for (off, pv) in pivot_row.iter().enumerate() {
                    self.data[i * cols + c + off].sub_mul_assign(&factor, pv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Null-space basis as columns: one column per free variable, with a 1 in that
    /// free position.
    pub fn kernel(&self) -> Matrix {
        let Rref { matrix: r, pivots } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
        let mut k = Self::zeros(self.field, n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (row, &p) in pivots.iter().enumerate() {
                let x = r.get(row, f);
                if !x.is_zero() {
                    k.set(p, col, -x);
                }
            }
        }
        k
    }

    /// Solves A·X = B. Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch { expected: (self.rows, b.cols), found: b.shape() });
        }
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            if aug.row(i)[self.cols..].iter().any(|x| !x.is_zero()) {
                return Err(LinalgError::NoSolution);
            }
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, aug.get(row, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Self::identity(self.field, self.rows)).ok()?;
        if self.mul(&x).is_identity() { Some(x) } else { None }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Row-major flattening into a single vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(field: FieldSpec, rows: usize, cols: usize, v: Vec<Scalar>) -> Matrix {
        assert_eq!(v.len(), rows * cols, "unvectorize length");
        Matrix { field, rows, cols, data: v }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let b = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::identity(q(), 2).solve(&b).unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_i64(q(), &[&[1, 1], &[2, 2]]);
        let b = Matrix::from_i64(q(), &[&[1], &[3]]);
        assert_eq!(a.solve(&b), Err(LinalgError::NoSolution));
    }

    #[test]
    fn solve_mod_seven() {
        let f = FieldSpec::prime(7).unwrap();
        let x = Matrix::from_i64(f, &[&[2]]).solve(&Matrix::from_i64(f, &[&[1]])).unwrap();
        assert_eq!(x, Matrix::from_i64(f, &[&[4]]));
    }

    #[test]
    fn solve_shape_mismatch() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::zeros(q(), 3, 1);
        assert!(matches!(a.solve(&b), Err(LinalgError::DimensionMismatch { .. })));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(q(), 3).kernel().shape(), (3, 0));
        assert_eq!(Matrix::zeros(q(), 2, 2).kernel(), Matrix::identity(q(), 2));
        let k = Matrix::from_i64(q(), &[&[1, 1]]).kernel();
        assert_eq!(k, Matrix::from_i64(q(), &[&[-1], &[1]]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(q(), 4).rank(), 4);
        assert_eq!(Matrix::zeros(q(), 3, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
