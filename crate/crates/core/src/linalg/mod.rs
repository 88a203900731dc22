//! Exact scalars over ℚ and GF(p), dense matrices, subspaces and polynomials.

mod field;
mod matrix;
pub mod poly;
mod subspace;

pub use field::{FieldSpec, Scalar};
pub use matrix::{Matrix, Rref};
pub use poly::{FactorSearch, Poly};
pub use subspace::{quotient_basis, Quotient, Subspace};

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    BadCharacteristic(u64),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("rows of unequal length")]
    Ragged,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Solves A·X = B. Thin wrapper over [`Matrix::solve`].
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    a.solve(b)
}

pub fn kernel(a: &Matrix) -> Matrix {
    a.kernel()
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}

/// Zero vector of length `n`.
pub fn zero_vec(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// Standard basis vector e_i of k^n.
pub fn unit_vec(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// a + s·b
pub fn axpy(a: &mut [Scalar], s: &Scalar, b: &[Scalar]) {
    for (x, y) in a.iter_mut().zip(b) {
        x.add_mul_assign(s, y);
    }
}

pub fn scale_vec(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    v.iter().map(|x| x * s).collect()
}
