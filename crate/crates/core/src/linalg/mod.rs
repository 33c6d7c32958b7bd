//! Exact linear algebra over `Q`, `F_p` and `Z`.
#![allow(clippy::needless_range_loop)]

mod elim;
mod field;
mod matrix;
mod smith;

use thiserror::Error;

pub use field::{parse_rational, prime_factors, FieldSpec, Scalar};
pub use matrix::{ExactMatrix, IntMatrix, MatrixJson};
pub use smith::{smith_normal_form, SmithForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown field token {0:?} (expected \"Q\" or \"F<p>\")")]
    UnknownField(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("{0} has no image in F{1}")]
    NotRepresentable(String, u64),
    #[error("scalar {0} is not an element of {1}")]
    WrongField(String, FieldSpec),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundaries do not compose to zero")]
    NotAComplex,
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn solve(m: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    m.solve(b)
}

/// `dim ker d_k - rank d_{k+1}` for a composable pair of boundary maps.
///
/// `d_k` maps the middle chain group out, `d_k1` maps into it, so the
/// middle dimension is `d_k.cols() == d_k1.rows()`.
pub fn betti_from_boundaries(d_k: &ExactMatrix, d_k1: &ExactMatrix) -> Result<usize, LinalgError> {
    if d_k.cols() != d_k1.rows() {
        return Err(LinalgError::DimensionMismatch { expected: d_k.cols(), found: d_k1.rows() });
    }
    if !d_k.mul(d_k1)?.is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    Ok(d_k.cols() - d_k.rank() - d_k1.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn betti_of_zero_maps() {
        let a = ExactMatrix::zeros(0, 5, FieldSpec::Q);
        let b = ExactMatrix::zeros(5, 0, FieldSpec::Q);
        assert_eq!(betti_from_boundaries(&a, &b).unwrap(), 5);
    }

    #[test]
    fn circle_betti() {
        // one 0-cell, one 1-cell, d_1 = 0
        let d0 = ExactMatrix::zeros(0, 1, FieldSpec::Q);
        let d1 = ExactMatrix::zeros(1, 1, FieldSpec::Q);
        let d2 = ExactMatrix::zeros(1, 0, FieldSpec::Q);
        assert_eq!(betti_from_boundaries(&d0, &d1).unwrap(), 1);
        assert_eq!(betti_from_boundaries(&d1, &d2).unwrap(), 1);
    }

    #[test]
    fn rejects_non_complex() {
        let a = ExactMatrix::identity(2, FieldSpec::Q);
        assert_eq!(betti_from_boundaries(&a, &a), Err(LinalgError::NotAComplex));
        let b = ExactMatrix::zeros(3, 1, FieldSpec::Q);
        assert!(matches!(
            betti_from_boundaries(&a, &b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }
}
