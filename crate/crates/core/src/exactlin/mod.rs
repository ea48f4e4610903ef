//! Exact linear algebra over ℚ and prime fields.
//!
//! Every k-linear structure in the crate is built from these pieces: sparse exact matrices,
//! canonical subspaces, quotients with a pivot-determined section, and idempotent splittings.

mod echelon;
mod field;
mod matrix;
mod spaces;
pub mod sparse;

use thiserror::Error;

pub use field::{FieldSpec, Scalar};
pub use matrix::ExactMatrix;
pub use spaces::{PivotRule, QuotientSpace, Splitting, Subspace};
pub use sparse::SparseVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    Shape { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is not idempotent (first difference of e·e and e at {0:?})")]
    NotIdempotent((usize, usize)),
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("rows of unequal length")]
    Ragged,
    #[error("{0}")]
    Parse(String),
}

/// `{v : f·v = 0}`; `dim = cols(f) − rank(f)`.
pub fn kernel(f: &ExactMatrix) -> Subspace {
    let field = f.field();
    let rows = f.transpose();
    let mut e = echelon::Echelon::new(field, f.cols());
    for r in rows.columns() {
        e.insert(r.clone());
    }
    let pivots = e.sorted();
    let vecs = (0..f.cols()).filter(|j| !e.is_pivot(*j)).map(|j| {
        let mut v: SparseVec = pivots
            .iter()
            .filter_map(|(p, row)| sparse::get(row, j).map(|x| (*p, field.neg(x))))
            .collect();
        v.push((j, field.one()));
        v.sort_by_key(|x| x.0);
        v
    });
    Subspace::span(field, f.cols(), vecs)
}

pub fn image(f: &ExactMatrix) -> Subspace {
    Subspace::column_space(f)
}

fn same_shape(f: &ExactMatrix, g: &ExactMatrix, op: &'static str) -> Result<(), LinError> {
    if f.field() != g.field() {
        return Err(LinError::FieldMismatch { left: f.field(), right: g.field() });
    }
    if f.shape() != g.shape() {
        return Err(LinError::Shape { op, left: f.shape(), right: g.shape() });
    }
    Ok(())
}

/// `W / im(f − g)` for `f, g : V → W`.
pub fn coequalizer(f: &ExactMatrix, g: &ExactMatrix) -> Result<QuotientSpace, LinError> {
    coequalizer_with(f, g, PivotRule::Leftmost)
}

pub fn coequalizer_with(f: &ExactMatrix, g: &ExactMatrix, rule: PivotRule) -> Result<QuotientSpace, LinError> {
    same_shape(f, g, "coequalizer")?;
    let d = f - g;
    Ok(QuotientSpace::new(f.field(), f.rows(), d.columns().iter().cloned(), rule))
}

/// `ker(f − g)`.
pub fn equalizer(f: &ExactMatrix, g: &ExactMatrix) -> Result<Subspace, LinError> {
    same_shape(f, g, "equalizer")?;
    Ok(kernel(&(f - g)))
}

pub fn split_idempotent(e: &ExactMatrix) -> Result<Splitting, LinError> {
    if !e.is_square() {
        return Err(LinError::Shape { op: "split_idempotent", left: e.shape(), right: e.shape() });
    }
    let ee = e * e;
    if let Some(at) = ee.first_difference(e) {
        return Err(LinError::NotIdempotent(at));
    }
    let im = image(e);
    let projection = im.coordinates_of(e).expect("columns of e lie in its image");
    Ok(Splitting { dim: im.dim(), inclusion: im.inclusion(), projection })
}

/// Kronecker product, left factor index major.
pub fn tensor_map(f: &ExactMatrix, g: &ExactMatrix) -> Result<ExactMatrix, LinError> {
    f.checked_kron(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&ExactMatrix::zeros(q(), 3, 3)).dim(), 3);
        assert_eq!(kernel(&ExactMatrix::identity(q(), 4)).dim(), 0);
        let f = ExactMatrix::from_i64_rows(q(), &[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&f);
        assert_eq!(k.dim(), 2);
        assert!((&f * &k.inclusion()).is_zero());
    }

    #[test]
    fn coequalizer_examples() {
        let f = ExactMatrix::from_i64_rows(q(), &[&[1, 0], &[0, 1], &[1, 1]]);
        let qs = coequalizer(&f, &f).unwrap();
        assert!(qs.projection().is_identity());
        let one = ExactMatrix::identity(q(), 1);
        let zero = ExactMatrix::zeros(q(), 1, 1);
        assert_eq!(coequalizer(&one, &zero).unwrap().dim(), 0);
        assert!(coequalizer(&one, &f).is_err());
    }

    #[test]
    fn equalizer_examples() {
        let f = ExactMatrix::from_i64_rows(q(), &[&[1, 2], &[0, 1]]);
        assert_eq!(equalizer(&f, &f).unwrap().dim(), 2);
        let id = ExactMatrix::identity(q(), 2);
        assert_eq!(equalizer(&id, &ExactMatrix::zeros(q(), 2, 2)).unwrap().dim(), 0);
    }

    #[test]
    fn split_examples() {
        let s = split_idempotent(&ExactMatrix::identity(q(), 3)).unwrap();
        assert_eq!(s.dim, 3);
        assert!(s.inclusion.is_identity() && s.projection.is_identity());
        assert_eq!(split_idempotent(&ExactMatrix::zeros(q(), 3, 3)).unwrap().dim, 0);
        let bad = ExactMatrix::from_i64_rows(q(), &[&[2]]);
        assert!(matches!(split_idempotent(&bad), Err(LinError::NotIdempotent(_))));
    }

    #[test]
    fn tensor_map_examples() {
        let i2 = ExactMatrix::identity(q(), 2);
        assert!(tensor_map(&i2, &i2).unwrap().is_identity());
        assert!(tensor_map(&ExactMatrix::zeros(q(), 2, 2), &i2).unwrap().is_zero());
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(tensor_map(&i2, &ExactMatrix::identity(f7, 2)).is_err());
    }
}
