use super::echelon::Echelon;
use super::field::{FieldSpec, Scalar};
use super::matrix::ExactMatrix;
use super::sparse::{self, SparseVec};

/// Which end of the coordinate order supplies pivots when choosing sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    #[default]
    Leftmost,
    Rightmost,
}

/// A subspace of `k^n`, stored by its reduced echelon basis, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    pivots: Vec<usize>,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn span(field: FieldSpec, ambient_dim: usize, vecs: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(field, ambient_dim);
        for v in vecs {
            e.insert(v);
        }
        Self::from_echelon(field, &e)
    }

    pub(crate) fn from_echelon(field: FieldSpec, e: &Echelon) -> Self {
        let (pivots, basis) = e.sorted().into_iter().unzip();
        Subspace { field, ambient_dim: e.dim(), pivots, basis }
    }

    pub fn column_space(m: &ExactMatrix) -> Self {
        Self::span(m.field(), m.rows(), m.columns().iter().cloned())
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace {
            field,
            ambient_dim: n,
            pivots: (0..n).collect(),
            basis: (0..n).map(|i| sparse::unit(i, field)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace { field, ambient_dim: n, pivots: Vec::new(), basis: Vec::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns are the basis vectors.
    pub fn inclusion(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_columns(self.field, self.ambient_dim, self.basis.clone())
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let c: SparseVec = self
            .pivots
            .iter()
            .enumerate()
            .filter_map(|(k, p)| sparse::get(v, *p).map(|x| (k, x.clone())))
            .collect();
        let mut back = v.clone();
        for (k, x) in &c {
            back = sparse::axpy(self.field, &back, &self.field.neg(x), &self.basis[*k]);
        }
        back.is_empty().then_some(c)
    }

    pub fn coordinates_dense(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.coordinates(&sparse::from_dense(v))
            .map(|c| sparse::to_dense(self.field, &c, self.dim()))
    }

    /// Coordinates of every column of `m`; `None` if some column leaves the subspace.
    pub fn coordinates_of(&self, m: &ExactMatrix) -> Option<ExactMatrix> {
        assert_eq!(m.rows(), self.ambient_dim, "ambient mismatch");
        let cols: Option<Vec<SparseVec>> = m.columns().iter().map(|c| self.coordinates(c)).collect();
        cols.map(|c| ExactMatrix::from_sparse_columns(self.field, self.dim(), c))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_columns(&self, m: &ExactMatrix) -> bool {
        m.columns().iter().all(|c| self.contains(c))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Image of the subspace under `f`.
    pub fn image_under(&self, f: &ExactMatrix) -> Subspace {
        Self::span(self.field, f.rows(), self.basis.iter().map(|b| f.apply(b)))
    }

    /// The unique `g` with `inclusion · g = h`, when `h` lands in the subspace.
    pub fn factor(&self, h: &ExactMatrix) -> Option<ExactMatrix> {
        self.coordinates_of(h)
    }
}

/// `k^n / U` with a projection and a section fixed by the pivot rule.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: FieldSpec,
    relations: Subspace,
    projection: ExactMatrix,
    section: ExactMatrix,
    rule: PivotRule,
}

impl QuotientSpace {
    pub fn new(
        field: FieldSpec,
        ambient_dim: usize,
        generators: impl IntoIterator<Item = SparseVec>,
        rule: PivotRule,
    ) -> Self {
        let n = ambient_dim;
        let flip = |v: SparseVec| -> SparseVec {
            match rule {
                PivotRule::Leftmost => v,
                PivotRule::Rightmost => {
                    let mut w: SparseVec = v.into_iter().map(|(i, x)| (n - 1 - i, x)).collect();
                    w.reverse();
                    w
                }
            }
        };
        let mut e = Echelon::new(field, n);
        for g in generators {
            e.insert(flip(g));
        }
        let rows = e.sorted();
        let free: Vec<usize> = (0..n).filter(|i| !e.is_pivot(*i)).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &j) in free.iter().enumerate() {
            pos[j] = k;
        }
        let mut proj_cols: Vec<SparseVec> = vec![Vec::new(); n];
        for &j in &free {
            proj_cols[j] = sparse::unit(pos[j], field);
        }
        for (p, row) in &rows {
            let mut col: SparseVec = row
                .iter()
                .filter(|(c, _)| c != p)
                .map(|(c, x)| (pos[*c], field.neg(x)))
                .collect();
            col.sort_by_key(|e| e.0);
            proj_cols[*p] = col;
        }
        let sec_cols: Vec<SparseVec> = free.iter().map(|&j| sparse::unit(j, field)).collect();
        let (projection, section, relations) = match rule {
            PivotRule::Leftmost => (
                ExactMatrix::from_sparse_columns(field, free.len(), proj_cols),
                ExactMatrix::from_sparse_columns(field, n, sec_cols),
                Subspace::from_echelon(field, &e),
            ),
            PivotRule::Rightmost => {
                proj_cols.reverse();
                let sec_cols = sec_cols.into_iter().map(flip).collect();
                let relations = Subspace::span(field, n, rows.into_iter().map(|(_, r)| flip(r)));
                (
                    ExactMatrix::from_sparse_columns(field, free.len(), proj_cols),
                    ExactMatrix::from_sparse_columns(field, n, sec_cols),
                    relations,
                )
            }
        };
        QuotientSpace { field, relations, projection, section, rule }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        QuotientSpace {
            field,
            relations: Subspace::zero(field, n),
            projection: ExactMatrix::identity(field, n),
            section: ExactMatrix::identity(field, n),
            rule: PivotRule::Leftmost,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.projection.cols()
    }

    pub fn rule(&self) -> PivotRule {
        self.rule
    }

    pub fn projection(&self) -> &ExactMatrix {
        &self.projection
    }

    pub fn section(&self) -> &ExactMatrix {
        &self.section
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.projection.apply(v)
    }

    /// The unique `g` with `g · projection = h`, when `h` kills the relations.
    pub fn factor(&self, h: &ExactMatrix) -> Option<ExactMatrix> {
        let kills = self.relations.basis().iter().all(|r| h.apply(r).is_empty());
        kills.then(|| h * &self.section)
    }
}

/// An idempotent `e = inclusion · projection` with `projection · inclusion = 1`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub dim: usize,
    pub inclusion: ExactMatrix,
    pub projection: ExactMatrix,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        let f = FieldSpec::Rationals;
        sparse::from_dense(&xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn quotient_projection_section() {
        let f = FieldSpec::Rationals;
        for rule in [PivotRule::Leftmost, PivotRule::Rightmost] {
            let q = QuotientSpace::new(f, 4, vec![v(&[1, -1, 0, 0]), v(&[0, 0, 1, 2])], rule);
            assert_eq!(q.dim(), 2);
            assert!((q.projection() * q.section()).is_identity());
            assert!(q.project(&v(&[1, -1, 0, 0])).is_empty());
            assert!(q.project(&v(&[0, 0, 2, 4])).is_empty());
            assert_eq!(q.relations().dim(), 2);
        }
        let l = QuotientSpace::new(f, 3, vec![v(&[1, 1, 0])], PivotRule::Leftmost);
        let r = QuotientSpace::new(f, 3, vec![v(&[1, 1, 0])], PivotRule::Rightmost);
        assert_eq!(l.section().column(0), &v(&[0, 1, 0]));
        assert_eq!(r.section().column(0), &v(&[0, 0, 1]));
        assert_eq!(r.section().column(1), &v(&[1, 0, 0]));
        assert_eq!(l.relations(), r.relations());
    }

    #[test]
    fn subspace_coordinates() {
        let f = FieldSpec::Rationals;
        let s = Subspace::span(f, 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let c = s.coordinates(&v(&[2, 3, 1])).unwrap();
        // reduced basis is (1,0,-1), (0,1,1)
        assert_eq!(c, vec![(0, f.from_i64(2)), (1, f.from_i64(3))]);
        assert!(s.coordinates(&v(&[1, 0, 0])).is_none());
    }
}
