//! Incremental reduced row echelon form with leftmost pivots.

use super::field::FieldSpec;
use super::sparse::{self, Accumulator, SparseVec};

/// Rows are kept fully reduced: each pivot entry is 1 and every other row is zero there.
#[derive(Clone)]
pub(crate) struct Echelon {
    field: FieldSpec,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_of_row: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivot_of_row: Vec::new(),
            row_of_pivot: vec![None; dim],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical representative of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, &_)> = v
            .iter()
            .filter_map(|(i, x)| self.row_of_pivot[*i].map(|r| (r, x)))
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        if hits.len() == 1 {
            let (r, x) = hits[0];
            return sparse::axpy(self.field, v, &self.field.neg(x), &self.rows[r]);
        }
        let mut acc = Accumulator::new(self.field, self.dim);
        acc.add_scaled(&self.field.one(), v);
        for (r, x) in hits {
            acc.add_scaled(&self.field.neg(x), &self.rows[r]);
        }
        acc.take()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let w = self.reduce(&v);
        let Some((p, lead)) = w.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead).expect("nonzero lead");
        let w = sparse::scale(self.field, &w, &inv);
        for row in self.rows.iter_mut() {
            if let Some(c) = sparse::get(row, p).cloned() {
                *row = sparse::axpy(self.field, row, &self.field.neg(&c), &w);
            }
        }
        self.row_of_pivot[p] = Some(self.rows.len());
        self.pivot_of_row.push(p);
        self.rows.push(w);
        true
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.row_of_pivot[i].is_some()
    }

    /// `(pivot, row)` pairs sorted by pivot.
    pub fn sorted(&self) -> Vec<(usize, SparseVec)> {
        let mut out: Vec<(usize, SparseVec)> = self
            .pivot_of_row
            .iter()
            .zip(&self.rows)
            .map(|(p, r)| (*p, r.clone()))
            .collect();
        out.sort_by_key(|x| x.0);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical() {
        let f = FieldSpec::Rationals;
        let v = |xs: &[i64]| sparse::from_dense(&xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>());
        let mut a = Echelon::new(f, 3);
        a.insert(v(&[1, 2, 3]));
        a.insert(v(&[0, 1, 1]));
        assert!(!a.insert(v(&[1, 3, 4])));
        let mut b = Echelon::new(f, 3);
        b.insert(v(&[1, 3, 4]));
        b.insert(v(&[2, 4, 6]));
        assert_eq!(a.sorted(), b.sorted());
        assert_eq!(a.rank(), 2);
    }
}
