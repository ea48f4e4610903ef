//! Sorted sparse vectors and a scatter accumulator.

use super::field::{FieldSpec, Scalar};

/// `(index, value)` pairs, strictly increasing in index, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |e| e.0).ok().map(|k| &v[k].1)
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| **x != 0u32)
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(field: FieldSpec, v: &SparseVec, n: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn unit(i: usize, field: FieldSpec) -> SparseVec {
    vec![(i, field.one())]
}

pub fn scale(field: FieldSpec, v: &SparseVec, c: &Scalar) -> SparseVec {
    if *c == 0u32 {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(x, c))).collect()
}

/// `x + c·y`
pub fn axpy(field: FieldSpec, x: &SparseVec, c: &Scalar, y: &SparseVec) -> SparseVec {
    if *c == 0u32 || y.is_empty() {
        return x.clone();
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut a, mut b) = (0, 0);
    while a < x.len() || b < y.len() {
        if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
            out.push(x[a].clone());
            a += 1;
        } else if a == x.len() || y[b].0 < x[a].0 {
            out.push((y[b].0, field.mul(c, &y[b].1)));
            b += 1;
        } else {
            let v = field.mul_add(&x[a].1, c, &y[b].1);
            if v != 0u32 {
                out.push((x[a].0, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

pub fn sub(field: FieldSpec, x: &SparseVec, y: &SparseVec) -> SparseVec {
    axpy(field, x, &field.from_i64(-1), y)
}

/// Dense scatter buffer for summing many sparse vectors of one length.
pub struct Accumulator {
    field: FieldSpec,
    vals: Vec<Scalar>,
    live: Vec<bool>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub fn new(field: FieldSpec, n: usize) -> Self {
        Accumulator {
            field,
            vals: vec![field.zero(); n],
            live: vec![false; n],
            touched: Vec::new(),
        }
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        if !self.live[i] {
            self.live[i] = true;
            self.touched.push(i);
            self.vals[i] = x.clone();
        } else {
            self.vals[i] = self.field.add(&self.vals[i], x);
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SparseVec) {
        if *c == 0u32 {
            return;
        }
        for (i, x) in v {
            let t = self.field.mul(c, x);
            self.add(*i, &t);
        }
    }

    /// Returns the accumulated vector and resets the buffer.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.live[i] = false;
            let v = std::mem::replace(&mut self.vals[i], self.field.zero());
            if v != 0u32 {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_merges_and_cancels() {
        let f = FieldSpec::Rationals;
        let x = vec![(0, f.from_i64(1)), (2, f.from_i64(3))];
        let y = vec![(1, f.from_i64(1)), (2, f.from_i64(1))];
        let z = axpy(f, &x, &f.from_i64(-3), &y);
        assert_eq!(z, vec![(0, f.from_i64(1)), (1, f.from_i64(-3))]);
    }

    #[test]
    fn accumulator_sums() {
        let f = FieldSpec::Rationals;
        let mut acc = Accumulator::new(f, 4);
        acc.add(3, &f.from_i64(2));
        acc.add(1, &f.from_i64(1));
        acc.add(3, &f.from_i64(-2));
        assert_eq!(acc.take(), vec![(1, f.one())]);
        assert!(acc.take().is_empty());
    }
}
