use crate::exactlin::{sparse, ExactMatrix, FieldSpec, Scalar, SparseVec};
use crate::report::{summarize, Report};

use super::TakeuchiError;

/// A finite-dimensional algebra given by structure constants `e_i e_j = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra {
    field: FieldSpec,
    dim: usize,
    unit: SparseVec,
    /// `products[i * dim + j] = e_i e_j`
    products: Vec<SparseVec>,
}

impl FDAlgebra {
    /// `entries` are `(i, j, k, c)` meaning `c_ij^k = c`; repeated entries add up.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        unit: Vec<Scalar>,
        entries: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self, TakeuchiError> {
        if unit.len() != dim {
            return Err(TakeuchiError::Shape(format!("unit has length {} for dimension {dim}", unit.len())));
        }
        let mut dense = vec![vec![field.zero(); dim]; dim * dim];
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(TakeuchiError::Shape(format!("structure constant ({i},{j},{k}) out of range")));
            }
            let cell = &mut dense[i * dim + j][*k];
            *cell = field.add(cell, &field.reduce(c.clone()));
        }
        let unit: Vec<Scalar> = unit.into_iter().map(|x| field.reduce(x)).collect();
        Ok(FDAlgebra {
            field,
            dim,
            unit: sparse::from_dense(&unit),
            products: dense.iter().map(|v| sparse::from_dense(v)).collect(),
        })
    }

    pub fn from_products(field: FieldSpec, dim: usize, unit: SparseVec, products: Vec<SparseVec>) -> Self {
        assert_eq!(products.len(), dim * dim);
        FDAlgebra { field, dim, unit, products }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> SparseVec {
        sparse::unit(i, self.field)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim + j]
    }

    /// `(i, j, k, c)` for every nonzero structure constant.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = sparse::Accumulator::new(self.field, self.dim);
        for (i, x) in a {
            for (j, y) in b {
                acc.add_scaled(&self.field.mul(x, y), self.basis_product(*i, *j));
            }
        }
        acc.take()
    }

    /// `L_a`: column `j` is `a·e_j`.
    pub fn left_mul(&self, a: &SparseVec) -> ExactMatrix {
        let cols = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        ExactMatrix::from_sparse_columns(self.field, self.dim, cols)
    }

    /// `R_a`: column `j` is `e_j·a`.
    pub fn right_mul(&self, a: &SparseVec) -> ExactMatrix {
        let cols = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        ExactMatrix::from_sparse_columns(self.field, self.dim, cols)
    }

    pub fn left_regular(&self) -> Vec<ExactMatrix> {
        (0..self.dim).map(|i| self.left_mul(&self.basis(i))).collect()
    }

    pub fn right_regular(&self) -> Vec<ExactMatrix> {
        (0..self.dim).map(|i| self.right_mul(&self.basis(i))).collect()
    }

    /// Multiplication as a map `A⊗A → A`.
    pub fn mult_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_columns(self.field, self.dim, self.products.clone())
    }

    pub fn unit_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_sparse_columns(self.field, self.dim, vec![self.unit.clone()])
    }

    pub fn opposite(&self) -> FDAlgebra {
        let d = self.dim;
        let products = (0..d * d).map(|ij| self.products[(ij % d) * d + ij / d].clone()).collect();
        FDAlgebra { field: self.field, dim: d, unit: self.unit.clone(), products }
    }

    /// `A⊗B` with `(a⊗b)(a'⊗b') = aa'⊗bb'`; basis `e_i⊗f_j` has index `i·dim B + j`.
    pub fn tensor(&self, other: &FDAlgebra) -> FDAlgebra {
        assert_eq!(self.field, other.field);
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 * d2;
        let mut products = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                let p = self.basis_product(x / d2, y / d2);
                let q = other.basis_product(x % d2, y % d2);
                let mut v = Vec::with_capacity(p.len() * q.len());
                for (i, a) in p {
                    for (j, b) in q {
                        v.push((i * d2 + j, self.field.mul(a, b)));
                    }
                }
                products.push(v);
            }
        }
        let mut unit = Vec::new();
        for (i, a) in &self.unit {
            for (j, b) in &other.unit {
                unit.push((i * d2 + j, self.field.mul(a, b)));
            }
        }
        FDAlgebra { field: self.field, dim: d, unit, products }
    }

    /// `R⊗R°`.
    pub fn enveloping(&self) -> FDAlgebra {
        self.tensor(&self.opposite())
    }

    /// Direct product `A × B` with basis the concatenation.
    pub fn product(&self, other: &FDAlgebra) -> FDAlgebra {
        assert_eq!(self.field, other.field);
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 + d2;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d1 {
            for j in 0..d1 {
                products[i * d + j] = self.basis_product(i, j).clone();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                products[(i + d1) * d + j + d1] =
                    other.basis_product(i, j).iter().map(|(k, c)| (k + d1, c.clone())).collect();
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().map(|(k, c)| (k + d1, c.clone())));
        FDAlgebra { field: self.field, dim: d, unit, products }
    }

    pub fn ground(field: FieldSpec) -> FDAlgebra {
        Self::split(field, 1)
    }

    /// `k^n` with orthogonal idempotent basis.
    pub fn split(field: FieldSpec, n: usize) -> FDAlgebra {
        let mut products = vec![Vec::new(); n * n];
        for i in 0..n {
            products[i * n + i] = sparse::unit(i, field);
        }
        let unit = (0..n).map(|i| (i, field.one())).collect();
        FDAlgebra { field, dim: n, unit, products }
    }

    /// `M_n(k)` with matrix units `E_ij` at index `i·n + j`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> FDAlgebra {
        let d = n * n;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    products[(i * n + j) * d + j * n + l] = sparse::unit(i * n + l, field);
                }
            }
        }
        let unit = (0..n).map(|i| (i * n + i, field.one())).collect();
        FDAlgebra { field, dim: d, unit, products }
    }

    /// Monoid (or group) algebra; `table[a][b] = a·b`, element 0 the unit.
    pub fn monoid_algebra(field: FieldSpec, table: &[Vec<usize>]) -> FDAlgebra {
        let n = table.len();
        let mut products = Vec::with_capacity(n * n);
        for row in table {
            for &ab in row {
                products.push(sparse::unit(ab, field));
            }
        }
        FDAlgebra { field, dim: n, unit: sparse::unit(0, field), products }
    }

    pub fn cyclic_group_algebra(field: FieldSpec, n: usize) -> FDAlgebra {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid_algebra(field, &table)
    }

    /// `k[x]/(x^n)` with basis `1, x, …, x^{n−1}`.
    pub fn truncated_polynomial(field: FieldSpec, n: usize) -> FDAlgebra {
        let mut products = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    products[i * n + j] = sparse::unit(i + j, field);
                }
            }
        }
        FDAlgebra { field, dim: n, unit: sparse::unit(0, field), products }
    }

    /// Unit laws and associativity on the basis; witnesses name basis indices.
    pub fn validate(&self) -> Report {
        let mut r = Report::new("algebra");
        let mut unit = Vec::new();
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e {
                unit.push(format!("1·e{i}"));
            }
            if self.mul(&e, &self.unit) != e {
                unit.push(format!("e{i}·1"));
            }
        }
        r.check("unit_laws", if unit.is_empty() { Ok(()) } else { Err(summarize(&unit, 10)) });
        let mut assoc = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), self.basis_product(j, k));
                    if left != right {
                        assoc.push(format!("({i},{j},{k})"));
                    }
                }
            }
        }
        r.check("associativity", if assoc.is_empty() { Ok(()) } else { Err(summarize(&assoc, 10)) });
        r.stat("dim", self.dim);
        r
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// Checks that `f : self → other` is a unital algebra map.
    pub fn is_algebra_map(&self, other: &FDAlgebra, f: &ExactMatrix) -> Result<(), String> {
        if f.shape() != (other.dim, self.dim) {
            return Err(format!("shape {:?} is not {}x{}", f.shape(), other.dim, self.dim));
        }
        if f.apply(&self.unit) != other.unit {
            return Err("unit not preserved".into());
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.apply(self.basis_product(i, j));
                let rhs = other.mul(f.column(i), f.column(j));
                if lhs != rhs {
                    return Err(format!("f(e{i}·e{j}) ≠ f(e{i})·f(e{j})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn standard_algebras_validate() {
        for a in [
            FDAlgebra::ground(q()),
            FDAlgebra::split(q(), 3),
            FDAlgebra::matrix_algebra(q(), 2),
            FDAlgebra::cyclic_group_algebra(q(), 3),
            FDAlgebra::truncated_polynomial(q(), 2),
            FDAlgebra::matrix_algebra(q(), 2).enveloping(),
            FDAlgebra::split(q(), 2).product(&FDAlgebra::truncated_polynomial(q(), 2)),
        ] {
            let r = a.validate();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn non_associative_constants_are_named() {
        // e0 unit, e1·e1 = e2, e2·e1 = e0, others zero
        let c = |i, j, k| (i, j, k, q().one());
        let a = FDAlgebra::new(
            q(),
            3,
            vec![q().one(), q().zero(), q().zero()],
            &[c(0, 0, 0), c(0, 1, 1), c(0, 2, 2), c(1, 0, 1), c(2, 0, 2), c(1, 1, 2), c(2, 1, 0)],
        )
        .unwrap();
        let r = a.validate();
        assert!(!r.passed());
        let w = r.checks.iter().find(|c| c.name == "associativity").unwrap().witness.clone().unwrap();
        assert!(w.contains("(1,1,1)"), "{w}");
    }

    #[test]
    fn opposite_of_matrix_algebra_is_transpose() {
        let m = FDAlgebra::matrix_algebra(q(), 2);
        let op = m.opposite();
        let t = ExactMatrix::from_fn(q(), 4, 4, |i, j| {
            if (i / 2, i % 2) == (j % 2, j / 2) { q().one() } else { q().zero() }
        });
        assert!(m.is_algebra_map(&op, &t).is_ok());
    }
}
