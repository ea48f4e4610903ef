use crate::exactlin::{sparse, ExactMatrix, FieldSpec, SparseVec};
use crate::takeuchi::{FDAlgebra, Tn};

/// Product in `A_1⊗…⊗A_n` of two ambient vectors, factor by factor.
pub(crate) fn ambient_product(algebras: &[&FDAlgebra], x: &SparseVec, y: &SparseVec) -> SparseVec {
    let field = algebras[0].field();
    let dims: Vec<usize> = algebras.iter().map(|a| a.dim()).collect();
    let n: usize = dims.iter().product();
    let mut acc = sparse::Accumulator::new(field, n);
    for (i, a) in x {
        let di = split(*i, &dims);
        for (j, b) in y {
            let dj = split(*j, &dims);
            let parts: Vec<SparseVec> =
                algebras.iter().enumerate().map(|(k, alg)| alg.basis_product(di[k], dj[k]).clone()).collect();
            kron_into(field, &mut acc, &field.mul(a, b), &parts, &dims);
        }
    }
    acc.take()
}

fn split(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

pub(crate) fn kron_into(field: FieldSpec, acc: &mut sparse::Accumulator, coef: &crate::exactlin::Scalar, parts: &[SparseVec], dims: &[usize]) {
    let mut terms: Vec<(usize, crate::exactlin::Scalar)> = vec![(0, coef.clone())];
    for (v, d) in parts.iter().zip(dims) {
        let mut next = Vec::with_capacity(terms.len() * v.len());
        for (idx, c) in &terms {
            for (i, x) in v {
                next.push((idx * d + i, field.mul(c, x)));
            }
        }
        terms = next;
    }
    for (i, c) in terms {
        acc.add(i, &c);
    }
}

/// Pure tensor `v_1⊗…⊗v_n` in the ambient space.
pub(crate) fn pure_tensor(field: FieldSpec, parts: &[SparseVec], dims: &[usize]) -> SparseVec {
    let n: usize = dims.iter().product();
    let mut acc = sparse::Accumulator::new(field, n);
    kron_into(field, &mut acc, &field.one(), parts, dims);
    acc.take()
}

/// The product of `T_n(A_1,…,A_n)` computed on representatives; `None` if it leaves `T_n`.
pub(crate) fn tn_product(t: &Tn, algebras: &[&FDAlgebra], x: &SparseVec, y: &SparseVec) -> Option<SparseVec> {
    let lx = t.lift().apply(x);
    let ly = t.lift().apply(y);
    t.project(&ambient_product(algebras, &lx, &ly))
}

/// The class of `1⊗…⊗1` in `T_n`.
pub(crate) fn tn_unit(t: &Tn, algebras: &[&FDAlgebra]) -> Option<SparseVec> {
    let field = algebras[0].field();
    let dims: Vec<usize> = algebras.iter().map(|a| a.dim()).collect();
    let parts: Vec<SparseVec> = algebras.iter().map(|a| a.unit().clone()).collect();
    t.project(&pure_tensor(field, &parts, &dims))
}

/// Changing a representative by a relation must not change products with centralizing elements.
pub(crate) fn product_representative_independence(t: &Tn, algebras: &[&FDAlgebra]) -> Result<(), String> {
    let rels = t.quotient().relations().basis();
    for (j, l) in t.lift().columns().iter().enumerate() {
        for (k, r) in rels.iter().enumerate() {
            if !t.quotient().project(&ambient_product(algebras, r, l)).is_empty() {
                return Err(format!("relation {k} times basis element {j} is not a relation"));
            }
            if !t.quotient().project(&ambient_product(algebras, l, r)).is_empty() {
                return Err(format!("basis element {j} times relation {k} is not a relation"));
            }
        }
    }
    Ok(())
}

/// `f(x)f(y) = f(xy)` and `f(1) = 1` for `f : A → T_n(…)` given in `T_n` coordinates.
pub(crate) fn multiplicative_into_tn(
    src: &FDAlgebra,
    t: &Tn,
    algebras: &[&FDAlgebra],
    f: &ExactMatrix,
) -> Result<(), String> {
    let unit = tn_unit(t, algebras).ok_or("1⊗…⊗1 is not in the Takeuchi product")?;
    if f.apply(src.unit()) != unit {
        return Err("unit is not preserved".into());
    }
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = f.apply(src.basis_product(i, j));
            let rhs = tn_product(t, algebras, f.column(i), f.column(j))
                .ok_or_else(|| format!("product of images of e{i}, e{j} leaves the Takeuchi product"))?;
            if lhs != rhs {
                return Err(format!("f(e{i}·e{j}) ≠ f(e{i})·f(e{j})"));
            }
        }
    }
    Ok(())
}
