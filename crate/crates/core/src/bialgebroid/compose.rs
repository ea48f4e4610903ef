use std::sync::Arc;

use crate::exactlin::{equalizer, sparse, ExactMatrix, SparseVec, Subspace};
use crate::report::Report;
use crate::takeuchi::{beta, tn_map, DoubleModule, FDAlgebra, Partition, Tn};

use super::products::{pure_tensor, tn_product, tn_unit, product_representative_independence};
use super::{BialgebroidError, ComoduleAlgebra};

/// `M1 • M2` together with its place inside `T_2(M1, M2)`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub module: ComoduleAlgebra,
    /// `T_2(M1, M2)`
    pub pair: Tn,
    /// `pair.dim × dim(M1 • M2)`
    pub inclusion: ExactMatrix,
}

impl Composite {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

/// The equalizer of `δ_r ×_{R'} 1` and `1 ×_{R'} δ_l` on `T_2(M1, M2)`, with the algebra structure,
/// anchor and two-sided coaction it inherits.
pub fn compose_modules(m1: &ComoduleAlgebra, m2: &ComoduleAlgebra) -> Result<Composite, BialgebroidError> {
    if m1.right() != m2.left() {
        return Err(BialgebroidError::Endpoints("the right bialgebroid of the first module is not the left bialgebroid of the second".into()));
    }
    let f = m1.field();
    let mid = m1.right().module().clone();
    let (x1, x2) = (m1.module().clone(), m2.module().clone());
    let one1 = m1.one_sided()?;
    let one2 = m2.one_sided()?;
    let pair = Tn::new(&[x1.clone(), x2.clone()])?;
    let id1 = ExactMatrix::identity(f, x1.dim());
    let id2 = ExactMatrix::identity(f, x2.dim());

    let b21 = beta(&Partition(vec![2, 1]), &[x1.clone(), mid.clone(), x2.clone()])?;
    let lhs = &b21.matrix * &tn_map(&pair, &b21.grouped, &[&one1.right, &id2])?;
    let b12 = beta(&Partition(vec![1, 2]), &[x1.clone(), mid.clone(), x2.clone()])?;
    let rhs = &b12.matrix * &tn_map(&pair, &b12.grouped, &[&id1, &one2.left])?;
    let e = equalizer(&lhs, &rhs)?;
    let inclusion = e.inclusion();
    let n = e.dim();

    let algs = [m1.total().as_ref(), m2.total().as_ref()];
    product_representative_independence(&pair, &algs).map_err(BialgebroidError::Structure)?;
    let coords = |v: SparseVec, what: &str| {
        e.coordinates(&v).ok_or_else(|| BialgebroidError::Structure(format!("{what} leaves the equalizer")))
    };
    let mut products = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let p = tn_product(&pair, &algs, inclusion.column(i), inclusion.column(j))
                .ok_or_else(|| BialgebroidError::Structure(format!("product e{i}·e{j} leaves T_2(M1, M2)")))?;
            products.push(coords(p, &format!("product e{i}·e{j}"))?);
        }
    }
    let unit = tn_unit(&pair, &algs).ok_or_else(|| BialgebroidError::Structure("1⊗1 is not in T_2(M1, M2)".into()))?;
    let total = Arc::new(FDAlgebra::from_products(f, n, coords(unit, "1⊗1")?, products));

    // r⊗r'' ↦ s_1(r)⊗t_2(r'')
    let (r0, r1, r2) = (m1.left().base(), m1.right().base(), m2.right().base());
    let (d0, d1, d2) = (r0.dim(), r1.dim(), r2.dim());
    let through = |anchor: &ExactMatrix, rows: usize, col: &dyn Fn(usize) -> usize| {
        let mut acc = sparse::Accumulator::new(f, rows);
        for (c, u) in r1.unit() {
            acc.add_scaled(u, anchor.column(col(*c)));
        }
        acc.take()
    };
    let mut anchor_cols = Vec::with_capacity(d0 * d2);
    for i in 0..d0 {
        let s = through(m1.anchor(), x1.dim(), &|c| i * d1 + c);
        for j in 0..d2 {
            let t = through(m2.anchor(), x2.dim(), &|c| c * d2 + j);
            let v = pair
                .project(&pure_tensor(f, &[s.clone(), t], &[x1.dim(), x2.dim()]))
                .ok_or_else(|| BialgebroidError::Structure("anchor leaves T_2(M1, M2)".into()))?;
            anchor_cols.push(coords(v, "anchor")?);
        }
    }
    let anchor = ExactMatrix::from_sparse_columns(f, n, anchor_cols);
    let module = Arc::new(DoubleModule::from_anchor(&total, r0, r2, &anchor)?);

    // δ_l ⊗ δ_r on representatives, then solved through β_{1+2+1} T_3(1, ι, 1)
    let (a, a2) = (m1.left().module().clone(), m2.right().module().clone());
    let outer = beta(&Partition(vec![1, 2, 1]), &[a.clone(), x1.clone(), x2.clone(), a2.clone()])?;
    let raw_l = one1.left_tn.lift() * &one1.left;
    let raw_r = one2.right_tn.lift() * &one2.right;
    let both = raw_l.kron(&raw_r);
    let flat = &outer.flat;
    for (k, rel) in pair.quotient().relations().basis().iter().enumerate() {
        if !flat.quotient().project(&both.apply(rel)).is_empty() {
            return Err(BialgebroidError::Structure(format!("δ_l⊗δ_r does not respect relation {k} of M1⊗M2")));
        }
    }
    let target = flat.project_columns(&(&both * &(pair.lift() * &inclusion)))?;
    let t3 = Tn::new(&[a.clone(), module.clone(), a2.clone()])?;
    let k = &outer.matrix
        * &tn_map(&t3, &outer.grouped, &[&ExactMatrix::identity(f, a.dim()), &inclusion, &ExactMatrix::identity(f, a2.dim())])?;
    let solution = k
        .solve(&target)
        .ok_or_else(|| BialgebroidError::Structure("the outer coaction does not factor through A ×_R (M1 • M2) ×_R'' A''".into()))?;
    let coaction = t3.lift() * &solution;
    let module = ComoduleAlgebra::new(m1.left().clone(), m2.right().clone(), total, anchor, coaction)?;
    Ok(Composite { module, pair, inclusion })
}

/// Checks that `phi : M → N` is an isomorphism of comodule algebras.
fn iso_report(r: &mut Report, prefix: &str, m: &ComoduleAlgebra, n: &ComoduleAlgebra, phi: &ExactMatrix) -> Result<(), BialgebroidError> {
    let invertible = phi.is_square() && phi.rank() == phi.rows();
    r.check(
        format!("{prefix}.bijective"),
        if invertible { Ok(()) } else { Err(format!("{}x{} of rank {}", phi.rows(), phi.cols(), phi.rank())) },
    );
    r.check(format!("{prefix}.algebra_map"), m.total().is_algebra_map(n.total(), phi));
    let (tm, dm) = m.coaction()?;
    let (tn, dn) = n.coaction()?;
    let f = m.field();
    let lifted = tn_map(
        &tm,
        &tn,
        &[&ExactMatrix::identity(f, m.left().total().dim()), phi, &ExactMatrix::identity(f, m.right().total().dim())],
    )?;
    r.check(
        format!("{prefix}.colinear"),
        match (&lifted * &dm).first_difference(&(&dn * phi)) {
            None => Ok(()),
            Some((i, j)) => Err(format!("T₃(1,φ,1)δ and δφ differ at ({i},{j})")),
        },
    );
    Ok(())
}

/// `A • M ≅ M ≅ M • A'` through the one-sided coactions.
pub fn check_unit_laws(m: &ComoduleAlgebra) -> Result<Report, BialgebroidError> {
    let mut r = Report::new("unit laws");
    let one = m.one_sided()?;
    let left = compose_modules(&ComoduleAlgebra::regular(m.left())?, m)?;
    let right = compose_modules(m, &ComoduleAlgebra::regular(m.right())?)?;
    r.stat("dim", m.dim());
    r.stat("dim_left", left.dim());
    r.stat("dim_right", right.dim());
    for (name, c, delta) in [("left", &left, &one.left), ("right", &right, &one.right)] {
        let sub = Subspace::column_space(&c.inclusion);
        match sub.coordinates_of(delta) {
            Some(phi) => iso_report(&mut r, name, m, &c.module, &phi)?,
            None => r.fail(format!("{name}.bijective"), "the one-sided coaction leaves the composite"),
        }
    }
    Ok(r)
}

/// `(M1 • M2) • M3 ≅ M1 • (M2 • M3)`, both embedded in `T_3(M1, M2, M3)`.
pub fn check_associativity(m1: &ComoduleAlgebra, m2: &ComoduleAlgebra, m3: &ComoduleAlgebra) -> Result<Report, BialgebroidError> {
    let mut r = Report::new("associativity");
    let f = m1.field();
    let c12 = compose_modules(m1, m2)?;
    let x = compose_modules(&c12.module, m3)?;
    let c23 = compose_modules(m2, m3)?;
    let y = compose_modules(m1, &c23.module)?;
    let factors = [m1.module().clone(), m2.module().clone(), m3.module().clone()];
    let bx = beta(&Partition(vec![2, 1]), &factors)?;
    let ex = &(&bx.matrix * &tn_map(&x.pair, &bx.grouped, &[&c12.inclusion, &ExactMatrix::identity(f, m3.dim())])?) * &x.inclusion;
    let by = beta(&Partition(vec![1, 2]), &factors)?;
    let ey = &(&by.matrix * &tn_map(&y.pair, &by.grouped, &[&ExactMatrix::identity(f, m1.dim()), &c23.inclusion])?) * &y.inclusion;
    r.stat("dim_left_nested", x.dim());
    r.stat("dim_right_nested", y.dim());
    r.check(
        "embeddings_injective",
        if ex.rank() == x.dim() && ey.rank() == y.dim() { Ok(()) } else { Err(format!("ranks {} and {}", ex.rank(), ey.rank())) },
    );
    let same = Subspace::column_space(&ex) == Subspace::column_space(&ey);
    r.check("same_image", if same { Ok(()) } else { Err("the two nestings cut out different subspaces of T₃(M1,M2,M3)".into()) });
    match ey.solve(&ex) {
        Some(phi) if same => iso_report(&mut r, "associator", &x.module, &y.module, &phi)?,
        _ => r.skip("associator", "no comparison map"),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::{check_comodule_algebra, Bialgebroid};
    use crate::exactlin::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn group_comodules_compose_like_fibre_products() {
        // kZ/4 over (kZ/2, kZ/2) composed with kZ/2 over (kZ/2, k): pairs with matching middle degree
        let m1 = ComoduleAlgebra::monoid_comodule(Q, &cyclic(2), &cyclic(2), &cyclic(4), &[0, 1, 0, 1], &[0, 0, 0, 0]).unwrap();
        let m2 = ComoduleAlgebra::monoid_comodule(Q, &cyclic(2), &cyclic(1), &cyclic(2), &[0, 1], &[0, 0]).unwrap();
        let c = compose_modules(&m1, &m2).unwrap();
        assert_eq!(c.dim(), 4);
        let r = check_comodule_algebra(&c.module);
        assert!(r.passed(), "{r}");
        let u = check_unit_laws(&m1).unwrap();
        assert!(u.passed(), "{u}");
    }

    #[test]
    fn enveloping_composites() {
        let b = Arc::new(Bialgebroid::enveloping(Arc::new(FDAlgebra::split(Q, 2))).unwrap());
        let reg = ComoduleAlgebra::regular(&b).unwrap();
        let u = check_unit_laws(&reg).unwrap();
        assert!(u.passed(), "{u}");
        let a = check_associativity(&reg, &reg, &reg).unwrap();
        assert!(a.passed(), "{a}");
    }
}
