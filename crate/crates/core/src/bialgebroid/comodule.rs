use std::sync::Arc;

use crate::exactlin::{sparse, ExactMatrix, FieldSpec};
use crate::report::Report;
use crate::takeuchi::{beta, tn_map, DoubleModule, FDAlgebra, Partition, Tn};

use super::products::{multiplicative_into_tn, product_representative_independence};
use super::{Bialgebroid, BialgebroidError};

/// An algebra `M` with an algebra map `R⊗R'° → M` and a two-sided coaction `M → A ×_R M ×_{R'} A'`.
///
/// `coaction` holds representatives in `A⊗M⊗A'`.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    left: Arc<Bialgebroid>,
    right: Arc<Bialgebroid>,
    total: Arc<FDAlgebra>,
    anchor: ExactMatrix,
    coaction: ExactMatrix,
    module: Arc<DoubleModule>,
}

/// `δ_l : M → T_2(A, M)` and `δ_r : M → T_2(M, A')`, in coordinates of the given products.
#[derive(Clone, Debug)]
pub struct OneSided {
    pub left_tn: Tn,
    pub left: ExactMatrix,
    pub right_tn: Tn,
    pub right: ExactMatrix,
}

impl ComoduleAlgebra {
    pub fn new(
        left: Arc<Bialgebroid>,
        right: Arc<Bialgebroid>,
        total: Arc<FDAlgebra>,
        anchor: ExactMatrix,
        coaction: ExactMatrix,
    ) -> Result<Self, BialgebroidError> {
        let n = left.total().dim() * total.dim() * right.total().dim();
        if coaction.shape() != (n, total.dim()) {
            return Err(BialgebroidError::Shape(format!("coaction has shape {:?}, expected {n}x{}", coaction.shape(), total.dim())));
        }
        let module = Arc::new(DoubleModule::from_anchor(&total, left.base(), right.base(), &anchor)?);
        Ok(ComoduleAlgebra { left, right, total, anchor, coaction, module })
    }

    /// `A` over itself, with `δ = β_{2+1} T_2(Δ, 1) Δ`.
    pub fn regular(b: &Arc<Bialgebroid>) -> Result<Self, BialgebroidError> {
        let maps = b.coalgebroid().maps()?;
        let a = b.module();
        let be = beta(&Partition(vec![2, 1]), &[a.clone(), a.clone(), a.clone()])?;
        let id = ExactMatrix::identity(b.field(), a.dim());
        let coords = &(&be.matrix * &tn_map(&maps.t2, &be.grouped, &[&maps.delta, &id])?) * &maps.delta;
        let raw = be.flat.lift() * &coords;
        Self::new(b.clone(), b.clone(), b.total().clone(), b.anchor().clone(), raw)
    }

    /// `kH` over `kG` and `kG'` with `δ(h) = φ(h)⊗h⊗ψ(h)`; tables give the products.
    pub fn monoid_comodule(
        field: FieldSpec,
        left: &[Vec<usize>],
        right: &[Vec<usize>],
        middle: &[Vec<usize>],
        phi: &[usize],
        psi: &[usize],
    ) -> Result<Self, BialgebroidError> {
        let l = Arc::new(Bialgebroid::monoid_bialgebra(field, left)?);
        let r = Arc::new(Bialgebroid::monoid_bialgebra(field, right)?);
        let total = Arc::new(FDAlgebra::monoid_algebra(field, middle));
        let (g, h, g2) = (left.len(), middle.len(), right.len());
        if phi.len() != h || psi.len() != h || phi.iter().any(|&x| x >= g) || psi.iter().any(|&x| x >= g2) {
            return Err(BialgebroidError::Shape("φ or ψ is not a map of the underlying sets".into()));
        }
        let cols = (0..h).map(|x| sparse::unit((phi[x] * h + x) * g2 + psi[x], field)).collect();
        let anchor = ExactMatrix::from_sparse_columns(field, h, vec![total.unit().clone()]);
        Self::new(l, r, total, anchor, ExactMatrix::from_sparse_columns(field, g * h * g2, cols))
    }

    pub fn field(&self) -> FieldSpec {
        self.total.field()
    }

    pub fn left(&self) -> &Arc<Bialgebroid> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Bialgebroid> {
        &self.right
    }

    pub fn total(&self) -> &Arc<FDAlgebra> {
        &self.total
    }

    pub fn anchor(&self) -> &ExactMatrix {
        &self.anchor
    }

    pub fn coaction_raw(&self) -> &ExactMatrix {
        &self.coaction
    }

    pub fn module(&self) -> &Arc<DoubleModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn t3(&self) -> Result<Tn, BialgebroidError> {
        Ok(Tn::new(&[self.left.module().clone(), self.module.clone(), self.right.module().clone()])?)
    }

    /// The coaction in `T_3(A, M, A')` coordinates.
    pub fn coaction(&self) -> Result<(Tn, ExactMatrix), BialgebroidError> {
        let t3 = self.t3()?;
        let coords = t3.project_columns(&self.coaction).map_err(|_| {
            let bad = (0..self.coaction.cols()).find(|&j| t3.project(self.coaction.column(j)).is_none()).unwrap_or(0);
            BialgebroidError::NotInSubspace(format!("δ(e{bad}) is not in A ×_R M ×_R' A'"))
        })?;
        Ok((t3, coords))
    }

    pub fn one_sided(&self) -> Result<OneSided, BialgebroidError> {
        let (t3, d) = self.coaction()?;
        let (a, m, a2) = (self.left.module(), &self.module, self.right.module());
        let f = self.field();
        let bl = beta(&Partition(vec![1, 1, 0]), &[a.clone(), m.clone()])?;
        let left = &(&bl.matrix * &tn_map(&t3, &bl.grouped, &[&ExactMatrix::identity(f, a.dim()), &ExactMatrix::identity(f, m.dim()), self.right.epsilon()])?) * &d;
        let br = beta(&Partition(vec![0, 1, 1]), &[m.clone(), a2.clone()])?;
        let right = &(&br.matrix * &tn_map(&t3, &br.grouped, &[self.left.epsilon(), &ExactMatrix::identity(f, m.dim()), &ExactMatrix::identity(f, a2.dim())])?) * &d;
        Ok(OneSided { left_tn: bl.flat, left, right_tn: br.flat, right })
    }
}

fn matrices_agree(lhs: &ExactMatrix, rhs: &ExactMatrix, what: &str) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((i, j)) => Err(format!("{what} differ at ({i},{j})")),
    }
}

/// Every comodule-algebra axiom evaluated on the full basis.
pub fn check_comodule_algebra(m: &ComoduleAlgebra) -> Report {
    let mut r = Report::new("comodule algebra");
    let total = m.total.validate();
    r.check("total.algebra", if total.passed() { Ok(()) } else { Err(total.to_string()) });
    let env = m.left.base().tensor(&m.right.base().opposite());
    r.check("anchor.algebra_map", env.is_algebra_map(&m.total, &m.anchor));
    let dm = m.module.validate();
    r.check("double_module", if dm.passed() { Ok(()) } else { Err(dm.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")) });
    r.stat("dim", m.dim());
    let (t3, d) = match m.coaction() {
        Ok(x) => {
            r.pass("coaction.in_takeuchi_product");
            x
        }
        Err(e) => {
            r.fail("coaction.in_takeuchi_product", e.to_string());
            return r;
        }
    };
    r.stat("dim_t3", t3.dim());
    if !r.check("coaction.module_map", m.module.is_module_map(t3.module(), &d)) {
        r.skip("counit", "coaction is not a module map");
        r.skip("coassociativity", "coaction is not a module map");
        return r;
    }
    let algs = [m.left.total().as_ref(), m.total.as_ref(), m.right.total().as_ref()];
    r.check("coaction.product_well_defined", product_representative_independence(&t3, &algs));
    r.check("coaction.multiplicative", multiplicative_into_tn(&m.total, &t3, &algs, &d));
    r.check("counit", counit(m, &t3, &d).map_err(|e| e.to_string()).and_then(|x| x));
    r.check("coassociativity", coassociativity(m, &t3, &d).map_err(|e| e.to_string()).and_then(|x| x));
    r
}

fn counit(m: &ComoduleAlgebra, t3: &Tn, d: &ExactMatrix) -> Result<Result<(), String>, BialgebroidError> {
    let b = beta(&Partition(vec![0, 1, 0]), std::slice::from_ref(&m.module))?;
    let id = ExactMatrix::identity(m.field(), m.dim());
    let lhs = &(&b.matrix * &tn_map(t3, &b.grouped, &[m.left.epsilon(), &id, m.right.epsilon()])?) * d;
    Ok(matrices_agree(&lhs, &id, "β₀₊₁₊₀T₃(ε,1,ε')δ and the identity"))
}

fn coassociativity(m: &ComoduleAlgebra, t3: &Tn, d: &ExactMatrix) -> Result<Result<(), String>, BialgebroidError> {
    let (a, a2) = (m.left.module(), m.right.module());
    let f = m.field();
    let factors = [a.clone(), a.clone(), m.module.clone(), a2.clone(), a2.clone()];
    let outer = beta(&Partition(vec![1, 3, 1]), &factors)?;
    let ida = ExactMatrix::identity(f, a.dim());
    let ida2 = ExactMatrix::identity(f, a2.dim());
    let lhs = &(&outer.matrix * &tn_map(t3, &outer.grouped, &[&ida, d, &ida2])?) * d;
    let dl = m.left.coalgebroid().maps()?;
    let dr = m.right.coalgebroid().maps()?;
    let split = beta(&Partition(vec![2, 1, 2]), &factors)?;
    let idm = ExactMatrix::identity(f, m.dim());
    let rhs = &(&split.matrix * &tn_map(t3, &split.grouped, &[&dl.delta, &idm, &dr.delta])?) * d;
    Ok(matrices_agree(&lhs, &rhs, "β₁₊₃₊₁T₃(1,δ,1)δ and β₂₊₁₊₂T₃(Δ,1,Δ')δ"))
}

/// The unit splitting of `M` against the left bialgebroid: `e = δ_l` equalizes `d0 = T_2(1,δ_l)` and
/// `d1 = T_2(Δ,1)`, split by `s = T_2(ε,1)` and `t = T_3(ε,1,1)` (all composed with the matching `β`).
pub fn check_unit_splitting(m: &ComoduleAlgebra) -> Result<Report, BialgebroidError> {
    let mut r = Report::new("unit splitting");
    let f = m.field();
    let a = m.left.module().clone();
    let mm = m.module.clone();
    let one = m.one_sided()?;
    let t2 = &one.left_tn;
    let e = &one.left;
    let ida = ExactMatrix::identity(f, a.dim());
    let idm = ExactMatrix::identity(f, mm.dim());
    let maps = m.left.coalgebroid().maps()?;

    let b12 = beta(&Partition(vec![1, 2]), &[a.clone(), a.clone(), mm.clone()])?;
    let d0 = &b12.matrix * &tn_map(t2, &b12.grouped, &[&ida, e])?;
    let b21 = beta(&Partition(vec![2, 1]), &[a.clone(), a.clone(), mm.clone()])?;
    let d1 = &b21.matrix * &tn_map(t2, &b21.grouped, &[&maps.delta, &idm])?;
    let b01 = beta(&Partition(vec![0, 1]), std::slice::from_ref(&mm))?;
    let s = &b01.matrix * &tn_map(t2, &b01.grouped, &[m.left.epsilon(), &idm])?;
    let b011 = beta(&Partition(vec![0, 1, 1]), &[a.clone(), mm.clone()])?;
    let t3 = &b21.flat;
    let t = &b011.matrix * &tn_map(t3, &b011.grouped, &[m.left.epsilon(), &ida, &idm])?;

    r.stat("dim_m", mm.dim());
    r.stat("dim_t2", t2.dim());
    r.stat("dim_t3", t3.dim());
    r.check("fork", matrices_agree(&(&d0 * e), &(&d1 * e), "d0·e and d1·e"));
    r.check("s_e", matrices_agree(&(&s * e), &idm, "s·e and 1"));
    r.check("t_d1", matrices_agree(&(&t * &d1), &ExactMatrix::identity(f, t2.dim()), "t·d1 and 1"));
    r.check("t_d0", matrices_agree(&(&t * &d0), &(e * &s), "t·d0 and e·s"));
    let eq = crate::exactlin::equalizer(&d0, &d1)?;
    let image = crate::exactlin::image(e);
    r.check(
        "equalizer",
        if e.rank() == mm.dim() && image == eq {
            Ok(())
        } else {
            Err(format!("rank e = {}, dim ker(d0 − d1) = {}, dim M = {}", e.rank(), eq.dim(), mm.dim()))
        },
    );
    let whole = beta(&Partition(vec![0, 1]), &[t2.module().clone()])?;
    let b02 = beta(&Partition(vec![0, 2]), &[a.clone(), mm.clone()])?;
    r.check("unit_absorption_coherent", matrices_agree(&whole.matrix, &b02.matrix, "β₀₊₁ on T₂(A,M) and β₀₊₂"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn cyclic(n: usize) -> Vec<Vec<usize>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn group_comodules() {
        // Z/4 → Z/2 on the left, trivial on the right
        let m = ComoduleAlgebra::monoid_comodule(Q, &cyclic(2), &cyclic(1), &cyclic(4), &[0, 1, 0, 1], &[0, 0, 0, 0]).unwrap();
        let r = check_comodule_algebra(&m);
        assert!(r.passed(), "{r}");
        let s = check_unit_splitting(&m).unwrap();
        assert!(s.passed(), "{s}");
        // not a homomorphism
        let bad = ComoduleAlgebra::monoid_comodule(Q, &cyclic(2), &cyclic(1), &cyclic(3), &[0, 1, 1], &[0, 0, 0]).unwrap();
        let r = check_comodule_algebra(&bad);
        assert_eq!(r.status_of("coaction.multiplicative"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn regular_comodules() {
        for b in [
            Bialgebroid::cyclic_group(Q, 2).unwrap(),
            Bialgebroid::enveloping(Arc::new(FDAlgebra::split(Q, 2))).unwrap(),
        ] {
            let m = ComoduleAlgebra::regular(&Arc::new(b)).unwrap();
            let r = check_comodule_algebra(&m);
            assert!(r.passed(), "{r}");
            let s = check_unit_splitting(&m).unwrap();
            assert!(s.passed(), "{s}");
        }
    }
}
