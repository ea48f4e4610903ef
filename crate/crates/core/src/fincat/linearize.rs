use std::sync::Arc;

use crate::bialgebroid::{Bialgebroid, BialgebroidError, ComoduleAlgebra};
use crate::exactlin::{sparse, ExactMatrix, FieldSpec, Scalar, SparseVec};
use crate::takeuchi::FDAlgebra;

use super::category::{validate_category, FinCategory};
use super::profunctor::{validate_profunctor, Profunctor};
use super::CatError;

/// `k^Ob` and the category algebra `k[Mor]` with `f·g = f∘g`, `Δ(f) = f⊗f` and `ε(f) = 1`.
#[derive(Clone, Debug)]
pub struct Linearized {
    pub objects: Arc<FDAlgebra>,
    pub algebra: Arc<FDAlgebra>,
    /// `|Mor|² × |Mor|`
    pub delta: ExactMatrix,
    pub counit: Vec<Scalar>,
    /// `k^Ob → k[Mor]`, `e_x ↦ id_x`
    pub base_embedding: ExactMatrix,
}

pub fn linearize(c: &FinCategory, field: FieldSpec) -> Result<Linearized, CatError> {
    let v = validate_category(c);
    if !v.passed() {
        return Err(CatError::Invalid(v.failures().map(|x| x.name.clone()).collect::<Vec<_>>().join(", ")));
    }
    let n = c.num_morphisms();
    let mut consts = Vec::new();
    for g in 0..n {
        for f in 0..n {
            if let Some(h) = c.compose(g, f) {
                consts.push((g, f, h, field.one()));
            }
        }
    }
    let mut unit = vec![field.zero(); n];
    for x in 0..c.num_objects() {
        unit[c.id(x)] = field.one();
    }
    let algebra = FDAlgebra::new(field, n, unit, &consts).map_err(|e| CatError::Invalid(e.to_string()))?;
    let delta = ExactMatrix::from_sparse_columns(field, n * n, (0..n).map(|f| sparse::unit(f * n + f, field)).collect());
    let base_embedding =
        ExactMatrix::from_sparse_columns(field, n, (0..c.num_objects()).map(|x| sparse::unit(c.id(x), field)).collect());
    Ok(Linearized {
        objects: Arc::new(FDAlgebra::split(field, c.num_objects())),
        algebra: Arc::new(algebra),
        delta,
        counit: vec![field.one(); n],
        base_embedding,
    })
}

fn indicator(field: FieldSpec, n: usize, pick: impl Fn(usize) -> bool) -> SparseVec {
    (0..n).filter(|&i| pick(i)).map(|i| (i, field.one())).collect()
}

/// `k^Mor` over `k^Ob`: pointwise product, `Δ(δ_h) = Σ_{g∘f=h} δ_f⊗δ_g`, `ε(δ_f) = E_xx` for `f = id_x`.
pub fn function_bialgebroid(c: &FinCategory, field: FieldSpec) -> Result<Bialgebroid, BialgebroidError> {
    let (o, n) = (c.num_objects(), c.num_morphisms());
    let base = Arc::new(FDAlgebra::split(field, o));
    let total = Arc::new(FDAlgebra::split(field, n));
    let anchor = ExactMatrix::from_sparse_columns(
        field,
        n,
        (0..o * o).map(|k| indicator(field, n, |f| c.src(f) == k / o && c.tgt(f) == k % o)).collect(),
    );
    let mut cols = vec![Vec::new(); n];
    for g in 0..n {
        for f in 0..n {
            if let Some(h) = c.compose(g, f) {
                cols[h].push((f * n + g, field.one()));
            }
        }
    }
    for col in &mut cols {
        col.sort_by_key(|(i, _)| *i);
    }
    let delta = ExactMatrix::from_sparse_columns(field, n * n, cols);
    let epsilon = ExactMatrix::from_sparse_columns(
        field,
        o * o,
        (0..n).map(|f| if c.is_identity(f) { sparse::unit(c.src(f) * o + c.src(f), field) } else { Vec::new() }).collect(),
    );
    Bialgebroid::new(base, total, anchor, delta, epsilon)
}

/// `k^P` over `k^{Mor C}` and `k^{Mor D}` with `δ(δ_p) = Σ_{u·q·v = p} δ_u⊗δ_q⊗δ_v`.
pub fn function_comodule_algebra(
    p: &Profunctor,
    left: &Arc<Bialgebroid>,
    right: &Arc<Bialgebroid>,
    field: FieldSpec,
) -> Result<ComoduleAlgebra, BialgebroidError> {
    let v = validate_profunctor(p);
    if !v.passed() {
        return Err(BialgebroidError::Structure(format!("invalid profunctor: {}", v.failures().map(|x| x.name.clone()).collect::<Vec<_>>().join(", "))));
    }
    let (c, d) = (p.source(), p.target());
    let (nc, np, nd) = (c.num_morphisms(), p.len(), d.num_morphisms());
    let od = d.num_objects();
    if left.total().dim() != nc || right.total().dim() != nd {
        return Err(BialgebroidError::Endpoints("bialgebroids do not match the categories of the profunctor".into()));
    }
    let total = Arc::new(FDAlgebra::split(field, np));
    let anchor = ExactMatrix::from_sparse_columns(
        field,
        np,
        (0..c.num_objects() * od).map(|k| indicator(field, np, |e| p.s(e) == k / od && p.t(e) == k % od)).collect(),
    );
    let mut cols = vec![Vec::new(); np];
    for u in 0..nc {
        for q in 0..np {
            let Some(uq) = p.act_left(u, q) else { continue };
            for w in 0..nd {
                if let Some(x) = p.act_right(uq, w) {
                    cols[x].push(((u * np + q) * nd + w, field.one()));
                }
            }
        }
    }
    for col in &mut cols {
        col.sort_by_key(|(i, _)| *i);
    }
    let coaction = ExactMatrix::from_sparse_columns(field, nc * np * nd, cols);
    ComoduleAlgebra::new(left.clone(), right.clone(), total, anchor, coaction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebroid::{check_bialgebroid, check_comodule_algebra, compose_modules};
    use crate::fincat::{compose_prof, hom_profunctor};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn small_linearizations() {
        let l = linearize(&FinCategory::discrete(2), Q).unwrap();
        assert_eq!((l.objects.dim(), l.algebra.dim()), (2, 2));
        assert_eq!(*l.algebra, FDAlgebra::split(Q, 2));
        let z2 = linearize(&FinCategory::cyclic_group(2), Q).unwrap();
        assert_eq!(*z2.algebra, FDAlgebra::cyclic_group_algebra(Q, 2));
        let g = linearize(&FinCategory::indiscrete(2), Q).unwrap();
        assert_eq!(g.algebra.dim(), 4);
        // the four arrows multiply like matrix units: E_ij ↔ (j → i)
        let c = FinCategory::indiscrete(2);
        let m2 = FDAlgebra::matrix_algebra(Q, 2);
        let to_unit = |f: usize| c.tgt(f) * 2 + c.src(f);
        let perm = ExactMatrix::from_sparse_columns(Q, 4, (0..4).map(|f| sparse::unit(to_unit(f), Q)).collect());
        assert!(g.algebra.is_algebra_map(&m2, &perm).is_ok());
    }

    #[test]
    fn function_algebras_are_bialgebroids() {
        for c in [FinCategory::arrow(), FinCategory::cyclic_group(2), FinCategory::indiscrete(2)] {
            let b = function_bialgebroid(&c, Q).unwrap();
            let r = check_bialgebroid(&b);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn hom_profunctor_linearizes_to_the_regular_comodule() {
        let c = Arc::new(FinCategory::arrow());
        let b = Arc::new(function_bialgebroid(&c, Q).unwrap());
        let h = hom_profunctor(&c).unwrap();
        let m = function_comodule_algebra(&h, &b, &b, Q).unwrap();
        let r = check_comodule_algebra(&m);
        assert!(r.passed(), "{r}");
        assert_eq!(m.coaction().unwrap().1, ComoduleAlgebra::regular(&b).unwrap().coaction().unwrap().1);
        let comp = compose_modules(&m, &m).unwrap();
        assert_eq!(comp.dim(), compose_prof(&h, &h).unwrap().profunctor.len());
    }
}
