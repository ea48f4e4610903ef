use std::sync::Arc;

use crate::exactlin::{coequalizer, equalizer, image, split_idempotent, ExactMatrix, Splitting};
use crate::report::Report;
use crate::takeuchi::{Action, DoubleModule, Tn};

use super::{FrobeniusMonoid, WeakError};

/// A double module over separable Frobenius bases, read as a comodule through `δ(1)`.
#[derive(Clone, Debug)]
pub struct SFComodule {
    left: Arc<FrobeniusMonoid>,
    right: Arc<FrobeniusMonoid>,
    module: Arc<DoubleModule>,
}

impl SFComodule {
    pub fn new(left: Arc<FrobeniusMonoid>, right: Arc<FrobeniusMonoid>, module: Arc<DoubleModule>) -> Result<Self, WeakError> {
        if **left.carrier() != **module.left_base() || **right.carrier() != **module.right_base() {
            return Err(WeakError::BaseMismatch("Frobenius carriers differ from the module's base algebras".into()));
        }
        Ok(SFComodule { left, right, module })
    }

    /// Uses the standard Frobenius structures on `k^n` and `M_n(k)` bases.
    pub fn standard(module: Arc<DoubleModule>) -> Result<Self, WeakError> {
        let get = |b: &crate::takeuchi::FDAlgebra| {
            FrobeniusMonoid::standard(b)
                .map(Arc::new)
                .ok_or_else(|| WeakError::NotSeparable("base is neither k^n nor M_n(k)".into()))
        };
        let (l, r) = (get(module.left_base())?, get(module.right_base())?);
        Self::new(l, r, module)
    }

    pub fn left(&self) -> &Arc<FrobeniusMonoid> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FrobeniusMonoid> {
        &self.right
    }

    pub fn module(&self) -> &Arc<DoubleModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    fn base(&self, a: Action) -> &FrobeniusMonoid {
        if a.on_left_base() {
            &self.left
        } else {
            &self.right
        }
    }

    /// `C⊗X` for left actions (`x ↦ Σ c_jk e_j⊗e_k·x`) and `X⊗C` for right ones (`x ↦ Σ c_jk x·e_j⊗e_k`).
    pub fn coaction(&self, a: Action) -> ExactMatrix {
        let c = self.base(a);
        let f = c.field();
        let (n, d) = (c.dim(), self.dim());
        let ops = self.module.action(a);
        let mut acc: Vec<crate::exactlin::sparse::Accumulator> =
            (0..d).map(|_| crate::exactlin::sparse::Accumulator::new(f, n * d)).collect();
        for (j, k, coef) in c.copairing_terms() {
            let (e, op) = if a.is_left() { (j, &ops[k]) } else { (k, &ops[j]) };
            for (x, acc_x) in acc.iter_mut().enumerate() {
                for (i, v) in op.column(x) {
                    let idx = if a.is_left() { e * d + i } else { i * n + e };
                    acc_x.add(idx, &f.mul(&coef, v));
                }
            }
        }
        ExactMatrix::from_sparse_columns(f, n * d, acc.iter_mut().map(|a| a.take()).collect())
    }
}

/// Coassociativity and counit of all four coactions.
pub fn check_sf_comodule(x: &SFComodule) -> Report {
    let mut r = Report::new("sf comodule");
    let dm = x.module.validate();
    r.check("double_module", if dm.passed() { Ok(()) } else { Err(dm.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")) });
    let d = x.dim();
    for a in Action::ALL {
        let c = x.base(a);
        let f = c.field();
        let (ic, ix) = (ExactMatrix::identity(f, c.dim()), ExactMatrix::identity(f, d));
        let delta = x.coaction(a);
        let (lhs, rhs, counit) = if a.is_left() {
            (&c.delta().kron(&ix) * &delta, &ic.kron(&delta) * &delta, &c.epsilon().kron(&ix) * &delta)
        } else {
            (&ix.kron(c.delta()) * &delta, &delta.kron(&ic) * &delta, &ix.kron(c.epsilon()) * &delta)
        };
        r.check(format!("{a}.coassociative"), if lhs == rhs { Ok(()) } else { Err("the two iterated coactions differ".into()) });
        r.check(format!("{a}.counit"), if counit == ix { Ok(()) } else { Err("counit does not recover the identity".into()) });
    }
    r
}

/// `d·f₁ = 1` and `f₁·d·f₂ = f₂·d·f₂` for `f₁, f₂ : P → Q`, `d : Q → P`; returns the idempotent `d·f₂`.
pub fn cosplit_check(f1: &ExactMatrix, f2: &ExactMatrix, d: &ExactMatrix) -> Result<ExactMatrix, WeakError> {
    if f1.shape() != f2.shape() || d.shape() != (f1.cols(), f1.rows()) {
        return Err(WeakError::Shape(format!("f₁ {:?}, f₂ {:?}, d {:?}", f1.shape(), f2.shape(), d.shape())));
    }
    let df1 = d * f1;
    if let Some((i, j)) = df1.first_difference(&ExactMatrix::identity(d.field(), f1.cols())) {
        return Err(WeakError::NotCosplit(format!("d·f₁ ≠ 1 at ({i},{j})")));
    }
    let df2 = d * f2;
    if let Some((i, j)) = (f1 * &df2).first_difference(&(f2 * &df2)) {
        return Err(WeakError::NotCosplit(format!("f₁·d·f₂ ≠ f₂·d·f₂ at ({i},{j})")));
    }
    Ok(df2)
}

fn compatible(x: &SFComodule, y: &SFComodule) -> Result<(), WeakError> {
    if x.right != y.left {
        return Err(WeakError::BaseMismatch("right base of X differs from left base of Y".into()));
    }
    Ok(())
}

/// The cosplit pair `f₁ = 1⊗δ_l`, `f₂ = δ_r⊗1 : X⊗Y → X⊗C⊗Y` with `d = (1⊗ε⊗1)(1⊗μ⊗1)(1⊗1⊗δ_l)`.
pub fn cosplit_pair(x: &SFComodule, y: &SFComodule) -> Result<(ExactMatrix, ExactMatrix, ExactMatrix), WeakError> {
    compatible(x, y)?;
    let c = &x.right;
    let f = c.field();
    let (ix, iy, ic) = (ExactMatrix::identity(f, x.dim()), ExactMatrix::identity(f, y.dim()), ExactMatrix::identity(f, c.dim()));
    let dl = y.coaction(Action::Rro);
    let dr = x.coaction(Action::Rs);
    let f1 = ix.kron(&dl);
    let f2 = dr.kron(&iy);
    let mu = c.carrier().mult_matrix();
    let d = &(&ix.kron(c.epsilon()).kron(&iy) * &ix.kron(&mu).kron(&iy)) * &ix.kron(&ic).kron(&dl);
    Ok((f1, f2, d))
}

/// The idempotent on `X⊗Y` whose image is `X⊗_C Y`, obtained from the cosplit pair.
pub fn idempotent_a(x: &SFComodule, y: &SFComodule) -> Result<ExactMatrix, WeakError> {
    let (f1, f2, d) = cosplit_pair(x, y)?;
    cosplit_check(&f1, &f2, &d)
}

/// `Σ c_jk ls_X(e_j)⊗lro_Y(e_k)`: averaging over the centralizer condition.
pub fn idempotent_b(x: &SFComodule, y: &SFComodule) -> Result<ExactMatrix, WeakError> {
    compatible(x, y)?;
    Ok(pair_sum(&x.right, x.module.ls(), y.module.lro(), &[x.dim(), y.dim()], 0))
}

fn pair_sum(c: &FrobeniusMonoid, first: &[ExactMatrix], second: &[ExactMatrix], dims: &[usize], slot: usize) -> ExactMatrix {
    let f = c.field();
    let n: usize = dims.iter().product();
    let mut total = ExactMatrix::zeros(f, n, n);
    for (j, k, coef) in c.copairing_terms() {
        let mats: Vec<ExactMatrix> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if i == slot {
                    first[j].clone()
                } else if i == slot + 1 {
                    second[k].clone()
                } else {
                    ExactMatrix::identity(f, d)
                }
            })
            .collect();
        let refs: Vec<&ExactMatrix> = mats.iter().collect();
        total = &total + &ExactMatrix::kron_all(f, &refs).scale(&coef);
    }
    total
}

fn mutual_inverses(r: &mut Report, name: &str, there: &ExactMatrix, back: &ExactMatrix) {
    let ok = (there * back).is_identity() && (back * there).is_identity();
    r.check(
        name,
        if ok { Ok(()) } else { Err(format!("maps of shapes {:?} and {:?} are not mutually inverse", there.shape(), back.shape())) },
    );
}

fn idempotent_check(r: &mut Report, name: &str, e: &ExactMatrix) -> bool {
    r.check(
        name,
        match (e * e).first_difference(e) {
            None => Ok(()),
            Some((i, j)) => Err(format!("e·e ≠ e at ({i},{j})")),
        },
    )
}

/// `a` against the direct coequalizer of the two `C`-actions on `X⊗C⊗Y`, and against the equalizer
/// of the cosplit pair.
pub fn check_idempotent_a(x: &SFComodule, y: &SFComodule) -> Result<Report, WeakError> {
    let mut r = Report::new("idempotent a");
    let (f1, f2, d) = cosplit_pair(x, y)?;
    let a = match cosplit_check(&f1, &f2, &d) {
        Ok(a) => {
            r.pass("cosplit");
            a
        }
        Err(e) => {
            r.fail("cosplit", e.to_string());
            return Ok(r);
        }
    };
    if !idempotent_check(&mut r, "idempotent", &a) {
        return Ok(r);
    }
    let split = split_idempotent(&a)?;
    let c = &x.right;
    let (dx, dy, n) = (x.dim(), y.dim(), c.dim());
    let f = c.field();
    // x⊗c⊗y ↦ x·c⊗y and x⊗c⊗y ↦ x⊗c·y
    let act_r = ExactMatrix::from_sparse_columns(
        f,
        dx,
        (0..dx * n).map(|i| x.module.rs()[i % n].column(i / n).clone()).collect(),
    );
    let act_l = ExactMatrix::from_sparse_columns(
        f,
        dy,
        (0..n * dy).map(|i| y.module.rro()[i / dy].column(i % dy).clone()).collect(),
    );
    let g1 = act_r.kron(&ExactMatrix::identity(f, dy));
    let g2 = ExactMatrix::identity(f, dx).kron(&act_l);
    let q = coequalizer(&g1, &g2)?;
    r.stat("rank", split.dim);
    r.stat("coequalizer_dim", q.dim());
    let there = q.projection() * &split.inclusion;
    let back = &(&split.projection * &a) * q.section();
    if there.shape() == (back.cols(), back.rows()) {
        mutual_inverses(&mut r, "split_is_coequalizer", &there, &back);
    } else {
        r.fail("split_is_coequalizer", format!("rank {} vs coequalizer dimension {}", split.dim, q.dim()));
    }
    let eq = equalizer(&f1, &f2)?;
    r.check(
        "image_is_equalizer",
        if image(&a) == eq { Ok(()) } else { Err(format!("image of rank {} vs equalizer of dim {}", split.dim, eq.dim())) },
    );
    Ok(r)
}

/// `T_n(X_1, …, X_n) = (X_1⊗…⊗X_n, d_n)` with `d_n = Π a_i b_i`, split and compared with `T_n`.
#[derive(Clone, Debug)]
pub struct TnSplit {
    pub a: Vec<ExactMatrix>,
    pub b: Vec<ExactMatrix>,
    pub idempotent: ExactMatrix,
    pub splitting: Splitting,
    pub tn: Tn,
    /// `split(d_n) → T_n`
    pub to_tn: ExactMatrix,
    /// `T_n → split(d_n)`
    pub from_tn: ExactMatrix,
}

pub fn tn_via_idempotent(xs: &[SFComodule]) -> Result<TnSplit, WeakError> {
    if xs.is_empty() {
        return Err(WeakError::Shape("use tc_unit for n = 0".into()));
    }
    for w in xs.windows(2) {
        compatible(&w[0], &w[1])?;
    }
    let f = xs[0].left.field();
    let dims: Vec<usize> = xs.iter().map(|x| x.dim()).collect();
    let n: usize = dims.iter().product();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut d = ExactMatrix::identity(f, n);
    for i in 0..xs.len() - 1 {
        let c = &xs[i].right;
        let ai = pair_sum(c, xs[i].module.rs(), xs[i + 1].module.rro(), &dims, i);
        let bi = pair_sum(c, xs[i].module.ls(), xs[i + 1].module.lro(), &dims, i);
        d = &(&d * &ai) * &bi;
        a.push(ai);
        b.push(bi);
    }
    let modules: Vec<Arc<DoubleModule>> = xs.iter().map(|x| x.module.clone()).collect();
    let tn = Tn::new(&modules)?;
    let splitting = split_idempotent(&d)?;
    let to_tn = tn.project_columns(&splitting.inclusion)?;
    let from_tn = &(&splitting.projection * &d) * tn.lift();
    Ok(TnSplit { a, b, idempotent: d, splitting, tn, to_tn, from_tn })
}

pub fn check_tn_via_idempotent(xs: &[SFComodule]) -> Result<Report, WeakError> {
    let mut r = Report::new(format!("T_{} via idempotent", xs.len()));
    let t = tn_via_idempotent(xs)?;
    for (i, (a, b)) in t.a.iter().zip(&t.b).enumerate() {
        idempotent_check(&mut r, &format!("a_{i}.idempotent"), a);
        idempotent_check(&mut r, &format!("b_{i}.idempotent"), b);
    }
    let all: Vec<&ExactMatrix> = t.a.iter().chain(&t.b).collect();
    let commute = all.iter().enumerate().all(|(i, x)| all[i + 1..].iter().all(|y| (*x * *y) == (*y * *x)));
    r.check("commute", if commute { Ok(()) } else { Err("some a_i, b_j do not commute".into()) });
    idempotent_check(&mut r, "d.idempotent", &t.idempotent);
    r.stat("rank", t.splitting.dim);
    r.stat("tn_dim", t.tn.dim());
    if t.to_tn.shape() == (t.from_tn.cols(), t.from_tn.rows()) {
        mutual_inverses(&mut r, "split_is_tn", &t.to_tn, &t.from_tn);
    } else {
        r.fail("split_is_tn", format!("rank {} vs dim T_n {}", t.splitting.dim, t.tn.dim()));
    }
    Ok(r)
}

/// `T_C() = C⊗C`: the identity idempotent on `C⊗C` against `End(C)`.
pub fn check_tc_unit(c: &FrobeniusMonoid) -> Report {
    let mut r = Report::new("T_C()");
    let t0 = Tn::unit(c.carrier());
    let n = c.dim();
    r.stat("dim", t0.dim());
    r.check("dim_is_square", if t0.dim() == n * n { Ok(()) } else { Err(format!("{} ≠ {}²", t0.dim(), n)) });
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::random::{random_chain, BaseKind};
    use crate::takeuchi::{Bimodule, FDAlgebra};
    use rand::SeedableRng;

    const Q: FieldSpec = FieldSpec::Rationals;

    /// `C` as a comodule `k ⇸ C` and `C ⇸ k`.
    fn regular_pair(c: &FrobeniusMonoid) -> (SFComodule, SFComodule) {
        let base = c.carrier().clone();
        let k = Arc::new(FDAlgebra::ground(Q));
        let (rc, rk) = (Bimodule::regular(&base), Bimodule::regular(&k));
        let (fc, fk) = (Arc::new(c.clone()), Arc::new(FrobeniusMonoid::ground(Q)));
        (
            SFComodule::new(fk.clone(), fc.clone(), Arc::new(DoubleModule::from_bimodules(&rk, &rc))).unwrap(),
            SFComodule::new(fc, fk, Arc::new(DoubleModule::from_bimodules(&rc, &rk))).unwrap(),
        )
    }

    #[test]
    fn a_over_ground_field_is_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let xs: Vec<SFComodule> =
            random_chain(&mut rng, Q, &[BaseKind::Ground], 2, 4).into_iter().map(|m| SFComodule::standard(m).unwrap()).collect();
        let a = idempotent_a(&xs[0], &xs[1]).unwrap();
        assert!(a.is_identity());
    }

    #[test]
    fn regular_comodules_over_split_and_matrix_bases() {
        for (c, rank, center) in [(FrobeniusMonoid::split(Q, 2), 2, 2), (FrobeniusMonoid::matrix(Q, 2).unwrap(), 4, 1)] {
            let (x, y) = regular_pair(&c);
            for m in [&x, &y] {
                let r = check_sf_comodule(m);
                assert!(r.passed(), "{r}");
            }
            let r = check_idempotent_a(&x, &y).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.stats["rank"], rank);
            let t = check_tn_via_idempotent(&[x.clone(), y.clone()]).unwrap();
            assert!(t.passed(), "{t}");
            assert_eq!(t.stats["tn_dim"], center);
        }
    }

    #[test]
    fn broken_splitting_is_not_cosplit() {
        let f = ExactMatrix::from_i64_rows(Q, &[&[1, 0], &[0, 1], &[1, 1]]);
        let g = ExactMatrix::from_i64_rows(Q, &[&[1, 0], &[0, 1], &[0, 0]]);
        let d = ExactMatrix::from_i64_rows(Q, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(matches!(cosplit_check(&f, &g, &d), Err(WeakError::NotCosplit(_))));
        assert!(cosplit_check(&g, &g, &d).unwrap().is_identity());
        assert!(FDAlgebra::split(Q, 1).is_valid());
    }

    #[test]
    fn tc_unit_dimension() {
        for c in [FrobeniusMonoid::ground(Q), FrobeniusMonoid::split(Q, 2), FrobeniusMonoid::matrix(Q, 2).unwrap()] {
            let r = check_tc_unit(&c);
            assert!(r.passed(), "{r}");
        }
    }
}
