use std::sync::Arc;

use crate::bialgebroid::{check_bialgebroid, Bialgebroid};
use crate::exactlin::{sparse, ExactMatrix, FieldSpec, Scalar, Subspace};
use crate::fincat::Linearized;
use crate::report::Report;
use crate::takeuchi::FDAlgebra;

use super::{check_separable_frobenius, check_tn_via_idempotent, FrobeniusMonoid, SFComodule, WeakError};

/// An algebra `A` with `Δ : A → A⊗A`, `ε : A → k`, and a separable Frobenius base `C` embedded onto
/// the target subalgebra `ε_t(A)`.
#[derive(Clone, Debug)]
pub struct WeakBialgebra {
    carrier: Arc<FDAlgebra>,
    /// `dim² × dim`
    delta: ExactMatrix,
    /// `1 × dim`
    epsilon: ExactMatrix,
    base: Arc<FrobeniusMonoid>,
    /// `dim A × dim C`
    base_embedding: ExactMatrix,
}

impl WeakBialgebra {
    pub fn new(
        carrier: Arc<FDAlgebra>,
        delta: ExactMatrix,
        epsilon: ExactMatrix,
        base: Arc<FrobeniusMonoid>,
        base_embedding: ExactMatrix,
    ) -> Result<Self, WeakError> {
        let n = carrier.dim();
        if delta.shape() != (n * n, n) || epsilon.shape() != (1, n) || base_embedding.shape() != (n, base.dim()) {
            return Err(WeakError::Shape(format!(
                "Δ {:?}, ε {:?}, embedding {:?} for dim {n}",
                delta.shape(),
                epsilon.shape(),
                base_embedding.shape()
            )));
        }
        Ok(WeakBialgebra { carrier, delta, epsilon, base, base_embedding })
    }

    /// A bialgebra, with base `k` embedded as the scalars.
    pub fn from_bialgebra(carrier: Arc<FDAlgebra>, delta: ExactMatrix, epsilon: ExactMatrix) -> Result<Self, WeakError> {
        let f = carrier.field();
        let emb = ExactMatrix::from_sparse_columns(f, carrier.dim(), vec![carrier.unit().clone()]);
        Self::new(carrier, delta, epsilon, Arc::new(FrobeniusMonoid::ground(f)), emb)
    }

    /// `kZ/n` with `Δ(g) = g⊗g` and `ε(g) = 1`.
    pub fn cyclic_group(field: FieldSpec, n: usize) -> Result<Self, WeakError> {
        let a = Arc::new(FDAlgebra::cyclic_group_algebra(field, n));
        let delta = ExactMatrix::from_sparse_columns(field, n * n, (0..n).map(|g| sparse::unit(g * n + g, field)).collect());
        let eps = ExactMatrix::from_sparse_columns(field, 1, (0..n).map(|_| sparse::unit(0, field)).collect());
        Self::from_bialgebra(a, delta, eps)
    }

    /// The category algebra over `k^Ob`.
    pub fn from_linearized(l: &Linearized) -> Result<Self, WeakError> {
        let f = l.algebra.field();
        let eps = ExactMatrix::from_dense_columns(f, 1, &l.counit.iter().map(|c| vec![c.clone()]).collect::<Vec<_>>());
        let base = Arc::new(FrobeniusMonoid::split(f, l.objects.dim()));
        Self::new(l.algebra.clone(), l.delta.clone(), eps, base, l.base_embedding.clone())
    }

    pub fn with_epsilon(&self, epsilon: ExactMatrix) -> Result<Self, WeakError> {
        Self::new(self.carrier.clone(), self.delta.clone(), epsilon, self.base.clone(), self.base_embedding.clone())
    }

    pub fn field(&self) -> FieldSpec {
        self.carrier.field()
    }

    pub fn carrier(&self) -> &Arc<FDAlgebra> {
        &self.carrier
    }

    pub fn delta(&self) -> &ExactMatrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &ExactMatrix {
        &self.epsilon
    }

    pub fn base(&self) -> &Arc<FrobeniusMonoid> {
        &self.base
    }

    pub fn base_embedding(&self) -> &ExactMatrix {
        &self.base_embedding
    }

    fn eps(&self, v: &crate::exactlin::SparseVec) -> Scalar {
        let out = self.epsilon.apply(v);
        sparse::get(&out, 0).cloned().unwrap_or_else(|| self.field().zero())
    }

    fn unit_terms(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.carrier.dim();
        self.delta.apply(self.carrier.unit()).into_iter().map(|(i, c)| (i / n, i % n, c)).collect()
    }

    /// `ε_t(a) = Σ ε(1₁a) 1₂` as a `dim × dim` matrix.
    pub fn target_counit(&self) -> ExactMatrix {
        let f = self.field();
        let a = &self.carrier;
        let terms = self.unit_terms();
        let cols = (0..a.dim())
            .map(|x| {
                let mut acc = sparse::Accumulator::new(f, a.dim());
                for (j, k, c) in &terms {
                    let e = self.eps(a.basis_product(*j, x));
                    acc.add(*k, &f.mul(c, &e));
                }
                acc.take()
            })
            .collect();
        ExactMatrix::from_sparse_columns(f, a.dim(), cols)
    }

    /// `ε_s(a) = Σ 1₁ ε(a1₂)`.
    pub fn source_counit(&self) -> ExactMatrix {
        let f = self.field();
        let a = &self.carrier;
        let terms = self.unit_terms();
        let cols = (0..a.dim())
            .map(|x| {
                let mut acc = sparse::Accumulator::new(f, a.dim());
                for (j, k, c) in &terms {
                    let e = self.eps(a.basis_product(x, *k));
                    acc.add(*j, &f.mul(c, &e));
                }
                acc.take()
            })
            .collect();
        ExactMatrix::from_sparse_columns(f, a.dim(), cols)
    }

    /// The bialgebroid over `C` with `s = emb`, `t = ε_s∘emb` and counit `h ↦ (r ↦ ε_t(h·emb(r)))`.
    pub fn transported(&self) -> Result<Bialgebroid, WeakError> {
        let f = self.field();
        let a = &self.carrier;
        let c = self.base.carrier();
        let d = c.dim();
        let emb = &self.base_embedding;
        let t = &self.source_counit() * emb;
        let mut anchor_cols = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                anchor_cols.push(a.mul(emb.column(i), t.column(j)));
            }
        }
        let anchor = ExactMatrix::from_sparse_columns(f, a.dim(), anchor_cols);
        let et = self.target_counit();
        let mut eps_cols = Vec::with_capacity(a.dim());
        for h in 0..a.dim() {
            let images: Vec<_> = (0..d).map(|r| et.apply(&a.mul(&a.basis(h), emb.column(r)))).collect();
            let m = ExactMatrix::from_sparse_columns(f, a.dim(), images);
            let coords = emb
                .solve(&m)
                .ok_or_else(|| WeakError::BaseMismatch("ε_t(h·r) leaves the embedded base".into()))?;
            // E_ab coordinate: coefficient of e_a in the image of e_b
            let mut col: Vec<(usize, Scalar)> = Vec::new();
            for b in 0..d {
                for (a_idx, x) in coords.column(b) {
                    col.push((a_idx * d + b, x.clone()));
                }
            }
            col.sort_by_key(|(i, _)| *i);
            eps_cols.push(col);
        }
        let epsilon = ExactMatrix::from_sparse_columns(f, d * d, eps_cols);
        Ok(Bialgebroid::new(c.clone(), a.clone(), anchor, self.delta.clone(), epsilon)?)
    }
}

fn pass_if(r: &mut Report, name: &str, failures: Vec<String>) {
    r.check(name, if failures.is_empty() { Ok(()) } else { Err(crate::report::summarize(&failures, 3)) });
}

fn comonoid_checks(r: &mut Report, w: &WeakBialgebra) {
    let f = w.field();
    let id = ExactMatrix::identity(f, w.carrier.dim());
    let d = &w.delta;
    r.check(
        "comonoid.coassociative",
        if &id.kron(d) * d == &d.kron(&id) * d { Ok(()) } else { Err("(1⊗Δ)Δ ≠ (Δ⊗1)Δ".into()) },
    );
    r.check("comonoid.counit_left", if &w.epsilon.kron(&id) * d == id { Ok(()) } else { Err("(ε⊗1)Δ ≠ 1".into()) });
    r.check("comonoid.counit_right", if &id.kron(&w.epsilon) * d == id { Ok(()) } else { Err("(1⊗ε)Δ ≠ 1".into()) });
}

fn delta_multiplicative(r: &mut Report, w: &WeakBialgebra) {
    let a = &w.carrier;
    let aa = a.tensor(a);
    let mut bad = Vec::new();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            if w.delta.apply(a.basis_product(i, j)) != aa.mul(w.delta.column(i), w.delta.column(j)) {
                bad.push(format!("(e{i},e{j})"));
            }
        }
    }
    pass_if(r, "delta.multiplicative", bad);
}

/// Weak bialgebra axioms, the base embedding, and the transported bialgebroid with `T_2` cross-checked
/// through the Frobenius idempotent.
pub fn check_weak_bialgebra(w: &WeakBialgebra) -> Report {
    let mut r = Report::new("weak bialgebra");
    let f = w.field();
    let a = &w.carrier;
    let n = a.dim();
    r.absorb("base", check_separable_frobenius(&w.base));
    let alg = a.validate();
    r.check("algebra", if alg.passed() { Ok(()) } else { Err(alg.to_string()) });
    comonoid_checks(&mut r, w);
    delta_multiplicative(&mut r, w);

    // ε(xyz) = ε(xy₁)ε(y₂z) = ε(xy₂)ε(y₁z)
    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy_col = a.basis_product(x, y);
            for z in 0..n {
                let lhs = w.eps(&a.mul(xy_col, &a.basis(z)));
                let (mut first, mut second) = (f.zero(), f.zero());
                for (idx, c) in w.delta.column(y) {
                    let (y1, y2) = (idx / n, idx % n);
                    let t1 = f.mul(&w.eps(a.basis_product(x, y1)), &w.eps(a.basis_product(y2, z)));
                    let t2 = f.mul(&w.eps(a.basis_product(x, y2)), &w.eps(a.basis_product(y1, z)));
                    first = f.add(&first, &f.mul(c, &t1));
                    second = f.add(&second, &f.mul(c, &t2));
                }
                if lhs != first || lhs != second {
                    bad.push(format!("(e{x},e{y},e{z})"));
                }
            }
        }
    }
    pass_if(&mut r, "counit.weak_multiplicative", bad);

    // Δ²(1) = (Δ(1)⊗1)(1⊗Δ(1)) = (1⊗Δ(1))(Δ(1)⊗1)
    let id = ExactMatrix::identity(f, n);
    let d1 = w.delta.apply(a.unit());
    let aaa = a.tensor(a).tensor(a);
    let dd1 = (&w.delta.kron(&id) * &w.delta).apply(a.unit());
    let left = ExactMatrix::from_sparse_columns(f, n * n, vec![d1.clone()]).kron(&ExactMatrix::from_sparse_columns(f, n, vec![a.unit().clone()]));
    let right = ExactMatrix::from_sparse_columns(f, n, vec![a.unit().clone()]).kron(&ExactMatrix::from_sparse_columns(f, n * n, vec![d1.clone()]));
    let (l, rr) = (left.column(0), right.column(0));
    let ok = aaa.mul(l, rr) == dd1 && aaa.mul(rr, l) == dd1;
    r.check("unit.weak_comultiplicative", if ok { Ok(()) } else { Err("Δ²(1) differs from the products of Δ(1)⊗1 and 1⊗Δ(1)".into()) });

    let ordinary = d1 == *a.tensor(a).unit();
    r.info("unit.ordinary", if ordinary { "Δ(1) = 1⊗1" } else { "Δ(1) ≠ 1⊗1" });

    // the base sits inside A as ε_t(A)
    let emb = &w.base_embedding;
    let target = Subspace::column_space(&w.target_counit());
    let emb_ok = match w.base.carrier().is_algebra_map(a, emb) {
        Err(e) => Err(e),
        Ok(()) if emb.rank() != w.base.dim() => Err("embedding is not injective".into()),
        Ok(()) if Subspace::column_space(emb) != target => {
            Err(format!("image of the base has dim {}, ε_t(A) has dim {}", emb.rank(), target.dim()))
        }
        Ok(()) => Ok(()),
    };
    let emb_passed = r.check("base.embedding", emb_ok);
    if !emb_passed {
        r.skip("bialgebroid", "base is not embedded as ε_t(A)");
        return r;
    }
    match w.transported() {
        Ok(b) => {
            r.absorb("bialgebroid", check_bialgebroid(&b));
            let x = SFComodule::new(w.base.clone(), w.base.clone(), b.module().clone());
            match x.map_err(|e| e.to_string()).and_then(|x| check_tn_via_idempotent(&[x.clone(), x]).map_err(|e| e.to_string())) {
                Ok(t) => r.absorb("t2_via_idempotent", t),
                Err(e) => r.fail("t2_via_idempotent", e),
            }
        }
        Err(e) => r.fail("bialgebroid", e.to_string()),
    }
    r
}

/// Bialgebra axioms over `k`: the weak ones plus `Δ(1) = 1⊗1` and `ε(ab) = ε(a)ε(b)`.
pub fn check_ordinary_bialgebra(w: &WeakBialgebra) -> Report {
    let mut r = Report::new("bialgebra");
    let f = w.field();
    let a = &w.carrier;
    let n = a.dim();
    let alg = a.validate();
    r.check("algebra", if alg.passed() { Ok(()) } else { Err(alg.to_string()) });
    comonoid_checks(&mut r, w);
    delta_multiplicative(&mut r, w);
    let aa = a.tensor(a);
    r.check("unit.comultiplicative", if w.delta.apply(a.unit()) == *aa.unit() { Ok(()) } else { Err("Δ(1) ≠ 1⊗1".into()) });
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if w.eps(a.basis_product(i, j)) != f.mul(&w.eps(&a.basis(i)), &w.eps(&a.basis(j))) {
                bad.push(format!("(e{i},e{j})"));
            }
        }
    }
    pass_if(&mut r, "counit.multiplicative", bad);
    r.check("counit.unital", if w.eps(a.unit()) == f.one() { Ok(()) } else { Err("ε(1) ≠ 1".into()) });
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{linearize, FinCategory};
    use crate::report::Status;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn group_algebra_is_an_ordinary_bialgebra() {
        let w = WeakBialgebra::cyclic_group(Q, 2).unwrap();
        let r = check_ordinary_bialgebra(&w);
        assert!(r.passed(), "{r}");
        let r = check_weak_bialgebra(&w);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn indiscrete_groupoid_is_weak_but_not_ordinary() {
        let c = FinCategory::indiscrete(2);
        let w = WeakBialgebra::from_linearized(&linearize(&c, Q).unwrap()).unwrap();
        let r = check_weak_bialgebra(&w);
        assert!(r.passed(), "{r}");
        assert_eq!(r.status_of("unit.ordinary"), Some(Status::Info));
        for name in ["bialgebroid.counit.left", "bialgebroid.delta.multiplicative", "bialgebroid.epsilon.multiplicative", "t2_via_idempotent.split_is_tn"] {
            assert_eq!(r.status_of(name), Some(Status::Pass), "{name}");
        }
        let o = check_ordinary_bialgebra(&w);
        assert_eq!(o.status_of("unit.comultiplicative"), Some(Status::Fail));

        // ε = 0 on the two non-identity arrows
        let eps: Vec<Vec<Scalar>> = (0..4).map(|g| vec![if c.is_identity(g) { Q.one() } else { Q.zero() }]).collect();
        let bad = w.with_epsilon(ExactMatrix::from_dense_columns(Q, 1, &eps)).unwrap();
        let r = check_weak_bialgebra(&bad);
        assert_eq!(r.status_of("comonoid.counit_left"), Some(Status::Fail));
        assert!(!r.passed());
    }
}
