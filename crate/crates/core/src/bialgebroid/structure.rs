use std::sync::Arc;

use crate::exactlin::{sparse, ExactMatrix, FieldSpec, SparseVec};
use crate::report::Report;
use crate::takeuchi::{beta, tn_map, DoubleModule, FDAlgebra, Partition, Tn};

use super::products::{multiplicative_into_tn, product_representative_independence};
use super::BialgebroidError;

/// `A` as an object of `V(R, R)` with `Δ : A → A×_R A` and `ε : A → End(R)`.
///
/// `delta` holds representatives in `A⊗A` (`dim A² × dim A`); `epsilon` is `d² × dim A` in the `E_ab` basis.
#[derive(Clone, Debug)]
pub struct Coalgebroid {
    pub base: Arc<FDAlgebra>,
    pub module: Arc<DoubleModule>,
    pub delta: ExactMatrix,
    pub epsilon: ExactMatrix,
}

/// `Δ` and `ε` as maps between the computed objects.
#[derive(Clone, Debug)]
pub struct CoalgebroidMaps {
    pub t2: Tn,
    pub t0: Tn,
    /// `A → T_2(A, A)` in `T_2` coordinates
    pub delta: ExactMatrix,
}

impl Coalgebroid {
    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn maps(&self) -> Result<CoalgebroidMaps, BialgebroidError> {
        let t2 = Tn::new(&[self.module.clone(), self.module.clone()])?;
        let delta = t2.project_columns(&self.delta).map_err(|_| {
            let bad = (0..self.delta.cols()).find(|&j| t2.project(self.delta.column(j)).is_none()).unwrap_or(0);
            BialgebroidError::NotInSubspace(format!("Δ(e{bad}) is not in A×_R A"))
        })?;
        Ok(CoalgebroidMaps { t2, t0: Tn::unit(&self.base), delta })
    }
}

/// Coassociativity and counit laws, plus the module-map conditions on `Δ` and `ε`.
pub fn check_coalgebroid(c: &Coalgebroid) -> Report {
    let mut r = Report::new("coalgebroid");
    let a = &c.module;
    let dm = a.validate();
    r.check("double_module", if dm.passed() { Ok(()) } else { Err(dm.failures().map(|c| c.name.clone()).collect::<Vec<_>>().join(", ")) });
    if c.delta.shape() != (a.dim() * a.dim(), a.dim()) || c.epsilon.shape() != (c.base.dim() * c.base.dim(), a.dim()) {
        r.fail("shapes", format!("Δ is {:?}, ε is {:?}", c.delta.shape(), c.epsilon.shape()));
        return r;
    }
    let maps = match c.maps() {
        Ok(m) => {
            r.pass("delta.in_takeuchi_product");
            m
        }
        Err(e) => {
            r.fail("delta.in_takeuchi_product", e.to_string());
            return r;
        }
    };
    r.stat("dim", a.dim());
    r.stat("dim_t2", maps.t2.dim());
    let delta_ok = a.is_module_map(maps.t2.module(), &maps.delta);
    r.check("delta.module_map", delta_ok.clone());
    let eps_ok = a.is_module_map(maps.t0.module(), &c.epsilon);
    r.check("epsilon.module_map", eps_ok.clone());
    if delta_ok.is_err() || eps_ok.is_err() {
        r.skip("coassociativity", "Δ or ε is not a module map");
        r.skip("counit.left", "Δ or ε is not a module map");
        r.skip("counit.right", "Δ or ε is not a module map");
        return r;
    }
    r.check("coassociativity", coassociativity(c, &maps));
    let id = ExactMatrix::identity(c.field(), a.dim());
    for (name, part, left) in [("counit.left", "0+1", true), ("counit.right", "1+0", false)] {
        let outcome = counit_route(c, &maps, part, left).map_err(|e| e.to_string()).and_then(|m| {
            if m == id {
                Ok(())
            } else {
                let (i, j) = m.first_difference(&id).unwrap();
                Err(format!("differs from the identity at ({i},{j})"))
            }
        });
        r.check(name, outcome);
    }
    r
}

fn coassociativity(c: &Coalgebroid, maps: &CoalgebroidMaps) -> Result<(), String> {
    let a = &c.module;
    let d = &maps.delta;
    let id = ExactMatrix::identity(c.field(), a.dim());
    let err = |e: crate::takeuchi::TakeuchiError| e.to_string();
    let left = beta(&Partition(vec![2, 1]), &[a.clone(), a.clone(), a.clone()]).map_err(err)?;
    let right = beta(&Partition(vec![1, 2]), &[a.clone(), a.clone(), a.clone()]).map_err(err)?;
    let lhs = &(&left.matrix * &tn_map(&maps.t2, &left.grouped, &[d, &id]).map_err(err)?) * d;
    let rhs = &(&right.matrix * &tn_map(&maps.t2, &right.grouped, &[&id, d]).map_err(err)?) * d;
    if lhs == rhs {
        Ok(())
    } else {
        let (i, j) = lhs.first_difference(&rhs).unwrap();
        Err(format!("β₂₊₁T₂(Δ,1)Δ and β₁₊₂T₂(1,Δ)Δ differ at ({i},{j}) of T₃(A,A,A)"))
    }
}

fn counit_route(c: &Coalgebroid, maps: &CoalgebroidMaps, part: &str, left: bool) -> Result<ExactMatrix, BialgebroidError> {
    let a = &c.module;
    let b = beta(&part.parse()?, std::slice::from_ref(a))?;
    let id = ExactMatrix::identity(c.field(), a.dim());
    let lifted = if left {
        tn_map(&maps.t2, &b.grouped, &[&c.epsilon, &id])?
    } else {
        tn_map(&maps.t2, &b.grouped, &[&id, &c.epsilon])?
    };
    Ok(&(&b.matrix * &lifted) * &maps.delta)
}

/// A bialgebroid over `R`: an algebra `A` with an algebra map `R⊗R° → A` and a coalgebroid
/// structure whose coproduct and counit are multiplicative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bialgebroid {
    base: Arc<FDAlgebra>,
    total: Arc<FDAlgebra>,
    anchor: ExactMatrix,
    delta: ExactMatrix,
    epsilon: ExactMatrix,
    module: Arc<DoubleModule>,
}

impl Bialgebroid {
    /// `anchor` is `dim A × d²` on `e_i⊗e_j` at `i·d + j`, `delta` is `dim A² × dim A`, `epsilon` is `d² × dim A`.
    pub fn new(
        base: Arc<FDAlgebra>,
        total: Arc<FDAlgebra>,
        anchor: ExactMatrix,
        delta: ExactMatrix,
        epsilon: ExactMatrix,
    ) -> Result<Self, BialgebroidError> {
        let (d, n) = (base.dim(), total.dim());
        if delta.shape() != (n * n, n) {
            return Err(BialgebroidError::Shape(format!("Δ has shape {:?}, expected {}x{n}", delta.shape(), n * n)));
        }
        if epsilon.shape() != (d * d, n) {
            return Err(BialgebroidError::Shape(format!("ε has shape {:?}, expected {}x{n}", epsilon.shape(), d * d)));
        }
        let module = Arc::new(DoubleModule::from_anchor(&total, &base, &base, &anchor)?);
        Ok(Bialgebroid { base, total, anchor, delta, epsilon, module })
    }

    /// A bialgebra over `k` as a bialgebroid over the ground field.
    pub fn from_bialgebra(total: Arc<FDAlgebra>, delta: ExactMatrix, counit: &[crate::exactlin::Scalar]) -> Result<Self, BialgebroidError> {
        let f = total.field();
        let base = Arc::new(FDAlgebra::ground(f));
        let anchor = ExactMatrix::from_sparse_columns(f, total.dim(), vec![total.unit().clone()]);
        let epsilon = ExactMatrix::from_sparse_columns(f, 1, counit.iter().map(|c| sparse::from_dense(std::slice::from_ref(c))).collect());
        Self::new(base, total, anchor, delta, epsilon)
    }

    /// The monoid bialgebra `kG` with `Δ(g) = g⊗g` and `ε(g) = 1`; `table[a][b] = ab`.
    pub fn monoid_bialgebra(field: FieldSpec, table: &[Vec<usize>]) -> Result<Self, BialgebroidError> {
        let total = Arc::new(FDAlgebra::monoid_algebra(field, table));
        let n = table.len();
        let delta = ExactMatrix::from_sparse_columns(field, n * n, (0..n).map(|g| sparse::unit(g * n + g, field)).collect());
        Self::from_bialgebra(total, delta, &vec![field.one(); n])
    }

    pub fn cyclic_group(field: FieldSpec, n: usize) -> Result<Self, BialgebroidError> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::monoid_bialgebra(field, &table)
    }

    /// `R⊗R°` with `Δ(r⊗s) = (r⊗1)⊗(1⊗s)` and `ε(r⊗s) = (x ↦ rxs)`.
    pub fn enveloping(base: Arc<FDAlgebra>) -> Result<Self, BialgebroidError> {
        let f = base.field();
        let d = base.dim();
        let total = Arc::new(base.enveloping());
        let n = d * d;
        let anchor = ExactMatrix::identity(f, n);
        let mut delta_cols = Vec::with_capacity(n);
        let mut eps_cols = Vec::with_capacity(n);
        for i in 0..d {
            for j in 0..d {
                let mut acc = sparse::Accumulator::new(f, n * n);
                for (a, ua) in base.unit() {
                    for (b, ub) in base.unit() {
                        acc.add((i * d + a) * n + b * d + j, &f.mul(ua, ub));
                    }
                }
                delta_cols.push(acc.take());
                let m = &base.left_mul(&base.basis(i)) * &base.right_mul(&base.basis(j));
                let coords: SparseVec = (0..d)
                    .flat_map(|a| (0..d).map(move |b| (a, b)))
                    .filter_map(|(a, b)| {
                        let x = m.get(a, b);
                        (x != f.zero()).then_some((a * d + b, x))
                    })
                    .collect();
                eps_cols.push(coords);
            }
        }
        Self::new(
            base,
            total,
            anchor,
            ExactMatrix::from_sparse_columns(f, n * n, delta_cols),
            ExactMatrix::from_sparse_columns(f, n, eps_cols),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn base(&self) -> &Arc<FDAlgebra> {
        &self.base
    }

    pub fn total(&self) -> &Arc<FDAlgebra> {
        &self.total
    }

    pub fn anchor(&self) -> &ExactMatrix {
        &self.anchor
    }

    pub fn delta(&self) -> &ExactMatrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &ExactMatrix {
        &self.epsilon
    }

    pub fn module(&self) -> &Arc<DoubleModule> {
        &self.module
    }

    pub fn coalgebroid(&self) -> Coalgebroid {
        Coalgebroid {
            base: self.base.clone(),
            module: self.module.clone(),
            delta: self.delta.clone(),
            epsilon: self.epsilon.clone(),
        }
    }

    /// The same data with a different counit.
    pub fn with_epsilon(&self, epsilon: ExactMatrix) -> Result<Self, BialgebroidError> {
        Self::new(self.base.clone(), self.total.clone(), self.anchor.clone(), self.delta.clone(), epsilon)
    }

    pub fn with_delta(&self, delta: ExactMatrix) -> Result<Self, BialgebroidError> {
        Self::new(self.base.clone(), self.total.clone(), self.anchor.clone(), delta, self.epsilon.clone())
    }
}

/// Every bialgebroid axiom evaluated on the full basis.
pub fn check_bialgebroid(b: &Bialgebroid) -> Report {
    let mut r = Report::new("bialgebroid");
    let base_ok = b.base.validate();
    r.check("base.algebra", if base_ok.passed() { Ok(()) } else { Err(base_ok.to_string()) });
    let total_ok = b.total.validate();
    r.check("total.algebra", if total_ok.passed() { Ok(()) } else { Err(first_witness(&total_ok)) });
    let env = b.base.tensor(&b.base.opposite());
    r.check("anchor.algebra_map", env.is_algebra_map(&b.total, &b.anchor));
    let c = b.coalgebroid();
    let cr = check_coalgebroid(&c);
    r.absorb("", cr);
    match c.maps() {
        Ok(maps) => {
            let algs = [b.total.as_ref(), b.total.as_ref()];
            r.check("delta.product_well_defined", product_representative_independence(&maps.t2, &algs));
            r.check("delta.multiplicative", multiplicative_into_tn(&b.total, &maps.t2, &algs, &maps.delta));
        }
        Err(e) => {
            r.skip("delta.product_well_defined", e.to_string());
            r.skip("delta.multiplicative", e.to_string());
        }
    }
    r.check("epsilon.multiplicative", epsilon_multiplicative(b));
    r
}

fn first_witness(r: &Report) -> String {
    r.failures()
        .next()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
        .unwrap_or_default()
}

fn epsilon_multiplicative(b: &Bialgebroid) -> Result<(), String> {
    let end = FDAlgebra::matrix_algebra(b.field(), b.base.dim());
    end.is_algebra_map(&end, &ExactMatrix::identity(b.field(), end.dim()))?;
    b.total
        .is_algebra_map(&end, &b.epsilon)
        .map_err(|w| format!("ε into End(R): {w}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn group_algebra_is_a_bialgebroid_over_k() {
        for n in 1..=3 {
            let b = Bialgebroid::cyclic_group(Q, n).unwrap();
            let r = check_bialgebroid(&b);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn broken_counit_fails_the_counit_law() {
        let b = Bialgebroid::cyclic_group(Q, 2).unwrap();
        let eps = ExactMatrix::from_i64_rows(Q, &[&[1, 0]]);
        let r = check_bialgebroid(&b.with_epsilon(eps).unwrap());
        assert_eq!(r.status_of("counit.left"), Some(crate::report::Status::Fail));
        assert_eq!(r.status_of("coassociativity"), Some(crate::report::Status::Pass));
    }

    #[test]
    fn non_multiplicative_coproduct_is_caught() {
        let b = Bialgebroid::cyclic_group(Q, 2).unwrap();
        // Δ(g) = g⊗1 + 1⊗g − 1⊗1 is coassociative and counital but not multiplicative
        let g = vec![(0, Q.from_i64(-1)), (1, Q.one()), (2, Q.one())];
        let delta = ExactMatrix::from_sparse_columns(Q, 4, vec![b.delta().column(0).clone(), g]);
        let r = check_bialgebroid(&b.with_delta(delta).unwrap());
        assert_eq!(r.status_of("coassociativity"), Some(crate::report::Status::Pass));
        assert_eq!(r.status_of("delta.multiplicative"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn enveloping_bialgebroids() {
        for base in [FDAlgebra::ground(Q), FDAlgebra::split(Q, 2), FDAlgebra::matrix_algebra(Q, 2), FDAlgebra::truncated_polynomial(Q, 2)] {
            let b = Bialgebroid::enveloping(Arc::new(base)).unwrap();
            let r = check_bialgebroid(&b);
            assert!(r.passed(), "{r}");
        }
    }
}
