use std::sync::Arc;

use crate::exactlin::{
    kernel, sparse, ExactMatrix, FieldSpec, PivotRule, QuotientSpace, Scalar, SparseVec, Subspace,
};

use super::{Action, DoubleModule, FDAlgebra, TakeuchiError};

/// `I ⊗ … ⊗ m ⊗ … ⊗ I` with `m` in position `slot`.
pub(crate) fn embed(field: FieldSpec, dims: &[usize], slot: usize, m: &ExactMatrix) -> ExactMatrix {
    let before: usize = dims[..slot].iter().product();
    let after: usize = dims[slot + 1..].iter().product();
    let mut out = m.clone();
    if before != 1 {
        out = ExactMatrix::identity(field, before).kron(&out);
    }
    if after != 1 {
        out = out.kron(&ExactMatrix::identity(field, after));
    }
    out
}

/// Mixed-radix digits of a left-major tensor index.
pub(crate) fn split_index(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

/// Adds `coef · v_1⊗…⊗v_n` into `acc`.
pub(crate) fn add_kron(field: FieldSpec, acc: &mut sparse::Accumulator, coef: &Scalar, vecs: &[SparseVec], dims: &[usize]) {
    fn go(
        field: FieldSpec,
        acc: &mut sparse::Accumulator,
        coef: &Scalar,
        vecs: &[SparseVec],
        dims: &[usize],
        k: usize,
        idx: usize,
    ) {
        if k == vecs.len() {
            acc.add(idx, coef);
            return;
        }
        for (i, x) in &vecs[k] {
            go(field, acc, &field.mul(coef, x), vecs, dims, k + 1, idx * dims[k] + i);
        }
    }
    go(field, acc, coef, vecs, dims, 0, 0);
}

fn chain_bases(factors: &[Arc<DoubleModule>]) -> Result<(), TakeuchiError> {
    for (i, w) in factors.windows(2).enumerate() {
        if !Arc::ptr_eq(w[0].right_base(), w[1].left_base()) && w[0].right_base() != w[1].left_base() {
            return Err(TakeuchiError::BaseMismatch(format!(
                "factor {i} ends over a different algebra than factor {} starts",
                i + 1
            )));
        }
    }
    Ok(())
}

/// `X_1 ⊗_{S_1} ⊗ … ⊗_{S_{n−1}} X_n` as a quotient of the plain tensor product.
pub fn tensor_over(factors: &[Arc<DoubleModule>], rule: PivotRule) -> Result<QuotientSpace, TakeuchiError> {
    if factors.is_empty() {
        return Err(TakeuchiError::Arity("tensor product of no factors".into()));
    }
    chain_bases(factors)?;
    let field = factors[0].field();
    let dims: Vec<usize> = factors.iter().map(|x| x.dim()).collect();
    let n: usize = dims.iter().product();
    let mut gens: Vec<SparseVec> = Vec::new();
    for i in 0..factors.len() - 1 {
        for (a, b) in factors[i].rs().iter().zip(factors[i + 1].rro()) {
            let d = &embed(field, &dims, i, a) - &embed(field, &dims, i + 1, b);
            gens.extend(d.columns().iter().filter(|c| !c.is_empty()).cloned());
        }
    }
    Ok(QuotientSpace::new(field, n, gens, rule))
}

/// The object `T_n(X_1,…,X_n)` of `V(R_0, R_n)`: the elements of the tensor product over the inner
/// bases that commute with every inner base element, realized inside a fixed ambient tensor space.
#[derive(Clone, Debug)]
pub struct Tn {
    factors: Vec<Arc<DoubleModule>>,
    dims: Vec<usize>,
    quotient: QuotientSpace,
    subspace: Subspace,
    lift: ExactMatrix,
    module: Arc<DoubleModule>,
}

impl Tn {
    pub fn new(factors: &[Arc<DoubleModule>]) -> Result<Tn, TakeuchiError> {
        Self::with_rule(factors, PivotRule::Leftmost)
    }

    /// `T_0 = End(R)` realized on its own coordinates.
    pub fn unit(base: &Arc<FDAlgebra>) -> Tn {
        let m = DoubleModule::t0(base);
        let field = base.field();
        let d = m.dim();
        Tn {
            factors: Vec::new(),
            dims: vec![d],
            quotient: QuotientSpace::identity(field, d),
            subspace: Subspace::full(field, d),
            lift: ExactMatrix::identity(field, d),
            module: Arc::new(m),
        }
    }

    pub fn with_rule(factors: &[Arc<DoubleModule>], rule: PivotRule) -> Result<Tn, TakeuchiError> {
        let quotient = tensor_over(factors, rule)?;
        let field = factors[0].field();
        let dims: Vec<usize> = factors.iter().map(|x| x.dim()).collect();
        if factors.len() == 1 {
            let d = dims[0];
            return Ok(Tn {
                factors: factors.to_vec(),
                dims,
                quotient,
                subspace: Subspace::full(field, d),
                lift: ExactMatrix::identity(field, d),
                module: factors[0].clone(),
            });
        }
        let rels = quotient.relations().basis();
        let induced = |m: &ExactMatrix, what: &dyn Fn() -> String| -> Result<ExactMatrix, TakeuchiError> {
            if rels.iter().any(|r| !quotient.project(&m.apply(r)).is_empty()) {
                return Err(TakeuchiError::LiftDependence(what()));
            }
            Ok(&(quotient.projection() * m) * quotient.section())
        };
        let mut conds = Vec::new();
        for i in 0..factors.len() - 1 {
            for (j, (a, b)) in factors[i].ls().iter().zip(factors[i + 1].lro()).enumerate() {
                let k = &embed(field, &dims, i, a) - &embed(field, &dims, i + 1, b);
                conds.push(induced(&k, &|| format!("centralizer condition {j} between factors {i} and {}", i + 1))?);
            }
        }
        let qd = quotient.dim();
        let subspace = if conds.is_empty() {
            Subspace::full(field, qd)
        } else {
            kernel(&ExactMatrix::vstack(field, qd, &conds.iter().collect::<Vec<_>>()))
        };
        let inc = subspace.inclusion();
        let last = factors.len() - 1;
        let mut acts: Vec<Vec<ExactMatrix>> = Vec::new();
        for a in Action::ALL {
            let slot = if a.on_left_base() { 0 } else { last };
            let mut mats = Vec::new();
            for (j, m) in factors[slot].action(a).iter().enumerate() {
                let mq = induced(&embed(field, &dims, slot, m), &|| format!("{a}[{j}] on the tensor product"))?;
                let r = subspace.coordinates_of(&(&mq * &inc)).ok_or_else(|| {
                    TakeuchiError::NotInSubspace(format!("{a}[{j}] does not preserve the centralizer"))
                })?;
                mats.push(r);
            }
            acts.push(mats);
        }
        let mut acts = acts.into_iter();
        let module = DoubleModule::new(
            factors[0].left_base().clone(),
            factors[last].right_base().clone(),
            subspace.dim(),
            acts.next().unwrap(),
            acts.next().unwrap(),
            acts.next().unwrap(),
            acts.next().unwrap(),
        )?;
        let lift = quotient.section() * &inc;
        Ok(Tn { factors: factors.to_vec(), dims, quotient, subspace, lift, module: Arc::new(module) })
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Arc<DoubleModule>] {
        &self.factors
    }

    pub fn module(&self) -> &Arc<DoubleModule> {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Dimension of the plain tensor product (or of `End(R)` when `n = 0`).
    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    /// Factor dimensions of the ambient space (a single `d²` when `n = 0`).
    pub fn ambient_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn quotient(&self) -> &QuotientSpace {
        &self.quotient
    }

    /// The centralizer inside the quotient.
    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    /// Ambient representatives of the basis, one column each.
    pub fn lift(&self) -> &ExactMatrix {
        &self.lift
    }

    /// Coordinates of the class of an ambient vector, if the class lies in the centralizer.
    pub fn project(&self, v: &SparseVec) -> Option<SparseVec> {
        self.subspace.coordinates(&self.quotient.project(v))
    }

    pub fn project_columns(&self, m: &ExactMatrix) -> Result<ExactMatrix, TakeuchiError> {
        let cols: Option<Vec<SparseVec>> = m.columns().iter().map(|c| self.project(c)).collect();
        cols.map(|c| ExactMatrix::from_sparse_columns(m.field(), self.dim(), c))
            .ok_or_else(|| TakeuchiError::NotInSubspace("image leaves the centralizer".into()))
    }
}

pub fn tn(factors: &[Arc<DoubleModule>]) -> Result<Tn, TakeuchiError> {
    Tn::new(factors)
}

/// `X ×_S Y = T_2(X, Y)`.
pub fn takeuchi_product(x: &Arc<DoubleModule>, y: &Arc<DoubleModule>) -> Result<Tn, TakeuchiError> {
    Tn::new(&[x.clone(), y.clone()])
}

/// `T_n(f_1,…,f_n) : T_n(X) → T_n(Y)`; each `f_i` must be a module map.
pub fn tn_map(src: &Tn, dst: &Tn, maps: &[&ExactMatrix]) -> Result<ExactMatrix, TakeuchiError> {
    if maps.len() != src.arity() || maps.len() != dst.arity() {
        return Err(TakeuchiError::Arity(format!(
            "{} maps between T_{} and T_{}",
            maps.len(),
            src.arity(),
            dst.arity()
        )));
    }
    if maps.is_empty() {
        if src.module() != dst.module() {
            return Err(TakeuchiError::BaseMismatch("T_0 over different algebras".into()));
        }
        return Ok(ExactMatrix::identity(src.module().field(), src.dim()));
    }
    for (i, f) in maps.iter().enumerate() {
        src.factors[i]
            .is_module_map(&dst.factors[i], f)
            .map_err(|w| TakeuchiError::NotModuleMap(format!("map {i}: {w}")))?;
    }
    let field = src.module().field();
    let mut cols = Vec::with_capacity(src.dim());
    for c in src.lift().columns() {
        let mut acc = sparse::Accumulator::new(field, dst.ambient_dim());
        for (idx, x) in c {
            let digits = split_index(*idx, &src.dims);
            let images: Vec<SparseVec> = digits.iter().zip(maps).map(|(k, f)| f.column(*k).clone()).collect();
            add_kron(field, &mut acc, x, &images, &dst.dims);
        }
        cols.push(
            dst.project(&acc.take())
                .ok_or_else(|| TakeuchiError::NotInSubspace("tensor of maps leaves the centralizer".into()))?,
        );
    }
    Ok(ExactMatrix::from_sparse_columns(field, dst.dim(), cols))
}

/// `dim Hom_{S-S}(S, X⊗_S Y)`, computed as the solution space of `Φ(sx) = s·Φ(x)`, `Φ(xs) = Φ(x)·s`.
pub fn hom_dimension_oracle(x: &Arc<DoubleModule>, y: &Arc<DoubleModule>) -> Result<usize, TakeuchiError> {
    let q = tensor_over(&[x.clone(), y.clone()], PivotRule::Leftmost)?;
    let s_alg = x.right_base();
    let field = x.field();
    let dims = [x.dim(), y.dim()];
    let (dm, ds) = (q.dim(), s_alg.dim());
    let im = ExactMatrix::identity(field, dm);
    let is = ExactMatrix::identity(field, ds);
    let mut blocks = Vec::new();
    for j in 0..ds {
        let lam = &(q.projection() * &embed(field, &dims, 0, &x.ls()[j])) * q.section();
        let rho = &(q.projection() * &embed(field, &dims, 1, &y.lro()[j])) * q.section();
        let ej = s_alg.basis(j);
        // vec(AΦ) = (A⊗I) vec Φ, vec(ΦB) = (I⊗Bᵀ) vec Φ for row-major vec
        blocks.push(&lam.kron(&is) - &im.kron(&s_alg.left_mul(&ej).transpose()));
        blocks.push(&rho.kron(&is) - &im.kron(&s_alg.right_mul(&ej).transpose()));
    }
    let sys = ExactMatrix::vstack(field, dm * ds, &blocks.iter().collect::<Vec<_>>());
    Ok(kernel(&sys).dim())
}
