use std::fmt;
use std::sync::Arc;

use crate::exactlin::{ExactMatrix, SparseVec, Subspace};
use crate::report::{summarize, Report};

use super::{FDAlgebra, TakeuchiError};

/// The four action families of an object of `V(R, S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// right `R`-action (composes contravariantly)
    Lro,
    /// left `S`-action
    Ls,
    /// left `R`-action, the one tensored against on the left
    Rro,
    /// right `S`-action, the one tensored against on the right
    Rs,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::Lro, Action::Ls, Action::Rro, Action::Rs];

    /// Left actions satisfy `M(ab) = M(a)M(b)`, right ones `M(ab) = M(b)M(a)`.
    pub fn is_left(self) -> bool {
        matches!(self, Action::Rro | Action::Ls)
    }

    /// Whether the acting algebra is the left base `R`.
    pub fn on_left_base(self) -> bool {
        matches!(self, Action::Rro | Action::Lro)
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Lro => "lro",
            Action::Ls => "ls",
            Action::Rro => "rro",
            Action::Rs => "rs",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A bimodule over a single algebra, as left and right action matrices on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub base: Arc<FDAlgebra>,
    pub dim: usize,
    pub left: Vec<ExactMatrix>,
    pub right: Vec<ExactMatrix>,
}

impl Bimodule {
    pub fn regular(base: &Arc<FDAlgebra>) -> Bimodule {
        Bimodule { base: base.clone(), dim: base.dim(), left: base.left_regular(), right: base.right_regular() }
    }

    /// The one-dimensional bimodule on which `a` acts by the scalars `left_char(a)` and `right_char(a)`.
    pub fn character(base: &Arc<FDAlgebra>, left_char: &[crate::exactlin::Scalar], right_char: &[crate::exactlin::Scalar]) -> Bimodule {
        let f = base.field();
        let one_by_one = |x: &crate::exactlin::Scalar| {
            ExactMatrix::from_fn(f, 1, 1, |_, _| x.clone())
        };
        Bimodule {
            base: base.clone(),
            dim: 1,
            left: left_char.iter().map(one_by_one).collect(),
            right: right_char.iter().map(one_by_one).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Bimodule {
        Bimodule {
            base: self.base.clone(),
            dim: self.dim + other.dim,
            left: self.left.iter().zip(&other.left).map(|(a, b)| a.direct_sum(b)).collect(),
            right: self.right.iter().zip(&other.right).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }
}

/// An object of `V(R, S)`: a vector space with commuting left and right actions of `R` and `S`.
///
/// Matrices act on column vectors in a fixed basis, one matrix per basis element of the acting algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleModule {
    left_base: Arc<FDAlgebra>,
    right_base: Arc<FDAlgebra>,
    dim: usize,
    lro: Vec<ExactMatrix>,
    ls: Vec<ExactMatrix>,
    rro: Vec<ExactMatrix>,
    rs: Vec<ExactMatrix>,
}

impl DoubleModule {
    /// Checks shapes only; use [`DoubleModule::validate`] for the module axioms.
    pub fn new(
        left_base: Arc<FDAlgebra>,
        right_base: Arc<FDAlgebra>,
        dim: usize,
        lro: Vec<ExactMatrix>,
        ls: Vec<ExactMatrix>,
        rro: Vec<ExactMatrix>,
        rs: Vec<ExactMatrix>,
    ) -> Result<Self, TakeuchiError> {
        let field = left_base.field();
        if right_base.field() != field {
            return Err(TakeuchiError::Shape("base algebras live over different fields".into()));
        }
        for (name, mats, n) in [
            ("lro", &lro, left_base.dim()),
            ("ls", &ls, right_base.dim()),
            ("rro", &rro, left_base.dim()),
            ("rs", &rs, right_base.dim()),
        ] {
            if mats.len() != n {
                return Err(TakeuchiError::Shape(format!("{name} has {} matrices, expected {n}", mats.len())));
            }
            if let Some(m) = mats.iter().find(|m| m.shape() != (dim, dim) || m.field() != field) {
                return Err(TakeuchiError::Shape(format!("{name} matrix of shape {:?} on a {dim}-dimensional space", m.shape())));
            }
        }
        Ok(DoubleModule { left_base, right_base, dim, lro, ls, rro, rs })
    }

    pub fn left_base(&self) -> &Arc<FDAlgebra> {
        &self.left_base
    }

    pub fn right_base(&self) -> &Arc<FDAlgebra> {
        &self.right_base
    }

    pub fn field(&self) -> crate::exactlin::FieldSpec {
        self.left_base.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, a: Action) -> &[ExactMatrix] {
        match a {
            Action::Lro => &self.lro,
            Action::Ls => &self.ls,
            Action::Rro => &self.rro,
            Action::Rs => &self.rs,
        }
    }

    pub fn lro(&self) -> &[ExactMatrix] {
        &self.lro
    }

    pub fn ls(&self) -> &[ExactMatrix] {
        &self.ls
    }

    pub fn rro(&self) -> &[ExactMatrix] {
        &self.rro
    }

    pub fn rs(&self) -> &[ExactMatrix] {
        &self.rs
    }

    fn base_of(&self, a: Action) -> &FDAlgebra {
        if a.on_left_base() { &self.left_base } else { &self.right_base }
    }

    /// The operator of an arbitrary algebra element `Σ r_i e_i`.
    pub fn act(&self, a: Action, r: &SparseVec) -> ExactMatrix {
        let f = self.field();
        let mut out = ExactMatrix::zeros(f, self.dim, self.dim);
        for (i, c) in r {
            out = &out + &self.action(a)[*i].scale(c);
        }
        out
    }

    /// Unitality and multiplicativity of each family, and pairwise commutation of all four.
    pub fn validate(&self) -> Report {
        let mut r = Report::new("double module");
        let id = ExactMatrix::identity(self.field(), self.dim);
        for a in Action::ALL {
            let base = self.base_of(a);
            let mats = self.action(a);
            r.check(format!("{a}.unital"), if self.act(a, base.unit()) == id { Ok(()) } else { Err(format!("{a}(1) ≠ 1")) });
            let mut bad = Vec::new();
            for i in 0..base.dim() {
                for j in 0..base.dim() {
                    let lhs = self.act(a, base.basis_product(i, j));
                    let rhs = if a.is_left() { &mats[i] * &mats[j] } else { &mats[j] * &mats[i] };
                    if lhs != rhs {
                        bad.push(format!("({i},{j})"));
                    }
                }
            }
            r.check(
                format!("{a}.multiplicative"),
                if bad.is_empty() { Ok(()) } else { Err(format!("{a}(e_i e_j) wrong at {}", summarize(&bad, 6))) },
            );
        }
        for (k, a) in Action::ALL.iter().enumerate() {
            for b in &Action::ALL[k + 1..] {
                let mut bad = Vec::new();
                for (i, x) in self.action(*a).iter().enumerate() {
                    for (j, y) in self.action(*b).iter().enumerate() {
                        if x * y != y * x {
                            bad.push(format!("({i},{j})"));
                        }
                    }
                }
                r.check(
                    format!("{a}_{b}.commute"),
                    if bad.is_empty() { Ok(()) } else { Err(format!("{a}[i] {b}[j] ≠ {b}[j] {a}[i] at {}", summarize(&bad, 6))) },
                );
            }
        }
        r
    }

    /// The object `T_0 = End(R)` of `V(R, R)`, basis `E_ab` (sending `e_b` to `e_a`) at index `a·d + b`.
    pub fn t0(base: &Arc<FDAlgebra>) -> DoubleModule {
        let f = base.field();
        let d = base.dim();
        let id = ExactMatrix::identity(f, d);
        let lefts = base.left_regular();
        let rights = base.right_regular();
        // φ ↦ Mφ is M⊗I, φ ↦ φM is I⊗Mᵀ
        let post = |m: &ExactMatrix| m.kron(&id);
        let pre = |m: &ExactMatrix| id.kron(&m.transpose());
        DoubleModule {
            left_base: base.clone(),
            right_base: base.clone(),
            dim: d * d,
            rro: lefts.iter().map(post).collect(),
            rs: rights.iter().map(post).collect(),
            lro: lefts.iter().map(pre).collect(),
            ls: rights.iter().map(pre).collect(),
        }
    }

    /// An algebra `A` with an algebra map `R⊗S° → A`, given on `e_i⊗f_j` at index `i·dim S + j`.
    ///
    /// With `s(r) = anchor(r⊗1)` and `t(x) = anchor(1⊗x)`: `rro = L_s`, `rs = L_t`, `lro = R_s`, `ls = R_t`.
    pub fn from_anchor(
        total: &FDAlgebra,
        left_base: &Arc<FDAlgebra>,
        right_base: &Arc<FDAlgebra>,
        anchor: &ExactMatrix,
    ) -> Result<DoubleModule, TakeuchiError> {
        let (dr, ds) = (left_base.dim(), right_base.dim());
        if anchor.shape() != (total.dim(), dr * ds) {
            return Err(TakeuchiError::Shape(format!(
                "anchor has shape {:?}, expected {}x{}",
                anchor.shape(),
                total.dim(),
                dr * ds
            )));
        }
        let s_img = |i: usize| {
            let mut acc = crate::exactlin::sparse::Accumulator::new(total.field(), total.dim());
            for (j, c) in right_base.unit() {
                acc.add_scaled(c, anchor.column(i * ds + j));
            }
            acc.take()
        };
        let t_img = |j: usize| {
            let mut acc = crate::exactlin::sparse::Accumulator::new(total.field(), total.dim());
            for (i, c) in left_base.unit() {
                acc.add_scaled(c, anchor.column(i * ds + j));
            }
            acc.take()
        };
        let s: Vec<SparseVec> = (0..dr).map(s_img).collect();
        let t: Vec<SparseVec> = (0..ds).map(t_img).collect();
        DoubleModule::new(
            left_base.clone(),
            right_base.clone(),
            total.dim(),
            s.iter().map(|x| total.right_mul(x)).collect(),
            t.iter().map(|x| total.right_mul(x)).collect(),
            s.iter().map(|x| total.left_mul(x)).collect(),
            t.iter().map(|x| total.left_mul(x)).collect(),
        )
    }

    /// `U⊗W` for an `R`-bimodule `U` and an `S`-bimodule `W`: `R` acts on `U`, `S` on `W`.
    pub fn from_bimodules(u: &Bimodule, w: &Bimodule) -> DoubleModule {
        let f = u.base.field();
        let iu = ExactMatrix::identity(f, u.dim);
        let iw = ExactMatrix::identity(f, w.dim);
        DoubleModule {
            left_base: u.base.clone(),
            right_base: w.base.clone(),
            dim: u.dim * w.dim,
            rro: u.left.iter().map(|m| m.kron(&iw)).collect(),
            lro: u.right.iter().map(|m| m.kron(&iw)).collect(),
            ls: w.left.iter().map(|m| iu.kron(m)).collect(),
            rs: w.right.iter().map(|m| iu.kron(m)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &DoubleModule) -> Result<DoubleModule, TakeuchiError> {
        if self.left_base != other.left_base || self.right_base != other.right_base {
            return Err(TakeuchiError::BaseMismatch("direct sum of modules over different bases".into()));
        }
        let sum = |a: &[ExactMatrix], b: &[ExactMatrix]| a.iter().zip(b).map(|(x, y)| x.direct_sum(y)).collect();
        Ok(DoubleModule {
            left_base: self.left_base.clone(),
            right_base: self.right_base.clone(),
            dim: self.dim + other.dim,
            lro: sum(&self.lro, &other.lro),
            ls: sum(&self.ls, &other.ls),
            rro: sum(&self.rro, &other.rro),
            rs: sum(&self.rs, &other.rs),
        })
    }

    /// Transport along the change of basis `p` (columns are the new basis): `M ↦ p⁻¹ M p`.
    pub fn conjugate(&self, p: &ExactMatrix) -> Result<DoubleModule, TakeuchiError> {
        let inv = p.inverse().ok_or_else(|| TakeuchiError::Shape("change of basis is singular".into()))?;
        let conj = |ms: &[ExactMatrix]| ms.iter().map(|m| &(&inv * m) * p).collect();
        Ok(DoubleModule {
            left_base: self.left_base.clone(),
            right_base: self.right_base.clone(),
            dim: self.dim,
            lro: conj(&self.lro),
            ls: conj(&self.ls),
            rro: conj(&self.rro),
            rs: conj(&self.rs),
        })
    }

    /// The submodule on an invariant subspace, in the subspace's echelon basis.
    pub fn restrict(&self, sub: &Subspace) -> Result<DoubleModule, TakeuchiError> {
        let inc = sub.inclusion();
        let restrict_all = |a: Action| -> Result<Vec<ExactMatrix>, TakeuchiError> {
            self.action(a)
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    sub.coordinates_of(&(m * &inc))
                        .ok_or_else(|| TakeuchiError::NotInSubspace(format!("{a}[{i}] does not preserve the subspace")))
                })
                .collect()
        };
        Ok(DoubleModule {
            left_base: self.left_base.clone(),
            right_base: self.right_base.clone(),
            dim: sub.dim(),
            lro: restrict_all(Action::Lro)?,
            ls: restrict_all(Action::Ls)?,
            rro: restrict_all(Action::Rro)?,
            rs: restrict_all(Action::Rs)?,
        })
    }

    /// Checks `f : self → other` intertwines all four families; the witness names the first failure.
    pub fn is_module_map(&self, other: &DoubleModule, f: &ExactMatrix) -> Result<(), String> {
        if self.left_base != other.left_base || self.right_base != other.right_base {
            return Err("modules live over different bases".into());
        }
        if f.shape() != (other.dim, self.dim) {
            return Err(format!("map has shape {:?}, expected {}x{}", f.shape(), other.dim, self.dim));
        }
        for a in Action::ALL {
            for (i, (x, y)) in self.action(a).iter().zip(other.action(a)).enumerate() {
                if f * x != y * f {
                    return Err(format!("does not commute with {a}[{i}]"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    #[test]
    fn t0_is_a_double_module() {
        let q = FieldSpec::Rationals;
        for r in [FDAlgebra::split(q, 2), FDAlgebra::truncated_polynomial(q, 2), FDAlgebra::matrix_algebra(q, 2)] {
            let t0 = DoubleModule::t0(&Arc::new(r));
            let rep = t0.validate();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn enveloping_anchor_gives_double_module() {
        let q = FieldSpec::Rationals;
        let r = Arc::new(FDAlgebra::truncated_polynomial(q, 2));
        let env = r.enveloping();
        let anchor = ExactMatrix::identity(q, env.dim());
        let m = DoubleModule::from_anchor(&env, &r, &r, &anchor).unwrap();
        let rep = m.validate();
        assert!(rep.passed(), "{rep}");
    }

    #[test]
    fn broken_commutation_is_reported() {
        let q = FieldSpec::Rationals;
        let r = Arc::new(FDAlgebra::truncated_polynomial(q, 2));
        let mut m = DoubleModule::from_bimodules(&Bimodule::regular(&r), &Bimodule::regular(&r));
        m.rs[1] = m.ls[1].transpose();
        let rep = m.validate();
        assert!(!rep.passed());
        assert!(rep.failures().any(|c| c.name == "ls_rs.commute"));
    }
}
