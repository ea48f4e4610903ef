use std::sync::Arc;

use crate::exactlin::{sparse, ExactMatrix, FieldSpec, SparseVec};
use crate::report::Report;
use crate::takeuchi::FDAlgebra;

use super::WeakError;

/// A monoid `C` with a comultiplication `δ : C → C⊗C` and counit `ε : C → k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMonoid {
    carrier: Arc<FDAlgebra>,
    /// `dim² × dim`
    delta: ExactMatrix,
    /// `1 × dim`
    epsilon: ExactMatrix,
}

impl FrobeniusMonoid {
    pub fn new(carrier: Arc<FDAlgebra>, delta: ExactMatrix, epsilon: ExactMatrix) -> Result<Self, WeakError> {
        let n = carrier.dim();
        if delta.shape() != (n * n, n) || epsilon.shape() != (1, n) {
            return Err(WeakError::Shape(format!(
                "δ is {:?} and ε is {:?} for a {n}-dimensional carrier",
                delta.shape(),
                epsilon.shape()
            )));
        }
        Ok(FrobeniusMonoid { carrier, delta, epsilon })
    }

    pub fn ground(field: FieldSpec) -> Self {
        Self::split(field, 1)
    }

    /// `k^n` with `δ(e_i) = e_i⊗e_i` and `ε(e_i) = 1`.
    pub fn split(field: FieldSpec, n: usize) -> Self {
        let delta = ExactMatrix::from_sparse_columns(field, n * n, (0..n).map(|i| sparse::unit(i * n + i, field)).collect());
        let epsilon = ExactMatrix::from_sparse_columns(field, 1, (0..n).map(|_| sparse::unit(0, field)).collect());
        FrobeniusMonoid { carrier: Arc::new(FDAlgebra::split(field, n)), delta, epsilon }
    }

    /// `M_n(k)` with `δ(E_ij) = (1/n) Σ_k E_ik⊗E_kj` and `ε = n·trace`.
    pub fn matrix(field: FieldSpec, n: usize) -> Result<Self, WeakError> {
        let inv = field
            .inv(&field.from_i64(n as i64))
            .ok_or_else(|| WeakError::NotSeparable(format!("{n} is not invertible in {field}")))?;
        let d = n * n;
        let mut delta_cols = Vec::with_capacity(d);
        let mut eps_cols = Vec::with_capacity(d);
        for i in 0..n {
            for j in 0..n {
                let mut col: SparseVec = (0..n).map(|k| ((i * n + k) * d + k * n + j, inv.clone())).collect();
                col.sort_by_key(|(x, _)| *x);
                delta_cols.push(col);
                eps_cols.push(if i == j { vec![(0, field.from_i64(n as i64))] } else { Vec::new() });
            }
        }
        Ok(FrobeniusMonoid {
            carrier: Arc::new(FDAlgebra::matrix_algebra(field, n)),
            delta: ExactMatrix::from_sparse_columns(field, d * d, delta_cols),
            epsilon: ExactMatrix::from_sparse_columns(field, 1, eps_cols),
        })
    }

    /// The structure above on `base`, when `base` is literally `k^n` or `M_n(k)`.
    pub fn standard(base: &FDAlgebra) -> Option<Self> {
        let (f, n) = (base.field(), base.dim());
        if *base == FDAlgebra::split(f, n) {
            return Some(Self::split(f, n));
        }
        let m = (1..=n).find(|m| m * m == n)?;
        (*base == FDAlgebra::matrix_algebra(f, m)).then(|| Self::matrix(f, m).ok()).flatten()
    }

    pub fn field(&self) -> FieldSpec {
        self.carrier.field()
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
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

    /// `δ(1)` in `C⊗C`, the unit of the self-duality.
    pub fn copairing(&self) -> SparseVec {
        self.delta.apply(self.carrier.unit())
    }

    /// `ε∘μ : C⊗C → k`, the counit of the self-duality.
    pub fn pairing(&self) -> ExactMatrix {
        &self.epsilon * &self.carrier.mult_matrix()
    }

    /// `δ(1)` as coefficients `c_jk` of `e_j⊗e_k`.
    pub fn copairing_terms(&self) -> Vec<(usize, usize, crate::exactlin::Scalar)> {
        let n = self.dim();
        self.copairing().into_iter().map(|(i, c)| (i / n, i % n, c)).collect()
    }
}

fn agree(lhs: &ExactMatrix, rhs: &ExactMatrix, what: &str) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((i, j)) => Err(format!("{what} differ at ({i},{j})")),
    }
}

/// Monoid, comonoid, Frobenius law, separability `μδ = 1`, and the snake identities of the
/// self-duality with unit `δη` and counit `εμ`.
pub fn check_separable_frobenius(c: &FrobeniusMonoid) -> Report {
    let mut r = Report::new("separable frobenius");
    let f = c.field();
    let n = c.dim();
    let id = ExactMatrix::identity(f, n);
    let mu = c.carrier.mult_matrix();
    let d = &c.delta;
    let alg = c.carrier.validate();
    r.check("monoid", if alg.passed() { Ok(()) } else { Err(alg.to_string()) });
    r.check("comonoid.coassociative", agree(&(&id.kron(d) * d), &(&d.kron(&id) * d), "(1⊗δ)δ and (δ⊗1)δ"));
    r.check("comonoid.counit_left", agree(&(&c.epsilon.kron(&id) * d), &id, "(ε⊗1)δ and 1"));
    r.check("comonoid.counit_right", agree(&(&id.kron(&c.epsilon) * d), &id, "(1⊗ε)δ and 1"));
    let dm = d * &mu;
    r.check("frobenius.left", agree(&(&id.kron(&mu) * &d.kron(&id)), &dm, "(1⊗μ)(δ⊗1) and δμ"));
    r.check("frobenius.right", agree(&(&mu.kron(&id) * &id.kron(d)), &dm, "(μ⊗1)(1⊗δ) and δμ"));
    r.check("separable", agree(&(&mu * d), &id, "μδ and 1"));
    let unit = ExactMatrix::from_sparse_columns(f, n * n, vec![c.copairing()]);
    let counit = c.pairing();
    r.check("snake.left", agree(&(&id.kron(&counit) * &unit.kron(&id)), &id, "(1⊗εμ)(δη⊗1) and 1"));
    r.check("snake.right", agree(&(&counit.kron(&id) * &id.kron(&unit)), &id, "(εμ⊗1)(1⊗δη) and 1"));
    r.stat("dim", n);
    r
}

/// `Hom(X⊗C, Y) ≅ Hom(X, Y⊗C)` through the self-duality, and back.
pub fn transpose_to(c: &FrobeniusMonoid, f: &ExactMatrix, dim_x: usize) -> ExactMatrix {
    let unit = ExactMatrix::from_sparse_columns(c.field(), c.dim() * c.dim(), vec![c.copairing()]);
    let ix = ExactMatrix::identity(c.field(), dim_x);
    let ic = ExactMatrix::identity(c.field(), c.dim());
    // x ↦ Σ f(x⊗e_j)⊗e_k c_jk
    &f.kron(&ic) * &ix.kron(&unit)
}

pub fn transpose_from(c: &FrobeniusMonoid, g: &ExactMatrix, dim_y: usize) -> ExactMatrix {
    let iy = ExactMatrix::identity(c.field(), dim_y);
    &iy.kron(&c.pairing()) * &g.kron(&ExactMatrix::identity(c.field(), c.dim()))
}

/// Round trips random maps `X⊗C → Y` and `X → Y⊗C` through the duality.
pub fn check_cohom_round_trip(c: &FrobeniusMonoid, rng: &mut impl rand::Rng, trials: usize) -> Report {
    let mut r = Report::new("coHom(C, X) = C⊗X");
    let field = c.field();
    let n = c.dim();
    let mut failures = Vec::new();
    for t in 0..trials {
        let (dx, dy) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let f = random_matrix(rng, field, dy, dx * n);
        let g = random_matrix(rng, field, dy * n, dx);
        if transpose_from(c, &transpose_to(c, &f, dx), dy) != f || transpose_to(c, &transpose_from(c, &g, dy), dx) != g {
            failures.push(t);
        }
    }
    r.stat("trials", trials);
    r.check(
        "round_trip",
        if failures.is_empty() { Ok(()) } else { Err(format!("trials {}", crate::report::summarize(&failures, 5))) },
    );
    r
}

pub(crate) fn random_matrix(rng: &mut impl rand::Rng, field: FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(-3..=3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn standard_bases_are_separable_frobenius() {
        for c in [FrobeniusMonoid::ground(Q), FrobeniusMonoid::split(Q, 2), FrobeniusMonoid::split(Q, 3), FrobeniusMonoid::matrix(Q, 2).unwrap()] {
            let r = check_separable_frobenius(&c);
            assert!(r.passed(), "{r}");
        }
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(check_separable_frobenius(&FrobeniusMonoid::matrix(f7, 2).unwrap()).passed());
    }

    #[test]
    fn unnormalized_matrix_comultiplication_is_not_separable() {
        let m = FrobeniusMonoid::matrix(Q, 2).unwrap();
        let two = Q.from_i64(2);
        let bad = FrobeniusMonoid::new(m.carrier().clone(), m.delta().scale(&two), m.epsilon().scale(&Q.from_ratio(1, 2))).unwrap();
        let r = check_separable_frobenius(&bad);
        assert_eq!(r.status_of("separable"), Some(crate::report::Status::Fail));
        assert_eq!(r.status_of("frobenius.left"), Some(crate::report::Status::Pass));
    }

    #[test]
    fn cohom_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = check_cohom_round_trip(&FrobeniusMonoid::matrix(Q, 2).unwrap(), &mut rng, 10);
        assert!(r.passed(), "{r}");
    }
}
