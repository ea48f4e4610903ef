use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactlin::{equalizer, kernel, split_idempotent, ExactMatrix, Splitting, Subspace};
use crate::report::{summarize, Report};
use crate::takeuchi::{Bimodule, DoubleModule, FDAlgebra};

use super::{idempotent_a, FrobeniusMonoid, SFComodule, WeakError};

/// Small `C`-bimodules: `C` itself and, for `C = k^n`, every character pair.
pub fn bimodule_catalog(c: &FrobeniusMonoid) -> Vec<Bimodule> {
    let f = c.field();
    let base = c.carrier();
    let mut out = vec![Bimodule::regular(base)];
    let n = c.dim();
    if **base == FDAlgebra::split(f, n) {
        let chi = |i: usize| (0..n).map(|k| if k == i { f.one() } else { f.zero() }).collect::<Vec<_>>();
        for i in 0..n {
            for j in 0..n {
                out.push(Bimodule::character(base, &chi(i), &chi(j)));
            }
        }
    }
    out
}

/// Bimodule maps `U → V`, as a basis of `dim V × dim U` matrices.
pub fn bimodule_homs(u: &Bimodule, v: &Bimodule) -> Vec<ExactMatrix> {
    let f = u.base.field();
    let (du, dv) = (u.dim, v.dim);
    let (iu, iv) = (ExactMatrix::identity(f, du), ExactMatrix::identity(f, dv));
    // row-major vec(h): h_ij at i·du + j, so vec(Ah) = (A⊗1)vec(h) and vec(hB) = (1⊗Bᵀ)vec(h)
    let blocks: Vec<ExactMatrix> = u
        .left
        .iter()
        .zip(&v.left)
        .chain(u.right.iter().zip(&v.right))
        .map(|(a_u, a_v)| &a_v.kron(&iu) - &iv.kron(&a_u.transpose()))
        .collect();
    let refs: Vec<&ExactMatrix> = blocks.iter().collect();
    let system = ExactMatrix::vstack(f, du * dv, &refs);
    kernel(&system)
        .basis()
        .iter()
        .map(|b| ExactMatrix::from_fn(f, dv, du, |i, j| crate::exactlin::sparse::get(b, i * du + j).cloned().unwrap_or_else(|| f.zero())))
        .collect()
}

/// `X ⊗_C −` on objects, through the split idempotent `a`.
struct Applied {
    split: Splitting,
}

fn apply_to(x: &SFComodule, y: &SFComodule) -> Result<Applied, WeakError> {
    Ok(Applied { split: split_idempotent(&idempotent_a(x, y)?)? })
}

/// `X ⊗_C h` for `h : Y → Y'`.
fn apply_map(x: &SFComodule, src: &Applied, dst: &Applied, h: &ExactMatrix) -> ExactMatrix {
    let ix = ExactMatrix::identity(h.field(), x.dim());
    &(&dst.split.projection * &ix.kron(h)) * &src.split.inclusion
}

fn random_sum(rng: &mut impl Rng, catalog: &[Bimodule], max_parts: usize) -> Bimodule {
    let parts = rng.gen_range(1..=max_parts);
    let mut m = catalog.choose(rng).expect("catalog is nonempty").clone();
    for _ in 1..parts {
        m = m.direct_sum(catalog.choose(rng).expect("catalog is nonempty"));
    }
    m
}

fn random_hom(rng: &mut impl Rng, basis: &[ExactMatrix], rows: usize, cols: usize, field: crate::exactlin::FieldSpec) -> ExactMatrix {
    let mut h = ExactMatrix::zeros(field, rows, cols);
    for b in basis {
        let c = field.from_i64(rng.gen_range(-2..=2));
        h = &h + &b.scale(&c);
    }
    h
}

/// One coreflexive pair `f = (1, u), g = (1, v) : Y ⇉ Y ⊕ W` with common retraction `r`, and whether
/// `X ⊗_C −` carries its equalizer to the equalizer of the image pair.
pub struct PreservationTrial {
    pub dim_x: usize,
    pub dim_y: usize,
    pub dim_w: usize,
    pub dim_equalizer: usize,
    pub dim_image_equalizer: usize,
    pub constant: bool,
    pub outcome: Result<(), String>,
}

fn trial(x: &SFComodule, ym: &Bimodule, wm: &Bimodule, u: &ExactMatrix, v: &ExactMatrix, ground: &Arc<FrobeniusMonoid>) -> Result<PreservationTrial, WeakError> {
    let f = x.right().field();
    let k = Bimodule::regular(ground.carrier());
    let c = x.right().clone();
    let (dy, dw) = (ym.dim, wm.dim);
    let y = SFComodule::new(c.clone(), ground.clone(), Arc::new(DoubleModule::from_bimodules(ym, &k)))?;
    let zm = Arc::new(DoubleModule::from_bimodules(&ym.direct_sum(wm), &k));
    let z = SFComodule::new(c.clone(), ground.clone(), zm.clone())?;
    let iy = ExactMatrix::identity(f, dy);
    let fmap = ExactMatrix::vstack(f, dy, &[&iy, u]);
    let gmap = ExactMatrix::vstack(f, dy, &[&iy, v]);
    let r = ExactMatrix::hstack(f, dy, &[&iy, &ExactMatrix::zeros(f, dy, dw)]);

    let mut problems = Vec::new();
    for (name, m) in [("f", &fmap), ("g", &gmap)] {
        if let Err(e) = y.module().is_module_map(&zm, m) {
            problems.push(format!("{name} is not a module map: {e}"));
        }
    }
    if !(&r * &fmap).is_identity() || !(&r * &gmap).is_identity() {
        problems.push("r is not a common retraction".to_string());
    }

    let eq: Subspace = equalizer(&fmap, &gmap)?;
    let iota = eq.inclusion();
    let em = Arc::new(y.module().restrict(&eq)?);
    let e = SFComodule::new(c, ground.clone(), em)?;
    let (fe, fy, fz) = (apply_to(x, &e)?, apply_to(x, &y)?, apply_to(x, &z)?);
    let f_iota = apply_map(x, &fe, &fy, &iota);
    let image_eq = equalizer(&apply_map(x, &fy, &fz, &fmap), &apply_map(x, &fy, &fz, &gmap))?;
    if f_iota.rank() != fe.split.dim {
        problems.push(format!("X⊗ι has rank {} on a space of dim {}", f_iota.rank(), fe.split.dim));
    }
    if Subspace::column_space(&f_iota) != image_eq {
        problems.push(format!("image of X⊗ι has dim {}, equalizer of the image pair has dim {}", f_iota.rank(), image_eq.dim()));
    }
    Ok(PreservationTrial {
        dim_x: x.dim(),
        dim_y: dy,
        dim_w: dw,
        dim_equalizer: eq.dim(),
        dim_image_equalizer: image_eq.dim(),
        constant: u == v,
        outcome: if problems.is_empty() { Ok(()) } else { Err(problems.join("; ")) },
    })
}

/// A constant coreflexive pair followed by `trials` random ones, pushed through `X ⊗_C −` for random `X`.
pub fn check_reflexive_preservation(c: &Arc<FrobeniusMonoid>, rng: &mut impl Rng, trials: usize) -> Result<Report, WeakError> {
    let mut r = Report::new("X ⊗_C − preserves coreflexive equalizers");
    let f = c.field();
    let ground = Arc::new(FrobeniusMonoid::ground(f));
    let k = Bimodule::regular(ground.carrier());
    let catalog = bimodule_catalog(c);
    let mut failures = Vec::new();
    let (mut constant, mut proper) = (0usize, 0usize);
    for t in 0..=trials {
        let xm = catalog.choose(rng).expect("catalog is nonempty");
        let x = SFComodule::new(ground.clone(), c.clone(), Arc::new(DoubleModule::from_bimodules(&k, xm)))?;
        let ym = random_sum(rng, &catalog, 2);
        let wm = random_sum(rng, &catalog, 2);
        let homs = bimodule_homs(&ym, &wm);
        let u = random_hom(rng, &homs, wm.dim, ym.dim, f);
        let v = if t == 0 { u.clone() } else { random_hom(rng, &homs, wm.dim, ym.dim, f) };
        let out = trial(&x, &ym, &wm, &u, &v, &ground)?;
        if out.constant {
            constant += 1;
        } else if out.dim_equalizer < out.dim_y {
            proper += 1;
        }
        if let Err(e) = out.outcome {
            failures.push(format!("trial {t}: {e}"));
        }
    }
    r.stat("diagrams", trials + 1);
    r.stat("constant_pairs", constant);
    r.stat("proper_equalizers", proper);
    r.check("preserved", if failures.is_empty() { Ok(()) } else { Err(summarize(&failures, 3)) });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    const Q: crate::exactlin::FieldSpec = crate::exactlin::FieldSpec::Rationals;

    #[test]
    fn homs_between_characters() {
        let c = FrobeniusMonoid::split(Q, 2);
        let cat = bimodule_catalog(&c);
        // regular, then (0,0), (0,1), (1,0), (1,1)
        assert_eq!(cat.len(), 5);
        assert_eq!(bimodule_homs(&cat[1], &cat[1]).len(), 1);
        assert_eq!(bimodule_homs(&cat[1], &cat[2]).len(), 0);
        assert_eq!(bimodule_homs(&cat[0], &cat[1]).len(), 1);
        let m2 = FrobeniusMonoid::matrix(Q, 2).unwrap();
        let reg = &bimodule_catalog(&m2)[0];
        assert_eq!(bimodule_homs(reg, reg).len(), 1);
    }

    #[test]
    fn random_pairs_are_preserved() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for c in [FrobeniusMonoid::ground(Q), FrobeniusMonoid::split(Q, 2), FrobeniusMonoid::matrix(Q, 2).unwrap()] {
            let r = check_reflexive_preservation(&Arc::new(c), &mut rng, 8).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.stats["constant_pairs"].as_u64().unwrap() >= 1);
            assert!(r.stats["proper_equalizers"].as_u64().unwrap() > 0, "{r}");
        }
    }
}
