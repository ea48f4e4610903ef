//! Seeded generators of random instances.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactlin::{ExactMatrix, FieldSpec, Scalar};
use crate::fincat::{validate_category, Element, FinCategory, Profunctor};
use crate::takeuchi::{Bimodule, DoubleModule, FDAlgebra};

/// The generator for trial `trial` of a campaign seeded with `seed`: one ChaCha stream per trial.
pub fn trial_rng(seed: u64, trial: usize) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

#[derive(Clone, Copy, Debug)]
pub struct CatLimits {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_elements: usize,
}

impl Default for CatLimits {
    fn default() -> Self {
        CatLimits { max_objects: 4, max_morphisms: 10, max_elements: 6 }
    }
}

fn random_monoid(rng: &mut impl Rng, size: usize) -> FinCategory {
    for _ in 0..200 {
        let table: Vec<Vec<usize>> = (0..size)
            .map(|a| (0..size).map(|b| if a == 0 { b } else if b == 0 { a } else { rng.gen_range(0..size) }).collect())
            .collect();
        let assoc = (0..size).all(|a| {
            (0..size).all(|b| (0..size).all(|c| table[table[a][b]][c] == table[a][table[b][c]]))
        });
        if assoc {
            return FinCategory::from_monoid(&table).expect("table is well formed");
        }
    }
    FinCategory::cyclic_group(size)
}

fn random_dag(rng: &mut impl Rng, limits: CatLimits) -> Option<FinCategory> {
    let n = rng.gen_range(1..=limits.max_objects);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.45) {
                edges.push((i, j));
                if rng.gen_bool(0.15) {
                    edges.push((i, j));
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    let c = FinCategory::free_on_dag(n, &edges).ok()?;
    (c.num_morphisms() <= limits.max_morphisms).then_some(c)
}

fn cyclic_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

/// Free categories on random acyclic graphs, random monoids, connected groupoids, and
/// coproducts of these, within the given limits.
pub fn random_category(rng: &mut impl Rng, limits: CatLimits) -> FinCategory {
    loop {
        let c = match rng.gen_range(0..5) {
            0 | 1 => match random_dag(rng, limits) {
                Some(c) => c,
                None => continue,
            },
            2 => {
                let size = rng.gen_range(2..=3);
                random_monoid(rng, size)
            }
            3 => {
                let n = rng.gen_range(1..=2);
                let k = rng.gen_range(1..=2);
                FinCategory::groupoid(n, &cyclic_table(k))
            }
            _ => {
                let a = random_monoid(rng, 2);
                let b = match random_dag(rng, CatLimits { max_objects: limits.max_objects.saturating_sub(1).max(1), ..limits }) {
                    Some(b) => b,
                    None => continue,
                };
                a.coproduct(&b)
            }
        };
        if c.num_objects() <= limits.max_objects && c.num_morphisms() <= limits.max_morphisms {
            debug_assert!(validate_category(&c).passed());
            return c;
        }
    }
}

/// Random groupoid with at most `max_objects` objects and `max_morphisms` arrows.
pub fn random_groupoid(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> FinCategory {
    loop {
        let mut c: Option<FinCategory> = None;
        for _ in 0..rng.gen_range(1..=2) {
            let n = rng.gen_range(1..=max_objects);
            let k = rng.gen_range(1..=3);
            let g = FinCategory::groupoid(n, &cyclic_table(k));
            c = Some(match c {
                None => g,
                Some(c) => c.coproduct(&g),
            });
        }
        let c = c.unwrap();
        if c.num_objects() <= max_objects && c.num_morphisms() <= max_morphisms {
            return c;
        }
    }
}

/// A quotient of a sum of representables `hom(−, c) × hom(d, −)` by a random congruence.
pub fn random_profunctor(
    rng: &mut impl Rng,
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    max_elements: usize,
) -> Profunctor {
    for _ in 0..100 {
        let gens: Vec<(usize, usize)> = (0..rng.gen_range(1..=2))
            .map(|_| (rng.gen_range(0..c.num_objects()), rng.gen_range(0..d.num_objects())))
            .collect();
        // free elements (u, k, v) with u : c' → c_k, v : d_k → d'
        let mut free: Vec<(usize, usize, usize)> = Vec::new();
        for (k, &(ck, dk)) in gens.iter().enumerate() {
            for u in 0..c.num_morphisms() {
                if c.tgt(u) != ck {
                    continue;
                }
                for v in 0..d.num_morphisms() {
                    if d.src(v) == dk {
                        free.push((u, k, v));
                    }
                }
            }
        }
        if free.len() > 3 * max_elements {
            continue;
        }
        let n = free.len();
        let pos = |t: (usize, usize, usize)| free.iter().position(|x| *x == t).expect("closed under actions");
        let left = |w: usize, i: usize| {
            let (u, k, v) = free[i];
            (c.tgt(w) == c.src(u)).then(|| pos((c.comp(u, w), k, v)))
        };
        let right = |i: usize, w: usize| {
            let (u, k, v) = free[i];
            (d.src(w) == d.tgt(v)).then(|| pos((u, k, d.comp(w, v))))
        };
        let ends = |i: usize| (c.src(free[i].0), d.tgt(free[i].2));
        let mut uf = UnionFind::<usize>::new(n);
        for _ in 0..rng.gen_range(0..=3) {
            let x = rng.gen_range(0..n);
            let same: Vec<usize> = (0..n).filter(|&y| ends(y) == ends(x)).collect();
            let y = *same.choose(rng).unwrap();
            uf.union(x, y);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in x + 1..n {
                    if !uf.equiv(x, y) {
                        continue;
                    }
                    for w in 0..c.num_morphisms() {
                        if let (Some(a), Some(b)) = (left(w, x), left(w, y)) {
                            changed |= uf.union(a, b);
                        }
                    }
                    for w in 0..d.num_morphisms() {
                        if let (Some(a), Some(b)) = (right(x, w), right(y, w)) {
                            changed |= uf.union(a, b);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for i in 0..n {
            let r = uf.find(i);
            if class[r] == usize::MAX {
                class[r] = reps.len();
                reps.push(i);
            }
        }
        if reps.len() > max_elements {
            continue;
        }
        let cls = |i: usize| class[uf.find(i)];
        let m = reps.len();
        let elements = reps
            .iter()
            .map(|&i| {
                let (u, k, v) = free[i];
                let (s, t) = ends(i);
                Element { id: format!("g{k}[{}|{}]", c.morphism(u).id, d.morphism(v).id), s, t }
            })
            .collect();
        let mut lt = vec![None; c.num_morphisms() * m];
        let mut rt = vec![None; m * d.num_morphisms()];
        for (e, &i) in reps.iter().enumerate() {
            for w in 0..c.num_morphisms() {
                lt[w * m + e] = left(w, i).map(cls);
            }
            for w in 0..d.num_morphisms() {
                rt[e * d.num_morphisms() + w] = right(i, w).map(cls);
            }
        }
        return Profunctor::from_parts(c.clone(), d.clone(), elements, lt, rt).expect("well formed");
    }
    Profunctor::from_parts(c.clone(), d.clone(), Vec::new(), Vec::new(), Vec::new()).expect("empty profunctor")
}

/// Base algebras used for random double modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Ground,
    Split(usize),
    Matrix2,
    DualNumbers,
}

impl BaseKind {
    pub const SMALL: [BaseKind; 4] = [BaseKind::Ground, BaseKind::Split(2), BaseKind::Matrix2, BaseKind::DualNumbers];

    pub fn algebra(self, field: FieldSpec) -> FDAlgebra {
        match self {
            BaseKind::Ground => FDAlgebra::ground(field),
            BaseKind::Split(n) => FDAlgebra::split(field, n),
            BaseKind::Matrix2 => FDAlgebra::matrix_algebra(field, 2),
            BaseKind::DualNumbers => FDAlgebra::truncated_polynomial(field, 2),
        }
    }

    /// Indecomposable bimodules small enough to tensor together.
    pub fn bimodules(self, base: &Arc<FDAlgebra>) -> Vec<Bimodule> {
        let f = base.field();
        let delta = |n: usize, i: usize| -> Vec<Scalar> { (0..n).map(|a| if a == i { f.one() } else { f.zero() }).collect() };
        let mut out = vec![Bimodule::regular(base)];
        match self {
            BaseKind::Ground | BaseKind::Matrix2 => {}
            BaseKind::Split(n) => {
                for i in 0..n {
                    for j in 0..n {
                        out.push(Bimodule::character(base, &delta(n, i), &delta(n, j)));
                    }
                }
            }
            BaseKind::DualNumbers => out.push(Bimodule::character(base, &delta(2, 0), &delta(2, 0))),
        }
        out
    }
}

/// A unimodular integer matrix: a shuffled product of elementary matrices with small entries.
pub fn random_unimodular(rng: &mut impl Rng, field: FieldSpec, n: usize) -> ExactMatrix {
    let mut p = ExactMatrix::identity(field, n);
    if n < 2 {
        return p;
    }
    for _ in 0..rng.gen_range(1..=n) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = field.from_i64(rng.gen_range(-2..=2));
        let e = ExactMatrix::from_fn(field, n, n, |r, s| {
            if r == s { field.one() } else if (r, s) == (i, j) { c.clone() } else { field.zero() }
        });
        p = &p * &e;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pm = ExactMatrix::from_fn(field, n, n, |r, s| if perm[s] == r { field.one() } else { field.zero() });
    &p * &pm
}

/// A direct sum of `U⊗W` pieces from the bimodule catalogs, in a scrambled basis, of dimension at most
/// `max_dim` (or the smallest available piece, if that is larger).
pub fn random_double_module(
    rng: &mut impl Rng,
    left: (BaseKind, &Arc<FDAlgebra>),
    right: (BaseKind, &Arc<FDAlgebra>),
    max_dim: usize,
) -> DoubleModule {
    let lcat = left.0.bimodules(left.1);
    let rcat = right.0.bimodules(right.1);
    let pairs: Vec<(&Bimodule, &Bimodule)> = lcat.iter().flat_map(|u| rcat.iter().map(move |w| (u, w))).collect();
    let smallest = pairs.iter().map(|(u, w)| u.dim * w.dim).min().unwrap();
    let budget = max_dim.max(smallest);
    let mut m: Option<DoubleModule> = None;
    for _ in 0..rng.gen_range(1..=2) {
        let used = m.as_ref().map_or(0, |x| x.dim());
        let fits: Vec<_> = pairs.iter().filter(|(u, w)| used + u.dim * w.dim <= budget).collect();
        let Some((u, w)) = fits.choose(rng) else { break };
        let piece = DoubleModule::from_bimodules(u, w);
        m = Some(match m {
            None => piece,
            Some(a) => a.direct_sum(&piece).expect("same bases"),
        });
    }
    let m = m.expect("the smallest piece always fits");
    let p = random_unimodular(rng, m.field(), m.dim());
    m.conjugate(&p).expect("unimodular")
}

/// A chain `X_1, …, X_n` over bases `R_0, …, R_n` drawn from `kinds`.
pub fn random_chain(
    rng: &mut impl Rng,
    field: FieldSpec,
    kinds: &[BaseKind],
    n: usize,
    max_dim: usize,
) -> Vec<Arc<DoubleModule>> {
    let kinds: Vec<BaseKind> = (0..=n).map(|_| *kinds.choose(rng).unwrap()).collect();
    let bases: Vec<Arc<FDAlgebra>> = kinds.iter().map(|k| Arc::new(k.algebra(field))).collect();
    (0..n)
        .map(|i| Arc::new(random_double_module(rng, (kinds[i], &bases[i]), (kinds[i + 1], &bases[i + 1]), max_dim)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_profunctor;
    use rand::SeedableRng;

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let limits = CatLimits::default();
        for _ in 0..40 {
            let c = Arc::new(random_category(&mut rng, limits));
            let d = Arc::new(random_category(&mut rng, limits));
            assert!(validate_category(&c).passed());
            assert!(c.num_morphisms() <= 10 && c.num_objects() <= 4);
            let p = random_profunctor(&mut rng, &c, &d, 6);
            assert!(p.len() <= 6);
            let r = validate_profunctor(&p);
            assert!(r.passed(), "{r}");
        }
        for _ in 0..20 {
            let g = random_groupoid(&mut rng, 3, 6);
            assert!(validate_category(&g).passed());
        }
    }

    #[test]
    fn random_double_modules_are_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            for x in random_chain(&mut rng, FieldSpec::Rationals, &BaseKind::SMALL, 2, 8) {
                let r = x.validate();
                assert!(r.passed(), "{r}");
                assert!(x.dim() <= 16);
            }
        }
    }
}
