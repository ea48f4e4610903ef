//! Seeded property campaigns over random instances, one suite per layer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bialgebroid::{check_comodule_algebra, check_unit_splitting, Bialgebroid, ComoduleAlgebra, compose_modules};
use crate::exactlin::FieldSpec;
use crate::fincat::{check_bicategory_laws, compose_prof, function_bialgebroid, function_comodule_algebra, linearize, FinCategory};
use crate::random::{random_category, random_chain, random_groupoid, random_profunctor, trial_rng, BaseKind, CatLimits};
use crate::report::{summarize, Report, Status};
use crate::takeuchi::{beta, beta_iso_report, beta_two_routes, hom_dimension_oracle, takeuchi_product, FDAlgebra, Partition};
use crate::weakbialg::{
    check_cohom_round_trip, check_idempotent_a, check_reflexive_preservation, check_separable_frobenius, check_tc_unit,
    check_tn_via_idempotent, check_weak_bialgebra, FrobeniusMonoid, SFComodule, WeakBialgebra,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Set,
    Takeuchi,
    Bialgebroid,
    Frobenius,
    Bridge,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Set, Suite::Takeuchi, Suite::Bialgebroid, Suite::Frobenius, Suite::Bridge];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Set => "set",
            Suite::Takeuchi => "takeuchi",
            Suite::Bialgebroid => "bialgebroid",
            Suite::Frobenius => "frobenius",
            Suite::Bridge => "bridge",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`; expected one of set, takeuchi, bialgebroid, frobenius, bridge"))
    }
}

/// Per-check pass counts and failure witnesses, in first-seen order.
#[derive(Default)]
struct Tally {
    order: Vec<String>,
    entries: BTreeMap<String, (usize, Vec<String>)>,
    counters: BTreeMap<String, usize>,
}

impl Tally {
    fn record(&mut self, name: &str, trial: usize, outcome: Result<(), String>) {
        if !self.entries.contains_key(name) {
            self.order.push(name.to_string());
        }
        let e = self.entries.entry(name.to_string()).or_default();
        match outcome {
            Ok(()) => e.0 += 1,
            Err(w) => e.1.push(format!("trial {trial}: {w}")),
        }
    }

    fn record_report(&mut self, prefix: &str, trial: usize, r: &Report) {
        for c in &r.checks {
            let name = format!("{prefix}.{}", c.name);
            match c.status {
                Status::Pass => self.record(&name, trial, Ok(())),
                Status::Fail | Status::Skipped => self.record(&name, trial, Err(c.witness.clone().unwrap_or_default())),
                Status::Info => {}
            }
        }
    }

    fn record_result<E: fmt::Display>(&mut self, prefix: &str, trial: usize, r: Result<Report, E>) {
        match r {
            Ok(r) => self.record_report(prefix, trial, &r),
            Err(e) => self.record(prefix, trial, Err(e.to_string())),
        }
    }

    fn count(&mut self, key: &str) {
        *self.counters.entry(key.to_string()).or_default() += 1;
    }

    fn finish(self, r: &mut Report) {
        for name in &self.order {
            let (passes, failures) = &self.entries[name];
            r.check(name.clone(), if failures.is_empty() { Ok(()) } else { Err(summarize(failures, 3)) });
            r.stat(format!("{name}.passes"), *passes);
        }
        for (k, v) in self.counters {
            r.stat(k, v);
        }
    }
}

fn kind_name(k: BaseKind) -> String {
    match k {
        BaseKind::Ground => "k".into(),
        BaseKind::Split(n) => format!("k^{n}"),
        BaseKind::Matrix2 => "M2".into(),
        BaseKind::DualNumbers => "k[x]/x^2".into(),
    }
}

const SEMISIMPLE: [BaseKind; 3] = [BaseKind::Ground, BaseKind::Split(2), BaseKind::Matrix2];

fn base_kind_of(a: &FDAlgebra) -> Option<BaseKind> {
    SEMISIMPLE.into_iter().find(|k| k.algebra(a.field()) == *a)
}

/// A random composition of `n` into positive parts.
fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let mut parts = Vec::new();
    let mut left = n;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    Partition(parts)
}

/// Runs `trials` seeded trials of `suite`; trial `i` draws from its own stream of `seed`.
pub fn run_campaign(suite: Suite, seed: u64, trials: usize, field: FieldSpec) -> Report {
    let mut r = Report::new(format!("campaign {suite}")).with_seed(seed);
    r.stat("trials", trials);
    if trials == 0 {
        return r;
    }
    let mut t = Tally::default();
    match suite {
        Suite::Set => {
            let laws = check_bicategory_laws(seed, trials, CatLimits::default());
            r.absorb("", Report { seed: None, ..laws });
            return r;
        }
        Suite::Takeuchi => takeuchi_suite(&mut t, seed, trials, field),
        Suite::Bialgebroid => bialgebroid_suite(&mut t, seed, trials, field),
        Suite::Frobenius => frobenius_suite(&mut t, seed, trials, field),
        Suite::Bridge => bridge_suite(&mut t, seed, trials, field),
    }
    t.finish(&mut r);
    r
}

fn takeuchi_suite(t: &mut Tally, seed: u64, trials: usize, field: FieldSpec) {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);

        // ×_R through the centralizer against Hom_{R°⊗R}(R, X⊗_R Y)
        let chain = loop {
            let c = random_chain(&mut rng, field, &SEMISIMPLE, 2, 6);
            if c[0].dim() * c[1].dim() <= 36 {
                break c;
            }
        };
        if let Some(k) = base_kind_of(chain[0].right_base()) {
            t.count(&format!("product.middle_base.{}", kind_name(k)));
        }
        let outcome = takeuchi_product(&chain[0], &chain[1]).and_then(|p| Ok((p.dim(), hom_dimension_oracle(&chain[0], &chain[1])?)));
        t.record(
            "product_vs_hom_oracle",
            i,
            match outcome {
                Ok((a, b)) if a == b => Ok(()),
                Ok((a, b)) => Err(format!("centralizer dim {a}, Hom dim {b}")),
                Err(e) => Err(e.to_string()),
            },
        );

        // two-level refinement coherence over k×k
        let chain = random_chain(&mut rng, field, &[BaseKind::Split(2)], 3, 3);
        let shapes: [(Vec<usize>, Vec<Vec<usize>>); 5] = [
            (vec![3], vec![vec![1, 2]]),
            (vec![3], vec![vec![2, 1]]),
            (vec![3], vec![vec![1, 1, 1]]),
            (vec![2, 1], vec![vec![1, 1], vec![1]]),
            (vec![1, 2], vec![vec![1], vec![1, 1]]),
        ];
        let (outer, inner) = shapes.choose(&mut rng).expect("nonempty");
        let inner: Vec<Partition> = inner.iter().map(|p| Partition(p.clone())).collect();
        t.record(
            "beta_coherence_split2",
            i,
            match beta_two_routes(&chain, &Partition(outer.clone()), &inner) {
                Ok((a, b)) => match a.first_difference(&b) {
                    None => Ok(()),
                    Some(at) => Err(format!("routes differ at {at:?}")),
                },
                Err(e) => Err(e.to_string()),
            },
        );

        // over k every β is invertible, zero parts included
        let n = rng.gen_range(1..=3);
        let chain = random_chain(&mut rng, field, &[BaseKind::Ground], n, 3);
        let mut parts = random_partition(&mut rng, n).0;
        if rng.gen_bool(0.5) {
            let at = rng.gen_range(0..=parts.len());
            parts.insert(at, 0);
        }
        let p = Partition(parts);
        t.record(
            "beta_iso_ground",
            i,
            match beta(&p, &chain) {
                Ok(b) if b.is_iso() => Ok(()),
                Ok(b) => Err(format!("{p}: rank {} for dims {} → {}", b.rank(), b.grouped.dim(), b.flat.dim())),
                Err(e) => Err(format!("{p}: {e}")),
            },
        );

        // semisimple bases are projective: positive partitions give isos
        let n = rng.gen_range(2..=3);
        let chain = loop {
            let c = random_chain(&mut rng, field, &SEMISIMPLE, n, 4);
            if c.iter().map(|m| m.dim()).product::<usize>() <= 64 {
                break c;
            }
        };
        let p = random_partition(&mut rng, n);
        t.record_result("beta_iso_semisimple", i, beta_iso_report(&p, &chain));
    }
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// A homomorphism `Z/m → Z/n` as the list of images.
fn random_cyclic_hom(rng: &mut impl Rng, m: usize, n: usize) -> Vec<usize> {
    let gens: Vec<usize> = (0..n).filter(|k| (m * k).is_multiple_of(n)).collect();
    let k = *gens.choose(rng).expect("0 always works");
    (0..m).map(|x| (x * k) % n).collect()
}

fn random_comodule(rng: &mut impl Rng, field: FieldSpec, i: usize) -> Result<(String, ComoduleAlgebra), String> {
    if i.is_multiple_of(2) {
        let (a, b, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=4));
        let (phi, psi) = (random_cyclic_hom(rng, m, a), random_cyclic_hom(rng, m, b));
        let c = ComoduleAlgebra::monoid_comodule(field, &cyclic_table(a), &cyclic_table(b), &cyclic_table(m), &phi, &psi)
            .map_err(|e| e.to_string())?;
        Ok((format!("kZ/{m} over (kZ/{a}, kZ/{b})"), c))
    } else {
        let limits = CatLimits { max_objects: 2, max_morphisms: 4, max_elements: 4 };
        let c = Arc::new(random_category(rng, limits));
        let d = Arc::new(random_category(rng, limits));
        let p = random_profunctor(rng, &c, &d, limits.max_elements);
        let bc = Arc::new(function_bialgebroid(&c, field).map_err(|e| e.to_string())?);
        let bd = Arc::new(function_bialgebroid(&d, field).map_err(|e| e.to_string())?);
        let m = function_comodule_algebra(&p, &bc, &bd, field).map_err(|e| e.to_string())?;
        Ok((format!("k^P with |P| = {}", p.len()), m))
    }
}

fn bialgebroid_suite(t: &mut Tally, seed: u64, trials: usize, field: FieldSpec) {
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let instance = match i {
            0 => Bialgebroid::cyclic_group(field, 2)
                .and_then(|b| ComoduleAlgebra::regular(&Arc::new(b)))
                .map(|m| ("kZ/2".to_string(), m))
                .map_err(|e| e.to_string()),
            1 => Bialgebroid::enveloping(Arc::new(FDAlgebra::split(field, 2)))
                .and_then(|b| ComoduleAlgebra::regular(&Arc::new(b)))
                .map(|m| ("R^e, R = k×k".to_string(), m))
                .map_err(|e| e.to_string()),
            _ => random_comodule(&mut rng, field, i),
        };
        match instance {
            Ok((_, m)) => {
                if i >= 2 {
                    t.count("random_instances");
                }
                t.record_report("instance", i, &check_comodule_algebra(&m));
                t.record_result("unit_splitting", i, check_unit_splitting(&m));
            }
            Err(e) => t.record("instance", i, Err(e)),
        }
    }
}

fn frobenius_base(kind: BaseKind, field: FieldSpec) -> Option<FrobeniusMonoid> {
    FrobeniusMonoid::standard(&kind.algebra(field))
}

fn frobenius_suite(t: &mut Tally, seed: u64, trials: usize, field: FieldSpec) {
    let bases: Vec<(BaseKind, Arc<FrobeniusMonoid>)> =
        SEMISIMPLE.into_iter().filter_map(|k| frobenius_base(k, field).map(|c| (k, Arc::new(c)))).collect();
    {
        let mut rng = trial_rng(seed, usize::MAX);
        for (k, c) in &bases {
            let name = kind_name(*k);
            t.record_report(&format!("base.{name}"), 0, &check_separable_frobenius(c));
            t.record_report(&format!("tc_unit.{name}"), 0, &check_tc_unit(c));
            t.record_report(&format!("cohom.{name}"), 0, &check_cohom_round_trip(c, &mut rng, 5));
        }
    }
    let kinds: Vec<BaseKind> = bases.iter().map(|(k, _)| *k).collect();
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let n = rng.gen_range(2..=3);
        let chain = random_chain(&mut rng, field, &kinds, n, if n == 2 { 8 } else { 4 });
        for m in &chain {
            if let Some(k) = base_kind_of(m.right_base()) {
                t.count(&format!("chain.inner_base.{}", kind_name(k)));
            }
        }
        match chain.iter().map(|m| SFComodule::standard(m.clone())).collect::<Result<Vec<_>, _>>() {
            Ok(xs) => {
                t.count(&format!("chain.arity_{n}"));
                t.record_result("tn_via_idempotent", i, check_tn_via_idempotent(&xs));
                t.record_result("idempotent_a", i, check_idempotent_a(&xs[0], &xs[1]));
            }
            Err(e) => t.record("tn_via_idempotent", i, Err(e.to_string())),
        }
        let p = random_partition(&mut rng, n);
        t.record_result("beta_iso", i, beta_iso_report(&p, &chain));

        let (k, c) = bases.choose(&mut rng).expect("k is always a separable Frobenius base");
        t.count(&format!("reflexive.base.{}", kind_name(*k)));
        let rp = check_reflexive_preservation(c, &mut rng, 1);
        if let Ok(rp) = &rp {
            for key in ["diagrams", "constant_pairs", "proper_equalizers"] {
                let n = rp.stats.get(key).and_then(|v| v.as_u64()).unwrap_or(0) as usize;
                *t.counters.entry(format!("reflexive.{key}")).or_default() += n;
            }
        }
        t.record_result("reflexive_preservation", i, rp);

        let g = random_groupoid(&mut rng, 3, 6);
        let w = linearize(&g, field).map_err(|e| e.to_string()).and_then(|l| WeakBialgebra::from_linearized(&l).map_err(|e| e.to_string()));
        match w {
            Ok(w) => t.record_report("groupoid_weak_bialgebra", i, &check_weak_bialgebra(&w)),
            Err(e) => t.record("groupoid_weak_bialgebra", i, Err(e)),
        }
    }
}

fn bridge_suite(t: &mut Tally, seed: u64, trials: usize, field: FieldSpec) {
    let limits = CatLimits { max_objects: 3, max_morphisms: 6, max_elements: 4 };
    for i in 0..trials {
        let mut rng = trial_rng(seed, i);
        let cats: Vec<Arc<FinCategory>> = (0..3).map(|_| Arc::new(random_category(&mut rng, limits))).collect();
        let p = random_profunctor(&mut rng, &cats[0], &cats[1], limits.max_elements);
        let q = random_profunctor(&mut rng, &cats[1], &cats[2], limits.max_elements);
        let outcome = (|| -> Result<(usize, usize), String> {
            let set = compose_prof(&p, &q).map_err(|e| e.to_string())?.profunctor.len();
            let b: Vec<Arc<Bialgebroid>> =
                cats.iter().map(|c| function_bialgebroid(c, field).map(Arc::new)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let lp = function_comodule_algebra(&p, &b[0], &b[1], field).map_err(|e| e.to_string())?;
            let lq = function_comodule_algebra(&q, &b[1], &b[2], field).map_err(|e| e.to_string())?;
            let lin = compose_modules(&lp, &lq).map_err(|e| e.to_string())?.dim();
            Ok((set, lin))
        })();
        if matches!(outcome, Ok((s, _)) if s > 0) {
            t.count("nonempty_composites");
        }
        t.record(
            "dim_matches_set",
            i,
            match outcome {
                Ok((s, l)) if s == l => Ok(()),
                Ok((s, l)) => Err(format!("|P•Q| = {s}, dim = {l}")),
                Err(e) => Err(e),
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_an_empty_pass() {
        for s in Suite::ALL {
            let r = run_campaign(s, 3, 0, FieldSpec::Rationals);
            assert!(r.passed() && r.checks.is_empty());
            assert_eq!(r.seed, Some(3));
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!("sets".parse::<Suite>().is_err());
        assert_eq!("bridge".parse::<Suite>(), Ok(Suite::Bridge));
    }

    #[test]
    fn campaigns_are_deterministic() {
        let a = run_campaign(Suite::Takeuchi, 9, 2, FieldSpec::Rationals);
        let b = run_campaign(Suite::Takeuchi, 9, 2, FieldSpec::Rationals);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.passed(), "{a}");
    }
}
