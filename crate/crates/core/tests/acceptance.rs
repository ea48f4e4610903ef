//! The eight acceptance criteria, one line each.

use std::sync::Arc;
use std::time::{Duration, Instant};

use qcat_core::campaign::{run_campaign, Suite};
use qcat_core::exactlin::FieldSpec;
use qcat_core::fincat::{linearize, FinCategory};
use qcat_core::random::trial_rng;
use qcat_core::report::{Report, Status};
use qcat_core::weakbialg::{check_ordinary_bialgebra, check_reflexive_preservation, check_weak_bialgebra, FrobeniusMonoid, WeakBialgebra};

const Q: FieldSpec = FieldSpec::Rationals;
const SEED: u64 = 2024;
const SET_BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn stat(r: &Report, key: &str) -> u64 {
    r.stats.get(key).and_then(|v| v.as_u64()).unwrap_or(0)
}

fn all_pass(r: &Report) -> Result<(), String> {
    match r.failures().next() {
        None => Ok(()),
        Some(c) => Err(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())),
    }
}

fn at_least(r: &Report, key: &str, n: u64) -> Result<(), String> {
    let got = stat(r, key);
    if got >= n { Ok(()) } else { Err(format!("{key} = {got}, need {n}")) }
}

fn set_laws() -> Outcome {
    let start = Instant::now();
    let r = run_campaign(Suite::Set, SEED, 100, Q);
    let took = start.elapsed();
    all_pass(&r)?;
    for key in ["unit_passes", "associator_passes", "splitting_passes"] {
        at_least(&r, key, 100)?;
    }
    if took > SET_BUDGET {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("100 trials, units and associators elementwise, {took:.2?}"))
}

fn takeuchi_consistency() -> Outcome {
    let r = run_campaign(Suite::Takeuchi, SEED, 60, Q);
    all_pass(&r)?;
    at_least(&r, "product_vs_hom_oracle.passes", 50)?;
    for base in ["k", "k^2", "M2"] {
        at_least(&r, &format!("product.middle_base.{base}"), 1)?;
    }
    Ok(format!(
        "{} products agree (middle base k: {}, k×k: {}, M2: {})",
        stat(&r, "product_vs_hom_oracle.passes"),
        stat(&r, "product.middle_base.k"),
        stat(&r, "product.middle_base.k^2"),
        stat(&r, "product.middle_base.M2")
    ))
}

fn beta_coherence() -> Outcome {
    let r = run_campaign(Suite::Takeuchi, SEED, 60, Q);
    all_pass(&r)?;
    at_least(&r, "beta_coherence_split2.passes", 50)?;
    at_least(&r, "beta_iso_ground.passes", 50)?;
    at_least(&r, "beta_iso_semisimple.iso.passes", 50)?;
    Ok(format!(
        "{} coherence equalities over k×k, {} isos over k, {} isos over semisimple bases",
        stat(&r, "beta_coherence_split2.passes"),
        stat(&r, "beta_iso_ground.passes"),
        stat(&r, "beta_iso_semisimple.iso.passes")
    ))
}

fn unit_splittings() -> Outcome {
    // trial 0 is kZ/2, trial 1 is R^e over k×k
    let r = run_campaign(Suite::Bialgebroid, SEED, 22, Q);
    all_pass(&r)?;
    at_least(&r, "random_instances", 20)?;
    for key in ["fork", "s_e", "t_d1", "t_d0"] {
        at_least(&r, &format!("unit_splitting.{key}.passes"), 22)?;
    }
    Ok(format!("kZ/2, R^e and {} random instances", stat(&r, "random_instances")))
}

fn frobenius_idempotents() -> Outcome {
    let r = run_campaign(Suite::Frobenius, SEED, 60, Q);
    all_pass(&r)?;
    for key in ["tn_via_idempotent.d.idempotent", "tn_via_idempotent.split_is_tn", "idempotent_a.idempotent"] {
        at_least(&r, &format!("{key}.passes"), 50)?;
    }
    for base in ["k", "k^2", "M2"] {
        at_least(&r, &format!("chain.inner_base.{base}"), 1)?;
        at_least(&r, &format!("tc_unit.{base}.dim_is_square.passes"), 1)?;
    }
    Ok(format!(
        "{} chains ({} binary, {} ternary), T_C() = C⊗C for k, k×k, M2",
        stat(&r, "tn_via_idempotent.split_is_tn.passes"),
        stat(&r, "chain.arity_2"),
        stat(&r, "chain.arity_3")
    ))
}

fn weak_examples() -> Outcome {
    let z2 = WeakBialgebra::cyclic_group(Q, 2).map_err(|e| e.to_string())?;
    all_pass(&check_ordinary_bialgebra(&z2)).map_err(|e| format!("kZ/2 ordinary: {e}"))?;
    let g = linearize(&FinCategory::indiscrete(2), Q).map_err(|e| e.to_string())?;
    let w = WeakBialgebra::from_linearized(&g).map_err(|e| e.to_string())?;
    all_pass(&check_weak_bialgebra(&w)).map_err(|e| format!("groupoid weak: {e}"))?;
    let ord = check_ordinary_bialgebra(&w);
    if ord.status_of("unit.comultiplicative") != Some(Status::Fail) {
        return Err("groupoid algebra unexpectedly has Δ(1) = 1⊗1".into());
    }
    Ok("kZ/2 ordinary; indiscrete(2) weak but Δ(1) ≠ 1⊗1".into())
}

fn bridge() -> Outcome {
    let r = run_campaign(Suite::Bridge, SEED, 40, Q);
    all_pass(&r)?;
    at_least(&r, "dim_matches_set.passes", 40)?;
    at_least(&r, "nonempty_composites", 30)?;
    Ok(format!("40 triples, {} with nonempty composite", stat(&r, "nonempty_composites")))
}

fn reflexive() -> Outcome {
    let (mut diagrams, mut constant, mut proper) = (0, 0, 0);
    for (i, c) in [FrobeniusMonoid::ground(Q), FrobeniusMonoid::split(Q, 2), FrobeniusMonoid::matrix(Q, 2).map_err(|e| e.to_string())?]
        .into_iter()
        .enumerate()
    {
        let mut rng = trial_rng(SEED, i);
        let r = check_reflexive_preservation(&Arc::new(c), &mut rng, 30).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        diagrams += stat(&r, "diagrams");
        constant += stat(&r, "constant_pairs");
        proper += stat(&r, "proper_equalizers");
    }
    if diagrams - constant < 50 || proper == 0 {
        return Err(format!("{} non-constant diagrams, {proper} proper", diagrams - constant));
    }
    Ok(format!("{diagrams} diagrams over k, k×k, M2: {} non-constant, {proper} with proper equalizer", diagrams - constant))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("set bicategory laws", set_laws),
        ("Takeuchi product consistency", takeuchi_consistency),
        ("β coherence and field degeneration", beta_coherence),
        ("unit-law splittings", unit_splittings),
        ("Frobenius idempotent equivalence", frobenius_idempotents),
        ("weak-bialgebra examples", weak_examples),
        ("set-linear bridge", bridge),
        ("reflexive coequalizer preservation", reflexive),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
