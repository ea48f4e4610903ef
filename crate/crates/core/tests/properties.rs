use std::sync::Arc;

use proptest::prelude::*;

use qcat_core::bialgebroid::{check_unit_laws as check_module_unit_laws, compose_modules};
use qcat_core::campaign::{run_campaign, Suite};
use qcat_core::exactlin::{coequalizer, kernel, split_idempotent, tensor_map, ExactMatrix, FieldSpec, PivotRule, Subspace};
use qcat_core::fincat::{check_unit_laws, compose_prof, function_bialgebroid, function_comodule_algebra, validate_category, validate_profunctor};
use qcat_core::io::{instance_to_json, parse_instance, Instance};
use qcat_core::random::{random_category, random_chain, random_profunctor, random_unimodular, trial_rng, BaseKind, CatLimits};
use qcat_core::takeuchi::{hom_dimension_oracle, takeuchi_product, Tn};

const Q: FieldSpec = FieldSpec::Rationals;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(FieldSpec::prime(2).unwrap()), Just(FieldSpec::prime(7).unwrap())]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rows * cols)
}

fn build(f: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> ExactMatrix {
    ExactMatrix::from_fn(f, rows, cols, |i, j| f.from_i64(entries[i * cols + j]))
}

fn shaped() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (Just(r), Just(c), matrix(r, c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(f in field(), (r, c, e) in shaped()) {
        let m = build(f, r, c, &e);
        prop_assert_eq!(m.rank() + kernel(&m).dim(), c);
        let inc = kernel(&m).inclusion();
        prop_assert!((&m * &inc).is_zero());
        prop_assert_eq!(inc.rank(), inc.cols());
    }

    #[test]
    fn coequalizer_is_universal(f in field(), (r, c, e1) in shaped(), e2 in matrix(5, 5), e3 in matrix(3, 5)) {
        let a = build(f, r, c, &e1);
        let b = build(f, r, c, &e2[..r * c]);
        let q = coequalizer(&a, &b).unwrap();
        let p = q.projection();
        prop_assert!((p * &a) == (p * &b));
        prop_assert!((p * q.section()).is_identity());
        // rows of h drawn from the left kernel of a − b, independently of q
        let left = kernel(&(&a - &b).transpose()).inclusion();
        let h = if left.cols() == 0 {
            ExactMatrix::zeros(f, 3, r)
        } else {
            &build(f, 3, left.cols(), &e3[..3 * left.cols()]) * &left.transpose()
        };
        prop_assert!((&h * &a) == (&h * &b));
        prop_assert_eq!(p.rank(), p.rows());
        let k = q.factor(&h).expect("h coequalizes");
        prop_assert!((&k * p) == h);
    }

    #[test]
    fn split_idempotents(seed in any::<u64>(), n in 1usize..=5, rank in 0usize..=5) {
        let mut rng = trial_rng(seed, 0);
        let rank = rank.min(n);
        let p = random_unimodular(&mut rng, Q, n);
        let d = ExactMatrix::from_fn(Q, n, n, |i, j| if i == j && i < rank { Q.one() } else { Q.zero() });
        let e = &(&p * &d) * &p.inverse().unwrap();
        prop_assert!((&e * &e) == e);
        let s = split_idempotent(&e).unwrap();
        prop_assert_eq!(s.dim, rank);
        prop_assert!((&s.projection * &s.inclusion).is_identity());
        prop_assert!((&s.inclusion * &s.projection) == e);
    }

    #[test]
    fn tensor_map_is_functorial(f in field(), a in matrix(2, 3), b in matrix(3, 2), c in matrix(2, 2), d in matrix(2, 2)) {
        let (f1, f2) = (build(f, 3, 2, &b), build(f, 2, 3, &a));
        let (g1, g2) = (build(f, 2, 2, &c), build(f, 2, 2, &d));
        let lhs = &tensor_map(&f2, &g2).unwrap() * &tensor_map(&f1, &g1).unwrap();
        let rhs = tensor_map(&(&f2 * &f1), &(&g2 * &g1)).unwrap();
        prop_assert!(lhs == rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn profunctor_composites_are_bounded(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let limits = CatLimits::default();
        let cats: Vec<_> = (0..3).map(|_| Arc::new(random_category(&mut rng, limits))).collect();
        for c in &cats {
            prop_assert!(validate_category(c).passed());
        }
        let p = random_profunctor(&mut rng, &cats[0], &cats[1], 6);
        let q = random_profunctor(&mut rng, &cats[1], &cats[2], 6);
        prop_assert_eq!(check_unit_laws(&p), Ok(()));
        let c = compose_prof(&p, &q).unwrap();
        prop_assert!(c.profunctor.len() <= c.pairs.len());
        prop_assert!(validate_profunctor(&c.profunctor).passed());
        for (i, &(a, b)) in c.pairs.iter().enumerate() {
            let class = c.class(a, b).unwrap();
            prop_assert!(class < c.profunctor.len(), "pair {} lands outside", i);
        }
    }

    #[test]
    fn takeuchi_product_ignores_the_pivot_rule(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let chain = random_chain(&mut rng, Q, &[BaseKind::Ground, BaseKind::Split(2), BaseKind::Matrix2], 2, 6);
        let ambient = |rule: PivotRule| {
            let t = Tn::with_rule(&chain, rule).unwrap();
            let q = t.quotient();
            // preimage of the product in the plain tensor space
            let lifted = q.section() * &t.subspace().inclusion();
            let rels = q.relations().inclusion();
            Subspace::column_space(&ExactMatrix::hstack(Q, q.ambient_dim(), &[&lifted, &rels]))
        };
        prop_assert_eq!(ambient(PivotRule::Leftmost), ambient(PivotRule::Rightmost));
        let p = takeuchi_product(&chain[0], &chain[1]).unwrap();
        prop_assert_eq!(p.dim(), hom_dimension_oracle(&chain[0], &chain[1]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn module_composites_are_bounded_and_unital(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let limits = CatLimits { max_objects: 2, max_morphisms: 4, max_elements: 4 };
        let cats: Vec<_> = (0..3).map(|_| Arc::new(random_category(&mut rng, limits))).collect();
        let b: Vec<_> = cats.iter().map(|c| Arc::new(function_bialgebroid(c, Q).unwrap())).collect();
        let p = random_profunctor(&mut rng, &cats[0], &cats[1], 4);
        let q = random_profunctor(&mut rng, &cats[1], &cats[2], 4);
        let mp = function_comodule_algebra(&p, &b[0], &b[1], Q).unwrap();
        let mq = function_comodule_algebra(&q, &b[1], &b[2], Q).unwrap();
        let c = compose_modules(&mp, &mq).unwrap();
        prop_assert!(c.dim() <= c.pair.dim());
        let units = check_module_unit_laws(&mp).unwrap();
        prop_assert!(units.passed(), "{}", units);
    }

    #[test]
    fn instances_round_trip(seed in any::<u64>(), f in field()) {
        let mut rng = trial_rng(seed, 0);
        let c = Arc::new(random_category(&mut rng, CatLimits::default()));
        let p = random_profunctor(&mut rng, &c, &c, 6);
        let chain = random_chain(&mut rng, f, &[BaseKind::Ground, BaseKind::Split(2)], 1, 4);
        for inst in [Instance::Category(c), Instance::Profunctor(p), Instance::DoubleModule(chain[0].clone())] {
            let text = instance_to_json(&inst);
            let back = parse_instance(&text, None).unwrap();
            prop_assert_eq!(instance_to_json(&back), text);
        }
    }

    #[test]
    fn campaigns_are_reproducible(seed in any::<u64>()) {
        for suite in [Suite::Set, Suite::Takeuchi, Suite::Bridge] {
            let a = run_campaign(suite, seed, 2, Q).to_json();
            prop_assert_eq!(a, run_campaign(suite, seed, 2, Q).to_json());
        }
    }
}
