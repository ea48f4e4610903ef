//! Bicategory laws for profunctors, exhibited by explicit element maps.

use std::sync::Arc;

use crate::report::Report;

use super::category::FinCategory;
use super::profunctor::{compose_prof, hom_profunctor, Composite, Profunctor};
use super::CatError;

/// Checks that `f : P → Q` (element indices) preserves endpoints and both actions.
pub fn is_prof_map(p: &Profunctor, q: &Profunctor, f: &[usize]) -> Result<(), String> {
    if p.source() != q.source() || p.target() != q.target() {
        return Err("endpoint categories differ".into());
    }
    for e in 0..p.len() {
        let x = f[e];
        if p.s(e) != q.s(x) || p.t(e) != q.t(x) {
            return Err(format!("{} ↦ {} changes endpoints", p.element(e).id, q.element(x).id));
        }
        for u in 0..p.source().num_morphisms() {
            if let Some(ue) = p.act_left(u, e) {
                if q.act_left(u, x) != Some(f[ue]) {
                    return Err(format!("left action of {} on {}", p.source().morphism(u).id, p.element(e).id));
                }
            }
        }
        for v in 0..p.target().num_morphisms() {
            if let Some(ev) = p.act_right(e, v) {
                if q.act_right(x, v) != Some(f[ev]) {
                    return Err(format!("right action of {} on {}", p.target().morphism(v).id, p.element(e).id));
                }
            }
        }
    }
    Ok(())
}

fn mutually_inverse(f: &[usize], g: &[usize], what: &str) -> Result<(), String> {
    if let Some(x) = (0..f.len()).find(|&x| g[f[x]] != x) {
        return Err(format!("{what}: g∘f moves element {x}"));
    }
    if let Some(y) = (0..g.len()).find(|&y| f[g[y]] != y) {
        return Err(format!("{what}: f∘g moves element {y}"));
    }
    Ok(())
}

/// A map out of a composite defined on pairs; checks it is constant on every class.
fn descend(comp: &Composite, on_pair: impl Fn(usize, usize) -> usize) -> Result<Vec<usize>, String> {
    let mut out: Vec<Option<usize>> = vec![None; comp.profunctor.len()];
    for (i, &(a, b)) in comp.pairs.iter().enumerate() {
        let v = on_pair(a, b);
        let cls = comp.class_of_pair[i];
        match out[cls] {
            None => out[cls] = Some(v),
            Some(w) if w != v => {
                return Err(format!("not constant on class {}", comp.profunctor.element(cls).id));
            }
            _ => {}
        }
    }
    Ok(out.into_iter().map(|x| x.expect("classes are nonempty")).collect())
}

/// `hom(C)•P ≅ P ≅ P•hom(D)` via `[u, p] ↦ u·p` and `[p, v] ↦ p·v`, with inverses inserting identities.
pub fn check_unit_laws(p: &Profunctor) -> Result<(), String> {
    let err = |e: CatError| e.to_string();
    let (c, d) = (p.source(), p.target());
    let hc = hom_profunctor(c).map_err(err)?;
    let hd = hom_profunctor(d).map_err(err)?;

    let left = compose_prof(&hc, p).map_err(err)?;
    let act = descend(&left, |u, e| p.act_left(u, e).expect("composable pair"))?;
    let ins: Vec<usize> = (0..p.len())
        .map(|e| left.class(c.id(p.s(e)), e).expect("(id, p) is composable"))
        .collect();
    mutually_inverse(&act, &ins, "left unit")?;
    is_prof_map(&left.profunctor, p, &act).map_err(|w| format!("left unit: {w}"))?;

    let right = compose_prof(p, &hd).map_err(err)?;
    let act = descend(&right, |e, v| p.act_right(e, v).expect("composable pair"))?;
    let ins: Vec<usize> = (0..p.len())
        .map(|e| right.class(e, d.id(p.t(e))).expect("(p, id) is composable"))
        .collect();
    mutually_inverse(&act, &ins, "right unit")?;
    is_prof_map(&right.profunctor, p, &act).map_err(|w| format!("right unit: {w}"))?;
    Ok(())
}

/// `(P•Q)•R ≅ P•(Q•R)` via `[[p,q],r] ↦ [p,[q,r]]` and its mirror.
pub fn check_associator(p: &Profunctor, q: &Profunctor, r: &Profunctor) -> Result<(), String> {
    let err = |e: CatError| e.to_string();
    let pq = compose_prof(p, q).map_err(err)?;
    let qr = compose_prof(q, r).map_err(err)?;
    let pq_r = compose_prof(&pq.profunctor, r).map_err(err)?;
    let p_qr = compose_prof(p, &qr.profunctor).map_err(err)?;
    // every pair ((p,q) class, r) is sent through every member (p,q) of its class
    let forward = descend(&pq_r, |x, c| {
        let (a, b) = pq.pairs[pq.representative[x]];
        let inner = qr.class(b, c).expect("composable");
        p_qr.class(a, inner).expect("composable")
    })?;
    let backward = descend(&p_qr, |a, y| {
        let (b, c) = qr.pairs[qr.representative[y]];
        let inner = pq.class(a, b).expect("composable");
        pq_r.class(inner, c).expect("composable")
    })?;
    // representative independence in the inner classes
    for (i, &(a, b)) in pq.pairs.iter().enumerate() {
        for c in 0..r.len() {
            if q.t(b) != r.s(c) {
                continue;
            }
            let via_member = p_qr.class(a, qr.class(b, c).unwrap()).unwrap();
            let via_class = forward[pq_r.class(pq.class_of_pair[i], c).unwrap()];
            if via_member != via_class {
                return Err(format!("associator depends on representative of {}", pq.profunctor.element(pq.class_of_pair[i]).id));
            }
        }
    }
    mutually_inverse(&forward, &backward, "associator")?;
    is_prof_map(&pq_r.profunctor, &p_qr.profunctor, &forward).map_err(|w| format!("associator: {w}"))
}

/// The split-coequalizer identities for `T₃(A,A,P) ⇉ T₂(A,P) → P` with `A = hom(C)`, and the mirror on the right.
///
/// With `d₀(u₁,u₂,p) = (u₁, u₂·p)`, `d₁(u₁,u₂,p) = (u₂∘u₁, p)`, `s(p) = (id, p)`, `t(u,p) = (id, u, p)`:
/// `α∘d₀ = α∘d₁`, `α∘s = 1`, `d₁∘t = 1`, `d₀∘t = s∘α`.
pub fn check_split_coequalizer(p: &Profunctor) -> Result<(), String> {
    let c = p.source();
    for e in 0..p.len() {
        if p.act_left(c.id(p.s(e)), e) != Some(e) {
            return Err(format!("α∘s ≠ 1 at {}", p.element(e).id));
        }
    }
    for u in 0..c.num_morphisms() {
        for e in 0..p.len() {
            let Some(ue) = p.act_left(u, e) else { continue };
            // t(u,p) = (id_{src u}, u, p)
            let i = c.id(c.src(u));
            if c.compose(u, i) != Some(u) {
                return Err(format!("d₁∘t ≠ 1 at ({}, {})", c.morphism(u).id, p.element(e).id));
            }
            let d0 = (i, ue);
            let s_alpha = (c.id(p.s(ue)), ue);
            if d0 != s_alpha {
                return Err(format!("d₀∘t ≠ s∘α at ({}, {})", c.morphism(u).id, p.element(e).id));
            }
            for w in 0..c.num_morphisms() {
                if c.tgt(w) != c.src(u) {
                    continue;
                }
                // α d₀ (w,u,p) = w·(u·p), α d₁ (w,u,p) = (u∘w)·p
                if p.act_left(w, ue) != p.act_left(c.comp(u, w), e) {
                    return Err(format!("α∘d₀ ≠ α∘d₁ at ({}, {}, {})", c.morphism(w).id, c.morphism(u).id, p.element(e).id));
                }
            }
        }
    }
    let d = p.target();
    for e in 0..p.len() {
        if p.act_right(e, d.id(p.t(e))) != Some(e) {
            return Err(format!("right α∘s ≠ 1 at {}", p.element(e).id));
        }
        for v in 0..d.num_morphisms() {
            let Some(ev) = p.act_right(e, v) else { continue };
            let i = d.id(d.tgt(v));
            if d.compose(i, v) != Some(v) {
                return Err(format!("right d₁∘t ≠ 1 at ({}, {})", p.element(e).id, d.morphism(v).id));
            }
            for w in 0..d.num_morphisms() {
                if d.src(w) != d.tgt(v) {
                    continue;
                }
                if p.act_right(ev, w) != p.act_right(e, d.comp(w, v)) {
                    return Err(format!("right α∘d₀ ≠ α∘d₁ at ({}, {}, {})", p.element(e).id, d.morphism(v).id, d.morphism(w).id));
                }
            }
        }
    }
    Ok(())
}

/// Unit and associator laws on seeded random composable pairs and triples.
pub fn check_bicategory_laws(seed: u64, trials: usize, limits: crate::random::CatLimits) -> Report {
    let mut report = Report::new("set bicategory laws").with_seed(seed);
    let mut unit_ok = 0usize;
    let mut assoc_ok = 0usize;
    let mut split_ok = 0usize;
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = crate::random::trial_rng(seed, trial);
        let cats: Vec<Arc<FinCategory>> =
            (0..4).map(|_| Arc::new(crate::random::random_category(&mut rng, limits))).collect();
        let p = crate::random::random_profunctor(&mut rng, &cats[0], &cats[1], limits.max_elements);
        let q = crate::random::random_profunctor(&mut rng, &cats[1], &cats[2], limits.max_elements);
        let r = crate::random::random_profunctor(&mut rng, &cats[2], &cats[3], limits.max_elements);
        match check_unit_laws(&p) {
            Ok(()) => unit_ok += 1,
            Err(w) => failures.push(format!("trial {trial} unit: {w}")),
        }
        match check_split_coequalizer(&p) {
            Ok(()) => split_ok += 1,
            Err(w) => failures.push(format!("trial {trial} splitting: {w}")),
        }
        match check_associator(&p, &q, &r) {
            Ok(()) => assoc_ok += 1,
            Err(w) => failures.push(format!("trial {trial} associator: {w}")),
        }
    }
    report.check(
        "unit_bijections",
        if unit_ok == trials { Ok(()) } else { Err(failures.iter().filter(|f| f.contains("unit")).cloned().collect::<Vec<_>>().join("; ")) },
    );
    report.check(
        "split_coequalizer_identities",
        if split_ok == trials { Ok(()) } else { Err(failures.iter().filter(|f| f.contains("splitting")).cloned().collect::<Vec<_>>().join("; ")) },
    );
    report.check(
        "associator_bijections",
        if assoc_ok == trials { Ok(()) } else { Err(failures.iter().filter(|f| f.contains("associator")).cloned().collect::<Vec<_>>().join("; ")) },
    );
    report.stat("trials", trials);
    report.stat("unit_passes", unit_ok);
    report.stat("associator_passes", assoc_ok);
    report.stat("splitting_passes", split_ok);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_unit_laws_and_associator_on_z2() {
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let h = hom_profunctor(&z2).unwrap();
        check_unit_laws(&h).unwrap();
        check_split_coequalizer(&h).unwrap();
        check_associator(&h, &h, &h).unwrap();
    }

    #[test]
    fn discrete_associator_is_path_bijection() {
        let d = Arc::new(FinCategory::discrete(2));
        let h = hom_profunctor(&d).unwrap();
        check_associator(&h, &h, &h).unwrap();
    }
}
