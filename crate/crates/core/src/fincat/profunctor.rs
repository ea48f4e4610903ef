use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::report::{summarize, Report};

use super::category::{validate_category, FinCategory};
use super::CatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub id: String,
    /// object of the source category
    pub s: usize,
    /// object of the target category
    pub t: usize,
}

/// A profunctor `C ⇸ D`: elements `p : c ⇸ d` with actions `u·p` for `u : c' → c` in `C`
/// and `p·v` for `v : d → d'` in `D`. On `hom(C)` these are `f∘u` and `v∘f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    elements: Vec<Element>,
    /// `left[u * |P| + p] = u·p`
    left: Vec<Option<usize>>,
    /// `right[p * |Mor D| + v] = p·v`
    right: Vec<Option<usize>>,
}

impl Profunctor {
    pub fn from_parts(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        elements: Vec<Element>,
        left: Vec<Option<usize>>,
        right: Vec<Option<usize>>,
    ) -> Result<Self, CatError> {
        let n = elements.len();
        if left.len() != source.num_morphisms() * n || right.len() != n * target.num_morphisms() {
            return Err(CatError::Malformed("action table has wrong size".into()));
        }
        if elements.iter().any(|e| e.s >= source.num_objects() || e.t >= target.num_objects())
            || left.iter().chain(&right).flatten().any(|&x| x >= n)
        {
            return Err(CatError::Malformed("index out of range".into()));
        }
        Ok(Profunctor { source, target, elements, left, right })
    }

    /// Builds from named data: `left` holds `(u, p, u·p)` and `right` holds `(p, v, p·v)`.
    pub fn from_named(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        elements: Vec<(String, String, String)>,
        left: &[(String, String, String)],
        right: &[(String, String, String)],
    ) -> Result<Self, CatError> {
        let obj = |c: &FinCategory, o: &str| c.object_index(o).ok_or_else(|| CatError::UnknownId(o.to_string()));
        let mut els = Vec::new();
        for (id, s, t) in &elements {
            els.push(Element { id: id.clone(), s: obj(&source, s)?, t: obj(&target, t)? });
        }
        let idx: HashMap<&str, usize> = els.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
        if idx.len() != els.len() {
            return Err(CatError::Malformed("duplicate element id".into()));
        }
        let el = |e: &str| idx.get(e).copied().ok_or_else(|| CatError::UnknownId(e.to_string()));
        let mor = |c: &FinCategory, f: &str| c.morphism_index(f).ok_or_else(|| CatError::UnknownId(f.to_string()));
        let n = els.len();
        let mut l = vec![None; source.num_morphisms() * n];
        for (u, p, r) in left {
            l[mor(&source, u)? * n + el(p)?] = Some(el(r)?);
        }
        let mt = target.num_morphisms();
        let mut rt = vec![None; n * mt];
        for (p, v, r) in right {
            rt[el(p)? * mt + mor(&target, v)?] = Some(el(r)?);
        }
        Self::from_parts(source, target, els, l, rt)
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, p: usize) -> &Element {
        &self.elements[p]
    }

    pub fn s(&self, p: usize) -> usize {
        self.elements[p].s
    }

    pub fn t(&self, p: usize) -> usize {
        self.elements[p].t
    }

    /// `u·p`, defined when `tgt u = s(p)`.
    pub fn act_left(&self, u: usize, p: usize) -> Option<usize> {
        self.left[u * self.elements.len() + p]
    }

    /// `p·v`, defined when `src v = t(p)`.
    pub fn act_right(&self, p: usize, v: usize) -> Option<usize> {
        self.right[p * self.target.num_morphisms() + v]
    }

    pub fn left_triples(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for u in 0..self.source.num_morphisms() {
            for p in 0..self.len() {
                if let Some(r) = self.act_left(u, p) {
                    out.push((self.source.morphism(u).id.clone(), self.elements[p].id.clone(), self.elements[r].id.clone()));
                }
            }
        }
        out
    }

    pub fn right_triples(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for v in 0..self.target.num_morphisms() {
                if let Some(r) = self.act_right(p, v) {
                    out.push((self.elements[p].id.clone(), self.target.morphism(v).id.clone(), self.elements[r].id.clone()));
                }
            }
        }
        out
    }

    /// The underlying span `C₀ ← P → D₀`, both leg pairs equal.
    pub fn span(&self) -> Span {
        let legs: Vec<(usize, usize)> = self.elements.iter().map(|e| (e.s, e.t)).collect();
        Span {
            left_objects: self.source.num_objects(),
            right_objects: self.target.num_objects(),
            labels: self.elements.iter().map(|e| e.id.clone()).collect(),
            colegs: legs.clone(),
            legs,
        }
    }
}

/// `hom(C)`: elements are the morphisms, actions are composition.
pub fn hom_profunctor(c: &Arc<FinCategory>) -> Result<Profunctor, CatError> {
    let v = validate_category(c);
    if !v.passed() {
        return Err(CatError::Invalid(v.failures().map(|f| f.name.clone()).collect::<Vec<_>>().join(", ")));
    }
    let m = c.num_morphisms();
    let elements = c
        .morphisms()
        .iter()
        .map(|f| Element { id: f.id.clone(), s: f.src, t: f.tgt })
        .collect();
    let mut left = vec![None; m * m];
    let mut right = vec![None; m * m];
    for u in 0..m {
        for f in 0..m {
            // u·f = f∘u and f·u = u∘f
            left[u * m + f] = c.compose(f, u);
            right[f * m + u] = c.compose(u, f);
        }
    }
    Profunctor::from_parts(c.clone(), c.clone(), elements, left, right)
}

/// Checks the bimodule laws; also validates both categories.
pub fn validate_profunctor(p: &Profunctor) -> Report {
    let mut r = Report::new("profunctor");
    r.absorb("source", validate_category(&p.source));
    r.absorb("target", validate_category(&p.target));
    let (c, d) = (&*p.source, &*p.target);
    let name = |e: usize| p.elements[e].id.as_str();
    let mut domain = Vec::new();
    for u in 0..c.num_morphisms() {
        for e in 0..p.len() {
            match (c.tgt(u) == p.s(e), p.act_left(u, e)) {
                (true, None) => domain.push(format!("{}·{} undefined", c.morphism(u).id, name(e))),
                (false, Some(_)) => domain.push(format!("{}·{} defined off-domain", c.morphism(u).id, name(e))),
                (true, Some(x)) if p.s(x) != c.src(u) || p.t(x) != p.t(e) => {
                    domain.push(format!("{}·{} has wrong endpoints", c.morphism(u).id, name(e)))
                }
                _ => {}
            }
        }
    }
    for e in 0..p.len() {
        for v in 0..d.num_morphisms() {
            match (d.src(v) == p.t(e), p.act_right(e, v)) {
                (true, None) => domain.push(format!("{}·{} undefined", name(e), d.morphism(v).id)),
                (false, Some(_)) => domain.push(format!("{}·{} defined off-domain", name(e), d.morphism(v).id)),
                (true, Some(x)) if p.t(x) != d.tgt(v) || p.s(x) != p.s(e) => {
                    domain.push(format!("{}·{} has wrong endpoints", name(e), d.morphism(v).id))
                }
                _ => {}
            }
        }
    }
    r.check("action_domains", if domain.is_empty() { Ok(()) } else { Err(summarize(&domain, 20)) });
    if !r.passed() {
        r.skip("bimodule_laws", "action tables or categories malformed");
        return r;
    }
    let mut unit = Vec::new();
    let mut assoc = Vec::new();
    let mut commute = Vec::new();
    for e in 0..p.len() {
        if p.act_left(c.id(p.s(e)), e) != Some(e) {
            unit.push(format!("id·{}", name(e)));
        }
        if p.act_right(e, d.id(p.t(e))) != Some(e) {
            unit.push(format!("{}·id", name(e)));
        }
        for u in 0..c.num_morphisms() {
            let Some(ue) = p.act_left(u, e) else { continue };
            for w in 0..c.num_morphisms() {
                if c.tgt(w) != c.src(u) {
                    continue;
                }
                // (u∘w)·e = w·(u·e)
                if p.act_left(c.comp(u, w), e) != p.act_left(w, ue) {
                    assoc.push(format!("({}∘{})·{}", c.morphism(u).id, c.morphism(w).id, name(e)));
                }
            }
            for v in 0..d.num_morphisms() {
                let Some(ev) = p.act_right(e, v) else { continue };
                if p.act_right(ue, v) != p.act_left(u, ev) {
                    commute.push(format!("{}·{}·{}", c.morphism(u).id, name(e), d.morphism(v).id));
                }
            }
        }
        for v in 0..d.num_morphisms() {
            let Some(ev) = p.act_right(e, v) else { continue };
            for w in 0..d.num_morphisms() {
                if d.src(w) != d.tgt(v) {
                    continue;
                }
                // e·(w∘v) = (e·v)·w
                if p.act_right(e, d.comp(w, v)) != p.act_right(ev, w) {
                    assoc.push(format!("{}·({}∘{})", name(e), d.morphism(w).id, d.morphism(v).id));
                }
            }
        }
    }
    for (check, bad) in [("unit_actions", unit), ("associative_actions", assoc), ("actions_commute", commute)] {
        r.check(check, if bad.is_empty() { Ok(()) } else { Err(summarize(&bad, 20)) });
    }
    r.stat("elements", p.len());
    r
}

/// `P•Q` together with the pair-level data used to build it.
#[derive(Clone, Debug)]
pub struct Composite {
    pub profunctor: Profunctor,
    /// composable pairs `(p, q)` in lexicographic order; the position is the pair id
    pub pairs: Vec<(usize, usize)>,
    pub class_of_pair: Vec<usize>,
    /// minimum pair id of each class
    pub representative: Vec<usize>,
}

impl Composite {
    /// Class of the pair `(p, q)`.
    pub fn class(&self, p: usize, q: usize) -> Option<usize> {
        self.pairs.binary_search(&(p, q)).ok().map(|i| self.class_of_pair[i])
    }
}

/// Coend quotient `{(p, q) : t(p) = s(q)} / (p·a, q) ~ (p, a·q)`.
pub fn compose_prof(p: &Profunctor, q: &Profunctor) -> Result<Composite, CatError> {
    if p.target != q.source {
        return Err(CatError::EndpointMismatch);
    }
    let mid = &*p.target;
    let mut pairs = Vec::new();
    for a in 0..p.len() {
        for b in 0..q.len() {
            if p.t(a) == q.s(b) {
                pairs.push((a, b));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, x)| (*x, i)).collect();
    let mut uf = UnionFind::<usize>::new(pairs.len());
    for a in 0..p.len() {
        // (a·m, b) ~ (a, m·b) whenever m : t(a) → s(b)
        for m in 0..mid.num_morphisms() {
            let Some(am) = p.act_right(a, m) else { continue };
            for b in 0..q.len() {
                if let Some(mb) = q.act_left(m, b) {
                    uf.union(index[&(am, b)], index[&(a, mb)]);
                }
            }
        }
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut representative = Vec::new();
    let mut class_of_pair = Vec::with_capacity(pairs.len());
    for i in 0..pairs.len() {
        let root = uf.find(i);
        let cls = *class_of_root.entry(root).or_insert_with(|| {
            representative.push(i);
            representative.len() - 1
        });
        class_of_pair.push(cls);
    }
    let elements: Vec<Element> = representative
        .iter()
        .map(|&i| {
            let (a, b) = pairs[i];
            Element { id: format!("{}*{}", p.elements[a].id, q.elements[b].id), s: p.s(a), t: q.t(b) }
        })
        .collect();
    let n = elements.len();
    let (c, d) = (&p.source, &q.target);
    let mut left = vec![None; c.num_morphisms() * n];
    let mut right = vec![None; n * d.num_morphisms()];
    for (k, &i) in representative.iter().enumerate() {
        let (a, b) = pairs[i];
        for u in 0..c.num_morphisms() {
            if let Some(ua) = p.act_left(u, a) {
                left[u * n + k] = Some(class_of_pair[index[&(ua, b)]]);
            }
        }
        for v in 0..d.num_morphisms() {
            if let Some(bv) = q.act_right(b, v) {
                right[k * d.num_morphisms() + v] = Some(class_of_pair[index[&(a, bv)]]);
            }
        }
    }
    let profunctor = Profunctor::from_parts(c.clone(), d.clone(), elements, left, right)?;
    Ok(Composite { profunctor, pairs, class_of_pair, representative })
}

/// A span `C₀ ← X → D₀` carrying two leg pairs `(s, t)` and `(s', t')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left_objects: usize,
    pub right_objects: usize,
    pub labels: Vec<String>,
    pub legs: Vec<(usize, usize)>,
    pub colegs: Vec<(usize, usize)>,
}

impl Span {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Both leg pairs coincide.
    pub fn is_comonad_span(&self) -> bool {
        self.legs == self.colegs
    }
}

/// `T_C()`: the objects of `C` with both legs the diagonal.
pub fn t0_span(c: &FinCategory) -> Span {
    let legs: Vec<(usize, usize)> = (0..c.num_objects()).map(|x| (x, x)).collect();
    Span {
        left_objects: c.num_objects(),
        right_objects: c.num_objects(),
        labels: c.objects().to_vec(),
        colegs: legs.clone(),
        legs,
    }
}

/// Iterated pullback `X₁ ×_{C₁} … ×_{C_{n−1}} X_n` over the `t`/`s` legs.
///
/// Fails with `ParallelArrowsDiffer` if on some tuple the co-legs `t'`, `s'` disagree, since then
/// the plain pullback is not the right object.
pub fn tn_spans(xs: &[&Span]) -> Result<(Span, Vec<Vec<usize>>), CatError> {
    let Some(first) = xs.first() else {
        return Err(CatError::Arity("tn_spans needs n ≥ 1; use t0_span for n = 0".into()));
    };
    for w in xs.windows(2) {
        if w[0].right_objects != w[1].left_objects {
            return Err(CatError::EndpointMismatch);
        }
    }
    let mut tuples: Vec<Vec<usize>> = (0..first.len()).map(|i| vec![i]).collect();
    for (k, x) in xs.iter().enumerate().skip(1) {
        let prev = xs[k - 1];
        let mut next = Vec::new();
        for tup in &tuples {
            let a = *tup.last().unwrap();
            for b in 0..x.len() {
                if prev.legs[a].1 == x.legs[b].0 {
                    if prev.colegs[a].1 != x.colegs[b].0 {
                        return Err(CatError::ParallelArrowsDiffer(format!(
                            "({}, {})",
                            prev.labels[a], x.labels[b]
                        )));
                    }
                    let mut t = tup.clone();
                    t.push(b);
                    next.push(t);
                }
            }
        }
        tuples = next;
    }
    let last = xs[xs.len() - 1];
    let labels = tuples
        .iter()
        .map(|t| t.iter().zip(xs).map(|(i, x)| x.labels[*i].as_str()).collect::<Vec<_>>().join(","))
        .collect();
    let legs: Vec<(usize, usize)> = tuples
        .iter()
        .map(|t| (first.legs[t[0]].0, last.legs[*t.last().unwrap()].1))
        .collect();
    let colegs = tuples
        .iter()
        .map(|t| (first.colegs[t[0]].0, last.colegs[*t.last().unwrap()].1))
        .collect();
    Ok((
        Span { left_objects: first.left_objects, right_objects: last.right_objects, labels, legs, colegs },
        tuples,
    ))
}

/// `T_n` of profunctors: composable tuples with the outer actions on the first and last entries.
pub fn tn_profunctors(ps: &[&Profunctor]) -> Result<Profunctor, CatError> {
    for w in ps.windows(2) {
        if w[0].target != w[1].source {
            return Err(CatError::EndpointMismatch);
        }
    }
    let spans: Vec<Span> = ps.iter().map(|p| p.span()).collect();
    let refs: Vec<&Span> = spans.iter().collect();
    let (span, tuples) = tn_spans(&refs)?;
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let first = ps[0];
    let last = ps[ps.len() - 1];
    let (c, d) = (first.source.clone(), last.target.clone());
    let n = tuples.len();
    let mut left = vec![None; c.num_morphisms() * n];
    let mut right = vec![None; n * d.num_morphisms()];
    for (k, t) in tuples.iter().enumerate() {
        for u in 0..c.num_morphisms() {
            if let Some(x) = first.act_left(u, t[0]) {
                let mut t2 = t.clone();
                t2[0] = x;
                left[u * n + k] = Some(index[&t2]);
            }
        }
        for v in 0..d.num_morphisms() {
            if let Some(x) = last.act_right(*t.last().unwrap(), v) {
                let mut t2 = t.clone();
                *t2.last_mut().unwrap() = x;
                right[k * d.num_morphisms() + v] = Some(index[&t2]);
            }
        }
    }
    let elements = span
        .labels
        .iter()
        .zip(&span.legs)
        .map(|(l, (s, t))| Element { id: l.clone(), s: *s, t: *t })
        .collect();
    Profunctor::from_parts(c, d, elements, left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_profunctor_examples() {
        let d = Arc::new(FinCategory::discrete(3));
        let h = hom_profunctor(&d).unwrap();
        assert_eq!(h.len(), 3);
        assert!(validate_profunctor(&h).passed());
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let h = hom_profunctor(&z2).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.act_left(1, 1), Some(0));
        assert_eq!(h.act_right(1, 0), Some(1));
        assert!(validate_profunctor(&h).passed());
        assert_eq!(hom_profunctor(&Arc::new(FinCategory::arrow())).unwrap().len(), 3);
    }

    #[test]
    fn compose_regular_biset_of_z2() {
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let h = hom_profunctor(&z2).unwrap();
        let c = compose_prof(&h, &h).unwrap();
        assert_eq!(c.pairs.len(), 4);
        assert_eq!(c.profunctor.len(), 2);
        assert!(validate_profunctor(&c.profunctor).passed());
    }

    #[test]
    fn tn_over_discrete_counts_paths() {
        let d = Arc::new(FinCategory::discrete(2));
        let h = hom_profunctor(&d).unwrap();
        let t = tn_profunctors(&[&h, &h, &h]).unwrap();
        assert_eq!(t.len(), 2);
        assert!(validate_profunctor(&t).passed());
        let (one, _) = tn_spans(&[&h.span()]).unwrap();
        assert_eq!(one, h.span());
        let c = FinCategory::arrow();
        assert_eq!(t0_span(&c).len(), 2);
    }

    #[test]
    fn differing_parallel_arrows_are_detected() {
        let d = Arc::new(FinCategory::discrete(2));
        let mut s = hom_profunctor(&d).unwrap().span();
        s.colegs[0] = (1, 1);
        let h = hom_profunctor(&d).unwrap().span();
        assert!(matches!(tn_spans(&[&s, &h]), Err(CatError::ParallelArrowsDiffer(_))));
    }
}
