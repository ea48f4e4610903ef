use std::collections::{BTreeMap, HashMap};

use crate::report::{summarize, Report};

use super::CatError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by a composition table.
///
/// Construction only checks that the table is well-formed data; categorical laws are
/// checked by [`validate_category`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    /// `compose[g * |Mor| + f] = g∘f`
    compose: Vec<Option<usize>>,
}

impl FinCategory {
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        compose: Vec<Option<usize>>,
    ) -> Result<Self, CatError> {
        let m = morphisms.len();
        if identities.len() != objects.len() {
            return Err(CatError::Malformed("one identity per object required".into()));
        }
        if compose.len() != m * m {
            return Err(CatError::Malformed("composition table has wrong size".into()));
        }
        if morphisms.iter().any(|f| f.src >= objects.len() || f.tgt >= objects.len())
            || identities.iter().any(|&i| i >= m)
            || compose.iter().flatten().any(|&h| h >= m)
        {
            return Err(CatError::Malformed("index out of range".into()));
        }
        Ok(FinCategory { objects, morphisms, identities, compose })
    }

    /// Builds from named data: `compose` holds `(g, f, g∘f)` triples.
    pub fn from_named(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        identities: &BTreeMap<String, String>,
        compose: &[(String, String, String)],
    ) -> Result<Self, CatError> {
        let obj: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj.len() != objects.len() {
            return Err(CatError::Malformed("duplicate object id".into()));
        }
        let look_obj = |o: &str| obj.get(o).copied().ok_or_else(|| CatError::UnknownId(o.to_string()));
        let mut mors = Vec::new();
        for (id, s, t) in &morphisms {
            mors.push(Morphism { id: id.clone(), src: look_obj(s)?, tgt: look_obj(t)? });
        }
        let mor: HashMap<&str, usize> = mors.iter().enumerate().map(|(i, f)| (f.id.as_str(), i)).collect();
        if mor.len() != mors.len() {
            return Err(CatError::Malformed("duplicate morphism id".into()));
        }
        let look = |f: &str| mor.get(f).copied().ok_or_else(|| CatError::UnknownId(f.to_string()));
        let mut ids = Vec::new();
        for o in &objects {
            let f = identities
                .get(o)
                .ok_or_else(|| CatError::Malformed(format!("no identity for object {o}")))?;
            ids.push(look(f)?);
        }
        let m = mors.len();
        let mut table = vec![None; m * m];
        for (g, f, h) in compose {
            let (g, f, h) = (look(g)?, look(f)?, look(h)?);
            if table[g * m + f].replace(h).is_some_and(|old| old != h) {
                return Err(CatError::Malformed(format!(
                    "conflicting composites for ({}, {})",
                    mors[g].id, mors[f].id
                )));
            }
        }
        Self::from_parts(objects, mors, ids, table)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn id(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g∘f` if the table defines it.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// `g∘f`; panics unless composable in a validated category.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| {
            panic!("{} and {} are not composable", self.morphisms[g].id, self.morphisms[f].id)
        })
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.id == id)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len()).filter(|&f| self.src(f) == x && self.tgt(f) == y).collect()
    }

    /// `(g, f, g∘f)` triples by id, for serialization.
    pub fn composition_triples(&self) -> Vec<(String, String, String)> {
        let m = self.morphisms.len();
        let mut out = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    out.push((
                        self.morphisms[g].id.clone(),
                        self.morphisms[f].id.clone(),
                        self.morphisms[h].id.clone(),
                    ));
                }
            }
        }
        out
    }

    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| format!("x{i}")).collect();
        let morphisms = (0..n).map(|i| Morphism { id: format!("id_x{i}"), src: i, tgt: i }).collect();
        let mut compose = vec![None; n * n];
        for i in 0..n {
            compose[i * n + i] = Some(i);
        }
        FinCategory { objects, morphisms, identities: (0..n).collect(), compose }
    }

    /// One-object category of a monoid; `table[a][b] = a·b` and element 0 is the unit.
    pub fn from_monoid(table: &[Vec<usize>]) -> Result<Self, CatError> {
        let m = table.len();
        let morphisms = (0..m)
            .map(|i| Morphism { id: if i == 0 { "1".into() } else { format!("g{i}") }, src: 0, tgt: 0 })
            .collect();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                compose[g * m + f] = Some(table[g][f]);
            }
        }
        Self::from_parts(vec!["*".into()], morphisms, vec![0], compose)
    }

    pub fn cyclic_group(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_monoid(&table).expect("cyclic group table")
    }

    /// `x0 → x1` with one non-identity arrow.
    pub fn arrow() -> Self {
        Self::free_on_dag(2, &[(0, 1)]).expect("arrow category")
    }

    /// Indiscrete groupoid on `n` objects: exactly one arrow between any two objects.
    pub fn indiscrete(n: usize) -> Self {
        Self::groupoid(n, &[vec![0]])
    }

    /// Connected groupoid on `n` objects with vertex group given by `table` (unit 0).
    ///
    /// Arrows are `(x, y, g)` for `x → y`; composition `(y,z,h)∘(x,y,g) = (x,z,h·g)`.
    pub fn groupoid(n: usize, table: &[Vec<usize>]) -> Self {
        let k = table.len();
        let idx = |x: usize, y: usize, g: usize| (x * n + y) * k + g;
        let mut morphisms = Vec::with_capacity(n * n * k);
        for x in 0..n {
            for y in 0..n {
                for g in 0..k {
                    let id = if x == y && g == 0 { format!("id_x{x}") } else { format!("x{x}>x{y}:{g}") };
                    morphisms.push(Morphism { id, src: x, tgt: y });
                }
            }
        }
        let m = morphisms.len();
        let mut compose = vec![None; m * m];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for g in 0..k {
                        for h in 0..k {
                            compose[idx(y, z, h) * m + idx(x, y, g)] = Some(idx(x, z, table[h][g]));
                        }
                    }
                }
            }
        }
        FinCategory {
            objects: (0..n).map(|i| format!("x{i}")).collect(),
            morphisms,
            identities: (0..n).map(|x| idx(x, x, 0)).collect(),
            compose,
        }
    }

    /// Free category on a finite acyclic graph; errors if the graph has a cycle.
    pub fn free_on_dag(n: usize, edges: &[(usize, usize)]) -> Result<Self, CatError> {
        // paths as edge sequences, enumerated by length
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|x| (x, x, Vec::new())).collect();
        let mut frontier: Vec<usize> = Vec::new();
        for (e, &(s, t)) in edges.iter().enumerate() {
            frontier.push(paths.len());
            paths.push((s, t, vec![e]));
        }
        let mut len = 1;
        while !frontier.is_empty() {
            if len > n {
                return Err(CatError::Malformed("graph has a cycle".into()));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let (s, t, seq) = paths[p].clone();
                for (e, &(es, et)) in edges.iter().enumerate() {
                    if es == t {
                        let mut seq2 = seq.clone();
                        seq2.push(e);
                        next.push(paths.len());
                        paths.push((s, et, seq2));
                    }
                }
            }
            frontier = next;
            len += 1;
        }
        let index: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.2.is_empty())
            .map(|(i, p)| (p.2.clone(), i))
            .collect();
        let m = paths.len();
        let mut compose = vec![None; m * m];
        for (f, (_, ft, fseq)) in paths.iter().enumerate() {
            for (g, (gs, _, gseq)) in paths.iter().enumerate() {
                if gs != ft {
                    continue;
                }
                let h = if fseq.is_empty() {
                    g
                } else if gseq.is_empty() {
                    f
                } else {
                    let mut seq = fseq.clone();
                    seq.extend(gseq);
                    index[&seq]
                };
                compose[g * m + f] = Some(h);
            }
        }
        let morphisms = paths
            .iter()
            .map(|(s, t, seq)| {
                let id = if seq.is_empty() {
                    format!("id_x{s}")
                } else {
                    seq.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(";")
                };
                Morphism { id, src: *s, tgt: *t }
            })
            .collect();
        Ok(FinCategory {
            objects: (0..n).map(|i| format!("x{i}")).collect(),
            morphisms,
            identities: (0..n).collect(),
            compose,
        })
    }

    /// Disjoint union; ids of the second summand get a `'` suffix when they clash.
    pub fn coproduct(&self, other: &FinCategory) -> FinCategory {
        let n1 = self.objects.len();
        let m1 = self.morphisms.len();
        let m = m1 + other.morphisms.len();
        let rename = |s: &String, taken: &[String]| {
            let mut s = s.clone();
            while taken.contains(&s) {
                s.push('\'');
            }
            s
        };
        let mut objects = self.objects.clone();
        for o in &other.objects {
            let o = rename(o, &objects);
            objects.push(o);
        }
        let mut morphisms = self.morphisms.clone();
        let mut taken: Vec<String> = morphisms.iter().map(|f| f.id.clone()).collect();
        for f in &other.morphisms {
            let id = rename(&f.id, &taken);
            taken.push(id.clone());
            morphisms.push(Morphism { id, src: f.src + n1, tgt: f.tgt + n1 });
        }
        let mut compose = vec![None; m * m];
        for g in 0..m1 {
            for f in 0..m1 {
                compose[g * m + f] = self.compose(g, f);
            }
        }
        for g in 0..other.morphisms.len() {
            for f in 0..other.morphisms.len() {
                compose[(g + m1) * m + f + m1] = other.compose(g, f).map(|h| h + m1);
            }
        }
        let mut identities = self.identities.clone();
        identities.extend(other.identities.iter().map(|i| i + m1));
        FinCategory { objects, morphisms, identities, compose }
    }
}

/// Lists every violated composition-domain, identity and associativity instance.
pub fn validate_category(c: &FinCategory) -> Report {
    let mut r = Report::new("category");
    let m = c.num_morphisms();
    let name = |f: usize| c.morphisms[f].id.as_str();
    let mut domain = Vec::new();
    for g in 0..m {
        for f in 0..m {
            let composable = c.tgt(f) == c.src(g);
            match (composable, c.compose(g, f)) {
                (true, None) => domain.push(format!("missing {}∘{}", name(g), name(f))),
                (false, Some(_)) => domain.push(format!("defined non-composable {}∘{}", name(g), name(f))),
                (true, Some(h)) if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) => {
                    domain.push(format!("{}∘{} = {} has wrong endpoints", name(g), name(f), name(h)))
                }
                _ => {}
            }
        }
    }
    let mut identity = Vec::new();
    for (x, &i) in c.identities.iter().enumerate() {
        if c.src(i) != x || c.tgt(i) != x {
            identity.push(format!("identity of {} has wrong endpoints", c.objects[x]));
        }
    }
    for f in 0..m {
        let (s, t) = (c.src(f), c.tgt(f));
        if c.compose(f, c.id(s)) != Some(f) {
            identity.push(format!("{}∘id_{} ≠ {}", name(f), c.objects[s], name(f)));
        }
        if c.compose(c.id(t), f) != Some(f) {
            identity.push(format!("id_{}∘{} ≠ {}", c.objects[t], name(f), name(f)));
        }
    }
    let mut assoc = Vec::new();
    for f in 0..m {
        for g in 0..m {
            let Some(gf) = c.compose(g, f) else { continue };
            for h in 0..m {
                let Some(hg) = c.compose(h, g) else { continue };
                let left = c.compose(h, gf);
                let right = c.compose(hg, f);
                if left != right {
                    assoc.push(format!("({}, {}, {})", name(h), name(g), name(f)));
                }
            }
        }
    }
    for (check, bad) in [("composition_domain", domain), ("identity_laws", identity), ("associativity", assoc)] {
        if bad.is_empty() {
            r.pass(check);
        } else {
            r.fail(check, summarize(&bad, 20));
        }
    }
    r.stat("objects", c.num_objects());
    r.stat("morphisms", c.num_morphisms());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_categories_are_valid() {
        assert!(validate_category(&FinCategory::discrete(3)).passed());
        assert!(validate_category(&FinCategory::cyclic_group(2)).passed());
        assert!(validate_category(&FinCategory::arrow()).passed());
        assert!(validate_category(&FinCategory::indiscrete(2)).passed());
        let z2 = vec![vec![0, 1], vec![1, 0]];
        assert!(validate_category(&FinCategory::groupoid(2, &z2)).passed());
        let dag = FinCategory::free_on_dag(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(dag.num_morphisms(), 3 + 3 + 1);
        assert!(validate_category(&dag).passed());
        assert!(validate_category(&dag.coproduct(&FinCategory::cyclic_group(3))).passed());
        assert!(FinCategory::free_on_dag(1, &[(0, 0)]).is_err());
    }

    #[test]
    fn corrupted_composite_names_the_triple() {
        let ok = FinCategory::from_monoid(&[vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]).unwrap();
        assert!(validate_category(&ok).passed());
        let bad = FinCategory::from_monoid(&[vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]]).unwrap();
        let r = validate_category(&bad);
        assert!(!r.passed());
        let w = r.checks.iter().find(|c| c.name == "associativity").unwrap().witness.clone().unwrap();
        assert!(w.contains("(g1, g1, g1)"), "{w}");
    }
}
