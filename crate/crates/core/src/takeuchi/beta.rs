use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::exactlin::{sparse, ExactMatrix, Scalar, SparseVec};
use crate::report::Report;

use super::tn::{add_kron, split_index};
use super::{tn_map, DoubleModule, FDAlgebra, TakeuchiError, Tn};

/// A composition `m_1 + … + m_k` of the number of factors; zero parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn has_zero_part(&self) -> bool {
        self.0.contains(&0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for Partition {
    type Err = TakeuchiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Result<Vec<usize>, _> = s.split(['+', ',']).map(|p| p.trim().parse::<usize>()).collect();
        match parts {
            Ok(p) if !p.is_empty() => Ok(Partition(p)),
            _ => Err(TakeuchiError::Arity(format!("`{s}` is not a partition like 2+1"))),
        }
    }
}

enum Group {
    Factors(usize, usize),
    Unit(Arc<FDAlgebra>),
}

/// The comparison map `β_ξ : T_k(T_{m_1}(X…), …, T_{m_k}(…X_n)) → T_n(X_1,…,X_n)` of the k-linear reading.
#[derive(Clone, Debug)]
pub struct Beta {
    pub partition: Partition,
    pub inner: Vec<Tn>,
    pub grouped: Tn,
    pub flat: Tn,
    /// `flat.dim × grouped.dim`
    pub matrix: ExactMatrix,
}

impl Beta {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.grouped.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.flat.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `iso`, `mono`, `epi` or `neither`, describing the linear map from grouped to flat.
    pub fn verdict(&self) -> &'static str {
        match (self.is_injective(), self.is_surjective()) {
            (true, true) => "iso",
            (true, false) => "mono",
            (false, true) => "epi",
            (false, false) => "neither",
        }
    }
}

/// Builds `β_ξ`. An `End(R)` group is absorbed into the nearest factor: into the next one through its
/// left action, or, when nothing follows, into the previous one through its right action.
pub fn beta(partition: &Partition, factors: &[Arc<DoubleModule>]) -> Result<Beta, TakeuchiError> {
    let n = factors.len();
    if n == 0 || partition.total() == 0 {
        return Err(TakeuchiError::Arity("β needs m > 0 factors".into()));
    }
    if partition.total() != n {
        return Err(TakeuchiError::Arity(format!("partition {partition} does not add up to {n} factors")));
    }
    if partition.parts().is_empty() {
        return Err(TakeuchiError::Arity("empty partition".into()));
    }
    // groups and, for units, the base algebra at that boundary
    let mut groups = Vec::new();
    let mut start = 0;
    for &m in partition.parts() {
        if m == 0 {
            let base = if start < n { factors[start].left_base().clone() } else { factors[n - 1].right_base().clone() };
            groups.push(Group::Unit(base));
        } else {
            groups.push(Group::Factors(start, start + m));
        }
        start += m;
    }
    let inner: Vec<Tn> = groups
        .iter()
        .map(|g| match g {
            Group::Factors(a, b) => Tn::new(&factors[*a..*b]),
            Group::Unit(base) => Ok(Tn::unit(base)),
        })
        .collect::<Result<_, _>>()?;
    let grouped = Tn::new(&inner.iter().map(|t| t.module().clone()).collect::<Vec<_>>())?;
    let flat = Tn::new(factors)?;
    let field = factors[0].field();
    let flat_dims: Vec<usize> = factors.iter().map(|x| x.dim()).collect();
    let inner_dims: Vec<usize> = inner.iter().map(|t| t.dim()).collect();

    // target factor and side for each unit group
    let absorb: Vec<Option<(usize, bool)>> = groups
        .iter()
        .enumerate()
        .map(|(gi, g)| match g {
            Group::Factors(..) => None,
            Group::Unit(_) => {
                let next = groups[gi + 1..].iter().find_map(|h| match h {
                    Group::Factors(a, _) => Some(*a),
                    Group::Unit(_) => None,
                });
                Some(match next {
                    Some(a) => (a, true),
                    None => (n - 1, false),
                })
            }
        })
        .collect();

    let mut cols = Vec::with_capacity(grouped.dim());
    for col in grouped.lift().columns() {
        let mut acc = sparse::Accumulator::new(field, flat.ambient_dim());
        for (idx, coef) in col {
            let digits = split_index(*idx, &inner_dims);
            // each inner basis vector lifted to its own ambient space
            let parts: Vec<&SparseVec> = digits.iter().zip(&inner).map(|(k, t)| t.lift().column(*k)).collect();
            expand(field, &groups, &absorb, factors, &parts, coef, &flat_dims, &mut acc);
        }
        let v = acc.take();
        cols.push(flat.project(&v).ok_or_else(|| {
            TakeuchiError::NotInSubspace(format!("β_{partition} lands outside T_{n}"))
        })?);
    }
    let matrix = ExactMatrix::from_sparse_columns(field, flat.dim(), cols);
    Ok(Beta { partition: partition.clone(), inner, grouped, flat, matrix })
}

type ExpandCtx<'a> = (&'a [Group], &'a [Option<(usize, bool)>], &'a [Arc<DoubleModule>], &'a [&'a SparseVec], &'a [usize]);

#[allow(clippy::too_many_arguments)]
fn expand(
    field: crate::exactlin::FieldSpec,
    groups: &[Group],
    absorb: &[Option<(usize, bool)>],
    factors: &[Arc<DoubleModule>],
    parts: &[&SparseVec],
    coef: &Scalar,
    flat_dims: &[usize],
    acc: &mut sparse::Accumulator,
) {
    // choose one ambient basis term in every group
    fn go(
        field: crate::exactlin::FieldSpec,
        g: usize,
        chosen: &mut Vec<usize>,
        coef: &Scalar,
        ctx: &ExpandCtx,
        acc: &mut sparse::Accumulator,
    ) {
        let (groups, absorb, factors, parts, flat_dims) = *ctx;
        if g == groups.len() {
            let mut slots: Vec<SparseVec> = vec![Vec::new(); factors.len()];
            let mut units: Vec<(usize, usize, usize)> = Vec::new();
            for (gi, grp) in groups.iter().enumerate() {
                match grp {
                    Group::Factors(a, b) => {
                        let ds: Vec<usize> = (*a..*b).map(|i| factors[i].dim()).collect();
                        for (off, k) in split_index(chosen[gi], &ds).into_iter().enumerate() {
                            slots[a + off] = sparse::unit(k, field);
                        }
                    }
                    Group::Unit(base) => {
                        let d = base.dim();
                        units.push((gi, chosen[gi] / d, chosen[gi] % d));
                    }
                }
            }
            let mut c = coef.clone();
            // E_ab ↦ (unit coefficient at b) · a, applied innermost first
            let leftward: Vec<_> = units.iter().filter(|(gi, _, _)| !absorb[*gi].unwrap().1).collect();
            let rightward: Vec<_> = units.iter().filter(|(gi, _, _)| absorb[*gi].unwrap().1).rev().collect();
            for &&(gi, a, b) in rightward.iter().chain(leftward.iter()) {
                let Group::Unit(base) = &groups[gi] else { unreachable!() };
                match sparse::get(base.unit(), b) {
                    Some(u) => c = field.mul(&c, u),
                    None => return,
                }
                let (slot, to_next) = absorb[gi].unwrap();
                let m = if to_next { &factors[slot].rro()[a] } else { &factors[slot].rs()[a] };
                slots[slot] = m.apply(&slots[slot]);
            }
            add_kron(field, acc, &c, &slots, flat_dims);
            return;
        }
        for (k, x) in parts[g] {
            chosen.push(*k);
            go(field, g + 1, chosen, &field.mul(coef, x), ctx, acc);
            chosen.pop();
        }
    }
    let ctx = (groups, absorb, factors, parts, flat_dims);
    go(field, 0, &mut Vec::new(), coef, &ctx, acc);
}

/// Rank and verdict of `β_ξ`; partitions with a zero part are rejected since the comparison
/// is only claimed invertible when every `m_i > 0`.
pub fn beta_iso_report(partition: &Partition, factors: &[Arc<DoubleModule>]) -> Result<Report, TakeuchiError> {
    if partition.has_zero_part() {
        return Err(TakeuchiError::Arity(format!("partition {partition} has a zero part; need every m_i > 0")));
    }
    let b = beta(partition, factors)?;
    let mut r = Report::new(format!("beta {partition}"));
    r.stat("grouped_dim", b.grouped.dim());
    r.stat("flat_dim", b.flat.dim());
    r.stat("rank", b.rank());
    r.stat("verdict", b.verdict());
    r.check(
        "iso",
        if b.is_iso() {
            Ok(())
        } else {
            Err(format!("rank {} with dims {} → {}", b.rank(), b.grouped.dim(), b.flat.dim()))
        },
    );
    Ok(r)
}

/// Two routes from `T_k(T_{l_1}(Y…), …)` to `T_n(X…)`, where the `Y`s are the groups of `inner`:
/// `β_outer ∘ T_k(β_{ζ_1}, …, β_{ζ_k})` and `β_{ζ_1+…+ζ_k} ∘ β_{(l_1+…+l_k)}`.
///
/// `outer` groups the `X`s; `inner[i]` refines group `i`. Returns the two matrices.
pub fn beta_two_routes(
    factors: &[Arc<DoubleModule>],
    outer: &Partition,
    inner: &[Partition],
) -> Result<(ExactMatrix, ExactMatrix), TakeuchiError> {
    if inner.len() != outer.parts().len() {
        return Err(TakeuchiError::Arity("one refinement per outer group is needed".into()));
    }
    if outer.has_zero_part() || inner.iter().any(|z| z.has_zero_part()) {
        return Err(TakeuchiError::Arity("refinement coherence needs every part > 0".into()));
    }
    let mut groups = Vec::new();
    let mut start = 0;
    for (m, z) in outer.parts().iter().zip(inner) {
        if z.total() != *m {
            return Err(TakeuchiError::Arity(format!("refinement {z} does not split a group of {m}")));
        }
        groups.push(&factors[start..start + m]);
        start += m;
    }
    let big = beta(outer, factors)?;
    // Y: the innermost groups, as modules
    let mut ys = Vec::new();
    let mut lens = Vec::new();
    let mut inner_betas = Vec::new();
    for (g, z) in groups.iter().zip(inner) {
        let b = beta(z, g)?;
        lens.push(z.parts().len());
        ys.extend(b.inner.iter().map(|t| t.module().clone()));
        inner_betas.push(b);
    }
    let middle = beta(&Partition(lens), &ys)?;
    let concat = Partition(inner.iter().flat_map(|z| z.parts().iter().copied()).collect());
    let fine = beta(&concat, factors)?;

    let maps: Vec<&ExactMatrix> = inner_betas.iter().map(|b| &b.matrix).collect();
    let lifted = tn_map(&middle.grouped, &big.grouped, &maps)?;
    let route_a = big.matrix.checked_mul(&lifted)?;
    let route_b = fine.matrix.checked_mul(&middle.matrix)?;
    Ok((route_a, route_b))
}
