use std::fmt;
use std::str::FromStr;

use super::source::{SourceKind, SourceProblem};
use crate::error::{Error, Result};
use crate::model::{Arrangement, Instance, PreferenceProfile, SeatGraph};
use crate::oracle::{Oracle, Problem};
use crate::param::local_k_sta_with_budget;
use crate::rational::Rational;

/// One hardness construction, identified by the target problem and its source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    StaExchangeRoommates,
    EfaTriangles,
    EfaCliqueIs,
    Efa3Partition,
    MwaSpanning,
    MuaSpanningRegular,
    MwaKclique,
    MuaPartition,
    EfaPartition,
    LocalStaIndependentSet,
}

impl Reduction {
    pub const ALL: [Reduction; 10] = [
        Reduction::StaExchangeRoommates,
        Reduction::EfaTriangles,
        Reduction::EfaCliqueIs,
        Reduction::Efa3Partition,
        Reduction::MwaSpanning,
        Reduction::MuaSpanningRegular,
        Reduction::MwaKclique,
        Reduction::MuaPartition,
        Reduction::EfaPartition,
        Reduction::LocalStaIndependentSet,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Reduction::StaExchangeRoommates => "sta_exchange_roommates",
            Reduction::EfaTriangles => "efa_triangles",
            Reduction::EfaCliqueIs => "efa_clique_is",
            Reduction::Efa3Partition => "efa_3partition",
            Reduction::MwaSpanning => "mwa_spanning",
            Reduction::MuaSpanningRegular => "mua_spanning_regular",
            Reduction::MwaKclique => "mwa_kclique",
            Reduction::MuaPartition => "mua_partition",
            Reduction::EfaPartition => "efa_partition",
            Reduction::LocalStaIndependentSet => "local_sta_independent_set",
        }
    }

    pub fn source_kind(self) -> SourceKind {
        match self {
            Reduction::StaExchangeRoommates => SourceKind::ExchangeRoommates,
            Reduction::EfaTriangles => SourceKind::PartitionIntoTriangles,
            Reduction::EfaCliqueIs | Reduction::MwaKclique => SourceKind::KClique,
            Reduction::Efa3Partition => SourceKind::ThreePartition,
            Reduction::MwaSpanning | Reduction::MuaSpanningRegular => SourceKind::SpanningSubgraphIso,
            Reduction::MuaPartition | Reduction::EfaPartition => SourceKind::Partition,
            Reduction::LocalStaIndependentSet => SourceKind::IndependentSet,
        }
    }

    pub fn problem(self) -> Problem {
        match self {
            Reduction::StaExchangeRoommates | Reduction::LocalStaIndependentSet => Problem::Sta,
            Reduction::EfaTriangles | Reduction::EfaCliqueIs | Reduction::Efa3Partition | Reduction::EfaPartition => {
                Problem::Efa
            }
            Reduction::MwaSpanning | Reduction::MwaKclique => Problem::Mwa,
            Reduction::MuaSpanningRegular | Reduction::MuaPartition => Problem::Mua,
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Reduction> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown reduction {s:?}")))
    }
}

/// A named group of agents and the seats built for them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Role {
    pub name: String,
    pub agents: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GadgetNotes {
    pub roles: Vec<Role>,
    pub constants: Vec<(String, Rational)>,
}

impl GadgetNotes {
    fn role(&mut self, name: &str, agents: impl IntoIterator<Item = usize>, vertices: impl IntoIterator<Item = usize>) {
        self.roles.push(Role {
            name: name.to_string(),
            agents: agents.into_iter().collect(),
            vertices: vertices.into_iter().collect(),
        });
    }

    fn constant(&mut self, name: &str, value: Rational) {
        self.constants.push((name.to_string(), value));
    }
}

/// A generated instance together with the question it encodes.
///
/// For optimization targets the question is whether the optimum reaches
/// `target`. For the local-search gadget it is whether a stable arrangement
/// lies within `k` swaps of `start_arrangement`.
#[derive(Debug, Clone)]
pub struct HardInstance {
    pub reduction: Reduction,
    pub source: SourceProblem,
    pub instance: Instance,
    pub problem: Problem,
    pub target: Option<Rational>,
    pub start_arrangement: Option<Arrangement>,
    pub k: Option<usize>,
    pub gadget_notes: GadgetNotes,
}

impl HardInstance {
    /// Answers the encoded question exactly: brute force for the four base
    /// problems, cycle-structure search for the local one.
    pub fn decide(&self, oracle: &Oracle) -> Result<bool> {
        if let (Some(start), Some(k)) = (&self.start_arrangement, self.k) {
            return Ok(local_k_sta_with_budget(&self.instance, start, k, oracle.budget())?.is_some());
        }
        let report = oracle.brute_solve(self.problem, &self.instance)?;
        Ok(match (self.target, report.objective) {
            (Some(t), Some(v)) => v >= t,
            _ => report.feasible,
        })
    }
}

struct Table {
    rows: Vec<Vec<Rational>>,
}

impl Table {
    fn new(n: usize) -> Table {
        Table {
            rows: vec![vec![Rational::ZERO; n]; n],
        }
    }

    fn set(&mut self, p: usize, q: usize, v: impl Into<Rational>) {
        if p != q {
            self.rows[p][q] = v.into();
        }
    }

    fn both(&mut self, p: usize, q: usize, v: impl Into<Rational> + Copy) {
        self.set(p, q, v);
        self.set(q, p, v);
    }

    fn finish(self) -> PreferenceProfile {
        PreferenceProfile::new(self.rows).expect("diagonal is never written")
    }
}

fn disjoint_cliques(count: usize, size: usize) -> SeatGraph {
    let edges = (0..count).flat_map(|c| {
        let base = c * size;
        (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
    });
    SeatGraph::new(count * size, edges).expect("cliques are simple")
}

/// Builds the gadget of `reduction` from `source`.
pub fn generate(reduction: Reduction, source: &SourceProblem) -> Result<HardInstance> {
    if source.kind() != reduction.source_kind() {
        return Err(Error::InvalidArgument(format!(
            "{reduction} expects a {} source, got {}",
            reduction.source_kind().name(),
            source.kind().name()
        )));
    }
    source.validate()?;
    let mut notes = GadgetNotes::default();
    let mut target = None;
    let mut start = None;
    let mut swaps = None;
    let instance = match (reduction, source) {
        (Reduction::StaExchangeRoommates, SourceProblem::ExchangeRoommates { lists }) => {
            let n = lists.len();
            let mut t = Table::new(n);
            for (p, groups) in lists.iter().enumerate() {
                let mut better = 0;
                for group in groups {
                    for &q in group {
                        t.set(p, q, Rational::from((n - 1 - better) as i64));
                    }
                    better += group.len();
                }
            }
            notes.role("roommates", 0..n, 0..n);
            Instance::new(disjoint_cliques(n / 2, 2), t.finish())?
        }
        (Reduction::EfaTriangles, SourceProblem::PartitionIntoTriangles { graph }) => {
            let nv = graph.vertex_count();
            if nv % 3 != 0 {
                return Err(Error::InvalidArgument(format!(
                    "{reduction} needs |V| divisible by 3, got |V| = {nv}"
                )));
            }
            let mut t = Table::new(nv + 3);
            for &(u, v) in graph.edges() {
                t.both(u, v, Rational::ONE);
            }
            for s in nv..nv + 3 {
                for p in 0..nv {
                    t.both(s, p, Rational::ONE);
                }
                for s2 in nv..nv + 3 {
                    t.set(s, s2, Rational::from(2));
                }
            }
            notes.role("vertex agents", 0..nv, 0..nv);
            notes.role("super agents x, y, z", nv..nv + 3, nv..nv + 3);
            Instance::new(disjoint_cliques(nv / 3 + 1, 3), t.finish())?
        }
        (Reduction::EfaCliqueIs, SourceProblem::KClique { graph, k }) => {
            let (nv, ne, k) = (graph.vertex_count(), graph.edge_count(), *k);
            let pairs = k * k.saturating_sub(1) / 2;
            // M > k(k-1)/2 keeps at most k vertices' copies on I; the extra one
            // keeps the clique part at two or more seats whenever |V| > k, since
            // a single clique seat has no neighbors to envy
            let m = pairs + 2;
            let independent = m * k + pairs;
            let clique = (ne + (nv - k) * m).checked_sub(pairs).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{reduction} needs |E| + (|V| - k)M >= k(k-1)/2 so the clique part has nonnegative size"
                ))
            })?;
            let n = ne + m * nv;
            let copy = |v: usize, i: usize| ne + v * m + i;
            let mut t = Table::new(n);
            for (e, &(u, v)) in graph.edges().iter().enumerate() {
                t.set(e, copy(u, 0), Rational::ONE);
                t.set(e, copy(v, 0), Rational::ONE);
            }
            for v in 0..nv {
                for i in 0..m {
                    for j in 0..m {
                        t.set(copy(v, i), copy(v, j), Rational::ONE);
                    }
                }
            }
            let edges = (independent..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            notes.role("edge agents", 0..ne, []);
            notes.role("vertex copies", ne..n, []);
            notes.role("independent set I", [], 0..independent);
            notes.role("clique C", [], independent..independent + clique);
            notes.constant("M", Rational::from(m as i64));
            Instance::new(SeatGraph::new(n, edges)?, t.finish())?
        }
        (Reduction::Efa3Partition, SourceProblem::ThreePartition { values, bound }) => {
            if let Some(a) = values.iter().find(|&&a| !(4 * a > *bound && 2 * a < *bound)) {
                return Err(Error::InvalidArgument(format!(
                    "{reduction} needs B/4 < a < B/2 for every element, got a = {a} with B = {bound}"
                )));
            }
            let m = values.len() / 3;
            let n = 4 * m + 1;
            let mut t = Table::new(n);
            for j in 1..=m {
                t.set(j, 0, Rational::from(*bound as i64));
                for (i, &a) in values.iter().enumerate() {
                    t.set(j, m + 1 + i, Rational::from(a as i64));
                }
            }
            let edges = (1..=m).flat_map(|j| {
                std::iter::once((0, j)).chain((0..3).map(move |c| (j, m + 1 + 3 * (j - 1) + c)))
            });
            notes.role("root p_r", [0], [0]);
            notes.role("triple agents P_T", 1..=m, 1..=m);
            notes.role("element agents P_A", m + 1..n, m + 1..n);
            notes.constant("B", Rational::from(*bound as i64));
            Instance::new(SeatGraph::new(n, edges)?, t.finish())?
        }
        (Reduction::MwaSpanning | Reduction::MuaSpanningRegular, SourceProblem::SpanningSubgraphIso { pattern, host }) => {
            let n = host.vertex_count();
            if reduction == Reduction::MuaSpanningRegular {
                let r = pattern.regular_degree().ok_or_else(|| {
                    Error::GraphClass(format!("{reduction} needs a regular pattern graph G"))
                })?;
                target = Some(Rational::from(r as i64));
            } else {
                target = Some(Rational::from(2 * pattern.edge_count() as i64));
            }
            let mut t = Table::new(n);
            for &(u, v) in host.edges() {
                t.both(u, v, Rational::ONE);
            }
            notes.role("host vertices as agents", 0..n, 0..n);
            Instance::new(pattern.clone(), t.finish())?
        }
        (Reduction::MwaKclique, SourceProblem::KClique { graph, k }) => {
            let n = graph.vertex_count();
            let mut t = Table::new(n);
            for &(u, v) in graph.edges() {
                t.both(u, v, Rational::ONE);
            }
            let edges = (0..*k).flat_map(|a| (a + 1..*k).map(move |b| (a, b)));
            target = Some(Rational::from((k * k.saturating_sub(1)) as i64));
            notes.role("clique w_1..w_k", [], 0..*k);
            notes.role("isolated seats", [], *k..n);
            Instance::new(SeatGraph::new(n, edges)?, t.finish())?
        }
        (Reduction::MuaPartition | Reduction::EfaPartition, SourceProblem::Partition { values }) => {
            let n = values.len();
            let total: u64 = values.iter().sum();
            let leaves = partition_star_size(values);
            let pad = 2 * leaves - n;
            let (c1, c2) = (n + pad, n + pad + 1);
            let agents = c2 + 1;
            let half = Rational::new(total as i128, 2);
            let mut t = Table::new(agents);
            for (i, &a) in values.iter().enumerate() {
                for c in [c1, c2] {
                    if reduction == Reduction::MuaPartition {
                        t.set(i, c, half);
                        t.set(c, i, Rational::from(a as i64));
                    } else {
                        t.both(i, c, Rational::from(a as i64));
                    }
                }
            }
            if reduction == Reduction::MuaPartition {
                // zero-valued padding elements still value the centers W/2
                for z in n..n + pad {
                    t.set(z, c1, half);
                    t.set(z, c2, half);
                }
                target = Some(half);
            }
            let star2 = leaves + 1;
            let edges = (1..=leaves).map(|v| (0, v)).chain((1..=leaves).map(|v| (star2, star2 + v)));
            notes.role("element agents A", 0..n, []);
            notes.role("zero padding", n..n + pad, []);
            notes.role("center agents C", [c1, c2], [0, star2]);
            notes.role("star S_1 leaves", [], 1..=leaves);
            notes.role("star S_2 leaves", [], star2 + 1..agents);
            notes.constant("W", Rational::from(total as i64));
            Instance::new(SeatGraph::new(agents, edges)?, t.finish())?
        }
        (Reduction::LocalStaIndependentSet, SourceProblem::IndependentSet { graph, k }) => {
            let (nh, k) = (graph.vertex_count(), *k);
            if nh <= k + 2 {
                return Err(Error::InvalidArgument(format!(
                    "{reduction} needs n > k + 2, got n = {nh}, k = {k}"
                )));
            }
            let gadget = independent_set_gadget(graph, k, &mut notes)?;
            start = Some(Arrangement::identity(gadget.agent_count()));
            swaps = Some(k);
            gadget
        }
        _ => unreachable!("source kind was checked"),
    };
    Ok(HardInstance {
        reduction,
        source: source.clone(),
        instance,
        problem: reduction.problem(),
        target,
        start_arrangement: start,
        k: swaps,
        gadget_notes: notes,
    })
}

/// Leaves per star in the Partition gadgets.
///
/// A side of sum `W/2` has at most `s` elements, `s` being the largest count
/// of smallest values with sum at most `W/2`. With `s` leaves per star every
/// valid split fits once the multiset is padded with `2s - n` zeros. An odd
/// `W` admits no split, so only parity is fixed.
pub fn partition_star_size(values: &[u64]) -> usize {
    let n = values.len();
    let total: u64 = values.iter().sum();
    if !total.is_multiple_of(2) {
        return n.div_ceil(2);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    let mut acc = 0;
    let s = sorted
        .iter()
        .take_while(|&&a| {
            acc += a;
            2 * acc <= total
        })
        .count();
    s.max(n.div_ceil(2))
}

fn independent_set_gadget(h: &SeatGraph, k: usize, notes: &mut GadgetNotes) -> Result<Instance> {
    let nh = h.vertex_count();
    let n = nh + 3 * k + 5;
    let big = Rational::from(((nh + 3 * k + 5) * (nh + 3 * k + 5)) as i64);
    let c1 = 0..k;
    let c2 = k..2 * k + 2;
    let v = 2 * k + 2..2 * k + 2 + nh;
    let x1 = v.end;
    let y = x1 + 1..x1 + 2 + k;
    let x2 = y.end;
    debug_assert_eq!(x2 + 1, n);

    #[derive(Clone, Copy, PartialEq)]
    enum G {
        C1,
        C2,
        V,
        Y,
        X1,
        X2,
    }
    let group = |p: usize| {
        if c1.contains(&p) {
            G::C1
        } else if c2.contains(&p) {
            G::C2
        } else if v.contains(&p) {
            G::V
        } else if p == x1 {
            G::X1
        } else if y.contains(&p) {
            G::Y
        } else {
            G::X2
        }
    };
    let one = Rational::ONE;
    let zero = Rational::ZERO;
    let neg = -big;
    let mut t = Table::new(n);
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let value = match (group(p), group(q)) {
                (G::C1, G::C1) => zero,
                (G::C1, G::C2) => neg,
                (G::C1, G::V) => -one,
                (G::C1, G::Y) => zero,
                (G::C1, G::X1) => one,
                (G::C1, G::X2) => -one,
                (G::C2, G::C1) => neg,
                (G::C2, G::C2) => zero,
                (G::C2, G::V) => one,
                (G::C2, G::Y) => one,
                (G::C2, G::X1) => neg,
                (G::C2, G::X2) => neg,
                (G::V, G::C1) => -one,
                (G::V, G::C2) => one,
                (G::V, G::V) => {
                    if h.has_edge(p - v.start, q - v.start) {
                        neg
                    } else {
                        zero
                    }
                }
                (G::V, G::Y) => zero,
                (G::V, G::X1) => -one,
                (G::V, G::X2) => zero,
                (G::Y, G::C1) => zero,
                (G::Y, G::C2) => one,
                (G::Y, G::V) => zero,
                (G::Y, G::Y) => zero,
                (G::Y, G::X1) => neg,
                (G::Y, G::X2) => one,
                (G::X1, G::C1) => one,
                (G::X1, G::C2) => neg,
                (G::X1, G::V) => -one,
                (G::X1, G::Y) => neg,
                (G::X1, G::X2) => neg,
                (G::X2, G::C1) => -one,
                (G::X2, G::C2) => neg,
                (G::X2, G::V) => zero,
                (G::X2, G::Y) => one,
                (G::X2, G::X1) => neg,
                (G::X1, G::X1) | (G::X2, G::X2) => unreachable!("single agents"),
            };
            t.set(p, q, value);
        }
    }
    let clique = (0..2 * k + 2).flat_map(|a| (a + 1..2 * k + 2).map(move |b| (a, b)));
    let star1 = v.clone().map(|leaf| (x1, leaf));
    let star2 = y.clone().map(|leaf| (x2, leaf));
    let graph = SeatGraph::new(n, clique.chain(star1).chain(star2))?;
    notes.role("C_1", c1.clone(), c1);
    notes.role("C_2", c2.clone(), c2);
    notes.role("V = V(H), seats V_H", v.clone(), v);
    notes.role("x_1", [x1], [x1]);
    notes.role("Y", y.clone(), y);
    notes.role("x_2", [x2], [x2]);
    notes.constant("N", big);
    Instance::new(graph, t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for r in Reduction::ALL {
            assert_eq!(r.id().parse::<Reduction>().unwrap(), r);
        }
        assert!("nope".parse::<Reduction>().is_err());
    }

    #[test]
    fn kclique_gadget_shape() {
        let src = SourceProblem::KClique { graph: SeatGraph::complete(3), k: 3 };
        let g = generate(Reduction::MwaKclique, &src).unwrap();
        assert_eq!(g.instance.graph().edge_count(), 3);
        assert_eq!(g.target, Some(Rational::from(6)));
    }

    #[test]
    fn wrong_source_is_rejected() {
        let src = SourceProblem::Partition { values: vec![1, 1] };
        let err = generate(Reduction::MwaKclique, &src).unwrap_err();
        assert!(err.to_string().contains("expects a k-clique source"), "{err}");
    }

    #[test]
    fn local_gadget_needs_room() {
        let src = SourceProblem::IndependentSet { graph: SeatGraph::path(4), k: 2 };
        let err = generate(Reduction::LocalStaIndependentSet, &src).unwrap_err();
        assert!(err.to_string().contains("n > k + 2"), "{err}");
    }

    #[test]
    fn star_sizes() {
        assert_eq!(partition_star_size(&[1, 1, 2, 2]), 2);
        assert_eq!(partition_star_size(&[3, 1, 1, 1]), 3);
        assert_eq!(partition_star_size(&[1, 2, 4]), 2);
        assert_eq!(partition_star_size(&[]), 0);
    }
}
