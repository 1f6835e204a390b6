use crate::error::{Error, Result};
use crate::matching::knapsack_01;
use crate::model::SeatGraph;

/// Largest source sizes the exhaustive solvers accept.
pub const MAX_GRAPH_VERTICES: usize = 16;
pub const MAX_BIJECTION_VERTICES: usize = 10;
pub const MAX_ROOMMATES: usize = 12;
pub const MAX_THREE_PARTITION: usize = 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    KClique,
    IndependentSet,
    Partition,
    ThreePartition,
    PartitionIntoTriangles,
    SpanningSubgraphIso,
    ExchangeRoommates,
}

impl SourceKind {
    pub fn name(self) -> &'static str {
        match self {
            SourceKind::KClique => "k-clique",
            SourceKind::IndependentSet => "independent-set",
            SourceKind::Partition => "partition",
            SourceKind::ThreePartition => "3-partition",
            SourceKind::PartitionIntoTriangles => "partition-into-triangles",
            SourceKind::SpanningSubgraphIso => "spanning-subgraph-isomorphism",
            SourceKind::ExchangeRoommates => "exchange-stable-roommates",
        }
    }
}

/// An instance of a classical decision problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceProblem {
    KClique { graph: SeatGraph, k: usize },
    IndependentSet { graph: SeatGraph, k: usize },
    /// Split the multiset into two halves of sum `W/2` each.
    Partition { values: Vec<u64> },
    /// Split `3m` values into `m` triples of sum `bound` each.
    ThreePartition { values: Vec<u64>, bound: u64 },
    PartitionIntoTriangles { graph: SeatGraph },
    /// Is there a bijection mapping every edge of `pattern` onto an edge of `host`?
    SpanningSubgraphIso { pattern: SeatGraph, host: SeatGraph },
    /// `lists[p]` ranks all other agents as tie groups, best group first.
    ExchangeRoommates { lists: Vec<Vec<Vec<usize>>> },
}

/// A certificate for a yes-answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(Vec<usize>),
    Subset(Vec<usize>),
    Groups(Vec<Vec<usize>>),
    /// `map[u]` is the host vertex of pattern vertex `u`.
    Bijection(Vec<usize>),
    Matching(Vec<(usize, usize)>),
}

impl SourceProblem {
    pub fn kind(&self) -> SourceKind {
        match self {
            SourceProblem::KClique { .. } => SourceKind::KClique,
            SourceProblem::IndependentSet { .. } => SourceKind::IndependentSet,
            SourceProblem::Partition { .. } => SourceKind::Partition,
            SourceProblem::ThreePartition { .. } => SourceKind::ThreePartition,
            SourceProblem::PartitionIntoTriangles { .. } => SourceKind::PartitionIntoTriangles,
            SourceProblem::SpanningSubgraphIso { .. } => SourceKind::SpanningSubgraphIso,
            SourceProblem::ExchangeRoommates { .. } => SourceKind::ExchangeRoommates,
        }
    }

    /// Checks the payload is well formed.
    pub fn validate(&self) -> Result<()> {
        match self {
            SourceProblem::KClique { graph, k } | SourceProblem::IndependentSet { graph, k } => {
                if *k > graph.vertex_count() {
                    return Err(Error::InvalidArgument(format!(
                        "k = {k} exceeds the {} vertices of the graph",
                        graph.vertex_count()
                    )));
                }
            }
            SourceProblem::Partition { .. } => {}
            SourceProblem::ThreePartition { values, bound } => {
                if values.is_empty() || values.len() % 3 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "3-partition needs a positive multiple of 3 values, got {}",
                        values.len()
                    )));
                }
                let m = (values.len() / 3) as u64;
                let total: u64 = values.iter().sum();
                if total != m * bound {
                    return Err(Error::InvalidArgument(format!(
                        "3-partition values sum to {total}, expected {m} * {bound} = {}",
                        m * bound
                    )));
                }
            }
            SourceProblem::PartitionIntoTriangles { .. } => {}
            SourceProblem::SpanningSubgraphIso { pattern, host } => {
                if pattern.vertex_count() != host.vertex_count() {
                    return Err(Error::InvalidArgument(format!(
                        "pattern has {} vertices but host has {}",
                        pattern.vertex_count(),
                        host.vertex_count()
                    )));
                }
            }
            SourceProblem::ExchangeRoommates { lists } => {
                let n = lists.len();
                if n % 2 != 0 {
                    return Err(Error::InvalidArgument(format!("roommates needs an even number of agents, got {n}")));
                }
                for (p, groups) in lists.iter().enumerate() {
                    let mut seen = vec![false; n];
                    for &q in groups.iter().flatten() {
                        if q >= n || q == p || seen[q] {
                            return Err(Error::InvalidArgument(format!("list of agent {p} is not a ranking of the other agents")));
                        }
                        seen[q] = true;
                    }
                    if groups.iter().any(|g| g.is_empty()) || seen.iter().filter(|&&s| s).count() != n - 1 {
                        return Err(Error::InvalidArgument(format!("list of agent {p} is incomplete")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Exhaustive answer for a small source instance: `Some(witness)` on yes.
pub fn solve_source(source: &SourceProblem) -> Result<Option<Witness>> {
    source.validate()?;
    match source {
        SourceProblem::KClique { graph, k } => {
            check_size(graph.vertex_count(), MAX_GRAPH_VERTICES, "k-clique")?;
            Ok(find_subset(graph, *k, true).map(Witness::Vertices))
        }
        SourceProblem::IndependentSet { graph, k } => {
            check_size(graph.vertex_count(), MAX_GRAPH_VERTICES, "independent set")?;
            Ok(find_subset(graph, *k, false).map(Witness::Vertices))
        }
        SourceProblem::Partition { values } => {
            let total: u64 = values.iter().sum();
            if !total.is_multiple_of(2) {
                return Ok(None);
            }
            let items: Vec<(u64, u64)> = values.iter().map(|&a| (a, a)).collect();
            let (best, chosen) = knapsack_01(&items, total / 2);
            Ok((best == total / 2).then_some(Witness::Subset(chosen)))
        }
        SourceProblem::ThreePartition { values, bound } => {
            check_size(values.len(), MAX_THREE_PARTITION, "3-partition")?;
            Ok(three_partition(values, *bound).map(Witness::Groups))
        }
        SourceProblem::PartitionIntoTriangles { graph } => {
            check_size(graph.vertex_count(), 3 * MAX_GRAPH_VERTICES / 2, "partition into triangles")?;
            if graph.vertex_count() % 3 != 0 {
                return Ok(None);
            }
            let mut used = vec![false; graph.vertex_count()];
            let mut groups = Vec::new();
            Ok(triangles(graph, &mut used, &mut groups).then_some(Witness::Groups(groups)))
        }
        SourceProblem::SpanningSubgraphIso { pattern, host } => {
            check_size(pattern.vertex_count(), MAX_BIJECTION_VERTICES, "spanning subgraph isomorphism")?;
            Ok(spanning_bijection(pattern, host).map(Witness::Bijection))
        }
        SourceProblem::ExchangeRoommates { lists } => {
            check_size(lists.len(), MAX_ROOMMATES, "exchange-stable roommates")?;
            Ok(exchange_stable_matching(lists).map(Witness::Matching))
        }
    }
}

fn check_size(size: usize, limit: usize, what: &str) -> Result<()> {
    if size > limit {
        return Err(Error::BudgetExceeded {
            what: format!("exhaustive {what} search"),
            needed: size as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Lexicographically first `k`-subset that is a clique (or independent set).
fn find_subset(g: &SeatGraph, k: usize, clique: bool) -> Option<Vec<usize>> {
    fn rec(g: &SeatGraph, k: usize, clique: bool, from: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in from..g.vertex_count() {
            if g.vertex_count() - v < k - chosen.len() {
                break;
            }
            if chosen.iter().all(|&u| g.has_edge(u, v) == clique) {
                chosen.push(v);
                if rec(g, k, clique, v + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    rec(g, k, clique, 0, &mut chosen).then_some(chosen)
}

fn three_partition(values: &[u64], bound: u64) -> Option<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(values[i]));
    let m = values.len() / 3;
    let mut bins: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut sums = vec![0u64; m];

    fn rec(i: usize, order: &[usize], values: &[u64], bound: u64, bins: &mut [Vec<usize>], sums: &mut [u64]) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for b in 0..bins.len() {
            // bins with equal contents are interchangeable
            if (0..b).any(|c| sums[c] == sums[b] && bins[c].len() == bins[b].len()) {
                continue;
            }
            if bins[b].len() < 3 && sums[b] + values[x] <= bound {
                bins[b].push(x);
                sums[b] += values[x];
                if rec(i + 1, order, values, bound, bins, sums) {
                    return true;
                }
                sums[b] -= values[x];
                bins[b].pop();
            }
        }
        false
    }
    if !rec(0, &order, values, bound, &mut bins, &mut sums) {
        return None;
    }
    for b in bins.iter_mut() {
        b.sort_unstable();
    }
    bins.sort();
    Some(bins)
}

fn triangles(g: &SeatGraph, used: &mut [bool], groups: &mut Vec<Vec<usize>>) -> bool {
    let Some(v) = used.iter().position(|&u| !u) else {
        return true;
    };
    used[v] = true;
    let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| !used[u]).collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                used[a] = true;
                used[b] = true;
                let mut t = vec![v, a, b];
                t.sort_unstable();
                groups.push(t);
                if triangles(g, used, groups) {
                    return true;
                }
                groups.pop();
                used[a] = false;
                used[b] = false;
            }
        }
    }
    used[v] = false;
    false
}

fn spanning_bijection(pattern: &SeatGraph, host: &SeatGraph) -> Option<Vec<usize>> {
    let n = pattern.vertex_count();
    let mut map = vec![usize::MAX; n];
    let mut taken = vec![false; n];

    fn rec(u: usize, pattern: &SeatGraph, host: &SeatGraph, map: &mut [usize], taken: &mut [bool]) -> bool {
        if u == map.len() {
            return true;
        }
        for h in 0..map.len() {
            if taken[h] || host.degree(h) < pattern.degree(u) {
                continue;
            }
            let fits = pattern.neighbors(u).iter().all(|&w| w > u || host.has_edge(map[w], h));
            if fits {
                map[u] = h;
                taken[h] = true;
                if rec(u + 1, pattern, host, map, taken) {
                    return true;
                }
                taken[h] = false;
            }
        }
        map[u] = usize::MAX;
        false
    }
    rec(0, pattern, host, &mut map, &mut taken).then_some(map)
}

/// Position of each agent in `p`'s list: lower is better, ties share a value.
pub(crate) fn tie_ranks(lists: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let n = lists.len();
    lists
        .iter()
        .map(|groups| {
            let mut rank = vec![usize::MAX; n];
            for (g, group) in groups.iter().enumerate() {
                for &q in group {
                    rank[q] = g;
                }
            }
            rank
        })
        .collect()
}

/// First perfect matching (in lexicographic search order) with no exchange-blocking pair:
/// agents `p`, `q`, not partners, who both strictly prefer each other's partner.
fn exchange_stable_matching(lists: &[Vec<Vec<usize>>]) -> Option<Vec<(usize, usize)>> {
    let n = lists.len();
    let rank = tie_ranks(lists);
    let mut partner = vec![usize::MAX; n];

    fn rec(partner: &mut [usize], rank: &[Vec<usize>]) -> bool {
        let n = partner.len();
        let Some(p) = partner.iter().position(|&x| x == usize::MAX) else {
            return (0..n).all(|p| {
                (p + 1..n).all(|q| {
                    partner[p] == q
                        || !(rank[p][partner[q]] < rank[p][partner[p]] && rank[q][partner[p]] < rank[q][partner[q]])
                })
            });
        };
        for q in p + 1..n {
            if partner[q] == usize::MAX {
                partner[p] = q;
                partner[q] = p;
                if rec(partner, rank) {
                    return true;
                }
                partner[q] = usize::MAX;
            }
        }
        partner[p] = usize::MAX;
        false
    }
    rec(&mut partner, &rank).then(|| (0..n).filter(|&p| p < partner[p]).map(|p| (p, partner[p])).collect())
}
