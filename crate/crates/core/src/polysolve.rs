//! Solvers for seat graphs whose connected components have at most two
//! vertices (disjoint edges plus isolated vertices).
//!
//! On such graphs an arrangement is a choice of `m` agent pairs for the `m`
//! seat edges; every other agent is isolated and has utility zero. An
//! arrangement is envy-free exactly when, writing `S` for the agents on edges:
//!
//! * every agent on an edge weakly prefers its partner to every other agent of
//!   `S`, and (if some vertex is isolated) values its partner at least 0;
//! * no isolated agent values any agent of `S` positively.

use crate::error::{Error, Result};
use crate::matching::{self, knapsack_01, WeightedGraph};
use crate::model::{Arrangement, Instance, PreferenceProfile, SeatGraph};
use crate::oracle::{Problem, SolveReport};
use crate::rational::Rational;

/// Edges and isolated vertices of a seat graph with components of order ≤ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentProfile {
    pub edges: Vec<(usize, usize)>,
    pub isolated: Vec<usize>,
    pub n_prime: usize,
}

impl ComponentProfile {
    pub fn of(graph: &SeatGraph) -> Result<ComponentProfile> {
        let mut isolated = Vec::new();
        for comp in graph.components() {
            match comp.len() {
                1 => isolated.push(comp[0]),
                2 => {}
                _ => {
                    return Err(Error::GraphClass(format!(
                        "component {:?} has {} vertices; every component must have at most 2",
                        comp,
                        comp.len()
                    )))
                }
            }
        }
        let edges = graph.edges().to_vec();
        Ok(ComponentProfile {
            n_prime: 2 * edges.len(),
            edges,
            isolated,
        })
    }

    /// Seats the pairs on the edges in order (smaller agent on the smaller
    /// endpoint) and the remaining agents on isolated vertices, both ascending.
    pub fn arrangement(&self, n: usize, pairs: &[(usize, usize)]) -> Arrangement {
        debug_assert_eq!(pairs.len(), self.edges.len());
        let mut seat_of = vec![usize::MAX; n];
        for (&(p, q), &(u, v)) in pairs.iter().zip(&self.edges) {
            seat_of[p.min(q)] = u;
            seat_of[p.max(q)] = v;
        }
        let mut free = self.isolated.iter();
        for s in seat_of.iter_mut().filter(|s| **s == usize::MAX) {
            *s = *free.next().expect("one isolated vertex per unpaired agent");
        }
        Arrangement::new(seat_of).expect("pairs and isolated vertices cover all seats")
    }
}

/// Pairs of agents that are each other's most preferred (ties allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestPreferenceGraph {
    pub agent_count: usize,
    pub mutual_best_edges: Vec<(usize, usize)>,
}

impl BestPreferenceGraph {
    pub fn of(profile: &PreferenceProfile) -> BestPreferenceGraph {
        let n = profile.agent_count();
        let best: Vec<Option<Rational>> = (0..n).map(|p| profile.max_toward_others(p)).collect();
        let mut edges = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if Some(profile.get(p, q)) == best[p] && Some(profile.get(q, p)) == best[q] {
                    edges.push((p, q));
                }
            }
        }
        BestPreferenceGraph {
            agent_count: n,
            mutual_best_edges: edges,
        }
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.mutual_best_edges.binary_search(&(p.min(q), p.max(q))).is_ok()
    }

    fn as_graph(&self, vertices: Option<&[usize]>) -> WeightedGraph {
        let keep = |v: usize| vertices.is_none_or(|vs| vs.contains(&v));
        WeightedGraph::new(
            self.agent_count,
            self.mutual_best_edges
                .iter()
                .filter(|&&(p, q)| keep(p) && keep(q))
                .map(|&(p, q)| (p, q, Rational::ONE)),
        )
        .expect("mutual best edges form a simple graph")
    }
}

type Pairs = Vec<(usize, usize)>;

/// Agents split by the sign of their best value, for symmetric profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSplit {
    pub negative_only: Vec<usize>,
    pub zero_max: Vec<usize>,
    pub positive_max: Vec<usize>,
    /// Pairs of zero-max agents with mutual value 0.
    pub h0_edges: Vec<(usize, usize)>,
    /// Components of the graph of positive mutual values, with whether each
    /// has a perfect matching of mutual-best pairs (the matching, if so).
    pub hplus_components: Vec<(Vec<usize>, Option<Pairs>)>,
}

impl SignSplit {
    /// Requires a symmetric profile.
    pub fn of(profile: &PreferenceProfile) -> SignSplit {
        let n = profile.agent_count();
        let (mut neg, mut zero, mut pos) = (Vec::new(), Vec::new(), Vec::new());
        for p in 0..n {
            match profile.max_toward_others(p) {
                Some(b) if b.is_positive() => pos.push(p),
                Some(b) if b.is_zero() => zero.push(p),
                _ => neg.push(p),
            }
        }
        let mut h0 = Vec::new();
        for (i, &p) in zero.iter().enumerate() {
            for &q in &zero[i + 1..] {
                if profile.get(p, q).is_zero() {
                    h0.push((p, q));
                }
            }
        }
        let plus_edges = pos.iter().flat_map(|&p| {
            pos.iter()
                .filter(move |&&q| q > p && profile.get(p, q).is_positive())
                .map(move |&q| (p, q))
        });
        let plus = SeatGraph::new(n, plus_edges).expect("positive pairs form a simple graph");
        let best = BestPreferenceGraph::of(profile);
        let hplus = plus
            .components()
            .into_iter()
            .filter(|c| pos.binary_search(&c[0]).is_ok())
            .map(|c| {
                let g = best.as_graph(Some(&c));
                let m = matching::max_cardinality_matching(&g);
                let perfect = (2 * m.len() == c.len()).then(|| m.pairs().to_vec());
                (c, perfect)
            })
            .collect();
        SignSplit {
            negative_only: neg,
            zero_max: zero,
            positive_max: pos,
            h0_edges: h0,
            hplus_components: hplus,
        }
    }
}

fn report_from_pairs(problem: Problem, instance: &Instance, cp: &ComponentProfile, pairs: &[(usize, usize)]) -> SolveReport {
    let a = cp.arrangement(instance.agent_count(), pairs);
    match problem {
        Problem::Mwa => {
            let w = instance.social_welfare(&a).expect("valid arrangement");
            SolveReport::optimum(problem, a, w)
        }
        Problem::Mua => {
            let w = instance.min_utility(&a).expect("valid arrangement");
            SolveReport::optimum(problem, a, w)
        }
        Problem::Sta | Problem::Efa => SolveReport::decision(problem, Some(a)),
    }
}

/// Maximum welfare: a maximum-weight matching with one pair per seat edge
/// in the complete graph weighted by `f_p(q) + f_q(p)`.
pub fn mwa_small_components(instance: &Instance) -> Result<SolveReport> {
    let cp = ComponentProfile::of(instance.graph())?;
    let f = instance.profile();
    let k = WeightedGraph::complete(instance.agent_count(), |p, q| f.get(p, q) + f.get(q, p));
    let m = matching::max_weight_matching_of_size(&k, cp.edges.len())
        .expect("complete graph has a matching for every seat edge");
    Ok(report_from_pairs(Problem::Mwa, instance, &cp, m.pairs()))
}

/// Maximum least utility: a bottleneck matching with one pair per seat edge
/// in the complete graph weighted by `min(f_p(q), f_q(p))`.
pub fn mua_small_components(instance: &Instance) -> Result<SolveReport> {
    let cp = ComponentProfile::of(instance.graph())?;
    let f = instance.profile();
    let k = WeightedGraph::complete(instance.agent_count(), |p, q| f.get(p, q).min(f.get(q, p)));
    let m = matching::bottleneck_matching_of_size(&k, cp.edges.len())
        .expect("complete graph has a matching for every seat edge");
    Ok(report_from_pairs(Problem::Mua, instance, &cp, m.pairs()))
}

/// Envy-freeness when every component is an edge: a perfect matching in the
/// best-preference graph.
pub fn efa_edge_graph(instance: &Instance) -> Result<SolveReport> {
    let cp = ComponentProfile::of(instance.graph())?;
    if !cp.isolated.is_empty() {
        return Err(Error::GraphClass(format!(
            "every component must be an edge, but vertices {:?} are isolated",
            cp.isolated
        )));
    }
    Ok(efa_edges_only(instance, &cp))
}

fn efa_edges_only(instance: &Instance, cp: &ComponentProfile) -> SolveReport {
    let best = BestPreferenceGraph::of(instance.profile());
    let m = matching::max_cardinality_matching(&best.as_graph(None));
    if m.len() == cp.edges.len() {
        report_from_pairs(Problem::Efa, instance, cp, m.pairs())
    } else {
        SolveReport::decision(Problem::Efa, None)
    }
}

/// Envy-freeness under symmetric preferences.
///
/// Agents whose every value is negative must be isolated. Each component of
/// the positive-value graph is seated entirely on edges (paired by mutual-best
/// pairs) or entirely on isolated vertices. Agents whose best value is zero
/// may share an edge only with another such agent at mutual value 0. The
/// components to seat are picked by a 0-1 knapsack over their pair counts.
pub fn efa_symmetric_small_components(instance: &Instance) -> Result<SolveReport> {
    let cp = ComponentProfile::of(instance.graph())?;
    if !instance.profile().classify().symmetric {
        return Err(Error::ProfileClass("preferences must be symmetric".into()));
    }
    if cp.isolated.is_empty() {
        return Ok(efa_edges_only(instance, &cp));
    }
    let m = cp.edges.len();
    let split = SignSplit::of(instance.profile());
    let usable: Vec<&Vec<(usize, usize)>> = split
        .hplus_components
        .iter()
        .filter_map(|(_, pm)| pm.as_ref())
        .collect();
    let items: Vec<(u64, u64)> = usable.iter().map(|pm| (pm.len() as u64, pm.len() as u64)).collect();
    let (k, chosen) = knapsack_01(&items, m as u64);
    let h0 = WeightedGraph::new(
        instance.agent_count(),
        split.h0_edges.iter().map(|&(p, q)| (p, q, Rational::ONE)),
    )
    .expect("zero pairs form a simple graph");
    let h0_matching = matching::max_cardinality_matching(&h0);
    if (k as usize) + h0_matching.len() < m {
        return Ok(SolveReport::decision(Problem::Efa, None));
    }
    let mut pairs: Vec<(usize, usize)> = chosen.iter().flat_map(|&i| usable[i].iter().copied()).collect();
    pairs.extend(h0_matching.pairs().iter().take(m - k as usize));
    pairs.sort_unstable();
    let report = report_from_pairs(Problem::Efa, instance, &cp, &pairs);
    debug_assert!(report.verify(instance).unwrap_or(false));
    Ok(report)
}

/// Envy-freeness for strict or positive preferences.
///
/// Positive: an isolated agent envies anyone on an edge, so with both edges
/// and isolated vertices there is no envy-free arrangement; without isolated
/// vertices the edge-only test applies. Strict: without isolated vertices the
/// edge-only test applies; otherwise an agent need not sit with its overall
/// favorite (only with its favorite among agents on edges), so the seated set
/// is found by an exact search over the conditions in the module docs.
pub fn efa_strict_or_positive(instance: &Instance) -> Result<SolveReport> {
    let cp = ComponentProfile::of(instance.graph())?;
    let flags = instance.profile().classify();
    if !flags.strict && !flags.positive {
        return Err(Error::ProfileClass("preferences must be strict or positive".into()));
    }
    let m = cp.edges.len();
    if cp.isolated.is_empty() {
        return Ok(efa_edges_only(instance, &cp));
    }
    if m == 0 {
        return Ok(report_from_pairs(Problem::Efa, instance, &cp, &[]));
    }
    if flags.strict {
        let pairs = envy_free_pairs_search(instance.profile(), m);
        return Ok(match pairs {
            Some(p) => report_from_pairs(Problem::Efa, instance, &cp, &p),
            None => SolveReport::decision(Problem::Efa, None),
        });
    }
    Ok(SolveReport::decision(Problem::Efa, None))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Open,
    Isolated,
    Paired(usize),
}

/// Exact search for `m` pairs satisfying the envy-free conditions on a graph
/// with `m` edges and at least one isolated vertex. Agents are decided in index
/// order; the first solution in that order is returned.
fn envy_free_pairs_search(f: &PreferenceProfile, m: usize) -> Option<Vec<(usize, usize)>> {
    let n = f.agent_count();
    let mut slots = vec![Slot::Open; n];
    if search(f, m, 0, &mut slots, 0, 0) {
        let mut pairs = Vec::new();
        for (p, s) in slots.iter().enumerate() {
            if let Slot::Paired(q) = *s {
                if p < q {
                    pairs.push((p, q));
                }
            }
        }
        Some(pairs)
    } else {
        None
    }
}

fn search(f: &PreferenceProfile, m: usize, p: usize, slots: &mut Vec<Slot>, pairs: usize, isolated: usize) -> bool {
    let n = f.agent_count();
    if !consistent(f, slots) {
        return false;
    }
    if p == n {
        return pairs == m;
    }
    if slots[p] != Slot::Open {
        return search(f, m, p + 1, slots, pairs, isolated);
    }
    if pairs < m {
        for q in p + 1..n {
            if slots[q] != Slot::Open || f.get(p, q).is_negative() || f.get(q, p).is_negative() {
                continue;
            }
            slots[p] = Slot::Paired(q);
            slots[q] = Slot::Paired(p);
            if search(f, m, p + 1, slots, pairs + 1, isolated) {
                return true;
            }
            slots[p] = Slot::Open;
            slots[q] = Slot::Open;
        }
    }
    if isolated < n - 2 * m {
        slots[p] = Slot::Isolated;
        if search(f, m, p + 1, slots, pairs, isolated + 1) {
            return true;
        }
        slots[p] = Slot::Open;
    }
    false
}

/// Whether the decided agents violate a condition that no later decision can
/// repair.
fn consistent(f: &PreferenceProfile, slots: &[Slot]) -> bool {
    let n = slots.len();
    for p in 0..n {
        match slots[p] {
            Slot::Open => {}
            Slot::Isolated => {
                if (0..n).any(|s| matches!(slots[s], Slot::Paired(_)) && f.get(p, s).is_positive()) {
                    return false;
                }
            }
            Slot::Paired(q) => {
                let v = f.get(p, q);
                if (0..n).any(|t| t != p && t != q && matches!(slots[t], Slot::Paired(_)) && f.get(p, t) > v) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_solve;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn inst(rows: Vec<Vec<i64>>, n: usize, edges: &[(usize, usize)]) -> Instance {
        let t = rows.into_iter().map(|row| row.into_iter().map(r).collect()).collect();
        Instance::new(SeatGraph::new(n, edges.iter().copied()).unwrap(), PreferenceProfile::new(t).unwrap()).unwrap()
    }

    #[test]
    fn pof_unbounded_instance() {
        let i = inst(
            vec![vec![0, 1, 5, 0], vec![1, 0, 0, 5], vec![0, 5, 0, 1], vec![5, 0, 1, 0]],
            4,
            &[(0, 1), (2, 3)],
        );
        assert_eq!(mwa_small_components(&i).unwrap().objective, Some(r(10)));
        assert_eq!(mua_small_components(&i).unwrap().objective, Some(r(1)));
    }

    #[test]
    fn edgeless_and_isolated_cases() {
        let i = Instance::new(SeatGraph::empty(3), PreferenceProfile::from_fn(3, |_, _| r(2)).unwrap()).unwrap();
        assert_eq!(mwa_small_components(&i).unwrap().objective, Some(r(0)));
        let j = Instance::new(SeatGraph::new(3, [(0, 1)]).unwrap(), PreferenceProfile::from_fn(3, |_, _| r(2)).unwrap()).unwrap();
        assert_eq!(mua_small_components(&j).unwrap().objective, Some(r(0)));
        assert!(!efa_strict_or_positive(&j).unwrap().feasible);
        assert!(efa_strict_or_positive(&i).unwrap().feasible);
    }

    #[test]
    fn rejects_large_components() {
        let i = Instance::new(SeatGraph::path(3), PreferenceProfile::zeros(3)).unwrap();
        let err = mwa_small_components(&i).unwrap_err();
        assert!(matches!(err, Error::GraphClass(_)));
        assert!(err.to_string().contains("[0, 1, 2]"));
    }

    #[test]
    fn edge_graph_examples() {
        let pairs = inst(
            vec![vec![0, 3, 1, 1], vec![3, 0, 1, 1], vec![1, 1, 0, 3], vec![1, 1, 3, 0]],
            4,
            &[(0, 1), (2, 3)],
        );
        assert!(efa_edge_graph(&pairs).unwrap().feasible);
        let star = inst(
            vec![vec![0, 1, 0, 0], vec![5, 0, 1, 0], vec![5, 0, 0, 1], vec![5, 1, 0, 0]],
            4,
            &[(0, 1), (2, 3)],
        );
        assert!(!efa_edge_graph(&star).unwrap().feasible);
        assert!(!brute_solve(Problem::Efa, &star).unwrap().feasible);
        let single = inst(vec![vec![0, -4], vec![7, 0]], 2, &[(0, 1)]);
        assert!(efa_edge_graph(&single).unwrap().feasible);
    }

    #[test]
    fn symmetric_examples() {
        // a-b = 1, b-c = 1, a-c = 0, one edge and one isolated vertex
        let i = inst(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]], 3, &[(0, 1)]);
        assert!(!efa_symmetric_small_components(&i).unwrap().feasible);
        assert!(!brute_solve(Problem::Efa, &i).unwrap().feasible);
        let z = Instance::new(SeatGraph::new(5, [(1, 3)]).unwrap(), PreferenceProfile::zeros(5)).unwrap();
        assert!(efa_symmetric_small_components(&z).unwrap().verify(&z).unwrap());
    }

    #[test]
    fn strict_needs_only_the_best_among_seated() {
        // a's overall favorite is c, yet {a, b} on the edge with c isolated is
        // envy-free
        let i = inst(vec![vec![0, 1, 5], vec![3, 0, 2], vec![-1, -2, 0]], 3, &[(0, 1)]);
        assert!(i.profile().classify().strict);
        let report = efa_strict_or_positive(&i).unwrap();
        assert!(report.feasible);
        assert!(report.verify(&i).unwrap());
        assert!(brute_solve(Problem::Efa, &i).unwrap().feasible);
    }

    #[test]
    fn class_errors() {
        let asym = inst(vec![vec![0, 1], vec![2, 0]], 2, &[(0, 1)]);
        assert!(matches!(efa_symmetric_small_components(&asym), Err(Error::ProfileClass(_))));
        let ties = inst(vec![vec![0, 1, 1], vec![0, 0, 0], vec![1, 1, 0]], 3, &[(0, 1)]);
        assert!(matches!(efa_strict_or_positive(&ties), Err(Error::ProfileClass(_))));
        let iso = Instance::new(SeatGraph::new(3, [(0, 1)]).unwrap(), PreferenceProfile::zeros(3)).unwrap();
        assert!(matches!(efa_edge_graph(&iso), Err(Error::GraphClass(_))));
    }
}
