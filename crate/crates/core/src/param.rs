//! Algorithms whose running time is exponential only in a parameter: the
//! vertex cover number of the seat graph, or the number of allowed swaps.

use crate::error::{Error, Result};
use crate::matching::max_weight_assignment;
use crate::model::{Arrangement, Instance, SeatGraph};
use crate::oracle::{Problem, SolveReport};

pub use crate::model::SwapPlan;

/// Default work limit, shared with the exhaustive oracle (`10!`).
pub const DEFAULT_BUDGET: u128 = 3_628_800;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCoverResult {
    pub cover: Vec<usize>,
    pub size: usize,
}

/// Exact minimum vertex cover by iterative deepening over the branching
/// "take v, or take all of N(v)" on a maximum-degree vertex.
pub fn min_vertex_cover(graph: &SeatGraph) -> VertexCoverResult {
    let n = graph.vertex_count();
    let mut removed = vec![false; n];
    let mut cover = Vec::new();
    for k in 0..=n {
        if cover_within(graph, &mut removed, &mut cover, k) {
            cover.sort_unstable();
            return VertexCoverResult {
                size: cover.len(),
                cover,
            };
        }
    }
    unreachable!("all vertices always form a cover")
}

fn cover_within(g: &SeatGraph, removed: &mut [bool], cover: &mut Vec<usize>, k: usize) -> bool {
    let live_degree = |v: usize, removed: &[bool]| g.neighbors(v).iter().filter(|&&w| !removed[w]).count();
    let pick = (0..g.vertex_count())
        .filter(|&v| !removed[v])
        .map(|v| (live_degree(v, removed), v))
        .filter(|&(d, _)| d > 0)
        .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)));
    let Some((deg, v)) = pick else {
        return true;
    };
    if k == 0 {
        return false;
    }
    // each chosen vertex covers at most `deg` edges
    let live_edges: usize = (0..g.vertex_count())
        .filter(|&u| !removed[u])
        .map(|u| live_degree(u, removed))
        .sum::<usize>()
        / 2;
    if live_edges > k * deg {
        return false;
    }
    removed[v] = true;
    cover.push(v);
    if cover_within(g, removed, cover, k - 1) {
        return true;
    }
    cover.pop();
    removed[v] = false;

    let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !removed[w]).collect();
    if nbrs.len() <= k {
        for &w in &nbrs {
            removed[w] = true;
            cover.push(w);
        }
        if cover_within(g, removed, cover, k - nbrs.len()) {
            return true;
        }
        for &w in &nbrs {
            removed[w] = false;
            cover.pop();
        }
    }
    false
}

fn falling_factorial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128))
}

/// Maximum welfare with [`DEFAULT_BUDGET`].
pub fn mwa_vertex_cover(instance: &Instance) -> Result<SolveReport> {
    mwa_vertex_cover_with_budget(instance, DEFAULT_BUDGET)
}

/// Maximum welfare by enumerating which agents occupy a minimum vertex cover
/// `S`. The other vertices are independent, so once `S` is filled the rest is
/// an assignment problem: placing agent `p` on `v ∉ S` contributes
/// `Σ_{u ∈ N(v)} f_p(a_u) + f_{a_u}(p)`.
///
/// `budget` bounds the number of cover assignments, `n!/(n-γ)!`.
pub fn mwa_vertex_cover_with_budget(instance: &Instance, budget: u128) -> Result<SolveReport> {
    let g = instance.graph();
    let n = instance.agent_count();
    let vc = min_vertex_cover(g);
    let needed = falling_factorial(n, vc.size);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: format!("vertex-cover search with cover size {} over {n} agents", vc.size),
            needed,
            limit: budget,
        });
    }
    let f = instance.profile();
    let sym: Vec<i64> = (0..n * n)
        .map(|i| {
            let (p, q) = (i / n, i % n);
            if p == q {
                0
            } else {
                f.raw(p, q) + f.raw(q, p)
            }
        })
        .collect();
    let in_cover = {
        let mut m = vec![false; n];
        for &v in &vc.cover {
            m[v] = true;
        }
        m
    };
    let outside: Vec<usize> = (0..n).filter(|&v| !in_cover[v]).collect();
    let mut search = CoverSearch {
        g,
        n,
        sym,
        cover: vc.cover.clone(),
        outside,
        in_cover,
        agent_at: vec![usize::MAX; n],
        used: vec![false; n],
        best: None,
    };
    search.dfs(0, 0);
    let (value, seat_of) = search.best.expect("at least one arrangement exists");
    let a = Arrangement::new(seat_of).expect("cover assignment plus matching is a bijection");
    let objective = instance.unscale(value);
    debug_assert_eq!(instance.social_welfare(&a).ok(), Some(objective));
    Ok(SolveReport::optimum(Problem::Mwa, a, objective))
}

struct CoverSearch<'a> {
    g: &'a SeatGraph,
    n: usize,
    sym: Vec<i64>,
    cover: Vec<usize>,
    outside: Vec<usize>,
    in_cover: Vec<bool>,
    agent_at: Vec<usize>,
    used: Vec<bool>,
    best: Option<(i64, Vec<usize>)>,
}

impl CoverSearch<'_> {
    fn dfs(&mut self, i: usize, internal: i64) {
        if i == self.cover.len() {
            self.complete(internal);
            return;
        }
        let v = self.cover[i];
        for a in 0..self.n {
            if self.used[a] {
                continue;
            }
            // edges to earlier cover vertices are now fully determined
            let gain: i64 = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&u| self.in_cover[u] && self.agent_at[u] != usize::MAX)
                .map(|&u| self.sym[a * self.n + self.agent_at[u]])
                .sum();
            self.used[a] = true;
            self.agent_at[v] = a;
            self.dfs(i + 1, internal + gain);
            self.agent_at[v] = usize::MAX;
            self.used[a] = false;
        }
    }

    fn complete(&mut self, internal: i64) {
        let rest: Vec<usize> = (0..self.n).filter(|&a| !self.used[a]).collect();
        let table: Vec<Vec<i128>> = rest
            .iter()
            .map(|&p| {
                self.outside
                    .iter()
                    .map(|&v| {
                        self.g
                            .neighbors(v)
                            .iter()
                            .map(|&u| self.sym[p * self.n + self.agent_at[u]] as i128)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let sigma = max_weight_assignment(&table);
        let total = internal + sigma.iter().enumerate().map(|(i, &j)| table[i][j] as i64).sum::<i64>();
        if self.best.as_ref().is_none_or(|(b, _)| total > *b) {
            let mut seat_of = vec![0; self.n];
            for &v in &self.cover {
                seat_of[self.agent_at[v]] = v;
            }
            for (i, &j) in sigma.iter().enumerate() {
                seat_of[rest[i]] = self.outside[j];
            }
            self.best = Some((total, seat_of));
        }
    }
}

/// Stable arrangement under symmetric preferences: every maximum-welfare
/// arrangement is stable, since a blocking swap would raise welfare.
pub fn sta_symmetric(instance: &Instance) -> Result<SolveReport> {
    sta_symmetric_with_budget(instance, DEFAULT_BUDGET)
}

pub fn sta_symmetric_with_budget(instance: &Instance, budget: u128) -> Result<SolveReport> {
    if !instance.profile().classify().symmetric {
        return Err(Error::ProfileClass("preferences must be symmetric".into()));
    }
    let mwa = mwa_vertex_cover_with_budget(instance, budget)?;
    let a = mwa.arrangement.expect("optimum has a witness");
    if !instance.is_stable(&a)? {
        return Err(Error::InvalidArgument(
            "internal check failed: maximum-welfare arrangement has a blocking pair".into(),
        ));
    }
    Ok(SolveReport::decision(Problem::Sta, Some(a)))
}

/// Unsigned Stirling numbers of the first kind `c(n, j)` for `j = 0..=n`.
fn stirling_first_row(n: usize) -> Vec<u128> {
    let mut row = vec![1u128];
    for m in 0..n {
        let mut next = vec![0u128; row.len() + 1];
        for (j, &c) in row.iter().enumerate() {
            next[j + 1] = next[j + 1].saturating_add(c);
            next[j] = next[j].saturating_add(c.saturating_mul(m as u128));
        }
        row = next;
    }
    row
}

/// Number of permutations of `n` elements within Cayley distance `k`.
pub fn local_candidates(n: usize, k: usize) -> u128 {
    let row = stirling_first_row(n);
    (0..=k.min(n.saturating_sub(1)))
        .map(|d| row[n - d])
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// [`local_k_sta_with_budget`] with [`DEFAULT_BUDGET`].
pub fn local_k_sta(instance: &Instance, start: &Arrangement, k: usize) -> Result<Option<SwapPlan>> {
    local_k_sta_with_budget(instance, start, k, DEFAULT_BUDGET)
}

/// A stable arrangement reachable from `start` by at most `k` swaps.
///
/// Swap sequences of length `d` compose exactly to the permutations with `n - d`
/// cycles, so the search walks permutations by cycle structure, distance 0
/// first, rather than raw swap sequences. Among stable targets at the least
/// distance the lexicographically smallest is returned with a minimal swap
/// plan. `budget` bounds the number of candidate permutations.
pub fn local_k_sta_with_budget(
    instance: &Instance,
    start: &Arrangement,
    k: usize,
    budget: u128,
) -> Result<Option<SwapPlan>> {
    instance.check_arrangement(start)?;
    let n = instance.agent_count();
    let needed = local_candidates(n, k);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: format!("local search within {k} swaps over {n} agents"),
            needed,
            limit: budget,
        });
    }
    for d in 0..=k.min(n.saturating_sub(1)) {
        let mut walk = CycleWalk::new(instance, start);
        walk.rec(0, d);
        if let Some(seats) = walk.best {
            let target = Arrangement::new(seats).expect("relabelled start is a permutation");
            let plan = SwapPlan::between(start, &target);
            debug_assert_eq!(plan.distance(), d);
            return Ok(Some(plan));
        }
    }
    Ok(None)
}

struct CycleWalk<'a> {
    instance: &'a Instance,
    start: &'a Arrangement,
    sigma: Vec<usize>,
    used: Vec<bool>,
    seat_of: Vec<usize>,
    agent_at: Vec<usize>,
    best: Option<Vec<usize>>,
    visited: u128,
}

impl<'a> CycleWalk<'a> {
    fn new(instance: &'a Instance, start: &'a Arrangement) -> Self {
        let n = instance.agent_count();
        CycleWalk {
            instance,
            start,
            sigma: (0..n).collect(),
            used: vec![false; n],
            seat_of: vec![0; n],
            agent_at: vec![0; n],
            best: None,
            visited: 0,
        }
    }

    /// Decides the cycle of the smallest undecided agent `p`: a fixed point, or
    /// a cycle starting at `p` through larger agents. Every permutation with
    /// total deficit `left` is produced exactly once.
    fn rec(&mut self, p: usize, left: usize) {
        let n = self.sigma.len();
        if left == 0 {
            self.emit();
            return;
        }
        let Some(p) = (p..n).find(|&q| !self.used[q]) else {
            return;
        };
        // at most n - p - 1 more elements can join cycles
        if left > n - p - 1 {
            return;
        }
        self.used[p] = true;
        self.rec(p + 1, left);
        self.extend(p, p, 1, left);
        self.used[p] = false;
    }

    fn extend(&mut self, head: usize, last: usize, len: usize, left: usize) {
        let n = self.sigma.len();
        if len >= 2 {
            self.sigma[last] = head;
            self.rec(head + 1, left - (len - 1));
            self.sigma[last] = last;
        }
        if len - 1 == left {
            return;
        }
        for c in head + 1..n {
            if self.used[c] {
                continue;
            }
            self.used[c] = true;
            self.sigma[last] = c;
            self.extend(head, c, len + 1, left);
            self.sigma[last] = last;
            self.used[c] = false;
        }
    }

    fn emit(&mut self) {
        self.visited += 1;
        for p in 0..self.sigma.len() {
            let v = self.start.seat_of(self.sigma[p]);
            self.seat_of[p] = v;
            self.agent_at[v] = p;
        }
        if self.best.as_ref().is_some_and(|b| b.as_slice() <= self.seat_of.as_slice()) {
            return;
        }
        if self.instance.raw_is_stable(&self.seat_of, &self.agent_at) {
            self.best = Some(self.seat_of.clone());
        }
    }
}
