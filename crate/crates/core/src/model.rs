//! Instances, arrangements and the utility, stability and envy predicates.
//!
//! Agents and seats are dense 0-based indices. An [`Arrangement`] maps each
//! agent to a seat (vertex of the [`SeatGraph`]); an agent's utility is the sum
//! of its preferences toward the agents seated on neighboring vertices.
//!
//! Preference values are exact [`Rational`]s. Internally every profile also
//! keeps an integer copy scaled by the common denominator so the exhaustive
//! searches never touch fraction arithmetic in their inner loops.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct SeatGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl std::fmt::Debug for SeatGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeatGraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl SeatGraph {
    /// Validates and normalizes an edge list. Edges are stored as `(min, max)`
    /// pairs in sorted order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<SeatGraph> {
        let mut matrix = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop on vertex {u}")));
            }
            if matrix[u * n + v] {
                return Err(Error::Validation(format!("duplicate edge ({u}, {v})")));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SeatGraph {
            n,
            edges: list,
            adj,
            matrix,
        })
    }

    pub fn empty(n: usize) -> SeatGraph {
        SeatGraph::new(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> SeatGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SeatGraph::new(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> SeatGraph {
        SeatGraph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<SeatGraph> {
        if n < 3 {
            return invalid(format!("a cycle needs at least 3 vertices, got {n}"));
        }
        SeatGraph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// Maximum degree; zero for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2m/n`; zero for the graph without vertices.
    pub fn average_degree(&self) -> Rational {
        if self.n == 0 {
            Rational::ZERO
        } else {
            Rational::new(2 * self.edges.len() as i128, self.n as i128)
        }
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() * 2 == self.n * self.n.saturating_sub(1)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Largest component order (zero for the empty graph).
    pub fn max_component_order(&self) -> usize {
        self.components().iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(Vec::len)?;
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// Partition into twin classes: vertices `u`, `v` are twins when
    /// `N(u) \ {v} == N(v) \ {u}`. Exchanging the agents seated on two twins
    /// leaves every agent's neighbor set unchanged.
    ///
    /// Classes are sorted and ordered by their smallest vertex.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for u in 0..self.n {
            if class_of[u] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[u] = id;
            let mut members = vec![u];
            for (v, slot) in class_of.iter_mut().enumerate().skip(u + 1) {
                if *slot == usize::MAX && self.are_twins(u, v) {
                    *slot = id;
                    members.push(v);
                }
            }
            classes.push(members);
        }
        classes
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        let a = self.adj[u].iter().filter(|&&w| w != v);
        let b = self.adj[v].iter().filter(|&&w| w != u);
        a.eq(b)
    }
}

/// Cardinal preferences `f_p(q)` of every agent toward every other agent.
#[derive(Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    n: usize,
    values: Vec<Rational>,
    scaled: Vec<i64>,
    scale: i64,
}

impl std::fmt::Debug for PreferenceProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<Rational>> = (0..self.n)
            .map(|p| self.values[p * self.n..(p + 1) * self.n].to_vec())
            .collect();
        f.debug_struct("PreferenceProfile")
            .field("n", &self.n)
            .field("values", &rows)
            .finish()
    }
}

/// Profile classification flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceFlags {
    pub symmetric: bool,
    pub binary: bool,
    pub nonnegative: bool,
    pub positive: bool,
    pub strict: bool,
}

// Bound on |scaled value|: sums over up to 2^16 neighbors, doubled, stay far
// inside i64.
const SCALED_LIMIT: i128 = 1 << 40;

impl PreferenceProfile {
    /// Builds a profile from square rows. Diagonal entries must be zero; they
    /// are never read.
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<PreferenceProfile> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for (p, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "preference row {p} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if !row[p].is_zero() {
                return Err(Error::Validation(format!(
                    "diagonal entry f[{p}][{p}] = {} must be 0",
                    row[p]
                )));
            }
            values.extend(row);
        }
        Self::from_flat(n, values)
    }

    /// Builds a profile from a function of `(p, q)`, called only for `p != q`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut values = vec![Rational::ZERO; n * n];
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    values[p * n + q] = f(p, q);
                }
            }
        }
        Self::from_flat(n, values)
    }

    pub fn zeros(n: usize) -> PreferenceProfile {
        Self::from_flat(n, vec![Rational::ZERO; n * n]).expect("zero profile is valid")
    }

    fn from_flat(n: usize, values: Vec<Rational>) -> Result<Self> {
        let scale = Rational::common_denominator(&values);
        if scale > SCALED_LIMIT {
            return Err(Error::Validation(format!(
                "common denominator {scale} of the preferences is too large"
            )));
        }
        let mut scaled = Vec::with_capacity(values.len());
        for v in &values {
            let s = v.numer() * (scale / v.denom());
            if s.abs() > SCALED_LIMIT {
                return Err(Error::Validation(format!("preference value {v} is too large")));
            }
            scaled.push(s as i64);
        }
        Ok(PreferenceProfile {
            n,
            values,
            scaled,
            scale: scale as i64,
        })
    }

    pub fn agent_count(&self) -> usize {
        self.n
    }

    /// `f_p(q)`; panics in debug builds if `p == q`.
    pub fn get(&self, p: usize, q: usize) -> Rational {
        debug_assert_ne!(p, q, "the diagonal of a preference table is never read");
        self.values[p * self.n + q]
    }

    /// Row `p` including the unused diagonal entry.
    pub fn row(&self, p: usize) -> &[Rational] {
        &self.values[p * self.n..(p + 1) * self.n]
    }

    /// Values of `p` toward every other agent, paired with the agent index.
    pub fn others(&self, p: usize) -> impl Iterator<Item = (usize, Rational)> + '_ {
        (0..self.n)
            .filter(move |&q| q != p)
            .map(move |q| (q, self.values[p * self.n + q]))
    }

    /// Best value of `p` toward any other agent; `None` for a lone agent.
    pub fn max_toward_others(&self, p: usize) -> Option<Rational> {
        self.others(p).map(|(_, v)| v).max()
    }

    #[inline]
    pub(crate) fn raw(&self, p: usize, q: usize) -> i64 {
        self.scaled[p * self.n + q]
    }

    pub(crate) fn unscale(&self, x: i64) -> Rational {
        Rational::new(x as i128, self.scale as i128)
    }

    pub fn classify(&self) -> PreferenceFlags {
        let n = self.n;
        let mut flags = PreferenceFlags {
            symmetric: true,
            binary: true,
            nonnegative: true,
            positive: true,
            strict: true,
        };
        for p in 0..n {
            let mut row: Vec<Rational> = Vec::with_capacity(n.saturating_sub(1));
            for q in (0..n).filter(|&q| q != p) {
                let v = self.get(p, q);
                if v != self.get(q, p) {
                    flags.symmetric = false;
                }
                if v != Rational::ZERO && v != Rational::ONE {
                    flags.binary = false;
                }
                if v.is_negative() {
                    flags.nonnegative = false;
                }
                if !v.is_positive() {
                    flags.positive = false;
                }
                row.push(v);
            }
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                flags.strict = false;
            }
        }
        flags
    }

    /// Directed edges `(p, q)` with `f_p(q) != 0`.
    pub fn preference_graph(&self) -> Vec<(usize, usize, Rational)> {
        (0..self.n)
            .flat_map(|p| self.others(p).map(move |(q, v)| (p, q, v)))
            .filter(|(_, _, v)| !v.is_zero())
            .collect()
    }
}

/// Bijection from agents to seats, stored with its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    seat_of: Vec<usize>,
    agent_at: Vec<usize>,
}

impl std::fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Arrangement{:?}", self.seat_of)
    }
}

impl Arrangement {
    /// `seat_of[p]` is the vertex of agent `p`; must be a permutation.
    pub fn new(seat_of: Vec<usize>) -> Result<Arrangement> {
        let n = seat_of.len();
        let mut agent_at = vec![usize::MAX; n];
        for (p, &v) in seat_of.iter().enumerate() {
            if v >= n {
                return invalid(format!("agent {p} is seated on vertex {v}, outside 0..{n}"));
            }
            if agent_at[v] != usize::MAX {
                return invalid(format!(
                    "vertex {v} is assigned to both agents {} and {p}",
                    agent_at[v]
                ));
            }
            agent_at[v] = p;
        }
        Ok(Arrangement { seat_of, agent_at })
    }

    pub fn identity(n: usize) -> Arrangement {
        Arrangement {
            seat_of: (0..n).collect(),
            agent_at: (0..n).collect(),
        }
    }

    /// Builds from the inverse map: `agent_at[v]` is the agent on vertex `v`.
    pub fn from_agent_at(agent_at: Vec<usize>) -> Result<Arrangement> {
        let inv = Arrangement::new(agent_at)?;
        Ok(Arrangement {
            seat_of: inv.agent_at,
            agent_at: inv.seat_of,
        })
    }

    pub fn len(&self) -> usize {
        self.seat_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seat_of.is_empty()
    }

    pub fn seat_of(&self, agent: usize) -> usize {
        self.seat_of[agent]
    }

    pub fn agent_at(&self, vertex: usize) -> usize {
        self.agent_at[vertex]
    }

    pub fn seats(&self) -> &[usize] {
        &self.seat_of
    }

    pub fn agents(&self) -> &[usize] {
        &self.agent_at
    }

    /// The `(p, q)`-swap arrangement.
    pub fn swapped(&self, p: usize, q: usize) -> Result<Arrangement> {
        let n = self.len();
        if p >= n || q >= n {
            return invalid(format!("swap ({p}, {q}) out of range for {n} agents"));
        }
        if p == q {
            return invalid(format!("cannot swap agent {p} with itself"));
        }
        let mut next = self.clone();
        next.swap_in_place(p, q);
        Ok(next)
    }

    pub(crate) fn swap_in_place(&mut self, p: usize, q: usize) {
        let (sp, sq) = (self.seat_of[p], self.seat_of[q]);
        self.seat_of.swap(p, q);
        self.agent_at[sp] = q;
        self.agent_at[sq] = p;
    }

    /// Number of transpositions separating `self` from `other`:
    /// `n - cycles(other ∘ self⁻¹)`.
    pub fn cayley_distance(&self, other: &Arrangement) -> usize {
        let n = self.len();
        assert_eq!(n, other.len());
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                // the agent sitting, in `self`, where p sits in `other`
                p = self.agent_at[other.seat_of[p]];
            }
        }
        n - cycles
    }
}

/// Transpositions turning a start arrangement into `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPlan {
    pub transpositions: Vec<(usize, usize)>,
    pub target: Arrangement,
}

impl SwapPlan {
    /// Minimal-length plan from `start` to `target`, fixing agents in index
    /// order.
    pub fn between(start: &Arrangement, target: &Arrangement) -> SwapPlan {
        let mut cur = start.clone();
        let mut transpositions = Vec::new();
        for p in 0..cur.len() {
            while cur.seat_of[p] != target.seat_of[p] {
                let q = cur.agent_at[target.seat_of[p]];
                cur.swap_in_place(p, q);
                transpositions.push((p.min(q), p.max(q)));
            }
        }
        debug_assert_eq!(&cur, target);
        SwapPlan {
            transpositions,
            target: target.clone(),
        }
    }

    pub fn distance(&self) -> usize {
        self.transpositions.len()
    }

    /// Replays the transpositions from `start`.
    pub fn apply(&self, start: &Arrangement) -> Result<Arrangement> {
        let mut cur = start.clone();
        for &(p, q) in &self.transpositions {
            cur = cur.swapped(p, q)?;
        }
        Ok(cur)
    }
}

/// A seat graph together with a preference profile over the same number of
/// agents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: SeatGraph,
    profile: PreferenceProfile,
}

/// Result of [`Instance::better_response_dynamics`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsOutcome {
    pub arrangement: Arrangement,
    pub steps: usize,
    pub converged: bool,
}

impl Instance {
    pub fn new(graph: SeatGraph, profile: PreferenceProfile) -> Result<Instance> {
        if graph.vertex_count() != profile.agent_count() {
            return Err(Error::Validation(format!(
                "seat graph has {} vertices but there are {} agents",
                graph.vertex_count(),
                profile.agent_count()
            )));
        }
        Ok(Instance { graph, profile })
    }

    pub fn graph(&self) -> &SeatGraph {
        &self.graph
    }

    pub fn profile(&self) -> &PreferenceProfile {
        &self.profile
    }

    pub fn agent_count(&self) -> usize {
        self.profile.agent_count()
    }

    pub fn check_arrangement(&self, arrangement: &Arrangement) -> Result<()> {
        if arrangement.len() != self.agent_count() {
            return invalid(format!(
                "arrangement covers {} agents, instance has {}",
                arrangement.len(),
                self.agent_count()
            ));
        }
        Ok(())
    }

    fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agent_count() {
            return invalid(format!(
                "agent {agent} out of range for {} agents",
                self.agent_count()
            ));
        }
        Ok(())
    }

    pub fn utility(&self, arrangement: &Arrangement, agent: usize) -> Result<Rational> {
        self.check_arrangement(arrangement)?;
        self.check_agent(agent)?;
        Ok(self.profile.unscale(self.raw_utility(&arrangement.seat_of, &arrangement.agent_at, agent)))
    }

    pub fn utilities(&self, arrangement: &Arrangement) -> Result<Vec<Rational>> {
        self.check_arrangement(arrangement)?;
        Ok((0..self.agent_count())
            .map(|p| self.profile.unscale(self.raw_utility(&arrangement.seat_of, &arrangement.agent_at, p)))
            .collect())
    }

    /// Utility of `p` in the `(p, q)`-swap arrangement.
    pub fn utility_after_swap(&self, arrangement: &Arrangement, p: usize, q: usize) -> Result<Rational> {
        self.check_arrangement(arrangement)?;
        self.check_agent(p)?;
        self.check_agent(q)?;
        if p == q {
            return invalid("swap needs two distinct agents");
        }
        Ok(self.profile.unscale(self.raw_swap_utility(&arrangement.seat_of, &arrangement.agent_at, p, q)))
    }

    pub fn social_welfare(&self, arrangement: &Arrangement) -> Result<Rational> {
        self.check_arrangement(arrangement)?;
        Ok(self.profile.unscale(self.raw_welfare(&arrangement.agent_at)))
    }

    /// Least utility over all agents; zero when there are no agents.
    pub fn min_utility(&self, arrangement: &Arrangement) -> Result<Rational> {
        self.check_arrangement(arrangement)?;
        Ok(self.profile.unscale(self.raw_min_utility(&arrangement.seat_of, &arrangement.agent_at)))
    }

    /// Unordered pairs `(p, q)`, `p < q`, that both strictly gain by swapping,
    /// in lexicographic order.
    pub fn blocking_pairs(&self, arrangement: &Arrangement) -> Result<Vec<(usize, usize)>> {
        self.check_arrangement(arrangement)?;
        let (s, a) = (&arrangement.seat_of, &arrangement.agent_at);
        let n = self.agent_count();
        let base: Vec<i64> = (0..n).map(|p| self.raw_utility(s, a, p)).collect();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if self.raw_swap_utility(s, a, p, q) > base[p]
                    && self.raw_swap_utility(s, a, q, p) > base[q]
                {
                    out.push((p, q));
                }
            }
        }
        Ok(out)
    }

    /// Ordered pairs `(p, q)` where `p` strictly gains by swapping with `q`,
    /// in lexicographic order.
    pub fn envy_pairs(&self, arrangement: &Arrangement) -> Result<Vec<(usize, usize)>> {
        self.check_arrangement(arrangement)?;
        let (s, a) = (&arrangement.seat_of, &arrangement.agent_at);
        let n = self.agent_count();
        let mut out = Vec::new();
        for p in 0..n {
            let base = self.raw_utility(s, a, p);
            for q in (0..n).filter(|&q| q != p) {
                if self.raw_swap_utility(s, a, p, q) > base {
                    out.push((p, q));
                }
            }
        }
        Ok(out)
    }

    pub fn is_stable(&self, arrangement: &Arrangement) -> Result<bool> {
        self.check_arrangement(arrangement)?;
        Ok(self.raw_is_stable(&arrangement.seat_of, &arrangement.agent_at))
    }

    pub fn is_envy_free(&self, arrangement: &Arrangement) -> Result<bool> {
        self.check_arrangement(arrangement)?;
        Ok(self.raw_is_envy_free(&arrangement.seat_of, &arrangement.agent_at))
    }

    /// Repeatedly swaps the lexicographically first blocking pair.
    ///
    /// Under symmetric preferences every such swap raises social welfare, so
    /// the loop terminates in a stable arrangement. Otherwise it may cycle and
    /// stops after `max_steps` with `converged == false`.
    pub fn better_response_dynamics(
        &self,
        arrangement: &Arrangement,
        max_steps: usize,
    ) -> Result<DynamicsOutcome> {
        self.check_arrangement(arrangement)?;
        let mut cur = arrangement.clone();
        let mut steps = 0;
        loop {
            let Some((p, q)) = self.first_blocking_pair(&cur.seat_of, &cur.agent_at) else {
                return Ok(DynamicsOutcome {
                    arrangement: cur,
                    steps,
                    converged: true,
                });
            };
            if steps == max_steps {
                return Ok(DynamicsOutcome {
                    arrangement: cur,
                    steps,
                    converged: false,
                });
            }
            cur.swap_in_place(p, q);
            steps += 1;
        }
    }

    // ---- integer-scaled kernels ------------------------------------------

    #[inline]
    pub(crate) fn raw_utility(&self, seat_of: &[usize], agent_at: &[usize], p: usize) -> i64 {
        self.graph.adj[seat_of[p]]
            .iter()
            .map(|&v| self.profile.raw(p, agent_at[v]))
            .sum()
    }

    /// Utility of `p` after swapping seats with `q`.
    #[inline]
    pub(crate) fn raw_swap_utility(&self, seat_of: &[usize], agent_at: &[usize], p: usize, q: usize) -> i64 {
        let sp = seat_of[p];
        self.graph.adj[seat_of[q]]
            .iter()
            .map(|&v| {
                let other = if v == sp { q } else { agent_at[v] };
                self.profile.raw(p, other)
            })
            .sum()
    }

    #[inline]
    pub(crate) fn raw_welfare(&self, agent_at: &[usize]) -> i64 {
        self.graph
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (agent_at[u], agent_at[v]);
                self.profile.raw(a, b) + self.profile.raw(b, a)
            })
            .sum()
    }

    pub(crate) fn raw_min_utility(&self, seat_of: &[usize], agent_at: &[usize]) -> i64 {
        (0..self.agent_count())
            .map(|p| self.raw_utility(seat_of, agent_at, p))
            .min()
            .unwrap_or(0)
    }

    fn first_blocking_pair(&self, seat_of: &[usize], agent_at: &[usize]) -> Option<(usize, usize)> {
        let n = self.agent_count();
        let base: Vec<i64> = (0..n).map(|p| self.raw_utility(seat_of, agent_at, p)).collect();
        for p in 0..n {
            for q in p + 1..n {
                if self.raw_swap_utility(seat_of, agent_at, p, q) > base[p]
                    && self.raw_swap_utility(seat_of, agent_at, q, p) > base[q]
                {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub(crate) fn raw_is_stable(&self, seat_of: &[usize], agent_at: &[usize]) -> bool {
        let n = self.agent_count();
        let mut base = Vec::with_capacity(n);
        for p in 0..n {
            base.push(self.raw_utility(seat_of, agent_at, p));
        }
        for p in 0..n {
            for q in p + 1..n {
                if self.raw_swap_utility(seat_of, agent_at, p, q) > base[p]
                    && self.raw_swap_utility(seat_of, agent_at, q, p) > base[q]
                {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn raw_is_envy_free(&self, seat_of: &[usize], agent_at: &[usize]) -> bool {
        let n = self.agent_count();
        for p in 0..n {
            let base = self.raw_utility(seat_of, agent_at, p);
            for q in 0..n {
                if q != p && self.raw_swap_utility(seat_of, agent_at, p, q) > base {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn unscale(&self, x: i64) -> Rational {
        self.profile.unscale(x)
    }
}
