//! Matching toolkit: cardinality matching, weighted perfect and fixed-size
//! matchings, bottleneck matchings, bipartite assignment and 0-1 knapsack.
//!
//! Weighted results are canonical: among optimal matchings the one whose
//! sorted pair list is lexicographically smallest is returned.

mod assignment;
mod blossom;
mod cardinality;
mod knapsack;

pub use knapsack::knapsack_01;

pub(crate) use assignment::max_weight_assignment;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Simple undirected graph with exact edge weights. Absent edges are absent,
/// not zero-weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, Rational)>,
    weight: Vec<Option<Rational>>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut weight = vec![None; n * n];
        let mut list = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) is not a valid edge on {n} vertices"
                )));
            }
            if weight[u * n + v].is_some() {
                return Err(Error::Validation(format!("duplicate edge ({u}, {v})")));
            }
            weight[u * n + v] = Some(w);
            weight[v * n + u] = Some(w);
            list.push((u.min(v), u.max(v), w));
        }
        list.sort_unstable();
        Ok(WeightedGraph { n, edges: list, weight })
    }

    /// Complete graph with `w(u, v)` on every pair `u < v`.
    pub fn complete(n: usize, mut w: impl FnMut(usize, usize) -> Rational) -> WeightedGraph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .map(|(u, v)| (u, v, w(u, v)))
            .collect();
        WeightedGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Rational> {
        if u < self.n && v < self.n {
            self.weight[u * self.n + v]
        } else {
            None
        }
    }

    fn scaled(&self) -> Scaled {
        let denom = Rational::common_denominator(self.edges.iter().map(|e| &e.2));
        let mut w = vec![None; self.n * self.n];
        for &(u, v, x) in &self.edges {
            let s = x.numer() * (denom / x.denom());
            w[u * self.n + v] = Some(s);
            w[v * self.n + u] = Some(s);
        }
        Scaled { n: self.n, w }
    }
}

/// Set of vertex-disjoint pairs, stored as sorted `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Matching> {
        let mut list: Vec<(usize, usize)> = pairs.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        list.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &list {
            if u == v || !seen.insert(u) || !seen.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "pair ({u}, {v}) overlaps another pair"
                )));
            }
        }
        Ok(Matching { pairs: list })
    }

    fn from_sorted(pairs: Vec<(usize, usize)>) -> Matching {
        Matching::new(pairs).expect("internal matching is disjoint")
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Whether every pair is an edge of `g`.
    pub fn is_valid_in(&self, g: &WeightedGraph) -> bool {
        self.pairs.iter().all(|&(u, v)| g.weight(u, v).is_some())
    }

    pub fn total_weight(&self, g: &WeightedGraph) -> Rational {
        self.pairs.iter().map(|&(u, v)| g.weight(u, v).expect("pair is an edge")).sum()
    }

    /// Least pair weight; `None` for the empty matching.
    pub fn min_weight(&self, g: &WeightedGraph) -> Option<Rational> {
        self.pairs.iter().map(|&(u, v)| g.weight(u, v).expect("pair is an edge")).min()
    }
}

struct Scaled {
    n: usize,
    w: Vec<Option<i128>>,
}

impl Scaled {
    fn get(&self, u: usize, v: usize) -> Option<i128> {
        self.w[u * self.n + v]
    }

    /// Edges of the subgraph induced by `alive`, relabeled densely.
    fn induced(&self, alive: &[bool], keep: impl Fn(i128) -> bool) -> (Vec<usize>, Vec<(usize, usize, i128)>) {
        let verts: Vec<usize> = (0..self.n).filter(|&v| alive[v]).collect();
        let mut edges = Vec::new();
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if let Some(w) = self.get(u, v) {
                    if keep(w) {
                        edges.push((a, b, w));
                    }
                }
            }
        }
        (verts, edges)
    }
}

/// Best weight of a matching with exactly `s` edges, by augmenting with
/// `n - 2s` zero-weight dummies adjacent to every real vertex and asking for a
/// maximum-weight perfect matching.
fn best_fixed_size(n: usize, edges: &[(usize, usize, i128)], s: usize) -> Option<(i128, Vec<(usize, usize)>)> {
    if 2 * s > n {
        return None;
    }
    if s == 0 {
        return Some((0, Vec::new()));
    }
    let min_w = edges.iter().map(|e| e.2).min()?;
    // every perfect matching of the augmented graph has exactly s real edges,
    // so a uniform shift keeps the argmax and makes all weights positive
    let shift = 1 - min_w.min(0);
    let dummies = n - 2 * s;
    let mut aug: Vec<(usize, usize, i128)> = edges.iter().map(|&(u, v, w)| (u, v, w + shift)).collect();
    for d in 0..dummies {
        for v in 0..n {
            aug.push((v, n + d, 0));
        }
    }
    let mate = blossom::max_weight_matching(n + dummies, &aug, true);
    if mate.iter().any(Option::is_none) {
        return None;
    }
    let mut weight = 0;
    let mut pairs = Vec::new();
    for &(u, v, w) in edges {
        if mate[u] == Some(v) {
            weight += w;
            pairs.push((u, v));
        }
    }
    debug_assert_eq!(pairs.len(), s);
    Some((weight, pairs))
}

fn canonical_max_weight(g: &Scaled, s: usize) -> Option<Vec<(usize, usize)>> {
    let n = g.n;
    let mut alive = vec![true; n];
    let (_, full) = g.induced(&alive, |_| true);
    let (opt, _) = best_fixed_size(n, &full, s)?;
    let best_on = |alive: &[bool], s: usize| {
        let (verts, edges) = g.induced(alive, |_| true);
        best_fixed_size(verts.len(), &edges, s).map(|(w, _)| w)
    };
    let mut fixed = Vec::new();
    let mut acc = 0i128;
    for u in 0..n {
        if fixed.len() == s {
            break;
        }
        if !alive[u] {
            continue;
        }
        // u stays dead whether or not a partner is found
        alive[u] = false;
        for v in u + 1..n {
            let Some(w) = g.get(u, v) else { continue };
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            if best_on(&alive, s - fixed.len() - 1) == Some(opt - acc - w) {
                fixed.push((u, v));
                acc += w;
                break;
            }
            alive[v] = true;
        }
    }
    debug_assert_eq!(acc, opt);
    Some(fixed)
}

fn threshold_adj(g: &Scaled, alive: &[bool], t: i128) -> Vec<Vec<usize>> {
    let (_, edges) = g.induced(alive, |w| w >= t);
    let k = alive.iter().filter(|&&a| a).count();
    let mut adj = vec![Vec::new(); k];
    for (u, v, _) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Maximum-cardinality matching (not canonicalized).
pub fn max_cardinality_matching(g: &WeightedGraph) -> Matching {
    let mut adj = vec![Vec::new(); g.n];
    for &(u, v, _) in &g.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mate = cardinality::max_cardinality(&adj);
    let pairs = (0..g.n)
        .filter_map(|u| mate[u].filter(|&v| u < v).map(|v| (u, v)))
        .collect();
    Matching::from_sorted(pairs)
}

/// Maximum-weight perfect matching; `None` when the graph has none.
pub fn max_weight_perfect_matching(g: &WeightedGraph) -> Option<Matching> {
    if g.n % 2 == 1 {
        return None;
    }
    max_weight_matching_of_size(g, g.n / 2)
}

/// Maximum-weight matching among those with exactly `s` edges.
pub fn max_weight_matching_of_size(g: &WeightedGraph, s: usize) -> Option<Matching> {
    canonical_max_weight(&g.scaled(), s).map(Matching::from_sorted)
}

/// Size-`s` matching maximizing its least edge weight. The empty matching
/// is returned for `s == 0`.
pub fn bottleneck_matching_of_size(g: &WeightedGraph, s: usize) -> Option<Matching> {
    if s == 0 {
        return Some(Matching::default());
    }
    let sg = g.scaled();
    let n = g.n;
    let mut levels: Vec<i128> = (0..n)
        .flat_map(|u| (u + 1..n).filter_map({
            let sg = &sg;
            move |v| sg.get(u, v)
        }))
        .collect();
    levels.sort_unstable();
    levels.dedup();
    let all = vec![true; n];
    let feasible = |t: i128| cardinality::matching_number(&threshold_adj(&sg, &all, t)) >= s;
    if levels.is_empty() || !feasible(levels[0]) {
        return None;
    }
    // largest level index that is still feasible
    let (mut lo, mut hi) = (0, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if feasible(levels[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let t = levels[lo];
    let mut alive = vec![true; n];
    let mut fixed = Vec::new();
    for u in 0..n {
        if fixed.len() == s {
            break;
        }
        if !alive[u] {
            continue;
        }
        alive[u] = false;
        for v in u + 1..n {
            match sg.get(u, v) {
                Some(w) if w >= t && alive[v] => {}
                _ => continue,
            }
            alive[v] = false;
            let need = s - fixed.len() - 1;
            if need == 0 || cardinality::matching_number(&threshold_adj(&sg, &alive, t)) >= need {
                fixed.push((u, v));
                break;
            }
            alive[v] = true;
        }
    }
    debug_assert_eq!(fixed.len(), s);
    Some(Matching::from_sorted(fixed))
}

/// Permutation `sigma` of a square table maximizing `Σ weights[i][sigma[i]]`,
/// with the optimal total.
pub fn bipartite_max_weight_perfect(weights: &[Vec<Rational>]) -> Result<(Vec<usize>, Rational)> {
    let d = weights.len();
    if let Some((i, row)) = weights.iter().enumerate().find(|(_, r)| r.len() != d) {
        return Err(Error::InvalidArgument(format!(
            "assignment table row {i} has {} entries, expected {d}",
            row.len()
        )));
    }
    let denom = Rational::common_denominator(weights.iter().flatten());
    let table: Vec<Vec<i128>> = weights
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (denom / x.denom())).collect())
        .collect();
    let sigma = assignment::max_weight_assignment(&table);
    let total = sigma.iter().enumerate().map(|(i, &j)| weights[i][j]).sum();
    Ok((sigma, total))
}
