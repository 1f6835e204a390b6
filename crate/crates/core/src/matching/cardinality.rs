//! Maximum-cardinality matching on general graphs: Edmonds' blossom search,
//! one augmenting-path BFS per free vertex, O(n³).

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// `mate[v]` for a maximum matching of the graph given by adjacency lists.
pub(crate) fn max_cardinality(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate = vec![NONE; n];
    // greedy warm start
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| mate[w] == NONE && w != v) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut search = Search::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = search.find_path(adj, &mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = search.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// Size of a maximum matching.
pub(crate) fn matching_number(adj: &[Vec<usize>]) -> usize {
    max_cardinality(adj).iter().filter(|m| m.is_some()).count() / 2
}

struct Search {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn new(n: usize) -> Search {
        Search {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], a: usize, b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        let mut a = a;
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        let mut b = b;
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], v: usize, b: usize, child: usize) {
        let (mut v, mut child) = (v, child);
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, adj: &[Vec<usize>], mate: &[usize], root: usize) -> Option<usize> {
        let n = adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in &adj[v] {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn adj(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); n];
        for &(u, v) in edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    #[test]
    fn small_graphs() {
        assert_eq!(matching_number(&adj(3, &[(0, 1), (1, 2), (0, 2)])), 1);
        assert_eq!(matching_number(&adj(4, &[(0, 1), (2, 3)])), 2);
        assert_eq!(matching_number(&adj(0, &[])), 0);
        // odd cycle with a pendant path needs a blossom to augment
        let g = adj(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 5)]);
        assert_eq!(matching_number(&g), 3);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        let g = adj(10, &e);
        let mate = max_cardinality(&g);
        assert!(mate.iter().all(|m| m.is_some()));
        for (v, m) in mate.iter().enumerate() {
            let w = m.unwrap();
            assert_eq!(mate[w], Some(v));
            assert!(g[v].contains(&w));
        }
    }
}
