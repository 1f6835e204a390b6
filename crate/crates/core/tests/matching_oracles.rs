//! Matching kernels against exhaustive subset enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seatplan::matching::{
    bipartite_max_weight_perfect, bottleneck_matching_of_size, knapsack_01, max_cardinality_matching,
    max_weight_matching_of_size, max_weight_perfect_matching, Matching, WeightedGraph,
};
use seatplan::Rational;

fn r(n: i64) -> Rational {
    Rational::from(n)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64, lo: i64, hi: i64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v, r(rng.gen_range(lo..=hi))));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// Every matching of the graph, as sorted pair lists.
fn all_matchings(g: &WeightedGraph) -> Vec<Vec<(usize, usize)>> {
    fn rec(g: &WeightedGraph, i: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == g.edges().len() {
            let mut m = cur.clone();
            m.sort_unstable();
            out.push(m);
            return;
        }
        rec(g, i + 1, used, cur, out);
        let (u, v, _) = g.edges()[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push((u, v));
            rec(g, i + 1, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    rec(g, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

fn weight_of(g: &WeightedGraph, m: &[(usize, usize)]) -> Rational {
    m.iter().map(|&(u, v)| g.weight(u, v).unwrap()).sum()
}

fn min_of(g: &WeightedGraph, m: &[(usize, usize)]) -> Rational {
    m.iter().map(|&(u, v)| g.weight(u, v).unwrap()).min().unwrap()
}

fn check_valid(g: &WeightedGraph, m: &Matching) {
    assert!(m.is_valid_in(g));
    Matching::new(m.pairs().iter().copied()).unwrap();
}

#[test]
fn fixed_size_and_bottleneck_match_brute() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = rng.gen_range(0..=8);
        let density = rng.gen_range(0.2..1.0);
        let g = random_graph(&mut rng, n, density, -6, 9);
        let all = all_matchings(&g);
        for s in 0..=n / 2 + 1 {
            let of_size: Vec<&Vec<(usize, usize)>> = all.iter().filter(|m| m.len() == s).collect();
            let got = max_weight_matching_of_size(&g, s);
            let bot = bottleneck_matching_of_size(&g, s);
            if of_size.is_empty() {
                assert!(got.is_none() && bot.is_none(), "n={n} s={s}");
                continue;
            }
            let got = got.expect("a size-s matching exists");
            check_valid(&g, &got);
            assert_eq!(got.len(), s);
            let best = of_size.iter().map(|m| weight_of(&g, m)).max().unwrap();
            assert_eq!(got.total_weight(&g), best, "{g:?} s={s}");
            let canonical = of_size.iter().filter(|m| weight_of(&g, m) == best).min().unwrap();
            assert_eq!(got.pairs(), canonical.as_slice());

            let bot = bot.expect("a size-s matching exists");
            check_valid(&g, &bot);
            assert_eq!(bot.len(), s);
            if s > 0 {
                let best = of_size.iter().map(|m| min_of(&g, m)).max().unwrap();
                assert_eq!(bot.min_weight(&g), Some(best));
                let canonical = of_size.iter().filter(|m| min_of(&g, m) == best).min().unwrap();
                assert_eq!(bot.pairs(), canonical.as_slice());
            }
        }
        let card = max_cardinality_matching(&g);
        check_valid(&g, &card);
        assert_eq!(card.len(), all.iter().map(Vec::len).max().unwrap());
    }
}

#[test]
fn perfect_matching_matches_brute_up_to_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..120 {
        let n = rng.gen_range(0..=10);
        let density = rng.gen_range(0.3..1.0);
        let g = random_graph(&mut rng, n, density, -20, 20);
        let all = all_matchings(&g);
        let best = all
            .iter()
            .filter(|m| 2 * m.len() == n)
            .map(|m| weight_of(&g, m))
            .max();
        let got = max_weight_perfect_matching(&g);
        assert_eq!(got.as_ref().map(|m| m.total_weight(&g)), best);
        if let Some(m) = got {
            check_valid(&g, &m);
            assert_eq!(2 * m.len(), n);
        }
    }
}

#[test]
fn perfect_matching_on_complete_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [2usize, 4, 6, 8, 10] {
        for _ in 0..10 {
            let g = WeightedGraph::complete(n, |_, _| Rational::new(rng.gen_range(-30..=30), rng.gen_range(1..=4)));
            let all = all_matchings(&g);
            let best = all.iter().filter(|m| 2 * m.len() == n).map(|m| weight_of(&g, m)).max();
            assert_eq!(max_weight_perfect_matching(&g).map(|m| m.total_weight(&g)), best);
        }
    }
}

#[test]
fn weight_is_monotone_in_added_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let n = rng.gen_range(2..=8);
        let g = random_graph(&mut rng, n, 0.5, -5, 5);
        let (u, v) = loop {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && g.weight(u, v).is_none() {
                break (u, v);
            }
            if g.edges().len() == n * (n - 1) / 2 {
                break (0, 0);
            }
        };
        if u == v {
            continue;
        }
        let mut edges = g.edges().to_vec();
        edges.push((u, v, r(rng.gen_range(-5..=5))));
        let h = WeightedGraph::new(n, edges).unwrap();
        for s in 0..=n / 2 {
            if let Some(m) = max_weight_matching_of_size(&g, s) {
                let bigger = max_weight_matching_of_size(&h, s).unwrap();
                assert!(bigger.total_weight(&h) >= m.total_weight(&g));
            }
        }
    }
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, d - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn assignment_matches_brute_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let d = rng.gen_range(1..=6);
        let table: Vec<Vec<Rational>> = (0..d)
            .map(|_| (0..d).map(|_| r(rng.gen_range(-9..=9))).collect())
            .collect();
        let best = permutations(d)
            .iter()
            .map(|p| (0..d).map(|i| table[i][p[i]]).sum::<Rational>())
            .max()
            .unwrap();
        let (sigma, total) = bipartite_max_weight_perfect(&table).unwrap();
        assert_eq!(total, best);
        let mut sorted = sigma.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..d).collect::<Vec<_>>());

        // adding a constant to a full row keeps the optimum total shifted by it
        let row = rng.gen_range(0..d);
        let mut shifted = table.clone();
        for x in &mut shifted[row] {
            *x += r(7);
        }
        assert_eq!(bipartite_max_weight_perfect(&shifted).unwrap().1, best + r(7));
    }
}

#[test]
fn knapsack_matches_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let m = rng.gen_range(0..=8);
        let items: Vec<(u64, u64)> = (0..m).map(|_| (rng.gen_range(0..=6), rng.gen_range(0..=9))).collect();
        let cap = rng.gen_range(0..=15);
        let mut best = 0;
        for mask in 0u32..(1 << m) {
            let (w, v) = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .fold((0, 0), |(w, v), i| (w + items[i].0, v + items[i].1));
            if w <= cap {
                best = best.max(v);
            }
        }
        let (value, chosen) = knapsack_01(&items, cap);
        assert_eq!(value, best);
        let w: u64 = chosen.iter().map(|&i| items[i].0).sum();
        let v: u64 = chosen.iter().map(|&i| items[i].1).sum();
        assert!(w <= cap);
        assert_eq!(v, value);
    }
}
