//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seatplan::matching::{self, WeightedGraph};
use seatplan::oracle::{PriceValue, DEFAULT_CAP};
use seatplan::reductions::{self, PofFamily, Reduction, SourceProblem};
use seatplan::{param, polysolve, Arrangement, Instance, Oracle, PreferenceProfile, Problem, Rational, SeatGraph};
use seatplan_cli::run;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn oracle() -> Oracle {
    Oracle::new(DEFAULT_CAP)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.1?}, limit {limit:?}"))
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

fn random_graph(r: &mut ChaCha8Rng, n: usize, density: f64) -> SeatGraph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| r.gen_bool(density))
        .collect();
    SeatGraph::new(n, edges).unwrap()
}

/// `m` disjoint seat edges, the remaining vertices isolated.
fn small_components(r: &mut ChaCha8Rng, n: usize, m: usize) -> SeatGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    SeatGraph::new(n, (0..m).map(|i| (order[2 * i], order[2 * i + 1]))).unwrap()
}

fn random_profile(r: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> PreferenceProfile {
    PreferenceProfile::from_fn(n, |_, _| int(r.gen_range(lo..=hi))).unwrap()
}

fn symmetric_profile(r: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> PreferenceProfile {
    let mut w = std::collections::HashMap::new();
    PreferenceProfile::from_fn(n, |p, q| int(*w.entry((p.min(q), p.max(q))).or_insert_with(|| r.gen_range(lo..=hi)))).unwrap()
}

/// Graph on `n` vertices from the bits of `mask` over pairs in order.
fn graph_from_mask(n: usize, mask: u64) -> SeatGraph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    SeatGraph::new(n, pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e)).unwrap()
}

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("seatplan").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
}

fn c1_pof_binary() -> Verdict {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("binary4.json");
    let (code, msg) = call(&["gen", "--family", "binary:4", "-o", doc.to_str().unwrap()]);
    ensure(code == 0, || format!("gen failed: {msg}"))?;
    let (code, out) = call(&["metrics", "--kind", "pof", doc.to_str().unwrap()]);
    ensure(code == 0, || format!("metrics failed: {out}"))?;
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    let avg = reductions::pof_family(PofFamily::Binary { n: 4 }).unwrap().graph().average_degree();
    ensure(avg == int(2), || format!("average degree {avg}"))?;
    let want = (avg - Rational::new(1, 4)).to_string();
    ensure(report["pof"] == want.as_str(), || format!("pof {}, expected {want}", report["pof"]))?;
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("pof = {want} = d(G) - 1/4"))
}

fn c2_pof_unbounded() -> Verdict {
    let mut seen = Vec::new();
    for (x, y) in [(5u64, 1u64), (50, 1), (9, 3)] {
        let inst = reductions::pof_family(PofFamily::Unbounded { x, y }).unwrap();
        let price = oracle().price_of_fairness(&inst).map_err(|e| e.to_string())?;
        let want = Rational::new(x as i128, 2 * y as i128);
        ensure(price.value == PriceValue::Ratio(want), || format!("({x},{y}): pof {}, expected {want}", price.value))?;
        seen.push(format!("({x},{y})->{want}"));
    }
    Ok(seen.join(" "))
}

fn c3_symmetric_pos() -> Verdict {
    let mut r = rng(3);
    for i in 0..200 {
        let n = r.gen_range(1..=7);
        let density = r.gen_range(0.2..0.9);
        let inst = Instance::new(random_graph(&mut r, n, density), symmetric_profile(&mut r, n, -5, 5)).unwrap();
        let opt = oracle().brute_solve(Problem::Mwa, &inst).map_err(|e| e.to_string())?;
        let witness = opt.arrangement.unwrap();
        let blocking = inst.blocking_pairs(&witness).unwrap();
        ensure(blocking.is_empty(), || format!("instance {i}: MWA witness blocked by {blocking:?}"))?;
        let pos = oracle().price_of_stability(&inst).map_err(|e| e.to_string())?;
        ensure(pos.value == PriceValue::Ratio(Rational::ONE), || format!("instance {i}: pos {}", pos.value))?;
    }
    Ok("200 instances, every MWA witness stable, PoS = 1".into())
}

fn c4_no_envy_free() -> Verdict {
    let inst = reductions::pof_family(PofFamily::NoEnvyP3).unwrap();
    let report = oracle().brute_solve(Problem::Efa, &inst).map_err(|e| e.to_string())?;
    ensure(!report.feasible, || "P3 instance has an envy-free arrangement".into())?;
    Ok("brute EFA infeasible on P3 with mutual value 1".into())
}

fn c5_small_components() -> Verdict {
    let start = Instant::now();
    let mut r = rng(5);
    for i in 0..300 {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(0..=n / 2);
        let inst = Instance::new(small_components(&mut r, n, m), random_profile(&mut r, n, -5, 5)).unwrap();
        for (problem, fast) in [
            (Problem::Mwa, polysolve::mwa_small_components(&inst)),
            (Problem::Mua, polysolve::mua_small_components(&inst)),
        ] {
            let fast = fast.map_err(|e| e.to_string())?;
            let brute = oracle().brute_solve(problem, &inst).map_err(|e| e.to_string())?;
            ensure(fast.objective == brute.objective, || {
                format!("instance {i} {}: {:?} vs brute {:?}", problem.name(), fast.objective, brute.objective)
            })?;
            ensure(fast.verify(&inst).unwrap(), || format!("instance {i} {}: witness invalid", problem.name()))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("300 instances, MWA and MUA exact, {:.1?}", start.elapsed()))
}

fn efa_agrees(inst: &Instance, fast: seatplan::Result<seatplan::SolveReport>, label: &str) -> Result<bool, String> {
    let fast = fast.map_err(|e| format!("{label}: {e}"))?;
    let brute = oracle().brute_solve(Problem::Efa, inst).map_err(|e| e.to_string())?;
    ensure(fast.feasible == brute.feasible, || format!("{label}: feasible {} vs brute {}", fast.feasible, brute.feasible))?;
    ensure(fast.verify(inst).unwrap(), || format!("{label}: witness invalid"))?;
    Ok(brute.feasible)
}

fn c6_efa_classes() -> Verdict {
    let mut r = rng(6);
    let mut yes = [0; 3];
    for i in 0..300 {
        let n = 2 * r.gen_range(1..=4);
        let inst = Instance::new(small_components(&mut r, n, n / 2), random_profile(&mut r, n, -2, 2)).unwrap();
        yes[0] += efa_agrees(&inst, polysolve::efa_edge_graph(&inst), &format!("edge-only {i}"))? as usize;
    }
    for i in 0..300 {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(0..=n / 2);
        let inst = Instance::new(small_components(&mut r, n, m), symmetric_profile(&mut r, n, -2, 3)).unwrap();
        yes[1] += efa_agrees(&inst, polysolve::efa_symmetric_small_components(&inst), &format!("symmetric {i}"))? as usize;
    }
    for i in 0..300 {
        let n = r.gen_range(1..=8);
        let m = r.gen_range(0..=n / 2);
        let profile = if i % 2 == 0 {
            // strict: each row a permutation of distinct values
            let mut rows = vec![vec![Rational::ZERO; n]; n];
            for (p, row) in rows.iter_mut().enumerate() {
                let mut vals: Vec<i64> = (0..n as i64 - 1).map(|v| v - n as i64 / 2).collect();
                vals.shuffle(&mut r);
                let mut it = vals.into_iter();
                for (q, cell) in row.iter_mut().enumerate() {
                    if q != p {
                        *cell = int(it.next().unwrap());
                    }
                }
            }
            PreferenceProfile::new(rows).unwrap()
        } else {
            random_profile(&mut r, n, 1, 3)
        };
        let inst = Instance::new(small_components(&mut r, n, m), profile).unwrap();
        yes[2] += efa_agrees(&inst, polysolve::efa_strict_or_positive(&inst), &format!("strict/positive {i}"))? as usize;
    }
    Ok(format!(
        "3 x 300 instances exact (feasible: edge-only {}, symmetric {}, strict/positive {})",
        yes[0], yes[1], yes[2]
    ))
}

fn has_triangle(g: &SeatGraph) -> bool {
    let n = g.vertex_count();
    (0..n).any(|a| (a + 1..n).any(|b| (b + 1..n).any(|c| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c))))
}

fn c7_vertex_cover() -> Verdict {
    let mut r = rng(7);
    for i in 0..200 {
        let n = r.gen_range(1..=8);
        let density = r.gen_range(0.1..0.9);
        let inst = Instance::new(random_graph(&mut r, n, density), random_profile(&mut r, n, -5, 5)).unwrap();
        let vc = param::mwa_vertex_cover(&inst).map_err(|e| format!("instance {i}: {e}"))?;
        let brute = oracle().brute_solve(Problem::Mwa, &inst).map_err(|e| e.to_string())?;
        ensure(vc.objective == brute.objective, || format!("instance {i}: {:?} vs brute {:?}", vc.objective, brute.objective))?;
        ensure(vc.verify(&inst).unwrap(), || format!("instance {i}: witness invalid"))?;
    }
    let mut graphs = 0;
    for n in 3..=6usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let triangle = has_triangle(&g);
            let hard = reductions::generate(Reduction::MwaKclique, &SourceProblem::KClique { graph: g, k: 3 })
                .map_err(|e| e.to_string())?;
            let welfare = oracle().brute_solve(Problem::Mwa, &hard.instance).map_err(|e| e.to_string())?.objective;
            ensure((welfare == Some(int(6))) == triangle, || format!("n={n} mask={mask}: welfare {welfare:?}, triangle {triangle}"))?;
            graphs += 1;
        }
    }
    Ok(format!("200 random instances exact; {graphs} k=3 gadgets match triangle detection"))
}

fn c8_triangle_welfare() -> Verdict {
    let fam = PofFamily::SymmetricTriangles { n: 6 };
    let inst = reductions::pof_family(fam).unwrap();
    let (opt, fair) = reductions::pof_proof_arrangements(fam).unwrap().unwrap();
    let (a, b) = (inst.social_welfare(&opt).unwrap(), inst.social_welfare(&fair).unwrap());
    let n = 6i128;
    let want_a = Rational::new(n * (3 * n + 1), 3);
    let want_b = Rational::new(4 * n, 1);
    ensure(a == want_a && b == want_b, || format!("welfare {a} and {b}, expected {want_a} and {want_b}"))?;
    Ok(format!("welfare {a} = n(n + 1/3) and {b} = 4n"))
}

fn has_independent_set(g: &SeatGraph, k: usize) -> bool {
    let n = g.vertex_count();
    (0u32..1 << n).any(|s| {
        s.count_ones() as usize == k
            && (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || !g.has_edge(u, v)))
    })
}

fn c9_local_sta() -> Verdict {
    let start = Instant::now();
    let mut r = rng(9);
    let mut found = 0;
    for i in 0..100 {
        let n = r.gen_range(2..=7);
        let k = r.gen_range(0..=3);
        let density = r.gen_range(0.2..0.8);
        let inst = Instance::new(random_graph(&mut r, n, density), random_profile(&mut r, n, -3, 3)).unwrap();
        let mut seats: Vec<usize> = (0..n).collect();
        seats.shuffle(&mut r);
        let s = Arrangement::new(seats).unwrap();
        let fast = param::local_k_sta(&inst, &s, k).map_err(|e| e.to_string())?;
        let bfs = oracle().swap_bfs_stable(&inst, &s, k).map_err(|e| e.to_string())?;
        ensure(fast.as_ref().map(|p| p.distance()) == bfs.as_ref().map(|p| p.distance()), || {
            format!("instance {i}: distance {:?} vs bfs {:?}", fast.as_ref().map(|p| p.distance()), bfs.as_ref().map(|p| p.distance()))
        })?;
        if let Some(plan) = &fast {
            ensure(inst.is_stable(&plan.apply(&s).unwrap()).unwrap(), || format!("instance {i}: plan target unstable"))?;
            found += 1;
        }
    }
    let mut yes = 0;
    for mask in 0..1u64 << 10 {
        let g = graph_from_mask(5, mask);
        let want = has_independent_set(&g, 2);
        let hard = reductions::generate(Reduction::LocalStaIndependentSet, &SourceProblem::IndependentSet { graph: g, k: 2 })
            .map_err(|e| e.to_string())?;
        ensure(hard.instance.agent_count() == 16, || format!("mask {mask}: {} agents", hard.instance.agent_count()))?;
        let start_arr = hard.start_arrangement.as_ref().unwrap();
        let got = param::local_k_sta(&hard.instance, start_arr, 2).map_err(|e| e.to_string())?.is_some();
        ensure(got == want, || format!("mask {mask}: local search {got}, independent set {want}"))?;
        yes += got as usize;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "100 random instances agree with swap BFS ({found} feasible); 1024 gadgets agree ({yes} yes), {:.1?}",
        start.elapsed()
    ))
}

fn has_hamiltonian_path(g: &SeatGraph) -> bool {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        if order.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return true;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| order[i - 1] < order[i]) else {
            return false;
        };
        let j = (i..n).rev().find(|&j| order[j] > order[i - 1]).unwrap();
        order.swap(i - 1, j);
        order[i..].reverse();
    }
}

fn c10_spanning() -> Verdict {
    let mut r = rng(10);
    let mut yes = 0;
    let mut total = 0;
    for n in 2..=7usize {
        for _ in 0..25 {
            let density = r.gen_range(0.2..0.8);
            let host = random_graph(&mut r, n, density);
            let want = has_hamiltonian_path(&host);
            let hard = reductions::generate(
                Reduction::MwaSpanning,
                &SourceProblem::SpanningSubgraphIso {
                    pattern: SeatGraph::path(n),
                    host,
                },
            )
            .map_err(|e| e.to_string())?;
            let welfare = oracle().brute_solve(Problem::Mwa, &hard.instance).map_err(|e| e.to_string())?.objective.unwrap();
            let hit = welfare == int(2 * (n as i64 - 1));
            ensure(hit == want, || format!("n={n}: welfare {welfare}, hamiltonian path {want}"))?;
            yes += want as usize;
            total += 1;
        }
    }
    Ok(format!("{total} hosts, {yes} with a Hamiltonian path, all match"))
}

/// Every matching as a list of edge indices.
fn all_matchings(g: &WeightedGraph) -> Vec<Vec<usize>> {
    fn go(g: &WeightedGraph, from: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for (i, &(u, v, _)) in g.edges().iter().enumerate().skip(from) {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                cur.push(i);
                go(g, i + 1, used, cur, out);
                cur.pop();
                used[u] = false;
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(g, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

fn random_weighted(r: &mut ChaCha8Rng, n: usize) -> WeightedGraph {
    let density = r.gen_range(0.3..1.0);
    let mut edges = Vec::new();
    for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
        if r.gen_bool(density) {
            edges.push((u, v, Rational::new(r.gen_range(-10..=10), r.gen_range(1..=3))));
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

fn c11_matching() -> Verdict {
    let mut r = rng(11);
    for i in 0..500 {
        let n = r.gen_range(1..=8);
        let g = random_weighted(&mut r, n);
        let all = all_matchings(&g);
        let w = |m: &[usize]| m.iter().map(|&e| g.edges()[e].2).sum::<Rational>();
        let lo = |m: &[usize]| m.iter().map(|&e| g.edges()[e].2).min();
        for s in 0..=n / 2 {
            let of_size: Vec<&Vec<usize>> = all.iter().filter(|m| m.len() == s).collect();
            let best_sum = of_size.iter().map(|m| w(m)).max();
            let best_min = of_size.iter().map(|m| lo(m)).max();
            let got = matching::max_weight_matching_of_size(&g, s);
            ensure(got.as_ref().map(|m| m.total_weight(&g)) == best_sum, || format!("weighting {i}, size {s}: max-weight mismatch"))?;
            ensure(got.is_none_or(|m| m.is_valid_in(&g) && m.len() == s), || format!("weighting {i}: invalid matching"))?;
            let got = matching::bottleneck_matching_of_size(&g, s);
            ensure(got.as_ref().map(|m| m.min_weight(&g)) == best_min, || format!("weighting {i}, size {s}: bottleneck mismatch"))?;
            ensure(got.is_none_or(|m| m.is_valid_in(&g) && m.len() == s), || format!("weighting {i}: invalid matching"))?;
        }
    }
    let mut perfect = 0;
    for i in 0..200 {
        let n = 2 * r.gen_range(1..=5);
        let g = random_weighted(&mut r, n);
        let best = all_matchings(&g)
            .into_iter()
            .filter(|m| 2 * m.len() == n)
            .map(|m| m.iter().map(|&e| g.edges()[e].2).sum::<Rational>())
            .max();
        let got = matching::max_weight_perfect_matching(&g);
        ensure(got.as_ref().map(|m| m.total_weight(&g)) == best, || format!("perfect {i} (n = {n}): mismatch"))?;
        perfect += best.is_some() as usize;
    }
    Ok(format!("500 weightings (n <= 8) at every size; 200 perfect-matching graphs (n <= 10, {perfect} with one)"))
}

fn partition_yes(values: &[u64]) -> bool {
    let total: u64 = values.iter().sum();
    total.is_multiple_of(2)
        && (0u32..1 << values.len()).any(|s| (0..values.len()).filter(|&i| s >> i & 1 == 1).map(|i| values[i]).sum::<u64>() * 2 == total)
}

fn c12_partition() -> Verdict {
    let start = Instant::now();
    let mut r = rng(12);
    let mut yes = 0;
    let mut largest = 0;
    for i in 0..50 {
        let len = r.gen_range(1..=10);
        let values: Vec<u64> = (0..len).map(|_| r.gen_range(1..=12)).collect();
        let want = partition_yes(&values);
        let src = SourceProblem::Partition { values: values.clone() };
        let mua = reductions::generate(Reduction::MuaPartition, &src).map_err(|e| e.to_string())?;
        largest = largest.max(mua.instance.agent_count());
        let maximin = oracle()
            .brute_solve(Problem::Mua, &mua.instance)
            .map_err(|e| format!("multiset {i} {values:?}: {e}"))?
            .objective
            .unwrap();
        let half = Rational::new(values.iter().sum::<u64>() as i128, 2);
        ensure((maximin >= half) == want, || format!("multiset {i} {values:?}: maximin {maximin}, partition {want}"))?;
        let efa = reductions::generate(Reduction::EfaPartition, &src).map_err(|e| e.to_string())?;
        let feasible = oracle()
            .brute_solve(Problem::Efa, &efa.instance)
            .map_err(|e| format!("multiset {i} {values:?}: {e}"))?
            .feasible;
        ensure(feasible == want, || format!("multiset {i} {values:?}: envy-free {feasible}, partition {want}"))?;
        yes += want as usize;
    }
    Ok(format!(
        "50 multisets ({yes} yes), MUA and EFA gadgets exact, up to {largest} agents, {:.1?}",
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("pof binary family", c1_pof_binary),
        ("pof unbounded family", c2_pof_unbounded),
        ("symmetric pos", c3_symmetric_pos),
        ("no envy-free P3", c4_no_envy_free),
        ("small-component MWA/MUA", c5_small_components),
        ("EFA polynomial classes", c6_efa_classes),
        ("vertex-cover MWA", c7_vertex_cover),
        ("symmetric triangle welfare", c8_triangle_welfare),
        ("local k-swap stability", c9_local_sta),
        ("spanning subgraph round trip", c10_spanning),
        ("matching kernels", c11_matching),
        ("partition gadgets", c12_partition),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
