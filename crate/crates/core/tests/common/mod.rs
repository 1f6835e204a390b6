#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seatplan::{Instance, PreferenceProfile, Rational, SeatGraph};

pub fn r(n: i64) -> Rational {
    Rational::from(n)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SeatGraph {
    let density: f64 = rng.gen_range(0.0..1.0);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    SeatGraph::new(n, edges).unwrap()
}

/// Disjoint edges and isolated vertices in shuffled vertex order.
pub fn small_component_graph(rng: &mut ChaCha8Rng, n: usize, allow_isolated: bool) -> SeatGraph {
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(rng);
    let max_edges = n / 2;
    let m = if allow_isolated { rng.gen_range(0..=max_edges) } else { max_edges };
    let edges = (0..m).map(|i| (verts[2 * i], verts[2 * i + 1]));
    SeatGraph::new(n, edges).unwrap()
}

pub fn random_profile(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> PreferenceProfile {
    PreferenceProfile::from_fn(n, |_, _| r(rng.gen_range(lo..=hi))).unwrap()
}

#[allow(clippy::needless_range_loop)]
pub fn symmetric_profile(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> PreferenceProfile {
    let mut t = vec![vec![r(0); n]; n];
    for p in 0..n {
        for q in p + 1..n {
            let v = r(rng.gen_range(lo..=hi));
            t[p][q] = v;
            t[q][p] = v;
        }
    }
    PreferenceProfile::new(t).unwrap()
}

pub fn random_instance(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Instance {
    let g = random_graph(rng, n);
    Instance::new(g, random_profile(rng, n, lo, hi)).unwrap()
}

pub fn symmetric_instance(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Instance {
    let g = random_graph(rng, n);
    Instance::new(g, symmetric_profile(rng, n, lo, hi)).unwrap()
}
