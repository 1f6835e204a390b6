//! Exhaustive ground-truth solvers.
//!
//! [`Oracle::brute_solve`] and the price computations walk one arrangement per
//! orbit of the seat graph's twin symmetries: exchanging the agents on two twin
//! vertices is a graph automorphism, so it preserves every utility, blocking
//! pair and envy pair. Within each twin class, agents in index order receive
//! vertices in index order; that representative is the lexicographically
//! smallest member of its orbit, and representatives are produced in
//! lexicographic order, so "first optimum found" is the lexicographically
//! smallest optimum overall.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{Arrangement, Instance, SwapPlan};
use crate::rational::Rational;

/// Default enumeration cap: searches may visit at most `10!` arrangements.
pub const DEFAULT_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mwa,
    Mua,
    Sta,
    Efa,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Mwa => "mwa",
            Problem::Mua => "mua",
            Problem::Sta => "sta",
            Problem::Efa => "efa",
        }
    }

    pub fn is_decision(self) -> bool {
        matches!(self, Problem::Sta | Problem::Efa)
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Problem> {
        match s {
            "mwa" => Ok(Problem::Mwa),
            "mua" => Ok(Problem::Mua),
            "sta" => Ok(Problem::Sta),
            "efa" => Ok(Problem::Efa),
            other => invalid(format!("unknown problem `{other}`")),
        }
    }
}

/// Outcome of solving one problem on one instance.
///
/// MWA and MUA reports are always feasible and carry the optimal objective
/// (welfare, respectively least utility). STA and EFA reports carry a witness
/// exactly when feasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub problem: Problem,
    pub arrangement: Option<Arrangement>,
    pub objective: Option<Rational>,
    pub feasible: bool,
}

impl SolveReport {
    pub(crate) fn optimum(problem: Problem, arrangement: Arrangement, objective: Rational) -> Self {
        SolveReport {
            problem,
            arrangement: Some(arrangement),
            objective: Some(objective),
            feasible: true,
        }
    }

    pub(crate) fn decision(problem: Problem, arrangement: Option<Arrangement>) -> Self {
        SolveReport {
            problem,
            feasible: arrangement.is_some(),
            arrangement,
            objective: None,
        }
    }

    /// Re-checks the witness against the problem's defining predicate and the
    /// reported objective.
    pub fn verify(&self, instance: &Instance) -> Result<bool> {
        let Some(a) = &self.arrangement else {
            return Ok(!self.feasible && self.problem.is_decision());
        };
        Ok(match self.problem {
            Problem::Mwa => Some(instance.social_welfare(a)?) == self.objective,
            Problem::Mua => Some(instance.min_utility(a)?) == self.objective,
            Problem::Sta => self.feasible && instance.is_stable(a)?,
            Problem::Efa => self.feasible && instance.is_envy_free(a)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PriceKind {
    Pos,
    Pof,
}

/// A price value, or a marker when the ratio is not a finite number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriceValue {
    Ratio(Rational),
    /// No arrangement satisfies the constraint.
    Undefined,
    /// The constrained welfare is non-positive while the optimum is larger.
    Unbounded,
}

impl std::fmt::Display for PriceValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PriceValue::Ratio(r) => write!(f, "{r}"),
            PriceValue::Undefined => f.write_str("undefined"),
            PriceValue::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceReport {
    pub kind: PriceKind,
    pub value: PriceValue,
    pub optimal_welfare: Rational,
    pub witness_optimal: Arrangement,
    /// Highest-welfare arrangement satisfying the constraint (stable, or
    /// maximin-optimal), lexicographically smallest among ties.
    pub witness_constrained: Option<Arrangement>,
    pub constrained_welfare: Option<Rational>,
}

/// `sw* / sw_c` with the degenerate cases mapped to markers.
pub fn price_ratio(optimal: Rational, constrained: Option<Rational>) -> PriceValue {
    let Some(c) = constrained else {
        return PriceValue::Undefined;
    };
    if c == optimal {
        PriceValue::Ratio(Rational::ONE)
    } else if optimal.is_positive() && c.is_positive() {
        PriceValue::Ratio(optimal / c)
    } else {
        PriceValue::Unbounded
    }
}

/// All `n!` arrangements in lexicographic order of `seat_of`.
pub struct Arrangements {
    next: Option<Vec<usize>>,
}

impl Iterator for Arrangements {
    type Item = Arrangement;

    fn next(&mut self) -> Option<Arrangement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Arrangement::new(cur).expect("permutation"))
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Exhaustive solver with an explicit work limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    cap: usize,
}

impl Default for Oracle {
    fn default() -> Oracle {
        Oracle { cap: DEFAULT_CAP }
    }
}

enum Flow {
    Continue,
    Stop,
}

impl Oracle {
    /// Searches may visit at most `cap!` arrangements.
    pub fn new(cap: usize) -> Oracle {
        Oracle { cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn budget(&self) -> u128 {
        factorial(self.cap)
    }

    /// All arrangements of `n` agents; refuses `n` above the cap.
    pub fn enumerate_arrangements(&self, n: usize) -> Result<Arrangements> {
        if n > self.cap {
            return Err(Error::BudgetExceeded {
                what: format!("enumerating all arrangements of {n} agents (cap is {} agents)", self.cap),
                needed: factorial(n),
                limit: self.budget(),
            });
        }
        Ok(Arrangements {
            next: Some((0..n).collect()),
        })
    }

    /// Number of twin-orbit representatives visited for `instance`.
    pub fn orbit_count(instance: &Instance) -> u128 {
        let classes = instance.graph().twin_classes();
        let mut count = factorial(instance.agent_count());
        for c in classes {
            count /= factorial(c.len());
        }
        count
    }

    fn check_budget(&self, instance: &Instance, what: &str) -> Result<()> {
        let needed = Oracle::orbit_count(instance);
        if needed > self.budget() {
            return Err(Error::BudgetExceeded {
                what: format!("{what} over {} agents", instance.agent_count()),
                needed,
                limit: self.budget(),
            });
        }
        Ok(())
    }

    fn for_each_rep(&self, instance: &Instance, mut visit: impl FnMut(&[usize], &[usize]) -> Flow) {
        let n = instance.agent_count();
        let classes = instance.graph().twin_classes();
        let mut st = Walk {
            ptr: vec![0; classes.len()],
            classes,
            seat_of: vec![0; n],
            agent_at: vec![0; n],
        };
        st.dfs(0, n, &mut visit);
    }

    pub fn brute_solve(&self, problem: Problem, instance: &Instance) -> Result<SolveReport> {
        self.check_budget(instance, &format!("brute-force {}", problem.name()))?;
        let mut best: Option<(i64, Vec<usize>)> = None;
        let mut found: Option<Vec<usize>> = None;
        self.for_each_rep(instance, |s, a| match problem {
            Problem::Mwa | Problem::Mua => {
                let value = if problem == Problem::Mwa {
                    instance.raw_welfare(a)
                } else {
                    instance.raw_min_utility(s, a)
                };
                if best.as_ref().is_none_or(|(b, _)| value > *b) {
                    best = Some((value, s.to_vec()));
                }
                Flow::Continue
            }
            Problem::Sta | Problem::Efa => {
                let ok = if problem == Problem::Sta {
                    instance.raw_is_stable(s, a)
                } else {
                    instance.raw_is_envy_free(s, a)
                };
                if ok {
                    found = Some(s.to_vec());
                    Flow::Stop
                } else {
                    Flow::Continue
                }
            }
        });
        let arrangement = |s: Vec<usize>| Arrangement::new(s).expect("enumerated permutation");
        Ok(match problem {
            Problem::Mwa | Problem::Mua => {
                let (value, s) = best.expect("at least one arrangement exists");
                SolveReport::optimum(problem, arrangement(s), instance.unscale(value))
            }
            Problem::Sta | Problem::Efa => SolveReport::decision(problem, found.map(arrangement)),
        })
    }

    /// Optimum welfare over the best stable arrangement's welfare.
    pub fn price_of_stability(&self, instance: &Instance) -> Result<PriceReport> {
        self.check_budget(instance, "price of stability")?;
        let mut opt: Option<(i64, Vec<usize>)> = None;
        let mut stable: Option<(i64, Vec<usize>)> = None;
        self.for_each_rep(instance, |s, a| {
            let w = instance.raw_welfare(a);
            if opt.as_ref().is_none_or(|(b, _)| w > *b) {
                opt = Some((w, s.to_vec()));
            }
            // only a strictly better stable welfare can replace the witness
            if stable.as_ref().is_none_or(|(b, _)| w > *b) && instance.raw_is_stable(s, a) {
                stable = Some((w, s.to_vec()));
            }
            Flow::Continue
        });
        Ok(self.price_report(instance, PriceKind::Pos, opt, stable))
    }

    /// Optimum welfare over the best welfare among maximin arrangements.
    pub fn price_of_fairness(&self, instance: &Instance) -> Result<PriceReport> {
        self.check_budget(instance, "price of fairness")?;
        let mut opt: Option<(i64, Vec<usize>)> = None;
        // (least utility, welfare, arrangement)
        let mut fair: Option<(i64, i64, Vec<usize>)> = None;
        self.for_each_rep(instance, |s, a| {
            let w = instance.raw_welfare(a);
            if opt.as_ref().is_none_or(|(b, _)| w > *b) {
                opt = Some((w, s.to_vec()));
            }
            let m = instance.raw_min_utility(s, a);
            let better = match &fair {
                None => true,
                Some((bm, bw, _)) => m > *bm || (m == *bm && w > *bw),
            };
            if better {
                fair = Some((m, w, s.to_vec()));
            }
            Flow::Continue
        });
        Ok(self.price_report(instance, PriceKind::Pof, opt, fair.map(|(_, w, s)| (w, s))))
    }

    fn price_report(
        &self,
        instance: &Instance,
        kind: PriceKind,
        opt: Option<(i64, Vec<usize>)>,
        constrained: Option<(i64, Vec<usize>)>,
    ) -> PriceReport {
        let (ow, os) = opt.expect("at least one arrangement exists");
        let optimal_welfare = instance.unscale(ow);
        let constrained_welfare = constrained.as_ref().map(|(w, _)| instance.unscale(*w));
        PriceReport {
            kind,
            value: price_ratio(optimal_welfare, constrained_welfare),
            optimal_welfare,
            witness_optimal: Arrangement::new(os).expect("permutation"),
            witness_constrained: constrained.map(|(_, s)| Arrangement::new(s).expect("permutation")),
            constrained_welfare,
        }
    }

    /// Breadth-first search over single swaps from `start`, up to depth `k`.
    /// Returns the lexicographically smallest stable arrangement at the least
    /// depth, with the swap path that reached it.
    pub fn swap_bfs_stable(&self, instance: &Instance, start: &Arrangement, k: usize) -> Result<Option<SwapPlan>> {
        instance.check_arrangement(start)?;
        let n = instance.agent_count();
        let pairs = binomial(n as u128, 2);
        let mut needed = 0u128;
        let mut layer = 1u128;
        for _ in 0..=k {
            needed = needed.saturating_add(layer);
            layer = layer.saturating_mul(pairs);
        }
        if needed > self.budget() {
            return Err(Error::BudgetExceeded {
                what: format!("swap breadth-first search to depth {k} over {n} agents"),
                needed,
                limit: self.budget(),
            });
        }
        // nodes: (arrangement, parent index, swap that produced it)
        let mut nodes: Vec<(Arrangement, usize, (usize, usize))> = vec![(start.clone(), usize::MAX, (0, 0))];
        let mut seen: HashSet<Vec<usize>> = HashSet::from([start.seats().to_vec()]);
        let mut frontier = vec![0usize];
        for depth in 0..=k {
            let best = frontier
                .iter()
                .copied()
                .filter(|&i| instance.raw_is_stable(nodes[i].0.seats(), nodes[i].0.agents()))
                .min_by(|&i, &j| nodes[i].0.seats().cmp(nodes[j].0.seats()));
            if let Some(mut i) = best {
                let target = nodes[i].0.clone();
                let mut swaps = Vec::new();
                while nodes[i].1 != usize::MAX {
                    swaps.push(nodes[i].2);
                    i = nodes[i].1;
                }
                swaps.reverse();
                debug_assert_eq!(swaps.len(), depth);
                return Ok(Some(SwapPlan {
                    transpositions: swaps,
                    target,
                }));
            }
            if depth == k {
                break;
            }
            let mut next = Vec::new();
            for &i in &frontier {
                for p in 0..n {
                    for q in p + 1..n {
                        let child = nodes[i].0.swapped(p, q)?;
                        if seen.insert(child.seats().to_vec()) {
                            nodes.push((child, i, (p, q)));
                            next.push(nodes.len() - 1);
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(None)
    }
}

struct Walk {
    classes: Vec<Vec<usize>>,
    ptr: Vec<usize>,
    seat_of: Vec<usize>,
    agent_at: Vec<usize>,
}

impl Walk {
    fn dfs(&mut self, p: usize, n: usize, visit: &mut impl FnMut(&[usize], &[usize]) -> Flow) -> bool {
        if p == n {
            return matches!(visit(&self.seat_of, &self.agent_at), Flow::Stop);
        }
        let mut options: Vec<(usize, usize)> = (0..self.classes.len())
            .filter(|&c| self.ptr[c] < self.classes[c].len())
            .map(|c| (self.classes[c][self.ptr[c]], c))
            .collect();
        options.sort_unstable();
        for (v, c) in options {
            self.seat_of[p] = v;
            self.agent_at[v] = p;
            self.ptr[c] += 1;
            let stop = self.dfs(p + 1, n, visit);
            self.ptr[c] -= 1;
            if stop {
                return true;
            }
        }
        false
    }
}

/// [`Oracle::brute_solve`] with the default cap.
pub fn brute_solve(problem: Problem, instance: &Instance) -> Result<SolveReport> {
    Oracle::default().brute_solve(problem, instance)
}

/// [`Oracle::enumerate_arrangements`] with the default cap.
pub fn enumerate_arrangements(n: usize) -> Result<Arrangements> {
    Oracle::default().enumerate_arrangements(n)
}

/// [`Oracle::price_of_stability`] with the default cap.
pub fn price_of_stability(instance: &Instance) -> Result<PriceReport> {
    Oracle::default().price_of_stability(instance)
}

/// [`Oracle::price_of_fairness`] with the default cap.
pub fn price_of_fairness(instance: &Instance) -> Result<PriceReport> {
    Oracle::default().price_of_fairness(instance)
}

/// [`Oracle::swap_bfs_stable`] with the default cap.
pub fn swap_bfs_stable(instance: &Instance, start: &Arrangement, k: usize) -> Result<Option<SwapPlan>> {
    Oracle::default().swap_bfs_stable(instance, start, k)
}
