//! Exhaustive search over all lists.
//!
//! Lists are enumerated depth-first in lexicographic order of product
//! indices. Left-scanning buyers are simulated incrementally as each product
//! is appended to the prefix; right-scanning buyers are simulated once the
//! list is complete. Rational buyers do not read the list at all.
//!
//! With several workers the search space is split by list prefix. Each part
//! keeps its own lexicographically first optimum and the parts are reduced in
//! prefix order, so the reported witness does not depend on scheduling.

use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};

use rayon::prelude::*;

use crate::catalog::{ProductId, ShelfList};
use crate::choice::preference_top_cycle;
use crate::instance::{Behavior, Direction, Instance};
use crate::money::Money;
use crate::preference::{Beats, Preference};

use super::{Method, Solution, SolveError};

pub const DEFAULT_EXACT_LIMIT: usize = 10;
/// Hard cap regardless of the configured limit (prefix sets are `u64` masks).
pub const MAX_EXACT_PRODUCTS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOptions {
    /// Refuse instances with more products than this.
    pub limit: usize,
    /// In decision mode, stop at the first list reaching the target. The
    /// returned witness is then some list reaching the target, not the
    /// lexicographically first optimum.
    pub early_exit: bool,
    /// Skip prefixes whose optimistic bound cannot beat the best list found.
    pub prune: bool,
    pub workers: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            limit: DEFAULT_EXACT_LIMIT,
            early_exit: false,
            prune: false,
            workers: 1,
        }
    }
}

const NONE: u32 = u32::MAX;

enum Scan<'a> {
    Satisficing {
        pref: &'a Preference,
        threshold: ProductId,
    },
    Successive(&'a Preference),
}

impl Scan<'_> {
    #[inline]
    fn step(&self, state: u32, q: ProductId) -> u32 {
        match *self {
            Scan::Satisficing { pref, threshold } => {
                if state == NONE && pref.weakly_prefers(q, threshold) {
                    q.0 as u32
                } else {
                    state
                }
            }
            Scan::Successive(pref) => {
                if state == NONE || pref.beats(q, ProductId(state as usize)) {
                    q.0 as u32
                } else {
                    state
                }
            }
        }
    }

    /// Once a satisficing buyer has picked, later products cannot change it.
    #[inline]
    fn settled(&self, state: u32) -> bool {
        matches!(self, Scan::Satisficing { .. }) && state != NONE
    }
}

struct Plan<'a> {
    n: usize,
    profits: &'a [Money],
    fixed: Money,
    left: Vec<Scan<'a>>,
    right: Vec<Scan<'a>>,
    /// Highest profit each left buyer could possibly end with.
    left_cap: Vec<Money>,
    right_cap_total: Money,
    target: Option<Money>,
}

impl<'a> Plan<'a> {
    fn new(inst: &'a Instance) -> Self {
        let cat = inst.catalog();
        let profits = cat.profits();
        let mut plan = Plan {
            n: inst.n(),
            profits,
            fixed: Money::ZERO,
            left: Vec::new(),
            right: Vec::new(),
            left_cap: Vec::new(),
            right_cap_total: Money::ZERO,
            target: inst.target(),
        };
        for b in inst.buyers() {
            let (scan, cap) = match b.behavior() {
                Behavior::Rational(pref) => {
                    plan.fixed += profits[pref.top().0];
                    continue;
                }
                Behavior::Satisficing {
                    preference,
                    threshold,
                } => {
                    let cap = cat
                        .ids()
                        .filter(|&q| preference.weakly_prefers(q, *threshold))
                        .map(|q| profits[q.0])
                        .max()
                        .unwrap_or(Money::ZERO);
                    (
                        Scan::Satisficing {
                            pref: preference,
                            threshold: *threshold,
                        },
                        cap,
                    )
                }
                Behavior::Successive(preference) => {
                    let tc = preference_top_cycle(preference);
                    let cap = tc.members().iter().map(|q| profits[q.0]).max().unwrap();
                    (Scan::Successive(preference), cap)
                }
            };
            match b.direction() {
                Direction::Left => {
                    plan.left.push(scan);
                    plan.left_cap.push(cap);
                }
                Direction::Right => {
                    plan.right.push(scan);
                    plan.right_cap_total += cap;
                }
            }
        }
        plan
    }
}

struct Shared {
    stop: AtomicBool,
    /// Best value found by any worker, in micro-units.
    best: AtomicI64,
}

struct Search<'p, 'a> {
    plan: &'p Plan<'a>,
    opts: &'p ExactOptions,
    shared: &'p Shared,
    prefix: Vec<ProductId>,
    /// `states[d * L + i]`: state of left buyer `i` after `d` products.
    states: Vec<u32>,
    used: u64,
    best: Option<(Money, Vec<ProductId>)>,
    evaluated: u64,
}

impl<'p, 'a> Search<'p, 'a> {
    fn new(plan: &'p Plan<'a>, opts: &'p ExactOptions, shared: &'p Shared) -> Self {
        let l = plan.left.len();
        Search {
            plan,
            opts,
            shared,
            prefix: Vec::with_capacity(plan.n),
            states: vec![NONE; (plan.n + 1) * l],
            used: 0,
            best: None,
            evaluated: 0,
        }
    }

    fn push(&mut self, q: ProductId) {
        let l = self.plan.left.len();
        let d = self.prefix.len();
        let (head, tail) = self.states.split_at_mut((d + 1) * l);
        let cur = &head[d * l..];
        for (i, scan) in self.plan.left.iter().enumerate() {
            tail[i] = scan.step(cur[i], q);
        }
        self.prefix.push(q);
        self.used |= 1 << q.0;
    }

    fn pop(&mut self) {
        let q = self.prefix.pop().expect("pop on empty prefix");
        self.used &= !(1 << q.0);
    }

    fn left_states(&self) -> &[u32] {
        let l = self.plan.left.len();
        let d = self.prefix.len();
        &self.states[d * l..(d + 1) * l]
    }

    fn upper_bound(&self) -> Money {
        let plan = self.plan;
        let left: Money = self
            .left_states()
            .iter()
            .zip(&plan.left)
            .zip(&plan.left_cap)
            .map(|((&s, scan), &cap)| {
                if scan.settled(s) {
                    plan.profits[s as usize]
                } else {
                    cap
                }
            })
            .sum();
        plan.fixed + left + plan.right_cap_total
    }

    fn leaf_value(&self) -> Money {
        let plan = self.plan;
        let left: Money = self
            .left_states()
            .iter()
            .map(|&s| plan.profits[s as usize])
            .sum();
        let right: Money = plan
            .right
            .iter()
            .map(|scan| {
                let s = self.prefix.iter().rev().fold(NONE, |s, &q| scan.step(s, q));
                plan.profits[s as usize]
            })
            .sum();
        plan.fixed + left + right
    }

    fn dfs(&mut self) {
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        let n = self.plan.n;
        if self.prefix.len() == n {
            self.evaluated += 1;
            let value = self.leaf_value();
            if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                self.best = Some((value, self.prefix.clone()));
                self.shared
                    .best
                    .fetch_max(value.micros(), Ordering::Relaxed);
                if self.opts.early_exit && self.plan.target.is_some_and(|t| value >= t) {
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
            return;
        }
        if self.opts.prune && self.prune_here() {
            return;
        }
        for i in 0..n {
            if self.used & (1 << i) != 0 {
                continue;
            }
            self.push(ProductId(i));
            self.dfs();
            self.pop();
        }
    }

    /// Locally a bound equal to the best is useless: the lists below come later
    /// in lexicographic order. Another worker's best only prunes strictly,
    /// because this worker's ties may come first.
    fn prune_here(&self) -> bool {
        let bound = self.upper_bound();
        if let Some((b, _)) = &self.best {
            if bound <= *b {
                return true;
            }
        }
        bound.micros() < self.shared.best.load(Ordering::Relaxed)
    }
}

struct PartResult {
    best: Option<(Money, Vec<ProductId>)>,
    evaluated: u64,
}

fn run_part(
    plan: &Plan<'_>,
    opts: &ExactOptions,
    shared: &Shared,
    prefix: &[ProductId],
) -> PartResult {
    let mut search = Search::new(plan, opts, shared);
    for &q in prefix {
        search.push(q);
    }
    search.dfs();
    PartResult {
        best: search.best,
        evaluated: search.evaluated,
    }
}

/// Exhaustive search. Reports the maximum total profit and the
/// lexicographically smallest list (by product index sequence) attaining it,
/// except under `early_exit` (see [`ExactOptions::early_exit`]).
pub fn solve_exact(inst: &Instance, opts: &ExactOptions) -> Result<Solution, SolveError> {
    let n = inst.n();
    let limit = opts.limit.min(MAX_EXACT_PRODUCTS);
    if n > limit {
        return Err(SolveError::InstanceTooLarge { n, limit });
    }
    let plan = Plan::new(inst);
    let shared = Shared {
        stop: AtomicBool::new(false),
        best: AtomicI64::new(i64::MIN),
    };
    let workers = opts.workers.max(1);

    let parts: Vec<PartResult> = if workers == 1 || n < 2 {
        vec![run_part(&plan, opts, &shared, &[])]
    } else {
        let depth = if n >= 3 { 2 } else { 1 };
        let prefixes = lexicographic_prefixes(n, depth);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        pool.install(|| {
            prefixes
                .par_iter()
                .map(|p| run_part(&plan, opts, &shared, p))
                .collect()
        })
    };

    let evaluated = parts.iter().map(|p| p.evaluated).sum();
    // Parts are in lexicographic prefix order; keep the first maximum.
    let mut best: Option<(Money, Vec<ProductId>)> = None;
    for part in parts {
        if let Some((v, list)) = part.best {
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, list));
            }
        }
    }
    let (value, order) = best.expect("at least one list is evaluated");
    let mut sol = Solution::new(
        inst,
        value,
        Some(ShelfList::from_vec_unchecked(order)),
        Method::Exact,
    );
    sol.lists_evaluated = evaluated;
    Ok(sol)
}

/// All injective sequences of length `depth` over `0..n`, lexicographically.
fn lexicographic_prefixes(n: usize, depth: usize) -> Vec<Vec<ProductId>> {
    let mut out: Vec<Vec<ProductId>> = vec![vec![]];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &out {
            for q in (0..n).map(ProductId).filter(|q| !p.contains(q)) {
                let mut extended = p.clone();
                extended.push(q);
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::instance::{evaluate_list, Buyer};
    use crate::preference::{LinearPreference, Tournament};

    fn p(i: usize) -> ProductId {
        ProductId(i)
    }

    fn catalog(profits: &[i64]) -> Catalog {
        Catalog::new(
            profits
                .iter()
                .enumerate()
                .map(|(i, &u)| (format!("p{i}"), Money::from_units(u))),
        )
        .unwrap()
    }

    fn mixed_instance() -> Instance {
        let cyc = Tournament::from_fn(4, |i, j| (j - i) % 2 == 1);
        let lin = LinearPreference::new(vec![p(3), p(1), p(0), p(2)], 4).unwrap();
        Instance::new(
            catalog(&[4, 1, 3, 2]),
            vec![
                Buyer::successive("a", Direction::Left, cyc.clone()),
                Buyer::successive("b", Direction::Right, cyc),
                Buyer::satisficing("c", Direction::Right, lin.clone(), p(0)),
                Buyer::satisficing("d", Direction::Left, lin.clone(), p(1)),
                Buyer::rational("e", lin),
            ],
            Some(Money::from_units(12)),
        )
        .unwrap()
    }

    fn brute_force(inst: &Instance) -> (Money, ShelfList) {
        use itertools::Itertools;
        let mut best: Option<(Money, ShelfList)> = None;
        for perm in (0..inst.n()).map(ProductId).permutations(inst.n()) {
            let l = ShelfList::new(perm, inst.n()).unwrap();
            let v = evaluate_list(inst, &l);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, l));
            }
        }
        best.unwrap()
    }

    #[test]
    fn single_product() {
        let lin = LinearPreference::new(vec![p(0)], 1).unwrap();
        let inst = Instance::new(
            catalog(&[7]),
            vec![
                Buyer::successive("a", Direction::Left, lin.clone()),
                Buyer::satisficing("b", Direction::Right, lin, p(0)),
            ],
            None,
        )
        .unwrap();
        let s = solve_exact(&inst, &ExactOptions::default()).unwrap();
        assert_eq!(s.best_value, Money::from_units(14));
        assert_eq!(s.lists_evaluated, 1);
    }

    #[test]
    fn matches_brute_force_and_is_canonical() {
        let inst = mixed_instance();
        let (value, list) = brute_force(&inst);
        for (prune, workers) in [(false, 1), (true, 1), (false, 3), (true, 4)] {
            let opts = ExactOptions {
                prune,
                workers,
                ..Default::default()
            };
            let s = solve_exact(&inst, &opts).unwrap();
            assert_eq!(s.best_value, value);
            assert_eq!(
                s.witness.as_ref(),
                Some(&list),
                "prune={prune} workers={workers}"
            );
            assert_eq!(s.decision, Some(value >= Money::from_units(12)));
        }
    }

    #[test]
    fn early_exit_reaches_target() {
        let inst = mixed_instance();
        let (value, _) = brute_force(&inst);
        let inst = inst.with_target(Some(value));
        let s = solve_exact(
            &inst,
            &ExactOptions {
                early_exit: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s.decision, Some(true));
        assert_eq!(
            evaluate_list(&inst, s.witness.as_ref().unwrap()),
            s.best_value
        );
        assert!(s.lists_evaluated <= 24);
    }

    #[test]
    fn refuses_large_instances() {
        let inst = Instance::new(catalog(&[1; 11]), vec![], None).unwrap();
        assert_eq!(
            solve_exact(&inst, &ExactOptions::default()),
            Err(SolveError::InstanceTooLarge { n: 11, limit: 10 })
        );
    }

    #[test]
    fn prefixes_are_lexicographic() {
        let ps = lexicographic_prefixes(3, 2);
        let flat: Vec<Vec<usize>> = ps.iter().map(|p| p.iter().map(|q| q.0).collect()).collect();
        assert_eq!(
            flat,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1]
            ]
        );
    }
}
