//! Wall-clock scaling of the solvers over a grid of random instances.

use std::fmt;
use std::time::Instant;

use crate::instance::{Instance, Rule};
use crate::random::{gen_random, DirectionMix, RandomSpec, TopCycleSize};
use crate::solvers::{solve_with, ExactOptions, Method};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub ns: Vec<usize>,
    pub ms: Vec<usize>,
    pub methods: Vec<Method>,
    pub repetitions: usize,
    /// Exhaustive search only runs for `n` up to this.
    pub exact_limit: usize,
    /// Tournament-based rows are skipped when `n * n * m` exceeds this.
    pub max_tournament_cells: usize,
    pub seed: u64,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            ns: vec![8, 16, 32, 64, 128],
            ms: vec![10, 100, 1000],
            methods: Method::ALL.to_vec(),
            repetitions: 5,
            exact_limit: 7,
            max_tournament_cells: 50_000_000,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub method: Method,
    /// Median over the repetitions, microseconds.
    pub t_us: u128,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} m={} method={} t_us={}",
            self.n, self.m, self.method, self.t_us
        )
    }
}

/// Random instance in the regime `method` solves.
pub fn bench_instance(method: Method, n: usize, m: usize, seed: u64) -> Instance {
    let (rule, directions, tc_size) = match method {
        Method::Rc => (Rule::Rational, DirectionMix::Mixed(0.5), TopCycleSize::One),
        Method::PaScSingleton => (
            Rule::Successive,
            DirectionMix::Mixed(0.5),
            TopCycleSize::One,
        ),
        Method::SepaSat => (Rule::Satisficing, DirectionMix::AllLeft, TopCycleSize::One),
        Method::SepaScSmallTc => (Rule::Successive, DirectionMix::AllLeft, TopCycleSize::Three),
        Method::Exact => (
            Rule::Successive,
            DirectionMix::Mixed(0.5),
            TopCycleSize::Any,
        ),
    };
    let spec = RandomSpec {
        n,
        m,
        rule,
        directions,
        tc_size,
        profit_min: 0,
        profit_max: 100,
        seed,
    };
    gen_random(&spec).expect("bench specs are feasible")
}

/// Median wall time of `f` over `reps` runs, microseconds.
pub fn median_micros(reps: usize, mut f: impl FnMut()) -> u128 {
    let mut times: Vec<u128> = (0..reps.max(1))
        .map(|_| {
            let start = Instant::now();
            f();
            start.elapsed().as_micros()
        })
        .collect();
    times.sort_unstable();
    times[times.len() / 2]
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn applicable(cfg: &BenchConfig, method: Method, n: usize, m: usize) -> bool {
    let dense = matches!(method, Method::SepaScSmallTc | Method::Exact);
    match method {
        Method::Exact if n > cfg.exact_limit => false,
        Method::SepaScSmallTc if n < 3 => false,
        _ => !dense || n.saturating_mul(n).saturating_mul(m) <= cfg.max_tournament_cells,
    }
}

/// Times every configured method on every `(n, m)` of the grid, calling
/// `emit` with each row as soon as it is measured.
pub fn bench_scaling(cfg: &BenchConfig, mut emit: impl FnMut(&BenchRow)) -> Vec<BenchRow> {
    let exact = ExactOptions {
        limit: cfg.exact_limit,
        ..ExactOptions::default()
    };
    let mut rows = Vec::new();
    for &method in &cfg.methods {
        for &n in &cfg.ns {
            for &m in &cfg.ms {
                if !applicable(cfg, method, n, m) {
                    continue;
                }
                let inst = bench_instance(method, n, m, cfg.seed);
                let t_us = median_micros(cfg.repetitions, || {
                    solve_with(&inst, Some(method), &exact)
                        .expect("bench instance fits its method");
                });
                let row = BenchRow { n, m, method, t_us };
                emit(&row);
                rows.push(row);
            }
        }
    }
    rows
}
