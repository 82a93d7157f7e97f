//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::catalog::{Catalog, ProductId};
use crate::instance::{Behavior, Buyer, Direction, Instance, Rule};
use crate::money::Money;
use crate::preference::{LinearPreference, Preference, Tournament};
use crate::reductions::BetweennessInstance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DirectionMix {
    AllLeft,
    AllRight,
    /// Each buyer scans left to right with this probability.
    Mixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopCycleSize {
    /// Linear preferences.
    One,
    /// A 3-cycle above a linear tail.
    Three,
    /// Uniformly random tournaments.
    Any,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomSpec {
    pub n: usize,
    pub m: usize,
    pub rule: Rule,
    pub directions: DirectionMix,
    pub tc_size: TopCycleSize,
    /// Inclusive range of whole-unit profits.
    pub profit_min: i64,
    pub profit_max: i64,
    pub seed: u64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            n: 5,
            m: 3,
            rule: Rule::Successive,
            directions: DirectionMix::AllLeft,
            tc_size: TopCycleSize::Any,
            profit_min: 0,
            profit_max: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("infeasible random spec: {0}")]
pub struct InfeasibleSpec(pub String);

/// A uniformly random ranking of `n` products.
pub fn random_linear(n: usize, rng: &mut impl Rng) -> LinearPreference {
    let mut ranking: Vec<ProductId> = (0..n).map(ProductId).collect();
    ranking.shuffle(rng);
    LinearPreference::new(ranking, n).expect("shuffle is a permutation")
}

/// Every pair oriented by a fair coin.
pub fn random_tournament(n: usize, rng: &mut impl Rng) -> Tournament {
    Tournament::from_fn(n, |_, _| rng.gen_bool(0.5))
}

/// A random 3-cycle `c[0] > c[1] > c[2] > c[0]` beating every other product,
/// above a random linear order of the rest. Needs `n >= 3`.
pub fn planted_top_cycle(n: usize, rng: &mut impl Rng) -> (Tournament, [ProductId; 3]) {
    assert!(n >= 3, "a 3-cycle needs three products");
    let order = random_linear(n, rng);
    let cycle = [order.ranking()[0], order.ranking()[1], order.ranking()[2]];
    let slot = |p: usize| cycle.iter().position(|c| c.0 == p);
    let t = Tournament::from_fn(n, |i, j| match (slot(i), slot(j)) {
        (Some(si), Some(sj)) => (si + 1) % 3 == sj,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => order.rank_of(ProductId(i)) < order.rank_of(ProductId(j)),
    });
    (t, cycle)
}

fn check(spec: &RandomSpec) -> Result<(), InfeasibleSpec> {
    let fail = |m: &str| Err(InfeasibleSpec(m.to_string()));
    if spec.n == 0 {
        return fail("n must be positive");
    }
    if spec.profit_min < 0 || spec.profit_min > spec.profit_max {
        return fail("profit range must satisfy 0 <= min <= max");
    }
    if spec.profit_max > i64::MAX / crate::money::SCALE / spec.n.max(spec.m).max(1) as i64 {
        return fail("profit range too large");
    }
    if let DirectionMix::Mixed(p) = spec.directions {
        if !(0.0..=1.0).contains(&p) {
            return fail("mixed direction probability must lie in [0, 1]");
        }
    }
    match (spec.rule, spec.tc_size) {
        (_, TopCycleSize::Three) if spec.n < 3 => fail("top cycle of size 3 needs n >= 3"),
        (Rule::Rational, TopCycleSize::Three | TopCycleSize::Any) => {
            fail("rational buyers have linear preferences (tc size 1)")
        }
        _ => Ok(()),
    }
}

/// Deterministic in `spec`: products `p1..pn`, buyers `b1..bm`, no target.
pub fn gen_random(spec: &RandomSpec) -> Result<Instance, InfeasibleSpec> {
    check(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let products: Vec<(String, Money)> = (1..=spec.n)
        .map(|i| {
            let units = rng.gen_range(spec.profit_min..=spec.profit_max);
            (format!("p{i}"), Money::from_units(units))
        })
        .collect();
    let catalog = Catalog::new(products).expect("generated catalog is valid");
    let n = spec.n;
    let mut buyers = Vec::with_capacity(spec.m);
    for k in 1..=spec.m {
        let direction = match spec.directions {
            DirectionMix::AllLeft => Direction::Left,
            DirectionMix::AllRight => Direction::Right,
            DirectionMix::Mixed(p) => {
                if rng.gen_bool(p) {
                    Direction::Left
                } else {
                    Direction::Right
                }
            }
        };
        let preference: Preference = match spec.tc_size {
            TopCycleSize::One => random_linear(n, &mut rng).into(),
            TopCycleSize::Three => planted_top_cycle(n, &mut rng).0.into(),
            TopCycleSize::Any => random_tournament(n, &mut rng).into(),
        };
        let behavior = match spec.rule {
            Rule::Rational => match preference {
                Preference::Linear(lin) => Behavior::Rational(lin),
                Preference::Tournament(_) => unreachable!("checked above"),
            },
            Rule::Satisficing => Behavior::Satisficing {
                preference,
                threshold: ProductId(rng.gen_range(0..n)),
            },
            Rule::Successive => Behavior::Successive(preference),
        };
        buyers.push(Buyer::new(format!("b{k}"), direction, behavior));
    }
    Ok(Instance::new(catalog, buyers, None).expect("generated instance is valid"))
}

/// Random betweenness instance with `x` U-elements, `y` V-elements and the
/// given constraint counts.
pub fn gen_random_betweenness(
    x: usize,
    y: usize,
    c_count: usize,
    d_count: usize,
    seed: u64,
) -> Result<BetweennessInstance, InfeasibleSpec> {
    if c_count > 0 && (x < 2 || y < 1) {
        return Err(InfeasibleSpec(
            "C constraints need |U| >= 2 and |V| >= 1".into(),
        ));
    }
    if d_count > 0 && (x < 1 || y < 1) {
        return Err(InfeasibleSpec(
            "D constraints need |U| >= 1 and |V| >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..c_count)
        .map(|_| {
            let i = rng.gen_range(0..x);
            let k = (i + rng.gen_range(1..x)) % x;
            (i, rng.gen_range(0..y), k)
        })
        .collect();
    let d = (0..d_count)
        .map(|_| (rng.gen_range(0..y), rng.gen_range(0..x)))
        .collect();
    let u = (1..=x).map(|i| format!("u{i}")).collect();
    let v = (1..=y).map(|i| format!("v{i}")).collect();
    Ok(BetweennessInstance::new(u, v, "w".into(), c, d)
        .expect("generated constraints are in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::preference_top_cycle;

    #[test]
    fn same_seed_same_instance() {
        let spec = RandomSpec {
            n: 7,
            m: 5,
            directions: DirectionMix::Mixed(0.5),
            seed: 42,
            ..RandomSpec::default()
        };
        assert_eq!(gen_random(&spec).unwrap(), gen_random(&spec).unwrap());
        let other = RandomSpec {
            seed: 43,
            ..spec.clone()
        };
        assert_ne!(gen_random(&spec).unwrap(), gen_random(&other).unwrap());
    }

    #[test]
    fn planted_cycles_have_size_three() {
        for seed in 0..20 {
            let spec = RandomSpec {
                n: 3 + seed as usize % 6,
                m: 4,
                tc_size: TopCycleSize::Three,
                seed,
                ..RandomSpec::default()
            };
            for b in gen_random(&spec).unwrap().buyers() {
                let Behavior::Successive(p) = b.behavior() else {
                    panic!()
                };
                assert_eq!(preference_top_cycle(p).len(), 3);
            }
        }
    }

    #[test]
    fn infeasible_specs() {
        let spec = RandomSpec {
            n: 2,
            tc_size: TopCycleSize::Three,
            ..RandomSpec::default()
        };
        assert!(gen_random(&spec).is_err());
        let spec = RandomSpec {
            rule: Rule::Rational,
            tc_size: TopCycleSize::Any,
            ..RandomSpec::default()
        };
        assert!(gen_random(&spec).is_err());
        assert!(gen_random_betweenness(1, 1, 1, 0, 0).is_err());
    }

    #[test]
    fn profits_in_range() {
        let spec = RandomSpec {
            n: 50,
            profit_min: 3,
            profit_max: 5,
            ..RandomSpec::default()
        };
        let inst = gen_random(&spec).unwrap();
        assert!(inst
            .catalog()
            .profits()
            .iter()
            .all(|&p| p >= Money::from_units(3) && p <= Money::from_units(5)));
    }
}
