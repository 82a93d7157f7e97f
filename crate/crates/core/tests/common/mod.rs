//! Independent oracles: straightforward re-implementations that share no code
//! with the library beyond its data types.

#![allow(dead_code)]

use itertools::Itertools;
use shelflist::{Beats, Behavior, Direction, Instance, Money, ProductId, ShelfList};

/// Smallest non-empty set whose members each beat every non-member, by
/// trying subsets in order of size.
pub fn brute_top_cycle<T: Beats>(t: &T) -> Vec<ProductId> {
    let n = t.size();
    for size in 1..=n {
        for set in (0..n).combinations(size) {
            let dominant = set.iter().all(|&a| {
                (0..n)
                    .filter(|b| !set.contains(b))
                    .all(|b| t.beats(ProductId(a), ProductId(b)))
            });
            if dominant {
                return set.into_iter().map(ProductId).collect();
            }
        }
    }
    unreachable!("the whole set is dominant")
}

fn scan(list: &[ProductId], dir: Direction) -> Vec<ProductId> {
    let mut v = list.to_vec();
    if dir == Direction::Right {
        v.reverse();
    }
    v
}

pub fn naive_successive<T: Beats>(list: &[ProductId], t: &T, dir: Direction) -> ProductId {
    let order = scan(list, dir);
    let mut register = order[0];
    for &q in &order[1..] {
        if t.beats(q, register) {
            register = q;
        }
    }
    register
}

pub fn naive_satisficing<T: Beats>(
    list: &[ProductId],
    t: &T,
    dir: Direction,
    threshold: ProductId,
) -> ProductId {
    for q in scan(list, dir) {
        if q == threshold || t.beats(q, threshold) {
            return q;
        }
    }
    unreachable!("threshold is on the list")
}

pub fn naive_value(inst: &Instance, list: &[ProductId]) -> Money {
    let mut total = Money::ZERO;
    for b in inst.buyers() {
        let pick = match b.behavior() {
            Behavior::Rational(p) => p.ranking()[0],
            Behavior::Satisficing {
                preference,
                threshold,
            } => naive_satisficing(list, preference, b.direction(), *threshold),
            Behavior::Successive(p) => naive_successive(list, p, b.direction()),
        };
        total += inst.catalog().profit(pick);
    }
    total
}

/// Maximum over every permutation.
pub fn brute_force_best(inst: &Instance) -> Money {
    (0..inst.n())
        .map(ProductId)
        .permutations(inst.n())
        .map(|l| naive_value(inst, &l))
        .max()
        .expect("at least one product")
}

pub fn list(ids: &[usize]) -> ShelfList {
    ShelfList::new(ids.iter().copied().map(ProductId).collect(), ids.len()).unwrap()
}
