//! Choice from lists: rational, satisficing and successive choice, plus the
//! top cycle of a tournament.
//!
//! "Top cycle" and "top circle" name the same set: the smallest set of
//! products each of which beats every product outside it.

use crate::catalog::{ProductId, ShelfList};
use crate::digraph::strongly_connected_components;
use crate::instance::{Behavior, Buyer, Direction};
use crate::preference::{Beats, LinearPreference, Preference};

/// Top cycle of a tournament; members sorted by product index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopCycle {
    members: Vec<ProductId>,
}

impl TopCycle {
    pub fn members(&self) -> &[ProductId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: ProductId) -> bool {
        self.members.binary_search(&p).is_ok()
    }
}

/// Source component of the tournament's condensation. The strong components
/// of a tournament are totally ordered, and the first one beats everything
/// after it. O(n²).
pub fn top_cycle<T: Beats + ?Sized>(t: &T) -> TopCycle {
    let n = t.size();
    assert!(n > 0, "top cycle of an empty tournament");
    let mut comps = strongly_connected_components(n, |a, b| t.beats(ProductId(a), ProductId(b)));
    let first = comps.swap_remove(0);
    TopCycle {
        members: first.into_iter().map(ProductId).collect(),
    }
}

/// Top cycle of a buyer preference. Linear preferences short-cut to their top.
pub fn preference_top_cycle(pref: &Preference) -> TopCycle {
    match pref {
        Preference::Linear(l) => TopCycle {
            members: vec![l.top()],
        },
        Preference::Tournament(t) => top_cycle(t),
    }
}

/// The unique product beating all others, if one exists. O(n): one pass keeps
/// the running winner, a second confirms it.
pub fn single_top<T: Beats + ?Sized>(t: &T) -> Option<ProductId> {
    let n = t.size();
    if n == 0 {
        return None;
    }
    let mut candidate = ProductId(0);
    for i in 1..n {
        if t.beats(ProductId(i), candidate) {
            candidate = ProductId(i);
        }
    }
    (0..n)
        .map(ProductId)
        .all(|q| q == candidate || t.beats(candidate, q))
        .then_some(candidate)
}

pub fn choose_rational(pref: &LinearPreference) -> ProductId {
    pref.top()
}

/// First product in scan order that is weakly preferred to `threshold`.
/// Total because the threshold itself is on the shelf.
pub fn choose_satisficing<T: Beats + ?Sized>(
    list: &ShelfList,
    pref: &T,
    dir: Direction,
    threshold: ProductId,
) -> ProductId {
    let mut items = list.as_slice().iter().copied();
    let qualifies = |q: &ProductId| pref.weakly_prefers(*q, threshold);
    match dir {
        Direction::Left => items.find(qualifies),
        Direction::Right => items.rev().find(qualifies),
    }
    .expect("threshold product missing from the list")
}

/// Register procedure: keep the first product scanned, replace it whenever
/// the next product beats it, and buy whatever the register holds at the end.
pub fn choose_successive<T: Beats + ?Sized>(
    list: &ShelfList,
    pref: &T,
    dir: Direction,
) -> ProductId {
    let step = |reg: ProductId, q: &ProductId| if pref.beats(*q, reg) { *q } else { reg };
    let items = list.as_slice();
    match dir {
        Direction::Left => {
            let (first, rest) = items.split_first().expect("empty list");
            rest.iter().fold(*first, step)
        }
        Direction::Right => {
            let (last, rest) = items.split_last().expect("empty list");
            rest.iter().rev().fold(*last, step)
        }
    }
}

pub fn choose(buyer: &Buyer, list: &ShelfList) -> ProductId {
    match buyer.behavior() {
        Behavior::Rational(pref) => choose_rational(pref),
        Behavior::Satisficing {
            preference,
            threshold,
        } => choose_satisficing(list, preference, buyer.direction(), *threshold),
        Behavior::Successive(preference) => choose_successive(list, preference, buyer.direction()),
    }
}
