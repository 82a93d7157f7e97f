//! Betweenness to mixed-direction product arrangement, with satisficing or
//! successive-choice buyers.
//!
//! Every constraint `(a, b, c)` gets one left-biased and one right-biased
//! buyer whose three favourite products are `p(a), p(b), p(c)`. On a list,
//! one of the two ends up with the leftmost of the three and the other with
//! the rightmost. Profits are 2 for `U`, 1 for `V`
//! and 0 for `w`, so a pair of buyers earns 4 (C) or 3 (D) exactly when the
//! middle product sits between the other two.

use crate::catalog::{Catalog, ProductId};
use crate::instance::{Buyer, Direction, Instance};
use crate::money::Money;
use crate::preference::{LinearPreference, Tournament};

use super::BetweennessInstance;

pub const SAT_U_PROFIT: i64 = 2;
pub const SAT_V_PROFIT: i64 = 1;
pub const SAT_W_PROFIT: i64 = 0;

/// Name of the product standing for element `name`.
pub fn product_name(name: &str) -> String {
    format!("p({name})")
}

/// Threshold product shared by all buyers scanning in `dir`.
pub fn threshold_name(dir: Direction) -> String {
    format!("t({})", dir.token())
}

fn element_catalog(inst: &BetweennessInstance, u: i64, v: i64, w: i64) -> Vec<(String, Money)> {
    let mut entries = Vec::with_capacity(inst.element_count() + 2);
    for name in inst.u() {
        entries.push((product_name(name), Money::from_units(u)));
    }
    for name in inst.v() {
        entries.push((product_name(name), Money::from_units(v)));
    }
    entries.push((product_name(inst.w()), Money::from_units(w)));
    entries
}

fn target(inst: &BetweennessInstance) -> Money {
    Money::from_units(4 * inst.c().len() as i64 + 3 * inst.d().len() as i64)
}

/// Constraint labels `c1, c2, ..., d1, d2, ...` in the order of
/// [`BetweennessInstance::triples`].
pub(crate) fn constraint_labels(inst: &BetweennessInstance) -> Vec<String> {
    (1..=inst.c().len())
        .map(|k| format!("c{k}"))
        .chain((1..=inst.d().len()).map(|k| format!("d{k}")))
        .collect()
}

/// `front` first (in the given order), then every other product by index.
fn ranking_with_front(n: usize, front: &[ProductId]) -> Vec<ProductId> {
    let mut ranking = front.to_vec();
    ranking.extend((0..n).map(ProductId).filter(|p| !front.contains(p)));
    ranking
}

/// Satisficing buyers with linear preferences.
///
/// Each buyer ranks the triple's three products above its threshold and every
/// other product below. Thresholds are two extra zero-profit products, one
/// shared by the left-biased buyers and one by the right-biased buyers; a
/// buyer takes its threshold only if it scans past it before any of its three
/// products, so placing `t(R)` leftmost and `t(L)` rightmost neutralizes them.
pub fn reduce_to_pa_sat(inst: &BetweennessInstance) -> Instance {
    let mut entries = element_catalog(inst, SAT_U_PROFIT, SAT_V_PROFIT, SAT_W_PROFIT);
    let t_left = ProductId(entries.len());
    entries.push((threshold_name(Direction::Left), Money::ZERO));
    let t_right = ProductId(entries.len());
    entries.push((threshold_name(Direction::Right), Money::ZERO));
    let n = entries.len();
    let catalog = Catalog::new(entries).expect("reduction catalog is valid");

    let mut buyers = Vec::new();
    for (label, [a, b, c]) in constraint_labels(inst).into_iter().zip(inst.triples()) {
        let triple = [ProductId(a), ProductId(b), ProductId(c)];
        for (dir, t) in [(Direction::Left, t_left), (Direction::Right, t_right)] {
            let mut front = triple.to_vec();
            front.push(t);
            let pref = LinearPreference::new(ranking_with_front(n, &front), n)
                .expect("ranking is a permutation");
            buyers.push(Buyer::satisficing(
                format!("{label}{}", dir.token()),
                dir,
                pref,
                t,
            ));
        }
    }
    Instance::new(catalog, buyers, Some(target(inst))).expect("reduction instance is valid")
}

/// Successive-choice buyers whose top cycle is the triple, oriented
/// `p(a) > p(b) > p(c) > p(a)`; all other products rank below by index.
pub fn reduce_to_pa_sc(inst: &BetweennessInstance) -> Instance {
    let entries = element_catalog(inst, SAT_U_PROFIT, SAT_V_PROFIT, SAT_W_PROFIT);
    let n = entries.len();
    let catalog = Catalog::new(entries).expect("reduction catalog is valid");

    let mut buyers = Vec::new();
    for (label, triple) in constraint_labels(inst).into_iter().zip(inst.triples()) {
        let t = cyclic_top(n, triple);
        for dir in [Direction::Left, Direction::Right] {
            buyers.push(Buyer::successive(
                format!("{label}{}", dir.token()),
                dir,
                t.clone(),
            ));
        }
    }
    Instance::new(catalog, buyers, Some(target(inst))).expect("reduction instance is valid")
}

fn cyclic_top(n: usize, [a, b, c]: [usize; 3]) -> Tournament {
    let slot = |x: usize| [a, b, c].iter().position(|&e| e == x);
    Tournament::from_fn(n, |i, j| match (slot(i), slot(j)) {
        // slot s beats slot s + 1 (mod 3)
        (Some(si), Some(sj)) => (si + 1) % 3 == sj,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::top_cycle;

    fn instance(c: usize, d: usize) -> BetweennessInstance {
        let u = vec!["u1".into(), "u2".into()];
        let v = vec!["v1".into()];
        BetweennessInstance::new(u, v, "w".into(), vec![(0, 0, 1); c], vec![(0, 0); d]).unwrap()
    }

    #[test]
    fn pa_sat_counts_and_target() {
        let r = reduce_to_pa_sat(&instance(1, 0));
        assert_eq!(r.m(), 2);
        assert_eq!(r.target(), Some(Money::from_units(4)));
        assert_eq!(r.n(), 4 + 2);
        let r = reduce_to_pa_sat(&instance(0, 1));
        assert_eq!(r.m(), 2);
        assert_eq!(r.target(), Some(Money::from_units(3)));
    }

    #[test]
    fn pa_sc_top_cycles_are_the_triples() {
        let r = reduce_to_pa_sc(&instance(1, 1));
        assert_eq!(r.target(), Some(Money::from_units(7)));
        assert_eq!(r.n(), 4);
        for b in r.buyers() {
            let crate::instance::Behavior::Successive(p) = b.behavior() else {
                panic!()
            };
            assert_eq!(top_cycle(p).len(), 3);
        }
    }
}
