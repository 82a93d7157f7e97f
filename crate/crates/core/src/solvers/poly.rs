use crate::catalog::{ProductId, ShelfList};
use crate::choice::{preference_top_cycle, single_top};
use crate::instance::{evaluate_list, Behavior, Buyer, Direction, Instance};
use crate::money::Money;

use super::{Method, Solution, SolveError};

fn reject(method: Method, buyer: &Buyer, reason: impl Into<String>) -> SolveError {
    SolveError::NotApplicable {
        method,
        buyer: buyer.name().to_string(),
        reason: reason.into(),
    }
}

/// Position-independent buyers: rational buyers, and successive-choice buyers
/// with a single top product (who pick it on every list). The optimum is the
/// sum of the buyers' fixed picks; any list attains it.
pub fn solve_rc(inst: &Instance) -> Result<Solution, SolveError> {
    let cat = inst.catalog();
    let mut total = Money::ZERO;
    for b in inst.buyers() {
        let pick = match b.behavior() {
            Behavior::Rational(pref) => pref.top(),
            Behavior::Successive(pref) => single_top(pref)
                .ok_or_else(|| reject(Method::Rc, b, "top cycle has more than one product"))?,
            Behavior::Satisficing { .. } => {
                return Err(reject(
                    Method::Rc,
                    b,
                    "satisficing choice depends on the list",
                ))
            }
        };
        total += cat.profit(pick);
    }
    Ok(Solution::new(
        inst,
        total,
        Some(ShelfList::identity(inst.n())),
        Method::Rc,
    ))
}

/// Catalog sorted by profit, equal profits by ascending index.
fn sorted_by_profit(inst: &Instance, descending: bool) -> ShelfList {
    let profits = inst.catalog().profits();
    let mut order: Vec<ProductId> = inst.catalog().ids().collect();
    order.sort_by(|a, b| {
        let by_profit = profits[a.0].cmp(&profits[b.0]);
        let by_profit = if descending {
            by_profit.reverse()
        } else {
            by_profit
        };
        by_profit.then(a.cmp(b))
    });
    ShelfList::from_vec_unchecked(order)
}

/// Left-biased satisficing buyers: the profit-descending list is optimal,
/// since swapping an adjacent pair to move the more profitable product
/// earlier never lowers any buyer's profit.
pub fn solve_sepa_sat(inst: &Instance) -> Result<Solution, SolveError> {
    for b in inst.buyers() {
        if !matches!(b.behavior(), Behavior::Satisficing { .. }) {
            return Err(reject(Method::SepaSat, b, "not a satisficing buyer"));
        }
        if b.direction() != Direction::Left {
            return Err(reject(Method::SepaSat, b, "right-biased"));
        }
    }
    let list = sorted_by_profit(inst, true);
    let value = evaluate_list(inst, &list);
    Ok(Solution::new(inst, value, Some(list), Method::SepaSat))
}

/// Successive-choice buyers with a single top product, either direction.
pub fn solve_pa_sc_singleton(inst: &Instance) -> Result<Solution, SolveError> {
    let cat = inst.catalog();
    let mut total = Money::ZERO;
    for b in inst.buyers() {
        let Behavior::Successive(pref) = b.behavior() else {
            return Err(reject(
                Method::PaScSingleton,
                b,
                "not a successive-choice buyer",
            ));
        };
        let top = single_top(pref).ok_or_else(|| {
            reject(
                Method::PaScSingleton,
                b,
                "top cycle has more than one product",
            )
        })?;
        total += cat.profit(top);
    }
    Ok(Solution::new(
        inst,
        total,
        Some(ShelfList::identity(inst.n())),
        Method::PaScSingleton,
    ))
}

/// Left-biased successive-choice buyers whose top cycles have at most three
/// products. A size-3 top cycle buyer ends with the last of her three top
/// products on the list, so the profit-ascending list hands every buyer her
/// most profitable top product.
pub fn solve_sepa_sc_small_tc(inst: &Instance) -> Result<Solution, SolveError> {
    let cat = inst.catalog();
    let mut total = Money::ZERO;
    for b in inst.buyers() {
        let Behavior::Successive(pref) = b.behavior() else {
            return Err(reject(
                Method::SepaScSmallTc,
                b,
                "not a successive-choice buyer",
            ));
        };
        if b.direction() != Direction::Left {
            return Err(reject(Method::SepaScSmallTc, b, "right-biased"));
        }
        let tc = preference_top_cycle(pref);
        assert_ne!(tc.len(), 2, "tournament with a top cycle of size 2");
        if tc.len() > 3 {
            return Err(reject(
                Method::SepaScSmallTc,
                b,
                format!("top cycle has {} products", tc.len()),
            ));
        }
        total += tc
            .members()
            .iter()
            .map(|&p| cat.profit(p))
            .max()
            .expect("top cycle is never empty");
    }
    Ok(Solution::new(
        inst,
        total,
        Some(sorted_by_profit(inst, false)),
        Method::SepaScSmallTc,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
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

    fn lin(order: &[usize]) -> LinearPreference {
        LinearPreference::new(order.iter().copied().map(ProductId).collect(), order.len()).unwrap()
    }

    #[test]
    fn rc_sums_tops() {
        let inst = Instance::new(
            catalog(&[5, 1]),
            vec![
                Buyer::rational("a", lin(&[0, 1])),
                Buyer::rational("b", lin(&[0, 1])),
            ],
            None,
        )
        .unwrap();
        let s = solve_rc(&inst).unwrap();
        assert_eq!(s.best_value, Money::from_units(10));
        assert_eq!(s.decision, None);
        assert_eq!(s.method, Method::Rc);
    }

    #[test]
    fn rc_empty_with_zero_target() {
        let inst = Instance::new(catalog(&[1]), vec![], Some(Money::ZERO)).unwrap();
        assert_eq!(solve_rc(&inst).unwrap().decision, Some(true));
    }

    #[test]
    fn rc_rejects_position_dependent_buyers() {
        let sat = Buyer::satisficing("s", Direction::Left, lin(&[0, 1]), p(1));
        let inst = Instance::new(catalog(&[1, 2]), vec![sat], None).unwrap();
        assert!(matches!(
            solve_rc(&inst),
            Err(SolveError::NotApplicable { .. })
        ));
    }

    #[test]
    fn sepa_sat_example() {
        // x:5 y:3, y > x, threshold y
        let b = Buyer::satisficing("b", Direction::Left, lin(&[1, 0]), p(1));
        let inst = Instance::new(catalog(&[5, 3]), vec![b], None).unwrap();
        let s = solve_sepa_sat(&inst).unwrap();
        assert_eq!(s.best_value, Money::from_units(3));
        assert_eq!(s.witness.unwrap().as_slice(), &[p(0), p(1)]);

        let empty = Instance::new(catalog(&[5, 3]), vec![], None).unwrap();
        assert_eq!(solve_sepa_sat(&empty).unwrap().best_value, Money::ZERO);
    }

    #[test]
    fn sepa_sat_rejects_right_biased() {
        let b = Buyer::satisficing("b", Direction::Right, lin(&[1, 0]), p(1));
        let inst = Instance::new(catalog(&[5, 3]), vec![b], None).unwrap();
        assert!(solve_sepa_sat(&inst).is_err());
    }

    #[test]
    fn singleton_top() {
        // linear-shaped tournament topping p1 (profit 3)
        let t = Tournament::from_linear(&lin(&[1, 0, 2]));
        let inst = Instance::new(
            catalog(&[1, 3, 2]),
            vec![Buyer::successive("c", Direction::Right, t)],
            None,
        )
        .unwrap();
        assert_eq!(
            solve_pa_sc_singleton(&inst).unwrap().best_value,
            Money::from_units(3)
        );

        let cyc = Tournament::from_pairs(3, &[(p(0), p(1)), (p(1), p(2)), (p(2), p(0))]).unwrap();
        let inst = Instance::new(
            catalog(&[1, 3, 2]),
            vec![Buyer::successive("c", Direction::Left, cyc)],
            None,
        )
        .unwrap();
        assert!(solve_pa_sc_singleton(&inst).is_err());
    }

    #[test]
    fn small_top_cycle_takes_max_profit() {
        let cyc = Tournament::from_pairs(3, &[(p(0), p(1)), (p(1), p(2)), (p(2), p(0))]).unwrap();
        let inst = Instance::new(
            catalog(&[1, 2, 7]),
            vec![Buyer::successive("c", Direction::Left, cyc)],
            None,
        )
        .unwrap();
        let s = solve_sepa_sc_small_tc(&inst).unwrap();
        assert_eq!(s.best_value, Money::from_units(7));
        let witness = s.witness.unwrap();
        assert_eq!(evaluate_list(&inst, &witness), s.best_value);
    }

    #[test]
    fn small_top_cycle_rejects_four_cycle() {
        // 0>1>2>3>0 plus 0>2, 1>3: strongly connected
        let t = Tournament::from_pairs(
            4,
            &[
                (p(0), p(1)),
                (p(1), p(2)),
                (p(2), p(3)),
                (p(3), p(0)),
                (p(0), p(2)),
                (p(1), p(3)),
            ],
        )
        .unwrap();
        let inst = Instance::new(
            catalog(&[1, 2, 3, 4]),
            vec![Buyer::successive("c", Direction::Left, t)],
            None,
        )
        .unwrap();
        assert!(solve_sepa_sc_small_tc(&inst).is_err());
    }
}
