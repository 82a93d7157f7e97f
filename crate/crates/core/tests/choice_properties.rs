mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shelflist::choice::preference_top_cycle;
use shelflist::random::{planted_top_cycle, random_linear, random_tournament};
use shelflist::{
    choose_satisficing, choose_successive, single_top, top_cycle, Beats, Direction, ProductId,
    Tournament,
};

use common::{brute_top_cycle, list, naive_satisficing, naive_successive};

fn tournament_and_list() -> impl Strategy<Value = (Tournament, Vec<usize>)> {
    (1usize..=10).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(bits, order)| {
                let mut it = bits.into_iter();
                (Tournament::from_fn(n, |_, _| it.next().unwrap()), order)
            })
    })
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Left), Just(Direction::Right)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn top_cycle_matches_subset_search((t, _) in tournament_and_list()) {
        prop_assert_eq!(top_cycle(&t).members().to_vec(), brute_top_cycle(&t));
    }

    #[test]
    fn top_cycle_never_has_two_members((t, _) in tournament_and_list()) {
        prop_assert_ne!(top_cycle(&t).len(), 2);
    }

    #[test]
    fn single_top_iff_singleton_cycle((t, _) in tournament_and_list()) {
        let tc = top_cycle(&t);
        let expected = (tc.len() == 1).then(|| tc.members()[0]);
        prop_assert_eq!(single_top(&t), expected);
    }

    #[test]
    fn successive_choice_lies_in_top_cycle((t, order) in tournament_and_list(), dir in direction()) {
        let l = list(&order);
        let pick = choose_successive(&l, &t, dir);
        prop_assert!(top_cycle(&t).contains(pick));
        prop_assert_eq!(pick, naive_successive(l.as_slice(), &t, dir));
    }

    #[test]
    fn reversal_duality((t, order) in tournament_and_list(), thr in 0usize..10) {
        let l = list(&order);
        let r = l.reversed();
        prop_assert_eq!(
            choose_successive(&l, &t, Direction::Right),
            choose_successive(&r, &t, Direction::Left)
        );
        let thr = ProductId(thr % l.len());
        prop_assert_eq!(
            choose_satisficing(&l, &t, Direction::Right, thr),
            choose_satisficing(&r, &t, Direction::Left, thr)
        );
    }

    #[test]
    fn satisficing_definition((t, order) in tournament_and_list(), dir in direction(), thr in 0usize..10) {
        let l = list(&order);
        let thr = ProductId(thr % l.len());
        let pick = choose_satisficing(&l, &t, dir, thr);
        prop_assert!(t.weakly_prefers(pick, thr));
        let scanned: Vec<ProductId> = match dir {
            Direction::Left => l.iter().collect(),
            Direction::Right => l.iter().rev().collect(),
        };
        let before = scanned.iter().take_while(|&&q| q != pick);
        for &q in before {
            prop_assert!(!t.weakly_prefers(q, thr));
        }
        prop_assert_eq!(pick, naive_satisficing(l.as_slice(), &t, dir, thr));
    }

    #[test]
    fn planted_cycle_picks_extreme_member(seed in any::<u64>(), n in 3usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, cycle) = planted_top_cycle(n, &mut rng);
        prop_assert_eq!(top_cycle(&t).len(), 3);
        let l = shelflist::ShelfList::new(random_linear(n, &mut rng).ranking().to_vec(), n).unwrap();
        let pos = l.positions();
        let latest = *cycle.iter().max_by_key(|p| pos[p.0]).unwrap();
        let earliest = *cycle.iter().min_by_key(|p| pos[p.0]).unwrap();
        prop_assert_eq!(choose_successive(&l, &t, Direction::Left), latest);
        prop_assert_eq!(choose_successive(&l, &t, Direction::Right), earliest);
    }

    #[test]
    fn linear_shortcut_agrees(seed in any::<u64>(), n in 1usize..=10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lin = random_linear(n, &mut rng);
        let pref = shelflist::Preference::from(lin.clone());
        prop_assert_eq!(preference_top_cycle(&pref).members().to_vec(), vec![lin.top()]);
        let t = random_tournament(n, &mut rng);
        let pref = shelflist::Preference::from(t.clone());
        prop_assert_eq!(preference_top_cycle(&pref), top_cycle(&t));
    }
}
