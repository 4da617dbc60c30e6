use proptest::prelude::*;
use sharedcache::delivery::{
    closed_form_delay, round_transmission_count, rounds, run_delivery, transmissions_for_round,
};
use sharedcache::model::{profile_of, Association, Demand, Profile};
use sharedcache::placement::Placement;
use sharedcache::Rational;

/// `(K, Λ, per-user cache, shuffle keys, t)`.
fn association_strategy() -> impl Strategy<Value = (Association, usize)> {
    (1usize..=8, 1usize..=4)
        .prop_flat_map(|(k, l)| {
            let l = l.min(k);
            (
                proptest::collection::vec(0..l, k),
                proptest::collection::vec(any::<u32>(), k),
                0..=l,
                Just(l),
            )
        })
        .prop_map(|(caches, keys, t, l)| {
            let mut users: Vec<usize> = (0..caches.len()).collect();
            users.sort_by_key(|&u| keys[u]);
            let mut lists = vec![Vec::new(); l];
            for u in users {
                lists[caches[u]].push(u);
            }
            (Association::new(caches.len(), lists).unwrap(), t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delivery_matches_closed_form_and_round_trips((assoc, t) in association_strategy(), seed in any::<u64>()) {
        let k = assoc.num_users();
        let l = assoc.num_caches();
        let placement = Placement::new(k, l, t);
        let file_len = placement.subfiles_per_file() * 3;
        let placement = placement.attach_payloads(file_len, seed).unwrap();
        let demand = Demand::distinct(k);
        let tr = run_delivery(&placement, &assoc, &demand).unwrap();
        prop_assert!(tr.all_ok());
        for u in 0..k {
            prop_assert_eq!(tr.recovered[u].as_deref(), placement.file_payload(u));
        }
        prop_assert_eq!(tr.delay, closed_form_delay(&profile_of(&assoc), t));
    }

    #[test]
    fn per_round_counts_sum_to_closed_form((assoc, t) in association_strategy()) {
        let k = assoc.num_users();
        let l = assoc.num_caches();
        let placement = Placement::new(k, l, t);
        let demand = Demand::distinct(k);
        let mut total = 0i128;
        for round in rounds(&assoc) {
            let sent = transmissions_for_round(&round, &assoc, &demand, &placement).len() as i128;
            prop_assert_eq!(sent, round_transmission_count(l, t, round.users.len()));
            total += sent;
        }
        let expected = closed_form_delay(&profile_of(&assoc), t) * Rational::from_integer(placement.subfiles_per_file() as i128);
        prop_assert_eq!(Rational::from_integer(total), expected);
    }

    #[test]
    fn profile_ignores_relabeling((assoc, _t) in association_strategy(), rot in 0usize..4) {
        let mut lists = assoc.lists().to_vec();
        let l = lists.len();
        lists.rotate_left(rot % l);
        for list in lists.iter_mut() {
            list.reverse();
        }
        let relabeled = Association::new(assoc.num_users(), lists).unwrap();
        prop_assert_eq!(profile_of(&relabeled), profile_of(&assoc));
    }

    #[test]
    fn every_user_served_once((assoc, _t) in association_strategy()) {
        let mut served: Vec<usize> = rounds(&assoc).into_iter().flat_map(|r| r.users).collect();
        served.sort_unstable();
        prop_assert_eq!(served, (0..assoc.num_users()).collect::<Vec<_>>());
    }
}

#[test]
fn equal_profiles_give_equal_delay() {
    let profile = Profile::new(vec![3, 2, 2, 1]).unwrap();
    let placement = Placement::new(8, 4, 2);
    let a = Association::from_profile(&profile);
    let b = Association::new(8, vec![vec![7], vec![1, 5], vec![0, 6, 3], vec![2, 4]]).unwrap();
    let demand = Demand::new(8, vec![4, 1, 0, 7, 6, 3, 2, 5]).unwrap();
    let da = run_delivery(&placement, &a, &demand).unwrap().delay;
    let db = run_delivery(&placement, &b, &demand).unwrap().delay;
    assert_eq!(da, db);
}

#[test]
fn uniform_rounds_are_full() {
    let profile = Profile::uniform(12, 4).unwrap();
    for r in rounds(&Association::from_profile(&profile)) {
        assert_eq!(r.users.len(), 4);
    }
}

#[test]
fn single_cache_rounds_are_singletons() {
    let a = Association::new(5, vec![(0..5).collect(), vec![], vec![]]).unwrap();
    let rs = rounds(&a);
    assert_eq!(rs.len(), 5);
    assert!(rs.iter().all(|r| r.users.len() == 1));
}
