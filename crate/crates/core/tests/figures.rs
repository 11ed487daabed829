use std::collections::BTreeSet;

use obligation_games::format::parse_dependency;
use obligation_games::obligation::{build_gamma_game, find_best_dependency, values_given_dependency, verify_dependency};
use obligation_games::parity::{induce_chain, solve_parity};
use obligation_games::{chain, Budget, Player, PureMemorylessStrategy, Rational};

mod common;
use common::{fixture, game, r, value};

#[test]
fn fig6_all_values_one() {
    let g = game("fig6.game.json");
    let rep = find_best_dependency(&g, &Budget::default()).unwrap();
    assert!(rep.values.iter().all(Rational::is_one));
    let s1 = g.index_of("s1").unwrap();
    let c = rep.dependency.get(s1).unwrap();
    assert!(c.is_superset(&BTreeSet::from([(s1, 0), (s1, 2)])));
    assert_eq!(rep.pre_values[&s1], r("3/4"));
    let gamma = build_gamma_game(&g, s1, &BTreeSet::from([(s1, 0), (s1, 2)]));
    assert_eq!(solve_parity(&gamma.game, &Budget::default()).unwrap().values[gamma.start], r("3/4"));
    let dep = parse_dependency(&g, &fixture("fig6.dependency.json")).unwrap();
    assert!(verify_dependency(&g, &dep, &Budget::default()).unwrap().is_good());
}

#[test]
fn fig6_variants() {
    let budget = Budget::default();
    let g = game("fig6-s4-at-least.game.json");
    let rep = find_best_dependency(&g, &budget).unwrap();
    let (s1, s4) = (g.index_of("s1").unwrap(), g.index_of("s4").unwrap());
    assert_eq!(rep.dependency.get(s4), Some(&BTreeSet::from([(s1, 3)])));
    assert_eq!(rep.dependency.get(s1), Some(&BTreeSet::from([(s4, 0), (s4, 2)])));
    let g = game("fig6-s4-more-than.game.json");
    let rep = find_best_dependency(&g, &budget).unwrap();
    assert!(!rep.is_fulfilled(s1) && !rep.is_fulfilled(s4));
    assert!(rep.values.iter().all(Rational::is_zero));
}

#[test]
fn fig2_values() {
    let budget = Budget::default();
    let g = game("fig2.chain.json");
    let rep = find_best_dependency(&g, &budget).unwrap();
    assert_eq!(value(&g, &rep.values, "s2"), r("0"));
    assert_eq!(value(&g, &rep.values, "s1"), r("1/2"));
    let g = game("fig2-winning.chain.json");
    let rep = find_best_dependency(&g, &budget).unwrap();
    assert_eq!(value(&g, &rep.values, "s1"), r("1"));
}

#[test]
fn fig1_values() {
    let g = game("fig1.chain.json");
    let rep = find_best_dependency(&g, &Budget::default()).unwrap();
    assert_eq!(value(&g, &rep.values, "s2"), r("0"));
    assert_eq!(value(&g, &rep.values, "s3"), r("1"));
    assert_eq!(value(&g, &rep.values, "s1"), r("1/2"));
    let s3 = g.index_of("s3").unwrap();
    assert_eq!(rep.pre_values[&s3], r("1/2"));
}

#[test]
fn fig4_bottom_versus_empty() {
    let budget = Budget::default();
    let g = game("fig4.chain.json");
    let s1 = g.index_of("s1").unwrap();
    let rep = find_best_dependency(&g, &budget).unwrap();
    assert_eq!(rep.dependency.get(s1), Some(&BTreeSet::new()));
    assert_eq!(rep.values[s1], r("1"));
    let empty = parse_dependency(&g, &fixture("fig4-empty.dependency.json")).unwrap();
    let bottom = parse_dependency(&g, &fixture("fig4-bottom.dependency.json")).unwrap();
    assert_eq!(values_given_dependency(&g, &empty, &budget).unwrap().values[s1], r("1"));
    assert_eq!(values_given_dependency(&g, &bottom, &budget).unwrap().values[s1], r("0"));
    let gamma = build_gamma_game(&g, s1, &BTreeSet::new());
    assert_eq!(solve_parity(&gamma.game, &budget).unwrap().values[gamma.start], r("2/3"));
}

#[test]
fn fig5_values_and_dependency() {
    let budget = Budget::default();
    let g = game("fig5.game.json");
    let rep = find_best_dependency(&g, &budget).unwrap();
    for id in ["v1", "v2", "v3", "v4", "v5", "v6"] {
        assert_eq!(value(&g, &rep.values, id), r("1"), "{id}");
    }
    let (v1, v5) = (g.index_of("v1").unwrap(), g.index_of("v5").unwrap());
    assert_eq!(rep.pre_values[&v5], r("3/4"));
    assert_eq!(rep.dependency.get(v5), Some(&BTreeSet::from([(v5, 0)])));
    assert_eq!(rep.dependency.get(v1), Some(&BTreeSet::from([(v5, 1)])));
    let dep = parse_dependency(&g, &fixture("fig5.dependency.json")).unwrap();
    assert!(verify_dependency(&g, &dep, &budget).unwrap().is_good());

    // in the γ game of v5, going from v4 to v7 yields 3/4
    let gamma = build_gamma_game(&g, v5, &BTreeSet::from([(v5, 0)]));
    let gg = &gamma.game;
    let v4 = gg.index_of("v4@1").unwrap();
    let v7 = gg.index_of("v7@1").unwrap();
    let sigma = PureMemorylessStrategy::new(Player::Zero, [(v4, v7)].into_iter().collect());
    let pi = PureMemorylessStrategy::new(Player::One, Default::default());
    let mc = induce_chain(gg, &sigma, &pi).unwrap();
    assert_eq!(chain::parity_measure(&mc, gg.priorities())[gamma.start], r("3/4"));
}
