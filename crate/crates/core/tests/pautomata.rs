use std::collections::BTreeSet;

use obligation_games::format::parse_chain;
use obligation_games::obligation::find_best_dependency;
use obligation_games::pautomata::{
    accepts, accepts_layered, build_automaton_graph, build_product_game, is_uniform, parse_automaton, write_automaton,
    Formula, PAutomaton, StateDef,
};
use obligation_games::{Budget, Comparator, Error, Owner, Rational};

mod common;
use common::{fixture, labelled_chain, until_oracle};

fn example() -> PAutomaton {
    parse_automaton(&fixture("paut-example.automaton.json")).unwrap()
}

fn half() -> Rational {
    Rational::new(1, 2)
}

#[test]
fn example_structure() {
    let a = example();
    assert!(is_uniform(&a).uniform);
    let g = build_automaton_graph(&a);
    let t = g.index_of(&Formula::term("q2", Comparator::AtLeast, half())).unwrap();
    let q2 = g.index_of(&Formula::state("q2")).unwrap();
    assert!(g.bounded.contains(&(t, q2)));
    assert!(!g.unbounded.iter().any(|&(x, y)| [t, q2].contains(&x) && [t, q2].contains(&y)));
    assert_eq!(parse_automaton(&write_automaton(&a)).unwrap(), a);
}

#[test]
fn mixed_cycle_is_not_uniform() {
    let a = parse_automaton(&fixture("paut-nonuniform.automaton.json")).unwrap();
    let u = is_uniform(&a);
    assert!(!u.uniform);
    assert_eq!(u.witness.unwrap().len(), 3);
    let mc = parse_chain(&fixture("paut-accept.chain.json")).unwrap().chain;
    assert!(matches!(accepts_layered(&a, &mc, &Budget::default()), Err(Error::NotLayerable(_))));
    // the general solver still applies
    accepts(&a, &mc, &Budget::default()).unwrap();
}

#[test]
fn hand_built_chains_match_oracle() {
    let a = example();
    let budget = Budget::default();
    for (name, expected) in [("paut-accept.chain.json", true), ("paut-reject.chain.json", false), ("paut-recurrent.chain.json", true)] {
        let mc = parse_chain(&fixture(name)).unwrap().chain;
        let oracle = until_oracle(&mc) >= half();
        let general = accepts(&a, &mc, &budget).unwrap();
        assert_eq!(oracle, expected, "{name}");
        assert_eq!(general.accepted, expected, "{name}");
        assert_eq!(accepts_layered(&a, &mc, &budget).unwrap().accepted, expected, "{name}");
    }
    let mc = parse_chain(&fixture("paut-reject.chain.json")).unwrap().chain;
    assert_eq!(until_oracle(&mc), Rational::new(1, 3));
}

#[test]
fn random_chains_general_layered_oracle_and_complement() {
    let a = example();
    let budget = Budget::default();
    for seed in 0..60 {
        let mc = labelled_chain(seed);
        let general = accepts(&a, &mc, &budget).unwrap();
        let oracle = until_oracle(&mc) >= half();
        assert_eq!(general.accepted, oracle, "seed {seed}");
        assert_eq!(accepts_layered(&a, &mc, &budget).unwrap().accepted, oracle, "seed {seed}");

        let p = &general.product;
        let cl: BTreeSet<Formula> = obligation_games::pautomata::closure_of(a.transition_formulas().iter().chain([&a.initial]));
        assert!(p.game.len() <= mc.len() * cl.len());
        for (v, (_, f)) in p.nodes.iter().enumerate() {
            let expected = match f {
                Formula::Or(..) => Owner::Player0,
                Formula::And(..) => Owner::Player1,
                _ => Owner::Random,
            };
            assert_eq!(p.game.owner(v), expected);
            assert_eq!(p.game.is_obligation(v), matches!(f, Formula::Term { .. }));
        }
        let dual = find_best_dependency(&p.game.dual(), &budget).unwrap();
        assert_eq!(dual.values[p.initial].is_one(), !general.accepted, "seed {seed}");
    }
}

fn constant(delta: Formula, initial: Formula) -> PAutomaton {
    PAutomaton {
        propositions: ["a".to_string()].into(),
        states: vec![StateDef {
            name: "q".into(),
            priority: 0,
            transitions: [(BTreeSet::new(), delta.clone()), (["a".to_string()].into(), delta)].into(),
            default_ff: false,
        }],
        initial,
    }
}

#[test]
fn trivial_automata() {
    let budget = Budget::default();
    let one = Rational::one();
    let all = constant(Formula::Tt, Formula::term("q", Comparator::AtLeast, one.clone()));
    let none = constant(Formula::Ff, Formula::term("q", Comparator::MoreThan, Rational::zero()));
    let impossible = constant(Formula::Tt, Formula::term("q", Comparator::MoreThan, one));
    for seed in 0..20 {
        let mc = labelled_chain(seed);
        assert!(accepts(&all, &mc, &budget).unwrap().accepted);
        assert!(!accepts(&none, &mc, &budget).unwrap().accepted);
        assert!(!accepts(&impossible, &mc, &budget).unwrap().accepted);
        assert!(accepts_layered(&all, &mc, &budget).unwrap().accepted);
    }
}

#[test]
fn automaton_without_terms_is_uniform() {
    let a = constant(Formula::or(Formula::state("q"), Formula::Ff), Formula::Tt);
    assert!(is_uniform(&a).uniform);
    assert!(build_automaton_graph(&a).bounded.is_empty());
}

#[test]
fn until_automaton_without_default_is_rejected() {
    let mut a = example();
    a.states[0].default_ff = false;
    assert!(a.validate().is_err());
    assert!(build_product_game(&a, &labelled_chain(1)).is_err());
}
