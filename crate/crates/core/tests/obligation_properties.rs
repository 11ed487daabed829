use obligation_games::generate::{random_game, GameShape};
use obligation_games::obligation::{find_best_dependency, verify_dependency};
use obligation_games::parity::solve_parity;
use obligation_games::{Budget, Rational};

#[test]
fn determinacy_two_valuedness_and_certificates() {
    let budget = Budget::default();
    let shape = GameShape::default();
    for seed in 0..200 {
        let g = random_game(seed, &shape);
        let d = g.dual();
        let rep = find_best_dependency(&g, &budget).unwrap();
        let dual = find_best_dependency(&d, &budget).unwrap();
        for v in 0..g.len() {
            assert_eq!(
                &rep.values[v] + &dual.values[v],
                Rational::one(),
                "seed {seed} at {}: {} + {}\n{}",
                g.id(v),
                rep.values[v],
                dual.values[v],
                obligation_games::format::write_game(&g)
            );
        }
        for v in g.obligation_configurations() {
            assert!(rep.values[v].is_zero() || rep.values[v].is_one());
        }
        assert!(verify_dependency(&g, &rep.dependency, &budget).unwrap().is_good());
        assert!(verify_dependency(&d, &dual.dependency, &budget).unwrap().is_good());
    }
}

#[test]
fn without_obligations_equals_parity() {
    let budget = Budget::default();
    let shape = GameShape {
        max_obligations: 0,
        ..GameShape::default()
    };
    for seed in 0..200 {
        let g = random_game(seed, &shape);
        let rep = find_best_dependency(&g, &budget).unwrap();
        assert_eq!(rep.values, solve_parity(&g, &budget).unwrap().values, "seed {seed}");
    }
}
