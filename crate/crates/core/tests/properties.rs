use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, prop_assume, proptest, ProptestConfig, TestCaseError};
use proptest::strategy::Strategy as Gen;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ssg_core::lp::{Constraint, Relation};
use ssg_core::rational::{int, ratio, Rational};
use ssg_core::*;

fn weights() -> impl Gen<Value = KindWeights> {
    prop::sample::select(vec![
        KindWeights::new(1, 1, 1),
        KindWeights::new(2, 1, 1),
        KindWeights::new(1, 2, 1),
        KindWeights::new(1, 1, 3),
        KindWeights::new(1, 1, 0),
        KindWeights::new(1, 0, 1),
        KindWeights::new(0, 1, 1),
        KindWeights::new(0, 0, 1),
    ])
}

fn games(max_n: usize) -> impl Gen<Value = Game> {
    (3..=max_n, weights(), any::<u64>(), any::<bool>())
        .prop_map(|(n, w, seed, stopping)| generate_random_game(n, w, seed, stopping).unwrap())
}

fn strategy_pair(g: &Game, bits: u64) -> (Strategy, Strategy) {
    (
        Strategy::from_bits(g, Player::Min, bits),
        Strategy::from_bits(g, Player::Max, bits >> 32),
    )
}

/// Edge lists of `G_{τ,σ}` built straight from the definitions.
fn reduced_edges(g: &Game, tau: &Strategy, sigma: &Strategy) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); g.n() + 1];
    for v in g.non_sinks() {
        out[v] = match g.kind(v) {
            VertexKind::Min => vec![tau.pick(v).unwrap()],
            VertexKind::Max => vec![sigma.pick(v).unwrap()],
            _ => g.children(v).to_vec(),
        };
    }
    out
}

fn reaches_sink(g: &Game, edges: &[Vec<usize>], from: usize) -> bool {
    let mut seen = vec![false; g.n() + 1];
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == g.sink0() || v == g.sink1() {
            return true;
        }
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(edges[v].iter().copied());
        }
    }
    false
}

/// Dense Gauss–Jordan solve of `(I - Q) v = b` over the sink-reaching vertices.
fn dense_value_vector(g: &Game, tau: &Strategy, sigma: &Strategy) -> RationalVector {
    let edges = reduced_edges(g, tau, sigma);
    let unknowns: Vec<usize> = g.non_sinks().filter(|&v| reaches_sink(g, &edges, v)).collect();
    let size = unknowns.len();
    let pos = |v: usize| unknowns.iter().position(|&u| u == v);
    let mut m = vec![vec![Rational::zero(); size + 1]; size];
    for (r, &v) in unknowns.iter().enumerate() {
        m[r][r] += Rational::one();
        let w = Rational::one() / int(edges[v].len() as i64);
        for &c in &edges[v] {
            if let Some(k) = pos(c) {
                m[r][k] -= &w;
            } else if c == g.sink1() {
                m[r][size] += &w;
            }
        }
    }
    for col in 0..size {
        let p = (col..size).find(|&r| !m[r][col].is_zero()).expect("nonsingular");
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..size {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    let mut v = RationalVector::zeros(g.n());
    v[g.sink1()] = Rational::one();
    for (r, &u) in unknowns.iter().enumerate() {
        v[u] = m[r][size].clone();
    }
    v
}

fn exhaustive_stopping(g: &Game) -> bool {
    Strategy::enumerate(g, Player::Min).all(|tau| {
        Strategy::enumerate(g, Player::Max).all(|sigma| {
            let edges = reduced_edges(g, &tau, &sigma);
            g.non_sinks().all(|v| reaches_sink(g, &edges, v))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn serialization_round_trips(g in games(10)) {
        let text = g.to_string();
        prop_assert_eq!(parse_game(&text).unwrap(), g);
    }

    #[test]
    fn generated_games_validate(g in games(12)) {
        prop_assert!(g.to_raw().validate().is_ok());
    }

    #[test]
    fn value_vectors_match_dense_elimination(g in games(9), bits in any::<u64>()) {
        let (tau, sigma) = strategy_pair(&g, bits);
        let rg = reduce(&g, Some(&tau), Some(&sigma)).unwrap();
        let v = solve_value_vector(&rg).unwrap();
        prop_assert_eq!(&v, &dense_value_vector(&g, &tau, &sigma));
        let t = sink_reachable_set(&rg).len();
        prop_assert!(v.iter().all(|x| in_omega(x, t)));
        prop_assert!(build_linear_system(&rg).unwrap().residual_holds(&v));
        prop_assert!(v.is_probability_vector());
    }

    #[test]
    fn stopping_test_matches_enumeration(g in games(7)) {
        prop_assume!(g.owned_by(Player::Min).count() + g.owned_by(Player::Max).count() <= 4);
        prop_assert_eq!(is_stopping(&g), exhaustive_stopping(&g));
    }

    #[test]
    fn all_applicable_methods_agree(g in games(7)) {
        let reference = solve(&g, Method::Oracle).unwrap().values;
        for m in Method::ALL {
            match solve(&g, m) {
                Ok(r) => {
                    prop_assert_eq!(&r.values, &reference, "{}", m);
                    prop_assert!(is_fixed_point(&g, &r.values).unwrap());
                }
                Err(Error::MethodMismatch { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(format!("{m}: {e}"))),
            }
        }
    }

    #[test]
    fn greedy_strategies_are_optimal(g in games(8)) {
        let v = solve(&g, Method::Auto).unwrap().values;
        let (tau, sigma) = greedy_strategies(&g, &v).unwrap();
        prop_assert!(is_locally_optimal(&g, &v, &tau, &sigma));
        prop_assert_eq!(solve_value_vector(&reduce(&g, Some(&tau), Some(&sigma)).unwrap()).unwrap(), v);
    }

    #[test]
    fn optimal_values_are_delta_separated(g in games(8)) {
        let n = g.n();
        let v = solve(&g, Method::Auto).unwrap().values;
        let distinct: BTreeSet<Rational> = v.iter().cloned().collect();
        let d = delta(n);
        let xs: Vec<&Rational> = distinct.iter().collect();
        for w in xs.windows(2) {
            prop_assert!(w[1] - w[0] >= d);
        }
        prop_assert!(v.iter().all(|x| in_omega(x, n)));
    }

    #[test]
    fn attractor_values_are_binary(g in games(10)) {
        prop_assume!(!g.has_kind(VertexKind::Avg));
        let v = solve_avg_free(&g).unwrap();
        prop_assert!(v.iter().all(|x| x.is_zero() || x.is_one()));
    }

    #[test]
    fn lp_and_attractor_agree_on_single_player_games(n in 3usize..=9, seed in any::<u64>(), max_side in any::<bool>()) {
        let w = if max_side { KindWeights::new(1, 0, 0) } else { KindWeights::new(0, 1, 0) };
        let g = generate_random_game(n, w, seed, false).unwrap();
        let lp = if max_side { build_lp_min_free(&g) } else { build_lp_max_free(&g) }.unwrap();
        let v = RationalVector::new(simplex_solve(&lp).unwrap().values);
        prop_assert_eq!(v, solve_avg_free(&g).unwrap());
    }

    #[test]
    fn pinning_dominates_redundant_upper_bounds(n in 3usize..=8, seed in any::<u64>()) {
        let g = generate_random_game(n, KindWeights::new(0, 1, 1), seed, false).unwrap();
        let mut lp = build_lp_max_free(&g).unwrap();
        let base = simplex_solve(&lp).unwrap().values;
        for v in zero_value_set(&g).unwrap() {
            let mut coeffs = vec![Rational::zero(); g.n()];
            coeffs[v - 1] = Rational::one();
            lp.constraints.push(Constraint { coeffs, relation: Relation::Le, rhs: Rational::one() });
        }
        prop_assert_eq!(simplex_solve(&lp).unwrap().values, base);
    }

    #[test]
    fn rounding_recovers_omega_members(n in 1usize..=8, q in 1u64..=65536, p in 0u64..=65536, num in 0i64..1000, neg in any::<bool>()) {
        let bound = 1u64 << (2 * n);
        let q = q.min(bound);
        let x = ratio((p % (q + 1)) as i64, q as i64);
        // a perturbation strictly inside δ/2
        let mut e = delta(n) * ratio(num, 2000);
        if neg { e = -e; }
        prop_assert_eq!(round_to_omega(&(&x + e), n).unwrap(), x);
    }

    #[test]
    fn value_iteration_is_monotone_on_stopping_games(n in 3usize..=7, seed in any::<u64>()) {
        let g = generate_random_game(n, KindWeights::new(1, 1, 2), seed, true).unwrap();
        let exact = solve(&g, Method::Auto).unwrap().values;
        let mut prev = RationalVector::zeros(g.n());
        prev[g.sink1()] = Rational::one();
        for v in iterates(&g).take(60) {
            prop_assert!(prev.le_componentwise(&v));
            prop_assert!(v.le_componentwise(&exact));
            prev = v;
        }
    }

    #[test]
    fn transform_lift_project(g in games(6)) {
        let (g2, tr) = beta_stopping(&g, 1).unwrap();
        prop_assert!(is_stopping(&g2));
        prop_assert_eq!(g2.n(), g.n() + g.n() * g.edge_count());
        for s in Strategy::enumerate(&g, Player::Max) {
            let lifted = tr.lift(&s);
            lifted.check(&g2).unwrap();
            prop_assert_eq!(tr.project(&lifted), s);
        }
    }
}

/// Fraction of `plays` random walks from `start` absorbed in the 1-sink.
fn simulate(g: &Game, tau: &Strategy, sigma: &Strategy, plays: usize, seed: u64) -> f64 {
    let edges = reduced_edges(g, tau, sigma);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wins = 0usize;
    for _ in 0..plays {
        let mut v = g.start();
        for _ in 0..10_000 {
            if v == g.sink0() || v == g.sink1() {
                break;
            }
            let out = &edges[v];
            v = out[rng.random_range(0..out.len())];
        }
        if v == g.sink1() {
            wins += 1;
        }
    }
    wins as f64 / plays as f64
}

fn to_f64(x: &Rational) -> f64 {
    format_decimal(x, 17).parse().unwrap()
}

#[test]
fn monte_carlo_agrees_with_exact_solves() {
    let plays = 100_000;
    let mut cases = vec![fixtures::game_b(), fixtures::game_g()];
    for seed in 0..4 {
        cases.push(generate_random_game(7, KindWeights::new(1, 1, 2), seed, true).unwrap());
    }
    for (k, g) in cases.iter().enumerate() {
        let (tau, sigma) = strategy_pair(g, 0x5555_5555_5555_5555);
        let exact = solve_value_vector(&reduce(g, Some(&tau), Some(&sigma)).unwrap()).unwrap();
        let p = to_f64(&exact[g.start()]);
        let estimate = simulate(g, &tau, &sigma, plays, 100 + k as u64);
        let se = (p * (1.0 - p) / plays as f64).sqrt().max(1e-9);
        assert!((estimate - p).abs() <= 3.0 * se + 1e-12, "case {k}: estimate {estimate} vs exact {p}");
    }
}

#[test]
fn lp_matches_oracle_on_one_player_games() {
    for (label, w) in [("min-free", KindWeights::new(1, 0, 1)), ("max-free", KindWeights::new(0, 1, 1))] {
        for seed in 0..200 {
            let n = 3 + (seed % 6) as usize;
            let g = generate_random_game(n, w, seed, false).unwrap();
            let lp = if label == "min-free" { build_lp_min_free(&g) } else { build_lp_max_free(&g) }.unwrap();
            let v = RationalVector::new(simplex_solve(&lp).unwrap().values);
            assert_eq!(v, brute_force_oracle(&g).unwrap().values, "{label} seed {seed}");
        }
    }
}

#[test]
fn generator_example_shapes() {
    for seed in 0..20 {
        let g = generate_random_game(3, KindWeights::new(0, 0, 1), seed, false).unwrap();
        assert_eq!(g.kind(1), VertexKind::Avg);
        assert_eq!(g, generate_random_game(3, KindWeights::new(0, 0, 1), seed, false).unwrap());
    }
    assert!(is_stopping(&generate_random_game(8, KindWeights::new(1, 1, 1), 42, true).unwrap()));
}

#[test]
fn named_fixture_values() {
    let expected: [(&str, Vec<Rational>); 7] = [
        ("GAME-A", vec![ratio(1, 2), int(0), int(1)]),
        ("GAME-B", vec![ratio(2, 3), ratio(1, 3), int(0), int(1)]),
        ("GAME-C", vec![int(0), int(0), int(1)]),
        ("GAME-D", vec![int(0), int(0), int(0), int(1)]),
        ("GAME-E", vec![int(0), int(0), int(0), int(1)]),
        ("GAME-F", vec![int(1), int(0), int(1)]),
        ("GAME-G", vec![ratio(3, 4), ratio(1, 2), ratio(3, 4), int(0), int(1)]),
    ];
    for ((name, g), (name2, v)) in fixtures::all().into_iter().zip(expected) {
        assert_eq!(name, name2);
        assert_eq!(brute_force_oracle(&g).unwrap().values, RationalVector::new(v), "{name}");
    }
}
