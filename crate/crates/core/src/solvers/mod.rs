//! Optimal-value algorithms and their verifiers.

pub mod avg_free;
pub mod certificate;
pub mod hoffman_karp;
pub mod operator;
pub mod oracle;
pub mod reductions;
pub mod rounding;
pub mod solve;
pub mod strategies;

pub use avg_free::{solve_avg_free, solve_avg_free_counted, AvgFreeOutcome};
pub use certificate::{
    certify, explain_rejection, transformed_values, verify_ovv_certificate, verify_value_certificate,
    verify_value_complement_certificate, Certificate,
};
pub use hoffman_karp::{hoffman_karp, hoffman_karp_with, HkOutcome};
pub use operator::{apply_operator, default_epsilon, is_fixed_point, iterates, value_iteration, ViOutcome};
pub use oracle::{brute_force_oracle, brute_force_oracle_with_budget, OracleOutcome, DEFAULT_ORACLE_BUDGET};
pub use reductions::{decide_value, game_value, game_value_via_strategies, ovv_via_game_values};
pub use rounding::{delta, round_to_omega};
pub use solve::{solve, solve_via_transform, Method, Route, SolveReport};
pub use strategies::{best_response, best_response_with, greedy_strategies, is_locally_optimal, ReplyMethod};
