//! Exact decision analysis: Bayesian best responses, the zero-sum game
//! and general-sum equilibria.

pub mod bayes;
pub mod nash;
pub mod zerosum;

pub use bayes::{
    bayes_best_response, bayes_value_formula, exclusion_rules, host_to_mixed, optimal_picks,
    posterior_switch_win, BayesResult, BehavioralHost,
};
pub use nash::{
    best_response_monte, certify, enumerate_nash_supports, fully_supported_equilibria, is_nash,
    Certificate, FullySupportedFamily, HostMatrixDocument, HostPayoffMatrix, NashProfile,
};
pub use zerosum::{
    game_value, is_minimax_conie, is_minimax_monte, solve_equalizing, solve_equalizing_columns,
    solve_zero_sum, worst_case, Equalizer, SolveResult,
};
