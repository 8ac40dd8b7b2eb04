//! Exact game-theoretic analysis of the Monty Hall game.
//!
//! Monte hides a prize behind one of three doors, Conie picks a door, Monte
//! reveals an empty unpicked door and offers the remaining one, and Conie
//! holds or switches. This crate models the game in extensive and matrix
//! form and solves it exactly:
//!
//! * [`game`]: doors, moves, information sets, pure strategies, play.
//! * [`matrix`]: the 12×6 payoff matrix, dominance, unlucky doors, and
//!   iterated elimination down to the 3×3 mismatch game.
//! * [`solvers`]: Bayesian best responses, the zero-sum solution (value
//!   2/3), and general-sum Nash equilibria.
//! * [`simulation`]: behavioral strategies and seeded Monte Carlo play.
//!
//! All probabilities are exact [`Rational`]s; floating point only shows up
//! in simulated win rates.
//!
//! ```
//! use montyhall_core::{matrix::PayoffMatrix, solvers::solve_zero_sum, rational::ratio};
//!
//! let solution = solve_zero_sum(&PayoffMatrix::build()).unwrap();
//! assert_eq!(solution.value, ratio(2, 3));
//! ```

pub mod error;
pub mod game;
pub mod linalg;
pub mod matrix;
pub mod mixed;
pub mod rational;
pub mod report;
pub mod simulation;
pub mod solvers;

pub use error::{Error, Result};
pub use game::{Action, ConiePure, Door, GameTree, InfoSet, MontePure, PlayRecord, PureStrategy};
pub use matrix::PayoffMatrix;
pub use mixed::{MixedConie, MixedMonte};
pub use rational::Rational;
pub use simulation::{BehavioralConie, SimulationStats};
pub use solvers::{BehavioralHost, HostPayoffMatrix};
