//! The zero-sum game: Monte's payoff is the negative of Conie's.
//!
//! Solved by eliminating dominated rows and duplicate columns, then
//! equalizing on the square matrix that remains and lifting the result
//! back to the full strategy sets.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{ConiePure, MontePure, PureStrategy};
use crate::linalg;
use crate::matrix::{eliminate_dominated, expected_payoff, PayoffMatrix, ReductionTrace};
use crate::mixed::{MixedConie, MixedMonte};
use crate::rational::{self, Rational};

/// An equalizing strategy of a square game and the payoff it equalizes to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equalizer {
    pub weights: Vec<Rational>,
    pub value: Rational,
}

/// Row weights `p` with `Σp = 1` making every column of `m` pay the same.
pub fn solve_equalizing(m: &[Vec<Rational>]) -> Result<Equalizer> {
    let n = m.len();
    if n == 0 || m.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("equalizing needs a square matrix".into()));
    }
    // unknowns: p_1..p_n, v
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut eq: Vec<Rational> = (0..n).map(|i| m[i][j].clone()).collect();
        eq.push(-Rational::one());
        a.push(eq);
        b.push(Rational::zero());
    }
    let mut norm = vec![Rational::one(); n];
    norm.push(Rational::zero());
    a.push(norm);
    b.push(Rational::one());

    let mut x = linalg::solve(&a, &b)
        .unique()
        .ok_or_else(|| Error::Singular("equalizing system has no unique solution".into()))?;
    let value = x.pop().expect("value unknown");
    if x.iter().any(Signed::is_negative) {
        return Err(Error::Singular("equalizer has negative weights".into()));
    }
    Ok(Equalizer { weights: x, value })
}

/// Column weights equalizing every row.
pub fn solve_equalizing_columns(m: &[Vec<Rational>]) -> Result<Equalizer> {
    let n = m.first().map_or(0, Vec::len);
    let transposed: Vec<Vec<Rational>> = (0..n)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect();
    solve_equalizing(&transposed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub value: Rational,
    pub conie_minimax: MixedConie,
    pub monte_minimax: MixedMonte,
    /// Conie's payoff from `conie_minimax` against each pure Monte strategy.
    pub conie_guarantees: Vec<(MontePure, Rational)>,
    /// Conie's payoff from each pure strategy against `monte_minimax`.
    pub monte_concessions: Vec<(ConiePure, Rational)>,
    pub trace: ReductionTrace,
}

impl SolveResult {
    pub fn is_equalizing(&self) -> bool {
        self.conie_guarantees.iter().all(|(_, v)| *v == self.value)
    }
}

pub fn solve_zero_sum(m: &PayoffMatrix) -> Result<SolveResult> {
    let trace = eliminate_dominated(m);
    let reduced = &trace.reduced;
    let grid = reduced.to_rational_grid();
    let rows = solve_equalizing(&grid)?;
    let cols = solve_equalizing_columns(&grid)?;
    if rows.value != cols.value {
        return Err(Error::Singular(format!(
            "equalizers disagree: {} vs {}",
            rows.value, cols.value
        )));
    }

    let conie_minimax = MixedConie::from_pairs(reduced.rows().iter().copied().zip(&rows.weights))?;
    let monte_minimax = MixedMonte::from_pairs(reduced.cols().iter().copied().zip(&cols.weights))?;
    let value = rows.value;

    let conie_guarantees: Vec<(MontePure, Rational)> = MontePure::all()
        .iter()
        .map(|&c| (c, expected_payoff(&conie_minimax, &MixedMonte::pure(c))))
        .collect();
    let monte_concessions: Vec<(ConiePure, Rational)> = ConiePure::all()
        .iter()
        .map(|&r| (r, expected_payoff(&MixedConie::pure(r), &monte_minimax)))
        .collect();
    if conie_guarantees.iter().any(|(_, v)| v < &value)
        || monte_concessions.iter().any(|(_, v)| v > &value)
    {
        return Err(Error::Singular(
            "lifted equalizers are not optimal in the full game".into(),
        ));
    }

    Ok(SolveResult {
        value,
        conie_minimax,
        monte_minimax,
        conie_guarantees,
        monte_concessions,
        trace,
    })
}

/// The value of the zero-sum game (2/3), computed once by
/// [`solve_zero_sum`].
pub fn game_value() -> Rational {
    static VALUE: OnceLock<Rational> = OnceLock::new();
    VALUE
        .get_or_init(|| {
            solve_zero_sum(&PayoffMatrix::build())
                .expect("the game has a solution")
                .value
        })
        .clone()
}

/// Monte's minimax strategies are exactly those hiding the prize
/// uniformly, whatever the offer biases.
pub fn is_minimax_monte(q: &MixedMonte) -> bool {
    let third = rational::ratio(1, 3);
    q.theta_marginal().iter().all(|p| *p == third)
}

/// Whether `p` guarantees the game value against every pure Monte strategy.
pub fn is_minimax_conie(p: &MixedConie) -> bool {
    worst_case(p) == game_value()
}

/// Conie's guaranteed payoff: the minimum over Monte's pure strategies.
pub fn worst_case(p: &MixedConie) -> Rational {
    MontePure::all()
        .iter()
        .map(|&c| expected_payoff(p, &MixedMonte::pure(c)))
        .min()
        .expect("six columns")
}
