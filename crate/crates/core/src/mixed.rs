//! Mixed strategies: probability vectors over a player's pure strategies,
//! aligned to the canonical enumeration order.

use std::fmt;
use std::marker::PhantomData;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::{ConiePure, Door, MontePure, PureStrategy};
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mixed<S: PureStrategy> {
    weights: Vec<Rational>,
    _strategy: PhantomData<S>,
}

pub type MixedConie = Mixed<ConiePure>;
pub type MixedMonte = Mixed<MontePure>;

impl<S: PureStrategy> Mixed<S> {
    /// Validates length, nonnegativity and unit mass.
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != S::COUNT {
            return Err(Error::InvalidDistribution(format!(
                "expected {} weights, got {}",
                S::COUNT,
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidDistribution(format!("negative weight {w}")));
        }
        let total = rational::sum(&weights);
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(Mixed {
            weights,
            _strategy: PhantomData,
        })
    }

    pub fn pure(strategy: S) -> Self {
        let mut weights = vec![Rational::zero(); S::COUNT];
        weights[strategy.index()] = Rational::one();
        Mixed {
            weights,
            _strategy: PhantomData,
        }
    }

    pub fn uniform() -> Self {
        Self::uniform_over(S::all())
    }

    /// Uniform over `support`. Panics if `support` is empty.
    pub fn uniform_over(support: &[S]) -> Self {
        assert!(!support.is_empty(), "empty support");
        let share = rational::ratio(1, support.len() as i64);
        let mut weights = vec![Rational::zero(); S::COUNT];
        for s in support {
            weights[s.index()] += &share;
        }
        Mixed {
            weights,
            _strategy: PhantomData,
        }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (S, &'a Rational)>) -> Result<Self> {
        let mut weights = vec![Rational::zero(); S::COUNT];
        for (s, w) in pairs {
            weights[s.index()] += w;
        }
        Self::new(weights)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, strategy: S) -> &Rational {
        &self.weights[strategy.index()]
    }

    pub fn support(&self) -> Vec<S> {
        S::all()
            .iter()
            .copied()
            .filter(|s| !self.weight(*s).is_zero())
            .collect()
    }

    pub fn is_fully_supported(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }

    /// `alpha * self + (1 - alpha) * other`. Requires `alpha` in `[0, 1]`.
    pub fn mix(&self, alpha: &Rational, other: &Self) -> Result<Self> {
        if !rational::is_probability(alpha) {
            return Err(Error::InvalidDistribution(format!(
                "mixing weight {alpha} outside [0, 1]"
            )));
        }
        let beta = Rational::one() - alpha;
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| alpha * a + &beta * b)
            .collect();
        Ok(Mixed {
            weights,
            _strategy: PhantomData,
        })
    }

    pub fn total(&self) -> Rational {
        rational::sum(&self.weights)
    }

    /// Weights as `a/b` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.weights.iter().map(|w| w.to_string()).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(rational::parse_list(text)?)
    }
}

impl MixedMonte {
    /// Probability that the prize is behind each door.
    pub fn theta_marginal(&self) -> [Rational; 3] {
        let mut pi = [Rational::zero(), Rational::zero(), Rational::zero()];
        for s in MontePure::all() {
            pi[s.theta().index()] += self.weight(*s);
        }
        pi
    }

    pub fn theta_probability(&self, door: Door) -> Rational {
        self.theta_marginal()[door.index()].clone()
    }
}

impl<S: PureStrategy> fmt::Debug for Mixed<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                S::all()
                    .iter()
                    .zip(&self.weights)
                    .map(|(s, w)| (s.to_string(), w.to_string())),
            )
            .finish()
    }
}

impl<S: PureStrategy> fmt::Display for Mixed<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

impl<S: PureStrategy> Serialize for Mixed<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        rational::serde_str::vec::serialize(&self.weights, s)
    }
}

impl<'de, S: PureStrategy> Deserialize<'de> for Mixed<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let weights = rational::serde_str::vec::deserialize(d)?;
        Mixed::new(weights).map_err(serde::de::Error::custom)
    }
}
