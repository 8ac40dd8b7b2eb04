//! Best responses against a known host: the Bayesian decision problem.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ConiePure, Door, InfoSet, MontePure, PureStrategy};
use crate::matrix::PayoffMatrix;
use crate::mixed::MixedMonte;
use crate::rational::{self, Rational};

/// A host described behaviorally: a prior over the prize door and, per
/// door, the probability of offering the smaller-numbered other door when
/// Conie's pick matches it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehavioralHost {
    #[serde(with = "rational::serde_str::vec")]
    pi: Vec<Rational>,
    #[serde(with = "rational::serde_str::vec")]
    lambda: Vec<Rational>,
}

impl BehavioralHost {
    pub fn new(pi: [Rational; 3], lambda: [Rational; 3]) -> Result<BehavioralHost> {
        BehavioralHost::from_vecs(pi.to_vec(), lambda.to_vec())
    }

    pub fn from_vecs(pi: Vec<Rational>, lambda: Vec<Rational>) -> Result<BehavioralHost> {
        validate_prior(&pi)?;
        if lambda.len() != 3 {
            return Err(Error::InvalidDistribution(format!(
                "expected 3 offer biases, got {}",
                lambda.len()
            )));
        }
        if let Some(l) = lambda.iter().find(|l| !rational::is_probability(l)) {
            return Err(Error::InvalidDistribution(format!(
                "offer bias {l} outside [0, 1]"
            )));
        }
        Ok(BehavioralHost { pi, lambda })
    }

    /// Parses `π₁,π₂,π₃;λ₁,λ₂,λ₃`.
    pub fn parse(text: &str) -> Result<BehavioralHost> {
        let (pi, lambda) = text.split_once(';').ok_or_else(|| {
            Error::InvalidDistribution(format!("expected \"pi;lambda\", got {text:?}"))
        })?;
        BehavioralHost::from_vecs(rational::parse_list(pi)?, rational::parse_list(lambda)?)
    }

    /// Uniform prior with the same bias at every door.
    pub fn uniform(lambda: Rational) -> Result<BehavioralHost> {
        let third = rational::ratio(1, 3);
        BehavioralHost::new(
            [third.clone(), third.clone(), third],
            [lambda.clone(), lambda.clone(), lambda],
        )
    }

    /// Uniform prior, always offering the smaller door (revealing the
    /// larger one) on a match.
    pub fn crawl() -> BehavioralHost {
        BehavioralHost::uniform(Rational::one()).expect("valid host")
    }

    /// The behavioral form of a mixed host. Doors with zero prior get
    /// bias 1/2, which is immaterial.
    pub fn from_mixed(q: &MixedMonte) -> BehavioralHost {
        let pi = q.theta_marginal().to_vec();
        let lambda = Door::ALL
            .iter()
            .map(|&d| {
                if pi[d.index()].is_zero() {
                    rational::ratio(1, 2)
                } else {
                    let smaller = MontePure::new(d, d.others()[0]).expect("distinct doors");
                    q.weight(smaller) / &pi[d.index()]
                }
            })
            .collect();
        BehavioralHost {
            pi,
            lambda,
        }
    }

    pub fn pi(&self) -> &[Rational] {
        &self.pi
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn prior(&self, door: Door) -> &Rational {
        &self.pi[door.index()]
    }

    pub fn bias(&self, door: Door) -> &Rational {
        &self.lambda[door.index()]
    }

    /// Probability of offering `offer` when Conie has picked the prize door
    /// `pick`.
    pub fn match_offer_probability(&self, pick: Door, offer: Door) -> Rational {
        if pick.is_smaller_other(offer) {
            self.bias(pick).clone()
        } else {
            Rational::one() - self.bias(pick)
        }
    }

    pub fn is_crawl(&self) -> bool {
        self.lambda.iter().all(One::is_one)
    }
}

pub(crate) fn validate_prior(pi: &[Rational]) -> Result<()> {
    if pi.len() != 3 {
        return Err(Error::InvalidDistribution(format!(
            "expected 3 prior weights, got {}",
            pi.len()
        )));
    }
    if let Some(p) = pi.iter().find(|p| p.is_negative()) {
        return Err(Error::InvalidDistribution(format!("negative prior {p}")));
    }
    let total = rational::sum(pi);
    if !total.is_one() {
        return Err(Error::InvalidDistribution(format!(
            "prior sums to {total}, not 1"
        )));
    }
    Ok(())
}

/// The mixed strategy induced by a behavioral host: `(θ, smaller)` gets
/// `π_θ·λ_θ` and `(θ, larger)` gets `π_θ·(1−λ_θ)`.
pub fn host_to_mixed(h: &BehavioralHost) -> MixedMonte {
    let weights = MontePure::all()
        .iter()
        .map(|s| {
            let theta = s.theta();
            h.prior(theta) * h.match_offer_probability(theta, s.offer_on_match())
        })
        .collect();
    MixedMonte::new(weights).expect("a valid host induces a distribution")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BayesResult {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    pub best_responses: BTreeSet<ConiePure>,
}

/// All pure strategies maximizing Conie's win probability against `q`.
pub fn bayes_best_response(q: &MixedMonte) -> BayesResult {
    let matrix = PayoffMatrix::build();
    let scores: Vec<(ConiePure, Rational)> = ConiePure::all()
        .iter()
        .map(|&r| {
            let score = MontePure::all()
                .iter()
                .filter(|&&c| matrix.entry(r, c) == 1)
                .map(|&c| q.weight(c))
                .fold(Rational::zero(), |acc, w| acc + w);
            (r, score)
        })
        .collect();
    let value = scores
        .iter()
        .map(|(_, s)| s)
        .max()
        .cloned()
        .expect("twelve rows");
    let best_responses = scores
        .into_iter()
        .filter(|(_, s)| *s == value)
        .map(|(r, _)| r)
        .collect();
    BayesResult {
        value,
        best_responses,
    }
}

/// `1 − min π`: the value of picking the least likely door and always
/// switching.
pub fn bayes_value_formula(pi: &[Rational]) -> Result<Rational> {
    validate_prior(pi)?;
    Ok(Rational::one() - pi.iter().min().expect("three weights"))
}

/// Doors of minimal prior probability; picking any of them and always
/// switching is Bayes-optimal.
pub fn optimal_picks(pi: &[Rational]) -> Vec<Door> {
    let min = pi.iter().min().expect("nonempty prior");
    Door::ALL
        .into_iter()
        .filter(|d| &pi[d.index()] == min)
        .collect()
}

/// Context-dependent strategies ruled out by the support of `q`:
/// `θsm` when `(θ, smaller offer)` has positive weight, `θms` when
/// `(θ, larger offer)` does.
pub fn exclusion_rules(q: &MixedMonte) -> BTreeSet<ConiePure> {
    use crate::game::Action::{Hold, Switch};
    let mut excluded = BTreeSet::new();
    for &s in MontePure::all() {
        if q.weight(s).is_zero() {
            continue;
        }
        let theta = s.theta();
        let strategy = if s.offers_smaller() {
            ConiePure::new(theta, Switch, Hold)
        } else {
            ConiePure::new(theta, Hold, Switch)
        };
        excluded.insert(strategy);
    }
    excluded
}

/// Conditional probability that switching wins at information set
/// `(x, y)`: `π_y / (π_y + π_x·β)` where `β` is the chance the host offers
/// `y` when the prize is behind `x`.
pub fn posterior_switch_win(h: &BehavioralHost, x: Door, y: Door) -> Result<Rational> {
    let set = InfoSet::new(x, y)?;
    let switch_mass = h.prior(y).clone();
    let hold_mass = h.prior(x) * h.match_offer_probability(x, y);
    let reach = &switch_mass + hold_mass;
    if reach.is_zero() {
        return Err(Error::UnreachableInfoSet {
            pick: set.pick().number(),
            offer: set.offer().number(),
        });
    }
    Ok(switch_mass / reach)
}
