//! Behavioral strategies and seeded Monte Carlo play.
//!
//! Random streams: every simulation is split into blocks of
//! [`BLOCK_ROUNDS`] rounds. Block `k` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` with its stream set to `k`, so the
//! outcome depends only on `(seed, rounds)` and not on how blocks are
//! scheduled across threads.
//!
//! Branch probabilities are rationals and are sampled exactly: a
//! distribution with common denominator `L` is drawn by taking a uniform
//! integer below `L` and locating it among the cumulative numerators.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Action, ConiePure, Door, InfoSet, MontePure, PlayRecord, PureStrategy};
use crate::matrix::expected_payoff;
use crate::mixed::{MixedConie, MixedMonte};
use crate::rational::{self, Rational};
use crate::solvers::bayes::{host_to_mixed, validate_prior, BehavioralHost};

pub const BLOCK_ROUNDS: u64 = 1 << 13;

/// Conie's behavioral strategy: a distribution over the first pick and,
/// at each information set, the probability of switching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BehavioralConie {
    #[serde(with = "rational::serde_str::vec")]
    pick: Vec<Rational>,
    /// Indexed like [`InfoSet::all`].
    #[serde(with = "rational::serde_str::vec")]
    switch: Vec<Rational>,
}

impl BehavioralConie {
    pub fn new(pick: Vec<Rational>, switch: Vec<Rational>) -> Result<BehavioralConie> {
        validate_prior(&pick)?;
        if switch.len() != InfoSet::all().len() {
            return Err(Error::InvalidDistribution(format!(
                "expected 6 switch probabilities, got {}",
                switch.len()
            )));
        }
        if let Some(s) = switch.iter().find(|s| !rational::is_probability(s)) {
            return Err(Error::InvalidDistribution(format!(
                "switch probability {s} outside [0, 1]"
            )));
        }
        Ok(BehavioralConie { pick, switch })
    }

    /// Parses `p₁,p₂,p₃;s*12,s*13,s*21,s*23,s*31,s*32`.
    pub fn parse(text: &str) -> Result<BehavioralConie> {
        let (pick, switch) = text.split_once(';').ok_or_else(|| {
            Error::InvalidDistribution(format!("expected \"pick;switch\", got {text:?}"))
        })?;
        BehavioralConie::new(rational::parse_list(pick)?, rational::parse_list(switch)?)
    }

    /// The degenerate behavioral strategy playing `s`. Information sets
    /// after other picks get switch probability 1.
    pub fn from_pure(s: ConiePure) -> BehavioralConie {
        let pick = Door::ALL
            .iter()
            .map(|&d| if d == s.pick() { Rational::one() } else { Rational::zero() })
            .collect();
        let switch = InfoSet::all()
            .iter()
            .map(|set| {
                let action = if set.pick() == s.pick() {
                    s.action_for(set.offer())
                } else {
                    Action::Switch
                };
                if action == Action::Switch {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        BehavioralConie { pick, switch }
    }

    /// A realization-equivalent behavioral strategy: pick marginals and,
    /// at each information set, the conditional switch probability. Sets
    /// after a pick of probability zero get switch probability 1.
    pub fn from_mixed(p: &MixedConie) -> BehavioralConie {
        let pick: Vec<Rational> = Door::ALL
            .iter()
            .map(|&d| rational::sum(ConiePure::all().iter().filter(|s| s.pick() == d).map(|&s| p.weight(s))))
            .collect();
        let switch = InfoSet::all()
            .iter()
            .map(|set| {
                let mass = &pick[set.pick().index()];
                if mass.is_zero() {
                    return Rational::one();
                }
                let switching = rational::sum(
                    ConiePure::all()
                        .iter()
                        .filter(|s| s.pick() == set.pick() && s.action_for(set.offer()) == Action::Switch)
                        .map(|&s| p.weight(s)),
                );
                switching / mass
            })
            .collect();
        BehavioralConie { pick, switch }
    }

    pub fn pick_probability(&self, door: Door) -> &Rational {
        &self.pick[door.index()]
    }

    pub fn switch_probability(&self, set: InfoSet) -> &Rational {
        &self.switch[set.index()]
    }

    pub fn action_probability(&self, set: InfoSet, action: Action) -> Rational {
        match action {
            Action::Switch => self.switch_probability(set).clone(),
            Action::Hold => Rational::one() - self.switch_probability(set),
        }
    }
}

/// The realization-equivalent mixed strategy: each pure plan gets the
/// product of the probabilities of its pick and its two actions.
pub fn behavioral_to_mixed_conie(b: &BehavioralConie) -> MixedConie {
    let weights = ConiePure::all()
        .iter()
        .map(|s| {
            let [smaller, larger] = s.pick().others();
            let small_set = InfoSet::new(s.pick(), smaller).expect("distinct");
            let large_set = InfoSet::new(s.pick(), larger).expect("distinct");
            b.pick_probability(s.pick())
                * b.action_probability(small_set, s.on_smaller_offer())
                * b.action_probability(large_set, s.on_larger_offer())
        })
        .collect();
    MixedConie::new(weights).expect("a valid behavioral strategy induces a distribution")
}

pub fn behavioral_to_mixed_monte(h: &BehavioralHost) -> MixedMonte {
    host_to_mixed(h)
}

/// Conie's win probability computed directly on the game tree, moving
/// down each branch with the local probabilities.
pub fn exact_win_probability(h: &BehavioralHost, b: &BehavioralConie) -> Rational {
    let mut total = Rational::zero();
    for theta in Door::ALL {
        for pick in Door::ALL {
            let reach = h.prior(theta) * b.pick_probability(pick);
            if reach.is_zero() {
                continue;
            }
            if theta == pick {
                for offer in pick.others() {
                    let set = InfoSet::new(pick, offer).expect("distinct");
                    total += &reach
                        * h.match_offer_probability(theta, offer)
                        * b.action_probability(set, Action::Hold);
                }
            } else {
                let set = InfoSet::new(pick, theta).expect("distinct");
                total += reach * b.action_probability(set, Action::Switch);
            }
        }
    }
    total
}

/// An exact sampler for a finite distribution with rational weights.
#[derive(Clone, Debug)]
struct Categorical {
    total: BigUint,
    small_total: Option<u64>,
    cumulative: Vec<BigUint>,
    small_cumulative: Vec<u64>,
}

impl Categorical {
    fn new(weights: &[Rational]) -> Categorical {
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let mut running = BigInt::zero();
        let mut cumulative = Vec::with_capacity(weights.len());
        for w in weights {
            debug_assert!(!w.is_negative());
            running += w.numer() * (&denom / w.denom());
            cumulative.push(running.to_biguint().expect("nonnegative"));
        }
        let total = denom.to_biguint().expect("positive");
        debug_assert_eq!(cumulative.last(), Some(&total));
        let small_total = total.to_u64();
        let small_cumulative = if small_total.is_some() {
            cumulative.iter().map(|c| c.to_u64().expect("below total")).collect()
        } else {
            Vec::new()
        };
        Categorical {
            total,
            small_total,
            cumulative,
            small_cumulative,
        }
    }

    fn bernoulli(p: &Rational) -> Categorical {
        Categorical::new(&[p.clone(), Rational::one() - p])
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self.small_total {
            Some(total) => {
                let u = rng.gen_range(0..total);
                self.small_cumulative.iter().position(|&c| u < c).expect("u < total")
            }
            None => {
                let u = rng.gen_biguint_below(&self.total);
                self.cumulative.iter().position(|c| &u < c).expect("u < total")
            }
        }
    }
}

/// A host compiled into exact samplers, for callers that drive the moves
/// themselves.
#[derive(Clone, Debug)]
pub struct HostSampler {
    theta: Categorical,
    smaller_offer: Vec<Categorical>,
}

impl HostSampler {
    pub fn new(h: &BehavioralHost) -> HostSampler {
        HostSampler {
            theta: Categorical::new(h.pi()),
            smaller_offer: h.lambda().iter().map(Categorical::bernoulli).collect(),
        }
    }

    /// Monte's first move.
    pub fn draw_prize<R: Rng + ?Sized>(&self, rng: &mut R) -> Door {
        Door::from_index(self.theta.sample(rng))
    }

    /// Monte's second move. A mismatch forces the offer and draws nothing.
    pub fn draw_offer<R: Rng + ?Sized>(&self, rng: &mut R, theta: Door, pick: Door) -> Door {
        if pick != theta {
            return theta;
        }
        let others = pick.others();
        if self.smaller_offer[theta.index()].sample(rng) == 0 {
            others[0]
        } else {
            others[1]
        }
    }
}

/// Host and contestant compiled into exact samplers.
#[derive(Clone, Debug)]
struct Sampler {
    host: HostSampler,
    pick: Categorical,
    switch: Vec<Categorical>,
}

impl Sampler {
    fn new(h: &BehavioralHost, b: &BehavioralConie) -> Sampler {
        Sampler {
            host: HostSampler::new(h),
            pick: Categorical::new(&b.pick),
            switch: b.switch.iter().map(Categorical::bernoulli).collect(),
        }
    }

    fn play<R: Rng + ?Sized>(&self, rng: &mut R) -> PlayRecord {
        let theta = self.host.draw_prize(rng);
        let pick = Door::from_index(self.pick.sample(rng));
        let offer = self.host.draw_offer(rng, theta, pick);
        let set = InfoSet::new(pick, offer).expect("offer differs from pick");
        let action = if self.switch[set.index()].sample(rng) == 0 {
            Action::Switch
        } else {
            Action::Hold
        };
        PlayRecord::from_moves(theta, pick, offer, action).expect("sampled moves are legal")
    }
}

/// Samples one round move by move.
pub fn sample_play<R: Rng + ?Sized>(rng: &mut R, h: &BehavioralHost, b: &BehavioralConie) -> PlayRecord {
    Sampler::new(h, b).play(rng)
}

/// Per-information-set tallies. At each visit exactly one of the two
/// actions would have won.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoSetTally {
    pub visits: u64,
    pub switch_wins: u64,
    pub hold_wins: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationStats {
    pub rounds: u64,
    pub wins: u64,
    pub win_rate: f64,
    pub seed: u64,
    /// Indexed like [`InfoSet::all`].
    pub per_info_set: Vec<InfoSetTally>,
}

impl SimulationStats {
    pub fn empty(seed: u64) -> SimulationStats {
        SimulationStats {
            rounds: 0,
            wins: 0,
            win_rate: 0.0,
            seed,
            per_info_set: vec![InfoSetTally::default(); InfoSet::all().len()],
        }
    }

    pub fn record(&mut self, r: &PlayRecord) {
        self.rounds += 1;
        self.wins += u64::from(r.win);
        let tally = &mut self.per_info_set[r.info_set().index()];
        tally.visits += 1;
        if r.offer == r.theta {
            tally.switch_wins += 1;
        } else {
            tally.hold_wins += 1;
        }
        self.refresh_rate();
    }

    /// Adds another batch of tallies; order-independent.
    pub fn merge(&mut self, other: &SimulationStats) {
        self.rounds += other.rounds;
        self.wins += other.wins;
        for (a, b) in self.per_info_set.iter_mut().zip(&other.per_info_set) {
            a.visits += b.visits;
            a.switch_wins += b.switch_wins;
            a.hold_wins += b.hold_wins;
        }
        self.refresh_rate();
    }

    fn refresh_rate(&mut self) {
        self.win_rate = if self.rounds == 0 {
            0.0
        } else {
            self.wins as f64 / self.rounds as f64
        };
    }

    pub fn tally(&self, set: InfoSet) -> &InfoSetTally {
        &self.per_info_set[set.index()]
    }
}

/// The random stream for block `block` of a simulation seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Plays `rounds` independent rounds.
pub fn simulate(h: &BehavioralHost, b: &BehavioralConie, rounds: u64, seed: u64) -> Result<SimulationStats> {
    if rounds == 0 {
        return Err(Error::ZeroRounds);
    }
    let sampler = Sampler::new(h, b);
    let blocks = rounds.div_ceil(BLOCK_ROUNDS);
    let run_block = |block: u64| {
        let mut rng = block_rng(seed, block);
        let n = BLOCK_ROUNDS.min(rounds - block * BLOCK_ROUNDS);
        let mut stats = SimulationStats::empty(seed);
        for _ in 0..n {
            stats.record(&sampler.play(&mut rng));
        }
        stats
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<SimulationStats> = {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map(run_block).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<SimulationStats> = (0..blocks).map(run_block).collect();

    let mut total = SimulationStats::empty(seed);
    for part in &parts {
        total.merge(part);
    }
    Ok(total)
}

/// Exact expected payoff of a behavioral profile via the mixed forms.
pub fn expected_behavioral_payoff(h: &BehavioralHost, b: &BehavioralConie) -> Rational {
    expected_payoff(&behavioral_to_mixed_conie(b), &behavioral_to_mixed_monte(h))
}

/// One binomial standard error for success probability `p` over `n` trials.
pub fn binomial_standard_error(p: &Rational, n: u64) -> f64 {
    let p = rational::to_f64(p);
    (p * (1.0 - p) / n as f64).sqrt()
}

/// A degenerate host always playing `s`.
pub fn host_from_pure(s: MontePure) -> BehavioralHost {
    BehavioralHost::from_mixed(&MixedMonte::pure(s))
}
