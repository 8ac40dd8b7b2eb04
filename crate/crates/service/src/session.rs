//! One live game: a small state machine over rounds.
//!
//! Round `n` draws from `block_rng(seed, n)`: the prize first, at round
//! start, then Monte's offer once Conie picks. The prize of the next round
//! is committed as soon as the current one resolves.

use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use montyhall_core::game::{Action, Door, InfoSet, PlayRecord};
use montyhall_core::report::Exact;
use montyhall_core::simulation::{block_rng, HostSampler, InfoSetTally, SimulationStats};
use montyhall_core::solvers::{
    bayes_value_formula, optimal_picks, posterior_switch_win, BehavioralHost, HostPayoffMatrix,
};
use montyhall_core::rational::ratio;

use crate::error::ApiError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    AwaitingPick,
    AwaitingFinal,
    Done,
}

#[derive(Clone, Debug)]
struct Round {
    number: u64,
    rng: ChaCha8Rng,
    theta: Door,
    pick: Option<Door>,
    offer: Option<Door>,
}

/// A resolved round, as kept in the transcript.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub round: u64,
    pub action: Action,
    #[serde(flatten)]
    pub play: PlayRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HostView {
    pub pi: Vec<String>,
    pub lambda: Vec<String>,
    pub crawl: bool,
}

impl From<&BehavioralHost> for HostView {
    fn from(h: &BehavioralHost) -> HostView {
        HostView {
            pi: h.pi().iter().map(ToString::to_string).collect(),
            lambda: h.lambda().iter().map(ToString::to_string).collect(),
            crawl: h.is_crawl(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TallyView {
    pub info_set: String,
    pub visits: u64,
    pub switch_wins: u64,
    pub hold_wins: u64,
}

/// Cumulative results of resolved rounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsView {
    pub rounds: u64,
    pub wins: u64,
    pub win_rate: f64,
    pub switches: u64,
    pub switch_wins: u64,
    pub holds: u64,
    pub hold_wins: u64,
    pub per_info_set: Vec<TallyView>,
}

/// Public view of a session. Carries no information about an unresolved
/// prize door.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub phase: Phase,
    pub round: u64,
    pub pick: Option<Door>,
    pub offered: Option<Door>,
    pub revealed: Option<Door>,
    /// The last resolved round, present in phase `done`.
    pub result: Option<TranscriptEntry>,
    pub host: HostView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub host_matrix: Option<montyhall_core::solvers::HostMatrixDocument>,
    pub stats: StatsView,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PickResponse {
    pub round: u64,
    pub phase: Phase,
    pub pick: Door,
    pub offered: Door,
    pub revealed: Door,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Recommendation {
    Switch,
    Hold,
    Indifferent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Advice {
    pub round: u64,
    pub pick: Door,
    pub offered: Door,
    pub posterior_switch_win: Exact,
    pub recommended_action: Recommendation,
    pub bayes_value_for_priors: Exact,
    pub best_pick_for_priors: Vec<Door>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalResponse {
    pub round: u64,
    pub phase: Phase,
    pub theta: Door,
    pub pick: Door,
    pub offered: Door,
    pub revealed: Door,
    pub action: Action,
    #[serde(rename = "final")]
    pub final_door: Door,
    pub win: bool,
    pub stats: StatsView,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub id: String,
    pub rounds: Vec<TranscriptEntry>,
}

#[derive(Debug)]
pub struct Session {
    id: String,
    host: BehavioralHost,
    sampler: HostSampler,
    host_matrix: Option<HostPayoffMatrix>,
    seed: u64,
    phase: Phase,
    round: Round,
    stats: SimulationStats,
    switches: [u64; 2],
    holds: [u64; 2],
    transcript: Vec<TranscriptEntry>,
    last_used: Instant,
}

impl Session {
    pub fn new(id: String, host: BehavioralHost, seed: u64, host_matrix: Option<HostPayoffMatrix>) -> Session {
        let sampler = HostSampler::new(&host);
        let round = start_round(&sampler, seed, 1);
        Session {
            id,
            host,
            sampler,
            host_matrix,
            seed,
            phase: Phase::AwaitingPick,
            round,
            stats: SimulationStats::empty(seed),
            switches: [0; 2],
            holds: [0; 2],
            transcript: Vec::new(),
            last_used: Instant::now(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn host(&self) -> &BehavioralHost {
        &self.host
    }

    pub fn last_used(&self) -> Instant {
        self.last_used
    }

    pub fn touch(&mut self) {
        self.last_used = Instant::now();
    }

    /// Leaves phase `done` for the next round.
    pub fn next_round(&mut self) -> Result<SessionView, ApiError> {
        if self.phase != Phase::Done {
            return Err(ApiError::wrong_phase("the current round is still open"));
        }
        self.phase = Phase::AwaitingPick;
        Ok(self.view())
    }

    /// Conie's first move. From phase `done` this opens the next round.
    pub fn pick(&mut self, door: i64) -> Result<PickResponse, ApiError> {
        let pick = Door::new(door)?;
        match self.phase {
            Phase::AwaitingFinal => return Err(ApiError::wrong_phase("a door is already picked")),
            Phase::Done => self.phase = Phase::AwaitingPick,
            Phase::AwaitingPick => {}
        }
        let round = &mut self.round;
        let offer = self.sampler.draw_offer(&mut round.rng, round.theta, pick);
        round.pick = Some(pick);
        round.offer = Some(offer);
        self.phase = Phase::AwaitingFinal;
        Ok(PickResponse {
            round: round.number,
            phase: self.phase,
            pick,
            offered: offer,
            revealed: Door::third(pick, offer),
        })
    }

    fn open_info_set(&self) -> Result<(Door, Door), ApiError> {
        match (self.phase, self.round.pick, self.round.offer) {
            (Phase::AwaitingFinal, Some(pick), Some(offer)) => Ok((pick, offer)),
            _ => Err(ApiError::wrong_phase("no door has been offered yet")),
        }
    }

    /// Posterior advice at the current information set. Reads only the
    /// host model and the public moves.
    pub fn advice(&self) -> Result<Advice, ApiError> {
        let (pick, offered) = self.open_info_set()?;
        let posterior = posterior_switch_win(&self.host, pick, offered)?;
        let half = ratio(1, 2);
        let recommended_action = if posterior > half {
            Recommendation::Switch
        } else if posterior < half {
            Recommendation::Hold
        } else {
            Recommendation::Indifferent
        };
        Ok(Advice {
            round: self.round.number,
            pick,
            offered,
            posterior_switch_win: (&posterior).into(),
            recommended_action,
            bayes_value_for_priors: (&bayes_value_formula(self.host.pi())?).into(),
            best_pick_for_priors: optimal_picks(self.host.pi()),
        })
    }

    /// Conie's last move; resolves the round and commits the next prize.
    pub fn finish(&mut self, action: Action) -> Result<FinalResponse, ApiError> {
        let (pick, offer) = self.open_info_set()?;
        let play = PlayRecord::from_moves(self.round.theta, pick, offer, action)?;
        let entry = TranscriptEntry {
            round: self.round.number,
            action,
            play,
        };
        self.stats.record(&play);
        let tally = match action {
            Action::Switch => &mut self.switches,
            Action::Hold => &mut self.holds,
        };
        tally[0] += 1;
        tally[1] += u64::from(play.win);
        self.transcript.push(entry);
        self.phase = Phase::Done;
        self.round = start_round(&self.sampler, self.seed, entry.round + 1);
        Ok(FinalResponse {
            round: entry.round,
            phase: self.phase,
            theta: play.theta,
            pick,
            offered: offer,
            revealed: play.revealed,
            action,
            final_door: play.final_door,
            win: play.win,
            stats: self.stats_view(),
        })
    }

    pub fn stats_view(&self) -> StatsView {
        StatsView {
            rounds: self.stats.rounds,
            wins: self.stats.wins,
            win_rate: self.stats.win_rate,
            switches: self.switches[0],
            switch_wins: self.switches[1],
            holds: self.holds[0],
            hold_wins: self.holds[1],
            per_info_set: InfoSet::all()
                .iter()
                .map(|&set| {
                    let InfoSetTally {
                        visits,
                        switch_wins,
                        hold_wins,
                    } = *self.stats.tally(set);
                    TallyView {
                        info_set: set.to_string(),
                        visits,
                        switch_wins,
                        hold_wins,
                    }
                })
                .collect(),
        }
    }

    pub fn transcript(&self) -> Transcript {
        Transcript {
            id: self.id.clone(),
            rounds: self.transcript.clone(),
        }
    }

    pub fn view(&self) -> SessionView {
        let (round, pick, offered, result) = match self.phase {
            Phase::Done => {
                let last = *self.transcript.last().expect("a resolved round");
                (last.round, Some(last.play.pick), Some(last.play.offer), Some(last))
            }
            _ => (self.round.number, self.round.pick, self.round.offer, None),
        };
        SessionView {
            id: self.id.clone(),
            phase: self.phase,
            round,
            pick,
            offered,
            revealed: pick.zip(offered).map(|(p, o)| Door::third(p, o)),
            result,
            host: (&self.host).into(),
            host_matrix: self.host_matrix.as_ref().map(HostPayoffMatrix::to_document),
            stats: self.stats_view(),
        }
    }
}

fn start_round(sampler: &HostSampler, seed: u64, number: u64) -> Round {
    let mut rng = block_rng(seed, number);
    let theta = sampler.draw_prize(&mut rng);
    Round {
        number,
        rng,
        theta,
        pick: None,
        offer: None,
    }
}
