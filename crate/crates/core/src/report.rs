//! Serializable solver reports shared by the command line, the HTTP
//! service and the browser demo. Every number is carried as an exact
//! `a/b` string next to a decimal rendering.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::game::{ConiePure, Door, InfoSet, MontePure, PureStrategy};
use crate::matrix::{MatrixDocument, ReductionStep, ReductionTrace};
use crate::mixed::Mixed;
use crate::rational::{self, Rational};
use crate::simulation::{self, BehavioralConie, InfoSetTally, SimulationStats};
use crate::solvers::{
    bayes_best_response, bayes_value_formula, exclusion_rules, host_to_mixed, optimal_picks,
    posterior_switch_win, BehavioralHost, FullySupportedFamily, NashProfile, SolveResult,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Exact {
    pub exact: String,
    pub decimal: f64,
}

impl From<&Rational> for Exact {
    fn from(value: &Rational) -> Exact {
        Exact {
            exact: value.to_string(),
            decimal: rational::to_f64(value),
        }
    }
}

/// A mixed strategy as `{strategy: weight}` over its support, plus the
/// full aligned weight vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyReport {
    pub weights: Vec<String>,
    pub support: Vec<WeightedStrategy>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedStrategy {
    pub strategy: String,
    pub weight: String,
}

impl<S: PureStrategy> From<&Mixed<S>> for StrategyReport {
    fn from(m: &Mixed<S>) -> StrategyReport {
        StrategyReport {
            weights: m.to_strings(),
            support: m
                .support()
                .into_iter()
                .map(|s| WeightedStrategy {
                    strategy: s.to_string(),
                    weight: m.weight(s).to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffEntry {
    pub strategy: String,
    pub payoff: Exact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub steps: Vec<ReductionStep>,
    pub reduced: MatrixDocument,
}

impl From<&ReductionTrace> for ReductionReport {
    fn from(t: &ReductionTrace) -> ReductionReport {
        ReductionReport {
            steps: t.steps.clone(),
            reduced: t.reduced.to_document(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroSumReport {
    pub value: Exact,
    pub conie_minimax: StrategyReport,
    pub monte_minimax: StrategyReport,
    pub equalizing: bool,
    pub conie_guarantees: Vec<PayoffEntry>,
    pub monte_concessions: Vec<PayoffEntry>,
    pub reduction: ReductionReport,
}

impl From<&SolveResult> for ZeroSumReport {
    fn from(r: &SolveResult) -> ZeroSumReport {
        ZeroSumReport {
            value: (&r.value).into(),
            conie_minimax: (&r.conie_minimax).into(),
            monte_minimax: (&r.monte_minimax).into(),
            equalizing: r.is_equalizing(),
            conie_guarantees: entries(&r.conie_guarantees),
            monte_concessions: entries(&r.monte_concessions),
            reduction: (&r.trace).into(),
        }
    }
}

fn entries<S: ToString>(pairs: &[(S, Rational)]) -> Vec<PayoffEntry> {
    pairs
        .iter()
        .map(|(s, v)| PayoffEntry {
            strategy: s.to_string(),
            payoff: v.into(),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosteriorEntry {
    pub info_set: String,
    pub pick: Door,
    pub offer: Door,
    /// `None` when the host never reaches this information set.
    pub switch_win: Option<Exact>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BayesReport {
    pub pi: Vec<String>,
    pub lambda: Vec<String>,
    pub host_mixed: StrategyReport,
    pub crawl: bool,
    pub value: Exact,
    pub best_responses: Vec<ConiePure>,
    /// `1 − min π`.
    pub formula_value: Exact,
    pub optimal_picks: Vec<Door>,
    pub excluded: Vec<ConiePure>,
    pub posteriors: Vec<PosteriorEntry>,
}

pub fn bayes_report(h: &BehavioralHost) -> Result<BayesReport> {
    let q = host_to_mixed(h);
    let best = bayes_best_response(&q);
    let posteriors = InfoSet::all()
        .iter()
        .map(|set| PosteriorEntry {
            info_set: set.to_string(),
            pick: set.pick(),
            offer: set.offer(),
            switch_win: posterior_switch_win(h, set.pick(), set.offer())
                .ok()
                .map(|p| (&p).into()),
        })
        .collect();
    Ok(BayesReport {
        pi: h.pi().iter().map(ToString::to_string).collect(),
        lambda: h.lambda().iter().map(ToString::to_string).collect(),
        host_mixed: (&q).into(),
        crawl: h.is_crawl(),
        value: (&best.value).into(),
        best_responses: best.best_responses.into_iter().collect(),
        formula_value: (&bayes_value_formula(h.pi())?).into(),
        optimal_picks: optimal_picks(h.pi()),
        excluded: exclusion_rules(&q).into_iter().collect(),
        posteriors,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NashProfileReport {
    pub p: StrategyReport,
    pub q: StrategyReport,
    pub conie_payoff: Exact,
    pub monte_payoff: Exact,
    pub conie_best: Exact,
    pub monte_best: Exact,
    pub conie_best_responses: Vec<ConiePure>,
    pub monte_best_responses: Vec<MontePure>,
}

impl From<&NashProfile> for NashProfileReport {
    fn from(n: &NashProfile) -> NashProfileReport {
        NashProfileReport {
            p: (&n.p).into(),
            q: (&n.q).into(),
            conie_payoff: (&n.conie_payoff).into(),
            monte_payoff: (&n.monte_payoff).into(),
            conie_best: (&n.certificate.conie_best).into(),
            monte_best: (&n.certificate.monte_best).into(),
            conie_best_responses: n.certificate.conie_best_responses.iter().copied().collect(),
            monte_best_responses: n.certificate.monte_best_responses.iter().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub case: usize,
    pub min_prior_doors: Vec<Door>,
    pub prior_condition: String,
    /// Weights over `1ss, 2ss, 3ss` at each extreme point.
    pub weight_vertices: Vec<Vec<String>>,
    pub weight_dimension: usize,
    pub monte_payoffs: Vec<Exact>,
    pub representative: NashProfileReport,
}

impl From<&FullySupportedFamily> for FamilyReport {
    fn from(f: &FullySupportedFamily) -> FamilyReport {
        FamilyReport {
            case: f.case,
            min_prior_doors: f.min_prior_doors.clone(),
            prior_condition: f.prior_condition(),
            weight_vertices: f
                .weight_vertices
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect(),
            weight_dimension: f.weight_dimension,
            monte_payoffs: f.monte_payoffs.iter().map(Exact::from).collect(),
            representative: (&f.representative).into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NashReport {
    /// Absent when only fully supported families were requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equilibria: Option<Vec<NashProfileReport>>,
    pub fully_supported: Vec<FamilyReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub rounds: u64,
    pub seed: u64,
    pub wins: u64,
    pub win_rate: f64,
    pub exact: Exact,
    pub standard_error: f64,
    pub deviation_in_standard_errors: f64,
    pub per_info_set: Vec<InfoSetTallyReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfoSetTallyReport {
    pub info_set: String,
    #[serde(flatten)]
    pub tally: InfoSetTally,
}

pub fn simulation_report(h: &BehavioralHost, b: &BehavioralConie, stats: &SimulationStats) -> SimulationReport {
    let exact = simulation::expected_behavioral_payoff(h, b);
    let se = simulation::binomial_standard_error(&exact, stats.rounds);
    let deviation = stats.win_rate - rational::to_f64(&exact);
    SimulationReport {
        rounds: stats.rounds,
        seed: stats.seed,
        wins: stats.wins,
        win_rate: stats.win_rate,
        exact: (&exact).into(),
        standard_error: se,
        deviation_in_standard_errors: if se > 0.0 { deviation / se } else { 0.0 },
        per_info_set: InfoSet::all()
            .iter()
            .map(|set| InfoSetTallyReport {
                info_set: set.to_string(),
                tally: *stats.tally(*set),
            })
            .collect(),
    }
}
